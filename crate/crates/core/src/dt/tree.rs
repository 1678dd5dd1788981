use serde::{Deserialize, Serialize};

use crate::search::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self { max_depth: 8, min_samples_leaf: 3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Samples with `x[feature] <= threshold` go left.
    Split { feature: usize, threshold: f64, left: Box<Node>, right: Box<Node> },
    Leaf { critical: usize, non_critical: usize, members: Vec<usize> },
}

/// Binary classification tree over a bounded input space.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub root: Node,
    pub space: SearchSpace,
}

/// A leaf together with the box its root path carves out of the space.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafBox<'a> {
    pub bounds: SearchSpace,
    pub critical: usize,
    pub non_critical: usize,
    pub members: &'a [usize],
}

fn gini(critical: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let p = critical as f64 / total as f64;
    2.0 * p * (1.0 - p)
}

/// Greedy top-down CART on Gini impurity.
///
/// Candidate thresholds are midpoints between consecutive distinct feature
/// values. Growth stops at `max_depth`, when a child would hold fewer than
/// `min_samples_leaf` samples, or when no split lowers impurity. Leaf `members`
/// are indices into `samples`.
pub fn fit_tree<G: AsRef<[f64]>>(
    samples: &[(G, bool)],
    space: &SearchSpace,
    params: &TreeParams,
) -> DecisionTree {
    let idx: Vec<usize> = (0..samples.len()).collect();
    let root = grow(samples, idx, space.dim(), params, 0);
    DecisionTree { root, space: space.clone() }
}

fn grow<G: AsRef<[f64]>>(
    samples: &[(G, bool)],
    idx: Vec<usize>,
    dim: usize,
    params: &TreeParams,
    depth: usize,
) -> Node {
    let n = idx.len();
    let critical = idx.iter().filter(|&&i| samples[i].1).count();
    let leaf = |idx: Vec<usize>| Node::Leaf { critical, non_critical: n - critical, members: idx };
    let min_leaf = params.min_samples_leaf.max(1);
    let parent = gini(critical, n);
    if depth >= params.max_depth || parent == 0.0 || n < 2 * min_leaf {
        return leaf(idx);
    }

    let mut best: Option<(f64, usize, f64)> = None;
    let mut order = idx.clone();
    for f in 0..dim {
        let x = |i: usize| samples[i].0.as_ref()[f];
        order.sort_by(|&a, &b| x(a).total_cmp(&x(b)).then(a.cmp(&b)));
        let mut left_critical = 0;
        for split in 1..n {
            if samples[order[split - 1]].1 {
                left_critical += 1;
            }
            if split < min_leaf || n - split < min_leaf {
                continue;
            }
            let (a, b) = (x(order[split - 1]), x(order[split]));
            if a == b {
                continue;
            }
            let weighted = (split as f64 * gini(left_critical, split)
                + (n - split) as f64 * gini(critical - left_critical, n - split))
                / n as f64;
            let gain = parent - weighted;
            if best.map_or(true, |(g, _, _)| gain > g) {
                let mid = a + (b - a) / 2.0;
                let threshold = if a < mid && mid < b { mid } else { a };
                best = Some((gain, f, threshold));
            }
        }
    }
    match best {
        Some((gain, feature, threshold)) if gain > 1e-12 => {
            let (l, r): (Vec<usize>, Vec<usize>) =
                idx.into_iter().partition(|&i| samples[i].0.as_ref()[feature] <= threshold);
            Node::Split {
                feature,
                threshold,
                left: Box::new(grow(samples, l, dim, params, depth + 1)),
                right: Box::new(grow(samples, r, dim, params, depth + 1)),
            }
        }
        _ => leaf(idx),
    }
}

impl DecisionTree {
    fn leaf_for(&self, x: &[f64]) -> (usize, usize) {
        let mut node = &self.root;
        loop {
            match node {
                Node::Split { feature, threshold, left, right } => {
                    node = if x[*feature] <= *threshold { left } else { right };
                }
                Node::Leaf { critical, non_critical, .. } => return (*critical, *non_critical),
            }
        }
    }

    /// Majority vote of the leaf `x` falls in; ties predict critical.
    pub fn predict(&self, x: &[f64]) -> bool {
        let (c, nc) = self.leaf_for(x);
        c >= nc && c > 0
    }

    pub fn training_accuracy<G: AsRef<[f64]>>(&self, samples: &[(G, bool)]) -> f64 {
        if samples.is_empty() {
            return 1.0;
        }
        let hits = samples.iter().filter(|(g, y)| self.predict(g.as_ref()) == *y).count();
        hits as f64 / samples.len() as f64
    }

    pub fn depth(&self) -> usize {
        fn d(n: &Node) -> usize {
            match n {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + d(left).max(d(right)),
            }
        }
        d(&self.root)
    }

    /// Every leaf with its box, in left-to-right order.
    pub fn leaves(&self) -> Vec<LeafBox<'_>> {
        let mut out = Vec::new();
        let mut stack = vec![(&self.root, self.space.lower().to_vec(), self.space.upper().to_vec())];
        while let Some((node, lo, hi)) = stack.pop() {
            match node {
                Node::Split { feature, threshold, left, right } => {
                    let (mut left_hi, mut right_lo) = (hi.clone(), lo.clone());
                    left_hi[*feature] = *threshold;
                    right_lo[*feature] = *threshold;
                    stack.push((right, right_lo, hi));
                    stack.push((left, lo, left_hi));
                }
                Node::Leaf { critical, non_critical, members } => out.push(LeafBox {
                    bounds: SearchSpace::new(lo, hi).expect("split thresholds lie strictly inside their box"),
                    critical: *critical,
                    non_critical: *non_critical,
                    members,
                }),
            }
        }
        out
    }
}
