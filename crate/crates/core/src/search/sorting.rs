/// Pareto dominance for minimization: `a` is no worse everywhere and strictly
/// better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Fast non-dominated sort. Returns fronts of indices into `objectives`,
/// front 0 first; within a front indices are ascending.
pub fn non_dominated_sort<V: AsRef<[f64]>>(objectives: &[V]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (objectives[i].as_ref(), objectives[j].as_ref());
            if dominates(a, b) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates(b, a) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Crowding distance of each member of a single front.
///
/// Boundary members of every objective get `f64::INFINITY`; interior members
/// accumulate the gap between their neighbours divided by the objective's range.
/// Objectives with zero range contribute nothing.
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let n = front.len();
    if n == 0 {
        return Vec::new();
    }
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let value = |i: usize| front[i].as_ref()[k];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (min, max) = (value(order[0]), value(order[n - 1]));
        let range = max - min;
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distance[w[1]] += (value(w[2]) - value(w[0])) / range;
        }
    }
    distance
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Peels fronts by repeatedly taking the members no remaining member dominates.
    fn brute_force_fronts(objs: &[Vec<f64>]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..objs.len()).collect();
        let mut fronts = Vec::new();
        while !remaining.is_empty() {
            let front: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| !remaining.iter().any(|&j| dominates(&objs[j], &objs[i])))
                .collect();
            remaining.retain(|i| !front.contains(i));
            fronts.push(front);
        }
        fronts
    }

    #[test]
    fn textbook_example() {
        let objs = vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]];
        let fronts = non_dominated_sort(&objs);
        assert_eq!(fronts, brute_force_fronts(&objs));
        assert_eq!(fronts, vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn identical_and_single() {
        let same = vec![vec![1.0, 1.0]; 5];
        assert_eq!(non_dominated_sort(&same), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(non_dominated_sort(&[vec![4.0, 2.0]]), vec![vec![0]]);
        assert!(non_dominated_sort::<Vec<f64>>(&[]).is_empty());
    }

    #[test]
    fn crowding_examples() {
        assert_eq!(crowding_distance(&[vec![0.0, 1.0]]), vec![f64::INFINITY]);
        assert_eq!(
            crowding_distance(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            vec![f64::INFINITY; 2]
        );
        let d = crowding_distance(&[vec![0.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.0]]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn crowding_zero_range_contributes_nothing() {
        let d = crowding_distance(&[vec![0.0, 5.0], vec![1.0, 5.0], vec![3.0, 5.0]]);
        // first objective: (3 - 0) / 3; second objective flat
        assert!((d[1] - 1.0).abs() < 1e-15);
    }

    fn population() -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(0i32..6, 2), 1..50)
            .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect())
    }

    proptest! {
        #[test]
        fn matches_brute_force(objs in population()) {
            prop_assert_eq!(non_dominated_sort(&objs), brute_force_fronts(&objs));
        }

        #[test]
        fn fronts_partition_and_order(objs in population()) {
            let fronts = non_dominated_sort(&objs);
            let mut seen: Vec<usize> = fronts.iter().flatten().copied().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..objs.len()).collect::<Vec<_>>());
            for (i, later) in fronts.iter().enumerate() {
                for earlier in &fronts[..i] {
                    for &a in later {
                        for &b in earlier {
                            prop_assert!(!dominates(&objs[a], &objs[b]));
                        }
                    }
                }
            }
        }

        #[test]
        fn translation_invariant(objs in population(), shift in prop::collection::vec(-100.0f64..100.0, 2)) {
            let moved: Vec<Vec<f64>> = objs
                .iter()
                .map(|p| p.iter().zip(&shift).map(|(x, s)| x + s.round()).collect())
                .collect();
            prop_assert_eq!(non_dominated_sort(&objs), non_dominated_sort(&moved));
        }
    }
}
