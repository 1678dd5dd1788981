use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{FalsifyError, TimeSeries};

/// ARX model orders.
///
/// The scalar orders apply to every channel pair: `na` lags of each output in
/// its own equation (no cross-output terms), `nb` lags of every input starting
/// at delay `nk`. The optional matrices override them per pair for MIMO models;
/// `na_matrix[i][j]` is the number of lags of output `j` in the equation of
/// output `i`, `nb_matrix[i][l]` and `nk_matrix[i][l]` refer to input `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArxConfig {
    pub na: usize,
    pub nb: usize,
    pub nk: usize,
    pub na_matrix: Option<Vec<Vec<usize>>>,
    pub nb_matrix: Option<Vec<Vec<usize>>>,
    pub nk_matrix: Option<Vec<Vec<usize>>>,
}

impl Default for ArxConfig {
    fn default() -> Self {
        Self { na: 2, nb: 2, nk: 2, na_matrix: None, nb_matrix: None, nk_matrix: None }
    }
}

impl ArxConfig {
    pub fn siso(na: usize, nb: usize, nk: usize) -> Self {
        Self { na, nb, nk, ..Default::default() }
    }

    /// Expands the configuration to full order matrices.
    pub fn resolve(&self, outputs: usize, inputs: usize) -> Result<ArxOrders, FalsifyError> {
        let bad = |m: String| Err(FalsifyError::InvalidConfig(m));
        let shape_ok = |m: &Vec<Vec<usize>>, cols: usize| m.len() == outputs && m.iter().all(|r| r.len() == cols);
        let na = match &self.na_matrix {
            Some(m) if !shape_ok(m, outputs) => return bad(format!("na matrix must be {outputs}x{outputs}")),
            Some(m) => m.clone(),
            None => (0..outputs).map(|i| (0..outputs).map(|j| if i == j { self.na } else { 0 }).collect()).collect(),
        };
        let per_input = |m: &Option<Vec<Vec<usize>>>, scalar: usize, name: &str| match m {
            Some(m) if !shape_ok(m, inputs) => {
                Err(FalsifyError::InvalidConfig(format!("{name} matrix must be {outputs}x{inputs}")))
            }
            Some(m) => Ok(m.clone()),
            None => Ok(vec![vec![scalar; inputs]; outputs]),
        };
        let nb = per_input(&self.nb_matrix, self.nb, "nb")?;
        let nk = per_input(&self.nk_matrix, self.nk, "nk")?;
        if nb.iter().flatten().any(|&v| v == 0) {
            return bad("input orders nb must be at least 1".into());
        }
        if nk.iter().flatten().any(|&v| v == 0) {
            return bad("input delays nk must be at least 1".into());
        }
        Ok(ArxOrders { na, nb, nk })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArxOrders {
    pub na: Vec<Vec<usize>>,
    pub nb: Vec<Vec<usize>>,
    pub nk: Vec<Vec<usize>>,
}

impl ArxOrders {
    pub fn outputs(&self) -> usize {
        self.na.len()
    }

    pub fn inputs(&self) -> usize {
        self.nb.first().map_or(0, Vec::len)
    }

    /// Coefficients in the equation of output `i`.
    pub fn coefficients(&self, i: usize) -> usize {
        self.na[i].iter().sum::<usize>() + self.nb[i].iter().sum::<usize>()
    }

    /// Oldest sample any regressor of output `i` reaches back to.
    fn max_lag(&self, i: usize) -> usize {
        let a = self.na[i].iter().copied().max().unwrap_or(0);
        let b = self.nb[i].iter().zip(&self.nk[i]).map(|(b, k)| b + k - 1).max().unwrap_or(0);
        a.max(b)
    }

    /// Regressor of output `i` at step `k`; lags before the start read as zero.
    fn regressor(&self, i: usize, y: &[Vec<f64>], u: &[Vec<f64>], k: usize, phi: &mut Vec<f64>) {
        phi.clear();
        let at = |s: &[Vec<f64>], c: usize, lag: usize| if lag <= k { s[k - lag][c] } else { 0.0 };
        for (j, &na) in self.na[i].iter().enumerate() {
            phi.extend((1..=na).map(|lag| at(y, j, lag)));
        }
        for (l, (&nb, &nk)) in self.nb[i].iter().zip(&self.nk[i]).enumerate() {
            phi.extend((0..nb).map(|d| at(u, l, nk + d)));
        }
    }
}

/// Fitted ARX model. For output `i`,
///
/// `y_i[k] = sum_j sum_{d=1..na_ij} a y_j[k-d] + sum_l sum_{d=0..nb_il-1} b u_l[k-nk_il-d]`
///
/// with `theta[i]` listing the `a` blocks by output, then the `b` blocks by input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArxModel {
    pub orders: ArxOrders,
    pub theta: Vec<Vec<f64>>,
    pub period: f64,
    /// Euclidean norm of the one-step-ahead training residuals, all outputs.
    pub residual_norm: f64,
    /// Norm of regressor-transpose times residual, all outputs.
    pub orthogonality: f64,
    /// Magnitude of the normal-equation terms, `|G| |theta| + |Phi^T y|`.
    pub normal_scale: f64,
    /// The regression was singular; `theta` is the minimum-norm solution.
    pub rank_deficient: bool,
}

impl ArxModel {
    /// Model with all coefficients zero.
    pub fn zero(orders: ArxOrders, period: f64) -> Self {
        let theta = (0..orders.outputs()).map(|i| vec![0.0; orders.coefficients(i)]).collect();
        Self { orders, theta, period, residual_norm: 0.0, orthogonality: 0.0, normal_scale: 0.0, rank_deficient: false }
    }

    /// Whether the residuals are orthogonal to the regressors within
    /// `tol` relative to the normal-equation scale.
    pub fn residual_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality <= tol * self.normal_scale.max(f64::MIN_POSITIVE)
    }
}

/// Relative singular-value cutoff for the Gram matrix.
const RANK_TOL: f64 = 1e-12;

fn check_dataset(data: &[(TimeSeries, TimeSeries)]) -> Result<(usize, usize, f64), FalsifyError> {
    let bad = |m: String| Err(FalsifyError::InvalidData(m));
    let Some((u0, y0)) = data.first() else { return bad("empty dataset".into()) };
    let (nu, ny, period) = (u0.channels(), y0.channels(), u0.period);
    for (n, (u, y)) in data.iter().enumerate() {
        if u.len() != y.len() {
            return bad(format!("trace {n}: {} input samples vs {} output samples", u.len(), y.len()));
        }
        if u.is_empty() {
            return bad(format!("trace {n} is empty"));
        }
        if u.channels() != nu || y.channels() != ny || u.values.iter().any(|v| v.len() != nu) || y.values.iter().any(|v| v.len() != ny) {
            return bad(format!("trace {n} has inconsistent channel counts"));
        }
        if u.period != period || y.period != period {
            return bad(format!("trace {n} has a different sample period"));
        }
        if u.values.iter().chain(&y.values).flatten().any(|v| !v.is_finite()) {
            return bad(format!("trace {n} has non-finite samples"));
        }
    }
    Ok((nu, ny, period))
}

/// Least-squares ARX fit on the stacked regression of every trace.
///
/// Rows start once every lag falls inside the trace. Singular regressions are
/// solved with the pseudo-inverse and flagged.
pub fn fit_arx(data: &[(TimeSeries, TimeSeries)], cfg: &ArxConfig) -> Result<ArxModel, FalsifyError> {
    let (nu, ny, period) = check_dataset(data)?;
    let orders = cfg.resolve(ny, nu)?;
    let mut model = ArxModel::zero(orders, period);
    let mut phi = Vec::new();
    let (mut res2, mut orth2) = (0.0, 0.0);
    for i in 0..ny {
        let p = model.orders.coefficients(i);
        let lag = model.orders.max_lag(i);
        let rows: usize = data.iter().map(|(u, _)| u.len().saturating_sub(lag)).sum();
        if rows < p {
            return Err(FalsifyError::TooFewRows { rows, coefficients: p });
        }
        let mut g = DMatrix::<f64>::zeros(p, p);
        let mut b = DVector::<f64>::zeros(p);
        for (u, y) in data {
            for k in lag..u.len() {
                model.orders.regressor(i, &y.values, &u.values, k, &mut phi);
                let v = DVector::from_column_slice(&phi);
                g.ger(1.0, &v, &v, 1.0);
                b.axpy(y.values[k][i], &v, 1.0);
            }
        }
        let svd = g.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let cutoff = smax * RANK_TOL;
        if svd.singular_values.iter().any(|&s| s <= cutoff) {
            model.rank_deficient = true;
        }
        let theta = svd.solve(&b, cutoff).map_err(|e| FalsifyError::InvalidData(e.to_string()))?;
        let mut normal = DVector::<f64>::zeros(p);
        for (u, y) in data {
            for k in lag..u.len() {
                model.orders.regressor(i, &y.values, &u.values, k, &mut phi);
                let v = DVector::from_column_slice(&phi);
                let r = y.values[k][i] - v.dot(&theta);
                res2 += r * r;
                normal.axpy(r, &v, 1.0);
            }
        }
        orth2 += normal.norm_squared();
        model.normal_scale += g.norm() * theta.norm() + b.norm();
        model.theta[i] = theta.iter().copied().collect();
    }
    model.residual_norm = res2.sqrt();
    model.orthogonality = orth2.sqrt();
    Ok(model)
}

/// Free-run simulation from rest: predictions feed back as lagged outputs.
pub fn simulate_arx(model: &ArxModel, input: &TimeSeries) -> Result<TimeSeries, FalsifyError> {
    let ny = model.orders.outputs();
    if input.values.iter().any(|v| v.len() != model.orders.inputs()) {
        return Err(FalsifyError::InvalidData(format!(
            "model expects {} input channels",
            model.orders.inputs()
        )));
    }
    let mut y: Vec<Vec<f64>> = Vec::with_capacity(input.len());
    let mut phi = Vec::new();
    for k in 0..input.len() {
        y.push(vec![0.0; ny]);
        let mut row = vec![0.0; ny];
        for (i, out) in row.iter_mut().enumerate() {
            model.orders.regressor(i, &y, &input.values, k, &mut phi);
            *out = phi.iter().zip(&model.theta[i]).map(|(a, b)| a * b).sum();
        }
        y[k] = row;
    }
    Ok(TimeSeries { period: input.period, values: y })
}
