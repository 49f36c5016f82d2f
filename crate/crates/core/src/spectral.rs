//! Numeric layer: specializations, Perron-Frobenius eigenpairs, dimension
//! vectors and the associated stochastic matrices.

use std::collections::VecDeque;

use thiserror::Error;

use crate::linalg::PolyMatrix;
use crate::pm::RealTensor;

pub type RealMatrix = Vec<Vec<f64>>;

/// Power-iteration stopping residual.
pub const PF_TOLERANCE: f64 = 1e-12;
/// Residual accepted when the iteration budget runs out.
pub const PF_ACCEPT: f64 = 1e-10;
pub const PF_MAX_ITERATIONS: usize = 100_000;
/// Tolerance for `d_i d_j = sum_k c[i][j][k] d_k`.
pub const MORPHISM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("specialization values must be positive")]
    NotPositive,
    #[error("negative matrix entry at ({0}, {1})")]
    Negative(usize, usize),
    #[error("support is not strongly connected")]
    Reducible,
    #[error("power iteration did not converge after {iterations} steps (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("tensor is not strongly positively multiplicative")]
    NotSpm,
    #[error("morphism identity fails at ({i}, {j}): error {error:e}")]
    Morphism { i: usize, j: usize, error: f64 },
    #[error(transparent)]
    Laurent(#[from] crate::LaurentError),
}

/// Positive values `t` for `z_1..z_m`, plus an optional value `s` for `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Specialization {
    t: Vec<f64>,
    s: Option<f64>,
}

impl Specialization {
    pub fn new(t: Vec<f64>) -> Result<Self, SpectralError> {
        if t.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(SpectralError::NotPositive);
        }
        Ok(Specialization { t, s: None })
    }

    pub fn with_s(mut self, s: f64) -> Result<Self, SpectralError> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(SpectralError::NotPositive);
        }
        self.s = Some(s);
        Ok(self)
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn s(&self) -> Option<f64> {
        self.s
    }
}

pub fn specialize(a: &PolyMatrix, th: &Specialization) -> Result<RealMatrix, SpectralError> {
    if a.nvars() != th.t.len() {
        return Err(SpectralError::Dimension(format!(
            "{} variables, {} values",
            a.nvars(),
            th.t.len()
        )));
    }
    Ok(a.evaluate(&th.t)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PFResult {
    pub eigenvalue: f64,
    /// Left eigenvector, normalized to 1 at the chosen coordinate.
    pub left_vector: Vec<f64>,
    /// `max |(v^T M - lambda v^T)_j| / lambda`.
    pub residual: f64,
    pub iterations: usize,
}

fn check_square(m: &[Vec<f64>]) -> Result<usize, SpectralError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(SpectralError::Dimension("matrix must be square and nonempty".into()));
    }
    Ok(n)
}

fn support_strongly_connected(m: &[Vec<f64>]) -> bool {
    let n = m.len();
    let reach = |fwd: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let w = if fwd { m[v][u] } else { m[u][v] };
                if w != 0.0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

fn left_mul(v: &[f64], m: &[Vec<f64>]) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    for (i, vi) in v.iter().enumerate() {
        for j in 0..n {
            out[j] += vi * m[i][j];
        }
    }
    out
}

fn residual(v: &[f64], m: &[Vec<f64>], lambda: f64) -> f64 {
    let vm = left_mul(v, m);
    let r = vm
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max);
    r / lambda
}

/// Left Perron-Frobenius pair of a nonnegative irreducible matrix, from the
/// all-ones start vector.
pub fn perron_frobenius(m: &[Vec<f64>], normalize_at: usize) -> Result<PFResult, SpectralError> {
    let n = check_square(m)?;
    perron_frobenius_from(m, normalize_at, &vec![1.0; n])
}

/// Power iteration on `M + I` starting at `start` (positive).
pub fn perron_frobenius_from(
    m: &[Vec<f64>],
    normalize_at: usize,
    start: &[f64],
) -> Result<PFResult, SpectralError> {
    let n = check_square(m)?;
    if normalize_at >= n || start.len() != n {
        return Err(SpectralError::Dimension("normalization index or start vector".into()));
    }
    if start.iter().any(|&x| !(x > 0.0)) {
        return Err(SpectralError::NotPositive);
    }
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x < 0.0 || !x.is_finite() {
                return Err(SpectralError::Negative(i, j));
            }
        }
    }
    if !support_strongly_connected(m) || (n == 1 && m[0][0] == 0.0) {
        return Err(SpectralError::Reducible);
    }

    let mut v = start.to_vec();
    let mut last = (f64::INFINITY, 0.0);
    for it in 1..=PF_MAX_ITERATIONS {
        let mut w = left_mul(&v, m);
        for (wj, vj) in w.iter_mut().zip(&v) {
            *wj += vj;
        }
        let scale = w[normalize_at];
        for x in &mut w {
            *x /= scale;
        }
        v = w;
        // Rayleigh-style estimate against the unshifted matrix.
        let vm = left_mul(&v, m);
        let lambda = vm.iter().sum::<f64>() / v.iter().sum::<f64>();
        let r = residual(&v, m, lambda);
        last = (r, lambda);
        if r <= PF_TOLERANCE {
            return Ok(PFResult {
                eigenvalue: lambda,
                left_vector: v,
                residual: r,
                iterations: it,
            });
        }
    }
    let (r, lambda) = last;
    if r <= PF_ACCEPT {
        Ok(PFResult {
            eigenvalue: lambda,
            left_vector: v,
            residual: r,
            iterations: PF_MAX_ITERATIONS,
        })
    } else {
        Err(SpectralError::NonConvergence {
            iterations: PF_MAX_ITERATIONS,
            residual: r,
        })
    }
}

/// Right Perron-Frobenius vector, normalized at `normalize_at`.
pub fn right_perron_vector(m: &[Vec<f64>], normalize_at: usize) -> Result<PFResult, SpectralError> {
    let n = check_square(m)?;
    let t: RealMatrix = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    perron_frobenius(&t, normalize_at)
}

/// Values of the positive morphism on the basis. `d[unit] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionVector {
    pub d: Vec<f64>,
    pub unit: usize,
    /// Eigenvalue of `S = sum_i L_i`.
    pub eigenvalue: f64,
}

/// Real SPM check: nonnegative and every `(j, k)` touched by some `i`.
pub fn is_spm_real(c: &RealTensor) -> bool {
    let n = c.n;
    c.data.iter().all(|&x| x >= 0.0)
        && (0..n).all(|j| (0..n).all(|k| (0..n).any(|i| c.get(i, j, k) > 0.0)))
}

pub fn dimension_vector(c: &RealTensor) -> Result<DimensionVector, SpectralError> {
    dimension_vector_from(c, &vec![1.0; c.n])
}

pub fn dimension_vector_from(c: &RealTensor, start: &[f64]) -> Result<DimensionVector, SpectralError> {
    let n = c.n;
    if c.data.len() != n * n * n || c.unit >= n {
        return Err(SpectralError::Dimension("malformed tensor".into()));
    }
    if !is_spm_real(c) {
        return Err(SpectralError::NotSpm);
    }
    // S[k][j] = sum_i c[i][j][k]
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, row) in s.iter_mut().enumerate() {
                row[j] += c.get(i, j, k);
            }
        }
    }
    let pf = perron_frobenius_from(&s, c.unit, start)?;
    let v = &pf.left_vector;
    let u = c.unit;
    // v^T R_i = d_i v^T with R_i[k][j] = c[j][i][k], read at the unit coordinate.
    let d: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|k| v[k] * c.get(u, i, k)).sum::<f64>() / v[u])
        .collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = d[i] * d[j];
            let rhs: f64 = (0..n).map(|k| c.get(i, j, k) * d[k]).sum();
            let err = (lhs - rhs).abs();
            if err > MORPHISM_TOLERANCE * lhs.max(1.0) {
                return Err(SpectralError::Morphism { i, j, error: err });
            }
        }
    }
    Ok(DimensionVector {
        d,
        unit: u,
        eigenvalue: pf.eigenvalue,
    })
}

/// `P[i][j] = v_i a_ij / (lambda v_j)`. Columns sum to 1.
pub fn stochastic_matrix(a: &[Vec<f64>], pf: &PFResult) -> RealMatrix {
    let v = &pf.left_vector;
    let l = pf.eigenvalue;
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| v[i] * x / (l * v[j]))
                .collect()
        })
        .collect()
}

/// Fixed point `p = P p` of a column-stochastic matrix, `sum p = 1`, by
/// iterating the lazy chain `(P + I) / 2`.
pub fn stationary_distribution(p: &[Vec<f64>]) -> Result<Vec<f64>, SpectralError> {
    let n = check_square(p)?;
    let mut x = vec![1.0 / n as f64; n];
    for it in 1..=PF_MAX_ITERATIONS {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (0..n).map(|j| p[i][j] * x[j]).sum();
            y[i] = 0.5 * (s + x[i]);
        }
        let total: f64 = y.iter().sum();
        for v in &mut y {
            *v /= total;
        }
        let diff = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if diff <= 1e-15 {
            return Ok(x);
        }
        if it == PF_MAX_ITERATIONS && diff > 1e-12 {
            return Err(SpectralError::NonConvergence {
                iterations: it,
                residual: diff,
            });
        }
    }
    Ok(x)
}
