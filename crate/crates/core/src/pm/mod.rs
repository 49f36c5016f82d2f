//! Multiplicative bases rooted at a vertex, structure constants and
//! positivity.

mod conjugate;
mod group;
mod roots;

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, WeightedDigraph};
use crate::laurent::{LaurentPoly, PolyFraction, Rational};
use crate::linalg::{adjugate_inverse, det, FracMatrix, LinalgError, PolyMatrix};

pub use conjugate::{conjugate, conjugate_basis, graph_automorphisms, is_generalized_automorphism};
pub use group::{maximal_index_group, MaximalIndexGroup};
pub use roots::{
    gen_perm_of, positive_roots, rebase, roots, GenPerm, RootsReport, DEFAULT_ORACLE_BOUND,
};

#[derive(Debug, Error)]
pub enum PmError {
    #[error("not multiplicative at v{root}: det M_{root} = 0")]
    NotMultiplicativeAtRoot { root: usize },
    #[error("vertex {0} is not a root: b_{0} is not invertible")]
    RootNotInvertible(usize),
    #[error("vertex index {0} out of range")]
    OutOfRange(usize),
    #[error("basis is not positively multiplicative at its root")]
    NotPositive,
    #[error("star is not an involution on the index set")]
    NotInvolution,
    #[error("star does not fix the unit index")]
    StarMovesUnit,
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("coboundary residual {0:e} exceeds tolerance")]
    Coboundary(f64),
    #[error("invalid generalized permutation: {0}")]
    BadGenPerm(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Laurent(#[from] crate::LaurentError),
}

/// The basis `b_0..b_{n-1}` of the algebra generated by `A`, normalized by
/// `b_i e_root = e_i`. All matrices share one denominator.
#[derive(Debug, Clone)]
pub struct MultiplicativeBasis {
    root: usize,
    adjacency: PolyMatrix,
    basis: Vec<FracMatrix>,
    det_m: LaurentPoly,
    coeffs_in_powers: Vec<Vec<PolyFraction>>,
    strongly_connected: bool,
}

impl MultiplicativeBasis {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.adjacency.nvars()
    }

    pub fn adjacency(&self) -> &PolyMatrix {
        &self.adjacency
    }

    pub fn basis(&self) -> &[FracMatrix] {
        &self.basis
    }

    pub fn b(&self, i: usize) -> &FracMatrix {
        &self.basis[i]
    }

    /// `det M_root`.
    pub fn det_m(&self) -> &LaurentPoly {
        &self.det_m
    }

    /// The shared denominator of the basis matrices.
    pub fn denom(&self) -> &LaurentPoly {
        self.basis[0].denom()
    }

    /// `coeffs_in_powers()[i][j]` is the coefficient of `A^j` in `b_i`.
    pub fn coeffs_in_powers(&self) -> &[Vec<PolyFraction>] {
        &self.coeffs_in_powers
    }

    pub fn strongly_connected(&self) -> bool {
        self.strongly_connected
    }

    pub fn max_total_degree(&self) -> u64 {
        self.basis
            .iter()
            .map(|b| b.numer().total_degree().max(b.denom().total_degree()))
            .max()
            .unwrap_or(0)
    }

    fn from_parts(
        root: usize,
        adjacency: PolyMatrix,
        basis: Vec<FracMatrix>,
        det_m: LaurentPoly,
        coeffs_in_powers: Vec<Vec<PolyFraction>>,
        strongly_connected: bool,
    ) -> Result<Self, PmError> {
        let b = MultiplicativeBasis {
            root,
            adjacency,
            basis,
            det_m,
            coeffs_in_powers,
            strongly_connected,
        };
        b.verify()?;
        Ok(b)
    }

    /// Checks `b_root = I`, `b_i e_root = e_i` and `A b_j = sum_i A[i][j] b_i`.
    pub fn verify(&self) -> Result<(), PmError> {
        let n = self.n();
        let nv = self.nvars();
        let d = self.denom();
        if self.basis.iter().any(|b| b.denom() != d) {
            return Err(PmError::Invariant("basis denominators differ".into()));
        }
        if self.basis[self.root] != FracMatrix::identity(n, nv) {
            return Err(PmError::Invariant(format!("b_{} is not the identity", self.root)));
        }
        for (i, b) in self.basis.iter().enumerate() {
            for k in 0..n {
                let want = if k == i { d.clone() } else { LaurentPoly::zero(nv) };
                if b.numer().get(k, self.root) != &want {
                    return Err(PmError::Invariant(format!("b_{i} e_root != e_{i}")));
                }
            }
        }
        let a = &self.adjacency;
        for j in 0..n {
            let lhs = a.mul(self.basis[j].numer());
            let mut rhs = PolyMatrix::zero(n, nv);
            for i in 0..n {
                let w = a.get(i, j);
                if !w.is_zero() {
                    rhs = rhs.add(&self.basis[i].numer().scale(w));
                }
            }
            if lhs != rhs {
                return Err(PmError::Invariant(format!(
                    "A b_{j} != sum_i A[i][{j}] b_i"
                )));
            }
        }
        Ok(())
    }

    /// Expand a matrix of the algebra on the basis, reading its root column.
    pub fn decompose(&self, m: &FracMatrix) -> Vec<PolyFraction> {
        m.column(self.root)
    }

    /// `sum_i x_i b_i`.
    pub fn combine(&self, x: &[PolyFraction]) -> FracMatrix {
        let n = self.n();
        let mut acc = FracMatrix::from_poly(PolyMatrix::zero(n, self.nvars()));
        for (xi, b) in x.iter().zip(&self.basis) {
            if !xi.is_zero() {
                acc = acc.add(&b.scale(xi));
            }
        }
        acc
    }
}

/// The basis at `i0` when `det M_{i0} != 0`.
pub fn compute_basis(g: &WeightedDigraph, i0: usize) -> Result<MultiplicativeBasis, PmError> {
    let n = g.n();
    if i0 >= n {
        return Err(PmError::OutOfRange(i0));
    }
    let a = g.adjacency_matrix();
    let m = g.path_count_matrix(i0)?;
    let inv = match adjugate_inverse(&m) {
        Ok(inv) => inv,
        Err(LinalgError::Singular) => return Err(PmError::NotMultiplicativeAtRoot { root: i0 }),
        Err(e) => return Err(e.into()),
    };
    let d = inv.denom().clone();
    let adj = inv.numer();
    let nv = g.nvars();
    let mut powers = vec![PolyMatrix::identity(n, nv)];
    for j in 1..n {
        powers.push(a.mul(&powers[j - 1]));
    }
    let mut basis = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = PolyMatrix::zero(n, nv);
        for (j, pw) in powers.iter().enumerate() {
            let c = adj.get(j, i);
            if !c.is_zero() {
                acc = acc.add(&pw.scale(c));
            }
        }
        basis.push(FracMatrix::new(acc, d.clone())?);
        coeffs.push(inv.column(i));
    }
    MultiplicativeBasis::from_parts(i0, a, basis, d, coeffs, g.is_strongly_connected())
}

/// `det M_{i0}` without building the basis.
pub fn det_path_matrix(g: &WeightedDigraph, i0: usize) -> Result<LaurentPoly, PmError> {
    Ok(det(&g.path_count_matrix(i0)?))
}

/// `c[i][j][k]`: the coefficient of `b_k` in `b_i b_j`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    nvars: usize,
    unit: usize,
    tensor: Vec<PolyFraction>,
    exact: Vec<Option<LaurentPoly>>,
}

impl StructureConstants {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn from_fn(
        n: usize,
        nvars: usize,
        unit: usize,
        mut f: impl FnMut(usize, usize, usize) -> PolyFraction,
    ) -> Self {
        let mut tensor = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    tensor.push(f(i, j, k));
                }
            }
        }
        let exact = tensor.iter().map(|c| c.to_laurent()).collect();
        StructureConstants {
            n,
            nvars,
            unit,
            tensor,
            exact,
        }
    }

    /// Variable-free tensor from integers, `t[i][j][k]`.
    pub fn from_ints(unit: usize, t: &[Vec<Vec<i64>>]) -> Self {
        Self::from_fn(t.len(), 0, unit, |i, j, k| {
            PolyFraction::from_poly(LaurentPoly::from_int(0, t[i][j][k]))
        })
    }

    pub fn from_rationals(unit: usize, n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        Self::from_fn(n, 0, unit, |i, j, k| PolyFraction::constant(0, f(i, j, k)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &PolyFraction {
        &self.tensor[self.idx(i, j, k)]
    }

    /// The constant as a Laurent polynomial, when the denominator divides.
    pub fn laurent(&self, i: usize, j: usize, k: usize) -> Option<&LaurentPoly> {
        self.exact[self.idx(i, j, k)].as_ref()
    }

    /// Product of two coordinate vectors over the basis.
    pub fn mul_vectors(&self, x: &[PolyFraction], y: &[PolyFraction]) -> Vec<PolyFraction> {
        let n = self.n;
        let mut out = vec![PolyFraction::zero(self.nvars); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Evaluate every constant at `t`.
    pub fn specialize(&self, t: &[f64]) -> Result<RealTensor, crate::LaurentError> {
        let data = self
            .tensor
            .iter()
            .map(|c| c.evaluate(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RealTensor {
            n: self.n,
            unit: self.unit,
            data,
        })
    }

    /// All constants nonnegative Laurent polynomials.
    pub fn verdict(&self) -> Verdict {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    match self.laurent(i, j, k) {
                        None => return Verdict::No(Witness::new(i, j, k, Failure::NotPolynomial)),
                        Some(p) if !p.is_nonneg() => {
                            return Verdict::No(Witness::new(i, j, k, Failure::NegativeCoefficient))
                        }
                        _ => {}
                    }
                }
            }
        }
        Verdict::Yes
    }
}

/// A numeric structure tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTensor {
    pub n: usize,
    pub unit: usize,
    pub data: Vec<f64>,
}

impl RealTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    pub fn from_fn(n: usize, unit: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        RealTensor { n, unit, data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    /// `det M` does not divide the numerator.
    NotPolynomial,
    NegativeCoefficient,
    /// Negative value under a specialization.
    NegativeValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub failure: Failure,
}

impl Witness {
    fn new(i: usize, j: usize, k: usize, failure: Failure) -> Self {
        Witness { i, j, k, failure }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.failure {
            Failure::NotPolynomial => "not a Laurent polynomial",
            Failure::NegativeCoefficient => "negative coefficient",
            Failure::NegativeValue => "negative value",
        };
        write!(f, "c[{}][{}][{}]: {}", self.i, self.j, self.k, why)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No(Witness),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

/// Tensor read from the basis matrices: `c[i][j][k] = b_i[k][j]`. Symmetry in
/// `i, j` is checked.
pub fn structure_constants(b: &MultiplicativeBasis) -> Result<StructureConstants, PmError> {
    let n = b.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if b.b(i).numer().get(k, j) != b.b(j).numer().get(k, i) {
                    return Err(PmError::Invariant(format!(
                        "c[{i}][{j}][{k}] != c[{j}][{i}][{k}]"
                    )));
                }
            }
        }
    }
    Ok(StructureConstants::from_fn(n, b.nvars(), b.root(), |i, j, k| {
        b.b(i).entry(k, j)
    }))
}

/// Every entry of every `b_i` is a Laurent polynomial with nonnegative
/// coefficients. Witness is the first failing `(i, j, k)` in lex order.
pub fn is_positively_multiplicative_at(b: &MultiplicativeBasis) -> Verdict {
    let n = b.n();
    let d = b.denom();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let num = b.b(i).numer().get(k, j);
                match num.exact_divide(d) {
                    Err(_) => return Verdict::No(Witness::new(i, j, k, Failure::NotPolynomial)),
                    Ok(q) if !q.is_nonneg() => {
                        return Verdict::No(Witness::new(i, j, k, Failure::NegativeCoefficient))
                    }
                    Ok(_) => {}
                }
            }
        }
    }
    Verdict::Yes
}

/// Positivity after substituting positive rationals for the variables.
pub fn is_positive_under(b: &MultiplicativeBasis, t: &[Rational]) -> Result<Verdict, PmError> {
    let n = b.n();
    let d = b.denom().evaluate_exact(t)?;
    if num_traits::Zero::is_zero(&d) {
        return Err(PmError::Invariant("denominator vanishes at the specialization".into()));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = b.b(i).numer().get(k, j).evaluate_exact(t)? / &d;
                if num_traits::Signed::is_negative(&v) {
                    return Ok(Verdict::No(Witness::new(i, j, k, Failure::NegativeValue)));
                }
            }
        }
    }
    Ok(Verdict::Yes)
}

/// Every `(j, k)` has some `i` with `c[i][j][k] != 0`.
pub fn is_spm(c: &StructureConstants) -> bool {
    let n = c.n();
    (0..n).all(|j| (0..n).all(|k| (0..n).any(|i| !c.get(i, j, k).is_zero())))
}

/// Both fusion conditions: `c_{i,j}^k = c_{j*,i*}^{k*}` and
/// `c_{i,j}^k = c_{i*,k}^j`.
pub fn verify_fusion(c: &StructureConstants, star: &[usize]) -> Result<bool, PmError> {
    let n = c.n();
    if star.len() != n || star.iter().any(|&s| s >= n) || (0..n).any(|i| star[star[i]] != i) {
        return Err(PmError::NotInvolution);
    }
    if star[c.unit()] != c.unit() {
        return Err(PmError::StarMovesUnit);
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = c.get(i, j, k);
                if x != c.get(star[j], star[i], star[k]) || x != c.get(star[i], k, j) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
