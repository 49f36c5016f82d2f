use std::collections::BTreeSet;

use crate::graph::{path_count_from_adjacency, WeightedDigraph};
use crate::laurent::{LaurentPoly, Monomial};
use crate::linalg::{adjugate_inverse, det, FracMatrix, LinalgError, PolyMatrix};

use super::{is_positively_multiplicative_at, MultiplicativeBasis, PmError};

pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// `e_i -> scalars[i] e_{sigma[i]}` with positive monomial scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPerm {
    sigma: Vec<usize>,
    scalars: Vec<LaurentPoly>,
}

impl GenPerm {
    pub fn new(sigma: Vec<usize>, scalars: Vec<LaurentPoly>) -> Result<Self, PmError> {
        let n = sigma.len();
        if scalars.len() != n {
            return Err(PmError::BadGenPerm("sigma and scalars differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(PmError::BadGenPerm("sigma is not a bijection".into()));
            }
            seen[s] = true;
        }
        if let Some(i) = scalars.iter().position(|l| !l.is_positive_monomial()) {
            return Err(PmError::BadGenPerm(format!("scalar {i} is not a positive monomial")));
        }
        Ok(GenPerm { sigma, scalars })
    }

    pub fn permutation(sigma: Vec<usize>, nvars: usize) -> Result<Self, PmError> {
        let n = sigma.len();
        Self::new(sigma, vec![LaurentPoly::one(nvars); n])
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        GenPerm {
            sigma: (0..n).collect(),
            scalars: vec![LaurentPoly::one(nvars); n],
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn scalars(&self) -> &[LaurentPoly] {
        &self.scalars
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s) && self.scalars.iter().all(|l| l.is_one())
    }

    pub fn matrix(&self, nvars: usize) -> PolyMatrix {
        let n = self.n();
        let mut m = PolyMatrix::zero(n, nvars);
        for i in 0..n {
            m.set(self.sigma[i], i, self.scalars[i].clone());
        }
        m
    }

    /// Inverse: `e_{sigma(i)} -> e_i / scalars[i]`.
    pub fn inverse(&self) -> GenPerm {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut scalars = vec![LaurentPoly::zero(0); n];
        for i in 0..n {
            sigma[self.sigma[i]] = i;
            scalars[self.sigma[i]] = monomial_inverse(&self.scalars[i]);
        }
        GenPerm { sigma, scalars }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GenPerm) -> GenPerm {
        let n = self.n();
        let sigma = (0..n).map(|i| self.sigma[other.sigma[i]]).collect();
        let scalars = (0..n)
            .map(|i| &other.scalars[i] * &self.scalars[other.sigma[i]])
            .collect();
        GenPerm { sigma, scalars }
    }
}

pub(crate) fn monomial_inverse(p: &LaurentPoly) -> LaurentPoly {
    let (m, c) = p.as_monomial().expect("monomial");
    let inv = Monomial::new(m.exps().iter().map(|e| -e).collect());
    LaurentPoly::term(p.nvars(), inv, c.recip())
}

/// Decompose `M` as a permutation with positive monomial scalars.
pub fn gen_perm_of(m: &FracMatrix) -> Option<GenPerm> {
    let n = m.n();
    let mut sigma = Vec::with_capacity(n);
    let mut scalars = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for j in 0..n {
        let mut nz = (0..n).filter(|&i| !m.numer().get(i, j).is_zero());
        let r = nz.next()?;
        if nz.next().is_some() || used[r] {
            return None;
        }
        used[r] = true;
        let lam = m.numer().get(r, j).exact_divide(m.denom()).ok()?;
        if !lam.is_positive_monomial() {
            return None;
        }
        sigma.push(r);
        scalars.push(lam);
    }
    Some(GenPerm { sigma, scalars })
}

/// One shared denominator; divided out entirely when it divides everything.
fn shared_form(numers: Vec<PolyMatrix>, denom: LaurentPoly) -> Result<Vec<FracMatrix>, PmError> {
    let reduced: Option<Vec<PolyMatrix>> = numers
        .iter()
        .map(|m| FracMatrix::new(m.clone(), denom.clone()).ok()?.to_poly_matrix())
        .collect();
    Ok(match reduced {
        Some(ms) => ms.into_iter().map(FracMatrix::from_poly).collect(),
        None => numers
            .into_iter()
            .map(|m| FracMatrix::new(m, denom.clone()))
            .collect::<Result<_, _>>()?,
    })
}

/// Vertices at which the graph is multiplicative.
pub fn roots(g: &WeightedDigraph) -> Result<Vec<usize>, PmError> {
    let mut out = Vec::new();
    for i in 0..g.n() {
        if !det(&g.path_count_matrix(i)?).is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

/// The basis `b_j^{-1} b_i` rooted at `j`.
pub fn rebase(b: &MultiplicativeBasis, j: usize) -> Result<MultiplicativeBasis, PmError> {
    let n = b.n();
    if j >= n {
        return Err(PmError::OutOfRange(j));
    }
    if j == b.root() {
        return Ok(b.clone());
    }
    // Work with polynomial matrices when the shared denominator divides out.
    let polys: Option<Vec<PolyMatrix>> = b.basis().iter().map(|m| m.to_poly_matrix()).collect();
    let numers: Vec<PolyMatrix> = match polys {
        Some(p) => p,
        None => b.basis().iter().map(|m| m.numer().clone()).collect(),
    };
    // b'_i = adj(N_j) N_i / det(N_j)
    let inv = match adjugate_inverse(&numers[j]) {
        Ok(inv) => inv,
        Err(LinalgError::Singular) => return Err(PmError::RootNotInvertible(j)),
        Err(e) => return Err(e.into()),
    };
    let denom = inv.denom().clone();
    let prods: Vec<PolyMatrix> = numers.iter().map(|ni| inv.numer().mul(ni)).collect();
    let basis = shared_form(prods, denom)?;
    let mj = adjugate_inverse(&path_count_from_adjacency(b.adjacency(), j)).map_err(|_| {
        PmError::Invariant(format!("b_{j} invertible but M_{j} singular"))
    })?;
    let coeffs = (0..n).map(|i| mj.column(i)).collect();
    MultiplicativeBasis::from_parts(
        j,
        b.adjacency().clone(),
        basis,
        mj.denom().clone(),
        coeffs,
        b.strongly_connected(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootsReport {
    /// Indices whose `b_i` is a generalized permutation.
    pub fast: BTreeSet<usize>,
    /// Rebase-and-test result, when `n` is within the oracle bound.
    pub oracle: Option<BTreeSet<usize>>,
}

/// Positive roots by generalized-permutation detection, cross-checked by
/// rebasing to every root when `n <= oracle_bound`.
pub fn positive_roots(b: &MultiplicativeBasis, oracle_bound: usize) -> Result<RootsReport, PmError> {
    if !is_positively_multiplicative_at(b).is_yes() {
        return Err(PmError::NotPositive);
    }
    let fast: BTreeSet<usize> = (0..b.n()).filter(|&i| gen_perm_of(b.b(i)).is_some()).collect();
    let oracle = if b.n() <= oracle_bound {
        let mut set = BTreeSet::new();
        for j in 0..b.n() {
            match rebase(b, j) {
                Ok(r) => {
                    if is_positively_multiplicative_at(&r).is_yes() {
                        set.insert(j);
                    }
                }
                Err(PmError::RootNotInvertible(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if set != fast {
            return Err(PmError::Invariant(format!(
                "positive roots disagree: generalized permutations {fast:?}, rebase oracle {set:?}"
            )));
        }
        Some(set)
    } else {
        None
    };
    Ok(RootsReport { fast, oracle })
}
