//! Relabelling and weight change by a generalized permutation.

use crate::graph::WeightedDigraph;
use crate::laurent::LaurentPoly;
use crate::linalg::{FracMatrix, PolyMatrix};

use super::roots::{monomial_inverse, GenPerm};
use super::{MultiplicativeBasis, PmError};

fn check_dim(g_n: usize, p: &GenPerm, nvars: usize) -> Result<(), PmError> {
    if p.n() != g_n {
        return Err(PmError::BadGenPerm(format!("dimension {} != {}", p.n(), g_n)));
    }
    if p.scalars().iter().any(|l| l.nvars() != nvars) {
        return Err(PmError::BadGenPerm("scalar variable count".into()));
    }
    Ok(())
}

/// `P^{-1} A P` as an adjacency matrix.
fn conjugated_matrix(a: &PolyMatrix, p: &GenPerm) -> PolyMatrix {
    let n = a.n();
    let s = p.sigma();
    let lam = p.scalars();
    let mut out = PolyMatrix::zero(n, a.nvars());
    for r in 0..n {
        let inv_r = monomial_inverse(&lam[r]);
        for c in 0..n {
            let w = a.get(s[r], s[c]);
            if !w.is_zero() {
                out.set(r, c, &(w * &lam[c]) * &inv_r);
            }
        }
    }
    out
}

/// The graph with adjacency `P^{-1} A P`. New vertex `r` carries the label of
/// old vertex `sigma(r)`.
pub fn conjugate(g: &WeightedDigraph, p: &GenPerm) -> Result<WeightedDigraph, PmError> {
    check_dim(g.n(), p, g.nvars())?;
    let a = conjugated_matrix(&g.adjacency_matrix(), p);
    let labels = p.sigma().iter().map(|&s| g.vertices()[s].clone()).collect();
    Ok(WeightedDigraph::from_adjacency(
        g.variables().to_vec(),
        Some(labels),
        &a,
    )?)
}

/// Transport a basis rooted at `i0` to the conjugated graph, where it is
/// rooted at `sigma^{-1}(i0)`: `b'_r = (lambda_r / lambda_{r0}) P^{-1} b_{sigma(r)} P`.
pub fn conjugate_basis(b: &MultiplicativeBasis, p: &GenPerm) -> Result<MultiplicativeBasis, PmError> {
    let n = b.n();
    let nv = b.nvars();
    check_dim(n, p, nv)?;
    let s = p.sigma();
    let lam = p.scalars();
    let r0 = (0..n).find(|&r| s[r] == b.root()).unwrap();
    let a = conjugated_matrix(b.adjacency(), p);
    let pm = p.matrix(nv);
    let pinv = p.inverse().matrix(nv);
    let inv_l0 = monomial_inverse(&lam[r0]);
    let mut basis = Vec::with_capacity(n);
    for r in 0..n {
        let src = b.b(s[r]);
        let scale = &lam[r] * &inv_l0;
        let numer = pinv.mul(src.numer()).mul(&pm).scale(&scale);
        basis.push(FracMatrix::new(numer, src.denom().clone())?);
    }
    // coefficients in powers of A' = P^{-1} A P are those of b_{sigma(r)}, rescaled
    let coeffs = (0..n)
        .map(|r| {
            let scale = crate::laurent::PolyFraction::from_poly(&lam[r] * &inv_l0);
            b.coeffs_in_powers()[s[r]].iter().map(|c| c * &scale).collect()
        })
        .collect();
    let det_m = crate::linalg::det(&crate::graph::path_count_from_adjacency(&a, r0));
    MultiplicativeBasis::from_parts(r0, a, basis, det_m, coeffs, b.strongly_connected())
}

/// `P` commutes with `A`.
pub fn is_generalized_automorphism(g: &WeightedDigraph, p: &GenPerm) -> Result<bool, PmError> {
    check_dim(g.n(), p, g.nvars())?;
    let a = g.adjacency_matrix();
    Ok(conjugated_matrix(&a, p) == a)
}

/// Generalized automorphisms of a strongly connected graph with `n <= 8`:
/// permutations preserving the support, with the scalars solved from the arrow
/// constraints `A[i][j] lambda_i = lambda_j A[sigma i][sigma j]`, normalized
/// by `lambda_0 = 1`.
pub fn graph_automorphisms(g: &WeightedDigraph) -> Result<Vec<GenPerm>, PmError> {
    let n = g.n();
    if n > 8 {
        return Err(PmError::BadGenPerm(format!("search limited to n <= 8, got {n}")));
    }
    if !g.is_strongly_connected() {
        return Err(PmError::BadGenPerm("graph is not strongly connected".into()));
    }
    let a = g.adjacency_matrix();
    let support: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| !a.get(i, j).is_zero()).collect())
        .collect();
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, &support, &mut sigma, &mut used, &mut |s| {
        if let Some(p) = solve_scalars(&a, s) {
            out.push(p);
        }
    });
    Ok(out)
}

fn search(
    k: usize,
    support: &[Vec<bool>],
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut impl FnMut(&[usize]),
) {
    let n = support.len();
    if k == n {
        emit(sigma);
        return;
    }
    for c in 0..n {
        if used[c] {
            continue;
        }
        let ok = (0..k).all(|i| {
            support[i][k] == support[sigma[i]][c] && support[k][i] == support[c][sigma[i]]
        }) && support[k][k] == support[c][c];
        if ok {
            sigma[k] = c;
            used[c] = true;
            search(k + 1, support, sigma, used, emit);
            used[c] = false;
            sigma[k] = usize::MAX;
        }
    }
}

fn solve_scalars(a: &PolyMatrix, sigma: &[usize]) -> Option<GenPerm> {
    let n = a.n();
    let nv = a.nvars();
    let mut lam: Vec<Option<LaurentPoly>> = vec![None; n];
    lam[0] = Some(LaurentPoly::one(nv));
    let mut queue = vec![0usize];
    while let Some(u) = queue.pop() {
        let lu = lam[u].clone().unwrap();
        for v in 0..n {
            // lambda_i / lambda_j = A[s i][s j] / A[i][j]
            let (from_uv, from_vu) = (a.get(u, v), a.get(v, u));
            let cand = if !from_uv.is_zero() {
                let r = a.get(sigma[u], sigma[v]).exact_divide(from_uv).ok()?;
                if !r.is_positive_monomial() {
                    return None;
                }
                &lu * &monomial_inverse(&r)
            } else if !from_vu.is_zero() {
                let r = a.get(sigma[v], sigma[u]).exact_divide(from_vu).ok()?;
                if !r.is_positive_monomial() {
                    return None;
                }
                &lu * &r
            } else {
                continue;
            };
            match &lam[v] {
                None => {
                    lam[v] = Some(cand);
                    queue.push(v);
                }
                Some(x) if *x == cand => {}
                Some(_) => return None,
            }
        }
    }
    let scalars: Vec<LaurentPoly> = lam.into_iter().collect::<Option<_>>()?;
    let p = GenPerm::new(sigma.to_vec(), scalars).ok()?;
    (conjugated_matrix(a, &p) == *a).then_some(p)
}
