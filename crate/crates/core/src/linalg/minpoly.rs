//! Minimal polynomial by the first linear dependency among I, A, A², ...

use std::fmt;

use num_traits::{One, Signed};

use crate::laurent::{default_names, LaurentPoly, PolyFraction};

use super::bareiss::clear_rows;
use super::{adjugate_inverse, common_denominator, FracMatrix, LinalgError, PolyMatrix};

/// Univariate polynomial with coefficients in the fraction field, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyUnivariate {
    coeffs: Vec<PolyFraction>,
}

impl PolyUnivariate {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<PolyFraction>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyUnivariate { coeffs }
    }

    pub fn from_polys(coeffs: Vec<LaurentPoly>) -> Self {
        Self::new(coeffs.into_iter().map(PolyFraction::from_poly).collect())
    }

    pub fn coeffs(&self) -> &[PolyFraction] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &PolyUnivariate) -> PolyUnivariate {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PolyUnivariate { coeffs: vec![] };
        }
        let nv = self.coeffs[0].nvars();
        let mut out = vec![PolyFraction::zero(nv); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Evaluate at a matrix argument.
    pub fn eval_matrix(&self, a: &PolyMatrix) -> FracMatrix {
        poly_in_a(&self.coeffs, a)
    }

    pub fn to_string_with(&self, names: &[String], var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let x = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let constant = c.to_laurent().and_then(|p| p.as_constant());
            let (neg, term) = match constant {
                Some(q) => {
                    let a = q.abs();
                    let body = match (x.is_empty(), a.is_one()) {
                        (true, _) => a.to_string(),
                        (false, true) => x,
                        (false, false) => format!("{a}*{x}"),
                    };
                    (q.is_negative(), body)
                }
                None => {
                    let cs = match c.to_laurent() {
                        Some(p) => p.to_string_with(names),
                        None => c.to_string_with(names),
                    };
                    let body = if x.is_empty() { format!("({cs})") } else { format!("({cs})*{x}") };
                    (false, body)
                }
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{term}")),
                (true, false) => out.push_str(&term),
                (false, true) => out.push_str(&format!(" - {term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Display for PolyUnivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = self.coeffs.first().map_or(0, |c| c.nvars());
        f.write_str(&self.to_string_with(&default_names(nv), "X"))
    }
}

/// `sum_j coeffs[j] A^j` over a common denominator.
pub fn poly_in_a(coeffs: &[PolyFraction], a: &PolyMatrix) -> FracMatrix {
    let n = a.n();
    let nvars = a.nvars();
    let denoms: Vec<&LaurentPoly> = coeffs.iter().map(|c| c.denom()).collect();
    let (common, factors) = common_denominator(nvars, &denoms);
    let mut acc = PolyMatrix::zero(n, nvars);
    let mut power = PolyMatrix::identity(n, nvars);
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            power = a.mul(&power);
        }
        if c.is_zero() {
            continue;
        }
        let k = c.numer() * &factors[j];
        acc = acc.add(&power.scale(&k));
    }
    FracMatrix::new(acc, common).unwrap()
}

/// Monic least-degree polynomial with `mu(A) = 0`, verified exactly.
pub fn minimal_polynomial(a: &PolyMatrix) -> Result<PolyUnivariate, LinalgError> {
    let n = a.n();
    let nvars = a.nvars();
    let zero = LaurentPoly::zero(nvars);
    if n == 0 {
        return Ok(PolyUnivariate::from_polys(vec![LaurentPoly::one(nvars)]));
    }
    // Flattened powers as columns: W[(i,j)][p] = (A^p)[i][j].
    let mut powers = vec![PolyMatrix::identity(n, nvars)];
    for p in 1..=n {
        powers.push(a.mul(&powers[p - 1]));
    }
    let mut w: Vec<Vec<LaurentPoly>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let row: Vec<LaurentPoly> = powers.iter().map(|m| m.get(i, j).clone()).collect();
            if row.iter().any(|p| !p.is_zero()) {
                w.push(row);
            }
        }
    }
    let (orig, _) = clear_rows(&w, nvars);
    let mut e = orig.clone();
    let mut order: Vec<usize> = (0..e.len()).collect();
    let cols = n + 1;
    let mut prev = LaurentPoly::one(nvars);
    let mut k = 0;
    while k < cols {
        let Some(p) = (k..e.len()).find(|&i| !e[i][k].is_zero()) else {
            break;
        };
        e.swap(p, k);
        order.swap(p, k);
        let (top, bottom) = e.split_at_mut(k + 1);
        let piv = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..cols {
                let num = if lead.is_zero() {
                    &piv[k] * &row[j]
                } else {
                    &(&piv[k] * &row[j]) - &(&lead * &piv[j])
                };
                row[j] = if prev.is_one() {
                    num
                } else {
                    num.exact_divide(&prev)
                        .expect("fraction-free elimination step divides exactly")
                };
            }
            row[k] = zero.clone();
        }
        prev = e[k][k].clone();
        k += 1;
    }
    if k == cols {
        return Err(LinalgError::Check("no linear dependency among powers".into()));
    }
    // Solve S c = w on the k pivot rows, S = columns 0..k.
    let coeffs = if k == 0 {
        vec![]
    } else {
        let rows: Vec<Vec<LaurentPoly>> = order[..k].iter().map(|&r| orig[r][..k].to_vec()).collect();
        let rhs: Vec<LaurentPoly> = order[..k].iter().map(|&r| orig[r][k].clone()).collect();
        let s = PolyMatrix::new(nvars, rows)?;
        let inv = adjugate_inverse(&s)?;
        let num = inv.numer().mul_vec(&rhs);
        num.into_iter()
            .map(|x| PolyFraction::new(-x, inv.denom().clone()).unwrap())
            .collect::<Vec<_>>()
    };
    let mut all = coeffs;
    all.push(PolyFraction::one(nvars));
    let mu = PolyUnivariate::new(all);
    if !mu.eval_matrix(a).is_zero() {
        return Err(LinalgError::Check("minimal polynomial does not annihilate A".into()));
    }
    Ok(mu)
}
