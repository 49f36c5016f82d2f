//! Fraction-free elimination.

use crate::laurent::{LaurentPoly, Monomial};

use super::{FracMatrix, LinalgError, PolyMatrix};

type Rows = Vec<Vec<LaurentPoly>>;

/// Multiply each row by a monomial so all entries become ordinary
/// polynomials. Returns the shifted rows and the per-row shifts.
pub(crate) fn clear_rows(rows: &[Vec<LaurentPoly>], nvars: usize) -> (Rows, Vec<Monomial>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut shifts = Vec::with_capacity(rows.len());
    for r in rows {
        let mut mins = vec![0i32; nvars];
        for p in r.iter().filter(|p| !p.is_zero()) {
            for (m, e) in mins.iter_mut().zip(p.min_exponents().exps()) {
                *m = (*m).min(*e);
            }
        }
        let s = Monomial::new(mins.iter().map(|e| -e).collect());
        out.push(r.iter().map(|p| p.shift(&s)).collect());
        shifts.push(s);
    }
    (out, shifts)
}

fn exact(p: LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    if d.is_one() {
        return p;
    }
    p.exact_divide(d)
        .expect("fraction-free elimination step divides exactly")
}

/// One Bareiss update: (piv * a - lead * b) / prev.
fn step(piv: &LaurentPoly, a: &LaurentPoly, lead: &LaurentPoly, b: &LaurentPoly, prev: &LaurentPoly) -> LaurentPoly {
    let t1 = if a.is_zero() { None } else { Some(piv * a) };
    let t2 = if lead.is_zero() || b.is_zero() {
        None
    } else {
        Some(lead * b)
    };
    let num = match (t1, t2) {
        (None, None) => return LaurentPoly::zero(piv.nvars()),
        (Some(x), None) => x,
        (None, Some(y)) => -y,
        (Some(x), Some(y)) => x - y,
    };
    exact(num, prev)
}

fn sum_shifts(shifts: &[Monomial], nvars: usize) -> Monomial {
    shifts
        .iter()
        .fold(Monomial::one(nvars), |acc, s| acc.mul(s))
}

fn unshift(p: &LaurentPoly, total: &Monomial) -> LaurentPoly {
    let inv = Monomial::new(total.exps().iter().map(|e| -e).collect());
    p.shift(&inv)
}

pub fn det(m: &PolyMatrix) -> LaurentPoly {
    let nvars = m.nvars();
    let n = m.n();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    let (mut a, shifts) = clear_rows(m.rows(), nvars);
    let mut prev = LaurentPoly::one(nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return LaurentPoly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                row[j] = step(&pivot_row[k], &row[j], &lead, &pivot_row[j], &prev);
            }
            row[k] = LaurentPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = if negate { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
    unshift(&d, &sum_shifts(&shifts, nvars))
}

/// `adj(M) / det(M)`, or `Singular`. The identity `M · adj = det · I` is
/// checked before returning.
pub fn adjugate_inverse(m: &PolyMatrix) -> Result<FracMatrix, LinalgError> {
    let nvars = m.nvars();
    let n = m.n();
    let (cleared, shifts) = clear_rows(m.rows(), nvars);
    let mut a: Rows = cleared
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| {
                if i == j {
                    LaurentPoly::one(nvars)
                } else {
                    LaurentPoly::zero(nvars)
                }
            }));
            r
        })
        .collect();
    let mut prev = LaurentPoly::one(nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Err(LinalgError::Singular);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let lead = row[k].clone();
            for j in 0..2 * n {
                if j != k {
                    row[j] = step(&pivot_row[k], &row[j], &lead, &pivot_row[j], &prev);
                }
            }
            row[k] = LaurentPoly::zero(nvars);
        }
        prev = pivot_row[k].clone();
    }
    // Right block is delta * M'^{-1} with delta = ±det M'.
    let delta = a[0][0].clone();
    let mut adj_rows: Rows = a.into_iter().map(|r| r[n..].to_vec()).collect();
    let mut det_cleared = delta;
    if negate {
        det_cleared = -det_cleared;
        for r in adj_rows.iter_mut() {
            for p in r.iter_mut() {
                *p = -&*p;
            }
        }
    }
    // adj(M) = adj(M') D / prod(shifts), det(M) = det(M') / prod(shifts)
    let total = sum_shifts(&shifts, nvars);
    for r in adj_rows.iter_mut() {
        for (j, p) in r.iter_mut().enumerate() {
            *p = unshift(&p.shift(&shifts[j]), &total);
        }
    }
    let detm = unshift(&det_cleared, &total);
    let adj = PolyMatrix::new(nvars, adj_rows).map_err(|e| LinalgError::Check(e.to_string()))?;
    let prod = m.mul(&adj);
    if prod != PolyMatrix::identity(n, nvars).scale(&detm) {
        return Err(LinalgError::Check("M * adj(M) != det(M) * I".into()));
    }
    FracMatrix::new(adj, detm)
}
