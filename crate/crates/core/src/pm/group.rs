use std::collections::BTreeMap;

use crate::laurent::LaurentPoly;

use super::roots::gen_perm_of;
use super::{is_positively_multiplicative_at, MultiplicativeBasis, PmError};

/// The maximal indices with the law `b_i b_j = lambda_{i,j} b_{i.j}`.
#[derive(Debug, Clone)]
pub struct MaximalIndexGroup {
    elements: Vec<usize>,
    identity: usize,
    table: BTreeMap<(usize, usize), (usize, LaurentPoly)>,
}

impl MaximalIndexGroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), (usize, LaurentPoly)> {
        &self.table
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[&(i, j)].0
    }

    pub fn scalar(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.table[&(i, j)].1
    }

    pub fn order_of(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.product(x, g);
            k += 1;
        }
        k
    }

    fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.product(acc, g))
    }

    /// Invariant factors `d_1 | d_2 | ...` of the (abelian) group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let order = self.elements.len() as u64;
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for p in prime_factors(order) {
            // number of cyclic p-factors of exponent >= k is s_k - s_{k-1}
            let mut exps_ge = Vec::new();
            let mut prev = 0u32;
            let mut k = 1u32;
            loop {
                let pk = p.pow(k) as usize;
                let count = self
                    .elements
                    .iter()
                    .filter(|&&g| self.power(g, pk) == self.identity)
                    .count() as u64;
                let s = count.ilog(p);
                if s == prev {
                    break;
                }
                exps_ge.push(s - prev);
                prev = s;
                k += 1;
            }
            let cyclic = exps_ge.first().copied().unwrap_or(0) as usize;
            let mut exps = vec![0u32; cyclic];
            for ge in &exps_ge {
                for e in exps.iter_mut().take(*ge as usize) {
                    *e += 1;
                }
            }
            per_prime.push((p, exps));
        }
        let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..len)
            .map(|r| {
                per_prime
                    .iter()
                    .map(|(p, e)| e.get(r).map_or(1, |&x| p.pow(x)))
                    .product()
            })
            .collect();
        factors.sort_unstable();
        factors
    }

    /// `Z/2`, `Z/2 x Z/2`, or `1` for the trivial group.
    pub fn describe(&self) -> String {
        let f = self.invariant_factors();
        if f.is_empty() {
            "1".into()
        } else {
            f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
        }
    }

    /// `h > 0` with `lambda_{i,j}(t) = h(i.j) / (h(i) h(j))`, by least squares on
    /// logarithms. Returned in the order of `elements()`.
    pub fn coboundary(&self, t: &[f64]) -> Result<Vec<f64>, PmError> {
        let r = self.elements.len();
        let pos = |g: usize| self.elements.iter().position(|&e| e == g).unwrap();
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
        for (&(i, j), (k, lam)) in &self.table {
            let mut row = vec![0.0; r];
            row[pos(*k)] += 1.0;
            row[pos(i)] -= 1.0;
            row[pos(j)] -= 1.0;
            rows.push((row, lam.evaluate(t)?.ln()));
        }
        let mut ata = vec![vec![0.0; r]; r];
        let mut atb = vec![0.0; r];
        for (row, b) in &rows {
            for a in 0..r {
                atb[a] += row[a] * b;
                for c in 0..r {
                    ata[a][c] += row[a] * row[c];
                }
            }
        }
        let h = solve_dense(ata, atb)
            .ok_or_else(|| PmError::Invariant("coboundary system is singular".into()))?;
        let residual = rows
            .iter()
            .map(|(row, b)| (row.iter().zip(&h).map(|(x, y)| x * y).sum::<f64>() - b).abs())
            .fold(0.0, f64::max);
        if residual >= 1e-9 {
            return Err(PmError::Coboundary(residual));
        }
        Ok(h.into_iter().map(f64::exp).collect())
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < 1e-12 {
            return None;
        }
        a.swap(p, k);
        b.swap(p, k);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// `I_m` and its multiplication table, with every group axiom and the
/// 2-cocycle identity checked exhaustively.
pub fn maximal_index_group(b: &MultiplicativeBasis) -> Result<MaximalIndexGroup, PmError> {
    if !is_positively_multiplicative_at(b).is_yes() {
        return Err(PmError::NotPositive);
    }
    let n = b.n();
    let e = b.root();
    let elements: Vec<usize> = (0..n).filter(|&i| gen_perm_of(b.b(i)).is_some()).collect();
    let axiom = |m: String| Err(PmError::GroupAxiom(m));
    if !elements.contains(&e) {
        return axiom(format!("root {e} is not a maximal index"));
    }
    let d = b.denom();
    let mut table = BTreeMap::new();
    for &i in &elements {
        for &j in &elements {
            // (b_i b_j) e_root = b_i e_j: read off column j of b_i
            let col = b.b(i).column(j);
            let nz: Vec<usize> = (0..n).filter(|&k| !col[k].is_zero()).collect();
            if nz.len() != 1 {
                return axiom(format!("b_{i} b_{j} is not a multiple of a single basis element"));
            }
            let k = nz[0];
            let lam = col[k].to_laurent().filter(|l| l.is_positive_monomial());
            let Some(lam) = lam else {
                return axiom(format!("lambda_{{{i},{j}}} is not a positive monomial"));
            };
            let lhs = b.b(i).numer().mul(b.b(j).numer());
            let rhs = b.b(k).numer().scale(&(&lam * d));
            if lhs != rhs {
                return axiom(format!("b_{i} b_{j} != lambda b_{k}"));
            }
            if !elements.contains(&k) {
                return axiom(format!("{i}.{j} = {k} is outside I_m"));
            }
            table.insert((i, j), (k, lam));
        }
    }
    let g = MaximalIndexGroup {
        elements,
        identity: e,
        table,
    };
    let els = &g.elements;
    for &i in els {
        if g.product(e, i) != i || !g.scalar(e, i).is_one() {
            return axiom(format!("{e} does not act as identity on {i}"));
        }
        if !els.iter().any(|&j| g.product(i, j) == e) {
            return axiom(format!("{i} has no inverse"));
        }
        for &j in els {
            if g.table[&(i, j)] != g.table[&(j, i)] {
                return axiom(format!("{i}.{j} != {j}.{i}"));
            }
            for &k in els {
                let ij = g.product(i, j);
                let jk = g.product(j, k);
                if g.product(ij, k) != g.product(i, jk) {
                    return axiom(format!("({i}.{j}).{k} != {i}.({j}.{k})"));
                }
                let l = g.scalar(i, j) * g.scalar(ij, k);
                let r = g.scalar(i, jk) * g.scalar(j, k);
                if l != r {
                    return axiom(format!("2-cocycle identity fails at ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(g)
}
