//! Exact matrices over the Laurent ring and its fraction field.

mod bareiss;
mod minpoly;

use std::fmt;

use thiserror::Error;

use crate::laurent::{default_names, LaurentPoly, PolyFraction, Rational};

pub use bareiss::{adjugate_inverse, det};
pub use minpoly::{minimal_polynomial, poly_in_a, PolyUnivariate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entries disagree on variable count")]
    VariableMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("internal check failed: {0}")]
    Check(String),
}

/// Square matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    nvars: usize,
    rows: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LinalgError::NotSquare {
                    row: i,
                    len: r.len(),
                    n,
                });
            }
            if r.iter().any(|p| p.nvars() != nvars) {
                return Err(LinalgError::VariableMismatch);
            }
        }
        Ok(PolyMatrix { nvars, rows })
    }

    /// Integer matrix with no variables attached beyond `nvars`.
    pub fn from_ints(nvars: usize, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| LaurentPoly::from_int(nvars, v)).collect())
            .collect();
        Self::new(nvars, rows)
    }

    pub fn zero(n: usize, nvars: usize) -> Self {
        PolyMatrix {
            nvars,
            rows: vec![vec![LaurentPoly::zero(nvars); n]; n],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for i in 0..n {
            m.rows[i][i] = LaurentPoly::one(nvars);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn from_columns(nvars: usize, cols: &[Vec<LaurentPoly>]) -> Result<Self, LinalgError> {
        let n = cols.len();
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::new(nvars, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        PolyMatrix {
            nvars: self.nvars,
            rows: (0..n).map(|i| self.column(i)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n(), other.n(), "matrix dimensions");
        let n = self.n();
        let mut out = Self::zero(n, self.nvars);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(LaurentPoly::zero(self.nvars), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> PolyMatrix {
        self.map(|x| x * p)
    }

    pub fn scale_rational(&self, c: &Rational) -> PolyMatrix {
        self.map(|x| x.scale(c))
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut acc = Self::identity(self.n(), self.nvars);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn total_degree(&self) -> u64 {
        self.rows
            .iter()
            .flatten()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Entrywise evaluation at a positive point.
    pub fn evaluate(&self, t: &[f64]) -> Result<Vec<Vec<f64>>, crate::LaurentError> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(t)).collect())
            .collect()
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.to_string_with(names)).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings(&default_names(self.nvars));
        write_grid(f, &cells)
    }
}

/// Right-aligned columns, one bracketed line per row.
pub fn format_grid(cells: &[Vec<String>]) -> String {
    let mut s = String::new();
    write_grid(&mut s, cells).expect("writing to a String");
    s
}

pub(crate) fn write_grid(f: &mut impl fmt::Write, cells: &[Vec<String>]) -> fmt::Result {
    let ncols = cells.first().map_or(0, |r| r.len());
    let widths: Vec<usize> = (0..ncols)
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for r in cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(f, "[ {} ]", line.join("  "))?;
    }
    Ok(())
}

/// `numer / denom`, one shared denominator for every entry.
#[derive(Debug, Clone)]
pub struct FracMatrix {
    numer: PolyMatrix,
    denom: LaurentPoly,
}

impl FracMatrix {
    pub fn new(numer: PolyMatrix, denom: LaurentPoly) -> Result<Self, LinalgError> {
        if denom.is_zero() {
            return Err(LinalgError::ZeroDenominator);
        }
        if denom.nvars() != numer.nvars() {
            return Err(LinalgError::VariableMismatch);
        }
        Ok(FracMatrix { numer, denom })
    }

    pub fn from_poly(m: PolyMatrix) -> Self {
        let d = LaurentPoly::one(m.nvars());
        FracMatrix { numer: m, denom: d }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_poly(PolyMatrix::identity(n, nvars))
    }

    /// Build from an entry table by bringing everything over one denominator.
    pub fn from_entries(nvars: usize, entries: &[Vec<PolyFraction>]) -> Result<Self, LinalgError> {
        let denoms: Vec<&LaurentPoly> = entries.iter().flatten().map(|e| e.denom()).collect();
        let (common, factors) = common_denominator(nvars, &denoms);
        let n = entries.len();
        let mut rows = Vec::with_capacity(n);
        let mut idx = 0;
        for r in entries {
            let mut row = Vec::with_capacity(r.len());
            for e in r {
                row.push(e.numer() * &factors[idx]);
                idx += 1;
            }
            rows.push(row);
        }
        Self::new(PolyMatrix::new(nvars, rows)?, common)
    }

    pub fn numer(&self) -> &PolyMatrix {
        &self.numer
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.denom
    }

    pub fn n(&self) -> usize {
        self.numer.n()
    }

    pub fn nvars(&self) -> usize {
        self.numer.nvars()
    }

    pub fn entry(&self, i: usize, j: usize) -> PolyFraction {
        PolyFraction::new(self.numer.get(i, j).clone(), self.denom.clone()).unwrap()
    }

    pub fn column(&self, j: usize) -> Vec<PolyFraction> {
        (0..self.n()).map(|i| self.entry(i, j)).collect()
    }

    pub fn mul(&self, other: &FracMatrix) -> FracMatrix {
        FracMatrix {
            numer: self.numer.mul(&other.numer),
            denom: &self.denom * &other.denom,
        }
    }

    pub fn add(&self, other: &FracMatrix) -> FracMatrix {
        if self.denom == other.denom {
            return FracMatrix {
                numer: self.numer.add(&other.numer),
                denom: self.denom.clone(),
            };
        }
        FracMatrix {
            numer: self
                .numer
                .scale(&other.denom)
                .add(&other.numer.scale(&self.denom)),
            denom: &self.denom * &other.denom,
        }
    }

    pub fn scale(&self, c: &PolyFraction) -> FracMatrix {
        FracMatrix {
            numer: self.numer.scale(c.numer()),
            denom: &self.denom * c.denom(),
        }
    }

    pub fn mul_poly_left(&self, m: &PolyMatrix) -> FracMatrix {
        FracMatrix {
            numer: m.mul(&self.numer),
            denom: self.denom.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Exact polynomial matrix when every entry divides.
    pub fn to_poly_matrix(&self) -> Option<PolyMatrix> {
        if self.denom.is_one() {
            return Some(self.numer.clone());
        }
        let mut out = PolyMatrix::zero(self.n(), self.nvars());
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, self.numer.get(i, j).exact_divide(&self.denom).ok()?);
            }
        }
        Some(out)
    }

    /// Same matrix with the denominator multiplied through by `factor`.
    pub fn rescaled(&self, factor: &LaurentPoly) -> FracMatrix {
        FracMatrix {
            numer: self.numer.scale(factor),
            denom: &self.denom * factor,
        }
    }

    /// The inverse over the fraction field, or `Singular`.
    pub fn inverse(&self) -> Result<FracMatrix, LinalgError> {
        let adj = adjugate_inverse(&self.numer)?;
        // (N/d)^{-1} = d adj(N) / det(N)
        Ok(FracMatrix {
            numer: adj.numer.scale(&self.denom),
            denom: adj.denom,
        })
    }

    pub fn evaluate(&self, t: &[f64]) -> Result<Vec<Vec<f64>>, crate::LaurentError> {
        let d = self.denom.evaluate(t)?;
        Ok(self
            .numer
            .evaluate(t)?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / d).collect())
            .collect())
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<Vec<String>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = self.entry(i, j);
                        match e.to_laurent() {
                            Some(p) => p.to_string_with(names),
                            None => e.to_string_with(names),
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for FracMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if self.denom == other.denom {
            return self.numer == other.numer;
        }
        self.numer.scale(&other.denom) == other.numer.scale(&self.denom)
    }
}

impl fmt::Display for FracMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, &self.to_strings(&default_names(self.nvars())))
    }
}

/// Product of the distinct denominators, and for each input the cofactor
/// `common / d`.
pub(crate) fn common_denominator(
    nvars: usize,
    denoms: &[&LaurentPoly],
) -> (LaurentPoly, Vec<LaurentPoly>) {
    let mut distinct: Vec<&LaurentPoly> = Vec::new();
    for d in denoms {
        if d.is_one() {
            continue;
        }
        // equal up to a rational factor counts as the same denominator
        let seen = distinct.iter().any(|e| proportional(e, d).is_some());
        if !seen {
            distinct.push(d);
        }
    }
    let common = distinct
        .iter()
        .fold(LaurentPoly::one(nvars), |acc, d| acc * *d);
    let factors = denoms
        .iter()
        .map(|d| common.exact_divide(d).expect("denominator divides the product"))
        .collect();
    (common, factors)
}

/// `Some(c)` when `a = c * b` for a rational `c`.
fn proportional(a: &LaurentPoly, b: &LaurentPoly) -> Option<Rational> {
    if a.num_terms() != b.num_terms() {
        return None;
    }
    let mut ratio: Option<Rational> = None;
    for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
        if ma != mb {
            return None;
        }
        let r = ca / cb;
        match &ratio {
            None => ratio = Some(r),
            Some(x) if *x == r => {}
            Some(_) => return None,
        }
    }
    ratio
}
