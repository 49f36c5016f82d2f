//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! A [`LaurentPoly`] is kept in canonical form: a map from exponent vector to
//! nonzero coefficient. Two equal polynomials therefore compare equal as maps.

mod fraction;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use fraction::PolyFraction;
pub use parse::{default_names, ParseError};

pub type Rational = BigRational;

/// Build a rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable-count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("evaluation coordinate {index} is not positive ({value})")]
    NonPositivePoint { index: usize, value: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// True when `other` divides `self` as ordinary monomials.
    fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, int(c))
    }

    /// The variable `z_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, Monomial(e), Rational::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn monomial(exps: Vec<i32>, c: Rational) -> Self {
        let n = exps.len();
        Self::term(n, Monomial(exps), c)
    }

    /// Collect terms, summing repeats and dropping zeros.
    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            assert_eq!(m.0.len(), nvars, "monomial length");
            *terms.entry(m).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Greatest term under graded lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree over terms, measured with absolute exponents.
    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.0.iter().map(|e| e.unsigned_abs() as u64).sum())
            .max()
            .unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                *terms.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the monomial z^e.
    pub fn shift(&self, e: &Monomial) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.mul(e), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (zero vector for 0).
    pub fn min_exponents(&self) -> Monomial {
        let mut out = vec![0; self.nvars];
        let mut first = true;
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                if first || e < *o {
                    *o = e;
                }
            }
            first = false;
        }
        Monomial(out)
    }

    /// Split as z^s · p' with p' an ordinary polynomial not divisible by any variable.
    pub fn split_monomial_content(&self) -> (Monomial, LaurentPoly) {
        let s = self.min_exponents();
        let neg = Monomial(s.0.iter().map(|e| -e).collect());
        (s, self.shift(&neg))
    }

    /// Exact quotient `self / d` in the Laurent ring.
    pub fn exact_divide(&self, d: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some((dm, dc)) = d.as_monomial() {
            let inv = Monomial(dm.0.iter().map(|e| -e).collect());
            return Ok(self.shift(&inv).scale(&dc.recip()));
        }
        let (sp, p) = self.split_monomial_content();
        let (sd, dd) = d.split_monomial_content();
        let (lm, lc) = dd.leading_term().unwrap();
        let lc_inv = lc.recip();
        let mut r = p;
        let mut q: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((rm, rc)) = r.leading_term() {
            if !rm.divisible_by(lm) {
                return Err(LaurentError::NotDivisible);
            }
            let tm = rm.div(lm);
            let tc = rc * &lc_inv;
            let t = LaurentPoly::term(self.nvars, tm.clone(), tc.clone());
            r = &r - &(&t * &dd);
            q.insert(tm, tc);
        }
        let quot = LaurentPoly {
            nvars: self.nvars,
            terms: q,
        }
        .shift(&sp.div(&sd));
        debug_assert!(&quot * d == *self);
        Ok(quot)
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn is_positive_monomial(&self) -> bool {
        self.as_monomial().is_some_and(|(_, c)| c.is_positive())
    }

    /// Floating-point evaluation at a point with positive coordinates.
    pub fn evaluate(&self, t: &[f64]) -> Result<f64, LaurentError> {
        check_point(self.nvars, t.len())?;
        for (i, &v) in t.iter().enumerate() {
            if !(v > 0.0) {
                return Err(LaurentError::NonPositivePoint {
                    index: i,
                    value: v.to_string(),
                });
            }
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (&e, &x) in m.0.iter().zip(t) {
                    if e != 0 {
                        v *= x.powi(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Exact evaluation at a point with positive rational coordinates.
    pub fn evaluate_exact(&self, t: &[Rational]) -> Result<Rational, LaurentError> {
        check_point(self.nvars, t.len())?;
        for (i, v) in t.iter().enumerate() {
            if !v.is_positive() {
                return Err(LaurentError::NonPositivePoint {
                    index: i,
                    value: v.to_string(),
                });
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (&e, x) in m.0.iter().zip(t) {
                if e != 0 {
                    v *= x.pow(e);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitute one variable by a rational constant.
    pub fn substitute(&self, var: usize, value: &Rational) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            (m2, c * value.pow(e))
        });
        LaurentPoly::from_terms(self.nvars, terms)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        parse::format_poly(self, names)
    }

    pub fn parse(s: &str, names: &[String]) -> Result<LaurentPoly, ParseError> {
        parse::parse_poly(s, names)
    }
}

fn check_point(expected: usize, got: usize) -> Result<(), LaurentError> {
    if expected != got {
        return Err(LaurentError::PointLength { expected, got });
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_poly(self, &default_names(self.nvars)))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial operands")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
