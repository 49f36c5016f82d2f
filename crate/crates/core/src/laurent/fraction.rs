use std::fmt;

use num_traits::Zero;

use super::{LaurentError, LaurentPoly, Rational};

/// A quotient of Laurent polynomials. Not GCD-reduced; equality is by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct PolyFraction {
    numer: LaurentPoly,
    denom: LaurentPoly,
}

impl PolyFraction {
    pub fn new(numer: LaurentPoly, denom: LaurentPoly) -> Result<Self, LaurentError> {
        if denom.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if numer.nvars() != denom.nvars() {
            return Err(LaurentError::VariableMismatch {
                left: numer.nvars(),
                right: denom.nvars(),
            });
        }
        Ok(PolyFraction { numer, denom }.tidy())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        PolyFraction {
            numer: p,
            denom: LaurentPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(nvars, c))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.numer
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.denom
    }

    pub fn nvars(&self) -> usize {
        self.numer.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    // Fold a monomial denominator into the numerator; keeps the common
    // constant and monomial cases in polynomial form.
    fn tidy(self) -> Self {
        if self.denom.as_monomial().is_some() && !self.denom.is_one() {
            let n = self.numer.nvars();
            let q = self.numer.exact_divide(&self.denom).unwrap();
            return PolyFraction {
                numer: q,
                denom: LaurentPoly::one(n),
            };
        }
        if self.numer.is_zero() {
            let n = self.numer.nvars();
            return Self::zero(n);
        }
        self
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.numer.exact_divide(&self.denom).ok()
    }

    pub fn recip(&self) -> Result<Self, LaurentError> {
        Self::new(self.denom.clone(), self.numer.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, LaurentError> {
        Ok(self * &other.recip()?)
    }

    pub fn evaluate(&self, t: &[f64]) -> Result<f64, LaurentError> {
        Ok(self.numer.evaluate(t)? / self.denom.evaluate(t)?)
    }

    pub fn evaluate_exact(&self, t: &[Rational]) -> Result<Rational, LaurentError> {
        let d = self.denom.evaluate_exact(t)?;
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(self.numer.evaluate_exact(t)? / d)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.denom.is_one() {
            self.numer.to_string_with(names)
        } else {
            format!(
                "({})/({})",
                self.numer.to_string_with(names),
                self.denom.to_string_with(names)
            )
        }
    }
}

impl From<LaurentPoly> for PolyFraction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl PartialEq for PolyFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.denom == other.denom {
            return self.numer == other.numer;
        }
        &self.numer * &other.denom == &other.numer * &self.denom
    }
}

impl Eq for PolyFraction {}

impl std::ops::Add<&PolyFraction> for &PolyFraction {
    type Output = PolyFraction;
    fn add(self, rhs: &PolyFraction) -> PolyFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denom == rhs.denom {
            return PolyFraction {
                numer: &self.numer + &rhs.numer,
                denom: self.denom.clone(),
            }
            .tidy();
        }
        PolyFraction {
            numer: &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            denom: &self.denom * &rhs.denom,
        }
        .tidy()
    }
}

impl std::ops::Sub<&PolyFraction> for &PolyFraction {
    type Output = PolyFraction;
    fn sub(self, rhs: &PolyFraction) -> PolyFraction {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &PolyFraction {
    type Output = PolyFraction;
    fn neg(self) -> PolyFraction {
        PolyFraction {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl std::ops::Mul<&PolyFraction> for &PolyFraction {
    type Output = PolyFraction;
    fn mul(self, rhs: &PolyFraction) -> PolyFraction {
        if self.is_zero() || rhs.is_zero() {
            return PolyFraction::zero(self.nvars());
        }
        PolyFraction {
            numer: &self.numer * &rhs.numer,
            denom: &self.denom * &rhs.denom,
        }
        .tidy()
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&super::default_names(self.nvars())))
    }
}
