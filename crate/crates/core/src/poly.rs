//! Exact integer polynomials in one variable `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense polynomial; `coeffs[i]` is the coefficient of `k^i`. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `k^p`
    pub fn monomial(p: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); p + 1];
        coeffs[p] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        Self::monomial(1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coefficient(i) + other.coefficient(i))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact value at `k` (Horner).
    pub fn evaluate(&self, k: impl Into<BigInt>) -> BigInt {
        let k = k.into();
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &k + c)
    }

    /// Falling factorial `k (k-1) ... (k-m+1)` in the power basis; `m = 0`
    /// gives `1`. Coefficients are signed Stirling numbers of the first kind.
    pub fn falling_factorial(m: usize) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for j in 0..m {
            // multiply by (k - j)
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigInt::from(j);
            }
            coeffs = next;
        }
        Self::from_coeffs(coeffs)
    }

    /// Coefficient array, ascending, as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolynomialDoc::from(self)).expect("plain data")
    }
}

/// JSON shape `{"coeffs": ["c0", "c1", ...], "display": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub coeffs: Vec<String>,
    pub display: String,
}

impl From<&IntPolynomial> for PolynomialDoc {
    fn from(p: &IntPolynomial) -> Self {
        PolynomialDoc {
            coeffs: p.coeffs.iter().map(ToString::to_string).collect(),
            display: p.to_string(),
        }
    }
}

impl TryFrom<&PolynomialDoc> for IntPolynomial {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(doc: &PolynomialDoc) -> Result<Self, Self::Error> {
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<_, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers, unit coefficients elided: `k^5 - 5k^2 + 4k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::add(self, rhs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::add(self, &-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::mul(self, rhs)
    }
}
