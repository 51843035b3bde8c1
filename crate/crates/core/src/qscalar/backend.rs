use core::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};

use super::{q_number, q_number_real, QScalar};

/// Arithmetic needed by every chain construction, implemented for exact
/// Laurent scalars and for `f64`.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Exact quotient, `None` if it does not exist.
    fn try_div(&self, rhs: &Self) -> Option<Self>;
    /// Size used for residuals: `|x|` numerically, largest coefficient exactly.
    fn magnitude(&self) -> f64;
}

impl Scalar for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QScalar::from_ratio(num, den)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
    fn magnitude(&self) -> f64 {
        self.max_coefficient()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!num_traits::Zero::is_zero(rhs)).then(|| self / rhs)
    }
    fn magnitude(&self) -> f64 {
        super::rational_to_f64(&num_traits::Signed::abs(self))
    }
}

/// Which scalar backend produced an object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BackendTag {
    Exact,
    Numeric(f64),
}

impl fmt::Display for BackendTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendTag::Exact => f.write_str("exact"),
            BackendTag::Numeric(q) => write!(f, "numeric(q={q})"),
        }
    }
}

/// A way of turning q-dependent quantities into concrete scalars.
pub trait Backend: Clone + fmt::Debug + Send + Sync {
    type Scalar: Scalar;

    fn tag(&self) -> BackendTag;

    fn is_exact(&self) -> bool {
        matches!(self.tag(), BackendTag::Exact)
    }

    /// `q^(k/4)`.
    fn quarter_power(&self, k: i32) -> Self::Scalar;

    /// Image of an exact scalar in this backend.
    fn lift(&self, x: &QScalar) -> Self::Scalar;

    /// `[two_x / 2]_q`; exact only when `two_x` is even.
    fn half_q_number(&self, two_x: i64) -> Result<Self::Scalar>;

    /// Square root of a non-negative ring element.
    fn ring_sqrt(&self, x: &QScalar) -> Result<Self::Scalar>;

    /// Same backend at `q^-1`.
    fn inverse(&self) -> Self;

    /// Positive square root of a scalar known to be a squared norm, if
    /// the backend can represent it.
    fn norm_sqrt(&self, x: &Self::Scalar) -> Option<Self::Scalar>;
}

/// Exact Laurent backend. `inverted` builds objects at `q^-1` by the
/// substitution `s -> s^-1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Exact {
    inverted: bool,
}

impl Exact {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }
}

impl Backend for Exact {
    type Scalar = QScalar;

    fn tag(&self) -> BackendTag {
        BackendTag::Exact
    }

    fn quarter_power(&self, k: i32) -> QScalar {
        QScalar::s_pow(if self.inverted { -k } else { k })
    }

    fn lift(&self, x: &QScalar) -> QScalar {
        if self.inverted {
            x.invert_q()
        } else {
            x.clone()
        }
    }

    fn half_q_number(&self, two_x: i64) -> Result<QScalar> {
        if two_x % 2 != 0 {
            return Err(Error::OutsideRing(alloc::format!("[{two_x}/2]_q")));
        }
        Ok(q_number(two_x / 2))
    }

    fn ring_sqrt(&self, x: &QScalar) -> Result<QScalar> {
        x.sqrt_monomial()
            .map(|r| self.lift(&r))
            .ok_or_else(|| Error::OutsideRing(alloc::format!("sqrt({x})")))
    }

    fn inverse(&self) -> Self {
        Self {
            inverted: !self.inverted,
        }
    }

    fn norm_sqrt(&self, x: &QScalar) -> Option<QScalar> {
        x.sqrt_monomial()
    }
}

/// Floating-point backend at a fixed `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numeric {
    q: f64,
    s: f64,
}

impl Numeric {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::NonPositiveQ(q));
        }
        Ok(Self {
            q,
            s: libm::pow(q, 0.25),
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl Backend for Numeric {
    type Scalar = f64;

    fn tag(&self) -> BackendTag {
        BackendTag::Numeric(self.q)
    }

    fn quarter_power(&self, k: i32) -> f64 {
        libm::pow(self.s, f64::from(k))
    }

    fn lift(&self, x: &QScalar) -> f64 {
        x.evaluate_at_s(self.s)
    }

    fn half_q_number(&self, two_x: i64) -> Result<f64> {
        q_number_real(two_x, self.q)
    }

    fn ring_sqrt(&self, x: &QScalar) -> Result<f64> {
        let v = self.lift(x);
        if v < 0.0 {
            return Err(Error::OutsideRing(alloc::format!("sqrt of negative {v}")));
        }
        Ok(libm::sqrt(v))
    }

    fn inverse(&self) -> Self {
        Self {
            q: 1.0 / self.q,
            s: 1.0 / self.s,
        }
    }

    fn norm_sqrt(&self, x: &f64) -> Option<f64> {
        (*x >= 0.0).then(|| libm::sqrt(*x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_rejects_non_positive_q() {
        assert_eq!(Numeric::new(0.0), Err(Error::NonPositiveQ(0.0)));
        assert!(Numeric::new(-2.0).is_err());
        assert!(Numeric::new(f64::NAN).is_err());
    }

    #[test]
    fn exact_and_numeric_agree_on_powers() {
        let num = Numeric::new(3.0).unwrap();
        for k in -8..=8 {
            let exact = Exact::new().quarter_power(k);
            assert!((num.lift(&exact) - num.quarter_power(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn inverted_exact_substitutes() {
        let inv = Exact::new().inverse();
        assert_eq!(inv.quarter_power(2), QScalar::s_pow(-2));
        assert_eq!(inv.inverse(), Exact::new());
        let n = Numeric::new(4.0).unwrap().inverse();
        assert!((n.q() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn half_q_numbers() {
        assert!(Exact::new().half_q_number(3).is_err());
        assert_eq!(Exact::new().half_q_number(4).unwrap(), q_number(2));
        let n = Numeric::new(2.0).unwrap();
        assert!((n.half_q_number(4).unwrap() - n.lift(&q_number(2))).abs() < 1e-14);
    }
}
