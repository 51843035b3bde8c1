//! Canonical Laurent polynomials and the q-number family.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Element of `Q[s, s^-1]`, `s = q^(1/4)`.
///
/// Canonical: exponents are unique and no zero coefficient is stored, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QScalar {
    terms: BTreeMap<i32, BigRational>,
}

impl QScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * s^k`.
    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `q^(k/4) = s^k`.
    pub fn s_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// The substitution `q -> q^-1`, i.e. `s^k -> s^-k`.
    pub fn invert_q(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Evaluate at `q > 0` using the positive real fourth root for `s`.
    pub fn evaluate(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::NonPositiveQ(q));
        }
        Ok(self.evaluate_at_s(libm::pow(q, 0.25)))
    }

    /// Evaluate with `s` given directly.
    pub fn evaluate_at_s(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| rational_to_f64(c) * libm::pow(s, f64::from(*k)))
            .sum()
    }

    /// Exact evaluation at a rational `s` (so `q = s^4` is rational too).
    pub fn evaluate_rational(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            acc += c * rational_pow(s, *k);
        }
        acc
    }

    /// Exact quotient in the Laurent ring, `None` when `divisor` does not
    /// divide `self`.
    ///
    /// Units of the ring are monomials, so after stripping the lowest power
    /// of `s` from both sides this is plain polynomial division over Q.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let lb = divisor.min_exponent()?;
        let Some(la) = self.min_exponent() else {
            return Some(Self::zero());
        };
        let num = self.dense_from(la);
        let den = divisor.dense_from(lb);
        let lead = den.last().expect("nonzero divisor").clone();
        if num.len() < den.len() {
            return None;
        }
        let mut rem = num;
        let mut quot = alloc::vec![BigRational::zero(); rem.len() - den.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + den.len() - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Self::zero();
        for (i, c) in quot.into_iter().enumerate() {
            out.add_term(la - lb + i as i32, c);
        }
        Some(out)
    }

    fn dense_from(&self, low: i32) -> Vec<BigRational> {
        let high = self.max_exponent().unwrap_or(low);
        let mut out = alloc::vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in &self.terms {
            out[(k - low) as usize] = c.clone();
        }
        out
    }

    /// Largest absolute coefficient; a size measure for residual reporting.
    pub fn max_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    /// Square root inside the ring, available only for `c * s^(2k)` with
    /// `c` a square of a rational.
    pub fn sqrt_monomial(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        if k % 2 != 0 || c.is_negative() {
            return None;
        }
        let n = c.numer().sqrt();
        let d = c.denom().sqrt();
        if &(&n * &n) != c.numer() || &(&d * &d) != c.denom() {
            return None;
        }
        Some(Self::monomial(BigRational::new(n, d), k / 2))
    }

    /// True when `s^k -> s^-k` leaves the value unchanged.
    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_q()
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn rational_pow(s: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { s.recip() } else { s.clone() };
    num_traits::pow::pow(base, k.unsigned_abs() as usize)
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, rhs: QScalar) -> QScalar {
        &self + &rhs
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        &self - &rhs
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        let mut out = QScalar::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        &self * &rhs
    }
}

/// Canonical text form: `coeff*s^k` terms joined by ` + `, exponents
/// ascending, coefficients as `p/q`. Zero prints as `0`.
impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}/{}*s^{}", c.numer(), c.denom(), k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

impl FromStr for QScalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut last: Option<i32> = None;
        for term in text.split(" + ") {
            let (coeff, power) = term
                .split_once("*s^")
                .ok_or_else(|| Error::Parse(format!("term `{term}` lacks `*s^`")))?;
            let c = parse_rational(coeff)?;
            let k: i32 = power
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{power}`")))?;
            if last.is_some_and(|prev| prev >= k) || c.is_zero() {
                return Err(Error::Parse(format!("`{text}` is not canonical")));
            }
            last = Some(k);
            out.add_term(k, c);
        }
        Ok(out)
    }
}

/// Parse `p/q`, an integer or a plain decimal (`-0.125`) into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    if let Some((whole, frac)) = text.trim().split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigRational::new(BigInt::from_str(frac).map_err(|_| bad())?, scale);
        let whole = BigRational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(text.trim()).map_err(|_| bad())?,
        )),
    }
}

/// `[x]_q`, expanded as `sign(x) * sum_{k=0}^{|x|-1} q^((|x|-1-2k)/2)`.
pub fn q_number(x: i64) -> QScalar {
    let n = x.unsigned_abs() as i32;
    let sign = if x < 0 { -1 } else { 1 };
    let mut out = QScalar::zero();
    for k in 0..n {
        out.add_term(2 * (n - 1 - 2 * k), BigRational::from_integer(BigInt::from(sign)));
    }
    out
}

/// `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn q_factorial(m: u32) -> QScalar {
    (1..=i64::from(m)).fold(QScalar::one(), |acc, k| &acc * &q_number(k))
}

/// Gaussian binomial `[n]_q! / ([n-k]_q! [k]_q!)`, divided exactly.
pub fn q_binomial(n: u32, k: u32) -> Result<QScalar> {
    if k > n {
        return Err(Error::InvalidBinomial { n, k });
    }
    let den = &q_factorial(n - k) * &q_factorial(k);
    q_factorial(n)
        .div_exact(&den)
        .ok_or_else(|| Error::NotDivisible(format!("[{n}]! / ([{}]! [{k}]!)", n - k)))
}

/// Half-integer q-number `[two_x / 2]_q` at a concrete `q > 0`.
///
/// Written as `sinh(x h / 2) / sinh(h / 2)` with `h = ln q`, which is
/// continuous through `q = 1` where it equals `x`.
pub fn q_number_real(two_x: i64, q: f64) -> Result<f64> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::NonPositiveQ(q));
    }
    let x = two_x as f64 / 2.0;
    let h = libm::log(q);
    if h.abs() < 1e-300 {
        return Ok(x);
    }
    Ok(libm::sinh(x * h / 2.0) / libm::sinh(h / 2.0))
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl QScalar {
    /// Compact human-readable form in powers of `q`, e.g. `q^(1/2) + q^(-1/2)`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match (*k, k % 4) {
                (0, _) => String::new(),
                (4, _) => "q".to_string(),
                (k, 0) => format!("q^{}", k / 4),
                (k, r) if r % 2 == 0 => format!("q^({}/2)", k / 2),
                (k, _) => format!("q^({k}/4)"),
            };
            if power.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
                if !power.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&power);
        }
        out
    }
}
