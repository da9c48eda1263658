//! The hyperbolic number ring: `z = a + i b` with `i * i = +1`.
//!
//! Unlike the complex field, the ring has zero divisors: every number on
//! the diagonals `|im| = |re|` annihilates its conjugate, so division is
//! partial. The quadrant decomposition, hyperbolic argument and the
//! exponential representation are all defined away from the diagonals.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;

/// Relative tolerance used to classify computed values as diagonal.
///
/// Exact literals are caught by the `|re| == |im|` comparison; the relative
/// band absorbs float noise on values that are diagonal in exact arithmetic.
pub const DIAGONAL_REL_TOL: f64 = 1e-12;

/// A hyperbolic (split-complex) number `re + i * im` with `i^2 = +1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HNumber {
    pub re: f64,
    pub im: f64,
}

/// Error raised by the partial operations of the ring.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumberError {
    /// The divisor lies on the diagonals (zero or a zero divisor).
    #[error("{0} lies on the diagonals and has no inverse")]
    NotInvertible(HNumber),
    /// The operation is undefined on the diagonals.
    #[error("{0} lies on the diagonals")]
    OnDiagonal(HNumber),
}

impl HNumber {
    pub const ZERO: HNumber = HNumber { re: 0.0, im: 0.0 };
    pub const ONE: HNumber = HNumber { re: 1.0, im: 0.0 };
    /// The hyperbolic imaginary unit.
    pub const I: HNumber = HNumber { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        HNumber { re, im }
    }

    /// Embeds a real number as `x + 0i`.
    pub const fn from_real(x: f64) -> Self {
        HNumber { re: x, im: 0.0 }
    }

    /// Hyperbolic conjugate `a - i b`.
    pub fn conj(self) -> Self {
        HNumber::new(self.re, -self.im)
    }

    /// The quadratic form `z z* = re^2 - im^2` (may be negative).
    pub fn modulus_sq(self) -> f64 {
        self.re * self.re - self.im * self.im
    }

    /// Euclidean norm `sqrt(re^2 + im^2)`; the metric used for limits.
    pub fn euclid_norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `sqrt(|re^2 - im^2|)`, constant on each hyperbola shell.
    pub fn sobczyk_modulus(self) -> f64 {
        ((self.re - self.im) * (self.re + self.im)).abs().sqrt()
    }

    /// True on the light-cone set `|im| = |re|` of zero divisors.
    ///
    /// Exact equality plus a relative band of [`DIAGONAL_REL_TOL`].
    pub fn is_on_diagonals(self) -> bool {
        let (a, b) = (self.re.abs(), self.im.abs());
        a == b || (a - b).abs() <= DIAGONAL_REL_TOL * a.max(b)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Multiplicative inverse `conj(z) / (re^2 - im^2)`.
    pub fn inverse(self) -> Result<Self, NumberError> {
        if self.is_on_diagonals() {
            return Err(NumberError::NotInvertible(self));
        }
        let q = self.modulus_sq();
        Ok(HNumber::new(self.re / q, -self.im / q))
    }

    /// Division through the conjugate formula; errors on diagonal divisors.
    #[allow(clippy::should_implement_trait)] // fallible, unlike Div
    pub fn div(self, rhs: Self) -> Result<Self, NumberError> {
        Ok(self * rhs.inverse()?)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn powi(self, n: i32) -> Result<Self, NumberError> {
        let base = if n < 0 { self.inverse()? } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = HNumber::ONE;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc *= sq;
            }
            sq *= sq;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(self, k: f64) -> Self {
        HNumber::new(self.re * k, self.im * k)
    }

    /// Which of the four open sectors cut out by the diagonals holds `z`.
    pub fn quadrant(self) -> Quadrant {
        if self.is_on_diagonals() {
            return Quadrant::Diagonal;
        }
        if self.re > self.im.abs() {
            Quadrant::H1
        } else if self.im > self.re.abs() {
            Quadrant::H2
        } else if -self.re > self.im.abs() {
            Quadrant::H3
        } else {
            Quadrant::H4
        }
    }

    /// Hyperbolic argument: `atanh(im/re)` on H1/H3, `atanh(re/im)` on H2/H4.
    pub fn hyp_argument(self) -> Result<f64, NumberError> {
        match self.quadrant() {
            Quadrant::H1 | Quadrant::H3 => Ok((self.im / self.re).atanh()),
            Quadrant::H2 | Quadrant::H4 => Ok((self.re / self.im).atanh()),
            Quadrant::Diagonal => Err(NumberError::OnDiagonal(self)),
        }
    }

    /// Exponential form `prefactor * r * exp(i theta)` with the discrete
    /// prefactor selecting the quadrant.
    pub fn exp_representation(self) -> Result<ExpForm, NumberError> {
        let prefactor = match self.quadrant() {
            Quadrant::H1 => Prefactor::One,
            Quadrant::H2 => Prefactor::I,
            Quadrant::H3 => Prefactor::MinusOne,
            Quadrant::H4 => Prefactor::MinusI,
            Quadrant::Diagonal => return Err(NumberError::OnDiagonal(self)),
        };
        Ok(ExpForm {
            r: self.sobczyk_modulus(),
            theta: self.hyp_argument()?,
            prefactor,
        })
    }

    /// First-kind complex transform: reads the coordinates as `x + j y` with
    /// `j^2 = -1`. Preserves the Euclidean norm and sums, not products.
    pub fn complex_transform(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl Add for HNumber {
    type Output = HNumber;
    fn add(self, rhs: Self) -> Self {
        HNumber::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for HNumber {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for HNumber {
    type Output = HNumber;
    fn sub(self, rhs: Self) -> Self {
        HNumber::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for HNumber {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Mul for HNumber {
    type Output = HNumber;
    /// `(a+ib)(c+id) = (ac+bd) + i(ad+bc)` since `i^2 = +1`.
    fn mul(self, rhs: Self) -> Self {
        HNumber::new(
            self.re * rhs.re + self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl MulAssign for HNumber {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Neg for HNumber {
    type Output = HNumber;
    fn neg(self) -> Self {
        HNumber::new(-self.re, -self.im)
    }
}

impl From<f64> for HNumber {
    fn from(x: f64) -> Self {
        HNumber::from_real(x)
    }
}

/// Coordinates in the idempotent basis `e+ = (1+i)/2`, `e- = (1-i)/2`.
///
/// The basis splits the ring into two real lines on which every ring
/// operation acts componentwise; it backs division, square roots and the
/// exponential as a test oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdempotentPair {
    pub plus: f64,
    pub minus: f64,
}

impl IdempotentPair {
    pub fn new(plus: f64, minus: f64) -> Self {
        IdempotentPair { plus, minus }
    }

    #[allow(clippy::should_implement_trait)] // mirrors the oracle wording
    pub fn mul(self, rhs: Self) -> Self {
        IdempotentPair::new(self.plus * rhs.plus, self.minus * rhs.minus)
    }
}

impl From<HNumber> for IdempotentPair {
    fn from(z: HNumber) -> Self {
        IdempotentPair::new(z.re + z.im, z.re - z.im)
    }
}

impl From<IdempotentPair> for HNumber {
    fn from(p: IdempotentPair) -> Self {
        HNumber::new((p.plus + p.minus) / 2.0, (p.plus - p.minus) / 2.0)
    }
}

/// Location of a number relative to the diagonal zero-divisor set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadrant {
    /// Right sector `re > |im|`.
    H1,
    /// Upper sector `im > |re|`.
    H2,
    /// Left sector `-re > |im|`.
    H3,
    /// Lower sector `-im > |re|`.
    H4,
    /// The light-cone `|im| = |re|`, including zero.
    Diagonal,
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadrant::H1 => write!(f, "H1"),
            Quadrant::H2 => write!(f, "H2"),
            Quadrant::H3 => write!(f, "H3"),
            Quadrant::H4 => write!(f, "H4"),
            Quadrant::Diagonal => write!(f, "Diagonal"),
        }
    }
}

/// Discrete unit in front of the exponential representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prefactor {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Prefactor {
    pub fn value(self) -> HNumber {
        match self {
            Prefactor::One => HNumber::ONE,
            Prefactor::I => HNumber::I,
            Prefactor::MinusOne => -HNumber::ONE,
            Prefactor::MinusI => -HNumber::I,
        }
    }
}

/// Result of [`HNumber::exp_representation`]: `prefactor * r * exp(i theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpForm {
    pub r: f64,
    pub theta: f64,
    pub prefactor: Prefactor,
}

impl fmt::Display for HNumber {
    /// Shortest-round-trip text form `a+bi` / `a-bi` / `bi` / `a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_imag = |f: &mut fmt::Formatter<'_>, b: f64| -> fmt::Result {
            if b == 1.0 {
                write!(f, "i")
            } else {
                write!(f, "{b}i")
            }
        };
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.re == 0.0 {
            if self.im < 0.0 {
                write!(f, "-")?;
                write_imag(f, -self.im)
            } else {
                write_imag(f, self.im)
            }
        } else if self.im < 0.0 {
            write!(f, "{}-", self.re)?;
            write_imag(f, -self.im)
        } else {
            write!(f, "{}+", self.re)?;
            write_imag(f, self.im)
        }
    }
}

/// Error from parsing the `a+bi` text format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid hyperbolic number literal {input:?}")]
pub struct ParseHNumberError {
    pub input: String,
}

impl FromStr for HNumber {
    type Err = ParseHNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let fail = || ParseHNumberError { input: s.to_string() };
        if t.is_empty() {
            return Err(fail());
        }
        // Split at the last +/- that is neither leading nor an exponent sign.
        let bytes = t.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && !matches!(bytes[k - 1], b'e' | b'E')
            {
                split = Some(k);
                break;
            }
        }
        let parse_imag = |part: &str| -> Result<f64, ParseHNumberError> {
            let coef = &part[..part.len() - 1];
            match coef {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                c => c.parse::<f64>().map_err(|_| fail()),
            }
        };
        match split {
            Some(k) if t.ends_with('i') => {
                let re = t[..k].parse::<f64>().map_err(|_| fail())?;
                let im = parse_imag(&t[k..])?;
                Ok(HNumber::new(re, im))
            }
            Some(_) | None => {
                if t.ends_with('i') {
                    Ok(HNumber::new(0.0, parse_imag(t)?))
                } else {
                    Ok(HNumber::from_real(t.parse::<f64>().map_err(|_| fail())?))
                }
            }
        }
    }
}
