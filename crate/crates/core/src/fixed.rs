//! Binary fixed-point reals and complex numbers of arbitrary precision.
//!
//! A [`Fixed`] is `mant / 2^bits`. Binary operations work at the larger of
//! the two precisions, so exact small constants (precision 0) mix freely
//! with high-precision values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Q;

#[derive(Clone, Debug)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed { mant: BigInt::zero(), bits: 0 }
    }

    pub fn one() -> Self {
        Fixed { mant: BigInt::one(), bits: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Fixed { mant: n.into(), bits: 0 }
    }

    pub fn from_raw(mant: BigInt, bits: u32) -> Self {
        Fixed { mant, bits }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn precision(&self) -> u32 {
        self.bits
    }

    /// Nearest-below approximation of a rational at the given precision.
    pub fn from_q(x: &Q, bits: u32) -> Self {
        if x.denom().is_one() {
            return Fixed { mant: x.numer().clone(), bits: 0 };
        }
        let mant = (x.numer() << bits).div_floor(x.denom());
        Fixed { mant, bits }
    }

    /// Re-expresses the value at the given precision (truncating if lower).
    pub fn with_precision(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Fixed { mant: &self.mant << (bits - self.bits), bits },
            Ordering::Less => Fixed { mant: &self.mant >> (self.bits - bits), bits },
        }
    }

    fn aligned(a: &Fixed, b: &Fixed) -> (BigInt, BigInt, u32) {
        let bits = a.bits.max(b.bits);
        (a.with_precision(bits).mant, b.with_precision(bits).mant, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Self {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Fixed { mant: &self.mant * k, bits: self.bits }
    }

    pub fn div_int(&self, k: i64) -> Self {
        Fixed { mant: self.mant.div_floor(&BigInt::from(k)), bits: self.bits }
    }

    pub fn mul_q(&self, x: &Q) -> Self {
        if self.bits == 0 && x.denom().is_one() {
            return Fixed { mant: &self.mant * x.numer(), bits: 0 };
        }
        let bits = self.bits.max(1);
        let s = self.with_precision(bits);
        Fixed { mant: (&s.mant * x.numer()).div_floor(x.denom()), bits }
    }

    /// Division at the larger of the two precisions.
    pub fn div(&self, other: &Fixed) -> Self {
        assert!(!other.is_zero(), "fixed-point division by zero");
        let bits = self.bits.max(other.bits);
        let num = &self.mant << (other.bits + bits - self.bits);
        Fixed { mant: num.div_floor(&other.mant), bits }
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.signum() >= 0, "square root of a negative value");
        let bits = self.bits;
        // sqrt(m / 2^b) = sqrt(m * 2^b) / 2^b
        let m = &self.mant << bits;
        Fixed { mant: m.sqrt(), bits }
    }

    /// Integer power.
    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Fixed::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `log10 |x|`, or negative infinity for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let a = self.mant.abs();
        let len = a.bits();
        let shift = len.saturating_sub(60);
        let top = (&a >> shift).to_f64().unwrap_or(1.0);
        (top.log2() + shift as f64 - self.bits as f64) * std::f64::consts::LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let l = self.log10_abs();
        if l < -300.0 {
            return 0.0;
        }
        let a = self.mant.abs();
        let len = a.bits();
        let shift = len.saturating_sub(60);
        let top = (&a >> shift).to_f64().unwrap_or(0.0);
        let v = top * 2f64.powf(shift as f64 - self.bits as f64);
        if self.signum() < 0 {
            -v
        } else {
            v
        }
    }

    /// Decimal expansion with `digits` digits after the point, rounded to
    /// nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let num = &self.mant * scale;
        let den = BigInt::one() << self.bits;
        let (mut qt, r) = num.abs().div_rem(&den);
        if (r << 1u32) >= den {
            qt += 1;
        }
        let neg = self.signum() < 0 && !qt.is_zero();
        let s = qt.to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Short scientific rendering for residuals, e.g. `3.1e-45`.
    pub fn to_sci(&self) -> String {
        sci_from_log10(self.log10_abs(), self.signum())
    }

    /// The nearest integer.
    pub fn round(&self) -> BigInt {
        if self.bits == 0 {
            return self.mant.clone();
        }
        let half = BigInt::one() << (self.bits - 1);
        (&self.mant + half) >> self.bits
    }
}

pub fn sci_from_log10(l: f64, sign: i32) -> String {
    if l == f64::NEG_INFINITY {
        return "0".to_string();
    }
    let e = l.floor();
    let m = 10f64.powf(l - e);
    let s = if sign < 0 { "-" } else { "" };
    format!("{s}{m:.2}e{}", e as i64)
}

impl PartialEq for Fixed {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Fixed::aligned(self, other);
        a == b
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b, _) = Fixed::aligned(self, other);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits as f64) * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        let (a, b, bits) = Fixed::aligned(self, rhs);
        Fixed { mant: a + b, bits }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        let (a, b, bits) = Fixed::aligned(self, rhs);
        Fixed { mant: a - b, bits }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        let bits = self.bits.max(rhs.bits);
        let prod = &self.mant * &rhs.mant;
        let shift = self.bits + rhs.bits - bits;
        Fixed { mant: prod >> shift, bits }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { mant: -&self.mant, bits: self.bits }
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Fixed, Add add, Sub sub, Mul mul);

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        -&self
    }
}

fn atan_inv(n: u32, bits: u32) -> BigInt {
    // atan(1/n) * 2^bits
    let one = BigInt::one() << bits;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = &one / &n;
    let mut sum = power.clone();
    let mut k = 1u32;
    while !power.is_zero() {
        power = &power / &n2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

/// π to the given binary precision (Machin's formula with guard bits).
pub fn pi(bits: u32) -> Fixed {
    let guard = 32;
    let w = bits + guard;
    let v = atan_inv(5, w) * 16 - atan_inv(239, w) * 4;
    Fixed { mant: v >> guard, bits }
}

/// Complex number with fixed-point parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Fixed,
    pub im: Fixed,
}

impl Complex {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Fixed) -> Self {
        Complex { re, im: Fixed::zero() }
    }

    pub fn zero() -> Self {
        Complex::real(Fixed::zero())
    }

    pub fn one() -> Self {
        Complex::real(Fixed::one())
    }

    pub fn i() -> Self {
        Complex { re: Fixed::zero(), im: Fixed::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale_q(&self, x: &Q) -> Self {
        Complex { re: self.re.mul_q(x), im: self.im.mul_q(x) }
    }

    /// max(|re|, |im|), a cheap norm for residuals.
    pub fn max_abs(&self) -> Fixed {
        let a = self.re.abs();
        let b = self.im.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn with_precision(&self, bits: u32) -> Self {
        Complex { re: self.re.with_precision(bits), im: self.im.with_precision(bits) }
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

owned_ops!(Complex, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn pi_digits() {
        let p = pi(bits_for_digits(50));
        assert!(p.to_decimal(40).starts_with("3.14159265358979323846264338327950288419"));
    }

    #[test]
    fn mixed_precision_arithmetic() {
        let b = 200;
        let third = Fixed::from_q(&q(1, 3), b);
        let x = &third * &Fixed::from_int(3);
        let err = (&x - &Fixed::one()).abs();
        assert!(err.log10_abs() < -55.0);
    }

    #[test]
    fn division_and_sqrt() {
        let b = 300;
        let two = Fixed::from_int(2).with_precision(b);
        let r = two.sqrt();
        let back = &r * &r;
        assert!((&back - &two).abs().log10_abs() < -85.0);
        let d = Fixed::one().with_precision(b).div(&Fixed::from_int(7).with_precision(b));
        assert!((&d.mul_int(7) - &Fixed::one()).abs().log10_abs() < -85.0);
    }

    #[test]
    fn decimal_rounding() {
        let x = Fixed::from_q(&q(-1, 8), 10);
        assert_eq!(x.to_decimal(2), "-0.13");
        assert_eq!(Fixed::from_int(5).to_decimal(0), "5");
        assert_eq!(Fixed::from_q(&q(1, 1000), 40).to_decimal(2), "0.00");
    }
}
