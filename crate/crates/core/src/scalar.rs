//! Coefficient rings for truncated series.
//!
//! Series arithmetic only needs a commutative ring with a way to lift small
//! integers and rationals into it. Exact work uses [`BigInt`] and
//! [`BigRational`]; `f64` is provided for approximate evaluation only.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;

    /// Lifts a rational into the ring; `None` when it has no image (for
    /// instance a proper fraction in the integers).
    fn from_rational(v: &BigRational) -> Option<Self>;

    fn to_rational(&self) -> Option<BigRational>;

    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        *self += &p;
    }

    fn mul_small(&self, k: i64) -> Self {
        self.mul_ref(&Self::from_i64(k))
    }

    /// First `n` coefficients of the product of two coefficient vectors.
    fn convolve(a: &[Self], b: &[Self], n: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j].add_mul(x, y);
            }
        }
        out
    }
}

/// Integer numerators over the lcm of the denominators.
fn common_denominator(v: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let d = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = v.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (d, nums)
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_rational(v: &BigRational) -> Option<Self> {
        v.is_integer().then(|| v.to_integer())
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.clone()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn mul_small(&self, k: i64) -> Self {
        self * k
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    /// Clears denominators first so the inner loop is integer-only.
    fn convolve(a: &[Self], b: &[Self], n: usize) -> Vec<Self> {
        let (da, na) = common_denominator(a);
        let (db, nb) = common_denominator(b);
        let d = da * db;
        BigInt::convolve(&na, &nb, n).into_iter().map(|c| BigRational::new(c, d.clone())).collect()
    }
}

impl Coefficient for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(v: &BigRational) -> Option<Self> {
        Some(v.numer().to_f64()? / v.denom().to_f64()?)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn unit_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Exponent of the largest power of `p` dividing `n`; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// 5-adic-style valuation of a rational: `v(num) - v(den)`.
pub fn rational_valuation(x: &BigRational, p: u64) -> Option<i64> {
    let vn = valuation(x.numer(), p)? as i64;
    let vd = valuation(x.denom(), p).unwrap_or(0) as i64;
    Some(vn - vd)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_units_are_plus_minus_one() {
        assert_eq!(BigInt::from(-1).unit_inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).unit_inverse(), None);
        assert_eq!(rat(2, 3).unit_inverse(), Some(rat(3, 2)));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(250), 5), Some(3));
        assert_eq!(valuation(&BigInt::from(0), 5), None);
        assert_eq!(rational_valuation(&rat(25, 4), 2), Some(-2));
    }

    #[test]
    fn rational_lifts_into_integers_only_when_integral() {
        assert_eq!(BigInt::from_rational(&rat(6, 3)), Some(BigInt::from(2)));
        assert_eq!(BigInt::from_rational(&rat(1, 4)), None);
    }
}
