use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::multiplier::reduce_angle;
use super::{decompose, dedekind_multiplier, EtaQuotient, TransformMatrix};

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

fn sign_of(angle: &BigRational) -> Option<i64> {
    if angle.is_zero() {
        Some(1)
    } else if *angle == BigRational::new(BigInt::from(1), BigInt::from(2)) {
        Some(-1)
    } else {
        None
    }
}

/// `f(M tau)` for a weight-0 eta quotient `f`, as a new eta quotient. Returns
/// the image (with the constant folded into its scalar) and the constant
/// produced by the transformation itself.
pub fn transform(eq: &EtaQuotient, m: &TransformMatrix) -> Result<(EtaQuotient, BigRational)> {
    if eq.weight_indicator() != 0 {
        return Err(Error::NonZeroWeight(eq.weight_indicator()));
    }
    if m.det() <= 0 {
        return Err(Error::NonPositiveDeterminant(m.det()));
    }
    let m = m.normalized();
    let mut angle = BigRational::zero();
    let mut content = BigRational::one();
    let mut image: BTreeMap<u64, i64> = BTreeMap::new();
    for (&delta, &r) in eq.exponents() {
        let dec = decompose(delta, &m)?;
        let mult = dedekind_multiplier(&dec.gamma)?;
        let shift = BigRational::new(BigInt::from(dec.f), BigInt::from(24));
        angle += (mult.angle + shift) * BigRational::from_integer(BigInt::from(r));
        let c = BigRational::from_integer(BigInt::from(dec.content));
        content *= if r >= 0 { num_traits::pow(c, r as usize) } else { num_traits::pow(c.recip(), (-r) as usize) };
        *image.entry(dec.e as u64).or_insert(0) += r;
    }
    let angle = reduce_angle(angle);
    let sign = sign_of(&angle).ok_or_else(|| Error::InconsistentMultiplier(format!("residual phase exp(2 pi i {angle})")))?;
    let magnitude = rational_sqrt(&content.recip())
        .ok_or_else(|| Error::InconsistentMultiplier(format!("automorphy constant sqrt({}) is irrational", content.recip())))?;
    let s = magnitude * BigRational::from_integer(BigInt::from(sign));
    let out = EtaQuotient::from_exponents(image).with_scalar(eq.scalar() * &s);
    Ok((out, s))
}

/// `f(-q)` for an eta quotient `f` with integral q-power, via
/// `eta(tau + 1/2) = exp(pi i / 24) eta(2 tau)^3 / (eta(tau) eta(4 tau))`.
/// Returns the image and the sign produced.
pub fn negate_q_eta(eq: &EtaQuotient) -> Result<(EtaQuotient, BigRational)> {
    let mut angle = BigRational::zero();
    let mut terms = Vec::new();
    for (&d, &r) in eq.exponents() {
        angle += BigRational::new(BigInt::from(r * d as i64), BigInt::from(48));
        if d % 2 == 0 {
            terms.push((d, r));
        } else {
            terms.extend([(2 * d, 3 * r), (d, -r), (4 * d, -r)]);
        }
    }
    let sign = sign_of(&reduce_angle(angle)).ok_or(Error::NonRealSignChange)?;
    let s = BigRational::from_integer(BigInt::from(sign));
    let out = EtaQuotient::from_exponents(terms).with_scalar(eq.scalar() * &s);
    Ok((out, s))
}

/// `q -> -q`, then `M`, then `q -> -q`. With `M = W` this is the action of
/// `(27, 7; 50, 13)`.
pub fn conjugated_involution(eq: &EtaQuotient, m: &TransformMatrix) -> Result<(EtaQuotient, BigRational)> {
    let (e1, s1) = negate_q_eta(eq)?;
    let (e2, s2) = transform(&e1, m)?;
    let (e3, s3) = negate_q_eta(&e2)?;
    Ok((e3, s1 * s2 * s3))
}
