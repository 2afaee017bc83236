use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::TransformMatrix;

/// A root of unity `exp(2 pi i angle)` times a positive rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierAngle {
    pub angle: BigRational,
    pub rational_part: BigRational,
}

impl MultiplierAngle {
    pub fn from_angle(angle: BigRational) -> Self {
        MultiplierAngle { angle: reduce_angle(angle), rational_part: BigRational::one() }
    }

    /// `+1` or `-1` when the root of unity is real.
    pub fn real_sign(&self) -> Option<i8> {
        if self.angle.is_zero() {
            Some(1)
        } else if self.angle == BigRational::new(1.into(), 2.into()) {
            Some(-1)
        } else {
            None
        }
    }
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn reduce_angle(x: BigRational) -> BigRational {
    let fl = x.floor();
    x - fl
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dedekind sum `s(h, k)` for `k >= 1`, `gcd(h, k) = 1`, by reciprocity.
pub fn dedekind_sum(h: i64, k: i64) -> BigRational {
    assert!(k >= 1, "dedekind_sum needs k >= 1");
    assert_eq!(h.gcd(&k), 1, "dedekind_sum needs coprime arguments");
    let mut total = BigRational::zero();
    let mut sign = 1i64;
    let (mut h, mut k) = (h.rem_euclid(k), k);
    // s(h,k) + s(k,h) = (h/k + k/h + 1/(hk))/12 - 1/4, and s(h mod k, k) = s(h, k)
    while k > 1 && h != 0 {
        let term = (r(h, k) + r(k, h) + r(1, h * k)) / BigRational::from_integer(12.into()) - r(1, 4);
        total += if sign > 0 { term } else { -term };
        sign = -sign;
        let next = k.rem_euclid(h);
        k = h;
        h = next;
    }
    total
}

/// Angle of the eta multiplier for `gamma` in `SL(2, Z)`:
/// `eta(gamma tau) = exp(2 pi i angle) (c tau + d)^{1/2} eta(tau)` with
/// `c > 0` (or `c = 0, d = 1`) and the principal square root. The matrix is
/// first brought to that orientation.
pub fn dedekind_multiplier(gamma: &TransformMatrix) -> Result<MultiplierAngle> {
    if gamma.det() != 1 {
        return Err(Error::InvalidArgument(format!("multiplier needs determinant 1, got {}", gamma.det())));
    }
    let g = gamma.normalized();
    let angle = if g.c == 0 {
        r(g.b, 24)
    } else {
        r(g.a + g.d, 24 * g.c) - dedekind_sum(g.d, g.c) / BigRational::from_integer(2.into()) - r(1, 8)
    };
    Ok(MultiplierAngle::from_angle(angle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_dedekind(h: i64, k: i64) -> BigRational {
        let saw = |x: BigRational| -> BigRational {
            if x.is_integer() {
                BigRational::zero()
            } else {
                x.clone() - x.floor() - r(1, 2)
            }
        };
        (1..k).fold(BigRational::zero(), |acc, i| acc + saw(r(i, k)) * saw(r(h * i, k)))
    }

    #[test]
    fn reciprocity_matches_definition() {
        for k in 1..40 {
            for h in -40..40 {
                if h.gcd(&k) == 1 {
                    assert_eq!(dedekind_sum(h, k), brute_dedekind(h, k), "s({h},{k})");
                }
            }
        }
    }

    #[test]
    fn translation_angle() {
        let m = dedekind_multiplier(&TransformMatrix { a: 1, b: 5, c: 0, d: 1 }).unwrap();
        assert_eq!(m.angle, r(5, 24));
        let m = dedekind_multiplier(&TransformMatrix { a: 1, b: -1, c: 0, d: 1 }).unwrap();
        assert_eq!(m.angle, r(23, 24));
    }

    #[test]
    fn inversion_angle() {
        // eta(-1/tau) = sqrt(-i tau) eta(tau) = exp(-pi i / 4) tau^{1/2} eta(tau)
        let m = dedekind_multiplier(&TransformMatrix { a: 0, b: -1, c: 1, d: 0 }).unwrap();
        assert_eq!(m.angle, r(7, 8));
        assert_eq!(m.real_sign(), None);
    }

    #[test]
    fn requires_unit_determinant() {
        assert!(dedekind_multiplier(&TransformMatrix::W).is_err());
    }
}
