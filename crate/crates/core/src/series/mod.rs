//! Truncated Laurent series in one variable `q`.
//!
//! A [`QSeries`] knows every coefficient below its truncation order and
//! nothing at or beyond it. Arithmetic propagates the smallest truncation
//! order that the operands certify, so a comparison between two series can
//! never silently treat an unknown coefficient as zero.

mod display;
pub mod product;

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

pub use product::{eta_product, eta_product_mod, pentagonal_terms, pochhammer};

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    lead: i64,
    coeffs: Vec<C>,
    trunc: i64,
}

/// First exponent where two series disagree, with both coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub exponent: i64,
    pub left: C,
    pub right: C,
}

impl<C: Coefficient> QSeries<C> {
    /// Series with coefficients `coeffs[i]` at `q^(lead + i)` and truncation
    /// order `lead + coeffs.len()`.
    pub fn from_coeffs(lead: i64, coeffs: Vec<C>) -> Self {
        let trunc = lead + coeffs.len() as i64;
        let mut s = QSeries { lead, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn from_fn(lead: i64, trunc: i64, mut f: impl FnMut(i64) -> C) -> Self {
        let trunc = trunc.max(lead);
        Self::from_coeffs(lead, (lead..trunc).map(&mut f).collect())
    }

    pub fn from_i64s(lead: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(lead, coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    /// The zero series known up to (excluding) `q^trunc`.
    pub fn zero(trunc: i64) -> Self {
        QSeries { lead: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn constant(c: C, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(C::one(), trunc)
    }

    pub fn monomial(c: C, exponent: i64, trunc: i64) -> Self {
        if exponent >= trunc {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![C::zero(); (trunc - exponent) as usize];
        coeffs[0] = c;
        Self::from_coeffs(exponent, coeffs)
    }

    fn normalize(&mut self) {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lead += skip as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.trunc;
        }
    }

    /// Exponent of the first stored coefficient; equals the truncation order
    /// for the canonical zero series.
    pub fn leading_exponent(&self) -> i64 {
        self.lead
    }

    /// Order at `q = 0`, `None` when no nonzero coefficient is known.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lead)
    }

    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    /// Number of known coefficients from the leading one on.
    pub fn relative_precision(&self) -> i64 {
        self.trunc - self.lead
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`. Asking at or beyond the truncation order is an
    /// error.
    pub fn coefficient(&self, n: i64) -> Result<C> {
        if n >= self.trunc {
            return Err(Error::BeyondTruncation { exponent: n, truncation: self.trunc });
        }
        Ok(self.coeff_or_zero(n))
    }

    /// Coefficient of `q^n` for `n` below the truncation order; callers are
    /// expected to have checked the range.
    pub(crate) fn coeff_or_zero(&self, n: i64) -> C {
        if n < self.lead || n >= self.trunc {
            C::zero()
        } else {
            self.coeffs[(n - self.lead) as usize].clone()
        }
    }

    fn coeff_ref(&self, n: i64) -> Option<&C> {
        if n < self.lead || n >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(n - self.lead) as usize])
        }
    }

    /// Iterator over `(exponent, coefficient)` for nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    /// Forgets every coefficient at or beyond `q^trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        if trunc <= self.lead {
            return Self::zero(trunc);
        }
        let keep = (trunc - self.lead) as usize;
        Self::from_coeffs(self.lead, self.coeffs[..keep].to_vec())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { lead: self.lead + k, coeffs: self.coeffs.clone(), trunc: self.trunc + k }
    }

    pub fn map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> QSeries<D> {
        let mut s = QSeries { lead: self.lead, coeffs: self.coeffs.iter().map(&mut f).collect(), trunc: self.trunc };
        s.normalize();
        s
    }

    pub fn try_map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> Option<D>) -> Option<QSeries<D>> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Option<Vec<_>>>()?;
        let mut s = QSeries { lead: self.lead, coeffs, trunc: self.trunc };
        s.normalize();
        Some(s)
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.map(|c| c.mul_small(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let lead = self.lead.min(other.lead).min(trunc);
        let mut coeffs = vec![C::zero(); (trunc - lead) as usize];
        for (n, c) in (self.lead..trunc).zip(self.coeffs.iter()) {
            coeffs[(n - lead) as usize] += c;
        }
        for (n, c) in (other.lead..trunc).zip(other.coeffs.iter()) {
            let slot = &mut coeffs[(n - lead) as usize];
            if subtract {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        let mut s = QSeries { lead, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Cauchy product. The result is known up to
    /// `min(lead_a + trunc_b, lead_b + trunc_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let lead = self.lead + other.lead;
        let trunc = (self.lead + other.trunc).min(other.lead + self.trunc);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let coeffs = C::convolve(&self.coeffs, &other.coeffs, (trunc - lead) as usize);
        let mut s = QSeries { lead, coeffs, trunc };
        s.normalize();
        s
    }

    /// Multiplicative inverse. Requires the leading coefficient to be a unit
    /// of the coefficient ring (±1 over the integers).
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.leading_coefficient().ok_or(Error::NotInvertible)?;
        let inv0 = a0.unit_inverse().ok_or(Error::NotInvertible)?;
        let n = self.coeffs.len();
        let mut g: Vec<C> = Vec::with_capacity(n);
        g.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc.add_mul(a, &g[k - i]);
                }
            }
            g.push(-acc.mul_ref(&inv0));
        }
        Ok(Self::from_coeffs(-self.lead, g))
    }

    /// `self^e` by repeated squaring; negative powers go through
    /// [`QSeries::invert`]. `f^0` is `1` known to the relative precision of `f`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.relative_precision()));
        }
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// `U_m`: sends `sum a(n) q^n` to `sum a(m n) q^n`.
    pub fn u_operator(&self, m: u64) -> Self {
        let m = m as i64;
        assert!(m >= 1, "U_m needs m >= 1");
        let trunc = self.trunc.div_ceil_i(m);
        let lead = self.lead.div_ceil_i(m).min(trunc);
        Self::from_fn(lead, trunc, |n| self.coeff_or_zero(m * n))
    }

    /// Terms whose exponent is congruent to `r` modulo `m`; exponents are kept.
    pub fn progression_part(&self, m: u64, r: u64) -> Self {
        assert!(r < m, "residue must be reduced");
        let (m, r) = (m as i64, r as i64);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lead + i as i64).rem_euclid(m) == r { c.clone() } else { C::zero() })
            .collect();
        let mut s = QSeries { lead: self.lead, coeffs, trunc: self.trunc };
        s.normalize();
        s
    }

    /// `q -> q^m`.
    pub fn substitute_power(&self, m: u64) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        let mi = m as i64;
        let trunc = self.trunc * mi;
        if self.is_zero() {
            return Self::zero(trunc);
        }
        let lead = self.lead * mi;
        let mut coeffs = vec![C::zero(); (trunc - lead) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        QSeries { lead, coeffs, trunc }
    }

    /// `q -> -q`.
    pub fn negate_q(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lead + i as i64).rem_euclid(2) == 1 { -c.clone() } else { c.clone() })
            .collect();
        QSeries { lead: self.lead, coeffs, trunc: self.trunc }
    }

    /// First exponent in the common window where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch<C>> {
        let trunc = self.trunc.min(other.trunc);
        let lead = self.lead.min(other.lead);
        (lead..trunc).find_map(|n| {
            let a = self.coeff_ref(n);
            let b = other.coeff_ref(n);
            let differs = match (a, b) {
                (Some(a), Some(b)) => a != b,
                (Some(c), None) | (None, Some(c)) => !c.is_zero(),
                (None, None) => false,
            };
            differs.then(|| Mismatch { exponent: n, left: self.coeff_or_zero(n), right: other.coeff_or_zero(n) })
        })
    }

    /// Equality on every coefficient known to both series.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// Evaluates the known part at a point (approximate rings only make sense
    /// here).
    pub fn evaluate(&self, q: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(q);
            acc += c;
        }
        let mut qp = C::one();
        if self.lead >= 0 {
            for _ in 0..self.lead {
                qp = qp.mul_ref(q);
            }
        } else {
            let inv = q.unit_inverse().expect("evaluation point must be invertible");
            for _ in 0..(-self.lead) {
                qp = qp.mul_ref(&inv);
            }
        }
        acc.mul_ref(&qp)
    }
}

trait DivCeil {
    fn div_ceil_i(self, m: i64) -> i64;
}

impl DivCeil for i64 {
    fn div_ceil_i(self, m: i64) -> i64 {
        -((-self).div_euclid(m))
    }
}

impl QSeries<num_bigint::BigInt> {
    pub fn to_rational(&self) -> QSeries<num_rational::BigRational> {
        self.map(|c| num_rational::BigRational::from_integer(c.clone()))
    }

    /// Every known coefficient divisible by `modulus`.
    pub fn divisible_by(&self, modulus: &num_bigint::BigInt) -> bool {
        use num_integer::Integer;
        self.coeffs.iter().all(|c| c.is_multiple_of(modulus))
    }
}

impl QSeries<num_rational::BigRational> {
    /// Integer series when every coefficient is integral.
    pub fn to_integer(&self) -> Option<QSeries<num_bigint::BigInt>> {
        self.try_map(|c| c.is_integer().then(|| c.to_integer()))
    }
}

impl<C: Coefficient> Add for &QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: Self) -> QSeries<C> {
        QSeries::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &QSeries<C> {
    type Output = QSeries<C>;
    fn sub(self, rhs: Self) -> QSeries<C> {
        QSeries::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: Self) -> QSeries<C> {
        QSeries::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        QSeries::neg(self)
    }
}

/// `1 + sum_{n != 0} q^{n^2}` computed as a lattice sum.
pub fn theta_series<C: Coefficient>(trunc: i64) -> QSeries<C> {
    let mut coeffs = vec![C::zero(); trunc.max(0) as usize];
    let two = C::from_i64(2);
    let mut n: i64 = 0;
    while n * n < trunc {
        if n == 0 {
            coeffs[0] = C::one();
        } else {
            coeffs[(n * n) as usize] = two.clone();
        }
        n += 1;
    }
    QSeries::from_coeffs(0, coeffs)
}

/// Sum of `C::one()` scaled copies; convenience for tests and tables.
pub fn geometric<C: Coefficient>(trunc: i64) -> QSeries<C> {
    QSeries::from_fn(0, trunc, |_| C::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type S = QSeries<BigInt>;

    fn s(lead: i64, c: &[i64]) -> S {
        S::from_i64s(lead, c)
    }

    #[test]
    fn normal_form_strips_leading_zeros() {
        let a = s(0, &[0, 0, 3, 1]);
        assert_eq!(a.leading_exponent(), 2);
        assert_eq!(a.truncation_order(), 4);
        let z = s(0, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.leading_exponent(), 3);
        assert_eq!(z.relative_precision(), 0);
    }

    #[test]
    fn coefficient_beyond_truncation_is_an_error() {
        let a = s(0, &[1, 2]);
        assert_eq!(a.coefficient(-5).unwrap(), BigInt::from(0));
        assert!(matches!(a.coefficient(2), Err(Error::BeyondTruncation { exponent: 2, truncation: 2 })));
    }

    #[test]
    fn add_examples() {
        let a = s(0, &[1, 1, 0]);
        let b = s(0, &[-1, 0, 1]);
        assert_eq!(&a + &b, s(1, &[1, 1]));
        assert_eq!(&a + &S::zero(3), a);
    }

    #[test]
    fn sum_truncation_is_minimum() {
        let a = s(0, &[1, 1, 1, 1]);
        let b = s(0, &[1, 1]);
        assert_eq!((&a + &b).truncation_order(), 2);
    }

    #[test]
    fn mul_examples() {
        let one_minus_q = s(0, &[1, -1, 0, 0, 0, 0]);
        let geo = geometric::<BigInt>(6);
        assert_eq!(&one_minus_q * &geo, S::one(6));
        let qa = S::monomial(BigInt::from(1), 3, 10);
        let qb = S::monomial(BigInt::from(1), 4, 12);
        let p = &qa * &qb;
        assert_eq!(p.leading_exponent(), 7);
        assert_eq!(p.coefficient(7).unwrap(), BigInt::from(1));
        assert!(p.coefficients()[1..].iter().all(|c| c == &BigInt::from(0)));
    }

    #[test]
    fn invert_examples() {
        let one_minus_q = s(0, &[1, -1, 0, 0, 0]);
        assert_eq!(one_minus_q.invert().unwrap(), geometric(5));
        let f = s(-2, &[1, 3, -2, 7, 1]);
        assert_eq!(f.invert().unwrap().invert().unwrap(), f);
        assert_eq!(s(0, &[2, 1]).invert(), Err(Error::NotInvertible));
        assert_eq!(S::zero(4).invert(), Err(Error::NotInvertible));
        // rational fallback
        let r = s(0, &[2, 1, 0]).to_rational().invert().unwrap();
        assert_eq!(r.coefficient(1).unwrap(), crate::scalar::rat(-1, 4));
    }

    #[test]
    fn pow_examples() {
        let f = s(0, &[1, 1, 0, 0]);
        assert_eq!(f.pow(0).unwrap(), S::one(4));
        assert_eq!(f.pow(2).unwrap(), s(0, &[1, 2, 1, 0]));
        assert_eq!(f.pow(-1).unwrap(), s(0, &[1, -1, 1, -1]));
    }

    #[test]
    fn u_operator_examples() {
        let geo = geometric::<BigInt>(100);
        assert_eq!(geo.u_operator(5), geometric(20));
        let q7 = S::monomial(BigInt::from(1), 7, 12);
        let u = q7.u_operator(5);
        assert!(u.is_zero());
        assert_eq!(u.truncation_order(), 3);
        let neg = s(-7, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let u = neg.u_operator(5);
        // coefficients of q^-5 and q^0
        assert_eq!(u.leading_exponent(), -1);
        assert_eq!(u.coefficient(-1).unwrap(), BigInt::from(3));
        assert_eq!(u.coefficient(0).unwrap(), BigInt::from(8));
        assert_eq!(u.truncation_order(), 1);
    }

    #[test]
    fn progression_examples() {
        let f = s(0, &[1, 1, 1, 1]);
        assert_eq!(f.progression_part(2, 0), s(0, &[1, 0, 1, 0]));
        let g = s(-3, &[4, -1, 2, 9, 0, 5, 6, 1]);
        let total = (0..3).fold(S::zero(g.truncation_order()), |acc, r| &acc + &g.progression_part(3, r));
        assert_eq!(total, g);
    }

    #[test]
    fn substitute_and_negate() {
        let f = s(0, &[1, 1]);
        let g = f.substitute_power(2);
        assert_eq!(g, s(0, &[1, 0, 1, 0]));
        let h = s(-1, &[3, 1, 4, 1, 5]);
        assert_eq!(h.substitute_power(5).u_operator(5), h);
        assert_eq!(s(0, &[1, 1, 1]).negate_q(), s(0, &[1, -1, 1]));
        assert_eq!(h.negate_q().negate_q(), h);
    }

    #[test]
    fn theta_has_squares() {
        let th = theta_series::<BigInt>(10);
        assert_eq!(th, s(0, &[1, 2, 0, 0, 2, 0, 0, 0, 0, 2]));
    }

    #[test]
    fn float_evaluation() {
        let f = QSeries::<f64>::from_i64s(-1, &[1, 2, 3]);
        let v = f.evaluate(&0.5);
        assert!((v - (2.0 + 2.0 + 1.5)).abs() < 1e-12);
    }
}
