//! Dedekind eta quotients `c * prod eta(d tau)^{r_d}` and their action under
//! integer matrices.

mod matrix;
mod multiplier;
mod text;
mod transform;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::series::product::mul_eta_product_in_place;
use crate::series::{eta_product, QSeries};

pub use matrix::{decompose, Decomposition, TransformMatrix};
pub use multiplier::{dedekind_multiplier, dedekind_sum, MultiplierAngle};
pub use transform::{conjugated_involution, negate_q_eta, transform};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
    scalar: BigRational,
}

impl EtaQuotient {
    /// Quotient whose level is the lcm of the divisors that occur.
    pub fn from_exponents(exponents: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (d, r) in exponents {
            assert!(d >= 1, "eta argument must be positive");
            *map.entry(d).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        let level = map.keys().fold(1u64, |acc, d| acc.lcm(d));
        EtaQuotient { level, exponents: map, scalar: BigRational::one() }
    }

    /// Quotient at an explicit level; every divisor must divide it.
    pub fn with_level(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut q = Self::from_exponents(exponents);
        if let Some(&d) = q.exponents.keys().find(|d| level % **d != 0) {
            return Err(Error::DivisorNotInLevel { delta: d, level });
        }
        q.level = level;
        Ok(q)
    }

    pub fn constant(scalar: BigRational) -> Self {
        Self::from_exponents([]).with_scalar(scalar)
    }

    pub fn with_scalar(mut self, scalar: BigRational) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.exponents.get(&delta).copied().unwrap_or(0)
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    /// Sum of the exponents; twice the weight.
    pub fn weight_indicator(&self) -> i64 {
        self.exponents.values().sum()
    }

    /// `(1/24) sum d r_d`, the order at infinity.
    pub fn prefactor_exponent(&self) -> BigRational {
        let s: i64 = self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
        BigRational::new(BigInt::from(s), BigInt::from(24))
    }

    /// Integral order at infinity, or the non-integrality error.
    pub fn integral_prefactor(&self) -> Result<i64> {
        let p = self.prefactor_exponent();
        if p.is_integer() {
            Ok(p.to_integer().to_i64().expect("prefactor fits in i64"))
        } else {
            Err(Error::NonIntegralPower(p.to_string()))
        }
    }

    pub fn product_terms(&self) -> Vec<(u64, i64)> {
        self.exponents.iter().map(|(&d, &r)| (d, r)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut q = Self::from_exponents(self.product_terms().into_iter().chain(other.product_terms()));
        q.level = q.level.lcm(&self.level).lcm(&other.level);
        q.with_scalar(&self.scalar * &other.scalar)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut q = Self::from_exponents(self.exponents.iter().map(|(&d, &r)| (d, r * e)));
        q.level = self.level;
        let s = if e >= 0 {
            num_traits::pow(self.scalar.clone(), e as usize)
        } else {
            num_traits::pow(self.scalar.recip(), e.unsigned_abs() as usize)
        };
        q.with_scalar(s)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `eta(d tau) -> eta(m d tau)` for every factor.
    pub fn rescale(&self, m: u64) -> Self {
        let mut q = Self::from_exponents(self.exponents.iter().map(|(&d, &r)| (m * d, r)));
        q.level = self.level * m;
        q.with_scalar(self.scalar.clone())
    }

    /// The pair `(q-power, product series)` with `self = scalar * q^power *
    /// product`. The product is known below `q^trunc`; the scalar is not
    /// applied.
    pub fn expand_pair(&self, trunc: i64) -> (BigRational, QSeries<BigInt>) {
        (self.prefactor_exponent(), eta_product(&self.product_terms(), trunc))
    }

    /// Exact expansion known below `q^trunc`.
    pub fn expand<C: Coefficient>(&self, trunc: i64) -> Result<QSeries<C>> {
        let k = self.integral_prefactor()?;
        let scalar = C::from_rational(&self.scalar)
            .ok_or_else(|| Error::InvalidArgument(format!("scalar {} not in coefficient ring", self.scalar)))?;
        if trunc <= k {
            return Ok(QSeries::zero(trunc));
        }
        let prod: QSeries<BigInt> = eta_product(&self.product_terms(), trunc - k);
        let lifted = prod.map(|c| C::from_rational(&BigRational::from_integer(c.clone())).expect("integers lift"));
        Ok(lifted.shift(k).scale(&scalar))
    }

    /// `self * s` using sparse pentagonal multiplication; cheaper than
    /// expanding `self` and multiplying densely.
    pub fn mul_series<C: Coefficient>(&self, s: &QSeries<C>) -> Result<QSeries<C>> {
        let k = self.integral_prefactor()?;
        let scalar = C::from_rational(&self.scalar)
            .ok_or_else(|| Error::InvalidArgument(format!("scalar {} not in coefficient ring", self.scalar)))?;
        let lead = s.leading_exponent();
        let mut c = s.coefficients().to_vec();
        c.resize(s.relative_precision() as usize, C::zero());
        mul_eta_product_in_place(&mut c, &self.product_terms());
        Ok(QSeries::from_coeffs(lead + k, c).scale(&scalar))
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Largest absolute exponent; used by generators of random quotients.
    pub fn max_abs_exponent(&self) -> i64 {
        self.exponents.values().map(|r| r.abs()).max().unwrap_or(0)
    }
}
