//! Congruence families, their arithmetic progressions, and the sequences
//! `L_alpha` built by alternating `U_p` steps.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::generators::Catalog;
use crate::series::QSeries;
use crate::IntSeries;

/// The class `multiplier * n = residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub multiplier: i64,
    pub residue: i64,
    pub modulus: u64,
}

impl Progression {
    pub fn new(multiplier: i64, residue: i64, modulus: u64) -> Self {
        Progression { multiplier, residue, modulus }
    }

    /// The unique `r` in `0..modulus` with `n = r (mod modulus)` equivalent
    /// to the defining congruence.
    pub fn class(&self) -> u64 {
        let m = self.modulus as i64;
        let g = self.multiplier.extended_gcd(&m);
        assert_eq!(g.gcd.abs(), 1, "progression multiplier must be invertible");
        let inv = g.x * g.gcd;
        (inv as i128 * self.residue as i128).rem_euclid(m as i128) as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.class()
    }
}

/// A divisibility family `c(n) = 0 (mod p^e(alpha))` on a progression, with
/// an optional `L_alpha` construction.
#[derive(Clone, Copy, Debug)]
pub struct CongruenceFamily {
    pub name: &'static str,
    /// Catalog symbol whose product coefficients are `c(n)`.
    pub generator: &'static str,
    /// Catalog symbol `A` for the step `L -> U_p(A L)`; `None` if the family
    /// has no sequence construction here.
    pub a_factor: Option<&'static str>,
    /// Type parameter of the Frobenius family.
    pub beta: Option<u32>,
    pub prime: u64,
    pub max_alpha: Option<u32>,
    progression: fn(u32) -> Progression,
    exponent: fn(u32) -> u32,
}

impl CongruenceFamily {
    pub fn progression(&self, alpha: u32) -> Progression {
        (self.progression)(alpha)
    }

    pub fn divisibility_exponent(&self, alpha: u32) -> u32 {
        (self.exponent)(alpha)
    }

    /// `a` with `alpha = a (mod 2)`.
    pub fn parity(alpha: u32) -> u32 {
        alpha % 2
    }

    pub fn check_alpha(&self, alpha: u32) -> Result<()> {
        if alpha == 0 {
            return Err(Error::InvalidArgument("alpha must be at least 1".into()));
        }
        match self.max_alpha {
            Some(m) if alpha > m => Err(Error::InvalidArgument(format!("family {} supports alpha <= {m}", self.name))),
            _ => Ok(()),
        }
    }
}

fn pow5(alpha: u32) -> u64 {
    5u64.pow(alpha)
}

pub static FAMILIES: [CongruenceFamily; 6] = [
    CongruenceFamily {
        name: "cphi2",
        generator: "cpsi21",
        a_factor: Some("A1"),
        beta: Some(1),
        prime: 5,
        max_alpha: None,
        progression: |a| Progression::new(12, 1, pow5(a)),
        exponent: |a| a,
    },
    CongruenceFamily {
        name: "cpsi2",
        generator: "cpsi20",
        a_factor: Some("A0"),
        beta: Some(0),
        prime: 5,
        max_alpha: None,
        progression: |a| Progression::new(6, -1, pow5(a)),
        exponent: |a| a,
    },
    CongruenceFamily {
        name: "phi2",
        generator: "phi2",
        a_factor: None,
        beta: None,
        prime: 5,
        max_alpha: Some(1),
        progression: |_| Progression::new(1, 3, 5),
        exponent: |_| 1,
    },
    CongruenceFamily {
        name: "psi2",
        generator: "psi2",
        a_factor: None,
        beta: None,
        prime: 5,
        max_alpha: Some(1),
        progression: |_| Progression::new(1, 4, 5),
        exponent: |_| 1,
    },
    CongruenceFamily {
        name: "eo-alpha",
        generator: "eo_alpha",
        a_factor: None,
        beta: None,
        prime: 5,
        max_alpha: None,
        progression: |m| Progression::new(6, -1, pow5(m)),
        exponent: |m| m.div_ceil(2),
    },
    CongruenceFamily {
        name: "crank-beta",
        generator: "crank_beta",
        a_factor: None,
        beta: None,
        prime: 5,
        max_alpha: None,
        progression: |m| Progression::new(24, 1, pow5(2 * m + 1)),
        exponent: |m| m + 1,
    },
];

/// Looks a family up by name; `cpsi21` and `cpsi20` are accepted as aliases.
pub fn family(name: &str) -> Result<&'static CongruenceFamily> {
    let name = match name {
        "cpsi21" => "cphi2",
        "cpsi20" => "cpsi2",
        n => n,
    };
    FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
}

/// `L_1, ..., L_alpha_max` for one family, each known below its own
/// truncation.
#[derive(Clone, Debug)]
pub struct LSequence {
    pub family: &'static CongruenceFamily,
    pub terms: Vec<IntSeries>,
}

impl LSequence {
    /// `L_alpha`, counting from 1.
    pub fn term(&self, alpha: u32) -> &IntSeries {
        &self.terms[alpha as usize - 1]
    }

    pub fn effective_truncations(&self) -> Vec<i64> {
        self.terms.iter().map(QSeries::truncation_order).collect()
    }
}

/// Truncation of the base series `A` needed so that `L_alpha_max` is known
/// below `q^trunc`. Each step multiplies by `p` plus a margin for the
/// leading-exponent shifts.
pub fn required_base_truncation(prime: u64, alpha_max: u32, trunc: i64) -> i64 {
    (0..alpha_max).fold(trunc, |t, _| prime as i64 * (t + 5))
}

/// `L_1 = U_p(A)`; for odd `alpha` `L_{alpha+1} = U_p(L_alpha)`, for even
/// `alpha` `L_{alpha+1} = U_p(A L_alpha)`.
pub fn build_l_sequence(family: &'static CongruenceFamily, alpha_max: u32, trunc: i64, budget: i64) -> Result<LSequence> {
    let a_symbol = family
        .a_factor
        .ok_or_else(|| Error::InvalidArgument(format!("family {} has no sequence construction", family.name)))?;
    if alpha_max == 0 {
        return Err(Error::InvalidArgument("alpha must be at least 1".into()));
    }
    let needed = required_base_truncation(family.prime, alpha_max, trunc);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let a = Catalog::global().eta(a_symbol)?;
    let base: IntSeries = a.expand(needed)?;
    let mut terms = vec![base.u_operator(family.prime)];
    for alpha in 1..alpha_max {
        let last = terms.last().expect("nonempty");
        let next = if CongruenceFamily::parity(alpha) == 1 {
            last.u_operator(family.prime)
        } else {
            a.mul_series(last)?.u_operator(family.prime)
        };
        terms.push(next);
    }
    Ok(LSequence { family, terms })
}

/// `L_alpha` straight from the raw coefficients: the progression terms
/// `c(n) q^{floor(n / 5^alpha) + beta}` divided by `C(q^{5^a})`, known below
/// `q^trunc`.
pub fn direct_l(family: &'static CongruenceFamily, alpha: u32, trunc: i64) -> Result<IntSeries> {
    let beta = family.beta.ok_or_else(|| Error::InvalidArgument(format!("family {} has no sequence construction", family.name)))? as i64;
    let generator = Catalog::global().get(family.generator)?;
    let prod = generator.eta_product_terms()?;
    let m = pow5(alpha) as i64;
    let top = (trunc - beta).max(0);
    let raw: IntSeries = crate::series::eta_product(&prod, m * top);
    let class = family.progression(alpha).class() as i64;
    let mut coeffs = vec![BigInt::from(0); (trunc - beta).max(0) as usize];
    let mut n = class;
    while n < m * top {
        coeffs[(n / m) as usize] = raw.coefficient(n)?;
        n += m;
    }
    let picked = QSeries::from_coeffs(beta, coeffs);
    let step = if CongruenceFamily::parity(alpha) == 1 { 5 } else { 1 };
    let inverse: Vec<(u64, i64)> = prod.iter().map(|&(d, r)| (d * step, -r)).collect();
    let cofactor: IntSeries = crate::series::eta_product(&inverse, trunc);
    Ok(picked.mul(&cofactor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn progression_classes() {
        assert_eq!(Progression::new(12, 1, 5).class(), 3);
        assert_eq!(Progression::new(12, 1, 25).class(), 23);
        assert_eq!(Progression::new(6, -1, 5).class(), 4);
        assert_eq!(Progression::new(24, 1, 125).class(), 99);
        assert!(Progression::new(1, 3, 5).contains(8));
    }

    #[test]
    fn first_term_two_paths() {
        for name in ["cphi2", "cpsi2"] {
            let f = family(name).unwrap();
            let seq = build_l_sequence(f, 1, 40, 10_000).unwrap();
            let direct = direct_l(f, 1, 40).unwrap();
            assert!(seq.term(1).agrees_with(&direct), "{name}");
            assert!(seq.term(1).truncation_order() >= 40);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = family("cphi2").unwrap();
        assert!(matches!(build_l_sequence(f, 4, 400, 10_000), Err(Error::BudgetExceeded { .. })));
        assert!(build_l_sequence(family("phi2").unwrap(), 1, 10, 1000).is_err());
    }

    #[test]
    fn zero_stays_zero() {
        assert!(IntSeries::zero(100).u_operator(5).is_zero());
    }
}
