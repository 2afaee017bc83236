//! Divisibility checks on series and direct scans of raw coefficients.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::Catalog;
use crate::scalar::valuation;
use crate::series::eta_product_mod;
use crate::IntSeries;

use super::family::{CongruenceFamily, Progression};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offender {
    /// Exponent (for series) or `n` (for scans) of the first failure.
    pub index: i64,
    /// `p`-adic valuation of the offending value; below the required one.
    pub valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub prime: u64,
    pub exponent: u32,
    /// Number of values examined.
    pub checked: u64,
    /// Values were examined for indices below this bound.
    pub checked_below: i64,
    pub first_offender: Option<Offender>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.first_offender.is_none()
    }
}

/// Every known coefficient of `l` divisible by `p^e`, or the first that is
/// not.
pub fn check_divisibility(l: &IntSeries, p: u64, e: u32) -> DivisibilityReport {
    let first_offender = l.terms().find_map(|(n, c)| {
        let v = valuation(c, p).unwrap_or(u32::MAX);
        (v < e).then_some(Offender { index: n, valuation: v })
    });
    DivisibilityReport {
        prime: p,
        exponent: e,
        checked: l.terms().count() as u64,
        checked_below: l.truncation_order(),
        first_offender,
    }
}

fn modulus(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|m| *m < 1 << 62)
        .ok_or_else(|| Error::InvalidArgument(format!("modulus {p}^{e} too large for a residue scan")))
}

fn residue_valuation(r: u64, p: u64) -> u32 {
    valuation(&BigInt::from(r), p).expect("nonzero residue")
}

/// Coefficients `c(0..len)` of a catalog counting product, reduced mod `m`.
pub fn raw_coefficients_mod(symbol: &str, len: usize, m: u64) -> Result<Vec<u64>> {
    let prod = Catalog::global().get(symbol)?.eta_product_terms()?;
    Ok(eta_product_mod(&prod, len, m))
}

/// Checks `c(n) = 0 (mod p^e)` for every `n <= n_max` in the progression,
/// reading raw coefficients of the generator. Arithmetic is done modulo
/// `p^e`, which decides the congruence exactly.
pub fn scan_direct(symbol: &str, progression: Progression, p: u64, e: u32, n_max: u64) -> Result<DivisibilityReport> {
    let m = modulus(p, e)?;
    let c = raw_coefficients_mod(symbol, n_max as usize + 1, m)?;
    let class = progression.class() as usize;
    let mut checked = 0;
    let mut first_offender = None;
    for n in (class..=n_max as usize).step_by(progression.modulus as usize) {
        checked += 1;
        if c[n] != 0 {
            first_offender = Some(Offender { index: n as i64, valuation: residue_valuation(c[n], p) });
            break;
        }
    }
    Ok(DivisibilityReport { prime: p, exponent: e, checked, checked_below: n_max as i64 + 1, first_offender })
}

/// `scan_direct` with the family's progression and exponent at `alpha`.
pub fn scan_family(family: &CongruenceFamily, alpha: u32, n_max: u64) -> Result<DivisibilityReport> {
    family.check_alpha(alpha)?;
    scan_direct(family.generator, family.progression(alpha), family.prime, family.divisibility_exponent(alpha), n_max)
}

/// An internal congruence `c(i(alpha, n)) = c(j(alpha, n)) (mod p^e(alpha))`.
#[derive(Clone, Copy, Debug)]
pub struct InternalFamily {
    pub name: &'static str,
    pub generator: &'static str,
    pub prime: u64,
    indices: fn(u32, u64) -> (u64, u64),
    exponent: fn(u32) -> u32,
}

impl InternalFamily {
    pub fn indices(&self, alpha: u32, n: u64) -> (u64, u64) {
        (self.indices)(alpha, n)
    }

    pub fn divisibility_exponent(&self, alpha: u32) -> u32 {
        (self.exponent)(alpha)
    }
}

pub static INTERNAL_FAMILIES: [InternalFamily; 2] = [
    InternalFamily {
        name: "ph3",
        generator: "F",
        prime: 3,
        indices: |a, n| (3u64.pow(2 * a - 1) * n, 3u64.pow(2 * a + 1) * n),
        exponent: |a| a + 2,
    },
    InternalFamily {
        name: "ps3",
        generator: "G",
        prime: 3,
        indices: |a, n| {
            (3u64.pow(2 * a - 1) * n + (3u64.pow(2 * a) - 1) / 4, 3u64.pow(2 * a + 1) * n + (3u64.pow(2 * a + 2) - 1) / 4)
        },
        exponent: |a| a + 2,
    },
];

pub fn internal_family(name: &str) -> Result<&'static InternalFamily> {
    INTERNAL_FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
}

/// Checks the internal congruence for `0 <= n <= n_max`; the offender index
/// is `n` and its valuation is that of the difference.
pub fn scan_internal(family: &InternalFamily, alpha: u32, n_max: u64) -> Result<DivisibilityReport> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be at least 1".into()));
    }
    let e = family.divisibility_exponent(alpha);
    let m = modulus(family.prime, e)?;
    let (_, top) = family.indices(alpha, n_max);
    let c = raw_coefficients_mod(family.generator, top as usize + 1, m)?;
    let mut first_offender = None;
    for n in 0..=n_max {
        let (i, j) = family.indices(alpha, n);
        let d = (c[i as usize] + m - c[j as usize]) % m;
        if d != 0 {
            first_offender = Some(Offender { index: n as i64, valuation: residue_valuation(d, family.prime) });
            break;
        }
    }
    Ok(DivisibilityReport { prime: family.prime, exponent: e, checked: n_max + 1, checked_below: n_max as i64 + 1, first_offender })
}
