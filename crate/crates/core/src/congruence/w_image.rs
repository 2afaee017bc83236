//! Images of `L_alpha` under the Fricke-type matrix `W`, obtained by
//! substituting the transformed generators into the t-module representation.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::eta::{transform, TransformMatrix};
use crate::generators::Catalog;
use crate::RatSeries;

use super::family::{build_l_sequence, family, CongruenceFamily};
use super::solve::{represent_in_t_module, RepresentationResult};

/// Truncation at which `L_alpha` is built before solving for its
/// representation.
pub const REPRESENTATION_TRUNCATION: i64 = 120;
/// Largest `t`-degree tried by the representation search.
pub const REPRESENTATION_DEGREE: u32 = 16;

/// `t`, `x`, `y` composed with `W`, known below `q^trunc`.
#[derive(Clone, Debug)]
pub struct WImages {
    pub t: RatSeries,
    pub x: RatSeries,
    pub y: RatSeries,
}

pub fn w_images(trunc: i64) -> Result<WImages> {
    let cat = Catalog::global();
    let image = |s: &str| -> Result<RatSeries> { transform(&cat.eta(s)?, &TransformMatrix::W)?.0.expand(trunc) };
    Ok(WImages { t: image("t")?, x: image("x")?, y: image("y")? })
}

fn family_for(beta: u32) -> Result<&'static CongruenceFamily> {
    match beta {
        1 => family("cphi2"),
        0 => family("cpsi2"),
        _ => Err(Error::InvalidArgument(format!("beta must be 0 or 1, got {beta}"))),
    }
}

/// `L_alpha` for the family of type `beta` written in `Z[t] + p Z[t]`.
pub fn l_representation(beta: u32, alpha: u32) -> Result<RepresentationResult> {
    let f = family_for(beta)?;
    let seq = build_l_sequence(f, alpha, REPRESENTATION_TRUNCATION, i64::MAX)?;
    let rep = represent_in_t_module(seq.term(alpha), beta, alpha % 2, REPRESENTATION_DEGREE)?;
    if !rep.residual_zero {
        return Err(Error::BasisDeficient);
    }
    Ok(rep)
}

/// `sum c_{2i} t^i + c_{2i+1} t^i p` with the images substituted.
pub fn apply_representation(beta: u32, a: u32, coefficients: &[BigRational], images: &WImages) -> Result<RatSeries> {
    let trunc = images.t.truncation_order();
    let p = Catalog::global().expression(&format!("p{beta}_{a}"))?.evaluate(&images.t, &images.x, &images.y)?;
    let mut acc = RatSeries::zero(trunc);
    let mut tp = RatSeries::one(trunc);
    for pair in coefficients.chunks(2) {
        acc = acc.add(&tp.scale(&pair[0]));
        if let Some(c) = pair.get(1) {
            acc = acc.add(&tp.mul(&p).scale(c));
        }
        tp = tp.mul(&images.t);
    }
    Ok(acc)
}

/// `phi(q^{1+4a})` for `beta = 1`, `phi(-q^{1+4a})` for `beta = 0`.
pub fn theta_factor(beta: u32, a: u32, trunc: i64) -> Result<RatSeries> {
    let symbol = if beta == 1 { "phi" } else { "phi_neg" };
    Catalog::global().eta(symbol)?.rescale(1 + 4 * a as u64).expand(trunc)
}

/// `theta_factor * L_alpha(W)` for one `beta`.
pub fn w_image_series(beta: u32, alpha: u32, images: &WImages) -> Result<RatSeries> {
    let a = alpha % 2;
    let rep = l_representation(beta, alpha)?;
    let l = apply_representation(beta, a, &rep.coefficients, images)?;
    Ok(theta_factor(beta, a, images.t.truncation_order())?.mul(&l))
}

/// First known exponent `n` with `n mod m` in `residues` and a nonzero
/// coefficient.
pub fn first_nonvanishing(s: &RatSeries, m: u64, residues: &[u64]) -> Option<(i64, BigRational)> {
    s.terms()
        .find(|(n, c)| residues.contains(&(n.rem_euclid(m as i64) as u64)) && !c.is_zero())
        .map(|(n, c)| (n, c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms_vanish_on_residues_two_and_three() {
        let images = w_images(120).unwrap();
        for beta in [0, 1] {
            let g = w_image_series(beta, 1, &images).unwrap();
            assert!(g.truncation_order() >= 100);
            assert!(!g.is_zero());
            assert_eq!(first_nonvanishing(&g, 4, &[2, 3]), None, "beta = {beta}");
        }
    }

    #[test]
    fn first_representation_coefficients() {
        let rep = l_representation(1, 1).unwrap();
        let ints: Vec<i64> = rep.integer_coefficients().unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![0, 25, -5]);
    }
}
