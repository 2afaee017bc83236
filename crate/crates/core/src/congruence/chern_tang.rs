//! The 3-adic sequences `Phi_alpha`, `Psi_alpha` built from `gamma_hat` and
//! `delta_hat`, and their description as polynomials in `xi` and `zeta`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::generators::Catalog;
use crate::series::Mismatch;
use crate::{IntSeries, RatSeries};

use super::family::required_base_truncation;
use super::solve::{solve_representation, RepresentationResult, SAFETY_MARGIN};

#[derive(Clone, Debug)]
pub struct ChernTang {
    pub phi: Vec<IntSeries>,
    pub psi: Vec<IntSeries>,
}

fn step(base: &crate::EtaQuotient, first: IntSeries, alpha_max: u32) -> Result<Vec<IntSeries>> {
    let mut out = vec![first];
    for k in 1..alpha_max {
        let last = out.last().expect("nonempty");
        let next = if k % 2 == 1 { last.u_operator(3) } else { base.mul_series(last)?.u_operator(3) };
        out.push(next);
    }
    Ok(out)
}

/// `Phi_1 = U_3(gamma_hat)`, `Psi_1 = U_3(delta_hat)`; odd `k` steps apply
/// `U_3`, even `k` steps apply `U_3` after multiplying by the base function.
pub fn chern_tang_sequences(alpha_max: u32, trunc: i64, budget: i64) -> Result<ChernTang> {
    if alpha_max == 0 {
        return Err(Error::InvalidArgument("alpha must be at least 1".into()));
    }
    let needed = required_base_truncation(3, alpha_max, trunc);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let cat = Catalog::global();
    let gamma = cat.eta("gamma_hat")?;
    let delta = cat.eta("delta_hat")?;
    let phi = step(&gamma, gamma.expand::<num_bigint::BigInt>(needed)?.u_operator(3), alpha_max)?;
    let psi = step(&delta, delta.expand::<num_bigint::BigInt>(needed)?.u_operator(3), alpha_max)?;
    Ok(ChernTang { phi, psi })
}

impl ChernTang {
    pub fn phi(&self, alpha: u32) -> &IntSeries {
        &self.phi[alpha as usize - 1]
    }

    pub fn psi(&self, alpha: u32) -> &IntSeries {
        &self.psi[alpha as usize - 1]
    }

    /// `(Phi_{2a+1} - Phi_{2a-1}, Psi_{2a+1} - Psi_{2a-1})`.
    pub fn hats(&self, alpha: u32) -> Result<(IntSeries, IntSeries)> {
        let top = 2 * alpha + 1;
        if alpha == 0 || top as usize > self.phi.len() {
            return Err(Error::InvalidArgument(format!("sequence too short for hat index {alpha}")));
        }
        Ok((self.phi(top).sub(self.phi(top - 2)), self.psi(top).sub(self.psi(top - 2))))
    }
}

/// Writes `target` as a polynomial in `xi`, searching degrees 1, 2, 4, ...
pub fn xi_polynomial(target: &IntSeries, max_degree: u32) -> Result<RepresentationResult> {
    let trunc = target.truncation_order();
    let xi: RatSeries = Catalog::global().expand("xi", trunc)?;
    let target = target.to_rational();
    let mut degree = 1;
    loop {
        let d = degree.min(max_degree);
        if d as usize + 1 + SAFETY_MARGIN > (trunc - target.leading_exponent().min(0)).max(0) as usize {
            return Err(Error::BasisDeficient);
        }
        let mut basis = vec![RatSeries::one(trunc)];
        for _ in 0..d {
            let next = basis.last().expect("nonempty").mul(&xi);
            basis.push(next);
        }
        let labels: Vec<String> = (0..=d).map(|i| format!("xi^{i}")).collect();
        let r = solve_representation(&target, &basis, &labels)?;
        if r.residual_zero || d == max_degree {
            return Ok(r.trimmed());
        }
        degree *= 2;
    }
}

/// `sum c_i zeta^i` known below `q^trunc`.
pub fn evaluate_at_zeta(coefficients: &[BigRational], trunc: i64) -> Result<RatSeries> {
    let zeta: RatSeries = Catalog::global().expand("zeta", trunc)?;
    let mut acc = RatSeries::zero(trunc);
    let mut power = RatSeries::one(trunc);
    for c in coefficients {
        acc = acc.add(&power.scale(c));
        power = power.mul(&zeta);
    }
    Ok(acc)
}

/// Compares `Psi_alpha` with `Phi_alpha` rewritten through `xi -> zeta`.
pub fn involution_mismatch(ct: &ChernTang, alpha: u32, max_degree: u32) -> Result<(i64, Option<Mismatch<BigRational>>)> {
    let phi = ct.phi(alpha);
    let rep = xi_polynomial(phi, max_degree)?;
    if !rep.residual_zero {
        return Err(Error::InvalidArgument(format!("Phi_{alpha} is not a polynomial in xi of degree <= {max_degree}")));
    }
    let psi = ct.psi(alpha).to_rational();
    let image = evaluate_at_zeta(&rep.coefficients, psi.truncation_order())?;
    let trunc = image.truncation_order().min(psi.truncation_order());
    Ok((trunc, image.first_mismatch(&psi)))
}
