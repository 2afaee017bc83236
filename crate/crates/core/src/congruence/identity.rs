//! Registry of checkable identities. Each identity produces two series known
//! below a common truncation; the check compares them coefficient by
//! coefficient.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::{conjugated_involution, transform, TransformMatrix};
use crate::generators::{Catalog, GeneratorExpression};
use crate::scalar::{int, rat};
use crate::series::{eta_product, theta_series};
use crate::{EtaQuotient, RatSeries};

use super::chern_tang::{chern_tang_sequences, evaluate_at_zeta, xi_polynomial};
use super::w_image::{first_nonvanishing, w_image_series, w_images};

/// Identities proven in the literature versus observed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Theorem,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ConjecturePass,
    ConjectureFail,
}

impl Status {
    fn from(tier: Tier, ok: bool) -> Self {
        match (tier, ok) {
            (Tier::Theorem, true) => Status::Pass,
            (Tier::Theorem, false) => Status::Fail,
            (Tier::Conjecture, true) => Status::ConjecturePass,
            (Tier::Conjecture, false) => Status::ConjectureFail,
        }
    }

    /// Only theorem-tier failures count as failures.
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ConjecturePass => "conjecture-pass",
            Status::ConjectureFail => "conjecture-fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    pub exponent: i64,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub status: Status,
    /// The two sides were compared below `q^truncation`.
    pub truncation: i64,
    pub first_mismatch: Option<MismatchReport>,
    /// Set when a side could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (T = {})", self.id, self.status, self.truncation)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, ", first mismatch at q^{}: expected {}, got {}", m.exponent, m.expected, m.got)?;
        }
        if let Some(e) = &self.error {
            write!(f, ", error: {e}")?;
        }
        Ok(())
    }
}

type Sides = Box<dyn Fn(i64) -> Result<(RatSeries, RatSeries)> + Send + Sync>;

pub struct Identity {
    pub id: String,
    pub tier: Tier,
    pub description: String,
    sides: Sides,
}

impl Identity {
    fn new(id: impl Into<String>, tier: Tier, description: impl Into<String>, sides: Sides) -> Self {
        Identity { id: id.into(), tier, description: description.into(), sides }
    }

    /// Left and right sides, each known below at least `q^trunc`.
    pub fn sides(&self, trunc: i64) -> Result<(RatSeries, RatSeries)> {
        (self.sides)(trunc)
    }

    pub fn verify(&self, trunc: i64) -> IdentityReport {
        match self.sides(trunc) {
            Ok((lhs, rhs)) => {
                let (lhs, rhs) = (lhs.truncate(trunc), rhs.truncate(trunc));
                let truncation = lhs.truncation_order().min(rhs.truncation_order());
                let first_mismatch = lhs.first_mismatch(&rhs).map(|m| MismatchReport {
                    exponent: m.exponent,
                    expected: m.right.to_string(),
                    got: m.left.to_string(),
                });
                IdentityReport {
                    id: self.id.clone(),
                    status: Status::from(self.tier, first_mismatch.is_none()),
                    truncation,
                    first_mismatch,
                    error: None,
                }
            }
            Err(e) => IdentityReport {
                id: self.id.clone(),
                status: Status::from(self.tier, false),
                truncation: trunc,
                first_mismatch: None,
                error: Some(e.to_string()),
            },
        }
    }
}

fn ex(symbol: &str, trunc: i64) -> Result<RatSeries> {
    Catalog::global().expand(symbol, trunc)
}

fn expr(text: &str) -> GeneratorExpression {
    text.parse().expect("valid generator expression")
}

/// `sum c(m n + r) q^{n + shift}` for a catalog counting product.
fn dissection(symbol: &str, m: u64, r: i64, shift: i64, trunc: i64) -> Result<RatSeries> {
    let raw = ex(symbol, m as i64 * (trunc + 1) + r)?;
    Ok(raw.shift(-r).u_operator(m).shift(shift))
}

fn image(symbol: &str, m: &TransformMatrix) -> Result<EtaQuotient> {
    Ok(transform(&Catalog::global().eta(symbol)?, m)?.0)
}

fn conj_image(symbol: &str, m: &TransformMatrix) -> Result<EtaQuotient> {
    Ok(conjugated_involution(&Catalog::global().eta(symbol)?, m)?.0)
}

fn eval(e: &GeneratorExpression, trunc: i64) -> Result<RatSeries> {
    e.evaluate(&ex("t", trunc)?, &ex("x", trunc)?, &ex("y", trunc)?)
}

/// `5 t (-1 + 5 P1 + 60 P2 - 3 P3)` with the given suffix.
fn witness_rhs(suffix: &str, trunc: i64) -> Result<RatSeries> {
    let trunc = trunc + 5;
    let p = |i: u32| ex(&format!("P{i}_{suffix}"), trunc);
    let inner = RatSeries::one(trunc)
        .neg()
        .add(&p(1)?.scale(&int(5)))
        .add(&p(2)?.scale(&int(60)))
        .sub(&p(3)?.scale(&int(3)));
    Ok(ex("t", trunc)?.mul(&inner).scale(&int(5)))
}

/// `sum_beta theta * L(W)` reduced to its terms off the given residues mod 4.
fn w_vanishing(betas: &[u32], alpha: u32, residues: &'static [u64], trunc: i64) -> Result<(RatSeries, RatSeries)> {
    let images = w_images(trunc)?;
    let mut total = RatSeries::zero(trunc);
    for &beta in betas {
        total = total.add(&w_image_series(beta, alpha, &images)?);
    }
    if total.is_zero() {
        return Err(Error::InvalidArgument("W-image vanished identically".into()));
    }
    let bad = residues.iter().fold(RatSeries::zero(total.truncation_order()), |acc, &r| acc.add(&total.progression_part(4, r)));
    debug_assert_eq!(bad.is_zero(), first_nonvanishing(&total, 4, residues).is_none());
    Ok((bad, RatSeries::zero(total.truncation_order())))
}

fn lehner(j: u32, m: u32, n: u32, trunc: i64) -> Result<(RatSeries, RatSeries)> {
    let w = TransformMatrix::W;
    let lhs = image("y", &w)?
        .pow(j as i64)
        .mul(&image("x", &w)?.pow(m as i64))
        .mul(&image("z", &w)?.pow(-(n as i64)))
        .expand::<BigRational>(trunc)?;
    let (x, y, z) = (ex("x", trunc)?, ex("y", trunc)?, ex("z", trunc)?);
    let one = RatSeries::one(trunc);
    let fy = one.add(&x.scale_i64(4)).mul(&one.add(&x.scale_i64(10)).add(&y.scale_i64(20)));
    let fx = one.add(&x.scale_i64(10)).add(&x.mul(&x).scale_i64(20)).add(&y.scale_i64(4));
    let fz = one.add(&x.scale_i64(5)).add(&y.scale_i64(5));
    let sign = if (m + n) % 2 == 0 { 1 } else { -1 };
    let e4 = n as i64 - 2 * j as i64 - m as i64;
    let four = if e4 >= 0 { rat(4i64.pow(e4 as u32), 1) } else { rat(1, 4i64.pow((-e4) as u32)) };
    let rhs = fy
        .pow(j as i64)?
        .mul(&fx.pow(m as i64)?)
        .mul(&fz.pow(n as i64)?)
        .mul(&z.pow(-(3 * j as i64 + 2 * m as i64 + n as i64))?)
        .scale(&(four * int(sign)));
    Ok((lhs, rhs))
}

fn build_registry() -> Vec<Identity> {
    use Tier::*;
    let mut v: Vec<Identity> = vec![
        Identity::new(
            "phi2-witness",
            Theorem,
            "U_5 of the phi2 quotient as a combination of level 60 quotients",
            Box::new(|t| Ok((ex("B1", 5 * t + 10)?.u_operator(5), witness_rhs("1", t)?))),
        ),
        Identity::new(
            "psi2-witness",
            Theorem,
            "U_5 of the psi2 quotient as a combination of level 60 quotients",
            Box::new(|t| Ok((ex("B0", 5 * t + 10)?.u_operator(5), witness_rhs("0", t)?))),
        ),
        Identity::new(
            "eo-L1",
            Theorem,
            "first 5-dissection of the even-odd crank difference",
            Box::new(|t| {
                let cof: RatSeries = eta_product(&[(5, 2), (10, -3)], t);
                Ok((cof.mul(&dissection("eo_alpha", 5, 4, 0, t)?), ex("eo_L1", t)?))
            }),
        ),
        Identity::new(
            "crank-L1",
            Theorem,
            "first 5-dissection of the crank parity difference",
            Box::new(|t| {
                let cof: RatSeries = eta_product(&[(10, 2), (5, -3)], t);
                Ok((cof.mul(&dissection("crank_beta", 5, 4, 1, t)?), ex("crank_L1", t)?))
            }),
        ),
        Identity::new(
            "crank-involution",
            Theorem,
            "the even-odd closed form maps to the crank closed form under V10",
            Box::new(|t| Ok((image("eo_L1", &TransformMatrix::V10)?.expand(t)?, ex("crank_L1", t)?))),
        ),
        Identity::new(
            "t-relation",
            Theorem,
            "t (1 + 5x) = x (1 + 4x)^2",
            Box::new(|t| {
                let (tt, x) = (ex("t", t)?, ex("x", t)?);
                let one = RatSeries::one(t);
                let f = one.add(&x.scale_i64(4));
                Ok((tt.mul(&one.add(&x.scale_i64(5))), x.mul(&f).mul(&f)))
            }),
        ),
        Identity::new(
            "z-definition",
            Theorem,
            "z = 1 + 5x",
            Box::new(|t| Ok((ex("z", t)?, RatSeries::one(t).add(&ex("x", t)?.scale_i64(5))))),
        ),
        Identity::new(
            "z-inverse",
            Theorem,
            "(1 - 125t + 120x + 400x^2)(1 + 5x) = 1",
            Box::new(|t| Ok((ex("zinv", t)?.mul(&ex("z", t)?), RatSeries::one(t)))),
        ),
        Identity::new(
            "theta-quotient",
            Theorem,
            "eta(2)^5/(eta(1)^2 eta(4)^2) = sum q^(n^2)",
            Box::new(|t| Ok((ex("phi", t)?, theta_series(t)))),
        ),
        Identity::new(
            "pentagonal",
            Theorem,
            "(q;q)_inf = sum (-1)^k q^(k(3k-1)/2)",
            Box::new(|t| {
                let lhs: RatSeries = eta_product(&[(1, 1)], t);
                let rhs = RatSeries::from_fn(0, t, |n| {
                    let mut c = 0i64;
                    for k in -n - 1..=n + 1 {
                        if k * (3 * k - 1) / 2 == n {
                            c += if k % 2 == 0 { 1 } else { -1 };
                        }
                    }
                    int(c)
                });
                Ok((lhs, rhs))
            }),
        ),
        Identity::new(
            "x-under-W",
            Theorem,
            "x(W tau) = -1/4 eta(2)eta(10)^3/(eta(4)^3 eta(20))",
            Box::new(|t| {
                let rhs: EtaQuotient = "-1/4 * eta(2)eta(10)^3 / (eta(4)^3 eta(20))".parse()?;
                Ok((image("x", &TransformMatrix::W)?.expand(t)?, rhs.expand(t)?))
            }),
        ),
        Identity::new(
            "y-gamma",
            Theorem,
            "y under (27,7;50,13) equals -1/4 (1 + 6x + 4y)",
            Box::new(|t| Ok((conj_image("y", &TransformMatrix::W)?.expand(t)?, eval(&expr("-1/4 - 3/2 x - y"), t)?))),
        ),
        Identity::new(
            "A-conjugation",
            Theorem,
            "A1 under (27,7;50,13) equals A0",
            Box::new(|t| Ok((conj_image("A1", &TransformMatrix::W)?.expand(t)?, ex("A0", t)?))),
        ),
        Identity::new(
            "B-conjugation",
            Theorem,
            "B1 under (77,58;150,113) equals B0",
            Box::new(|t| Ok((conj_image("B1", &TransformMatrix::W60)?.expand(t)?, ex("B0", t)?))),
        ),
        Identity::new(
            "xi-involution",
            Theorem,
            "xi(V18 tau) = zeta",
            Box::new(|t| Ok((image("xi", &TransformMatrix::V18)?.expand(t)?, ex("zeta", t)?))),
        ),
        Identity::new(
            "gamma-hat-involution",
            Theorem,
            "gamma_hat(V18 tau) = delta_hat",
            Box::new(|t| Ok((image("gamma_hat", &TransformMatrix::V18)?.expand(t)?, ex("delta_hat", t)?))),
        ),
        Identity::new(
            "L11-representation",
            Theorem,
            "L_1 = -5t + 25 p for beta = 1",
            Box::new(|t| Ok((ex("A1", 5 * t + 10)?.u_operator(5), eval(&expr("-5t").add(&Catalog::global().expression("p1_1")?.scale(&int(25))), t)?))),
        ),
        Identity::new(
            "L01-representation",
            Theorem,
            "L_1 = -5t + 25 p for beta = 0",
            Box::new(|t| Ok((ex("A0", 5 * t + 25)?.u_operator(5), eval(&expr("-5t").add(&Catalog::global().expression("p0_1")?.scale(&int(25))), t)?))),
        ),
        Identity::new(
            "reflexive",
            Theorem,
            "t = t",
            Box::new(|t| Ok((ex("t", t)?, ex("t", t)?))),
        ),
    ];
    for i in 1..=3 {
        v.push(Identity::new(
            format!("P-conjugation(i={i})"),
            Theorem,
            format!("P{i}_1 under (77,58;150,113) equals P{i}_0"),
            Box::new(move |t| Ok((conj_image(&format!("P{i}_1"), &TransformMatrix::W60)?.expand(t)?, ex(&format!("P{i}_0"), t)?))),
        ));
    }
    for j in 0..=1 {
        for m in 0..=2 {
            for n in 0..=2 {
                v.push(Identity::new(
                    format!("lehner-xyz(j={j},m={m},n={n})"),
                    Theorem,
                    format!("y^{j} x^{m} z^-{n} composed with W"),
                    Box::new(move |t| lehner(j, m, n, t)),
                ));
            }
        }
    }
    for alpha in 1..=2 {
        for beta in 0..=1 {
            v.push(Identity::new(
                format!("w-image-vanishing(beta={beta},alpha={alpha})"),
                Theorem,
                "theta factor times L_alpha(W) has no terms q^n with n = 2, 3 (mod 4)",
                Box::new(move |t| w_vanishing(&[beta], alpha, &[2, 3], t)),
            ));
        }
        v.push(Identity::new(
            format!("w-image-sum(alpha={alpha})"),
            Conjecture,
            "the sum over beta of theta factor times L_alpha(W) is a series in q^4",
            Box::new(move |t| w_vanishing(&[0, 1], alpha, &[1, 2, 3], t)),
        ));
        v.push(Identity::new(
            format!("chern-tang-involution(alpha={alpha})"),
            Theorem,
            "Psi_alpha is Phi_alpha written in xi with xi replaced by zeta",
            Box::new(move |t| {
                let ct = chern_tang_sequences(alpha, t, i64::MAX)?;
                let rep = xi_polynomial(ct.phi(alpha), 16)?;
                if !rep.residual_zero {
                    return Err(Error::BasisDeficient);
                }
                let psi = ct.psi(alpha).to_rational();
                Ok((evaluate_at_zeta(&rep.coefficients, psi.truncation_order())?, psi))
            }),
        ));
    }
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

pub fn identities() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn identity(id: &str) -> Result<&'static Identity> {
    identities().iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify_identity(id: &str, trunc: i64) -> Result<IdentityReport> {
    Ok(identity(id)?.verify(trunc))
}

/// Every registered identity, checked in parallel; reports are ordered by id.
pub fn verify_all(trunc: i64) -> Vec<IdentityReport> {
    identities().par_iter().map(|i| i.verify(trunc)).collect()
}
