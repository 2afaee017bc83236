//! Floating-point check of the transformation engine: evaluates both sides
//! of `f(M tau) = image(tau)` from the eta product at sample points.

use frobcong::eta::{conjugated_involution, transform};
use frobcong::generators::Catalog;
use frobcong::{EtaQuotient, TransformMatrix};
use num_complex::Complex64;
use num_traits::ToPrimitive;

const TERMS: usize = 4000;

/// `log eta(tau) = pi i tau / 12 + sum log(1 - q^n)`.
fn log_eta(tau: Complex64) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let q = (two_pi_i * tau).exp();
    let mut acc = two_pi_i * tau / 24.0;
    let mut qn = q;
    for _ in 0..TERMS {
        acc += (Complex64::new(1.0, 0.0) - qn).ln();
        qn *= q;
        if qn.norm() < 1e-18 {
            break;
        }
    }
    acc
}

fn value(eq: &EtaQuotient, tau: Complex64) -> Complex64 {
    let log: Complex64 = eq.exponents().iter().map(|(&d, &r)| log_eta(tau * d as f64) * r as f64).sum();
    log.exp() * eq.scalar().to_f64().unwrap()
}

fn mobius(m: &TransformMatrix, tau: Complex64) -> Complex64 {
    let [a, b, c, d] = [m.a, m.b, m.c, m.d].map(|v| v as f64);
    (tau * a + b) / (tau * c + d)
}

/// Points whose image under `m` still lies comfortably in the upper half plane.
fn samples(m: &TransformMatrix) -> Vec<Complex64> {
    let [_, _, c, d] = [m.a, m.b, m.c, m.d].map(|v| v as f64);
    let centre = -d / c;
    [(0.0, 1.0), (0.001, 1.3), (-0.002, 0.8), (0.003, 1.7)]
        .iter()
        .map(|&(dx, s)| Complex64::new(centre + dx, s / c.abs()))
        .collect()
}

fn check(f: &EtaQuotient, m: &TransformMatrix, image: &EtaQuotient) {
    for tau in samples(m) {
        let lhs = value(f, mobius(m, tau));
        let rhs = value(image, tau);
        let err = (lhs - rhs).norm() / rhs.norm().max(1e-300);
        assert!(err < 1e-7, "{f} at {m}: tau = {tau}, lhs = {lhs}, rhs = {rhs}");
    }
}

#[test]
fn transform_agrees_numerically() {
    let cat = Catalog::global();
    let cases = [
        ("x", TransformMatrix::W),
        ("y", TransformMatrix::W),
        ("t", TransformMatrix::W),
        ("z", TransformMatrix::W),
        ("xi", TransformMatrix::V18),
        ("gamma_hat", TransformMatrix::V18),
        ("eo_L1", TransformMatrix::V10),
        ("t", TransformMatrix::new(2, 1, 5, 3).unwrap()),
    ];
    for (symbol, m) in cases {
        let f = cat.eta(symbol).unwrap();
        let (image, _) = transform(&f, &m).unwrap();
        check(&f, &m, &image);
    }
}

#[test]
fn conjugated_involution_agrees_numerically() {
    let cat = Catalog::global();
    for (symbol, via, gamma) in [
        ("y", TransformMatrix::W, TransformMatrix::GAMMA10),
        ("A1", TransformMatrix::W, TransformMatrix::GAMMA10),
        ("B1", TransformMatrix::W60, TransformMatrix::GAMMA5),
        ("P2_1", TransformMatrix::W60, TransformMatrix::GAMMA5),
    ] {
        let f = cat.eta(symbol).unwrap();
        let (image, _) = conjugated_involution(&f, &via).unwrap();
        check(&f, &gamma, &image);
    }
}
