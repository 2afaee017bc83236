//! Infinite products truncated to a fixed order.
//!
//! Eta products are built from Euler's pentagonal series, which is sparse
//! with unit coefficients. Multiplying or dividing by it costs
//! `O(T * sqrt(T))` and needs only ring addition.

use crate::scalar::Coefficient;

use super::QSeries;

/// Nonzero terms `(exponent, sign)` of `(q^step; q^step)_inf` below `trunc`,
/// sorted by exponent.
pub fn pentagonal_terms(step: u64, trunc: i64) -> Vec<(usize, bool)> {
    let mut out = vec![(0usize, true)];
    if trunc <= 0 {
        return Vec::new();
    }
    let step = step as i64;
    let mut k: i64 = 1;
    loop {
        let e1 = step * k * (3 * k - 1) / 2;
        let e2 = step * k * (3 * k + 1) / 2;
        if e1 >= trunc {
            break;
        }
        let positive = k % 2 == 0;
        out.push((e1 as usize, positive));
        if e2 < trunc {
            out.push((e2 as usize, positive));
        }
        k += 1;
    }
    out
}

/// `c <- c * (q^step; q^step)_inf`, in place.
pub(crate) fn mul_pentagonal<C: Coefficient>(c: &mut [C], step: u64) {
    let terms = pentagonal_terms(step, c.len() as i64);
    for n in (0..c.len()).rev() {
        for &(e, positive) in terms.iter().skip(1) {
            if e > n {
                break;
            }
            let (lo, hi) = c.split_at_mut(n);
            if positive {
                hi[0] += &lo[n - e];
            } else {
                hi[0] -= &lo[n - e];
            }
        }
    }
}

/// `c <- c / (q^step; q^step)_inf`, in place.
pub(crate) fn div_pentagonal<C: Coefficient>(c: &mut [C], step: u64) {
    let terms = pentagonal_terms(step, c.len() as i64);
    for n in 0..c.len() {
        for &(e, positive) in terms.iter().skip(1) {
            if e > n {
                break;
            }
            let (lo, hi) = c.split_at_mut(n);
            if positive {
                hi[0] -= &lo[n - e];
            } else {
                hi[0] += &lo[n - e];
            }
        }
    }
}

/// Multiplies a coefficient vector (exponents `0..len`) by
/// `prod (q^d; q^d)_inf^{r_d}`.
pub fn mul_eta_product_in_place<C: Coefficient>(c: &mut [C], exponents: &[(u64, i64)]) {
    for &(d, r) in exponents {
        for _ in 0..r.unsigned_abs() {
            if r > 0 {
                mul_pentagonal(c, d);
            } else {
                div_pentagonal(c, d);
            }
        }
    }
}

/// `prod_d (q^d; q^d)_inf^{r_d}` known below `q^trunc`.
pub fn eta_product<C: Coefficient>(exponents: &[(u64, i64)], trunc: i64) -> QSeries<C> {
    let n = trunc.max(0) as usize;
    let mut c = vec![C::zero(); n];
    if n > 0 {
        c[0] = C::one();
    }
    mul_eta_product_in_place(&mut c, exponents);
    QSeries::from_coeffs(0, c)
}

/// `prod_d (q^d; q^d)_inf^{r_d}` reduced modulo `modulus`, exponents
/// `0..len`. Used for long congruence scans where only residues matter.
pub fn eta_product_mod(exponents: &[(u64, i64)], len: usize, modulus: u64) -> Vec<u64> {
    assert!((1..1 << 62).contains(&modulus), "modulus out of range");
    let mut c = vec![0u64; len];
    if len > 0 {
        c[0] = 1 % modulus;
    }
    let add = |a: u64, b: u64| (a + b) % modulus;
    let sub = |a: u64, b: u64| (a + modulus - b) % modulus;
    for &(d, r) in exponents {
        let terms = pentagonal_terms(d, len as i64);
        for _ in 0..r.unsigned_abs() {
            if r > 0 {
                for n in (0..len).rev() {
                    for &(e, positive) in terms.iter().skip(1).take_while(|(e, _)| *e <= n) {
                        c[n] = if positive { add(c[n], c[n - e]) } else { sub(c[n], c[n - e]) };
                    }
                }
            } else {
                for n in 0..len {
                    for &(e, positive) in terms.iter().skip(1).take_while(|(e, _)| *e <= n) {
                        c[n] = if positive { sub(c[n], c[n - e]) } else { add(c[n], c[n - e]) };
                    }
                }
            }
        }
    }
    c
}

/// `(q^a; q^b)_inf = prod_{m >= 0} (1 - q^{a + b m})` known below `q^trunc`.
pub fn pochhammer<C: Coefficient>(a: u64, b: u64, trunc: i64) -> QSeries<C> {
    assert!(a >= 1 && b >= 1, "pochhammer needs positive a, b");
    let n = trunc.max(0) as usize;
    let mut c = vec![C::zero(); n];
    if n > 0 {
        c[0] = C::one();
    }
    let mut k = a as usize;
    while k < n {
        for i in (k..n).rev() {
            let (lo, hi) = c.split_at_mut(i);
            hi[0] -= &lo[i - k];
        }
        k += b as usize;
    }
    QSeries::from_coeffs(0, c)
}
