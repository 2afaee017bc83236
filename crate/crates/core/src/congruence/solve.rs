//! Exact linear representations of a series in a finite basis.
//!
//! Small systems are solved exactly by fraction-free elimination. Larger ones
//! are solved modulo a sequence of 61-bit primes, combined by CRT and
//! rational reconstruction. Either way the candidate is accepted only after
//! an exact check against every known coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::generators::{Catalog, GeneratorExpression, Monomial};
use crate::series::QSeries;
use crate::{IntSeries, RatSeries};

/// Largest basis solved by exact rational elimination.
pub const EXACT_SOLVE_LIMIT: usize = 40;
/// Extra coefficients beyond the basis size that a search requires.
pub const SAFETY_MARGIN: usize = 50;
const MAX_PRIMES: usize = 400;

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationResult {
    pub labels: Vec<String>,
    pub coefficients: Vec<BigRational>,
    /// The combination reproduces the target on every known coefficient.
    pub residual_zero: bool,
    /// First exponent where the best candidate (or any candidate, for an
    /// inconsistent system) fails.
    pub first_mismatch: Option<i64>,
    /// Coefficients below this exponent were compared.
    pub verified_to: i64,
}

impl RepresentationResult {
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Drops trailing basis elements whose coefficient is zero.
    pub fn trimmed(mut self) -> Self {
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
            self.labels.pop();
        }
        self
    }
}

fn window(target: &RatSeries, basis: &[RatSeries]) -> (i64, i64) {
    let all = || std::iter::once(target).chain(basis);
    let lo = all().map(QSeries::leading_exponent).min().expect("target present");
    let hi = all().map(QSeries::truncation_order).min().expect("target present");
    (lo, hi.max(lo))
}

fn verify(target: &RatSeries, basis: &[RatSeries], coefficients: &[BigRational]) -> Option<i64> {
    let (_, hi) = window(target, basis);
    let mut acc = RatSeries::zero(hi);
    for (b, c) in basis.iter().zip(coefficients) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc.first_mismatch(&target.truncate(hi)).map(|m| m.exponent)
}

/// Solves `target = sum c_i basis_i` on the common window of known
/// coefficients. Errors with `BasisDeficient` when the basis is not
/// independent on that window.
pub fn solve_representation(target: &RatSeries, basis: &[RatSeries], labels: &[String]) -> Result<RepresentationResult> {
    assert_eq!(basis.len(), labels.len(), "one label per basis element");
    let (_, hi) = window(target, basis);
    let coefficients = if basis.len() <= EXACT_SOLVE_LIMIT {
        solve_exact(target, basis)?
    } else {
        match solve_modular(target, basis)? {
            Modular::Solved(c) => c,
            Modular::Inconsistent(at) => {
                return Ok(RepresentationResult {
                    labels: labels.to_vec(),
                    coefficients: Vec::new(),
                    residual_zero: false,
                    first_mismatch: Some(at),
                    verified_to: hi,
                })
            }
        }
    };
    let first_mismatch = verify(target, basis, &coefficients);
    Ok(RepresentationResult {
        labels: labels.to_vec(),
        coefficients,
        residual_zero: first_mismatch.is_none(),
        first_mismatch,
        verified_to: hi,
    })
}

/// Exact solve on the first independent rows. The rows are chosen by
/// elimination mod a large prime (independence mod `p` implies independence
/// over the rationals) and the square system is solved by fraction-free
/// elimination.
fn solve_exact(target: &RatSeries, basis: &[RatSeries]) -> Result<Vec<BigRational>> {
    let (lo, hi) = window(target, basis);
    let m = basis.len();
    let rows: Vec<Vec<BigRational>> = (lo..hi)
        .map(|n| basis.iter().chain(std::iter::once(target)).map(|s| s.coeff_or_zero(n)).collect())
        .collect();
    for p in primes().take(3) {
        let Some(reduced) = rows.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect::<Option<Vec<u64>>>()).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let (picked, _) = echelon_rows(&reduced, m, p);
        if picked.len() == m {
            let square = picked.iter().map(|&i| rows[i].clone()).collect();
            return Ok(bareiss_solve(square).expect("nonsingular mod p, so nonsingular"));
        }
    }
    Err(Error::BasisDeficient)
}

/// Solves the square system `[A | b]` by Bareiss elimination on the
/// denominator-cleared rows; `None` when singular.
fn bareiss_solve(rows: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let d = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&d / c.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..m {
        let piv = (k..m).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, piv);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..=m {
                row[j] = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); m];
    for i in (0..m).rev() {
        let mut s = BigRational::from_integer(a[i][m].clone());
        for j in i + 1..m {
            s -= &x[j] * BigRational::from_integer(a[i][j].clone());
        }
        x[i] = s / BigRational::from_integer(a[i][i].clone());
    }
    Some(x)
}

enum Modular {
    Solved(Vec<BigRational>),
    /// Exponent at which the system first becomes inconsistent.
    Inconsistent(i64),
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 60)..(1u64 << 61)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn reduce(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().expect("reduced");
    let d = x.denom().mod_floor(&pb).to_u64().expect("reduced");
    (d != 0).then(|| mul_mod(n, pow_mod(d, p - 2, p), p))
}

/// Row-reduces `rows` (each `m` coefficients then the right-hand side) mod
/// `p`. Returns the indices of the first `m` independent rows, or the index
/// of the first row that makes the system inconsistent.
/// Indices of the first `m` rows independent in the first `m` columns mod
/// `p`, and the first row (if any) that makes the augmented system
/// inconsistent mod `p`.
fn echelon_rows(rows: &[Vec<u64>], m: usize, p: u64) -> (Vec<usize>, Option<usize>) {
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    let mut inconsistent = None;
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (col, e) in &echelon {
            if v[*col] != 0 {
                let f = v[*col];
                for (a, b) in v.iter_mut().zip(e) {
                    *a = (*a + p - mul_mod(f, *b, p)) % p;
                }
            }
        }
        match v[..m].iter().position(|&c| c != 0) {
            Some(col) => {
                let inv = pow_mod(v[col], p - 2, p);
                for a in v.iter_mut() {
                    *a = mul_mod(*a, inv, p);
                }
                echelon.push((col, v));
                picked.push(idx);
            }
            None if v[m] != 0 => {
                inconsistent.get_or_insert(idx);
            }
            None => {}
        }
    }
    picked.truncate(m);
    (picked, inconsistent)
}

fn select_rows(rows: &[Vec<u64>], m: usize, p: u64) -> std::result::Result<Vec<usize>, Option<usize>> {
    match echelon_rows(rows, m, p) {
        (_, Some(idx)) => Err(Some(idx)),
        (picked, None) if picked.len() < m => Err(None),
        (picked, None) => Ok(picked),
    }
}

/// Solves a square system mod `p`; `None` when singular mod `p`.
fn solve_square(mut a: Vec<Vec<u64>>, p: u64) -> Option<Vec<u64>> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m).find(|&i| a[i][col] != 0)?;
        a.swap(col, piv);
        let inv = pow_mod(a[col][col], p - 2, p);
        for v in a[col].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pr = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && row[col] != 0 {
                let f = row[col];
                for (v, pv) in row.iter_mut().zip(&pr) {
                    *v = (*v + p - mul_mod(f, *pv, p)) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[m]).collect())
}

/// The fraction `r / s` with `|r|, |s| <= sqrt(M / 2)` congruent to `a`.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn solve_modular(target: &RatSeries, basis: &[RatSeries]) -> Result<Modular> {
    let (lo, hi) = window(target, basis);
    let m = basis.len();
    let exact: Vec<Vec<BigRational>> = (lo..hi)
        .map(|n| basis.iter().chain(std::iter::once(target)).map(|s| s.coeff_or_zero(n)).collect())
        .collect();
    let reduce_rows = |idx: &mut dyn Iterator<Item = usize>, p: u64| -> Option<Vec<Vec<u64>>> {
        idx.map(|i| exact[i].iter().map(|x| reduce(x, p)).collect::<Option<Vec<u64>>>()).collect()
    };
    let mut primes = primes();
    let (pivots, mut pr) = loop {
        let p = primes.next().expect("enough primes");
        let Some(rows) = reduce_rows(&mut (0..exact.len()), p) else { continue };
        match select_rows(&rows, m, p) {
            Ok(pivots) => break (pivots, p),
            Err(Some(idx)) => return Ok(Modular::Inconsistent(lo + idx as i64)),
            Err(None) => return Err(Error::BasisDeficient),
        }
    };
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); m];
    let mut previous: Option<Vec<BigRational>> = None;
    for _ in 0..MAX_PRIMES {
        if let Some(sol) = reduce_rows(&mut pivots.iter().copied(), pr).and_then(|rows| solve_square(rows, pr)) {
            let pb = BigInt::from(pr);
            let inv = BigInt::from(pow_mod((&modulus % &pb).to_u64().expect("reduced"), pr - 2, pr));
            for (r, s) in residues.iter_mut().zip(&sol) {
                // r + modulus * ((s - r) / modulus mod p)
                let k = ((BigInt::from(*s) - &*r).mod_floor(&pb) * &inv).mod_floor(&pb);
                *r += &modulus * k;
            }
            modulus *= &pb;
            let candidate: Option<Vec<BigRational>> = residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
            if let Some(c) = candidate {
                if previous.as_ref() == Some(&c) && verify(target, basis, &c).is_none() {
                    return Ok(Modular::Solved(c));
                }
                previous = Some(c);
            }
        }
        pr = primes.next().expect("enough primes");
    }
    Err(Error::InvalidArgument(format!("modular solve did not converge after {MAX_PRIMES} primes")))
}

/// Representation `target * (1 + 5x)^n = P(x) + y Q(x)` with `deg P, Q <=
/// degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedRepresentation {
    pub pole_order: u32,
    pub numerator: GeneratorExpression,
    pub result: RepresentationResult,
}

/// `target = N / (1+5x)^pole_order` with `N` in the span of `x^i` and
/// `y x^i`, `i <= degree`.
pub fn localized_representation(target: &RatSeries, pole_order: u32, degree: u32) -> Result<LocalizedRepresentation> {
    localized(target, pole_order, degree, true)
}

/// As [`localized_representation`] with `N` a polynomial in `x` alone.
pub fn y_free_representation(target: &RatSeries, pole_order: u32, degree: u32) -> Result<LocalizedRepresentation> {
    localized(target, pole_order, degree, false)
}

fn localized(target: &RatSeries, pole_order: u32, degree: u32, with_y: bool) -> Result<LocalizedRepresentation> {
    let trunc = target.truncation_order();
    let cat = Catalog::global();
    let x: RatSeries = cat.expand("x", trunc)?;
    let y: RatSeries = cat.expand("y", trunc)?;
    let z: RatSeries = cat.expand("z", trunc)?;
    let scaled = target.mul(&z.pow(pole_order as i64)?);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut monomials = Vec::new();
    let mut xp = RatSeries::one(trunc);
    for i in 0..=degree {
        let mut parts = vec![(0, xp.clone())];
        if with_y {
            parts.push((1, xp.mul(&y)));
        }
        for (yd, s) in parts {
            let m = Monomial::new(0, i, yd);
            labels.push(if m == Monomial::ONE { "1".to_string() } else { m.to_string() });
            monomials.push(m);
            basis.push(s);
        }
        xp = xp.mul(&x);
    }
    let result = solve_representation(&scaled, &basis, &labels)?;
    let numerator = GeneratorExpression::from_terms(result.coefficients.iter().cloned().zip(monomials));
    Ok(LocalizedRepresentation { pole_order, numerator, result })
}

/// `[1, p, t, t p, t^2, t^2 p, ...]` up to `t^degree`, with `p` the module
/// generator `p^{(beta)}_a`.
pub fn t_module_basis(beta: u32, a: u32, degree: u32, trunc: i64) -> Result<(Vec<String>, Vec<RatSeries>)> {
    let cat = Catalog::global();
    let t: IntSeries = cat.expand("t", trunc)?;
    let p: IntSeries = cat.expand(&format!("p{beta}_{a}"), trunc)?;
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    let mut tp = IntSeries::one(trunc);
    for i in 0..=degree {
        let ti = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        labels.push(if ti.is_empty() { "1".to_string() } else { ti.clone() });
        labels.push(if ti.is_empty() { "p".to_string() } else { format!("{ti} p") });
        basis.push(tp.to_rational());
        basis.push(tp.mul(&p).to_rational());
        tp = tp.mul(&t);
    }
    Ok((labels, basis))
}

/// Represents `target` in `Z[t] + p^{(beta)}_a Z[t]`, searching degrees
/// 1, 2, 4, ... up to `max_degree`. The result is trimmed of trailing zeros.
pub fn represent_in_t_module(target: &IntSeries, beta: u32, a: u32, max_degree: u32) -> Result<RepresentationResult> {
    let target = target.to_rational();
    let available = (target.truncation_order() - target.leading_exponent().min(0)).max(0) as usize;
    let mut degree = 1;
    loop {
        let degree_now = degree.min(max_degree);
        if 2 * (degree_now as usize + 1) + SAFETY_MARGIN > available {
            return Err(Error::BasisDeficient);
        }
        let (labels, basis) = t_module_basis(beta, a, degree_now, target.truncation_order())?;
        let r = solve_representation(&target, &basis, &labels)?;
        if r.residual_zero {
            return Ok(r.trimmed());
        }
        if degree_now == max_degree {
            return Ok(r);
        }
        degree *= 2;
    }
}
