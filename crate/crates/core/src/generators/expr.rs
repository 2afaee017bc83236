//! Polynomials in the level-20 functions `t`, `x`, `y` with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::series::QSeries;

/// `t^t x^x y^y`. Ordered by `y`, then `x`, then `t`, which is the order
/// polynomials are printed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub y: u32,
    pub x: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { y: 0, x: 0, t: 0 };

    pub fn new(t: u32, x: u32, y: u32) -> Self {
        Monomial { y, x, t }
    }

    fn mul(self, o: Self) -> Self {
        Monomial { y: self.y + o.y, x: self.x + o.x, t: self.t + o.t }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorExpression {
    terms: BTreeMap<Monomial, BigRational>,
}

impl GeneratorExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([(c, Monomial::ONE)])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn t() -> Self {
        Self::from_terms([(BigRational::one(), Monomial::new(1, 0, 0))])
    }

    pub fn x() -> Self {
        Self::from_terms([(BigRational::one(), Monomial::new(0, 1, 0))])
    }

    pub fn y() -> Self {
        Self::from_terms([(BigRational::one(), Monomial::new(0, 0, 1))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Monomial)>) -> Self {
        let mut e = Self::zero();
        for (c, m) in terms {
            e.add_term(m, c);
        }
        e
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.t).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (m, c) in &o.terms {
            e.add_term(*m, c.clone());
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (c * k, *m)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                e.add_term(ma.mul(*mb), ca * cb);
            }
        }
        e
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Normal form with `x`-degree at most 2, using
    /// `t (1 + 5x) = x (1 + 4x)^2`, i.e. `16 x^3 = t + 5 t x - x - 8 x^2`.
    pub fn reduce(&self) -> Self {
        let mut e = self.clone();
        loop {
            let Some((&m, _)) = e.terms.iter().rev().find(|(m, _)| m.x >= 3) else {
                return e;
            };
            let c = e.terms.remove(&m).expect("present");
            let base = Monomial { x: m.x - 3, ..m };
            let sixteenth = &c / BigRational::from_integer(BigInt::from(16));
            for (dt, dx, k) in [(1, 0, 1), (1, 1, 5), (0, 1, -1), (0, 2, -8)] {
                e.add_term(base.mul(Monomial::new(dt, dx, 0)), &sixteenth * BigRational::from_integer(BigInt::from(k)));
            }
        }
    }

    /// Formal substitution `y -> replacement`, reduced to normal form.
    pub fn substitute_y(&self, replacement: &GeneratorExpression) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let rest = Self::from_terms([(c.clone(), Monomial { y: 0, ..*m })]);
            out = out.add(&rest.mul(&replacement.pow(m.y)));
        }
        out.reduce()
    }

    /// Evaluates with the given series for `t`, `x`, `y`. The result is
    /// known to the minimum truncation the inputs support.
    pub fn evaluate<C: Coefficient>(&self, t: &QSeries<C>, x: &QSeries<C>, y: &QSeries<C>) -> Result<QSeries<C>> {
        let trunc = [t, x, y].iter().map(|s| s.truncation_order()).min().expect("three inputs");
        let powers = |base: &QSeries<C>, n: u32| -> Vec<QSeries<C>> {
            let mut v = vec![QSeries::one(trunc)];
            for i in 1..=n as usize {
                let next = v[i - 1].mul(base);
                v.push(next);
            }
            v
        };
        let tp = powers(t, self.t_degree());
        let xp = powers(x, self.x_degree());
        let yp = powers(y, self.y_degree());
        let mut acc = QSeries::zero(trunc);
        for (m, c) in &self.terms {
            let k = C::from_rational(c).ok_or_else(|| Error::InvalidArgument(format!("coefficient {c} not in coefficient ring")))?;
            let term = tp[m.t as usize].mul(&xp[m.x as usize]).mul(&yp[m.y as usize]);
            acc = acc.add(&term.scale(&k));
        }
        Ok(acc)
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational, mono: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if a.is_one() && !mono.is_empty() {
        write!(f, "{mono}")
    } else if a.is_integer() || mono.is_empty() {
        write!(f, "{a}{mono}")
    } else {
        write!(f, "{a} {mono}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in [("t", self.t), ("x", self.x), ("y", self.y)] {
            match e {
                0 => {}
                1 => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, c, &m.to_string(), i == 0)?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorExpression {
    type Err = Error;

    /// Accepts sums of terms like `-3/2 t^2 x y`, `64tx`, `500*t^2*y`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in `{s}`"));
        let b: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if b.is_empty() {
            return Err(err("empty expression"));
        }
        let mut e = Self::zero();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| b[start..*i].iter().collect::<String>().parse().expect("digits"))
        };
        while i < b.len() {
            let mut sign = BigRational::one();
            if b[i] == '+' || b[i] == '-' {
                if b[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected `+` or `-`"));
            }
            let mut coeff = match number(&mut i) {
                Some(n) => {
                    if i < b.len() && b[i] == '/' {
                        i += 1;
                        let d = number(&mut i).ok_or_else(|| err("expected denominator"))?;
                        if d.is_zero() {
                            return Err(err("zero denominator"));
                        }
                        BigRational::new(n, d)
                    } else {
                        BigRational::from_integer(n)
                    }
                }
                None => BigRational::one(),
            };
            coeff *= sign;
            let mut mono = Monomial::ONE;
            let mut any = false;
            while i < b.len() && matches!(b[i], 't' | 'x' | 'y' | '*') {
                let v = b[i];
                i += 1;
                if v == '*' {
                    continue;
                }
                let mut p = 1u32;
                if i < b.len() && b[i] == '^' {
                    i += 1;
                    let n = number(&mut i).ok_or_else(|| err("expected exponent"))?;
                    p = u32::try_from(n).map_err(|_| err("exponent too large"))?;
                }
                match v {
                    't' => mono.t += p,
                    'x' => mono.x += p,
                    _ => mono.y += p,
                }
                any = true;
            }
            if !any && i < b.len() && !matches!(b[i], '+' | '-') {
                return Err(err(&format!("unexpected `{}`", b[i])));
            }
            e.add_term(mono, coeff);
        }
        Ok(e)
    }
}
