use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer matrix `(a, b; c, d)` with positive determinant, acting on the
/// upper half plane by `tau -> (a tau + b) / (c tau + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl TransformMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = TransformMatrix { a, b, c, d };
        let det = m.det();
        if det <= 0 {
            return Err(Error::NonPositiveDeterminant(det));
        }
        Ok(m)
    }

    pub const fn identity() -> Self {
        TransformMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// Atkin–Lehner type involution on the level-100 functions (`det 4`).
    pub const W: Self = TransformMatrix { a: 4, b: -1, c: 100, d: -24 };
    /// Level-10 involution used for the crank-parity functions.
    pub const V10: Self = TransformMatrix { a: 2, b: 1, c: 10, d: 6 };
    /// Level-18 involution used for the cubic partition pair.
    pub const V18: Self = TransformMatrix { a: 2, b: -1, c: 54, d: -26 };
    /// Determinant-4 involution on the level-300 functions.
    pub const W60: Self = TransformMatrix { a: 4, b: 1, c: 300, d: 76 };
    /// Element of `Gamma_0(10)` realized by conjugating `W` with `q -> -q`.
    pub const GAMMA10: Self = TransformMatrix { a: 27, b: 7, c: 50, d: 13 };
    /// Element of `Gamma_0(5)` realized by conjugating `W60` with `q -> -q`.
    pub const GAMMA5: Self = TransformMatrix { a: 77, b: 58, c: 150, d: 113 };

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        TransformMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        TransformMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn negate(&self) -> Self {
        TransformMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Same Moebius action with `c >= 0`, and `d > 0` when `c = 0`.
    pub fn normalized(&self) -> Self {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            self.negate()
        } else {
            *self
        }
    }

    pub fn content(&self) -> i64 {
        [self.a, self.b, self.c, self.d].iter().fold(0i64, |g, v| g.gcd(v))
    }

    /// Matrices referred to by name on the command line.
    pub fn named(name: &str) -> Option<Self> {
        Some(match name {
            "W" => Self::W,
            "V10" => Self::V10,
            "V18" => Self::V18,
            "W60" => Self::W60,
            "gamma10" => Self::GAMMA10,
            "gamma5" => Self::GAMMA5,
            "I" | "identity" => Self::identity(),
            _ => return None,
        })
    }
}

impl fmt::Display for TransformMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// `(delta a, delta b; c, d) = content * gamma * (e, f; 0, 1)` with
/// `gamma` in `SL(2, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub gamma: TransformMatrix,
    pub e: i64,
    pub f: i64,
    pub content: i64,
}

/// Writes `eta(delta M tau)` as `eta(gamma (e tau + f))`. Only the unit
/// lower-right case is supported.
pub fn decompose(delta: u64, m: &TransformMatrix) -> Result<Decomposition> {
    let dl = delta as i64;
    let n = TransformMatrix { a: dl * m.a, b: dl * m.b, c: m.c, d: m.d };
    let content = n.content();
    let (a, b, c, d) = (n.a / content, n.b / content, n.c / content, n.d / content);
    let e = a.gcd(&c);
    let det = a * d - b * c;
    if det <= 0 {
        return Err(Error::NonPositiveDeterminant(m.det()));
    }
    if det != e {
        return Err(Error::UnsupportedDecomposition { delta });
    }
    let (ga, gc) = (a / e, c / e);
    let (gb, gd) = if ga == 0 {
        (-gc, 0)
    } else {
        let modulus = ga.abs();
        // gb = -gc^{-1} mod |ga|, centered
        let inv = gc.extended_gcd(&modulus).x.rem_euclid(modulus);
        let mut gb = (-inv).rem_euclid(modulus);
        if 2 * gb > modulus {
            gb -= modulus;
        }
        let num = 1 + gb * gc;
        debug_assert_eq!(num % ga, 0);
        (gb, num / ga)
    };
    let gamma = TransformMatrix { a: ga, b: gb, c: gc, d: gd };
    debug_assert_eq!(gamma.det(), 1);
    let f = gd * b - gb * d;
    debug_assert_eq!(-gc * b + ga * d, 1);
    Ok(Decomposition { gamma, e, f, content })
}
