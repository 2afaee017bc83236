//! Strategies shared by the property suite and the acceptance runner.
#![allow(dead_code)]

use frobcong::generators::Catalog;
use frobcong::scalar::rat;
use frobcong::{EtaQuotient, IntSeries, TransformMatrix};
use num_integer::Integer;
use proptest::prelude::*;

pub fn series() -> impl Strategy<Value = IntSeries> {
    (-3i64..4, prop::collection::vec(-40i64..41, 1..18)).prop_map(|(lead, c)| IntSeries::from_i64s(lead, &c))
}

/// Series with leading coefficient 1 at exponent 0, hence invertible.
pub fn unit_series() -> impl Strategy<Value = IntSeries> {
    prop::collection::vec(-20i64..21, 0..15).prop_map(|mut c| {
        c.insert(0, 1);
        IntSeries::from_i64s(0, &c)
    })
}

/// An element of `Gamma0(n)`: `c` a multiple of `n`, `d` coprime to `c`.
pub fn gamma0(n: i64) -> impl Strategy<Value = TransformMatrix> {
    (-6i64..7, -40i64..41).prop_filter_map("d coprime to c", move |(k, d)| {
        let c = n * k;
        let g = d.extended_gcd(&c);
        if g.gcd.abs() != 1 {
            return None;
        }
        // a d - b c = 1
        let (a, b) = (g.x * g.gcd, -g.y * g.gcd);
        TransformMatrix::new(a, b, c, d).ok()
    })
}

pub fn quotient() -> impl Strategy<Value = EtaQuotient> {
    let divisors = prop::sample::subsequence(vec![1u64, 2, 3, 4, 5, 6, 9, 10, 12, 18, 20, 25, 30, 50, 60], 1..5);
    (divisors, prop::collection::vec(-7i64..8, 5), -30i64..31, 1i64..9).prop_map(|(ds, es, num, den)| {
        EtaQuotient::from_exponents(ds.into_iter().zip(es)).with_scalar(rat(if num == 0 { 1 } else { num }, den))
    })
}

/// A weight-0 catalog quotient with an element of `Gamma0` of its level.
pub fn symbol_and_gamma() -> impl Strategy<Value = (EtaQuotient, TransformMatrix)> {
    prop::sample::select(vec!["t", "x", "y", "z", "A1", "B1", "eo_L1", "xi", "P1_1"]).prop_flat_map(|s| {
        let f = Catalog::global().eta(s).unwrap();
        let level = f.level() as i64;
        (Just(f), gamma0(level))
    })
}

pub fn same(a: &IntSeries, b: &IntSeries) -> bool {
    a.agrees_with(b) && a.truncation_order() == b.truncation_order()
}
