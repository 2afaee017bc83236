//! Exhaustive enumeration of 2-colored generalized Frobenius arrays.
//!
//! Entries are `(value, color)` pairs, each row strictly decreasing in the
//! lexicographic order on that pair. For `beta = 1` the rows have equal
//! length `r = s >= 1`. For `beta = 0` the bottom row is one longer; the
//! color swap then acts freely, and one representative per orbit is counted
//! (the one with `D_0 > D_1`, where `D_c` is the number of color-`c` entries
//! on top minus those on the bottom).

use std::collections::HashMap;

use crate::error::{Error, Result};

pub const ORACLE_MAX_N: u64 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPart {
    pub value: u64,
    pub color: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusArray {
    pub k: u32,
    pub beta: u32,
    pub top: Vec<ColoredPart>,
    pub bottom: Vec<ColoredPart>,
}

fn strictly_decreasing(row: &[ColoredPart]) -> bool {
    row.windows(2).all(|w| w[0] > w[1])
}

impl FrobeniusArray {
    /// `r + sum a_i + sum b_j`.
    pub fn weight(&self) -> u64 {
        self.top.len() as u64 + self.top.iter().chain(&self.bottom).map(|p| p.value).sum::<u64>()
    }

    /// Color imbalance `D_c`.
    pub fn imbalance(&self, color: u32) -> i64 {
        let count = |row: &[ColoredPart]| row.iter().filter(|p| p.color == color).count() as i64;
        count(&self.top) - count(&self.bottom)
    }

    pub fn is_valid(&self) -> bool {
        let (r, s) = (self.top.len() as i64, self.bottom.len() as i64);
        let colors_ok = self.top.iter().chain(&self.bottom).all(|p| p.color < self.k);
        2 * (r - s) == 2 * self.beta as i64 - self.k as i64
            && r + s > 0
            && colors_ok
            && strictly_decreasing(&self.top)
            && strictly_decreasing(&self.bottom)
    }
}

/// Every strictly decreasing row with values summing to at most `max`,
/// grouped by `(length, value sum)`.
fn rows(k: u32, max: u64) -> HashMap<(usize, u64), Vec<Vec<ColoredPart>>> {
    let parts: Vec<ColoredPart> =
        (0..=max).rev().flat_map(|value| (0..k).rev().map(move |color| ColoredPart { value, color })).collect();
    let mut out: HashMap<(usize, u64), Vec<Vec<ColoredPart>>> = HashMap::new();
    fn go(
        parts: &[ColoredPart],
        from: usize,
        cur: &mut Vec<ColoredPart>,
        sum: u64,
        max: u64,
        out: &mut HashMap<(usize, u64), Vec<Vec<ColoredPart>>>,
    ) {
        out.entry((cur.len(), sum)).or_default().push(cur.clone());
        for i in from..parts.len() {
            let p = parts[i];
            // the row length also costs weight on top; `max` bounds both rows
            if sum + p.value + cur.len() as u64 + 1 > max + 1 {
                continue;
            }
            cur.push(p);
            go(parts, i + 1, cur, sum + p.value, max, out);
            cur.pop();
        }
    }
    go(&parts, 0, &mut Vec::new(), 0, max, &mut out);
    out
}

/// All counted arrays of weight `n` (orbit representatives for `beta = 0`).
pub fn enumerate_arrays(k: u32, beta: u32, n: u64) -> Result<Vec<FrobeniusArray>> {
    if k != 2 || beta > 1 {
        return Err(Error::InvalidArgument(format!("only k = 2, beta in {{0, 1}} is supported (got k = {k}, beta = {beta})")));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::OracleRangeExceeded { n, max: ORACLE_MAX_N });
    }
    let table = rows(k, n);
    let empty = Vec::new();
    let mut out = Vec::new();
    let mut keys: Vec<_> = table.keys().copied().collect();
    keys.sort();
    for (r, top_sum) in keys {
        let s = if beta == 1 { r } else { r + 1 };
        if r + s == 0 || top_sum + r as u64 > n {
            continue;
        }
        let bottoms = table.get(&(s, n - r as u64 - top_sum)).unwrap_or(&empty);
        for top in &table[&(r, top_sum)] {
            for bottom in bottoms {
                let a = FrobeniusArray { k, beta, top: top.clone(), bottom: bottom.clone() };
                if beta == 1 || a.imbalance(0) > a.imbalance(1) {
                    out.push(a);
                }
            }
        }
    }
    Ok(out)
}

/// Number of counted arrays of weight `n`. The empty array is never counted,
/// so for `beta = 1, n = 0` this is 0.
pub fn enumerate_frobenius(k: u32, beta: u32, n: u64) -> Result<u64> {
    Ok(enumerate_arrays(k, beta, n)?.len() as u64)
}

/// The count to compare with the generating function's coefficient of
/// `q^n`: for `beta = 1` that series counts the empty array at `n = 0`.
pub fn frobenius_series_count(k: u32, beta: u32, n: u64) -> Result<u64> {
    let c = enumerate_frobenius(k, beta, n)?;
    Ok(if beta == 1 && n == 0 { c + 1 } else { c })
}
