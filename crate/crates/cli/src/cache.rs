//! Optional on-disk memo of integer expansions in the golden text format.

use std::fs;
use std::path::Path;

use frobcong::generators::golden::{format_golden, parse_golden};
use frobcong::generators::Catalog;
use frobcong::{IntSeries, Result};

/// `symbol` expanded below `q^trunc`, read from or written to `dir` when
/// given. Unreadable cache entries are recomputed and overwritten.
pub fn expand(dir: Option<&Path>, symbol: &str, trunc: i64) -> Result<IntSeries> {
    let canonical = Catalog::global().get(symbol)?.symbol.clone();
    let Some(dir) = dir else {
        return Catalog::global().expand(&canonical, trunc);
    };
    let path = dir.join(format!("{canonical}_{trunc}.txt"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(g) = parse_golden(&text) {
            if g.symbol == canonical && g.series.truncation_order() == trunc {
                return Ok(g.series);
            }
        }
    }
    let s: IntSeries = Catalog::global().expand(&canonical, trunc)?;
    if fs::create_dir_all(dir).is_ok() {
        // a failed write only loses the memo
        let _ = fs::write(&path, format_golden(&canonical, &s));
    }
    Ok(s)
}
