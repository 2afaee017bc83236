//! Plain-text series snapshots: a header `symbol leading_exponent truncation`
//! followed by one integer coefficient per line, from the leading exponent up
//! to the truncation.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct Golden {
    pub symbol: String,
    pub series: QSeries<BigInt>,
}

pub fn format_golden(symbol: &str, s: &QSeries<BigInt>) -> String {
    let lead = s.leading_exponent();
    let mut out = format!("{symbol} {lead} {}\n", s.truncation_order());
    for n in lead..s.truncation_order() {
        out.push_str(&s.coefficient(n).expect("below truncation").to_string());
        out.push('\n');
    }
    out
}

pub fn parse_golden(text: &str) -> Result<Golden> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty golden file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [symbol, lead, trunc] = fields[..] else {
        return Err(Error::Parse(format!("bad golden header `{header}`")));
    };
    let num = |s: &str| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{s}` in golden header")));
    let (lead, trunc) = (num(lead)?, num(trunc)?);
    let coeffs = lines
        .map(|l| l.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient `{l}`"))))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() as i64 != trunc - lead {
        return Err(Error::Parse(format!("expected {} coefficients, found {}", trunc - lead, coeffs.len())));
    }
    Ok(Golden { symbol: symbol.to_string(), series: QSeries::from_coeffs(lead, coeffs) })
}
