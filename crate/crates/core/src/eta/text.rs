//! Text form `c * eta(d1)^e1 eta(d2) / (eta(d3)^e3 eta(d4))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

use super::EtaQuotient;

fn factor(d: u64, e: i64) -> String {
    if e == 1 {
        format!("eta({d})")
    } else {
        format!("eta({d})^{e}")
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: String = self.exponents.iter().filter(|(_, &r)| r > 0).map(|(&d, &r)| factor(d, r)).collect();
        let den: Vec<String> = self.exponents.iter().filter(|(_, &r)| r < 0).map(|(&d, &r)| factor(d, -r)).collect();
        match (num.is_empty(), self.scalar.is_one()) {
            (true, _) => write!(f, "{}", self.scalar)?,
            (false, true) => write!(f, "{num}")?,
            (false, false) => write!(f, "{} * {num}", self.scalar)?,
        }
        if !den.is_empty() {
            write!(f, " / ({})", den.join(" "))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn at_eta(&mut self) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(b"eta(")
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected integer"))
    }

    fn big_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected integer"))
    }

    /// `n` or `n/d`; a `/` followed by `(` or `eta` ends the scalar.
    fn scalar(&mut self) -> Result<BigRational> {
        let n = self.big_integer()?;
        let save = self.pos;
        if self.eat(b'/') {
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let d = self.big_integer()?;
                if d == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
                return Ok(BigRational::new(n, d));
            }
            self.pos = save;
        }
        Ok(BigRational::from_integer(n))
    }

    fn factor(&mut self) -> Result<(u64, i64)> {
        self.skip_ws();
        self.pos += 4; // "eta("
        let d = self.integer()?;
        if d < 1 {
            return Err(self.error("eta argument must be positive"));
        }
        self.expect(b')')?;
        let e = if self.eat(b'^') { self.integer()? } else { 1 };
        Ok((d as u64, e))
    }

    fn factors(&mut self) -> Result<Vec<(u64, i64)>> {
        let mut out = Vec::new();
        loop {
            if self.at_eta() {
                out.push(self.factor()?);
            } else if self.peek() == Some(b'*') && {
                let save = self.pos;
                self.pos += 1;
                let ok = self.at_eta();
                self.pos = save;
                ok
            } {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let mut scalar = BigRational::one();
        if !p.at_eta() {
            scalar = p.scalar()?;
            p.eat(b'*');
        }
        let mut terms = p.factors()?;
        if p.eat(b'/') {
            let den = if p.eat(b'(') {
                let f = p.factors()?;
                p.expect(b')')?;
                f
            } else {
                p.factors()?
            };
            if den.is_empty() {
                return Err(p.error("empty denominator"));
            }
            terms.extend(den.into_iter().map(|(d, e)| (d, -e)));
        }
        if p.peek().is_some() {
            return Err(p.error("trailing input"));
        }
        Ok(EtaQuotient::from_exponents(terms).with_scalar(scalar))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn prints_x_image() {
        let q = EtaQuotient::from_exponents([(2, 1), (10, 3), (4, -3), (20, -1)]).with_scalar(rat(-1, 4));
        assert_eq!(q.to_string(), "-1/4 * eta(2)eta(10)^3 / (eta(4)^3 eta(20))");
    }

    #[test]
    fn parses_variants() {
        let want = EtaQuotient::from_exponents([(2, 1), (10, 3), (4, -3), (20, -1)]).with_scalar(rat(-1, 4));
        for s in [
            "-1/4 * eta(2)eta(10)^3 / (eta(4)^3 eta(20))",
            "-1/4*eta(2)*eta(10)^3/(eta(4)^3*eta(20))",
            " -1/4 eta(2) eta(10)^3 eta(4)^-3 eta(20)^-1 ",
        ] {
            assert_eq!(s.parse::<EtaQuotient>().unwrap(), want, "{s}");
        }
        assert_eq!("eta(5)^6 / eta(1)^6".parse::<EtaQuotient>().unwrap().to_string(), "eta(5)^6 / (eta(1)^6)");
    }

    #[test]
    fn constants_and_pure_denominators() {
        let c: EtaQuotient = "3/2".parse().unwrap();
        assert_eq!(c, EtaQuotient::constant(rat(3, 2)));
        let d: EtaQuotient = "5 / (eta(2))".parse().unwrap();
        assert_eq!(d.to_string(), "5 / (eta(2))");
        assert_eq!(d.exponent(2), -1);
        let e: EtaQuotient = "1/3 / (eta(2))".parse().unwrap();
        assert_eq!(e.scalar(), &rat(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!("eta(0)".parse::<EtaQuotient>().is_err());
        assert!("eta(2) + eta(3)".parse::<EtaQuotient>().is_err());
        assert!("eta(2) / ()".parse::<EtaQuotient>().is_err());
        assert!("1/0".parse::<EtaQuotient>().is_err());
    }
}
