use std::fmt;

use crate::scalar::Coefficient;

use super::QSeries;

fn monomial(exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => "q".to_string(),
        e => format!("q^{e}"),
    }
}

/// Renders known terms as `q + 6q^2 + 27q^3`; rational coefficients are
/// parenthesized, e.g. `(1/4)q^2`. The truncation order is not shown; use
/// the alternate form `{:#}` to append `+ O(q^T)`.
impl<C: Coefficient> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exp, c) in self.terms() {
            let mut body = c.to_string();
            let negative = body.starts_with('-');
            if negative {
                body.remove(0);
            }
            let sep = match (first, negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mono = monomial(exp);
            let text = if body == "1" && !mono.is_empty() {
                mono
            } else if body.contains('/') && !mono.is_empty() {
                format!("({body}){mono}")
            } else {
                format!("{body}{mono}")
            };
            write!(f, "{sep}{text}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if f.alternate() {
            write!(f, " + O({})", if self.trunc == 0 { "1".to_string() } else { monomial(self.trunc) })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn renders_like_a_polynomial() {
        let s = QSeries::<BigInt>::from_i64s(1, &[1, 6, 27]);
        assert_eq!(s.to_string(), "q + 6q^2 + 27q^3");
        let s = QSeries::<BigInt>::from_i64s(0, &[1, -1, -1, 0, 0, 1]);
        assert_eq!(s.to_string(), "1 - q - q^2 + q^5");
        assert_eq!(format!("{s:#}"), "1 - q - q^2 + q^5 + O(q^6)");
        let s = QSeries::<BigInt>::from_i64s(-2, &[-3, 0, 1]);
        assert_eq!(s.to_string(), "-3q^-2 + 1");
        assert_eq!(QSeries::<BigInt>::zero(5).to_string(), "0");
    }

    #[test]
    fn rational_coefficients_parenthesized() {
        let s = QSeries::<BigRational>::from_coeffs(0, vec![rat(1, 2), rat(0, 1), rat(-1, 4)]);
        assert_eq!(s.to_string(), "1/2 - (1/4)q^2");
    }
}
