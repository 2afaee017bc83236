//! Catalog of named functions, polynomial generator expressions and the
//! brute-force Frobenius array oracle.

mod expr;
mod frobenius;
pub mod golden;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::scalar::Coefficient;
use crate::series::QSeries;

pub use expr::{GeneratorExpression, Monomial};
pub use frobenius::{enumerate_arrays, enumerate_frobenius, frobenius_series_count, ColoredPart, FrobeniusArray, ORACLE_MAX_N};

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    /// Eta quotient with integral order at infinity.
    Eta(EtaQuotient),
    /// Eta quotient with a fractional order at infinity; only the product
    /// `scalar * prod (q^d; q^d)^{r_d}` is expanded.
    Product(EtaQuotient),
    /// Polynomial in the catalog functions `t`, `x`, `y`.
    Expr(GeneratorExpression),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedFunction {
    pub symbol: String,
    pub aliases: Vec<String>,
    pub definition: Definition,
    pub anchor: String,
}

impl NamedFunction {
    pub fn expand<C: Coefficient>(&self, trunc: i64) -> Result<QSeries<C>> {
        match &self.definition {
            Definition::Eta(e) => e.expand(trunc),
            Definition::Product(e) => e.expand_product(trunc),
            Definition::Expr(g) => {
                let cat = Catalog::global();
                let t = cat.expand::<C>("t", trunc)?;
                let x = cat.expand::<C>("x", trunc)?;
                let y = cat.expand::<C>("y", trunc)?;
                g.evaluate(&t, &x, &y)
            }
        }
    }

    /// The underlying eta quotient, for entries that are one.
    pub fn eta_quotient(&self) -> Result<&EtaQuotient> {
        match &self.definition {
            Definition::Eta(e) => Ok(e),
            _ => Err(Error::NotEtaQuotient(self.symbol.clone())),
        }
    }

    /// Exponents `r_d` of a pure product `prod (q^d; q^d)^{r_d}` whose
    /// coefficient of `q^n` is the counting function at `n`.
    pub fn eta_product_terms(&self) -> Result<Vec<(u64, i64)>> {
        let e = match &self.definition {
            Definition::Product(e) => e,
            Definition::Eta(e) if e.integral_prefactor()? == 0 => e,
            _ => return Err(Error::InvalidArgument(format!("`{}` is not a counting product", self.symbol))),
        };
        if !num_traits::One::is_one(e.scalar()) {
            return Err(Error::InvalidArgument(format!("`{}` carries a scalar", self.symbol)));
        }
        Ok(e.product_terms())
    }

    pub fn definition_text(&self) -> String {
        match &self.definition {
            Definition::Eta(e) => e.to_string(),
            Definition::Product(e) => format!("{e} (product part)"),
            Definition::Expr(g) => g.to_string(),
        }
    }
}

impl EtaQuotient {
    /// `scalar * prod (q^d; q^d)^{r_d}` without the order at infinity.
    pub fn expand_product<C: Coefficient>(&self, trunc: i64) -> Result<QSeries<C>> {
        let scalar = C::from_rational(self.scalar())
            .ok_or_else(|| Error::InvalidArgument(format!("scalar {} not in coefficient ring", self.scalar())))?;
        let mut c = vec![C::zero(); trunc.max(0) as usize];
        if let Some(first) = c.first_mut() {
            *first = C::one();
        }
        crate::series::product::mul_eta_product_in_place(&mut c, &self.product_terms());
        Ok(QSeries::from_coeffs(0, c).scale(&scalar))
    }
}

pub struct Catalog {
    entries: Vec<NamedFunction>,
    index: HashMap<String, usize>,
}

fn eta(terms: &[(u64, i64)]) -> EtaQuotient {
    EtaQuotient::from_exponents(terms.iter().copied())
}

fn over_rescaled(terms: &[(u64, i64)], m: u64) -> EtaQuotient {
    let e = eta(terms);
    e.mul(&e.rescale(m).inverse())
}

fn poly(s: &str) -> GeneratorExpression {
    s.parse().expect("catalog polynomial parses")
}

const P10: &str = "85t + 625t^2 - 24x - 64x^2 - 4y - 1000ty - 12500t^2y + 992xy + 12000txy + 3520x^2y + 40000tx^2y";
const P11: &str = "t + 25t^2 - 8tx - 4y - 8ty - 500t^2y - 32xy + 480txy - 64x^2y + 1600tx^2y";
const P00: &str =
    "1 + 5t + 64x + 600tx + 208x^2 + 2000tx^2 + 4y + 1000ty + 12500t^2y - 992xy - 12000txy - 3520x^2y - 40000tx^2y";
const P01: &str = "1 + 9t + 8x + 64tx + 16x^2 + 80tx^2 + 4y + 8ty + 500t^2y + 32xy - 480txy + 64x^2y - 1600tx^2y";

const CPSI21: &[(u64, i64)] = &[(2, 5), (1, -4), (4, -2)];
const CPSI20: &[(u64, i64)] = &[(4, 2), (1, -2), (2, -1)];
const PHI2: &[(u64, i64)] = &[(4, 1), (6, 2), (1, -1), (2, -1), (3, -1), (12, -1)];
const PSI2: &[(u64, i64)] = &[(2, 2), (12, 1), (1, -2), (4, -1), (6, -1)];
const F_ETA: &[(u64, i64)] = &[(3, 2), (2, 1), (6, -1), (1, -2)];
const G_ETA: &[(u64, i64)] = &[(6, 2), (1, 1), (3, -1), (2, -2)];

impl Catalog {
    /// The shared catalog, built on first use.
    pub fn global() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(Catalog::build)
    }

    fn build() -> Catalog {
        use Definition::*;
        let five = BigRational::from_integer(BigInt::from(5));
        let raw: Vec<(&str, &[&str], Definition, &str)> = vec![
            ("t", &[], Eta(eta(&[(5, 6), (1, -6)])), "Hauptmodul for X0(5)"),
            ("x", &[], Eta(eta(&[(2, 1), (10, 3), (1, -3), (5, -1)])), "level 10 function with t = x(1+4x)^2/(1+5x)"),
            ("y", &[], Eta(eta(&[(2, 2), (4, 1), (5, 1), (20, 3), (1, -5), (10, -2)])), "level 20 function completing the t, x, y basis"),
            ("z", &[], Eta(eta(&[(2, 5), (5, 1), (1, -5), (10, -1)])), "1 + 5x as an eta quotient"),
            ("zinv", &[], Expr(poly("1 - 125t + 120x + 400x^2")), "polynomial form of 1/(1+5x)"),
            ("phi", &[], Eta(eta(&[(2, 5), (1, -2), (4, -2)])), "theta function sum of q^(n^2)"),
            ("phi_neg", &[], Eta(eta(&[(1, 2), (2, -1)])), "theta function at -q"),
            ("psi", &[], Product(eta(&[(2, 2), (1, -1)])), "theta function sum of q^(n(n+1)/2)"),
            ("cpsi21", &["cphi2"], Product(eta(CPSI21)), "2-colored Frobenius partitions, beta = 1"),
            ("cpsi20", &["cpsi2"], Product(eta(CPSI20)), "2-colored Frobenius partitions, beta = 0"),
            ("A1", &[], Eta(over_rescaled(CPSI21, 25)), "q^2 cpsi21(q)/cpsi21(q^25)"),
            ("A0", &[], Eta(over_rescaled(CPSI20, 25)), "q^-4 cpsi20(q)/cpsi20(q^25)"),
            ("phi2", &[], Product(eta(PHI2)), "2-colored Frobenius partitions with order 2 symmetry"),
            ("psi2", &[], Product(eta(PSI2)), "companion of phi2 under the level 20 involution"),
            ("B1", &[], Eta(over_rescaled(PHI2, 25)), "q^2 phi2(q)/phi2(q^25)"),
            ("B0", &[], Eta(over_rescaled(PSI2, 25)), "q^-4 psi2(q)/psi2(q^25)"),
            (
                "P1_1",
                &[],
                Eta(eta(&[(4, 1), (5, 6), (6, 2), (60, 1), (1, -1), (2, -1), (3, -2), (10, -2), (12, -1), (15, -1), (20, -1), (30, -1)])),
                "level 60 witness quotient, first",
            ),
            (
                "P2_1",
                &[],
                Eta(eta(&[(4, 1), (5, 1), (6, 2), (30, 4), (60, 1), (1, -1), (2, -1), (3, -2), (10, -1), (12, -1), (15, -2), (20, -1)])),
                "level 60 witness quotient, second",
            ),
            (
                "P3_1",
                &[],
                Eta(eta(&[(3, 1), (4, 1), (6, 2), (10, 1), (15, 1), (60, 1), (2, -1), (5, -2), (12, -1), (20, -1), (30, -2)])),
                "level 60 witness quotient, third",
            ),
            (
                "P1_0",
                &[],
                Eta(eta(&[(2, 2), (5, 7), (12, 1), (20, 1), (30, 2), (1, -2), (3, -1), (4, -1), (6, -1), (10, -5), (15, -2), (60, -1)])),
                "image of P1_1 under the level 60 involution",
            ),
            (
                "P2_0",
                &[],
                Eta(eta(&[(2, 2), (5, 2), (12, 1), (20, 1), (30, 7), (1, -2), (3, -1), (4, -1), (6, -1), (10, -4), (15, -3), (60, -1)])),
                "image of P2_1 under the level 60 involution",
            ),
            (
                "P3_0",
                &[],
                Eta(eta(&[(2, 2), (3, 2), (12, 1), (20, 1), (30, 1), (1, -1), (4, -1), (5, -1), (6, -1), (10, -2), (60, -1)])),
                "image of P3_1 under the level 60 involution",
            ),
            ("eo_alpha", &[], Product(eta(&[(2, 3), (1, -2)])), "generating function of the even-odd crank difference"),
            ("crank_beta", &[], Product(eta(&[(1, 3), (2, -2)])), "generating function of the crank parity difference"),
            (
                "eo_L1",
                &[],
                Eta(eta(&[(2, 2), (5, 4), (1, -4), (10, -2)]).with_scalar(five.clone())),
                "closed form of the first dissection of eo_alpha",
            ),
            (
                "crank_L1",
                &[],
                Eta(eta(&[(1, 2), (10, 4), (2, -4), (5, -2)]).with_scalar(five)),
                "closed form of the first dissection of crank_beta",
            ),
            ("F", &[], Eta(eta(F_ETA)), "level 6 quotient driving the 3-adic sequence"),
            ("G", &[], Product(eta(G_ETA)), "level 6 companion of F"),
            ("gamma_hat", &[], Eta(over_rescaled(F_ETA, 9)), "F(q)/F(q^9)"),
            ("delta_hat", &[], Eta(over_rescaled(G_ETA, 9)), "q^-2 G(q)/G(q^9)"),
            ("xi", &[], Eta(eta(&[(2, 1), (9, 2), (1, -2), (18, -1)])), "phi(-q^9)/phi(-q), Hauptmodul for X0(18)"),
            ("zeta", &[], Eta(eta(&[(1, 1), (18, 2), (2, -2), (9, -1)])), "image of xi under the level 18 involution"),
            ("p1_0", &[], Expr(poly(P10)), "module generator, beta = 1, a = 0"),
            ("p1_1", &[], Expr(poly(P11)), "module generator, beta = 1, a = 1"),
            ("p0_0", &[], Expr(poly(P00)), "module generator, beta = 0, a = 0"),
            ("p0_1", &[], Expr(poly(P01)), "module generator, beta = 0, a = 1"),
        ];
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        for (symbol, aliases, definition, anchor) in raw {
            let i = entries.len();
            index.insert(symbol.to_string(), i);
            for a in aliases {
                index.insert(a.to_string(), i);
            }
            entries.push(NamedFunction {
                symbol: symbol.to_string(),
                aliases: aliases.iter().map(|a| a.to_string()).collect(),
                definition,
                anchor: anchor.to_string(),
            });
        }
        Catalog { entries, index }
    }

    pub fn get(&self, symbol: &str) -> Result<&NamedFunction> {
        self.index.get(symbol).map(|&i| &self.entries[i]).ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn entries(&self) -> &[NamedFunction] {
        &self.entries
    }

    pub fn expand<C: Coefficient>(&self, symbol: &str, trunc: i64) -> Result<QSeries<C>> {
        self.get(symbol)?.expand(trunc)
    }

    pub fn eta(&self, symbol: &str) -> Result<EtaQuotient> {
        self.get(symbol)?.eta_quotient().cloned()
    }

    pub fn expression(&self, symbol: &str) -> Result<GeneratorExpression> {
        match &self.get(symbol)?.definition {
            Definition::Expr(g) => Ok(g.clone()),
            _ => Err(Error::InvalidArgument(format!("`{symbol}` is not a polynomial in t, x, y"))),
        }
    }
}

/// Expansion of a registered symbol known below `q^trunc`.
pub fn catalog_expand<C: Coefficient>(symbol: &str, trunc: i64) -> Result<QSeries<C>> {
    if trunc < 1 {
        return Err(Error::InvalidArgument(format!("truncation must be at least 1, got {trunc}")));
    }
    Catalog::global().expand(symbol, trunc)
}

/// `substitute_y` on catalog polynomials.
pub fn substitute_y(expr: &GeneratorExpression, replacement: &GeneratorExpression) -> GeneratorExpression {
    expr.substitute_y(replacement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::theta_series;

    fn ex(s: &str, t: i64) -> QSeries<BigInt> {
        catalog_expand(s, t).unwrap()
    }

    #[test]
    fn frobenius_generating_function() {
        assert_eq!(ex("cpsi21", 4).to_string(), "1 + 4q + 9q^2 + 20q^3");
        assert_eq!(ex("cphi2", 4), ex("cpsi21", 4));
        assert_eq!(ex("cpsi2", 30), ex("cpsi20", 30));
    }

    #[test]
    fn z_is_one_plus_five_x() {
        assert_eq!(ex("z", 200), QSeries::one(200).add(&ex("x", 200).scale_i64(5)));
    }

    #[test]
    fn phi_is_theta() {
        assert_eq!(ex("phi", 300), theta_series(300));
    }

    #[test]
    fn t_relation_and_inverse() {
        let n = 200;
        let (t, x, z) = (ex("t", n), ex("x", n), ex("z", n));
        let one_4x = QSeries::one(n).add(&x.scale_i64(4));
        assert_eq!(t.mul(&z), x.mul(&one_4x).mul(&one_4x));
        assert_eq!(ex("zinv", n).mul(&z), QSeries::one(n));
    }

    #[test]
    fn generators_are_integral_and_match_termwise() {
        let n = 80;
        let p: QSeries<BigInt> = ex("p1_1", n);
        let (t, x, y) = (ex("t", n), ex("x", n), ex("y", n));
        let tx = t.mul(&x);
        let manual = t
            .add(&t.mul(&t).scale_i64(25))
            .sub(&tx.scale_i64(8))
            .sub(&y.scale_i64(4))
            .sub(&t.mul(&y).scale_i64(8))
            .sub(&t.mul(&t).mul(&y).scale_i64(500))
            .sub(&x.mul(&y).scale_i64(32))
            .add(&tx.mul(&y).scale_i64(480))
            .sub(&x.mul(&x).mul(&y).scale_i64(64))
            .add(&tx.mul(&x).mul(&y).scale_i64(1600));
        assert_eq!(p, manual);
    }

    #[test]
    fn catalog_polynomials_are_linear_in_y() {
        for e in Catalog::global().entries() {
            if let Definition::Expr(g) = &e.definition {
                assert!(g.y_degree() <= 1, "{}", e.symbol);
            }
        }
    }

    #[test]
    fn integral_q_powers() {
        for e in Catalog::global().entries() {
            match &e.definition {
                Definition::Eta(q) => assert!(q.integral_prefactor().is_ok(), "{}", e.symbol),
                Definition::Product(q) => assert!(q.integral_prefactor().is_err(), "{}", e.symbol),
                Definition::Expr(_) => {}
            }
        }
        assert_eq!(Catalog::global().eta("A0").unwrap().integral_prefactor().unwrap(), -4);
        assert_eq!(Catalog::global().eta("delta_hat").unwrap().integral_prefactor().unwrap(), -2);
    }

    #[test]
    fn unknown_symbols_and_kinds() {
        assert!(matches!(catalog_expand::<BigInt>("nope", 10), Err(Error::UnknownSymbol(_))));
        assert!(matches!(Catalog::global().eta("p1_0"), Err(Error::NotEtaQuotient(_))));
        assert!(catalog_expand::<BigInt>("t", 0).is_err());
    }

    #[test]
    fn y_images_map_generators() {
        let cat = Catalog::global();
        let repl: GeneratorExpression = "-1/4 - 3/2x - y".parse().unwrap();
        for a in 0..2 {
            let p1 = cat.expression(&format!("p1_{a}")).unwrap();
            let p0 = cat.expression(&format!("p0_{a}")).unwrap();
            assert_eq!(substitute_y(&p1, &repl), p0);
        }
    }
}
