use frobcong::congruence::{
    build_l_sequence, check_divisibility, family, internal_family, scan_family, scan_internal, verify_all, verify_identity,
    DivisibilityReport,
};
use frobcong::eta::{conjugated_involution, transform as apply};
use frobcong::generators::{frobenius_series_count, Catalog, ORACLE_MAX_N};
use frobcong::{Error, EtaQuotient, IntSeries, TransformMatrix};
use serde_json::{json, Value};

use crate::{cache, Global};

pub const DEFAULT_TRUNC: i64 = 400;
pub const MIN_VERIFY_TRUNC: i64 = 50;
pub const DEFAULT_NMAX: u64 = 2000;
pub const MAX_ALPHA: u32 = 4;
/// Largest number of raw coefficients a scan may compute.
pub const SCAN_BUDGET: u64 = 20_000_000;
/// Largest base expansion an L-sequence check may request.
pub const L_BUDGET: i64 = 400_000;

pub struct Failure {
    pub code: u8,
    pub message: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: Some(message.into()) }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure { code: 3, message: Some(message.into()) }
    }

    fn silent(code: u8) -> Self {
        Failure { code, message: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::OracleRangeExceeded { .. } => 3,
            Error::UnsupportedDecomposition { .. }
            | Error::NonZeroWeight(_)
            | Error::InconsistentMultiplier(_)
            | Error::NonRealSignChange => 4,
            Error::UnknownSymbol(_)
            | Error::UnknownIdentity(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::NotEtaQuotient(_)
            | Error::NonPositiveDeterminant(_)
            | Error::DivisorNotInLevel { .. } => 2,
            _ => 1,
        };
        Failure { code, message: Some(e.to_string()) }
    }
}

type Outcome = Result<(), Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn number(n: impl ToString) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

fn series_json(symbol: &str, s: &IntSeries) -> Value {
    let lead = s.leading_exponent();
    let coefficients: Vec<Value> = (lead..s.truncation_order()).map(|n| number(s.coefficient(n).expect("known"))).collect();
    json!({ "symbol": symbol, "leading_exponent": lead, "truncation": s.truncation_order(), "coefficients": coefficients })
}

pub fn expand(g: &Global, symbol: &str, trunc: i64) -> Outcome {
    if trunc < 1 {
        return Err(Failure::usage("--trunc must be at least 1"));
    }
    let s = cache::expand(g.cache.as_deref(), symbol, trunc)?;
    if g.json {
        print_json(&series_json(symbol, &s));
    } else {
        println!("{s}");
    }
    Ok(())
}

pub fn verify(g: &Global, id: &str, trunc: i64) -> Outcome {
    if trunc < MIN_VERIFY_TRUNC {
        return Err(Failure::usage(format!("--trunc must be at least {MIN_VERIFY_TRUNC} for verification")));
    }
    let reports = if id == "all" { verify_all(trunc) } else { vec![verify_identity(id, trunc)?] };
    if g.json {
        let v = if id == "all" { json!(reports) } else { json!(reports[0]) };
        print_json(&v);
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    let failed = reports.iter().filter(|r| r.status.is_failure()).count();
    if failed > 0 {
        eprintln!("{failed} of {} identities failed", reports.len());
        return Err(Failure::silent(1));
    }
    Ok(())
}

fn describe(r: &DivisibilityReport) -> String {
    let status = if r.passed() { "pass".to_string() } else { "fail".to_string() };
    let mut s = format!("{status} (modulus {}^{}, {} values below {})", r.prime, r.exponent, r.checked, r.checked_below);
    if let Some(o) = &r.first_offender {
        s.push_str(&format!(", first offender at {} with valuation {}", o.index, o.valuation));
    }
    s
}

pub fn scan(g: &Global, name: &str, alpha: u32, nmax: u64) -> Outcome {
    if alpha == 0 {
        return Err(Failure::usage("--alpha must be at least 1"));
    }
    if alpha > MAX_ALPHA {
        return Err(Failure::budget(format!("--alpha above {MAX_ALPHA} exceeds the expansion budget")));
    }
    if let Ok(f) = internal_family(name) {
        let (_, top) = f.indices(alpha, nmax);
        if top >= SCAN_BUDGET {
            return Err(Failure::budget(format!("scan needs {top} coefficients, budget {SCAN_BUDGET}")));
        }
        let r = scan_internal(f, alpha, nmax)?;
        if g.json {
            print_json(&json!({ "family": f.name, "alpha": alpha, "status": if r.passed() { "pass" } else { "fail" }, "direct": r }));
        } else {
            println!("{} alpha={alpha}: {}", f.name, describe(&r));
        }
        return if r.passed() { Ok(()) } else { Err(Failure::silent(1)) };
    }
    let f = family(name)?;
    if nmax >= SCAN_BUDGET {
        return Err(Failure::budget(format!("--nmax above {SCAN_BUDGET} exceeds the scan budget")));
    }
    let direct = scan_family(f, alpha, nmax)?;
    let l_report = match (f.a_factor, f.beta) {
        (Some(_), Some(beta)) => {
            let trunc = (nmax / 5u64.pow(alpha)) as i64 + beta as i64 + 1;
            let seq = build_l_sequence(f, alpha, trunc, L_BUDGET)?;
            Some(check_divisibility(seq.term(alpha), f.prime, f.divisibility_exponent(alpha)))
        }
        _ => None,
    };
    let agree = l_report.as_ref().is_none_or(|l| l.passed() == direct.passed());
    let ok = direct.passed() && agree;
    if g.json {
        print_json(&json!({
            "family": f.name,
            "alpha": alpha,
            "status": if ok { "pass" } else { "fail" },
            "direct": direct,
            "l_sequence": l_report,
        }));
    } else {
        println!("{} alpha={alpha}: {}", f.name, describe(&direct));
        if let Some(l) = &l_report {
            println!("  L_{alpha}: {}", describe(l));
        }
        if !agree {
            println!("  direct scan and L-sequence check disagree");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::silent(1))
    }
}

fn parse_matrix(text: &str) -> Result<TransformMatrix, Failure> {
    let entries: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("bad matrix `{text}`; expected a,b,c,d")))?;
    let [a, b, c, d] = entries[..] else {
        return Err(Failure::usage(format!("bad matrix `{text}`; expected four entries")));
    };
    Ok(TransformMatrix::new(a, b, c, d)?)
}

/// `V` stands for the involution matching the quotient's level.
fn resolve_v(eq: &EtaQuotient) -> Result<TransformMatrix, Failure> {
    match eq.level() {
        l if 10 % l == 0 => Ok(TransformMatrix::V10),
        l if 18 % l == 0 => Ok(TransformMatrix::V18),
        l => Err(Failure::usage(format!("no V matrix for level {l}; use V10, V18 or --matrix"))),
    }
}

pub fn transform(g: &Global, symbol: &str, matrix: Option<&str>, named: Option<&str>) -> Outcome {
    let eq = Catalog::global().eta(symbol)?;
    let (label, (image, constant)) = match (matrix, named) {
        (Some(m), _) => {
            let m = parse_matrix(m)?;
            (m.to_string(), apply(&eq, &m)?)
        }
        (None, Some("V")) => {
            let m = resolve_v(&eq)?;
            (m.to_string(), apply(&eq, &m)?)
        }
        (None, Some("gamma10")) => (TransformMatrix::GAMMA10.to_string(), conjugated_involution(&eq, &TransformMatrix::W)?),
        (None, Some("gamma5")) => (TransformMatrix::GAMMA5.to_string(), conjugated_involution(&eq, &TransformMatrix::W60)?),
        (None, Some(name)) => {
            let m = TransformMatrix::named(name).ok_or_else(|| Failure::usage(format!("unknown matrix name `{name}`")))?;
            (m.to_string(), apply(&eq, &m)?)
        }
        (None, None) => return Err(Failure::usage("one of --matrix or --named is required")),
    };
    if g.json {
        print_json(&json!({ "symbol": symbol, "matrix": label, "image": image.to_string(), "constant": constant.to_string() }));
    } else {
        println!("{image}");
    }
    Ok(())
}

pub fn list(g: &Global) -> Outcome {
    let entries = Catalog::global().entries();
    if g.json {
        let v: Vec<Value> = entries
            .iter()
            .map(|e| json!({ "symbol": e.symbol, "aliases": e.aliases, "definition": e.definition_text(), "anchor": e.anchor }))
            .collect();
        print_json(&json!(v));
    } else {
        for e in entries {
            let aliases = if e.aliases.is_empty() { String::new() } else { format!(" ({})", e.aliases.join(", ")) };
            println!("{}{aliases}\t{}\t{}", e.symbol, e.definition_text(), e.anchor);
        }
    }
    Ok(())
}

pub fn oracle(g: &Global, nmax: u64) -> Outcome {
    if nmax > ORACLE_MAX_N {
        return Err(Failure::budget(format!("array enumeration supports n <= {ORACLE_MAX_N}")));
    }
    let mut results = Vec::new();
    for beta in [1u32, 0] {
        let series: IntSeries = Catalog::global().expand(&format!("cpsi2{beta}"), nmax as i64 + 1)?;
        let mut first_mismatch = None;
        for n in 0..=nmax {
            let counted = frobenius_series_count(2, beta, n)?;
            let coefficient = series.coefficient(n as i64)?;
            if coefficient != counted.into() {
                first_mismatch = Some(json!({ "n": n, "enumerated": counted, "coefficient": number(coefficient) }));
                break;
            }
        }
        results.push((beta, first_mismatch));
    }
    let ok = results.iter().all(|(_, m)| m.is_none());
    if g.json {
        let v: Vec<Value> = results
            .iter()
            .map(|(beta, m)| json!({ "beta": beta, "nmax": nmax, "status": if m.is_none() { "pass" } else { "fail" }, "first_mismatch": m }))
            .collect();
        print_json(&json!(v));
    } else {
        for (beta, m) in &results {
            match m {
                None => println!("beta={beta} n<={nmax}: pass"),
                Some(m) => println!("beta={beta} n<={nmax}: fail {m}"),
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::silent(1))
    }
}
