//! Command-line front end. [`run`] returns the process exit code: 0 on
//! success, 1 when a computation or a verification check fails, 2 on usage
//! errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::frac::{frac_string, parse_frac, Frac};
use crate::algebra::Param;
use crate::cycles::{self, count_zeros, Construction, NumericSeries};
use crate::error::{Error, Result};
use crate::melnikov::coeffs::symbol_for_label;
use crate::melnikov::{coeff_list, first_order_vanishing, melnikov, CoeffList, PerturbationSet};
use crate::oracle::{abelian_numeric, constants, DEFAULT_REL_TOL};
use crate::picard_fuchs::{basis_expansion, exponent_string, label_e6, Basis, Side};
use crate::reduction::reduce_monomial;
use crate::verify;

pub const TOL_VAR: &str = "CUSPLOOP_TOL";
pub const MIN_TOL: f64 = 1e-13;
pub const MAX_TOL: f64 = 1e-6;
pub const MAX_ORDER: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "cusploop", version, about = "Melnikov functions near the cuspidal loop of y^2/2 - x^3/3 + x^4/4")]
pub struct Cli {
    /// Relative quadrature tolerance, in [1e-13, 1e-6]; CUSPLOOP_TOL sets the default.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce I_{i,j} to the basis I01, I11, I21.
    Reduce {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
    },
    /// Asymptotic expansion of a basis integral at the loop.
    Expand {
        #[arg(long)]
        basis: Basis,
        #[arg(long, allow_hyphen_values = true)]
        side: Side,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Quadrature value of I_{i,j}(h), or `oracle constants`.
    Oracle(OracleArgs),
    /// Expansion coefficients of the k-th order Melnikov function.
    Melnikov {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        side: Side,
        #[arg(long, default_value_t = 7)]
        coeffs: usize,
        #[arg(long, value_enum)]
        family: Option<Family>,
    },
    /// Zeros of the truncated expansion near the loop.
    Zeros {
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Parameter file; without it the ten-zero construction is used.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = cycles::TEN_ZERO_WINDOW)]
        window: f64,
        #[arg(long, allow_hyphen_values = true)]
        side: Option<Side>,
        #[arg(long, default_value_t = 7)]
        coeffs: usize,
        #[arg(long, value_enum)]
        family: Option<Family>,
    },
    /// Displacement after one return to the section y = 0, x > 1.
    Simulate {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
        #[arg(long, allow_hyphen_values = true)]
        side: Option<Side>,
    },
    /// Displacements on an evenly spaced level grid, as CSV.
    Scan {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, allow_hyphen_values = true)]
        hmin: f64,
        #[arg(long, allow_hyphen_values = true)]
        hmax: f64,
        #[arg(long)]
        n: usize,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
        /// Print every sub-check.
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// `constants` for the boundary constants record.
    what: Option<String>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    side: Option<Side>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// All 54 coefficients free.
    General,
    /// General, with M1 made to vanish.
    SecondOrder,
    /// The ten-cycle family.
    ThirdOrder,
}

impl Family {
    fn default_for(order: usize) -> Family {
        match order {
            1 => Family::General,
            2 => Family::SecondOrder,
            _ => Family::ThirdOrder,
        }
    }

    fn set(self) -> PerturbationSet {
        match self {
            Family::General => PerturbationSet::general(),
            Family::SecondOrder => PerturbationSet::general().substitute(&first_order_vanishing()),
            Family::ThirdOrder => PerturbationSet::third_order_family(),
        }
    }
}

impl clap::ValueEnum for Basis {
    fn value_variants<'a>() -> &'a [Self] {
        &Basis::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Basis::I01 => "I01",
            Basis::I11 => "I11",
            Basis::I21 => "I21",
        }))
    }
}

impl clap::ValueEnum for Side {
    fn value_variants<'a>() -> &'a [Self] {
        &[Side::Plus, Side::Minus]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            Side::Plus => clap::builder::PossibleValue::new("+").alias("plus"),
            Side::Minus => clap::builder::PossibleValue::new("-").alias("minus"),
        })
    }
}

/// Parses `name = value` lines; `#` starts a comment.
pub fn parse_params(text: &str) -> Result<BTreeMap<Param, Frac>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, value) =
            line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected 'name = value'", n + 1)))?;
        let param: Param = name.trim().parse().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        let value = parse_frac(value).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        if out.insert(param, value).is_some() {
            return Err(Error::Parse(format!("line {}: {param} assigned twice", n + 1)));
        }
    }
    Ok(out)
}

fn read_params(path: &Path) -> Result<BTreeMap<Param, Frac>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_params(&text)
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            n.as_f64().map(round15).and_then(serde_json::Number::from_f64).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn to_json(x: &impl Serialize) -> Result<String> {
    let v = serde_json::to_value(x).map_err(|e| Error::Config(e.to_string()))?;
    Ok(round_floats(v).to_string())
}

fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_VAR) {
            Ok(s) => s.trim().parse().map_err(|_| Error::Config(format!("{TOL_VAR} must be a number, got '{s}'")))?,
            Err(_) => DEFAULT_REL_TOL,
        },
    };
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Error::Config(format!("--tol must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {tol:e}")));
    }
    Ok(tol)
}

fn side_for(h: f64, side: Option<Side>) -> Result<Side> {
    let natural = if h > 0.0 { Side::Plus } else { Side::Minus };
    match side {
        Some(s) if s != natural => Err(Error::Config(format!("--side {s} does not match h = {h}"))),
        _ => Ok(natural),
    }
}

fn coeff_json(c: &CoeffList) -> Value {
    let entries: Vec<Value> = (0..c.len())
        .map(|n| {
            json!({
                "label": CoeffList::label(n),
                "exponent": exponent_string(label_e6(n)),
                "symbol": symbol_for_label(n).name(),
                "value": c.rational(n).to_string(),
            })
        })
        .collect();
    json!({ "side": c.side, "coefficients": entries })
}

/// Exit code for a library error: bad input is a usage error.
fn code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::OutOfRange { .. } | Error::UnsupportedOrder(_) => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            code_for(&e)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Config(format!("cannot write output: {e}")))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let tol = resolve_tol(cli.tol)?;
    match cli.command {
        Command::Reduce { i, j } => {
            let r = reduce_monomial(i, j);
            emit(out, &json!({ "p1": r.p1.to_string(), "p2": r.p2.to_string(), "p3": r.p3.to_string() }).to_string())?;
        }
        Command::Expand { basis, side, order } => {
            if order > MAX_ORDER {
                return Err(Error::Config(format!("--order must not exceed {MAX_ORDER}")));
            }
            let e = basis_expansion(basis, side, order);
            let mut terms = Vec::new();
            for t in e.terms() {
                for s in t.coeff.support() {
                    let c = t.coeff.get(s).as_constant().unwrap_or_default();
                    terms.push(json!({ "exponent": exponent_string(t.e6), "symbol": s.name(), "coeff": frac_string(&c) }));
                }
            }
            emit(out, &Value::Array(terms).to_string())?;
        }
        Command::Oracle(a) => match a.what.as_deref() {
            Some("constants") => emit(out, &to_json(&constants(tol)?)?)?,
            Some(other) => return Err(Error::Config(format!("unknown oracle target '{other}'"))),
            None => {
                let missing = |n: &str| Error::Config(format!("oracle needs --{n}"));
                let (i, j, h) = (a.i.ok_or_else(|| missing("i"))?, a.j.ok_or_else(|| missing("j"))?, a.h.ok_or_else(|| missing("h"))?);
                let v = abelian_numeric(i, j, h, side_for(h, a.side)?, tol)?;
                emit(out, &format!("{v:.14e}"))?;
            }
        },
        Command::Melnikov { order, params, side, coeffs, family } => {
            if !(1..=3).contains(&order) {
                return Err(Error::UnsupportedOrder(order));
            }
            let point = params.as_deref().map(read_params).transpose()?.unwrap_or_default();
            let set = family.unwrap_or(Family::default_for(order)).set().assign(&point);
            let c = coeff_list(&melnikov(&set, order)?, side, coeffs);
            let mut v = coeff_json(&c);
            v["order"] = json!(order);
            emit(out, &v.to_string())?;
        }
        Command::Zeros { order, params, window, side, coeffs, family } => {
            if !(window > 0.0) {
                return Err(Error::Config("--window must be positive".into()));
            }
            let k = constants(tol.min(1e-12))?;
            let sides = side.map(|s| vec![s]).unwrap_or_else(|| vec![Side::Plus, Side::Minus]);
            let (point, m) = match params {
                None => {
                    if order != 3 {
                        return Err(Error::Config("the built-in construction is third order; pass --params".into()));
                    }
                    let c = Construction::third_order()?;
                    let point = cycles::place_zeros(
                        &c.coeffs(Side::Plus),
                        &c.base,
                        &c.unknowns,
                        &k.symbol_values(Side::Plus),
                        &cycles::ten_zero_layout(),
                    )?;
                    (point, c.melnikov)
                }
                Some(path) => {
                    if !(1..=3).contains(&order) {
                        return Err(Error::UnsupportedOrder(order));
                    }
                    let set = family.unwrap_or(Family::default_for(order)).set();
                    let given = read_params(&path)?;
                    let point: BTreeMap<Param, Frac> =
                        set.params().into_iter().map(|p| (p, given.get(&p).cloned().unwrap_or_default())).collect();
                    (point, melnikov(&set, order)?)
                }
            };
            let mut reports = Vec::new();
            for s in sides {
                let series = NumericSeries::from_exact(&coeff_list(&m, s, coeffs), &k.symbol_values(s), &point)?;
                reports.push(serde_json::to_value(count_zeros(&series, window)).map_err(|e| Error::Config(e.to_string()))?);
            }
            let text = if reports.len() == 1 {
                round_floats(reports.remove(0)).to_string()
            } else {
                let shown: BTreeMap<String, String> = point.iter().map(|(p, v)| (p.to_string(), frac_string(v))).collect();
                let total: u64 = reports.iter().filter_map(|r| r["count"].as_u64()).sum();
                round_floats(json!({ "params": shown, "plus": reports[0], "minus": reports[1], "total": total })).to_string()
            };
            emit(out, &text)?;
        }
        Command::Simulate { params, eps, h, side } => {
            let p = read_params(&params)?;
            let sample = cycles::displacement(&p, eps, h, side_for(h, side)?)?;
            emit(out, &to_json(&sample)?)?;
        }
        Command::Scan { params, eps, hmin, hmax, n } => {
            let p = read_params(&params)?;
            let samples = cycles::scan(&cycles::ode::general_system(&p), eps, hmin, hmax, n)?;
            let mut text = String::from("h,displacement");
            for s in samples {
                text.push_str(&format!("\n{:.14e},{:.14e}", s.h, s.displacement));
            }
            emit(out, &text)?;
        }
        Command::Verify { criterion, verbose, json } => {
            let reports = match criterion {
                Some(id) if (1..=verify::CRITERIA).contains(&id) => vec![verify::run_criterion(id, tol)],
                Some(id) => return Err(Error::Config(format!("--criterion must be 1 to {}, got {id}", verify::CRITERIA))),
                None => verify::run_all(tol),
            };
            if json {
                emit(out, &to_json(&reports)?)?;
            } else {
                for r in &reports {
                    let mark = if r.passed() { "PASS" } else { "FAIL" };
                    emit(out, &format!("{mark}  {:>2}  {:<36} {:>8.3} s", r.id, r.title, r.seconds))?;
                    for c in r.checks.iter().filter(|c| verbose || !c.passed) {
                        emit(out, &format!("      {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail))?;
                    }
                }
            }
            return Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 });
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::frac;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cusploop").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn params_file_syntax() {
        let p = parse_params("# header\np_121 = 3/2\n\nq_011=-0.25  # inline\n").unwrap();
        assert_eq!(p[&"p_121".parse().unwrap()], frac(3, 2));
        assert_eq!(p[&"q_011".parse().unwrap()], frac(-1, 4));
        assert!(matches!(parse_params("p_121 3"), Err(Error::Parse(_))));
        assert!(matches!(parse_params("x_121 = 3"), Err(Error::Parse(_))));
        assert!(matches!(parse_params("p_121 = 1\np_121 = 2"), Err(Error::Parse(_))));
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(round15(0.1234567890123456789), 0.123456789012346);
        assert_eq!(round15(-2.5e-9), -2.5e-9);
    }

    #[test]
    fn reduce_prints_rational_strings() {
        let (code, out, _) = run_str(&["reduce", "--i", "0", "--j", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"p1":"12/7 h","p2":"0","p3":"1/7"}"#);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        let (code, _, err) = run_str(&["reduce", "--i", "x", "--j", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("--i"));
        assert_eq!(run_str(&["--tol", "1e-3", "reduce", "--i", "0", "--j", "1"]).0, 2);
        assert_eq!(run_str(&["oracle", "--i", "0", "--j", "1", "--h", "0.01", "--side", "-"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
