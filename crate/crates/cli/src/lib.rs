//! Command-line front end: sequences, polynomials, tables, series
//! enclosures, identity checks and the full suite.
//!
//! Exit status: 0 on success, 1 when a checked identity (or an oracle
//! containment) fails or a computation hits a pole, 2 on usage errors.

pub mod output;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qeuler_core::classical::{
    bernoulli_number, bernoulli_poly, euler_number, euler_poly, genocchi_number, genocchi_poly,
};
use qeuler_core::exact::rat::{parse_rat, pow10_neg, rat_to_string};
use qeuler_core::identities::{
    catalog, errata, parity_table, parse_values, run_suite, spec_for, summary_table, verify,
    IdentityId, IdentityReport, Params, SuiteConfig,
};
use qeuler_core::oracle::{arbitration_sweep, arbitration_verdicts, check_closed_form, ClosedForm};
use qeuler_core::qfamilies::{
    q_bernoulli_number, q_euler_number, q_euler_poly, q_genocchi_number, q_genocchi_poly,
};
use qeuler_core::{IdentityError, OracleError, Rat};
use serde_json::{json, Value};

pub use output::{emit, Format, OutputRecord, Payload};

/// Default cap on `n`, overridable through `QGEN_MAX_N`.
pub const DEFAULT_MAX_N: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Euler,
    Genocchi,
    Bernoulli,
    QEuler,
    QGenocchi,
    QBernoulli,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::Euler => "euler",
            Self::Genocchi => "genocchi",
            Self::Bernoulli => "bernoulli",
            Self::QEuler => "q-euler",
            Self::QGenocchi => "q-genocchi",
            Self::QBernoulli => "q-bernoulli",
        }
    }

    fn is_q(self) -> bool {
        matches!(self, Self::QEuler | Self::QGenocchi | Self::QBernoulli)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qeuler",
    version,
    about = "Exact q-Euler, q-Genocchi and q-Bernoulli numbers"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn key_rat(s: &str, key: &str) -> Result<Rat, String> {
    let v = s
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or(format!("expected {key}=<a/b>"))?;
    parse_rat(v).map_err(|e| e.to_string())
}

fn eval_point(s: &str) -> Result<Rat, String> {
    key_rat(s, "q")
}

fn at_point(s: &str) -> Result<i64, String> {
    let v = s.strip_prefix("x=").ok_or("expected x=<int>")?;
    v.parse().map_err(|_| format!("bad integer {v:?}"))
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// A single number of a family.
    Num {
        family: Family,
        n: u32,
        /// Substitute q -> q^m (q-families only).
        #[arg(long, value_name = "M")]
        base_power: Option<u32>,
        /// Evaluate at a rational point, e.g. `q=1/2`.
        #[arg(long, value_name = "q=A/B", value_parser = eval_point, conflicts_with = "limit_q1")]
        eval: Option<Rat>,
        /// Take the limit q -> 1.
        #[arg(long)]
        limit_q1: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// A polynomial of a family, optionally at an integer argument.
    Poly {
        family: Family,
        n: u32,
        /// Evaluate at an integer argument, e.g. `x=2`.
        #[arg(long, value_name = "x=K", value_parser = at_point)]
        at: Option<i64>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Numbers for n = 0..=N.
    Table {
        family: Family,
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Series enclosure of a q-family value, compared with its closed form.
    Oracle {
        family: Family,
        n: u32,
        #[arg(long, default_value_t = 0)]
        x: u32,
        #[arg(long, value_parser = rat_arg)]
        q: Rat,
        #[arg(long, value_parser = rat_arg)]
        tol: Rat,
    },
    /// Check one identity over a parameter range.
    Verify {
        #[arg(long)]
        id: String,
        /// Variant name; all variants when omitted.
        #[arg(long)]
        variant: Option<String>,
        /// e.g. `n=1..4,m=1,3,5`; catalog defaults when omitted.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run the identity suite (and the oracle sweep) from a config file.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::Exact(_) => Self::Failure(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn max_n() -> Result<u32, CliError> {
    match std::env::var("QGEN_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .or_else(|_| usage(format!("QGEN_MAX_N must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_n(n: u32) -> Result<(), CliError> {
    let cap = max_n()?;
    if n > cap {
        return usage(format!(
            "n = {n} exceeds the cap {cap} (set QGEN_MAX_N to raise it)"
        ));
    }
    Ok(())
}

fn number(family: Family, n: u32) -> Payload {
    match family {
        Family::Euler => Payload::Rational(euler_number(n)),
        Family::Genocchi => Payload::Rational(genocchi_number(n)),
        Family::Bernoulli => Payload::Rational(bernoulli_number(n)),
        Family::QEuler => Payload::RatFn(q_euler_number(n)),
        Family::QGenocchi => Payload::RatFn(q_genocchi_number(n)),
        Family::QBernoulli => Payload::RatFn(q_bernoulli_number(n)),
    }
}

fn cmd_num(
    family: Family,
    n: u32,
    base_power: Option<u32>,
    eval: Option<Rat>,
    limit_q1: bool,
    format: Format,
) -> Result<Output, CliError> {
    check_n(n)?;
    if !family.is_q() && (base_power.is_some() || eval.is_some() || limit_q1) {
        return usage("--base-power, --eval and --limit-q1 apply to q-families only");
    }
    let mut rec = OutputRecord::new(family.name(), n, number(family, n));
    if let Payload::RatFn(f) = &rec.payload {
        let mut f = f.clone();
        if let Some(m) = base_power {
            if m == 0 {
                return usage("--base-power must be at least 1");
            }
            f = f.subst_qpow(m as usize);
            rec.base_power = Some(m);
        }
        rec.payload = if let Some(q0) = eval {
            let v = f.eval(&q0).map_err(|e| CliError::Failure(e.to_string()))?;
            rec.q = Some(q0);
            Payload::Rational(v)
        } else if limit_q1 {
            let v = f
                .eval_at_one()
                .map_err(|e| CliError::Failure(e.to_string()))?;
            rec.q = Some(Rat::from_integer(1.into()));
            Payload::Rational(v)
        } else {
            Payload::RatFn(f)
        };
    }
    Ok(Output::ok(emit(&[rec], format)))
}

fn cmd_poly(family: Family, n: u32, at: Option<i64>, format: Format) -> Result<Output, CliError> {
    check_n(n)?;
    let payload = match family {
        Family::Euler => Payload::XPoly(euler_poly(n)),
        Family::Genocchi => Payload::XPoly(genocchi_poly(n)),
        Family::Bernoulli => Payload::XPoly(bernoulli_poly(n)),
        Family::QEuler => Payload::PolyX(q_euler_poly(n)),
        Family::QGenocchi => Payload::PolyX(q_genocchi_poly(n)),
        Family::QBernoulli => return usage("q-bernoulli has no polynomial family"),
    };
    let mut rec = OutputRecord::new(family.name(), n, payload);
    if let Some(x) = at {
        rec.payload = match &rec.payload {
            Payload::XPoly(p) => Payload::Rational(p.eval(&Rat::from_integer(x.into()))),
            Payload::PolyX(p) => {
                if x < 0 {
                    return usage("q-polynomials take a nonnegative integer x");
                }
                Payload::RatFn(p.eval_int(x as usize))
            }
            _ => unreachable!("polynomial payload"),
        };
        rec.x = Some(x);
    }
    Ok(Output::ok(emit(&[rec], format)))
}

fn cmd_table(family: Family, max: u32, format: Format) -> Result<Output, CliError> {
    check_n(max)?;
    let recs: Vec<OutputRecord> = (0..=max)
        .map(|n| OutputRecord::new(family.name(), n, number(family, n)))
        .collect();
    Ok(Output::ok(emit(&recs, format)))
}

fn cmd_oracle(family: Family, n: u32, x: u32, q0: Rat, tol: Rat) -> Result<Output, CliError> {
    check_n(n)?;
    let form = match family {
        Family::QEuler => ClosedForm::QEuler,
        Family::QGenocchi => ClosedForm::QGenocchi,
        Family::QBernoulli => ClosedForm::QBernoulli,
        _ => return usage("the oracle covers q-euler, q-genocchi and q-bernoulli"),
    };
    let check = check_closed_form(form, n, x, &q0, &tol).map_err(|e| match e {
        OracleError::Exact(e) => CliError::Failure(e.to_string()),
        e => CliError::Usage(e.to_string()),
    })?;
    let text = serde_json::to_string_pretty(&check.to_json()).expect("serializable") + "\n";
    Ok(Output {
        text,
        code: if check.contained { 0 } else { 1 },
    })
}

/// Explicit `n` and `m` values from `--params`.
type ParamLists = (Option<Vec<u32>>, Option<Vec<u32>>);

/// Parses `n=1..4,m=1,3,5`: a piece without `=` extends the previous key.
fn parse_params(s: &str) -> Result<ParamLists, CliError> {
    let mut n: Option<String> = None;
    let mut m: Option<String> = None;
    let mut current: Option<char> = None;
    for piece in s.split(',').map(str::trim) {
        let (key, val) = match piece.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => match current {
                Some(_) => ("", piece),
                None => return usage(format!("expected n=... or m=..., got {piece:?}")),
            },
        };
        let slot = match (key, current) {
            ("n", _) => {
                current = Some('n');
                &mut n
            }
            ("m", _) => {
                current = Some('m');
                &mut m
            }
            ("", Some('n')) => &mut n,
            ("", Some(_)) => &mut m,
            _ => return usage(format!("unknown parameter {key:?}")),
        };
        match slot {
            Some(acc) if key.is_empty() => {
                acc.push(',');
                acc.push_str(val);
            }
            Some(_) => return usage(format!("parameter {key} given twice")),
            None => *slot = Some(val.to_string()),
        }
    }
    let values = |v: Option<String>| -> Result<Option<Vec<u32>>, CliError> {
        v.map(|s| parse_values(&s).map_err(CliError::Usage))
            .transpose()
    };
    Ok((values(n)?, values(m)?))
}

fn report_line(r: &IdentityReport) -> String {
    let verdict = if r.holds_exact { "holds" } else { "FAILS" };
    let mut line = format!("{} {} {}: {verdict}", r.id, r.variant, r.params);
    if !r.holds_exact {
        let _ = write!(line, "; difference (rhs - lhs) = {}", r.difference);
    }
    line
}

fn cmd_verify(
    id: &str,
    variant: Option<String>,
    params: Option<String>,
    format: Format,
) -> Result<Output, CliError> {
    let id: IdentityId = id.parse()?;
    let spec = spec_for(id);
    let variants: Vec<String> = match variant {
        Some(v) if spec.variant(&v).is_some() => vec![v],
        Some(v) => {
            let known: Vec<&str> = spec.variants.iter().map(|v| v.name).collect();
            return usage(format!(
                "unknown variant {v:?} for {id}; known: {}",
                known.join(", ")
            ));
        }
        None => spec.variants.iter().map(|v| v.name.to_string()).collect(),
    };
    let defaults = spec.default_params();
    let (ns, ms) = match params {
        Some(s) => parse_params(&s)?,
        None => (None, None),
    };
    if ms.is_some() && spec.domain.m_min.is_none() {
        return usage(format!("{id} takes no parameter m"));
    }
    if ns.is_some() && spec.domain.n_min.is_none() {
        return usage(format!("{id} takes no parameter n"));
    }
    let tuples: Vec<Params> = match (ns, ms) {
        (None, None) => defaults,
        (ns, ms) => {
            let pick =
                |given: Option<Vec<u32>>, f: fn(&Params) -> Option<u32>| -> Vec<Option<u32>> {
                    match given {
                        Some(v) => v.into_iter().map(Some).collect(),
                        None => {
                            let mut d: Vec<Option<u32>> = defaults.iter().map(f).collect();
                            d.sort();
                            d.dedup();
                            d
                        }
                    }
                };
            let ns = pick(ns, |p| p.n);
            let ms = pick(ms, |p| p.m);
            ns.iter()
                .flat_map(|&n| ms.iter().map(move |&m| Params { n, m }))
                .collect()
        }
    };
    if tuples.is_empty() {
        return usage("empty parameter range");
    }
    for n in tuples.iter().filter_map(|p| p.n) {
        check_n(n)?;
    }
    let mut reports = Vec::new();
    for v in &variants {
        for p in &tuples {
            reports.push(verify(id, v, p)?);
        }
    }
    let all_hold = reports.iter().all(|r| r.holds_exact);
    let text = match format {
        Format::Json => {
            let arr: Vec<Value> = reports.iter().map(IdentityReport::to_json).collect();
            serde_json::to_string_pretty(&arr).expect("serializable") + "\n"
        }
        Format::Plain => reports.iter().map(|r| report_line(r) + "\n").collect(),
        _ => return usage("verify supports --format plain or json"),
    };
    Ok(Output {
        text,
        code: if all_hold { 0 } else { 1 },
    })
}

fn cmd_suite(config: Option<&Path>, report: Option<PathBuf>) -> Result<Output, CliError> {
    let cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .or_else(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            SuiteConfig::parse(&text)?
        }
        None => SuiteConfig::full(),
    };
    let reports = run_suite(&cfg)?;
    let mut text = summary_table(&reports);

    let cat = catalog();
    let expected = |r: &IdentityReport| {
        cat.iter()
            .find(|s| s.id == r.id)
            .and_then(|s| s.variant(&r.variant))
            .is_some_and(|v| v.expected_to_hold)
    };
    let mut failed = reports.iter().any(|r| expected(r) && !r.holds_exact);

    let mut oracle_json = Value::Null;
    if let Some(max) = cfg.oracle_max_n {
        let tol = pow10_neg(cfg.tol_exp);
        let checks = arbitration_sweep(max, &tol).map_err(|e| CliError::Failure(e.to_string()))?;
        let verdicts = arbitration_verdicts(&checks);
        let _ = writeln!(text, "\noracle (n <= {max}, tol = 10^-{}):", cfg.tol_exp);
        let mut vj = Vec::new();
        for &(form, ok, total) in &verdicts {
            let _ = writeln!(text, "  {:<26} {ok:>4}/{total:<4} contained", form.name());
            vj.push(json!({ "form": form.name(), "contained": ok, "total": total }));
            if form != ClosedForm::QGenocchiNoTwo && ok != total {
                failed = true;
            }
        }
        let passes = |f: ClosedForm| verdicts.iter().any(|&(g, ok, t)| g == f && ok == t);
        let thm3a = match (
            passes(ClosedForm::QGenocchi),
            passes(ClosedForm::QGenocchiNoTwo),
        ) {
            (true, false) => "with [2]_q",
            (false, true) => "without [2]_q",
            (true, true) => "both",
            (false, false) => "neither",
        };
        let _ = writeln!(text, "  THM3A closed form confirmed by the series: {thm3a}");
        oracle_json = json!({
            "max_n": max,
            "tol": rat_to_string(&tol),
            "verdicts": vj,
            "thm3a_closed_form": thm3a,
            "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        });
    }

    if let Some(path) = report.or(cfg.report) {
        let doc = json!({
            "reports": reports.iter().map(IdentityReport::to_json).collect::<Vec<_>>(),
            "errata": errata(&reports).iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "parity": parity_table(&reports).iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "oracle": oracle_json,
        });
        let body = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        fs::write(&path, body)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(Output {
        text,
        code: if failed { 1 } else { 0 },
    })
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Num {
            family,
            n,
            base_power,
            eval,
            limit_q1,
            format,
        } => cmd_num(family, n, base_power, eval, limit_q1, format),
        Command::Poly {
            family,
            n,
            at,
            format,
        } => cmd_poly(family, n, at, format),
        Command::Table {
            family,
            max_n,
            format,
        } => cmd_table(family, max_n, format),
        Command::Oracle {
            family,
            n,
            x,
            q,
            tol,
        } => cmd_oracle(family, n, x, q, tol),
        Command::Verify {
            id,
            variant,
            params,
            format,
        } => cmd_verify(&id, variant, params, format),
        Command::Suite { config, report } => cmd_suite(config.as_deref(), report),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &out.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => print!("{}", out.text),
            }
            out.code
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: &str) -> ParamLists {
        parse_params(s).ok().unwrap()
    }

    #[test]
    fn params_syntax() {
        assert_eq!(params("n=1..3"), (Some(vec![1, 2, 3]), None));
        assert_eq!(
            params("n=1..2,m=1,3,5"),
            (Some(vec![1, 2]), Some(vec![1, 3, 5]))
        );
        assert_eq!(params("m=3,n=1,4"), (Some(vec![1, 4]), Some(vec![3])));
        assert!(parse_params("k=1").is_err());
        assert!(parse_params("1,2").is_err());
        assert!(parse_params("n=1,n=2").is_err());
    }
}
