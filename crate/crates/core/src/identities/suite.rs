//! Suite execution, counterexample search, and report tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{catalog, spec_for, verify, IdentityId, IdentityReport, IdentitySpec, Outcome, Params};
use crate::error::IdentityError;

/// Parameter values to sweep; `None` falls back to the catalog defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSelection {
    pub n: Option<Vec<u32>>,
    pub m: Option<Vec<u32>>,
}

impl ParamSelection {
    /// Admissible tuples of `spec`, sorted lexicographically.
    pub fn tuples(&self, spec: &IdentitySpec) -> Vec<Params> {
        let d = &spec.domain;
        let ns: Vec<Option<u32>> = if d.n_min.is_some() {
            self.n
                .clone()
                .unwrap_or_else(|| d.default_n.clone())
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        };
        let ms: Vec<Option<u32>> = if d.m_min.is_some() {
            self.m
                .clone()
                .unwrap_or_else(|| d.default_m.clone())
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        };
        let mut out: Vec<Params> = ns
            .iter()
            .flat_map(|&n| ms.iter().map(move |&m| Params { n, m }))
            .filter(|p| spec.check(p).is_ok())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Parses `a..b`, `a,b,c`, or a mix such as `1..3,7`.
pub fn parse_values(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {part:?}"))?;
            let b: u32 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub id: IdentityId,
    /// `None` runs every cataloged variant.
    pub variants: Option<Vec<String>>,
    pub params: ParamSelection,
}

/// Suite configuration. The text form is one `key = value` per line:
///
/// ```text
/// # identity ranges
/// EQ17.n = 1..10
/// EQ6.n = 1,3,5,7
/// PROP2.variants = printed,corrected
/// oracle.max_n = 8
/// oracle.tol_exp = 25
/// report = suite.json
/// ```
///
/// Only identities named in the file are run, unless `identities = all`
/// adds the rest at their default ranges. Any `oracle.*` key enables the
/// closed-form arbitration sweep (`max_n` defaults to 8).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub entries: Vec<SuiteEntry>,
    /// Largest `n` for the oracle sweep; `None` skips it.
    pub oracle_max_n: Option<u32>,
    /// Oracle tolerance is `10^-tol_exp`.
    pub tol_exp: u32,
    pub report: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
            oracle_max_n: None,
            tol_exp: 25,
            report: None,
        }
    }
}

impl SuiteConfig {
    /// Every identity over its default ranges.
    pub fn full() -> Self {
        Self {
            entries: IdentityId::ALL
                .into_iter()
                .map(|id| SuiteEntry {
                    id,
                    variants: None,
                    params: ParamSelection::default(),
                })
                .collect(),
            oracle_max_n: Some(8),
            ..Self::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self, IdentityError> {
        let mut cfg = Self::default();
        let mut by_id: BTreeMap<IdentityId, SuiteEntry> = BTreeMap::new();
        let mut all = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| IdentityError::Config { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| err(format!("bad integer {v:?}")))
            };
            match key {
                "oracle.tol_exp" => {
                    cfg.tol_exp = int(value)?;
                    cfg.oracle_max_n.get_or_insert(8);
                }
                "oracle.max_n" => cfg.oracle_max_n = Some(int(value)?),
                "report" => cfg.report = Some(PathBuf::from(value)),
                "identities" if value == "all" => all = true,
                "identities" => return Err(err(format!("expected `all`, got {value:?}"))),
                _ => {
                    let (id, field) = key
                        .split_once('.')
                        .ok_or_else(|| err(format!("unknown key {key:?}")))?;
                    let id: IdentityId = id.parse()?;
                    let entry = by_id.entry(id).or_insert_with(|| SuiteEntry {
                        id,
                        variants: None,
                        params: ParamSelection::default(),
                    });
                    match field {
                        "n" => entry.params.n = Some(parse_values(value).map_err(err)?),
                        "m" => entry.params.m = Some(parse_values(value).map_err(err)?),
                        "variants" => {
                            let spec = spec_for(id);
                            let names: Vec<String> =
                                value.split(',').map(|s| s.trim().to_string()).collect();
                            for name in &names {
                                if spec.variant(name).is_none() {
                                    return Err(IdentityError::UnknownVariant {
                                        id: id.name().into(),
                                        variant: name.clone(),
                                    });
                                }
                            }
                            entry.variants = Some(names);
                        }
                        _ => return Err(err(format!("unknown field {field:?}"))),
                    }
                }
            }
        }
        if all {
            for id in IdentityId::ALL {
                by_id.entry(id).or_insert_with(|| SuiteEntry {
                    id,
                    variants: None,
                    params: ParamSelection::default(),
                });
            }
        }
        cfg.entries = by_id.into_values().collect();
        Ok(cfg)
    }
}

/// Runs every configured instance. Instances are checked in parallel;
/// the result is ordered by (id, variant in catalog order, params).
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<IdentityReport>, IdentityError> {
    let cat = catalog();
    let mut tasks: Vec<(IdentityId, usize, &'static str, Params)> = Vec::new();
    for entry in &config.entries {
        let spec = cat.iter().find(|s| s.id == entry.id).expect("cataloged");
        for (vi, var) in spec.variants.iter().enumerate() {
            if let Some(sel) = &entry.variants {
                if !sel.iter().any(|s| s == var.name) {
                    continue;
                }
            }
            for p in entry.params.tuples(spec) {
                tasks.push((spec.id, vi, var.name, p));
            }
        }
    }
    tasks.sort_by_key(|a| (a.0, a.1, a.3));
    tasks.dedup_by(|a, b| (a.0, a.1, a.3) == (b.0, b.1, b.3));
    tasks
        .par_iter()
        .map(|(id, _, var, p)| verify(*id, var, p))
        .collect()
}

/// Lexicographically least tuple in `bounds` where `variant` does not hold.
pub fn first_failure(
    id: IdentityId,
    variant: &str,
    bounds: &ParamSelection,
) -> Result<Option<Params>, IdentityError> {
    let spec = spec_for(id);
    for p in bounds.tuples(&spec) {
        if !verify(id, variant, &p)?.holds_exact {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Per-(id, parity of n, m) verdicts for the `*`-operation identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityRow {
    pub id: IdentityId,
    pub n_even: bool,
    pub m: u32,
    /// Variants that hold for every tested `n` of this parity.
    pub holding: Vec<String>,
    pub failing: Vec<String>,
}

impl ParityRow {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.name(),
            "n_parity": if self.n_even { "even" } else { "odd" },
            "m": self.m,
            "holding": self.holding,
            "failing": self.failing,
        })
    }
}

pub const PARITY_IDS: [IdentityId; 4] = [
    IdentityId::Eq12,
    IdentityId::Prop1,
    IdentityId::Eq24,
    IdentityId::Eq25Final,
];

pub fn parity_table(reports: &[IdentityReport]) -> Vec<ParityRow> {
    // (id, n_even, m) -> variant -> all hold
    let mut groups: BTreeMap<(IdentityId, bool, u32), Vec<(String, bool)>> = BTreeMap::new();
    for r in reports.iter().filter(|r| PARITY_IDS.contains(&r.id)) {
        let (Some(n), Some(m)) = (r.params.n, r.params.m) else {
            continue;
        };
        let slot = groups.entry((r.id, n % 2 == 0, m)).or_default();
        match slot.iter_mut().find(|(v, _)| *v == r.variant) {
            Some((_, ok)) => *ok &= r.holds_exact,
            None => slot.push((r.variant.clone(), r.holds_exact)),
        }
    }
    groups
        .into_iter()
        .map(|((id, n_even, m), vs)| ParityRow {
            id,
            n_even,
            m,
            holding: vs
                .iter()
                .filter(|(_, ok)| *ok)
                .map(|(v, _)| v.clone())
                .collect(),
            failing: vs
                .iter()
                .filter(|(_, ok)| !*ok)
                .map(|(v, _)| v.clone())
                .collect(),
        })
        .collect()
}

/// One row of the errata table: a variant that fails somewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErratumRow {
    pub id: IdentityId,
    pub variant: String,
    pub expected_to_hold: bool,
    pub first_failure: Params,
    pub witness: String,
    pub failures: usize,
    pub total: usize,
}

impl ErratumRow {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.name(),
            "variant": self.variant,
            "expected_to_hold": self.expected_to_hold,
            "first_failure": self.first_failure.to_json(),
            "witness": self.witness,
            "failures": self.failures,
            "total": self.total,
        })
    }
}

/// Every failing (id, variant) with its least failing tuple, given reports
/// in suite order.
pub fn errata(reports: &[IdentityReport]) -> Vec<ErratumRow> {
    let cat = catalog();
    let mut rows: Vec<ErratumRow> = Vec::new();
    let mut totals: BTreeMap<(IdentityId, String), (usize, usize)> = BTreeMap::new();
    for r in reports {
        let t = totals.entry((r.id, r.variant.clone())).or_default();
        t.1 += 1;
        if r.holds_exact {
            continue;
        }
        t.0 += 1;
        if rows.iter().any(|e| e.id == r.id && e.variant == r.variant) {
            continue;
        }
        let expected = cat
            .iter()
            .find(|s| s.id == r.id)
            .and_then(|s| s.variant(&r.variant))
            .is_some_and(|v| v.expected_to_hold);
        let witness = match &r.outcome {
            Outcome::Unevaluable(reason) => format!("unevaluable: {reason}"),
            _ => r.difference.clone(),
        };
        rows.push(ErratumRow {
            id: r.id,
            variant: r.variant.clone(),
            expected_to_hold: expected,
            first_failure: r.params,
            witness,
            failures: 0,
            total: 0,
        });
    }
    for row in &mut rows {
        let (f, t) = totals[&(row.id, row.variant.clone())];
        row.failures = f;
        row.total = t;
    }
    rows
}

/// Human-readable summary: per-variant tallies, errata, parity verdicts.
pub fn summary_table(reports: &[IdentityReport]) -> String {
    let cat = catalog();
    let mut out = String::new();
    let mut tallies: Vec<((IdentityId, String), (usize, usize))> = Vec::new();
    for r in reports {
        let key = (r.id, r.variant.clone());
        match tallies.iter_mut().find(|(k, _)| *k == key) {
            Some((_, t)) => {
                t.1 += 1;
                t.0 += usize::from(r.holds_exact);
            }
            None => tallies.push((key, (usize::from(r.holds_exact), 1))),
        }
    }
    let _ = writeln!(
        out,
        "{:<12} {:<10} {:>9}  status",
        "identity", "variant", "holds"
    );
    for ((id, var), (ok, total)) in &tallies {
        let expected = cat
            .iter()
            .find(|s| s.id == *id)
            .and_then(|s| s.variant(var))
            .is_some_and(|v| v.expected_to_hold);
        let status = match (ok == total, expected) {
            (true, _) => "ok",
            (false, true) => "FAIL",
            (false, false) => "erratum",
        };
        let _ = writeln!(
            out,
            "{:<12} {:<10} {:>4}/{:<4}  {status}",
            id.name(),
            var,
            ok,
            total
        );
    }
    let rows = errata(reports);
    if !rows.is_empty() {
        let _ = writeln!(out, "\nerrata (least failing tuple, difference rhs - lhs):");
        for e in &rows {
            let _ = writeln!(
                out,
                "  {} {} at {}: {}",
                e.id.name(),
                e.variant,
                e.first_failure,
                truncate(&e.witness, 120)
            );
        }
    }
    let parity = parity_table(reports);
    if !parity.is_empty() {
        let _ = writeln!(
            out,
            "\nparity verdicts (variants holding for all tested n of that parity):"
        );
        for row in parity {
            let _ = writeln!(
                out,
                "  {:<10} n {:<4} m={}  holds: {:<28} fails: {}",
                row.id.name(),
                if row.n_even { "even" } else { "odd" },
                row.m,
                row.holding.join(","),
                row.failing.join(",")
            );
        }
    }
    out
}

fn truncate(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let head: String = s.chars().take(max).collect();
        format!("{head}...")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_syntax() {
        assert_eq!(parse_values("1..3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(parse_values("5").unwrap(), vec![5]);
        assert!(parse_values("a..b").is_err());
    }

    #[test]
    fn empty_config_runs_nothing() {
        let cfg = SuiteConfig::parse("# nothing\n\n").unwrap();
        assert!(run_suite(&cfg).unwrap().is_empty());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            SuiteConfig::parse("EQ99.n = 1..2"),
            Err(IdentityError::UnknownId(_))
        ));
        assert!(matches!(
            SuiteConfig::parse("EQ17.x = 1"),
            Err(IdentityError::Config { line: 1, .. })
        ));
        assert!(matches!(
            SuiteConfig::parse("\nnonsense"),
            Err(IdentityError::Config { line: 2, .. })
        ));
        assert!(matches!(
            SuiteConfig::parse("EQ17.variants = fixed"),
            Err(IdentityError::UnknownVariant { .. })
        ));
    }

    #[test]
    fn config_fields() {
        let cfg =
            SuiteConfig::parse("EQ17.n = 1..10\noracle.tol_exp = 30\nreport = out.json").unwrap();
        assert_eq!(cfg.tol_exp, 30);
        assert_eq!(cfg.oracle_max_n, Some(8));
        assert_eq!(cfg.report, Some(PathBuf::from("out.json")));
        assert_eq!(cfg.entries.len(), 1);
    }

    #[test]
    fn all_identities_with_overrides() {
        let cfg = SuiteConfig::parse("identities = all\nEQ17.n = 2").unwrap();
        assert_eq!(cfg.entries.len(), IdentityId::ALL.len());
        let eq17 = cfg
            .entries
            .iter()
            .find(|e| e.id == IdentityId::Eq17)
            .unwrap();
        assert_eq!(eq17.params.n, Some(vec![2]));
        assert_eq!(cfg.oracle_max_n, None);
        assert!(SuiteConfig::parse("identities = some").is_err());
    }

    #[test]
    fn tuples_respect_parity() {
        let spec = spec_for(IdentityId::Eq11);
        let sel = ParamSelection {
            n: Some(vec![1]),
            m: Some(vec![1, 2, 3]),
        };
        assert_eq!(sel.tuples(&spec), vec![Params::nm(1, 1), Params::nm(1, 3)]);
    }

    #[test]
    fn first_failure_empty_bounds() {
        let sel = ParamSelection {
            n: Some(vec![]),
            m: Some(vec![]),
        };
        assert_eq!(
            first_failure(IdentityId::Prop2, "printed", &sel).unwrap(),
            None
        );
    }
}
