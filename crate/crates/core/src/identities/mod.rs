//! Catalog and exact verification of the relations between the families.
//!
//! Every identity is cataloged with its `printed` form and, where the
//! printed form does not hold, minimally edited variants. Each instance
//! is decided by building both sides in Q(q) (or Q(q)[X]) and testing the
//! difference for zero; nothing is sampled.

mod formulas;
mod suite;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::error::IdentityError;
use crate::exact::rat::rat_to_plain;
use crate::exact::render::{coeffs_plain, polyx_plain, ratfn_plain};

pub use formulas::Sides;
pub use suite::{
    errata, first_failure, parity_table, parse_values, run_suite, summary_table, ErratumRow,
    ParamSelection, ParityRow, SuiteConfig, SuiteEntry,
};

/// Cataloged identities, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Eq5,
    Eq6,
    Eq10Dist,
    Eq10Add,
    Eq11,
    Eq12,
    Prop1,
    Prop2,
    Eq17,
    Eq21,
    Thm3a,
    Thm4Dist,
    Thm4Add,
    Eq23,
    Eq24,
    Eq25Final,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::Eq5,
        IdentityId::Eq6,
        IdentityId::Eq10Dist,
        IdentityId::Eq10Add,
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Prop1,
        IdentityId::Prop2,
        IdentityId::Eq17,
        IdentityId::Eq21,
        IdentityId::Thm3a,
        IdentityId::Thm4Dist,
        IdentityId::Thm4Add,
        IdentityId::Eq23,
        IdentityId::Eq24,
        IdentityId::Eq25Final,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq5 => "EQ5",
            IdentityId::Eq6 => "EQ6",
            IdentityId::Eq10Dist => "EQ10_DIST",
            IdentityId::Eq10Add => "EQ10_ADD",
            IdentityId::Eq11 => "EQ11",
            IdentityId::Eq12 => "EQ12",
            IdentityId::Prop1 => "PROP1",
            IdentityId::Prop2 => "PROP2",
            IdentityId::Eq17 => "EQ17",
            IdentityId::Eq21 => "EQ21",
            IdentityId::Thm3a => "THM3A",
            IdentityId::Thm4Dist => "THM4_DIST",
            IdentityId::Thm4Add => "THM4_ADD",
            IdentityId::Eq23 => "EQ23",
            IdentityId::Eq24 => "EQ24",
            IdentityId::Eq25Final => "EQ25_FINAL",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| IdentityError::UnknownId(s.to_string()))
    }
}

/// One parameter tuple. Tuples order lexicographically by `(n, m)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub n: Option<u32>,
    pub m: Option<u32>,
}

impl Params {
    pub fn n(n: u32) -> Self {
        Self {
            n: Some(n),
            m: None,
        }
    }

    pub fn nm(n: u32, m: u32) -> Self {
        Self {
            n: Some(n),
            m: Some(m),
        }
    }

    pub fn m(m: u32) -> Self {
        Self {
            n: None,
            m: Some(m),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        if let Some(n) = self.n {
            obj.insert("n".into(), json!(n));
        }
        if let Some(m) = self.m {
            obj.insert("m".into(), json!(m));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n, self.m) {
            (Some(n), Some(m)) => write!(f, "n={n},m={m}"),
            (Some(n), None) => write!(f, "n={n}"),
            (None, Some(m)) => write!(f, "m={m}"),
            (None, None) => f.write_str("-"),
        }
    }
}

/// Declared parameter domain of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDomain {
    /// Smallest admissible `n`, if the identity takes `n`.
    pub n_min: Option<u32>,
    /// Smallest admissible `m`, if the identity takes `m`.
    pub m_min: Option<u32>,
    pub m_odd: bool,
    pub n_odd: bool,
    /// Default values swept by the suite.
    pub default_n: Vec<u32>,
    pub default_m: Vec<u32>,
}

/// One cataloged form of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantSpec {
    pub name: &'static str,
    /// Whether this form is claimed to hold on the whole domain. A failure
    /// of such a variant makes the suite fail.
    pub expected_to_hold: bool,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: IdentityId,
    /// The relation in plain notation, as cataloged.
    pub statement: &'static str,
    pub domain: ParamDomain,
    pub variants: Vec<VariantSpec>,
}

impl IdentitySpec {
    pub fn variant(&self, name: &str) -> Option<&VariantSpec> {
        self.variants.iter().find(|v| v.name == name)
    }

    /// Every default tuple, in lexicographic order.
    pub fn default_params(&self) -> Vec<Params> {
        ParamSelection {
            n: (!self.domain.default_n.is_empty()).then(|| self.domain.default_n.clone()),
            m: (!self.domain.default_m.is_empty()).then(|| self.domain.default_m.clone()),
        }
        .tuples(self)
    }

    fn check(&self, p: &Params) -> Result<(), IdentityError> {
        let d = &self.domain;
        for (name, min, val) in [("n", d.n_min, p.n), ("m", d.m_min, p.m)] {
            match (min, val) {
                (Some(_), None) => return Err(IdentityError::MissingParam(name)),
                (Some(lo), Some(v)) if v < lo => {
                    return Err(IdentityError::OutOfRange { name, value: v })
                }
                _ => {}
            }
        }
        if d.m_odd && p.m.is_some_and(|m| m % 2 == 0) {
            return Err(IdentityError::ParityViolation);
        }
        if d.n_odd && p.n.is_some_and(|n| n % 2 == 0) {
            return Err(IdentityError::NParityViolation);
        }
        Ok(())
    }
}

fn v(name: &'static str, expected_to_hold: bool, note: &'static str) -> VariantSpec {
    VariantSpec {
        name,
        expected_to_hold,
        note,
    }
}

fn printed_only() -> Vec<VariantSpec> {
    vec![v("printed", true, "")]
}

fn range(a: u32, b: u32) -> Vec<u32> {
    (a..=b).collect()
}

fn dom_n(n_min: u32, max: u32) -> ParamDomain {
    ParamDomain {
        n_min: Some(n_min),
        m_min: None,
        m_odd: false,
        n_odd: false,
        default_n: range(n_min, max),
        default_m: Vec::new(),
    }
}

fn dom_nm_odd(n_min: u32, max: u32) -> ParamDomain {
    ParamDomain {
        n_min: Some(n_min),
        m_min: Some(1),
        m_odd: true,
        n_odd: false,
        default_n: range(n_min, max),
        default_m: vec![1, 3, 5, 7],
    }
}

/// The complete identity catalog.
pub fn catalog() -> Vec<IdentitySpec> {
    use IdentityId::*;
    IdentityId::ALL
        .into_iter()
        .map(|id| {
            let (statement, domain, variants) = match id {
                Eq5 => (
                    "E_m(x) = sum_{k=0}^m C(m,k) G_{k+1}/(k+1) x^{m-k}",
                    ParamDomain {
                        n_min: None,
                        m_min: Some(0),
                        m_odd: false,
                        n_odd: false,
                        default_n: Vec::new(),
                        default_m: range(0, 10),
                    },
                    printed_only(),
                ),
                Eq6 => (
                    "(n^m - n) G_m = sum_{k=1}^{m-1} C(m,k) n^k G_k Z_{m-k}(n-1), n odd",
                    ParamDomain {
                        n_min: Some(1),
                        m_min: Some(1),
                        m_odd: false,
                        n_odd: true,
                        default_n: vec![1, 3, 5, 7],
                        default_m: range(1, 10),
                    },
                    printed_only(),
                ),
                Eq10Dist => (
                    "E_{n,q}(x) = [2]_q/[2]_{q^m} [m]_q^n sum_{a=0}^{m-1} (-1)^a q^a E_{n,q^m}((a+x)/m), m odd",
                    dom_nm_odd(0, 8),
                    printed_only(),
                ),
                Eq10Add => (
                    "E_{n,q}(x) = sum_{k=0}^n C(n,k) [x]_q^{n-k} q^{kx} E_{k,q}",
                    dom_n(0, 8),
                    printed_only(),
                ),
                Eq11 => (
                    "[2]_{q^m} E_{n,q}(mx) = [2]_q [m]_q^n sum_{a=0}^{m-1} (-1)^a q^a E_{n,q^m}(a/m + x), m odd",
                    dom_nm_odd(0, 8),
                    printed_only(),
                ),
                Eq12 => (
                    "[m]_{-q} E_{n,q} - [m]_q^n Q_{n+1} E_{n,q^m} = sum_{l=0}^{n-1} C(n,l) [m]_q^l E_{l,q^m} sum_{a=1}^{m-1} (-1)^a q^{a(l+1)} [a]_q^{n-l}",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "Q_k = [mk]_{-q}/[k]_{-q}; holds only for even n (or m = 1)"),
                        v("corrected", true, "Q_k = [2]_{q^{mk}}/[2]_{q^k}"),
                    ],
                ),
                Prop1 => (
                    "(1 - [m]_q^n) * E_{n,q} = sum_{l=0}^{n-1} C(n,l) [m]_q^l E_{l,q^m} sum_{a=1}^{m-1} (-1)^a q^{a(l+1)} [a]_q^{n-l}",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "* uses [m(n+1)]_{-q}/[n+1]_{-q}; holds only for even n (or m = 1)"),
                        v("corrected", true, "* uses [2]_{q^{m(n+1)}}/[2]_{q^{n+1}}"),
                    ],
                ),
                Prop2 => (
                    "sum_{l=0}^{n-1} (-1)^l q^l [l]_q^m = ((-1)^{n+1} q^n E_{m,q}(n) - E_{m,q}) / [2]_q",
                    ParamDomain {
                        n_min: Some(1),
                        m_min: Some(1),
                        m_odd: false,
                        n_odd: false,
                        default_n: range(1, 8),
                        default_m: range(1, 8),
                    },
                    vec![
                        v("printed", false, "sign of the E_{m,q} term"),
                        v("corrected", true, "+E_{m,q} instead of -E_{m,q}"),
                    ],
                ),
                Eq17 => (
                    "G_{n,q} = [2]_q B_{n,q} - 2 [2]_q^n B_{n,q^2}",
                    dom_n(1, 10),
                    printed_only(),
                ),
                Eq21 => (
                    "E_{n,q}(x) = sum_{k=0}^n C(n,k) [x]_q^{n-k} q^{nx} G_{n+1,q}/(n+1)",
                    dom_n(0, 8),
                    vec![
                        v("printed", false, "summand does not depend on k except through C(n,k)"),
                        v("corrected", true, "q^{kx} G_{k+1,q}/(k+1) in the summand"),
                    ],
                ),
                Thm3a => (
                    "G_{n,q}(x) = n (1/(1-q))^{n-1} sum_{l=0}^{n-1} C(n-1,l) (-1)^l/(1+q^{l+1}) q^{(l+1)x}",
                    dom_n(1, 10),
                    vec![
                        v("printed", false, "closed form without the [2]_q factor"),
                        v("corrected", true, "closed form with the [2]_q factor"),
                    ],
                ),
                Thm4Dist => (
                    "G_{n,q}(x) = [2]_q/[2]_{q^m} [m]_q^{n-1} sum_{a=0}^{m-1} (-1)^a q^{a+x} G_{n,q^m}((x+a)/m), m odd",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "extra factor q^{a+x} in the summand"),
                        v("corrected", true, "summand (-1)^a G_{n,q^m}((x+a)/m)"),
                    ],
                ),
                Thm4Add => (
                    "G_{n,q}(x) = sum_{k=0}^{inf} C(n,k) q^{kx} G_{k,q} [x]_q^{n-k}",
                    dom_n(1, 8),
                    vec![
                        v("printed", false, "infinite upper limit is not computable"),
                        v("corrected", true, "upper limit n"),
                    ],
                ),
                Eq23 => (
                    "G_{n,q}(mx) = [2]_q/[2]_{q^m} [m]_q^{n-1} sum_{a=0}^{m-1} (-1)^a q^{a+mx} G_{n,q^m}(x + a/m), m odd",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "extra factor q^{a+mx} in the summand"),
                        v("corrected", true, "summand (-1)^a G_{n,q^m}(x + a/m)"),
                    ],
                ),
                Eq24 => (
                    "[2]_{q^m}[m]_q G_{n,q} - [2]_q [m]_q^n G_{n,q^m} [2]_{q^{m(n+1)}}/[2]_{q^{n+1}} = [2]_q sum_{k=0}^{n-1} C(n,k) [m]_q^k G_{k,q^m} sum_{a=0}^{m-1} (-1)^a q^{a(k+1)} [a]_q^{n-k}",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "holds only at m = 1"),
                        v("corrected", true, "quotient [2]_{q^{mn}}/[2]_{q^n} and q^{ak} in the inner sum"),
                    ],
                ),
                Eq25Final => (
                    "([m]_q - [m]_q^n) * G_{n,q} = [2]_q sum_{k=0}^{n-1} C(n,k) [m]_q^k G_{n,q^m} sum_{a=0}^{m-1} (-1)^a q^{a(k+1)} [a]_q^{n-k}",
                    dom_nm_odd(1, 8),
                    vec![
                        v("printed", false, "G_{n,q^m} inside the k-sum; holds only at m = 1"),
                        v("k-index", false, "G_{k,q^m} inside the k-sum; holds only at m = 1"),
                        v("corrected", true, "G_{k,q^m}, q^{ak}, and * quotient at index n"),
                    ],
                ),
            };
            IdentitySpec { id, statement, domain, variants }
        })
        .collect()
}

pub fn spec_for(id: IdentityId) -> IdentitySpec {
    catalog()
        .into_iter()
        .find(|s| s.id == id)
        .expect("every id is cataloged")
}

/// Result of one instance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Unevaluable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub variant: String,
    pub params: Params,
    pub holds_exact: bool,
    pub outcome: Outcome,
    /// `rhs - lhs`, rendered in plain format; `"0"` iff the identity holds.
    pub difference: String,
    /// For identities in `X`: whether evaluations at `X = q^j`,
    /// `j ∈ {0,1,2}`, agree with the coefficientwise verdict.
    pub spot_consistent: Option<bool>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            Outcome::Holds => "holds".to_string(),
            Outcome::Fails => "fails".to_string(),
            Outcome::Unevaluable(_) => "unevaluable".to_string(),
        };
        let mut v = json!({
            "id": self.id.name(),
            "variant": self.variant,
            "params": self.params.to_json(),
            "holds_exact": self.holds_exact,
            "outcome": outcome,
            "difference": self.difference,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        });
        if let Some(s) = self.spot_consistent {
            v["spot_consistent"] = json!(s);
        }
        if let Outcome::Unevaluable(r) = &self.outcome {
            v["reason"] = json!(r);
        }
        v
    }
}

/// Builds both sides of `id` / `variant` at `params` without deciding.
pub fn sides(id: IdentityId, variant: &str, params: &Params) -> Result<Sides, IdentityError> {
    let spec = spec_for(id);
    if spec.variant(variant).is_none() {
        return Err(IdentityError::UnknownVariant {
            id: id.name().into(),
            variant: variant.into(),
        });
    }
    spec.check(params)?;
    Ok(formulas::build(id, variant, params))
}

/// Decides one identity instance exactly.
pub fn verify(
    id: IdentityId,
    variant: &str,
    params: &Params,
) -> Result<IdentityReport, IdentityError> {
    let start = Instant::now();
    let sides = sides(id, variant, params)?;
    let (outcome, difference, spot) = match sides {
        Sides::Rat(l, r) => {
            let d = r - l;
            (
                zero_outcome(num_traits::Zero::is_zero(&d)),
                rat_to_plain(&d),
                None,
            )
        }
        Sides::XPoly(l, r) => {
            let d = &r - &l;
            (
                zero_outcome(d.is_zero()),
                coeffs_plain(d.coeffs(), "x"),
                None,
            )
        }
        Sides::RatFn(l, r) => {
            let d = &r - &l;
            (zero_outcome(d.is_zero()), ratfn_plain(&d), None)
        }
        Sides::PolyX(l, r) => {
            let d = &r - &l;
            let holds = d.is_zero();
            let spots_zero = (0..=2).all(|j| d.eval_int(j).is_zero());
            (
                zero_outcome(holds),
                polyx_plain(&d),
                Some(!holds || spots_zero),
            )
        }
        Sides::Unevaluable(reason) => (
            Outcome::Unevaluable(reason.into()),
            "unevaluable".into(),
            None,
        ),
    };
    Ok(IdentityReport {
        id,
        variant: variant.to_string(),
        params: *params,
        holds_exact: outcome == Outcome::Holds,
        outcome,
        difference,
        spot_consistent: spot,
        elapsed: start.elapsed(),
    })
}

fn zero_outcome(is_zero: bool) -> Outcome {
    if is_zero {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_duplicate_free() {
        let cat = catalog();
        assert_eq!(cat.len(), IdentityId::ALL.len());
        let mut ids: Vec<_> = cat.iter().map(|s| s.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        for s in &cat {
            assert!(s.variant("printed").is_some(), "{}", s.id);
            assert!(s.variants.iter().any(|v| v.expected_to_hold), "{}", s.id);
        }
        assert_eq!(spec_for(IdentityId::Eq17).variants.len(), 1);
        let prop2: Vec<_> = spec_for(IdentityId::Prop2)
            .variants
            .iter()
            .map(|v| v.name)
            .collect();
        assert_eq!(prop2, ["printed", "corrected"]);
    }

    #[test]
    fn id_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("EQ99".parse::<IdentityId>().is_err());
    }

    #[test]
    fn eq17_at_two() {
        let r = verify(IdentityId::Eq17, "printed", &Params::n(2)).unwrap();
        assert!(r.holds_exact);
        assert_eq!(r.difference, "0");
    }

    #[test]
    fn prop2_printed_counterexample() {
        let r = verify(IdentityId::Prop2, "printed", &Params::nm(1, 1)).unwrap();
        assert!(!r.holds_exact);
        let want = crate::exact::render::parse_ratfn("2*q/((1+q)*(1+q^2))").unwrap();
        assert_eq!(r.difference, ratfn_plain(&want));
        assert!(
            verify(IdentityId::Prop2, "corrected", &Params::nm(2, 1))
                .unwrap()
                .holds_exact
        );
    }

    #[test]
    fn parameter_checks() {
        assert_eq!(
            verify(IdentityId::Eq11, "printed", &Params::nm(2, 2)).unwrap_err(),
            IdentityError::ParityViolation
        );
        assert_eq!(
            verify(IdentityId::Eq11, "printed", &Params::n(2)).unwrap_err(),
            IdentityError::MissingParam("m")
        );
        assert!(matches!(
            verify(IdentityId::Eq17, "bogus", &Params::n(2)),
            Err(IdentityError::UnknownVariant { .. })
        ));
        assert!(matches!(
            verify(IdentityId::Eq17, "printed", &Params::n(0)),
            Err(IdentityError::OutOfRange {
                name: "n",
                value: 0
            })
        ));
    }

    #[test]
    fn unevaluable_printed_form() {
        let r = verify(IdentityId::Thm4Add, "printed", &Params::n(3)).unwrap();
        assert!(!r.holds_exact);
        assert!(matches!(r.outcome, Outcome::Unevaluable(_)));
    }
}
