//! Output records and the plain / LaTeX / CSV / JSON emitters.

use std::fmt::Write as _;

use qeuler_core::classical::XPoly;
use qeuler_core::exact::rat::{parse_rat, rat_to_plain, rat_to_string};
use qeuler_core::exact::render::{
    coeffs_latex, polyx_from_json, polyx_json, polyx_latex, polyx_plain, ratfn_from_json,
    ratfn_json, ratfn_latex, ratfn_plain,
};
use qeuler_core::{PolyX, Rat, RatFn};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Latex,
    Json,
    Csv,
}

/// A computed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Rational(Rat),
    RatFn(RatFn),
    XPoly(XPoly),
    PolyX(PolyX),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Rational(_) | Self::RatFn(_) => "number",
            Self::XPoly(_) | Self::PolyX(_) => "polynomial",
        }
    }

    fn type_tag(&self) -> &'static str {
        match self {
            Self::Rational(_) => "rational",
            Self::RatFn(_) => "ratfn",
            Self::XPoly(_) => "xpoly",
            Self::PolyX(_) => "polyx",
        }
    }

    pub fn plain(&self) -> String {
        match self {
            Self::Rational(r) => rat_to_plain(r),
            Self::RatFn(f) => ratfn_plain(f),
            Self::XPoly(p) => p.to_plain(),
            Self::PolyX(p) => polyx_plain(p),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Self::Rational(r) => coeffs_latex(std::slice::from_ref(r), "x"),
            Self::RatFn(f) => ratfn_latex(f),
            Self::XPoly(p) => p.to_latex(),
            Self::PolyX(p) => polyx_latex(p),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Rational(r) => json!(rat_to_string(r)),
            Self::RatFn(f) => ratfn_json(f),
            Self::XPoly(p) => p.coeffs().iter().map(rat_to_string).collect(),
            Self::PolyX(p) => polyx_json(p),
        }
    }

    fn from_json(tag: &str, v: &Value) -> Result<Self, String> {
        let rat = |v: &Value| {
            v.as_str()
                .ok_or("expected \"num/den\" string")
                .and_then(|s| parse_rat(s).map_err(|_| "bad rational"))
        };
        Ok(match tag {
            "rational" => Self::Rational(rat(v)?),
            "ratfn" => Self::RatFn(ratfn_from_json(v).map_err(|e| e.to_string())?),
            "xpoly" => {
                let arr = v.as_array().ok_or("expected coefficient array")?;
                Self::XPoly(XPoly::from_coeffs(
                    arr.iter().map(rat).collect::<Result<_, _>>()?,
                ))
            }
            "polyx" => Self::PolyX(polyx_from_json(v).map_err(|e| e.to_string())?),
            other => return Err(format!("unknown value type {other:?}")),
        })
    }
}

/// One emitted value with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub family: String,
    pub n: u32,
    /// Evaluation point, when the value was evaluated at `q = q0`.
    pub q: Option<Rat>,
    /// Base power `m` of a `q ↦ q^m` substitution.
    pub base_power: Option<u32>,
    /// Integer argument `x` of a polynomial evaluation.
    pub x: Option<i64>,
    pub payload: Payload,
}

impl OutputRecord {
    pub fn new(family: &str, n: u32, payload: Payload) -> Self {
        Self {
            family: family.to_string(),
            n,
            q: None,
            base_power: None,
            x: None,
            payload,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.payload.kind(),
            "family": self.family,
            "n": self.n,
            "type": self.payload.type_tag(),
            "value": self.payload.to_json(),
            "text": self.payload.plain(),
        });
        if let Some(q) = &self.q {
            v["q"] = json!(rat_to_string(q));
        }
        if let Some(m) = self.base_power {
            v["base_power"] = json!(m);
        }
        if let Some(x) = self.x {
            v["x"] = json!(x);
        }
        v
    }

    /// Inverse of [`OutputRecord::to_json`]; `text` is ignored.
    pub fn from_json(v: &Value) -> Result<Self, String> {
        let field = |k: &str| v.get(k).ok_or_else(|| format!("missing field {k:?}"));
        let family = field("family")?
            .as_str()
            .ok_or("family must be a string")?
            .to_string();
        let n = field("n")?.as_u64().ok_or("n must be an integer")? as u32;
        let tag = field("type")?.as_str().ok_or("type must be a string")?;
        let payload = Payload::from_json(tag, field("value")?)?;
        let q = match v.get("q") {
            Some(q) => Some(
                parse_rat(q.as_str().ok_or("q must be a string")?).map_err(|e| e.to_string())?,
            ),
            None => None,
        };
        let base_power = v
            .get("base_power")
            .and_then(Value::as_u64)
            .map(|m| m as u32);
        let x = v.get("x").and_then(Value::as_i64);
        Ok(Self {
            family,
            n,
            q,
            base_power,
            x,
            payload,
        })
    }
}

fn symbol(family: &str) -> &'static str {
    match family {
        "euler" => "E_n",
        "genocchi" => "G_n",
        "bernoulli" => "B_n",
        "q-euler" => "E_{n,q}",
        "q-genocchi" => "G_{n,q}",
        "q-bernoulli" => "B_{n,q}",
        _ => "\\text{value}",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders `records` in `format`. Output always ends with a newline.
pub fn emit(records: &[OutputRecord], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Plain => {
            for r in records {
                let _ = writeln!(out, "{}", r.payload.plain());
            }
        }
        Format::Csv => {
            out.push_str("family,n,value\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&r.family),
                    r.n,
                    csv_field(&r.payload.plain())
                );
            }
        }
        Format::Latex => {
            let sym = records
                .first()
                .map_or("\\text{value}", |r| symbol(&r.family));
            out.push_str("\\begin{tabular}{r|l}\n");
            let _ = writeln!(out, "$n$ & ${sym}$ \\\\");
            out.push_str("\\hline\n");
            for r in records {
                let _ = writeln!(out, "{} & ${}$ \\\\", r.n, r.payload.latex());
            }
            out.push_str("\\end{tabular}\n");
        }
        Format::Json => {
            let arr: Vec<Value> = records.iter().map(OutputRecord::to_json).collect();
            out = serde_json::to_string_pretty(&arr).expect("serializable");
            out.push('\n');
        }
    }
    out
}
