//! Plain, LaTeX and JSON renderings, plus the plain-format parser.
//!
//! Plain format lists terms by ascending power: `1/2+1/2*q`, `(-q)/(1+q^2)`,
//! `[(1)/(-1+q)]+[...]*X^2`. The parser accepts any `+ - * / ^` expression in
//! `q` and `X` with `()` or `[]` grouping, dividing only by `X`-free values.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::polyq::PolyQ;
use super::polyx::PolyX;
use super::rat::{parse_rat, rat_to_plain, rat_to_string, Rat};
use super::ratfn::RatFn;
use crate::error::ExactError;

/// Plain rendering of a rational-coefficient polynomial in `var`.
pub fn coeffs_plain(coeffs: &[Rat], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            out.push_str(&rat_to_plain(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&rat_to_plain(&mag));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn latex_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// LaTeX rendering of a rational-coefficient polynomial in `var`.
pub fn coeffs_latex(coeffs: &[Rat], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{{{k}}}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&latex_rat(&mag));
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn polyq_plain(p: &PolyQ) -> String {
    coeffs_plain(p.coeffs(), "q")
}

pub fn polyq_latex(p: &PolyQ) -> String {
    coeffs_latex(p.coeffs(), "q")
}

pub fn ratfn_plain(f: &RatFn) -> String {
    if f.den().is_one() {
        polyq_plain(f.num())
    } else {
        format!("({})/({})", polyq_plain(f.num()), polyq_plain(f.den()))
    }
}

pub fn ratfn_latex(f: &RatFn) -> String {
    if f.den().is_one() {
        polyq_latex(f.num())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            polyq_latex(f.num()),
            polyq_latex(f.den())
        )
    }
}

pub fn polyx_plain(p: &PolyX) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let coef = format!("[{}]", ratfn_plain(c));
            match (k, c.is_one()) {
                (0, _) => coef,
                (1, true) => "X".to_string(),
                (_, true) => format!("X^{k}"),
                (1, false) => format!("{coef}*X"),
                _ => format!("{coef}*X^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// LaTeX with `X^l` written as `q^{lx}`.
pub fn polyx_latex(p: &PolyX) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "q^{x}".to_string(),
                _ => format!("q^{{{k}x}}"),
            };
            if c.is_one() && k > 0 {
                mono
            } else {
                format!("\\left({}\\right){mono}", ratfn_latex(c))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub fn polyq_json(p: &PolyQ) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(rat_to_string(c)))
            .collect(),
    )
}

pub fn ratfn_json(f: &RatFn) -> Value {
    json!({ "num": polyq_json(f.num()), "den": polyq_json(f.den()) })
}

pub fn polyx_json(p: &PolyX) -> Value {
    Value::Array(p.coeffs().iter().map(ratfn_json).collect())
}

fn json_err(msg: &str) -> ExactError {
    ExactError::Json(msg.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat, ExactError> {
    let s = v
        .as_str()
        .ok_or_else(|| json_err("expected \"num/den\" string"))?;
    parse_rat(s)
}

pub fn polyq_from_json(v: &Value) -> Result<PolyQ, ExactError> {
    let arr = v
        .as_array()
        .ok_or_else(|| json_err("expected coefficient array"))?;
    Ok(PolyQ::from_coeffs(
        arr.iter().map(rat_from_json).collect::<Result<_, _>>()?,
    ))
}

/// Re-canonicalizes, so hand-written fixtures need not be reduced.
pub fn ratfn_from_json(v: &Value) -> Result<RatFn, ExactError> {
    let num = polyq_from_json(v.get("num").ok_or_else(|| json_err("missing num"))?)?;
    let den = polyq_from_json(v.get("den").ok_or_else(|| json_err("missing den"))?)?;
    RatFn::new(num, den)
}

pub fn polyx_from_json(v: &Value) -> Result<PolyX, ExactError> {
    let arr = v
        .as_array()
        .ok_or_else(|| json_err("expected coefficient array"))?;
    Ok(PolyX::from_coeffs(
        arr.iter().map(ratfn_from_json).collect::<Result<_, _>>()?,
    ))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Q,
    X,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ExactError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = s[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            'q' => {
                out.push((i, Tok::Q));
                i += 1;
            }
            'X' => {
                out.push((i, Tok::X));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            _ => {
                return Err(ExactError::Parse {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyX, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyX, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                let d = d.as_constant().ok_or(ExactError::Parse {
                    pos: at,
                    msg: "divisor must not depend on X".into(),
                })?;
                let inv = d.recip()?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<PolyX, ExactError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyX, ExactError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<PolyX, ExactError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(PolyX::constant(RatFn::constant(Rat::from_integer(n)))),
            Tok::Q => Ok(PolyX::constant(RatFn::q_pow(1))),
            Tok::X => Ok(PolyX::x()),
            Tok::Op(open @ ('(' | '[')) => {
                let inner = self.expr()?;
                let close = if open == '(' { ')' } else { ']' };
                if !self.eat(close) {
                    return Err(self.err(&format!("expected {close:?}")));
                }
                Ok(inner)
            }
            Tok::Op(c) => {
                self.pos -= 1;
                Err(self.err(&format!("unexpected {c:?}")))
            }
        }
    }
}

pub fn parse_polyx(s: &str) -> Result<PolyX, ExactError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        len: s.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_ratfn(s: &str) -> Result<RatFn, ExactError> {
    parse_polyx(s)?.as_constant().ok_or(ExactError::Parse {
        pos: 0,
        msg: "expression depends on X".into(),
    })
}

pub fn parse_polyq(s: &str) -> Result<PolyQ, ExactError> {
    let f = parse_ratfn(s)?;
    if !f.is_polynomial() {
        return Err(ExactError::Parse {
            pos: 0,
            msg: "not a polynomial".into(),
        });
    }
    Ok(f.num().clone())
}
