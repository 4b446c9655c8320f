//! Rigorous enclosures of the defining series at rational `q0 ∈ (0,1)`.
//!
//! Each family is the `t^n/n!` coefficient of a series in `e^{[k+x]_q t}`.
//! Partial sums are exact rationals; the tail past index `L` is bounded by
//! a geometric series using `|[k+x]_q| < 1/(1-q0)`. The enclosure is
//! `[S_L - T_L, S_L + T_L]` with `T_L <= tol`, so no rounding analysis is
//! needed.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::OracleError;
use crate::exact::rat::{rat, rat_to_string};
use crate::exact::Rat;
use crate::qfamilies::{
    q_bernoulli_number, q_euler_poly, q_genocchi_poly_form, GenocchiClosedForm,
};

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Self { lo, hi }
    }

    pub fn around(center: &Rat, radius: &Rat) -> Self {
        Self::new(center - radius, center + radius)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        enclosure_contains(self, v)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
}

pub fn enclosure_contains(e: &Enclosure, v: &Rat) -> bool {
    &e.lo <= v && v <= &e.hi
}

/// The three series-defined families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesFamily {
    QEuler,
    QGenocchi,
    QBernoulli,
}

fn check_args(q0: &Rat, tol: &Rat) -> Result<(), OracleError> {
    if !q0.is_positive() || q0 >= &Rat::one() {
        return Err(OracleError::QOutOfRange);
    }
    if !tol.is_positive() {
        return Err(OracleError::NonPositiveTolerance);
    }
    Ok(())
}

/// Least `L` with `scale · q0^L <= tol`, and that bound.
fn truncation(scale: Rat, q0: &Rat, tol: &Rat) -> (usize, Rat) {
    let mut bound = scale;
    let mut l = 0;
    while &bound > tol {
        bound *= q0;
        l += 1;
    }
    (l, bound)
}

fn inv_one_minus_pow(q0: &Rat, e: u32) -> Rat {
    num_traits::pow((Rat::one() - q0).recip(), e as usize)
}

/// Running `q0^k` and `[k]_{q0}` for `k = start, start+1, ...`.
struct Powers<'a> {
    q0: &'a Rat,
    qk: Rat,
    bracket: Rat,
}

impl<'a> Powers<'a> {
    fn new(q0: &'a Rat, start: usize) -> Self {
        let qk = num_traits::pow(q0.clone(), start);
        let bracket = (Rat::one() - &qk) / (Rat::one() - q0);
        Self { q0, qk, bracket }
    }

    fn advance(&mut self) {
        // [k+1] = [k] + q^k
        self.bracket += &self.qk;
        self.qk *= self.q0;
    }
}

/// Exact partial sums `S_1, ..., S_count` of the q-Euler series
/// `[2]_q sum_k (-1)^k q^k [k+x]_q^n`.
pub fn q_euler_partial_sums(n: u32, x: u32, q0: &Rat, count: usize) -> Vec<Rat> {
    let two = Rat::one() + q0;
    let mut qk = Rat::one();
    let mut pw = Powers::new(q0, x as usize);
    let mut acc = Rat::zero();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let term = &qk * num_traits::pow(pw.bracket.clone(), n as usize);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        out.push(&two * &acc);
        qk *= q0;
        pw.advance();
    }
    out
}

/// Enclosure of `E_{n,q}(x)` at `q = q0` of half-width at most `tol`.
pub fn series_q_euler(n: u32, x: u32, q0: &Rat, tol: &Rat) -> Result<Enclosure, OracleError> {
    check_args(q0, tol)?;
    let two = Rat::one() + q0;
    let (len, tail) = truncation(&two * inv_one_minus_pow(q0, n + 1), q0, tol);
    let partial = if len == 0 {
        Rat::zero()
    } else {
        q_euler_partial_sums(n, x, q0, len).pop().expect("nonempty")
    };
    Ok(Enclosure::around(&partial, &tail))
}

/// Enclosure of `G_{n,q}(x) = n[2]_q sum_k (-1)^k q^{k+x} [k+x]_q^{n-1}`.
pub fn series_q_genocchi(n: u32, x: u32, q0: &Rat, tol: &Rat) -> Result<Enclosure, OracleError> {
    check_args(q0, tol)?;
    if n == 0 {
        return Err(OracleError::IndexTooSmall);
    }
    let two = Rat::one() + q0;
    let nn = Rat::from_integer(n.into());
    let (len, tail) = truncation(&nn * &two * inv_one_minus_pow(q0, n), q0, tol);
    let mut pw = Powers::new(q0, x as usize);
    let mut acc = Rat::zero();
    for k in 0..len {
        let term = &pw.qk * num_traits::pow(pw.bracket.clone(), (n - 1) as usize);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        pw.advance();
    }
    Ok(Enclosure::around(&(nn * two * acc), &tail))
}

/// Enclosure of `B_{n,q} = -n sum_k q^k [k]_q^{n-1}`.
pub fn series_q_bernoulli(n: u32, q0: &Rat, tol: &Rat) -> Result<Enclosure, OracleError> {
    check_args(q0, tol)?;
    if n == 0 {
        return Err(OracleError::IndexTooSmall);
    }
    let nn = Rat::from_integer(n.into());
    let (len, tail) = truncation(&nn * inv_one_minus_pow(q0, n), q0, tol);
    let mut pw = Powers::new(q0, 0);
    let mut acc = Rat::zero();
    for _ in 0..len {
        acc += &pw.qk * num_traits::pow(pw.bracket.clone(), (n - 1) as usize);
        pw.advance();
    }
    Ok(Enclosure::around(&(-nn * acc), &tail))
}

/// Dispatches on the family; `x` must be 0 for [`SeriesFamily::QBernoulli`].
pub fn series(
    family: SeriesFamily,
    n: u32,
    x: u32,
    q0: &Rat,
    tol: &Rat,
) -> Result<Enclosure, OracleError> {
    match family {
        SeriesFamily::QEuler => series_q_euler(n, x, q0, tol),
        SeriesFamily::QGenocchi => series_q_genocchi(n, x, q0, tol),
        SeriesFamily::QBernoulli if x == 0 => series_q_bernoulli(n, q0, tol),
        SeriesFamily::QBernoulli => Err(OracleError::NonZeroX),
    }
}

/// A closed form to be checked against its defining series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedForm {
    QEuler,
    QGenocchi,
    /// The q-Genocchi closed form without the `[2]_q` factor.
    QGenocchiNoTwo,
    QBernoulli,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 4] = [
        Self::QEuler,
        Self::QGenocchi,
        Self::QGenocchiNoTwo,
        Self::QBernoulli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::QEuler => "q-euler",
            Self::QGenocchi => "q-genocchi",
            Self::QGenocchiNoTwo => "q-genocchi-without-[2]_q",
            Self::QBernoulli => "q-bernoulli",
        }
    }

    pub fn family(self) -> SeriesFamily {
        match self {
            Self::QEuler => SeriesFamily::QEuler,
            Self::QGenocchi | Self::QGenocchiNoTwo => SeriesFamily::QGenocchi,
            Self::QBernoulli => SeriesFamily::QBernoulli,
        }
    }

    /// Smallest `n` the series defines.
    pub fn min_n(self) -> u32 {
        match self {
            Self::QEuler => 0,
            _ => 1,
        }
    }

    /// Closed-form value at `q = q0`, `x` integer.
    pub fn value(self, n: u32, x: u32, q0: &Rat) -> Result<Rat, OracleError> {
        let j = x as usize;
        Ok(match self {
            Self::QEuler => q_euler_poly(n).eval_at(q0, j)?,
            Self::QGenocchi => {
                q_genocchi_poly_form(n, GenocchiClosedForm::WithTwoBracket).eval_at(q0, j)?
            }
            Self::QGenocchiNoTwo => {
                q_genocchi_poly_form(n, GenocchiClosedForm::WithoutTwoBracket).eval_at(q0, j)?
            }
            Self::QBernoulli if x == 0 => q_bernoulli_number(n).eval(q0)?,
            Self::QBernoulli => return Err(OracleError::NonZeroX),
        })
    }
}

/// One closed-form-versus-series comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub form: ClosedForm,
    pub n: u32,
    pub x: u32,
    pub q0: Rat,
    pub enclosure: Enclosure,
    pub closed_value: Rat,
    pub contained: bool,
}

impl OracleCheck {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.form.name(),
            "n": self.n,
            "x": self.x,
            "q": rat_to_string(&self.q0),
            "lo": rat_to_string(&self.enclosure.lo),
            "hi": rat_to_string(&self.enclosure.hi),
            "closed_value": rat_to_string(&self.closed_value),
            "contained": self.contained,
        })
    }
}

pub fn check_closed_form(
    form: ClosedForm,
    n: u32,
    x: u32,
    q0: &Rat,
    tol: &Rat,
) -> Result<OracleCheck, OracleError> {
    let enclosure = series(form.family(), n, x, q0, tol)?;
    let closed_value = form.value(n, x, q0)?;
    let contained = enclosure.contains(&closed_value);
    Ok(OracleCheck {
        form,
        n,
        x,
        q0: q0.clone(),
        enclosure,
        closed_value,
        contained,
    })
}

/// The standard arbitration grid: `n <= max_n`, `x ∈ {0,..,3}` (`x = 0`
/// only for q-Bernoulli), `q0 ∈ {1/3, 1/2, 2/3}`, for every closed form.
/// Results are in grid order.
pub fn arbitration_sweep(max_n: u32, tol: &Rat) -> Result<Vec<OracleCheck>, OracleError> {
    let qs = [rat(1, 3), rat(1, 2), rat(2, 3)];
    let mut grid = Vec::new();
    for form in ClosedForm::ALL {
        for n in form.min_n()..=max_n {
            let xs = if form == ClosedForm::QBernoulli {
                0..=0
            } else {
                0..=3
            };
            for x in xs {
                for q0 in &qs {
                    grid.push((form, n, x, q0.clone()));
                }
            }
        }
    }
    grid.par_iter()
        .map(|(f, n, x, q0)| check_closed_form(*f, *n, *x, q0, tol))
        .collect()
}

/// Pass count per closed form: `(form, contained, total)`.
pub fn arbitration_verdicts(checks: &[OracleCheck]) -> Vec<(ClosedForm, usize, usize)> {
    ClosedForm::ALL
        .into_iter()
        .map(|f| {
            let mine = checks.iter().filter(|c| c.form == f);
            let total = mine.clone().count();
            (f, mine.filter(|c| c.contained).count(), total)
        })
        .filter(|&(_, _, t)| t > 0)
        .collect()
}
