//! Exact coefficients: formal sums `sum_p c_p zeta^p` with Gaussian
//! rational `c_p` and phases `p` in `[0, 1/4)`; quarter turns are absorbed
//! into the coefficient as powers of `i`, so every value has one normal form
//! in the ring `Q(i)[Q/Z] / (zeta^(1/4) - i)`.

use std::collections::BTreeMap;
use std::fmt;

use nctorus_core::laurent::Coefficient;
use nctorus_core::Phase;
use num_complex::{Complex, Complex64};
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Gaussian = Complex<Rational64>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactCoeff {
    terms: BTreeMap<Phase, Gaussian>,
}

/// `p = rest + k/4` with `rest` in `[0, 1/4)`.
fn quarter_split(p: Phase) -> (Phase, u32) {
    let k = (4 * p.numer() / p.denom()) as u32;
    (p - Phase::new(k as i64, 4), k)
}

fn times_i_pow(z: Gaussian, k: u32) -> Gaussian {
    (0..k % 4).fold(z, |acc, _| Complex::new(-acc.im, acc.re))
}

impl ExactCoeff {
    pub fn gaussian(z: Gaussian) -> Self {
        ExactCoeff::term(z, Phase::ZERO)
    }

    pub fn rational(q: Rational64) -> Self {
        ExactCoeff::gaussian(Complex::new(q, Rational64::zero()))
    }

    pub fn integer(n: i64) -> Self {
        ExactCoeff::rational(Rational64::from_integer(n))
    }

    pub fn imaginary_unit() -> Self {
        ExactCoeff::gaussian(Complex::new(Rational64::zero(), Rational64::one()))
    }

    pub fn root(p: Phase) -> Self {
        ExactCoeff::term(<Gaussian as One>::one(), p)
    }

    pub fn term(z: Gaussian, p: Phase) -> Self {
        let mut out = ExactCoeff::default();
        out.push(z, p);
        out
    }

    fn push(&mut self, z: Gaussian, p: Phase) {
        let (rest, k) = quarter_split(p);
        let z = times_i_pow(z, k);
        let entry = self.terms.entry(rest).or_insert_with(<Gaussian as Zero>::zero);
        *entry += z;
        if entry.is_zero() {
            self.terms.remove(&rest);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &Gaussian)> {
        self.terms.iter()
    }

    /// Multiplicative inverse of a single-summand coefficient.
    pub fn inverse(&self) -> Option<Self> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((p, z)), None) => Some(ExactCoeff::term(z.inv(), -*p)),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == ExactCoeff::one()
    }
}

impl Coefficient for ExactCoeff {
    fn zero() -> Self {
        ExactCoeff::default()
    }
    fn one() -> Self {
        ExactCoeff::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, z) in &other.terms {
            out.push(*z, *p);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = ExactCoeff::default();
        for (p, z) in &self.terms {
            for (q, w) in &other.terms {
                out.push(z * w, *p + *q);
            }
        }
        out
    }
    fn rotate(&self, p: Phase) -> Self {
        let mut out = ExactCoeff::default();
        for (q, z) in &self.terms {
            out.push(*z, *q + p);
        }
        out
    }
    fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(p, z)| Complex64::new(ratio(z.re), ratio(z.im)) * p.embed())
            .sum()
    }
}

fn ratio(q: Rational64) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(q: &Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `a`, `bi`, `a+bi` with rational parts; `1` for the unit.
pub fn fmt_gaussian(z: &Gaussian) -> String {
    let im = |x: &Rational64| -> String {
        if x.abs().is_one() {
            if x.is_negative() { "-i".into() } else { "i".into() }
        } else {
            format!("{}i", fmt_rational(x))
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => im(&z.im),
        (false, false) => {
            let s = im(&z.im);
            if s.starts_with('-') {
                format!("{}{}", fmt_rational(&z.re), s)
            } else {
                format!("{}+{}", fmt_rational(&z.re), s)
            }
        }
    }
}

/// `zeta<q>` or `zeta<q>^<p>` for the phase `p/q`.
pub fn fmt_root(p: &Phase) -> String {
    if p.numer() == 1 {
        format!("ζ{}", p.denom())
    } else {
        format!("ζ{}^{}", p.denom(), p.numer())
    }
}

/// `q zeta^p` for `q > 0`; the fourth roots of unity are written as signs and `i`.
fn fmt_unit_multiple(q: &Rational64, p: Phase) -> String {
    let quarter = Phase::new(1, 4);
    let (sign, p) = if p == quarter.mul_int(2) || p == quarter.mul_int(3) {
        ("-", p - quarter.mul_int(2))
    } else {
        ("", p)
    };
    let body = if p.is_zero() {
        fmt_rational(q)
    } else if p == quarter {
        if q.is_one() { "i".into() } else { format!("{}i", fmt_rational(q)) }
    } else if q.is_one() {
        fmt_root(&p)
    } else {
        format!("{}·{}", fmt_rational(q), fmt_root(&p))
    };
    format!("{sign}{body}")
}

fn fmt_term(p: &Phase, z: &Gaussian) -> String {
    let quarter = Phase::new(1, 4);
    match (z.re.is_zero(), z.im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => {
            let half = if z.re.is_negative() { Phase::new(1, 2) } else { Phase::ZERO };
            fmt_unit_multiple(&z.re.abs(), *p + half)
        }
        (true, false) => {
            let turn = if z.im.is_negative() { quarter.mul_int(3) } else { quarter };
            fmt_unit_multiple(&z.im.abs(), *p + turn)
        }
        (false, false) if p.is_zero() => fmt_gaussian(z),
        (false, false) => format!("({})·{}", fmt_gaussian(z), fmt_root(p)),
    }
}

impl fmt::Display for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, z)) in self.terms.iter().enumerate() {
            let part = fmt_term(p, z);
            match (k, part.strip_prefix('-')) {
                (0, _) => write!(f, "{part}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {part}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
