//! Canonical text forms of algebra elements.

use nctorus_core::laurent::LaurentPoly;
use nctorus_core::qweyl::{QMonomial, Side};
use num_complex::Complex64;

use crate::exact::ExactCoeff;

fn monomial(names: &[(&str, &[i64])]) -> String {
    let mut parts = Vec::new();
    for (prefix, exps) in names {
        for (i, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{prefix}{}", i + 1)),
                _ => parts.push(format!("{prefix}{}^{e}", i + 1)),
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn term(coeff: Option<String>, mono: String) -> String {
    match (coeff, mono.as_str()) {
        (None, _) => mono,
        (Some(c), "1") => c,
        (Some(c), _) if c.chars().all(|ch| ch.is_ascii_digit() || ch == '/' || ch == '-') => format!("{c}·{mono}"),
        (Some(c), _) => format!("({c})·{mono}"),
    }
}

/// Terms in lexicographic exponent order, e.g. `2·t2^-1 - 1 + (ζ3)·t1*t2`.
/// The output parses back under the Laurent grammar.
pub fn laurent(f: &LaurentPoly<ExactCoeff>) -> String {
    let mut out = String::new();
    for (e, c) in f.terms() {
        let t = term((!c.is_one()).then(|| c.to_string()), monomial(&[("t", e)]));
        match (out.is_empty(), t.strip_prefix('-')) {
            (true, _) => out = t,
            (false, Some(rest)) => out.push_str(&format!(" - {rest}")),
            (false, None) => out.push_str(&format!(" + {t}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

/// A normal-form monomial `coefficient·t^a g^b`.
pub fn qmonomial(m: &QMonomial, side: Side) -> String {
    let (t, g) = match side {
        Side::Nc => ("t", "g"),
        Side::Gerby => ("th", "gh"),
    };
    let mut parts = Vec::new();
    let phase = ExactCoeff::root(m.phase);
    if !phase.is_one() {
        parts.push(phase.to_string());
    }
    if m.scalar != Complex64::new(1.0, 0.0) {
        parts.push(complex(m.scalar));
    }
    let coeff = (!parts.is_empty()).then(|| parts.join("·"));
    term(coeff, monomial(&[(t, &m.a), (g, &m.b)]))
}
