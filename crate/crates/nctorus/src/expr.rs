//! Expression grammars of the CLI.
//!
//! Laurent polynomials:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'·') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int ['/' int] ['i'] | 'i' | root | var | '(' poly ')'
//! root   := ('ζ'|'z') int
//! var    := 't' int              (1-based)
//! ```
//!
//! Monomials inside one operand are exponent vectors, so `t2*t1` and
//! `t1*t2` denote the same basis element. The q-Weyl grammar is a product
//! of generator tokens, evaluated in the algebra.

use std::collections::BTreeMap;
use std::fmt;

use nctorus_core::laurent::Coefficient;
use nctorus_core::qweyl::Side;
use nctorus_core::Phase;
use num_rational::Rational64;

use crate::exact::ExactCoeff;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A commutative formal sum of exponent vectors with exact coefficients.
pub type Formal = BTreeMap<Vec<i64>, ExactCoeff>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<usize>,
    len: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn constant(&self, c: ExactCoeff) -> Formal {
        let mut f = Formal::new();
        if !c.is_zero() {
            f.insert(vec![0; self.len], c);
        }
        f
    }

    fn poly(&mut self) -> Result<Formal, ParseError> {
        let mut acc = Formal::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            add_into(&mut acc, &t, sign);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Formal, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') || self.eat('·') {
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Formal, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let at = self.pos;
        let e = self.int()?;
        let e = if negative { -e } else { e };
        power(&base, e, self.len).ok_or(ParseError {
            column: at + 1,
            message: "only monomials with invertible coefficients have negative powers".into(),
        })
    }

    fn atom(&mut self) -> Result<Formal, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let mut q = Rational64::from_integer(n);
                if self.eat('/') {
                    let at = self.pos;
                    let d = self.int()?;
                    if d == 0 {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    q = Rational64::new(n, d);
                }
                let mut c = ExactCoeff::rational(q);
                if self.chars.get(self.pos) == Some(&'i') && !self.ident_continues(self.pos + 1) {
                    self.pos += 1;
                    c = c.mul(&ExactCoeff::imaginary_unit());
                }
                Ok(self.constant(c))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "i" {
                    return Ok(self.constant(ExactCoeff::imaginary_unit()));
                }
                let idx_start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[idx_start..self.pos].iter().collect();
                let full = format!("{name}{digits}");
                if name == "ζ" || name == "z" {
                    return match digits.parse::<i64>() {
                        Ok(n) if n > 0 => Ok(self.constant(ExactCoeff::root(Phase::new(1, n)))),
                        _ => {
                            self.pos = start;
                            self.err(format!("bad root of unity '{full}'"))
                        }
                    };
                }
                match (self.resolve)(&full) {
                    Some(k) => {
                        let mut e = vec![0; self.len];
                        e[k] = 1;
                        let mut f = Formal::new();
                        f.insert(e, ExactCoeff::one());
                        Ok(f)
                    }
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{full}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident_continues(&self, at: usize) -> bool {
        self.chars.get(at).is_some_and(|c| c.is_alphanumeric())
    }
}

fn add_into(acc: &mut Formal, other: &Formal, sign: i64) {
    for (e, c) in other {
        let c = if sign < 0 { c.mul(&ExactCoeff::integer(-1)) } else { c.clone() };
        let sum = acc.get(e).map_or(c.clone(), |x| x.add(&c));
        if sum.is_zero() {
            acc.remove(e);
        } else {
            acc.insert(e.clone(), sum);
        }
    }
}

fn mul(a: &Formal, b: &Formal) -> Formal {
    let mut out = Formal::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let mut single = Formal::new();
            single.insert(e, c1.mul(c2));
            add_into(&mut out, &single, 1);
        }
    }
    out
}

fn power(base: &Formal, e: i64, len: usize) -> Option<Formal> {
    let mut one = Formal::new();
    one.insert(vec![0; len], ExactCoeff::one());
    if e >= 0 {
        return Some((0..e).fold(one, |acc, _| mul(&acc, base)));
    }
    if base.len() != 1 {
        return None;
    }
    let (exp, c) = base.iter().next()?;
    let mut inv = Formal::new();
    inv.insert(exp.iter().map(|x| -x).collect(), c.inverse()?);
    Some((0..-e).fold(one, |acc, _| mul(&acc, &inv)))
}

fn parse_with(input: &str, len: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Formal, ParseError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        resolve,
        len,
    };
    let f = p.poly()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

fn indexed(name: &str, prefix: &str, g: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (1..=g).contains(&i).then(|| i - 1)
}

/// A Laurent polynomial in `t1..tg`.
pub fn parse_laurent(input: &str, g: usize) -> Result<Formal, ParseError> {
    parse_with(input, g, &|name| indexed(name, "t", g))
}

/// One generator power of a q-Weyl word: `(is_gamma, index, exponent)`.
pub type Letter = (bool, usize, i64);

/// A product of `t<i>`, `g<i>` (nc side) or `th<i>`, `gh<i>` (gerby side)
/// tokens with integer exponents; `1` is the empty word.
pub fn parse_word(input: &str, g: usize, side: Side) -> Result<Vec<Letter>, ParseError> {
    let (t, gamma) = match side {
        Side::Nc => ("t", "g"),
        Side::Gerby => ("th", "gh"),
    };
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    let err = |column: usize, message: String| ParseError { column, message };
    let skip = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip(&mut pos);
        let start = pos;
        while pos < chars.len() && chars[pos].is_alphanumeric() {
            pos += 1;
        }
        let token: String = chars[start..pos].iter().collect();
        if token.is_empty() {
            return Err(err(start + 1, "expected a generator".into()));
        }
        if token != "1" {
            let letter = if let Some(i) = indexed(&token, gamma, g) {
                (true, i)
            } else if let Some(i) = indexed(&token, t, g) {
                (false, i)
            } else {
                return Err(err(start + 1, format!("unknown generator '{token}'")));
            };
            skip(&mut pos);
            let mut e = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                skip(&mut pos);
                let neg = pos < chars.len() && chars[pos] == '-';
                if neg {
                    pos += 1;
                }
                let ds = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[ds..pos].iter().collect();
                e = digits.parse::<i64>().map_err(|_| err(ds + 1, "expected an integer exponent".into()))?;
                if neg {
                    e = -e;
                }
            }
            out.push((letter.0, letter.1, e));
        }
        skip(&mut pos);
        if pos == chars.len() {
            return Ok(out);
        }
        if chars[pos] == '*' || chars[pos] == '·' {
            pos += 1;
        } else {
            return Err(err(pos + 1, format!("unexpected '{}'", chars[pos])));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn laurent_terms() {
        let f = parse_laurent("t1 + 2*t2^-1", 2).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[&vec![0, -1]], ExactCoeff::integer(2));
        let g = parse_laurent("(1/2+3i)*t1*t2 - t2*t1", 2).unwrap();
        assert_eq!(
            g[&vec![1, 1]],
            ExactCoeff::gaussian(Complex::new(Rational64::new(-1, 2), Rational64::from_integer(3)))
        );
        let z = parse_laurent("(ζ3)·t1*t2", 2).unwrap();
        assert_eq!(z[&vec![1, 1]], ExactCoeff::root(Phase::new(1, 3)));
        assert_eq!(parse_laurent("t1 - t1", 1).unwrap().len(), 0);
    }

    #[test]
    fn laurent_errors_carry_columns() {
        let e = parse_laurent("t1 + t3", 2).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse_laurent("t1 +", 2).is_err());
        assert_eq!(parse_laurent("(t1", 2).unwrap_err().column, 4);
        assert!(parse_laurent("(t1 + t2)^-1", 2).is_err());
        assert!(parse_laurent("1/0", 2).is_err());
    }

    #[test]
    fn words() {
        let w = parse_word("t1*g2*t1", 2, Side::Nc).unwrap();
        assert_eq!(w, vec![(false, 0, 1), (true, 1, 1), (false, 0, 1)]);
        let v = parse_word("gh1^-2 * th2", 2, Side::Gerby).unwrap();
        assert_eq!(v, vec![(true, 0, -2), (false, 1, 1)]);
        assert!(parse_word("th1", 2, Side::Nc).is_err());
        assert_eq!(parse_word("1", 2, Side::Nc).unwrap(), vec![]);
        assert_eq!(parse_word("t1 t2", 2, Side::Nc).unwrap_err().column, 4);
    }
}
