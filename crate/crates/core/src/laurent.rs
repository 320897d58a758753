//! Finitely supported Laurent polynomials in `t_1, ..., t_g` and the star
//! product `f * h = sum lambda(t1, t2) a_t1 b_t2 t1 t2`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_complex::Complex64;

use crate::cocycle::{BilinearCocycle, CochainTable};
use crate::{Error, Phase, Result};

/// Coefficient ring of a [`LaurentPoly`]: a commutative ring on which roots
/// of unity act.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplication by `exp(2 pi i p)`.
    fn rotate(&self, p: Phase) -> Self;
    fn to_complex(&self) -> Complex64;
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn rotate(&self, p: Phase) -> Self {
        if p.is_zero() {
            *self
        } else {
            self * p.embed()
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<C = Complex64> {
    g: usize,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(g: usize) -> Self {
        LaurentPoly {
            g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: usize) -> Self {
        Self::monomial(alloc::vec![0; g], C::one())
    }

    pub fn monomial(exponent: Vec<i64>, coeff: C) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coeff);
        p
    }

    /// The generator `t_i`.
    pub fn var(g: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; g];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn from_terms(g: usize, terms: impl IntoIterator<Item = (Vec<i64>, C)>) -> Result<Self> {
        let mut p = Self::zero(g);
        for (e, c) in terms {
            if e.len() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i64]) -> C {
        self.terms.get(exponent).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coeff: C) {
        debug_assert_eq!(exponent.len(), self.g);
        let sum = match self.terms.get(&exponent) {
            Some(c) => c.add(&coeff),
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_g(self.g, other.g)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.g);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(k));
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&Vec<i64>, &C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero(self.g);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(e, c));
        }
        out
    }

    pub fn to_complex(&self) -> LaurentPoly<Complex64> {
        self.map_coefficients(|_, c| c.to_complex())
    }
}

impl LaurentPoly<Complex64> {
    /// Largest coefficient deviation between two polynomials.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (e, c) in &self.terms {
            worst = worst.max((c - other.coeff(e)).norm());
        }
        for (e, c) in &other.terms {
            if !self.terms.contains_key(e) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

fn check_g(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// The star product `f *_lambda h`.
pub fn star_mul<C: Coefficient>(
    f: &LaurentPoly<C>,
    h: &LaurentPoly<C>,
    lambda: &BilinearCocycle,
) -> Result<LaurentPoly<C>> {
    check_g(lambda.g(), f.g)?;
    check_g(lambda.g(), h.g)?;
    let n = lambda.order();
    let mut out = LaurentPoly::zero(f.g);
    for (s, a) in &f.terms {
        for (t, b) in &h.terms {
            let e: Vec<i64> = s.iter().zip(t).map(|(x, y)| x + y).collect();
            let phase = Phase::new(lambda.exponent(s, t), n);
            out.add_term(e, a.mul(b).rotate(phase));
        }
    }
    Ok(out)
}

/// A point of the positive orthant at which majorant series are evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorantWeight {
    w: Vec<f64>,
}

impl MajorantWeight {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some(i) = w.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvariantViolated(alloc::format!(
                "majorant weight component {i} must be positive"
            )));
        }
        Ok(MajorantWeight { w })
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn at(&self, t: &[i64]) -> f64 {
        self.w
            .iter()
            .zip(t)
            .map(|(w, &e)| num_traits::Float::powi(*w, e as i32))
            .product()
    }
}

/// `sum_t |a_t| w^t`.
pub fn majorant_norm<C: Coefficient>(f: &LaurentPoly<C>, w: &MajorantWeight) -> Result<f64> {
    check_g(w.w.len(), f.g)?;
    Ok(f.terms.iter().map(|(t, a)| a.to_complex().norm() * w.at(t)).sum())
}

/// `a_t -> a_t t(a)^-1`.
pub fn translate(f: &LaurentPoly, a: &[Complex64]) -> Result<LaurentPoly> {
    check_g(f.g, a.len())?;
    if let Some(i) = a.iter().position(|x| x.re == 0.0 && x.im == 0.0) {
        return Err(Error::ZeroComponent(i));
    }
    let mut out = LaurentPoly::zero(f.g);
    for (t, c) in &f.terms {
        let mut factor = Complex64::new(1.0, 0.0);
        for (ai, &ti) in a.iter().zip(t) {
            factor *= ai.powi(-(ti as i32));
        }
        out.add_term(t.clone(), c * factor);
    }
    Ok(out)
}

/// `a_t -> alpha(t) a_t`. With `lambda' = coboundary(alpha, lambda)` this is
/// a ring isomorphism from `*_lambda'` to `*_lambda`:
/// `T(f *_lambda' h) = T(f) *_lambda T(h)`.
pub fn coboundary_transform<C: Coefficient>(
    f: &LaurentPoly<C>,
    alpha: &CochainTable,
) -> Result<LaurentPoly<C>> {
    check_g(alpha.window().dim(), f.g)?;
    let mut out = LaurentPoly::zero(f.g);
    for (t, c) in &f.terms {
        let p = alpha.get(t).map_err(|_| Error::SupportEscapesWindow { point: t.clone() })?;
        out.add_term(t.clone(), c.rotate(p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{bounding_cochain, coboundary, Cochain, Window};
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generators_pick_up_the_cocycle() {
        let lambda = BilinearCocycle::new(3, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let t1 = LaurentPoly::<Complex64>::var(2, 0);
        let t2 = LaurentPoly::var(2, 1);
        let p = star_mul(&t1, &t2, &lambda).unwrap();
        let expected = LaurentPoly::monomial(vec![1, 1], Phase::new(1, 3).embed());
        assert!(p.max_deviation(&expected) < 1e-15);
        let q = star_mul(&t2, &t1, &lambda).unwrap();
        assert!(q.max_deviation(&LaurentPoly::monomial(vec![1, 1], c(1., 0.))) < 1e-15);
    }

    #[test]
    fn majorant_by_hand() {
        let f = LaurentPoly::from_terms(1, [(vec![1], c(2., 0.)), (vec![-1], c(3., 0.))]).unwrap();
        let w = MajorantWeight::new(vec![2.0]).unwrap();
        assert!((majorant_norm(&f, &w).unwrap() - 5.5).abs() < 1e-15);
        assert_eq!(majorant_norm(&LaurentPoly::<Complex64>::zero(1), &w).unwrap(), 0.0);
        assert!(MajorantWeight::new(vec![0.0]).is_err());
    }

    #[test]
    fn translate_by_two() {
        let t = LaurentPoly::var(1, 0);
        let out = translate(&t, &[c(2., 0.)]).unwrap();
        assert!(out.max_deviation(&LaurentPoly::monomial(vec![1], c(0.5, 0.))) < 1e-15);
        assert_eq!(translate(&t, &[c(0., 0.)]), Err(Error::ZeroComponent(0)));
    }

    #[test]
    fn coboundary_transform_checks_window() {
        let alpha = CochainTable::constant(Window::cube(1, 1), Phase::ZERO);
        let f = LaurentPoly::monomial(vec![5], c(1., 0.));
        assert!(matches!(
            coboundary_transform(&f, &alpha),
            Err(Error::SupportEscapesWindow { .. })
        ));
    }

    #[test]
    fn transform_intertwines_star_products() {
        let lambda = BilinearCocycle::new(6, vec![vec![1, 2], vec![5, 3]]).unwrap();
        let s = vec![vec![2, 1], vec![1, 4]];
        let alpha = bounding_cochain(&s, 6, Window::cube(2, 6)).unwrap();
        let twisted = coboundary(&alpha, &lambda);
        // The twisted cocycle is bilinear again: lambda * zeta_6^(-s^T S t).
        let m2: Vec<Vec<i64>> = (0..2)
            .map(|i| (0..2).map(|j| lambda.entry(i, j) - s[i][j]).collect())
            .collect();
        let lambda2 = BilinearCocycle::new(6, m2).unwrap();
        for x in Window::cube(2, 2).points() {
            for y in Window::cube(2, 2).points() {
                assert_eq!(twisted.eval(&x, &y).unwrap(), lambda2.eval(&x, &y).unwrap());
            }
        }
        let f = LaurentPoly::from_terms(2, [(vec![1, 0], c(1., 2.)), (vec![-1, 2], c(0.5, 0.))]).unwrap();
        let h = LaurentPoly::from_terms(2, [(vec![0, 1], c(-1., 1.)), (vec![2, -1], c(3., 0.))]).unwrap();
        let lhs = coboundary_transform(&star_mul(&f, &h, &lambda2).unwrap(), &alpha).unwrap();
        let rhs = star_mul(
            &coboundary_transform(&f, &alpha).unwrap(),
            &coboundary_transform(&h, &alpha).unwrap(),
            &lambda,
        )
        .unwrap();
        assert!(lhs.max_deviation(&rhs) < 1e-12);
        // The inverse transform goes the other way.
        let inv = alpha.inverse();
        let lhs = coboundary_transform(&star_mul(&f, &h, &lambda).unwrap(), &inv).unwrap();
        let rhs = star_mul(
            &coboundary_transform(&f, &inv).unwrap(),
            &coboundary_transform(&h, &inv).unwrap(),
            &lambda2,
        )
        .unwrap();
        assert!(lhs.max_deviation(&rhs) < 1e-12);
    }
}
