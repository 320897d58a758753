//! q-Weyl algebras at roots of unity and the toy Poincare bimodule.
//!
//! Monomials are kept in the normal form `t^a g^b` (all `t`s before all
//! `g`s). On the `Nc` side the generators are `t_i`, `g_j` with
//! `t_i t_j = lambda_ij t_j t_i` and `t_i g_j = q_ij^-1 g_j t_i`; on the
//! `Gerby` side the hatted generators satisfy `th_i th_j = th_j th_i`,
//! `th_i gh_j = q_ji^-1 gh_j th_i` and `gh_i gh_j = lambda_ij gh_j gh_i`.
//! Here `lambda_ij = zeta_N^(A_ij)` for the antisymmetrization `A` of the
//! bilinear cocycle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cocycle::{antisymmetrize, BilinearCocycle};
use crate::{Error, Phase, Result};

/// Multiplicative period matrix `Q = (q_ij)`; column `j` is `gamma_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    q: Vec<Vec<Complex64>>,
}

impl PeriodMatrix {
    pub fn new(q: Vec<Vec<Complex64>>) -> Result<Self> {
        let g = q.len();
        for (i, row) in q.iter().enumerate() {
            if row.len() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: row.len(),
                });
            }
            for (j, x) in row.iter().enumerate() {
                if x.re == 0.0 && x.im == 0.0 {
                    return Err(Error::ZeroPeriod(i, j));
                }
            }
        }
        Ok(PeriodMatrix { q })
    }

    pub fn ones(g: usize) -> Self {
        PeriodMatrix {
            q: vec![vec![Complex64::new(1.0, 0.0); g]; g],
        }
    }

    pub fn g(&self) -> usize {
        self.q.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.q[i][j]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.q
    }

    /// Every column has an entry off the unit circle.
    pub fn has_free_columns(&self) -> bool {
        (0..self.g()).all(|j| (0..self.g()).any(|i| (self.q[i][j].norm() - 1.0).abs() > 1e-12))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `W_{lambda,Q,1}`: t's twisted by lambda, gammas commute.
    Nc,
    /// `W_{1,Q,lambda}`: hatted t's commute, hatted gammas twisted by lambda.
    Gerby,
}

/// `phase * scalar * t^a g^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct QMonomial {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub phase: Phase,
    pub scalar: Complex64,
}

impl QMonomial {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Self {
        QMonomial {
            a,
            b,
            phase: Phase::ZERO,
            scalar: Complex64::new(1.0, 0.0),
        }
    }

    pub fn one(g: usize) -> Self {
        QMonomial::new(vec![0; g], vec![0; g])
    }

    pub fn coefficient(&self) -> Complex64 {
        self.scalar * self.phase.embed()
    }
}

/// Exponent of the W-normal-form phase of `t^a . t^c`: moving each `t_j^(c_j)`
/// left past `t_i^(a_i)` for `i > j` contributes `lambda_ji^(-a_i c_j)`.
pub fn w_phase(anti: &[Vec<i64>], n: i64, a: &[i64], c: &[i64]) -> Phase {
    let g = a.len();
    let mut e = 0i64;
    for i in 0..g {
        for j in 0..i {
            e -= a[i] * c[j] * anti[j][i];
        }
    }
    Phase::new(e, n)
}

fn check_dims(lambda: &BilinearCocycle, q: Option<&PeriodMatrix>, vecs: &[&[i64]]) -> Result<()> {
    let g = lambda.g();
    if let Some(q) = q {
        if q.g() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: q.g(),
            });
        }
    }
    for v in vecs {
        if v.len() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: v.len(),
            });
        }
    }
    Ok(())
}

fn q_power(q: &PeriodMatrix, i: usize, j: usize, k: i64) -> Complex64 {
    if k == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        q.entry(i, j).powi(k as i32)
    }
}

/// Product of two normal-form monomials.
pub fn mul_monomial(
    x: &QMonomial,
    y: &QMonomial,
    lambda: &BilinearCocycle,
    q: &PeriodMatrix,
    side: Side,
) -> Result<QMonomial> {
    check_dims(lambda, Some(q), &[&x.a, &x.b, &y.a, &y.b])?;
    let g = lambda.g();
    let anti = antisymmetrize(lambda);
    let n = lambda.order();
    // Move g^(x.b) right past t^(y.a).
    let mut scalar = x.scalar * y.scalar;
    for i in 0..g {
        for j in 0..g {
            let k = x.b[j] * y.a[i];
            if k != 0 {
                scalar *= match side {
                    Side::Nc => q_power(q, i, j, k),
                    Side::Gerby => q_power(q, j, i, k),
                };
            }
        }
    }
    let twist = match side {
        Side::Nc => w_phase(&anti, n, &x.a, &y.a),
        Side::Gerby => w_phase(&anti, n, &x.b, &y.b),
    };
    Ok(QMonomial {
        a: x.a.iter().zip(&y.a).map(|(p, r)| p + r).collect(),
        b: x.b.iter().zip(&y.b).map(|(p, r)| p + r).collect(),
        phase: x.phase + y.phase + twist,
        scalar,
    })
}

/// Finite sum of normal-form monomials with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial {
    g: usize,
    terms: BTreeMap<(Vec<i64>, Vec<i64>), Complex64>,
}

impl QPolynomial {
    pub fn zero(g: usize) -> Self {
        QPolynomial {
            g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: usize) -> Self {
        Self::from_monomial(&QMonomial::one(g))
    }

    pub fn from_monomial(m: &QMonomial) -> Self {
        let mut p = Self::zero(m.a.len());
        p.add_term(m.a.clone(), m.b.clone(), m.coefficient());
        p
    }

    /// A polynomial in the `t`s only.
    pub fn from_t_terms(g: usize, terms: impl IntoIterator<Item = (Vec<i64>, Complex64)>) -> Self {
        let mut p = Self::zero(g);
        for (a, c) in terms {
            p.add_term(a, vec![0; g], c);
        }
        p
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[i64], b: &[i64]) -> Complex64 {
        self.terms
            .get(&(a.to_vec(), b.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, a: Vec<i64>, b: Vec<i64>, c: Complex64) {
        let key = (a, b);
        let sum = self.terms.get(&key).copied().unwrap_or_default() + c;
        if sum.re == 0.0 && sum.im == 0.0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_pure_t(&self) -> bool {
        self.terms.keys().all(|(_, b)| b.iter().all(|&x| x == 0))
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for ((a, b), c) in &self.terms {
            worst = worst.max((c - other.coeff(a, b)).norm());
        }
        for ((a, b), c) in &other.terms {
            if !self.terms.contains_key(&(a.clone(), b.clone())) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

/// Product in `W_{lambda,Q,1}` or `W_{1,Q,lambda}`.
pub fn mul_crossed(
    f: &QPolynomial,
    h: &QPolynomial,
    lambda: &BilinearCocycle,
    q: &PeriodMatrix,
    side: Side,
) -> Result<QPolynomial> {
    check_dims(lambda, Some(q), &[])?;
    if f.g != lambda.g() || h.g != lambda.g() {
        return Err(Error::DimensionMismatch {
            expected: lambda.g(),
            found: if f.g != lambda.g() { f.g } else { h.g },
        });
    }
    let mut out = QPolynomial::zero(f.g);
    for ((a, b), x) in &f.terms {
        for ((c, d), y) in &h.terms {
            let m = mul_monomial(
                &QMonomial::new(a.clone(), b.clone()),
                &QMonomial::new(c.clone(), d.clone()),
                lambda,
                q,
                side,
            )?;
            out.add_term(m.a.clone(), m.b.clone(), m.coefficient() * x * y);
        }
    }
    Ok(out)
}

/// Product in `W_lambda`; both factors must be pure `t` polynomials.
pub fn mul_w(f: &QPolynomial, h: &QPolynomial, lambda: &BilinearCocycle) -> Result<QPolynomial> {
    if !f.is_pure_t() || !h.is_pure_t() {
        return Err(Error::GradingMismatch("W_lambda elements have no gamma part".into()));
    }
    mul_crossed(f, h, lambda, &PeriodMatrix::ones(lambda.g()), Side::Nc)
}

/// Right action `t^a . gamma_j = prod_i q_ij^(-a_i) t^a` on `W_lambda`.
pub fn gamma_action(f: &QPolynomial, j: usize, q: &PeriodMatrix) -> Result<QPolynomial> {
    if j >= q.g() {
        return Err(Error::IndexOutOfRange {
            index: j,
            bound: q.g(),
        });
    }
    if f.g != q.g() {
        return Err(Error::DimensionMismatch {
            expected: q.g(),
            found: f.g,
        });
    }
    if !f.is_pure_t() {
        return Err(Error::GradingMismatch("gamma acts on W_lambda elements only".into()));
    }
    let mut out = QPolynomial::zero(f.g);
    for ((a, b), x) in &f.terms {
        let mut s = *x;
        for (i, &ai) in a.iter().enumerate() {
            s *= q_power(q, i, j, -ai);
        }
        out.add_term(a.clone(), b.clone(), s);
    }
    Ok(out)
}

/// Element of `P_lambda = C[Gamma-hat] (x) W_lambda`, keyed by
/// `(c, a)` for the basis vector `th^c (x) t^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct PModuleElement {
    g: usize,
    terms: BTreeMap<(Vec<i64>, Vec<i64>), Complex64>,
}

impl PModuleElement {
    pub fn zero(g: usize) -> Self {
        PModuleElement {
            g,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(c: Vec<i64>, a: Vec<i64>) -> Self {
        let mut v = Self::zero(c.len());
        v.add_term(c, a, Complex64::new(1.0, 0.0));
        v
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, c: &[i64], a: &[i64]) -> Complex64 {
        self.terms
            .get(&(c.to_vec(), a.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, c: Vec<i64>, a: Vec<i64>, x: Complex64) {
        let key = (c, a);
        let sum = self.terms.get(&key).copied().unwrap_or_default() + x;
        if sum.re == 0.0 && sum.im == 0.0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = Self::zero(self.g);
        for ((c, a), x) in &self.terms {
            out.add_term(c.clone(), a.clone(), x * k);
        }
        out
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for ((c, a), x) in &self.terms {
            worst = worst.max((x - other.coeff(c, a)).norm());
        }
        for ((c, a), x) in &other.terms {
            if !self.terms.contains_key(&(c.clone(), a.clone())) {
                worst = worst.max(x.norm());
            }
        }
        worst
    }
}

fn check_index(i: usize, g: usize) -> Result<()> {
    if i < g {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, bound: g })
    }
}

/// `(psi (x) phi) . gamma_i = psi th_i^-1 (x) phi(t_1 q_1i^-1, ..., t_g q_gi^-1)`.
pub fn pmodule_act_gamma(v: &PModuleElement, i: usize, q: &PeriodMatrix) -> Result<PModuleElement> {
    check_index(i, q.g())?;
    let mut out = PModuleElement::zero(v.g);
    for ((c, a), x) in &v.terms {
        let mut s = *x;
        for (k, &ak) in a.iter().enumerate() {
            s *= q_power(q, k, i, -ak);
        }
        let mut c2 = c.clone();
        c2[i] -= 1;
        out.add_term(c2, a.clone(), s);
    }
    Ok(out)
}

/// `gh_i . (psi (x) phi) = psi(th_1 q_i1, ..., th_g q_ig) (x) t_i phi`.
pub fn pmodule_act_gammahat(
    v: &PModuleElement,
    i: usize,
    lambda: &BilinearCocycle,
    q: &PeriodMatrix,
) -> Result<PModuleElement> {
    check_index(i, q.g())?;
    check_dims(lambda, Some(q), &[])?;
    let anti = antisymmetrize(lambda);
    let mut e = vec![0; v.g];
    e[i] = 1;
    let mut out = PModuleElement::zero(v.g);
    for ((c, a), x) in &v.terms {
        let mut s = *x;
        for (k, &ck) in c.iter().enumerate() {
            s *= q_power(q, i, k, ck);
        }
        let phase = w_phase(&anti, lambda.order(), &e, a);
        let a2: Vec<i64> = a.iter().zip(&e).map(|(p, r)| p + r).collect();
        out.add_term(c.clone(), a2, s * phase.embed());
    }
    Ok(out)
}

/// Exact phase `p` with `gh_i gh_j v = p . gh_j gh_i v` on a basis vector,
/// read off from the normal-form phases.
pub fn gammahat_commutator_phase(lambda: &BilinearCocycle, i: usize, j: usize, a: &[i64]) -> Phase {
    let anti = antisymmetrize(lambda);
    let n = lambda.order();
    let g = lambda.g();
    let unit = |k: usize| {
        let mut e = vec![0; g];
        e[k] = 1;
        e
    };
    let (ei, ej) = (unit(i), unit(j));
    let aj: Vec<i64> = a.iter().zip(&ej).map(|(x, y)| x + y).collect();
    let ai: Vec<i64> = a.iter().zip(&ei).map(|(x, y)| x + y).collect();
    let first = w_phase(&anti, n, &ej, a) + w_phase(&anti, n, &ei, &aj);
    let second = w_phase(&anti, n, &ei, a) + w_phase(&anti, n, &ej, &ai);
    first - second
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn t_mono(a: Vec<i64>) -> QMonomial {
        let g = a.len();
        QMonomial::new(a, vec![0; g])
    }

    #[test]
    fn t2_t1_reorders_with_inverse_phase() {
        let lambda = BilinearCocycle::new(4, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let q = PeriodMatrix::ones(2);
        let m = mul_monomial(&t_mono(vec![0, 1]), &t_mono(vec![1, 0]), &lambda, &q, Side::Nc).unwrap();
        assert_eq!(m.a, vec![1, 1]);
        assert_eq!(m.phase, Phase::new(-1, 4));
        let m = mul_monomial(&t_mono(vec![1, 0]), &t_mono(vec![0, 1]), &lambda, &q, Side::Nc).unwrap();
        assert_eq!(m.phase, Phase::ZERO);
    }

    #[test]
    fn gamma_past_t_picks_up_q() {
        let lambda = BilinearCocycle::trivial(1, 2);
        let q = PeriodMatrix::new(vec![vec![c(2., 0.)]]).unwrap();
        let gamma = QMonomial::new(vec![0], vec![1]);
        let m = mul_monomial(&gamma, &t_mono(vec![1]), &lambda, &q, Side::Nc).unwrap();
        assert_eq!((m.a.clone(), m.b.clone()), (vec![1], vec![1]));
        assert_eq!(m.coefficient(), c(2., 0.));
        // The defining relation t g = q^-1 g t.
        let tg = mul_monomial(&t_mono(vec![1]), &gamma, &lambda, &q, Side::Nc).unwrap();
        assert_eq!(tg.coefficient(), m.coefficient() / 2.0);
    }

    #[test]
    fn gerby_relations() {
        let lambda = BilinearCocycle::new(3, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let q = PeriodMatrix::new(vec![vec![c(2., 0.), c(3., 0.)], vec![c(5., 0.), c(7., 0.)]]).unwrap();
        let gh = |j: usize| {
            let mut b = vec![0, 0];
            b[j] = 1;
            QMonomial::new(vec![0, 0], b)
        };
        let th = |i: usize| {
            let mut a = vec![0, 0];
            a[i] = 1;
            QMonomial::new(a, vec![0, 0])
        };
        // gh_j th_i = q_ji th_i gh_j
        let m = mul_monomial(&gh(0), &th(1), &lambda, &q, Side::Gerby).unwrap();
        assert!((m.coefficient() - c(3., 0.)).norm() < 1e-15);
        // gh_1 gh_2 = zeta_3 gh_2 gh_1
        let p12 = mul_monomial(&gh(0), &gh(1), &lambda, &q, Side::Gerby).unwrap();
        let p21 = mul_monomial(&gh(1), &gh(0), &lambda, &q, Side::Gerby).unwrap();
        assert_eq!(p12.phase - p21.phase, Phase::new(1, 3));
        // Hatted t's commute.
        let a = mul_monomial(&th(0), &th(1), &lambda, &q, Side::Gerby).unwrap();
        let b = mul_monomial(&th(1), &th(0), &lambda, &q, Side::Gerby).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gamma_action_examples() {
        let q = PeriodMatrix::new(vec![vec![c(2., 0.)]]).unwrap();
        let one = QPolynomial::one(1);
        assert_eq!(gamma_action(&one, 0, &q).unwrap(), one);
        let t3 = QPolynomial::from_t_terms(1, [(vec![3], c(1., 0.))]);
        let out = gamma_action(&t3, 0, &q).unwrap();
        assert!((out.coeff(&[3], &[0]) - c(0.125, 0.)).norm() < 1e-15);
        assert!(gamma_action(&t3, 1, &q).is_err());
    }

    #[test]
    fn pmodule_unit_vector() {
        let lambda = BilinearCocycle::new(3, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let q = PeriodMatrix::new(vec![vec![c(2., 0.), c(3., 0.)], vec![c(5., 0.), c(7., 0.)]]).unwrap();
        let v = PModuleElement::basis(vec![0, 0], vec![0, 0]);
        assert_eq!(pmodule_act_gamma(&v, 1, &q).unwrap(), PModuleElement::basis(vec![0, -1], vec![0, 0]));
        assert_eq!(
            pmodule_act_gammahat(&v, 0, &lambda, &q).unwrap(),
            PModuleElement::basis(vec![0, 0], vec![1, 0])
        );
        let ones = PeriodMatrix::ones(2);
        let w = PModuleElement::basis(vec![1, 2], vec![3, -1]);
        assert_eq!(pmodule_act_gamma(&w, 0, &ones).unwrap(), PModuleElement::basis(vec![0, 2], vec![3, -1]));
    }

    #[test]
    fn gammahat_relation_phase_is_lambda() {
        let lambda = BilinearCocycle::new(3, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let q = PeriodMatrix::new(vec![vec![c(2., 0.), c(0.5, 1.)], vec![c(1.5, 0.), c(-1., 1.)]]).unwrap();
        for c0 in -2..=2 {
            for a0 in -2..=2 {
                for a1 in -2..=2 {
                    let a = vec![a0, a1];
                    assert_eq!(gammahat_commutator_phase(&lambda, 0, 1, &a), Phase::new(1, 3));
                    let v = PModuleElement::basis(vec![c0, 1], a);
                    let lhs = pmodule_act_gammahat(&pmodule_act_gammahat(&v, 1, &lambda, &q).unwrap(), 0, &lambda, &q)
                        .unwrap();
                    let rhs = pmodule_act_gammahat(&pmodule_act_gammahat(&v, 0, &lambda, &q).unwrap(), 1, &lambda, &q)
                        .unwrap()
                        .scale(Phase::new(1, 3).embed());
                    assert!(lhs.max_deviation(&rhs) < 1e-12);
                }
            }
        }
    }

    fn small_vec(g: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-2i64..=2, g)
    }

    fn nonzero_complex() -> impl Strategy<Value = Complex64> {
        (0.5f64..2.0, 0.0f64..6.3).prop_map(|(r, th)| Complex64::from_polar(r, th))
    }

    fn setup(g: usize) -> impl Strategy<Value = (BilinearCocycle, PeriodMatrix)> {
        (
            2i64..=12,
            proptest::collection::vec(0i64..12, g * g),
            proptest::collection::vec(nonzero_complex(), g * g),
        )
            .prop_map(move |(n, m, q)| {
                let m = (0..g).map(|i| m[i * g..(i + 1) * g].to_vec()).collect();
                let q = (0..g).map(|i| q[i * g..(i + 1) * g].to_vec()).collect();
                (BilinearCocycle::new(n, m).unwrap(), PeriodMatrix::new(q).unwrap())
            })
    }

    proptest! {
        #[test]
        fn monomial_products_are_associative(
            (lambda, q) in setup(3),
            xs in proptest::collection::vec(small_vec(3), 6),
            gerby in any::<bool>(),
        ) {
            let side = if gerby { Side::Gerby } else { Side::Nc };
            let m = |k: usize| QMonomial::new(xs[2 * k].clone(), xs[2 * k + 1].clone());
            let (x, y, z) = (m(0), m(1), m(2));
            let left = mul_monomial(&mul_monomial(&x, &y, &lambda, &q, side)?, &z, &lambda, &q, side)?;
            let right = mul_monomial(&x, &mul_monomial(&y, &z, &lambda, &q, side)?, &lambda, &q, side)?;
            prop_assert_eq!(&left.a, &right.a);
            prop_assert_eq!(&left.b, &right.b);
            prop_assert_eq!(left.phase, right.phase);
            prop_assert!((left.scalar - right.scalar).norm() <= 1e-9 * left.scalar.norm().max(1.0));
        }

        #[test]
        fn gamma_acts_by_automorphisms(
            (lambda, q) in setup(2),
            a in small_vec(2), b in small_vec(2), j in 0usize..2, k in 0usize..2,
        ) {
            let f = QPolynomial::from_t_terms(2, [(a.clone(), c(1., 0.5)), (b.clone(), c(-2., 0.))]);
            let h = QPolynomial::from_t_terms(2, [(b, c(0.5, 0.)), (a, c(0., 1.))]);
            let lhs = gamma_action(&mul_w(&f, &h, &lambda)?, j, &q)?;
            let rhs = mul_w(&gamma_action(&f, j, &q)?, &gamma_action(&h, j, &q)?, &lambda)?;
            prop_assert!(lhs.max_deviation(&rhs) < 1e-9);
            let jk = gamma_action(&gamma_action(&f, j, &q)?, k, &q)?;
            let kj = gamma_action(&gamma_action(&f, k, &q)?, j, &q)?;
            prop_assert!(jk.max_deviation(&kj) < 1e-9);
        }

        #[test]
        fn pmodule_actions_commute(
            (lambda, q) in setup(2),
            cc in small_vec(2), a in small_vec(2), i in 0usize..2, k in 0usize..2,
        ) {
            let v = PModuleElement::basis(cc, a);
            let lhs = pmodule_act_gammahat(&pmodule_act_gamma(&v, k, &q)?, i, &lambda, &q)?;
            let rhs = pmodule_act_gamma(&pmodule_act_gammahat(&v, i, &lambda, &q)?, k, &q)?;
            prop_assert!(lhs.max_deviation(&rhs) <= 1e-9 * (1.0 + lhs.max_deviation(&PModuleElement::zero(2))));
            let ik = pmodule_act_gamma(&pmodule_act_gamma(&v, i, &q)?, k, &q)?;
            let ki = pmodule_act_gamma(&pmodule_act_gamma(&v, k, &q)?, i, &q)?;
            prop_assert!(ik.max_deviation(&ki) <= 1e-9 * (1.0 + ik.max_deviation(&PModuleElement::zero(2))));
        }

        #[test]
        fn trivial_parameters_commute((_, _) in setup(2), xs in proptest::collection::vec(small_vec(2), 4), gerby in any::<bool>()) {
            let side = if gerby { Side::Gerby } else { Side::Nc };
            let lambda = BilinearCocycle::trivial(2, 5);
            let q = PeriodMatrix::ones(2);
            let x = QMonomial::new(xs[0].clone(), xs[1].clone());
            let y = QMonomial::new(xs[2].clone(), xs[3].clone());
            prop_assert_eq!(
                mul_monomial(&x, &y, &lambda, &q, side)?,
                mul_monomial(&y, &x, &lambda, &q, side)?
            );
        }
    }
}
