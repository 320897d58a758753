//! 2-cochains on the character lattice `Z^g` with values in roots of unity.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Phase, Result};

/// A 2-cochain `Z^g x Z^g -> Q/Z`, possibly only defined on part of the lattice.
pub trait Cochain {
    fn dim(&self) -> usize;
    fn eval(&self, s: &[i64], t: &[i64]) -> Result<Phase>;
}

/// The bilinear cocycle `lambda(s, t) = zeta_N^(s^T M t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearCocycle {
    g: usize,
    n: i64,
    m: Vec<Vec<i64>>,
}

impl BilinearCocycle {
    /// Entries are reduced into `[0, N)`.
    pub fn new(n: i64, m: Vec<Vec<i64>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvariantViolated("order N must be positive".into()));
        }
        let g = m.len();
        let mut m = m;
        for row in &mut m {
            if row.len() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: row.len(),
                });
            }
            for x in row.iter_mut() {
                *x = x.rem_euclid(n);
            }
        }
        Ok(BilinearCocycle { g, n, m })
    }

    pub fn trivial(g: usize, n: i64) -> Self {
        BilinearCocycle {
            g,
            n: n.max(1),
            m: vec![vec![0; g]; g],
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn order(&self) -> i64 {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    /// Integer exponent `s^T M t` (not reduced).
    pub fn exponent(&self, s: &[i64], t: &[i64]) -> i64 {
        let mut acc: i64 = 0;
        for (i, si) in s.iter().enumerate() {
            if *si == 0 {
                continue;
            }
            for (j, tj) in t.iter().enumerate() {
                acc += si * self.m[i][j] * tj;
            }
        }
        acc
    }

    /// Pointwise product of cocycles with the same `g`, on the common order `lcm(N, N')`.
    pub fn product(&self, other: &BilinearCocycle) -> Result<BilinearCocycle> {
        check_dim(self.g, other.g)?;
        let l = num_integer::lcm(self.n, other.n);
        let (a, b) = (l / self.n, l / other.n);
        let m = (0..self.g)
            .map(|i| (0..self.g).map(|j| a * self.m[i][j] + b * other.m[i][j]).collect())
            .collect();
        BilinearCocycle::new(l, m)
    }

    /// The W_lambda commutation parameter `lambda_{ij}` for `i < j`, so that
    /// `t_i t_j = lambda_{ij} t_j t_i`; it is `Lambda(e_i ^ e_j)`.
    pub fn commutation_phase(&self, i: usize, j: usize) -> Phase {
        Phase::new(self.m[i][j] - self.m[j][i], self.n)
    }
}

impl Cochain for BilinearCocycle {
    fn dim(&self) -> usize {
        self.g
    }

    fn eval(&self, s: &[i64], t: &[i64]) -> Result<Phase> {
        eval_cocycle(self, s, t)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn eval_cocycle(lambda: &BilinearCocycle, s: &[i64], t: &[i64]) -> Result<Phase> {
    check_dim(lambda.g, s.len())?;
    check_dim(lambda.g, t.len())?;
    Ok(Phase::new(lambda.exponent(s, t), lambda.n))
}

/// An axis-aligned box `lo[i] <= t[i] <= hi[i]` in `Z^g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn cube(g: usize, radius: i64) -> Self {
        Window {
            lo: vec![-radius; g],
            hi: vec![radius; g],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        t.len() == self.dim()
            && t
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| if h >= l { (h - l + 1) as usize } else { 0 })
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major position of a point inside the window.
    fn offset(&self, t: &[i64]) -> usize {
        let mut idx = 0usize;
        for i in 0..self.dim() {
            let width = (self.hi[i] - self.lo[i] + 1) as usize;
            idx = idx * width + (t[i] - self.lo[i]) as usize;
        }
        idx
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let total = self.len();
        (0..total).map(move |mut k| {
            let mut t = vec![0; self.dim()];
            for i in (0..self.dim()).rev() {
                let width = (self.hi[i] - self.lo[i] + 1) as usize;
                t[i] = self.lo[i] + (k % width) as i64;
                k /= width;
            }
            t
        })
    }
}

/// A 1-cochain `alpha` tabulated on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainTable {
    window: Window,
    values: Vec<Phase>,
}

impl CochainTable {
    pub fn from_fn(window: Window, f: impl Fn(&[i64]) -> Phase) -> Self {
        let values = window.points().map(|t| f(&t)).collect();
        CochainTable { window, values }
    }

    pub fn constant(window: Window, value: Phase) -> Self {
        CochainTable::from_fn(window, |_| value)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn get(&self, t: &[i64]) -> Result<Phase> {
        if !self.window.contains(t) {
            return Err(Error::OutOfWindow { point: t.to_vec() });
        }
        Ok(self.values[self.window.offset(t)])
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> CochainTable {
        CochainTable {
            window: self.window.clone(),
            values: self.values.iter().map(|p| -*p).collect(),
        }
    }
}

/// A general 2-cochain tabulated on `window x window`.
#[derive(Debug, Clone)]
pub struct TabulatedCochain {
    window: Window,
    values: Vec<Phase>,
}

impl TabulatedCochain {
    pub fn from_fn(window: Window, f: impl Fn(&[i64], &[i64]) -> Phase) -> Self {
        let pts: Vec<Vec<i64>> = window.points().collect();
        let mut values = Vec::with_capacity(pts.len() * pts.len());
        for s in &pts {
            for t in &pts {
                values.push(f(s, t));
            }
        }
        TabulatedCochain { window, values }
    }
}

impl Cochain for TabulatedCochain {
    fn dim(&self) -> usize {
        self.window.dim()
    }

    fn eval(&self, s: &[i64], t: &[i64]) -> Result<Phase> {
        for p in [s, t] {
            if !self.window.contains(p) {
                return Err(Error::OutOfWindow { point: p.to_vec() });
            }
        }
        let n = self.window.len();
        Ok(self.values[self.window.offset(s) * n + self.window.offset(t)])
    }
}

/// `lambda'(t1, t2) = lambda(t1, t2) alpha(t1) alpha(t2) alpha(t1 t2)^-1`.
#[derive(Debug, Clone, Copy)]
pub struct Coboundary<'a, C: ?Sized> {
    pub alpha: &'a CochainTable,
    pub base: &'a C,
}

impl<C: Cochain + ?Sized> Cochain for Coboundary<'_, C> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, s: &[i64], t: &[i64]) -> Result<Phase> {
        let sum: Vec<i64> = s.iter().zip(t).map(|(a, b)| a + b).collect();
        Ok(self.base.eval(s, t)? + self.alpha.get(s)? + self.alpha.get(t)? - self.alpha.get(&sum)?)
    }
}

pub fn coboundary<'a, C: Cochain + ?Sized>(
    alpha: &'a CochainTable,
    lambda: &'a C,
) -> Coboundary<'a, C> {
    Coboundary {
        alpha,
        base: lambda,
    }
}

/// Outcome of [`check_cocycle`].
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleCheck {
    pub holds: bool,
    pub triples_checked: usize,
    /// First triple `(t1, t2, t3)` where the four-factor product is not 1, with its value.
    pub witness: Option<(Vec<i64>, Vec<i64>, Vec<i64>, Phase)>,
}

/// Checks `lambda(t2,t3) lambda(t1t2,t3)^-1 lambda(t1,t2t3) lambda(t1,t2)^-1 = 1`
/// for every triple in `window` whose products the cochain can evaluate.
/// Triples that leave the cochain's domain are skipped.
pub fn check_cocycle<C: Cochain + ?Sized>(lambda: &C, window: &Window) -> Result<CocycleCheck> {
    check_dim(lambda.dim(), window.dim())?;
    let pts: Vec<Vec<i64>> = window.points().collect();
    let pts = &pts;
    check_cocycle_on(lambda, pts.iter().flat_map(|a| {
        pts.iter()
            .flat_map(move |b| pts.iter().map(move |c| (a.as_slice(), b.as_slice(), c.as_slice())))
    }))
}

/// As [`check_cocycle`], over an explicit list of triples.
pub fn check_cocycle_on<'a, C, I>(lambda: &C, triples: I) -> Result<CocycleCheck>
where
    C: Cochain + ?Sized,
    I: IntoIterator<Item = (&'a [i64], &'a [i64], &'a [i64])>,
{
    let mut checked = 0usize;
    for (t1, t2, t3) in triples {
        let t12: Vec<i64> = t1.iter().zip(t2).map(|(a, b)| a + b).collect();
        let t23: Vec<i64> = t2.iter().zip(t3).map(|(a, b)| a + b).collect();
        let defect = (|| -> Result<Phase> {
            Ok(lambda.eval(t2, t3)? - lambda.eval(&t12, t3)? + lambda.eval(t1, &t23)?
                - lambda.eval(t1, t2)?)
        })();
        let defect = match defect {
            Ok(d) => d,
            Err(Error::OutOfWindow { .. }) => continue,
            Err(e) => return Err(e),
        };
        checked += 1;
        if !defect.is_zero() {
            return Ok(CocycleCheck {
                holds: false,
                triples_checked: checked,
                witness: Some((t1.to_vec(), t2.to_vec(), t3.to_vec(), defect)),
            });
        }
    }
    if checked == 0 {
        return Err(Error::WindowTooSmall);
    }
    Ok(CocycleCheck {
        holds: true,
        triples_checked: checked,
        witness: None,
    })
}

/// `A = M - M^T mod N`, the matrix of `Lambda(s ^ t) = lambda(s,t) lambda(t,s)^-1`.
pub fn antisymmetrize(lambda: &BilinearCocycle) -> Vec<Vec<i64>> {
    let g = lambda.g;
    (0..g)
        .map(|i| {
            (0..g)
                .map(|j| (lambda.m[i][j] - lambda.m[j][i]).rem_euclid(lambda.n))
                .collect()
        })
        .collect()
}

/// Bilinear cocycles are cohomologous iff their antisymmetrizations agree.
pub fn cohomologous(a: &BilinearCocycle, b: &BilinearCocycle) -> Result<bool> {
    check_dim(a.g, b.g)?;
    let l = num_integer::lcm(a.n, b.n);
    let (aa, ab) = (antisymmetrize(a), antisymmetrize(b));
    Ok((0..a.g).all(|i| {
        (0..a.g).all(|j| ((l / a.n) * aa[i][j] - (l / b.n) * ab[i][j]).rem_euclid(l) == 0)
    }))
}

/// `alpha(t) = zeta_2N^(t^T S t - sum_i S_ii t_i)` on `window`, so that
/// `d alpha(s, t) = zeta_N^(-s^T S t)`.
pub fn bounding_cochain(s: &[Vec<i64>], n: i64, window: Window) -> Result<CochainTable> {
    let g = s.len();
    check_dim(g, window.dim())?;
    for (i, row) in s.iter().enumerate() {
        check_dim(g, row.len())?;
        for j in 0..g {
            if row[j] != s[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(CochainTable::from_fn(window, |t| {
        let mut q: i64 = 0;
        for i in 0..g {
            for j in 0..g {
                q += t[i] * s[i][j] * t[j];
            }
            q -= s[i][i] * t[i];
        }
        debug_assert_eq!(q.rem_euclid(2), 0);
        Phase::new(q / 2, n)
    }))
}

/// A cochain `alpha` on `window` with `coboundary(alpha, from) = to`, when
/// the two bilinear cocycles are cohomologous.
pub fn explicit_coboundary(
    from: &BilinearCocycle,
    to: &BilinearCocycle,
    window: Window,
) -> Result<Option<CochainTable>> {
    if !cohomologous(from, to)? {
        return Ok(None);
    }
    let l = num_integer::lcm(from.n, to.n);
    let g = from.g;
    // D = M_to - M_from is symmetric mod l; dalpha must equal zeta_l^(s^T D t).
    let d: Vec<Vec<i64>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| ((l / to.n) * to.m[i][j] - (l / from.n) * from.m[i][j]).rem_euclid(l))
                .collect()
        })
        .collect();
    let sym: Vec<Vec<i64>> = (0..g)
        .map(|i| (0..g).map(|j| -d[i.min(j)][i.max(j)]).collect())
        .collect();
    bounding_cochain(&sym, l, window).map(Some)
}
