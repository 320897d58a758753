//! Twisted equivariant objects over a finite abelian group `G` acting on a
//! finite set `S`, and the twisted algebra `A_phi`.
//!
//! An object is an `S`-graded vector space `V` with maps
//! `rho_{g,s}: V_s -> V_{s.g}` such that
//! `rho_{g2, s.g1} rho_{g1, s} = phi(g1, g2) rho_{g1 g2, s}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::{FiniteAbelianGroup, GSet};
use crate::linalg::{self, CMatrix};
use crate::{Error, Phase, Result, TOLERANCE};

pub use crate::group::GroupCocycleTable;

#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantObject {
    base: GSet,
    dims: Vec<usize>,
    /// `rho[g][s]`, a `dims[s.g] x dims[s]` matrix.
    rho: Vec<Vec<CMatrix>>,
}

/// A family of fiberwise maps `chi_s: A_s -> B_s`.
pub type Morphism = Vec<CMatrix>;

impl EquivariantObject {
    pub fn new(base: GSet, dims: Vec<usize>, rho: Vec<Vec<CMatrix>>) -> Result<Self> {
        let n = base.group().order();
        if dims.len() != base.len() {
            return Err(Error::GradingMismatch(format!(
                "{} fiber dimensions for {} base points",
                dims.len(),
                base.len()
            )));
        }
        if rho.len() != n {
            return Err(Error::GradingMismatch(format!("{} linearization maps for a group of order {n}", rho.len())));
        }
        for (g, row) in rho.iter().enumerate() {
            if row.len() != base.len() {
                return Err(Error::GradingMismatch(format!("rho_{g} has {} blocks", row.len())));
            }
            for (s, m) in row.iter().enumerate() {
                let t = base.act(s, g);
                if m.shape() != (dims[t], dims[s]) {
                    return Err(Error::GradingMismatch(format!(
                        "rho_{g} at point {s} has shape {:?}, expected {:?}",
                        m.shape(),
                        (dims[t], dims[s])
                    )));
                }
            }
        }
        Ok(EquivariantObject { base, dims, rho })
    }

    pub fn base(&self) -> &GSet {
        &self.base
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.base.group()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn rho(&self, g: usize, s: usize) -> &CMatrix {
        &self.rho[g][s]
    }

    /// `rho_g` assembled into one matrix on `V = sum_s V_s`.
    pub fn rho_total(&self, g: usize) -> CMatrix {
        let offsets = offsets(&self.dims);
        let n = self.total_dim();
        let mut out = linalg::zeros(n, n);
        for s in 0..self.base.len() {
            let t = self.base.act(s, g);
            out.view_mut((offsets[t], offsets[s]), (self.dims[t], self.dims[s]))
                .copy_from(&self.rho[g][s]);
        }
        out
    }

    /// Conjugates each fiber by an invertible matrix: `rho'_{g,s} = P_{s.g} rho_{g,s} P_s^-1`.
    pub fn conjugate(&self, p: &[CMatrix]) -> Result<Self> {
        let mut inv = Vec::with_capacity(p.len());
        for (s, m) in p.iter().enumerate() {
            if m.shape() != (self.dims[s], self.dims[s]) {
                return Err(Error::GradingMismatch(format!("change of basis at point {s} has wrong shape")));
            }
            inv.push(linalg::inverse(m).ok_or(Error::Singular)?);
        }
        let rho = (0..self.group().order())
            .map(|g| {
                (0..self.base.len())
                    .map(|s| &p[self.base.act(s, g)] * &self.rho[g][s] * &inv[s])
                    .collect()
            })
            .collect();
        Ok(EquivariantObject {
            base: self.base.clone(),
            dims: self.dims.clone(),
            rho,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::GradingMismatch("direct sum over different bases".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let rho = (0..self.group().order())
            .map(|g| {
                (0..self.base.len())
                    .map(|s| linalg::direct_sum(&[self.rho[g][s].clone(), other.rho[g][s].clone()]))
                    .collect()
            })
            .collect();
        Ok(EquivariantObject {
            base: self.base.clone(),
            dims,
            rho,
        })
    }
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

/// Outcome of [`check_linearization`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizationCheck {
    pub holds: bool,
    pub max_deviation: f64,
    /// `(g1, g2, s)` with the largest deviation above tolerance.
    pub witness: Option<(usize, usize, usize)>,
}

fn check_same_group(obj: &EquivariantObject, phi: &GroupCocycleTable) -> Result<()> {
    if obj.group() != phi.group() {
        return Err(Error::GradingMismatch("cocycle and object live on different groups".into()));
    }
    Ok(())
}

pub fn check_linearization(obj: &EquivariantObject, phi: &GroupCocycleTable) -> Result<LinearizationCheck> {
    check_same_group(obj, phi)?;
    let grp = obj.group();
    let n = grp.order();
    let mut worst = 0.0;
    let mut witness = None;
    for g1 in 0..n {
        for g2 in 0..n {
            let g12 = grp.add(g1, g2);
            let p = phi.get(g1, g2).embed();
            for s in 0..obj.base.len() {
                let lhs = &obj.rho[g2][obj.base.act(s, g1)] * &obj.rho[g1][s];
                let rhs = &obj.rho[g12][s] * p;
                let dev = linalg::max_abs_diff(&lhs, &rhs);
                if dev > worst {
                    worst = dev;
                    if dev > TOLERANCE {
                        witness = Some((g1, g2, s));
                    }
                }
            }
        }
    }
    Ok(LinearizationCheck {
        holds: worst <= TOLERANCE,
        max_deviation: worst,
        witness,
    })
}

/// `free(A)`: the fiber at `s` is `sum_h A_{s.h}`; `rho_g` sends summand `h`
/// at `s` to summand `h - g` at `s.g` with factor `phi(g, h - g)`.
pub fn free(base: &GSet, a: &[usize], phi: &GroupCocycleTable) -> Result<EquivariantObject> {
    if a.len() != base.len() {
        return Err(Error::GradingMismatch(format!("{} dimensions for {} base points", a.len(), base.len())));
    }
    if base.group() != phi.group() {
        return Err(Error::GradingMismatch("cocycle and base live on different groups".into()));
    }
    let grp = base.group();
    let n = grp.order();
    let fiber = |s: usize| -> Vec<usize> { (0..n).map(|h| a[base.act(s, h)]).collect() };
    let dims: Vec<usize> = (0..base.len()).map(|s| fiber(s).iter().sum()).collect();
    let mut rho = Vec::with_capacity(n);
    for g in 0..n {
        let mut row = Vec::with_capacity(base.len());
        for s in 0..base.len() {
            let t = base.act(s, g);
            let (src, dst) = (offsets(&fiber(s)), offsets(&fiber(t)));
            let mut m = linalg::zeros(dims[t], dims[s]);
            for h in 0..n {
                let k = grp.sub(h, g);
                let w = a[base.act(s, h)];
                let p = phi.get(g, k).embed();
                for i in 0..w {
                    m[(dst[k] + i, src[h] + i)] = p;
                }
            }
            row.push(m);
        }
        rho.push(row);
    }
    EquivariantObject::new(base.clone(), dims, rho)
}

/// Dimension vector of the underlying graded space.
pub fn forget(obj: &EquivariantObject) -> Vec<usize> {
    obj.dims.clone()
}

/// Basis of the equivariant morphisms `A -> B`: families `chi_s` with
/// `rho^B_{g,s} chi_s = chi_{s.g} rho^A_{g,s}`. Generators of `G` suffice
/// because both objects carry the same twist.
pub fn hom_space(a: &EquivariantObject, b: &EquivariantObject) -> Result<Vec<Morphism>> {
    if a.base != b.base {
        return Err(Error::GradingMismatch("objects over different bases".into()));
    }
    let base = &a.base;
    let grp = base.group();
    let pts = base.len();
    // Column-major vectorization of each chi_s.
    let mut var_off = Vec::with_capacity(pts + 1);
    let mut acc = 0;
    for s in 0..pts {
        var_off.push(acc);
        acc += a.dims[s] * b.dims[s];
    }
    var_off.push(acc);
    let unknowns = acc;
    let gens: Vec<usize> = (0..grp.rank()).map(|i| grp.generator(i)).collect();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for &g in &gens {
        for s in 0..pts {
            let t = base.act(s, g);
            let (da_s, db_s, da_t, db_t) = (a.dims[s], b.dims[s], a.dims[t], b.dims[t]);
            let rb = &b.rho[g][s];
            let ra = &a.rho[g][s];
            // Entry (i, j) of rb chi_s - chi_t ra, an element of Hom(A_s, B_t).
            for i in 0..db_t {
                for j in 0..da_s {
                    let mut row = vec![Complex64::new(0.0, 0.0); unknowns];
                    for k in 0..db_s {
                        row[var_off[s] + j * db_s + k] += rb[(i, k)];
                    }
                    for k in 0..da_t {
                        row[var_off[t] + k * db_t + i] -= ra[(k, j)];
                    }
                    rows.push(row);
                }
            }
        }
    }
    let sys = CMatrix::from_fn(rows.len(), unknowns, |i, j| rows[i][j]);
    let kernel = if rows.is_empty() {
        linalg::identity(unknowns)
    } else {
        linalg::nullspace(&sys)
    };
    Ok((0..kernel.ncols())
        .map(|c| {
            (0..pts)
                .map(|s| CMatrix::from_fn(b.dims[s], a.dims[s], |i, j| kernel[(var_off[s] + j * b.dims[s] + i, c)]))
                .collect()
        })
        .collect())
}

/// Largest violation of the intertwining condition by `chi`.
pub fn morphism_defect(a: &EquivariantObject, b: &EquivariantObject, chi: &Morphism) -> f64 {
    let base = &a.base;
    let mut worst: f64 = 0.0;
    for g in 0..base.group().order() {
        for s in 0..base.len() {
            let t = base.act(s, g);
            let lhs = &b.rho[g][s] * &chi[s];
            let rhs = &chi[t] * &a.rho[g][s];
            worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    worst
}

/// Whether every component of `chi` is invertible.
pub fn is_isomorphism(chi: &Morphism) -> bool {
    chi.iter().all(|m| m.nrows() == m.ncols() && linalg::rank(m) == m.nrows())
}

/// `(A, (alpha(g) rho_g))`, linearized against `phi * d alpha`.
pub fn retwist(obj: &EquivariantObject, alpha: &[Phase]) -> Result<EquivariantObject> {
    let n = obj.group().order();
    if alpha.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.len(),
        });
    }
    let rho = obj
        .rho
        .iter()
        .zip(alpha)
        .map(|(row, p)| row.iter().map(|m| m * p.embed()).collect())
        .collect();
    Ok(EquivariantObject {
        base: obj.base.clone(),
        dims: obj.dims.clone(),
        rho,
    })
}

/// The cocycle `phi * d alpha` matching [`retwist`].
pub fn retwisted_cocycle(phi: &GroupCocycleTable, alpha: &[Phase]) -> Result<GroupCocycleTable> {
    phi.times(&GroupCocycleTable::coboundary(phi.group().clone(), alpha)?)
}

/// Average of the induced `G`-action on plain fiberwise maps `A -> B`;
/// its trace is the dimension of the invariant Hom space.
pub fn invariant_projector_trace(a: &EquivariantObject, b: &EquivariantObject) -> Result<f64> {
    if a.base != b.base {
        return Err(Error::GradingMismatch("objects over different bases".into()));
    }
    let base = &a.base;
    let grp = base.group();
    let n = grp.order();
    let pts = base.len();
    let mut total = Complex64::new(0.0, 0.0);
    for g in 0..n {
        // (g . chi)_{s.g} = rho^B_{g,s} chi_s (rho^A_{g,s})^-1; trace over fixed points s.g = s.
        for s in 0..pts {
            if base.act(s, g) != s {
                continue;
            }
            let ainv = linalg::inverse(&a.rho[g][s]).ok_or(Error::Singular)?;
            // Trace of X -> P X Q on matrices is tr(P) tr(Q).
            total += b.rho[g][s].trace() * ainv.trace();
        }
    }
    Ok(total.re / n as f64)
}

/// `A_phi`, with basis `e_{s,g}` indexed `s * |G| + g`, and product
/// `e_{s', g2} e_{s, g1} = [s' = s.g1] phi(g1, g2) e_{s, g1 g2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedAlgebra {
    base: GSet,
    phi: GroupCocycleTable,
}

/// A module over [`TwistedAlgebra`], given by the action matrix of each basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraModule {
    pub dim: usize,
    pub action: Vec<CMatrix>,
}

impl TwistedAlgebra {
    pub fn new(base: GSet, phi: GroupCocycleTable) -> Result<Self> {
        if base.group() != phi.group() {
            return Err(Error::GradingMismatch("cocycle and base live on different groups".into()));
        }
        phi.check()?;
        Ok(TwistedAlgebra { base, phi })
    }

    pub fn dim(&self) -> usize {
        self.base.len() * self.base.group().order()
    }

    fn index(&self, s: usize, g: usize) -> usize {
        s * self.base.group().order() + g
    }

    fn split(&self, k: usize) -> (usize, usize) {
        let n = self.base.group().order();
        (k / n, k % n)
    }

    /// `e_x e_y` as `(coefficient, basis index)`, or `None` when zero.
    pub fn basis_product(&self, x: usize, y: usize) -> Option<(Phase, usize)> {
        let (s2, g2) = self.split(x);
        let (s1, g1) = self.split(y);
        if s2 != self.base.act(s1, g1) {
            return None;
        }
        let g12 = self.base.group().add(g1, g2);
        Some((self.phi.get(g1, g2), self.index(s1, g12)))
    }

    /// Structure constants as vectors.
    pub fn mul(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            if x[i] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                if let Some((p, k)) = self.basis_product(i, j) {
                    out[k] += x[i] * y[j] * p.embed();
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Complex64> {
        let mut u = vec![Complex64::new(0.0, 0.0); self.dim()];
        let c = (-self.phi.get(0, 0)).embed();
        for s in 0..self.base.len() {
            u[self.index(s, 0)] = c;
        }
        u
    }

    /// Worst associativity defect over basis triples.
    pub fn associativity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let left = self
                        .basis_product(a, b)
                        .and_then(|(p, ab)| self.basis_product(ab, c).map(|(q, k)| (p + q, k)));
                    let right = self
                        .basis_product(b, c)
                        .and_then(|(p, bc)| self.basis_product(a, bc).map(|(q, k)| (p + q, k)));
                    match (left, right) {
                        (None, None) => {}
                        (Some((p, k)), Some((q, l))) if k == l => {
                            worst = worst.max((p.embed() - q.embed()).norm());
                        }
                        _ => worst = f64::INFINITY,
                    }
                }
            }
        }
        worst
    }

    fn left_multiplication(&self, x: usize) -> CMatrix {
        let d = self.dim();
        let mut m = linalg::zeros(d, d);
        for y in 0..d {
            if let Some((p, k)) = self.basis_product(x, y) {
                m[(k, y)] += p.embed();
            }
        }
        m
    }

    /// Dimension of the center.
    pub fn center_dim(&self) -> usize {
        let d = self.dim();
        // x is central iff sum_i x_i (e_i e_j - e_j e_i) = 0 for all j.
        let mut sys = linalg::zeros(d * d, d);
        for j in 0..d {
            for i in 0..d {
                if let Some((p, k)) = self.basis_product(i, j) {
                    sys[(j * d + k, i)] += p.embed();
                }
                if let Some((p, k)) = self.basis_product(j, i) {
                    sys[(j * d + k, i)] -= p.embed();
                }
            }
        }
        linalg::nullspace(&sys).ncols()
    }

    pub fn is_commutative(&self) -> bool {
        self.center_dim() == self.dim()
    }

    /// Semisimple iff the trace form `tr(L_x L_y)` is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        let d = self.dim();
        let ls: Vec<CMatrix> = (0..d).map(|x| self.left_multiplication(x)).collect();
        let form = CMatrix::from_fn(d, d, |i, j| (&ls[i] * &ls[j]).trace());
        linalg::rank(&form) == d
    }

    /// The regular left module.
    pub fn regular_module(&self) -> AlgebraModule {
        AlgebraModule {
            dim: self.dim(),
            action: (0..self.dim()).map(|x| self.left_multiplication(x)).collect(),
        }
    }

    /// Worst defect of `act(e_x) act(e_y) = act(e_x e_y)` and of the unit.
    pub fn module_defect(&self, m: &AlgebraModule) -> f64 {
        let d = self.dim();
        let zero = linalg::zeros(m.dim, m.dim);
        let mut worst: f64 = 0.0;
        for x in 0..d {
            for y in 0..d {
                let lhs = &m.action[x] * &m.action[y];
                let rhs = match self.basis_product(x, y) {
                    Some((p, k)) => &m.action[k] * p.embed(),
                    None => zero.clone(),
                };
                worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        let unit = self.unit();
        let mut u = zero;
        for (k, c) in unit.iter().enumerate() {
            u += &m.action[k] * *c;
        }
        worst.max(linalg::max_abs_diff(&u, &linalg::identity(m.dim)))
    }

    pub fn to_module(&self, obj: &EquivariantObject) -> Result<AlgebraModule> {
        if obj.base != self.base {
            return Err(Error::GradingMismatch("object lives over a different base".into()));
        }
        let off = offsets(&obj.dims);
        let dim = obj.total_dim();
        let n = self.base.group().order();
        let mut action = Vec::with_capacity(self.dim());
        for s in 0..self.base.len() {
            for g in 0..n {
                let t = self.base.act(s, g);
                let mut m = linalg::zeros(dim, dim);
                m.view_mut((off[t], off[s]), (obj.dims[t], obj.dims[s]))
                    .copy_from(&obj.rho[g][s]);
                action.push(m);
            }
        }
        Ok(AlgebraModule { dim, action })
    }

    /// Fibers are the images of the idempotents `phi(0,0)^-1 e_{s,0}`; the
    /// second component embeds each fiber into the module.
    pub fn from_module(&self, m: &AlgebraModule) -> Result<(EquivariantObject, Vec<CMatrix>)> {
        if m.action.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.action.len(),
            });
        }
        let c = (-self.phi.get(0, 0)).embed();
        let n = self.base.group().order();
        let pts = self.base.len();
        let mut embeds = Vec::with_capacity(pts);
        let mut lefts = Vec::with_capacity(pts);
        for s in 0..pts {
            let p = &m.action[self.index(s, 0)] * c;
            let image = linalg::nullspace(&(linalg::identity(m.dim) - &p));
            lefts.push(linalg::left_inverse(&image).ok_or(Error::Singular)?);
            embeds.push(image);
        }
        let dims: Vec<usize> = embeds.iter().map(|b| b.ncols()).collect();
        let rho = (0..n)
            .map(|g| {
                (0..pts)
                    .map(|s| {
                        let t = self.base.act(s, g);
                        &lefts[t] * &m.action[self.index(s, g)] * &embeds[s]
                    })
                    .collect()
            })
            .collect();
        Ok((EquivariantObject::new(self.base.clone(), dims, rho)?, embeds))
    }

    /// `Phi = [B_s]`, an isomorphism `to_module(from_module(m)) -> m`, with the
    /// worst deviation from intertwining.
    pub fn round_trip_iso(&self, m: &AlgebraModule) -> Result<(CMatrix, f64)> {
        let (obj, embeds) = self.from_module(m)?;
        let back = self.to_module(&obj)?;
        let mut phi = linalg::zeros(m.dim, back.dim);
        let off = offsets(obj.dims());
        for (s, b) in embeds.iter().enumerate() {
            phi.view_mut((0, off[s]), b.shape()).copy_from(b);
        }
        if back.dim != m.dim || linalg::inverse(&phi).is_none() {
            return Err(Error::Singular);
        }
        let mut worst: f64 = 0.0;
        for k in 0..self.dim() {
            worst = worst.max(linalg::max_abs_diff(&(&phi * &back.action[k]), &(&m.action[k] * &phi)));
        }
        Ok((phi, worst))
    }
}
