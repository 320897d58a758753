use alloc::vec::Vec;

use super::TorusModel;
use crate::equivariant::EquivariantObject;
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// A representation of `B`, `rho[b]` for every element.
#[derive(Debug, Clone, PartialEq)]
pub struct BRep {
    pub dim: usize,
    pub rho: Vec<CMatrix>,
}

impl BRep {
    /// Worst defect of `rho(b1) rho(b2) = rho(b1 + b2)` and `rho(0) = 1`.
    pub fn defect(&self, model: &TorusModel) -> f64 {
        let b = model.b();
        let mut worst = linalg::max_abs_diff(&self.rho[0], &linalg::identity(self.dim));
        for x in 0..b.order() {
            for y in 0..b.order() {
                worst = worst.max(linalg::max_abs_diff(&(&self.rho[x] * &self.rho[y]), &self.rho[b.add(x, y)]));
            }
        }
        worst
    }
}

/// A `B`-representation `V` with maps `m_k: L_k (x) V -> V` for `k` in `Khat`:
/// `rho(b) m_k = k(b) m_k rho(b)`, `m_k2 m_k1 = lambda(k1, k2) m_{k1 k2}`, `m_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOnXLambda {
    pub dim: usize,
    pub rho: Vec<CMatrix>,
    pub m: Vec<CMatrix>,
}

impl ModuleOnXLambda {
    pub fn new(model: &TorusModel, dim: usize, rho: Vec<CMatrix>, m: Vec<CMatrix>) -> Result<Self> {
        if rho.len() != model.b().order() || m.len() != model.khat().order() {
            return Err(Error::GradingMismatch("structure maps do not match the model".into()));
        }
        if rho.iter().chain(&m).any(|x| x.shape() != (dim, dim)) {
            return Err(Error::GradingMismatch("structure map of the wrong size".into()));
        }
        Ok(ModuleOnXLambda { dim, rho, m })
    }

    pub fn b_rep(&self) -> BRep {
        BRep {
            dim: self.dim,
            rho: self.rho.clone(),
        }
    }

    /// Worst violation of the module laws.
    pub fn defect(&self, model: &TorusModel) -> f64 {
        let (b, k) = (model.b(), model.khat());
        let mut worst = self.b_rep().defect(model);
        worst = worst.max(linalg::max_abs_diff(&self.m[0], &linalg::identity(self.dim)));
        for x in 0..b.order() {
            for kk in 0..k.order() {
                let lhs = &self.rho[x] * &self.m[kk];
                let rhs = &self.m[kk] * &self.rho[x] * model.khat_character(kk, x).embed();
                worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        for k1 in 0..k.order() {
            for k2 in 0..k.order() {
                let lhs = &self.m[k2] * &self.m[k1];
                let rhs = &self.m[k.add(k1, k2)] * model.lambda().get(k1, k2).embed();
                worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }

    pub fn conjugate(&self, p: &CMatrix) -> Result<Self> {
        let inv = linalg::inverse(p).ok_or(Error::Singular)?;
        Ok(ModuleOnXLambda {
            dim: self.dim,
            rho: self.rho.iter().map(|r| p * r * &inv).collect(),
            m: self.m.iter().map(|r| p * r * &inv).collect(),
        })
    }

    /// Whether `f: self -> other` intertwines all structure maps, as a worst defect.
    pub fn morphism_defect(&self, other: &Self, f: &CMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b) in self.rho.iter().zip(&other.rho).chain(self.m.iter().zip(&other.m)) {
            worst = worst.max(linalg::max_abs_diff(&(f * a), &(b * f)));
        }
        worst
    }
}

/// The object with `dims[o]`-dimensional fibers along the `o`-th orbit and
/// `rho_{k, beta0 + j} = lambda(j, k)`.
pub fn standard_object(model: &TorusModel, orbit_dims: &[usize]) -> Result<EquivariantObject> {
    let reps = model.orbit_representatives();
    if orbit_dims.len() != reps.len() {
        return Err(Error::DimensionMismatch {
            expected: reps.len(),
            found: orbit_dims.len(),
        });
    }
    let coords = model.orbit_coordinates();
    let dim_of = |rep: usize| orbit_dims[reps.iter().position(|&r| r == rep).expect("representative")];
    let dims: Vec<usize> = coords.iter().map(|&(rep, _)| dim_of(rep)).collect();
    let base = model.yhat_base();
    let rho = (0..model.khat().order())
        .map(|k| {
            (0..model.bhat().order())
                .map(|beta| {
                    let j = coords[beta].1;
                    let d = dims[beta];
                    linalg::identity(d) * model.lambda().get(j, k).embed()
                })
                .collect()
        })
        .collect();
    EquivariantObject::new(base, dims, rho)
}
