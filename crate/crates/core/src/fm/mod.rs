//! Finite models of the deformed Fourier-Mukai transform.
//!
//! A [`TorusModel`] replaces the torus `Y` by a finite abelian group `B`,
//! its dual `Yhat` by the character group `Bhat` (identified with `B`
//! through the canonical pairing), and `Khat` by a subgroup of `Bhat`
//! carrying a bilinear cocycle `lambda`.
//!
//! Objects on the `Yhat` side are `Bhat`-graded spaces with a
//! `lambda`-twisted `Khat`-linearization, i.e. [`EquivariantObject`]s over
//! `Bhat` with translation action. Objects on the `Y` side are
//! representations of `B` with structure maps `m_k`, see
//! [`ModuleOnXLambda`].

mod kernel;
mod objects;
mod points;
mod transform;
mod verify;

pub use kernel::DeformedKernel;
pub use objects::{standard_object, BRep, ModuleOnXLambda};
pub use points::{star_on_points_check, PointsReport};
pub use transform::{
    counit, fm_ab, fm_ab_functions, fm_ab_inverse, fm_ab_inverse_functions, fm_lambda, fm_lambda_inverse,
    fm_lambda_morphism, fourier_matrix, unit, RoundTrip,
};
pub use verify::{
    equivariance_coherence, fm_ab_equivariance_iso, hom_dim_xhat, hom_dim_xlambda, pullback, tensor_line,
    verify_factorization, CoherenceReport, EquivarianceIso, FactorizationReport, IsoBlock,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::equivariant::EquivariantObject;
use crate::group::{FiniteAbelianGroup, GSet, GroupCocycleTable};
use crate::lattice::{lambda_sharp, DualPairData};
use crate::{Error, Phase, Result};

/// Objects of the twisted dual side.
pub type SheafOnXhatLambda = EquivariantObject;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusModel {
    b: FiniteAbelianGroup,
    khat: FiniteAbelianGroup,
    embed: Vec<usize>,
    lambda: GroupCocycleTable,
}

impl TorusModel {
    /// `embed[k]` is the `Bhat` index of `k in Khat`.
    pub fn new(b: FiniteAbelianGroup, lambda: GroupCocycleTable, embed: Vec<usize>) -> Result<Self> {
        let khat = lambda.group().clone();
        if embed.len() != khat.order() {
            return Err(Error::DimensionMismatch {
                expected: khat.order(),
                found: embed.len(),
            });
        }
        if let Some(&x) = embed.iter().find(|&&x| x >= b.order()) {
            return Err(Error::NotInGroup(vec![x as u64]));
        }
        for k1 in 0..khat.order() {
            for k2 in 0..khat.order() {
                if embed[khat.add(k1, k2)] != b.add(embed[k1], embed[k2]) {
                    return Err(Error::InvariantViolated("Khat -> Bhat is not a homomorphism".into()));
                }
            }
        }
        let mut seen = embed.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != embed.len() {
            return Err(Error::InvariantViolated("Khat -> Bhat is not injective".into()));
        }
        lambda.check()?;
        if !lambda.is_bilinear() {
            return Err(Error::InvariantViolated("lambda_K is not bilinear".into()));
        }
        Ok(TorusModel { b, khat, embed, lambda })
    }

    /// Uses the first injective homomorphism `Khat -> Bhat` in index order.
    pub fn with_embedding(b: FiniteAbelianGroup, lambda: GroupCocycleTable) -> Result<Self> {
        let embed = find_embedding(lambda.group(), &b)
            .ok_or_else(|| Error::InvalidGroup("Khat does not embed into Bhat".into()))?;
        TorusModel::new(b, lambda, embed)
    }

    pub fn b(&self) -> &FiniteAbelianGroup {
        &self.b
    }

    /// The character group, with the same presentation as `B`.
    pub fn bhat(&self) -> &FiniteAbelianGroup {
        &self.b
    }

    pub fn khat(&self) -> &FiniteAbelianGroup {
        &self.khat
    }

    pub fn lambda(&self) -> &GroupCocycleTable {
        &self.lambda
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    /// `beta(b)`.
    pub fn poincare_pairing(&self, b: usize, beta: usize) -> Result<Phase> {
        let n = self.b.order();
        if b >= n || beta >= n {
            return Err(Error::NotInGroup(vec![b.max(beta) as u64]));
        }
        Ok(self.b.pairing(b, beta))
    }

    /// `k(b)` for `k in Khat`.
    pub fn khat_character(&self, k: usize, b: usize) -> Phase {
        self.b.pairing(b, self.embed[k])
    }

    /// `beta + k`.
    pub fn shift(&self, beta: usize, k: usize) -> usize {
        self.b.add(beta, self.embed[k])
    }

    /// `Bhat` as a `Khat`-set under translation.
    pub fn yhat_base(&self) -> GSet {
        GSet::translation(self.khat.clone(), &self.b, &self.embed)
    }

    /// For each `beta`, the orbit representative `beta0` and `j` with `beta = beta0 + j`.
    pub fn orbit_coordinates(&self) -> Vec<(usize, usize)> {
        let n = self.b.order();
        let mut out = vec![(usize::MAX, 0); n];
        for beta in 0..n {
            if out[beta].0 != usize::MAX {
                continue;
            }
            for j in 0..self.khat.order() {
                out[self.shift(beta, j)] = (beta, j);
            }
        }
        out
    }

    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.orbit_coordinates()
            .iter()
            .enumerate()
            .filter(|(beta, (rep, _))| beta == rep)
            .map(|(beta, _)| beta)
            .collect()
    }

    /// Dual-pair data when `lambda` is nondegenerate.
    pub fn dual_pair(&self) -> Result<DualPairData> {
        lambda_sharp(&self.lambda)
    }

    pub fn b_generators(&self) -> Vec<usize> {
        (0..self.b.rank()).map(|i| self.b.generator(i)).collect()
    }

    pub fn khat_generators(&self) -> Vec<usize> {
        (0..self.khat.rank()).map(|i| self.khat.generator(i)).collect()
    }
}

/// First injective homomorphism `sub -> ambient`, choosing generator images
/// in index order.
pub fn find_embedding(sub: &FiniteAbelianGroup, ambient: &FiniteAbelianGroup) -> Option<Vec<usize>> {
    let r = sub.rank();
    let candidates: Vec<Vec<usize>> = sub
        .factors()
        .iter()
        .map(|&d| {
            (0..ambient.order())
                .filter(|&x| ambient.scale(x, d as i64) == 0)
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; r];
    loop {
        let images: Vec<usize> = (0..r).map(|i| candidates[i][choice[i]]).collect();
        let embed: Vec<usize> = (0..sub.order())
            .map(|k| {
                sub.element(k)
                    .iter()
                    .zip(&images)
                    .fold(0, |acc, (&c, &img)| ambient.add(acc, ambient.scale(img, c as i64)))
            })
            .collect();
        let mut sorted = embed.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == embed.len() {
            return Some(embed);
        }
        // Next choice, odometer style.
        let mut i = 0;
        loop {
            if i == r {
                return None;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
