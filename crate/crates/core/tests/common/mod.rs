#![allow(dead_code)]

use nctorus_core::equivariant::EquivariantObject;
use nctorus_core::fm::{standard_object, TorusModel};
use nctorus_core::group::{FiniteAbelianGroup, GroupCocycleTable};
use nctorus_core::linalg::{self, CMatrix};
use nctorus_core::Phase;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A well-conditioned random invertible matrix.
pub fn invertible(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let noise = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)));
    linalg::identity(n) * Complex64::new(2.0, 0.0) + noise
}

pub fn random_phase(rng: &mut ChaCha8Rng, denom: i64) -> Phase {
    Phase::new(rng.gen_range(0..denom), denom)
}

/// A random bilinear table times the coboundary of a random 1-cochain.
pub fn random_cocycle(rng: &mut ChaCha8Rng, group: &FiniteAbelianGroup) -> GroupCocycleTable {
    let r = group.rank();
    let gens: Vec<Vec<Phase>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let d = group.factors()[i].min(group.factors()[j]) as i64;
                    Phase::new(rng.gen_range(0..d), d)
                })
                .collect()
        })
        .collect();
    let bilinear = GroupCocycleTable::bilinear(group.clone(), &gens).unwrap();
    let alpha: Vec<Phase> = (0..group.order()).map(|_| random_phase(rng, 12)).collect();
    bilinear
        .times(&GroupCocycleTable::coboundary(group.clone(), &alpha).unwrap())
        .unwrap()
}

pub fn random_object(rng: &mut ChaCha8Rng, model: &TorusModel, max_dim: usize) -> EquivariantObject {
    let orbits = model.orbit_representatives().len();
    let dims: Vec<usize> = (0..orbits).map(|_| rng.gen_range(0..=max_dim)).collect();
    let obj = standard_object(model, &dims).unwrap();
    let p: Vec<CMatrix> = obj.dims().iter().map(|&d| invertible(rng, d)).collect();
    obj.conjugate(&p).unwrap()
}

/// The (Khat, lambda) pairs of the verification grid.
pub fn twists() -> Vec<GroupCocycleTable> {
    let half = Phase::new(1, 2);
    let z2 = FiniteAbelianGroup::cyclic(2);
    let z4 = FiniteAbelianGroup::cyclic(4);
    let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    vec![
        GroupCocycleTable::trivial(FiniteAbelianGroup::trivial()),
        GroupCocycleTable::trivial(z2.clone()),
        GroupCocycleTable::bilinear(z2, &[vec![half]]).unwrap(),
        GroupCocycleTable::trivial(klein.clone()),
        GroupCocycleTable::bilinear(klein, &[vec![half, half], vec![Phase::ZERO, half]]).unwrap(),
        GroupCocycleTable::trivial(z4.clone()),
        GroupCocycleTable::bilinear(z4, &[vec![Phase::new(1, 4)]]).unwrap(),
    ]
}

pub fn models(bs: &[Vec<u64>]) -> Vec<TorusModel> {
    let mut out = Vec::new();
    for b in bs {
        let b = FiniteAbelianGroup::new(b.clone()).unwrap();
        for lambda in twists() {
            if let Ok(m) = TorusModel::with_embedding(b.clone(), lambda) {
                out.push(m);
            }
        }
    }
    out
}
