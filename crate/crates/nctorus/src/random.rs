//! Seeded random inputs for the property suites.

use nctorus_core::cocycle::BilinearCocycle;
use nctorus_core::equivariant::EquivariantObject;
use nctorus_core::fm::{standard_object, TorusModel};
use nctorus_core::group::{FiniteAbelianGroup, GroupCocycleTable};
use nctorus_core::laurent::LaurentPoly;
use nctorus_core::linalg::{self, CMatrix};
use nctorus_core::qweyl::PeriodMatrix;
use nctorus_core::Phase;
use num_complex::{Complex, Complex64};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::ExactCoeff;

pub type SuiteRng = ChaCha8Rng;

/// Independent stream for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> SuiteRng {
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn complex(rng: &mut SuiteRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn cocycle(rng: &mut SuiteRng, g: usize, n: i64) -> BilinearCocycle {
    let m = (0..g).map(|_| (0..g).map(|_| rng.gen_range(0..n)).collect()).collect();
    BilinearCocycle::new(n, m).expect("entries in range")
}

pub fn laurent(rng: &mut SuiteRng, g: usize, max_terms: usize, radius: i64) -> LaurentPoly {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<i64>, Complex64)> = (0..k)
        .map(|_| ((0..g).map(|_| rng.gen_range(-radius..=radius)).collect(), complex(rng)))
        .collect();
    LaurentPoly::from_terms(g, terms).expect("consistent dimension")
}

/// Small Gaussian rationals times powers of `zeta_n`, so exact products stay far from overflow.
pub fn exact_laurent(rng: &mut SuiteRng, g: usize, max_terms: usize, radius: i64, n: i64) -> LaurentPoly<ExactCoeff> {
    let k = rng.gen_range(1..=max_terms);
    let part = |rng: &mut SuiteRng| Rational64::new(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let terms: Vec<(Vec<i64>, ExactCoeff)> = (0..k)
        .map(|_| {
            let t = (0..g).map(|_| rng.gen_range(-radius..=radius)).collect();
            let z = Complex::new(part(rng), part(rng));
            (t, ExactCoeff::term(z, Phase::new(rng.gen_range(0..n), n)))
        })
        .collect();
    LaurentPoly::from_terms(g, terms).expect("consistent dimension")
}

/// A period matrix with entries of modulus in `[1/2, 2]`.
pub fn period_matrix(rng: &mut SuiteRng, g: usize) -> PeriodMatrix {
    let q = (0..g)
        .map(|_| {
            (0..g)
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect()
        })
        .collect();
    PeriodMatrix::new(q).expect("nonzero entries")
}

/// A well-conditioned invertible matrix.
pub fn invertible(rng: &mut SuiteRng, n: usize) -> CMatrix {
    let noise = CMatrix::from_fn(n, n, |_, _| complex(rng) * 0.5);
    linalg::identity(n) * Complex64::new(2.0, 0.0) + noise
}

/// A random bilinear table times the coboundary of a random 1-cochain.
pub fn group_cocycle(rng: &mut SuiteRng, group: &FiniteAbelianGroup) -> GroupCocycleTable {
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
    let bilinear = GroupCocycleTable::bilinear(group.clone(), &gens).expect("entries killed by the factors");
    let alpha: Vec<Phase> = (0..group.order()).map(|_| Phase::new(rng.gen_range(0..12), 12)).collect();
    bilinear
        .times(&GroupCocycleTable::coboundary(group.clone(), &alpha).expect("alpha has the group order"))
        .expect("same group")
}

/// A standard object with random orbit dimensions, conjugated fiberwise.
pub fn yhat_object(rng: &mut SuiteRng, model: &TorusModel, max_dim: usize) -> EquivariantObject {
    let orbits = model.orbit_representatives().len();
    let dims: Vec<usize> = (0..orbits).map(|_| rng.gen_range(0..=max_dim)).collect();
    let obj = standard_object(model, &dims).expect("dimensions match the orbits");
    let p: Vec<CMatrix> = obj.dims().iter().map(|&d| invertible(rng, d)).collect();
    obj.conjugate(&p).expect("invertible change of basis")
}
