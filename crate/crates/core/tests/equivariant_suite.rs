mod common;

use common::{invertible, random_cocycle, rng};
use nctorus_core::equivariant::{
    check_linearization, forget, free, hom_space, morphism_defect, AlgebraModule, TwistedAlgebra,
};
use nctorus_core::group::{FiniteAbelianGroup, GSet};
use nctorus_core::linalg;
use rand::Rng;

fn bases(group: &FiniteAbelianGroup) -> Vec<GSet> {
    vec![
        GSet::regular(group.clone()),
        GSet::trivial(group.clone(), 2),
        GSet::point(group.clone()),
    ]
}

#[test]
fn free_objects_are_linearized_for_all_small_groups() {
    let mut checked = 0;
    for n in 1..=16 {
        for group in FiniteAbelianGroup::all_of_order(n) {
            for seed in 0..20 {
                let mut r = rng(seed * 1000 + n);
                let phi = random_cocycle(&mut r, &group);
                phi.check().unwrap();
                let base = &bases(&group)[seed as usize % 3];
                let a: Vec<usize> = (0..base.len()).map(|_| r.gen_range(0..=2)).collect();
                let obj = free(base, &a, &phi).unwrap();
                let check = check_linearization(&obj, &phi).unwrap();
                assert!(check.holds, "{:?} seed {seed}: {}", group.factors(), check.max_deviation);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 20 * (1..=16).map(|n| FiniteAbelianGroup::all_of_order(n).len()).sum::<usize>());
}

#[test]
fn free_is_left_adjoint_to_forget() {
    for n in [2u64, 4, 6, 8] {
        for group in FiniteAbelianGroup::all_of_order(n) {
            for seed in 0..5 {
                let mut r = rng(seed + 77 * n);
                let phi = random_cocycle(&mut r, &group);
                for base in bases(&group) {
                    let a: Vec<usize> = (0..base.len()).map(|_| r.gen_range(0..=2)).collect();
                    let c: Vec<usize> = (0..base.len()).map(|_| r.gen_range(0..=1)).collect();
                    let b = free(&base, &c, &phi).unwrap();
                    let p: Vec<_> = b.dims().iter().map(|&d| invertible(&mut r, d)).collect();
                    let b = b.conjugate(&p).unwrap();
                    let fa = free(&base, &a, &phi).unwrap();
                    let homs = hom_space(&fa, &b).unwrap();
                    let graded: usize = a.iter().zip(forget(&b)).map(|(x, y)| x * y).sum();
                    assert_eq!(homs.len(), graded, "{:?} seed {seed}", group.factors());
                    for h in &homs {
                        assert!(morphism_defect(&fa, &b, h) < 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn twisted_algebra_round_trips() {
    for n in [1u64, 2, 3, 4] {
        for group in FiniteAbelianGroup::all_of_order(n) {
            for seed in 0..4 {
                let mut r = rng(seed + 31 * n);
                let phi = random_cocycle(&mut r, &group);
                for base in bases(&group) {
                    let alg = TwistedAlgebra::new(base.clone(), phi.clone()).unwrap();
                    assert!(alg.associativity_defect() < 1e-12);
                    let a: Vec<usize> = (0..base.len()).map(|_| r.gen_range(0..=1)).collect();
                    let obj = free(&base, &a, &phi).unwrap();
                    if obj.total_dim() > 8 {
                        continue;
                    }
                    let plain = alg.to_module(&obj).unwrap();
                    let q = invertible(&mut r, plain.dim);
                    let qi = linalg::inverse(&q).unwrap();
                    let m = AlgebraModule {
                        dim: plain.dim,
                        action: plain.action.iter().map(|x| &q * x * &qi).collect(),
                    };
                    assert!(alg.module_defect(&m) < 1e-9);
                    let (iso, dev) = alg.round_trip_iso(&m).unwrap();
                    assert!(dev < 1e-9, "{dev}");
                    assert_eq!(linalg::rank(&iso), m.dim);
                    let (back, _) = alg.from_module(&m).unwrap();
                    assert!(check_linearization(&back, &phi).unwrap().holds);
                }
            }
        }
    }
}
