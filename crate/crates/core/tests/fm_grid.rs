mod common;

use common::{invertible, models, random_object, rng};
use nctorus_core::equivariant::check_linearization;
use nctorus_core::fm::{
    counit, equivariance_coherence, fm_ab_equivariance_iso, fm_lambda, fm_lambda_inverse, hom_dim_xhat,
    hom_dim_xlambda, star_on_points_check, unit, verify_factorization, DeformedKernel,
};
use nctorus_core::group::{FiniteAbelianGroup, GSet, GroupCocycleTable};
use nctorus_core::lattice::lambda_sharp;
use nctorus_core::Phase;
use num_complex::Complex64;
use rand::Rng;

const BS: &[&[u64]] = &[&[], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2]];

fn grid() -> Vec<nctorus_core::fm::TorusModel> {
    models(&BS.iter().map(|b| b.to_vec()).collect::<Vec<_>>())
}

#[test]
fn grid_covers_every_twist_that_embeds() {
    let g = grid();
    assert!(g.iter().any(|m| m.khat().factors() == [2, 2] && !m.lambda().entries().iter().all(|p| p.is_zero())));
    assert!(g.iter().any(|m| m.khat().factors() == [4] && m.b().order() == 8));
    assert!(!g.iter().any(|m| m.khat().factors() == [2, 2] && m.b().factors() == [8]));
}

#[test]
fn kernels_satisfy_their_laws() {
    for m in grid() {
        let p = DeformedKernel::build(&m);
        assert_eq!(p.left_law_violation(), None);
        assert_eq!(p.module_law_violation(), None);
        let obj = p.as_equivariant_object().unwrap();
        assert!(check_linearization(&obj, &m.lambda().transpose()).unwrap().holds);
    }
}

#[test]
fn fully_faithful_and_round_trips() {
    for (i, m) in grid().into_iter().enumerate() {
        let mut r = rng(7 + i as u64);
        for _ in 0..3 {
            let a = random_object(&mut r, &m, 2);
            let b = random_object(&mut r, &m, 2);
            let (va, vb) = (fm_lambda(&m, &a).unwrap(), fm_lambda(&m, &b).unwrap());
            assert_eq!(va.dim, a.total_dim());
            assert_eq!(hom_dim_xhat(&a, &b).unwrap(), hom_dim_xlambda(&m, &va, &vb));
            let u = unit(&m, &a).unwrap();
            assert!(u.is_iso && u.deviation < 1e-9, "unit {}", u.deviation);
            let q = invertible(&mut r, va.dim);
            let v = va.conjugate(&q).unwrap();
            let c = counit(&m, &v).unwrap();
            assert!(c.is_iso && c.deviation < 1e-9, "counit {}", c.deviation);
            let w = fm_lambda_inverse(&m, &v).unwrap();
            assert!(check_linearization(&w, m.lambda()).unwrap().holds);
            let f = verify_factorization(&m, &a).unwrap();
            assert!(f.is_iso && f.deviation < 1e-9, "factorization {}", f.deviation);
        }
    }
}

#[test]
fn equivariance_isomorphisms_are_exact_and_coherent() {
    for (i, m) in grid().into_iter().enumerate() {
        let mut r = rng(100 + i as u64);
        let dims: Vec<usize> = (0..m.bhat().order()).map(|_| r.gen_range(0..=2)).collect();
        let n = m.khat().order();
        for y in 0..n {
            let iso = fm_ab_equivariance_iso(&m, &dims, y).unwrap();
            assert!(iso.exact && iso.deviation < 1e-12);
            for y2 in 0..n {
                let c = equivariance_coherence(&m, &dims, y, y2).unwrap();
                assert!(c.exact && c.deviation < 1e-12);
            }
        }
    }
}

#[test]
fn points_product_matches_star_product() {
    let cases: Vec<(Vec<u64>, Vec<Vec<Phase>>)> = vec![
        (vec![2], vec![vec![Phase::new(1, 2)]]),
        (vec![3], vec![vec![Phase::new(1, 3)]]),
        (vec![2, 2], vec![vec![Phase::new(1, 2), Phase::new(1, 2)], vec![Phase::ZERO, Phase::new(1, 2)]]),
        (vec![3, 3], vec![vec![Phase::new(1, 3), Phase::new(2, 3)], vec![Phase::ZERO, Phase::new(1, 3)]]),
    ];
    for (factors, gens) in cases {
        let k = FiniteAbelianGroup::new(factors).unwrap();
        let dual = lambda_sharp(&GroupCocycleTable::bilinear(k.clone(), &gens).unwrap()).unwrap();
        // Two free orbits of K.
        let mut act = Vec::new();
        for s in 0..2 * k.order() {
            act.push((0..k.order()).map(|g| (s / k.order()) * k.order() + k.add(s % k.order(), g)).collect());
        }
        let orbit = GSet::new(k.clone(), act).unwrap();
        let mut r = rng(k.order() as u64);
        for _ in 0..50 {
            let mut f = || -> Vec<Complex64> {
                (0..orbit.len()).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect()
            };
            let (phi, psi) = (f(), f());
            let x = r.gen_range(0..orbit.len());
            let rep = star_on_points_check(&dual, &orbit, x, &phi, &psi).unwrap();
            assert!(rep.deviation < 1e-9, "{}", rep.deviation);
        }
    }
}
