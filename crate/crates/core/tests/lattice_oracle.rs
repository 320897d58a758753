//! Exhaustive comparison of the Smith-form lattice computations with direct
//! enumeration over (Z/N)^g.

use nctorus_core::cocycle::{antisymmetrize, BilinearCocycle};
use nctorus_core::lattice::{analyze, compute_h_hat, compute_k_hat, Splitting};
use nctorus_core::Phase;

fn antisymmetric_forms(g: usize, n: i64) -> Vec<Vec<Vec<i64>>> {
    let slots: Vec<(usize, usize)> = (0..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).collect();
    let count = (n as usize).pow(slots.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut m = vec![vec![0i64; g]; g];
            for &(i, j) in &slots {
                let v = (code % n as usize) as i64;
                code /= n as usize;
                m[i][j] = v;
                m[j][i] = (n - v) % n;
            }
            m
        })
        .collect()
}

fn residues(g: usize, n: i64) -> Vec<Vec<i64>> {
    (0..(n as usize).pow(g as u32))
        .map(|mut code| {
            (0..g)
                .map(|_| {
                    let v = (code % n as usize) as i64;
                    code /= n as usize;
                    v
                })
                .collect()
        })
        .collect()
}

fn in_kernel(form: &[Vec<i64>], n: i64, t: &[i64]) -> bool {
    form.iter()
        .all(|row| row.iter().zip(t).map(|(a, b)| a * b).sum::<i64>().rem_euclid(n) == 0)
}

fn strictly_lower(form: &[Vec<i64>], n: i64) -> BilinearCocycle {
    let g = form.len();
    let m = (0..g)
        .map(|i| (0..g).map(|j| if i > j { form[i][j].rem_euclid(n) } else { 0 }).collect())
        .collect();
    BilinearCocycle::new(n, m).unwrap()
}

#[test]
fn h_hat_and_k_hat_match_enumeration() {
    let mut forms_checked = 0;
    for g in 1..=3 {
        for n in 2..=6 {
            let pts = residues(g, n);
            for form in antisymmetric_forms(g, n) {
                let h = compute_h_hat(&form, n).unwrap();
                let k = compute_k_hat(&h).unwrap();
                let kernel: Vec<&Vec<i64>> = pts.iter().filter(|t| in_kernel(&form, n, t)).collect();
                // Every basis vector lies in the kernel lattice, and N Z^g lies in H.
                for col in h.columns() {
                    assert!(in_kernel(&form, n, &col), "{form:?} mod {n}: {col:?}");
                }
                assert_eq!(k.group().order() * kernel.len(), pts.len(), "{form:?} mod {n}");
                assert_eq!(h.index() as usize, k.group().order());
                for t in &pts {
                    assert_eq!(k.project_index(t) == 0, in_kernel(&form, n, t), "{form:?} mod {n} at {t:?}");
                    let nt: Vec<i64> = t.iter().map(|x| x * n).collect();
                    assert_eq!(k.project_index(&nt), 0);
                }
                forms_checked += 1;
            }
        }
    }
    assert_eq!(forms_checked, 465);
}

#[test]
fn descended_cocycle_has_the_right_commutator_and_sharp_identity() {
    for g in 1..=3 {
        for n in 2..=6 {
            for form in antisymmetric_forms(g, n) {
                let lambda = strictly_lower(&form, n);
                assert_eq!(antisymmetrize(&lambda), form.iter().map(|r| r.iter().map(|x| x.rem_euclid(n)).collect()).collect::<Vec<Vec<i64>>>());
                let a = analyze(&lambda, Splitting::UnitDiagonal).unwrap();
                let dual = a.dual.as_ref().expect("unit-diagonal splitting is nondegenerate");
                assert_eq!(dual.check_identity(), None, "{form:?} mod {n}");
                let kg = a.k_hat.group();
                for x in 0..kg.order() {
                    for y in 0..kg.order() {
                        let (lx, ly) = (a.k_hat.lift(x), a.k_hat.lift(y));
                        let e: i64 = (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).map(|(i, j)| lx[i] * form[i][j] * ly[j]).sum();
                        assert_eq!(dual.lambda.antisymmetrization(x, y), Phase::new(e, n), "{form:?} mod {n}");
                    }
                }
            }
        }
    }
}
