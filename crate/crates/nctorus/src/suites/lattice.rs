//! Smith-form lattice data against brute-force enumeration over `(Z/N)^g`.

use nctorus_core::cocycle::BilinearCocycle;
use nctorus_core::lattice::{analyze, compute_h_hat, compute_k_hat, Splitting};
use nctorus_core::Phase;

use super::{Options, PropertyResult, Tally};

/// Every antisymmetric form mod `n` on `Z^g`.
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

fn in_radical(form: &[Vec<i64>], n: i64, t: &[i64]) -> bool {
    form.iter()
        .all(|row| row.iter().zip(t).map(|(a, b)| a * b).sum::<i64>().rem_euclid(n) == 0)
}

/// The bilinear cocycle with `M` the strictly lower part of `form`.
fn strictly_lower(form: &[Vec<i64>], n: i64) -> BilinearCocycle {
    let g = form.len();
    let m = (0..g)
        .map(|i| (0..g).map(|j| if i > j { form[i][j] } else { 0 }).collect())
        .collect();
    BilinearCocycle::new(n, m).expect("entries reduced")
}

pub(super) fn lattice(opts: &Options) -> Vec<PropertyResult> {
    let mut radical = Tally::exact("h_hat_matches_enumeration");
    let mut quotient = Tally::exact("k_hat_matches_enumeration");
    let mut sharp = Tally::exact("sharp_identity");
    let mut commutator = Tally::exact("descended_commutator");
    let (max_g, max_n) = opts.grid.pick((2, 4), (3, 6));
    for g in 1..=max_g {
        for n in 2..=max_n {
            let pts = residues(g, n);
            for form in antisymmetric_forms(g, n) {
                let ctx = format!("Lambda={form:?} mod {n}");
                let h = match compute_h_hat(&form, n) {
                    Ok(h) => h,
                    Err(e) => {
                        radical.error(&ctx, e);
                        continue;
                    }
                };
                for col in h.columns() {
                    radical.require(in_radical(&form, n, &col), || format!("{ctx}: basis vector {col:?} pairs nontrivially"));
                }
                let k = match compute_k_hat(&h) {
                    Ok(k) => k,
                    Err(e) => {
                        quotient.error(&ctx, e);
                        continue;
                    }
                };
                let kernel = pts.iter().filter(|t| in_radical(&form, n, t)).count();
                quotient.require(k.group().order() * kernel == pts.len(), || {
                    format!("{ctx}: #K = {} but the radical has {kernel} residues", k.group().order())
                });
                quotient.require(h.index() as usize == k.group().order(), || format!("{ctx}: index differs from #K"));
                for t in &pts {
                    radical.require(k.project_index(t) == 0 || !in_radical(&form, n, t), || {
                        format!("{ctx}: radical vector {t:?} projects nontrivially")
                    });
                    quotient.require(k.project_index(t) != 0 || in_radical(&form, n, t), || {
                        format!("{ctx}: {t:?} projects to zero outside the radical")
                    });
                }

                let lambda = strictly_lower(&form, n);
                let analysis = match analyze(&lambda, Splitting::UnitDiagonal) {
                    Ok(a) => a,
                    Err(e) => {
                        sharp.error(&ctx, e);
                        continue;
                    }
                };
                let dual = match &analysis.dual {
                    Ok(d) => d,
                    Err(e) => {
                        sharp.error(&ctx, e);
                        continue;
                    }
                };
                let kg = analysis.k_hat.group();
                sharp.require_n((kg.order() * kg.order()) as u64, dual.check_identity().is_none(), || {
                    let (a, b) = dual.check_identity().expect("failing pair");
                    format!("{ctx}: identity fails at ({:?}, {:?})", kg.element(a), kg.element(b))
                });
                for x in 0..kg.order() {
                    for y in 0..kg.order() {
                        let (lx, ly) = (analysis.k_hat.lift(x), analysis.k_hat.lift(y));
                        let e: i64 = (0..g)
                            .flat_map(|i| (0..g).map(move |j| (i, j)))
                            .map(|(i, j)| lx[i] * form[i][j] * ly[j])
                            .sum();
                        let got = dual.lambda.antisymmetrization(x, y);
                        commutator.require(got == Phase::new(e, n), || {
                            format!("{ctx}: commutator at lifts {lx:?}, {ly:?} is {got}")
                        });
                    }
                }
            }
        }
    }
    vec![radical.finish(), quotient.finish(), sharp.finish(), commutator.finish()]
}
