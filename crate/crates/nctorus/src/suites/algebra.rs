use std::cell::RefCell;

use nctorus_core::cocycle::{
    check_cocycle, coboundary, cohomologous, explicit_coboundary, BilinearCocycle, CochainTable, Cochain, CocycleCheck,
    Window,
};
use nctorus_core::laurent::{coboundary_transform, majorant_norm, star_mul, LaurentPoly, MajorantWeight};
use nctorus_core::qweyl::{
    gammahat_commutator_phase, mul_monomial, pmodule_act_gammahat, PModuleElement, QMonomial, Side,
};
use nctorus_core::{Phase, TOLERANCE};
use rand::Rng;

use super::{relative, Options, PropertyResult, Tally};
use crate::exact::ExactCoeff;
use crate::random::{self, SuiteRng};

const ORDERS: [i64; 5] = [2, 3, 4, 6, 12];

fn describe(lambda: &BilinearCocycle) -> String {
    format!("N={} M={:?}", lambda.order(), lambda.matrix())
}

fn record_check(tally: &mut Tally, check: nctorus_core::Result<CocycleCheck>, context: &str) {
    match check {
        Ok(c) => tally.require_n(c.triples_checked as u64, c.holds, || {
            let (a, b, x, d) = c.witness.expect("failing check has a witness");
            format!("{context}: triple ({a:?}, {b:?}, {x:?}) has defect {d}")
        }),
        Err(e) => tally.error(context, e),
    }
}

/// `M + S` for a random symmetric `S`: a cohomologous bilinear cocycle.
fn cohomologous_partner(rng: &mut SuiteRng, lambda: &BilinearCocycle) -> BilinearCocycle {
    let (g, n) = (lambda.g(), lambda.order());
    let mut m: Vec<Vec<i64>> = lambda.matrix().to_vec();
    for i in 0..g {
        for j in i..g {
            let s = rng.gen_range(0..n);
            m[i][j] = (m[i][j] + s) % n;
            if i != j {
                m[j][i] = (m[j][i] + s) % n;
            }
        }
    }
    BilinearCocycle::new(n, m).expect("entries reduced")
}

fn random_table(rng: &mut SuiteRng, window: Window) -> CochainTable {
    let rng = RefCell::new(rng);
    CochainTable::from_fn(window, |_| Phase::new(rng.borrow_mut().gen_range(0..12), 12))
}

pub(super) fn cocycle(opts: &Options) -> Vec<PropertyResult> {
    let mut identity = Tally::exact("bilinear_cocycle_identity");
    let mut bounded = Tally::exact("coboundary_is_cocycle");
    let mut invariant = Tally::exact("antisymmetrization_classifies");
    let mut rng = random::stream(opts.seed, "cocycle");
    let samples = opts.grid.pick(2, 6);
    for g in 1..=3 {
        let r = opts.grid.pick(1, if g == 3 { 1 } else { 2 });
        let window = Window::cube(g, r);
        for n in ORDERS {
            for _ in 0..samples {
                let lambda = random::cocycle(&mut rng, g, n);
                let ctx = describe(&lambda);
                record_check(&mut identity, check_cocycle(&lambda, &window), &ctx);

                let alpha = random_table(&mut rng, Window::cube(g, 3 * r));
                record_check(&mut bounded, check_cocycle(&coboundary(&alpha, &lambda), &window), &ctx);

                let partner = cohomologous_partner(&mut rng, &lambda);
                match explicit_coboundary(&lambda, &partner, Window::cube(g, 2 * r)) {
                    Ok(Some(beta)) => {
                        let twisted = coboundary(&beta, &lambda);
                        for s in window.points() {
                            for t in window.points() {
                                let ok = twisted.eval(&s, &t).ok() == partner.eval(&s, &t).ok();
                                invariant.require(ok, || {
                                    format!("{ctx} to {}: coboundary differs at ({s:?}, {t:?})", describe(&partner))
                                });
                            }
                        }
                    }
                    Ok(None) => invariant.require(false, || {
                        format!("{ctx} and {} share Lambda but were not found cohomologous", describe(&partner))
                    }),
                    Err(e) => invariant.error(&ctx, e),
                }
                if g >= 2 {
                    // Shifting one off-diagonal entry changes Lambda.
                    let mut m = lambda.matrix().to_vec();
                    m[0][1] = (m[0][1] + 1) % n;
                    let other = BilinearCocycle::new(n, m).expect("entries reduced");
                    invariant.require(cohomologous(&lambda, &other) == Ok(false), || {
                        format!("{ctx} reported cohomologous to {}", describe(&other))
                    });
                }
            }
        }
    }
    vec![identity.finish(), bounded.finish(), invariant.finish()]
}

pub(super) fn laurent_star(opts: &Options) -> Vec<PropertyResult> {
    let mut assoc = Tally::new("associativity", TOLERANCE);
    let mut exact = Tally::exact("associativity_exact");
    let mut majorant = Tally::new("majorant_submultiplicativity", TOLERANCE);
    let mut unit = Tally::exact("unit");
    let mut transform = Tally::exact("cohomologous_products_isomorphic");
    let triples = opts.grid.pick(20, 200);
    let (terms, radius) = (8, 3);
    for g in 1..=3 {
        for n in ORDERS {
            let mut rng = random::stream(opts.seed, &format!("laurent-star/{g}/{n}"));
            let lambda = random::cocycle(&mut rng, g, n);
            let partner = cohomologous_partner(&mut rng, &lambda);
            let alpha = explicit_coboundary(&lambda, &partner, Window::cube(g, 2 * radius))
                .ok()
                .flatten();
            let ctx = describe(&lambda);
            for trial in 0..triples {
                let f = random::laurent(&mut rng, g, terms, radius);
                let h = random::laurent(&mut rng, g, terms, radius);
                let k = random::laurent(&mut rng, g, terms, radius);
                let star = |a: &LaurentPoly, b: &LaurentPoly| star_mul(a, b, &lambda).expect("matching g");
                let lhs = star(&star(&f, &h), &k);
                let rhs = star(&f, &star(&h, &k));
                assoc.deviation(lhs.max_deviation(&rhs), || format!("{ctx}, triple {trial}"));

                let weights = MajorantWeight::new((0..g).map(|_| rng.gen_range(0.5..2.0)).collect())
                    .expect("positive weights");
                let norm = |p: &LaurentPoly| majorant_norm(p, &weights).expect("matching g");
                let excess = norm(&star(&f, &h)) - norm(&f) * norm(&h);
                majorant.deviation(excess.max(0.0), || format!("{ctx}, pair {trial}, weights {:?}", weights.weights()));

                let fe = random::exact_laurent(&mut rng, g, terms, radius, n);
                let he = random::exact_laurent(&mut rng, g, terms, radius, n);
                let ke = random::exact_laurent(&mut rng, g, terms, radius, n);
                let star_e = |a: &LaurentPoly<ExactCoeff>, b: &LaurentPoly<ExactCoeff>| {
                    star_mul(a, b, &lambda).expect("matching g")
                };
                let lhs = star_e(&star_e(&fe, &he), &ke);
                let rhs = star_e(&fe, &star_e(&he, &ke));
                exact.require(lhs == rhs, || format!("{ctx}, exact triple {trial}"));

                let one = LaurentPoly::<ExactCoeff>::one(g);
                unit.require(star_e(&one, &fe) == fe && star_e(&fe, &one) == fe, || {
                    format!("{ctx}, unit against exact polynomial {trial}")
                });

                match &alpha {
                    Some(alpha) => {
                        let t = |p: &LaurentPoly<ExactCoeff>| coboundary_transform(p, alpha).expect("support in window");
                        let twisted = star_mul(&fe, &he, &partner).expect("matching g");
                        transform.require(t(&twisted) == star_e(&t(&fe), &t(&he)), || {
                            format!("{ctx} against {}, pair {trial}", describe(&partner))
                        });
                    }
                    None => transform.require(false, || format!("{ctx}: no cochain to {}", describe(&partner))),
                }
            }
        }
    }
    vec![assoc.finish(), exact.finish(), majorant.finish(), unit.finish(), transform.finish()]
}

fn generators(g: usize) -> Vec<QMonomial> {
    let mut out = Vec::new();
    for i in 0..g {
        for e in [1, -1] {
            let mut m = QMonomial::one(g);
            m.a[i] = e;
            out.push(m.clone());
            let mut m = QMonomial::one(g);
            m.b[i] = e;
            out.push(m);
        }
    }
    out
}

/// Exponent vectors in `[-r, r]^d`.
fn box_points(d: usize, r: i64) -> Vec<Vec<i64>> {
    Window::cube(d, r).points().collect()
}

fn same_monomial(x: &QMonomial, y: &QMonomial) -> (bool, f64) {
    (x.a == y.a && x.b == y.b && x.phase == y.phase, relative(x.scalar, y.scalar))
}

pub(super) fn qweyl(opts: &Options) -> Vec<PropertyResult> {
    let mut phases = Tally::exact("confluence_phases");
    let mut scalars = Tally::new("confluence_scalars", TOLERANCE);
    let mut relations = Tally::exact("commutation_relations");
    let mut p_relation = Tally::exact("p_lambda_relation");
    let mut p_numeric = Tally::new("p_lambda_relation_numeric", TOLERANCE);
    let r = opts.grid.pick(1, 2);
    for g in 1..=2 {
        for n in ORDERS {
            let mut rng = random::stream(opts.seed, &format!("qweyl/{g}/{n}"));
            let lambda = random::cocycle(&mut rng, g, n);
            let q = random::period_matrix(&mut rng, g);
            let ctx = describe(&lambda);
            let gens = generators(g);
            let window: Vec<QMonomial> = box_points(2 * g, r)
                .into_iter()
                .map(|v| QMonomial::new(v[..g].to_vec(), v[g..].to_vec()))
                .collect();
            for side in [Side::Nc, Side::Gerby] {
                let mul = |x: &QMonomial, y: &QMonomial| mul_monomial(x, y, &lambda, &q, side).expect("matching g");
                for m in &window {
                    for x in &gens {
                        for y in &gens {
                            let pairs = [
                                (mul(&mul(x, y), m), mul(x, &mul(y, m))),
                                (mul(&mul(m, x), y), mul(m, &mul(x, y))),
                                (mul(&mul(x, m), y), mul(x, &mul(m, y))),
                            ];
                            for (lhs, rhs) in &pairs {
                                let (ok, dev) = same_monomial(lhs, rhs);
                                let wit = || format!("{ctx} {side:?}: x={x:?} y={y:?} m={m:?}");
                                phases.require(ok, wit);
                                scalars.deviation(dev, wit);
                            }
                        }
                    }
                }
                // x_i x_j = lambda_ij x_j x_i on the twisted generators of each side.
                for i in 0..g {
                    for j in 0..g {
                        let unit = |k: usize| {
                            let mut m = QMonomial::one(g);
                            match side {
                                Side::Nc => m.a[k] = 1,
                                Side::Gerby => m.b[k] = 1,
                            }
                            m
                        };
                        let (xi, xj) = (unit(i), unit(j));
                        let diff = mul(&xi, &xj).phase - mul(&xj, &xi).phase;
                        relations.require(diff == lambda.commutation_phase(i, j), || {
                            format!("{ctx} {side:?}: generators {i}, {j} commute up to {diff}")
                        });
                    }
                }
            }
            for a in box_points(g, 2) {
                for i in 0..g {
                    for j in 0..g {
                        let p = gammahat_commutator_phase(&lambda, i, j, &a);
                        let want = lambda.commutation_phase(i, j);
                        p_relation.require(p == want, || {
                            format!("{ctx}: gh{} gh{} on t^{a:?} picks up {p}, expected {want}", i + 1, j + 1)
                        });
                        let c: Vec<i64> = (0..g).map(|_| rng.gen_range(-2..=2)).collect();
                        let v = PModuleElement::basis(c.clone(), a.clone());
                        let act = |v: &PModuleElement, k: usize| pmodule_act_gammahat(v, k, &lambda, &q).expect("index in range");
                        let lhs = act(&act(&v, j), i);
                        let rhs = act(&act(&v, i), j).scale(want.embed());
                        let scale = lhs.terms().map(|(_, x)| x.norm()).fold(1.0, f64::max);
                        p_numeric.deviation(lhs.max_deviation(&rhs) / scale, || {
                            format!("{ctx}: gh{} gh{} on basis ({c:?}, {a:?})", i + 1, j + 1)
                        });
                    }
                }
            }
        }
    }
    vec![
        phases.finish(),
        scalars.finish(),
        relations.finish(),
        p_relation.finish(),
        p_numeric.finish(),
    ]
}
