use nctorus_core::cocycle::BilinearCocycle;
use nctorus_core::equivariant::check_linearization;
use nctorus_core::fm::{
    counit, equivariance_coherence, fm_ab, fm_ab_equivariance_iso, fm_ab_functions, fm_ab_inverse,
    fm_ab_inverse_functions, fm_lambda, fm_lambda_inverse, hom_dim_xhat, hom_dim_xlambda, star_on_points_check,
    unit, verify_factorization, DeformedKernel, TorusModel,
};
use nctorus_core::group::{FiniteAbelianGroup, GSet, GroupCocycleTable};
use nctorus_core::lattice::{analyze, descend_cocycle, lambda_sharp, Splitting};
use nctorus_core::{Error, Phase, Result, TOLERANCE};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{Grid, Options, PropertyResult, Tally};
use crate::random::{self, SuiteRng};

const B_GROUPS: &[&[u64]] = &[&[], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[2, 2, 2]];
const SMALL_B_GROUPS: &[&[u64]] = &[&[], &[2], &[4], &[2, 2]];

/// `Khat` in `{1, Z/2, (Z/2)^2, Z/4}`, each with the trivial and a nondegenerate `lambda`.
fn twists() -> Vec<GroupCocycleTable> {
    let half = Phase::new(1, 2);
    let z2 = FiniteAbelianGroup::cyclic(2);
    let z4 = FiniteAbelianGroup::cyclic(4);
    let klein = FiniteAbelianGroup::new(vec![2, 2]).expect("valid factors");
    let bilinear = |g: FiniteAbelianGroup, gens: &[Vec<Phase>]| GroupCocycleTable::bilinear(g, gens).expect("bilinear");
    vec![
        GroupCocycleTable::trivial(FiniteAbelianGroup::trivial()),
        GroupCocycleTable::trivial(z2.clone()),
        bilinear(z2, &[vec![half]]),
        GroupCocycleTable::trivial(klein.clone()),
        bilinear(klein, &[vec![half, half], vec![Phase::ZERO, half]]),
        GroupCocycleTable::trivial(z4.clone()),
        bilinear(z4, &[vec![Phase::new(1, 4)]]),
    ]
}

/// Every `(B, Khat, lambda)` of the grid where `Khat` embeds in `Bhat`.
fn models(grid: Grid) -> Vec<TorusModel> {
    let mut out = Vec::new();
    for b in grid.pick(SMALL_B_GROUPS, B_GROUPS) {
        let b = FiniteAbelianGroup::new(b.to_vec()).expect("valid factors");
        for lambda in twists() {
            if let Ok(m) = TorusModel::with_embedding(b.clone(), lambda) {
                out.push(m);
            }
        }
    }
    out
}

fn label(model: &TorusModel) -> String {
    let lambda: Vec<String> = model.lambda().entries().iter().map(|p| p.to_string()).collect();
    format!("B={:?} Khat={:?} lambda=[{}]", model.b().factors(), model.khat().factors(), lambda.join(" "))
}

struct FmTallies {
    kernel: Tally,
    hom: Tally,
    unit: Tally,
    counit: Tally,
    inverse: Tally,
    factorization: Tally,
    equivariance: Tally,
    equivariance_scalars: Tally,
    coherence: Tally,
    fourier: Tally,
}

impl FmTallies {
    fn new() -> Self {
        FmTallies {
            kernel: Tally::exact("kernel_laws"),
            hom: Tally::exact("hom_dimensions_preserved"),
            unit: Tally::new("unit_round_trip", TOLERANCE),
            counit: Tally::new("counit_round_trip", TOLERANCE),
            inverse: Tally::new("inverse_is_linearized", TOLERANCE),
            factorization: Tally::new("factorization", TOLERANCE),
            equivariance: Tally::exact("fm_ab_equivariance_phases"),
            equivariance_scalars: Tally::new("fm_ab_equivariance_scalars", TOLERANCE),
            coherence: Tally::new("fm_ab_equivariance_coherence", TOLERANCE),
            fourier: Tally::new("fourier_inversion", TOLERANCE),
        }
    }

    fn finish(self) -> Vec<PropertyResult> {
        [
            self.kernel,
            self.hom,
            self.unit,
            self.counit,
            self.inverse,
            self.factorization,
            self.equivariance,
            self.equivariance_scalars,
            self.coherence,
            self.fourier,
        ]
        .into_iter()
        .map(Tally::finish)
        .collect()
    }
}

struct Sizes {
    hom_pairs: usize,
    round_trips: usize,
    max_dim: usize,
}

impl Sizes {
    fn for_grid(grid: Grid) -> Self {
        Sizes {
            hom_pairs: grid.pick(3, 20),
            round_trips: grid.pick(1, 4),
            max_dim: 2,
        }
    }
}

fn check_model(model: &TorusModel, rng: &mut SuiteRng, sizes: &Sizes, t: &mut FmTallies) {
    let ctx = label(model);
    let kernel = DeformedKernel::build(model);
    t.kernel.require(kernel.left_law_violation().is_none(), || {
        format!("{ctx}: twisted action law fails at {:?}", kernel.left_law_violation())
    });
    t.kernel.require(kernel.module_law_violation().is_none(), || {
        format!("{ctx}: module law fails at {:?}", kernel.module_law_violation())
    });
    match kernel
        .as_equivariant_object()
        .and_then(|obj| check_linearization(&obj, &model.lambda().transpose()))
    {
        Ok(c) => t.kernel.require(c.holds, || format!("{ctx}: kernel linearization off by {:e}", c.max_deviation)),
        Err(e) => t.kernel.error(&ctx, e),
    }

    for pair in 0..sizes.hom_pairs {
        let a = random::yhat_object(rng, model, sizes.max_dim);
        let b = random::yhat_object(rng, model, sizes.max_dim);
        let dims = (|| Ok::<_, Error>((hom_dim_xhat(&a, &b)?, fm_lambda(model, &a)?, fm_lambda(model, &b)?)))();
        match dims {
            Ok((before, va, vb)) => {
                let after = hom_dim_xlambda(model, &va, &vb);
                t.hom.require(before == after, || {
                    format!("{ctx}, pair {pair}: dim Hom = {before} before and {after} after the transform")
                });
            }
            Err(e) => t.hom.error(format!("{ctx}, pair {pair}"), e),
        }
    }

    for trial in 0..sizes.round_trips {
        let m = random::yhat_object(rng, model, sizes.max_dim);
        let wit = || format!("{ctx}, object {trial} with fibers {:?}", m.dims());
        match unit(model, &m) {
            Ok(u) => {
                t.unit.deviation(u.deviation, wit);
                t.unit.require(u.is_iso, || format!("{}: unit is not invertible", wit()));
            }
            Err(e) => t.unit.error(wit(), e),
        }
        let v = fm_lambda(model, &m).and_then(|v| {
            let q = random::invertible(rng, v.dim);
            v.conjugate(&q)
        });
        match v {
            Ok(v) => {
                match counit(model, &v) {
                    Ok(c) => {
                        t.counit.deviation(c.deviation, wit);
                        t.counit.require(c.is_iso, || format!("{}: counit is not invertible", wit()));
                    }
                    Err(e) => t.counit.error(wit(), e),
                }
                match fm_lambda_inverse(model, &v).and_then(|w| check_linearization(&w, model.lambda())) {
                    Ok(c) => t.inverse.deviation(c.max_deviation, wit),
                    Err(e) => t.inverse.error(wit(), e),
                }
            }
            Err(e) => t.counit.error(wit(), e),
        }
        match verify_factorization(model, &m) {
            Ok(f) => {
                t.factorization.deviation(f.deviation, wit);
                t.factorization.require(f.is_iso, || format!("{}: comparison map is not invertible", wit()));
            }
            Err(e) => t.factorization.error(wit(), e),
        }
    }

    let n = model.khat().order();
    let dims: Vec<usize> = (0..model.bhat().order()).map(|_| rng.gen_range(0..=sizes.max_dim)).collect();
    for y in 0..n {
        match fm_ab_equivariance_iso(model, &dims, y) {
            Ok(iso) => {
                t.equivariance.require(iso.exact, || format!("{ctx}: phases of the iso for yhat {y} on {dims:?}"));
                t.equivariance_scalars.deviation(iso.deviation, || format!("{ctx}: yhat {y} on {dims:?}"));
            }
            Err(e) => t.equivariance.error(&ctx, e),
        }
        for y2 in 0..n {
            match equivariance_coherence(model, &dims, y, y2) {
                Ok(c) => {
                    t.coherence.deviation(c.deviation, || format!("{ctx}: pair ({y}, {y2}) on {dims:?}"));
                    t.equivariance.require(c.exact, || format!("{ctx}: coherence phases for ({y}, {y2}) on {dims:?}"));
                }
                Err(e) => t.coherence.error(&ctx, e),
            }
        }
    }

    let f: Vec<Complex64> = (0..model.bhat().order()).map(|_| random::complex(rng)).collect();
    match fm_ab_functions(model, &f).and_then(|g| fm_ab_inverse_functions(model, &g)) {
        Ok(back) => {
            let dev = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            t.fourier.deviation(dev, || format!("{ctx}: functions"));
        }
        Err(e) => t.fourier.error(&ctx, e),
    }
    match fm_ab(model, &dims).and_then(|rep| fm_ab_inverse(model, &rep)) {
        Ok((back, _)) => t.fourier.require(back == dims, || format!("{ctx}: fibers {dims:?} come back as {back:?}")),
        Err(e) => t.fourier.error(&ctx, e),
    }
}

/// Orbit product against the `lambda`-weighted Fourier product on two free `K`-orbits.
fn points(opts: &Options) -> PropertyResult {
    let mut tally = Tally::new("product_on_points", TOLERANCE);
    let third = Phase::new(1, 3);
    let half = Phase::new(1, 2);
    let cases: Vec<(Vec<u64>, Vec<Vec<Phase>>)> = vec![
        (vec![2], vec![vec![half]]),
        (vec![3], vec![vec![third]]),
        (vec![2, 2], vec![vec![half, half], vec![Phase::ZERO, half]]),
        (vec![3, 3], vec![vec![third, third.mul_int(2)], vec![Phase::ZERO, third]]),
    ];
    let pairs = opts.grid.pick(5, 50);
    for (factors, gens) in cases {
        let ctx = format!("K={factors:?}");
        let k = FiniteAbelianGroup::new(factors).expect("valid factors");
        let result = (|| -> Result<()> {
            let dual = lambda_sharp(&GroupCocycleTable::bilinear(k.clone(), &gens)?)?;
            let n = k.order();
            let act = (0..2 * n).map(|s| (0..n).map(|g| (s / n) * n + k.add(s % n, g)).collect()).collect();
            let orbit = GSet::new(k.clone(), act)?;
            let mut rng = random::stream(opts.seed, &format!("finite-fm/points/{ctx}"));
            for pair in 0..pairs {
                let phi: Vec<Complex64> = (0..orbit.len()).map(|_| random::complex(&mut rng)).collect();
                let psi: Vec<Complex64> = (0..orbit.len()).map(|_| random::complex(&mut rng)).collect();
                let x = rng.gen_range(0..orbit.len());
                let r = star_on_points_check(&dual, &orbit, x, &phi, &psi)?;
                tally.deviation(r.deviation, || format!("{ctx}, pair {pair} at point {x}"));
            }
            Ok(())
        })();
        if let Err(e) = result {
            tally.error(&ctx, e);
        }
    }
    tally.finish()
}

pub(super) fn finite_fm(opts: &Options) -> Vec<PropertyResult> {
    let sizes = Sizes::for_grid(opts.grid);
    let mut tallies = FmTallies::new();
    for (i, model) in models(opts.grid).iter().enumerate() {
        let mut rng = random::stream(opts.seed, &format!("finite-fm/{i}"));
        check_model(model, &mut rng, &sizes, &mut tallies);
    }
    let mut out = tallies.finish();
    out.push(points(opts));
    out
}

/// Report of `fm demo`: the finite-fm checks on one model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FmDemo {
    #[serde(rename = "B")]
    pub b: Vec<u64>,
    #[serde(rename = "K_hat_invariant_factors")]
    pub k_hat: Vec<u64>,
    /// The descended `lambda` on generator pairs of `Khat`.
    pub lambda_on_generators: Vec<Vec<String>>,
    pub seed: u64,
    pub holds: bool,
    pub properties: Vec<PropertyResult>,
}

/// The model with character group `B` whose `Khat` and `lambda` descend from `lambda`.
pub fn fm_demo(lambda: &BilinearCocycle, b: &[u64], seed: u64, grid: Grid) -> Result<FmDemo> {
    let analysis = analyze(lambda, Splitting::UnitDiagonal)?;
    let table = descend_cocycle(lambda, &analysis.k_hat, Splitting::UnitDiagonal)?;
    let khat = table.group().clone();
    let model = TorusModel::with_embedding(FiniteAbelianGroup::new(b.to_vec())?, table)?;
    let sizes = Sizes::for_grid(grid);
    let mut tallies = FmTallies::new();
    let mut rng = random::stream(seed, "fm-demo");
    check_model(&model, &mut rng, &sizes, &mut tallies);
    let properties = tallies.finish();
    let gens: Vec<usize> = (0..khat.rank()).map(|i| khat.generator(i)).collect();
    Ok(FmDemo {
        b: model.b().factors().to_vec(),
        k_hat: khat.factors().to_vec(),
        lambda_on_generators: gens.iter().map(|&x| gens.iter().map(|&y| model.lambda().get(x, y).to_string()).collect()).collect(),
        seed,
        holds: properties.iter().all(|p| p.holds),
        properties,
    })
}
