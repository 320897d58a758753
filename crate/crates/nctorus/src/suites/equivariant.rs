use nctorus_core::equivariant::{
    check_linearization, forget, free, hom_space, morphism_defect, AlgebraModule, TwistedAlgebra,
};
use nctorus_core::group::{FiniteAbelianGroup, GSet, GroupCocycleTable};
use nctorus_core::{linalg, Error, Phase, TOLERANCE};
use rand::Rng;

use super::{Options, PropertyResult, Tally};
use crate::random::{self, SuiteRng};

struct Sample {
    group: FiniteAbelianGroup,
    seed: usize,
    phi: GroupCocycleTable,
    rng: SuiteRng,
}

impl Sample {
    fn label(&self) -> String {
        format!("G={:?} sample {}", self.group.factors(), self.seed)
    }
}

fn bases(group: &FiniteAbelianGroup) -> [GSet; 3] {
    [
        GSet::regular(group.clone()),
        GSet::trivial(group.clone(), 2),
        GSet::point(group.clone()),
    ]
}

/// One random cocycle per group of order `<= max_order` and sample index.
fn samples(opts: &Options, max_order: u64, per_group: usize) -> Vec<Sample> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for group in FiniteAbelianGroup::all_of_order(n) {
            for seed in 0..per_group {
                let mut rng = random::stream(opts.seed, &format!("twisted-equivariant/{:?}/{seed}", group.factors()));
                let phi = random::group_cocycle(&mut rng, &group);
                out.push(Sample { group: group.clone(), seed, phi, rng });
            }
        }
    }
    if opts.mutate_phi {
        if let Some(s) = out.iter_mut().find(|s| s.group.order() >= 3) {
            let bump = Phase::new(1, s.group.order() as i64);
            s.phi = s.phi.with_entry(1, 1, s.phi.get(1, 1) + bump);
        }
    }
    out
}

pub(super) fn twisted_equivariant(opts: &Options) -> Vec<PropertyResult> {
    let mut cocycle = Tally::exact("phi_cocycle");
    let mut linearized = Tally::new("free_linearization", TOLERANCE);
    let mut adjunction = Tally::exact("free_forget_adjunction");
    let mut adjunction_maps = Tally::new("free_forget_adjunction_maps", TOLERANCE);
    let mut algebra = Tally::new("algebra_round_trip", TOLERANCE);
    let (max_order, per_group) = opts.grid.pick((8, 3), (16, 20));
    for mut s in samples(opts, max_order, per_group) {
        let label = s.label();
        match s.phi.check() {
            Ok(()) => cocycle.require(true, String::new),
            Err(Error::NotACocycle { g1, g2, g3, defect }) => cocycle.require(false, || {
                let e = |x| s.group.element(x);
                format!(
                    "{label}: cocycle identity fails at (g1, g2, g3) = ({:?}, {:?}, {:?}), defect {defect}",
                    e(g1),
                    e(g2),
                    e(g3)
                )
            }),
            Err(e) => cocycle.error(&label, e),
        }

        let [regular, trivial, point] = bases(&s.group);
        let base = [&regular, &trivial, &point][s.seed % 3];
        let a: Vec<usize> = (0..base.len()).map(|_| s.rng.gen_range(0..=2)).collect();
        match free(base, &a, &s.phi).and_then(|obj| check_linearization(&obj, &s.phi)) {
            Ok(c) => linearized.deviation(c.max_deviation, || format!("{label}, A={a:?}: witness {:?}", c.witness)),
            Err(e) => linearized.error(&label, e),
        }

        if s.group.order() <= 8 && s.seed < 5 {
            for base in [&regular, &trivial, &point] {
                let a: Vec<usize> = (0..base.len()).map(|_| s.rng.gen_range(0..=2)).collect();
                let c: Vec<usize> = (0..base.len()).map(|_| s.rng.gen_range(0..=1)).collect();
                let result = (|| {
                    let b = free(base, &c, &s.phi)?;
                    let p: Vec<_> = b.dims().iter().map(|&d| random::invertible(&mut s.rng, d)).collect();
                    let b = b.conjugate(&p)?;
                    let fa = free(base, &a, &s.phi)?;
                    let homs = hom_space(&fa, &b)?;
                    let graded: usize = a.iter().zip(forget(&b)).map(|(x, y)| x * y).sum();
                    let worst = homs.iter().map(|h| morphism_defect(&fa, &b, h)).fold(0.0, f64::max);
                    Ok::<_, Error>((homs.len(), graded, worst))
                })();
                match result {
                    Ok((homs, graded, worst)) => {
                        adjunction.require(homs == graded, || {
                            format!("{label}, A={a:?}: dim Hom(free A, B) = {homs}, graded Hom = {graded}")
                        });
                        adjunction_maps.deviation(worst, || format!("{label}, A={a:?}"));
                    }
                    Err(e) => adjunction.error(&label, e),
                }
            }
        }

        if s.group.order() <= 4 && s.seed < 4 {
            for base in [&regular, &trivial, &point] {
                let a: Vec<usize> = (0..base.len()).map(|_| s.rng.gen_range(0..=1)).collect();
                let result = (|| {
                    let alg = TwistedAlgebra::new(base.clone(), s.phi.clone())?;
                    let obj = free(base, &a, &s.phi)?;
                    if obj.total_dim() > 8 {
                        return Ok(None);
                    }
                    let plain = alg.to_module(&obj)?;
                    let q = random::invertible(&mut s.rng, plain.dim);
                    let qi = linalg::inverse(&q).ok_or(Error::Singular)?;
                    let m = AlgebraModule {
                        dim: plain.dim,
                        action: plain.action.iter().map(|x| &q * x * &qi).collect(),
                    };
                    let (iso, dev) = alg.round_trip_iso(&m)?;
                    let (back, _) = alg.from_module(&m)?;
                    let lin = check_linearization(&back, &s.phi)?.max_deviation;
                    let defect = alg.associativity_defect().max(alg.module_defect(&m));
                    Ok::<_, Error>(Some((dev.max(lin).max(defect), linalg::rank(&iso) == m.dim)))
                })();
                match result {
                    Ok(Some((dev, full_rank))) => {
                        algebra.deviation(dev, || format!("{label}, A={a:?}"));
                        algebra.require(full_rank, || format!("{label}, A={a:?}: round trip map is not invertible"));
                    }
                    Ok(None) => {}
                    Err(e) => algebra.error(&label, e),
                }
            }
        }
    }
    vec![
        cocycle.finish(),
        linearized.finish(),
        adjunction.finish(),
        adjunction_maps.finish(),
        algebra.finish(),
    ]
}
