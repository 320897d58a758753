//! Acceptance criteria 1-9, one PASS/FAIL line each.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use nctorus::suites::{run_scope, Grid, Options, PropertyResult, Scope, ScopeReport};

const SEED: u64 = 7;

struct Timed {
    report: ScopeReport,
    elapsed: Duration,
}

struct Criterion {
    id: u32,
    title: &'static str,
    holds: bool,
    detail: String,
}

fn property<'a>(r: &'a ScopeReport, name: &str) -> &'a PropertyResult {
    r.properties
        .iter()
        .find(|p| p.name == name)
        .unwrap_or_else(|| panic!("{} has no property {name}", r.scope))
}

/// All named properties hold and the scope finished within `limit`.
fn from_properties(id: u32, title: &'static str, t: &Timed, names: &[&str], limit: Option<Duration>) -> Criterion {
    let mut holds = true;
    let mut parts = Vec::new();
    for name in names {
        let p = property(&t.report, name);
        holds &= p.holds;
        parts.push(format!("{name}: {} checks, max dev {:.1e}", p.checks, p.max_deviation));
        if let Some(w) = &p.witness {
            parts.push(format!("witness {w}"));
        }
    }
    if let Some(limit) = limit {
        let in_time = t.elapsed <= limit;
        holds &= in_time;
        parts.push(format!("{:.2}s of {}s", t.elapsed.as_secs_f64(), limit.as_secs()));
    }
    Criterion {
        id,
        title,
        holds,
        detail: parts.join("; "),
    }
}

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctorus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cli_determinism() -> Criterion {
    let seed = SEED.to_string();
    let full = ["verify", "all", "--seed", seed.as_str()];
    let (a, b) = (verify(&full), verify(&full));
    let scoped = ["verify", "--scope", "finite-fm", "--seed", seed.as_str(), "--json"];
    let (c, d) = (verify(&scoped), verify(&scoped));
    let mutated = verify(&["verify", "twisted-equivariant", "--seed", seed.as_str(), "--mutate", "phi"]);
    let witness = String::from_utf8_lossy(&mutated.stderr)
        .lines()
        .find(|l| l.contains("cocycle identity fails"))
        .map(str::to_owned);
    let checks = [
        ("verify all exit 0", a.status.code() == Some(0) && b.status.code() == Some(0)),
        ("verify all byte-identical", a.stdout == b.stdout && !a.stdout.is_empty()),
        ("finite-fm --json byte-identical", c.status.code() == Some(0) && c.stdout == d.stdout),
        ("mutation exit 1", mutated.status.code() == Some(1)),
        ("mutation witness printed", witness.is_some()),
    ];
    let mut detail: Vec<String> = checks
        .iter()
        .map(|(name, ok)| format!("{name}: {}", if *ok { "yes" } else { "no" }))
        .collect();
    if let Some(w) = witness {
        detail.push(w);
    }
    Criterion {
        id: 9,
        title: "CLI determinism and mutation witness",
        holds: checks.iter().all(|(_, ok)| *ok),
        detail: detail.join("; "),
    }
}

fn main() -> ExitCode {
    let opts = Options {
        seed: SEED,
        grid: Grid::Full,
        mutate_phi: false,
    };
    let scopes = [Scope::LaurentStar, Scope::Qweyl, Scope::Lattice, Scope::TwistedEquivariant, Scope::FiniteFm];
    let mut runs = BTreeMap::new();
    for scope in scopes {
        let start = Instant::now();
        let report = run_scope(scope, &opts);
        runs.insert(scope, Timed { report, elapsed: start.elapsed() });
    }
    let secs = Duration::from_secs;
    let star = &runs[&Scope::LaurentStar];
    let fm = &runs[&Scope::FiniteFm];
    let criteria = vec![
        from_properties(1, "star-product associativity", star, &["associativity", "associativity_exact"], Some(secs(10))),
        from_properties(2, "majorant submultiplicativity", star, &["majorant_submultiplicativity"], None),
        from_properties(
            3,
            "q-Weyl confluence and the P_lambda relation",
            &runs[&Scope::Qweyl],
            &["confluence_phases", "confluence_scalars", "commutation_relations", "p_lambda_relation", "p_lambda_relation_numeric"],
            None,
        ),
        from_properties(
            4,
            "lattice data against enumeration",
            &runs[&Scope::Lattice],
            &["h_hat_matches_enumeration", "k_hat_matches_enumeration", "sharp_identity", "descended_commutator"],
            Some(secs(60)),
        ),
        from_properties(
            5,
            "twisted-equivariant suite",
            &runs[&Scope::TwistedEquivariant],
            &["phi_cocycle", "free_linearization", "free_forget_adjunction", "free_forget_adjunction_maps", "algebra_round_trip"],
            None,
        ),
        from_properties(6, "product on points", fm, &["product_on_points"], None),
        from_properties(
            7,
            "deformed FM equivalence",
            fm,
            &["kernel_laws", "hom_dimensions_preserved", "unit_round_trip", "counit_round_trip", "inverse_is_linearized", "factorization"],
            Some(secs(120)),
        ),
        from_properties(
            8,
            "equivariance of fm_ab",
            fm,
            &["fm_ab_equivariance_phases", "fm_ab_equivariance_scalars", "fm_ab_equivariance_coherence"],
            None,
        ),
        cli_determinism(),
    ];
    let mut failed = 0;
    for c in &criteria {
        println!("{} criterion {} ({}): {}", if c.holds { "PASS" } else { "FAIL" }, c.id, c.title, c.detail);
        failed += usize::from(!c.holds);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
