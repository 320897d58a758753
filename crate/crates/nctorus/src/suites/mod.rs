//! Seeded property suites behind `verify`, `fm demo` and the acceptance target.
//!
//! Every property draws from its own random stream, so a scope's report does
//! not depend on which other scopes run alongside it.

mod algebra;
mod equivariant;
mod fm;
mod lattice;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use fm::{fm_demo, FmDemo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

impl Grid {
    fn pick<T>(self, small: T, full: T) -> T {
        match self {
            Grid::Small => small,
            Grid::Full => full,
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            _ => Err(format!("unknown grid '{s}' (expected small or full)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    Cocycle,
    LaurentStar,
    Qweyl,
    Lattice,
    TwistedEquivariant,
    FiniteFm,
}

impl Scope {
    pub const ALL: [Scope; 6] = [
        Scope::Cocycle,
        Scope::LaurentStar,
        Scope::Qweyl,
        Scope::Lattice,
        Scope::TwistedEquivariant,
        Scope::FiniteFm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::Cocycle => "cocycle",
            Scope::LaurentStar => "laurent-star",
            Scope::Qweyl => "qweyl",
            Scope::Lattice => "lattice",
            Scope::TwistedEquivariant => "twisted-equivariant",
            Scope::FiniteFm => "finite-fm",
        }
    }

    /// `all` expands to every scope.
    pub fn parse_list(s: &str) -> Result<Vec<Scope>, String> {
        if s == "all" {
            return Ok(Scope::ALL.to_vec());
        }
        Scope::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .map(|sc| vec![sc])
            .ok_or_else(|| {
                let names: Vec<&str> = Scope::ALL.iter().map(|sc| sc.name()).collect();
                format!("unknown scope '{s}' (expected all, {})", names.join(", "))
            })
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub grid: Grid,
    /// Corrupt one entry of one sampled group cocycle.
    pub mutate_phi: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checks: u64,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScopeReport {
    pub scope: String,
    pub holds: bool,
    pub properties: Vec<PropertyResult>,
}

impl ScopeReport {
    fn new(scope: Scope, properties: Vec<PropertyResult>) -> Self {
        ScopeReport {
            scope: scope.name().into(),
            holds: properties.iter().all(|p| p.holds),
            properties,
        }
    }

    pub fn first_failure(&self) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| !p.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub grid: Grid,
    pub holds: bool,
    pub scopes: Vec<ScopeReport>,
}

impl Summary {
    pub fn first_failure(&self) -> Option<(&ScopeReport, &PropertyResult)> {
        self.scopes.iter().find_map(|s| s.first_failure().map(|p| (s, p)))
    }
}

pub fn run_scope(scope: Scope, opts: &Options) -> ScopeReport {
    let props = match scope {
        Scope::Cocycle => algebra::cocycle(opts),
        Scope::LaurentStar => algebra::laurent_star(opts),
        Scope::Qweyl => algebra::qweyl(opts),
        Scope::Lattice => lattice::lattice(opts),
        Scope::TwistedEquivariant => equivariant::twisted_equivariant(opts),
        Scope::FiniteFm => fm::finite_fm(opts),
    };
    ScopeReport::new(scope, props)
}

pub fn run(scopes: &[Scope], opts: &Options) -> Summary {
    let mut scopes = scopes.to_vec();
    scopes.sort();
    scopes.dedup();
    let reports: Vec<ScopeReport> = scopes.iter().map(|&s| run_scope(s, opts)).collect();
    Summary {
        seed: opts.seed,
        grid: opts.grid,
        holds: reports.iter().all(|r| r.holds),
        scopes: reports,
    }
}

/// Running record of one property: check count, worst deviation, first failure.
pub(crate) struct Tally {
    name: &'static str,
    tolerance: f64,
    checks: u64,
    worst: f64,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str, tolerance: f64) -> Self {
        Tally {
            name,
            tolerance,
            checks: 0,
            worst: 0.0,
            witness: None,
        }
    }

    /// A property checked in exact arithmetic.
    pub(crate) fn exact(name: &'static str) -> Self {
        Tally::new(name, 0.0)
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn deviation(&mut self, dev: f64, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if dev.is_nan() || dev > self.tolerance {
            self.fail(|| format!("{} (deviation {dev:e})", witness()));
        }
        if dev.is_nan() || dev > self.worst {
            self.worst = dev;
        }
    }

    pub(crate) fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.require_n(1, ok, witness);
    }

    pub(crate) fn require_n(&mut self, n: u64, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += n;
        if !ok {
            self.fail(witness);
        }
    }

    pub(crate) fn error(&mut self, context: impl fmt::Display, e: impl fmt::Display) {
        self.checks += 1;
        self.fail(|| format!("{context}: {e}"));
    }

    pub(crate) fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.into(),
            checks: self.checks,
            tolerance: self.tolerance,
            max_deviation: self.worst,
            holds: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

/// `|a - b| / max(1, |a|)`.
pub(crate) fn relative(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}
