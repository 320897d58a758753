//! Finite abelian groups in invariant-factor form, their characters, and finite G-sets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Phase, Result};

/// `Z/d_1 x ... x Z/d_r` with `d_1 | d_2 | ... | d_r`, every `d_i >= 2`.
///
/// Elements are indexed `0..order()` in mixed radix with the first factor
/// most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors must be at least 2, got {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors must form a divisibility chain, got {factors:?}"
            )));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    /// Any list of cyclic orders; factors equal to 1 are dropped. The list is
    /// kept as given, so it need not be a divisibility chain.
    pub fn from_cyclic_factors(factors: &[u64]) -> Self {
        FiniteAbelianGroup {
            factors: factors.iter().copied().filter(|&d| d > 1).collect(),
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup::from_cyclic_factors(&[n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &b| num_integer::lcm(a, b))
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            out[i] = (index % d) as u64;
            index /= d;
        }
        out
    }

    pub fn index(&self, x: &[u64]) -> Result<usize> {
        if x.len() != self.rank() || x.iter().zip(&self.factors).any(|(a, d)| a >= d) {
            return Err(Error::NotInGroup(x.to_vec()));
        }
        Ok(self.index_unchecked(x))
    }

    fn index_unchecked(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (a, d)| acc * (*d as usize) + *a as usize)
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| a.rem_euclid(*d as i64) as u64)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let z: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        self.index_unchecked(&z)
    }

    pub fn neg(&self, a: usize) -> usize {
        let z: Vec<u64> = self
            .element(a)
            .iter()
            .zip(&self.factors)
            .map(|(p, d)| (d - p) % d)
            .collect();
        self.index_unchecked(&z)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        let z: Vec<i64> = self.element(a).iter().map(|&p| p as i64 * k).collect();
        self.index_unchecked(&self.reduce(&z))
    }

    /// Index of the generator `e_i`.
    pub fn generator(&self, i: usize) -> usize {
        let mut x = vec![0; self.rank()];
        x[i] = 1;
        self.index_unchecked(&x)
    }

    /// Full addition table, `table[a * n + b] = a + b`.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.add(a, b));
            }
        }
        t
    }

    /// The canonical perfect pairing of the group with itself viewed as its
    /// character group: `<x, chi> = sum_i x_i chi_i / d_i`.
    pub fn pairing(&self, x: usize, chi: usize) -> Phase {
        let (a, b) = (self.element(x), self.element(chi));
        a.iter()
            .zip(&b)
            .zip(&self.factors)
            .map(|((p, q), d)| Phase::new((p * q) as i64, *d as i64))
            .sum()
    }

    /// All abelian groups of order exactly `n`, one per isomorphism class.
    pub fn all_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
        let mut out = Vec::new();
        fn rec(n: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if n == 1 {
                out.push(acc.clone());
                return;
            }
            // Choose the next invariant factor d with min | d and d | n.
            let mut d = min;
            while d <= n {
                if n % d == 0 && d % min == 0 && d >= 2 {
                    // Remaining part must be a product of multiples of d.
                    let rest = n / d;
                    if rest == 1 || rest % d == 0 {
                        acc.push(d);
                        rec(rest, d, acc, out);
                        acc.pop();
                    }
                }
                d += 1;
            }
        }
        let mut lists = Vec::new();
        rec(n, 1, &mut Vec::new(), &mut lists);
        for l in lists {
            // rec yields chains d_1 | d_2 | ... with each later factor a multiple.
            out.push(FiniteAbelianGroup { factors: l });
        }
        out
    }
}

/// A finite right G-set: `act[s][g] = s . g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    group: FiniteAbelianGroup,
    act: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: FiniteAbelianGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        let points = act.len();
        for (s, row) in act.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row.iter().any(|&t| t >= points) {
                return Err(Error::InvariantViolated(format!("point {s} maps outside the set")));
            }
            if row[0] != s {
                return Err(Error::InvariantViolated(format!("identity moves point {s}")));
            }
        }
        for s in 0..points {
            for a in 0..n {
                for b in 0..n {
                    if act[act[s][a]][b] != act[s][group.add(a, b)] {
                        return Err(Error::InvariantViolated(format!(
                            "action is not associative at point {s}"
                        )));
                    }
                }
            }
        }
        Ok(GSet { group, act })
    }

    pub fn point(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        GSet {
            group,
            act: vec![vec![0; n]],
        }
    }

    /// `points` copies of a point with trivial action.
    pub fn trivial(group: FiniteAbelianGroup, points: usize) -> Self {
        let n = group.order();
        GSet {
            group,
            act: (0..points).map(|s| vec![s; n]).collect(),
        }
    }

    /// The group acting on itself by translation.
    pub fn regular(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        let act = (0..n).map(|s| (0..n).map(|g| group.add(s, g)).collect()).collect();
        GSet { group, act }
    }

    /// `ambient` acted on by a subgroup through an embedding of group indices.
    pub fn translation(group: FiniteAbelianGroup, ambient: &FiniteAbelianGroup, embed: &[usize]) -> Self {
        let act = (0..ambient.order())
            .map(|s| embed.iter().map(|&k| ambient.add(s, k)).collect())
            .collect();
        GSet { group, act }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.act.len()
    }

    pub fn is_empty(&self) -> bool {
        self.act.is_empty()
    }

    pub fn act(&self, s: usize, g: usize) -> usize {
        self.act[s][g]
    }

    /// Orbits, each listed from its smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act[s][g]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_free(&self) -> bool {
        (0..self.len()).all(|s| (1..self.group.order()).all(|g| self.act[s][g] != s))
    }
}

/// A 2-cochain `G x G -> Q/Z` stored as a full table indexed by element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCocycleTable {
    group: FiniteAbelianGroup,
    table: Vec<Phase>,
}

impl GroupCocycleTable {
    pub fn new(group: FiniteAbelianGroup, table: Vec<Phase>) -> Result<Self> {
        let n = group.order();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        Ok(GroupCocycleTable { group, table })
    }

    pub fn from_fn(group: FiniteAbelianGroup, f: impl Fn(usize, usize) -> Phase) -> Self {
        let n = group.order();
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        GroupCocycleTable { group, table }
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        Self::from_fn(group, |_, _| Phase::ZERO)
    }

    /// The bicharacter with `phi(e_i, e_j) = gens[i][j]`. Entry `(i, j)` must be
    /// killed by both `d_i` and `d_j`.
    pub fn bilinear(group: FiniteAbelianGroup, gens: &[Vec<Phase>]) -> Result<Self> {
        let r = group.rank();
        if gens.len() != r || gens.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: gens.len(),
            });
        }
        for i in 0..r {
            for j in 0..r {
                let p = gens[i][j];
                let di = group.factors()[i] as i64;
                let dj = group.factors()[j] as i64;
                if !p.mul_int(di).is_zero() || !p.mul_int(dj).is_zero() {
                    return Err(Error::InvariantViolated(format!(
                        "generator value {p} at ({i}, {j}) is not well defined on the group"
                    )));
                }
            }
        }
        let g = group.clone();
        Ok(Self::from_fn(group, |a, b| {
            let (x, y) = (g.element(a), g.element(b));
            let mut acc = Phase::ZERO;
            for i in 0..r {
                for j in 0..r {
                    acc += gens[i][j].mul_int((x[i] * y[j]) as i64);
                }
            }
            acc
        }))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn get(&self, a: usize, b: usize) -> Phase {
        self.table[a * self.group.order() + b]
    }

    pub fn entries(&self) -> &[Phase] {
        &self.table
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, a: usize, b: usize, p: Phase) -> Self {
        let mut out = self.clone();
        let n = self.group.order();
        out.table[a * n + b] = p;
        out
    }

    /// Pointwise product of cochains.
    pub fn times(&self, other: &GroupCocycleTable) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GradingMismatch("cochains live on different groups".into()));
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| *a + *b).collect();
        Ok(GroupCocycleTable {
            group: self.group.clone(),
            table,
        })
    }

    /// `d alpha(a, b) = alpha(a) alpha(b) alpha(a + b)^-1`.
    pub fn coboundary(group: FiniteAbelianGroup, alpha: &[Phase]) -> Result<Self> {
        if alpha.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: alpha.len(),
            });
        }
        let g = group.clone();
        Ok(Self::from_fn(group, |a, b| alpha[a] + alpha[b] - alpha[g.add(a, b)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.group.clone(), |a, b| self.get(b, a))
    }

    pub fn inverse(&self) -> Self {
        Self::from_fn(self.group.clone(), |a, b| -self.get(a, b))
    }

    /// `phi(g2, g3) phi(g1 g2, g3)^-1 phi(g1, g2 g3) phi(g1, g2)^-1`.
    pub fn defect(&self, g1: usize, g2: usize, g3: usize) -> Phase {
        let grp = &self.group;
        self.get(g2, g3) - self.get(grp.add(g1, g2), g3) + self.get(g1, grp.add(g2, g3)) - self.get(g1, g2)
    }

    /// Exhaustive cocycle check; the error names the first failing triple.
    pub fn check(&self) -> Result<()> {
        let n = self.group.order();
        for g1 in 0..n {
            for g2 in 0..n {
                for g3 in 0..n {
                    let defect = self.defect(g1, g2, g3);
                    if !defect.is_zero() {
                        return Err(Error::NotACocycle { g1, g2, g3, defect });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_bilinear(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.get(g.add(a, b), c) == self.get(a, c) + self.get(b, c)
                        && self.get(a, g.add(b, c)) == self.get(a, b) + self.get(a, c)
                })
            })
        })
    }

    /// `phi(a, b) phi(b, a)^-1`.
    pub fn antisymmetrization(&self, a: usize, b: usize) -> Phase {
        self.get(a, b) - self.get(b, a)
    }
}
