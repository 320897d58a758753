//! The radical `H` of an alternating form `Lambda` on `Z^g` at a root of
//! unity, the finite quotient `K = Z^g / H`, a bilinear representative of
//! the descended class on `K`, and the dual-pair data built from it.

use alloc::vec;
use alloc::vec::Vec;

use crate::cocycle::{antisymmetrize, BilinearCocycle};
use crate::group::{FiniteAbelianGroup, GroupCocycleTable};
use crate::snf::{column_hnf, determinant, int_mul, smith, IntMatrix};
use crate::{Error, Phase, Result};

/// Columns generate a full-rank sublattice of `Z^g`, in column Hermite form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeBasis {
    basis: IntMatrix,
}

impl SublatticeBasis {
    /// Columns of `basis` (a `g x g` matrix) span the lattice.
    pub fn new(basis: IntMatrix) -> Result<Self> {
        let g = basis.len();
        if let Some(row) = basis.iter().find(|r| r.len() != g) {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: row.len(),
            });
        }
        if determinant(&basis) == 0 {
            let rank = smith(&basis, g, g).rank();
            return Err(Error::RankDeficient { rank, dim: g });
        }
        Ok(SublatticeBasis {
            basis: column_hnf(&basis),
        })
    }

    pub fn g(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        let g = self.g();
        (0..g).map(|j| (0..g).map(|i| self.basis[i][j]).collect()).collect()
    }

    /// Index of the sublattice in `Z^g`.
    pub fn index(&self) -> u64 {
        determinant(&self.basis).unsigned_abs()
    }
}

fn check_antisymmetric(lambda: &[Vec<i64>], n: i64) -> Result<usize> {
    let g = lambda.len();
    for (i, row) in lambda.iter().enumerate() {
        if row.len() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: row.len(),
            });
        }
        for j in 0..g {
            if (row[j] + lambda[j][i]).rem_euclid(n) != 0 {
                return Err(Error::NotAntisymmetric { modulus: n });
            }
        }
        if row[i].rem_euclid(n) != 0 {
            return Err(Error::NotAntisymmetric { modulus: n });
        }
    }
    Ok(g)
}

/// `H = {t : Lambda t = 0 mod N}`, computed from the Smith form of `[Lambda | N I]`.
pub fn compute_h_hat(lambda: &[Vec<i64>], n: i64) -> Result<SublatticeBasis> {
    let g = check_antisymmetric(lambda, n)?;
    if g == 0 {
        return Ok(SublatticeBasis { basis: Vec::new() });
    }
    let aug: IntMatrix = (0..g)
        .map(|i| {
            let mut row: Vec<i64> = lambda[i].iter().map(|x| x.rem_euclid(n)).collect();
            row.extend((0..g).map(|j| if i == j { n } else { 0 }));
            row
        })
        .collect();
    let s = smith(&aug, g, 2 * g);
    let r = s.rank();
    debug_assert_eq!(r, g);
    // Kernel of the augmented matrix: trailing columns of V; keep the t-part.
    let basis: IntMatrix = (0..g).map(|i| (r..2 * g).map(|j| s.v[i][j]).collect()).collect();
    SublatticeBasis::new(basis)
}

/// `Z^g / H` with its projection and generator lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KHat {
    group: FiniteAbelianGroup,
    /// Rows of the unimodular `U` that survive (nonunit invariant factors).
    projection: IntMatrix,
    /// `lifts[i]` is an exponent vector mapping to the `i`-th generator.
    lifts: Vec<Vec<i64>>,
    g: usize,
}

impl KHat {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn project(&self, t: &[i64]) -> Vec<u64> {
        self.projection
            .iter()
            .zip(self.group.factors())
            .map(|(row, &d)| {
                let x: i64 = row.iter().zip(t).map(|(a, b)| a * b).sum();
                x.rem_euclid(d as i64) as u64
            })
            .collect()
    }

    pub fn project_index(&self, t: &[i64]) -> usize {
        self.group.index(&self.project(t)).expect("projection lands in the group")
    }

    pub fn generator_lifts(&self) -> &[Vec<i64>] {
        &self.lifts
    }

    /// A representative exponent vector of a group element.
    pub fn lift(&self, index: usize) -> Vec<i64> {
        let x = self.group.element(index);
        let mut out = vec![0; self.g];
        for (k, l) in x.iter().zip(&self.lifts) {
            for (o, v) in out.iter_mut().zip(l) {
                *o += *k as i64 * v;
            }
        }
        out
    }
}

/// Invariant factors of `Z^g / H` and the projection onto them.
pub fn compute_k_hat(basis: &SublatticeBasis) -> Result<KHat> {
    let g = basis.g();
    let s = smith(&basis.basis, g, g);
    if s.rank() < g {
        return Err(Error::RankDeficient { rank: s.rank(), dim: g });
    }
    let diag = s.diagonal();
    let keep: Vec<usize> = (0..g).filter(|&i| diag[i] > 1).collect();
    let group = FiniteAbelianGroup::new(keep.iter().map(|&i| diag[i] as u64).collect())?;
    let projection = keep.iter().map(|&i| s.u[i].clone()).collect();
    let lifts = keep.iter().map(|&i| (0..g).map(|r| s.u_inv[r][i]).collect()).collect();
    Ok(KHat {
        group,
        projection,
        lifts,
        g,
    })
}

/// Choice of bilinear representative on `K` for the descended class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Splitting {
    /// `lambda_K(e_i, e_j) = Lambda(e_i, e_j)` for `i < j`, trivial otherwise.
    StrictUpper,
    /// As `StrictUpper` with `lambda_K(e_i, e_i) = 1/d_i`; always nondegenerate.
    #[default]
    UnitDiagonal,
}

/// A bilinear table on `K` whose antisymmetrization is the descent of `Lambda`.
pub fn descend_cocycle(lambda: &BilinearCocycle, khat: &KHat, splitting: Splitting) -> Result<GroupCocycleTable> {
    let anti = antisymmetrize(lambda);
    let n = lambda.order();
    let g = lambda.g();
    if khat.g != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: khat.g,
        });
    }
    let form = |s: &[i64], t: &[i64]| -> Phase {
        let mut e = 0i64;
        for i in 0..g {
            for j in 0..g {
                e += s[i] * anti[i][j] * t[j];
            }
        }
        Phase::new(e, n)
    };
    // Lambda must vanish on ker(projection) x Z^g; check a generating set of the kernel.
    let group = khat.group().clone();
    for i in 0..g {
        let mut e = vec![0; g];
        e[i] = 1;
        for j in 0..group.rank() {
            let d = group.factors()[j] as i64;
            let h: Vec<i64> = khat.lifts[j].iter().map(|x| x * d).collect();
            if !form(&h, &e).is_zero() {
                return Err(Error::DescentObstruction { lattice_vector: h });
            }
        }
        // e_i minus the lift of its image is also in the kernel.
        let back = khat.lift(khat.project_index(&e));
        let h: Vec<i64> = e.iter().zip(&back).map(|(a, b)| a - b).collect();
        for j in 0..g {
            let mut f = vec![0; g];
            f[j] = 1;
            if !form(&h, &f).is_zero() {
                return Err(Error::DescentObstruction { lattice_vector: h });
            }
        }
    }
    let r = group.rank();
    let gens: Vec<Vec<Phase>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match (i.cmp(&j), splitting) {
                    (core::cmp::Ordering::Less, _) => form(&khat.lifts[i], &khat.lifts[j]),
                    (core::cmp::Ordering::Equal, Splitting::UnitDiagonal) => {
                        Phase::new(1, group.factors()[i] as i64)
                    }
                    _ => Phase::ZERO,
                })
                .collect()
        })
        .collect();
    GroupCocycleTable::bilinear(group, &gens)
}

/// `lambda_K`, the sharp map `K -> Hom(K, C^x)`, its inverse, and
/// `omega(k1, k2) = lambda_K(flat k1, flat k2)`.
///
/// Characters are indexed by group elements through the canonical pairing
/// `<x, c> = sum_i x_i c_i / d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPairData {
    pub lambda: GroupCocycleTable,
    pub sharp: Vec<usize>,
    pub flat: Vec<usize>,
    pub omega: GroupCocycleTable,
}

impl DualPairData {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.lambda.group()
    }

    /// Value of the character with index `chi` at `x`.
    pub fn character(&self, chi: usize, x: usize) -> Phase {
        self.group().pairing(x, chi)
    }

    /// Values of `sharp(k)` on the generators.
    pub fn character_on_generators(&self, k: usize) -> Vec<Phase> {
        let g = self.group();
        (0..g.rank()).map(|i| self.character(self.sharp[k], g.generator(i))).collect()
    }

    /// First pair where `lambda(k1, k2) != k2(sharp(k1))`.
    pub fn check_identity(&self) -> Option<(usize, usize)> {
        let n = self.group().order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.lambda.get(a, b) != self.character(self.sharp[a], b))
    }
}

pub fn lambda_sharp(lambda: &GroupCocycleTable) -> Result<DualPairData> {
    let group = lambda.group().clone();
    let n = group.order();
    if !lambda.is_bilinear() {
        return Err(Error::InvariantViolated("lambda_K is not bilinear".into()));
    }
    let mut sharp = Vec::with_capacity(n);
    for k in 0..n {
        let coords: Vec<u64> = (0..group.rank())
            .map(|i| {
                let p = lambda.get(k, group.generator(i));
                let d = group.factors()[i] as i64;
                (p.numer() * (d / p.denom())) as u64
            })
            .collect();
        sharp.push(group.index(&coords)?);
    }
    let mut flat = vec![usize::MAX; n];
    for (k, &c) in sharp.iter().enumerate() {
        if flat[c] != usize::MAX {
            let kernel = group.sub(k, flat[c]);
            return Err(Error::DegeneratePairing {
                element: group.element(kernel),
            });
        }
        flat[c] = k;
    }
    let omega = GroupCocycleTable::from_fn(group, |a, b| lambda.get(flat[a], flat[b]));
    Ok(DualPairData {
        lambda: lambda.clone(),
        sharp,
        flat,
        omega,
    })
}

/// All lattice data of a parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub h_hat: SublatticeBasis,
    pub k_hat: KHat,
    pub dual: Result<DualPairData>,
}

pub fn analyze(lambda: &BilinearCocycle, splitting: Splitting) -> Result<Analysis> {
    let h_hat = compute_h_hat(&antisymmetrize(lambda), lambda.order())?;
    let k_hat = compute_k_hat(&h_hat)?;
    let table = descend_cocycle(lambda, &k_hat, splitting)?;
    Ok(Analysis {
        h_hat,
        k_hat,
        dual: lambda_sharp(&table),
    })
}

/// Product of the exponent matrix with a column vector.
pub fn apply(m: &IntMatrix, t: &[i64]) -> Vec<i64> {
    let col: IntMatrix = t.iter().map(|&x| vec![x]).collect();
    int_mul(m, &col).into_iter().map(|r| r[0]).collect()
}
