use alloc::vec::Vec;

use num_complex::Complex64;

use super::objects::{BRep, ModuleOnXLambda};
use super::transform::{check_object, fm_ab, push_forward};
use super::TorusModel;
use crate::equivariant::{hom_space, offsets, EquivariantObject};
use crate::linalg::{self, CMatrix};
use crate::{Error, Phase, Result};

/// Grades of `R_y^* M`: `(R_y^* M)_beta = M_{beta + y}`.
pub fn pullback(model: &TorusModel, dims: &[usize], y: usize) -> Result<Vec<usize>> {
    check_khat(model, y)?;
    check_grades(model, dims)?;
    Ok((0..model.bhat().order()).map(|beta| dims[model.shift(beta, y)]).collect())
}

/// `rep (x) L_y`, where `b` acts on `L_y` by `y(b)`.
pub fn tensor_line(model: &TorusModel, rep: &BRep, y: usize) -> Result<BRep> {
    check_khat(model, y)?;
    Ok(BRep {
        dim: rep.dim,
        rho: rep
            .rho
            .iter()
            .enumerate()
            .map(|(b, r)| r * model.khat_character(y, b).embed())
            .collect(),
    })
}

fn check_khat(model: &TorusModel, y: usize) -> Result<()> {
    if y >= model.khat().order() {
        return Err(Error::NotInGroup(alloc::vec![y as u64]));
    }
    Ok(())
}

fn check_grades(model: &TorusModel, dims: &[usize]) -> Result<()> {
    if dims.len() != model.bhat().order() {
        return Err(Error::DimensionMismatch {
            expected: model.bhat().order(),
            found: dims.len(),
        });
    }
    Ok(())
}

/// One block of a grade-wise phase isomorphism: the identity of the fiber
/// times `phase`, from `source_grade` to `target_grade`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoBlock {
    pub source_grade: usize,
    pub target_grade: usize,
    pub phase: Phase,
}

/// `fm_ab(R_y^* M) -> fm_ab(M) (x) L_y^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceIso {
    pub yhat: usize,
    pub source: BRep,
    pub target: BRep,
    pub blocks: Vec<IsoBlock>,
    pub matrix: CMatrix,
    /// Every block intertwines `beta(b)` with `(beta y)(b) y(b)^{-1}` in exact phases.
    pub exact: bool,
    pub deviation: f64,
}

pub fn fm_ab_equivariance_iso(model: &TorusModel, dims: &[usize], y: usize) -> Result<EquivarianceIso> {
    let pulled = pullback(model, dims, y)?;
    let source = fm_ab(model, &pulled)?;
    let target = tensor_line(model, &fm_ab(model, dims)?, model.khat().neg(y))?;
    let nb = model.bhat().order();
    let blocks: Vec<IsoBlock> = (0..nb)
        .map(|beta| IsoBlock {
            source_grade: beta,
            target_grade: model.shift(beta, y),
            phase: Phase::ZERO,
        })
        .collect();
    let exact = blocks.iter().all(|blk| {
        (0..model.b().order()).all(|b| {
            let src = model.b().pairing(b, blk.source_grade);
            let tgt = model.b().pairing(b, blk.target_grade) - model.khat_character(y, b);
            tgt + blk.phase == blk.phase + src
        })
    });
    let matrix = block_matrix(&pulled, dims, &blocks);
    let deviation = source
        .rho
        .iter()
        .zip(&target.rho)
        .map(|(s, t)| linalg::max_abs_diff(&(&matrix * s), &(t * &matrix)))
        .fold(0.0, f64::max);
    Ok(EquivarianceIso {
        yhat: y,
        source,
        target,
        blocks,
        matrix,
        exact,
        deviation,
    })
}

fn block_matrix(source_dims: &[usize], target_dims: &[usize], blocks: &[IsoBlock]) -> CMatrix {
    let (so, to) = (offsets(source_dims), offsets(target_dims));
    let mut out = linalg::zeros(to[target_dims.len()], so[source_dims.len()]);
    for blk in blocks {
        let d = source_dims[blk.source_grade];
        let p = blk.phase.embed();
        for i in 0..d {
            out[(to[blk.target_grade] + i, so[blk.source_grade] + i)] = p;
        }
    }
    out
}

/// Comparison of `iso(M, y1) . iso(R_{y1}^* M, y2)` with `iso(M, y1 y2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceReport {
    pub exact: bool,
    pub deviation: f64,
}

pub fn equivariance_coherence(model: &TorusModel, dims: &[usize], y1: usize, y2: usize) -> Result<CoherenceReport> {
    let first = fm_ab_equivariance_iso(model, dims, y1)?;
    let second = fm_ab_equivariance_iso(model, &pullback(model, dims, y1)?, y2)?;
    let direct = fm_ab_equivariance_iso(model, dims, model.khat().add(y1, y2))?;
    let exact = second.blocks.iter().all(|s| {
        let f = &first.blocks[s.target_grade];
        let d = &direct.blocks[s.source_grade];
        f.target_grade == d.target_grade && f.phase + s.phase == d.phase
    });
    let composite = &first.matrix * &second.matrix;
    Ok(CoherenceReport {
        exact: exact && first.exact && second.exact && direct.exact,
        deviation: linalg::max_abs_diff(&composite, &direct.matrix),
    })
}

/// The two routes to `fm_lambda(M)` and the comparison isomorphism between them.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub direct: ModuleOnXLambda,
    /// `fm_ab(M)` with `m_k` assembled from `fm_ab(rho_k)` and the equivariance isomorphisms.
    pub equivariantized: ModuleOnXLambda,
    pub comparison: CMatrix,
    pub deviation: f64,
    pub is_iso: bool,
}

pub fn verify_factorization(model: &TorusModel, m: &EquivariantObject) -> Result<FactorizationReport> {
    check_object(model, m)?;
    let dims = m.dims();
    let ab = fm_ab(model, dims)?;
    let off = offsets(dims);
    let mut maps = Vec::with_capacity(model.khat().order());
    for k in 0..model.khat().order() {
        let iso = fm_ab_equivariance_iso(model, dims, k)?;
        // fm_ab of the graded map rho_k: M -> R_k^* M.
        let pulled = pullback(model, dims, k)?;
        let po = offsets(&pulled);
        let mut graded = linalg::zeros(po[pulled.len()], off[dims.len()]);
        for beta in 0..dims.len() {
            graded
                .view_mut((po[beta], off[beta]), (pulled[beta], dims[beta]))
                .copy_from(m.rho(k, beta));
        }
        maps.push(&iso.matrix * graded);
    }
    let equivariantized = ModuleOnXLambda::new(model, ab.dim, ab.rho, maps)?;
    let p = push_forward(model, m)?;
    let nk = model.khat().order();
    let mut read = linalg::zeros(m.total_dim(), p.x.nrows());
    for (beta, &d) in dims.iter().enumerate() {
        for a in 0..d {
            read[(off[beta] + a, p.t_offsets[beta] + a * nk)] = Complex64::new(1.0, 0.0);
        }
    }
    let comparison = read * &p.x;
    let deviation = p
        .module
        .morphism_defect(&equivariantized, &comparison)
        .max(equivariantized.defect(model));
    let is_iso = comparison.is_square() && linalg::rank(&comparison) == comparison.nrows();
    Ok(FactorizationReport {
        direct: p.module,
        equivariantized,
        comparison,
        deviation,
        is_iso,
    })
}

pub fn hom_dim_xhat(a: &EquivariantObject, b: &EquivariantObject) -> Result<usize> {
    Ok(hom_space(a, b)?.len())
}

/// `dim Hom(V, V')` of modules over `O_{X_lambda}`: maps commuting with
/// `rho(b)` and `m_k` on generators of `B` and `Khat`.
pub fn hom_dim_xlambda(model: &TorusModel, v: &ModuleOnXLambda, w: &ModuleOnXLambda) -> usize {
    let (d1, d2) = (v.dim, w.dim);
    let unknowns = d1 * d2;
    if unknowns == 0 {
        return 0;
    }
    let gens: Vec<(&CMatrix, &CMatrix)> = model
        .b_generators()
        .into_iter()
        .map(|b| (&v.rho[b], &w.rho[b]))
        .chain(model.khat_generators().into_iter().map(|k| (&v.m[k], &w.m[k])))
        .collect();
    if gens.is_empty() {
        return unknowns;
    }
    let mut sys = linalg::zeros(gens.len() * unknowns, unknowns);
    for (i, (a, b)) in gens.iter().enumerate() {
        // vec(B F - F A) = (I (x) B - A^T (x) I) vec(F), column-major.
        let block = linalg::kron(&linalg::identity(d1), b) - linalg::kron(&a.transpose(), &linalg::identity(d2));
        sys.view_mut((i * unknowns, 0), (unknowns, unknowns)).copy_from(&block);
    }
    linalg::nullspace(&sys).ncols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::{fm_lambda, standard_object};
    use crate::group::{FiniteAbelianGroup, GroupCocycleTable};

    fn z4_with_z2() -> TorusModel {
        let lambda = GroupCocycleTable::trivial(FiniteAbelianGroup::cyclic(2));
        TorusModel::with_embedding(FiniteAbelianGroup::cyclic(4), lambda).unwrap()
    }

    #[test]
    fn identity_iso_for_identity_shift() {
        let m = z4_with_z2();
        let iso = fm_ab_equivariance_iso(&m, &[1, 0, 2, 0], 0).unwrap();
        assert_eq!(iso.matrix, linalg::identity(3));
        assert!(iso.exact);
    }

    #[test]
    fn z4_iso_and_coherence() {
        let m = z4_with_z2();
        let dims = [1, 0, 2, 0];
        let iso = fm_ab_equivariance_iso(&m, &dims, 1).unwrap();
        assert!(iso.exact && iso.deviation < 1e-12);
        for y1 in 0..2 {
            for y2 in 0..2 {
                let c = equivariance_coherence(&m, &dims, y1, y2).unwrap();
                assert!(c.exact && c.deviation < 1e-12);
            }
        }
        assert!(fm_ab_equivariance_iso(&m, &dims, 2).is_err());
    }

    #[test]
    fn factorization_on_trivial_khat_is_identity() {
        let m = TorusModel::with_embedding(
            FiniteAbelianGroup::cyclic(3),
            GroupCocycleTable::trivial(FiniteAbelianGroup::trivial()),
        )
        .unwrap();
        let obj = standard_object(&m, &[1, 2, 1]).unwrap();
        let r = verify_factorization(&m, &obj).unwrap();
        assert!(linalg::max_abs_diff(&r.comparison, &linalg::identity(4)) < 1e-12);
        assert!(r.deviation < 1e-12 && r.is_iso);
    }

    #[test]
    fn factorization_on_twisted_klein_model() {
        let half = Phase::new(1, 2);
        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let lambda = GroupCocycleTable::bilinear(k, &[vec![half, half], vec![Phase::ZERO, half]]).unwrap();
        let m = TorusModel::with_embedding(FiniteAbelianGroup::new(vec![2, 4]).unwrap(), lambda).unwrap();
        let obj = standard_object(&m, &[1, 2]).unwrap();
        let r = verify_factorization(&m, &obj).unwrap();
        assert!(r.deviation < 1e-9 && r.is_iso, "{}", r.deviation);
        let other = standard_object(&m, &[0, 1]).unwrap();
        let (v, w) = (fm_lambda(&m, &obj).unwrap(), fm_lambda(&m, &other).unwrap());
        assert_eq!(hom_dim_xhat(&obj, &other).unwrap(), hom_dim_xlambda(&m, &v, &w));
        assert_eq!(hom_dim_xhat(&obj, &obj).unwrap(), hom_dim_xlambda(&m, &v, &v));
    }
}
