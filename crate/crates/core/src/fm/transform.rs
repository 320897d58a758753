use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::kernel::DeformedKernel;
use super::objects::{BRep, ModuleOnXLambda};
use super::TorusModel;
use crate::equivariant::{
    check_linearization, is_isomorphism, morphism_defect, offsets, EquivariantObject, Morphism,
};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result, TOLERANCE};

/// A natural transformation component with its intertwining defect.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrip<T> {
    pub map: T,
    pub deviation: f64,
    pub is_iso: bool,
}

/// `F[b][beta] = beta(b)`.
pub fn fourier_matrix(model: &TorusModel) -> CMatrix {
    let n = model.b().order();
    CMatrix::from_fn(n, n, |b, beta| model.b().pairing(b, beta).embed())
}

/// `f |-> (b |-> sum_beta f(beta) beta(b))`.
pub fn fm_ab_functions(model: &TorusModel, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = model.b().order();
    expect_len(n, f.len())?;
    let v = fourier_matrix(model) * CMatrix::from_column_slice(n, 1, f);
    Ok(v.iter().copied().collect())
}

/// Inverse of [`fm_ab_functions`]: `F^H / |B|`.
pub fn fm_ab_inverse_functions(model: &TorusModel, g: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = model.b().order();
    expect_len(n, g.len())?;
    let v = fourier_matrix(model).adjoint() * CMatrix::from_column_slice(n, 1, g) / Complex64::new(n as f64, 0.0);
    Ok(v.iter().copied().collect())
}

fn expect_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// The `B`-representation `sum_beta M_beta` on which `b` acts by `beta(b)` on `M_beta`.
pub fn fm_ab(model: &TorusModel, dims: &[usize]) -> Result<BRep> {
    let nb = model.b().order();
    if dims.len() != nb {
        return Err(Error::GradingMismatch(format!("{} grades for |Bhat| = {nb}", dims.len())));
    }
    let dim = dims.iter().sum();
    let rho = (0..nb)
        .map(|b| {
            let diag: Vec<Complex64> = (0..nb)
                .flat_map(|beta| core::iter::repeat(model.b().pairing(b, beta).embed()).take(dims[beta]))
                .collect();
            CMatrix::from_diagonal(&linalg::CVector::from_vec(diag))
        })
        .collect();
    Ok(BRep { dim, rho })
}

/// Orthonormal bases of the weight spaces `V_beta`.
pub(crate) fn weight_spaces(model: &TorusModel, rho: &[CMatrix], dim: usize) -> Vec<CMatrix> {
    let nb = model.b().order();
    (0..nb)
        .map(|beta| {
            let mut proj = linalg::zeros(dim, dim);
            for (b, r) in rho.iter().enumerate() {
                proj += r * model.b().pairing(b, beta).embed().conj();
            }
            proj /= Complex64::new(nb as f64, 0.0);
            linalg::nullspace(&(linalg::identity(dim) - proj))
        })
        .collect()
}

/// Grade dimensions of a `B`-representation together with the isomorphism
/// `fm_ab(dims) -> rep`.
pub fn fm_ab_inverse(model: &TorusModel, rep: &BRep) -> Result<(Vec<usize>, CMatrix)> {
    let tol = structure_tolerance(&rep.rho);
    let d = rep.defect(model);
    if d > tol {
        return Err(Error::InvariantViolated(format!("not a representation of B, defect {d:e}")));
    }
    let spaces = weight_spaces(model, &rep.rho, rep.dim);
    let dims: Vec<usize> = spaces.iter().map(|e| e.ncols()).collect();
    let mut iso = linalg::zeros(rep.dim, dims.iter().sum());
    let mut col = 0;
    for e in &spaces {
        iso.view_mut((0, col), e.shape()).copy_from(e);
        col += e.ncols();
    }
    if col != rep.dim {
        return Err(Error::InvariantViolated("weight spaces do not span".into()));
    }
    Ok((dims, iso))
}

fn structure_tolerance(maps: &[CMatrix]) -> f64 {
    let scale = maps.iter().map(linalg::max_abs).fold(1.0, f64::max);
    TOLERANCE * scale * scale
}

pub(crate) fn check_object(model: &TorusModel, m: &EquivariantObject) -> Result<()> {
    if m.base() != &model.yhat_base() {
        return Err(Error::GradingMismatch("object does not live on Bhat with the Khat translation".into()));
    }
    let check = check_linearization(m, model.lambda())?;
    if !check.holds {
        return Err(Error::InvariantViolated(format!(
            "lambda-twisted linearization fails by {:e} at {:?}",
            check.max_deviation, check.witness
        )));
    }
    Ok(())
}

pub(crate) fn check_module(model: &TorusModel, v: &ModuleOnXLambda) -> Result<()> {
    let tol = structure_tolerance(&v.rho).max(structure_tolerance(&v.m));
    let d = v.defect(model);
    if d > tol {
        return Err(Error::InvariantViolated(format!("module diagram fails by {d:e}")));
    }
    Ok(())
}

/// `fm_lambda(M)` with the embedding `X` of the invariants into
/// `T = sum_beta M_beta (x) P_beta`, indexed `(beta, a, j)`.
pub(crate) struct Pushforward {
    pub module: ModuleOnXLambda,
    pub x: CMatrix,
    pub t_offsets: Vec<usize>,
}

/// `tau'_k = lambda(k, k) rho^M_k (x) sigma_k`, an untwisted `Khat`-action on `T`.
fn descent_action(model: &TorusModel, m: &EquivariantObject, kernel: &DeformedKernel, t_off: &[usize]) -> Vec<CMatrix> {
    let n = *t_off.last().unwrap_or(&0);
    (0..model.khat().order())
        .map(|k| {
            let sigma = kernel.sigma_matrix(k) * model.lambda().get(k, k).embed();
            let mut out = linalg::zeros(n, n);
            for beta in 0..model.bhat().order() {
                let t = model.shift(beta, k);
                let block = linalg::kron(m.rho(k, beta), &sigma);
                out.view_mut((t_off[t], t_off[beta]), block.shape()).copy_from(&block);
            }
            out
        })
        .collect()
}

pub(crate) fn push_forward(model: &TorusModel, m: &EquivariantObject) -> Result<Pushforward> {
    check_object(model, m)?;
    let kernel = DeformedKernel::build(model);
    let nk = kernel.rank();
    let nb = model.bhat().order();
    let t_dims: Vec<usize> = m.dims().iter().map(|d| d * nk).collect();
    let t_off = offsets(&t_dims);
    let n = t_off[nb];
    let mut proj = linalg::zeros(n, n);
    for tau in descent_action(model, m, &kernel, &t_off) {
        proj += tau;
    }
    proj /= Complex64::new(nk as f64, 0.0);
    let x = linalg::nullspace(&(linalg::identity(n) - proj));
    let xh = x.adjoint();
    let rho = (0..model.b().order())
        .map(|b| {
            let diag: Vec<Complex64> = (0..nb)
                .flat_map(|beta| {
                    (0..m.dims()[beta])
                        .flat_map(move |_| (0..nk).map(move |j| kernel_value(model, b, beta, j)))
                })
                .collect();
            &xh * CMatrix::from_diagonal(&linalg::CVector::from_vec(diag)) * &x
        })
        .collect();
    let mult = (0..nk)
        .map(|l| {
            let r = kernel.right_matrix(l);
            let blocks: Vec<CMatrix> = m.dims().iter().map(|&d| linalg::kron(&linalg::identity(d), &r)).collect();
            &xh * linalg::direct_sum(&blocks) * &x
        })
        .collect();
    let module = ModuleOnXLambda::new(model, x.ncols(), rho, mult)?;
    Ok(Pushforward {
        module,
        x,
        t_offsets: t_off,
    })
}

fn kernel_value(model: &TorusModel, b: usize, beta: usize, j: usize) -> Complex64 {
    model.b().pairing(b, model.shift(beta, j)).embed()
}

/// Pull back to `B x Bhat`, tensor with the deformed kernel and take
/// `Khat`-invariants.
pub fn fm_lambda(model: &TorusModel, m: &EquivariantObject) -> Result<ModuleOnXLambda> {
    push_forward(model, m).map(|p| p.module)
}

/// `fm_lambda(f)` for an equivariant morphism `f: M -> M'`.
pub fn fm_lambda_morphism(
    model: &TorusModel,
    source: &EquivariantObject,
    target: &EquivariantObject,
    f: &Morphism,
) -> Result<CMatrix> {
    let p = push_forward(model, source)?;
    let q = push_forward(model, target)?;
    let nk = model.khat().order();
    if f.len() != model.bhat().order() {
        return Err(Error::DimensionMismatch {
            expected: model.bhat().order(),
            found: f.len(),
        });
    }
    let blocks: Vec<CMatrix> = f.iter().map(|c| linalg::kron(c, &linalg::identity(nk))).collect();
    Ok(q.x.adjoint() * linalg::direct_sum(&blocks) * &p.x)
}

/// Weight-space decomposition of `V` with `rho_k = m_k` restricted to
/// `V_beta -> V_{beta + k}`, together with the bases `E_beta`.
pub(crate) fn pull_back(model: &TorusModel, v: &ModuleOnXLambda) -> Result<(EquivariantObject, Vec<CMatrix>)> {
    check_module(model, v)?;
    let spaces = weight_spaces(model, &v.rho, v.dim);
    let dims: Vec<usize> = spaces.iter().map(|e| e.ncols()).collect();
    if dims.iter().sum::<usize>() != v.dim {
        return Err(Error::InvariantViolated("weight spaces do not span".into()));
    }
    let rho = (0..model.khat().order())
        .map(|k| {
            (0..model.bhat().order())
                .map(|beta| spaces[model.shift(beta, k)].adjoint() * &v.m[k] * &spaces[beta])
                .collect()
        })
        .collect();
    Ok((EquivariantObject::new(model.yhat_base(), dims, rho)?, spaces))
}

/// Transform against the dual kernel: the `lambda`-twisted object on `Bhat`
/// underlying `V`.
pub fn fm_lambda_inverse(model: &TorusModel, v: &ModuleOnXLambda) -> Result<EquivariantObject> {
    pull_back(model, v).map(|(w, _)| w)
}

/// `eta: M -> fm_lambda_inverse(fm_lambda(M))`, `x |-> sum_k tau'_k (x (x) e_0)`.
pub fn unit(model: &TorusModel, m: &EquivariantObject) -> Result<RoundTrip<Morphism>> {
    let p = push_forward(model, m)?;
    let (w, spaces) = pull_back(model, &p.module)?;
    let kernel = DeformedKernel::build(model);
    let nk = kernel.rank();
    let taus = descent_action(model, m, &kernel, &p.t_offsets);
    let n = p.x.nrows();
    let mut sum = linalg::zeros(n, n);
    for t in taus {
        sum += t;
    }
    let xh = p.x.adjoint();
    let eta: Morphism = (0..model.bhat().order())
        .map(|beta| {
            let d = m.dims()[beta];
            let mut incl = linalg::zeros(n, d);
            for a in 0..d {
                incl[(p.t_offsets[beta] + a * nk, a)] = Complex64::new(1.0, 0.0);
            }
            spaces[beta].adjoint() * &xh * &sum * incl
        })
        .collect();
    Ok(RoundTrip {
        deviation: morphism_defect(m, &w, &eta),
        is_iso: is_isomorphism(&eta),
        map: eta,
    })
}

/// `epsilon: fm_lambda(fm_lambda_inverse(V)) -> V`, `w (x) e_j |-> m_j w`.
pub fn counit(model: &TorusModel, v: &ModuleOnXLambda) -> Result<RoundTrip<CMatrix>> {
    let (w, spaces) = pull_back(model, v)?;
    let p = push_forward(model, &w)?;
    let nk = model.khat().order();
    let mut eval = linalg::zeros(v.dim, p.x.nrows());
    for (beta, e) in spaces.iter().enumerate() {
        for j in 0..nk {
            let img = &v.m[j] * e;
            for a in 0..e.ncols() {
                eval.column_mut(p.t_offsets[beta] + a * nk + j).copy_from(&img.column(a));
            }
        }
    }
    let eps = eval * &p.x;
    let is_iso = eps.is_square() && linalg::rank(&eps) == v.dim;
    Ok(RoundTrip {
        deviation: p.module.morphism_defect(v, &eps),
        is_iso,
        map: eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::standard_object;
    use crate::group::{FiniteAbelianGroup, GroupCocycleTable};
    use crate::Phase;

    fn model(b: Vec<u64>, k: Vec<u64>, gens: &[Vec<Phase>]) -> TorusModel {
        let khat = FiniteAbelianGroup::new(k).unwrap();
        let lambda = GroupCocycleTable::bilinear(khat, gens).unwrap();
        TorusModel::with_embedding(FiniteAbelianGroup::new(b).unwrap(), lambda).unwrap()
    }

    fn trivial(b: Vec<u64>) -> TorusModel {
        TorusModel::with_embedding(
            FiniteAbelianGroup::new(b).unwrap(),
            GroupCocycleTable::trivial(FiniteAbelianGroup::trivial()),
        )
        .unwrap()
    }

    #[test]
    fn z2_fourier_matrix() {
        let f = fourier_matrix(&trivial(vec![2]));
        let want = CMatrix::from_row_slice(2, 2, &[linalg::c(1., 0.), linalg::c(1., 0.), linalg::c(1., 0.), linalg::c(-1., 0.)]);
        assert!(linalg::max_abs_diff(&f, &want) < 1e-15);
    }

    #[test]
    fn fourier_inversion_constant() {
        for b in [vec![6], vec![2, 4], vec![2, 2, 2]] {
            let m = trivial(b);
            let n = m.b().order();
            let f: Vec<Complex64> = (0..n).map(|i| linalg::c(i as f64, 1.0 - i as f64 * 0.5)).collect();
            let g = fm_ab_inverse_functions(&m, &fm_ab_functions(&m, &f).unwrap()).unwrap();
            for (x, y) in f.iter().zip(&g) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn skyscraper_at_trivial_character_is_constant() {
        let m = trivial(vec![4]);
        let rep = fm_ab(&m, &[1, 0, 0, 0]).unwrap();
        assert!(rep.rho.iter().all(|r| (r[(0, 0)] - linalg::c(1., 0.)).norm() < 1e-15));
        let (dims, iso) = fm_ab_inverse(&m, &fm_ab(&m, &[2, 0, 1, 0]).unwrap()).unwrap();
        assert_eq!(dims, vec![2, 0, 1, 0]);
        assert_eq!(linalg::rank(&iso), 3);
    }

    #[test]
    fn trivial_khat_reduces_to_fm_ab() {
        let m = trivial(vec![4]);
        let obj = standard_object(&m, &[1, 2, 0, 1]).unwrap();
        let v = fm_lambda(&m, &obj).unwrap();
        let ab = fm_ab(&m, obj.dims()).unwrap();
        for (x, y) in v.rho.iter().zip(&ab.rho) {
            assert!(linalg::max_abs_diff(x, y) < 1e-12);
        }
    }

    #[test]
    fn skyscraper_orbit_gives_free_rank_one_module() {
        let half = Phase::new(1, 2);
        let m = model(vec![4], vec![2], &[vec![half]]);
        // One orbit of Khat = {0, 2} in Bhat = Z/4 carries a line.
        let obj = standard_object(&m, &[1, 0]).unwrap();
        let v = fm_lambda(&m, &obj).unwrap();
        assert_eq!(v.dim, 2);
        assert!(v.defect(&m) < 1e-12);
        // Free of rank one: v0 generates, and m_k v0 span.
        let (w, _) = pull_back(&m, &v).unwrap();
        assert_eq!(w.dims(), &[1, 0, 1, 0]);
        let back = unit(&m, &obj).unwrap();
        assert!(back.is_iso && back.deviation < 1e-12);
    }

    #[test]
    fn round_trips_on_twisted_klein_model() {
        let half = Phase::new(1, 2);
        let m = model(vec![2, 4], vec![2, 2], &[vec![half, half], vec![Phase::ZERO, half]]);
        let reps = m.orbit_representatives();
        let obj = standard_object(&m, &vec![1; reps.len()]).unwrap();
        let v = fm_lambda(&m, &obj).unwrap();
        assert_eq!(v.dim, obj.total_dim());
        assert!(v.defect(&m) < 1e-12);
        let u = unit(&m, &obj).unwrap();
        assert!(u.is_iso && u.deviation < 1e-12, "{}", u.deviation);
        let c = counit(&m, &v).unwrap();
        assert!(c.is_iso && c.deviation < 1e-12, "{}", c.deviation);
    }

    #[test]
    fn rejects_wrong_twist() {
        let m = model(vec![4], vec![2], &[vec![Phase::new(1, 2)]]);
        let untwisted = TorusModel::with_embedding(
            FiniteAbelianGroup::cyclic(4),
            GroupCocycleTable::trivial(FiniteAbelianGroup::cyclic(2)),
        )
        .unwrap();
        let obj = standard_object(&untwisted, &[1, 1]).unwrap();
        assert!(matches!(fm_lambda(&m, &obj), Err(Error::InvariantViolated(_))));
    }
}
