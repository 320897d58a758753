use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::GSet;
use crate::lattice::DualPairData;
use crate::{Error, Result};

/// Both sides of the product on a free `K`-orbit, as functions of `k` with
/// the orbit point `x.k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointsReport {
    /// `sum_{a,b} lambda(a, b) phi_a psi_b <a + b, k>`.
    pub star: Vec<Complex64>,
    /// `(1/#K) sum_{k1,k2} omega(k1, k2)^{-1} phi(x k k1) psi(x k k2)`.
    pub points: Vec<Complex64>,
    pub deviation: f64,
}

/// Compares the orbit product of `phi` and `psi` with the `lambda`-weighted
/// product of their `Khat`-Fourier components.
///
/// `orbit` is acted on by `K`, presented like `Khat` and paired with it
/// through `dual`; `phi` and `psi` are functions on all of `orbit`, read
/// along the orbit of `x`.
pub fn star_on_points_check(
    dual: &DualPairData,
    orbit: &GSet,
    x: usize,
    phi: &[Complex64],
    psi: &[Complex64],
) -> Result<PointsReport> {
    let k = dual.group();
    let n = k.order();
    if orbit.group() != k {
        return Err(Error::GradingMismatch("orbit is not acted on by K".into()));
    }
    if x >= orbit.len() {
        return Err(Error::IndexOutOfRange {
            index: x,
            bound: orbit.len(),
        });
    }
    for f in [phi, psi] {
        if f.len() != orbit.len() {
            return Err(Error::DimensionMismatch {
                expected: orbit.len(),
                found: f.len(),
            });
        }
    }
    let pts: Vec<usize> = (0..n).map(|g| orbit.act(x, g)).collect();
    let mut seen = pts.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n {
        return Err(Error::NotFree(format!("orbit of point {x} has {} elements, #K = {n}", seen.len())));
    }
    let f: Vec<Complex64> = pts.iter().map(|&p| phi[p]).collect();
    let h: Vec<Complex64> = pts.iter().map(|&p| psi[p]).collect();
    let chi = |a: usize, kk: usize| dual.character(kk, a).embed();
    let scale = 1.0 / n as f64;
    let coeffs = |g: &[Complex64]| -> Vec<Complex64> {
        (0..n)
            .map(|a| (0..n).map(|kk| g[kk] * chi(a, kk).conj()).sum::<Complex64>() * scale)
            .collect()
    };
    let (cf, ch) = (coeffs(&f), coeffs(&h));
    let star: Vec<Complex64> = (0..n)
        .map(|kk| {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    acc += dual.lambda.get(a, b).embed() * cf[a] * ch[b] * chi(k.add(a, b), kk);
                }
            }
            acc
        })
        .collect();
    let points: Vec<Complex64> = (0..n)
        .map(|kk| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k1 in 0..n {
                for k2 in 0..n {
                    acc += (-dual.omega.get(k1, k2)).embed() * f[k.add(kk, k1)] * h[k.add(kk, k2)];
                }
            }
            acc * scale
        })
        .collect();
    let deviation = star
        .iter()
        .zip(&points)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(PointsReport {
        star,
        points,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteAbelianGroup, GroupCocycleTable};
    use crate::lattice::lambda_sharp;
    use crate::linalg::c;
    use crate::Phase;

    #[test]
    fn z2_delta_functions() {
        let k = FiniteAbelianGroup::cyclic(2);
        let lambda = GroupCocycleTable::bilinear(k.clone(), &[vec![Phase::new(1, 2)]]).unwrap();
        let dual = lambda_sharp(&lambda).unwrap();
        let orbit = GSet::regular(k);
        let delta = [c(1.0, 0.0), c(0.0, 0.0)];
        let r = star_on_points_check(&dual, &orbit, 0, &delta, &delta).unwrap();
        assert!(r.deviation < 1e-12);
        // Four-term sum by hand: omega(k1, k2) = (-1)^{k1 k2}; only k1 = k2 = -k survives.
        assert!((r.points[0] - c(0.5, 0.0)).norm() < 1e-12);
        assert!((r.points[1] - c(-0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn z3_squared() {
        let k = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let third = Phase::new(1, 3);
        let lambda = GroupCocycleTable::bilinear(k.clone(), &[vec![third, third], vec![Phase::ZERO, third]])
            .unwrap();
        let dual = lambda_sharp(&lambda).unwrap();
        let orbit = GSet::regular(k);
        let phi: Vec<Complex64> = (0..9).map(|i| c((i as f64).sin(), (i as f64 * 0.7).cos())).collect();
        let psi: Vec<Complex64> = (0..9).map(|i| c(1.0 / (1.0 + i as f64), i as f64 * 0.1)).collect();
        let r = star_on_points_check(&dual, &orbit, 4, &phi, &psi).unwrap();
        assert!(r.deviation < 1e-12, "{}", r.deviation);
    }

    #[test]
    fn non_free_orbit_is_rejected() {
        let k = FiniteAbelianGroup::cyclic(2);
        let lambda = GroupCocycleTable::bilinear(k.clone(), &[vec![Phase::new(1, 2)]]).unwrap();
        let dual = lambda_sharp(&lambda).unwrap();
        let orbit = GSet::trivial(k, 3);
        let f = [c(1.0, 0.0); 3];
        assert!(matches!(star_on_points_check(&dual, &orbit, 1, &f, &f), Err(Error::NotFree(_))));
    }
}
