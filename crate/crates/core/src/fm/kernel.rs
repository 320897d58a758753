use alloc::vec::Vec;

use super::TorusModel;
use crate::equivariant::EquivariantObject;
use crate::linalg::{self, CMatrix};
use crate::{Phase, Result};

/// The deformed kernel over `Bhat`: the fiber `P_beta` has basis `e_j`,
/// `j in Khat`, where `e_j` has `B`-weight `beta + j`.
///
/// The twisted left `Khat`-action sends `e_j in P_beta` to
/// `lambda(k, j) e_{j+k} in P_{beta-k}`; the right `O_{X_lambda}`-action is
/// `e_j . l = lambda(j, l) e_{j+l}` inside `P_beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedKernel {
    model: TorusModel,
}

impl DeformedKernel {
    pub fn build(model: &TorusModel) -> Self {
        DeformedKernel { model: model.clone() }
    }

    pub fn model(&self) -> &TorusModel {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.model.khat().order()
    }

    /// `(beta k)(b)` restricted to the summand `e_k` of `P_beta`.
    pub fn weight(&self, beta: usize, j: usize) -> usize {
        self.model.shift(beta, j)
    }

    /// Value of the Poincare pairing on the summand `e_j` of `P_beta` at `b`.
    pub fn value(&self, b: usize, beta: usize, j: usize) -> Phase {
        self.model.b().pairing(b, self.weight(beta, j))
    }

    /// `(target index, phase)` of the left action of `k` on `e_j`.
    pub fn left_action(&self, k: usize, j: usize) -> (usize, Phase) {
        (self.model.khat().add(j, k), self.model.lambda().get(k, j))
    }

    /// `(target index, phase)` of the right multiplication of `e_j` by `L_l`.
    pub fn right_multiplication(&self, j: usize, l: usize) -> (usize, Phase) {
        (self.model.khat().add(j, l), self.model.lambda().get(j, l))
    }

    /// Matrix of the left action of `k`, `P_beta -> P_{beta-k}`.
    pub fn left_matrix(&self, k: usize) -> CMatrix {
        self.permutation(|j| self.left_action(k, j))
    }

    /// `sigma_k = rho_{-k}`: `P_beta -> P_{beta+k}`, a right action twisted by `lambda^T`.
    pub fn sigma_matrix(&self, k: usize) -> CMatrix {
        self.left_matrix(self.model.khat().neg(k))
    }

    pub fn right_matrix(&self, l: usize) -> CMatrix {
        self.permutation(|j| self.right_multiplication(j, l))
    }

    fn permutation(&self, f: impl Fn(usize) -> (usize, Phase)) -> CMatrix {
        let n = self.rank();
        let mut m = linalg::zeros(n, n);
        for j in 0..n {
            let (t, p) = f(j);
            m[(t, j)] = p.embed();
        }
        m
    }

    /// First `(k1, k2, j)` where `rho_k1 rho_k2 != lambda(k1, k2) rho_{k1 k2}`,
    /// checked in exact phases.
    pub fn left_law_violation(&self) -> Option<(usize, usize, usize)> {
        let k = self.model.khat();
        let n = k.order();
        for k1 in 0..n {
            for k2 in 0..n {
                for j in 0..n {
                    let (t2, p2) = self.left_action(k2, j);
                    let (t1, p1) = self.left_action(k1, t2);
                    let (t, p) = self.left_action(k.add(k1, k2), j);
                    if t1 != t || p1 + p2 != p + self.model.lambda().get(k1, k2) {
                        return Some((k1, k2, j));
                    }
                }
            }
        }
        None
    }

    /// First violation of the module diagram `(e . l1) . l2 = lambda(l1, l2) e . (l1 l2)`,
    /// or of the commutation of left and right actions, in exact phases.
    pub fn module_law_violation(&self) -> Option<(usize, usize, usize)> {
        let k = self.model.khat();
        let n = k.order();
        for l1 in 0..n {
            for l2 in 0..n {
                for j in 0..n {
                    let (a, p1) = self.right_multiplication(j, l1);
                    let (b, p2) = self.right_multiplication(a, l2);
                    let (c, p) = self.right_multiplication(j, k.add(l1, l2));
                    if b != c || p1 + p2 != p + self.model.lambda().get(l1, l2) {
                        return Some((l1, l2, j));
                    }
                    // Left action by l1 commutes with right multiplication by l2.
                    let (x, q1) = self.left_action(l1, j);
                    let (y, q2) = self.right_multiplication(x, l2);
                    let (u, r1) = self.right_multiplication(j, l2);
                    let (v, r2) = self.left_action(l1, u);
                    if y != v || q1 + q2 != r1 + r2 {
                        return Some((l1, l2, j));
                    }
                }
            }
        }
        None
    }

    /// The kernel as an object over `Bhat` with the right action `sigma`,
    /// linearized against `lambda^T`.
    pub fn as_equivariant_object(&self) -> Result<EquivariantObject> {
        let base = self.model.yhat_base();
        let nb = self.model.bhat().order();
        let rho = (0..self.rank())
            .map(|k| {
                let s = self.sigma_matrix(k);
                (0..nb).map(|_| s.clone()).collect::<Vec<_>>()
            })
            .collect();
        EquivariantObject::new(base, alloc::vec![self.rank(); nb], rho)
    }
}
