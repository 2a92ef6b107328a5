use super::space::GradedSpace;
use crate::scalar::{Mode, Scalar};

/// Diagonal bilinear pairing `<e_i, e_j> = delta_ij g_i`.
///
/// The pairing is bilinear, not sesquilinear: no entry is conjugated. Graded
/// adjoints are taken with respect to forms of this shape.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    space: GradedSpace,
    mode: Mode,
    diag: Vec<Scalar>,
}

impl BilinearForm {
    pub fn new(space: GradedSpace, diag: Vec<Scalar>, mode: Mode) -> Self {
        assert_eq!(space.dim(), diag.len());
        for d in &diag {
            assert_eq!(d.mode(), mode, "form entry mode mismatch");
            assert!(!d.is_zero(), "degenerate bilinear form");
        }
        BilinearForm { space, mode, diag }
    }

    /// The form with `g_i = 1` for every basis vector.
    pub fn standard(space: &GradedSpace, mode: Mode) -> Self {
        let diag = vec![Scalar::one(mode); space.dim()];
        BilinearForm::new(space.clone(), diag, mode)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn diag(&self, i: usize) -> &Scalar {
        &self.diag[i]
    }

    /// Form on the tensor product: `g_(i,j) = g_i g_j (-1)^{p_i p_j}`.
    pub fn tensor(&self, other: &BilinearForm) -> BilinearForm {
        assert_eq!(self.mode, other.mode, "form tensor mode mismatch");
        let space = self.space.tensor(&other.space);
        let mut diag = Vec::with_capacity(space.dim());
        for i in 0..self.space.dim() {
            for j in 0..other.space.dim() {
                let mut v = &self.diag[i] * &other.diag[j];
                if self.space.parity(i).is_odd() && other.space.parity(j).is_odd() {
                    v = -v;
                }
                diag.push(v);
            }
        }
        BilinearForm::new(space, diag, self.mode)
    }

    pub fn tensor_power(&self, k: usize) -> BilinearForm {
        assert!(k >= 1, "empty tensor power of a form");
        let mut out = self.clone();
        for _ in 1..k {
            out = out.tensor(self);
        }
        out
    }

    /// Pairs two vectors, `sum_i u_i v_i g_i`.
    pub fn pair(&self, u: &super::op::Vector, v: &super::op::Vector) -> Scalar {
        assert_eq!(u.space(), &self.space, "pair space mismatch");
        assert_eq!(v.space(), &self.space, "pair space mismatch");
        let mut acc = Scalar::zero(self.mode);
        for (i, a) in u.iter() {
            let b = v.get(i);
            if b.is_zero() {
                continue;
            }
            acc += &(&(a * &b) * &self.diag[i]);
        }
        acc
    }
}
