//! Operator vectorization and the weighted difference operator that drives
//! the entanglement-assisted analysis.
//!
//! Convention: `vec(A)[2n + m] = A[n][m]` (row-major flattening), so
//! `vec(A) = (A kron I) vec(I)`. Everything downstream, in particular the
//! probe sandwich below and the oracle's probe construction, is tied to
//! this choice; the cross-check suite pins it against the direct path.

use num_complex::Complex;

use crate::cmat::{kron, HermitianMatrix, Matrix};
use crate::channel::KrausChannel;
use crate::discrimination::ProbeP;
use crate::{Error, Real, Result};

/// Vectorized 2x2 operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecOperator<R: Real> {
    entries: [Complex<R>; 4],
}

/// Row-major flattening of a 2x2 operator.
pub fn vectorize<R: Real>(a: &Matrix<R>) -> VecOperator<R> {
    assert!(a.rows() == 2 && a.cols() == 2, "vectorization is defined for 2x2 operators");
    VecOperator { entries: [a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]] }
}

impl<R: Real> VecOperator<R> {
    pub fn entries(&self) -> &[Complex<R>; 4] {
        &self.entries
    }

    /// Inverse of [`vectorize`].
    pub fn to_matrix(&self) -> Matrix<R> {
        Matrix::mat2(self.entries)
    }

    /// As a 4x1 column matrix.
    pub fn column(&self) -> Matrix<R> {
        Matrix::new(4, 1, self.entries.to_vec()).expect("finite entries")
    }

    /// Rank-one projector-style outer product `|a>><<a|`.
    pub fn outer(&self) -> Matrix<R> {
        Matrix::from_fn(4, 4, |i, j| self.entries[i] * self.entries[j].conj())
    }
}

/// Weighted difference of the vectorized Kraus projectors of two qubit
/// channels:
///
/// `Delta = p1 sum_n |K_n(1)>><<K_n(1)| - p2 sum_m |K_m(2)>><<K_m(2)|`.
///
/// Hermitian 4x4 with trace `2 (2 p1 - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaOperator<R: Real> {
    mat: HermitianMatrix<R>,
    p1: R,
}

impl<R: Real> DeltaOperator<R> {
    pub fn matrix(&self) -> &HermitianMatrix<R> {
        &self.mat
    }

    pub fn p1(&self) -> R {
        self.p1
    }
}

pub fn build_delta<R: Real>(
    ch1: &KrausChannel<R>,
    ch2: &KrausChannel<R>,
    p1: R,
) -> Result<DeltaOperator<R>> {
    if !(p1.is_finite() && (R::zero()..=R::one()).contains(&p1)) {
        return Err(Error::InvalidPrior { p1: p1.to_f64_lossy() });
    }
    for ch in [ch1, ch2] {
        if ch.dim() != 2 {
            return Err(Error::NotQubit { dim: ch.dim() });
        }
    }
    let p2 = R::one() - p1;
    let mut acc = Matrix::zeros(4, 4);
    for k in ch1.kraus_ops() {
        acc = &acc + &vectorize(k).outer().scale_re(p1);
    }
    for k in ch2.kraus_ops() {
        acc = &acc - &vectorize(k).outer().scale_re(p2);
    }
    let mat = HermitianMatrix::new(acc)
        .expect("weighted sums of outer products are Hermitian");
    Ok(DeltaOperator { mat, p1 })
}

/// Probe sandwich `(I kron P) Delta (I kron P)`; Hermitian because `P` is.
pub fn sandwich<R: Real>(delta: &DeltaOperator<R>, probe: &ProbeP<R>) -> HermitianMatrix<R> {
    let ip = kron(&Matrix::identity(2), &probe.matrix()).expect("4x4 fits the cap");
    let s = &(&ip * delta.matrix().matrix()) * &ip;
    HermitianMatrix::new(s).expect("sandwich by a Hermitian probe stays Hermitian")
}
