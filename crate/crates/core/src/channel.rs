//! Kraus-form channels, density matrices, the three coherence-breaking
//! qubit families, and Pauli channels.
//!
//! A channel is coherence breaking when every output is diagonal in the
//! incoherent basis regardless of the input. The three families below are
//! exactly the qubit Kraus pairs with that property (up to the reported
//! phase and mixing parameters).

use num_complex::Complex;

use crate::cmat::{hermitian_eigenvalues, kron, HermitianMatrix, Matrix};
use crate::tol::Tolerances;
use crate::{Error, Real, Result};

fn c0<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}

fn cre<R: Real>(x: R) -> Complex<R> {
    Complex::new(x, R::zero())
}

/// Pauli matrix by index: 0 identity, 1 X, 2 Y, 3 Z.
pub fn pauli_matrix<R: Real>(index: usize) -> Matrix<R> {
    let one = R::one();
    match index {
        0 => Matrix::identity(2),
        1 => Matrix::mat2([c0(), cre(one), cre(one), c0()]),
        2 => Matrix::mat2([c0(), Complex::new(R::zero(), -one), Complex::new(R::zero(), one), c0()]),
        3 => Matrix::mat2([cre(one), c0(), c0(), cre(-one)]),
        _ => panic!("Pauli index must be 0..=3"),
    }
}

/// Completeness check result for a Kraus set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpCheck<R: Real> {
    /// Max entrywise residual of `sum K_n* K_n - I`.
    pub residual: R,
    pub pass: bool,
}

/// Checks trace preservation of a raw Kraus set. Structural problems
/// (empty set, mixed dimensions) are errors; an incomplete set is a
/// failing check, not an error.
pub fn validate_cptp<R: Real>(ops: &[Matrix<R>], tolerance: R) -> Result<CptpCheck<R>> {
    let first = ops.first().ok_or_else(|| Error::InvalidKraus {
        reason: "empty Kraus set".into(),
    })?;
    if !first.is_square() {
        return Err(Error::InvalidKraus {
            reason: format!("operators must be square, got {}x{}", first.rows(), first.cols()),
        });
    }
    let dim = first.rows();
    let mut acc = Matrix::zeros(dim, dim);
    for op in ops {
        if op.rows() != dim || op.cols() != dim {
            return Err(Error::DimensionMismatch {
                left_rows: dim,
                left_cols: dim,
                right_rows: op.rows(),
                right_cols: op.cols(),
            });
        }
        acc = &acc + &(&op.adjoint() * op);
    }
    let residual = (&acc - &Matrix::identity(dim)).max_abs_entry();
    Ok(CptpCheck { residual, pass: residual <= tolerance })
}

/// Trace-preserving channel in Kraus form, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel<R: Real> {
    ops: Vec<Matrix<R>>,
    label: String,
    cbc: Option<CbcSpec<R>>,
    dim: usize,
}

impl<R: Real> KrausChannel<R> {
    pub fn new(ops: Vec<Matrix<R>>, label: impl Into<String>) -> Result<Self> {
        Self::with_tolerance(ops, label, Tolerances::<R>::default().cptp)
    }

    pub fn with_tolerance(ops: Vec<Matrix<R>>, label: impl Into<String>, tolerance: R) -> Result<Self> {
        let check = validate_cptp(&ops, tolerance)?;
        if !check.pass {
            return Err(Error::NotTracePreserving {
                residual: check.residual.to_f64_lossy(),
                tolerance: tolerance.to_f64_lossy(),
            });
        }
        let dim = ops[0].rows();
        Ok(KrausChannel { ops, label: label.into(), cbc: None, dim })
    }

    pub fn kraus_ops(&self) -> &[Matrix<R>] {
        &self.ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The coherence-breaking spec this channel was built from, if any.
    /// Only [`cbc_kraus`] sets it; derived channels (extensions, hand-built
    /// Kraus sets) carry `None`.
    pub fn cbc_spec(&self) -> Option<CbcSpec<R>> {
        self.cbc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Linear action `sum_n K_n m K_n*` on an arbitrary operator.
    pub fn apply_matrix(&self, m: &Matrix<R>) -> Result<Matrix<R>> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                left_rows: self.dim,
                left_cols: self.dim,
                right_rows: m.rows(),
                right_cols: m.cols(),
            });
        }
        let mut out = Matrix::zeros(self.dim, self.dim);
        for k in &self.ops {
            out = &out + &(&(k * m) * &k.adjoint());
        }
        Ok(out)
    }

    /// Applies the channel to a state.
    pub fn apply(&self, rho: &DensityMatrix<R>) -> Result<DensityMatrix<R>> {
        DensityMatrix::new(self.apply_matrix(rho.matrix())?)
    }

    /// Tensors every Kraus operator with the qubit identity, turning a
    /// qubit channel into the corresponding channel-on-half of a two-qubit
    /// system (the probe's ancilla is untouched).
    pub fn extend_with_identity(&self) -> Result<KrausChannel<R>> {
        if self.dim != 2 {
            return Err(Error::NotQubit { dim: self.dim });
        }
        let id = Matrix::identity(2);
        let ops = self
            .ops
            .iter()
            .map(|k| kron(k, &id))
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops, format!("{} x id", self.label))
    }
}

/// Density matrix (2x2 or 4x4): Hermitian, unit trace, positive
/// semidefinite, all within the configured tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<R: Real> {
    mat: Matrix<R>,
}

impl<R: Real> DensityMatrix<R> {
    pub fn new(mat: Matrix<R>) -> Result<Self> {
        let tol = Tolerances::<R>::default();
        if !mat.is_square() || !(mat.rows() == 2 || mat.rows() == 4) {
            return Err(Error::InvalidDensity {
                reason: format!("expected a 2x2 or 4x4 matrix, got {}x{}", mat.rows(), mat.cols()),
            });
        }
        let hermitian = HermitianMatrix::with_tolerance(mat, tol.hermiticity).map_err(|e| {
            Error::InvalidDensity { reason: format!("{e}") }
        })?;
        let trace = hermitian.trace();
        let trace_dev = (trace.re - R::one()).abs().max(trace.im.abs());
        if trace_dev > tol.density_trace {
            return Err(Error::InvalidDensity {
                reason: format!("trace deviates from 1 by {:e}", trace_dev.to_f64_lossy()),
            });
        }
        let min_eig = hermitian_eigenvalues(&hermitian)
            .into_iter()
            .fold(R::infinity(), R::min);
        if min_eig < -tol.density_psd {
            return Err(Error::InvalidDensity {
                reason: format!("negative eigenvalue {:e}", min_eig.to_f64_lossy()),
            });
        }
        Ok(DensityMatrix { mat: hermitian.into_matrix() })
    }

    /// Pure state from amplitudes; the vector is normalised first.
    pub fn pure(amplitudes: &[Complex<R>]) -> Result<Self> {
        let dim = amplitudes.len();
        if !(dim == 2 || dim == 4) {
            return Err(Error::InvalidDensity {
                reason: format!("pure states need 2 or 4 amplitudes, got {dim}"),
            });
        }
        let norm_sqr = amplitudes.iter().fold(R::zero(), |s, a| s + a.norm_sqr());
        if !(norm_sqr.is_finite() && norm_sqr > R::zero()) {
            return Err(Error::InvalidDensity { reason: "amplitudes are not normalisable".into() });
        }
        let norm = norm_sqr.sqrt();
        let psi: Vec<Complex<R>> = amplitudes.iter().map(|a| a.unscale(norm)).collect();
        let mat = Matrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj());
        DensityMatrix::new(mat)
    }

    /// Pure qubit state at colatitude `theta` and azimuth `phi` on the
    /// Bloch sphere.
    pub fn from_bloch(theta: R, phi: R) -> Result<Self> {
        let half = theta / R::of(2.0);
        let a = cre(half.cos());
        let b = Complex::from_polar(half.sin(), phi);
        DensityMatrix::pure(&[a, b])
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }
}

/// The three coherence-breaking qubit families.
///
/// Angles are accepted as arbitrary reals; reduce them modulo 2 pi for
/// reporting only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CbcSpec<R: Real> {
    /// `{ |0><0|, |0><1| }`: every input collapses onto `|0><0|`.
    Type1,
    /// `{ e^(i xi) |1><1|, e^(i xi) |1><0| }`: every input collapses onto `|1><1|`.
    Type2 { xi: R },
    /// Mixing family with angle `phi` and phase `xi`; `phi = 0` is full
    /// dephasing.
    Type3 { phi: R, xi: R },
}

/// Family tag of a [`CbcSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbcFamily {
    Type1,
    Type2,
    Type3,
}

impl CbcFamily {
    pub fn name(self) -> &'static str {
        match self {
            CbcFamily::Type1 => "cbc1",
            CbcFamily::Type2 => "cbc2",
            CbcFamily::Type3 => "cbc3",
        }
    }
}

impl<R: Real> CbcSpec<R> {
    pub fn family(&self) -> CbcFamily {
        match self {
            CbcSpec::Type1 => CbcFamily::Type1,
            CbcSpec::Type2 { .. } => CbcFamily::Type2,
            CbcSpec::Type3 { .. } => CbcFamily::Type3,
        }
    }
}

/// Kraus pair of a coherence-breaking family member.
pub fn cbc_kraus<R: Real>(spec: &CbcSpec<R>) -> KrausChannel<R> {
    let ops = match *spec {
        CbcSpec::Type1 => vec![
            Matrix::mat2([cre(R::one()), c0(), c0(), c0()]),
            Matrix::mat2([c0(), cre(R::one()), c0(), c0()]),
        ],
        CbcSpec::Type2 { xi } => {
            let e = Complex::from_polar(R::one(), xi);
            vec![
                Matrix::mat2([c0(), c0(), c0(), e]),
                Matrix::mat2([c0(), c0(), e, c0()]),
            ]
        }
        CbcSpec::Type3 { phi, xi } => {
            let e = Complex::from_polar(R::one(), xi);
            let (s, c) = (phi.sin(), phi.cos());
            vec![
                Matrix::mat2([c0(), c0(), cre(-s), e.scale(c)]),
                Matrix::mat2([cre(c), e.scale(s), c0(), c0()]),
            ]
        }
    };
    let mut ch = KrausChannel::new(ops, spec.family().name())
        .expect("coherence-breaking Kraus pairs are trace preserving by construction");
    ch.cbc = Some(*spec);
    ch
}

/// Probability distribution over the four Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliSpec<R: Real> {
    q: [R; 4],
}

impl<R: Real> PauliSpec<R> {
    pub fn new(q: [R; 4]) -> Result<Self> {
        let tol = Tolerances::<R>::default();
        for (i, &w) in q.iter().enumerate() {
            if !w.is_finite() || w < R::zero() {
                return Err(Error::InvalidPauli {
                    reason: format!("weight {i} is {w}, must be finite and non-negative"),
                });
            }
        }
        let sum = q.iter().fold(R::zero(), |s, &w| s + w);
        if (sum - R::one()).abs() > tol.pauli_sum {
            return Err(Error::InvalidPauli {
                reason: format!("weights sum to {sum}, expected 1"),
            });
        }
        Ok(PauliSpec { q })
    }

    pub fn weights(&self) -> [R; 4] {
        self.q
    }
}

/// Pauli channel `rho -> sum_a q_a sigma_a rho sigma_a` with Kraus
/// operators `sqrt(q_a) sigma_a`; zero weights are dropped.
pub fn pauli_kraus<R: Real>(spec: &PauliSpec<R>) -> KrausChannel<R> {
    let ops = spec
        .q
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > R::zero())
        .map(|(a, &w)| pauli_matrix(a).scale_re(w.sqrt()))
        .collect();
    KrausChannel::new(ops, "pauli").expect("a Pauli mixture is trace preserving by construction")
}

/// True when every off-diagonal entry is at most `tolerance` in magnitude.
pub fn is_incoherent<R: Real>(rho: &DensityMatrix<R>, tolerance: R) -> bool {
    off_diagonal_mass(rho.matrix()) <= tolerance
}

fn off_diagonal_mass<R: Real>(m: &Matrix<R>) -> R {
    let n = m.rows();
    let mut worst = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Basis-pair criterion: the channel output of every `|m><n|` must be
/// diagonal. By linearity that decides diagonality of the image of every
/// operator, so of every state.
pub fn is_coherence_breaking<R: Real>(ch: &KrausChannel<R>, tolerance: R) -> bool {
    let d = ch.dim();
    for m in 0..d {
        for n in 0..d {
            let mut basis = Matrix::zeros(d, d);
            basis[(m, n)] = cre(R::one());
            let out = ch.apply_matrix(&basis).expect("basis operator has the channel dimension");
            if off_diagonal_mass(&out) > tolerance {
                return false;
            }
        }
    }
    true
}
