//! Central tolerance configuration. Every validating constructor and every
//! formula-versus-numeric comparison reads its threshold from here.

use crate::Real;

/// Maximum number of cyclic Jacobi sweeps before the eigensolver settles
/// for the plateau it has reached. Quadratic convergence makes this a
/// safety valve, not a working limit, for the 8x8-and-below matrices here.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Named tolerances with their defaults (stated for `f64`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<R: Real> {
    /// Max entrywise deviation from `m == m.adjoint()`. Default `1e-10`.
    pub hermiticity: R,
    /// Max entrywise residual of `sum K_n^dag K_n - I`. Default `1e-10`.
    pub cptp: R,
    /// Allowed deviation of a density matrix trace from 1. Default `1e-10`.
    pub density_trace: R,
    /// Eigenvalue floor for positive semidefiniteness. Default `1e-10`.
    pub density_psd: R,
    /// Allowed deviation of a Pauli distribution sum from 1. Default `1e-12`.
    pub pauli_sum: R,
    /// Allowed deviation of `Tr P^2` from 1 for probe operators. Default `1e-10`.
    pub probe_norm: R,
    /// Slack in the probe positivity check `xy >= |z|^2`. Default `1e-12`.
    pub probe_psd: R,
    /// Off-diagonal magnitude below which a state counts as incoherent.
    /// Default `1e-12`.
    pub incoherence: R,
    /// Convergence threshold on the off-diagonal Frobenius mass in the
    /// Jacobi eigensolver. Default `1e-14`.
    pub jacobi_off: R,
    /// Floor below which a negative radicand in a closed-form singular
    /// value is an error rather than round-off. Default `1e-12`.
    pub formula_domain: R,
    /// Allowed deviation between closed-form and numerically computed
    /// singular values before an audit note flags it. Default `1e-9`.
    pub spectrum_match: R,
    /// Default threshold for the direct-versus-Choi path cross-check.
    /// Default `1e-9`.
    pub crosscheck: R,
}

impl<R: Real> Default for Tolerances<R> {
    fn default() -> Self {
        Tolerances {
            hermiticity: R::of(1e-10),
            cptp: R::of(1e-10),
            density_trace: R::of(1e-10),
            density_psd: R::of(1e-10),
            pauli_sum: R::of(1e-12),
            probe_norm: R::of(1e-10),
            probe_psd: R::of(1e-12),
            incoherence: R::of(1e-12),
            jacobi_off: R::of(1e-14),
            formula_domain: R::of(1e-12),
            spectrum_match: R::of(1e-9),
            crosscheck: R::of(1e-9),
        }
    }
}
