use num_complex::Complex;

use crate::cmat::Matrix;
use crate::tol::Tolerances;
use crate::{Error, Real, Result};

/// Probe operator `P = [[x, z], [conj(z), y]]`: positive semidefinite with
/// `Tr P^2 = 1`, standing in for a pure bipartite probe state. `rank(P) = 1`
/// corresponds to an unentangled probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeP<R: Real> {
    x: R,
    y: R,
    z: Complex<R>,
}

impl<R: Real> ProbeP<R> {
    /// Validates positivity (`x, y >= 0`, `xy >= |z|^2` up to round-off)
    /// and the normalisation `x^2 + y^2 + 2|z|^2 = 1`.
    pub fn new(x: R, y: R, z: Complex<R>) -> Result<Self> {
        let tol = Tolerances::<R>::default();
        if !(x.is_finite() && y.is_finite() && z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidProbe { reason: "non-finite entry".into() });
        }
        if x < R::zero() || y < R::zero() {
            return Err(Error::InvalidProbe {
                reason: format!("negative diagonal ({x}, {y})"),
            });
        }
        let det = x * y - z.norm_sqr();
        if det < -tol.probe_psd {
            return Err(Error::InvalidProbe {
                reason: format!("not positive semidefinite: xy - |z|^2 = {:e}", det.to_f64_lossy()),
            });
        }
        let norm = x * x + y * y + (z.norm_sqr() + z.norm_sqr());
        if (norm - R::one()).abs() > tol.probe_norm {
            return Err(Error::InvalidProbe {
                reason: format!("Tr P^2 = {} instead of 1", norm.to_f64_lossy()),
            });
        }
        Ok(ProbeP { x, y, z })
    }

    /// `P = I / sqrt(2)`, the probe of a maximally entangled state.
    pub fn maximally_mixed() -> Self {
        let s = R::of(std::f64::consts::FRAC_1_SQRT_2);
        ProbeP { x: s, y: s, z: Complex::new(R::zero(), R::zero()) }
    }

    /// Rank-1 probe with diagonal `(w, 1 - w)` and off-diagonal phase
    /// `e^(i phase)`; `w` must lie in `[0, 1]`. These are exactly the
    /// probes reachable without entanglement.
    pub fn rank_one(w: R, phase: R) -> Result<Self> {
        if !(w.is_finite() && w >= R::zero() && w <= R::one()) {
            return Err(Error::InvalidProbe {
                reason: format!("rank-1 weight {} outside [0, 1]", w.to_f64_lossy()),
            });
        }
        let mag = (w * (R::one() - w)).max(R::zero()).sqrt();
        Ok(ProbeP { x: w, y: R::one() - w, z: Complex::from_polar(mag, phase) })
    }

    /// Four-parameter chart covering every valid probe:
    /// `P = cos(alpha) u u* + sin(alpha) w w*` with `(u, w)` the columns of
    /// the Euler-angle unitary `Rz(a) Ry(b) Rz(c)`. `alpha` is clamped to
    /// `[0, pi/4]`; `alpha = 0` gives rank-1, `alpha = pi/4` gives
    /// `I / sqrt(2)` up to basis. The third Euler angle `c` only rephases
    /// the eigenbasis columns and never changes `P`; it is kept so the
    /// chart matches the optimizer's search box.
    pub fn from_params(alpha: R, angles: [R; 3]) -> Self {
        let alpha = alpha.max(R::zero()).min(R::of(std::f64::consts::FRAC_PI_4));
        let [a, b, c] = angles;
        let half_b = b / R::of(2.0);
        let (cb, sb) = (half_b.cos(), half_b.sin());
        let ea = |s: R| Complex::from_polar(R::one(), s);
        let half = R::of(0.5);
        let v00 = ea(-(a * half) - c * half).scale(cb);
        let v01 = -ea(-(a * half) + c * half).scale(sb);
        let v10 = ea(a * half - c * half).scale(sb);
        let v11 = ea(a * half + c * half).scale(cb);
        let (ca, sa) = (alpha.cos(), alpha.sin());
        let x = ca * v00.norm_sqr() + sa * v01.norm_sqr();
        let y = ca * v10.norm_sqr() + sa * v11.norm_sqr();
        let z = v00 * v10.conj().scale(ca) + v01 * v11.conj().scale(sa);
        ProbeP { x, y, z }
    }

    /// Reads a probe off a 2x2 matrix, validating shape, realness of the
    /// diagonal, Hermitian off-diagonal, and the probe constraints.
    pub fn from_matrix(m: &Matrix<R>) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::InvalidProbe {
                reason: format!("expected 2x2, got {}x{}", m.rows(), m.cols()),
            });
        }
        let tol = Tolerances::<R>::default();
        let herm_dev = m.hermiticity_deviation();
        if herm_dev > tol.hermiticity {
            return Err(Error::InvalidProbe {
                reason: format!("not Hermitian: deviation {:e}", herm_dev.to_f64_lossy()),
            });
        }
        // Tiny negative diagonals from round-off are clamped; genuine
        // negativity is caught by `new`.
        let clamp_eps = |v: R| if v < R::zero() && v > -tol.probe_psd { R::zero() } else { v };
        ProbeP::new(clamp_eps(m[(0, 0)].re), clamp_eps(m[(1, 1)].re), m[(0, 1)])
    }

    pub fn x(&self) -> R {
        self.x
    }

    pub fn y(&self) -> R {
        self.y
    }

    pub fn z(&self) -> Complex<R> {
        self.z
    }

    pub fn matrix(&self) -> Matrix<R> {
        Matrix::mat2([
            Complex::new(self.x, R::zero()),
            self.z,
            self.z.conj(),
            Complex::new(self.y, R::zero()),
        ])
    }
}

/// Pure single-qubit probe on the Bloch sphere: colatitude `theta` in
/// `[0, pi]`, azimuth `phi` stored reduced to `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochProbe<R: Real> {
    theta: R,
    phi: R,
}

impl<R: Real> BlochProbe<R> {
    pub fn new(theta: R, phi: R) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidProbe { reason: "non-finite Bloch angles".into() });
        }
        let pi = R::of(std::f64::consts::PI);
        let slack = R::of(1e-9);
        if theta < -slack || theta > pi + slack {
            return Err(Error::InvalidProbe {
                reason: format!("theta = {} outside [0, pi]", theta.to_f64_lossy()),
            });
        }
        let tau = R::of(std::f64::consts::TAU);
        let mut phi = phi % tau;
        if phi < R::zero() {
            phi += tau;
        }
        Ok(BlochProbe { theta: theta.max(R::zero()).min(pi), phi })
    }

    pub fn theta(&self) -> R {
        self.theta
    }

    pub fn phi(&self) -> R {
        self.phi
    }

    pub fn amplitudes(&self) -> [Complex<R>; 2] {
        let half = self.theta / R::of(2.0);
        [
            Complex::new(half.cos(), R::zero()),
            Complex::from_polar(half.sin(), self.phi),
        ]
    }

    /// Unvalidated projector |psi><psi|; the optimizer's inner loop uses
    /// this instead of a full `DensityMatrix` round trip.
    pub fn projector(&self) -> Matrix<R> {
        let [a, b] = self.amplitudes();
        Matrix::mat2([
            Complex::new(a.norm_sqr(), R::zero()),
            a * b.conj(),
            b * a.conj(),
            Complex::new(b.norm_sqr(), R::zero()),
        ])
    }

    pub fn density(&self) -> crate::channel::DensityMatrix<R> {
        crate::channel::DensityMatrix::pure(&self.amplitudes())
            .expect("Bloch amplitudes are normalised by construction")
    }

    /// Rank-1 probe operator equivalent to this pure probe on the
    /// difference-operator route: the transpose of `projector()`, per the
    /// route's vectorization convention, so the off-diagonal phase is
    /// `e^(+i phi)`.
    pub fn probe_operator(&self) -> ProbeP<R> {
        let half = self.theta / R::of(2.0);
        let w = half.cos() * half.cos();
        ProbeP::rank_one(w, self.phi).expect("cos^2 lies in [0, 1]")
    }
}
