//! Independent verification path and its supporting machinery: a portable
//! 64-bit mixing RNG, Haar-style samplers, a box-constrained simplex
//! refiner, and the direct (extension-based) evaluation of the assisted
//! discrimination value.
//!
//! The direct path never touches vectorization or the difference operator;
//! [`crosscheck_delta_path`] is the only place both routes meet.

use num_complex::Complex;

use crate::channel::{CbcSpec, DensityMatrix, KrausChannel, PauliSpec};
use crate::cmat::{psd_sqrt, trace_norm, HermitianMatrix, Matrix};
use crate::choi::{build_delta, sandwich};
use crate::discrimination::{DiscriminationProblem, ProbeP};
use crate::tol::Tolerances;
use crate::{Error, Real, Result};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 42;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator: the state advances by the golden-ratio increment
/// and each output is the standard 64-bit finalizer of the new state.
/// Deliberately dependency-free so streams reproduce bit-exactly anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { state: seed }
    }

    /// Independent child stream: the child seed is
    /// `mix64(state ^ (index + 1) * GOLDEN)`.
    pub fn stream(&self, index: u64) -> RngState {
        RngState::new(mix64(self.state ^ index.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform<R: Real>(&mut self, lo: R, hi: R) -> R {
        lo + (hi - lo) * R::of(self.next_f64())
    }

    /// Standard-normal pair via Box-Muller; the radius draw is shifted
    /// into `(0, 1]` so the logarithm stays finite.
    pub fn gaussian_pair<R: Real>(&mut self) -> (R, R) {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let a = 2.0 * std::f64::consts::PI * u2;
        (R::of(r * a.cos()), R::of(r * a.sin()))
    }

    fn complex_gaussian<R: Real>(&mut self) -> Complex<R> {
        let (re, im) = self.gaussian_pair();
        Complex::new(re, im)
    }
}

/// Shared optimizer settings.
///
/// `grid_points` is the count on a `[0, pi]`-type axis; periodic
/// `[0, 2 pi]` axes use `2 * grid_points - 1` so both resolve the same
/// angular step, and the assisted optimizer's coarse scan derives a far
/// smaller per-axis count (`(grid_points / 10).clamp(5, 15)`) from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig<R: Real> {
    pub grid_points: usize,
    pub refine_iters: usize,
    pub tolerance: R,
    pub seed: u64,
}

impl<R: Real> Default for OptimizerConfig<R> {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 91,
            refine_iters: 500,
            tolerance: R::of(1e-7),
            seed: DEFAULT_SEED,
        }
    }
}

impl<R: Real> OptimizerConfig<R> {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::InvalidConfig {
                reason: format!("grid_points = {}, need at least 2", self.grid_points),
            });
        }
        if !(self.tolerance.is_finite() && self.tolerance > R::zero()) {
            return Err(Error::InvalidConfig {
                reason: format!("tolerance = {}, need a positive finite value", self.tolerance),
            });
        }
        Ok(())
    }
}

/// Haar-random pure state of the given dimension (2 or 4): normalised
/// vector of complex Gaussians.
pub fn random_pure_state<R: Real>(rng: &mut RngState, dim: usize) -> DensityMatrix<R> {
    assert!(dim == 2 || dim == 4, "pure states are 2- or 4-dimensional here");
    loop {
        let amps: Vec<Complex<R>> = (0..dim).map(|_| rng.complex_gaussian()).collect();
        if let Ok(rho) = DensityMatrix::pure(&amps) {
            return rho;
        }
    }
}

/// Haar-random pure state of the joint probe-ancilla system.
pub fn random_pure_bipartite<R: Real>(rng: &mut RngState) -> DensityMatrix<R> {
    random_pure_state(rng, 4)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix via modified
/// Gram-Schmidt, with the R-diagonal phases divided out.
pub fn random_unitary<R: Real>(rng: &mut RngState, dim: usize) -> Matrix<R> {
    let g: Matrix<R> = Matrix::from_fn(dim, dim, |_, _| rng.complex_gaussian());
    gram_schmidt_columns(&g)
}

fn gram_schmidt_columns<R: Real>(g: &Matrix<R>) -> Matrix<R> {
    let rows = g.rows();
    let cols = g.cols();
    let mut q = g.clone();
    for j in 0..cols {
        for k in 0..j {
            let mut proj = Complex::new(R::zero(), R::zero());
            for i in 0..rows {
                proj += q[(i, k)].conj() * q[(i, j)];
            }
            for i in 0..rows {
                let qik = q[(i, k)];
                q[(i, j)] = q[(i, j)] - proj * qik;
            }
        }
        let mut norm_sqr = R::zero();
        for i in 0..rows {
            norm_sqr += q[(i, j)].norm_sqr();
        }
        let norm = norm_sqr.sqrt();
        // Phase-fix against the original column so the distribution does
        // not depend on the Gram-Schmidt sign conventions.
        let mut pivot = Complex::new(R::zero(), R::zero());
        for i in 0..rows {
            pivot += g[(i, j)].conj() * q[(i, j)];
        }
        let phase = if pivot.norm() > R::zero() {
            pivot.unscale(pivot.norm()).conj()
        } else {
            Complex::new(R::one(), R::zero())
        };
        for i in 0..rows {
            q[(i, j)] = q[(i, j)].unscale(norm) * phase;
        }
    }
    q
}

/// Random qubit channel with `num_ops` Kraus operators, drawn through a
/// Stinespring isometry: QR of a (2 num_ops) x 2 Ginibre block, split into
/// stacked 2x2 operators.
pub fn random_kraus_channel<R: Real>(rng: &mut RngState, num_ops: usize) -> KrausChannel<R> {
    assert!((1..=4).contains(&num_ops), "1..=4 Kraus operators supported");
    let g: Matrix<R> = Matrix::from_fn(2 * num_ops, 2, |_, _| rng.complex_gaussian());
    let iso = gram_schmidt_columns(&g);
    let ops: Vec<Matrix<R>> = (0..num_ops)
        .map(|b| Matrix::from_fn(2, 2, |i, j| iso[(2 * b + i, j)]))
        .collect();
    KrausChannel::new(ops, "random").expect("columns of an isometry give a trace-preserving set")
}

/// Random coherence-breaking channel spec with uniform parameters.
pub fn random_cbc_spec<R: Real>(rng: &mut RngState) -> CbcSpec<R> {
    let two_pi = R::of(std::f64::consts::TAU);
    match rng.next_u64() % 3 {
        0 => CbcSpec::Type1,
        1 => CbcSpec::Type2 { xi: rng.uniform(R::zero(), two_pi) },
        _ => CbcSpec::Type3 {
            phi: rng.uniform(R::zero(), R::of(std::f64::consts::PI)),
            xi: rng.uniform(R::zero(), two_pi),
        },
    }
}

/// Random Pauli distribution (normalised uniforms).
pub fn random_pauli_spec<R: Real>(rng: &mut RngState) -> PauliSpec<R> {
    loop {
        let raw: [R; 4] = std::array::from_fn(|_| rng.uniform(R::zero(), R::one()));
        let sum = raw.iter().fold(R::zero(), |s, &w| s + w);
        if sum <= R::zero() {
            continue;
        }
        let q = raw.map(|w| w / sum);
        // Renormalise the largest weight so the sum is exact.
        if let Ok(spec) = PauliSpec::new(exactify(q)) {
            return spec;
        }
    }
}

fn exactify<R: Real>(mut q: [R; 4]) -> [R; 4] {
    let sum = q.iter().fold(R::zero(), |s, &w| s + w);
    let excess = sum - R::one();
    let argmax = (0..4).fold(0, |m, i| if q[i] > q[m] { i } else { m });
    q[argmax] = q[argmax] - excess;
    q
}

/// Assisted discrimination value for one probe state, computed on the
/// direct route: extend both channels with the identity, apply them to the
/// state, and take the trace norm of the weighted difference. No
/// vectorization anywhere on this path.
pub fn direct_assisted_value<R: Real>(
    prob: &DiscriminationProblem<R>,
    state: &DensityMatrix<R>,
) -> Result<R> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left_rows: 4,
            left_cols: 4,
            right_rows: state.dim(),
            right_cols: state.dim(),
        });
    }
    let ext1 = prob.channel_one().extend_with_identity()?;
    let ext2 = prob.channel_two().extend_with_identity()?;
    let out1 = ext1.apply_matrix(state.matrix())?;
    let out2 = ext2.apply_matrix(state.matrix())?;
    let diff = &out1.scale_re(prob.p1()) - &out2.scale_re(prob.p2());
    trace_norm(&diff)
}

/// Probe operator equivalent to a given bipartite pure state on the
/// difference-operator route: `P = transpose(sqrt(rho_H))`, where `rho_H`
/// is the reduced state of the channel-side factor. The transpose is part
/// of the vectorization convention, not an implementation choice.
pub fn probe_for_state<R: Real>(state: &DensityMatrix<R>) -> Result<ProbeP<R>> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left_rows: 4,
            left_cols: 4,
            right_rows: state.dim(),
            right_cols: state.dim(),
        });
    }
    let m = state.matrix();
    let reduced = Matrix::from_fn(2, 2, |n, np| m[(2 * n, 2 * np)] + m[(2 * n + 1, 2 * np + 1)]);
    let tol = Tolerances::<R>::default();
    let reduced = HermitianMatrix::with_tolerance(reduced, tol.hermiticity * R::of(4.0))
        .map_err(|e| Error::InvalidProbe { reason: format!("reduced state: {e}") })?;
    ProbeP::from_matrix(&psd_sqrt(&reduced).transpose())
}

/// Result of the direct-versus-difference-operator comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrosscheckOutcome<R: Real> {
    pub samples: usize,
    pub max_deviation: R,
    pub pass: bool,
}

/// Draws random bipartite pure probes and compares the direct value with
/// the sandwiched-difference value probe by probe. The two routes share
/// only the base matrix layer.
pub fn crosscheck_delta_path<R: Real>(
    prob: &DiscriminationProblem<R>,
    samples: usize,
    rng: &mut RngState,
    tolerance: R,
) -> Result<CrosscheckOutcome<R>> {
    let delta = build_delta(prob.channel_one(), prob.channel_two(), prob.p1())?;
    let mut max_deviation = R::zero();
    for _ in 0..samples {
        let state = random_pure_bipartite(rng);
        let direct = direct_assisted_value(prob, &state)?;
        let probe = probe_for_state(&state)?;
        let via_delta = trace_norm(sandwich(&delta, &probe).matrix())?;
        max_deviation = max_deviation.max((direct - via_delta).abs());
    }
    Ok(CrosscheckOutcome { samples, max_deviation, pass: max_deviation <= tolerance })
}

/// Derivative-free simplex ascent (Nelder-Mead with the usual 1, 2, 0.5,
/// 0.5 coefficients), every candidate clamped into the box. Stops on the
/// iteration budget or when the simplex diameter falls below
/// `cfg.tolerance`. The returned value never falls below the objective at
/// `start`.
pub fn refine_max<R: Real>(
    f: impl Fn(&[R]) -> R,
    start: &[R],
    bounds: &[(R, R)],
    cfg: &OptimizerConfig<R>,
) -> Result<(Vec<R>, R)> {
    let k = start.len();
    if k == 0 || k > 6 {
        return Err(Error::InvalidConfig {
            reason: format!("refinement supports 1..=6 parameters, got {k}"),
        });
    }
    if bounds.len() != k {
        return Err(Error::InvalidConfig {
            reason: format!("{} bounds for {} parameters", bounds.len(), k),
        });
    }
    cfg.validate()?;

    let clamp = |x: &[R]| -> Vec<R> {
        x.iter()
            .zip(bounds)
            .map(|(&v, &(lo, hi))| v.max(lo).min(hi))
            .collect()
    };
    let eval = |x: &[R]| -> Result<R> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective {
                point: x.iter().map(|&p| p.to_f64_lossy()).collect(),
            })
        }
    };

    let x0 = clamp(start);
    let mut simplex: Vec<Vec<R>> = vec![x0.clone()];
    for i in 0..k {
        let (lo, hi) = bounds[i];
        let span = hi - lo;
        let step = if span > R::zero() { span * R::of(0.05) } else { R::of(0.05) };
        let mut v = x0.clone();
        v[i] = if v[i] + step <= hi { v[i] + step } else { v[i] - step };
        simplex.push(clamp(&v));
    }
    let mut values: Vec<R> = simplex.iter().map(|v| eval(v)).collect::<Result<_>>()?;

    let mut best_x = simplex[0].clone();
    let mut best_v = values[0];
    let note_best = |x: &[R], v: R, best_x: &mut Vec<R>, best_v: &mut R| {
        if v > *best_v {
            *best_v = v;
            *best_x = x.to_vec();
        }
    };
    for (x, &v) in simplex.iter().zip(&values).skip(1) {
        note_best(x, v, &mut best_x, &mut best_v);
    }

    for _ in 0..cfg.refine_iters {
        // Order: index 0 best (largest), last worst.
        let mut order: Vec<usize> = (0..=k).collect();
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite objective"));
        let reorder_x: Vec<Vec<R>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let reorder_v: Vec<R> = order.iter().map(|&i| values[i]).collect();
        simplex = reorder_x;
        values = reorder_v;

        let diameter = simplex[1..].iter().fold(R::zero(), |d, v| {
            d.max(
                v.iter()
                    .zip(&simplex[0])
                    .fold(R::zero(), |m, (&a, &b)| m.max((a - b).abs())),
            )
        });
        if diameter < cfg.tolerance {
            break;
        }

        let centroid: Vec<R> = (0..k)
            .map(|i| {
                let mut s = R::zero();
                for v in &simplex[..k] {
                    s += v[i];
                }
                s / R::of(k as f64)
            })
            .collect();
        let worst = simplex[k].clone();
        let worst_v = values[k];
        let second_worst_v = values[k - 1];

        let shifted = |coef: R| -> Vec<R> {
            clamp(
                &centroid
                    .iter()
                    .zip(&worst)
                    .map(|(&c, &w)| c + coef * (c - w))
                    .collect::<Vec<R>>(),
            )
        };

        let reflected = shifted(R::one());
        let fr = eval(&reflected)?;
        note_best(&reflected, fr, &mut best_x, &mut best_v);

        if fr > values[0] {
            let expanded = shifted(R::of(2.0));
            let fe = eval(&expanded)?;
            note_best(&expanded, fe, &mut best_x, &mut best_v);
            if fe > fr {
                simplex[k] = expanded;
                values[k] = fe;
            } else {
                simplex[k] = reflected;
                values[k] = fr;
            }
        } else if fr > second_worst_v {
            simplex[k] = reflected;
            values[k] = fr;
        } else {
            let contracted = if fr > worst_v { shifted(R::of(0.5)) } else { shifted(R::of(-0.5)) };
            let fc = eval(&contracted)?;
            note_best(&contracted, fc, &mut best_x, &mut best_v);
            if fc > worst_v.max(fr) {
                simplex[k] = contracted;
                values[k] = fc;
            } else {
                for i in 1..=k {
                    let shrunk: Vec<R> = simplex[i]
                        .iter()
                        .zip(&simplex[0])
                        .map(|(&v, &b)| b + (v - b) * R::of(0.5))
                        .collect();
                    simplex[i] = clamp(&shrunk);
                    values[i] = eval(&simplex[i])?;
                    let (xi, vi) = (simplex[i].clone(), values[i]);
                    note_best(&xi, vi, &mut best_x, &mut best_v);
                }
            }
        }
    }

    Ok((best_x, best_v))
}
