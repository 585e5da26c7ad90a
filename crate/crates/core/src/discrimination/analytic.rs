//! Closed forms for the difference-operator spectrum of the
//! coherence-breaking families and the Pauli enhancement criterion.
//!
//! Where the source formulas are printed in two inequivalent variants, both
//! are computed and the caller decides what to report; nothing here picks a
//! side silently.

use crate::channel::{CbcFamily, PauliSpec};
use crate::tol::Tolerances;
use crate::{Error, Real, Result};

use super::validate_prior;

/// Singular values of the difference operator for two mixing-family
/// (`cbc3`) channels: `{ |t + M| / 2 (x2), |t - M| / 2 (x2) }` descending,
/// with `t = p1 - p2` and
/// `M^2 = p1^2 + p2^2 - 2 p1 p2 (cos2phi1 cos2phi2 + cos(xi1 - xi2) sin2phi1 sin2phi2)`.
///
/// The radicand is `|p1 m1 - p2 m2|^2` for unit vectors `m_i`, so it is
/// nonnegative for every real input; a radicand below `-1e-12` (possible
/// only for non-finite angles) is a domain error, not something to clamp.
pub fn same_type3_singulars<R: Real>(p1: R, phi1: R, xi1: R, phi2: R, xi2: R) -> Result<[R; 4]> {
    validate_prior(p1)?;
    let audit = same_type3_audit(p1, phi1, xi1, phi2, xi2)?;
    Ok(audit.singulars)
}

/// Both printed variants of the mixing-family enhancement predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Type3Predicates {
    /// `sin2phi1 sin2phi2 cos(phi1 - phi2) < 0`, as printed.
    pub printed: bool,
    /// `sin2phi1 sin2phi2 cos(xi1 - xi2) < 0`, the variant the surrounding
    /// derivation suggests.
    pub xi_variant: bool,
}

pub fn type3_enhancement_predicates<R: Real>(
    phi1: R,
    xi1: R,
    phi2: R,
    xi2: R,
) -> Type3Predicates {
    let two = R::of(2.0);
    let s = (two * phi1).sin() * (two * phi2).sin();
    Type3Predicates {
        printed: s * (phi1 - phi2).cos() < R::zero(),
        xi_variant: s * (xi1 - xi2).cos() < R::zero(),
    }
}

/// The printed enhancement predicate for a pair of mixing-family channels.
/// The prior does not enter the predicate; it is validated for interface
/// uniformity. See [`type3_enhancement_predicates`] for the variant the
/// audit trail reports alongside it.
pub fn enhancement_condition_type3<R: Real>(
    p1: R,
    phi1: R,
    xi1: R,
    phi2: R,
    xi2: R,
) -> Result<bool> {
    validate_prior(p1)?;
    Ok(type3_enhancement_predicates(phi1, xi1, phi2, xi2).printed)
}

/// Everything the audit trail wants to say about a same-family `cbc3`
/// pair in one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SameType3Audit<R: Real> {
    /// Spectrum `{ |t + M| / 2 (x2), |t - M| / 2 (x2) }`, descending.
    pub singulars: [R; 4],
    /// `M` with the xi-symmetric cross term `cos(xi1 - xi2)`.
    pub m: R,
    /// `M` recomputed with the second phase factor dropped from the
    /// off-diagonal quantity (cross term `cos(xi1)`), as one printed
    /// definition has it.
    pub m_printed_r: R,
    pub predicates: Type3Predicates,
}

pub fn same_type3_audit<R: Real>(
    p1: R,
    phi1: R,
    xi1: R,
    phi2: R,
    xi2: R,
) -> Result<SameType3Audit<R>> {
    validate_prior(p1)?;
    let tol = Tolerances::<R>::default();
    let p2 = R::one() - p1;
    let t = p1 - p2;
    let two = R::of(2.0);
    let (s1, c1) = ((two * phi1).sin(), (two * phi1).cos());
    let (s2, c2) = ((two * phi2).sin(), (two * phi2).cos());

    let m_sqr = |cross: R| -> Result<R> {
        let radicand = p1 * p1 + p2 * p2 - two * p1 * p2 * (c1 * c2 + cross * s1 * s2);
        if !radicand.is_finite() || radicand < -tol.formula_domain {
            return Err(Error::FormulaDomain {
                radicand: radicand.to_f64_lossy(),
                floor: tol.formula_domain.to_f64_lossy(),
            });
        }
        Ok(radicand.max(R::zero()).sqrt())
    };

    let m = m_sqr((xi1 - xi2).cos())?;
    let m_printed_r = m_sqr(xi1.cos())?;

    let half = R::of(0.5);
    let hi = half * (t + m).abs();
    let lo = half * (t - m).abs();
    let (hi, lo) = if hi >= lo { (hi, lo) } else { (lo, hi) };

    Ok(SameType3Audit {
        singulars: [hi, hi, lo, lo],
        m,
        m_printed_r,
        predicates: type3_enhancement_predicates(phi1, xi1, phi2, xi2),
    })
}

/// Difference-operator spectrum for two channels from different
/// coherence-breaking families, descending. The first two families against
/// each other give `{p1, p1, p2, p2}`; either of them against the mixing
/// family gives `{p1, p2, |p1 - p2|, 0}`.
pub fn cross_type_singulars<R: Real>(a: CbcFamily, b: CbcFamily, p1: R) -> Result<[R; 4]> {
    validate_prior(p1)?;
    if a == b {
        return Err(Error::SameFamily { family: a.name().to_string() });
    }
    let p2 = R::one() - p1;
    let mut s = if a != CbcFamily::Type3 && b != CbcFamily::Type3 {
        [p1, p1, p2, p2]
    } else {
        [p1, p2, (p1 - p2).abs(), R::zero()]
    };
    s.sort_by(|x, y| y.partial_cmp(x).expect("priors are finite"));
    Ok(s)
}

/// Pauli-pair enhancement criterion: the vector
/// `r_a = p1 q1_a - p2 q2_a` and the predicate `prod_a r_a < 0`
/// (entanglement strictly helps exactly when the product is negative).
pub fn pauli_criterion<R: Real>(
    q1: &PauliSpec<R>,
    q2: &PauliSpec<R>,
    p1: R,
) -> Result<([R; 4], bool)> {
    validate_prior(p1)?;
    let p2 = R::one() - p1;
    let w1 = q1.weights();
    let w2 = q2.weights();
    let r: [R; 4] = std::array::from_fn(|a| p1 * w1[a] - p2 * w2[a]);
    let product = r.iter().fold(R::one(), |acc, &v| acc * v);
    Ok((r, product < R::zero()))
}

/// Whether a Pauli distribution describes a coherence-breaking channel:
/// both printed linear constraints
/// `q0 + q1 - q2 - q3 = 0` and `q0 - q1 + q2 - q3 = 0`
/// hold within tolerance (equivalently `q0 = q3` and `q1 = q2`).
pub fn cbc_pauli_check<R: Real>(q: &PauliSpec<R>) -> bool {
    let tol = Tolerances::<R>::default().pauli_sum;
    let w = q.weights();
    let first = w[0] + w[1] - w[2] - w[3];
    let second = w[0] - w[1] + w[2] - w[3];
    first.abs() <= tol && second.abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn identical_type3_channels_have_zero_spectrum() {
        let s = same_type3_singulars::<f64>(0.5, 0.9, 1.7, 0.9, 1.7).unwrap();
        for v in s {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn worked_example_spectrum_sums_to_sqrt_two() {
        // sin(2 phi1) = -sin(2 phi2) = cos(2 phi1) = cos(2 phi2) = sqrt(2)/2.
        let s = same_type3_singulars(0.5, FRAC_PI_8, 0.0, -FRAC_PI_8, 0.0).unwrap();
        let m = std::f64::consts::FRAC_1_SQRT_2;
        for v in s {
            assert!((v - m / 2.0).abs() < 1e-15, "singular value {v}");
        }
        let sum: f64 = s.iter().sum();
        assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn spectrum_matches_the_numeric_difference_operator() {
        use crate::channel::{cbc_kraus, CbcSpec};
        use crate::choi::build_delta;
        use crate::cmat::hermitian_eigenvalues;

        let cases = [
            (0.5, 0.4, 0.0, 1.3, 2.2),
            (0.31, 1.1, 4.9, 0.2, 0.7),
            (0.86, 2.9, 3.3, 2.9, 0.1),
            (0.5, FRAC_PI_8, 0.0, -FRAC_PI_8, 0.0),
        ];
        for (p1, phi1, xi1, phi2, xi2) in cases {
            let analytic = same_type3_singulars(p1, phi1, xi1, phi2, xi2).unwrap();
            let ch1 = cbc_kraus(&CbcSpec::Type3 { phi: phi1, xi: xi1 });
            let ch2 = cbc_kraus(&CbcSpec::Type3 { phi: phi2, xi: xi2 });
            let delta = build_delta(&ch1, &ch2, p1).unwrap();
            let mut numeric: Vec<f64> = hermitian_eigenvalues(delta.matrix())
                .into_iter()
                .map(f64::abs)
                .collect();
            numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (a, n) in analytic.iter().zip(&numeric) {
                assert!((a - n).abs() < 1e-12, "analytic {a} vs numeric {n} at p1={p1}");
            }
        }
    }

    #[test]
    fn radicand_never_dips_below_zero_for_finite_angles() {
        let mut rng = crate::oracle::RngState::new(5);
        for _ in 0..2000 {
            let p1 = rng.next_f64();
            let phi1 = rng.uniform(-10.0, 10.0);
            let phi2 = rng.uniform(-10.0, 10.0);
            let xi1 = rng.uniform(-10.0, 10.0);
            let xi2 = rng.uniform(-10.0, 10.0);
            assert!(same_type3_singulars(p1, phi1, xi1, phi2, xi2).is_ok());
        }
    }

    #[test]
    fn non_finite_angles_are_a_domain_error() {
        assert!(matches!(
            same_type3_singulars(0.5, f64::INFINITY, 0.0, 0.3, 0.0),
            Err(Error::FormulaDomain { .. })
        ));
    }

    #[test]
    fn enhancement_predicates_on_reference_points() {
        // Worked-example parameters: both variants fire.
        let p = type3_enhancement_predicates(FRAC_PI_8, 0.0, -FRAC_PI_8, 0.0);
        assert!(p.printed && p.xi_variant);

        // Same sign of sin(2 phi): neither fires.
        let p = type3_enhancement_predicates(FRAC_PI_8, 0.0, FRAC_PI_8, 0.0);
        assert!(!p.printed && !p.xi_variant);

        // Boundary phi2 = 0: strict inequality, neither fires.
        let p = type3_enhancement_predicates(FRAC_PI_8, 0.0, 0.0, 0.0);
        assert!(!p.printed && !p.xi_variant);

        // The two variants can disagree: sin2phi1 sin2phi2 < 0 while
        // cos(phi1 - phi2) < 0 flips the printed product positive.
        let p = type3_enhancement_predicates(0.4, 0.0, 2.0, 0.0);
        assert!(p.xi_variant && !p.printed);
    }

    #[test]
    fn printed_r_variant_differs_exactly_when_the_phases_do() {
        let a = same_type3_audit::<f64>(0.4, 0.7, 1.0, 1.9, 1.0).unwrap();
        assert!((a.m - a.m_printed_r).abs() > 1e-3);

        let b = same_type3_audit::<f64>(0.4, 0.7, 0.0, 1.9, 0.0).unwrap();
        assert!((b.m - b.m_printed_r).abs() < 1e-15);
    }

    #[test]
    fn cross_type_spectra() {
        let s = cross_type_singulars::<f64>(CbcFamily::Type1, CbcFamily::Type2, 0.3).unwrap();
        assert_eq!(s, [0.7, 0.7, 0.3, 0.3]);
        let s = cross_type_singulars::<f64>(CbcFamily::Type1, CbcFamily::Type3, 0.9).unwrap();
        assert!((s[0] - 0.9).abs() < 1e-15 && (s[1] - 0.8).abs() < 1e-15);
        assert!((s[2] - 0.1).abs() < 1e-15 && s[3] == 0.0);
        assert!(matches!(
            cross_type_singulars::<f64>(CbcFamily::Type3, CbcFamily::Type3, 0.5),
            Err(Error::SameFamily { .. })
        ));
    }

    #[test]
    fn sacchi_criterion_reference_values() {
        let q1 = PauliSpec::<f64>::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let q2 = PauliSpec::new([0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]).unwrap();
        let (r, enhances) = pauli_criterion(&q1, &q2, 0.5).unwrap();
        assert!((r[0] - 0.5).abs() < 1e-15);
        for a in 1..4 {
            assert!((r[a] + 1.0 / 6.0).abs() < 1e-15);
        }
        assert!(enhances);

        let (r, enhances) = pauli_criterion(&q1, &q1, 0.5).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-15) && !enhances);

        let q3 = PauliSpec::new([0.25; 4]).unwrap();
        let q4 = PauliSpec::new([0.5, 0.0, 0.0, 0.5]).unwrap();
        let (r, enhances) = pauli_criterion(&q3, &q4, 0.5).unwrap();
        assert_eq!(r, [-0.125, 0.125, 0.125, -0.125]);
        assert!(!enhances);
    }

    #[test]
    fn cbc_pauli_check_reference_values() {
        assert!(cbc_pauli_check(&PauliSpec::new([0.25; 4]).unwrap()));
        assert!(cbc_pauli_check(&PauliSpec::new([0.5, 0.0, 0.0, 0.5]).unwrap()));
        assert!(!cbc_pauli_check(&PauliSpec::new([1.0, 0.0, 0.0, 0.0]).unwrap()));
        assert!(!cbc_pauli_check(&PauliSpec::new([0.4, 0.1, 0.2, 0.3]).unwrap()));
    }
}
