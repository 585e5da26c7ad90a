//! Property tests for the dense-matrix layer: eigendecomposition
//! reconstruction, singular-value identities, trace-norm invariances, and
//! the Kronecker product's algebra.

use cbdiscrim_core::cmat::{
    hermitian_eigen, hermitian_eigenvalues, kron, psd_sqrt, singular_values, trace_norm,
    HermitianMatrix, Matrix,
};
use cbdiscrim_core::oracle::{random_unitary, RngState};
use num_complex::Complex;
use proptest::prelude::*;

type C = Complex<f64>;

fn entry() -> impl Strategy<Value = C> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn square(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(entry(), n * n)
        .prop_map(move |data| Matrix::new(n, n, data).expect("finite entries, fixed shape"))
}

fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix<f64>> {
    square(n).prop_map(|m| {
        let h = &m + &m.adjoint();
        HermitianMatrix::new(h.scale_re(0.5)).expect("symmetrised")
    })
}

proptest! {
    #[test]
    fn eigen_reconstructs_the_matrix(h in hermitian(4)) {
        let eig = hermitian_eigen(&h);
        let mut rebuilt = Matrix::zeros(4, 4);
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let term = eig.vectors[(i, k)] * eig.vectors[(j, k)].conj();
                    rebuilt[(i, j)] += term.scale(eig.values[k]);
                }
            }
        }
        let scale = 1.0f64.max(h.matrix().frobenius_norm());
        prop_assert!((&rebuilt - h.matrix()).max_abs_entry() < 1e-12 * scale);
    }

    #[test]
    fn eigenvectors_are_orthonormal(h in hermitian(4)) {
        let eig = hermitian_eigen(&h);
        let gram = &eig.vectors.adjoint() * &eig.vectors;
        prop_assert!((&gram - &Matrix::identity(4)).max_abs_entry() < 1e-13);
    }

    #[test]
    fn hermitian_singular_values_are_absolute_eigenvalues(h in hermitian(3)) {
        let mut abs_eigs: Vec<f64> =
            hermitian_eigenvalues(&h).into_iter().map(f64::abs).collect();
        abs_eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let sv = singular_values(h.matrix());
        let scale = 1.0f64.max(h.matrix().frobenius_norm());
        for (a, s) in abs_eigs.iter().zip(&sv) {
            prop_assert!((a - s).abs() < 1e-7 * scale, "|eig| {a} vs sv {s}");
        }
    }

    #[test]
    fn trace_norm_dominates_the_trace(m in square(4)) {
        let tn = trace_norm(&m).unwrap();
        prop_assert!(m.trace().norm() <= tn + 1e-10);
    }

    #[test]
    fn trace_norm_is_subadditive(a in square(3), b in square(3)) {
        let sum = trace_norm(&(&a + &b)).unwrap();
        let split = trace_norm(&a).unwrap() + trace_norm(&b).unwrap();
        prop_assert!(sum <= split + 1e-9);
    }

    #[test]
    fn trace_norm_is_absolutely_homogeneous(m in square(3), s in -4.0..4.0f64) {
        let scaled = trace_norm(&m.scale_re(s)).unwrap();
        let base = trace_norm(&m).unwrap();
        prop_assert!((scaled - s.abs() * base).abs() < 1e-9 * (1.0 + base));
    }

    #[test]
    fn kron_is_bilinear(a in square(2), b in square(2), c in square(2)) {
        let left = kron(&(&a + &b), &c).unwrap();
        let split = &kron(&a, &c).unwrap() + &kron(&b, &c).unwrap();
        prop_assert!((&left - &split).max_abs_entry() < 1e-12);

        let right = kron(&c, &(&a + &b)).unwrap();
        let split = &kron(&c, &a).unwrap() + &kron(&c, &b).unwrap();
        prop_assert!((&right - &split).max_abs_entry() < 1e-12);
    }

    #[test]
    fn kron_respects_products(a in square(2), b in square(2), c in square(2), d in square(2)) {
        // (a kron b)(c kron d) = (ac) kron (bd)
        let lhs = &kron(&a, &b).unwrap() * &kron(&c, &d).unwrap();
        let rhs = kron(&(&a * &c), &(&b * &d)).unwrap();
        let scale = 1.0f64.max(lhs.frobenius_norm());
        prop_assert!((&lhs - &rhs).max_abs_entry() < 1e-12 * scale);
    }

    #[test]
    fn psd_sqrt_squares_back(h in hermitian(3)) {
        // Shift to a PSD matrix first.
        let min_eig = hermitian_eigenvalues(&h).into_iter().fold(f64::INFINITY, f64::min);
        let shift = (-min_eig).max(0.0) + 0.1;
        let psd = HermitianMatrix::new(&h.matrix().clone() + &Matrix::identity(3).scale_re(shift))
            .unwrap();
        let root = psd_sqrt(&psd);
        let squared = &root * &root;
        let scale = 1.0f64.max(psd.matrix().frobenius_norm());
        prop_assert!((&squared - psd.matrix()).max_abs_entry() < 1e-11 * scale);
    }
}

#[test]
fn trace_norm_is_unitarily_invariant() {
    let mut rng = RngState::new(31);
    for trial in 0..30 {
        let m: Matrix<f64> = Matrix::from_fn(4, 4, |_, _| {
            Complex::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        });
        let u = random_unitary(&mut rng, 4);
        let v = random_unitary(&mut rng, 4);
        let rotated = &(&u * &m) * &v;
        let a = trace_norm(&m).unwrap();
        let b = trace_norm(&rotated).unwrap();
        assert!((a - b).abs() < 1e-9 * (1.0 + a), "trial {trial}: {a} vs {b}");
    }
}

#[test]
fn hermitian_trace_norm_matches_the_general_route() {
    // The Hermitian fast path and the a*a route must agree on Hermitian
    // inputs well inside the general route's own accuracy.
    let mut rng = RngState::new(37);
    for _ in 0..50 {
        let g: Matrix<f64> = Matrix::from_fn(4, 4, |_, _| {
            Complex::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        });
        let h = (&g + &g.adjoint()).scale_re(0.5);
        let fast = trace_norm(&h).unwrap();
        let general: f64 = singular_values(&h).into_iter().sum();
        assert!((fast - general).abs() < 1e-6 * (1.0 + fast));
    }
}
