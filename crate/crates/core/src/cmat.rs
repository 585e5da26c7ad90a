//! Dense complex matrices capped at 8x8, with the linear algebra the
//! discrimination computations need: Kronecker products, a cyclic Jacobi
//! eigensolver for Hermitian matrices, singular values, and the trace norm.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::tol::{Tolerances, JACOBI_MAX_SWEEPS};
use crate::{Error, Real, Result};

/// Largest supported dimension on either axis.
pub const MAX_DIM: usize = 8;

fn c0<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}

fn c1<R: Real>() -> Complex<R> {
    Complex::new(R::one(), R::zero())
}

/// Row-major dense complex matrix, `1..=8` on each axis, all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> Matrix<R> {
    /// Builds a matrix from row-major entries, validating shape, the
    /// dimension cap, and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<R>>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&rows) || !(1..=MAX_DIM).contains(&cols) {
            return Err(Error::DimensionRange { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch { rows, cols, len: data.len() });
        }
        for (k, e) in data.iter().enumerate() {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::NonFinite { row: k / cols, col: k % cols });
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<R>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch { rows: r, cols: c, len: row.len() });
            }
            data.extend_from_slice(row);
        }
        Matrix::new(r, c, data)
    }

    /// 2x2 matrix from row-major entries.
    pub fn mat2(e: [Complex<R>; 4]) -> Self {
        Matrix { rows: 2, cols: 2, data: e.to_vec() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&rows) && (1..=MAX_DIM).contains(&cols),
            "dimensions must lie in 1..=8"
        );
        Matrix { rows, cols, data: vec![c0(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c1();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dim() requires a square matrix");
        self.rows
    }

    pub fn data(&self) -> &[Complex<R>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Complex::conj).collect() }
    }

    pub fn scale(&self, s: Complex<R>) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e * s).collect() }
    }

    pub fn scale_re(&self, s: R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e.scale(s)).collect() }
    }

    pub fn trace(&self) -> Complex<R> {
        assert!(self.is_square(), "trace requires a square matrix");
        let mut t = c0();
        for i in 0..self.rows {
            t += self.data[i * self.cols + i];
        }
        t
    }

    pub fn frobenius_norm(&self) -> R {
        let mut s = R::zero();
        for e in &self.data {
            s += e.norm_sqr();
        }
        s.sqrt()
    }

    pub fn max_abs_entry(&self) -> R {
        self.data.iter().fold(R::zero(), |m, e| m.max(e.norm()))
    }

    /// Max entrywise deviation from the adjoint.
    pub fn hermiticity_deviation(&self) -> R {
        assert!(self.is_square(), "hermiticity requires a square matrix");
        let n = self.rows;
        let mut d = R::zero();
        for i in 0..n {
            for j in i..n {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tolerance: R) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tolerance
    }
}

impl<R: Real> Index<(usize, usize)> for Matrix<R> {
    type Output = Complex<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Real> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: Self) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "addition requires equal dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<R: Real> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: Self) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "subtraction requires equal dimensions");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<R: Real> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| -e).collect() }
    }
}

impl<R: Real> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: Self) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "product requires inner dimensions to match");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == c0() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += aik * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

/// Kronecker product; the result must still fit in the 8x8 cap.
pub fn kron<R: Real>(a: &Matrix<R>, b: &Matrix<R>) -> Result<Matrix<R>> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::DimensionRange { rows, cols });
    }
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Square matrix validated to be Hermitian at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<R: Real> {
    inner: Matrix<R>,
}

impl<R: Real> HermitianMatrix<R> {
    pub fn new(m: Matrix<R>) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::<R>::default().hermiticity)
    }

    pub fn with_tolerance(m: Matrix<R>, tolerance: R) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        let deviation = m.hermiticity_deviation();
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64_lossy(),
                tolerance: tolerance.to_f64_lossy(),
            });
        }
        Ok(HermitianMatrix { inner: m })
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.rows
    }
}

impl<R: Real> std::ops::Deref for HermitianMatrix<R> {
    type Target = Matrix<R>;
    fn deref(&self) -> &Matrix<R> {
        &self.inner
    }
}

/// Eigenvalues (descending) with the matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigendecomposition<R: Real> {
    pub values: Vec<R>,
    pub vectors: Matrix<R>,
}

/// Cyclic Jacobi on a Hermitian matrix. Each rotation zeroes one
/// off-diagonal pair; sweeps repeat until the off-diagonal Frobenius mass
/// drops below the configured threshold (scaled up only when the input
/// norm exceeds 1, so the target stays reachable in floating point),
/// the mass stops decreasing, or the sweep cap is hit.
fn jacobi<R: Real>(m: &Matrix<R>, want_vectors: bool) -> (Vec<R>, Option<Matrix<R>>) {
    let n = m.rows;
    let mut a = m.data.clone();
    let mut v = if want_vectors { Some(Matrix::<R>::identity(n).data) } else { None };
    let threshold = Tolerances::<R>::default().jacobi_off * m.frobenius_norm().max(R::one());

    let mut prev = R::infinity();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_mass(&a, n);
        if off < threshold || off >= prev {
            break;
        }
        prev = off;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
    }

    let values: Vec<R> = (0..n).map(|i| a[i * n + i].re).collect();
    let vectors = v.map(|data| Matrix { rows: n, cols: n, data });
    (values, vectors)
}

fn off_mass<R: Real>(a: &[Complex<R>], n: usize) -> R {
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided rotation zeroing the (p, q) entry: the pivot's phase is
/// factored out, then a real Jacobi rotation diagonalises the remaining
/// real-symmetric 2x2 block.
fn rotate<R: Real>(a: &mut [Complex<R>], v: Option<&mut [Complex<R>]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == R::zero() {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (r + r);
    let t = if tau == R::zero() {
        R::one()
    } else {
        tau.signum() / (tau.abs() + (R::one() + tau * tau).sqrt())
    };
    let c = (R::one() + t * t).sqrt().recip();
    let s = t * c;
    let phase = apq.unscale(r);
    let pc = phase.scale(c);
    let ps = phase.scale(s);

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let hkp = a[k * n + p];
        let hkq = a[k * n + q];
        let new_kp = pc * hkp - hkq.scale(s);
        let new_kq = ps * hkp + hkq.scale(c);
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp.conj();
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = Complex::new(app - t * r, R::zero());
    a[q * n + q] = Complex::new(aqq + t * r, R::zero());
    a[p * n + q] = c0();
    a[q * n + p] = c0();

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = pc * vkp - vkq.scale(s);
            v[k * n + q] = ps * vkp + vkq.scale(c);
        }
    }
}

fn sorted_desc<R: Real>(values: Vec<R>) -> (Vec<R>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).expect("finite eigenvalues"));
    let sorted = idx.iter().map(|&i| values[i]).collect();
    (sorted, idx)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues<R: Real>(h: &HermitianMatrix<R>) -> Vec<R> {
    let (values, _) = jacobi(h.matrix(), false);
    sorted_desc(values).0
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen<R: Real>(h: &HermitianMatrix<R>) -> Eigendecomposition<R> {
    let (values, vectors) = jacobi(h.matrix(), true);
    let raw = vectors.expect("vectors requested");
    let (values, idx) = sorted_desc(values);
    let n = h.dim();
    let vectors = Matrix::from_fn(n, n, |i, j| raw[(i, idx[j])]);
    Eigendecomposition { values, vectors }
}

/// Singular values, descending. Computed as the square roots of the
/// eigenvalues of `a* a`; negative round-off is clamped to 0.
pub fn singular_values<R: Real>(a: &Matrix<R>) -> Vec<R> {
    let g = &a.adjoint() * a;
    let (values, _) = jacobi(&g, false);
    let (values, _) = sorted_desc(values);
    values.into_iter().map(|v| v.max(R::zero()).sqrt()).collect()
}

/// Trace norm (sum of singular values) of a square matrix.
///
/// Hermitian inputs (the common case here: every weighted output
/// difference is Hermitian) take the eigenvalue route, summing `|lambda|`
/// directly. Going through `a* a` instead would square the spectrum and
/// lose half the precision at small singular values, which several of the
/// closed forms hit exactly (they have a vanishing singular value).
pub fn trace_norm<R: Real>(a: &Matrix<R>) -> Result<R> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let herm_floor = R::of(1e-12) * R::one().max(a.frobenius_norm());
    if a.hermiticity_deviation() <= herm_floor {
        let (values, _) = jacobi(a, false);
        return Ok(values.into_iter().fold(R::zero(), |s, v| s + v.abs()));
    }
    Ok(singular_values(a).into_iter().fold(R::zero(), |s, v| s + v))
}

/// Positive square root of a Hermitian positive semidefinite matrix;
/// negative eigenvalue round-off is clamped to 0.
pub fn psd_sqrt<R: Real>(h: &HermitianMatrix<R>) -> Matrix<R> {
    let eig = hermitian_eigen(h);
    let n = h.dim();
    let mut out = Matrix::zeros(n, n);
    for (k, lambda) in eig.values.iter().enumerate() {
        let root = lambda.max(R::zero()).sqrt();
        for i in 0..n {
            for j in 0..n {
                let term = eig.vectors[(i, k)] * eig.vectors[(j, k)].conj();
                out[(i, j)] += term.scale(root);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn cr(re: f64) -> C {
        Complex::new(re, 0.0)
    }

    const TOL: f64 = 1e-12;

    #[test]
    fn constructor_validates_shape_and_range() {
        assert!(matches!(
            Matrix::<f64>::new(9, 2, vec![c(0.0, 0.0); 18]),
            Err(Error::DimensionRange { .. })
        ));
        assert!(matches!(
            Matrix::<f64>::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            Matrix::new(1, 2, vec![c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 0 })
        ));
    }

    #[test]
    fn kron_of_sigma_x_with_identity() {
        let sx = Matrix::mat2([cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
        let id = Matrix::identity(2);
        let k = kron(&sx, &id).unwrap();
        assert_eq!(k.rows(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i + 2) % 4 == j && (i / 2 != j / 2) { 1.0 } else { 0.0 };
                assert!((k[(i, j)] - cr(expect)).norm() < TOL, "({i},{j})");
            }
        }
    }

    #[test]
    fn kron_rejects_results_beyond_the_cap() {
        let a = Matrix::<f64>::identity(4);
        assert!(matches!(kron(&a, &a), Err(Error::DimensionRange { rows: 16, cols: 16 })));
    }

    #[test]
    fn eigenvalues_of_pauli_matrices() {
        for m in [
            Matrix::mat2([cr(0.0), cr(1.0), cr(1.0), cr(0.0)]),
            Matrix::mat2([cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]),
            Matrix::mat2([cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]),
        ] {
            let h = HermitianMatrix::new(m).unwrap();
            let vals = hermitian_eigenvalues(&h);
            assert!((vals[0] - 1.0).abs() < TOL);
            assert!((vals[1] + 1.0).abs() < TOL);
        }
    }

    #[test]
    fn eigen_reconstruction_of_a_fixed_hermitian() {
        let m = Matrix::from_rows(&[
            vec![cr(2.0), c(0.3, 0.4), c(-0.1, 0.2), cr(0.0)],
            vec![c(0.3, -0.4), cr(-1.0), c(0.5, -0.6), c(0.0, 0.25)],
            vec![c(-0.1, -0.2), c(0.5, 0.6), cr(0.5), c(0.7, 0.0)],
            vec![cr(0.0), c(0.0, -0.25), c(0.7, 0.0), cr(1.5)],
        ])
        .unwrap();
        let h = HermitianMatrix::new(m.clone()).unwrap();
        let eig = hermitian_eigen(&h);

        let trace: f64 = eig.values.iter().sum();
        assert!((trace - m.trace().re).abs() < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));

        let n = 4;
        let mut rebuilt = Matrix::zeros(n, n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    rebuilt[(i, j)] +=
                        (eig.vectors[(i, k)] * eig.vectors[(j, k)].conj()).scale(eig.values[k]);
                }
            }
        }
        assert!((&rebuilt - &m).max_abs_entry() < 1e-9);

        let gram = &eig.vectors.adjoint() * &eig.vectors;
        assert!((&gram - &Matrix::identity(n)).max_abs_entry() < 1e-10);
    }

    #[test]
    fn singular_values_of_a_row_kraus_operator() {
        let phi = std::f64::consts::FRAC_PI_4;
        let m = Matrix::mat2([cr(0.0), cr(0.0), cr(-phi.sin()), cr(phi.cos())]);
        let s = singular_values(&m);
        assert!((s[0] - 1.0).abs() < TOL);
        assert!(s[1].abs() < TOL);
    }

    #[test]
    fn trace_norm_separates_ground_state_from_plus_state() {
        let ground = Matrix::mat2([cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
        let plus = Matrix::mat2([cr(0.5), cr(0.5), cr(0.5), cr(0.5)]);
        let d = &ground - &plus;
        let tn = trace_norm(&d).unwrap();
        assert!((tn - std::f64::consts::SQRT_2).abs() < TOL);

        let h = HermitianMatrix::new(d).unwrap();
        let vals = hermitian_eigenvalues(&h);
        assert!((vals[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);
        assert!((vals[1] + std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);
    }

    #[test]
    fn trace_norm_of_a_definite_matrix_is_the_trace() {
        let m = Matrix::mat2([cr(0.7), c(0.1, 0.2), c(0.1, -0.2), cr(0.3)]);
        let tn = trace_norm(&m).unwrap();
        assert!((tn - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_requires_square_input() {
        let m = Matrix::new(2, 3, vec![cr(0.0); 6]).unwrap();
        assert!(matches!(trace_norm(&m), Err(Error::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn hermitian_wrapper_rejects_asymmetry() {
        let m = Matrix::mat2([cr(1.0), cr(0.5), cr(0.2), cr(1.0)]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = Matrix::mat2([cr(0.8), c(0.1, 0.3), c(0.1, -0.3), cr(0.4)]);
        let g = &m.adjoint() * &m;
        let h = HermitianMatrix::new(g.clone()).unwrap();
        let root = psd_sqrt(&h);
        let squared = &root * &root;
        assert!((&squared - &g).max_abs_entry() < 1e-12);
    }

    #[test]
    fn works_for_f32_as_well() {
        let m = Matrix::<f32>::mat2([
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
        ]);
        let h = HermitianMatrix::with_tolerance(m, 1e-6).unwrap();
        let vals = hermitian_eigenvalues(&h);
        assert!((vals[0] - 1.0).abs() < 1e-5);
        assert!((vals[1] + 1.0).abs() < 1e-5);
    }
}
