//! Dense complex matrices, Cartesian decomposition, Hadamard/Kronecker
//! products, the canonical isometry, norms, and Loewner-order comparison.

use crate::error::{Error, Result};
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, EigValsh, Eigh, Inverse, UPLO};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Mixed absolute/relative tolerance used by every order comparison, plus the
/// eigenvector condition cap for general (non-Hermitian) diagonalization.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct TolerancePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub eig_condition_cap: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            eig_condition_cap: 1e8,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.eig_condition_cap > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "tolerance policy fields must be strictly positive".into(),
            ))
        }
    }

    /// Instance-scale tolerance: abs_tol + rel_tol * scale.
    pub fn at_scale(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale
    }
}

/// Dense complex matrix. Square in all arithmetic roles; rectangular only as
/// an isometry/compression carrier (canonical isometry V, frames X with
/// X*X = I).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: Array2<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Spectral,
    Frobenius,
    Trace,
}

impl std::str::FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(NormKind::Spectral),
            "frobenius" => Ok(NormKind::Frobenius),
            "trace" => Ok(NormKind::Trace),
            other => Err(Error::UnknownId(other.into())),
        }
    }
}

impl ComplexMatrix {
    pub fn new(data: Array2<Complex64>) -> Result<Self> {
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidArgument("ragged or empty row data".into()));
        }
        let mut a = Array2::zeros((n, m));
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                a[(i, j)] = *z;
            }
        }
        Self::new(a)
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self {
            data: Array2::from_shape_fn((nrows, ncols), |(i, j)| f(i, j)),
        }
    }

    pub fn scalar(z: Complex64) -> Self {
        Self::from_fn(1, 1, |_, _| z)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            data: Array2::zeros((nrows, ncols)),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: Array2::eye(n),
        }
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows())
        } else {
            Err(Error::NotSquare(self.nrows(), self.ncols()))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.t().mapv(|z| z.conj()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            data: self.data.mapv(|z| z * alpha),
        }
    }

    pub fn scale_re(&self, alpha: f64) -> Self {
        self.scale(Complex64::new(alpha, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch(
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols(),
            ));
        }
        Ok(Self {
            data: self.data.dot(&other.data),
        })
    }

    /// Entrywise (Hadamard/Schur) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            data: &self.data * &other.data,
        })
    }

    /// Kronecker (tensor) product.
    pub fn kronecker(&self, other: &Self) -> Self {
        Self {
            data: ndarray::linalg::kron(&self.data, &other.data),
        }
    }

    /// Cartesian decomposition A = R + iS with R, S Hermitian.
    pub fn cartesian(&self) -> Result<(HermitianMatrix, HermitianMatrix)> {
        let n = self.dim()?;
        let adj = self.adjoint();
        let half = Complex64::new(0.5, 0.0);
        let re = Self {
            data: (&self.data + &adj.data).mapv(|z| z * half),
        };
        // (A - A*) / (2i)
        let im = Self {
            data: (&self.data - &adj.data).mapv(|z| z * Complex64::new(0.0, -0.5)),
        };
        let _ = n;
        Ok((HermitianMatrix::from_complex(&re)?, HermitianMatrix::from_complex(&im)?))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.nrows().min(self.ncols()))
            .map(|i| self.data[(i, i)])
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Squared singular values (eigenvalues of A*A, clamped at zero, ascending).
    fn gram_eigvals(&self) -> Result<Vec<f64>> {
        let gram = self.adjoint().matmul(self)?;
        let h = HermitianMatrix::from_complex(&gram)?;
        Ok(h.eigvals()?.into_iter().map(|l| l.max(0.0)).collect())
    }

    pub fn spectral_norm(&self) -> f64 {
        match self.gram_eigvals() {
            Ok(v) => v.last().copied().unwrap_or(0.0).sqrt(),
            Err(_) => f64::NAN,
        }
    }

    pub fn trace_norm(&self) -> f64 {
        match self.gram_eigvals() {
            Ok(v) => v.iter().map(|l| l.sqrt()).sum(),
            Err(_) => f64::NAN,
        }
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        match kind {
            NormKind::Spectral => self.spectral_norm(),
            NormKind::Frobenius => self.frobenius_norm(),
            NormKind::Trace => self.trace_norm(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let _ = self.dim()?;
        let inv = self.data.inv().map_err(|_| Error::Singular)?;
        Self::new(inv)
    }

    /// Principal n x m submatrix on the given (distinct, in-range) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        let n = self.dim()?;
        if indices.is_empty() || indices.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("bad submatrix index set".into()));
        }
        Ok(Self::from_fn(indices.len(), indices.len(), |i, j| {
            self.data[(indices[i], indices[j])]
        }))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.nrows() == other.nrows() && self.ncols() == other.ncols() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols(),
            ))
        }
    }
}

/// The isometry V: C^n -> C^n (x) C^n with V e_j = e_j (x) e_j, as an
/// n^2 x n matrix of zeros and ones. Compression by V turns the Kronecker
/// product into the Hadamard product.
pub fn canonical_isometry(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n * n, n, |row, col| {
        if row == col * n + col {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::ZERO
        }
    })
}

/// Hermitian matrix. Construction symmetrizes, so entries[i][j] ==
/// conj(entries[j][i]) holds exactly and the diagonal is exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: Array2<Complex64>,
}

impl HermitianMatrix {
    /// Symmetrize (M + M*)/2. The input must be square.
    pub fn from_complex(m: &ComplexMatrix) -> Result<Self> {
        let n = m.dim()?;
        let mut data = Array2::zeros((n, n));
        for i in 0..n {
            data[(i, i)] = Complex64::new(m.get(i, i).re, 0.0);
            for j in (i + 1)..n {
                let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                data[(i, j)] = z;
                data[(j, i)] = z.conj();
            }
        }
        Ok(Self { data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: Array2::zeros((n, n)),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            data: Array2::eye(n),
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = Array2::zeros((n, n));
        for (i, v) in values.iter().enumerate() {
            data[(i, i)] = Complex64::new(*v, 0.0);
        }
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            data: self.data.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(
                self.dim(),
                self.dim(),
                other.dim(),
                other.dim(),
            ));
        }
        // re-symmetrize: kills roundoff drift in long chains
        Self::from_complex(&ComplexMatrix {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            data: self.data.mapv(|z| z * alpha),
        }
    }

    /// Entrywise product of Hermitian matrices is Hermitian.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        Self::from_complex(&self.to_complex().hadamard(&other.to_complex())?)
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        Self {
            data: ndarray::linalg::kron(&self.data, &other.data),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigvals(&self) -> Result<Vec<f64>> {
        let w = self
            .data
            .eigvalsh(UPLO::Lower)
            .map_err(|_| Error::ConvergenceFailure)?;
        Ok(w.to_vec())
    }

    /// Ascending eigenvalues plus orthonormal eigenvectors (as columns).
    pub fn eigh(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        // zheev is fed the row-major buffer as if column-major, i.e. it
        // diagonalizes A^T = conj(A); conjugating the returned vectors
        // recovers the eigenvectors of A.
        let a = self.data.as_standard_layout().into_owned();
        let (w, v) = a.eigh(UPLO::Lower).map_err(|_| Error::ConvergenceFailure)?;
        Ok((w.to_vec(), ComplexMatrix { data: v.mapv(|z| z.conj()) }))
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(*self.eigvals()?.first().ok_or(Error::ConvergenceFailure)?)
    }

    pub fn lambda_max(&self) -> Result<f64> {
        Ok(*self.eigvals()?.last().ok_or(Error::ConvergenceFailure)?)
    }

    pub fn spectral_norm(&self) -> f64 {
        match self.eigvals() {
            Ok(w) => w.iter().fold(0.0f64, |m, l| m.max(l.abs())),
            Err(_) => f64::NAN,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_positive_definite(&self, floor: f64) -> Result<bool> {
        Ok(self.lambda_min()? > floor)
    }

    /// Spectral calculus: map each eigenvalue through `f`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let (w, v) = self.eigh()?;
        let n = self.dim();
        let mut d = Array2::zeros((n, n));
        for (i, l) in w.iter().enumerate() {
            let y = f(*l);
            if !y.is_finite() {
                return Err(Error::NonFinite);
            }
            d[(i, i)] = Complex64::new(y, 0.0);
        }
        let rebuilt = v
            .matmul(&ComplexMatrix { data: d })?
            .matmul(&v.adjoint())?;
        Self::from_complex(&rebuilt)
    }

    /// Real spectral power; requires positive definiteness for non-integer or
    /// negative exponents.
    pub fn power(&self, t: f64) -> Result<Self> {
        let lmin = self.lambda_min()?;
        if (t < 0.0 || t.fract() != 0.0) && lmin <= 0.0 {
            return Err(Error::NotPositiveDefinite(lmin));
        }
        self.apply(|l| l.powf(t))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.power(-1.0)
    }
}

/// Verdict of a Loewner comparison H1 <= H2.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// lambda_min(H2 - H1); nonnegative residual certifies the order.
    pub residual: f64,
}

/// H1 <= H2 in the Loewner order, up to the mixed tolerance.
pub fn loewner_leq(h1: &HermitianMatrix, h2: &HermitianMatrix, tol: &TolerancePolicy) -> Result<LoewnerVerdict> {
    let diff = h2.sub(h1)?;
    let residual = diff.lambda_min()?;
    let scale = h1.spectral_norm().max(h2.spectral_norm());
    if !residual.is_finite() || !scale.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(LoewnerVerdict {
        holds: residual >= -tol.at_scale(scale),
        residual,
    })
}

/// General eigendecomposition A = P diag(values) P^{-1}.
#[derive(Debug, Clone)]
pub struct GeneralEig {
    pub values: Vec<Complex64>,
    pub basis: ComplexMatrix,
    pub basis_inv: ComplexMatrix,
    /// Spectral condition number of the eigenbasis.
    pub condition: f64,
}

/// Diagonalize a general complex matrix, rejecting near-defective inputs by
/// the eigenvector condition cap.
pub fn eig_general(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<GeneralEig> {
    let _ = a.dim()?;
    let (vals, vecs): (Array1<Complex64>, Array2<Complex64>) =
        a.data().eig().map_err(|_| Error::ConvergenceFailure)?;
    let basis = ComplexMatrix::new(vecs)?;
    let basis_inv = basis.inverse()?;
    let condition = basis.spectral_norm() * basis_inv.spectral_norm();
    if !condition.is_finite() || condition > tol.eig_condition_cap {
        return Err(Error::IllConditioned(condition, tol.eig_condition_cap));
    }
    Ok(GeneralEig {
        values: vals.to_vec(),
        basis,
        basis_inv,
        condition,
    })
}

impl GeneralEig {
    /// Rebuild P f(diag) P^{-1} for an entrywise spectrum map.
    pub fn apply(&self, f: impl Fn(Complex64) -> Result<Complex64>) -> Result<ComplexMatrix> {
        let n = self.values.len();
        let mut d = Array2::zeros((n, n));
        for (i, z) in self.values.iter().enumerate() {
            d[(i, i)] = f(*z)?;
        }
        self.basis
            .matmul(&ComplexMatrix { data: d })?
            .matmul(&self.basis_inv)
    }
}

/// JSON wire format for matrices: row-major real and imaginary parts.
/// `cols` is present only for rectangular carriers.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cols: Option<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let (n, c) = (m.nrows(), m.ncols());
        let re = (0..n).map(|i| (0..c).map(|j| m.get(i, j).re).collect()).collect();
        let im = (0..n).map(|i| (0..c).map(|j| m.get(i, j).im).collect()).collect();
        Self {
            dim: n,
            cols: if n == c { None } else { Some(c) },
            re,
            im,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.dim;
        let c = self.cols.unwrap_or(n);
        let shape_ok = |v: &Vec<Vec<f64>>| v.len() == n && v.iter().all(|r| r.len() == c);
        if n == 0 || c == 0 || !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::InvalidArgument("matrix JSON shape mismatch".into()));
        }
        ComplexMatrix::from_rows(
            &(0..n)
                .map(|i| {
                    (0..c)
                        .map(|j| Complex64::new(self.re[i][j], self.im[i][j]))
                        .collect()
                })
                .collect::<Vec<_>>(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    pub(crate) fn remark_a() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(1.0, -1.0), c(1.0, 1.0)],
            vec![c(-1.0, 1.0), c(1.0, 1.0)],
        ])
        .unwrap()
    }

    pub(crate) fn remark_b() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(1.0, 1.0)],
            vec![c(-1.0, 1.0), c(1.0, -1.0)],
        ])
        .unwrap()
    }

    #[test]
    fn hadamard_one_by_one_square_of_one_plus_i() {
        let a = ComplexMatrix::scalar(c(1.0, 1.0));
        let p = a.hadamard(&a).unwrap();
        assert_eq!(p.get(0, 0), c(0.0, 2.0));
    }

    #[test]
    fn hadamard_identity_is_identity() {
        for n in 1..=5 {
            let i = ComplexMatrix::identity(n);
            let p = i.hadamard(&i).unwrap();
            for r in 0..n {
                for s in 0..n {
                    let want = if r == s { c(1.0, 0.0) } else { C::ZERO };
                    assert_eq!(p.get(r, s), want);
                }
            }
        }
    }

    #[test]
    fn hadamard_of_remark_matrices() {
        let p = remark_a().hadamard(&remark_b()).unwrap();
        assert_eq!(p.get(0, 0), c(2.0, 0.0));
        assert_eq!(p.get(0, 1), c(0.0, 2.0));
        assert_eq!(p.get(1, 0), c(0.0, -2.0));
        assert_eq!(p.get(1, 1), c(2.0, 0.0));
    }

    #[test]
    fn hadamard_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(a.hadamard(&b).is_err());
    }

    #[test]
    fn kronecker_identities() {
        let i2 = ComplexMatrix::identity(2);
        let k = i2.kronecker(&i2);
        assert_eq!(k.data(), ComplexMatrix::identity(4).data());
        let s = ComplexMatrix::scalar(c(2.0, 0.0)).kronecker(&ComplexMatrix::scalar(c(3.0, 0.0)));
        assert_eq!(s.get(0, 0), c(6.0, 0.0));
    }

    #[test]
    fn canonical_isometry_shape_and_entries() {
        let v = canonical_isometry(1);
        assert_eq!(v.get(0, 0), c(1.0, 0.0));
        let v = canonical_isometry(2);
        assert_eq!((v.nrows(), v.ncols()), (4, 2));
        assert_eq!(v.get(0, 0), c(1.0, 0.0));
        assert_eq!(v.get(3, 1), c(1.0, 0.0));
        assert_eq!(
            v.data().iter().map(|z| z.norm()).sum::<f64>(),
            2.0,
            "exactly two unit entries"
        );
    }

    #[test]
    fn canonical_isometry_is_isometry() {
        for n in 1..=6 {
            let v = canonical_isometry(n);
            let g = v.adjoint().matmul(&v).unwrap();
            assert_eq!(g.data(), ComplexMatrix::identity(n).data(), "V*V exact at n={n}");
        }
    }

    #[test]
    fn cartesian_of_remark_a_is_identity_real_part() {
        let (re, _) = remark_a().cartesian().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { c(1.0, 0.0) } else { C::ZERO };
                assert_eq!(re.get(i, j), want);
            }
        }
    }

    #[test]
    fn cartesian_hermitian_and_skew_cases() {
        let h = HermitianMatrix::from_complex(
            &ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(2.0, 0.0)]]).unwrap(),
        )
        .unwrap();
        let (re, im) = h.to_complex().cartesian().unwrap();
        assert_eq!(re, h);
        assert_eq!(im, HermitianMatrix::zeros(2));
        let ih = h.to_complex().scale(c(0.0, 1.0));
        let (re, im) = ih.cartesian().unwrap();
        assert_eq!(re, HermitianMatrix::zeros(2));
        assert_eq!(im, h);
    }

    #[test]
    fn cartesian_reconstructs() {
        let a = remark_b();
        let (re, im) = a.cartesian().unwrap();
        let back = re.to_complex().add(&im.to_complex().scale(c(0.0, 1.0))).unwrap();
        assert!(a.sub(&back).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn loewner_basic_cases() {
        let tol = TolerancePolicy::default();
        let zero = HermitianMatrix::zeros(2);
        let eye = HermitianMatrix::identity(2);
        let v = loewner_leq(&zero, &eye, &tol).unwrap();
        assert!(v.holds);
        assert!((v.residual - 1.0).abs() < 1e-12);

        let rab = HermitianMatrix::from_complex(
            &ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(2.0, 0.0)]]).unwrap(),
        )
        .unwrap();
        let v = loewner_leq(&eye, &rab, &tol).unwrap();
        assert!(!v.holds);
        assert!((v.residual + 1.0).abs() < 1e-12);

        let v = loewner_leq(&rab, &rab, &tol).unwrap();
        assert!(v.holds);
        assert!(v.residual.abs() < 1e-12);
    }

    #[test]
    fn eigh_known_spectra() {
        let eye3 = HermitianMatrix::identity(3);
        let w = eye3.eigvals().unwrap();
        assert!(w.iter().all(|l| (l - 1.0).abs() < 1e-14));

        let rab = HermitianMatrix::from_complex(
            &ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(2.0, 0.0)]]).unwrap(),
        )
        .unwrap();
        let w = rab.eigvals().unwrap();
        assert!(w[0].abs() < 1e-12 && (w[1] - 4.0).abs() < 1e-12);

        let d = HermitianMatrix::diag(&[4.0, 9.0]);
        let w = d.eigvals().unwrap();
        assert_eq!(w, vec![4.0, 9.0]);
    }

    #[test]
    fn eigh_reconstruction() {
        let rab = HermitianMatrix::from_complex(&remark_a().hadamard(&remark_b()).unwrap()).unwrap();
        let (w, v) = rab.eigh().unwrap();
        let mut d = Array2::zeros((2, 2));
        for (i, l) in w.iter().enumerate() {
            d[(i, i)] = c(*l, 0.0);
        }
        let back = v
            .matmul(&ComplexMatrix::new(d).unwrap())
            .unwrap()
            .matmul(&v.adjoint())
            .unwrap();
        let resid = rab.to_complex().sub(&back).unwrap().frobenius_norm();
        assert!(resid <= 1e-12 * rab.frobenius_norm().max(1.0));
    }

    #[test]
    fn eig_general_diagonal_and_hermitian_agreement() {
        let tol = TolerancePolicy::default();
        let d = ComplexMatrix::from_rows(&[vec![c(2.0, 1.0), C::ZERO], vec![C::ZERO, c(5.0, -3.0)]]).unwrap();
        let e = eig_general(&d, &tol).unwrap();
        assert!((e.condition - 1.0).abs() < 1e-10);
        let mut vals = e.values.clone();
        vals.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((vals[0] - c(2.0, 1.0)).norm() < 1e-12);
        assert!((vals[1] - c(5.0, -3.0)).norm() < 1e-12);

        let h = HermitianMatrix::from_complex(
            &ComplexMatrix::from_rows(&[vec![c(3.0, 0.0), c(1.0, 2.0)], vec![c(1.0, -2.0), c(7.0, 0.0)]]).unwrap(),
        )
        .unwrap();
        let e = eig_general(&h.to_complex(), &tol).unwrap();
        let mut re_vals: Vec<f64> = e.values.iter().map(|z| z.re).collect();
        re_vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let wh = h.eigvals().unwrap();
        for (a, b) in re_vals.iter().zip(wh.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn eig_general_rejects_near_defective() {
        let mut tol = TolerancePolicy::default();
        tol.eig_condition_cap = 1e6;
        // Jordan-like block: eigenbasis condition blows past the cap.
        let j = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(1e-18, 0.0), c(1.0, 0.0)]]).unwrap();
        match eig_general(&j, &tol) {
            Err(Error::IllConditioned(_, _)) | Err(Error::Singular) => {}
            other => panic!("expected ill-conditioned rejection, got {other:?}"),
        }
    }

    #[test]
    fn norm_values() {
        for n in [1usize, 3, 5] {
            let i = ComplexMatrix::identity(n);
            assert!((i.norm(NormKind::Spectral) - 1.0).abs() < 1e-12);
            assert!((i.norm(NormKind::Trace) - n as f64).abs() < 1e-12);
        }
        let d = ComplexMatrix::from_rows(&[vec![c(3.0, 0.0), C::ZERO], vec![C::ZERO, c(-4.0, 0.0)]]).unwrap();
        assert!((d.norm(NormKind::Spectral) - 4.0).abs() < 1e-12);
        assert!((d.norm(NormKind::Frobenius) - 5.0).abs() < 1e-12);
        assert!((d.norm(NormKind::Trace) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_json_round_trip() {
        let a = remark_a();
        let j = MatrixJson::from_matrix(&a);
        assert_eq!(j.dim, 2);
        assert!(j.cols.is_none());
        let back = j.to_matrix().unwrap();
        assert_eq!(a, back);

        let v = canonical_isometry(3);
        let j = MatrixJson::from_matrix(&v);
        assert_eq!(j.cols, Some(3));
        assert_eq!(j.to_matrix().unwrap(), v);
    }

    #[test]
    fn matrix_json_rejects_bad_shape() {
        let j = MatrixJson {
            dim: 2,
            cols: None,
            re: vec![vec![1.0, 2.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        };
        assert!(j.to_matrix().is_err());
    }

    #[test]
    fn non_finite_rejected() {
        let a = Array2::from_elem((2, 2), c(f64::NAN, 0.0));
        assert!(ComplexMatrix::new(a).is_err());
    }
}

#[cfg(test)]
pub(crate) use tests::remark_a;
