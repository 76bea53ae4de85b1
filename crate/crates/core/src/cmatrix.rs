//! Dense complex matrices for few-qubit operators.
//!
//! Storage is row-major. A matrix may carry subsystem dimensions (`dims`) when it
//! represents an operator on a tensor product; `tensor` concatenates them and
//! `partial_trace` consumes them. Subsystem ordering follows the Kronecker
//! convention: the first factor is the most significant digit of the basis index,
//! so for three qubits `|abc⟩` has index `4a + 2b + c`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum entrywise |m − m†| accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero.
pub const EIGEN_CLAMP: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
    dims: Option<Vec<usize>>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(
                "matrix must have at least one row and column".into(),
            ));
        }
        if rows * cols != data.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            data,
            dims: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::default(); rows * cols],
            dims: None,
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.data[i * d + i] = c(1.0, 0.0);
        }
        m
    }

    /// Square matrix from nested real rows; convenient for Pauli-like literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c(x, 0.0)))
            .collect::<Vec<_>>();
        Self::new(n, data.len() / n, data).expect("ragged rows")
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .collect::<Vec<_>>();
        Self::new(n, data.len() / n, data).expect("ragged rows")
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        let mut m = Self::zeros(ket.len(), bra.len());
        for (i, k) in ket.iter().enumerate() {
            for (j, b) in bra.iter().enumerate() {
                m.data[i * bra.len() + j] = k * b.conj();
            }
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::outer(v, v)
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        let prod: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || prod != self.rows || prod != self.cols {
            return Err(Error::Dimension(format!(
                "subsystem dims {dims:?} incompatible with {}x{} matrix",
                self.rows, self.cols
            )));
        }
        self.dims = Some(dims);
        Ok(self)
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

    pub fn dims(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    /// Subsystem dims, or the single factor `[rows]` when none were recorded.
    pub fn dims_or_whole(&self) -> Vec<usize> {
        self.dims.clone().unwrap_or_else(|| vec![self.rows])
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
            dims: self.dims.clone(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t.dims = self.dims.clone();
        t
    }

    pub fn dagger(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (self - other).frobenius_norm()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.dagger() * self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        if self.dims.is_some() && self.dims == other.dims {
            out.dims = self.dims.clone();
        }
        Ok(out)
    }

    /// `self · x · self†`.
    pub fn sandwich(&self, x: &Self) -> Self {
        &(self * x) * &self.dagger()
    }

    pub fn apply_to_vector(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ComplexMatrix {}x{} dims={:?}",
            self.rows, self.cols, self.dims
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a fallible product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        self.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, b)| *a += b);
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        let mut out = self.clone();
        out.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, b)| *a -= b);
        out
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Pauli matrices.
pub mod pauli {
    use super::{c, ComplexMatrix};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }
}

/// Kronecker product `a ⊗ b`; the result's dims are `dims(a) ++ dims(b)`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij == Complex64::default() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + j * b.cols + l] = aij * b.get(k, l);
                }
            }
        }
    }
    if a.is_square() && b.is_square() {
        let mut dims = a.dims_or_whole();
        dims.extend(b.dims_or_whole());
        out.dims = Some(dims);
    }
    out
}

/// Kronecker product of column vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

fn check_subsystems(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let prod: usize = dims.iter().product();
    if !m.is_square() || dims.is_empty() || dims.contains(&0) || prod != m.rows {
        return Err(Error::Dimension(format!(
            "subsystem dims {dims:?} do not factor a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(())
}

/// Reduces `m` onto the subsystems listed in `keep` (strictly increasing indices
/// into `dims`). An empty `keep` yields the 1x1 scalar trace.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_subsystems(m, dims)?;
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Dimension(format!(
            "keep {keep:?} must be strictly increasing indices below {}",
            dims.len()
        )));
    }
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();

    let n = m.rows;
    let mut ri = vec![0; dims.len()];
    let mut ci = vec![0; dims.len()];
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..n {
        digits(r, dims, &mut ri);
        for col in 0..n {
            digits(col, dims, &mut ci);
            if traced.iter().any(|&t| ri[t] != ci[t]) {
                continue;
            }
            let (mut orow, mut ocol) = (0, 0);
            for &k in keep {
                orow = orow * dims[k] + ri[k];
                ocol = ocol * dims[k] + ci[k];
            }
            out.data[orow * out_dim + ocol] += m.get(r, col);
        }
    }
    if !kept_dims.is_empty() {
        out.dims = Some(kept_dims);
    }
    Ok(out)
}

/// Transposes subsystem `sys` only.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], sys: usize) -> Result<ComplexMatrix> {
    check_subsystems(m, dims)?;
    if sys >= dims.len() {
        return Err(Error::Dimension(format!(
            "subsystem {sys} out of range for dims {dims:?}"
        )));
    }
    let n = m.rows;
    let mut out = ComplexMatrix::zeros(n, n);
    let mut ri = vec![0; dims.len()];
    let mut ci = vec![0; dims.len()];
    let compose = |idx: &[usize]| idx.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x);
    for r in 0..n {
        for col in 0..n {
            digits(r, dims, &mut ri);
            digits(col, dims, &mut ci);
            std::mem::swap(&mut ri[sys], &mut ci[sys]);
            out.data[compose(&ri) * n + compose(&ci)] = m.get(r, col);
        }
    }
    out.dims = Some(dims.to_vec());
    Ok(out)
}

/// `|i⟩⟨j|` in dimension `d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> Result<ComplexMatrix> {
    if i >= d || j >= d {
        return Err(Error::IndexOutOfRange { d, i, j });
    }
    let mut m = ComplexMatrix::zeros(d, d);
    m.set(i, j, c(1.0, 0.0));
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct HermEigResult {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermEigResult {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V · diag(f(λ)) · V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let diag: Vec<Complex64> = self.eigenvalues.iter().map(|&l| c(f(l), 0.0)).collect();
        let v = &self.eigenvectors;
        &(v * &ComplexMatrix::diagonal(&diag)) * &v.dagger()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Spectral decomposition of a Hermitian matrix.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEigResult> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition of {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows;
    // symmetrise so the solver sees an exactly Hermitian input
    let sym = DMatrix::from_fn(n, n, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, eig.eigenvectors[(row, k)]);
        }
    }
    Ok(HermEigResult {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Positive semidefinite square root; eigenvalues down to `-EIGEN_CLAMP` are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    let min = eig.min_eigenvalue();
    if min < -EIGEN_CLAMP {
        return Err(Error::NegativeEigenvalue(min));
    }
    let mut root = eig.reconstruct_with(|l| l.max(0.0).sqrt());
    root.dims = m.dims.clone();
    Ok(root)
}
