//! Completely positive maps in Kraus form and their CJKS (Choi) matrices.
//!
//! The Choi matrix of `Φ: B(ℂ^{d_in}) → B(ℂ^{d_out})` is the unnormalised block
//! matrix `Σ_ij e_ij ⊗ Φ(e_ij)` of size `d_in·d_out`; the input factor comes
//! first. A Kraus operator `K` (shape `d_out × d_in`) contributes the rank-one
//! term `|v⟩⟨v|` with `v[i·d_out + a] = K[a, i]`, and `map_of_choi` inverts that
//! layout on the eigenvectors of the Choi matrix.

use crate::cmatrix::{c, herm_eig, ComplexMatrix, EIGEN_CLAMP, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Eigenvalues at or below this are dropped when extracting Kraus operators.
pub const KRAUS_CUTOFF: f64 = 1e-12;

/// Tolerance on `ΣK†K = 𝕀` for trace-preserving families.
pub const TP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausMap {
    ops: Vec<ComplexMatrix>,
    d_in: usize,
    d_out: usize,
    trace_preserving: bool,
}

impl KrausMap {
    /// A completely positive map with no trace condition.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::Dimension("a Kraus family needs at least one operator".into()))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        if let Some(bad) = ops.iter().find(|k| (k.rows(), k.cols()) != (d_out, d_in)) {
            return Err(Error::Dimension(format!(
                "Kraus operators must share shape {d_out}x{d_in}, found {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(Self {
            ops,
            d_in,
            d_out,
            trace_preserving: false,
        })
    }

    /// Like [`KrausMap::new`] but also checks `ΣK†K = 𝕀` within 1e-10.
    pub fn trace_preserving(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let mut map = Self::new(ops)?;
        let defect = map.tp_defect();
        if defect > TP_TOL {
            return Err(Error::NotTracePreserving(defect));
        }
        map.trace_preserving = true;
        Ok(map)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            ops: vec![ComplexMatrix::identity(d)],
            d_in: d,
            d_out: d,
            trace_preserving: true,
        }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Whether the family was constructed (and checked) as trace preserving.
    pub fn is_declared_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    fn tp_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.d_in, self.d_in);
        for k in &self.ops {
            sum += &(&k.dagger() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.d_in))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    mat: ComplexMatrix,
    d_in: usize,
    d_out: usize,
}

impl ChoiMatrix {
    pub fn new(mat: ComplexMatrix, d_in: usize, d_out: usize) -> Result<Self> {
        if !mat.is_square() || mat.rows() != d_in * d_out || d_in == 0 || d_out == 0 {
            return Err(Error::Dimension(format!(
                "Choi matrix of a {d_in}->{d_out} map must be {0}x{0}, got {1}x{2}",
                d_in * d_out,
                mat.rows(),
                mat.cols()
            )));
        }
        let mat = mat.with_dims(vec![d_in, d_out])?;
        Ok(Self { mat, d_in, d_out })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(herm_eig(&self.mat)?.min_eigenvalue())
    }
}

/// `Σ_ij e_ij ⊗ Φ(e_ij)`.
pub fn choi_of_map(m: &KrausMap) -> ChoiMatrix {
    let (d_in, d_out) = (m.d_in, m.d_out);
    let n = d_in * d_out;
    let mut mat = ComplexMatrix::zeros(n, n);
    for k in &m.ops {
        let v: Vec<_> = (0..n).map(|idx| k.get(idx % d_out, idx / d_out)).collect();
        mat += &ComplexMatrix::projector(&v);
    }
    ChoiMatrix::new(mat, d_in, d_out).expect("shape fixed by construction")
}

/// Kraus family read off the spectral decomposition of a Choi matrix:
/// `K_k = √λ_k · unvec(v_k)` for every `λ_k > 1e-12`. A Choi matrix with an
/// eigenvalue below `-1e-10` does not describe a completely positive map and is
/// rejected with [`Error::NotCompletelyPositive`].
pub fn map_of_choi(choi: &ChoiMatrix) -> Result<KrausMap> {
    let defect = choi.mat.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let eig = herm_eig(&choi.mat)?;
    let min = eig.min_eigenvalue();
    if min < -EIGEN_CLAMP {
        return Err(Error::NotCompletelyPositive {
            min_eigenvalue: min,
        });
    }
    let (d_in, d_out) = (choi.d_in, choi.d_out);
    let mut ops = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= KRAUS_CUTOFF {
            continue;
        }
        let v = eig.vector(k);
        let scale = lambda.sqrt();
        let mut op = ComplexMatrix::zeros(d_out, d_in);
        for i in 0..d_in {
            for a in 0..d_out {
                op.set(a, i, v[i * d_out + a] * scale);
            }
        }
        ops.push(op);
    }
    if ops.is_empty() {
        // the zero map
        ops.push(ComplexMatrix::zeros(d_out, d_in));
    }
    KrausMap::new(ops)
}

/// Entrywise complex conjugate of every Kraus operator (computational basis).
pub fn conjugate_map(m: &KrausMap) -> KrausMap {
    KrausMap {
        ops: m.ops.iter().map(ComplexMatrix::conj).collect(),
        ..m.clone()
    }
}

/// `outer ∘ inner`, with Kraus family `{A_i B_j}`.
pub fn compose(outer: &KrausMap, inner: &KrausMap) -> Result<KrausMap> {
    if inner.d_out != outer.d_in {
        return Err(Error::Dimension(format!(
            "cannot compose: inner map outputs dimension {}, outer expects {}",
            inner.d_out, outer.d_in
        )));
    }
    let ops = outer
        .ops
        .iter()
        .flat_map(|a| inner.ops.iter().map(move |b| a * b))
        .collect();
    Ok(KrausMap {
        ops,
        d_in: inner.d_in,
        d_out: outer.d_out,
        trace_preserving: outer.trace_preserving && inner.trace_preserving,
    })
}

/// `Σ K ρ K†`. The result is not renormalised.
pub fn apply(m: &KrausMap, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !rho.is_square() || rho.rows() != m.d_in {
        return Err(Error::Dimension(format!(
            "map acts on dimension {}, operand is {}x{}",
            m.d_in,
            rho.rows(),
            rho.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(m.d_out, m.d_out);
    for k in &m.ops {
        out += &k.sandwich(rho);
    }
    Ok(out)
}

/// Complete positivity via the Choi matrix: minimum eigenvalue ≥ −1e-10.
pub fn is_cp(choi: &ChoiMatrix) -> bool {
    matches!(choi.min_eigenvalue(), Ok(min) if min >= -EIGEN_CLAMP)
}

pub fn is_tp(m: &KrausMap) -> bool {
    m.tp_defect() <= TP_TOL
}

/// The transpose map `ρ ↦ ρᵀ`, given only by its Choi matrix `Σ e_ij ⊗ e_ji`
/// (it has no Kraus form).
pub fn transpose_map_choi(d: usize) -> ChoiMatrix {
    let mut mat = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            mat.set(i * d + j, j * d + i, c(1.0, 0.0));
        }
    }
    ChoiMatrix::new(mat, d, d).expect("square by construction")
}
