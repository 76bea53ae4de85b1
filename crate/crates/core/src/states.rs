//! States used by the teleportation protocols, the l1 coherence measure and
//! two-qubit entanglement certificates (concurrence, PPT).

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::cmatrix::{
    self, c, herm_eig, pauli, psd_sqrt, tensor, ComplexMatrix, EIGEN_CLAMP, HERMITIAN_TOL,
};
use crate::error::{Error, Result};

/// Trace deviation tolerated by [`DensityMatrix::new`].
pub const TRACE_TOL: f64 = 1e-10;

/// States with l1 coherence below this count as incoherent.
pub const INCOHERENT_TOL: f64 = 1e-10;

/// `cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩` with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    theta: f64,
    phi: f64,
}

impl PureQubit {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta = {theta} outside [0, π]"
            )));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "phi = {phi} outside [0, 2π)"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// Like [`PureQubit::new`] but reduces `phi` modulo 2π first.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self::new(theta, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(α, β)`.
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        let half = self.theta / 2.0;
        (
            c(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), self.phi),
        )
    }

    pub fn ket(&self) -> [Complex64; 2] {
        let (a, b) = self.amplitudes();
        [a, b]
    }

    /// Bloch vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn bloch(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// The two Bloch-sphere great circles on which one-cbit coherence teleportation
/// with a maximally entangled resource is perfect. They are named by their
/// defining condition; the source literature labels the first "equatorial" and
/// the second "polar".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Circle {
    /// `cos φ = ±1` (real amplitudes).
    CosPhi,
    /// `sin φ = ±1` (imaginary relative phase).
    SinPhi,
}

impl Circle {
    pub fn contains(&self, q: &PureQubit, tol: f64) -> bool {
        match self {
            Circle::CosPhi => (q.phi.cos().abs() - 1.0).abs() <= tol,
            Circle::SinPhi => (q.phi.sin().abs() - 1.0).abs() <= tol,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all within 1e-10).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidState(format!(
                "{}x{} matrix is not square",
                mat.rows(),
                mat.cols()
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min = herm_eig(&mat)?.min_eigenvalue();
        if min < -EIGEN_CLAMP {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        let mat = if mat.dims().is_some() {
            mat
        } else {
            let d = mat.rows();
            mat.with_dims(vec![d])?
        };
        Ok(Self { mat })
    }

    /// Divides a positive, trace-deficient operator by its trace.
    pub fn normalized(mat: &ComplexMatrix) -> Result<Self> {
        let tr = mat.trace().re;
        if tr <= 0.0 {
            return Err(Error::InvalidState(format!(
                "cannot normalise operator with trace {tr:e}"
            )));
        }
        Self::new(mat.scale_real(1.0 / tr))
    }

    /// `|v⟩⟨v|` for a unit vector `v`.
    pub fn from_ket(v: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::projector(v))
    }

    pub fn with_dims(self, dims: Vec<usize>) -> Result<Self> {
        Ok(Self {
            mat: self.mat.with_dims(dims)?,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn dims(&self) -> &[usize] {
        self.mat.dims().expect("density matrices always carry dims")
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        ((&self.mat * &self.mat).trace().re - 1.0).abs() <= tol
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix {:?}", self.mat)
    }
}

pub fn pure_qubit_density(q: &PureQubit) -> DensityMatrix {
    DensityMatrix::from_ket(&q.ket()).expect("unit vector")
}

/// `(𝕀 + r·n̂·σ)/2` with `n̂` the Bloch direction of `q`; `radius ∈ [0, 1]`.
pub fn mixed_qubit(q: &PureQubit, radius: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&radius) {
        return Err(Error::InvalidParameter(format!(
            "Bloch radius {radius} outside [0, 1]"
        )));
    }
    let [x, y, z] = q.bloch();
    let mut m = ComplexMatrix::identity(2);
    m += &pauli::x().scale_real(radius * x);
    m += &pauli::y().scale_real(radius * y);
    m += &pauli::z().scale_real(radius * z);
    DensityMatrix::new(m.scale_real(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    pub fn ket(&self) -> [Complex64; 4] {
        let s = FRAC_1_SQRT_2;
        let (p, m, z) = (c(s, 0.0), c(-s, 0.0), c(0.0, 0.0));
        match self {
            BellLabel::PhiPlus => [p, z, z, p],
            BellLabel::PhiMinus => [p, z, z, m],
            BellLabel::PsiPlus => [z, p, p, z],
            BellLabel::PsiMinus => [z, p, m, z],
        }
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.ket())
    }
}

pub fn bell_state(label: BellLabel) -> DensityMatrix {
    DensityMatrix::from_ket(&label.ket())
        .and_then(|d| d.with_dims(vec![2, 2]))
        .expect("Bell vectors are normalised")
}

/// The orthonormal basis `(Φn⁺, Φn⁻, Ψn⁺, Ψn⁻)` built around
/// `Φn⁺ ∝ |00⟩ + n|11⟩`:
///
/// ```text
/// Φn⁺ = (|00⟩ + n |11⟩)/√(1+|n|²)     Φn⁻ = (n*|00⟩ −  |11⟩)/√(1+|n|²)
/// Ψn⁺ = (|01⟩ + n*|10⟩)/√(1+|n|²)     Ψn⁻ = (n |01⟩ −  |10⟩)/√(1+|n|²)
/// ```
///
/// `n = 0` gives a product basis; `n = 1` gives the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NBasis {
    pub n: Complex64,
    pub phi_plus: [Complex64; 4],
    pub phi_minus: [Complex64; 4],
    pub psi_plus: [Complex64; 4],
    pub psi_minus: [Complex64; 4],
}

impl NBasis {
    pub fn vectors(&self) -> [[Complex64; 4]; 4] {
        [self.phi_plus, self.phi_minus, self.psi_plus, self.psi_minus]
    }
}

pub fn n_basis(n: Complex64) -> NBasis {
    let k = 1.0 / (1.0 + n.norm_sqr()).sqrt();
    let one = c(k, 0.0);
    let z = c(0.0, 0.0);
    NBasis {
        n,
        phi_plus: [one, z, z, n * k],
        phi_minus: [n.conj() * k, z, z, -one],
        psi_plus: [z, one, n.conj() * k, z],
        psi_minus: [z, n * k, -one, z],
    }
}

/// Shared non-maximally entangled resource `Φn⁺`.
pub fn nonmax_state(n: Complex64) -> DensityMatrix {
    DensityMatrix::from_ket(&n_basis(n).phi_plus)
        .and_then(|d| d.with_dims(vec![2, 2]))
        .expect("normalised")
}

/// Weights of `p1|Ψ⁻⟩⟨Ψ⁻| + p2|00⟩⟨00| + p3|Ψ⁺⟩⟨Ψ⁺| + p4|11⟩⟨11|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemsParams {
    p: [f64; 4],
}

impl MemsParams {
    /// Requires each weight in `[0, 1]`, sum 1 within 1e-12 and `p1 ≥ p2 ≥ p3 ≥ p4`.
    pub fn new(p1: f64, p2: f64, p3: f64, p4: f64) -> Result<Self> {
        let params = Self::new_relaxed(p1, p2, p3, p4)?;
        if !params.is_ordered() {
            return Err(Error::InvalidParameter(format!(
                "MEMS weights must be non-increasing, got ({p1}, {p2}, {p3}, {p4})"
            )));
        }
        Ok(params)
    }

    /// Skips the ordering requirement (logging a warning instead); range and
    /// normalisation are still enforced.
    pub fn new_relaxed(p1: f64, p2: f64, p3: f64, p4: f64) -> Result<Self> {
        let p = [p1, p2, p3, p4];
        if p.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidParameter(format!(
                "MEMS weights {p:?} must lie in [0, 1]"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "MEMS weights {p:?} sum to {sum}, not 1"
            )));
        }
        let params = Self { p };
        if !params.is_ordered() {
            log::warn!("MEMS weights {p:?} are not in non-increasing order");
        }
        Ok(params)
    }

    pub fn is_ordered(&self) -> bool {
        self.p.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn weights(&self) -> [f64; 4] {
        self.p
    }

    pub fn p1(&self) -> f64 {
        self.p[0]
    }
    pub fn p2(&self) -> f64 {
        self.p[1]
    }
    pub fn p3(&self) -> f64 {
        self.p[2]
    }
    pub fn p4(&self) -> f64 {
        self.p[3]
    }

    /// The published closed form `max{0, p1 − p3 − √(p2 p4)}`. It agrees with
    /// [`concurrence`] whenever `p2·p4 = 0`; see [`MemsParams::concurrence_x_state`]
    /// for the general value.
    pub fn concurrence_published(&self) -> f64 {
        (self.p1() - self.p3() - (self.p2() * self.p4()).sqrt()).max(0.0)
    }

    /// X-state concurrence `max{0, |p1 − p3| − 2√(p2 p4)}`.
    pub fn concurrence_x_state(&self) -> f64 {
        ((self.p1() - self.p3()).abs() - 2.0 * (self.p2() * self.p4()).sqrt()).max(0.0)
    }
}

pub fn mems_state(p: &MemsParams) -> DensityMatrix {
    let [p1, p2, p3, p4] = p.weights();
    let mut m = BellLabel::PsiMinus.projector().scale_real(p1);
    m += &cmatrix::matrix_unit(4, 0, 0)
        .expect("in range")
        .scale_real(p2);
    m += &BellLabel::PsiPlus.projector().scale_real(p3);
    m += &cmatrix::matrix_unit(4, 3, 3)
        .expect("in range")
        .scale_real(p4);
    DensityMatrix::new(m.with_dims(vec![2, 2]).expect("4 = 2x2")).expect("convex mixture of states")
}

/// `p|Ψ⁻⟩⟨Ψ⁻| + (1−p)𝕀/4`, `p ∈ [0, 1]`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "Werner parameter {p} outside [0, 1]"
        )));
    }
    let mut m = BellLabel::PsiMinus.projector().scale_real(p);
    m += &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    DensityMatrix::new(m.with_dims(vec![2, 2])?)
}

/// `Σ_{i≠j} |⟨i|U†ρU|j⟩|`; the computational basis when `basis` is `None`.
/// Column `k` of `basis` is the k-th measuring basis vector.
pub fn l1_coherence(rho: &DensityMatrix, basis: Option<&ComplexMatrix>) -> Result<f64> {
    let rotated;
    let m = match basis {
        None => rho.matrix(),
        Some(u) => {
            if u.rows() != rho.dim() || u.cols() != rho.dim() {
                return Err(Error::Dimension(format!(
                    "basis is {}x{}, state has dimension {}",
                    u.rows(),
                    u.cols(),
                    rho.dim()
                )));
            }
            let defect = u.unitarity_defect();
            if defect > HERMITIAN_TOL {
                return Err(Error::NotUnitary(defect));
            }
            rotated = &(&u.dagger() * rho.matrix()) * u;
            &rotated
        }
    };
    Ok(off_diagonal_l1(m))
}

/// Off-diagonal l1 norm of any square matrix (no state validation).
pub fn off_diagonal_l1(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m.get(i, j).norm();
            }
        }
    }
    sum
}

pub fn is_incoherent(rho: &DensityMatrix) -> bool {
    off_diagonal_l1(rho.matrix()) < INCOHERENT_TOL
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!(
            "expected a two-qubit (4x4) state, got {0}x{0}",
            rho.dim()
        )));
    }
    Ok(())
}

/// Wootters concurrence via the spin-flipped state `ρ̃ = (σy⊗σy)ρ*(σy⊗σy)`:
/// `max{0, λ1 − λ2 − λ3 − λ4}` with `λ` the descending square roots of the
/// eigenvalues of `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let yy = tensor(&pauli::y(), &pauli::y());
    let flipped = yy.sandwich(&rho.matrix().conj());
    let root = psd_sqrt(rho.matrix())?;
    let r = root.sandwich(&flipped);
    // r is Hermitian PSD up to rounding
    let eig = herm_eig(&r)?;
    let l: Vec<f64> = eig.eigenvalues.iter().map(|&x| x.max(0.0).sqrt()).collect();
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Smallest eigenvalue of the partial transpose on the second qubit.
pub fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let pt = cmatrix::partial_transpose(rho.matrix(), &[2, 2], 1)?;
    Ok(herm_eig(&pt)?.min_eigenvalue())
}

/// Peres–Horodecki test; for two qubits PPT is equivalent to separability.
pub fn is_ppt(rho: &DensityMatrix) -> Result<bool> {
    Ok(min_partial_transpose_eigenvalue(rho)? >= -EIGEN_CLAMP)
}
