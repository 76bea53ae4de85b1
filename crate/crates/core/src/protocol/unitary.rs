//! Bob-side SU(2) rotations applied after the outcome is received.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::states::{off_diagonal_l1, DensityMatrix};

use super::teleport::TeleportOutcome;

const UNIT_TOL: f64 = 1e-12;

/// `[[a, b], [−b*, a*]]` with `|a|² + |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BobUnitary {
    a: Complex64,
    b: Complex64,
}

impl BobUnitary {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitary((norm - 1.0).abs()));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Haar-random element: `a = cos η e^{iξ}`, `b = sin η e^{iζ}` with
    /// `cos²η`, `ξ/2π`, `ζ/2π` independent and uniform on `[0, 1)`.
    pub fn haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let c2: f64 = rng.random();
        let xi = rng.random::<f64>() * TAU;
        let zeta = rng.random::<f64>() * TAU;
        let (cos_eta, sin_eta) = (c2.sqrt(), (1.0 - c2).sqrt());
        Self {
            a: Complex64::from_polar(cos_eta, xi),
            b: Complex64::from_polar(sin_eta, zeta),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[&[self.a, self.b], &[-self.b.conj(), self.a.conj()]])
    }

    /// Coherence of `U(𝕀/2 + c σx)U†`: `2|c|·√(1 − (2 Re(ab*))²)`.
    ///
    /// Every Case I conditional state of the maximally entangled resource has
    /// this form with `c = ±Re(αβ*)`.
    pub fn orbit_coherence(&self, c: f64) -> f64 {
        let x = 2.0 * (self.a * self.b.conj()).re;
        2.0 * c.abs() * (1.0 - x * x).max(0.0).sqrt()
    }
}

/// l1 coherence of `U ρ_B U†`.
pub fn bob_unitary_coherence(outcome: &TeleportOutcome, u: &BobUnitary) -> f64 {
    rotated_coherence(&outcome.bob_state, u)
}

fn rotated_coherence(rho: &DensityMatrix, u: &BobUnitary) -> f64 {
    off_diagonal_l1(&u.matrix().sandwich(rho.matrix()))
}

/// Largest rotated coherence over `samples` Haar draws, with the maximising
/// unitary. With no samples this is the identity.
pub fn scan_max<R: Rng + ?Sized>(
    outcome: &TeleportOutcome,
    samples: usize,
    rng: &mut R,
) -> (f64, BobUnitary) {
    let mut best = (f64::NEG_INFINITY, BobUnitary::identity());
    for _ in 0..samples {
        let u = BobUnitary::haar(rng);
        let v = bob_unitary_coherence(outcome, &u);
        if v > best.0 {
            best = (v, u);
        }
    }
    if samples == 0 {
        best.0 = bob_unitary_coherence(outcome, &best.1);
    }
    best
}
