use std::fmt;

use crate::channels::{apply, compose, conjugate_map, map_of_choi, ChoiMatrix};
use crate::cmatrix::{partial_trace, tensor, ComplexMatrix};
use crate::error::{Error, Result};
use crate::states::{l1_coherence, DensityMatrix};

use super::povm::PovmElement;

/// Outcomes rarer than this have no well-defined conditional state.
pub const MIN_PROBABILITY: f64 = 1e-12;

/// Inputs with less coherence than this have no meaningful output/input ratio.
pub const RATIO_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Partial trace of the post-measurement three-qubit operator.
    Direct,
    /// Composition `T ∘ Φ*_E` of the maps encoded by the resource and POVM element.
    Theorem,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::Theorem => "theorem",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TeleportOutcome {
    pub probability: f64,
    /// Bob's conditional state, normalised.
    pub bob_state: DensityMatrix,
    pub coherence_in: f64,
    pub coherence_out: f64,
    pub route: Route,
}

impl TeleportOutcome {
    /// `coherence_out / coherence_in`, or `None` for (numerically) incoherent inputs.
    pub fn ratio(&self) -> Option<f64> {
        (self.coherence_in >= RATIO_FLOOR).then(|| self.coherence_out / self.coherence_in)
    }
}

fn check_inputs(rho_in: &DensityMatrix, tau: &DensityMatrix) -> Result<()> {
    if rho_in.dim() != 2 {
        return Err(Error::Dimension(format!(
            "input must be a qubit, got dimension {}",
            rho_in.dim()
        )));
    }
    if tau.dim() != 4 {
        return Err(Error::Dimension(format!(
            "resource must be two qubits, got dimension {}",
            tau.dim()
        )));
    }
    Ok(())
}

/// Bob's unnormalised state `Tr_12[(√E⊗𝕀)(ρ⊗τ)(√E⊗𝕀)]`; its trace is the outcome probability.
pub fn bob_operator_direct(
    rho_in: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<ComplexMatrix> {
    check_inputs(rho_in, tau)?;
    let joint = tensor(rho_in.matrix(), tau.matrix());
    let root = tensor(&e.sqrt()?, &ComplexMatrix::identity(2));
    let post = root.sandwich(&joint);
    partial_trace(&post, &[2, 2, 2], &[2])
}

/// Bob's unnormalised state as `T(Φ*_E(ρ))`, where `τ = Σ e_ij ⊗ T(e_ij)` and
/// `E = Σ e_ij ⊗ Φ_E(e_ij)`.
pub fn bob_operator_theorem(
    rho_in: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<ComplexMatrix> {
    check_inputs(rho_in, tau)?;
    let t = map_of_choi(&ChoiMatrix::new(tau.matrix().clone(), 2, 2)?)?;
    let phi_e = map_of_choi(&ChoiMatrix::new(e.matrix().clone(), 2, 2)?)?;
    let composed = compose(&t, &conjugate_map(&phi_e))?;
    apply(&composed, rho_in.matrix())
}

fn finish(
    rho_in: &DensityMatrix,
    unnormalized: ComplexMatrix,
    route: Route,
) -> Result<TeleportOutcome> {
    let probability = unnormalized.trace().re;
    if probability < MIN_PROBABILITY {
        return Err(Error::DegenerateOutcome(probability));
    }
    let bob_state = DensityMatrix::new(unnormalized.scale_real(1.0 / probability))?;
    Ok(TeleportOutcome {
        probability,
        coherence_in: l1_coherence(rho_in, None)?,
        coherence_out: l1_coherence(&bob_state, None)?,
        bob_state,
        route,
    })
}

pub fn teleport_direct(
    rho_in: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<TeleportOutcome> {
    finish(rho_in, bob_operator_direct(rho_in, tau, e)?, Route::Direct)
}

pub fn teleport_via_theorem(
    rho_in: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<TeleportOutcome> {
    finish(
        rho_in,
        bob_operator_theorem(rho_in, tau, e)?,
        Route::Theorem,
    )
}

pub fn teleport(
    route: Route,
    rho_in: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<TeleportOutcome> {
    match route {
        Route::Direct => teleport_direct(rho_in, tau, e),
        Route::Theorem => teleport_via_theorem(rho_in, tau, e),
    }
}
