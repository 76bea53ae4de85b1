use cohtele::states::{l1_coherence, mixed_qubit};
use cohtele::{
    teleport, Case, Complex64, ComplexMatrix, DensityMatrix, Error, Outcome, PureQubit, Resource,
    Route,
};

use crate::error::CliError;

/// Everything needed for one protocol instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub theta: f64,
    /// Reduced modulo 2π.
    pub phi: f64,
    /// Bloch radius of the input; 1 is pure.
    pub radius: f64,
    pub resource: Resource,
    pub case: Case,
    pub outcome: Outcome,
    pub route: Route,
}

impl Default for RunParams {
    fn default() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
            radius: 1.0,
            resource: Resource::MaxEnt,
            case: Case::I,
            outcome: Outcome::Zero,
            route: Route::Direct,
        }
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub index: usize,
    pub theta: f64,
    pub phi: f64,
    pub n: Option<Complex64>,
    pub resource: Resource,
    pub case: Case,
    pub outcome: Outcome,
    pub route: Route,
    pub probability: f64,
    pub coherence_in: f64,
    /// `None` when the outcome is degenerate.
    pub coherence_out: Option<f64>,
    pub ratio: Option<f64>,
    pub bob_state: Option<ComplexMatrix>,
}

impl RunParams {
    pub fn input(&self) -> Result<DensityMatrix, CliError> {
        let q = PureQubit::wrapped(self.theta, self.phi)?;
        Ok(mixed_qubit(&q, self.radius)?)
    }

    /// Runs the protocol; a degenerate outcome is an error.
    pub fn run(&self, index: usize) -> Result<Record, CliError> {
        let input = self.input()?;
        let [e0, e1] = self.resource.povm(self.case)?;
        let e = if self.outcome == Outcome::Zero {
            e0
        } else {
            e1
        };
        let out = teleport(self.route, &input, &self.resource.state()?, &e)?;
        Ok(Record {
            probability: out.probability,
            coherence_in: out.coherence_in,
            coherence_out: Some(out.coherence_out),
            ratio: out.ratio(),
            bob_state: Some(out.bob_state.into_matrix()),
            ..self.empty_record(index, &input)?
        })
    }

    /// Like [`RunParams::run`], but a degenerate outcome yields a row with
    /// empty `coherence_out` and `ratio`.
    pub fn run_lenient(&self, index: usize) -> Result<Record, CliError> {
        match self.run(index) {
            Err(CliError::Degenerate(p)) => {
                log::info!(
                    "grid point {index}: outcome probability {p:e}, conditional state undefined"
                );
                let input = self.input()?;
                Ok(Record {
                    probability: p,
                    ..self.empty_record(index, &input)?
                })
            }
            other => other,
        }
    }

    fn empty_record(&self, index: usize, input: &DensityMatrix) -> Result<Record, Error> {
        Ok(Record {
            index,
            theta: self.theta,
            phi: self.phi,
            n: self.resource.n(),
            resource: self.resource,
            case: self.case,
            outcome: self.outcome,
            route: self.route,
            probability: 0.0,
            coherence_in: l1_coherence(input, None)?,
            coherence_out: None,
            ratio: None,
            bob_state: None,
        })
    }
}
