use num_complex::Complex64;

use crate::cmatrix::{herm_eig, psd_sqrt, ComplexMatrix, EIGEN_CLAMP};
use crate::error::{Error, Result};
use crate::states::{n_basis, BellLabel};

use super::{Case, Outcome, ResourceFamily};

const PROJECTOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogId {
    pub case: Case,
    pub family: ResourceFamily,
    pub n: Option<Complex64>,
}

/// One element of a two-outcome POVM on systems 1,2.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    mat: ComplexMatrix,
    outcome: Outcome,
    catalog: Option<CatalogId>,
    projector: bool,
}

impl PovmElement {
    /// A user-supplied 4x4 element; must be PSD with eigenvalues at most 1.
    pub fn custom(mat: ComplexMatrix, outcome: Outcome) -> Result<Self> {
        if mat.rows() != 4 || mat.cols() != 4 {
            return Err(Error::Dimension(format!(
                "POVM element must be 4x4, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let eig = herm_eig(&mat)?;
        if eig.min_eigenvalue() < -EIGEN_CLAMP {
            return Err(Error::NegativeEigenvalue(eig.min_eigenvalue()));
        }
        if eig.eigenvalues[0] > 1.0 + EIGEN_CLAMP {
            return Err(Error::InvalidParameter(format!(
                "POVM element has eigenvalue {} > 1",
                eig.eigenvalues[0]
            )));
        }
        Ok(Self::build(mat, outcome, None))
    }

    fn build(mat: ComplexMatrix, outcome: Outcome, catalog: Option<CatalogId>) -> Self {
        let projector = (&mat * &mat).max_abs_diff(&mat) <= PROJECTOR_TOL;
        let mat = mat.with_dims(vec![2, 2]).expect("4x4");
        Self {
            mat,
            outcome,
            catalog,
            projector,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn catalog(&self) -> Option<&CatalogId> {
        self.catalog.as_ref()
    }

    pub fn is_projector(&self) -> bool {
        self.projector
    }

    /// `√E`; projectors are returned as-is.
    pub fn sqrt(&self) -> Result<ComplexMatrix> {
        if self.projector {
            Ok(self.mat.clone())
        } else {
            psd_sqrt(&self.mat)
        }
    }

    /// The element `𝕀 − E` completing a two-outcome POVM.
    pub fn complement(&self) -> Self {
        let other = match self.outcome {
            Outcome::Zero => Outcome::One,
            Outcome::One => Outcome::Zero,
        };
        Self::build(&ComplexMatrix::identity(4) - &self.mat, other, None)
    }
}

fn sum_of_projectors(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    &ComplexMatrix::projector(a) + &ComplexMatrix::projector(b)
}

/// The two-element POVM Alice measures for a given case and resource family.
///
/// Bell-basis families (`maxent`, `mems`, `werner`):
///
/// | case | outcome 0  | outcome 1  |
/// |------|------------|------------|
/// | I    | Φ⁺ + Ψ⁺    | Φ⁻ + Ψ⁻    |
/// | II   | Φ⁺ + Ψ⁻    | Φ⁻ + Ψ⁺    |
/// | III  | Φ⁺ + Φ⁻    | Ψ⁺ + Ψ⁻    |
///
/// `nonmax` uses the n-dependent basis of [`n_basis`] with its own pairings:
/// I = {Φn⁺ + Ψn⁻, Φn⁻ + Ψn⁺}, II = {Φn⁺ + Ψn⁺, Φn⁻ + Ψn⁻},
/// III = {Φn⁺ + Φn⁻, Ψn⁺ + Ψn⁻}. At `n = 1` nonmax Case I coincides with the
/// Bell-basis Case II.
///
/// `n` must be given exactly when `family` is `nonmax`.
pub fn povm_catalog(
    case: Case,
    family: ResourceFamily,
    n: Option<Complex64>,
) -> Result<[PovmElement; 2]> {
    let (zero, one) = match (family, n) {
        (ResourceFamily::NonMax, None) => return Err(Error::MissingN),
        (ResourceFamily::NonMax, Some(n)) => {
            let b = n_basis(n);
            match case {
                Case::I => (
                    sum_of_projectors(&b.phi_plus, &b.psi_minus),
                    sum_of_projectors(&b.phi_minus, &b.psi_plus),
                ),
                Case::II => (
                    sum_of_projectors(&b.phi_plus, &b.psi_plus),
                    sum_of_projectors(&b.phi_minus, &b.psi_minus),
                ),
                Case::III => (
                    sum_of_projectors(&b.phi_plus, &b.phi_minus),
                    sum_of_projectors(&b.psi_plus, &b.psi_minus),
                ),
            }
        }
        (_, Some(_)) => {
            return Err(Error::InvalidParameter(format!(
                "n only applies to the nonmax family, not {family}"
            )));
        }
        (_, None) => {
            use BellLabel::*;
            let pair = |a: BellLabel, b: BellLabel| sum_of_projectors(&a.ket(), &b.ket());
            match case {
                Case::I => (pair(PhiPlus, PsiPlus), pair(PhiMinus, PsiMinus)),
                Case::II => (pair(PhiPlus, PsiMinus), pair(PhiMinus, PsiPlus)),
                Case::III => (pair(PhiPlus, PhiMinus), pair(PsiPlus, PsiMinus)),
            }
        }
    };
    let id = Some(CatalogId { case, family, n });
    Ok([
        PovmElement::build(zero, Outcome::Zero, id),
        PovmElement::build(one, Outcome::One, id),
    ])
}
