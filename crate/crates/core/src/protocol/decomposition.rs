use num_complex::Complex64;

use crate::cmatrix::{pauli, tensor_vec, ComplexMatrix};
use crate::states::{BellLabel, PureQubit};

/// Residual norm of `|ψ⟩|Φ⁺⟩ = ½ Σ_i |B_i⟩ ⊗ u_i|ψ⟩` on systems 1,2,3 with
/// `(B_i, u_i)` = (Φ⁺, 𝕀), (Φ⁻, σz), (Ψ⁺, σx), (Ψ⁻, −iσy).
///
/// The `−i` on the last term comes from `σxσz = −iσy`.
pub fn bell_decomposition_check(q: &PureQubit) -> f64 {
    let psi = q.ket();
    let lhs = tensor_vec(&psi, &BellLabel::PhiPlus.ket());
    let minus_i = Complex64::new(0.0, -1.0);
    let terms = [
        (BellLabel::PhiPlus, ComplexMatrix::identity(2)),
        (BellLabel::PhiMinus, pauli::z()),
        (BellLabel::PsiPlus, pauli::x()),
        (BellLabel::PsiMinus, pauli::y().scale(minus_i)),
    ];
    let mut rhs = vec![Complex64::new(0.0, 0.0); 8];
    for (label, u) in &terms {
        let term = tensor_vec(&label.ket(), &u.apply_to_vector(&psi));
        for (acc, t) in rhs.iter_mut().zip(term) {
            *acc += t * 0.5;
        }
    }
    lhs.iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
