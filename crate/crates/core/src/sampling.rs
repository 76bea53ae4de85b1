//! Seeded random instances for property checks and verification suites.
//!
//! Every function takes the generator explicitly so callers control
//! reproducibility.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::channels::KrausMap;
use crate::cmatrix::ComplexMatrix;
use crate::protocol::{Outcome, PovmElement};
use crate::states::{DensityMatrix, MemsParams, PureQubit};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("shape matches data")
}

/// Gram-Schmidt on the columns of a Ginibre matrix; the result has orthonormal
/// columns and is Haar-distributed when square.
fn orthonormal_columns<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(
        cols <= rows,
        "cannot fit {cols} orthonormal columns in dimension {rows}"
    );
    loop {
        let g = ginibre(rows, cols, rng);
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut v = g.column(j);
            for u in &basis {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= overlap * y;
                }
            }
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                break;
            }
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
        if basis.len() == cols {
            let mut m = ComplexMatrix::zeros(rows, cols);
            for (j, col) in basis.iter().enumerate() {
                for (i, &x) in col.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            return m;
        }
    }
}

/// Haar-random `d × d` unitary.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    orthonormal_columns(d, d, rng)
}

/// Pure qubit uniform on the Bloch sphere.
pub fn random_pure_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).clamp(-1.0, 1.0).acos();
    let phi = rng.random::<f64>() * TAU;
    PureQubit::new(theta, phi).expect("angles in range")
}

/// Full-rank density matrix `GG†/Tr(GG†)` from a Ginibre `G` (Hilbert-Schmidt measure).
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(d, d, rng);
    let m = &g * &g.dagger();
    DensityMatrix::normalized(&m).expect("Ginibre product is positive")
}

/// Qubit density matrix with all-real entries.
pub fn random_real_qubit<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let (x, z) = loop {
        let x: f64 = rng.random_range(-1.0..1.0);
        let z: f64 = rng.random_range(-1.0..1.0);
        if x * x + z * z <= 1.0 {
            break (x, z);
        }
    };
    let m =
        ComplexMatrix::from_real_rows(&[&[(1.0 + z) / 2.0, x / 2.0], &[x / 2.0, (1.0 - z) / 2.0]]);
    DensityMatrix::new(m).expect("inside the Bloch ball")
}

/// Trace-preserving map with `kraus_count` operators, cut from a random isometry.
///
/// Panics unless `d_out * kraus_count >= d_in`.
pub fn random_channel<R: Rng + ?Sized>(
    d_in: usize,
    d_out: usize,
    kraus_count: usize,
    rng: &mut R,
) -> KrausMap {
    let v = orthonormal_columns(d_out * kraus_count, d_in, rng);
    let ops = (0..kraus_count)
        .map(|k| {
            let mut op = ComplexMatrix::zeros(d_out, d_in);
            for a in 0..d_out {
                for i in 0..d_in {
                    op.set(a, i, v.get(k * d_out + a, i));
                }
            }
            op
        })
        .collect();
    KrausMap::trace_preserving(ops).expect("isometry blocks are trace preserving")
}

/// `{P, 𝕀−P}` with `P` a Haar-random rank-2 projector on two qubits.
pub fn random_projective_pair<R: Rng + ?Sized>(rng: &mut R) -> [PovmElement; 2] {
    let u = random_unitary(4, rng);
    let p = &ComplexMatrix::projector(&u.column(0)) + &ComplexMatrix::projector(&u.column(1));
    let e0 = PovmElement::custom(p, Outcome::Zero).expect("projector");
    let e1 = e0.complement();
    [e0, e1]
}

/// Ordered MEMS weights from a sorted flat Dirichlet draw.
pub fn random_mems<R: Rng + ?Sized>(rng: &mut R) -> MemsParams {
    let mut w: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    w.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = w.iter().sum();
    let [a, b, c, _] = w.map(|x| x / sum);
    MemsParams::new(a, b, c, (1.0 - a - b - c).max(0.0).min(c)).expect("sorted and normalised")
}

/// Ordered MEMS weights with `p4 = 0`.
pub fn random_mems_p4_zero<R: Rng + ?Sized>(rng: &mut R) -> MemsParams {
    let mut w: [f64; 3] = std::array::from_fn(|_| Exp1.sample(rng));
    w.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = w.iter().sum();
    let (a, b) = (w[0] / sum, w[1] / sum);
    MemsParams::new(a, b, (1.0 - a - b).max(0.0).min(b), 0.0).expect("sorted and normalised")
}

/// Complex `n` with modulus uniform in `(0, max_abs]` and uniform phase.
pub fn random_n<R: Rng + ?Sized>(max_abs: f64, rng: &mut R) -> Complex64 {
    let r = max_abs * (1.0 - rng.random::<f64>());
    Complex64::from_polar(r, rng.random::<f64>() * TAU)
}
