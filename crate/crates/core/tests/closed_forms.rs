//! Simulated coherences and probabilities against the closed forms.

use std::f64::consts::{PI, TAU};

use approx::assert_abs_diff_eq;
use cohtele::protocol::formulas::{mems_coherence_exact, werner_coherence_exact};
use cohtele::states::{concurrence, is_ppt, mixed_qubit, werner_state};
use cohtele::{
    coherence_formula, probability_formula, pure_qubit_density, teleport_direct, Case, Complex64,
    DensityMatrix, MemsParams, Outcome, PureQubit, Resource,
};

fn grid(count: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..count).flat_map(move |i| {
        (0..count).map(move |j| {
            (
                PI * i as f64 / (count - 1) as f64,
                TAU * j as f64 / count as f64,
            )
        })
    })
}

fn ns() -> Vec<Complex64> {
    let mut out: Vec<_> = [0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 4.0]
        .iter()
        .map(|&r| Complex64::new(r, 0.0))
        .collect();
    out.extend(
        [
            (0.3, 0.4),
            (1.0, 1.0),
            (-2.0, 0.5),
            (0.0, 1.0),
            (0.0, -0.7),
            (-1.2, -1.6),
            (2.5, -0.3),
            (-0.1, 0.05),
        ]
        .iter()
        .map(|&(re, im)| Complex64::new(re, im)),
    );
    out
}

fn check(res: &Resource, case: Case, input: &DensityMatrix) {
    let tau = res.state().unwrap();
    for e in res.povm(case).unwrap() {
        let o = e.outcome();
        let p = probability_formula(case, res, o, input).unwrap().value;
        match teleport_direct(input, &tau, &e) {
            Ok(out) => {
                assert_abs_diff_eq!(out.probability, p, epsilon = 1e-10);
                let c = coherence_formula(case, res, o, input).unwrap().value;
                assert_abs_diff_eq!(out.coherence_out, c, epsilon = 1e-10);
            }
            Err(_) => assert!(p < 1e-12, "{res} {case} {o}: formula gives {p}"),
        }
    }
}

#[test]
fn maxent_all_cases_on_grid() {
    for (theta, phi) in grid(32) {
        let input = pure_qubit_density(&PureQubit::new(theta, phi).unwrap());
        for case in Case::ALL {
            check(&Resource::MaxEnt, case, &input);
        }
        let [e0, _] = Resource::MaxEnt.povm(Case::I).unwrap();
        let out = teleport_direct(&input, &Resource::MaxEnt.state().unwrap(), &e0).unwrap();
        assert_abs_diff_eq!(
            out.coherence_out,
            (phi.cos() * theta.sin()).abs(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn nonmax_all_cases_on_grid() {
    for n in ns() {
        let res = Resource::NonMax(n);
        for (theta, phi) in grid(12) {
            let input = pure_qubit_density(&PureQubit::new(theta, phi).unwrap());
            for case in Case::ALL {
                check(&res, case, &input);
            }
        }
    }
}

#[test]
fn nonmax_ratio_peaks_at_unit_modulus() {
    let input = pure_qubit_density(&PureQubit::new(PI / 2.0, PI / 2.0).unwrap());
    let res = |r: f64| Resource::NonMax(Complex64::new(r, 0.0));
    let ratio = |r: f64| {
        let res = res(r);
        let [e0, _] = res.povm(Case::I).unwrap();
        teleport_direct(&input, &res.state().unwrap(), &e0)
            .unwrap()
            .ratio()
            .unwrap()
    };
    assert_abs_diff_eq!(ratio(1.0), 1.0, epsilon = 1e-12);
    for r in [0.2, 0.7, 1.3, 3.0] {
        assert_abs_diff_eq!(ratio(r), 2.0 * r * r / (1.0 + r.powi(4)), epsilon = 1e-12);
        assert!(ratio(r) < 1.0);
    }
}

#[test]
fn mixed_inputs_follow_the_same_forms() {
    for (k, (theta, phi)) in grid(8).enumerate() {
        let input = mixed_qubit(
            &PureQubit::new(theta, phi).unwrap(),
            0.3 + 0.01 * k as f64 % 0.7,
        )
        .unwrap();
        for case in Case::ALL {
            check(&Resource::MaxEnt, case, &input);
            check(&Resource::NonMax(Complex64::new(1.4, -0.6)), case, &input);
        }
    }
}

#[test]
fn exact_mems_and_werner_over_grid() {
    let p = MemsParams::new(0.55, 0.25, 0.15, 0.05).unwrap();
    for (theta, phi) in grid(10) {
        let input = pure_qubit_density(&PureQubit::new(theta, phi).unwrap());
        for (res, exact) in [
            (Resource::Mems(p), mems_coherence_exact(&p, &input).unwrap()),
            (
                Resource::Werner(0.45),
                werner_coherence_exact(0.45, &input).unwrap(),
            ),
        ] {
            for e in res.povm(Case::I).unwrap() {
                let out = teleport_direct(&input, &res.state().unwrap(), &e).unwrap();
                assert_abs_diff_eq!(out.coherence_out, exact, epsilon = 1e-10);
                let pf = probability_formula(Case::I, &res, e.outcome(), &input)
                    .unwrap()
                    .value;
                assert_abs_diff_eq!(out.probability, pf, epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn separable_werner_still_carries_coherence() {
    let plus = pure_qubit_density(&PureQubit::new(PI / 2.0, 0.0).unwrap());
    for p in [0.05, 0.2, 1.0 / 3.0] {
        let tau = werner_state(p).unwrap();
        assert!(concurrence(&tau).unwrap() < 1e-12);
        assert!(is_ppt(&tau).unwrap());
        let [e0, _] = Resource::Werner(p).povm(Case::I).unwrap();
        let out = teleport_direct(&plus, &tau, &e0).unwrap();
        assert!(out.coherence_out > 0.0);
        assert_abs_diff_eq!(out.coherence_out, p, epsilon = 1e-12);
    }
    assert_eq!(Outcome::BOTH.len(), 2);
}
