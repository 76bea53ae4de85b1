//! Acceptance criteria, one test each. Every test writes a single
//! `criterion NN PASS|FAIL ...` line to stderr (bypassing output capture) and
//! then asserts.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;
use std::process::Command;

use cohtele::channels::{apply, choi_of_map, is_cp, map_of_choi, transpose_map_choi};
use cohtele::protocol::formulas::mems_bob_state_published;
use cohtele::protocol::unitary::scan_max;
use cohtele::protocol::{bell_decomposition_check, PovmElement};
use cohtele::sampling::{
    random_channel, random_density, random_mems, random_mems_p4_zero, random_n,
    random_projective_pair, random_pure_qubit, random_real_qubit,
};
use cohtele::states::{concurrence, is_ppt, werner_state};
use cohtele::{
    bob_unitary_coherence, pure_qubit_density, teleport_direct, teleport_via_theorem, BobUnitary,
    Case, Complex64, ComplexMatrix, DensityMatrix, Outcome, PureQubit, Resource,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = cohtele_cli::DEFAULT_SEED;

struct Part {
    label: &'static str,
    max_dev: f64,
    tol: f64,
    pass: bool,
}

impl Part {
    fn within(label: &'static str, devs: impl IntoIterator<Item = f64>, tol: f64) -> Self {
        let max_dev = devs.into_iter().fold(0.0, |m: f64, d| {
            if m.is_nan() || d.is_nan() {
                f64::NAN
            } else {
                m.max(d)
            }
        });
        Self {
            label,
            max_dev,
            tol,
            pass: max_dev <= tol,
        }
    }

    fn flag(label: &'static str, ok: bool) -> Self {
        Self {
            label,
            max_dev: if ok { 0.0 } else { 1.0 },
            tol: 0.0,
            pass: ok,
        }
    }
}

fn criterion(n: u32, title: &str, parts: Vec<Part>) {
    let pass = parts.iter().all(|p| p.pass);
    let detail: Vec<String> = parts
        .iter()
        .map(|p| {
            format!(
                "{} {} (max_dev {:.2e}, tol {:.0e})",
                p.label,
                if p.pass { "ok" } else { "FAIL" },
                p.max_dev,
                p.tol
            )
        })
        .collect();
    let line = format!(
        "criterion {n:02} {} {title}: {}\n",
        if pass { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(pass, "{line}");
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn qubit(theta: f64, phi: f64) -> DensityMatrix {
    pure_qubit_density(&PureQubit::new(theta, phi).unwrap())
}

fn grid32() -> impl Iterator<Item = (f64, f64)> {
    (0..32).flat_map(|i| (0..32).map(move |j| (PI * i as f64 / 31.0, TAU * j as f64 / 32.0)))
}

fn maxent() -> DensityMatrix {
    Resource::MaxEnt.state().unwrap()
}

fn grid_devs(case: Case, expected: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let tau = maxent();
    let mut devs = Vec::new();
    for (theta, phi) in grid32() {
        let input = qubit(theta, phi);
        for e in Resource::MaxEnt.povm(case).unwrap() {
            devs.push(
                (teleport_direct(&input, &tau, &e).unwrap().coherence_out - expected(theta, phi))
                    .abs(),
            );
        }
    }
    devs
}

#[test]
fn criterion_01_maxent_case_one() {
    let devs = grid_devs(Case::I, |t, p| (p.cos() * t.sin()).abs());
    criterion(
        1,
        "maxent Case I = |cos φ sin θ| on 32x32 grid",
        vec![Part::within("coherence", devs, 1e-10)],
    );
}

#[test]
fn criterion_02_maxent_case_two() {
    let devs = grid_devs(Case::II, |t, p| {
        (2.0 * p.sin() * (t / 2.0).cos() * (t / 2.0).sin()).abs()
    });
    criterion(
        2,
        "maxent Case II = |2 sin φ cos(θ/2) sin(θ/2)| on 32x32 grid",
        vec![Part::within("coherence", devs, 1e-10)],
    );
}

#[test]
fn criterion_03_maxent_case_three() {
    let mut r = rng(3);
    let tau = maxent();
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let (mut dist, mut coh) = (Vec::new(), Vec::new());
    for _ in 0..100 {
        let input = pure_qubit_density(&random_pure_qubit(&mut r));
        for e in Resource::MaxEnt.povm(Case::III).unwrap() {
            let out = teleport_direct(&input, &tau, &e).unwrap();
            dist.push(out.bob_state.matrix().frobenius_distance(&half));
            coh.push(out.coherence_out);
        }
    }
    criterion(
        3,
        "maxent Case III leaves Bob with I/2 and no coherence (100 random inputs)",
        vec![
            Part::within("state = I/2", dist, 1e-12),
            Part::within("coherence", coh, 1e-12),
        ],
    );
}

#[test]
fn criterion_04_perfect_circles() {
    let tau = maxent();
    let mut devs = Vec::new();
    for (case, phis) in [
        (Case::I, [0.0, PI]),
        (Case::II, [FRAC_PI_2, 3.0 * FRAC_PI_2]),
    ] {
        for phi in phis {
            for i in 0..64 {
                let input = qubit(PI * i as f64 / 63.0, phi);
                for e in Resource::MaxEnt.povm(case).unwrap() {
                    let out = teleport_direct(&input, &tau, &e).unwrap();
                    devs.push((out.coherence_out - out.coherence_in).abs());
                }
            }
        }
    }
    criterion(
        4,
        "one-cbit teleportation is perfect on the special circles",
        vec![Part::within("out = in", devs, 1e-10)],
    );
}

#[test]
fn criterion_05_nonmax_resource() {
    let mut ns: Vec<Complex64> = [0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 4.0]
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    ns.extend(
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
        .map(|&(a, b)| Complex64::new(a, b)),
    );
    let (mut prob, mut coh, mut sums, mut case3) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for n in ns {
        let m = n.norm_sqr();
        let res = Resource::NonMax(n);
        let tau = res.state().unwrap();
        for (theta, phi) in grid32() {
            let input = qubit(theta, phi);
            let (r00, r11, r01) = (input.get(0, 0).re, input.get(1, 1).re, input.get(0, 1));
            for case in Case::ALL {
                let mut total = 0.0;
                for e in res.povm(case).unwrap() {
                    let o = e.outcome();
                    let p_want = match (case, o) {
                        (Case::I, Outcome::Zero) => (1.0 + m * m) / (1.0 + m).powi(2),
                        (Case::I, Outcome::One) => 2.0 * m / (1.0 + m).powi(2),
                        (_, Outcome::Zero) => (r00 + r11 * m) / (1.0 + m),
                        (_, Outcome::One) => (r00 * m + r11) / (1.0 + m),
                    };
                    let Ok(out) = teleport_direct(&input, &tau, &e) else {
                        prob.push(p_want);
                        continue;
                    };
                    prob.push((out.probability - p_want).abs());
                    total += out.probability;
                    let c_want = match (case, o) {
                        (Case::I, Outcome::Zero) => 4.0 * m / (1.0 + m * m) * r01.im.abs(),
                        (Case::I, Outcome::One) => 2.0 * r01.im.abs(),
                        (Case::II, Outcome::Zero) => {
                            4.0 * m / ((1.0 + m) * (r00 + r11 * m)) * r01.re.abs()
                        }
                        (Case::II, Outcome::One) => {
                            4.0 * m / ((1.0 + m) * (r00 * m + r11)) * r01.re.abs()
                        }
                        (Case::III, _) => {
                            case3.push(out.coherence_out);
                            continue;
                        }
                    };
                    coh.push((out.coherence_out - c_want).abs());
                }
                sums.push((total - 1.0).abs());
            }
        }
    }
    criterion(
        5,
        "non-maximal resource: probabilities, coherences, 16 n values",
        vec![
            Part::within("probabilities", prob, 1e-10),
            Part::within("coherences", coh, 1e-10),
            Part::within("sum to 1", sums, 1e-10),
            Part::within("Case III coherence", case3, 1e-12),
        ],
    );
}

#[test]
fn criterion_06_theorem_equivalence() {
    let mut r = rng(6);
    let mut devs = Vec::new();
    for k in 0..200 {
        let input = random_density(2, &mut r);
        let (tau, e): (DensityMatrix, PovmElement) = if k % 5 == 4 {
            let tau = random_density(4, &mut r).with_dims(vec![2, 2]).unwrap();
            let [e0, e1] = random_projective_pair(&mut r);
            (tau, if r.random::<bool>() { e0 } else { e1 })
        } else {
            let res = match k % 4 {
                0 => Resource::MaxEnt,
                1 => Resource::NonMax(random_n(3.0, &mut r)),
                2 => Resource::Mems(random_mems(&mut r)),
                _ => Resource::Werner(r.random()),
            };
            let case = Case::ALL[r.random_range(0..3)];
            let [e0, e1] = res.povm(case).unwrap();
            (
                res.state().unwrap(),
                if r.random::<bool>() { e0 } else { e1 },
            )
        };
        let a = teleport_direct(&input, &tau, &e).unwrap();
        let b = teleport_via_theorem(&input, &tau, &e).unwrap();
        devs.push((a.probability - b.probability).abs());
        devs.push(
            a.bob_state
                .matrix()
                .frobenius_distance(b.bob_state.matrix()),
        );
    }
    criterion(
        6,
        "direct route = theorem route on 200 random triples",
        vec![Part::within("probability and state", devs, 1e-9)],
    );
}

#[test]
fn criterion_07_cjks_round_trip() {
    let mut r = rng(7);
    let mut devs = Vec::new();
    for (d_in, d_out, k) in [(2, 2, 1), (2, 2, 3), (2, 3, 2), (3, 2, 4), (2, 4, 1)] {
        for _ in 0..20 {
            let phi = random_channel(d_in, d_out, k, &mut r);
            let back = map_of_choi(&choi_of_map(&phi)).unwrap();
            let rho = random_density(d_in, &mut r);
            devs.push(
                apply(&phi, rho.matrix())
                    .unwrap()
                    .max_abs_diff(&apply(&back, rho.matrix()).unwrap()),
            );
        }
    }
    let t = transpose_map_choi(2);
    let min = t.min_eigenvalue().unwrap();
    criterion(
        7,
        "map -> Choi -> map round trip; transpose map is not CP",
        vec![
            Part::within("round trip", devs, 1e-9),
            Part::flag("transpose rejected", !is_cp(&t)),
            Part::within("min eigenvalue = -1", [(min + 1.0).abs()], 1e-10),
        ],
    );
}

#[test]
fn criterion_08_mems() {
    let mut r = rng(8);
    let (mut state, mut coh) = (Vec::new(), Vec::new());
    for _ in 0..200 {
        let p = random_mems(&mut r);
        let res = Resource::Mems(p);
        let input = pure_qubit_density(&random_pure_qubit(&mut r));
        for e in res.povm(Case::I).unwrap() {
            let out = teleport_direct(&input, &res.state().unwrap(), &e).unwrap();
            if e.outcome() == Outcome::Zero {
                state.push(
                    out.bob_state
                        .matrix()
                        .max_abs_diff(&mems_bob_state_published(&p, &input)),
                );
            }
            let published =
                4.0 * (p.p1() - p.p3()).abs() / (1.0 + p.p1() + p.p3()) * input.get(0, 1).re.abs();
            coh.push((out.coherence_out - published).abs());
        }
    }
    let mut bound = Vec::new();
    for _ in 0..1000 {
        let p = random_mems_p4_zero(&mut r);
        let res = Resource::Mems(p);
        let tau = res.state().unwrap();
        let c = concurrence(&tau).unwrap();
        let input = pure_qubit_density(&random_pure_qubit(&mut r));
        for e in res.povm(Case::I).unwrap() {
            let out = teleport_direct(&input, &tau, &e).unwrap();
            bound.push((out.coherence_out - 2.0 * c / (1.0 + c) * out.coherence_in).max(0.0));
        }
    }
    criterion(
        8,
        "MEMS resource: published Bob state, coherence formula, p4 = 0 bound",
        vec![
            Part::within("published state", state, 1e-10),
            Part::within("4|p1-p3|/(1+p1+p3)|Re ρ01|", coh, 1e-10),
            Part::within("bound 2C/(1+C)", bound, 1e-10),
        ],
    );
}

#[test]
fn criterion_09_werner() {
    let mut r = rng(9);
    let mut devs = Vec::new();
    for i in 0..32 {
        let p = i as f64 / 31.0;
        let res = Resource::Werner(p);
        let tau = res.state().unwrap();
        for _ in 0..8 {
            let input = pure_qubit_density(&random_pure_qubit(&mut r));
            for e in res.povm(Case::I).unwrap() {
                let out = teleport_direct(&input, &tau, &e).unwrap();
                let published = 2.0 * p / (1.0 + p) * (2.0 * input.get(0, 1).re).abs();
                devs.push((out.coherence_out - published).abs());
            }
        }
    }
    let tau = werner_state(1.0 / 3.0).unwrap();
    let res = Resource::Werner(1.0 / 3.0);
    let [e0, _] = res.povm(Case::I).unwrap();
    let plus = teleport_direct(&qubit(FRAC_PI_2, 0.0), &tau, &e0).unwrap();
    criterion(
        9,
        "Werner resource: (2p/(1+p))|2Re ρ01| on 32 p values; p = 1/3 separable yet 0.5 for |+>",
        vec![
            Part::within("formula", devs, 1e-10),
            Part::within("concurrence 0", [concurrence(&tau).unwrap()], 1e-10),
            Part::flag("PPT", is_ppt(&tau).unwrap()),
            Part::within("|+> gives 0.5", [(plus.coherence_out - 0.5).abs()], 1e-10),
        ],
    );
}

#[test]
fn criterion_10_mixed_input() {
    let mut r = rng(10);
    let tau = maxent();
    let (mut formula, mut contraction, mut equality) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..200 {
        let input = random_density(2, &mut r);
        let real = random_real_qubit(&mut r);
        for e in Resource::MaxEnt.povm(Case::I).unwrap() {
            let out = teleport_direct(&input, &tau, &e).unwrap();
            formula.push((out.coherence_out - (input.get(0, 1) + input.get(1, 0)).norm()).abs());
            contraction.push((out.coherence_out - out.coherence_in).max(0.0));
            let out = teleport_direct(&real, &tau, &e).unwrap();
            equality.push((out.coherence_out - out.coherence_in).abs());
        }
    }
    criterion(
        10,
        "mixed inputs: coherence_out = |ρ01+ρ10| <= coherence_in, equal for real ρ",
        vec![
            Part::within("formula", formula, 1e-12),
            Part::within("contraction", contraction, 1e-12),
            Part::within("real equality", equality, 1e-12),
        ],
    );
}

#[test]
fn criterion_11_bob_unitary_ceiling() {
    let mut r = rng(11);
    let tau = maxent();
    let (mut upper, mut lower, mut pointwise) = (Vec::new(), Vec::new(), Vec::new());
    let mut outputs = 0;
    while outputs < 20 {
        let q = random_pure_qubit(&mut r);
        let (a, b) = q.amplitudes();
        let c = (a * b.conj()).re;
        if c.abs() < 1e-6 {
            continue;
        }
        let e = Resource::MaxEnt.povm(Case::I).unwrap()[outputs % 2].clone();
        let out = teleport_direct(&pure_qubit_density(&q), &tau, &e).unwrap();
        let ceiling = 2.0 * c.abs();
        let (best, _) = scan_max(&out, 10_000, &mut r);
        upper.push((best - ceiling * (1.0 + 1e-9)).max(0.0));
        lower.push((ceiling * (1.0 - 1e-4) - best).max(0.0));
        for _ in 0..1000 {
            let u = BobUnitary::haar(&mut r);
            let x = 2.0 * (u.a() * u.b().conj()).re;
            pointwise
                .push((bob_unitary_coherence(&out, &u) - ceiling * (1.0 - x * x).sqrt()).abs());
        }
        outputs += 1;
    }
    criterion(
        11,
        "Bob's SU(2) rotations never beat 2|Re αβ*| (20 outputs x 1e4 Haar samples)",
        vec![
            Part::within("max <= 2|c|(1+1e-9)", upper, 0.0),
            Part::within("max >= 2|c|(1-1e-4)", lower, 0.0),
            Part::within("orbit formula", pointwise, 1e-10),
        ],
    );
}

#[test]
fn criterion_12_bell_decomposition() {
    let mut r = rng(12);
    let devs: Vec<f64> = (0..100)
        .map(|_| bell_decomposition_check(&random_pure_qubit(&mut r)))
        .collect();
    criterion(
        12,
        "|ψ>|Φ+> = ½ Σ |B_i> u_i|ψ> for 100 random inputs",
        vec![Part::within("residual", devs, 1e-12)],
    );
}

#[test]
fn criterion_13_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_cohtele");
    let verify = Command::new(bin)
        .args(["verify", "all"])
        .env_remove("COHTELE_SEED")
        .output()
        .unwrap();
    let sweep_args = [
        "sweep",
        "--param",
        "n_abs",
        "--start",
        "0.1",
        "--stop",
        "4",
        "--count",
        "64",
        "--resource",
        "nonmax:1+0.5i",
        "--theta",
        "1.2",
        "--phi",
        "0.7",
    ];
    let a = Command::new(bin).args(sweep_args).output().unwrap();
    let b = Command::new(bin).args(sweep_args).output().unwrap();
    let identical = a.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    if !verify.status.success() {
        let failed: Vec<String> = String::from_utf8_lossy(&verify.stdout)
            .lines()
            .filter(|l| l.starts_with("FAIL"))
            .map(|l| l.split_whitespace().nth(1).unwrap_or("").to_string())
            .collect();
        std::io::stderr()
            .write_all(
                format!(
                    "criterion 13 note: verify all failing checks: {}\n",
                    failed.join(", ")
                )
                .as_bytes(),
            )
            .unwrap();
    }
    criterion(
        13,
        "verify all exits 0 with the default seed; sweep CSV byte-identical across runs",
        vec![
            Part::flag("verify all exit 0", verify.status.code() == Some(0)),
            Part::flag("CSV identical", identical),
        ],
    );
}
