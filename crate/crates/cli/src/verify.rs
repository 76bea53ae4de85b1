//! Seeded verification suites.
//!
//! Each check draws from its own ChaCha stream of the suite seed, so checks do
//! not depend on each other's sample counts and reports are reproducible.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use cohtele::channels::{choi_of_map, is_cp, map_of_choi, transpose_map_choi};
use cohtele::protocol::formulas::{
    mems_bob_state_published, mems_coherence_exact, werner_coherence_exact,
};
use cohtele::protocol::unitary::scan_max;
use cohtele::protocol::{bell_decomposition_check, povm_catalog, PovmElement};
use cohtele::sampling::{
    random_channel, random_density, random_mems, random_mems_p4_zero, random_n,
    random_projective_pair, random_pure_qubit, random_real_qubit,
};
use cohtele::states::{concurrence, min_partial_transpose_eigenvalue, n_basis, werner_state};
use cohtele::{
    bob_unitary_coherence, coherence_formula, probability_formula, pure_qubit_density,
    teleport_direct, teleport_via_theorem, BobUnitary, Case, Complex64, ComplexMatrix,
    DensityMatrix, Outcome, PureQubit, Resource, ResourceFamily, Result,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

/// Seed used when neither `--seed` nor `COHTELE_SEED` is given.
pub const DEFAULT_SEED: u64 = 0x5EED_C0DE;

pub const SEED_ENV: &str = "COHTELE_SEED";

pub const HAAR_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem,
    Formulas,
    Basis,
    Bounds,
    All,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        match s {
            "theorem" => Ok(Suite::Theorem),
            "formulas" => Ok(Suite::Formulas),
            "basis" => Ok(Suite::Basis),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            other => Err(CliError::Usage(format!(
                "unknown suite {other:?} (expected theorem, formulas, basis, bounds or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Theorem => "theorem",
            Suite::Formulas => "formulas",
            Suite::Basis => "basis",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        })
    }
}

/// `--seed` beats `COHTELE_SEED`, which beats [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> std::result::Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(v) => parse_seed(v),
        None => Ok(DEFAULT_SEED),
    }
}

/// Decimal or `0x`-prefixed hexadecimal, underscores allowed.
pub fn parse_seed(s: &str) -> std::result::Result<u64, CliError> {
    let t = s.trim().replace('_', "");
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| CliError::Usage(format!("invalid seed {s:?}")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when every deviation is at most `tolerance`.
    fn within(
        name: &'static str,
        deviations: impl IntoIterator<Item = f64>,
        tolerance: f64,
    ) -> Self {
        let max_deviation = deviations.into_iter().fold(0.0, |m: f64, d| {
            if m.is_nan() || d.is_nan() {
                f64::NAN
            } else {
                m.max(d)
            }
        });
        Self {
            name,
            passed: max_deviation <= tolerance,
            max_deviation,
            tolerance,
        }
    }

    fn errored(name: &'static str, e: cohtele::Error) -> Self {
        log::error!("check {name}: {e}");
        Self {
            name,
            passed: false,
            max_deviation: f64::NAN,
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} seed {:#x}", self.suite, self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<40} max_dev={:<12.3e} tol={:.0e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.max_deviation,
                c.tolerance
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "overall {} ({} checks, {failed} failed)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<Check>;

fn suite_checks(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    match suite {
        Suite::Theorem => vec![
            ("route_equivalence_catalogs", route_equivalence_catalogs),
            (
                "route_equivalence_random_projective",
                route_equivalence_random_projective,
            ),
            ("cjks_round_trip", cjks_round_trip),
            ("transpose_map_not_cp", transpose_map_not_cp),
        ],
        Suite::Formulas => vec![
            ("maxent_case_i_grid", maxent_case_i_grid),
            ("maxent_case_ii_grid", maxent_case_ii_grid),
            ("maxent_case_iii_coherence", maxent_case_iii_coherence),
            (
                "maxent_case_iii_state_is_half_identity",
                maxent_case_iii_state,
            ),
            ("perfect_circles", perfect_circles),
            ("nonmax_probabilities", nonmax_probabilities),
            ("nonmax_coherence", nonmax_coherence),
            ("probability_sums", probability_sums),
            ("mems_published_state", mems_published_state),
            ("mems_published_coherence", mems_published_coherence),
            ("mems_exact_coherence", mems_exact_coherence),
            ("werner_published_coherence", werner_published_coherence),
            ("werner_exact_coherence", werner_exact_coherence),
            ("werner_one_third_plus_is_half", werner_one_third_plus),
        ],
        Suite::Basis => vec![
            ("n_basis_gram", n_basis_gram),
            ("bell_decomposition", bell_decomposition),
            ("catalog_completeness", catalog_completeness),
            ("nonmax_unit_n_is_bell_case_ii", nonmax_unit_n),
        ],
        Suite::Bounds => vec![
            ("mems_p4_zero_bound", mems_bound),
            ("mixed_input_formula", mixed_input_formula),
            ("mixed_input_contraction", mixed_input_contraction),
            ("mixed_input_real_equality", mixed_input_real_equality),
            ("werner_separable_no_entanglement", werner_separable),
            ("werner_separable_coherence", werner_separable_coherence),
            ("unitary_ceiling_upper", unitary_ceiling_upper),
            ("unitary_ceiling_reached", unitary_ceiling_reached),
            ("unitary_orbit_formula", unitary_orbit_formula),
        ],
        Suite::All => [Suite::Theorem, Suite::Formulas, Suite::Basis, Suite::Bounds]
            .into_iter()
            .flat_map(suite_checks)
            .collect(),
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> VerificationReport {
    let checks = suite_checks(suite)
        .into_iter()
        .map(|(name, f)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_id(name));
            f(&mut rng).unwrap_or_else(|e| Check::errored(name, e))
        })
        .collect();
    VerificationReport {
        suite,
        seed,
        checks,
    }
}

/// FNV-1a of the check name.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

// Shared helpers

fn qubit(theta: f64, phi: f64) -> DensityMatrix {
    pure_qubit_density(&PureQubit::wrapped(theta, phi).expect("grid angles in range"))
}

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

/// Sixteen values of `n`, half of them complex.
pub fn n_values() -> Vec<Complex64> {
    let real = [0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 4.0].map(|r| Complex64::new(r, 0.0));
    let complex = [
        (0.3, 0.4),
        (1.0, 1.0),
        (-2.0, 0.5),
        (0.0, 1.0),
        (0.0, -0.7),
        (-1.2, -1.6),
        (2.5, -0.3),
        (-0.1, 0.05),
    ]
    .map(|(re, im)| Complex64::new(re, im));
    real.into_iter().chain(complex).collect()
}

fn element(res: &Resource, case: Case, outcome: Outcome) -> Result<PovmElement> {
    let [e0, e1] = res.povm(case)?;
    Ok(if outcome == Outcome::Zero { e0 } else { e1 })
}

fn route_pair_deviation(
    input: &DensityMatrix,
    tau: &DensityMatrix,
    e: &PovmElement,
) -> Result<f64> {
    let a = teleport_direct(input, tau, e)?;
    let b = teleport_via_theorem(input, tau, e)?;
    Ok((a.probability - b.probability).abs().max(
        a.bob_state
            .matrix()
            .frobenius_distance(b.bob_state.matrix()),
    ))
}

/// Simulated coherence minus `expected(theta, phi)` over a pure-state grid.
fn grid_deviation(
    res: &Resource,
    case: Case,
    count: usize,
    expected: impl Fn(f64, f64, Outcome) -> f64,
) -> Result<Vec<f64>> {
    let tau = res.state()?;
    let mut devs = Vec::new();
    for (theta, phi) in grid(count) {
        let input = qubit(theta, phi);
        for e in res.povm(case)? {
            let out = teleport_direct(&input, &tau, &e)?;
            devs.push((out.coherence_out - expected(theta, phi, e.outcome())).abs());
        }
    }
    Ok(devs)
}

// theorem

fn random_resources(rng: &mut ChaCha8Rng) -> Vec<Resource> {
    let mut out = vec![Resource::MaxEnt];
    for _ in 0..4 {
        out.push(Resource::NonMax(random_n(3.0, rng)));
        out.push(Resource::Mems(random_mems(rng)));
        out.push(Resource::Werner(rng.random()));
    }
    out
}

fn route_equivalence_catalogs(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for res in random_resources(rng) {
        let tau = res.state()?;
        for case in Case::ALL {
            for e in res.povm(case)? {
                for _ in 0..20 {
                    devs.push(route_pair_deviation(&random_density(2, rng), &tau, &e)?);
                }
            }
        }
    }
    Ok(Check::within("route_equivalence_catalogs", devs, 1e-9))
}

fn route_equivalence_random_projective(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for _ in 0..100 {
        let tau = random_density(4, rng).with_dims(vec![2, 2])?;
        let input = random_density(2, rng);
        for e in random_projective_pair(rng) {
            devs.push(route_pair_deviation(&input, &tau, &e)?);
        }
    }
    Ok(Check::within(
        "route_equivalence_random_projective",
        devs,
        1e-9,
    ))
}

fn cjks_round_trip(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for (d_in, d_out, k) in [
        (2, 2, 1),
        (2, 2, 4),
        (2, 3, 2),
        (3, 2, 3),
        (2, 4, 1),
        (4, 2, 2),
    ] {
        for _ in 0..10 {
            let phi = random_channel(d_in, d_out, k, rng);
            let back = map_of_choi(&choi_of_map(&phi))?;
            let rho = random_density(d_in, rng);
            let a = cohtele::channels::apply(&phi, rho.matrix())?;
            let b = cohtele::channels::apply(&back, rho.matrix())?;
            devs.push(a.max_abs_diff(&b));
        }
    }
    Ok(Check::within("cjks_round_trip", devs, 1e-9))
}

fn transpose_map_not_cp(_: &mut ChaCha8Rng) -> Result<Check> {
    let choi = transpose_map_choi(2);
    let min = choi.min_eigenvalue()?;
    let dev = if is_cp(&choi) {
        f64::INFINITY
    } else {
        (min + 1.0).abs()
    };
    Ok(Check::within("transpose_map_not_cp", [dev], 1e-10))
}

// formulas

fn maxent_case_i_grid(_: &mut ChaCha8Rng) -> Result<Check> {
    let devs = grid_deviation(&Resource::MaxEnt, Case::I, 32, |t, p, _| {
        (p.cos() * t.sin()).abs()
    })?;
    Ok(Check::within("maxent_case_i_grid", devs, 1e-10))
}

fn maxent_case_ii_grid(_: &mut ChaCha8Rng) -> Result<Check> {
    let devs = grid_deviation(&Resource::MaxEnt, Case::II, 32, |t, p, _| {
        (2.0 * p.sin() * (t / 2.0).cos() * (t / 2.0).sin()).abs()
    })?;
    Ok(Check::within("maxent_case_ii_grid", devs, 1e-10))
}

fn maxent_case_iii_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let tau = Resource::MaxEnt.state()?;
    let mut devs = Vec::new();
    for _ in 0..100 {
        let input = pure_qubit_density(&random_pure_qubit(rng));
        for e in Resource::MaxEnt.povm(Case::III)? {
            devs.push(teleport_direct(&input, &tau, &e)?.coherence_out);
        }
    }
    Ok(Check::within("maxent_case_iii_coherence", devs, 1e-12))
}

fn maxent_case_iii_state(rng: &mut ChaCha8Rng) -> Result<Check> {
    let tau = Resource::MaxEnt.state()?;
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let mut devs = Vec::new();
    for _ in 0..100 {
        let input = pure_qubit_density(&random_pure_qubit(rng));
        for e in Resource::MaxEnt.povm(Case::III)? {
            devs.push(
                teleport_direct(&input, &tau, &e)?
                    .bob_state
                    .matrix()
                    .frobenius_distance(&half),
            );
        }
    }
    Ok(Check::within(
        "maxent_case_iii_state_is_half_identity",
        devs,
        1e-12,
    ))
}

fn perfect_circles(_: &mut ChaCha8Rng) -> Result<Check> {
    let tau = Resource::MaxEnt.state()?;
    let mut devs = Vec::new();
    for (case, phis) in [
        (Case::I, [0.0, PI]),
        (Case::II, [FRAC_PI_2, 3.0 * FRAC_PI_2]),
    ] {
        for phi in phis {
            for i in 0..64 {
                let input = qubit(PI * i as f64 / 63.0, phi);
                for e in Resource::MaxEnt.povm(case)? {
                    let out = teleport_direct(&input, &tau, &e)?;
                    devs.push((out.coherence_out - out.coherence_in).abs());
                }
            }
        }
    }
    Ok(Check::within("perfect_circles", devs, 1e-10))
}

fn nonmax_formula_devs(
    f: fn(Case, &Resource, Outcome, &DensityMatrix) -> Result<f64>,
    coherence: bool,
) -> Result<Vec<f64>> {
    let mut devs = Vec::new();
    for n in n_values() {
        let res = Resource::NonMax(n);
        let tau = res.state()?;
        for (theta, phi) in grid(16) {
            let input = qubit(theta, phi);
            for case in Case::ALL {
                for e in res.povm(case)? {
                    let want = f(case, &res, e.outcome(), &input)?;
                    match teleport_direct(&input, &tau, &e) {
                        Ok(out) => devs.push(
                            (if coherence {
                                out.coherence_out
                            } else {
                                out.probability
                            } - want)
                                .abs(),
                        ),
                        Err(cohtele::Error::DegenerateOutcome(p)) if !coherence => {
                            devs.push((p - want).abs())
                        }
                        Err(cohtele::Error::DegenerateOutcome(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(devs)
}

fn nonmax_probabilities(_: &mut ChaCha8Rng) -> Result<Check> {
    let devs = nonmax_formula_devs(
        |c, r, o, i| Ok(probability_formula(c, r, o, i)?.value),
        false,
    )?;
    Ok(Check::within("nonmax_probabilities", devs, 1e-10))
}

fn nonmax_coherence(_: &mut ChaCha8Rng) -> Result<Check> {
    let devs = nonmax_formula_devs(|c, r, o, i| Ok(coherence_formula(c, r, o, i)?.value), true)?;
    Ok(Check::within("nonmax_coherence", devs, 1e-10))
}

fn probability_sums(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for res in random_resources(rng) {
        let tau = res.state()?;
        for case in Case::ALL {
            for _ in 0..20 {
                let input = random_density(2, rng);
                let mut total = 0.0;
                for e in res.povm(case)? {
                    total += cohtele::protocol::teleport::bob_operator_direct(&input, &tau, &e)?
                        .trace()
                        .re;
                }
                devs.push((total - 1.0).abs());
            }
        }
    }
    Ok(Check::within("probability_sums", devs, 1e-10))
}

fn mems_case_i(
    rng: &mut ChaCha8Rng,
    mut f: impl FnMut(
        &cohtele::MemsParams,
        &DensityMatrix,
        Outcome,
        &cohtele::TeleportOutcome,
    ) -> Result<f64>,
) -> Result<Vec<f64>> {
    let mut devs = Vec::new();
    for _ in 0..200 {
        let p = random_mems(rng);
        let res = Resource::Mems(p);
        let input = pure_qubit_density(&random_pure_qubit(rng));
        for e in res.povm(Case::I)? {
            let out = teleport_direct(&input, &res.state()?, &e)?;
            devs.push(f(&p, &input, e.outcome(), &out)?);
        }
    }
    Ok(devs)
}

fn mems_published_state(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mems_case_i(rng, |p, input, o, out| {
        Ok(if o == Outcome::Zero {
            out.bob_state
                .matrix()
                .max_abs_diff(&mems_bob_state_published(p, input))
        } else {
            0.0
        })
    })?;
    Ok(Check::within("mems_published_state", devs, 1e-10))
}

fn mems_published_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mems_case_i(rng, |p, input, o, out| {
        Ok(
            (out.coherence_out - coherence_formula(Case::I, &Resource::Mems(*p), o, input)?.value)
                .abs(),
        )
    })?;
    Ok(Check::within("mems_published_coherence", devs, 1e-10))
}

fn mems_exact_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mems_case_i(rng, |p, input, _, out| {
        Ok((out.coherence_out - mems_coherence_exact(p, input)?).abs())
    })?;
    Ok(Check::within("mems_exact_coherence", devs, 1e-10))
}

fn werner_grid(
    rng: &mut ChaCha8Rng,
    f: impl Fn(f64, &DensityMatrix, Outcome) -> Result<f64>,
) -> Result<Vec<f64>> {
    let mut devs = Vec::new();
    for i in 0..32 {
        let p = i as f64 / 31.0;
        let res = Resource::Werner(p);
        let tau = res.state()?;
        for _ in 0..8 {
            let input = pure_qubit_density(&random_pure_qubit(rng));
            for e in res.povm(Case::I)? {
                let out = teleport_direct(&input, &tau, &e)?;
                devs.push((out.coherence_out - f(p, &input, e.outcome())?).abs());
            }
        }
    }
    Ok(devs)
}

fn werner_published_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = werner_grid(rng, |p, input, o| {
        Ok(coherence_formula(Case::I, &Resource::Werner(p), o, input)?.value)
    })?;
    Ok(Check::within("werner_published_coherence", devs, 1e-10))
}

fn werner_exact_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = werner_grid(rng, |p, input, _| werner_coherence_exact(p, input))?;
    Ok(Check::within("werner_exact_coherence", devs, 1e-10))
}

fn werner_one_third_plus(_: &mut ChaCha8Rng) -> Result<Check> {
    let res = Resource::Werner(1.0 / 3.0);
    let out = teleport_direct(
        &qubit(FRAC_PI_2, 0.0),
        &res.state()?,
        &element(&res, Case::I, Outcome::Zero)?,
    )?;
    Ok(Check::within(
        "werner_one_third_plus_is_half",
        [(out.coherence_out - 0.5).abs()],
        1e-10,
    ))
}

// basis

fn n_basis_gram(_: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for n in n_values().into_iter().chain([Complex64::new(0.0, 0.0)]) {
        let vs = n_basis(n).vectors();
        for (i, u) in vs.iter().enumerate() {
            for (j, v) in vs.iter().enumerate() {
                let g: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                devs.push((g - Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).norm());
            }
        }
    }
    Ok(Check::within("n_basis_gram", devs, 1e-12))
}

fn bell_decomposition(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs: Vec<f64> = (0..100)
        .map(|_| bell_decomposition_check(&random_pure_qubit(rng)))
        .collect();
    for (t, p) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (PI, 0.0)] {
        devs.push(bell_decomposition_check(&PureQubit::new(t, p)?));
    }
    Ok(Check::within("bell_decomposition", devs, 1e-12))
}

fn catalog_completeness(_: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    let families = [
        ResourceFamily::MaxEnt,
        ResourceFamily::Mems,
        ResourceFamily::Werner,
    ];
    let mut catalogs: Vec<(ResourceFamily, Option<Complex64>)> =
        families.iter().map(|&f| (f, None)).collect();
    catalogs.extend(
        n_values()
            .into_iter()
            .map(|n| (ResourceFamily::NonMax, Some(n))),
    );
    for (family, n) in catalogs {
        for case in Case::ALL {
            let [e0, e1] = povm_catalog(case, family, n)?;
            devs.push((e0.matrix() + e1.matrix()).max_abs_diff(&ComplexMatrix::identity(4)));
            for e in [e0, e1] {
                devs.push((e.matrix() * e.matrix()).max_abs_diff(e.matrix()));
            }
        }
    }
    Ok(Check::within("catalog_completeness", devs, 1e-12))
}

fn nonmax_unit_n(_: &mut ChaCha8Rng) -> Result<Check> {
    let a = povm_catalog(
        Case::I,
        ResourceFamily::NonMax,
        Some(Complex64::new(1.0, 0.0)),
    )?;
    let b = povm_catalog(Case::II, ResourceFamily::MaxEnt, None)?;
    let devs = a
        .iter()
        .zip(&b)
        .map(|(x, y)| x.matrix().max_abs_diff(y.matrix()));
    Ok(Check::within("nonmax_unit_n_is_bell_case_ii", devs, 1e-12))
}

// bounds

fn mems_bound(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for _ in 0..1000 {
        let p = random_mems_p4_zero(rng);
        let res = Resource::Mems(p);
        let tau = res.state()?;
        let c = concurrence(&tau)?;
        let input = pure_qubit_density(&random_pure_qubit(rng));
        for e in res.povm(Case::I)? {
            let out = teleport_direct(&input, &tau, &e)?;
            devs.push((out.coherence_out - 2.0 * c / (1.0 + c) * out.coherence_in).max(0.0));
        }
    }
    Ok(Check::within("mems_p4_zero_bound", devs, 1e-10))
}

fn mixed_case_i(
    rng: &mut ChaCha8Rng,
    real: bool,
    f: impl Fn(&DensityMatrix, &cohtele::TeleportOutcome) -> f64,
) -> Result<Vec<f64>> {
    let tau = Resource::MaxEnt.state()?;
    let mut devs = Vec::new();
    for _ in 0..200 {
        let input = if real {
            random_real_qubit(rng)
        } else {
            random_density(2, rng)
        };
        for e in Resource::MaxEnt.povm(Case::I)? {
            devs.push(f(&input, &teleport_direct(&input, &tau, &e)?));
        }
    }
    Ok(devs)
}

fn mixed_input_formula(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mixed_case_i(rng, false, |i, out| {
        (out.coherence_out - (i.get(0, 1) + i.get(1, 0)).norm()).abs()
    })?;
    Ok(Check::within("mixed_input_formula", devs, 1e-12))
}

fn mixed_input_contraction(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mixed_case_i(rng, false, |_, out| {
        (out.coherence_out - out.coherence_in).max(0.0)
    })?;
    Ok(Check::within("mixed_input_contraction", devs, 1e-12))
}

fn mixed_input_real_equality(rng: &mut ChaCha8Rng) -> Result<Check> {
    let devs = mixed_case_i(rng, true, |_, out| {
        (out.coherence_out - out.coherence_in).abs()
    })?;
    Ok(Check::within("mixed_input_real_equality", devs, 1e-12))
}

fn werner_separable(_: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for i in 1..=20 {
        let tau = werner_state(i as f64 / 60.0)?;
        devs.push(concurrence(&tau)?);
        devs.push((-min_partial_transpose_eigenvalue(&tau)?).max(0.0));
    }
    Ok(Check::within(
        "werner_separable_no_entanglement",
        devs,
        1e-10,
    ))
}

/// Shortfall below a strictly positive coherence for separable resources.
fn werner_separable_coherence(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for i in 1..=20 {
        let res = Resource::Werner(i as f64 / 60.0);
        for _ in 0..10 {
            let q = random_pure_qubit(rng);
            let input = pure_qubit_density(&q);
            if input.get(0, 1).re.abs() < 1e-3 {
                continue;
            }
            let out = teleport_direct(
                &input,
                &res.state()?,
                &element(&res, Case::I, Outcome::Zero)?,
            )?;
            devs.push(if out.coherence_out > 1e-12 { 0.0 } else { 1.0 });
        }
    }
    Ok(Check::within("werner_separable_coherence", devs, 0.0))
}

fn case_i_outputs(rng: &mut ChaCha8Rng) -> Result<Vec<(cohtele::TeleportOutcome, f64)>> {
    let tau = Resource::MaxEnt.state()?;
    let mut out = Vec::new();
    while out.len() < 20 {
        let q = random_pure_qubit(rng);
        let (a, b) = q.amplitudes();
        let c = (a * b.conj()).re;
        if c.abs() < 1e-6 {
            continue;
        }
        let e = element(
            &Resource::MaxEnt,
            Case::I,
            Outcome::from_index(out.len() % 2)?,
        )?;
        out.push((teleport_direct(&pure_qubit_density(&q), &tau, &e)?, c));
    }
    Ok(out)
}

fn unitary_ceiling_upper(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for (out, c) in case_i_outputs(rng)? {
        let (best, _) = scan_max(&out, HAAR_SAMPLES, rng);
        devs.push((best / (2.0 * c.abs()) - 1.0).max(0.0));
    }
    Ok(Check::within("unitary_ceiling_upper", devs, 1e-9))
}

fn unitary_ceiling_reached(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for (out, c) in case_i_outputs(rng)? {
        let (best, _) = scan_max(&out, HAAR_SAMPLES, rng);
        devs.push((1.0 - best / (2.0 * c.abs())).max(0.0));
    }
    Ok(Check::within("unitary_ceiling_reached", devs, 1e-4))
}

fn unitary_orbit_formula(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut devs = Vec::new();
    for (out, c) in case_i_outputs(rng)? {
        for _ in 0..500 {
            let u = BobUnitary::haar(rng);
            devs.push((bob_unitary_coherence(&out, &u) - u.orbit_coherence(c)).abs());
        }
    }
    Ok(Check::within("unitary_orbit_formula", devs, 1e-10))
}
