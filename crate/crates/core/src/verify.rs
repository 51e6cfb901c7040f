//! Randomized verification of every identity in the crate against
//! independent oracles, plus a comparison of each published closed form
//! with its derived value.
//!
//! Invariant suites decide pass/fail. Published closed forms that disagree
//! with the derived value beyond tolerance are reported as [`ErrataRecord`]s
//! and never fail a run.
//!
//! Each suite and each transcription check draws from its own
//! `ChaCha8Rng::seed_from_u64(seed)` stream, so reports are reproducible and
//! independent of evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::amplitude::{
    amplitude, chain, probability, probability_closed, state_vector, Branch, BranchLabel,
    Direction,
};
use crate::limits;
use crate::operators::{
    self, eigenvector_states, expectation_closed, expectation_with_tolerance, matmul,
    max_abs_diff, observable_matrix, observable_matrix_closed, polarization_operator, Matrix2,
    IDENTITY,
};
use crate::published;
use crate::state::StateVector2;
use crate::DEFAULT_TOLERANCE;

/// Agreement required between the generic eigensolver and the constructed
/// observables.
pub const EIGENSOLVER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub draws: u64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            draws: 100_000,
            tolerance: DEFAULT_TOLERANCE,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub max_residual: f64,
    pub threshold: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        !self.max_residual.is_nan() && self.max_residual <= self.threshold
    }
}

/// Largest disagreement between one published element and its derived value
/// over all draws, with the values at the worst draw.
#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptionCheck {
    pub equation: &'static str,
    pub element: &'static str,
    pub max_abs_diff: f64,
    pub paper_value: Complex64,
    pub derived_value: Complex64,
}

/// A published element whose value differs from the derived one by more than
/// the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrataRecord {
    pub equation: String,
    pub element: String,
    pub paper_value: Complex64,
    pub derived_value: Complex64,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteResult>,
    pub transcriptions: Vec<TranscriptionCheck>,
    pub errata: Vec<ErrataRecord>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn total_checks(&self) -> u64 {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn transcription(&self, equation: &str, element: &str) -> Option<&TranscriptionCheck> {
        self.transcriptions
            .iter()
            .find(|t| t.equation == equation && t.element == element)
    }
}

/// Independent reference computations. None of these route through
/// [`amplitude`].
pub mod oracle {
    use super::*;

    /// `x`/`y` components of a branch state: `(cos θ, sin θ e^{iα})` for
    /// `Plus`, `(−sin θ, cos θ e^{iα})` for `Minus`.
    pub fn reference_state(label: BranchLabel) -> [Complex64; 2] {
        let (s, c) = label.direction.theta.sin_cos();
        let e = Complex64::cis(label.direction.alpha);
        match label.branch {
            Branch::Plus => [Complex64::new(c, 0.0), s * e],
            Branch::Minus => [Complex64::new(-s, 0.0), c * e],
        }
    }

    /// `⟨to|from⟩` from the `x`/`y` components.
    pub fn inner_product_amplitude(from: BranchLabel, to: BranchLabel) -> Complex64 {
        let a = reference_state(from);
        let b = reference_state(to);
        b[0].conj() * a[0] + b[1].conj() * a[1]
    }

    /// `r_plus v₊v₊† + r_minus v₋v₋†`.
    pub fn spectral_sum(
        r_plus: f64,
        v_plus: &StateVector2,
        r_minus: f64,
        v_minus: &StateVector2,
    ) -> Matrix2 {
        let p = v_plus.components();
        let m = v_minus.components();
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = r_plus * p[i] * p[j].conj() + r_minus * m[i] * m[j].conj();
            }
        }
        out
    }

    /// Eigenpairs of a Hermitian 2×2 matrix, ascending eigenvalue, unit
    /// eigenvectors with arbitrary phase.
    pub fn hermitian_eigen(m: &Matrix2) -> [(f64, [Complex64; 2]); 2] {
        let a = m[0][0].re;
        let d = m[1][1].re;
        let b = m[0][1];
        let mean = 0.5 * (a + d);
        let radius = (0.5 * (a - d)).hypot(b.norm());
        let vector = |lambda: f64, fallback: usize| -> [Complex64; 2] {
            let v1 = [b, Complex64::new(lambda - a, 0.0)];
            let v2 = [Complex64::new(lambda - d, 0.0), b.conj()];
            let n1 = v1[0].norm().hypot(v1[1].norm());
            let n2 = v2[0].norm().hypot(v2[1].norm());
            let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
            if n < 1e-300 {
                let mut e = [Complex64::new(0.0, 0.0); 2];
                e[fallback] = Complex64::new(1.0, 0.0);
                e
            } else {
                [v[0] / n, v[1] / n]
            }
        };
        let low = mean - radius;
        let high = mean + radius;
        [(low, vector(low, 1)), (high, vector(high, 0))]
    }

    /// `max_k |target_k − e^{iφ} v_k|` with `φ` chosen to align `v` with
    /// `target`.
    pub fn phase_aligned_diff(v: &[Complex64; 2], target: &[Complex64; 2]) -> f64 {
        let overlap = v[0].conj() * target[0] + v[1].conj() * target[1];
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        (target[0] - phase * v[0])
            .norm()
            .max((target[1] - phase * v[1]).norm())
    }
}

struct Draws {
    rng: ChaCha8Rng,
}

impl Draws {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    fn angle(&mut self) -> f64 {
        self.rng.random_range(-PI..PI)
    }

    fn direction(&mut self) -> Direction {
        Direction::new(self.angle(), self.angle())
    }

    fn eigenvalue(&mut self) -> f64 {
        self.rng.random_range(-5.0..5.0)
    }
}

const PAIRS: [(Branch, Branch); 4] = [
    (Branch::Plus, Branch::Plus),
    (Branch::Plus, Branch::Minus),
    (Branch::Minus, Branch::Plus),
    (Branch::Minus, Branch::Minus),
];

struct Tracker {
    name: &'static str,
    threshold: f64,
    checks: u64,
    max_residual: f64,
}

impl Tracker {
    fn new(name: &'static str, threshold: f64) -> Self {
        Self {
            name,
            threshold,
            checks: 0,
            max_residual: 0.0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.checks += 1;
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = if residual.is_nan() { f64::NAN } else { residual };
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checks: self.checks,
            max_residual: self.max_residual,
            threshold: self.threshold,
        }
    }
}

fn vec_diff(a: &[Complex64; 2], b: &[Complex64; 2]) -> f64 {
    (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
}

fn eigen_residual(p: &Matrix2, v: &StateVector2, sign: f64) -> f64 {
    let pv = operators::apply(p, v);
    (pv[0] - sign * v.c_plus)
        .norm()
        .max((pv[1] - sign * v.c_minus).norm())
}

type Suite = fn(&mut Draws, u64, f64) -> SuiteResult;

const SUITES: [Suite; 10] = [
    suite_amplitude_oracle,
    suite_hermiticity,
    suite_orthonormality,
    suite_chaining,
    suite_probability_closed,
    suite_observable_spectral,
    suite_observable_eigensolver,
    suite_eigen_equation,
    suite_expectation,
    suite_standard_limits,
];

fn suite_amplitude_oracle(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("amplitude_oracle", tol);
    for _ in 0..n {
        let (a, b) = (d.direction(), d.direction());
        for (sa, sb) in PAIRS {
            let (x, y) = (a.with(sa), b.with(sb));
            t.record((amplitude(x, y) - oracle::inner_product_amplitude(x, y)).norm());
        }
    }
    t.finish()
}

fn suite_hermiticity(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("hermiticity", tol);
    for _ in 0..n {
        let (a, b) = (d.direction(), d.direction());
        for (sa, sb) in PAIRS {
            let (x, y) = (a.with(sa), b.with(sb));
            t.record((amplitude(x, y) - amplitude(y, x).conj()).norm());
        }
    }
    t.finish()
}

fn suite_orthonormality(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("orthonormality", tol);
    for _ in 0..n {
        let (a, r) = (d.direction(), d.direction());
        let mut cross = Complex64::new(0.0, 0.0);
        let mut norms = [0.0f64; 2];
        for s in Branch::BOTH {
            let plus = amplitude(a.plus(), r.with(s));
            let minus = amplitude(a.minus(), r.with(s));
            cross += plus * minus.conj();
            norms[0] += plus.norm_sqr();
            norms[1] += minus.norm_sqr();
        }
        t.record(cross.norm());
        t.record((norms[0] - 1.0).abs());
        t.record((norms[1] - 1.0).abs());
    }
    t.finish()
}

fn suite_chaining(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("chaining", tol);
    for _ in 0..n {
        let (a, b, via) = (d.direction(), d.direction(), d.direction());
        for (sa, sb) in PAIRS {
            let (x, y) = (a.with(sa), b.with(sb));
            t.record((chain(x, y, via) - amplitude(x, y)).norm());
        }
    }
    t.finish()
}

fn suite_probability_closed(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("probability_closed_forms", tol);
    for _ in 0..n {
        let (a, b) = (d.direction(), d.direction());
        for (sa, sb) in PAIRS {
            let (x, y) = (a.with(sa), b.with(sb));
            t.record((probability(x, y) - probability_closed(x, y)).abs());
        }
        t.record((probability_closed(a.plus(), b.plus()) - probability_closed(a.minus(), b.minus())).abs());
        t.record((probability_closed(a.plus(), b.minus()) - probability_closed(a.minus(), b.plus())).abs());
    }
    t.finish()
}

fn suite_observable_spectral(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("observable_spectral", tol);
    for _ in 0..n {
        let (m, b) = (d.direction(), d.direction());
        let (rp, rm) = (d.eigenvalue(), d.eigenvalue());
        let obs = observable_matrix(m, b, rp, rm);
        let (vp, vm) = eigenvector_states(m, b);
        t.record(max_abs_diff(&obs.matrix(), &oracle::spectral_sum(rp, &vp, rm, &vm)));
        t.record(obs.hermiticity_residual());
        t.record((obs.trace() - (rp + rm)).norm());
        t.record((obs.determinant() - rp * rm).norm());
    }
    t.finish()
}

fn suite_observable_eigensolver(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("observable_eigensolver", tol.max(EIGENSOLVER_TOLERANCE));
    for _ in 0..n {
        let (m, b) = (d.direction(), d.direction());
        let (rp, rm) = (d.eigenvalue(), d.eigenvalue());
        let obs = observable_matrix(m, b, rp, rm);
        let (vp, vm) = eigenvector_states(m, b);
        let mut expected = [(rp, vp.components()), (rm, vm.components())];
        expected.sort_by(|x, y| x.0.total_cmp(&y.0));
        let solved = oracle::hermitian_eigen(&obs.matrix());
        let separated = (rp - rm).abs() > 1e-2;
        for ((lambda, v), (r, xi)) in solved.iter().zip(&expected) {
            t.record((lambda - r).abs());
            if separated {
                t.record(oracle::phase_aligned_diff(v, xi));
            }
        }
    }
    t.finish()
}

fn suite_eigen_equation(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("eigenvalue_equation", tol);
    for _ in 0..n {
        let (m, b) = (d.direction(), d.direction());
        let p = polarization_operator(m, b);
        let pm = p.matrix();
        let (xp, xm) = eigenvector_states(m, b);
        t.record(eigen_residual(&pm, &xp, 1.0));
        t.record(eigen_residual(&pm, &xm, -1.0));
        t.record(max_abs_diff(&matmul(&pm, &pm), &IDENTITY));
        t.record(p.trace().norm());
        t.record(xp.inner(&xm).norm());
        t.record((xp.norm_sqr() - 1.0).abs());
        t.record((xm.norm_sqr() - 1.0).abs());
    }
    t.finish()
}

fn suite_expectation(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("expectation_routes", tol);
    for _ in 0..n {
        let (a, m, b) = (d.direction(), d.direction(), d.direction());
        let p = polarization_operator(m, b);
        for s in Branch::BOTH {
            let l = a.with(s);
            let closed = expectation_closed(l, m);
            match expectation_with_tolerance(&state_vector(l, b), &p, tol) {
                Ok(v) => t.record((v - closed).abs()),
                Err(_) => t.record(f64::INFINITY),
            }
            // basis independence against the x basis
            let x = Direction::X;
            match expectation_with_tolerance(&state_vector(l, x), &polarization_operator(m, x), tol) {
                Ok(v) => t.record((v - closed).abs()),
                Err(_) => t.record(f64::INFINITY),
            }
        }
    }
    t.finish()
}

fn suite_standard_limits(d: &mut Draws, n: u64, tol: f64) -> SuiteResult {
    let mut t = Tracker::new("standard_limits", tol);
    let x = Direction::X;
    for _ in 0..n {
        let a = d.direction();
        let amps = limits::standard_amplitudes(a);
        let plus = oracle::reference_state(a.plus());
        let minus = oracle::reference_state(a.minus());
        let expected = [plus[0], plus[1], minus[0], minus[1]];
        for (z, e) in amps.iter().zip(expected) {
            t.record((z - e).norm());
        }
        let (sp, sm) = limits::standard_states(a);
        t.record(vec_diff(&sp.components(), &plus));
        t.record(vec_diff(&sm.components(), &minus));
        for (z, s) in amps.iter().zip([
            (a.plus(), x.plus()),
            (a.plus(), x.minus()),
            (a.minus(), x.plus()),
            (a.minus(), x.minus()),
        ]) {
            t.record((z - amplitude(s.0, s.1)).norm());
        }

        let op = limits::standard_operator(a);
        let om = op.matrix();
        t.record(op.trace().norm());
        t.record(max_abs_diff(&matmul(&om, &om), &IDENTITY));
        let (xp, xm) = limits::standard_eigenvectors(a);
        t.record(eigen_residual(&om, &xp, 1.0));
        t.record(eigen_residual(&om, &xm, -1.0));
        t.record(vec_diff(&xp.components(), &plus));
        t.record(vec_diff(&xm.components(), &minus));
    }
    t.finish()
}

struct Comparison {
    equation: &'static str,
    element: &'static str,
    max_abs_diff: f64,
    paper_value: Complex64,
    derived_value: Complex64,
}

impl Comparison {
    fn new(equation: &'static str, element: &'static str) -> Self {
        Self {
            equation,
            element,
            max_abs_diff: 0.0,
            paper_value: Complex64::new(0.0, 0.0),
            derived_value: Complex64::new(0.0, 0.0),
        }
    }

    fn record(&mut self, literal: Complex64, derived: Complex64) {
        let diff = (literal - derived).norm();
        if diff > self.max_abs_diff || diff.is_nan() {
            self.max_abs_diff = diff;
            self.paper_value = literal;
            self.derived_value = derived;
        }
    }

    fn finish(self) -> TranscriptionCheck {
        TranscriptionCheck {
            equation: self.equation,
            element: self.element,
            max_abs_diff: self.max_abs_diff,
            paper_value: self.paper_value,
            derived_value: self.derived_value,
        }
    }
}

const MATRIX_ELEMENTS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn compare_matrices(
    out: &mut Vec<TranscriptionCheck>,
    labels: [(&'static str, &'static str); 4],
    n: u64,
    d: &mut Draws,
    mut pair: impl FnMut(&mut Draws) -> (Matrix2, Matrix2),
) {
    let mut cmps: Vec<Comparison> = labels.iter().map(|&(e, el)| Comparison::new(e, el)).collect();
    for _ in 0..n {
        let (literal, derived) = pair(d);
        for (c, (i, j)) in cmps.iter_mut().zip(MATRIX_ELEMENTS) {
            c.record(literal[i][j], derived[i][j]);
        }
    }
    out.extend(cmps.into_iter().map(Comparison::finish));
}

fn compare_vectors(
    out: &mut Vec<TranscriptionCheck>,
    labels: [(&'static str, &'static str); 4],
    n: u64,
    d: &mut Draws,
    mut pair: impl FnMut(&mut Draws) -> ([StateVector2; 2], [StateVector2; 2]),
) {
    let mut cmps: Vec<Comparison> = labels.iter().map(|&(e, el)| Comparison::new(e, el)).collect();
    for _ in 0..n {
        let (literal, derived) = pair(d);
        let p = [literal[0].c_plus, literal[0].c_minus, literal[1].c_plus, literal[1].c_minus];
        let q = [derived[0].c_plus, derived[0].c_minus, derived[1].c_plus, derived[1].c_minus];
        for (k, c) in cmps.iter_mut().enumerate() {
            c.record(p[k], q[k]);
        }
    }
    out.extend(cmps.into_iter().map(Comparison::finish));
}

fn transcription_checks(seed: u64, n: u64) -> Vec<TranscriptionCheck> {
    let mut out = Vec::new();
    let stream = |k: u64| Draws::new(seed, 1000 + k);

    compare_vectors(
        &mut out,
        [("Eq51", "chi_plus[0]"), ("Eq51", "chi_plus[1]"), ("Eq52", "chi_minus[0]"), ("Eq52", "chi_minus[1]")],
        n,
        &mut stream(0),
        |d| {
            let (a, c) = (d.direction(), d.direction());
            (
                [published::generalized_state(a, Branch::Plus, c), published::generalized_state(a, Branch::Minus, c)],
                [state_vector(a.plus(), c), state_vector(a.minus(), c)],
            )
        },
    );

    compare_matrices(
        &mut out,
        [("Eq53", "R11"), ("Eq54", "R12"), ("Eq55", "R21"), ("Eq56", "R22")],
        n,
        &mut stream(1),
        |d| {
            let (m, b) = (d.direction(), d.direction());
            let (rp, rm) = (d.eigenvalue(), d.eigenvalue());
            (
                observable_matrix_closed(m, b, rp, rm).matrix(),
                observable_matrix(m, b, rp, rm).matrix(),
            )
        },
    );

    compare_matrices(
        &mut out,
        [("Eq57", "p11"), ("Eq58", "p12"), ("Eq59", "p21"), ("Eq60", "p22")],
        n,
        &mut stream(2),
        |d| {
            let (m, b) = (d.direction(), d.direction());
            (
                published::polarization_operator(m, b),
                polarization_operator(m, b).matrix(),
            )
        },
    );

    compare_vectors(
        &mut out,
        [("Eq61", "xi_plus[0]"), ("Eq61", "xi_plus[1]"), ("Eq62", "xi_minus[0]"), ("Eq62", "xi_minus[1]")],
        n,
        &mut stream(3),
        |d| {
            let (m, b) = (d.direction(), d.direction());
            let (pp, pm) = published::eigenvectors(m, b);
            let (dp, dm) = eigenvector_states(m, b);
            ([pp, pm], [dp, dm])
        },
    );

    {
        let mut plus = Comparison::new("Eq64", "<p>_plus");
        let mut minus = Comparison::new("Eq65", "<p>_minus");
        let mut d = stream(4);
        for _ in 0..n {
            let (a, m) = (d.direction(), d.direction());
            plus.record(
                published::expectation(a, Branch::Plus, m).into(),
                expectation_closed(a.plus(), m).into(),
            );
            minus.record(
                published::expectation(a, Branch::Minus, m).into(),
                expectation_closed(a.minus(), m).into(),
            );
        }
        out.push(plus.finish());
        out.push(minus.finish());
    }

    {
        let mut cmps = [
            Comparison::new("Eq66", "chi_a_plus"),
            Comparison::new("Eq67", "chi_a_minus"),
            Comparison::new("Eq68", "chi_a_perp_plus"),
            Comparison::new("Eq69", "chi_a_perp_minus"),
        ];
        let mut d = stream(5);
        for _ in 0..n {
            let a = d.direction();
            let literal = published::standard_amplitudes(a);
            let derived = limits::standard_amplitudes(a);
            for (k, c) in cmps.iter_mut().enumerate() {
                c.record(literal[k], derived[k]);
            }
        }
        out.extend(cmps.into_iter().map(Comparison::finish));
    }

    compare_vectors(
        &mut out,
        [("Eq70", "chi_plus[0]"), ("Eq70", "chi_plus[1]"), ("Eq71", "chi_minus[0]"), ("Eq71", "chi_minus[1]")],
        n,
        &mut stream(6),
        |d| {
            let a = d.direction();
            let (pp, pm) = published::standard_states(a);
            let (dp, dm) = limits::standard_states(a);
            ([pp, pm], [dp, dm])
        },
    );

    compare_matrices(
        &mut out,
        [("Eq72", "p11"), ("Eq72", "p12"), ("Eq72", "p21"), ("Eq72", "p22")],
        n,
        &mut stream(7),
        |d| {
            let m = d.direction();
            let alpha_a = d.angle();
            (
                published::standard_operator(m, alpha_a),
                limits::standard_operator(m).matrix(),
            )
        },
    );

    compare_vectors(
        &mut out,
        [("Eq73", "xi_plus[0]"), ("Eq73", "xi_plus[1]"), ("Eq74", "xi_minus[0]"), ("Eq74", "xi_minus[1]")],
        n,
        &mut stream(8),
        |d| {
            let m = d.direction();
            let (pp, pm) = published::standard_eigenvectors(m, 0.0);
            let (dp, dm) = limits::standard_eigenvectors(m);
            ([pp, pm], [dp, dm])
        },
    );

    out
}

pub fn run(config: VerifyConfig) -> VerifyReport {
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(k, suite)| suite(&mut Draws::new(config.seed, k as u64), config.draws, config.tolerance))
        .collect();
    let transcriptions = transcription_checks(config.seed, config.draws);
    let errata = transcriptions
        .iter()
        .filter(|t| t.max_abs_diff > config.tolerance || t.max_abs_diff.is_nan())
        .map(|t| ErrataRecord {
            equation: t.equation.to_string(),
            element: t.element.to_string(),
            paper_value: t.paper_value,
            derived_value: t.derived_value,
            max_abs_diff: t.max_abs_diff,
        })
        .collect();
    VerifyReport {
        config,
        suites,
        transcriptions,
        errata,
    }
}
