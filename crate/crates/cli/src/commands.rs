use polarization_core::operators::{
    eigenvector_states, expectation_closed, expectation_with_tolerance, observable_matrix,
    polarization_operator, Observable2,
};
use polarization_core::simulate::{self, DEFAULT_STAGE_CAP};
use polarization_core::verify::{self, VerifyConfig};
use polarization_core::{
    amplitude, probability, probability_closed, state_vector, BranchLabel, Direction,
    StateVector2, DEFAULT_TOLERANCE,
};

use crate::output::{human_complex, human_float, Mode, Record};
use crate::scenario::{parse_branch, ScenarioFile};
use crate::{Cli, Command, GlobalOpts, STAGE_CAP_ENV, TOLERANCE_ENV};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Invariant(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Invariant(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Amp {
            theta_a,
            alpha_a,
            branch_a,
            theta_b,
            alpha_b,
            branch_b,
        } => {
            let from = label(g, *theta_a, *alpha_a, branch_a)?;
            let to = label(g, *theta_b, *alpha_b, branch_b)?;
            cmd_amp(g.mode(), from, to);
            Ok(())
        }
        Command::Prob {
            theta_a,
            alpha_a,
            branch_a,
            theta_b,
            alpha_b,
            branch_b,
        } => {
            let from = label(g, *theta_a, *alpha_a, branch_a)?;
            let to = label(g, *theta_b, *alpha_b, branch_b)?;
            cmd_prob(g.mode(), from, to, tolerance(g, None)?)
        }
        Command::Operator {
            theta_b,
            alpha_b,
            theta_c,
            alpha_c,
            r_plus,
            r_minus,
        } => {
            let measure = direction(g, *theta_b, *alpha_b)?;
            let basis = direction(g, *theta_c, *alpha_c)?;
            if !r_plus.is_finite() || !r_minus.is_finite() {
                return Err(Failure::Usage("eigenvalues must be finite".into()));
            }
            let obs = observable_matrix(measure, basis, *r_plus, *r_minus);
            cmd_operator(g.mode(), &obs, tolerance(g, None)?)
        }
        Command::Eigvec {
            theta_b,
            alpha_b,
            theta_c,
            alpha_c,
        } => {
            let measure = direction(g, *theta_b, *alpha_b)?;
            let basis = direction(g, *theta_c, *alpha_c)?;
            cmd_eigvec(g.mode(), measure, basis, tolerance(g, None)?)
        }
        Command::Expect {
            theta_a,
            alpha_a,
            branch,
            theta_b,
            alpha_b,
            basis,
        } => {
            let initial = label(g, *theta_a, *alpha_a, branch)?;
            let measure = direction(g, *theta_b, *alpha_b)?;
            let basis = match basis.as_deref() {
                Some([t, a]) => direction(g, *t, *a)?,
                Some(_) => return Err(Failure::Usage("--basis takes THETA ALPHA".into())),
                None => Direction::X,
            };
            cmd_expect(g.mode(), initial, measure, basis, tolerance(g, None)?)
        }
        Command::Simulate {
            file,
            seed,
            trials,
            exact,
        } => {
            let parsed = ScenarioFile::load(file).map_err(Failure::Input)?;
            let scenario = parsed.scenario().map_err(Failure::Input)?;
            let tol = tolerance(g, parsed.tolerance)?;
            let cap = stage_cap(g)?;
            let seed = seed.or(parsed.seed).unwrap_or(0);
            let trials = trials.or(parsed.trials).unwrap_or(100_000);
            cmd_simulate(g.mode(), &scenario, seed, trials, *exact, tol, cap)
        }
        Command::Verify { draws, seed } => {
            let config = VerifyConfig {
                draws: *draws,
                tolerance: tolerance(g, None)?,
                seed: *seed,
            };
            cmd_verify(g.mode(), config)
        }
    }
}

fn direction(g: &GlobalOpts, theta: f64, alpha: f64) -> Result<Direction, Failure> {
    let d = Direction::new(g.to_radians(theta), g.to_radians(alpha));
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Failure::Usage("angles must be finite".into()))
    }
}

fn label(g: &GlobalOpts, theta: f64, alpha: f64, branch: &str) -> Result<BranchLabel, Failure> {
    let b = parse_branch(branch).map_err(Failure::Usage)?;
    Ok(direction(g, theta, alpha)?.with(b))
}

fn env_value<T: std::str::FromStr>(name: &str) -> Result<Option<T>, Failure> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{name}={v} is not a valid value"))),
        Err(_) => Ok(None),
    }
}

/// Flag, then scenario file, then environment, then default.
fn tolerance(g: &GlobalOpts, from_file: Option<f64>) -> Result<f64, Failure> {
    let t = match g.tolerance.or(from_file) {
        Some(t) => t,
        None => env_value(TOLERANCE_ENV)?.unwrap_or(DEFAULT_TOLERANCE),
    };
    if t.is_finite() && t >= 0.0 {
        Ok(t)
    } else {
        Err(Failure::Usage(format!("invalid tolerance {t}")))
    }
}

fn stage_cap(g: &GlobalOpts) -> Result<usize, Failure> {
    match g.stage_cap {
        Some(c) => Ok(c),
        None => Ok(env_value(STAGE_CAP_ENV)?.unwrap_or(DEFAULT_STAGE_CAP)),
    }
}

fn cmd_amp(mode: Mode, from: BranchLabel, to: BranchLabel) {
    let z = amplitude(from, to);
    match mode {
        Mode::Machine => Record::new("amplitude")
            .float("re", z.re)
            .float("im", z.im)
            .complex("value", z)
            .float("modulus_sq", z.norm_sqr())
            .print(),
        Mode::Human => {
            out!("amplitude     {}", human_complex(z));
            out!("|amplitude|²  {}", human_float(z.norm_sqr()));
        }
    }
}

fn cmd_prob(mode: Mode, from: BranchLabel, to: BranchLabel, tol: f64) -> Outcome {
    let p = probability(from, to);
    let closed = probability_closed(from, to);
    match mode {
        Mode::Machine => Record::new("probability")
            .float("value", p)
            .float("closed_form", closed)
            .print(),
        Mode::Human => {
            out!("probability   {}", human_float(p));
            out!("closed form   {}", human_float(closed));
        }
    }
    check("probability closed form", (p - closed).abs(), tol)
}

fn check(what: &str, residual: f64, limit: f64) -> Outcome {
    if residual <= limit {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "{what}: residual {residual:e} exceeds {limit:e}"
        )))
    }
}

fn residual(obs: &Observable2, v: &StateVector2, eigenvalue: f64) -> f64 {
    let mv = obs.apply(v);
    (mv[0] - eigenvalue * v.c_plus)
        .norm()
        .max((mv[1] - eigenvalue * v.c_minus).norm())
}

fn print_matrix(mode: Mode, obs: &Observable2) {
    let elements = [
        ("m11", obs.m11),
        ("m12", obs.m12),
        ("m21", obs.m21),
        ("m22", obs.m22),
    ];
    match mode {
        Mode::Machine => {
            for (name, z) in elements {
                Record::new("matrix").field("element", name).complex("value", z).print();
            }
        }
        Mode::Human => {
            out!("matrix");
            out!("  [ {:>36}   {:>36} ]", human_complex(obs.m11), human_complex(obs.m12));
            out!("  [ {:>36}   {:>36} ]", human_complex(obs.m21), human_complex(obs.m22));
        }
    }
}

fn print_eigenpairs(mode: Mode, obs: &Observable2, pairs: [(f64, StateVector2); 2]) -> f64 {
    let mut worst = 0.0f64;
    if mode == Mode::Human {
        out!("eigenvectors");
    }
    for (lambda, v) in pairs {
        let r = residual(obs, &v, lambda);
        worst = worst.max(r);
        match mode {
            Mode::Machine => {
                Record::new("eigenvector")
                    .float("eigenvalue", lambda)
                    .complex("c_plus", v.c_plus)
                    .complex("c_minus", v.c_minus)
                    .print();
                Record::new("residual")
                    .float("eigenvalue", lambda)
                    .float("max_abs", r)
                    .print();
            }
            Mode::Human => {
                out!(
                    "  λ = {:>15}  ( {}, {} )  residual {:.3e}",
                    human_float(lambda),
                    human_complex(v.c_plus),
                    human_complex(v.c_minus),
                    r
                );
            }
        }
    }
    worst
}

fn cmd_operator(mode: Mode, obs: &Observable2, tol: f64) -> Outcome {
    let (xp, xm) = eigenvector_states(obs.measure_dir, obs.basis_dir);
    print_matrix(mode, obs);
    let worst = print_eigenpairs(mode, obs, [(obs.r_plus, xp), (obs.r_minus, xm)]);
    let scale = 1.0f64.max(obs.r_plus.abs()).max(obs.r_minus.abs());
    check("eigenvalue equation", worst, tol * scale)?;
    obs.check_invariants(tol * scale * scale)
        .map_err(|e| Failure::Invariant(e.to_string()))
}

fn cmd_eigvec(mode: Mode, measure: Direction, basis: Direction, tol: f64) -> Outcome {
    let p = polarization_operator(measure, basis);
    let (xp, xm) = eigenvector_states(measure, basis);
    let worst = print_eigenpairs(mode, &p, [(1.0, xp), (-1.0, xm)]);
    let overlap = xp.inner(&xm).norm();
    match mode {
        Mode::Machine => Record::new("orthogonality").float("abs_inner", overlap).print(),
        Mode::Human => out!("|⟨ξ₊,ξ₋⟩|  {overlap:.3e}"),
    }
    check("eigenvalue equation", worst, tol)?;
    check("orthogonality", overlap, tol)
}

fn cmd_expect(
    mode: Mode,
    initial: BranchLabel,
    measure: Direction,
    basis: Direction,
    tol: f64,
) -> Outcome {
    let state = state_vector(initial, basis);
    let p = polarization_operator(measure, basis);
    let matrix_route = expectation_with_tolerance(&state, &p, tol)
        .map_err(|e| Failure::Invariant(e.to_string()))?;
    let prob_route = expectation_closed(initial, measure);
    match mode {
        Mode::Machine => Record::new("expectation")
            .float("value", matrix_route)
            .float("probability_route", prob_route)
            .print(),
        Mode::Human => {
            out!("⟨p⟩                {}", human_float(matrix_route));
            out!("probability route  {}", human_float(prob_route));
        }
    }
    check("expectation routes", (matrix_route - prob_route).abs(), tol)
}

fn cmd_simulate(
    mode: Mode,
    scenario: &simulate::MeasurementScenario,
    seed: u64,
    trials: u64,
    exact_only: bool,
    tol: f64,
    cap: usize,
) -> Outcome {
    let input = |e: polarization_core::Error| Failure::Input(e.to_string());
    let exact = simulate::exact_distribution_capped(scenario, cap).map_err(input)?;
    let total = exact.total();

    if exact_only {
        match mode {
            Mode::Machine => {
                for (seq, p) in exact.iter() {
                    Record::new("exact")
                        .field("sequence", seq.to_string())
                        .float("probability", p)
                        .print();
                }
                Record::new("summary")
                    .field("stages", exact.stages().to_string())
                    .float("total", total)
                    .print();
            }
            Mode::Human => {
                out!("{:<w$}  probability", "sequence", w = exact.stages().max(8));
                for (seq, p) in exact.iter() {
                    out!("{:<w$}  {}", seq.to_string(), human_float(p), w = exact.stages().max(8));
                }
                out!("total  {}", human_float(total));
            }
        }
        return check("distribution total", (total - 1.0).abs(), tol);
    }

    let report = simulate::sample_capped(scenario, seed, trials, cap).map_err(|e| match e {
        polarization_core::Error::ZeroTrials => Failure::Usage(e.to_string()),
        other => input(other),
    })?;
    match mode {
        Mode::Machine => {
            for ((seq, count, dev), p) in report.iter().zip(exact.probabilities()) {
                Record::new("sample")
                    .field("sequence", seq.to_string())
                    .field("count", count.to_string())
                    .float("frequency", count as f64 / trials as f64)
                    .float("expected", *p)
                    .float("deviation_sigma", dev)
                    .print();
            }
            Record::new("summary")
                .field("seed", seed.to_string())
                .field("trials", trials.to_string())
                .float("max_abs_deviation_sigma", report.max_abs_deviation_sigma)
                .float("total", total)
                .print();
        }
        Mode::Human => {
            let w = report.stages.max(8);
            out!(
                "{:<w$}  {:>12}  {:>15}  {:>15}  {:>9}",
                "sequence", "count", "frequency", "expected", "dev (σ)"
            );
            for ((seq, count, dev), p) in report.iter().zip(exact.probabilities()) {
                out!(
                    "{:<w$}  {:>12}  {:>15}  {:>15}  {:>9.3}",
                    seq.to_string(),
                    count,
                    human_float(count as f64 / trials as f64),
                    human_float(*p),
                    dev
                );
            }
            out!(
                "seed {seed}, {trials} trials, max |deviation| {:.3} σ",
                report.max_abs_deviation_sigma
            );
        }
    }
    check("distribution total", (total - 1.0).abs(), tol)
}

fn cmd_verify(mode: Mode, config: VerifyConfig) -> Outcome {
    let report = verify::run(config);
    match mode {
        Mode::Machine => {
            for s in &report.suites {
                Record::new("suite")
                    .field("name", s.name)
                    .field("checks", s.checks.to_string())
                    .float("max_residual", s.max_residual)
                    .float("threshold", s.threshold)
                    .field("status", if s.passed() { "pass" } else { "fail" })
                    .print();
            }
            for t in &report.transcriptions {
                Record::new("transcription")
                    .field("equation", t.equation)
                    .field("element", t.element)
                    .float("max_abs_diff", t.max_abs_diff)
                    .print();
            }
            for e in &report.errata {
                Record::new("errata")
                    .field("equation", &e.equation)
                    .field("element", &e.element)
                    .complex("paper_value", e.paper_value)
                    .complex("derived_value", e.derived_value)
                    .float("max_abs_diff", e.max_abs_diff)
                    .print();
            }
            Record::new("summary")
                .field("status", if report.all_pass() { "pass" } else { "fail" })
                .field("draws", config.draws.to_string())
                .field("seed", config.seed.to_string())
                .float("tolerance", config.tolerance)
                .field("checks", report.total_checks().to_string())
                .field("errata", report.errata.len().to_string())
                .print();
        }
        Mode::Human => {
            out!(
                "{} draws, seed {}, tolerance {:e}",
                config.draws, config.seed, config.tolerance
            );
            out!("{:<26} {:>10} {:>12} {:>10}  status", "suite", "checks", "max resid", "limit");
            for s in &report.suites {
                out!(
                    "{:<26} {:>10} {:>12.3e} {:>10.1e}  {}",
                    s.name,
                    s.checks,
                    s.max_residual,
                    s.threshold,
                    if s.passed() { "pass" } else { "FAIL" }
                );
            }
            out!();
            out!("published closed forms vs derived values");
            for t in &report.transcriptions {
                let flag = if t.max_abs_diff > config.tolerance { "  <- errata" } else { "" };
                out!("  {:<5} {:<16} max |diff| {:.3e}{flag}", t.equation, t.element, t.max_abs_diff);
            }
            if !report.errata.is_empty() {
                out!();
                out!("errata");
                for e in &report.errata {
                    out!(
                        "  {} {}: published {}  derived {}  (max |diff| {:.3e})",
                        e.equation,
                        e.element,
                        human_complex(e.paper_value),
                        human_complex(e.derived_value),
                        e.max_abs_diff
                    );
                }
            }
            out!();
            if report.all_pass() {
                out!(
                    "all invariants pass ({} checks, {} errata)",
                    report.total_checks(),
                    report.errata.len()
                );
            } else {
                out!("INVARIANT FAILURE");
            }
        }
    }
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name)
            .collect();
        Err(Failure::Invariant(format!("failed suites: {}", failed.join(", "))))
    }
}
