//! Planning (pure config resolution) and execution of each subcommand.
//!
//! Planning fails only with config errors and never touches the file
//! system, so a bad document produces no output at all.

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult, ExitClass};
use crate::output::{self, NcReport, SolveReport, SpaceReport, SummaryEntry, TNormReport, TrendDoc, UniquenessDoc};
use crate::registry::{self, required, Overrides};
use fuzzyfix_core::sampling::{square_grid, unit_grid, LIMIT_TOLERANCE};
use fuzzyfix_core::sequences::{self, NcOptions};
use fuzzyfix_core::solver::{self, Outcome};
use fuzzyfix_core::space::{self, Axiom, CONTINUITY_STEPS};
use fuzzyfix_core::tnorm::{self, TNorm};
use fuzzyfix_core::{FuzzySpace, Problem, SolveOptions, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifySpace,
    VerifyTnorm,
    Solve,
    NcDemo,
}

impl Command {
    pub const ALL: [Command; 4] = [Command::VerifySpace, Command::VerifyTnorm, Command::Solve, Command::NcDemo];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifySpace => "verify-space",
            Command::VerifyTnorm => "verify-tnorm",
            Command::Solve => "solve",
            Command::NcDemo => "nc-demo",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

pub enum Plan {
    VerifySpace {
        space: FuzzySpace<f64>,
        norm: TNorm,
        points: Vec<f64>,
        t_grid: Vec<f64>,
        axioms: Vec<Axiom>,
    },
    VerifyTnorm {
        norm: TNorm,
        compare_to: Option<TNorm>,
        grid_points: usize,
    },
    Solve {
        problem: Box<Problem<f64>>,
        x0: f64,
        opts: SolveOptions<f64>,
        uniqueness: Option<(f64, f64, f64)>,
    },
    NcDemo {
        space: FuzzySpace<f64>,
        seq: Vec<f64>,
        opts: NcOptions,
        windows: Vec<usize>,
    },
}

/// A resolved experiment ready to run.
pub struct Job {
    pub name: String,
    pub command: Command,
    pub plan: Plan,
}

fn default_axioms() -> Vec<Axiom> {
    let mut axioms = Axiom::KM.to_vec();
    axioms.push(Axiom::MonotoneInT);
    axioms
}

pub fn plan(cfg: &ExperimentConfig, command: Command, overrides: &Overrides) -> CliResult<Job> {
    let plan = match command {
        Command::VerifySpace => {
            let points = registry::points(cfg, overrides.seed)?;
            if points.len() < 3 {
                return Err(CliError::config("points", "at least 3 points are required"));
            }
            let t_grid = registry::t_grid(cfg)?;
            if t_grid.len() < 2 {
                return Err(CliError::config("options.t_grid", "at least 2 times are required"));
            }
            Plan::VerifySpace {
                space: registry::space(required("space", &cfg.space)?)?,
                norm: registry::tnorm("tnorm", required("tnorm", &cfg.tnorm)?)?,
                points,
                t_grid,
                axioms: match &cfg.axioms {
                    Some(names) => registry::axioms(names)?,
                    None => default_axioms(),
                },
            }
        }
        Command::VerifyTnorm => {
            let grid_points = match &cfg.options.grid_points {
                Some(g) => registry::count("options.grid_points", g)?,
                None => 11,
            };
            if grid_points < 2 {
                return Err(CliError::config("options.grid_points", "at least 2"));
            }
            Plan::VerifyTnorm {
                norm: registry::tnorm("tnorm", required("tnorm", &cfg.tnorm)?)?,
                compare_to: cfg.compare_to.as_deref().map(|n| registry::tnorm("compare_to", n)).transpose()?,
                grid_points,
            }
        }
        Command::Solve => {
            let problem = Problem {
                space: registry::space(required("space", &cfg.space)?)?,
                norm: registry::tnorm("tnorm", required("tnorm", &cfg.tnorm)?)?,
                relation: registry::relation(required("relation", &cfg.relation)?)?,
                theta: registry::theta(required("theta", &cfg.theta)?)?,
                map: registry::map(required("map", &cfg.map)?)?,
            };
            let uniqueness = cfg
                .uniqueness
                .as_ref()
                .map(|u| -> CliResult<_> {
                    Ok((
                        registry::number("uniqueness.fp_a", &u.fp_a)?,
                        registry::number("uniqueness.fp_b", &u.fp_b)?,
                        registry::number("uniqueness.bridge", &u.bridge)?,
                    ))
                })
                .transpose()?;
            Plan::Solve {
                problem: Box::new(problem),
                x0: registry::number("x0", required("x0", &cfg.x0)?)?,
                opts: registry::solve_options(cfg, overrides)?,
                uniqueness,
            }
        }
        Command::NcDemo => {
            let seq = registry::sequence(cfg)?;
            let (opts, windows) = registry::nc_options(cfg)?;
            if let Some(w) = windows.iter().find(|&&w| w > seq.len()) {
                return Err(CliError::config("nc.windows", format!("window {w} exceeds the sequence length {}", seq.len())));
            }
            Plan::NcDemo {
                space: registry::space(required("space", &cfg.space)?)?,
                seq,
                opts,
                windows,
            }
        }
    };
    Ok(Job {
        name: cfg.name.clone(),
        command,
        plan,
    })
}

pub struct Artifact {
    pub file: String,
    pub contents: Vec<u8>,
}

pub struct RunOutcome {
    pub name: String,
    pub command: Command,
    pub exit: ExitClass,
    pub outcome: String,
    pub diagnostic: Option<String>,
    pub artifacts: Vec<Artifact>,
}

impl RunOutcome {
    pub fn summary(&self) -> SummaryEntry {
        SummaryEntry {
            experiment: self.name.clone(),
            command: self.command.name().to_string(),
            exit_code: self.exit.code(),
            outcome: self.outcome.clone(),
            diagnostic: self.diagnostic.clone(),
        }
    }
}

struct Produced {
    exit: ExitClass,
    outcome: String,
    diagnostic: Option<String>,
    artifacts: Vec<Artifact>,
}

fn artifact(name: &str, suffix: &str, contents: Vec<u8>) -> Artifact {
    Artifact {
        file: format!("{name}.{suffix}"),
        contents,
    }
}

fn verify_space(name: &str, plan: &Plan) -> CliResult<Produced> {
    let Plan::VerifySpace { space, norm, points, t_grid, axioms } = plan else {
        unreachable!()
    };
    let reports = space::verify_axioms(space, norm, points, t_grid, axioms)?;
    let passed = reports.iter().all(|r| r.passed());
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.axiom.name()).collect();
    let doc = SpaceReport {
        experiment: name.to_string(),
        command: Command::VerifySpace.name(),
        space: space.label().to_string(),
        tnorm: norm.name().to_string(),
        points: points.clone(),
        t_grid: t_grid.clone(),
        axioms: reports.iter().map(|r| output::AxiomDoc::new(r, space)).collect(),
        passed,
    };
    Ok(Produced {
        exit: if passed { ExitClass::Success } else { ExitClass::Failure },
        outcome: if passed { "pass_on_grid".into() } else { "fail".into() },
        diagnostic: (!passed).then(|| format!("failed axioms: {}", failed.join(", "))),
        artifacts: vec![artifact(name, "report.json", output::json(&doc)?)],
    })
}

fn verify_tnorm(name: &str, plan: &Plan) -> CliResult<Produced> {
    let Plan::VerifyTnorm { norm, compare_to, grid_points } = plan else {
        unreachable!()
    };
    let axis = unit_grid(*grid_points);
    let mut checks: Vec<output::TNormCheckDoc> = tnorm::check_axioms(norm, &axis)?
        .iter()
        .map(|(axiom, verdict)| output::tnorm_axiom_doc(*axiom, verdict))
        .collect();
    let continuity = tnorm::check_boundary_continuity(norm, &axis, CONTINUITY_STEPS, LIMIT_TOLERANCE)?;
    checks.push(output::TNormCheckDoc {
        check: "one_boundary_continuity".into(),
        passed: continuity.verdict.passed(),
        witness: continuity.verdict.witness().map(|&s| vec![s]),
    });
    if let Some(other) = compare_to {
        let order = tnorm::check_order(norm, other, &square_grid(*grid_points))?;
        checks.push(output::TNormCheckDoc {
            check: format!("below_{}", other.name()),
            passed: order.passed(),
            witness: order.witness().map(|&(t, s)| vec![t, s]),
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.check.clone()).collect();
    let doc = TNormReport {
        experiment: name.to_string(),
        command: Command::VerifyTnorm.name(),
        tnorm: norm.name().to_string(),
        continuity_class: format!("{:?}", norm.continuity()),
        grid_points: *grid_points,
        checks,
        passed,
    };
    Ok(Produced {
        exit: if passed { ExitClass::Success } else { ExitClass::Failure },
        outcome: if passed { "pass_on_grid".into() } else { "fail".into() },
        diagnostic: (!passed).then(|| format!("failed checks: {}", failed.join(", "))),
        artifacts: vec![artifact(name, "report.json", output::json(&doc)?)],
    })
}

fn solve(name: &str, plan: &Plan) -> CliResult<Produced> {
    let Plan::Solve { problem, x0, opts, uniqueness } = plan else {
        unreachable!()
    };
    let result = solver::solve(problem, *x0, opts)?;
    let probe = match uniqueness {
        Some((a, b, bridge)) => {
            let report = solver::uniqueness_probe(problem, a, b, *bridge, opts)?;
            Some(UniquenessDoc::new(*a, *b, *bridge, &report))
        }
        None => None,
    };
    let (exit, diagnostic) = match &result.outcome {
        Outcome::FixedPoint(_) => (ExitClass::Success, None),
        Outcome::Nonconvergent => (
            ExitClass::Absent,
            Some(format!("nonconvergent after {} iterations", result.iterations())),
        ),
        Outcome::HypothesisViolation { clause, detail, .. } => {
            (ExitClass::Failure, Some(format!("hypothesis violation `{clause}`: {detail}")))
        }
    };
    let doc = SolveReport {
        experiment: name.to_string(),
        command: Command::Solve.name(),
        space: problem.space.label().to_string(),
        tnorm: problem.norm.name().to_string(),
        relation: problem.relation.label().to_string(),
        theta: problem.theta.label().to_string(),
        map: problem.map.label().to_string(),
        x0: *x0,
        variant: match opts.variant {
            Variant::Type1 => "type1".into(),
            Variant::Type2 => "type2".into(),
        },
        termination_mode: opts.termination_mode.name(),
        outcome: (&result.outcome).into(),
        iterations: result.iterations(),
        t_grid: result.t_grid.clone(),
        assumptions: result.assumptions.clone(),
        uniqueness: probe,
    };
    Ok(Produced {
        exit,
        outcome: result.outcome.kind().to_string(),
        diagnostic,
        artifacts: vec![
            artifact(name, "report.json", output::json(&doc)?),
            artifact(name, "trace.csv", output::trace_csv(&result.t_grid, &result.trace)?),
        ],
    })
}

fn nc_demo(name: &str, plan: &Plan) -> CliResult<Produced> {
    let Plan::NcDemo { space, seq, opts, windows } = plan else {
        unreachable!()
    };
    let witness = sequences::extract_nc_witness(space, seq, opts)?;
    let trend = sequences::nc_window_trend(space, seq, windows, opts)?
        .into_iter()
        .map(|(window, w)| TrendDoc {
            window,
            found: w.is_some(),
            limit_gap_outer: w.as_ref().map(|w| w.limit_gap_outer),
            limit_gap_inner: w.as_ref().map(|w| w.limit_gap_inner),
        })
        .collect();
    let verified = witness.as_ref().is_some_and(|w| w.verify(space, seq));
    let doc = NcReport {
        experiment: name.to_string(),
        command: Command::NcDemo.name(),
        space: space.label().to_string(),
        sequence_len: seq.len(),
        found: witness.is_some(),
        eps0: witness.as_ref().map(|w| w.eps0),
        t0: witness.as_ref().map(|w| w.t0),
        pairs: witness.as_ref().map_or(0, |w| w.pairs()),
        verified,
        limit_gap_outer: witness.as_ref().map(|w| w.limit_gap_outer),
        limit_gap_inner: witness.as_ref().map(|w| w.limit_gap_inner),
        trend,
    };
    let mut artifacts = vec![artifact(name, "report.json", output::json(&doc)?)];
    if let Some(w) = &witness {
        artifacts.push(artifact(name, "nc.csv", output::nc_csv(w)?));
    }
    let (exit, outcome, diagnostic) = match (&witness, verified) {
        (Some(_), true) => (ExitClass::Success, "witness", None),
        (Some(_), false) => (ExitClass::Failure, "unverified_witness", Some("witness invariants failed to re-verify".into())),
        (None, _) => (ExitClass::Absent, "absent", Some("no grid pair produced an interleaved witness".into())),
    };
    Ok(Produced {
        exit,
        outcome: outcome.into(),
        diagnostic,
        artifacts,
    })
}

/// Runs a planned job. Core errors become diagnostics without artifacts.
pub fn execute(job: &Job) -> RunOutcome {
    let produced = match job.command {
        Command::VerifySpace => verify_space(&job.name, &job.plan),
        Command::VerifyTnorm => verify_tnorm(&job.name, &job.plan),
        Command::Solve => solve(&job.name, &job.plan),
        Command::NcDemo => nc_demo(&job.name, &job.plan),
    };
    match produced {
        Ok(p) => RunOutcome {
            name: job.name.clone(),
            command: job.command,
            exit: p.exit,
            outcome: p.outcome,
            diagnostic: p.diagnostic,
            artifacts: p.artifacts,
        },
        Err(e) => RunOutcome {
            name: job.name.clone(),
            command: job.command,
            exit: e.exit_class(),
            outcome: "error".into(),
            diagnostic: Some(e.to_string()),
            artifacts: Vec::new(),
        },
    }
}
