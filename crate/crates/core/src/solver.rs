//! Picard iteration with inline hypothesis auditing.
//!
//! [`solve`] walks the orbit of `x0`, recording one [`TraceRow`] per term
//! and stopping at the first hypothesis it can refute, at a certified fixed
//! point, or when the budget runs out. Hypotheses that quantify over every
//! Cauchy sequence (precompleteness) cannot be sampled and are listed in
//! [`SolveResult::assumptions`] instead.

use crate::contraction::{self, ContractionInstance, F4Failure, ThetaComparator, Variant};
use crate::error::{Error, Result};
use crate::map::SelfMap;
use crate::point::Point;
use crate::relation::{self, Relation};
use crate::sampling::{self, distinct_pairs, Verdict};
use crate::sequences::{self, SequenceCondition, WitnessBundle};
use crate::space::{self, FuzzySpace};
use crate::tnorm::{self, ContinuityClass, TNorm};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Most orbit points fed to the transitivity and monotonicity audits.
const AUDIT_SAMPLE: usize = 24;

/// Everything the theorems quantify over, bundled.
#[derive(Clone, Debug)]
pub struct Problem<P> {
    pub space: FuzzySpace<P>,
    pub norm: TNorm,
    pub relation: Relation<P>,
    pub theta: ThetaComparator,
    pub map: SelfMap<P>,
}

impl<P: Point> Problem<P> {
    pub fn instance(&self) -> ContractionInstance<'_, P> {
        ContractionInstance {
            theta: &self.theta,
            space: &self.space,
            relation: &self.relation,
            map: &self.map,
        }
    }
}

/// How a converged orbit's limit is shown to be fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TerminationMode {
    /// `T` continuous: `Tz` is compared with the orbit tail.
    Continuity,
    /// Regularity plus F5: contractivity between the tail and `z`.
    RegularF5,
    /// Regularity plus a dominated comparator.
    RegularDominated,
}

impl TerminationMode {
    pub fn name(self) -> &'static str {
        match self {
            TerminationMode::Continuity => "a_continuity",
            TerminationMode::RegularF5 => "b_regular_F5",
            TerminationMode::RegularDominated => "c_regular_dominated",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            TerminationMode::Continuity,
            TerminationMode::RegularF5,
            TerminationMode::RegularDominated,
        ]
        .into_iter()
        .find(|m| m.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions<P> {
    pub max_iterations: usize,
    pub t_grid: Vec<f64>,
    pub eps_grid: Vec<f64>,
    /// Closeness in `M` and in the point domain.
    pub tolerance: f64,
    /// Contractivity margins below `-margin_tolerance` are violations.
    pub margin_tolerance: f64,
    pub variant: Variant,
    pub termination_mode: TerminationMode,
    /// Consecutive rows that must agree before the orbit counts as
    /// converged.
    pub window: usize,
    /// Extra points paired with `x0` for the up-front contractivity audit.
    pub probe_points: Vec<P>,
}

impl<P> Default for SolveOptions<P> {
    fn default() -> Self {
        SolveOptions {
            max_iterations: 1000,
            t_grid: space::DEFAULT_T_GRID.to_vec(),
            eps_grid: space::DEFAULT_EPS_GRID.to_vec(),
            tolerance: 1e-9,
            margin_tolerance: 1e-12,
            variant: Variant::Type1,
            termination_mode: TerminationMode::Continuity,
            window: 20,
            probe_points: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<P> {
    FixedPoint(P),
    Nonconvergent,
    HypothesisViolation {
        clause: String,
        detail: String,
        /// Trace row at which the violation surfaced, if mid-orbit.
        row: Option<usize>,
    },
}

impl<P> Outcome<P> {
    pub fn fixed_point(&self) -> Option<&P> {
        match self {
            Outcome::FixedPoint(z) => Some(z),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::FixedPoint(_) => "fixed_point",
            Outcome::Nonconvergent => "nonconvergent",
            Outcome::HypothesisViolation { .. } => "hypothesis_violation",
        }
    }
}

/// One orbit term. `degrees[i]` and `margins[i]` belong to `t_grid[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow<P> {
    pub n: usize,
    pub point: P,
    /// `M(x_n, x_{n+1}, t)`.
    pub degrees: Vec<f64>,
    /// `theta(M(x_{n+1}, x_{n+2}, t), M(x_n, x_{n+1}, t))` where required.
    pub margins: Vec<Option<f64>>,
    /// `x_n S* x_{n+1}` and `x_{n+1} S* x_{n+2}`.
    pub guarded: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult<P> {
    pub outcome: Outcome<P>,
    pub trace: Vec<TraceRow<P>>,
    pub t_grid: Vec<f64>,
    pub uniqueness: Option<UniquenessReport>,
    /// Hypotheses taken on trust.
    pub assumptions: Vec<String>,
}

impl<P> SolveResult<P> {
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}

fn assumptions() -> Vec<String> {
    [
        "T(X) is (S,M)-strictly-increasing-precomplete (not sampled)",
        "\"(S,d)-strictly-increasing-precomplete\" in the type-2 statement read as (S,M)",
        "(X,M) is S-strictly-increasing-regular under termination modes b and c (not sampled)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn violation<P>(clause: &str, detail: String, row: Option<usize>) -> Outcome<P> {
    Outcome::HypothesisViolation {
        clause: clause.to_string(),
        detail,
        row,
    }
}

fn validate_options<P>(opts: &SolveOptions<P>) -> Result<Vec<f64>> {
    let times: Vec<f64> = opts.t_grid.iter().copied().filter(|&t| t > 0.0).collect();
    if times.is_empty() {
        return Err(Error::rejected("t_grid needs a positive time"));
    }
    if opts.max_iterations == 0 || opts.window == 0 {
        return Err(Error::rejected("max_iterations and window must be positive"));
    }
    if !(opts.tolerance > 0.0 && opts.tolerance < 1.0) || !(opts.margin_tolerance >= 0.0) {
        return Err(Error::rejected("tolerances must lie in (0, 1)"));
    }
    Ok(times)
}

/// Checks made before the first iterate.
fn precheck<P: Point>(problem: &Problem<P>, x0: &P, x1: &P, times: &[f64], opts: &SolveOptions<P>) -> Result<Option<Outcome<P>>> {
    if problem.norm.continuity() != ContinuityClass::Continuous {
        let report = tnorm::check_boundary_continuity(
            &problem.norm,
            &sampling::unit_grid(21),
            space::CONTINUITY_STEPS,
            sampling::LIMIT_TOLERANCE,
        )?;
        if let Verdict::Fail(s) = report.verdict {
            return Ok(Some(violation(
                "1-boundary continuity",
                format!("{} is not continuous at (1, {s})", problem.norm.name()),
                None,
            )));
        }
    }
    if opts.variant == Variant::Type2 && !problem.theta.positivity_propagating() {
        return Ok(Some(violation(
            "positivity propagation",
            format!("theta `{}` may vanish at t = 0 for s > 0", problem.theta.label()),
            None,
        )));
    }
    if !problem.relation.holds(x0, x1) {
        return Ok(Some(violation("x0 S Tx0", format!("{x0:?} S {x1:?} fails"), None)));
    }
    if opts.variant == Variant::Type2 {
        if let Some(&t) = times.iter().find(|&&t| problem.space.eval(x0, x1, t) <= 0.0) {
            return Ok(Some(violation("positivity at x0", format!("M(x0, Tx0, {t}) = 0"), None)));
        }
    }
    let mut probes = Vec::with_capacity(opts.probe_points.len() + 1);
    probes.push(x0.clone());
    probes.extend(opts.probe_points.iter().cloned());
    let pairs = distinct_pairs(&probes);
    let records = contraction::f4_records(problem.instance(), &pairs, times, opts.variant, opts.margin_tolerance)?;
    let failure = records.into_iter().find_map(|r| match r.status {
        contraction::F4Status::Violated => Some((F4Failure::F4, r)),
        contraction::F4Status::OutsideDomain => Some((F4Failure::F1, r)),
        _ => None,
    });
    if let Some((kind, r)) = failure {
        let clause = match kind {
            F4Failure::F1 => "F1",
            F4Failure::F4 => "F4",
        };
        return Ok(Some(violation(
            clause,
            format!(
                "x = {:?}, y = {:?}, t = {}: M(Tx,Ty,t) = {}, M(x,y,t) = {}, {}",
                r.x,
                r.y,
                r.t,
                r.phi,
                r.psi,
                match r.margin {
                    Some(m) => format!("margin = {m}"),
                    None => "outside the comparator domain".into(),
                }
            ),
            None,
        )));
    }
    Ok(None)
}

/// Transitivity of `S` and monotonicity of `T` on a sample of the orbit.
fn audit_relation<P: Point>(problem: &Problem<P>, orbit: &[P], probes: &[P]) -> Result<Option<Outcome<P>>> {
    let stride = orbit.len().div_ceil(AUDIT_SAMPLE).max(1);
    let mut sample: Vec<P> = orbit.iter().step_by(stride).cloned().collect();
    sample.extend(probes.iter().cloned());
    if sample.len() >= 3 {
        if let Verdict::Fail((x, y, z)) = relation::is_transitive(&problem.relation, &sample)? {
            return Ok(Some(violation("transitivity", format!("{x:?} S {y:?} S {z:?}"), None)));
        }
    }
    if let Verdict::Fail((x, y)) = relation::nondecreasing_map(&problem.relation, &problem.map, &sample)? {
        return Ok(Some(violation("nondecreasing", format!("{x:?} S {y:?} but not Tx S Ty"), None)));
    }
    Ok(None)
}

fn converged<P: Point>(space: &FuzzySpace<P>, orbit: &[P], times: &[f64], window: usize, tolerance: f64) -> bool {
    if orbit.len() <= window {
        return false;
    }
    let recent = &orbit[orbit.len() - window - 1..];
    let last = recent.len() - 1;
    recent[last].gap(&recent[last - 1]) <= tolerance
        && recent.iter().enumerate().all(|(i, x)| {
            recent[i + 1..]
                .iter()
                .all(|y| times.iter().all(|&t| space.eval(x, y, t) > 1.0 - tolerance))
        })
}

/// Shows the candidate limit `z` is fixed according to the termination mode.
fn certify<P: Point>(
    problem: &Problem<P>,
    z: &P,
    orbit: &[P],
    times: &[f64],
    opts: &SolveOptions<P>,
) -> Result<Outcome<P>> {
    let tz = problem.map.apply(z).map_err(|reason| Error::MapFailed {
        index: orbit.len() - 1,
        reason,
    })?;
    let clause = match opts.termination_mode {
        TerminationMode::Continuity => "continuity",
        TerminationMode::RegularF5 => "F5",
        TerminationMode::RegularDominated => "dominated",
    };
    if opts.termination_mode == TerminationMode::RegularDominated && !problem.theta.dominated() {
        return Ok(violation(
            clause,
            format!("theta `{}` is not dominated by t - s", problem.theta.label()),
            None,
        ));
    }
    let tail = &orbit[orbit.len().saturating_sub(opts.window + 1)..];
    match opts.termination_mode {
        TerminationMode::Continuity => {
            let near = |x: &&P| times.iter().all(|&t| problem.space.eval(x, z, t) > 1.0 - opts.tolerance);
            for &t in times {
                if let Some(x) = tail
                    .iter()
                    .filter(near)
                    .find(|x| problem.space.eval(&tz, x, t) <= 1.0 - opts.tolerance)
                {
                    return Ok(violation(clause, format!("Tz = {tz:?} is far from orbit term {x:?} at t = {t}"), None));
                }
            }
        }
        TerminationMode::RegularF5 | TerminationMode::RegularDominated => {
            let pairs: Vec<(P, P)> = tail.iter().map(|x| (x.clone(), z.clone())).collect();
            let records = contraction::f4_records(problem.instance(), &pairs, times, opts.variant, opts.margin_tolerance)?;
            if let Some(r) = records.iter().find(|r| {
                matches!(
                    r.status,
                    contraction::F4Status::Violated | contraction::F4Status::OutsideDomain
                )
            }) {
                return Ok(violation(
                    "F4",
                    format!("margin {:?} between orbit term {:?} and limit at t = {}", r.margin, r.x, r.t),
                    None,
                ));
            }
            if opts.termination_mode == TerminationMode::RegularF5 {
                let xs: Vec<P> = tail
                    .iter()
                    .filter(|x| {
                        problem.relation.strict(x, z)
                            && problem.map.apply(x).is_ok_and(|tx| problem.relation.strict(&tx, &tz))
                    })
                    .cloned()
                    .collect();
                if !xs.is_empty() {
                    let ys = alloc::vec![z.clone(); xs.len()];
                    let condition = match opts.variant {
                        Variant::Type1 => SequenceCondition::F5,
                        Variant::Type2 => SequenceCondition::F5Tilde,
                    };
                    let verdict = sequences::falsify_sequence_condition(
                        condition,
                        problem.instance(),
                        &[WitnessBundle::Tsm { xs, ys }],
                        times,
                        opts.tolerance,
                    );
                    // A witness failing a hypothesis clause carries no information.
                    if let Ok(Verdict::Fail(c)) = verdict {
                        return Ok(violation(clause, format!("phi_n stays {} away from 1 at t = {}", c.residual, c.t), None));
                    }
                }
            }
        }
    }
    for &t in times {
        let degree = problem.space.eval(z, &tz, t);
        if degree <= 1.0 - opts.tolerance {
            return Ok(violation(clause, format!("M(z, Tz, {t}) = {degree}"), None));
        }
    }
    if tz.gap(z) >= opts.tolerance {
        return Ok(violation(clause, format!("|Tz - z| = {}", tz.gap(z)), None));
    }
    Ok(Outcome::FixedPoint(z.clone()))
}

/// Runs the audited Picard iteration from `x0`.
pub fn solve<P: Point>(problem: &Problem<P>, x0: P, opts: &SolveOptions<P>) -> Result<SolveResult<P>> {
    let times = validate_options(opts)?;
    let apply = |x: &P, index: usize| problem.map.apply(x).map_err(|reason| Error::MapFailed { index, reason });
    let mut result = SolveResult {
        outcome: Outcome::Nonconvergent,
        trace: Vec::new(),
        t_grid: times.clone(),
        uniqueness: None,
        assumptions: assumptions(),
    };
    let mut x = x0;
    let mut next = apply(&x, 0)?;
    if let Some(outcome) = precheck(problem, &x, &next, &times, opts)? {
        result.outcome = outcome;
        return Ok(result);
    }
    let mut orbit: Vec<P> = Vec::new();
    for n in 0..=opts.max_iterations {
        let degrees: Vec<f64> = times.iter().map(|&t| problem.space.eval(&x, &next, t)).collect();
        orbit.push(x.clone());
        if x.same(&next) {
            result.trace.push(TraceRow {
                n,
                point: x.clone(),
                degrees,
                margins: alloc::vec![None; times.len()],
                guarded: false,
            });
            if let Some(outcome) = audit_relation(problem, &orbit, &opts.probe_points)? {
                result.outcome = outcome;
                return Ok(result);
            }
            result.outcome = certify(problem, &x, &orbit, &times, opts)?;
            return Ok(result);
        }
        if opts.variant == Variant::Type2 {
            if let Some(i) = degrees.iter().position(|&d| d <= 0.0) {
                result.trace.push(TraceRow {
                    n,
                    point: x.clone(),
                    degrees,
                    margins: alloc::vec![None; times.len()],
                    guarded: false,
                });
                result.outcome = violation(
                    "positivity induction",
                    format!("M(x_n, x_n+1, {}) = 0", times[i]),
                    Some(n),
                );
                return Ok(result);
            }
        }
        let after = apply(&next, n + 1)?;
        let guarded = problem.relation.strict(&x, &next) && problem.relation.strict(&next, &after);
        let mut margins = Vec::with_capacity(times.len());
        let mut failure = None;
        for (i, &t) in times.iter().enumerate() {
            if !guarded || (opts.variant == Variant::Type2 && degrees[i] <= 0.0) {
                margins.push(None);
                continue;
            }
            let phi = problem.space.eval(&next, &after, t);
            match problem.theta.value(phi, degrees[i]) {
                Ok(m) => {
                    if m < -opts.margin_tolerance && failure.is_none() {
                        failure = Some(("F4", format!("margin {m} at t = {t}")));
                    }
                    margins.push(Some(m));
                }
                Err(_) => {
                    failure.get_or_insert(("F1", format!("({phi}, {}) outside B at t = {t}", degrees[i])));
                    margins.push(None);
                }
            }
        }
        result.trace.push(TraceRow {
            n,
            point: x.clone(),
            degrees,
            margins,
            guarded,
        });
        if let Some((clause, detail)) = failure {
            result.outcome = violation(clause, detail, Some(n));
            return Ok(result);
        }
        if orbit.iter().any(|p| p.same(&next)) {
            result.outcome = Outcome::Nonconvergent;
            return Ok(result);
        }
        if converged(&problem.space, &orbit, &times, opts.window, opts.tolerance) {
            if let Some(outcome) = audit_relation(problem, &orbit, &opts.probe_points)? {
                result.outcome = outcome;
                return Ok(result);
            }
            result.outcome = certify(problem, &x, &orbit, &times, opts)?;
            return Ok(result);
        }
        x = next;
        next = after;
    }
    Ok(result)
}

/// Contractivity audit of a probe orbit toward one fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointAudit {
    /// Every guarded `theta(M(z_{n+1}, fp, t), M(z_n, fp, t))` was
    /// nonnegative (up to the margin tolerance).
    pub margins_hold: bool,
    pub worst_margin: Option<f64>,
    pub failing_row: Option<usize>,
    /// `M(z_n, fp, t) > 1 - tolerance` at the last orbit term, every `t`.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport {
    pub audit_a: FixedPointAudit,
    pub audit_b: FixedPointAudit,
    /// `1 - M(fp_a, fp_b, t)` per grid time.
    pub discrepancy: Vec<f64>,
    pub orbit_len: usize,
    /// The orbit converged to both points with all margins holding.
    pub unique: bool,
}

fn audit_toward<P: Point>(problem: &Problem<P>, orbit: &[P], fp: &P, times: &[f64], opts: &SolveOptions<P>) -> FixedPointAudit {
    let mut worst: Option<f64> = None;
    let mut failing_row = None;
    for (n, w) in orbit.windows(2).enumerate() {
        if !problem.relation.strict(&w[0], fp) {
            continue;
        }
        for &t in times {
            let psi = problem.space.eval(&w[0], fp, t);
            if opts.variant == Variant::Type2 && psi <= 0.0 {
                continue;
            }
            let phi = problem.space.eval(&w[1], fp, t);
            let margin = problem.theta.value(phi, psi).unwrap_or(f64::NEG_INFINITY);
            worst = Some(worst.map_or(margin, |m| m.min(margin)));
            if margin < -opts.margin_tolerance && failing_row.is_none() {
                failing_row = Some(n);
            }
        }
    }
    let last = &orbit[orbit.len() - 1];
    FixedPointAudit {
        margins_hold: failing_row.is_none(),
        worst_margin: worst,
        failing_row,
        converged: times.iter().all(|&t| problem.space.eval(last, fp, t) > 1.0 - opts.tolerance),
    }
}

/// Iterates from `bridge` and audits the approach to both fixed points.
pub fn uniqueness_probe<P: Point>(
    problem: &Problem<P>,
    fp_a: &P,
    fp_b: &P,
    bridge: P,
    opts: &SolveOptions<P>,
) -> Result<UniquenessReport> {
    let times = validate_options(opts)?;
    for fp in [fp_a, fp_b] {
        let tfp = problem.map.apply(fp).map_err(|reason| Error::MapFailed { index: 0, reason })?;
        if tfp.gap(fp) > opts.tolerance {
            return Err(Error::rejected(format!("{fp:?} is not a fixed point")));
        }
        if !problem.relation.comparable(&bridge, fp) {
            return Err(Error::rejected(format!("bridge {bridge:?} is not comparable to {fp:?}")));
        }
    }
    let mut orbit = alloc::vec![bridge];
    for index in 0..opts.max_iterations {
        let last = &orbit[orbit.len() - 1];
        let next = problem.map.apply(last).map_err(|reason| Error::MapFailed { index, reason })?;
        let done = next.same(last);
        orbit.push(next);
        if done {
            break;
        }
    }
    let audit_a = audit_toward(problem, &orbit, fp_a, &times, opts);
    let audit_b = audit_toward(problem, &orbit, fp_b, &times, opts);
    let unique = [&audit_a, &audit_b].iter().all(|a| a.converged && a.margins_hold);
    Ok(UniquenessReport {
        discrepancy: times.iter().map(|&t| 1.0 - problem.space.eval(fp_a, fp_b, t)).collect(),
        orbit_len: orbit.len(),
        audit_a,
        audit_b,
        unique,
    })
}
