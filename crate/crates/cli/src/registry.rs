//! Turns descriptors into core values. Every failure names the field.

use crate::config::{ExperimentConfig, MapDescriptor, SequenceConfig, SpaceDescriptor};
use crate::error::{CliError, CliResult};
use fuzzyfix_core::contraction::{self, default_scale_grid, PsiGauge, RhoComparator, ThetaComparator};
use fuzzyfix_core::map::real;
use fuzzyfix_core::relation::alpha;
use fuzzyfix_core::sequences::{self, NcOptions};
use fuzzyfix_core::space::{metrics, Axiom};
use fuzzyfix_core::{FuzzySpace, Relation, SelfMap, SolveOptions, TNorm, TerminationMode, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Command-line values that override the document.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: u64,
    pub max_iterations: Option<usize>,
    pub tolerance: Option<f64>,
}

pub fn number(field: &str, text: &str) -> CliResult<f64> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::config(field, format!("`{text}` is not a finite decimal"))),
    }
}

pub fn count(field: &str, text: &str) -> CliResult<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| CliError::config(field, format!("`{text}` is not a nonnegative integer")))
}

fn numbers(field: &str, texts: &[String]) -> CliResult<Vec<f64>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| number(&format!("{field}[{i}]"), t))
        .collect()
}

pub fn required<'a, T>(field: &str, value: &'a Option<T>) -> CliResult<&'a T> {
    value.as_ref().ok_or_else(|| CliError::config(field, "missing"))
}

fn core_to_config(field: &str) -> impl Fn(fuzzyfix_core::Error) -> CliError + '_ {
    move |e| CliError::config(field, e.to_string())
}

fn metric(field: &str, name: &str) -> CliResult<fn(&f64, &f64) -> f64> {
    match name {
        "euclidean" => Ok(metrics::euclidean),
        "discrete" => Ok(metrics::discrete::<f64>),
        _ => Err(CliError::config(field, format!("unknown metric `{name}` (euclidean, discrete)"))),
    }
}

pub fn space(desc: &SpaceDescriptor) -> CliResult<FuzzySpace<f64>> {
    match desc {
        SpaceDescriptor::FromMetric { metric: name } => {
            Ok(FuzzySpace::from_metric(format!("M^d[{name}]"), metric("space.metric", name)?))
        }
        SpaceDescriptor::Exponential { metric: name, vartheta } => {
            let d = metric("space.metric", name)?;
            let k = match vartheta.split_once(':') {
                Some(("ratio", k)) => number("space.vartheta", k)?,
                None if vartheta == "ratio" => 1.0,
                _ => return Err(CliError::config("space.vartheta", format!("unknown `{vartheta}` (ratio:<k>)"))),
            };
            if k <= 0.0 {
                return Err(CliError::config("space.vartheta", "ratio constant must be positive"));
            }
            FuzzySpace::exponential(format!("exp[{name}, t/({k}+t)]"), d, move |t| t / (k + t))
                .map_err(core_to_config("space.vartheta"))
        }
        SpaceDescriptor::StationaryRatio => Ok(FuzzySpace::stationary_ratio()),
    }
}

pub fn tnorm(field: &str, name: &str) -> CliResult<TNorm> {
    TNorm::builtin(name).map_err(core_to_config(field))
}

pub fn relation(name: &str) -> CliResult<Relation<f64>> {
    match name {
        "trivial" => Ok(Relation::trivial()),
        "leq_reals" => Ok(Relation::leq_reals()),
        "from_alpha:one" => Ok(Relation::from_alpha("alpha:one", alpha::one)),
        "from_alpha:leq" => Ok(Relation::from_alpha("alpha:leq", alpha::leq)),
        _ => Err(CliError::config(
            "relation",
            format!("unknown `{name}` (trivial, leq_reals, from_alpha:one, from_alpha:leq)"),
        )),
    }
}

pub fn theta(desc: &str) -> CliResult<ThetaComparator> {
    let field = "theta";
    let (kind, rest) = desc.split_once(':').unwrap_or((desc, ""));
    match kind {
        "psi" => match rest {
            "sqrt" => Ok(contraction::theta_from_psi(&PsiGauge::sqrt())),
            _ => Err(CliError::config(field, format!("unknown gauge `{rest}` (sqrt)"))),
        },
        "radu" => contraction::theta_radu(number(field, rest)?).map_err(core_to_config(field)),
        "banach" => contraction::theta_banach(number(field, rest)?).map_err(core_to_config(field)),
        "rho" => match rest.split_once(':') {
            Some(("linear", lambda)) => {
                let rc = RhoComparator::linear(number(field, lambda)?)
                    .certify(&default_scale_grid())
                    .map_err(core_to_config(field))?;
                contraction::theta_from_rho(&rc).map_err(core_to_config(field))
            }
            _ => Err(CliError::config(field, format!("unknown rho `{rest}` (linear:<lambda>)"))),
        },
        _ => Err(CliError::config(
            field,
            format!("unknown `{desc}` (psi:<name>, radu:<k>, banach:<lambda>, rho:<name>)"),
        )),
    }
}

pub fn map(desc: &MapDescriptor) -> CliResult<SelfMap<f64>> {
    let params = numbers("map.params", &desc.params)?;
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(CliError::config(
                "map.params",
                format!("`{}` takes {n} parameter(s), got {}", desc.name, params.len()),
            ))
        }
    };
    match desc.name.as_str() {
        "banach_ln" => arity(1).map(|_| real::banach_ln(params[0])),
        "half" => arity(0).map(|_| real::half()),
        "identity" => arity(0).map(|_| SelfMap::identity()),
        "square" => arity(0).map(|_| real::square()),
        "affine" => arity(2).map(|_| real::affine(params[0], params[1])),
        "logistic" => arity(1).map(|_| real::logistic(params[0])),
        other => Err(CliError::config(
            "map.name",
            format!("unknown `{other}` (banach_ln, half, identity, square, affine, logistic)"),
        )),
    }
}

pub fn axioms(names: &[String]) -> CliResult<Vec<Axiom>> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| Axiom::parse(n).ok_or_else(|| CliError::config(format!("axioms[{i}]"), format!("unknown axiom `{n}`"))))
        .collect()
}

/// Explicit points, or seeded uniform draws when `random_points` is set.
pub fn points(cfg: &ExperimentConfig, seed: u64) -> CliResult<Vec<f64>> {
    match (&cfg.points, &cfg.random_points) {
        (Some(_), Some(_)) => Err(CliError::config("points", "give either points or random_points")),
        (Some(p), None) => numbers("points", p),
        (None, Some(r)) => {
            let n = count("random_points.count", &r.count)?;
            let (low, high) = (number("random_points.low", &r.low)?, number("random_points.high", &r.high)?);
            if !(low < high) {
                return Err(CliError::config("random_points", "low must be below high"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..n).map(|_| rng.gen_range(low..high)).collect())
        }
        (None, None) => Err(CliError::config("points", "missing (or random_points)")),
    }
}

pub fn t_grid(cfg: &ExperimentConfig) -> CliResult<Vec<f64>> {
    match &cfg.options.t_grid {
        Some(g) => numbers("options.t_grid", g),
        None => Ok(fuzzyfix_core::space::DEFAULT_T_GRID.to_vec()),
    }
}

pub fn solve_options(cfg: &ExperimentConfig, overrides: &Overrides) -> CliResult<SolveOptions<f64>> {
    let o = &cfg.options;
    let mut opts = SolveOptions::<f64> {
        t_grid: t_grid(cfg)?,
        ..SolveOptions::default()
    };
    if let Some(v) = &o.max_iterations {
        opts.max_iterations = count("options.max_iterations", v)?;
    }
    if let Some(v) = &o.tolerance {
        opts.tolerance = number("options.tolerance", v)?;
    }
    if let Some(v) = &o.margin_tolerance {
        opts.margin_tolerance = number("options.margin_tolerance", v)?;
    }
    if let Some(v) = &o.eps_grid {
        opts.eps_grid = numbers("options.eps_grid", v)?;
    }
    if let Some(v) = &o.window {
        opts.window = count("options.window", v)?;
    }
    if let Some(v) = &o.probe_points {
        opts.probe_points = numbers("options.probe_points", v)?;
    }
    if let Some(v) = &o.variant {
        opts.variant = match v.as_str() {
            "type1" => Variant::Type1,
            "type2" => Variant::Type2,
            _ => return Err(CliError::config("options.variant", format!("unknown `{v}` (type1, type2)"))),
        };
    }
    if let Some(v) = &o.termination_mode {
        opts.termination_mode = TerminationMode::parse(v).ok_or_else(|| {
            CliError::config(
                "options.termination_mode",
                format!("unknown `{v}` (a_continuity, b_regular_F5, c_regular_dominated)"),
            )
        })?;
    }
    if let Some(n) = overrides.max_iterations {
        opts.max_iterations = n;
    }
    if let Some(t) = overrides.tolerance {
        opts.tolerance = t;
    }
    if opts.max_iterations == 0 || opts.window == 0 {
        return Err(CliError::config("options", "max_iterations and window must be positive"));
    }
    if !(opts.tolerance > 0.0 && opts.tolerance < 1.0) {
        return Err(CliError::config("options.tolerance", "must lie in (0, 1)"));
    }
    if !opts.t_grid.iter().any(|&t| t > 0.0) {
        return Err(CliError::config("options.t_grid", "needs a positive time"));
    }
    Ok(opts)
}

pub fn sequence(cfg: &ExperimentConfig) -> CliResult<Vec<f64>> {
    match required("sequence", &cfg.sequence)? {
        SequenceConfig::Harmonic { length, scale } => {
            let scale = scale.as_deref().map(|s| number("sequence.scale", s)).transpose()?.unwrap_or(1.0);
            let len = count("sequence.length", length)?;
            Ok(sequences::harmonic_partial_sums(len).into_iter().map(|x| x * scale).collect())
        }
        SequenceConfig::Picard { x0, length } => {
            let f = map(required("map", &cfg.map)?)?;
            let orbit = sequences::picard(&f, number("sequence.x0", x0)?, count("sequence.length", length)?)
                .map_err(core_to_config("sequence"))?;
            Ok(orbit.points)
        }
        SequenceConfig::Explicit { values } => numbers("sequence.values", values),
    }
}

pub fn nc_options(cfg: &ExperimentConfig) -> CliResult<(NcOptions, Vec<usize>)> {
    let nc = cfg.nc.clone().unwrap_or_default();
    let mut opts = NcOptions::default();
    if let Some(v) = &nc.eps_grid {
        opts.eps_grid = numbers("nc.eps_grid", v)?;
    }
    if let Some(v) = &nc.t_grid {
        opts.t_grid = numbers("nc.t_grid", v)?;
    }
    if let Some(v) = &nc.regularity_tolerance {
        opts.regularity_tolerance = number("nc.regularity_tolerance", v)?;
    }
    if let Some(v) = &nc.min_pairs {
        opts.min_pairs = count("nc.min_pairs", v)?;
    }
    if opts.eps_grid.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(CliError::config("nc.eps_grid", "values must lie in (0, 1)"));
    }
    let windows = match &nc.windows {
        Some(w) => w
            .iter()
            .enumerate()
            .map(|(i, s)| count(&format!("nc.windows[{i}]"), s))
            .collect::<CliResult<Vec<usize>>>()?,
        None => Vec::new(),
    };
    Ok((opts, windows))
}
