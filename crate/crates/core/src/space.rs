//! Fuzzy spaces `(X, M)` and fuzzy metric spaces `(X, M, *)`.
//!
//! A [`FuzzySpace`] is nothing more than an evaluator `(x, y, t) -> [0, 1]`
//! for `t >= 0`; the metric axioms are properties checked on samples with
//! [`verify_axioms`]. The canonical constructions extend the evaluator to
//! `t = 0` with `M(x, y, 0) = 0`.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::sampling::{self, Verdict, ROUNDING_SLACK};
use crate::tnorm::TNorm;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Default epsilon grid for Cauchy / convergence predicates.
pub const DEFAULT_EPS_GRID: [f64; 4] = [0.5, 0.1, 0.01, 0.001];

/// Default time grid.
pub const DEFAULT_T_GRID: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

/// Largest `n` of the approach sequences `t (1 -+ 1/n)` used for the
/// continuity axioms.
pub const CONTINUITY_STEPS: usize = 64;

type Evaluator<P> = dyn Fn(&P, &P, f64) -> f64 + Send + Sync;
type Domain<P> = dyn Fn(&P) -> bool + Send + Sync;

pub struct FuzzySpace<P> {
    label: String,
    eval: Arc<Evaluator<P>>,
    domain: Option<Arc<Domain<P>>>,
}

impl<P> Clone for FuzzySpace<P> {
    fn clone(&self) -> Self {
        FuzzySpace {
            label: self.label.clone(),
            eval: Arc::clone(&self.eval),
            domain: self.domain.clone(),
        }
    }
}

impl<P> fmt::Debug for FuzzySpace<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuzzySpace").field("label", &self.label).finish()
    }
}

impl<P: Point> FuzzySpace<P> {
    /// Wraps an arbitrary fuzzy set on `X x X x [0, inf)`; no conditions
    /// are imposed on `eval`.
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&P, &P, f64) -> f64 + Send + Sync + 'static,
    {
        FuzzySpace {
            label: label.into(),
            eval: Arc::new(eval),
            domain: None,
        }
    }

    /// Builds a space from an evaluator defined for `t > 0` and extends it
    /// to `t = 0` by `M(x, y, 0) = 0`.
    pub fn extended<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&P, &P, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(label, move |x, y, t| if t > 0.0 { eval(x, y, t) } else { 0.0 })
    }

    /// Restricts the point domain; [`FuzzySpace::try_eval`] rejects points
    /// outside it.
    pub fn with_domain<F>(mut self, contains: F) -> Self
    where
        F: Fn(&P) -> bool + Send + Sync + 'static,
    {
        self.domain = Some(Arc::new(contains));
        self
    }

    /// The canonical fuzzy metric `M^d(x, y, t) = t / (t + d(x, y))`.
    pub fn from_metric<D>(label: impl Into<String>, d: D) -> Self
    where
        D: Fn(&P, &P) -> f64 + Send + Sync + 'static,
    {
        Self::extended(label, move |x, y, t| t / (t + d(x, y)))
    }

    /// `M(x, y, t) = vartheta(t)^d(x, y)`. `vartheta` must be nondecreasing
    /// and continuous from `(0, inf)` into `(0, 1)` with limit 1; it is
    /// spot-checked on a logarithmic sample of times.
    pub fn exponential<D, V>(label: impl Into<String>, d: D, vartheta: V) -> Result<Self>
    where
        D: Fn(&P, &P) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut previous = 0.0;
        for k in -3..=3 {
            let t = libm::pow(10.0, k as f64);
            let v = vartheta(t);
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::rejected(format!("vartheta({t}) = {v} outside (0, 1)")));
            }
            if v < previous {
                return Err(Error::rejected(format!("vartheta decreases before t = {t}")));
            }
            previous = v;
        }
        Ok(Self::extended(label, move |x, y, t| libm::pow(vartheta(t), d(x, y))))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, x: &P) -> bool {
        self.domain.as_ref().is_none_or(|d| d(x))
    }

    /// Evaluates `M(x, y, t)` without validation.
    pub fn eval(&self, x: &P, y: &P, t: f64) -> f64 {
        (self.eval)(x, y, t)
    }

    pub fn try_eval(&self, x: &P, y: &P, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::rejected(format!("negative time {t}")));
        }
        self.check_points([x, y])?;
        Ok(self.eval(x, y, t))
    }

    pub fn check_points<'a>(&self, points: impl IntoIterator<Item = &'a P>) -> Result<()> {
        match points.into_iter().find(|p| !self.contains(p)) {
            Some(p) => Err(Error::rejected(format!(
                "point {p:?} outside the domain of `{}`",
                self.label
            ))),
            None => Ok(()),
        }
    }
}

impl FuzzySpace<f64> {
    /// The stationary space `M(x, y, t) = min(x, y) / max(x, y)` on the
    /// positive reals.
    pub fn stationary_ratio() -> Self {
        Self::extended("stationary_ratio", |x: &f64, y: &f64, _| x.min(*y) / x.max(*y))
            .with_domain(|x| *x > 0.0)
    }
}

/// Real metrics used by the canonical constructions.
pub mod metrics {
    use crate::point::Point;

    pub fn euclidean(x: &f64, y: &f64) -> f64 {
        (x - y).abs()
    }

    pub fn euclidean_vec(x: &alloc::vec::Vec<f64>, y: &alloc::vec::Vec<f64>) -> f64 {
        x.gap(y)
    }

    pub fn discrete<P: Point>(x: &P, y: &P) -> f64 {
        if x.same(y) {
            0.0
        } else {
            1.0
        }
    }
}

/// Spot-checks symmetry and `d(x, x) = 0` on a point sample; the witness is
/// the offending pair.
pub fn spot_check_metric<P: Point>(d: impl Fn(&P, &P) -> f64, points: &[P]) -> Verdict<(P, P)> {
    for x in points {
        if d(x, x).abs() > ROUNDING_SLACK {
            return Verdict::Fail((x.clone(), x.clone()));
        }
        for y in points {
            if (d(x, y) - d(y, x)).abs() > ROUNDING_SLACK || d(x, y) < 0.0 {
                return Verdict::Fail((x.clone(), y.clone()));
            }
        }
    }
    Verdict::Pass
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Km1,
    Km2,
    Km3,
    Km4,
    Km5,
    Gv1,
    Gv2,
    Gv3,
    Gv4,
    Gv5,
    NonArchimedean,
    MonotoneInT,
}

impl Axiom {
    pub const KM: [Axiom; 5] = [Axiom::Km1, Axiom::Km2, Axiom::Km3, Axiom::Km4, Axiom::Km5];
    pub const GV: [Axiom; 5] = [Axiom::Gv1, Axiom::Gv2, Axiom::Gv3, Axiom::Gv4, Axiom::Gv5];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Km1 => "KM1",
            Axiom::Km2 => "KM2",
            Axiom::Km3 => "KM3",
            Axiom::Km4 => "KM4",
            Axiom::Km5 => "KM5",
            Axiom::Gv1 => "GV1",
            Axiom::Gv2 => "GV2",
            Axiom::Gv3 => "GV3",
            Axiom::Gv4 => "GV4",
            Axiom::Gv5 => "GV5",
            Axiom::NonArchimedean => "non_archimedean",
            Axiom::MonotoneInT => "monotone_in_t",
        }
    }

    pub fn parse(name: &str) -> Option<Axiom> {
        [Self::KM.as_slice(), Self::GV.as_slice(), &[Axiom::NonArchimedean, Axiom::MonotoneInT]]
            .concat()
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(name))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    PassOnGrid,
    Fail,
}

/// Sample tuple at which an axiom fails. Unused slots are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomWitness<P> {
    pub x: P,
    pub y: P,
    pub z: Option<P>,
    pub t: f64,
    pub s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<P> {
    pub axiom: Axiom,
    pub verdict: AxiomVerdict,
    pub witness: Option<AxiomWitness<P>>,
}

impl<P: Point> AxiomReport<P> {
    fn from_witness(axiom: Axiom, witness: Option<AxiomWitness<P>>) -> Self {
        let verdict = if witness.is_some() {
            AxiomVerdict::Fail
        } else {
            AxiomVerdict::PassOnGrid
        };
        AxiomReport {
            axiom,
            verdict,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == AxiomVerdict::PassOnGrid
    }

    /// Re-evaluates the axiom at the recorded witness; `true` when it still
    /// fails there (always `false` for passing reports).
    pub fn witness_refutes(&self, space: &FuzzySpace<P>, norm: &TNorm, t_grid: &[f64]) -> bool {
        self.witness
            .as_ref()
            .is_some_and(|w| !holds_at(self.axiom, space, norm, w, t_grid))
    }
}

/// Evaluates one axiom at one sample tuple.
fn holds_at<P: Point>(axiom: Axiom, space: &FuzzySpace<P>, norm: &TNorm, w: &AxiomWitness<P>, t_grid: &[f64]) -> bool {
    let m = |a: &P, b: &P, t: f64| space.eval(a, b, t);
    let (x, y, t) = (&w.x, &w.y, w.t);
    match axiom {
        Axiom::Km1 => m(x, y, 0.0) == 0.0,
        Axiom::Km2 | Axiom::Gv2 => {
            let positive = t_grid.iter().copied().filter(|&t| t > 0.0);
            if x.same(y) {
                positive.into_iter().all(|t| m(x, y, t) == 1.0)
            } else {
                positive.into_iter().any(|t| m(x, y, t) < 1.0)
            }
        }
        Axiom::Km3 | Axiom::Gv3 => (m(x, y, t) - m(y, x, t)).abs() <= ROUNDING_SLACK,
        Axiom::Km4 | Axiom::Gv4 => {
            let (Some(z), Some(s)) = (&w.z, w.s) else {
                return true;
            };
            m(x, z, t + s) + ROUNDING_SLACK >= norm.apply(m(x, y, t), m(y, z, s))
        }
        Axiom::NonArchimedean => {
            let Some(z) = &w.z else { return true };
            m(x, z, t) + ROUNDING_SLACK >= norm.apply(m(x, y, t), m(y, z, t))
        }
        Axiom::Km5 => approaches(|u| m(x, y, u), t, false),
        Axiom::Gv5 => approaches(|u| m(x, y, u), t, false) && approaches(|u| m(x, y, u), t, true),
        Axiom::Gv1 => t <= 0.0 || m(x, y, t) > 0.0,
        Axiom::MonotoneInT => {
            let Some(s) = w.s else { return true };
            t > s || m(x, y, t) <= m(x, y, s) + ROUNDING_SLACK
        }
    }
}

/// Whether `f(t (1 -+ 1/n))` approaches `f(t)` for `n = 2..=CONTINUITY_STEPS`.
fn approaches(f: impl Fn(f64) -> f64, t: f64, from_above: bool) -> bool {
    let target = f(t);
    let errors: Vec<f64> = (2..=CONTINUITY_STEPS)
        .map(|n| {
            let step = t / n as f64;
            let u = if from_above { t + step } else { t - step };
            (f(u) - target).abs()
        })
        .collect();
    sampling::settles(&errors, sampling::LIMIT_TOLERANCE)
}

fn first_failure<P: Point>(
    axiom: Axiom,
    space: &FuzzySpace<P>,
    norm: &TNorm,
    points: &[P],
    t_grid: &[f64],
) -> Option<AxiomWitness<P>> {
    let positive: Vec<f64> = t_grid.iter().copied().filter(|&t| t > 0.0).collect();
    let with_zero: Vec<f64> = core::iter::once(0.0).chain(positive.iter().copied()).collect();
    let check = |w: AxiomWitness<P>| (!holds_at(axiom, space, norm, &w, t_grid)).then_some(w);
    let pair = |x: &P, y: &P, t: f64| AxiomWitness {
        x: x.clone(),
        y: y.clone(),
        z: None,
        t,
        s: None,
    };
    match axiom {
        Axiom::Km1 | Axiom::Km2 | Axiom::Gv2 => {
            let t = if axiom == Axiom::Km1 { 0.0 } else { positive.first().copied().unwrap_or(0.0) };
            points
                .iter()
                .flat_map(|x| points.iter().map(move |y| (x, y)))
                .find_map(|(x, y)| check(pair(x, y, t)))
        }
        Axiom::Km3 | Axiom::Gv3 | Axiom::Gv1 | Axiom::Km5 | Axiom::Gv5 => {
            let times = if axiom == Axiom::Km3 { &with_zero } else { &positive };
            points.iter().find_map(|x| {
                points
                    .iter()
                    .find_map(|y| times.iter().find_map(|&t| check(pair(x, y, t))))
            })
        }
        Axiom::Km4 | Axiom::Gv4 | Axiom::NonArchimedean => {
            let times = if axiom == Axiom::Km4 { &with_zero } else { &positive };
            for x in points {
                for y in points {
                    for z in points {
                        for &t in times {
                            let seconds: &[f64] = if axiom == Axiom::NonArchimedean { &[0.0] } else { times };
                            for &s in seconds {
                                let w = AxiomWitness {
                                    x: x.clone(),
                                    y: y.clone(),
                                    z: Some(z.clone()),
                                    t,
                                    s: (axiom != Axiom::NonArchimedean).then_some(s),
                                };
                                if let Some(w) = check(w) {
                                    return Some(w);
                                }
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::MonotoneInT => points.iter().find_map(|x| {
            points.iter().find_map(|y| {
                with_zero.iter().find_map(|&t| {
                    with_zero.iter().find_map(|&s| {
                        let mut w = pair(x, y, t);
                        w.s = Some(s);
                        check(w)
                    })
                })
            })
        }),
    }
}

/// Checks each requested axiom on every applicable tuple of the samples.
/// KM-type axioms also use `t = 0`; GV-type and non-Archimedean checks use
/// only positive grid times.
pub fn verify_axioms<P: Point>(
    space: &FuzzySpace<P>,
    norm: &TNorm,
    points: &[P],
    t_grid: &[f64],
    which: &[Axiom],
) -> Result<Vec<AxiomReport<P>>> {
    if points.len() < 3 {
        return Err(Error::rejected("at least 3 sample points are required"));
    }
    if t_grid.len() < 2 {
        return Err(Error::rejected("at least 2 grid times are required"));
    }
    if let Some(t) = t_grid.iter().find(|t| !(**t >= 0.0)) {
        return Err(Error::rejected(format!("grid time {t} is negative")));
    }
    space.check_points(points)?;
    Ok(which
        .iter()
        .map(|&axiom| AxiomReport::from_witness(axiom, first_failure(axiom, space, norm, points, t_grid)))
        .collect())
}

pub fn verify_non_archimedean<P: Point>(
    space: &FuzzySpace<P>,
    norm: &TNorm,
    points: &[P],
    t_grid: &[f64],
) -> Result<AxiomReport<P>> {
    Ok(verify_axioms(space, norm, points, t_grid, &[Axiom::NonArchimedean])?.remove(0))
}

/// Violation of a Cauchy / convergence predicate: indices `n` (and `m`,
/// equal to `n` for convergence), epsilon and time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceWitness {
    pub n: usize,
    pub m: usize,
    pub eps: f64,
    pub t: f64,
}

fn check_window<P>(seq: &[P], window: usize) -> Result<()> {
    if window >= seq.len() {
        return Err(Error::rejected(format!(
            "window {window} must be smaller than the sequence length {}",
            seq.len()
        )));
    }
    Ok(())
}

/// Desk-scale M-Cauchy predicate: every pair `n, m >= window` must satisfy
/// `M(x_n, x_m, t) > 1 - eps` for every sampled `(eps, t)`.
pub fn empirically_cauchy<P: Point>(
    space: &FuzzySpace<P>,
    seq: &[P],
    eps_grid: &[f64],
    t_grid: &[f64],
    window: usize,
) -> Result<Verdict<SequenceWitness>> {
    check_window(seq, window)?;
    for n in window..seq.len() {
        for m in n + 1..seq.len() {
            for &t in t_grid {
                let value = space.eval(&seq[n], &seq[m], t);
                if let Some(&eps) = eps_grid.iter().find(|&&eps| value <= 1.0 - eps) {
                    return Ok(Verdict::Fail(SequenceWitness { n, m, eps, t }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Desk-scale M-convergence predicate against a fixed limit point.
pub fn empirically_convergent<P: Point>(
    space: &FuzzySpace<P>,
    seq: &[P],
    limit: &P,
    eps_grid: &[f64],
    t_grid: &[f64],
    window: usize,
) -> Result<Verdict<SequenceWitness>> {
    check_window(seq, window)?;
    for (n, x) in seq.iter().enumerate().skip(window) {
        for &t in t_grid {
            let value = space.eval(x, limit, t);
            if let Some(&eps) = eps_grid.iter().find(|&&eps| value <= 1.0 - eps) {
                return Ok(Verdict::Fail(SequenceWitness { n, m: n, eps, t }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn md() -> FuzzySpace<f64> {
        FuzzySpace::from_metric("euclidean", metrics::euclidean)
    }

    fn km_gv() -> Vec<Axiom> {
        [Axiom::KM.as_slice(), Axiom::GV.as_slice(), &[Axiom::MonotoneInT]].concat()
    }

    #[test]
    fn from_metric_values() {
        let s = md();
        assert_eq!(s.eval(&0.0, &1.0, 1.0), 0.5);
        assert_eq!(s.eval(&3.0, &3.0, 0.2), 1.0);
        assert_eq!(s.eval(&0.0, &1.0, 0.0), 0.0);
    }

    #[test]
    fn exponential_values() {
        let s = FuzzySpace::exponential("exp", metrics::euclidean, |t| t / (1.0 + t)).unwrap();
        assert_eq!(s.eval(&0.0, &1.0, 1.0), 0.5);
        assert_eq!(s.eval(&0.0, &2.0, 1.0), 0.25);
        assert_eq!(s.eval(&4.0, &4.0, 7.0), 1.0);
        assert_eq!(s.eval(&0.0, &2.0, 0.0), 0.0);
        assert!(FuzzySpace::exponential("bad", metrics::euclidean, |_| 1.0).is_err());
        assert!(FuzzySpace::exponential("bad", metrics::euclidean, |t| 1.0 / (1.0 + t)).is_err());
    }

    #[test]
    fn stationary_ratio_values() {
        let s = FuzzySpace::stationary_ratio();
        assert_eq!(s.eval(&2.0, &4.0, 3.0), 0.5);
        assert_eq!(s.eval(&5.0, &5.0, 0.1), 1.0);
        assert_eq!(s.eval(&1.0, &3.0, 0.1), s.eval(&1.0, &3.0, 100.0));
        assert!(s.try_eval(&-1.0, &3.0, 1.0).is_err());
        assert!(s.try_eval(&1.0, &3.0, -1.0).is_err());
    }

    #[test]
    fn metric_space_passes_km_and_gv() {
        let reports = verify_axioms(&md(), &TNorm::product(), &[0.0, 1.0, 2.0], &DEFAULT_T_GRID, &km_gv()).unwrap();
        for r in reports {
            assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn asymmetric_space_fails_km3_with_witness() {
        let s = FuzzySpace::extended("asym", |x: &f64, y: &f64, t| t / (t + (x - y).max(0.0)));
        let t_grid = DEFAULT_T_GRID;
        let r = verify_axioms(&s, &TNorm::product(), &[0.0, 1.0, 2.0], &t_grid, &[Axiom::Km3])
            .unwrap()
            .remove(0);
        assert_eq!(r.verdict, AxiomVerdict::Fail);
        assert!(r.witness_refutes(&s, &TNorm::product(), &t_grid));
    }

    #[test]
    fn stationary_ratio_is_gv1() {
        let r = verify_axioms(
            &FuzzySpace::stationary_ratio(),
            &TNorm::product(),
            &[0.5, 1.0, 2.0, 7.0],
            &DEFAULT_T_GRID,
            &[Axiom::Gv1, Axiom::NonArchimedean],
        )
        .unwrap();
        assert!(r.iter().all(AxiomReport::passed));
    }

    #[test]
    fn non_archimedean_examples() {
        let points = [0.0, 1.0, 2.0];
        assert!(verify_non_archimedean(&md(), &TNorm::product(), &points, &DEFAULT_T_GRID).unwrap().passed());
        let r = verify_non_archimedean(&md(), &TNorm::minimum(), &points, &[1.0, 10.0]).unwrap();
        let w = r.witness.clone().unwrap();
        let z = w.z.unwrap();
        assert!(md().eval(&w.x, &z, w.t) < TNorm::minimum().apply(md().eval(&w.x, &w.y, w.t), md().eval(&w.y, &z, w.t)));
        let forced = AxiomWitness { x: 0.0, y: 1.0, z: Some(2.0), t: 1.0, s: None };
        assert!(!holds_at(Axiom::NonArchimedean, &md(), &TNorm::minimum(), &forced, &[1.0]));
        let discrete = FuzzySpace::from_metric("discrete", metrics::discrete::<f64>);
        assert!(verify_non_archimedean(&discrete, &TNorm::minimum(), &points, &DEFAULT_T_GRID).unwrap().passed());
    }

    #[test]
    fn left_continuity_catches_a_jump() {
        let jump = FuzzySpace::extended("jump", |x: &f64, y: &f64, t| {
            if x.same(y) || t > 1.0 {
                1.0
            } else {
                0.5
            }
        });
        let r = verify_axioms(&jump, &TNorm::product(), &[0.0, 1.0, 2.0], &[0.5, 2.0], &[Axiom::Km5, Axiom::Gv5])
            .unwrap();
        assert!(r[0].passed(), "left-continuous at 1 only matters from below");
        assert_eq!(r[1].verdict, AxiomVerdict::PassOnGrid);
        let r = verify_axioms(&jump, &TNorm::product(), &[0.0, 1.0, 2.0], &[0.5, 1.0], &[Axiom::Gv5]).unwrap();
        assert_eq!(r[0].verdict, AxiomVerdict::Fail);
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(verify_axioms(&md(), &TNorm::product(), &[0.0, 1.0], &DEFAULT_T_GRID, &[Axiom::Km1]).is_err());
        assert!(verify_axioms(&md(), &TNorm::product(), &[0.0, 1.0, 2.0], &[1.0], &[Axiom::Km1]).is_err());
    }

    #[test]
    fn metric_spot_check() {
        assert!(spot_check_metric(metrics::euclidean, &[0.0, 1.5, -2.0]).passed());
        let skew = |x: &f64, y: &f64| (x - y).max(0.0);
        assert!(!spot_check_metric(skew, &[0.0, 1.0]).passed());
    }

    #[test]
    fn cauchy_examples() {
        let s = md();
        let constant = vec![2.0; 30];
        assert!(empirically_cauchy(&s, &constant, &DEFAULT_EPS_GRID, &DEFAULT_T_GRID, 10).unwrap().passed());
        let naturals: Vec<f64> = (0..30).map(|n| n as f64).collect();
        let w = empirically_cauchy(&s, &naturals, &DEFAULT_EPS_GRID, &DEFAULT_T_GRID, 10).unwrap();
        let w = *w.witness().unwrap();
        assert!(s.eval(&naturals[w.n], &naturals[w.m], w.t) <= 1.0 - w.eps);
        assert!(empirically_cauchy(&s, &naturals, &DEFAULT_EPS_GRID, &DEFAULT_T_GRID, 30).is_err());
    }

    #[test]
    fn convergence_examples() {
        let s = md();
        let constant = vec![2.0; 30];
        assert!(empirically_convergent(&s, &constant, &2.0, &DEFAULT_EPS_GRID, &DEFAULT_T_GRID, 10).unwrap().passed());
        let alternating: Vec<f64> = (0..30).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let v = empirically_convergent(&s, &alternating, &0.0, &DEFAULT_EPS_GRID, &DEFAULT_T_GRID, 10).unwrap();
        assert!(!v.passed());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in km_gv().into_iter().chain([Axiom::NonArchimedean]) {
            assert_eq!(Axiom::parse(a.name()), Some(a));
        }
        assert_eq!(Axiom::parse("KM9"), None);
    }
}
