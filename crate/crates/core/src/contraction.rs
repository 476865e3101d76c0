//! Theta comparators and the contraction-side hypotheses.
//!
//! A [`ThetaComparator`] is a partial function `theta: B -> R` with
//! `B ⊆ [0, 1]^2`; a self-map is contractive when
//! `theta(M(Tx, Ty, t), M(x, y, t)) >= 0` on every guarded pair. The two
//! structural flags a comparator carries (domination by `t - s` and
//! positivity propagation) are only ever set from a grid check.

use crate::error::{Error, Result};
use crate::map::SelfMap;
use crate::point::Point;
use crate::relation::Relation;
use crate::sampling::{self, square_grid, unit_grid, Verdict, LIMIT_TOLERANCE, ROUNDING_SLACK};
use crate::space::FuzzySpace;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Points per axis of the default comparator grid.
pub const DEFAULT_GRID_POINTS: usize = 101;

/// Exponents `k` of the steps `2^-k` used to probe gauge continuity.
const CONTINUITY_PROBES: core::ops::RangeInclusive<i32> = 10..=40;

/// The two notions of fuzzy ample spectrum contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// F-conditions required on every guarded pair.
    Type1,
    /// Tilde conditions: required only where `M(x, y, t) > 0`.
    Type2,
}

#[derive(Clone)]
pub enum ThetaDomain {
    /// `[0, 1] x [0, 1]`.
    UnitSquare,
    /// `(0, 1] x (0, 1]`.
    PositiveUnitSquare,
    Custom(Arc<dyn Fn(f64, f64) -> bool + Send + Sync>),
}

impl ThetaDomain {
    pub fn contains(&self, t: f64, s: f64) -> bool {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        match self {
            ThetaDomain::UnitSquare => unit(t) && unit(s),
            ThetaDomain::PositiveUnitSquare => t > 0.0 && t <= 1.0 && s > 0.0 && s <= 1.0,
            ThetaDomain::Custom(f) => f(t, s),
        }
    }
}

impl fmt::Debug for ThetaDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaDomain::UnitSquare => f.write_str("[0,1]x[0,1]"),
            ThetaDomain::PositiveUnitSquare => f.write_str("(0,1]x(0,1]"),
            ThetaDomain::Custom(_) => f.write_str("custom"),
        }
    }
}

#[derive(Clone)]
pub struct ThetaComparator {
    label: String,
    domain: ThetaDomain,
    value: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    dominated: bool,
    positivity_propagating: bool,
}

impl fmt::Debug for ThetaComparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaComparator")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("dominated", &self.dominated)
            .field("positivity_propagating", &self.positivity_propagating)
            .finish()
    }
}

impl ThetaComparator {
    /// A comparator with both structural flags unset; call
    /// [`ThetaComparator::certify`] to establish them.
    pub fn new<F>(label: impl Into<String>, domain: ThetaDomain, value: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        ThetaComparator {
            label: label.into(),
            domain,
            value: Arc::new(value),
            dominated: false,
            positivity_propagating: false,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &ThetaDomain {
        &self.domain
    }

    pub fn in_domain(&self, t: f64, s: f64) -> bool {
        self.domain.contains(t, s)
    }

    pub fn value(&self, t: f64, s: f64) -> Result<f64> {
        if self.in_domain(t, s) {
            Ok((self.value)(t, s))
        } else {
            Err(Error::OutsideDomain { t, s })
        }
    }

    /// `theta(t, s) <= t - s` verified on a grid.
    pub fn dominated(&self) -> bool {
        self.dominated
    }

    /// `theta(t, s) >= 0, s > 0 => t > 0` verified on a grid.
    pub fn positivity_propagating(&self) -> bool {
        self.positivity_propagating
    }

    /// Runs both structural checks on `grid` and sets the flags from the
    /// outcomes.
    pub fn certify(&mut self, grid: &[(f64, f64)]) -> (Verdict<(f64, f64)>, Verdict<(f64, f64)>) {
        let dominated = check_dominated(self, grid);
        let positivity = check_positivity_propagation(self, grid);
        self.dominated = dominated.passed();
        self.positivity_propagating = positivity.passed();
        (dominated, positivity)
    }

    fn certified(mut self) -> Self {
        self.certify(&square_grid(DEFAULT_GRID_POINTS));
        self
    }
}

/// A gauge `psi` from the Mihet family: continuous, nondecreasing,
/// `psi(t) > t` on `(0, 1)`, hence `psi(1) = 1`.
#[derive(Clone)]
pub struct PsiGauge {
    label: String,
    psi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for PsiGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsiGauge").field("label", &self.label).finish()
    }
}

impl PsiGauge {
    /// Validates the gauge invariants on `axis` (a sample of `[0, 1]`).
    pub fn new<F>(label: impl Into<String>, psi: F, axis: &[f64]) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let label = label.into();
        let reject = |what: &str, at: f64| Err(Error::rejected(format!("gauge `{label}`: {what} at {at}")));
        if (psi(1.0) - 1.0).abs() > ROUNDING_SLACK {
            return reject("psi(1) != 1", 1.0);
        }
        let mut previous: Option<f64> = None;
        for &t in axis {
            let v = psi(t);
            if !(0.0..=1.0).contains(&v) {
                return reject("value outside [0, 1]", t);
            }
            if t > 0.0 && t < 1.0 && v <= t {
                return reject("psi(t) <= t", t);
            }
            if previous.is_some_and(|p| v + ROUNDING_SLACK < p) {
                return reject("decreasing", t);
            }
            for sign in [-1.0, 1.0] {
                let errors: Vec<f64> = CONTINUITY_PROBES
                    .map(|k| t + sign * libm::exp2(-(k as f64)))
                    .filter(|u| (0.0..=1.0).contains(u))
                    .map(|u| (psi(u) - v).abs())
                    .collect();
                if !sampling::settles(&errors, LIMIT_TOLERANCE) {
                    return reject("discontinuous", t);
                }
            }
            previous = Some(v);
        }
        Ok(PsiGauge {
            label,
            psi: Arc::new(psi),
        })
    }

    /// `psi(s) = sqrt(s)`.
    pub fn sqrt() -> Self {
        Self::new("sqrt", libm::sqrt, &unit_grid(DEFAULT_GRID_POINTS)).expect("sqrt is a gauge")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, s: f64) -> f64 {
        (self.psi)(s)
    }
}

/// A metric-side comparator `rho: [0, inf)^2 -> R`.
#[derive(Clone)]
pub struct RhoComparator {
    label: String,
    rho: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    scale_invariant: bool,
}

impl fmt::Debug for RhoComparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RhoComparator")
            .field("label", &self.label)
            .field("scale_invariant", &self.scale_invariant)
            .finish()
    }
}

impl RhoComparator {
    pub fn new<F>(label: impl Into<String>, rho: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        RhoComparator {
            label: label.into(),
            rho: Arc::new(rho),
            scale_invariant: false,
        }
    }

    /// `rho_lambda(a, b) = lambda b - a`, the Banach comparator.
    pub fn linear(lambda: f64) -> Self {
        Self::new(format!("linear({lambda})"), move |a, b| lambda * b - a)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, a: f64, b: f64) -> f64 {
        (self.rho)(a, b)
    }

    pub fn scale_invariant(&self) -> bool {
        self.scale_invariant
    }

    /// Sets the scale-invariance flag after [`check_scale_invariance`]
    /// passes on `grid`; otherwise rejects with the witness.
    pub fn certify(mut self, grid: &[(f64, f64, f64)]) -> Result<Self> {
        match check_scale_invariance(&self, grid)? {
            Verdict::Pass => {
                self.scale_invariant = true;
                Ok(self)
            }
            Verdict::Fail((t, s, r)) => Err(Error::rejected(format!(
                "`{}` is not scale invariant at (t, s, r) = ({t}, {s}, {r})",
                self.label
            ))),
        }
    }
}

/// Triples `(t, s, r)` over `{0.1, 0.5, 1, 2.5, 10}^3`.
pub fn default_scale_grid() -> Vec<(f64, f64, f64)> {
    const AXIS: [f64; 5] = [0.1, 0.5, 1.0, 2.5, 10.0];
    let mut grid = Vec::with_capacity(AXIS.len().pow(3));
    for t in AXIS {
        for s in AXIS {
            for r in AXIS {
                grid.push((t, s, r));
            }
        }
    }
    grid
}

/// `rho(t, s) >= 0  =>  rho(t/r, s/r) >= 0` on every grid triple.
pub fn check_scale_invariance(rc: &RhoComparator, grid: &[(f64, f64, f64)]) -> Result<Verdict<(f64, f64, f64)>> {
    if grid.is_empty() {
        return Err(Error::rejected("empty grid"));
    }
    if let Some(triple) = grid.iter().find(|(t, s, r)| !(*t > 0.0 && *s > 0.0 && *r > 0.0)) {
        return Err(Error::rejected(format!("grid triple {triple:?} is not positive")));
    }
    Ok(grid
        .iter()
        .copied()
        .find(|&(t, s, r)| rc.apply(t, s) >= 0.0 && rc.apply(t / r, s / r) < -ROUNDING_SLACK)
        .into())
}

/// `theta_psi(t, s) = t - psi(s)` on `[0, 1]^2`.
pub fn theta_from_psi(gauge: &PsiGauge) -> ThetaComparator {
    let psi = gauge.clone();
    ThetaComparator::new(format!("psi:{}", gauge.label()), ThetaDomain::UnitSquare, move |t, s| t - psi.apply(s))
        .certified()
}

/// `theta(t, s) = t - s / (s + k (1 - s))`, the Radu comparator.
pub fn theta_radu(k: f64) -> Result<ThetaComparator> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::rejected(format!("radu constant {k} outside (0, 1)")));
    }
    // s + k(1 - s) >= k > 0, so the ratio is 0 at s = 0.
    Ok(
        ThetaComparator::new(format!("radu:{k}"), ThetaDomain::UnitSquare, move |t, s| {
            t - s / (s + k * (1.0 - s))
        })
        .certified(),
    )
}

/// `theta_rho(t, s) = rho((1 - t)/t, (1 - s)/s)` on `(0, 1]^2`. The
/// comparator must be certified scale invariant.
pub fn theta_from_rho(rc: &RhoComparator) -> Result<ThetaComparator> {
    if !rc.scale_invariant() {
        return Err(Error::rejected(format!(
            "scale invariance of `{}` has not been verified",
            rc.label()
        )));
    }
    let rho = rc.clone();
    Ok(ThetaComparator::new(
        format!("rho:{}", rc.label()),
        ThetaDomain::PositiveUnitSquare,
        move |t, s| rho.apply((1.0 - t) / t, (1.0 - s) / s),
    )
    .certified())
}

/// `theta(t, s) = lambda (1 - s)/s - (1 - t)/t`, the Banach comparator.
pub fn theta_banach(lambda: f64) -> Result<ThetaComparator> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::rejected(format!("lambda {lambda} outside [0, 1)")));
    }
    Ok(ThetaComparator::new(
        format!("banach:{lambda}"),
        ThetaDomain::PositiveUnitSquare,
        move |t, s| lambda * (1.0 - s) / s - (1.0 - t) / t,
    )
    .certified())
}

/// `theta(t, s) <= t - s` on the grid points inside `B`.
pub fn check_dominated(theta: &ThetaComparator, grid: &[(f64, f64)]) -> Verdict<(f64, f64)> {
    grid.iter()
        .copied()
        .filter(|&(t, s)| theta.in_domain(t, s))
        .find(|&(t, s)| (theta.value)(t, s) > t - s + ROUNDING_SLACK)
        .into()
}

/// Witness is a grid point of `B` with `theta(t, s) >= 0`, `s > 0` and
/// `t = 0`.
pub fn check_positivity_propagation(theta: &ThetaComparator, grid: &[(f64, f64)]) -> Verdict<(f64, f64)> {
    grid.iter()
        .copied()
        .filter(|&(t, s)| theta.in_domain(t, s))
        .find(|&(t, s)| s > 0.0 && t <= 0.0 && (theta.value)(t, s) >= 0.0)
        .into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F4Status {
    /// `x S* y` or `Tx S* Ty` fails; nothing is required.
    Unguarded,
    /// Type-2 only: `M(x, y, t) = 0`, skipped.
    ZeroDegree,
    Holds,
    Violated,
    /// `(M(Tx, Ty, t), M(x, y, t))` lies outside `B` (an F1 violation).
    OutsideDomain,
}

/// One `(pair, t)` evaluation of the contractivity condition.
#[derive(Clone, Debug, PartialEq)]
pub struct F4Record<P> {
    pub x: P,
    pub y: P,
    pub t: f64,
    /// `M(Tx, Ty, t)`.
    pub phi: f64,
    /// `M(x, y, t)`.
    pub psi: f64,
    pub margin: Option<f64>,
    pub status: F4Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F4Failure {
    F1,
    F4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct F4Witness<P> {
    pub failure: F4Failure,
    pub record: F4Record<P>,
}

/// Everything a contractivity check needs.
pub struct ContractionInstance<'a, P> {
    pub theta: &'a ThetaComparator,
    pub space: &'a FuzzySpace<P>,
    pub relation: &'a Relation<P>,
    pub map: &'a SelfMap<P>,
}

impl<P> Clone for ContractionInstance<'_, P> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<P> Copy for ContractionInstance<'_, P> {}

/// Evaluates the contractivity condition on every sampled pair and every
/// positive grid time. Margins below `-tolerance` count as violations.
pub fn f4_records<P: Point>(
    inst: ContractionInstance<'_, P>,
    pairs: &[(P, P)],
    t_grid: &[f64],
    variant: Variant,
    tolerance: f64,
) -> Result<Vec<F4Record<P>>> {
    let mut records = Vec::with_capacity(pairs.len() * t_grid.len());
    for (index, (x, y)) in pairs.iter().enumerate() {
        let failed = |reason| Error::MapFailed { index, reason };
        let tx = inst.map.apply(x).map_err(failed)?;
        let ty = inst.map.apply(y).map_err(failed)?;
        let guarded = inst.relation.strict(x, y) && inst.relation.strict(&tx, &ty);
        for &t in t_grid.iter().filter(|&&t| t > 0.0) {
            let phi = inst.space.eval(&tx, &ty, t);
            let psi = inst.space.eval(x, y, t);
            let (margin, status) = if !guarded {
                (None, F4Status::Unguarded)
            } else if !inst.theta.in_domain(phi, psi) {
                (None, F4Status::OutsideDomain)
            } else if variant == Variant::Type2 && psi <= 0.0 {
                (None, F4Status::ZeroDegree)
            } else {
                let m = (inst.theta.value)(phi, psi);
                let status = if m >= -tolerance { F4Status::Holds } else { F4Status::Violated };
                (Some(m), status)
            };
            records.push(F4Record {
                x: x.clone(),
                y: y.clone(),
                t,
                phi,
                psi,
                margin,
                status,
            });
        }
    }
    Ok(records)
}

fn first_f4_failure<P>(records: Vec<F4Record<P>>) -> Verdict<F4Witness<P>> {
    records
        .into_iter()
        .find_map(|record| match record.status {
            F4Status::Violated => Some(F4Witness {
                failure: F4Failure::F4,
                record,
            }),
            F4Status::OutsideDomain => Some(F4Witness {
                failure: F4Failure::F1,
                record,
            }),
            _ => None,
        })
        .into()
}

/// Type-1 contractivity (with the F1 domain condition) on the samples.
pub fn check_f4<P: Point>(
    inst: ContractionInstance<'_, P>,
    pairs: &[(P, P)],
    t_grid: &[f64],
    tolerance: f64,
) -> Result<Verdict<F4Witness<P>>> {
    f4_records(inst, pairs, t_grid, Variant::Type1, tolerance).map(first_f4_failure)
}

/// Type-2 contractivity: only required where `M(x, y, t) > 0`.
pub fn check_f4_tilde<P: Point>(
    inst: ContractionInstance<'_, P>,
    pairs: &[(P, P)],
    t_grid: &[f64],
    tolerance: f64,
) -> Result<Verdict<F4Witness<P>>> {
    f4_records(inst, pairs, t_grid, Variant::Type2, tolerance).map(first_f4_failure)
}
