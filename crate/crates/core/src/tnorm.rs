//! Triangular norms.
//!
//! A t-norm is an associative, commutative binary operation on `[0, 1]`,
//! nondecreasing in each argument, with `1` as unit. The four classical
//! norms are built in; arbitrary norms can be wrapped with
//! [`TNorm::custom`]. All checks here are sampled falsifiers.

use crate::degree::MembershipDegree;
use crate::error::{Error, Result};
use crate::sampling::{self, Verdict, LIMIT_TOLERANCE, ROUNDING_SLACK};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Names accepted by [`TNorm::builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["product", "lukasiewicz", "minimum", "drastic"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContinuityClass {
    Continuous,
    OneBoundaryContinuous,
    Unknown,
}

#[derive(Clone)]
enum Op {
    Product,
    Lukasiewicz,
    Minimum,
    Drastic,
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

#[derive(Clone)]
pub struct TNorm {
    name: String,
    op: Op,
    continuity: ContinuityClass,
}

impl fmt::Debug for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TNorm")
            .field("name", &self.name)
            .field("continuity", &self.continuity)
            .finish()
    }
}

impl TNorm {
    pub fn builtin(name: &str) -> Result<Self> {
        let (op, continuity) = match name {
            "product" => (Op::Product, ContinuityClass::Continuous),
            "lukasiewicz" => (Op::Lukasiewicz, ContinuityClass::Continuous),
            "minimum" => (Op::Minimum, ContinuityClass::Continuous),
            "drastic" => (Op::Drastic, ContinuityClass::Unknown),
            other => return Err(Error::rejected(format!("unknown t-norm `{other}`"))),
        };
        Ok(TNorm {
            name: name.into(),
            op,
            continuity,
        })
    }

    pub fn product() -> Self {
        Self::builtin("product").expect("builtin")
    }

    pub fn lukasiewicz() -> Self {
        Self::builtin("lukasiewicz").expect("builtin")
    }

    pub fn minimum() -> Self {
        Self::builtin("minimum").expect("builtin")
    }

    pub fn drastic() -> Self {
        Self::builtin("drastic").expect("builtin")
    }

    /// Wraps an arbitrary operation. The axioms are not checked here; run
    /// [`check_axioms`] on a grid if the origin of `f` is in doubt.
    pub fn custom<F>(name: impl Into<String>, continuity: ContinuityClass, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        TNorm {
            name: name.into(),
            op: Op::Custom(Arc::new(f)),
            continuity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn continuity(&self) -> ContinuityClass {
        self.continuity
    }

    pub fn apply(&self, t: f64, s: f64) -> f64 {
        match &self.op {
            Op::Product => t * s,
            Op::Lukasiewicz => (t + s - 1.0).max(0.0),
            Op::Minimum => t.min(s),
            Op::Drastic => {
                if t < 1.0 && s < 1.0 {
                    0.0
                } else {
                    t.min(s)
                }
            }
            Op::Custom(f) => f(t, s),
        }
    }

    /// `t * s * r`, associated to the left.
    pub fn apply3(&self, t: f64, s: f64, r: f64) -> f64 {
        self.apply(self.apply(t, s), r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TNormAxiom {
    Unit,
    Commutativity,
    Associativity,
    Monotonicity,
}

/// Checks the four t-norm axioms on every pair / triple drawn from `axis`.
/// Witnesses are `(t, s, r)`; `r` is unused for the binary axioms.
pub fn check_axioms(norm: &TNorm, axis: &[f64]) -> Result<Vec<(TNormAxiom, Verdict<(f64, f64, f64)>)>> {
    if axis.is_empty() {
        return Err(Error::rejected("empty grid"));
    }
    let close = |a: f64, b: f64| (a - b).abs() <= ROUNDING_SLACK;
    let unit = axis
        .iter()
        .find(|&&t| !close(norm.apply(t, 1.0), t) || !close(norm.apply(1.0, t), t))
        .map(|&t| (t, 1.0, 0.0));
    let mut comm = None;
    let mut mono = None;
    let mut assoc = None;
    for &t in axis {
        for &s in axis {
            if comm.is_none() && !close(norm.apply(t, s), norm.apply(s, t)) {
                comm = Some((t, s, 0.0));
            }
            for &r in axis {
                // (t, s, r) read as: t <= s implies t*r <= s*r
                if mono.is_none() && t <= s && norm.apply(t, r) > norm.apply(s, r) + ROUNDING_SLACK {
                    mono = Some((t, s, r));
                }
                if assoc.is_none()
                    && !close(norm.apply(norm.apply(t, s), r), norm.apply(t, norm.apply(s, r)))
                {
                    assoc = Some((t, s, r));
                }
            }
        }
    }
    Ok(alloc::vec![
        (TNormAxiom::Unit, unit.into()),
        (TNormAxiom::Commutativity, comm.into()),
        (TNormAxiom::Associativity, assoc.into()),
        (TNormAxiom::Monotonicity, mono.into()),
    ])
}

/// Whether `lo <= hi` pointwise on `grid`; the witness is the first
/// violating pair in grid order.
pub fn check_order(lo: &TNorm, hi: &TNorm, grid: &[(f64, f64)]) -> Result<Verdict<(f64, f64)>> {
    if grid.is_empty() {
        return Err(Error::rejected("empty grid"));
    }
    Ok(grid
        .iter()
        .copied()
        .find(|&(t, s)| lo.apply(t, s) > hi.apply(t, s))
        .into())
}

/// Result of [`check_boundary_continuity`], carrying the sampling used.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryContinuity {
    /// Witness on failure is the `s` at which `(1 - 1/n) * s` does not
    /// approach `s`.
    pub verdict: Verdict<f64>,
    pub s_grid: Vec<f64>,
    pub n_max: usize,
}

/// Falsifies continuity at the points `(1, s)` by following `t_n = 1 - 1/n`,
/// `n = 2..=n_max`, and testing whether `t_n * s` approaches `s`.
pub fn check_boundary_continuity(
    norm: &TNorm,
    s_grid: &[f64],
    n_max: usize,
    tolerance: f64,
) -> Result<BoundaryContinuity> {
    if n_max < 2 {
        return Err(Error::rejected("n_max must be at least 2"));
    }
    if let Some(s) = s_grid.iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(Error::rejected(format!("s = {s} outside [0, 1]")));
    }
    let failing = s_grid.iter().copied().find(|&s| {
        let errors: Vec<f64> = (2..=n_max)
            .map(|n| (norm.apply(1.0 - 1.0 / n as f64, s) - s).abs())
            .collect();
        !sampling::settles(&errors, tolerance)
    });
    Ok(BoundaryContinuity {
        verdict: failing.into(),
        s_grid: s_grid.to_vec(),
        n_max,
    })
}

/// Five sequences `a, b, c, d, e` with `a_n >= b_n * c_n * d_n >= e_n`.
#[derive(Clone, Debug, Default)]
pub struct Sandwich {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitOptions {
    /// Tolerance for the conclusion `c_n -> L`.
    pub tolerance: f64,
    /// Tolerance for the hypotheses `a_n, e_n -> L` and `b_n, d_n -> 1`.
    /// Looser than `tolerance` so that slowly converging (e.g. `1/n`) inputs
    /// can be supplied as finite prefixes.
    pub precondition_tolerance: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            tolerance: LIMIT_TOLERANCE,
            precondition_tolerance: 1e-2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CancellationReport {
    /// Whether the tail of `c` lies within tolerance of `L`.
    pub holds: bool,
    /// Largest `|c_n - L|` over the tail.
    pub c_tail_residual: f64,
    pub c_last: f64,
}

/// Tests whether `c_n -> L` for a sandwich satisfying the cancellation
/// hypotheses under `norm`.
pub fn check_cancellation(
    norm: &TNorm,
    seqs: &Sandwich,
    limit: MembershipDegree,
    opts: &LimitOptions,
) -> Result<CancellationReport> {
    let len = seqs.a.len();
    if len == 0 {
        return Err(Error::rejected("empty sequences"));
    }
    let all = [&seqs.a, &seqs.b, &seqs.c, &seqs.d, &seqs.e];
    if all.iter().any(|s| s.len() != len) {
        return Err(Error::rejected("sequences must have equal length"));
    }
    if all.iter().any(|s| s.iter().any(|v| !(0.0..=1.0).contains(v))) {
        return Err(Error::rejected("sequence term outside [0, 1]"));
    }
    for n in 0..len {
        let middle = norm.apply(seqs.b[n], norm.apply(seqs.c[n], seqs.d[n]));
        if seqs.a[n] + ROUNDING_SLACK < middle || middle + ROUNDING_SLACK < seqs.e[n] {
            return Err(Error::SandwichViolated { index: n });
        }
    }
    let l = limit.value();
    let pre = opts.precondition_tolerance;
    for (name, seq, target) in [
        ("a -> L", &seqs.a, l),
        ("b -> 1", &seqs.b, 1.0),
        ("d -> 1", &seqs.d, 1.0),
        ("e -> L", &seqs.e, l),
    ] {
        if !sampling::tail_within(seq, target, pre) {
            return Err(Error::rejected(format!("limit hypothesis `{name}` not met")));
        }
    }
    let c_tail_residual = sampling::tail_residual(&seqs.c, l);
    Ok(CancellationReport {
        holds: c_tail_residual <= opts.tolerance,
        c_tail_residual,
        c_last: seqs.c[len - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{square_grid, unit_grid};
    use alloc::vec;

    #[test]
    fn builtin_values() {
        assert_eq!(TNorm::product().apply(0.5, 0.4), 0.2);
        assert!((TNorm::lukasiewicz().apply(0.7, 0.6) - 0.3).abs() < 1e-15);
        assert_eq!(TNorm::drastic().apply(0.9, 0.8), 0.0);
        assert_eq!(TNorm::minimum().apply(0.9, 0.8), 0.8);
        for name in BUILTIN_NAMES {
            let n = TNorm::builtin(name).unwrap();
            for t in unit_grid(11) {
                assert!((n.apply(t, 1.0) - t).abs() < 1e-15, "{name} at {t}");
            }
        }
    }

    #[test]
    fn continuity_metadata() {
        assert_eq!(TNorm::drastic().continuity(), ContinuityClass::Unknown);
        assert_eq!(TNorm::product().continuity(), ContinuityClass::Continuous);
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(TNorm::builtin("hamacher"), Err(Error::Rejected(_))));
    }

    #[test]
    fn order_examples() {
        let g = square_grid(21);
        assert!(check_order(&TNorm::drastic(), &TNorm::product(), &g).unwrap().passed());
        assert!(check_order(&TNorm::product(), &TNorm::product(), &g).unwrap().passed());
        let v = check_order(&TNorm::minimum(), &TNorm::drastic(), &g).unwrap();
        let (t, s) = *v.witness().unwrap();
        assert!(TNorm::minimum().apply(t, s) > TNorm::drastic().apply(t, s));
        let at_half = check_order(&TNorm::minimum(), &TNorm::drastic(), &[(0.5, 0.5)]).unwrap();
        assert_eq!(at_half, Verdict::Fail((0.5, 0.5)));
        assert!(check_order(&TNorm::minimum(), &TNorm::drastic(), &[]).is_err());
    }

    #[test]
    fn boundary_continuity_examples() {
        let grid = unit_grid(21);
        for name in ["product", "minimum", "lukasiewicz"] {
            let r = check_boundary_continuity(&TNorm::builtin(name).unwrap(), &grid, 64, 1e-9).unwrap();
            assert!(r.verdict.passed(), "{name}");
        }
        let r = check_boundary_continuity(&TNorm::drastic(), &[0.5], 64, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Fail(0.5));
        assert!(check_boundary_continuity(&TNorm::product(), &grid, 1, 1e-9).is_err());
    }

    fn seq(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (1..=n).map(|k| f(k as f64)).collect()
    }

    #[test]
    fn cancellation_product_example() {
        let n = 1000;
        let s = Sandwich {
            a: seq(n, |k| 0.5 * (1.0 - 1.0 / k) * (1.0 - 1.0 / k)),
            b: seq(n, |k| 1.0 - 1.0 / k),
            c: vec![0.5; n],
            d: seq(n, |k| 1.0 - 1.0 / k),
            e: seq(n, |k| 0.5 * (1.0 - 1.0 / k) * (1.0 - 1.0 / k)),
        };
        let limit = MembershipDegree::new(0.5).unwrap();
        let r = check_cancellation(&TNorm::product(), &s, limit, &LimitOptions::default()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn cancellation_fails_for_drastic() {
        let n = 1000;
        let s = Sandwich {
            a: vec![0.0; n],
            b: seq(n, |k| 1.0 - 1.0 / k),
            c: vec![0.5; n],
            d: seq(n, |k| 1.0 - 1.0 / k),
            e: vec![0.0; n],
        };
        let r = check_cancellation(&TNorm::drastic(), &s, MembershipDegree::ZERO, &LimitOptions::default())
            .unwrap();
        assert!(!r.holds);
        assert_eq!(r.c_tail_residual, 0.5);
    }

    #[test]
    fn cancellation_constant_sequences() {
        for name in BUILTIN_NAMES {
            let s = Sandwich {
                a: vec![0.3; 20],
                b: vec![1.0; 20],
                c: vec![0.3; 20],
                d: vec![1.0; 20],
                e: vec![0.3; 20],
            };
            let norm = TNorm::builtin(name).unwrap();
            let limit = MembershipDegree::new(0.3).unwrap();
            assert!(check_cancellation(&norm, &s, limit, &LimitOptions::default()).unwrap().holds);
        }
    }

    #[test]
    fn sandwich_violation_reports_index() {
        let s = Sandwich {
            a: vec![0.3, 0.1, 0.3],
            b: vec![1.0; 3],
            c: vec![0.3; 3],
            d: vec![1.0; 3],
            e: vec![0.3; 3],
        };
        let err = check_cancellation(&TNorm::product(), &s, MembershipDegree::new(0.3).unwrap(), &LimitOptions::default());
        assert_eq!(err, Err(Error::SandwichViolated { index: 1 }));
    }

    #[test]
    fn axioms_hold_for_builtins() {
        let axis = unit_grid(21);
        for name in BUILTIN_NAMES {
            for (axiom, verdict) in check_axioms(&TNorm::builtin(name).unwrap(), &axis).unwrap() {
                assert!(verdict.passed(), "{name} {axiom:?}");
            }
        }
    }

    #[test]
    fn axioms_catch_a_non_norm() {
        let mean = TNorm::custom("mean", ContinuityClass::Continuous, |t, s| (t + s) / 2.0);
        let reports = check_axioms(&mean, &unit_grid(5)).unwrap();
        assert!(!reports[0].1.passed());
    }
}
