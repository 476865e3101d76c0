//! Finite sampling helpers shared by every falsifier in the crate.

use alloc::vec::Vec;

/// Outcome of a sampled check: no counterexample on the grid, or the first
/// counterexample found in scan order.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(witness: Option<W>) -> Self {
        match witness {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }
}

/// Absolute tolerance for limit tests.
pub const LIMIT_TOLERANCE: f64 = 1e-9;

/// Slack used when comparing two evaluations that are equal in exact
/// arithmetic (axiom inequalities, symmetry).
pub const ROUNDING_SLACK: f64 = 1e-12;

/// Minimum number of terms in a tail.
pub const MIN_TAIL: usize = 5;

/// Length of the tail of a sequence of `len` terms: the last 10%, at least
/// [`MIN_TAIL`] terms (or the whole sequence when shorter).
pub fn tail_len(len: usize) -> usize {
    len.div_ceil(10).max(MIN_TAIL).min(len)
}

pub fn tail<T>(values: &[T]) -> &[T] {
    &values[values.len() - tail_len(values.len())..]
}

/// Largest `|v - target|` over the tail of `values`.
pub fn tail_residual(values: &[f64], target: f64) -> f64 {
    tail(values)
        .iter()
        .map(|v| (v - target).abs())
        .fold(0.0, f64::max)
}

/// Whether the tail of `values` lies within `tolerance` of `target`.
pub fn tail_within(values: &[f64], target: f64, tolerance: f64) -> bool {
    !values.is_empty() && tail_residual(values, target) <= tolerance
}

/// Decides whether an error sequence `e_n = |f(a_n) - f(a)|`, collected
/// along an approach sequence `a_n -> a`, tends to zero.
///
/// Passes when the last error is already within `tolerance`, or when the
/// tail is nonincreasing and the last error is at most three quarters of
/// the error halfway along. A `1/n` decay halves over that stretch; a jump
/// discontinuity keeps the error flat and fails.
pub fn settles(errors: &[f64], tolerance: f64) -> bool {
    let Some(&last) = errors.last() else {
        return true;
    };
    if last <= tolerance {
        return true;
    }
    let nonincreasing = tail(errors).windows(2).all(|w| w[1] <= w[0] + tolerance);
    nonincreasing && last <= 0.75 * errors[errors.len() / 2]
}

/// `points` equally spaced values covering `[0, 1]`, both ends included.
pub fn unit_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..points)
            .map(|i| i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Cartesian square of [`unit_grid`], row-major.
pub fn square_grid(points: usize) -> Vec<(f64, f64)> {
    let axis = unit_grid(points);
    let mut grid = Vec::with_capacity(axis.len() * axis.len());
    for &t in &axis {
        for &s in &axis {
            grid.push((t, s));
        }
    }
    grid
}

/// All unordered pairs `(p_i, p_j)` with `i < j`.
pub fn distinct_pairs<P: Clone>(points: &[P]) -> Vec<(P, P)> {
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairs.push((points[i].clone(), points[j].clone()));
        }
    }
    pairs
}
