use alloc::vec::Vec;
use core::fmt::Debug;

/// Absolute tolerance used to decide equality of floating-point points.
pub const FLOAT_POINT_TOLERANCE: f64 = 1e-12;

/// A point of the underlying set `X`.
///
/// `same` must be decidable: exact for discrete domains, within
/// [`FLOAT_POINT_TOLERANCE`] for floating ones. `gap` is the point-domain
/// residual the solver uses to watch an orbit stabilise.
pub trait Point: Clone + Debug + Send + Sync + 'static {
    fn same(&self, other: &Self) -> bool;

    fn gap(&self, other: &Self) -> f64;
}

impl Point for f64 {
    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_POINT_TOLERANCE
    }

    fn gap(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl Point for i64 {
    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn gap(&self, other: &Self) -> f64 {
        (*self as f64 - *other as f64).abs()
    }
}

impl Point for Vec<f64> {
    fn same(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .iter()
                .zip(other)
                .all(|(a, b)| (a - b).abs() <= FLOAT_POINT_TOLERANCE)
    }

    fn gap(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        libm::sqrt(self.iter().zip(other).map(|(a, b)| (a - b) * (a - b)).sum())
    }
}
