use crate::error::{Error, Result};
use alloc::format;

/// A real number in `[0, 1]`, the codomain of every fuzzy metric.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct MembershipDegree(f64);

impl MembershipDegree {
    pub const ZERO: MembershipDegree = MembershipDegree(0.0);
    pub const ONE: MembershipDegree = MembershipDegree(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(MembershipDegree(value))
        } else {
            Err(Error::rejected(format!("{value} is not a membership degree")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for MembershipDegree {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        MembershipDegree::new(value)
    }
}

impl From<MembershipDegree> for f64 {
    fn from(d: MembershipDegree) -> f64 {
        d.0
    }
}
