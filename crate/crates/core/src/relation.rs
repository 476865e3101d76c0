//! Binary relations on the point domain.
//!
//! Relations are extensional predicates. The strict companion
//! `x S* y  <=>  x S y and x != y` is always derived from the predicate and
//! the point equality, never stored.

use crate::error::{Error, Result};
use crate::map::SelfMap;
use crate::point::Point;
use crate::sampling::Verdict;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

pub struct Relation<P> {
    label: String,
    holds: Arc<dyn Fn(&P, &P) -> bool + Send + Sync>,
}

impl<P> Clone for Relation<P> {
    fn clone(&self) -> Self {
        Relation {
            label: self.label.clone(),
            holds: Arc::clone(&self.holds),
        }
    }
}

impl<P> fmt::Debug for Relation<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation").field("label", &self.label).finish()
    }
}

impl<P: Point> Relation<P> {
    pub fn new<F>(label: impl Into<String>, holds: F) -> Self
    where
        F: Fn(&P, &P) -> bool + Send + Sync + 'static,
    {
        Relation {
            label: label.into(),
            holds: Arc::new(holds),
        }
    }

    /// The trivial relation: every pair is related.
    pub fn trivial() -> Self {
        Self::new("trivial", |_, _| true)
    }

    /// `x S y  <=>  alpha(x, y) >= 1`.
    pub fn from_alpha<F>(label: impl Into<String>, alpha: F) -> Self
    where
        F: Fn(&P, &P) -> f64 + Send + Sync + 'static,
    {
        Self::new(label, move |x, y| alpha(x, y) >= 1.0)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn holds(&self, x: &P, y: &P) -> bool {
        (self.holds)(x, y)
    }

    pub fn strict(&self, x: &P, y: &P) -> bool {
        !x.same(y) && self.holds(x, y)
    }

    pub fn comparable(&self, x: &P, y: &P) -> bool {
        self.holds(x, y) || self.holds(y, x)
    }
}

impl Relation<f64> {
    /// The usual order on the reals.
    pub fn leq_reals() -> Self {
        Self::new("leq_reals", |x: &f64, y: &f64| x <= y)
    }
}

/// Exhaustive transitivity check on the sampled triples.
pub fn is_transitive<P: Point>(rel: &Relation<P>, points: &[P]) -> Result<Verdict<(P, P, P)>> {
    if points.len() < 3 {
        return Err(Error::rejected("at least 3 sample points are required"));
    }
    for x in points {
        for y in points {
            if !rel.holds(x, y) {
                continue;
            }
            for z in points {
                if rel.holds(y, z) && !rel.holds(x, z) {
                    return Ok(Verdict::Fail((x.clone(), y.clone(), z.clone())));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Checks that `x S y` implies `Tx S Ty` on all sampled pairs. Map failures
/// are reported as `Error::MapFailed` with the sample index.
pub fn nondecreasing_map<P: Point>(rel: &Relation<P>, map: &SelfMap<P>, points: &[P]) -> Result<Verdict<(P, P)>> {
    let images = points
        .iter()
        .enumerate()
        .map(|(index, x)| map.apply(x).map_err(|reason| Error::MapFailed { index, reason }))
        .collect::<Result<alloc::vec::Vec<P>>>()?;
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if rel.holds(x, y) && !rel.holds(&images[i], &images[j]) {
                return Ok(Verdict::Fail((x.clone(), y.clone())));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Named alpha functions for alpha-admissible mappings.
pub mod alpha {
    /// `alpha = 1` everywhere; induces the trivial relation.
    pub fn one(_: &f64, _: &f64) -> f64 {
        1.0
    }

    /// `alpha(x, y) = 2` when `x <= y`, else 0; induces the usual order.
    pub fn leq(x: &f64, y: &f64) -> f64 {
        if x <= y {
            2.0
        } else {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::real;

    #[test]
    fn trivial_relation() {
        let r = Relation::<f64>::trivial();
        assert!(r.holds(&1.0, &-4.0));
        assert!(!r.strict(&2.0, &2.0));
        assert!(r.strict(&2.0, &3.0));
        assert!(is_transitive(&r, &[0.0, 1.0, 2.0]).unwrap().passed());
        assert!(nondecreasing_map(&r, &real::affine(-1.0, 0.0), &[0.0, 1.0, 2.0]).unwrap().passed());
    }

    #[test]
    fn alpha_relations() {
        let one = Relation::from_alpha("one", alpha::one);
        let leq = Relation::from_alpha("leq", alpha::leq);
        let samples = [-1.0, 0.0, 0.5, 3.0];
        for x in samples {
            for y in samples {
                assert!(one.holds(&x, &y));
                assert_eq!(leq.holds(&x, &y), x <= y);
            }
        }
        assert!(is_transitive(&leq, &samples).unwrap().passed());
    }

    #[test]
    fn successor_is_not_transitive() {
        let succ = Relation::new("succ", |x: &i64, y: &i64| *y == *x + 1);
        let v = is_transitive(&succ, &[0, 1, 2]).unwrap();
        assert_eq!(v, Verdict::Fail((0, 1, 2)));
        assert!(is_transitive(&succ, &[0, 1]).is_err());
    }

    #[test]
    fn nondecreasing_examples() {
        let leq = Relation::leq_reals();
        let pts = [0.0, 1.0, 2.0, 5.0];
        assert!(nondecreasing_map(&leq, &real::banach_ln(0.5), &pts).unwrap().passed());
        let v = nondecreasing_map(&leq, &real::affine(-1.0, 0.0), &pts).unwrap();
        assert_eq!(v, Verdict::Fail((0.0, 1.0)));
        let err = nondecreasing_map(&leq, &real::banach_ln(0.5), &[0.0, -3.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::MapFailed { index: 1, .. }));
    }

    #[test]
    fn comparability() {
        let leq = Relation::leq_reals();
        assert!(leq.comparable(&3.0, &1.0));
        let none = Relation::new("none", |_: &f64, _: &f64| false);
        assert!(!none.comparable(&3.0, &1.0));
    }
}
