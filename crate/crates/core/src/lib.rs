//! Fuzzy metric spaces and a Picard fixed-point engine for fuzzy ample
//! spectrum contractions.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is pure: spaces,
//! t-norms, relations and comparators are immutable values built from
//! shareable closures, and every universally quantified property is checked
//! as a *falsifier* over finite samples. A passing check means "no
//! counterexample on this grid", never a proof.
//!
//! Module map:
//!
//! * [`tnorm`] - triangular norms, ordering, 1-boundary continuity and the
//!   cancellation property.
//! * [`space`] - fuzzy spaces `(X, M)`, canonical constructions and sampled
//!   KM / GV / non-Archimedean axiom checks.
//! * [`relation`] - binary relations, strict companions, alpha-admissibility.
//! * [`contraction`] - theta comparators, psi / rho lifts and the F1 / F4
//!   family of checks.
//! * [`sequences`] - Picard orbits, (T, S*, M)-sequences, asymptotic
//!   regularity and the property-NC witness extractor.
//! * [`solver`] - the hypothesis-auditing Picard solver and uniqueness probe.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod contraction;
pub mod degree;
pub mod error;
pub mod map;
pub mod point;
pub mod relation;
pub mod sampling;
pub mod sequences;
pub mod solver;
pub mod space;
pub mod tnorm;

pub use contraction::{PsiGauge, RhoComparator, ThetaComparator, Variant};
pub use degree::MembershipDegree;
pub use error::{Error, Result};
pub use map::SelfMap;
pub use point::Point;
pub use relation::Relation;
pub use sampling::Verdict;
pub use sequences::{NcWitness, PicardOrbit, TsmSequence};
pub use solver::{Outcome, Problem, SolveOptions, SolveResult, TerminationMode};
pub use space::{AxiomReport, FuzzySpace};
pub use tnorm::TNorm;
