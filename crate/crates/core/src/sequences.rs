//! Picard orbits, `(T, S*, M)`-sequences and the property-NC extractor.
//!
//! Sequences are indexed from 0 throughout. Limits are read off finite
//! prefixes as tail residuals, so every verdict here is empirical.

use crate::contraction::{ContractionInstance, ThetaComparator};
use crate::error::{Error, Result};
use crate::map::SelfMap;
use crate::point::Point;
use crate::relation::Relation;
use crate::sampling::{self, Verdict, ROUNDING_SLACK};
use crate::space::{self, FuzzySpace};
use alloc::string::String;
use alloc::vec::Vec;

/// Shortest orbit on which asymptotic regularity is judged.
pub const MIN_REGULARITY_LEN: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitClass {
    /// No repeat on the computed prefix.
    InfiniteOnPrefix,
    /// `x_{start + period} = x_start` for some `period >= 2`.
    AlmostPeriodic { start: usize, period: usize },
    /// `x_n = x_from` for every recorded `n >= from`.
    EventuallyConstant { from: usize },
}

impl OrbitClass {
    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::InfiniteOnPrefix => "infinite_on_prefix",
            OrbitClass::AlmostPeriodic { .. } => "almost_periodic",
            OrbitClass::EventuallyConstant { .. } => "eventually_constant",
        }
    }

    /// Eventual constancy is the period-1 case of almost periodicity.
    pub fn is_almost_periodic(self) -> bool {
        !matches!(self, OrbitClass::InfiniteOnPrefix)
    }
}

#[derive(Clone, Debug)]
pub struct PicardOrbit<P> {
    pub points: Vec<P>,
    pub map_label: String,
    pub class: OrbitClass,
}

impl<P: Point> PicardOrbit<P> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// First `(j, i)` with `j < i` and `x_i = x_j`.
fn first_repeat<P: Point>(points: &[P]) -> Option<(usize, usize)> {
    (1..points.len()).find_map(|i| (0..i).rev().find(|&j| points[i].same(&points[j])).map(|j| (j, i)))
}

fn classify<P: Point>(points: &[P]) -> OrbitClass {
    match first_repeat(points) {
        None => OrbitClass::InfiniteOnPrefix,
        Some((j, i)) if i - j == 1 => OrbitClass::EventuallyConstant { from: j },
        Some((j, i)) => OrbitClass::AlmostPeriodic {
            start: j,
            period: i - j,
        },
    }
}

/// The first `n_terms` terms of `x_{n+1} = T x_n`.
pub fn picard<P: Point>(map: &SelfMap<P>, x0: P, n_terms: usize) -> Result<PicardOrbit<P>> {
    if n_terms < 2 {
        return Err(Error::rejected("an orbit needs at least 2 terms"));
    }
    let mut points = Vec::with_capacity(n_terms);
    points.push(x0);
    for index in 0..n_terms - 1 {
        let next = map
            .apply(&points[index])
            .map_err(|reason| Error::MapFailed { index, reason })?;
        points.push(next);
    }
    let class = classify(&points);
    Ok(PicardOrbit {
        points,
        map_label: String::from(map.label()),
        class,
    })
}

/// The constant tail value when the orbit is eventually constant at a
/// fixed point of `map`.
pub fn extract_fixed_point_if_constant<P: Point>(orbit: &PicardOrbit<P>, map: &SelfMap<P>) -> Option<P> {
    let OrbitClass::EventuallyConstant { from } = orbit.class else {
        return None;
    };
    let z = &orbit.points[from];
    if from + 1 >= orbit.len() || !orbit.points[from..].iter().all(|x| x.same(z)) {
        return None;
    }
    match map.apply(z) {
        Ok(tz) if tz.same(z) => Some(z.clone()),
        _ => None,
    }
}

/// Whether `M(x_n, x_{n+1}, t)` has a tail within `tolerance` of 1 for
/// every positive grid time.
pub fn asymptotically_regular<P: Point>(
    space: &FuzzySpace<P>,
    points: &[P],
    t_grid: &[f64],
    tolerance: f64,
) -> Result<bool> {
    if points.len() < MIN_REGULARITY_LEN {
        return Err(Error::precondition("orbit length at least 10"));
    }
    Ok(t_grid.iter().filter(|&&t| t > 0.0).all(|&t| {
        let steps: Vec<f64> = points.windows(2).map(|w| space.eval(&w[0], &w[1], t)).collect();
        sampling::tail_within(&steps, 1.0, tolerance)
    }))
}

/// A `(T, S*, M)`-sequence together with the points it was built from.
#[derive(Clone, Debug)]
pub struct TsmSequence<P> {
    space: FuzzySpace<P>,
    xs: Vec<P>,
    ys: Vec<P>,
    txs: Vec<P>,
    tys: Vec<P>,
}

impl<P: Point> TsmSequence<P> {
    /// Checks `x_n S* y_n` and `T x_n S* T y_n` for every `n`.
    pub fn new(
        space: &FuzzySpace<P>,
        relation: &Relation<P>,
        map: &SelfMap<P>,
        xs: Vec<P>,
        ys: Vec<P>,
    ) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::rejected("x and y sequences must be nonempty and of equal length"));
        }
        let mut txs = Vec::with_capacity(xs.len());
        let mut tys = Vec::with_capacity(ys.len());
        for (index, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if !relation.strict(x, y) {
                return Err(Error::clause("x_n S* y_n", index));
            }
            let failed = |reason| Error::MapFailed { index, reason };
            let tx = map.apply(x).map_err(failed)?;
            let ty = map.apply(y).map_err(failed)?;
            if !relation.strict(&tx, &ty) {
                return Err(Error::clause("Tx_n S* Ty_n", index));
            }
            txs.push(tx);
            tys.push(ty);
        }
        Ok(TsmSequence {
            space: space.clone(),
            xs,
            ys,
            txs,
            tys,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[P] {
        &self.xs
    }

    pub fn ys(&self) -> &[P] {
        &self.ys
    }

    /// `phi_n(t) = M(T x_n, T y_n, t)`.
    pub fn phi(&self, n: usize, t: f64) -> f64 {
        self.space.eval(&self.txs[n], &self.tys[n], t)
    }

    /// `psi_n(t) = M(x_n, y_n, t)`.
    pub fn psi(&self, n: usize, t: f64) -> f64 {
        self.space.eval(&self.xs[n], &self.ys[n], t)
    }

    pub fn phis(&self, t: f64) -> Vec<f64> {
        (0..self.len()).map(|n| self.phi(n, t)).collect()
    }

    pub fn psis(&self, t: f64) -> Vec<f64> {
        (0..self.len()).map(|n| self.psi(n, t)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NcOptions {
    pub eps_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    /// Tolerance for the asymptotic-regularity precondition.
    pub regularity_tolerance: f64,
    /// Fewest interleaved index pairs that count as a witness.
    pub min_pairs: usize,
}

impl Default for NcOptions {
    fn default() -> Self {
        NcOptions {
            eps_grid: alloc::vec![0.1, 0.25, 0.5, 0.75],
            t_grid: space::DEFAULT_T_GRID.to_vec(),
            regularity_tolerance: 0.02,
            min_pairs: 5,
        }
    }
}

/// Interleaved indices `n(k) < m(k) < n(k+1)` exhibiting property NC for
/// `(eps0, t0)` on a finite prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct NcWitness {
    pub eps0: f64,
    pub t0: f64,
    pub n_k: Vec<usize>,
    pub m_k: Vec<usize>,
    /// `M(x_{n(k)}, x_{m(k)}, t0)`.
    pub outer: Vec<f64>,
    /// `M(x_{n(k)-1}, x_{m(k)-1}, t0)`.
    pub inner: Vec<f64>,
    /// Tail residual of `outer` against `1 - eps0`.
    pub limit_gap_outer: f64,
    /// Tail residual of `inner` against `1 - eps0`.
    pub limit_gap_inner: f64,
}

impl NcWitness {
    pub fn threshold(&self) -> f64 {
        1.0 - self.eps0
    }

    pub fn pairs(&self) -> usize {
        self.n_k.len()
    }

    /// Re-checks interleaving and both displayed inequalities on `seq`.
    pub fn verify<P: Point>(&self, space: &FuzzySpace<P>, seq: &[P]) -> bool {
        let bound = self.threshold();
        let len = self.n_k.len();
        if len != self.m_k.len() {
            return false;
        }
        (0..len).all(|k| {
            let (n, m) = (self.n_k[k], self.m_k[k]);
            let interleaved = k < n && n < m && m < seq.len() && self.n_k.get(k + 1).is_none_or(|&next| m < next);
            interleaved
                && space.eval(&seq[n], &seq[m - 1], self.t0) > bound
                && space.eval(&seq[n], &seq[m], self.t0) <= bound
        })
    }
}

/// Greedy canonical indices for one `(eps, t)`: `n(k)` is the smallest
/// index after `m(k-1)` with a later violation and `m(k)` the least such
/// violation.
fn interleave<P: Point>(space: &FuzzySpace<P>, seq: &[P], bound: f64, t: f64) -> (Vec<usize>, Vec<usize>) {
    let (mut n_k, mut m_k) = (Vec::new(), Vec::new());
    let mut n = 1;
    while n + 1 < seq.len() {
        match (n + 1..seq.len()).find(|&m| space.eval(&seq[n], &seq[m], t) <= bound) {
            Some(m) => {
                n_k.push(n);
                m_k.push(m);
                n = m + 1;
            }
            None => n += 1,
        }
    }
    (n_k, m_k)
}

/// Searches `eps_grid x t_grid` (in that order) for a property-NC witness.
///
/// Rejects sequences that are not asymptotically regular or that look
/// Cauchy over their second half. `Ok(None)` means no grid pair produced
/// `min_pairs` interleaved indices.
pub fn extract_nc_witness<P: Point>(space: &FuzzySpace<P>, seq: &[P], opts: &NcOptions) -> Result<Option<NcWitness>> {
    if !asymptotically_regular(space, seq, &opts.t_grid, opts.regularity_tolerance)? {
        return Err(Error::precondition("asymptotic regularity"));
    }
    let cauchy = space::empirically_cauchy(space, seq, &opts.eps_grid, &opts.t_grid, seq.len() / 2)?;
    if cauchy.passed() {
        return Err(Error::precondition("not Cauchy"));
    }
    for &eps0 in &opts.eps_grid {
        for &t0 in opts.t_grid.iter().filter(|&&t| t > 0.0) {
            let bound = 1.0 - eps0;
            let (n_k, m_k) = interleave(space, seq, bound, t0);
            if n_k.len() < opts.min_pairs.max(1) {
                continue;
            }
            let outer: Vec<f64> = n_k.iter().zip(&m_k).map(|(&n, &m)| space.eval(&seq[n], &seq[m], t0)).collect();
            let inner: Vec<f64> = n_k
                .iter()
                .zip(&m_k)
                .map(|(&n, &m)| space.eval(&seq[n - 1], &seq[m - 1], t0))
                .collect();
            return Ok(Some(NcWitness {
                eps0,
                t0,
                limit_gap_outer: sampling::tail_residual(&outer, bound),
                limit_gap_inner: sampling::tail_residual(&inner, bound),
                n_k,
                m_k,
                outer,
                inner,
            }));
        }
    }
    Ok(None)
}

/// Runs [`extract_nc_witness`] on growing prefixes of `seq`.
pub fn nc_window_trend<P: Point>(
    space: &FuzzySpace<P>,
    seq: &[P],
    windows: &[usize],
    opts: &NcOptions,
) -> Result<Vec<(usize, Option<NcWitness>)>> {
    windows
        .iter()
        .map(|&w| {
            if w > seq.len() {
                return Err(Error::rejected("window longer than the sequence"));
            }
            extract_nc_witness(space, &seq[..w], opts).map(|found| (w, found))
        })
        .collect()
}

/// `x_n = 1 + 1/2 + ... + 1/(n + 1)`: regular but not Cauchy in `M^d`.
pub fn harmonic_partial_sums(len: usize) -> Vec<f64> {
    let mut sum = 0.0;
    (1..=len)
        .map(|j| {
            sum += 1.0 / j as f64;
            sum
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceCondition {
    F2,
    F2Prime,
    F3,
    F5,
    F2Tilde,
    F2PrimeTilde,
    F5Tilde,
}

impl SequenceCondition {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "F2" => SequenceCondition::F2,
            "F2'" => SequenceCondition::F2Prime,
            "F3" => SequenceCondition::F3,
            "F5" => SequenceCondition::F5,
            "F2~" => SequenceCondition::F2Tilde,
            "F2'~" => SequenceCondition::F2PrimeTilde,
            "F5~" => SequenceCondition::F5Tilde,
            _ => return None,
        })
    }

    fn tilde(self) -> bool {
        matches!(
            self,
            SequenceCondition::F2Tilde | SequenceCondition::F2PrimeTilde | SequenceCondition::F5Tilde
        )
    }
}

/// A witness offered to [`falsify_sequence_condition`].
#[derive(Clone, Debug)]
pub enum WitnessBundle<P> {
    /// A Picard orbit (for F2 and its tilde form).
    Picard { points: Vec<P> },
    /// Two Picard orbits (for F2').
    PicardPair { xs: Vec<P>, ys: Vec<P> },
    /// Points of a `(T, S*, M)`-sequence (for F5).
    Tsm { xs: Vec<P>, ys: Vec<P> },
    /// A `(T, S*, M)`-sequence with the time and common limit claimed by
    /// the F3 hypothesis.
    TsmLimit { xs: Vec<P>, ys: Vec<P>, t0: f64, limit: f64 },
}

/// Where the conclusion failed.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceCounterexample {
    pub witness: usize,
    pub t: f64,
    /// Observed tail residual of the sequence that should tend to 1 (for
    /// F3, `1 - L`).
    pub residual: f64,
}

fn margin(theta: &ThetaComparator, phi: f64, psi: f64, index: usize) -> Result<f64> {
    theta.value(phi, psi).map_err(|_| Error::clause("(phi, psi) in B", index))
}

fn check_contractive(theta: &ThetaComparator, phis: &[f64], psis: &[f64]) -> Result<()> {
    for (index, (&phi, &psi)) in phis.iter().zip(psis).enumerate() {
        if margin(theta, phi, psi, index)? < -ROUNDING_SLACK {
            return Err(Error::clause("theta(phi_n, psi_n) >= 0", index));
        }
    }
    Ok(())
}

fn check_positive(values: &[f64], clause: &str) -> Result<()> {
    match values.iter().position(|&v| v <= 0.0) {
        Some(index) => Err(Error::clause(clause, index)),
        None => Ok(()),
    }
}

fn check_picard<P: Point>(map: &SelfMap<P>, points: &[P]) -> Result<()> {
    for index in 0..points.len().saturating_sub(1) {
        let next = map
            .apply(&points[index])
            .map_err(|reason| Error::MapFailed { index, reason })?;
        if !next.same(&points[index + 1]) {
            return Err(Error::clause("x_{n+1} = T x_n", index));
        }
    }
    Ok(())
}

/// Validates each witness against the hypotheses of `condition` and tests
/// its conclusion. A failing conclusion shows the instance is not a
/// contraction of the corresponding type.
pub fn falsify_sequence_condition<P: Point>(
    condition: SequenceCondition,
    inst: ContractionInstance<'_, P>,
    witnesses: &[WitnessBundle<P>],
    t_grid: &[f64],
    tolerance: f64,
) -> Result<Verdict<SequenceCounterexample>> {
    use SequenceCondition as C;
    let times: Vec<f64> = t_grid.iter().copied().filter(|&t| t > 0.0).collect();
    if times.is_empty() {
        return Err(Error::rejected("t_grid needs a positive time"));
    }
    let space = inst.space;
    for (witness, bundle) in witnesses.iter().enumerate() {
        let counterexample = |t, residual| {
            Ok(Verdict::Fail(SequenceCounterexample {
                witness,
                t,
                residual,
            }))
        };
        match (condition, bundle) {
            (C::F2 | C::F2Tilde, WitnessBundle::Picard { points }) => {
                if points.len() < 3 {
                    return Err(Error::rejected("a Picard witness needs at least 3 terms"));
                }
                check_picard(inst.map, points)?;
                if let Some(index) = points.windows(2).position(|w| !inst.relation.strict(&w[0], &w[1])) {
                    return Err(Error::clause("x_n S* x_{n+1}", index));
                }
                for &t in &times {
                    let steps: Vec<f64> = points.windows(2).map(|w| space.eval(&w[0], &w[1], t)).collect();
                    if condition.tilde() {
                        check_positive(&steps, "M(x_n, x_{n+1}, t) > 0")?;
                    }
                    check_contractive(inst.theta, &steps[1..], &steps[..steps.len() - 1])?;
                    if !sampling::tail_within(&steps, 1.0, tolerance) {
                        return counterexample(t, sampling::tail_residual(&steps, 1.0));
                    }
                }
            }
            (C::F2Prime | C::F2PrimeTilde, WitnessBundle::PicardPair { xs, ys }) => {
                if xs.len() != ys.len() || xs.len() < 2 {
                    return Err(Error::rejected("paired Picard witnesses need equal lengths of at least 2"));
                }
                check_picard(inst.map, xs)?;
                check_picard(inst.map, ys)?;
                if let Some(index) = xs.iter().zip(ys).position(|(x, y)| !inst.relation.strict(x, y)) {
                    return Err(Error::clause("x_n S* y_n", index));
                }
                for &t in &times {
                    let degrees: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| space.eval(x, y, t)).collect();
                    if condition.tilde() {
                        check_positive(&degrees, "M(x_n, y_n, t) > 0")?;
                    }
                    check_contractive(inst.theta, &degrees[1..], &degrees[..degrees.len() - 1])?;
                    if !sampling::tail_within(&degrees, 1.0, tolerance) {
                        return counterexample(t, sampling::tail_residual(&degrees, 1.0));
                    }
                }
            }
            (C::F3, WitnessBundle::TsmLimit { xs, ys, t0, limit }) => {
                if !(*t0 > 0.0) || !(0.0..=1.0).contains(limit) {
                    return Err(Error::rejected("F3 witness needs t0 > 0 and L in [0, 1]"));
                }
                let seq = TsmSequence::new(space, inst.relation, inst.map, xs.clone(), ys.clone())?;
                let (phis, psis) = (seq.phis(*t0), seq.psis(*t0));
                if !sampling::tail_within(&phis, *limit, tolerance) {
                    return Err(Error::clause("phi_n(t0) -> L", phis.len() - 1));
                }
                if !sampling::tail_within(&psis, *limit, tolerance) {
                    return Err(Error::clause("psi_n(t0) -> L", psis.len() - 1));
                }
                if let Some(index) = phis.iter().position(|&phi| phi >= *limit) {
                    return Err(Error::clause("L > phi_n(t0)", index));
                }
                check_contractive(inst.theta, &phis, &psis)?;
                if 1.0 - limit > tolerance {
                    return counterexample(*t0, 1.0 - limit);
                }
            }
            (C::F5 | C::F5Tilde, WitnessBundle::Tsm { xs, ys }) => {
                let seq = TsmSequence::new(space, inst.relation, inst.map, xs.clone(), ys.clone())?;
                for &t in &times {
                    let (phis, psis) = (seq.phis(t), seq.psis(t));
                    if condition.tilde() {
                        check_positive(&phis, "phi_n(t) > 0")?;
                        check_positive(&psis, "psi_n(t) > 0")?;
                    }
                    if !sampling::tail_within(&psis, 1.0, tolerance) {
                        return Err(Error::clause("psi_n(t) -> 1", psis.len() - 1));
                    }
                    check_contractive(inst.theta, &phis, &psis)?;
                    if !sampling::tail_within(&phis, 1.0, tolerance) {
                        return counterexample(t, sampling::tail_residual(&phis, 1.0));
                    }
                }
            }
            _ => {
                return Err(Error::rejected(alloc::format!(
                    "witness {witness} has the wrong shape for {condition:?}"
                )))
            }
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::{theta_from_psi, PsiGauge, ThetaDomain};
    use crate::map::real;
    use crate::space::metrics;
    use alloc::vec;
    use alloc::vec::Vec;

    fn euclidean() -> FuzzySpace<f64> {
        FuzzySpace::from_metric("euclidean", metrics::euclidean)
    }

    #[test]
    fn orbit_classification_examples() {
        let orbit = picard(&real::banach_ln(0.5), 1.0, 30).unwrap();
        assert_eq!(orbit.class, OrbitClass::InfiniteOnPrefix);
        assert!(orbit.points.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));

        let flip = real::affine(-1.0, 1.0);
        let orbit = picard(&flip, 0.0, 10).unwrap();
        assert_eq!(orbit.class, OrbitClass::AlmostPeriodic { start: 0, period: 2 });
        assert_eq!(extract_fixed_point_if_constant(&orbit, &flip), None);

        let zero = SelfMap::total("zero", |_: &f64| 0.0);
        let orbit = picard(&zero, 7.0, 10).unwrap();
        assert_eq!(orbit.class, OrbitClass::EventuallyConstant { from: 1 });
        assert!(orbit.class.is_almost_periodic());
        assert_eq!(extract_fixed_point_if_constant(&orbit, &zero), Some(0.0));
    }

    #[test]
    fn orbit_recurrence_is_exact() {
        let map = real::logistic(3.7);
        let orbit = picard(&map, 0.3, 200).unwrap();
        for w in orbit.points.windows(2) {
            assert_eq!(map.apply(&w[0]).unwrap().to_bits(), w[1].to_bits());
        }
    }

    #[test]
    fn picard_errors() {
        assert!(picard(&real::half(), 1.0, 1).is_err());
        let err = picard(&real::banach_ln(0.5), -2.0, 5).unwrap_err();
        assert!(matches!(err, Error::MapFailed { index: 0, .. }));
    }

    #[test]
    fn regularity_examples() {
        let space = euclidean();
        let t = [0.1, 1.0, 10.0];
        let banach = picard(&real::banach_ln(0.5), 1.0, 60).unwrap();
        assert!(asymptotically_regular(&space, &banach.points, &t, 1e-9).unwrap());
        let flip = picard(&real::affine(-1.0, 1.0), 0.0, 20).unwrap();
        assert!(!asymptotically_regular(&space, &flip.points, &t, 1e-3).unwrap());
        assert!(asymptotically_regular(&space, &[3.0; 12], &t, 0.0).unwrap());
        assert!(asymptotically_regular(&space, &[3.0; 9], &t, 0.0).is_err());
    }

    #[test]
    fn tsm_sequence_validates_relation() {
        let space = euclidean();
        let rel = Relation::leq_reals();
        let map = real::half();
        let seq = TsmSequence::new(&space, &rel, &map, vec![0.0, 1.0], vec![1.0, 2.0]).unwrap();
        assert_eq!(seq.psi(0, 1.0), 0.5);
        assert_eq!(seq.phi(0, 1.0), 1.0 / 1.5);
        let err = TsmSequence::new(&space, &rel, &map, vec![0.0, 1.0], vec![1.0, 1.0]).unwrap_err();
        assert_eq!(err, Error::clause("x_n S* y_n", 1));
    }

    fn harmonic_opts() -> NcOptions {
        NcOptions {
            t_grid: vec![1.0],
            ..NcOptions::default()
        }
    }

    #[test]
    fn nc_witness_on_harmonic_sums() {
        let space = euclidean();
        let seq = harmonic_partial_sums(1000);
        let w = extract_nc_witness(&space, &seq, &harmonic_opts()).unwrap().unwrap();
        assert_eq!((w.eps0, w.t0), (0.1, 1.0));
        assert!(w.pairs() >= 5);
        assert!(w.verify(&space, &seq));
        // direct scan: m(k) is the least violating index
        for (&n, &m) in w.n_k.iter().zip(&w.m_k) {
            assert!((n + 1..m).all(|j| space.eval(&seq[n], &seq[j], 1.0) > 0.9));
        }
        assert!(w.limit_gap_outer < 0.02 && w.limit_gap_inner < 0.02);
    }

    #[test]
    fn nc_rejects_cauchy_and_irregular() {
        let space = euclidean();
        let cauchy = picard(&real::banach_ln(0.5), 1.0, 100).unwrap();
        assert_eq!(
            extract_nc_witness(&space, &cauchy.points, &NcOptions::default()),
            Err(Error::precondition("not Cauchy"))
        );
        let flip: Vec<f64> = (0..40).map(|n| (n % 2) as f64).collect();
        assert_eq!(
            extract_nc_witness(&space, &flip, &NcOptions::default()),
            Err(Error::precondition("asymptotic regularity"))
        );
    }

    #[test]
    fn nc_residuals_shrink_with_window() {
        let space = euclidean();
        let seq = harmonic_partial_sums(10_000);
        let trend = nc_window_trend(&space, &seq, &[100, 1000, 10_000], &harmonic_opts()).unwrap();
        let gaps: Vec<f64> = trend
            .iter()
            .map(|(_, w)| {
                let w = w.as_ref().unwrap();
                w.limit_gap_outer.max(w.limit_gap_inner)
            })
            .collect();
        assert!(gaps.windows(2).all(|g| g[1] < g[0]), "{gaps:?}");
        assert!(gaps[2] < 0.02);
    }

    fn exp_space() -> FuzzySpace<f64> {
        FuzzySpace::exponential("exp", metrics::euclidean, |t| t / (1.0 + t)).unwrap()
    }

    #[test]
    fn f2_holds_on_mihet_orbits() {
        let theta = theta_from_psi(&PsiGauge::sqrt());
        let space = exp_space();
        let rel = Relation::trivial();
        let map = real::half();
        let inst = ContractionInstance { theta: &theta, space: &space, relation: &rel, map: &map };
        let bundles: Vec<_> = [1.0, -3.0, 10.0]
            .iter()
            .map(|&x0| WitnessBundle::Picard { points: picard(&map, x0, 30).unwrap().points })
            .collect();
        let t = [0.1, 1.0, 10.0];
        assert!(falsify_sequence_condition(SequenceCondition::F2, inst, &bundles, &t, 1e-6).unwrap().passed());
        assert!(falsify_sequence_condition(SequenceCondition::F2Tilde, inst, &bundles, &t, 1e-6).unwrap().passed());
    }

    #[test]
    fn f5_holds_for_dominated_theta() {
        let theta = theta_from_psi(&PsiGauge::sqrt());
        assert!(theta.dominated());
        let space = exp_space();
        let rel = Relation::trivial();
        let map = real::half();
        let inst = ContractionInstance { theta: &theta, space: &space, relation: &rel, map: &map };
        let xs: Vec<f64> = (1..80).map(|n| 1.0 / n as f64).collect();
        let ys = vec![0.0; xs.len()];
        let bundle = [WitnessBundle::Tsm { xs, ys }];
        let v = falsify_sequence_condition(SequenceCondition::F5, inst, &bundle, &[1.0, 10.0], 0.05).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn f3_counterexample_with_vacuous_theta() {
        let theta = ThetaComparator::new("zero", ThetaDomain::UnitSquare, |_, _| 0.0);
        let space = euclidean();
        let rel = Relation::trivial();
        let map = SelfMap::identity();
        let inst = ContractionInstance { theta: &theta, space: &space, relation: &rel, map: &map };
        let ys: Vec<f64> = (0..30).map(|n| 2.0 / 3.0 + libm::exp2(-(n as f64))).collect();
        let xs = vec![0.0; ys.len()];
        let bundle = [WitnessBundle::TsmLimit { xs, ys, t0: 1.0, limit: 0.6 }];
        let v = falsify_sequence_condition(SequenceCondition::F3, inst, &bundle, &[1.0], 1e-6).unwrap();
        let w = v.into_witness().unwrap();
        assert!((w.residual - 0.4).abs() < 1e-12);
    }

    #[test]
    fn hypothesis_violations_are_named() {
        let theta = theta_from_psi(&PsiGauge::sqrt());
        let space = euclidean();
        let rel = Relation::trivial();
        let map = real::half();
        let inst = ContractionInstance { theta: &theta, space: &space, relation: &rel, map: &map };
        let not_picard = [WitnessBundle::Picard { points: vec![1.0, 0.5, 0.3] }];
        let err = falsify_sequence_condition(SequenceCondition::F2, inst, &not_picard, &[1.0], 1e-6).unwrap_err();
        assert_eq!(err, Error::clause("x_{n+1} = T x_n", 1));
        let identity = SelfMap::identity();
        let inst = ContractionInstance { map: &identity, ..inst };
        let bundle = [WitnessBundle::PicardPair { xs: vec![0.0; 5], ys: vec![1.0; 5] }];
        let err = falsify_sequence_condition(SequenceCondition::F2Prime, inst, &bundle, &[1.0], 1e-6).unwrap_err();
        assert_eq!(err, Error::clause("theta(phi_n, psi_n) >= 0", 0));
    }
}
