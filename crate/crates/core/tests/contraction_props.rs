use fuzzyfix_core::contraction::{
    self, default_scale_grid, theta_from_psi, theta_from_rho, ContractionInstance, PsiGauge, RhoComparator,
};
use fuzzyfix_core::map::real;
use fuzzyfix_core::sampling::{distinct_pairs, unit_grid};
use fuzzyfix_core::space::{metrics, DEFAULT_T_GRID};
use fuzzyfix_core::{FuzzySpace, Relation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_gauges_lift_to_dominated_propagating_comparators(p in 0.1..0.95f64) {
        let gauge = PsiGauge::new("power", move |s: f64| s.powf(p), &unit_grid(101)).unwrap();
        let theta = theta_from_psi(&gauge);
        prop_assert!(theta.dominated());
        prop_assert!(theta.positivity_propagating());
    }

    #[test]
    fn rho_lift_matches_metric_comparator(x in -20.0..20.0f64, y in -20.0..20.0f64, t in 0.01..10.0f64, lambda in 0.0..0.99f64) {
        let rc = RhoComparator::linear(lambda).certify(&default_scale_grid()).unwrap();
        let theta = theta_from_rho(&rc).unwrap();
        let md = FuzzySpace::from_metric("euclidean", metrics::euclidean);
        let map = real::affine(0.3, 1.0);
        let (tx, ty) = (map.apply(&x).unwrap(), map.apply(&y).unwrap());
        let lifted = theta.value(md.eval(&tx, &ty, t), md.eval(&x, &y, t)).unwrap();
        let direct = rc.apply((tx - ty).abs() / t, (x - y).abs() / t);
        prop_assert!((lifted - direct).abs() <= 1e-12 * direct.abs().max(1.0), "{lifted} vs {direct}");
    }

    #[test]
    fn type1_pass_implies_type2_pass(xs in proptest::collection::vec(-5.0..5.0f64, 2..8), a in -1.5..1.5f64) {
        let theta = theta_from_psi(&PsiGauge::sqrt());
        let space = FuzzySpace::exponential("exp", metrics::euclidean, |t| t / (1.0 + t)).unwrap();
        let rel = Relation::trivial();
        let map = real::affine(a, 0.0);
        let inst = ContractionInstance { theta: &theta, space: &space, relation: &rel, map: &map };
        let pairs = distinct_pairs(&xs);
        let t1 = contraction::check_f4(inst, &pairs, &DEFAULT_T_GRID, 1e-12).unwrap();
        let t2 = contraction::check_f4_tilde(inst, &pairs, &DEFAULT_T_GRID, 1e-12).unwrap();
        if t1.passed() {
            prop_assert!(t2.passed());
        }
        // M > 0 everywhere here, so the two variants coincide
        prop_assert_eq!(t1.passed(), t2.passed());
    }
}
