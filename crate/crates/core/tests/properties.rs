mod oracles;

use pareto_judge_core::fbeta::{fbeta_curve, fbeta_envelope};
use pareto_judge_core::indicators::{
    euclidean_distance, generational_distance, hypervolume, hypervolume_mc, ndr, sdr,
};
use pareto_judge_core::objective::pareto_front;
use pareto_judge_core::{BetaGrid, ConfusionMatrix, ObjectivePoint, SolutionSet};
use proptest::prelude::*;

fn counts() -> impl Strategy<Value = ConfusionMatrix> {
    (0u64..500, 0u64..500, 0u64..500, 0u64..500)
        .prop_filter("non-empty", |&(a, b, c, d)| a + b + c + d > 0)
        .prop_map(|(tp, fn_, fp, tn)| ConfusionMatrix::new(tp, fn_, fp, tn).unwrap())
}

// Coordinates on a coarse grid so ties and duplicates actually occur.
fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(0u32..=20).prop_map(|k| k as f64 / 20.0), 0.0f64..=1.0]
}

fn point2() -> impl Strategy<Value = (f64, f64)> {
    (coord(), coord())
}

fn front2(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec(point2(), 1..=max)
}

fn to_set(points: &[(f64, f64)]) -> SolutionSet {
    SolutionSet::new("f", points.iter().map(|&(x, y)| ObjectivePoint::pair(x, y)).collect()).unwrap()
}

fn pt(p: (f64, f64)) -> ObjectivePoint {
    ObjectivePoint::pair(p.0, p.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn metrics_stay_in_unit_interval(m in counts(), beta in 0.01f64..100.0) {
        for v in [m.tpr(), m.tnr(), m.ppv(), m.bac(), m.gmean(), m.fbeta(beta).unwrap()] {
            prop_assert!((0.0..=1.0).contains(&v.value));
        }
    }

    #[test]
    fn bac_bounds_gmean(m in counts()) {
        let (bac, g) = (m.bac().value, m.gmean().value);
        prop_assert!(bac + 1e-12 >= g);
        if m.tpr().value == m.tnr().value {
            prop_assert!((bac - g).abs() <= 1e-12);
        }
    }

    #[test]
    fn f1_is_harmonic_mean(m in counts()) {
        let (p, r) = (m.ppv().value, m.tpr().value);
        prop_assume!(p + r > 0.0);
        prop_assert!((m.fbeta(1.0).unwrap().value - 2.0 * p * r / (p + r)).abs() <= 1e-12);
    }

    #[test]
    fn fbeta_matches_count_formula(m in counts(), beta in 0.05f64..20.0) {
        let direct = oracles::fbeta_from_counts(
            m.true_positives(), m.false_negatives(), m.false_positives(), beta);
        prop_assert!((m.fbeta(beta).unwrap().value - direct).abs() <= 1e-12);
    }

    #[test]
    fn fbeta_limits(m in counts()) {
        prop_assume!(m.true_positives() > 0);
        prop_assert!((m.fbeta(1e3).unwrap().value - m.tpr().value).abs() <= 1e-2);
        prop_assert!((m.fbeta(1e-3).unwrap().value - m.ppv().value).abs() <= 1e-2);
    }

    #[test]
    fn gmean_swap_invariance(a in 1u64..200, b in 1u64..200, n in 1u64..200) {
        // The same two rates realized as (TPR, TNR) and as (TNR, TPR).
        let (tpr_num, tpr_den) = (a, a + b);
        let (tnr_num, tnr_den) = (n, n + b);
        let m1 = ConfusionMatrix::new(tpr_num, tpr_den - tpr_num, tnr_den - tnr_num, tnr_num).unwrap();
        let m2 = ConfusionMatrix::new(tnr_num, tnr_den - tnr_num, tpr_den - tpr_num, tpr_num).unwrap();
        prop_assert_eq!(m1.tpr().value, m2.tnr().value);
        prop_assert!((m1.gmean().value - m2.gmean().value).abs() <= 1e-12);
    }

    #[test]
    fn dominance_is_a_strict_order(a in point2(), b in point2(), c in point2()) {
        let (a, b, c) = (pt(a), pt(b), pt(c));
        prop_assert!(!a.strictly_dominates(&a).unwrap());
        if a.strictly_dominates(&b).unwrap() {
            prop_assert!(!b.strictly_dominates(&a).unwrap());
            if b.strictly_dominates(&c).unwrap() {
                prop_assert!(a.strictly_dominates(&c).unwrap());
            }
        }
    }

    #[test]
    fn front_matches_all_pairs_oracle(points in prop::collection::vec(point2(), 1..=200)) {
        let set = to_set(&points);
        let front = pareto_front(&set);
        let got: Vec<Vec<f64>> = front.points().iter().map(|p| p.coords().to_vec()).collect();
        let raw: Vec<Vec<f64>> = points.iter().map(|&(x, y)| vec![x, y]).collect();
        prop_assert_eq!(got, oracles::pareto_front_all_pairs(&raw));
        // idempotent and internally non-dominated
        let again = pareto_front(&front);
        prop_assert_eq!(again.points(), front.points());
        for p in front.points() {
            for q in front.points() {
                prop_assert!(!p.strictly_dominates(q).unwrap());
            }
        }
    }

    #[test]
    fn front_matches_oracle_in_three_dims(
        points in prop::collection::vec(prop::collection::vec(coord(), 3), 1..=60)
    ) {
        let set = SolutionSet::new(
            "f", points.iter().map(|p| ObjectivePoint::new(p.clone()).unwrap()).collect()).unwrap();
        let got: Vec<Vec<f64>> = pareto_front(&set).points().iter().map(|p| p.coords().to_vec()).collect();
        prop_assert_eq!(got, oracles::pareto_front_all_pairs(&points));
    }

    #[test]
    fn sdr_ndr_relations(points in front2(30), r in point2()) {
        let (f, r) = (to_set(&points), pt(r));
        let (s, n) = (sdr(&f, &r).unwrap(), ndr(&f, &r).unwrap());
        prop_assert!(s <= n);
        prop_assert!(s + (1.0 - n) <= 1.0 + 1e-15);
        prop_assert!((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&n));
    }

    #[test]
    fn hypervolume_is_monotone(points in front2(20), extra in point2(), r in point2()) {
        let f = to_set(&points);
        let r = pt(r);
        let mut grown = points.clone();
        grown.push(extra);
        let before = hypervolume(&f, &r).unwrap();
        let after = hypervolume(&to_set(&grown), &r).unwrap();
        prop_assert!(after + 1e-12 >= before);
    }

    #[test]
    fn hypervolume_matches_coarse_grid(points in front2(20), r in point2()) {
        let hv = hypervolume(&to_set(&points), &pt(r)).unwrap();
        let grid = oracles::hypervolume_grid(&points, r, 400);
        // Boundary error of the midpoint rule: at most the staircase perimeter times one cell.
        prop_assert!((hv - grid).abs() <= 2.0 * 2.0 / 400.0, "hv={} grid={}", hv, grid);
    }

    #[test]
    fn indicators_ignore_point_order(points in front2(20), r in point2(), seed in any::<u64>()) {
        let f = to_set(&points);
        let mut shuffled = points.clone();
        shuffled.reverse();
        let shift = (seed % shuffled.len() as u64) as usize;
        shuffled.rotate_left(shift);
        let g = to_set(&shuffled);
        let r = pt(r);
        prop_assert_eq!(sdr(&f, &r).unwrap(), sdr(&g, &r).unwrap());
        prop_assert_eq!(ndr(&f, &r).unwrap(), ndr(&g, &r).unwrap());
        prop_assert_eq!(hypervolume(&f, &r).unwrap(), hypervolume(&g, &r).unwrap());
        prop_assert!((euclidean_distance(&f, &r).unwrap() - euclidean_distance(&g, &r).unwrap()).abs() <= 1e-12);
        let refs = to_set(&points[..1]);
        prop_assert!((generational_distance(&f, &refs).unwrap() - generational_distance(&g, &refs).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn gd_single_reference_is_ed(points in front2(20), r in point2()) {
        let f = to_set(&points);
        let r = pt(r);
        prop_assert_eq!(
            generational_distance(&f, &SolutionSet::singleton("r", r.clone())).unwrap(),
            euclidean_distance(&f, &r).unwrap()
        );
    }

    #[test]
    fn gd_zero_iff_front_within_references(refs in front2(10), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10), off in point2()) {
        let chosen: Vec<(f64, f64)> = picks.iter().map(|i| refs[i.index(refs.len())]).collect();
        let ref_set = to_set(&refs);
        prop_assert_eq!(generational_distance(&to_set(&chosen), &ref_set).unwrap(), 0.0);
        let gd = generational_distance(&to_set(&[off]), &ref_set).unwrap();
        prop_assert_eq!(gd == 0.0, refs.contains(&off));
    }

    #[test]
    fn fbeta_curve_is_monotone(m in counts()) {
        let c = fbeta_curve("m", &m, &BetaGrid::default());
        let (p, r) = (m.ppv().value, m.tpr().value);
        for w in c.values.windows(2) {
            if p <= r {
                prop_assert!(w[1].value + 1e-12 >= w[0].value);
            } else {
                prop_assert!(w[1].value <= w[0].value + 1e-12);
            }
        }
    }

    #[test]
    fn envelope_dominates_members(members in prop::collection::vec(counts(), 1..=30)) {
        let grid = BetaGrid::default();
        let env = fbeta_envelope("e", &members, &grid).unwrap();
        for m in &members {
            let c = fbeta_curve("m", m, &grid);
            for (e, v) in env.values.iter().zip(&c.values) {
                prop_assert!(e.value >= v.value);
            }
        }
        let scaled: Vec<ConfusionMatrix> = members.iter().map(|m| m.scaled(7).unwrap()).collect();
        prop_assert_eq!(fbeta_envelope("e", &scaled, &grid).unwrap().argmax, env.argmax);
    }
}

#[test]
fn mc_agrees_with_sweep_on_fixed_fronts() {
    let fronts: [&[(f64, f64)]; 3] =
        [&[(0.5, 1.0), (1.0, 0.5)], &[(0.2, 0.9), (0.45, 0.7), (0.8, 0.3), (0.95, 0.1)], &[(0.3, 0.3)]];
    for (k, f) in fronts.iter().enumerate() {
        let set = to_set(f);
        let r = ObjectivePoint::pair(0.05, 0.05);
        let exact = hypervolume(&set, &r).unwrap();
        let est = hypervolume_mc(&set, &r, 200_000, k as u64).unwrap();
        assert!(
            (exact - est.value).abs() <= 3.0 * est.standard_error + 1e-15,
            "front {k}: exact {exact} estimate {est:?}"
        );
    }
}

proptest! {
    #[test]
    fn isocurve_samples_stay_on_level(level in 0.01f64..0.99, f1 in any::<bool>(), samples in 2usize..400) {
        use pareto_judge_core::geometry::{isocurve, IsoMetric};
        let metric = if f1 { IsoMetric::F1 } else { IsoMetric::Gmean };
        for (x, y) in isocurve(metric, level, samples).unwrap() {
            prop_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
            prop_assert!((metric.eval(x, y) - level).abs() <= 1e-6, "({}, {})", x, y);
        }
    }
}
