use std::collections::{BTreeSet, HashSet};

use combinf_core::connectivity::default_labels;
use combinf_core::exact::band_path_count;
use combinf_core::*;
use proptest::prelude::*;

fn seq_from(set: &BTreeSet<i32>) -> MonotoneSequence {
    MonotoneSequence::new(set.iter().map(|&v| v as f64).collect()).unwrap()
}

/// Two equal-length strictly increasing integer-valued sequences; values may
/// coincide across the pair.
fn seq_pair() -> impl Strategy<Value = (BTreeSet<i32>, BTreeSet<i32>)> {
    (1usize..30).prop_flat_map(|q| {
        (
            prop::collection::btree_set(-1000i32..1000, q),
            prop::collection::btree_set(-1000i32..1000, q),
        )
    })
}

fn similarity_matrix(p: usize, vals: &[f64]) -> ConnectivityMatrix {
    let mut entries = vec![1.0; p * p];
    let mut k = 0;
    for i in 0..p {
        for j in i + 1..p {
            entries[i * p + j] = vals[k];
            entries[j * p + i] = vals[k];
            k += 1;
        }
    }
    ConnectivityMatrix::new(default_labels(p), entries).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = ConnectivityMatrix> {
    (3usize..9).prop_flat_map(|p| {
        prop::collection::vec(-1.0f64..1.0, p * (p - 1) / 2).prop_map(move |v| similarity_matrix(p, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn discrepancy_is_symmetric((a, b) in seq_pair()) {
        let (a, b) = (seq_from(&a), seq_from(&b));
        let ab = discrepancy(&a, &b).unwrap();
        let ba = discrepancy(&b, &a).unwrap();
        prop_assert_eq!(ab.d, ba.d);
        prop_assert_eq!(ab.argmax_location, ba.argmax_location);
    }

    #[test]
    fn discrepancy_invariant_under_increasing_maps((a, b) in seq_pair()) {
        let base = discrepancy(&seq_from(&a), &seq_from(&b)).unwrap().d;
        let maps: [fn(f64) -> f64; 4] = [
            |x| 3.0 * x + 7.0,
            |x| x * x * x,
            |x| (x / 100.0).atan(),
            |x| (x / 300.0).exp(),
        ];
        for f in maps {
            let ta = MonotoneSequence::new(a.iter().map(|&v| f(v as f64)).collect()).unwrap();
            let tb = MonotoneSequence::new(b.iter().map(|&v| f(v as f64)).collect()).unwrap();
            prop_assert_eq!(discrepancy(&ta, &tb).unwrap().d, base);
        }
    }

    #[test]
    fn argmax_attains_d((a, b) in seq_pair()) {
        let (a, b) = (seq_from(&a), seq_from(&b));
        let r = discrepancy(&a, &b).unwrap();
        let (phi, psi) = (a.step_function(), b.step_function());
        prop_assert_eq!(phi.eval(r.argmax_location).abs_diff(psi.eval(r.argmax_location)), r.d);
        prop_assert!(r.d <= r.q);
        // Brute force over a fine grid of thresholds never beats d.
        for t in -1001..1001 {
            let t = t as f64;
            prop_assert!(phi.eval(t).abs_diff(psi.eval(t)) <= r.d);
        }
    }

    #[test]
    fn pvalue_nonincreasing_and_rational(q in 1usize..60) {
        let mut prev = 1.0;
        for d in 0..=q + 1 {
            let p = exact_pvalue(q, d).unwrap();
            prop_assert!(p.real_value <= prev);
            prop_assert!(p.numerator <= p.denominator);
            if (1..=q).contains(&d) {
                prop_assert!(p.numerator > num_bigint::BigUint::from(0u8));
            }
            prev = p.real_value;
        }
        prop_assert_eq!(exact_pvalue(q, 1).unwrap().real_value, 1.0);
        prop_assert_eq!(exact_pvalue(q, q + 1).unwrap().real_value, 0.0);
    }

    #[test]
    fn compare_msts_symmetric_and_reflexive((a, b) in seq_pair()) {
        let wa = SortedEdgeWeights { weights: seq_from(&a) };
        let wb = SortedEdgeWeights { weights: seq_from(&b) };
        let ab = compare_msts(&wa, &wb).unwrap();
        let ba = compare_msts(&wb, &wa).unwrap();
        prop_assert_eq!(ab.d, ba.d);
        prop_assert_eq!(&ab.p_value.numerator, &ba.p_value.numerator);
        let aa = compare_msts(&wa, &wa).unwrap();
        prop_assert_eq!(aa.d, 0);
        prop_assert_eq!(aa.p_value.real_value, 1.0);
    }

    #[test]
    fn forest_edge_count(p in 2usize..12, raw in prop::collection::vec((0usize..12, 0usize..12, 0.0f64..10.0), 0..40)) {
        let mut seen = HashSet::new();
        let edges: Vec<Edge> = raw
            .into_iter()
            .filter(|&(i, j, _)| i < p && j < p && i != j && seen.insert((i.min(j), i.max(j))))
            .map(|(i, j, w)| Edge::new(i, j, w))
            .collect();
        let f = kruskal_mst(&WeightedGraph::new(default_labels(p), edges).unwrap()).unwrap();
        prop_assert_eq!(f.tree_edges.len() + f.component_count, p);
        prop_assert!(f.tree_edges.windows(2).all(|w| w[0].weight <= w[1].weight));
    }

    #[test]
    fn max_tree_and_one_minus_share_topology(c in matrix_strategy()) {
        let (a, _) = mst_from_connectivity(&c, WeightMode::OneMinus).unwrap();
        let (b, _) = mst_from_connectivity(&c, WeightMode::MaxTree).unwrap();
        let set = |f: &SpanningForest| f.tree_edges.iter().map(|e| (e.i.min(e.j), e.i.max(e.j))).collect::<BTreeSet<_>>();
        prop_assert_eq!(set(&a), set(&b));
    }

    #[test]
    fn localize_monotone_in_radius(c1 in matrix_strategy(), center in -1.0f64..2.0, r1 in 0.0f64..1.0, extra in 0.0f64..1.0) {
        let p = c1.dim();
        let shifted: Vec<f64> = c1.entries().iter().map(|v| v * 0.5).collect();
        let c2 = ConnectivityMatrix::new(default_labels(p), shifted).unwrap();
        let (fa, _) = mst_from_connectivity(&c1, WeightMode::OneMinus).unwrap();
        let (fb, _) = mst_from_connectivity(&c2, WeightMode::OneMinus).unwrap();
        let small: BTreeSet<String> = localize_nodes(&fa, &fb, center, r1).unwrap().into_iter().collect();
        let large: BTreeSet<String> = localize_nodes(&fa, &fb, center, r1 + extra).unwrap().into_iter().collect();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn spearman_rank_invariance(pairs in prop::collection::vec((-500i32..500, -500i32..500), 3..40)) {
        let a: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
        prop_assume!(a.iter().any(|v| *v != a[0]) && b.iter().any(|v| *v != b[0]));
        let base = spearman_correlation(&a, &b).unwrap();
        let ta: Vec<f64> = a.iter().map(|x| x * x * x + 2.0).collect();
        let tb: Vec<f64> = b.iter().map(|x| (x / 100.0).atan()).collect();
        prop_assert!((spearman_correlation(&ta, &b).unwrap() - base).abs() < 1e-12);
        prop_assert!((spearman_correlation(&a, &tb).unwrap() - base).abs() < 1e-12);
        prop_assert!((spearman_correlation(&b, &a).unwrap() - base).abs() < 1e-12);
    }
}

#[test]
fn table_total_matches_two_row_count() {
    for q in 1..=30 {
        for d in 1..=q + 1 {
            assert_eq!(count_band_paths(q, d).unwrap().total(), &band_path_count(q, d).unwrap());
        }
    }
}

#[test]
fn exact_matches_brute_force() {
    for q in 1..=8 {
        for d in 0..=q + 1 {
            let exact = exact_pvalue(q, d).unwrap().real_value;
            let brute = brute_force_pvalue(q, d).unwrap();
            assert!((exact - brute).abs() < 1e-12, "q={q} d={d}: {exact} vs {brute}");
        }
    }
}

#[test]
fn pearson_matrix_shape() {
    let x = simulation::simulate_modular_data(10, 12, 3, 0.5, &RngStream::new(1, 0)).unwrap();
    let c = pearson_correlation_matrix(&x).unwrap();
    for i in 0..12 {
        assert_eq!(c.get(i, i), 1.0);
        for j in 0..12 {
            assert_eq!(c.get(i, j), c.get(j, i));
            assert!(c.get(i, j).abs() <= 1.0);
        }
    }
}

#[test]
fn tail_at_q116_lies_in_band() {
    // Counterpart of the q = 115 acceptance check, which lands at 1.317e-8.
    let v = exact_pvalue(116, 46).unwrap().real_value;
    assert!((1.55e-8..=1.60e-8).contains(&v), "{v:e}");
}
