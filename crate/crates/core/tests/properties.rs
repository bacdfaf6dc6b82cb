use cobweb::hyperbox::{chain_box_bijection, product_join_check, tile, HyperBox, TilingOutcome};
use cobweb::incidence::{mobius_oracle, zeta_closure};
use cobweb::join::{cardinal_sum, cartesian_product, natural_join_graded, ordinal_sum, OverlapSpec};
use cobweb::relations::{chain_tuples, compose_nary, decompose_nary, is_identifiable, level_relations};
use cobweb::structure::{greedy_extensions, linear_extensions, n_witness};
use cobweb::{BoolMatrix, FSequence, FinitePoset, GradedPoset, NaryRelation};
use num_bigint::BigUint;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = FSequence> {
    prop_oneof![
        Just(FSequence::natural()),
        Just(FSequence::fibonacci()),
        Just(FSequence::gaussian(2)),
        Just(FSequence::constant(2).unwrap()),
        Just(FSequence::constant(1).unwrap()),
    ]
}

/// Cobweb small enough for quadratic checks.
fn cobweb() -> impl Strategy<Value = (FSequence, GradedPoset)> {
    (family(), 1usize..=5).prop_filter_map("too many vertices", |(f, n)| {
        let p = GradedPoset::cobweb(&f, n).ok()?;
        (p.vertex_count() <= 40).then_some((f, p))
    })
}

fn graded() -> impl Strategy<Value = GradedPoset> {
    prop::collection::vec(1usize..=3, 1..=4)
        .prop_flat_map(|sizes| {
            let cells: usize = sizes.windows(2).map(|w| w[0] * w[1]).sum();
            (Just(sizes), prop::collection::vec(any::<bool>(), cells))
        })
        .prop_map(|(sizes, bits)| {
            let mut bits = bits.into_iter();
            let mats = sizes
                .windows(2)
                .map(|w| {
                    let mut m = BoolMatrix::zeros(w[0], w[1]);
                    for i in 0..w[0] {
                        for j in 0..w[1] {
                            m.set(i, j, bits.next().unwrap());
                        }
                    }
                    m
                })
                .collect();
            GradedPoset::from_biadjacency(sizes, mats).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_order_matches_reachability((_, p) in cobweb()) {
        let verts: Vec<_> = p.vertices().collect();
        for &x in &verts {
            for &y in &verts {
                prop_assert_eq!(p.leq(x, y).unwrap(), p.leq_by_reachability(x, y).unwrap());
            }
        }
    }

    #[test]
    fn order_axioms(p in graded()) {
        let f = FinitePoset::from_graded(&p);
        for i in 0..f.len() {
            prop_assert!(f.leq(i, i));
            for j in 0..f.len() {
                if i != j && f.leq(i, j) {
                    prop_assert!(!f.leq(j, i));
                }
                for k in 0..f.len() {
                    if f.leq(i, j) && f.leq(j, k) {
                        prop_assert!(f.leq(i, k));
                    }
                }
            }
        }
        prop_assert_eq!(f.edge_count(), p.edge_count());
    }

    #[test]
    fn chain_count_is_level_product((f, p) in cobweb()) {
        let expected: BigUint = (1..=p.last_level()).map(|t| f.value(t).unwrap()).product();
        prop_assert_eq!(p.max_chain_count(), expected.clone());
        prop_assert_eq!(BigUint::from(p.max_chains().len()), expected);
    }

    #[test]
    fn natural_labeling_round_trips(p in graded()) {
        let labels = p.natural_labeling();
        prop_assert_eq!(labels.len(), p.vertex_count());
        for (i, v) in p.vertices().enumerate() {
            prop_assert_eq!(labels.label(v).unwrap(), i + 1);
            prop_assert_eq!(labels.vertex(i + 1).unwrap(), v);
        }
    }

    #[test]
    fn adjacency_is_strictly_upper_band(p in graded()) {
        let a = p.adjacency_matrix();
        let labels = p.natural_labeling();
        for i in 0..p.vertex_count() {
            for j in 0..p.vertex_count() {
                if a.get(i, j) {
                    prop_assert_eq!(labels.level_of(j + 1).unwrap(), labels.level_of(i + 1).unwrap() + 1);
                }
            }
        }
        prop_assert_eq!(a.count_ones(), p.edge_count());
    }

    #[test]
    fn zeta_inverse_is_unit_triangular(p in graded()) {
        let mu = mobius_oracle(&p);
        prop_assert!(mu.is_unit_upper_triangular());
        prop_assert!(zeta_closure(&p).mul(&mu).unwrap().is_identity());
    }

    #[test]
    fn dual_twice_is_identity(p in graded()) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().edge_count(), p.edge_count());
    }

    #[test]
    fn json_round_trip(p in graded()) {
        prop_assert_eq!(GradedPoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn cardinal_and_cartesian_counts(p in graded(), q in graded()) {
        let (a, b) = (FinitePoset::from_graded(&p), FinitePoset::from_graded(&q));
        let prod = cartesian_product(&a, &b);
        prop_assert_eq!(prod.len(), a.len() * b.len());
        prop_assert_eq!(prod.edge_count(), a.edge_count() * b.len() + b.edge_count() * a.len());
        let sum = cardinal_sum(&a, &b);
        prop_assert_eq!(sum.minimal().len(), a.minimal().len() + b.minimal().len());
        let ord = ordinal_sum(&a, &b);
        prop_assert_eq!(ord.minimal().len(), a.minimal().len());
        prop_assert_eq!(ord.maximal().len(), b.maximal().len());
    }

    #[test]
    fn self_join_on_top_level(p in graded()) {
        let q = p.layer(p.last_level(), p.last_level()).unwrap();
        let joined = natural_join_graded(&p, &q, 1).unwrap();
        prop_assert_eq!(&joined, &p);
        let spec = OverlapSpec::levels(&p, &q, 1).unwrap();
        prop_assert_eq!(spec.len(), *p.sizes().last().unwrap());
    }

    #[test]
    fn relations_compose_back_to_chains(p in graded()) {
        let parts = level_relations(&p);
        let chains = chain_tuples(&p);
        if parts.is_empty() {
            prop_assert_eq!(chains.arity(), 1);
        } else {
            prop_assert_eq!(compose_nary(&parts).unwrap(), chains.clone());
            if is_identifiable(&p) {
                prop_assert_eq!(decompose_nary(&chains).unwrap(), parts);
            }
        }
        prop_assert_eq!(NaryRelation::from_json(&chains.to_json()).unwrap(), chains);
    }

    #[test]
    fn greedy_extensions_are_linear(p in graded()) {
        prop_assume!(p.vertex_count() <= 8);
        let f = FinitePoset::from_graded(&p);
        let all = linear_extensions(&f, 9).unwrap();
        for g in greedy_extensions(&f, 9).unwrap() {
            prop_assert!(all.contains(&g));
        }
        if let Some([a, b, c, d]) = n_witness(&f) {
            prop_assert!(f.covers(a, c) && f.covers(b, c) && f.covers(b, d) && !f.leq(a, d));
        }
    }
}

#[test]
fn box_points_biject_with_chains() {
    for f in [FSequence::natural(), FSequence::fibonacci(), FSequence::gaussian(2)] {
        for n in 1..=4 {
            for k in 1..=n {
                let r = chain_box_bijection(&f, k, n).unwrap();
                assert!(r.is_bijection(), "{f} k={k} n={n}: {r:?}");
                assert_eq!(BigUint::from(r.points), HyperBox::new(&f, k, n).unwrap().volume());
            }
        }
    }
}

#[test]
fn full_products_join_to_products() {
    for f in [FSequence::natural(), FSequence::fibonacci()] {
        for k in 1..=4 {
            let r = product_join_check(&f, k).unwrap();
            assert!(r.equal, "{f} k={k}: {r:?}");
        }
    }
}

#[test]
fn tiling_is_deterministic() {
    let f = FSequence::natural();
    let first = tile(&f, 3, 5).unwrap();
    let second = tile(&f, 3, 5).unwrap();
    match (first, second) {
        (TilingOutcome::Found(a), TilingOutcome::Found(b)) => assert_eq!(a.to_json(), b.to_json()),
        other => panic!("expected tilings, got {other:?}"),
    }
}

#[test]
fn ordinal_sum_of_chains_is_chain() {
    for a in 1..5 {
        for b in 1..5 {
            assert_eq!(ordinal_sum(&FinitePoset::chain(a), &FinitePoset::chain(b)).canonical_form().unwrap(),
                FinitePoset::chain(a + b).canonical_form().unwrap());
        }
    }
}
