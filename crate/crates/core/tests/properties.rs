//! Randomized checks of the structural results: the R/NR bounds, the two
//! axioms, agreement with chain enumeration, equivalence identities,
//! stabilization of powers and dendrogram round trips.

mod common;

use common::*;
use dioclust::methods::{intermediate, nonreciprocal, reciprocal, semi_reciprocal, single_linkage};
use dioclust::{
    cluster, cut_at_resolution, fixtures, from_dendrogram, oracle, to_dendrogram, Constituent,
    MethodSpec,
};
use rand::Rng;

#[test]
fn outputs_sit_between_nonreciprocal_and_reciprocal() {
    let mut rng = rng(1);
    for _ in 0..60 {
        let n = rng.gen_range(2..=9);
        let net = if rng.gen_bool(0.5) {
            random_network(&mut rng, n)
        } else {
            random_tied_network(&mut rng, n)
        };
        let upper = reciprocal(&net).unwrap();
        let lower = nonreciprocal(&net).unwrap();
        let beta = rng.gen_range(0.1..1.0);
        for spec in fixtures::admissible_specs(n, beta) {
            let u = cluster(&net, &spec).unwrap();
            let tol = spec.tolerance();
            assert!(
                lower.matrix().le_entrywise_within(u.matrix(), tol),
                "{spec} below NR"
            );
            assert!(
                u.matrix().le_entrywise_within(upper.matrix(), tol),
                "{spec} above R"
            );
        }
    }
}

#[test]
fn every_output_is_idempotent_and_valid() {
    let mut rng = rng(2);
    for _ in 0..40 {
        let n = rng.gen_range(1..=9);
        let net = random_network(&mut rng, n);
        for spec in fixtures::admissible_specs(n, 0.5) {
            let u = cluster(&net, &spec).unwrap();
            assert!(u.validate(spec.tolerance()).is_valid(), "{spec}");
            assert_eq!(
                &u.matrix().product(u.matrix()).unwrap(),
                u.matrix(),
                "{spec}"
            );
        }
    }
}

#[test]
fn two_node_axiom_of_value() {
    let mut rng = rng(3);
    for _ in 0..50 {
        let net = random_network(&mut rng, 2);
        let want = net.get(0, 1).max(net.get(1, 0));
        for spec in fixtures::admissible_specs(2, rng.gen_range(0.1..1.0)) {
            let u = cluster(&net, &spec).unwrap();
            let tol = spec.tolerance();
            assert!(
                (u.get(0, 1) - want).abs() <= tol,
                "{spec}: {} vs {want}",
                u.get(0, 1)
            );
        }
    }
}

#[test]
fn axiom_of_transformation_under_scaling_and_merging() {
    let mut rng = rng(4);
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let net = random_network(&mut rng, n);
        let beta = rng.gen_range(0.1..1.0);
        let c = rng.gen_range(0.05..1.0);
        let scaled = dioclust::Network::new(
            net.labels().to_vec(),
            dioclust::DioidMatrix::from_fn(n, |i, j| c * net.get(i, j)).unwrap(),
        )
        .unwrap();
        let k = rng.gen_range(1..=n);
        let phi = random_surjection(&mut rng, n, k);
        let merged = merge_network(&net, &phi, k);
        for spec in fixtures::admissible_specs(n, beta) {
            let tol = spec.tolerance();
            let u = cluster(&net, &spec).unwrap();
            let us = cluster(&scaled, &spec).unwrap();
            assert!(
                us.matrix().le_entrywise_within(u.matrix(), tol),
                "{spec} under scaling by {c}"
            );
            let um = cluster(&merged, &spec).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert!(
                        um.get(phi[i], phi[j]) <= u.get(i, j) + tol,
                        "{spec} under merge {phi:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn dioid_methods_match_chain_enumeration() {
    let mut rng = rng(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let net = if rng.gen_bool(0.5) {
            random_network(&mut rng, n)
        } else {
            random_tied_network(&mut rng, n)
        };
        assert_eq!(
            oracle::brute_reciprocal(&net).unwrap().matrix(),
            reciprocal(&net).unwrap().matrix()
        );
        assert_eq!(
            oracle::brute_nonreciprocal(&net).unwrap().matrix(),
            nonreciprocal(&net).unwrap().matrix()
        );
        for t in 2..=7 {
            assert_eq!(
                oracle::brute_semi_reciprocal(&net, t).unwrap().matrix(),
                semi_reciprocal(&net, t).unwrap().matrix()
            );
        }
        let (tf, tb) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        assert_eq!(
            oracle::brute_intermediate(&net, tf, tb).unwrap().matrix(),
            intermediate(&net, tf, tb).unwrap().matrix()
        );
    }
}

#[test]
fn bounded_chain_costs_shrink_with_more_nodes() {
    let mut rng = rng(6);
    for _ in 0..20 {
        let n = rng.gen_range(2..=7);
        let net = random_network(&mut rng, n);
        for s in 0..n {
            for d in 0..n {
                let costs: Vec<f64> = (1..=n)
                    .map(|m| oracle::brute_minimax_cost(&net, s, d, Some(m)).unwrap())
                    .collect();
                assert!(costs.windows(2).all(|w| w[1] <= w[0]));
                assert_eq!(
                    costs[n - 1],
                    oracle::brute_minimax_cost(&net, s, d, None).unwrap()
                );
            }
        }
    }
}

#[test]
fn equivalence_identities() {
    let mut rng = rng(7);
    for _ in 0..60 {
        let n = rng.gen_range(2..=10);
        let net = if rng.gen_bool(0.5) {
            random_network(&mut rng, n)
        } else {
            random_tied_network(&mut rng, n)
        };
        let r = reciprocal(&net).unwrap();
        let nr = nonreciprocal(&net).unwrap();
        assert_eq!(semi_reciprocal(&net, 2).unwrap().matrix(), r.matrix());
        assert_eq!(semi_reciprocal(&net, n).unwrap().matrix(), nr.matrix());
        assert_eq!(semi_reciprocal(&net, n + 3).unwrap().matrix(), nr.matrix());
        assert_eq!(intermediate(&net, 1, 1).unwrap().matrix(), r.matrix());
        assert_eq!(
            intermediate(&net, n - 1, n - 1).unwrap().matrix(),
            nr.matrix()
        );
    }
}

#[test]
fn symmetric_networks_have_one_answer() {
    let mut rng = rng(8);
    for _ in 0..40 {
        let n = rng.gen_range(2..=10);
        let net = random_symmetric_network(&mut rng, n);
        let sl = single_linkage(&net).unwrap();
        for spec in fixtures::admissible_specs(n, 0.5) {
            let u = cluster(&net, &spec).unwrap();
            assert!(
                u.matrix().max_abs_diff(sl.matrix()) <= spec.tolerance(),
                "{spec}"
            );
        }
        assert_eq!(
            cluster(&net, &MethodSpec::GraftRRInvalid { beta: 0.5 })
                .unwrap()
                .matrix(),
            sl.matrix()
        );
    }
}

#[test]
fn semi_reciprocal_decreases_with_t() {
    let mut rng = rng(9);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        let net = random_network(&mut rng, n);
        let mut prev = reciprocal(&net).unwrap();
        for t in 2..=n + 1 {
            let next = semi_reciprocal(&net, t).unwrap();
            assert!(next.matrix().le_entrywise(prev.matrix()), "t = {t}");
            prev = next;
        }
    }
}

#[test]
fn intermediate_under_transposition() {
    // Transposing the network swaps the roles of t and t'.
    let mut rng = rng(10);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        let net = random_network(&mut rng, n);
        let (tf, tb) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let u = intermediate(&net, tf, tb).unwrap();
        let ut = intermediate(&net.transposed(), tb, tf).unwrap();
        assert_eq!(u.matrix(), ut.matrix());
    }
}

#[test]
fn powers_stabilize_at_n_minus_one() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=12);
        let a = random_network(&mut rng, n).dissim().clone();
        assert_eq!(a.power(n.saturating_sub(1)), a.power(n));
        assert_eq!(
            a.symmetrize_max().power(n.saturating_sub(1)),
            a.symmetrize_max().power(n)
        );
    }
}

#[test]
fn dendrogram_round_trip_and_nested_cuts() {
    let mut rng = rng(12);
    for _ in 0..30 {
        let n = rng.gen_range(1..=9);
        let net = if rng.gen_bool(0.5) {
            random_network(&mut rng, n)
        } else {
            random_tied_network(&mut rng, n)
        };
        for spec in fixtures::admissible_specs(n, 0.5) {
            let u = cluster(&net, &spec).unwrap();
            let d = to_dendrogram(&u).unwrap();
            assert_eq!(from_dendrogram(&d).unwrap().matrix(), u.matrix(), "{spec}");
            // disjoint clusters forming at one resolution are separate events
            let mut cuts: Vec<f64> = d.merges().iter().map(|m| m.resolution).collect();
            cuts.insert(0, 0.0);
            cuts.dedup();
            for w in cuts.windows(2) {
                let fine = cut_at_resolution(&u, w[0]).unwrap();
                let coarse = cut_at_resolution(&u, w[1]).unwrap();
                assert!(fine.refines(&coarse));
                assert_ne!(
                    fine.blocks.len(),
                    coarse.blocks.len(),
                    "each merge changes the partition"
                );
            }
        }
    }
}

/// The closure of a sum is at most the sum, so combining a nested
/// combination first can only lower values. Equality fails in general; a
/// witness is searched for deterministically.
#[test]
fn nested_convex_never_exceeds_flat_and_can_differ() {
    let mut rng = rng(99);
    let mut largest_gap: f64 = 0.0;
    for _ in 0..3000 {
        let n = rng.gen_range(3..=7);
        let net = if rng.gen_bool(0.5) {
            random_network(&mut rng, n)
        } else {
            random_tied_network(&mut rng, n)
        };
        let specs = fixtures::admissible_specs(n, rng.gen_range(0.1..4.0));
        let mut pick = || specs[rng.gen_range(0..10)].clone();
        let (s1, s2, s3) = (pick(), pick(), pick());
        let w1: f64 = rng.gen_range(0.05..0.9);
        let w2: f64 = rng.gen_range(0.05..(1.0 - w1));
        let w3 = 1.0 - w1 - w2;
        let flat = MethodSpec::Convex(vec![
            Constituent::new(w1, s1.clone()),
            Constituent::new(w2, s2.clone()),
            Constituent::new(w3, s3.clone()),
        ]);
        let inner = MethodSpec::Convex(vec![
            Constituent::new(w2 / (w2 + w3), s2),
            Constituent::new(w3 / (w2 + w3), s3),
        ]);
        let nested = MethodSpec::Convex(vec![
            Constituent::new(w1, s1),
            Constituent::new(w2 + w3, inner),
        ]);
        if nested.validate().is_err() {
            continue; // rescaled weights missed the sum tolerance
        }
        let flat = cluster(&net, &flat).unwrap();
        let nested = cluster(&net, &nested).unwrap();
        assert!(nested.matrix().le_entrywise_within(flat.matrix(), 1e-9));
        largest_gap = largest_gap.max(flat.matrix().max_abs_diff(nested.matrix()));
        if largest_gap > 1e-3 {
            return;
        }
    }
    panic!("no witness found, largest gap {largest_gap}");
}
