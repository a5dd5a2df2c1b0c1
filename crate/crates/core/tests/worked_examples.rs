//! Worked examples with known values: the four-node network with a
//! reciprocal two-cycle structure and the eight-node secondary-chain
//! network.

use dioclust::methods::{graft_r_r_invalid, nonreciprocal, reciprocal, semi_reciprocal};
use dioclust::{cluster, fixtures, oracle, run_method, MethodOutput, MethodSpec, Network};

fn pair_values(u: &dioclust::Ultrametric) -> Vec<(String, String, f64)> {
    let l = u.labels();
    let mut out = Vec::new();
    for i in 0..u.n() {
        for j in i + 1..u.n() {
            out.push((l[i].clone(), l[j].clone(), u.get(i, j)));
        }
    }
    out
}

fn expect_pairs(u: &dioclust::Ultrametric, special: &[(&str, &str, f64)], rest: f64) {
    for (a, b, v) in pair_values(u) {
        let want = special
            .iter()
            .find(|(x, y, _)| (*x == a && *y == b) || (*x == b && *y == a))
            .map_or(rest, |s| s.2);
        assert_eq!(v, want, "pair ({a},{b})");
    }
}

fn check_four_node(net: &Network) {
    expect_pairs(
        &reciprocal(net).unwrap(),
        &[("c", "d", 2.0), ("a", "b", 3.0)],
        5.0,
    );
    expect_pairs(&nonreciprocal(net).unwrap(), &[], 1.0);
    let g = cluster(net, &MethodSpec::GraftRNr { beta: 4.0 }).unwrap();
    expect_pairs(&g, &[("c", "d", 1.0), ("a", "b", 1.0)], 5.0);
    let g = cluster(net, &MethodSpec::GraftRRmax { beta: 4.0 }).unwrap();
    expect_pairs(&g, &[("c", "d", 2.0), ("a", "b", 3.0)], 4.0);
}

#[test]
fn four_node_methods() {
    check_four_node(&fixtures::four_node());
}

#[test]
fn four_node_values_do_not_depend_on_undrawn_links() {
    // Undrawn links only need to exceed every drawn one.
    check_four_node(&fixtures::four_node_with(100.0));
    check_four_node(&fixtures::four_node_with(f64::INFINITY));
}

#[test]
fn four_node_matches_oracle() {
    let net = fixtures::four_node();
    assert_eq!(
        oracle::brute_reciprocal(&net).unwrap().matrix(),
        reciprocal(&net).unwrap().matrix()
    );
    assert_eq!(
        oracle::brute_nonreciprocal(&net).unwrap().matrix(),
        nonreciprocal(&net).unwrap().matrix()
    );
}

#[test]
fn four_node_rr_graft_breaks_the_strong_triangle_inequality() {
    let net = fixtures::four_node();
    let candidate = graft_r_r_invalid(&net, 4.0).unwrap();
    assert!(!candidate.is_ultrametric());
    let idx = |l: &str| net.index_of(l).unwrap();
    let m = &candidate.matrix;
    assert_eq!(m.get(idx("a"), idx("b")), 3.0);
    assert_eq!(m.get(idx("a"), idx("c")), 1.0);
    assert_eq!(m.get(idx("c"), idx("b")), 1.0);
    assert!(candidate.report.has_triangle("a", "c", "b"));
    assert!(candidate.report.to_string().contains("(a,c,b)"));
    assert!(matches!(
        run_method(&net, &MethodSpec::GraftRRInvalid { beta: 4.0 }).unwrap(),
        MethodOutput::NotUltrametric(_)
    ));
}

/// Constituents (R, NR) combine to cd 1.5, ab 2 and 3 elsewhere, which is
/// already an ultrametric, so the closure leaves it unchanged.
#[test]
fn four_node_half_half_convex_combination() {
    let net = fixtures::four_node();
    let spec = MethodSpec::convex([
        (0.5, MethodSpec::Reciprocal),
        (0.5, MethodSpec::Nonreciprocal),
    ]);
    let u = cluster(&net, &spec).unwrap();
    expect_pairs(&u, &[("c", "d", 1.5), ("a", "b", 2.0)], 3.0);

    // Cross-check the closure against literal chain enumeration.
    let (r, nr) = (reciprocal(&net).unwrap(), nonreciprocal(&net).unwrap());
    let combined =
        dioclust::DioidMatrix::from_fn(4, |i, j| 0.5 * r.get(i, j) + 0.5 * nr.get(i, j)).unwrap();
    let combined = Network::new(net.labels().to_vec(), combined).unwrap();
    assert_eq!(
        oracle::brute_single_linkage(&combined).unwrap().matrix(),
        u.matrix()
    );
}

#[test]
fn eight_node_semi_reciprocal_sweep() {
    for undrawn in [5.0, 100.0] {
        let net = fixtures::eight_node(undrawn);
        let (x, xp) = (net.index_of("x").unwrap(), net.index_of("x'").unwrap());
        let sweep: Vec<f64> = (2..=8)
            .map(|t| semi_reciprocal(&net, t).unwrap().get(x, xp))
            .collect();
        assert_eq!(sweep, vec![4.0, 3.0, 2.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(reciprocal(&net).unwrap().get(x, xp), 4.0);
        assert_eq!(nonreciprocal(&net).unwrap().get(x, xp), 1.0);
        for t in 2..=5 {
            assert_eq!(
                oracle::brute_semi_reciprocal(&net, t).unwrap().matrix(),
                semi_reciprocal(&net, t).unwrap().matrix(),
                "t = {t}"
            );
        }
    }
}

#[test]
fn two_node_network_merges_at_larger_dissimilarity() {
    let net = Network::from_rows(&["p", "q"], &[[0.0, 2.0], [5.0, 0.0]]).unwrap();
    for spec in fixtures::admissible_specs(2, 3.0) {
        assert_eq!(cluster(&net, &spec).unwrap().get(0, 1), 5.0, "{spec}");
    }
}
