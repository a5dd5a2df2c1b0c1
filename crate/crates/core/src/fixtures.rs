//! Small reference networks with known clusterings, and a battery of
//! method specs for property checks.

use crate::methods::MethodSpec;
use crate::network::{network_from_edges, Network};

/// Four nodes on a directed cycle `a -> b -> c -> d -> a` of cost 1, with
/// reverse links `b->a = 3`, `c->b = 5`, `d->c = 2`, `a->d = 5`. The
/// diagonals `a<->c` and `b<->d` get `undrawn`, which must exceed 5.
///
/// Reciprocal: `u(c,d) = 2`, `u(a,b) = 3`, all other pairs 5.
/// Nonreciprocal: every pair 1.
pub fn four_node_with(undrawn: f64) -> Network {
    let labels = ["a", "b", "c", "d"];
    let edges = [
        ("a", "b", 1.0),
        ("b", "c", 1.0),
        ("c", "d", 1.0),
        ("d", "a", 1.0),
        ("b", "a", 3.0),
        ("c", "b", 5.0),
        ("d", "c", 2.0),
        ("a", "d", 5.0),
        ("a", "c", undrawn),
        ("c", "a", undrawn),
        ("b", "d", undrawn),
        ("d", "b", undrawn),
    ];
    network_from_edges(&labels, &edges).expect("fixture is well formed")
}

/// [`four_node_with`] with undrawn links set to 6.
pub fn four_node() -> Network {
    four_node_with(6.0)
}

/// Eight nodes `x, x1, .., x6, x'` where the outer clockwise cycle
/// `x x1 x2 x4 x' x5 x6 x` costs 1 and the hub `x3` is reached through
/// links of cost 2 to 4. All links not listed get `undrawn`, which must
/// exceed 4.
///
/// Between `x` and `x'`: reciprocal 4, nonreciprocal 1, and semi-reciprocal
/// 4, 3, 2, 1 for `t = 2, 3, 4, >= 5`.
pub fn eight_node(undrawn: f64) -> Network {
    let labels = ["x", "x1", "x2", "x3", "x4", "x'", "x5", "x6"];
    let drawn = [
        ("x", "x1", 1.0),
        ("x1", "x2", 1.0),
        ("x2", "x4", 1.0),
        ("x3", "x4", 2.0),
        ("x4", "x'", 1.0),
        ("x'", "x5", 1.0),
        ("x5", "x6", 1.0),
        ("x6", "x", 1.0),
        ("x1", "x3", 3.0),
        ("x2", "x3", 2.0),
        ("x5", "x3", 2.0),
        ("x3", "x'", 4.0),
        ("x'", "x3", 4.0),
        ("x", "x3", 4.0),
        ("x3", "x", 4.0),
        ("x3", "x6", 2.0),
    ];
    let mut edges = Vec::new();
    for src in labels {
        for dst in labels {
            if src != dst {
                let w = drawn
                    .iter()
                    .find(|e| e.0 == src && e.1 == dst)
                    .map_or(undrawn, |e| e.2);
                edges.push((src, dst, w));
            }
        }
    }
    network_from_edges(&labels, &edges).expect("fixture is well formed")
}

/// Every admissible method kind, with small and large parameters for a
/// network of `n` nodes and graft thresholds at `beta`.
pub fn admissible_specs(n: usize, beta: f64) -> Vec<MethodSpec> {
    let big = n.max(2) + 1;
    vec![
        MethodSpec::Reciprocal,
        MethodSpec::Nonreciprocal,
        MethodSpec::SemiReciprocal { t: 2 },
        MethodSpec::SemiReciprocal { t: 3 },
        MethodSpec::SemiReciprocal { t: big },
        MethodSpec::Intermediate { t_fwd: 1, t_bwd: 2 },
        MethodSpec::Intermediate { t_fwd: 3, t_bwd: 1 },
        MethodSpec::Intermediate {
            t_fwd: 2,
            t_bwd: big,
        },
        MethodSpec::GraftRNr { beta },
        MethodSpec::GraftRRmax { beta },
        MethodSpec::convex([
            (0.5, MethodSpec::Reciprocal),
            (0.5, MethodSpec::Nonreciprocal),
        ]),
        MethodSpec::convex([
            (0.2, MethodSpec::SemiReciprocal { t: 3 }),
            (0.3, MethodSpec::GraftRNr { beta }),
            (0.5, MethodSpec::Intermediate { t_fwd: 2, t_bwd: 1 }),
        ]),
    ]
}
