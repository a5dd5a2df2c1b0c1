//! Cross-checks the matrix algorithms against literal enumeration of
//! chains on a random network.
//!
//! cargo run --example oracle_check [seed]

use dioclust::methods::{nonreciprocal, reciprocal, semi_reciprocal};
use dioclust::{oracle, DioidMatrix, Network};
use rand::{Rng, SeedableRng};

fn main() -> dioclust::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = 6;
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let dissim = DioidMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            (rng.gen_range(1..=100) as f64) / 100.0
        }
    })?;
    let net = Network::new(labels, dissim)?;

    let chain = oracle::brute_minimax_chain(&net, 0, n - 1, None)?.expect("complete network");
    println!(
        "cheapest chain v0 -> v{}: {:?} at cost {}",
        n - 1,
        chain.nodes,
        chain.cost
    );

    let same = |a: &DioidMatrix, b: &DioidMatrix| if a == b { "agree" } else { "DIFFER" };
    println!(
        "reciprocal     {}",
        same(
            reciprocal(&net)?.matrix(),
            oracle::brute_reciprocal(&net)?.matrix()
        )
    );
    println!(
        "nonreciprocal  {}",
        same(
            nonreciprocal(&net)?.matrix(),
            oracle::brute_nonreciprocal(&net)?.matrix()
        )
    );
    for t in 2..=n {
        let (fast, slow) = (
            semi_reciprocal(&net, t)?,
            oracle::brute_semi_reciprocal(&net, t)?,
        );
        println!(
            "semi-reciprocal:{t}  {}",
            same(fast.matrix(), slow.matrix())
        );
    }
    Ok(())
}
