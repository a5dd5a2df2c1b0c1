//! Semi-reciprocal clustering interpolates between the reciprocal and
//! nonreciprocal extremes as the secondary chain length `t` grows.
//!
//! cargo run --example semi_reciprocal_sweep

use dioclust::fixtures;
use dioclust::methods::{intermediate, nonreciprocal, reciprocal, semi_reciprocal};

fn main() -> dioclust::Result<()> {
    let net = fixtures::eight_node(5.0);
    let x = net.index_of("x").unwrap();
    let xp = net.index_of("x'").unwrap();

    println!("u(x, x') under each method");
    println!("  reciprocal          {}", reciprocal(&net)?.get(x, xp));
    for t in 2..=net.n() {
        println!(
            "  semi-reciprocal:{t}   {}",
            semi_reciprocal(&net, t)?.get(x, xp)
        );
    }
    println!("  nonreciprocal       {}", nonreciprocal(&net)?.get(x, xp));

    // Forward and backward chains can be bounded separately.
    println!("\nintermediate:t,t' for t, t' in 1..=4");
    for t in 1..=4 {
        let row: Vec<String> = (1..=4)
            .map(|tb| intermediate(&net, t, tb).map(|u| u.get(x, xp).to_string()))
            .collect::<Result<_, _>>()?;
        println!("  t={t}: {}", row.join(" "));
    }
    Ok(())
}
