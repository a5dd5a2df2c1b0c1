//! Convex combinations: a weighted average of admissible ultrametrics is
//! not an ultrametric in general, so single linkage closes it.
//!
//! cargo run --example convex_combination

use dioclust::{cluster, fixtures, parse_method_spec, to_dendrogram};

fn main() -> dioclust::Result<()> {
    let net = fixtures::four_node();
    for text in [
        "convex:0.5*reciprocal+0.5*nonreciprocal",
        "convex:0.9*reciprocal+0.1*nonreciprocal",
        "convex:0.2*reciprocal+0.3*nonreciprocal+0.5*graft-rnr:4",
        "convex:0.2*reciprocal+0.8*(convex:0.375*nonreciprocal+0.625*graft-rnr:4)",
    ] {
        let spec = parse_method_spec(text)?;
        let u = cluster(&net, &spec)?;
        print!("{spec}\n{}\n", to_dendrogram(&u)?);
    }

    // Weights must sum to one.
    if let Err(e) = parse_method_spec("convex:0.5*reciprocal+0.4*nonreciprocal") {
        println!("rejected: {e}");
    }
    Ok(())
}
