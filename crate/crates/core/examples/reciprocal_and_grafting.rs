//! Reciprocal and nonreciprocal clustering, the two grafts that stay
//! admissible, and the R/R graft that breaks the strong triangle inequality.
//!
//! cargo run --example reciprocal_and_grafting

use dioclust::methods::graft_r_r_invalid;
use dioclust::{cluster, fixtures, to_dendrogram, MethodSpec};

fn main() -> dioclust::Result<()> {
    let net = fixtures::four_node();
    for spec in [
        "reciprocal",
        "nonreciprocal",
        "graft-rnr:4",
        "graft-rrmax:4",
    ] {
        let spec: MethodSpec = spec.parse()?;
        let u = cluster(&net, &spec)?;
        print!("{spec}\n{}", to_dendrogram(&u)?);
        println!();
    }

    let candidate = graft_r_r_invalid(&net, 4.0)?;
    println!(
        "graft-rr-invalid:4 is an ultrametric: {}",
        candidate.is_ultrametric()
    );
    print!("{}", candidate.report);
    Ok(())
}
