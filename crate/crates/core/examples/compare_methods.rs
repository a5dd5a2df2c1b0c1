//! Every admissible method lands between nonreciprocal and reciprocal
//! clustering. This prints the bounds and checks them for a few methods on
//! a network read from CSV, or the eight-node fixture.
//!
//! cargo run --example compare_methods [path/to/network.csv]

use dioclust::{cluster, fixtures, load_network, MethodSpec, NetworkFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = match std::env::args().nth(1) {
        Some(path) => load_network(std::fs::File::open(path)?, NetworkFormat::DenseCsv)?,
        None => fixtures::eight_node(5.0),
    };
    print!("{}", net.validate());
    let upper = cluster(&net, &MethodSpec::Reciprocal)?;
    let lower = cluster(&net, &MethodSpec::Nonreciprocal)?;
    for spec in fixtures::admissible_specs(net.n(), 2.5) {
        let u = cluster(&net, &spec)?;
        let tol = spec.tolerance();
        let ok = lower.matrix().le_entrywise_within(u.matrix(), tol)
            && u.matrix().le_entrywise_within(upper.matrix(), tol);
        println!(
            "{:<70} {}",
            spec.to_string(),
            if ok { "within [NR, R]" } else { "VIOLATES" }
        );
    }
    Ok(())
}
