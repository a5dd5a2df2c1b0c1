//! From ultrametric to dendrogram and back, with Newick, JSON, DOT and CSV
//! output and partitions at chosen resolutions.
//!
//! cargo run --example dendrogram_export

use dioclust::export::ultrametric_to_csv;
use dioclust::{
    cluster, cut_at_resolution, fixtures, from_dendrogram, to_dendrogram, to_dot, to_json,
    to_newick, MethodSpec,
};

fn main() -> dioclust::Result<()> {
    let net = fixtures::eight_node(5.0);
    let u = cluster(&net, &MethodSpec::SemiReciprocal { t: 3 })?;
    let d = to_dendrogram(&u)?;

    print!("merges:\n{d}\nnewick:\n{}\n", to_newick(&d));
    print!("ultrametric:\n{}\n", ultrametric_to_csv(&u)?);

    for delta in [0.0, 2.0, 3.0, 4.0] {
        println!("{}", cut_at_resolution(&u, delta)?);
    }

    let back = from_dendrogram(&d)?;
    assert_eq!(back.matrix(), u.matrix());
    println!("\ndendrogram -> ultrametric round trip is exact");

    let json = to_json(&d, &u)?;
    println!("json: {} bytes", json.len());
    print!(
        "\n{}",
        to_dot(&net, 2.0, Some(&cut_at_resolution(&u, 2.0)?))
    );
    Ok(())
}
