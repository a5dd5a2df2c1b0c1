//! Turning an input-output uses table into a network: `A(i, j)` is one
//! minus the share of sector `j`'s inputs that come from sector `i`.
//!
//! cargo run --example uses_table [path/to/uses.csv]
//!
//! Without an argument a small made-up economy is used.

use dioclust::network::load_uses_table;
use dioclust::{cluster, to_dendrogram, MethodSpec};

const TOY: &str = "\
,farm,mill,bakery,grocer
farm,10,80,5,30
mill,0,5,60,10
bakery,2,0,5,40
grocer,8,15,30,5
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = match std::env::args().nth(1) {
        Some(path) => load_uses_table(std::fs::File::open(path)?)?,
        None => load_uses_table(TOY.as_bytes())?,
    };
    for exclude_diagonal in [false, true] {
        let net = table.to_network(exclude_diagonal)?;
        println!(
            "self-use {}",
            if exclude_diagonal {
                "excluded"
            } else {
                "included"
            }
        );
        print!("{}", net.validate());
        for spec in [
            MethodSpec::Reciprocal,
            MethodSpec::SemiReciprocal { t: 3 },
            MethodSpec::Nonreciprocal,
        ] {
            let d = to_dendrogram(&cluster(&net, &spec)?)?;
            print!("{spec}\n{d}");
        }
        println!();
    }
    Ok(())
}
