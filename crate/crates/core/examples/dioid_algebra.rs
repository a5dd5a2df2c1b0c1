//! The (min,max) dioid: products, powers and the quasi-inverse that holds
//! every minimax chain cost.
//!
//! cargo run --example dioid_algebra

use dioclust::{DioidMatrix, Dissim};

fn show(name: &str, m: &DioidMatrix) {
    println!("{name}:");
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|&v| format!("{:>4}", dioclust::network::format_value(v)))
            .collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> dioclust::Result<()> {
    let (a, b) = (Dissim::new(2.0).unwrap(), Dissim::new(5.0).unwrap());
    println!("2 ⊕ 5 = {}, 2 ⊗ 5 = {}", a.oplus(b), a.otimes(b));

    let inf = f64::INFINITY;
    // A directed 4-cycle with costly shortcuts.
    let m = DioidMatrix::from_rows(&[
        [0.0, 1.0, inf, 9.0],
        [inf, 0.0, 2.0, inf],
        [inf, inf, 0.0, 3.0],
        [4.0, inf, inf, 0.0],
    ])?;
    show("A", &m);
    show("A ⊗ A (chains of at most 3 nodes)", &m.product(&m)?);
    let closure = m.quasi_inverse()?;
    show("A^(n-1), the quasi-inverse", &closure);
    assert_eq!(closure, m.power(m.n()));
    println!("A^(n-1) == A^n: powers have stabilized");
    Ok(())
}
