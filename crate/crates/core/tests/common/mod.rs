#![allow(dead_code)]

use dioclust::{DioidMatrix, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// Off-diagonal dissimilarities uniform in (0, 1].
pub fn random_network(rng: &mut impl Rng, n: usize) -> Network {
    let m =
        DioidMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 - rng.gen::<f64>() }).unwrap();
    Network::new(labels(n), m).unwrap()
}

/// Like [`random_network`] but with values on a small integer grid, so
/// ties between links are common.
pub fn random_tied_network(rng: &mut impl Rng, n: usize) -> Network {
    let m = DioidMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            f64::from(rng.gen_range(1u32..=4))
        }
    })
    .unwrap();
    Network::new(labels(n), m).unwrap()
}

pub fn random_symmetric_network(rng: &mut impl Rng, n: usize) -> Network {
    let mut m = DioidMatrix::from_fn(n, |_, _| 0.0).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            let v = dioclust::Dissim::new(1.0 - rng.gen::<f64>()).unwrap();
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    Network::new(labels(n), m).unwrap()
}

/// A random surjection from `0..n` onto `0..k`, every target hit.
pub fn random_surjection(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        phi.swap(i, j);
    }
    phi
}

/// `A_Y(y, y') = min A_X(x, x')` over preimages, for `y != y'`.
pub fn merge_network(net: &Network, phi: &[usize], k: usize) -> Network {
    let mut m = vec![f64::INFINITY; k * k];
    for y in 0..k {
        m[y * k + y] = 0.0;
    }
    for i in 0..net.n() {
        for j in 0..net.n() {
            let (a, b) = (phi[i], phi[j]);
            if a != b {
                m[a * k + b] = m[a * k + b].min(net.get(i, j));
            }
        }
    }
    Network::new(labels(k), DioidMatrix::new(k, m).unwrap()).unwrap()
}
