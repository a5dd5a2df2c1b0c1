//! Brute-force reference implementations that evaluate the chain-based
//! definitions literally, by enumerating every simple chain. Only for small
//! networks; they exist to check the dioid algorithms.
//!
//! Simple chains suffice: cutting a loop out of a chain never raises its
//! maximum link cost and never adds nodes.

use crate::dioid::DioidMatrix;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::ultrametric::Ultrametric;

/// Largest network the oracle accepts.
pub const ORACLE_MAX_NODES: usize = 8;

/// An ordered node sequence and its cost, the largest link dissimilarity
/// met when walking it in order.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub nodes: Vec<usize>,
    pub cost: f64,
}

impl Chain {
    /// Recomputes the cost of `nodes` under `net`.
    pub fn cost_in(nodes: &[usize], net: &Network) -> f64 {
        nodes
            .windows(2)
            .map(|w| net.get(w[0], w[1]))
            .fold(0.0, f64::max)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_NODES {
        return Err(Error::OracleTooLarge {
            n,
            limit: ORACLE_MAX_NODES,
        });
    }
    Ok(())
}

/// Cheapest simple chain from `src` to `dst` with at most `max_nodes`
/// nodes (endpoints included) under the link cost `cost(i, j)`. Ties keep
/// the first chain found in depth-first order over increasing node index.
fn best_chain(
    n: usize,
    src: usize,
    dst: usize,
    max_nodes: usize,
    cost: &dyn Fn(usize, usize) -> f64,
) -> Option<Chain> {
    if src == dst {
        return Some(Chain {
            nodes: vec![src],
            cost: 0.0,
        });
    }
    struct Search<'a> {
        n: usize,
        dst: usize,
        max_nodes: usize,
        cost: &'a dyn Fn(usize, usize) -> f64,
        path: Vec<usize>,
        visited: Vec<bool>,
        best: Option<Chain>,
    }
    impl Search<'_> {
        fn walk(&mut self, running: f64) {
            let here = *self.path.last().expect("path starts at src");
            if here == self.dst {
                if self.best.as_ref().is_none_or(|b| running < b.cost) {
                    self.best = Some(Chain {
                        nodes: self.path.clone(),
                        cost: running,
                    });
                }
                return;
            }
            if self.path.len() == self.max_nodes {
                return;
            }
            for next in 0..self.n {
                if self.visited[next] {
                    continue;
                }
                let link = (self.cost)(here, next);
                if link.is_infinite() {
                    continue;
                }
                self.visited[next] = true;
                self.path.push(next);
                self.walk(running.max(link));
                self.path.pop();
                self.visited[next] = false;
            }
        }
    }
    let mut search = Search {
        n,
        dst,
        max_nodes,
        cost,
        path: vec![src],
        visited: vec![false; n],
        best: None,
    };
    search.visited[src] = true;
    search.walk(0.0);
    search.best
}

/// Minimum over simple directed chains from `src` to `dst` with at most
/// `max_nodes` nodes of the largest link dissimilarity; `None` means no
/// bound. `+inf` when no chain exists, `0` when `src == dst`.
pub fn brute_minimax_cost(
    net: &Network,
    src: usize,
    dst: usize,
    max_nodes: Option<usize>,
) -> Result<f64> {
    Ok(brute_minimax_chain(net, src, dst, max_nodes)?.map_or(f64::INFINITY, |c| c.cost))
}

/// The chain achieving [`brute_minimax_cost`], if any.
pub fn brute_minimax_chain(
    net: &Network,
    src: usize,
    dst: usize,
    max_nodes: Option<usize>,
) -> Result<Option<Chain>> {
    let n = net.n();
    check_size(n)?;
    let limit = max_nodes.unwrap_or(n);
    Ok(best_chain(n, src, dst, limit, &|i, j| net.get(i, j)))
}

/// Pairwise matrix of `f(i, j)`, then minimax closure over simple main
/// chains with link costs from that matrix.
fn main_chain_closure(net: &Network, link: impl Fn(usize, usize) -> f64) -> Result<Ultrametric> {
    let n = net.n();
    check_size(n)?;
    let mut links = vec![f64::INFINITY; n * n];
    for i in 0..n {
        for j in 0..n {
            links[i * n + j] = if i == j { 0.0 } else { link(i, j) };
        }
    }
    let cost = |i: usize, j: usize| links[i * n + j];
    let dist = DioidMatrix::from_fn(n, |i, j| {
        best_chain(n, i, j, n, &cost).map_or(f64::INFINITY, |c| c.cost)
    })?;
    Ok(Ultrametric::from_trusted(net.labels().to_vec(), dist))
}

/// Minimum over chains of the largest `max(A(x_i, x_{i+1}), A(x_{i+1}, x_i))`.
pub fn brute_reciprocal(net: &Network) -> Result<Ultrametric> {
    main_chain_closure(net, |i, j| net.get(i, j).max(net.get(j, i)))
}

/// Larger of the cheapest forward and cheapest backward chain costs.
pub fn brute_nonreciprocal(net: &Network) -> Result<Ultrametric> {
    let n = net.n();
    check_size(n)?;
    let dist = DioidMatrix::from_fn(n, |i, j| {
        let forward = brute_minimax_cost(net, i, j, None).expect("size checked");
        let backward = brute_minimax_cost(net, j, i, None).expect("size checked");
        forward.max(backward)
    })?;
    Ok(Ultrametric::from_trusted(net.labels().to_vec(), dist))
}

/// Main chains whose links cost the larger of the cheapest secondary chains
/// of at most `t` nodes in each direction.
pub fn brute_semi_reciprocal(net: &Network, t: usize) -> Result<Ultrametric> {
    if t < 2 {
        return Err(Error::Parameter(format!(
            "semi-reciprocal requires t >= 2, got {t}"
        )));
    }
    check_size(net.n())?;
    main_chain_closure(net, |i, j| {
        let forward = brute_minimax_cost(net, i, j, Some(t)).expect("size checked");
        let backward = brute_minimax_cost(net, j, i, Some(t)).expect("size checked");
        forward.max(backward)
    })
}

/// Directed main chains whose link `x -> x'` costs the larger of the
/// cheapest forward chain with at most `t_fwd + 1` nodes and the cheapest
/// chain back from `x'` to `x` with at most `t_bwd + 1` nodes.
pub fn brute_intermediate(net: &Network, t_fwd: usize, t_bwd: usize) -> Result<Ultrametric> {
    if t_fwd < 1 || t_bwd < 1 {
        return Err(Error::Parameter(format!(
            "intermediate requires t, t' >= 1, got {t_fwd}, {t_bwd}"
        )));
    }
    check_size(net.n())?;
    main_chain_closure(net, |i, j| {
        let forward = brute_minimax_cost(net, i, j, Some(t_fwd + 1)).expect("size checked");
        let backward = brute_minimax_cost(net, j, i, Some(t_bwd + 1)).expect("size checked");
        forward.max(backward)
    })
}

/// Minimax chain costs on a symmetric network.
pub fn brute_single_linkage(net: &Network) -> Result<Ultrametric> {
    if let Some((i, j)) = net.dissim().first_asymmetry() {
        return Err(Error::Asymmetric {
            row: net.labels()[i].clone(),
            col: net.labels()[j].clone(),
        });
    }
    main_chain_closure(net, |i, j| net.get(i, j))
}
