//! Hierarchical clustering of asymmetric networks with (min,max) dioid
//! matrix algebra.
//!
//! A [`Network`] holds pairwise dissimilarities that need not be symmetric.
//! Each clustering method maps it to an [`Ultrametric`], which is
//! equivalent to a [`Dendrogram`]. All methods reduce to dioid matrix
//! products where `⊕ = min` and `⊗ = max`.
//!
//! ```
//! use dioclust::{cluster, fixtures, MethodSpec};
//! let net = fixtures::four_node();
//! let u = cluster(&net, &MethodSpec::Reciprocal).unwrap();
//! assert_eq!(u.between("c", "d").unwrap(), 2.0);
//! ```

pub mod cli;
pub mod dendrogram;
pub mod dioid;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod methods;
pub mod network;
pub mod oracle;
pub mod ultrametric;

pub use cli::parse_method_spec;
pub use dendrogram::{
    cut_at_resolution, from_dendrogram, to_dendrogram, Dendrogram, Merge, Partition,
};
pub use dioid::{DioidMatrix, Dissim};
pub use error::{Error, Result};
pub use export::{to_dot, to_json, to_newick};
pub use methods::{cluster, run_method, Constituent, MethodOutput, MethodSpec};
pub use network::{
    load_network, validate_network, Network, NetworkFormat, NetworkReport, UsesTable,
};
pub use ultrametric::{validate_ultrametric, Ultrametric, UltrametricReport};
