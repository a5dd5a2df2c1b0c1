//! Hierarchical clustering methods for asymmetric networks, each a map from
//! a [`Network`] to an [`Ultrametric`] computed with dioid matrix powers.
//!
//! | method | ultrametric |
//! |---|---|
//! | reciprocal | `max(A, Aᵀ)^(n-1)` |
//! | nonreciprocal | `max(A^(n-1), (Aᵀ)^(n-1))` |
//! | semi-reciprocal `t` | `max(A^(t-1), (Aᵀ)^(t-1))^(n-1)` |
//! | intermediate `t, t'` | `max(A^t, (Aᵀ)^t')^(n-1)` |
//! | graft R/NR `β` | `u^NR` where `u^R <= β`, else `u^R` |
//! | graft R/Rmax `β` | `u^R` where `u^R <= β`, else `max(β, u^NR)` |
//! | convex | `(Σ θ_k u^k)^(n-1)` |
//! | single linkage | `A^(n-1)`, symmetric input only |
//!
//! Every admissible method lands between the nonreciprocal (smallest) and
//! reciprocal (largest) ultrametrics entrywise.

use std::fmt;

use crate::dioid::DioidMatrix;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::ultrametric::{
    validate_ultrametric_labeled, Provenance, Ultrametric, UltrametricReport,
};

/// Convex weights must sum to one within this tolerance.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Validation tolerance for outputs that involve ordinary arithmetic.
pub const CONVEX_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum MethodSpec {
    Reciprocal,
    Nonreciprocal,
    SingleLinkage,
    /// Secondary chains of at most `t` nodes, `t >= 2`.
    SemiReciprocal {
        t: usize,
    },
    /// Forward chains of at most `t_fwd` hops, backward of at most `t_bwd`.
    Intermediate {
        t_fwd: usize,
        t_bwd: usize,
    },
    GraftRNr {
        beta: f64,
    },
    GraftRRmax {
        beta: f64,
    },
    /// Not a valid method; kept to reproduce its failure.
    GraftRRInvalid {
        beta: f64,
    },
    Convex(Vec<Constituent>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constituent {
    pub weight: f64,
    pub method: MethodSpec,
}

impl Constituent {
    pub fn new(weight: f64, method: MethodSpec) -> Self {
        Constituent { weight, method }
    }
}

impl MethodSpec {
    pub fn convex(parts: impl IntoIterator<Item = (f64, MethodSpec)>) -> Self {
        MethodSpec::Convex(
            parts
                .into_iter()
                .map(|(w, m)| Constituent::new(w, m))
                .collect(),
        )
    }

    /// Checks parameter ranges, recursively for convex constituents.
    pub fn validate(&self) -> Result<()> {
        match self {
            MethodSpec::Reciprocal | MethodSpec::Nonreciprocal | MethodSpec::SingleLinkage => {
                Ok(())
            }
            MethodSpec::SemiReciprocal { t } if *t < 2 => Err(Error::Parameter(format!(
                "semi-reciprocal requires t >= 2, got {t}"
            ))),
            MethodSpec::SemiReciprocal { .. } => Ok(()),
            MethodSpec::Intermediate { t_fwd, t_bwd } if *t_fwd < 1 || *t_bwd < 1 => {
                Err(Error::Parameter(format!(
                    "intermediate requires t, t' >= 1, got {t_fwd}, {t_bwd}"
                )))
            }
            MethodSpec::Intermediate { .. } => Ok(()),
            MethodSpec::GraftRNr { beta }
            | MethodSpec::GraftRRmax { beta }
            | MethodSpec::GraftRRInvalid { beta } => check_beta(*beta),
            MethodSpec::Convex(parts) => {
                if parts.len() < 2 {
                    return Err(Error::Parameter(
                        "convex combination needs at least 2 constituents".into(),
                    ));
                }
                for part in parts {
                    if !(0.0..=1.0).contains(&part.weight) {
                        return Err(Error::Parameter(format!(
                            "convex weight {} is outside [0, 1]",
                            part.weight
                        )));
                    }
                    if !part.method.is_admissible() {
                        return Err(Error::Parameter(format!(
                            "'{}' does not produce an ultrametric and cannot be a convex constituent",
                            part.method
                        )));
                    }
                    part.method.validate()?;
                }
                let sum: f64 = parts.iter().map(|p| p.weight).sum();
                if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                    return Err(Error::Parameter(format!(
                        "convex weights sum to {sum}, expected 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// `false` only for the R/R graft, anywhere in the spec tree.
    pub fn is_admissible(&self) -> bool {
        match self {
            MethodSpec::GraftRRInvalid { .. } => false,
            MethodSpec::Convex(parts) => parts.iter().all(|p| p.method.is_admissible()),
            _ => true,
        }
    }

    /// Whether the output uses only min and max, so validation is exact.
    pub fn is_exact(&self) -> bool {
        !matches!(self, MethodSpec::Convex(_))
    }

    /// 0 for min/max-only methods, [`CONVEX_TOLERANCE`] otherwise.
    pub fn tolerance(&self) -> f64 {
        if self.is_exact() {
            0.0
        } else {
            CONVEX_TOLERANCE
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MethodSpec::Reciprocal => "reciprocal",
            MethodSpec::Nonreciprocal => "nonreciprocal",
            MethodSpec::SingleLinkage => "single-linkage",
            MethodSpec::SemiReciprocal { .. } => "semi-reciprocal",
            MethodSpec::Intermediate { .. } => "intermediate",
            MethodSpec::GraftRNr { .. } => "graft-rnr",
            MethodSpec::GraftRRmax { .. } => "graft-rrmax",
            MethodSpec::GraftRRInvalid { .. } => "graft-rr-invalid",
            MethodSpec::Convex(_) => "convex",
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "beta must be a positive finite number, got {beta}"
        )))
    }
}

/// Prints the same grammar [`crate::cli::parse_method_spec`] reads.
impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Reciprocal | MethodSpec::Nonreciprocal | MethodSpec::SingleLinkage => {
                f.write_str(self.name())
            }
            MethodSpec::SemiReciprocal { t } => write!(f, "semi-reciprocal:{t}"),
            MethodSpec::Intermediate { t_fwd, t_bwd } => write!(f, "intermediate:{t_fwd},{t_bwd}"),
            MethodSpec::GraftRNr { beta }
            | MethodSpec::GraftRRmax { beta }
            | MethodSpec::GraftRRInvalid { beta } => {
                write!(f, "{}:{beta}", self.name())
            }
            MethodSpec::Convex(parts) => {
                f.write_str("convex:")?;
                for (k, part) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("+")?;
                    }
                    match part.method {
                        MethodSpec::Convex(_) => write!(f, "{}*({})", part.weight, part.method)?,
                        _ => write!(f, "{}*{}", part.weight, part.method)?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// The result of [`run_method`]: an ultrametric, or for the R/R graft a
/// matrix that failed validation.
#[derive(Clone, Debug)]
pub enum MethodOutput {
    Ultrametric(Ultrametric),
    NotUltrametric(GraftCandidate),
}

impl MethodOutput {
    pub fn into_ultrametric(self) -> Result<Ultrametric> {
        match self {
            MethodOutput::Ultrametric(u) => Ok(u),
            MethodOutput::NotUltrametric(c) => Err(Error::NotUltrametric(Box::new(c.report))),
        }
    }
}

/// Output of the R/R graft together with its validity report.
#[derive(Clone, Debug)]
pub struct GraftCandidate {
    pub labels: Vec<String>,
    pub matrix: DioidMatrix,
    pub report: UltrametricReport,
}

impl GraftCandidate {
    pub fn is_ultrametric(&self) -> bool {
        self.report.is_valid()
    }

    pub fn into_ultrametric(self) -> Result<Ultrametric> {
        if self.report.is_valid() {
            Ok(Ultrametric::from_trusted(self.labels, self.matrix))
        } else {
            Err(Error::NotUltrametric(Box::new(self.report)))
        }
    }
}

fn finish(net: &Network, dist: DioidMatrix) -> Ultrametric {
    Ultrametric::from_trusted(net.labels().to_vec(), dist)
}

/// Cheapest directed chain costs, `A^(n-1)`, with the stabilization check.
fn closure(m: &DioidMatrix) -> Result<DioidMatrix> {
    m.quasi_inverse()
}

/// Powers beyond `n - 1` equal `A^(n-1)` for zero-diagonal matrices.
fn clamp_power(k: usize, n: usize) -> usize {
    k.min(n.saturating_sub(1))
}

/// `u^R = max(A, Aᵀ)^(n-1)`: clusters form only along chains with small
/// dissimilarity in both directions on every link.
pub fn reciprocal(net: &Network) -> Result<Ultrametric> {
    Ok(finish(net, closure(&net.dissim().symmetrize_max())?))
}

fn nonreciprocal_matrix(net: &Network) -> Result<DioidMatrix> {
    let forward = closure(net.dissim())?;
    // (Aᵀ)^(n-1) == (A^(n-1))ᵀ
    forward.elementwise_max(&forward.transpose())
}

/// `u^NR = max(A^(n-1), (Aᵀ)^(n-1))`: forward and backward chains may differ.
pub fn nonreciprocal(net: &Network) -> Result<Ultrametric> {
    Ok(finish(net, nonreciprocal_matrix(net)?))
}

/// Semi-reciprocal ultrametric: reciprocal clustering over the costs of
/// secondary chains with at most `t` nodes in each direction.
pub fn semi_reciprocal(net: &Network, t: usize) -> Result<Ultrametric> {
    MethodSpec::SemiReciprocal { t }.validate()?;
    intermediate_unchecked(net, t - 1, t - 1)
}

/// Algorithmic intermediate method `max(A^t_fwd, (Aᵀ)^t_bwd)^(n-1)`.
/// Exponents above `n - 1` are clamped; the powers have stabilized there.
pub fn intermediate(net: &Network, t_fwd: usize, t_bwd: usize) -> Result<Ultrametric> {
    MethodSpec::Intermediate { t_fwd, t_bwd }.validate()?;
    intermediate_unchecked(net, t_fwd, t_bwd)
}

fn intermediate_unchecked(net: &Network, t_fwd: usize, t_bwd: usize) -> Result<Ultrametric> {
    let n = net.n();
    let a = net.dissim();
    let forward = a.power(clamp_power(t_fwd, n));
    let backward = a.transpose().power(clamp_power(t_bwd, n));
    Ok(finish(net, closure(&forward.elementwise_max(&backward)?)?))
}

/// Reciprocal and nonreciprocal ultrametrics, the two inputs of every graft.
fn extremes(net: &Network) -> Result<(DioidMatrix, DioidMatrix)> {
    let r = closure(&net.dissim().symmetrize_max())?;
    let nr = nonreciprocal_matrix(net)?;
    Ok((r, nr))
}

fn graft(net: &Network, beta: f64, pick: impl Fn(f64, f64) -> f64) -> Result<DioidMatrix> {
    check_beta(beta)?;
    let (r, nr) = extremes(net)?;
    DioidMatrix::from_fn(net.n(), |i, j| pick(r.get(i, j), nr.get(i, j)))
}

/// Replaces reciprocal branches below `beta` by nonreciprocal ones.
pub fn graft_r_nr(net: &Network, beta: f64) -> Result<Ultrametric> {
    let dist = graft(net, beta, |r, nr| if r <= beta { nr } else { r })?;
    Ok(finish(net, dist))
}

/// Keeps reciprocal values up to `beta`; above it uses nonreciprocal values
/// saturated from below at `beta`.
pub fn graft_r_rmax(net: &Network, beta: f64) -> Result<Ultrametric> {
    let dist = graft(net, beta, |r, nr| if r <= beta { r } else { nr.max(beta) })?;
    Ok(finish(net, dist))
}

/// Reciprocal values up to `beta`, nonreciprocal values above. This is not
/// an ultrametric in general; the returned report says whether it is.
pub fn graft_r_r_invalid(net: &Network, beta: f64) -> Result<GraftCandidate> {
    let matrix = graft(net, beta, |r, nr| if r <= beta { r } else { nr })?;
    let report = validate_ultrametric_labeled(net.labels(), &matrix, 0.0);
    Ok(GraftCandidate {
        labels: net.labels().to_vec(),
        matrix,
        report,
    })
}

/// Weighted sum of constituent ultrametrics followed by single linkage.
/// `θ·inf` is `inf` for `θ > 0` and `0` for `θ = 0`.
pub fn convex_combination(net: &Network, parts: &[Constituent]) -> Result<Ultrametric> {
    let spec = MethodSpec::Convex(parts.to_vec());
    spec.validate()?;
    let outputs = parts
        .iter()
        .map(|p| cluster(net, &p.method))
        .collect::<Result<Vec<_>>>()?;
    let n = net.n();
    let combined = DioidMatrix::from_fn(n, |i, j| {
        parts
            .iter()
            .zip(&outputs)
            .map(|(p, u)| {
                if p.weight == 0.0 {
                    0.0
                } else {
                    p.weight * u.get(i, j)
                }
            })
            .sum()
    })?;
    Ok(finish(net, closure(&combined)?))
}

/// `A^(n-1)` for a symmetric network.
pub fn single_linkage(net: &Network) -> Result<Ultrametric> {
    if let Some((i, j)) = net.dissim().first_asymmetry() {
        return Err(Error::Asymmetric {
            row: net.labels()[i].clone(),
            col: net.labels()[j].clone(),
        });
    }
    Ok(finish(net, closure(net.dissim())?))
}

/// Runs `spec` on `net` and records provenance on the output.
pub fn run_method(net: &Network, spec: &MethodSpec) -> Result<MethodOutput> {
    spec.validate()?;
    let report = net.validate();
    if !report.is_valid() {
        return Err(Error::Network(format!("invalid network:\n{report}")));
    }
    let provenance = Provenance {
        method: spec.clone(),
        n: net.n(),
    };
    let output = match spec {
        MethodSpec::GraftRRInvalid { beta } => {
            let candidate = graft_r_r_invalid(net, *beta)?;
            if candidate.is_ultrametric() {
                MethodOutput::Ultrametric(candidate.into_ultrametric()?.with_provenance(provenance))
            } else {
                MethodOutput::NotUltrametric(candidate)
            }
        }
        _ => MethodOutput::Ultrametric(cluster_unchecked(net, spec)?.with_provenance(provenance)),
    };
    Ok(output)
}

/// Like [`run_method`] but fails when the result is not an ultrametric.
pub fn cluster(net: &Network, spec: &MethodSpec) -> Result<Ultrametric> {
    spec.validate()?;
    cluster_unchecked(net, spec).map(|u| {
        u.with_provenance(Provenance {
            method: spec.clone(),
            n: net.n(),
        })
    })
}

fn cluster_unchecked(net: &Network, spec: &MethodSpec) -> Result<Ultrametric> {
    match spec {
        MethodSpec::Reciprocal => reciprocal(net),
        MethodSpec::Nonreciprocal => nonreciprocal(net),
        MethodSpec::SingleLinkage => single_linkage(net),
        MethodSpec::SemiReciprocal { t } => semi_reciprocal(net, *t),
        MethodSpec::Intermediate { t_fwd, t_bwd } => intermediate(net, *t_fwd, *t_bwd),
        MethodSpec::GraftRNr { beta } => graft_r_nr(net, *beta),
        MethodSpec::GraftRRmax { beta } => graft_r_rmax(net, *beta),
        MethodSpec::GraftRRInvalid { beta } => graft_r_r_invalid(net, *beta)?.into_ultrametric(),
        MethodSpec::Convex(parts) => convex_combination(net, parts),
    }
}
