//! Ultrametric matrices and their validation.
//!
//! A nonnegative square matrix `u` is an ultrametric when it is symmetric,
//! zero exactly on the diagonal, and satisfies the strong triangle
//! inequality `u(x,x') <= max(u(x,x''), u(x'',x'))`. Given the first two
//! properties, the last is equivalent to idempotency `u ⊗ u == u` in the
//! (min, max) dioid; the report computes both.

use std::fmt;

use crate::dioid::DioidMatrix;
use crate::error::{Error, Result};
use crate::methods::MethodSpec;
use crate::network::REPORT_CAP;

/// Which method produced an ultrametric, and on how many nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub method: MethodSpec,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ultrametric {
    labels: Vec<String>,
    dist: DioidMatrix,
    provenance: Option<Provenance>,
}

impl Ultrametric {
    /// Validates `dist` at the given tolerance.
    pub fn new(labels: Vec<String>, dist: DioidMatrix, tolerance: f64) -> Result<Self> {
        if labels.len() != dist.n() {
            return Err(Error::Network(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                dist.n(),
                dist.n()
            )));
        }
        let report = validate_ultrametric_labeled(&labels, &dist, tolerance);
        if !report.is_valid() {
            return Err(Error::NotUltrametric(Box::new(report)));
        }
        Ok(Ultrametric {
            labels,
            dist,
            provenance: None,
        })
    }

    /// For matrices that are ultrametric by construction.
    pub(crate) fn from_trusted(labels: Vec<String>, dist: DioidMatrix) -> Self {
        debug_assert_eq!(labels.len(), dist.n());
        Ultrametric {
            labels,
            dist,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &DioidMatrix {
        &self.dist
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist.get(i, j)
    }

    pub fn between(&self, a: &str, b: &str) -> Result<f64> {
        let idx = |l: &str| {
            self.labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownNode(l.into()))
        };
        Ok(self.get(idx(a)?, idx(b)?))
    }

    pub fn validate(&self, tolerance: f64) -> UltrametricReport {
        validate_ultrametric_labeled(&self.labels, &self.dist, tolerance)
    }

    pub fn into_parts(self) -> (Vec<String>, DioidMatrix) {
        (self.labels, self.dist)
    }
}

/// `u(x,y) > max(u(x,via), u(via,y))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleViolation {
    pub x: usize,
    pub via: usize,
    pub y: usize,
    pub direct: f64,
    pub detour: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UltrametricReport {
    pub labels: Vec<String>,
    pub tolerance: f64,
    /// Pairs `(i, j)`, `i < j`, with `|u(i,j) - u(j,i)| > tolerance`.
    pub asymmetric: Vec<(usize, usize)>,
    /// Nonzero diagonal entries `(i, i)` and zero off-diagonal entries.
    pub identity: Vec<(usize, usize)>,
    /// First violating triples, at most [`REPORT_CAP`].
    pub triangle: Vec<TriangleViolation>,
    pub triangle_count: usize,
    /// `u ⊗ u == u` within tolerance.
    pub idempotent: bool,
}

impl UltrametricReport {
    pub fn is_valid(&self) -> bool {
        self.asymmetric.is_empty() && self.identity.is_empty() && self.triangle_count == 0
    }

    /// Whether some reported violation is exactly the triple `(x, via, y)`
    /// (or its mirror `(y, via, x)`).
    pub fn has_triangle(&self, x: &str, via: &str, y: &str) -> bool {
        let name = |i: usize| self.labels[i].as_str();
        self.triangle.iter().any(|t| {
            name(t.via) == via
                && ((name(t.x) == x && name(t.y) == y) || (name(t.x) == y && name(t.y) == x))
        })
    }
}

impl fmt::Display for UltrametricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| &self.labels[i];
        if self.is_valid() {
            writeln!(f, "ultrametric: valid (tolerance {})", self.tolerance)?;
        } else {
            writeln!(f, "ultrametric: INVALID (tolerance {})", self.tolerance)?;
        }
        for &(i, j) in &self.asymmetric {
            writeln!(
                f,
                "  asymmetric: u({},{}) != u({},{})",
                name(i),
                name(j),
                name(j),
                name(i)
            )?;
        }
        for &(i, j) in &self.identity {
            if i == j {
                writeln!(f, "  identity: u({},{}) is not 0", name(i), name(j))?;
            } else {
                writeln!(
                    f,
                    "  identity: u({},{}) = 0 for distinct nodes",
                    name(i),
                    name(j)
                )?;
            }
        }
        for t in &self.triangle {
            writeln!(
                f,
                "  strong triangle inequality: u({x},{y}) = {} > max(u({x},{v}), u({v},{y})) = {} at triple ({x},{v},{y})",
                t.direct,
                t.detour,
                x = name(t.x),
                v = name(t.via),
                y = name(t.y),
            )?;
        }
        if self.triangle_count > self.triangle.len() {
            writeln!(
                f,
                "  ... {} more violating triples",
                self.triangle_count - self.triangle.len()
            )?;
        }
        writeln!(
            f,
            "  idempotent (u ⊗ u == u): {}",
            if self.idempotent { "yes" } else { "no" }
        )
    }
}

/// Checks symmetry, the identity property and the strong triangle
/// inequality by a scan over all triples, and separately checks dioid
/// idempotency. Nodes are named by index.
pub fn validate_ultrametric(m: &DioidMatrix, tolerance: f64) -> UltrametricReport {
    let labels: Vec<String> = (0..m.n()).map(|i| i.to_string()).collect();
    validate_ultrametric_labeled(&labels, m, tolerance)
}

pub fn validate_ultrametric_labeled(
    labels: &[String],
    m: &DioidMatrix,
    tolerance: f64,
) -> UltrametricReport {
    let n = m.n();
    let exceeds = |a: f64, b: f64| a > b && a - b > tolerance;
    let mut asymmetric = Vec::new();
    let mut identity = Vec::new();
    for i in 0..n {
        if m.get(i, i) != 0.0 {
            identity.push((i, i));
        }
        for j in i + 1..n {
            let (a, b) = (m.get(i, j), m.get(j, i));
            if exceeds(a, b) || exceeds(b, a) {
                asymmetric.push((i, j));
            }
            if a == 0.0 || b == 0.0 {
                identity.push((i, j));
            }
        }
    }
    let mut triangle = Vec::new();
    let mut triangle_count = 0;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let direct = m.get(x, y);
            for via in 0..n {
                if via == x || via == y {
                    continue;
                }
                let detour = m.get(x, via).max(m.get(via, y));
                if exceeds(direct, detour) {
                    triangle_count += 1;
                    if triangle.len() < REPORT_CAP {
                        triangle.push(TriangleViolation {
                            x,
                            via,
                            y,
                            direct,
                            detour,
                        });
                    }
                }
            }
        }
    }
    let squared = m.product(m).expect("square matrix");
    let idempotent = squared.max_abs_diff(m) <= tolerance;
    UltrametricReport {
        labels: labels.to_vec(),
        tolerance,
        asymmetric: asymmetric.into_iter().take(REPORT_CAP).collect(),
        identity: identity.into_iter().take(REPORT_CAP).collect(),
        triangle,
        triangle_count,
        idempotent,
    }
}
