//! Dendrograms as merge sequences, and the bijection with ultrametrics:
//! `u(x, x')` is the smallest resolution at which `x` and `x'` share a
//! block.

use std::fmt;

use crate::dioid::DioidMatrix;
use crate::error::{Error, Result};
use crate::ultrametric::Ultrametric;

/// Clusters joining at one resolution. `blocks` are the clusters that
/// existed just below `resolution`; their union is the new cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct Merge {
    pub resolution: f64,
    /// Leaf indices; each block sorted ascending.
    pub blocks: Vec<Vec<usize>>,
}

impl Merge {
    pub fn members(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.concat();
        all.sort_unstable();
        all
    }
}

/// A nested family of partitions, stored as merge events in nondecreasing
/// order of resolution. Clusters that never merge are separate roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    /// Unchecked; [`from_dendrogram`] validates the merge sequence.
    pub fn new(labels: Vec<String>, merges: Vec<Merge>) -> Self {
        Dendrogram { labels, merges }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn block_labels(&self, block: &[usize]) -> Vec<String> {
        block.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Leaf sets of the top-level clusters, ordered by smallest leaf label.
    pub fn roots(&self) -> Vec<Vec<usize>> {
        let mut clusters = Clusters::singletons(self.labels.len());
        for merge in &self.merges {
            let ids: Vec<usize> = merge.blocks.iter().map(|b| clusters.id_of(b[0])).collect();
            clusters.join(&ids);
        }
        let mut roots = clusters.live();
        roots.sort_by(|a, b| self.smallest_label(a).cmp(self.smallest_label(b)));
        roots
    }

    pub(crate) fn smallest_label(&self, block: &[usize]) -> &str {
        block
            .iter()
            .map(|&i| self.labels[i].as_str())
            .min()
            .unwrap_or("")
    }

    pub fn is_forest(&self) -> bool {
        self.roots().len() > 1
    }
}

impl fmt::Display for Dendrogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for merge in &self.merges {
            let blocks: Vec<String> = merge
                .blocks
                .iter()
                .map(|b| format!("{{{}}}", self.block_labels(b).join(", ")))
                .collect();
            writeln!(
                f,
                "{} -> {}",
                crate::network::format_value(merge.resolution),
                blocks.join(" + ")
            )?;
        }
        Ok(())
    }
}

/// Disjoint clusters over leaf indices, tracked by id.
struct Clusters {
    owner: Vec<usize>,
    members: Vec<Vec<usize>>,
    formed_at: Vec<f64>,
}

impl Clusters {
    fn singletons(n: usize) -> Self {
        Clusters {
            owner: (0..n).collect(),
            members: (0..n).map(|i| vec![i]).collect(),
            formed_at: vec![0.0; n],
        }
    }

    fn id_of(&self, leaf: usize) -> usize {
        self.owner[leaf]
    }

    /// Joins the given cluster ids into the first one; returns its id.
    fn join(&mut self, ids: &[usize]) -> usize {
        let target = ids[0];
        for &id in &ids[1..] {
            let moved = std::mem::take(&mut self.members[id]);
            for &leaf in &moved {
                self.owner[leaf] = target;
            }
            self.members[target].extend(moved);
        }
        self.members[target].sort_unstable();
        target
    }

    fn live(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .filter(|m| !m.is_empty())
            .cloned()
            .collect()
    }
}

/// Minimal union-find used to group clusters within one resolution level.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}

/// Merge tree of an ultrametric: at each distinct finite value `δ` the
/// components of the graph `{(x, x'): u(x, x') <= δ}` join, all in one
/// event per new cluster. Infinite entries leave separate roots.
pub fn to_dendrogram(u: &Ultrametric) -> Result<Dendrogram> {
    let report = u.validate(0.0);
    if !report.is_valid() {
        return Err(Error::NotUltrametric(Box::new(report)));
    }
    Ok(threshold_merges(u.labels(), u.matrix()))
}

fn threshold_merges(labels: &[String], m: &DioidMatrix) -> Dendrogram {
    let n = m.n();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let v = m.get(i, j);
            if v.is_finite() {
                pairs.push((v, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut clusters = Clusters::singletons(n);
    let mut merges = Vec::new();
    let mut start = 0;
    while start < pairs.len() {
        let level = pairs[start].0;
        let end = start + pairs[start..].iter().take_while(|p| p.0 == level).count();
        let mut uf = UnionFind::new(n);
        for &(_, i, j) in &pairs[start..end] {
            uf.union(clusters.id_of(i), clusters.id_of(j));
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
        for id in 0..n {
            if !clusters.members[id].is_empty() {
                let root = uf.find(id);
                groups[root].push(id);
            }
        }
        let mut level_merges = Vec::new();
        for group in groups.into_iter().filter(|g| g.len() > 1) {
            let mut blocks: Vec<Vec<usize>> = group
                .iter()
                .map(|&id| clusters.members[id].clone())
                .collect();
            blocks.sort_by(|a, b| min_label(labels, a).cmp(min_label(labels, b)));
            clusters.join(&group);
            level_merges.push(Merge {
                resolution: level,
                blocks,
            });
        }
        level_merges
            .sort_by(|a, b| min_label(labels, &a.members()).cmp(min_label(labels, &b.members())));
        merges.extend(level_merges);
        start = end;
    }
    Dendrogram {
        labels: labels.to_vec(),
        merges,
    }
}

fn min_label<'a>(labels: &'a [String], block: &[usize]) -> &'a str {
    block
        .iter()
        .map(|&i| labels[i].as_str())
        .min()
        .unwrap_or("")
}

/// Ultrametric of a dendrogram. Each merge must join clusters that exist at
/// that point, at a resolution strictly above the one each block formed at;
/// resolutions must be positive and nondecreasing.
pub fn from_dendrogram(d: &Dendrogram) -> Result<Ultrametric> {
    let n = d.labels.len();
    let mut dist = DioidMatrix::identity(n);
    let mut clusters = Clusters::singletons(n);
    let mut previous = 0.0;
    for (k, merge) in d.merges.iter().enumerate() {
        let delta = merge.resolution;
        let fail = |msg: String| Error::Dendrogram(format!("merge #{k} at {delta}: {msg}"));
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(fail("resolution must be positive and finite".into()));
        }
        if delta < previous {
            return Err(fail(format!(
                "resolutions must be nondecreasing (previous {previous})"
            )));
        }
        if merge.blocks.len() < 2 {
            return Err(fail("a merge needs at least two blocks".into()));
        }
        let mut ids = Vec::with_capacity(merge.blocks.len());
        for block in &merge.blocks {
            let mut sorted = block.clone();
            sorted.sort_unstable();
            let first = *sorted.first().ok_or_else(|| fail("empty block".into()))?;
            if sorted.iter().any(|&leaf| leaf >= n) {
                return Err(fail("leaf index out of range".into()));
            }
            let id = clusters.id_of(first);
            if clusters.members[id] != sorted {
                return Err(fail(format!(
                    "block {:?} is not a cluster at this resolution (not nested)",
                    d.block_labels(&sorted)
                )));
            }
            if ids.contains(&id) {
                return Err(fail("the same cluster appears twice".into()));
            }
            if clusters.formed_at[id] >= delta {
                return Err(fail(format!(
                    "block {:?} formed at the same resolution; simultaneous joins must be one event",
                    d.block_labels(&sorted)
                )));
            }
            ids.push(id);
        }
        for (a, &ia) in ids.iter().enumerate() {
            for &ib in &ids[a + 1..] {
                for &x in &clusters.members[ia] {
                    for &y in &clusters.members[ib] {
                        dist.set(x, y, crate::dioid::Dissim::new(delta).expect("positive"));
                        dist.set(y, x, crate::dioid::Dissim::new(delta).expect("positive"));
                    }
                }
            }
        }
        let id = clusters.join(&ids);
        clusters.formed_at[id] = delta;
        previous = delta;
    }
    Ok(Ultrametric::from_trusted(d.labels.clone(), dist))
}

/// Blocks of nodes co-clustered at one resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub resolution: f64,
    /// Node labels; blocks ordered by their first node in input order.
    pub blocks: Vec<Vec<String>>,
}

impl Partition {
    /// Every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            coarser
                .blocks
                .iter()
                .any(|c| b.iter().all(|x| c.contains(x)))
        })
    }

    /// The block containing `label`.
    pub fn block_of(&self, label: &str) -> Option<&[String]> {
        self.blocks
            .iter()
            .find(|b| b.iter().any(|x| x == label))
            .map(Vec::as_slice)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.join(", ")))
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

/// Equivalence classes of `u(x, x') <= delta`.
pub fn cut_at_resolution(u: &Ultrametric, delta: f64) -> Result<Partition> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::Parameter(format!(
            "resolution must be nonnegative, got {delta}"
        )));
    }
    let n = u.n();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if u.get(i, j) <= delta {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut order = Vec::new();
    for i in 0..n {
        let root = uf.find(i);
        if by_root[root].is_empty() {
            order.push(root);
        }
        by_root[root].push(u.labels()[i].clone());
    }
    let blocks = order
        .into_iter()
        .map(|r| std::mem::take(&mut by_root[r]))
        .collect();
    Ok(Partition {
        resolution: delta,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ultra(names: &[&str], rows: &[&[f64]]) -> Ultrametric {
        Ultrametric::new(labels(names), DioidMatrix::from_rows(rows).unwrap(), 0.0).unwrap()
    }

    #[test]
    fn single_leaf() {
        let u = ultra(&["x"], &[&[0.0]]);
        let d = to_dendrogram(&u).unwrap();
        assert!(d.merges().is_empty());
        assert_eq!(d.roots(), vec![vec![0]]);
        assert_eq!(from_dendrogram(&d).unwrap().matrix(), u.matrix());
    }

    #[test]
    fn two_leaves_from_dendrogram() {
        let d = Dendrogram::new(
            labels(&["p", "q"]),
            vec![Merge {
                resolution: 5.0,
                blocks: vec![vec![0], vec![1]],
            }],
        );
        let u = from_dendrogram(&d).unwrap();
        assert_eq!(u.get(0, 1), 5.0);
        assert_eq!(u.get(1, 0), 5.0);
    }

    #[test]
    fn forest_gives_infinity() {
        let d = Dendrogram::new(
            labels(&["a", "b", "c"]),
            vec![Merge {
                resolution: 1.0,
                blocks: vec![vec![0], vec![1]],
            }],
        );
        let u = from_dendrogram(&d).unwrap();
        assert!(u.get(0, 2).is_infinite());
        assert!(u.get(1, 2).is_infinite());
        assert!(d.is_forest());
        assert_eq!(to_dendrogram(&u).unwrap(), d);
    }

    #[test]
    fn simultaneous_join_is_one_event() {
        let u = ultra(
            &["a", "b", "c"],
            &[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]],
        );
        let d = to_dendrogram(&u).unwrap();
        assert_eq!(d.merges().len(), 1);
        assert_eq!(d.merges()[0].blocks, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn non_nested_merge_rejected() {
        let d = Dendrogram::new(
            labels(&["a", "b", "c"]),
            vec![
                Merge {
                    resolution: 1.0,
                    blocks: vec![vec![0], vec![1]],
                },
                Merge {
                    resolution: 2.0,
                    blocks: vec![vec![1], vec![2]],
                },
            ],
        );
        let err = from_dendrogram(&d).unwrap_err().to_string();
        assert!(err.contains("not nested"), "{err}");
    }

    #[test]
    fn decreasing_and_equal_resolutions_rejected() {
        let decreasing = Dendrogram::new(
            labels(&["a", "b", "c"]),
            vec![
                Merge {
                    resolution: 2.0,
                    blocks: vec![vec![0], vec![1]],
                },
                Merge {
                    resolution: 1.0,
                    blocks: vec![vec![0, 1], vec![2]],
                },
            ],
        );
        assert!(from_dendrogram(&decreasing).is_err());
        let same = Dendrogram::new(
            labels(&["a", "b", "c"]),
            vec![
                Merge {
                    resolution: 1.0,
                    blocks: vec![vec![0], vec![1]],
                },
                Merge {
                    resolution: 1.0,
                    blocks: vec![vec![0, 1], vec![2]],
                },
            ],
        );
        assert!(from_dendrogram(&same).is_err());
    }

    #[test]
    fn to_dendrogram_rejects_non_ultrametric() {
        let u = Ultrametric::from_trusted(
            labels(&["a", "b", "c"]),
            DioidMatrix::from_rows(&[[0.0, 3.0, 1.0], [3.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).unwrap(),
        );
        assert!(matches!(to_dendrogram(&u), Err(Error::NotUltrametric(_))));
    }

    #[test]
    fn cut_basics() {
        let u = ultra(
            &["a", "b", "c"],
            &[&[0.0, 2.0, 5.0], &[2.0, 0.0, 5.0], &[5.0, 5.0, 0.0]],
        );
        assert_eq!(cut_at_resolution(&u, 0.0).unwrap().blocks.len(), 3);
        assert_eq!(
            cut_at_resolution(&u, 2.0).unwrap().blocks,
            vec![labels(&["a", "b"]), labels(&["c"])]
        );
        assert_eq!(cut_at_resolution(&u, 100.0).unwrap().blocks.len(), 1);
        assert!(cut_at_resolution(&u, -1.0).is_err());
    }
}
