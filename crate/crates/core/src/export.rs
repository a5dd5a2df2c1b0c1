//! Text exporters: Newick trees, JSON merge lists, DOT threshold graphs and
//! dense CSV matrices. All output is deterministic.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dendrogram::{Dendrogram, Merge, Partition};
use crate::error::{Error, Result};
use crate::network::{format_value, write_dense_csv, Network};
use crate::ultrametric::Ultrametric;

/// Newick with node heights equal to merge resolutions: every leaf sits at
/// height 0 and each branch length is `parent height - child height`, so
/// the path length from a leaf to a merge is that merge's resolution.
/// Children are ordered by their smallest leaf label. A forest yields one
/// tree per line.
pub fn to_newick(d: &Dendrogram) -> String {
    let labels = d.labels();
    #[derive(Clone)]
    enum Node {
        Leaf(usize),
        Internal { height: f64, children: Vec<usize> },
    }
    let mut nodes: Vec<Node> = (0..labels.len()).map(Node::Leaf).collect();
    let mut node_of: HashMap<Vec<usize>, usize> = (0..labels.len()).map(|i| (vec![i], i)).collect();
    let mut leaves_of: Vec<Vec<usize>> = (0..labels.len()).map(|i| vec![i]).collect();
    for Merge { resolution, blocks } in d.merges() {
        let mut children: Vec<usize> = blocks.iter().map(|b| node_of[b]).collect();
        children.sort_by(|&a, &b| {
            d.smallest_label(&leaves_of[a])
                .cmp(d.smallest_label(&leaves_of[b]))
        });
        let mut members: Vec<usize> = blocks.concat();
        members.sort_unstable();
        nodes.push(Node::Internal {
            height: *resolution,
            children,
        });
        leaves_of.push(members.clone());
        node_of.insert(members, nodes.len() - 1);
    }

    fn height(nodes: &[Node], id: usize) -> f64 {
        match &nodes[id] {
            Node::Leaf(_) => 0.0,
            Node::Internal { height, .. } => *height,
        }
    }

    fn render(nodes: &[Node], labels: &[String], id: usize, out: &mut String) {
        match &nodes[id] {
            Node::Leaf(i) => out.push_str(&newick_label(&labels[*i])),
            Node::Internal {
                height: h,
                children,
            } => {
                out.push('(');
                for (k, &child) in children.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    render(nodes, labels, child, out);
                    let _ = write!(out, ":{}", format_value(h - height(nodes, child)));
                }
                out.push(')');
            }
        }
    }

    let mut out = String::new();
    for root in d.roots() {
        render(&nodes, labels, node_of[&root], &mut out);
        out.push_str(";\n");
    }
    out
}

fn newick_label(label: &str) -> String {
    let plain = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || "()[]':;,".contains(c));
    if plain {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonMerge {
    pub resolution: f64,
    pub blocks: Vec<Vec<String>>,
}

/// `{labels, merges: [{resolution, blocks}], matrix}`; `+inf` is `null`.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonDendrogram {
    pub labels: Vec<String>,
    pub merges: Vec<JsonMerge>,
    pub matrix: Vec<Vec<Option<f64>>>,
}

impl JsonDendrogram {
    pub fn new(d: &Dendrogram, u: &Ultrametric) -> Self {
        let merges = d
            .merges()
            .iter()
            .map(|m| JsonMerge {
                resolution: m.resolution,
                blocks: m.blocks.iter().map(|b| d.block_labels(b)).collect(),
            })
            .collect();
        let matrix = u
            .matrix()
            .rows()
            .map(|row| {
                row.iter()
                    .map(|&v| if v.is_finite() { Some(v) } else { None })
                    .collect()
            })
            .collect();
        JsonDendrogram {
            labels: d.labels().to_vec(),
            merges,
            matrix,
        }
    }

    /// Rebuilds the merge sequence from labels.
    pub fn to_dendrogram(&self) -> Result<Dendrogram> {
        let index: HashMap<&str, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut merges = Vec::with_capacity(self.merges.len());
        for m in &self.merges {
            let mut blocks = Vec::with_capacity(m.blocks.len());
            for block in &m.blocks {
                let mut ids = block
                    .iter()
                    .map(|l| {
                        index
                            .get(l.as_str())
                            .copied()
                            .ok_or_else(|| Error::UnknownNode(l.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ids.sort_unstable();
                blocks.push(ids);
            }
            merges.push(Merge {
                resolution: m.resolution,
                blocks,
            });
        }
        Ok(Dendrogram::new(self.labels.clone(), merges))
    }
}

pub fn to_json(d: &Dendrogram, u: &Ultrametric) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&JsonDendrogram::new(d, u))?;
    s.push('\n');
    Ok(s)
}

pub fn dendrogram_from_json(text: &str) -> Result<Dendrogram> {
    serde_json::from_str::<JsonDendrogram>(text)?.to_dendrogram()
}

#[derive(Serialize)]
struct JsonPartition<'a> {
    resolution: f64,
    blocks: &'a [Vec<String>],
}

pub fn partition_to_json(p: &Partition) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&JsonPartition {
        resolution: p.resolution,
        blocks: &p.blocks,
    })?;
    s.push('\n');
    Ok(s)
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Directed threshold graph of a network: an edge `i -> j` wherever
/// `A(i, j) <= delta`. With a partition, nodes are grouped into one
/// subgraph cluster per block.
pub fn to_dot(net: &Network, delta: f64, partition: Option<&Partition>) -> String {
    let labels = net.labels();
    let mut out = String::new();
    let _ = writeln!(out, "digraph threshold {{");
    let _ = writeln!(out, "  label=\"A(i,j) <= {}\";", format_value(delta));
    match partition {
        Some(p) => {
            for (k, block) in p.blocks.iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{k} {{");
                for label in block {
                    let _ = writeln!(out, "    {};", dot_id(label));
                }
                let _ = writeln!(out, "  }}");
            }
        }
        None => {
            for label in labels {
                let _ = writeln!(out, "  {};", dot_id(label));
            }
        }
    }
    for i in 0..net.n() {
        for j in 0..net.n() {
            let a = net.get(i, j);
            if i != j && a <= delta {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}\"];",
                    dot_id(&labels[i]),
                    dot_id(&labels[j]),
                    format_value(a)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn write_ultrametric_csv<W: Write>(u: &Ultrametric, out: W) -> Result<()> {
    write_dense_csv(u.labels(), u.matrix(), out)
}

pub fn ultrametric_to_csv(u: &Ultrametric) -> Result<String> {
    let mut buf = Vec::new();
    write_ultrametric_csv(u, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
