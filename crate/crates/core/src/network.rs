//! Networks: labeled nodes with an asymmetric dissimilarity matrix, plus the
//! readers and writers for the on-disk formats.
//!
//! * Dense CSV: the first row and first column carry labels (the corner cell
//!   is ignored). Cells are numbers; `inf` (any case) or an empty cell is
//!   `+inf`. An empty diagonal cell means 0.
//! * Edge list: one `src<TAB>dst<TAB>weight` per line. Pairs that are not
//!   listed are `+inf`. Blank lines and lines starting with `#` are skipped.
//! * Uses table: the dense CSV layout holding nonnegative flows, where
//!   `flow[i][j]` is the amount sector `j` buys from sector `i`. It is turned
//!   into dissimilarities by [`UsesTable::to_network`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use crate::dioid::{DioidMatrix, Dissim};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetworkFormat {
    DenseCsv,
    EdgeList,
    Uses,
}

impl FromStr for NetworkFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense-csv" => Ok(NetworkFormat::DenseCsv),
            "edge-list" => Ok(NetworkFormat::EdgeList),
            "uses" => Ok(NetworkFormat::Uses),
            other => Err(Error::Parse {
                location: "format".into(),
                message: format!("unknown format '{other}', expected dense-csv, edge-list or uses"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Drop self-flows `U(i,i)` from the column sums of a uses table.
    pub uses_exclude_diagonal: bool,
}

/// A set of labeled nodes and the dissimilarity `A(x, x')` from each node to
/// every other. Dissimilarities may be asymmetric and may be `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    labels: Vec<String>,
    dissim: DioidMatrix,
}

impl Network {
    /// Checks label count, label uniqueness and a zero diagonal. Zero
    /// off-diagonal entries are accepted here and flagged by [`validate`](Self::validate).
    pub fn new(labels: Vec<String>, dissim: DioidMatrix) -> Result<Self> {
        if labels.len() != dissim.n() {
            return Err(Error::Network(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                dissim.n(),
                dissim.n()
            )));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Network(format!("duplicate label '{label}'")));
            }
        }
        for (i, label) in labels.iter().enumerate() {
            let d = dissim.get(i, i);
            if d != 0.0 {
                return Err(Error::Network(format!(
                    "nonzero diagonal A({label},{label}) = {d}"
                )));
            }
        }
        Ok(Network { labels, dissim })
    }

    /// Convenience constructor from row slices.
    pub fn from_rows<L, R>(labels: &[L], rows: &[R]) -> Result<Self>
    where
        L: AsRef<str>,
        R: AsRef<[f64]>,
    {
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Network::new(labels, DioidMatrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dissim(&self) -> &DioidMatrix {
        &self.dissim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dissim.get(i, j)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Dissimilarity between two nodes by label.
    pub fn between(&self, from: &str, to: &str) -> Result<f64> {
        let i = self
            .index_of(from)
            .ok_or_else(|| Error::UnknownNode(from.into()))?;
        let j = self
            .index_of(to)
            .ok_or_else(|| Error::UnknownNode(to.into()))?;
        Ok(self.get(i, j))
    }

    /// Same nodes with every dissimilarity reversed.
    pub fn transposed(&self) -> Network {
        Network {
            labels: self.labels.clone(),
            dissim: self.dissim.transpose(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.dissim.is_symmetric()
    }

    pub fn validate(&self) -> NetworkReport {
        validate_network(self)
    }

    /// Writes the network as dense CSV.
    pub fn write_dense_csv<W: Write>(&self, out: W) -> Result<()> {
        write_dense_csv(&self.labels, &self.dissim, out)
    }
}

/// Problems found in a [`Network`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkReport {
    /// Ordered pairs `(x, x')`, `x != x'`, with `A(x, x') = 0`.
    pub zero_off_diagonal: Vec<(String, String)>,
    /// Every directed minimax chain cost is finite.
    pub minimax_connected: bool,
    /// Ordered pairs with no finite chain, capped at [`REPORT_CAP`].
    pub unreachable: Vec<(String, String)>,
}

/// Maximum number of items listed per category in validity reports.
pub const REPORT_CAP: usize = 20;

impl NetworkReport {
    /// No violations of the network definition. Disconnection is not a
    /// violation; it produces dendrogram forests downstream.
    pub fn is_valid(&self) -> bool {
        self.zero_off_diagonal.is_empty()
    }
}

impl fmt::Display for NetworkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "network: valid")?;
        } else {
            writeln!(f, "network: INVALID")?;
            for (a, b) in &self.zero_off_diagonal {
                writeln!(
                    f,
                    "  zero dissimilarity between distinct nodes: A({a},{b}) = 0"
                )?;
            }
        }
        if self.minimax_connected {
            writeln!(f, "minimax-connected: yes")
        } else {
            writeln!(f, "minimax-connected: no (dendrograms will be forests)")?;
            for (a, b) in &self.unreachable {
                writeln!(f, "  no chain from {a} to {b}")?;
            }
            Ok(())
        }
    }
}

pub fn validate_network(net: &Network) -> NetworkReport {
    let n = net.n();
    let labels = net.labels();
    let mut zero_off_diagonal = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && net.get(i, j) == 0.0 {
                zero_off_diagonal.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let closure = net
        .dissim()
        .quasi_inverse()
        .expect("network diagonal is zero");
    let mut unreachable = Vec::new();
    let mut minimax_connected = true;
    for i in 0..n {
        for j in 0..n {
            if closure.get(i, j).is_infinite() {
                minimax_connected = false;
                if unreachable.len() < REPORT_CAP {
                    unreachable.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
    }
    NetworkReport {
        zero_off_diagonal,
        minimax_connected,
        unreachable,
    }
}

/// Sector-to-sector flows, `flow[i][j]` being what sector `j` uses from `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct UsesTable {
    labels: Vec<String>,
    flow: Vec<f64>,
}

impl UsesTable {
    pub fn new(labels: Vec<String>, flow: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if flow.len() != n || flow.iter().any(|r| r.len() != n) {
            return Err(Error::Network(format!("uses table must be {n}x{n}")));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Network(format!("duplicate label '{label}'")));
            }
        }
        for (i, row) in flow.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(Error::Parse {
                        location: format!("cell ({}, {})", labels[i], labels[j]),
                        message: format!("flow must be a finite nonnegative number, got {v}"),
                    });
                }
            }
        }
        Ok(UsesTable {
            labels,
            flow: flow.concat(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn flow(&self, i: usize, j: usize) -> f64 {
        self.flow[i * self.labels.len() + j]
    }

    /// `A(i, j) = 1 - U(i, j) / Σ_k U(k, j)`: one minus the share of `j`'s
    /// inputs supplied by `i`. With `exclude_diagonal` the self-flow
    /// `U(j, j)` is left out of the column sum.
    pub fn to_network(&self, exclude_diagonal: bool) -> Result<Network> {
        let n = self.labels.len();
        let mut column_sums = vec![0.0; n];
        for (j, sum) in column_sums.iter_mut().enumerate() {
            *sum = (0..n)
                .filter(|&k| !(exclude_diagonal && k == j))
                .map(|k| self.flow(k, j))
                .sum();
        }
        if n > 1 {
            if let Some(j) = column_sums.iter().position(|&s| s <= 0.0) {
                return Err(Error::ZeroColumn {
                    sector: self.labels[j].clone(),
                });
            }
        }
        let matrix = DioidMatrix::from_fn(n, |i, j| {
            if i == j {
                0.0
            } else {
                // Rounding can push the share a hair above 1.
                (1.0 - self.flow(i, j) / column_sums[j]).max(0.0)
            }
        })?;
        Network::new(self.labels.clone(), matrix)
    }
}

/// Normalizes a uses table with self-flows kept in the column sums.
pub fn from_uses_table(table: &UsesTable) -> Result<Network> {
    table.to_network(false)
}

pub fn load_network<R: Read>(source: R, format: NetworkFormat) -> Result<Network> {
    load_network_with(source, format, &LoadOptions::default())
}

pub fn load_network_with<R: Read>(
    source: R,
    format: NetworkFormat,
    options: &LoadOptions,
) -> Result<Network> {
    match format {
        NetworkFormat::DenseCsv => {
            let (labels, rows) = read_dense(source, CellKind::Dissimilarity)?;
            Network::new(labels, DioidMatrix::from_rows(&rows)?)
        }
        NetworkFormat::EdgeList => read_edge_list(source),
        NetworkFormat::Uses => load_uses_table(source)?.to_network(options.uses_exclude_diagonal),
    }
}

pub fn load_uses_table<R: Read>(source: R) -> Result<UsesTable> {
    let (labels, rows) = read_dense(source, CellKind::Flow)?;
    UsesTable::new(labels, rows)
}

#[derive(Clone, Copy, PartialEq)]
enum CellKind {
    Dissimilarity,
    Flow,
}

fn read_dense<R: Read>(source: R, kind: CellKind) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r?,
        None => return Ok((Vec::new(), Vec::new())),
    };
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    let mut rows = Vec::with_capacity(n);
    for (i, record) in records.enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = i + 2;
        if rows.len() == n {
            return Err(Error::Parse {
                location: format!("line {line}"),
                message: format!("more data rows than the {n} labels in the header"),
            });
        }
        if record.len() != n + 1 {
            return Err(Error::Parse {
                location: format!("line {line}"),
                message: format!(
                    "expected {} cells (label + {n} values), found {}",
                    n + 1,
                    record.len()
                ),
            });
        }
        let row_label = &record[0];
        let r = rows.len();
        if row_label != labels[r] {
            return Err(Error::Parse {
                location: format!("line {line}"),
                message: format!(
                    "row label '{row_label}' does not match column label '{}'",
                    labels[r]
                ),
            });
        }
        let mut values = Vec::with_capacity(n);
        for (c, cell) in record.iter().skip(1).enumerate() {
            let location = || format!("cell ({}, {}) on line {line}", labels[r], labels[c]);
            let value = parse_cell(cell, kind, r == c).map_err(|message| Error::Parse {
                location: location(),
                message,
            })?;
            values.push(value);
        }
        rows.push(values);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            location: "end of input".into(),
            message: format!("found {} data rows for {n} labels", rows.len()),
        });
    }
    Ok((labels, rows))
}

fn parse_cell(cell: &str, kind: CellKind, diagonal: bool) -> std::result::Result<f64, String> {
    let lower = cell.to_ascii_lowercase();
    let value = match (kind, lower.as_str()) {
        (CellKind::Dissimilarity, "") if diagonal => 0.0,
        (CellKind::Dissimilarity, "" | "inf" | "+inf" | "infinity" | "+infinity") => f64::INFINITY,
        (CellKind::Flow, "") => 0.0,
        _ => cell
            .parse::<f64>()
            .map_err(|_| format!("'{cell}' is not a number"))?,
    };
    if value.is_nan() {
        return Err("NaN is not a valid value".into());
    }
    if value < 0.0 {
        return Err(format!("negative value {value}"));
    }
    match kind {
        CellKind::Dissimilarity if diagonal && value != 0.0 => {
            Err(format!("nonzero diagonal value {value}"))
        }
        CellKind::Flow if value.is_infinite() => Err("flows must be finite".into()),
        _ => Ok(value),
    }
}

fn read_edge_list<R: Read>(mut source: R) -> Result<Network> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: HashMap<(usize, usize), f64> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let location = || format!("line {}", lineno + 1);
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                location: location(),
                message: format!(
                    "expected 3 tab-separated fields (src, dst, weight), found {}",
                    fields.len()
                ),
            });
        }
        let mut node = |name: &str| -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() - 1
            })
        };
        let (src, dst) = (node(fields[0]), node(fields[1]));
        let weight =
            parse_cell(fields[2], CellKind::Dissimilarity, src == dst).map_err(|message| {
                Error::Parse {
                    location: format!("{} ({} -> {})", location(), fields[0], fields[1]),
                    message,
                }
            })?;
        if edges.insert((src, dst), weight).is_some() {
            return Err(Error::Parse {
                location: location(),
                message: format!("duplicate edge {} -> {}", fields[0], fields[1]),
            });
        }
    }
    let n = labels.len();
    let matrix = DioidMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            edges.get(&(i, j)).copied().unwrap_or(f64::INFINITY)
        }
    })?;
    Network::new(labels, matrix)
}

/// Formats a value the way the CSV reader parses it back: the shortest
/// decimal that round-trips, or `inf`.
pub fn format_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

/// Writes a labeled square matrix in the dense CSV layout.
pub fn write_dense_csv<W: Write>(labels: &[String], matrix: &DioidMatrix, out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    writer.write_record(&header)?;
    for (label, row) in labels.iter().zip(matrix.rows()) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(|&v| format_value(v)));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Builds a network whose off-diagonal entries are given as `(src, dst, w)`;
/// unlisted pairs are `+inf`.
pub fn network_from_edges<L: AsRef<str>>(
    labels: &[L],
    edges: &[(&str, &str, f64)],
) -> Result<Network> {
    let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    let n = labels.len();
    let mut matrix = DioidMatrix::identity(n);
    for &(src, dst, w) in edges {
        let i = labels
            .iter()
            .position(|l| l == src)
            .ok_or_else(|| Error::UnknownNode(src.into()))?;
        let j = labels
            .iter()
            .position(|l| l == dst)
            .ok_or_else(|| Error::UnknownNode(dst.into()))?;
        let w = Dissim::new(w).ok_or(Error::InvalidEntry {
            row: i,
            col: j,
            value: w,
        })?;
        matrix.set(i, j, w);
    }
    Network::new(labels, matrix)
}
