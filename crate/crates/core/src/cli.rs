//! Command implementations behind the `dioclust` binary. Each command takes
//! a [`RunConfig`], writes to the given streams and returns an exit status,
//! so they can be driven from tests without spawning a process.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dendrogram::{cut_at_resolution, to_dendrogram};
use crate::error::{Error, Result};
use crate::export::{partition_to_json, to_dot, to_json, to_newick, ultrametric_to_csv};
use crate::methods::{run_method, Constituent, MethodOutput, MethodSpec};
use crate::network::{load_network_with, LoadOptions, Network, NetworkFormat};
use crate::oracle;
use crate::ultrametric::{validate_ultrametric_labeled, Ultrametric};

pub const METHOD_GRAMMAR: &str = "\
method grammar:
  reciprocal | nonreciprocal | single-linkage
  semi-reciprocal:<t>            t >= 2
  intermediate:<t>,<t'>          t, t' >= 1
  graft-rnr:<beta>               beta > 0
  graft-rrmax:<beta>             beta > 0
  graft-rr-invalid:<beta>        not an ultrametric in general; never emitted as a dendrogram
  convex:<w1>*<spec1>+<w2>*<spec2>[+...]
                                 weights in [0,1] summing to 1; nested convex specs in parentheses";

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    Validation = 2,
    Io = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
    Newick,
    Dot,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            "newick" => Ok(EmitFormat::Newick),
            "dot" => Ok(EmitFormat::Dot),
            other => Err(Error::Parse {
                location: "--emit".into(),
                message: format!(
                    "unknown output format '{other}', expected csv, json, newick or dot"
                ),
            }),
        }
    }
}

/// Everything a command needs from the command line.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: NetworkFormat,
    pub methods: Vec<MethodSpec>,
    pub emit: Vec<EmitFormat>,
    /// Paired with `emit` by position; missing entries go to stdout.
    pub output: Vec<PathBuf>,
    pub delta: Option<f64>,
    pub uses_exclude_diagonal: bool,
    pub tolerance: Option<f64>,
    /// Treat the input matrix as an ultrametric rather than a network.
    pub ultrametric_input: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            format: NetworkFormat::DenseCsv,
            methods: Vec::new(),
            emit: Vec::new(),
            output: Vec::new(),
            delta: None,
            uses_exclude_diagonal: false,
            tolerance: None,
            ultrametric_input: false,
        }
    }
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::Io(_) => ExitStatus::Io,
            Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => ExitStatus::Io,
            Error::NotUltrametric(_)
            | Error::ZeroColumn { .. }
            | Error::Asymmetric { .. }
            | Error::Stabilization { .. }
            | Error::OracleTooLarge { .. } => ExitStatus::Validation,
            _ => ExitStatus::Usage,
        };
        Failure {
            status,
            message: err.to_string(),
        }
    }
}

fn fail(status: ExitStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

fn finish(result: std::result::Result<(), Failure>, err: &mut dyn Write) -> ExitStatus {
    match result {
        Ok(()) => ExitStatus::Success,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.trim_end());
            f.status
        }
    }
}

fn load(cfg: &RunConfig) -> std::result::Result<Network, Failure> {
    let file = File::open(&cfg.input).map_err(|e| {
        fail(
            ExitStatus::Io,
            format!("cannot open {}: {e}", cfg.input.display()),
        )
    })?;
    let options = LoadOptions {
        uses_exclude_diagonal: cfg.uses_exclude_diagonal,
    };
    Ok(load_network_with(
        BufReader::new(file),
        cfg.format,
        &options,
    )?)
}

fn load_valid(cfg: &RunConfig, err: &mut dyn Write) -> std::result::Result<Network, Failure> {
    let net = load(cfg)?;
    let report = net.validate();
    if !report.is_valid() {
        return Err(fail(
            ExitStatus::Validation,
            format!("invalid network\n{report}"),
        ));
    }
    if !report.minimax_connected {
        let _ = writeln!(err, "warning: network is not minimax-connected; outputs will contain +inf and dendrograms are forests");
    }
    Ok(net)
}

fn single_method(cfg: &RunConfig) -> std::result::Result<&MethodSpec, Failure> {
    match cfg.methods.as_slice() {
        [spec] => Ok(spec),
        [] => Err(fail(
            ExitStatus::Usage,
            format!("--method is required\n{METHOD_GRAMMAR}"),
        )),
        _ => Err(fail(
            ExitStatus::Usage,
            "this command takes exactly one --method",
        )),
    }
}

/// Runs the method and refuses non-ultrametric results, printing the report.
fn ultrametric_of(
    net: &Network,
    spec: &MethodSpec,
    tolerance: f64,
) -> std::result::Result<Ultrametric, Failure> {
    match run_method(net, spec)? {
        MethodOutput::Ultrametric(u) => {
            let report = u.validate(tolerance);
            if report.is_valid() {
                Ok(u)
            } else {
                Err(fail(
                    ExitStatus::Validation,
                    format!("method output failed validation\n{report}"),
                ))
            }
        }
        MethodOutput::NotUltrametric(candidate) => Err(fail(
            ExitStatus::Validation,
            format!(
                "'{spec}' did not produce an ultrametric; refusing to emit it\n{}",
                candidate.report
            ),
        )),
    }
}

fn write_to(
    path: Option<&PathBuf>,
    text: &str,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| fail(ExitStatus::Io, format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| fail(ExitStatus::Io, e.to_string())),
    }
}

/// `cluster`: load, validate, run one method, write each requested format
/// and print the merge events.
pub fn cmd_cluster(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = (|| {
        let spec = single_method(cfg)?;
        if cfg.output.len() > cfg.emit.len() {
            return Err(fail(
                ExitStatus::Usage,
                "more --output paths than --emit formats",
            ));
        }
        let net = load_valid(cfg, err)?;
        let u = ultrametric_of(&net, spec, cfg.tolerance.unwrap_or(spec.tolerance()))?;
        let d = to_dendrogram(&u)?;
        if d.is_forest() {
            let _ = writeln!(
                err,
                "warning: dendrogram is a forest with {} roots",
                d.roots().len()
            );
        }
        for (k, format) in cfg.emit.iter().enumerate() {
            let text = match format {
                EmitFormat::Csv => ultrametric_to_csv(&u)?,
                EmitFormat::Json => to_json(&d, &u)?,
                EmitFormat::Newick => to_newick(&d),
                EmitFormat::Dot => {
                    let delta = cfg
                        .delta
                        .ok_or_else(|| fail(ExitStatus::Usage, "--emit dot requires --delta"))?;
                    let partition = cut_at_resolution(&u, delta)?;
                    to_dot(&net, delta, Some(&partition))
                }
            };
            write_to(cfg.output.get(k), &text, out)?;
        }
        let summary_to_stdout = cfg.emit.len() <= cfg.output.len();
        let summary = format!("merge events ({spec}):\n{d}");
        if summary_to_stdout {
            out.write_all(summary.as_bytes())
                .map_err(|e| fail(ExitStatus::Io, e.to_string()))?;
        } else {
            let _ = err.write_all(summary.as_bytes());
        }
        Ok(())
    })();
    finish(result, err)
}

/// `validate`: network report; with `--ultrametric` the input matrix is
/// checked as an ultrametric, and with `--method` the method output is.
pub fn cmd_validate(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = (|| {
        let net = load(cfg)?;
        let report = net.validate();
        let mut ok = report.is_valid();
        let mut text = report.to_string();
        let tolerance = cfg.tolerance.unwrap_or(0.0);
        if cfg.ultrametric_input {
            let u_report = validate_ultrametric_labeled(net.labels(), net.dissim(), tolerance);
            ok &= u_report.is_valid();
            text.push_str(&u_report.to_string());
        }
        if ok {
            for spec in &cfg.methods {
                match run_method(&net, spec)? {
                    MethodOutput::Ultrametric(u) => {
                        let r = u.validate(cfg.tolerance.unwrap_or(spec.tolerance()));
                        ok &= r.is_valid();
                        text.push_str(&format!("{spec}: {r}"));
                    }
                    MethodOutput::NotUltrametric(c) => {
                        ok = false;
                        text.push_str(&format!("{spec}: {}", c.report));
                    }
                }
            }
        }
        out.write_all(text.as_bytes())
            .map_err(|e| fail(ExitStatus::Io, e.to_string()))?;
        if ok {
            Ok(())
        } else {
            Err(fail(ExitStatus::Validation, "validation failed"))
        }
    })();
    finish(result, err)
}

/// `cut`: partition at `--delta`, as text or (`--emit json`) JSON.
pub fn cmd_cut(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = (|| {
        let delta = cfg
            .delta
            .ok_or_else(|| fail(ExitStatus::Usage, "cut requires --delta"))?;
        let u = if cfg.ultrametric_input {
            let net = load(cfg)?;
            let tolerance = cfg.tolerance.unwrap_or(0.0);
            Ultrametric::new(net.labels().to_vec(), net.dissim().clone(), tolerance)?
        } else {
            let spec = single_method(cfg)?;
            let net = load_valid(cfg, err)?;
            ultrametric_of(&net, spec, cfg.tolerance.unwrap_or(spec.tolerance()))?
        };
        let partition = cut_at_resolution(&u, delta)?;
        let text = match cfg.emit.as_slice() {
            [] => format!("{partition}\n"),
            [EmitFormat::Json] => partition_to_json(&partition)?,
            _ => {
                return Err(fail(
                    ExitStatus::Usage,
                    "cut supports only --emit json (default: text)",
                ))
            }
        };
        write_to(cfg.output.first(), &text, out)
    })();
    finish(result, err)
}

/// `compare`: runs every method, prints one row per node pair and checks
/// `u^NR <= u <= u^R` for each.
pub fn cmd_compare(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = (|| {
        if cfg.methods.is_empty() {
            return Err(fail(
                ExitStatus::Usage,
                format!("compare needs at least one --method\n{METHOD_GRAMMAR}"),
            ));
        }
        let net = load_valid(cfg, err)?;
        let mut specs = vec![MethodSpec::Reciprocal, MethodSpec::Nonreciprocal];
        specs.extend(cfg.methods.iter().cloned());
        let runs: Vec<Result<MethodOutput>> =
            specs.par_iter().map(|s| run_method(&net, s)).collect();
        let mut matrices = Vec::with_capacity(runs.len());
        for run in runs {
            matrices.push(match run? {
                MethodOutput::Ultrametric(u) => u.into_parts().1,
                MethodOutput::NotUltrametric(c) => c.matrix,
            });
        }
        let (upper, lower) = (&matrices[0], &matrices[1]);
        let labels = net.labels();
        let mut text = String::from("from\tto");
        for spec in &cfg.methods {
            text.push('\t');
            text.push_str(&spec.to_string());
        }
        text.push('\n');
        let n = net.n();
        for i in 0..n {
            for j in i + 1..n {
                text.push_str(&format!("{}\t{}", labels[i], labels[j]));
                for m in &matrices[2..] {
                    text.push('\t');
                    text.push_str(&crate::network::format_value(m.get(i, j)));
                }
                text.push('\n');
            }
        }
        let mut violations = Vec::new();
        for (spec, m) in cfg.methods.iter().zip(&matrices[2..]) {
            let tol = cfg.tolerance.unwrap_or(spec.tolerance());
            if !(lower.le_entrywise_within(m, tol) && m.le_entrywise_within(upper, tol)) {
                violations.push(spec.to_string());
            }
        }
        if violations.is_empty() {
            text.push_str("sandwich: OK\n");
        } else {
            text.push_str(&format!(
                "sandwich: VIOLATED by {}\n",
                violations.join(", ")
            ));
        }
        out.write_all(text.as_bytes())
            .map_err(|e| fail(ExitStatus::Io, e.to_string()))?;
        if violations.is_empty() {
            Ok(())
        } else {
            Err(fail(ExitStatus::Validation, "sandwich property violated"))
        }
    })();
    finish(result, err)
}

/// `oracle`: brute-force evaluation for fixture generation, as dense CSV.
pub fn cmd_oracle(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = (|| {
        let spec = single_method(cfg)?;
        let net = load(cfg)?;
        let u = match spec {
            MethodSpec::Reciprocal => oracle::brute_reciprocal(&net)?,
            MethodSpec::Nonreciprocal => oracle::brute_nonreciprocal(&net)?,
            MethodSpec::SemiReciprocal { t } => oracle::brute_semi_reciprocal(&net, *t)?,
            MethodSpec::Intermediate { t_fwd, t_bwd } => {
                oracle::brute_intermediate(&net, *t_fwd, *t_bwd)?
            }
            MethodSpec::SingleLinkage => oracle::brute_single_linkage(&net)?,
            other => {
                return Err(fail(
                    ExitStatus::Usage,
                    format!("the oracle does not implement '{}'", other.name()),
                ));
            }
        };
        write_to(cfg.output.first(), &ultrametric_to_csv(&u)?, out)
    })();
    finish(result, err)
}

/// Parses the method grammar in [`METHOD_GRAMMAR`] and validates parameters.
pub fn parse_method_spec(s: &str) -> Result<MethodSpec> {
    let mut parser = SpecParser {
        text: s.trim(),
        pos: 0,
    };
    let spec = parser.spec()?;
    if parser.pos != parser.text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    spec.validate()?;
    Ok(spec)
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_method_spec(s)
    }
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::MethodSpec {
            message: format!(
                "invalid method spec '{}' at position {}: {message}",
                self.text, self.pos
            ),
            grammar: METHOD_GRAMMAR,
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        let len = self
            .rest()
            .chars()
            .take_while(|&c| f(c))
            .map(char::len_utf8)
            .sum::<usize>();
        self.pos += len;
        &self.text[start..self.pos]
    }

    /// Decimal number with optional fraction and exponent. A sign is
    /// accepted only inside the exponent, so `+` still separates terms.
    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        self.eat('-');
        self.take_while(|c| c.is_ascii_digit());
        if self.eat('.') {
            self.take_while(|c| c.is_ascii_digit());
        }
        let before_exp = self.pos;
        if self.eat('e') || self.eat('E') {
            let _ = self.eat('+') || self.eat('-');
            if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                self.pos = before_exp;
            }
        }
        let token = &self.text[start..self.pos];
        token.parse::<f64>().map_err(|_| {
            self.pos = start;
            self.error("expected a number")
        })
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse::<usize>().map_err(|_| {
            self.pos = start;
            self.error("expected a nonnegative integer")
        })
    }

    fn spec(&mut self) -> Result<MethodSpec> {
        let start = self.pos;
        let name = self
            .take_while(|c| c.is_ascii_lowercase() || c == '-')
            .to_string();
        let spec = match name.as_str() {
            "reciprocal" => MethodSpec::Reciprocal,
            "nonreciprocal" => MethodSpec::Nonreciprocal,
            "single-linkage" => MethodSpec::SingleLinkage,
            "semi-reciprocal" => {
                self.expect(':')?;
                MethodSpec::SemiReciprocal { t: self.integer()? }
            }
            "intermediate" => {
                self.expect(':')?;
                let t_fwd = self.integer()?;
                self.expect(',')?;
                MethodSpec::Intermediate {
                    t_fwd,
                    t_bwd: self.integer()?,
                }
            }
            "graft-rnr" => {
                self.expect(':')?;
                MethodSpec::GraftRNr {
                    beta: self.number()?,
                }
            }
            "graft-rrmax" => {
                self.expect(':')?;
                MethodSpec::GraftRRmax {
                    beta: self.number()?,
                }
            }
            "graft-rr-invalid" => {
                self.expect(':')?;
                MethodSpec::GraftRRInvalid {
                    beta: self.number()?,
                }
            }
            "convex" => {
                self.expect(':')?;
                let mut parts = vec![self.term()?];
                while self.eat('+') {
                    parts.push(self.term()?);
                }
                MethodSpec::Convex(parts)
            }
            _ => {
                self.pos = start;
                return Err(self.error(&format!("unknown method '{name}'")));
            }
        };
        Ok(spec)
    }

    fn term(&mut self) -> Result<Constituent> {
        let weight = self.number()?;
        self.expect('*')?;
        let method = if self.eat('(') {
            let inner = self.spec()?;
            self.expect(')')?;
            inner
        } else {
            let start = self.pos;
            let inner = self.spec()?;
            if matches!(inner, MethodSpec::Convex(_)) {
                self.pos = start;
                return Err(self.error("nested convex specs must be parenthesized"));
            }
            inner
        };
        Ok(Constituent::new(weight, method))
    }
}

/// Signature shared by the `cmd_*` functions.
pub type CommandFn = fn(&RunConfig, &mut dyn Write, &mut dyn Write) -> ExitStatus;

/// Writes to real stdout/stderr; used by the binary.
pub fn run_with_stdio(f: CommandFn, cfg: &RunConfig) -> ExitStatus {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let status = f(cfg, &mut out, &mut err);
    let _ = out.flush();
    status
}
