//! File formats and error plumbing. This is the only place in the
//! workspace that touches the filesystem.
//!
//! # Set files
//!
//! One element per line, each an integer or a fraction `p/q`; `#` starts a
//! comment. Serialization writes the elements sorted, in lowest terms, so
//! parsing a serialized set reproduces it exactly.
//!
//! # Graph files
//!
//! Either a header `n=<count> loops=<0|1>` followed by one `i j` slot per
//! line with `i <= j` (a line with `i == j` is a loop, only legal when the
//! header declares `loops=1`), or a single keyword line:
//!
//! * `complete` — all pairs, no loops,
//! * `complete_loops` — all pairs plus every loop,
//! * `random p=<rational> seed=<u64>` — each pair kept independently with
//!   probability `p`, reproducible from the seed.
//!
//! The keyword forms take the vertex count from the set the graph is paired
//! with, so a graph flag can name either a file or a keyword directly.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use apsum_core::exact::{parse_rat, Rat};
use apsum_core::exact::{format_rat, NumberSet, PairGraph};
use apsum_core::harness::{generate, GraphSpec, InstanceSpec, SetSpec};

/// Errors a subcommand can surface. Usage errors exit with status 2,
/// everything else with status 1.
#[derive(Debug)]
pub enum CliError {
    /// A flag combination the command line cannot express.
    Usage(String),
    /// An operation precondition failed on otherwise well-formed input.
    Domain(apsum_core::Error),
    /// A file that exists but does not parse; names the offending line.
    File {
        path: PathBuf,
        line: usize,
        message: String,
    },
    /// A file that could not be read or written at all.
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::File {
                path,
                line,
                message,
            } => write!(f, "error: {}:{line}: {message}", path.display()),
            CliError::Io { path, message } => {
                write!(f, "error: {}: {message}", path.display())
            }
        }
    }
}

impl From<apsum_core::Error> for CliError {
    fn from(e: apsum_core::Error) -> Self {
        CliError::Domain(e)
    }
}

pub fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Reads a set file; duplicate values collapse, so the result is the set
/// the file spells regardless of ordering or repetition.
pub fn read_set(path: &Path) -> Result<NumberSet, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value = parse_rat(line).map_err(|message| CliError::File {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        })?;
        values.push(value);
    }
    Ok(NumberSet::from_values(values))
}

pub fn serialize_set(a: &NumberSet) -> String {
    let mut out = String::new();
    for v in a.iter() {
        out.push_str(&format_rat(v));
        out.push('\n');
    }
    out
}

pub fn write_set(path: &Path, a: &NumberSet) -> Result<(), CliError> {
    fs::write(path, serialize_set(a)).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn serialize_graph(g: &PairGraph) -> String {
    let mut slots: Vec<(usize, usize)> = g.edges().collect();
    slots.extend(g.loops().map(|i| (i, i)));
    slots.sort_unstable();
    let mut out = format!(
        "n={} loops={}\n",
        g.vertex_count(),
        u8::from(g.allow_loops())
    );
    for (i, j) in slots {
        writeln!(out, "{i} {j}").expect("writing to a string cannot fail");
    }
    out
}

pub fn write_graph(path: &Path, g: &PairGraph) -> Result<(), CliError> {
    fs::write(path, serialize_graph(g)).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Resolves a `--graph` flag value: one of the keyword forms, or a path to
/// a graph file (which may itself hold a keyword line).
pub fn resolve_graph(spec: &str, a: &NumberSet) -> Result<PairGraph, CliError> {
    let trimmed = spec.trim();
    if is_graph_keyword(trimmed) {
        let origin = Path::new("<--graph>");
        return graph_from_keyword(trimmed, a, origin, 1);
    }
    let path = Path::new(trimmed);
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_graph_text(&text, path, a)
}

fn is_graph_keyword(line: &str) -> bool {
    line == "complete" || line == "complete_loops" || line.starts_with("random")
}

pub fn parse_graph_text(
    text: &str,
    origin: &Path,
    a: &NumberSet,
) -> Result<PairGraph, CliError> {
    let mut lines = significant_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| CliError::File {
        path: origin.to_path_buf(),
        line: 1,
        message: "empty graph file: expected a header or keyword line".to_string(),
    })?;

    if is_graph_keyword(first) {
        if let Some((line, _)) = lines.next() {
            return Err(CliError::File {
                path: origin.to_path_buf(),
                line,
                message: "unexpected content after a keyword line".to_string(),
            });
        }
        return graph_from_keyword(first, a, origin, first_no);
    }

    let (n, allow_loops) = parse_header(first, origin, first_no)?;
    if n != a.len() {
        return Err(CliError::File {
            path: origin.to_path_buf(),
            line: first_no,
            message: format!(
                "graph declares n={n} but the paired set has {} elements",
                a.len()
            ),
        });
    }
    let mut g = PairGraph::new(n, allow_loops);
    for (line_no, line) in lines {
        let mut parts = line.split_whitespace();
        let slot = (|| {
            let i: usize = parts.next()?.parse().ok()?;
            let j: usize = parts.next()?.parse().ok()?;
            if parts.next().is_some() {
                return None;
            }
            Some((i, j))
        })();
        let (i, j) = slot.ok_or_else(|| CliError::File {
            path: origin.to_path_buf(),
            line: line_no,
            message: format!("expected an edge line `i j`, got `{line}`"),
        })?;
        if i > j {
            return Err(CliError::File {
                path: origin.to_path_buf(),
                line: line_no,
                message: format!("edge endpoints must satisfy i <= j, got `{line}`"),
            });
        }
        g.add_edge(i, j).map_err(|e| CliError::File {
            path: origin.to_path_buf(),
            line: line_no,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Lines with comments stripped, paired with their 1-based numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((idx + 1, line))
        }
    })
}

fn parse_header(line: &str, origin: &Path, line_no: usize) -> Result<(usize, bool), CliError> {
    let bad = |message: String| CliError::File {
        path: origin.to_path_buf(),
        line: line_no,
        message,
    };
    let mut parts = line.split_whitespace();
    let n_part = parts.next().unwrap_or("");
    let loops_part = parts.next().unwrap_or("");
    let n_value = n_part.strip_prefix("n=");
    let loops_value = loops_part.strip_prefix("loops=");
    match (n_value, loops_value, parts.next()) {
        (Some(n), Some(loops), None) => {
            let n: usize = n
                .parse()
                .map_err(|_| bad(format!("invalid vertex count `{n}`")))?;
            let allow_loops = match loops {
                "0" => false,
                "1" => true,
                other => return Err(bad(format!("loops must be 0 or 1, got `{other}`"))),
            };
            Ok((n, allow_loops))
        }
        _ => Err(bad(format!(
            "expected `n=<count> loops=<0|1>` or a graph keyword, got `{line}`"
        ))),
    }
}

fn graph_from_keyword(
    line: &str,
    a: &NumberSet,
    origin: &Path,
    line_no: usize,
) -> Result<PairGraph, CliError> {
    match line {
        "complete" => return Ok(PairGraph::complete(a.len())),
        "complete_loops" => return Ok(PairGraph::complete_with_loops(a.len())),
        _ => {}
    }
    let rest = line.strip_prefix("random").unwrap_or(line);
    let mut probability: Option<Rat> = None;
    let mut seed: Option<u64> = None;
    let bad = |message: String| CliError::File {
        path: origin.to_path_buf(),
        line: line_no,
        message,
    };
    for token in rest.split_whitespace() {
        match token.split_once('=') {
            Some(("p", v)) => {
                probability = Some(parse_rat(v).map_err(|m| bad(format!("p: {m}")))?);
            }
            Some(("seed", v)) => {
                seed = Some(
                    v.parse()
                        .map_err(|_| bad(format!("invalid seed `{v}`")))?,
                );
            }
            _ => return Err(bad(format!("unexpected token `{token}` in random graph"))),
        }
    }
    let (Some(probability), Some(seed)) = (probability, seed) else {
        return Err(bad(
            "random graph needs both p=<rational> and seed=<u64>".to_string(),
        ));
    };
    // Routing through the generator keeps the pair-scan order and the
    // seed's meaning identical to `gen`'s.
    let spec = InstanceSpec {
        set: SetSpec::Explicit {
            values: a.iter().cloned().collect(),
        },
        graph: GraphSpec::Random { probability },
        seed,
    };
    let (_, g) = generate(&spec)?;
    Ok(g)
}
