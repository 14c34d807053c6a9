//! Line-oriented text format for NFI, BMstC and densest-k-subgraph instances.
//!
//! ```text
//! # comments start with '#'
//! p nfi <n> <m> <s> <t> <budget>
//! e <a> <b> <capacity> <cost>
//! ```
//!
//! `bmstc` files use the same layout; `dks` files use `p dks <n> <m> <k>` and
//! `e <a> <b>` records. Capacities and costs accept `inf`. Edge ids follow
//! record order. The canonical serialization has no comments, single spaces
//! and `\n` line endings.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::graph::Multigraph;
use crate::interdiction::NfiInstance;
use crate::reductions::DksInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceFile {
    Nfi(NfiInstance),
    Bmstc(NfiInstance),
    Dks(DksInstance),
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Nfi(_) => "nfi",
            InstanceFile::Bmstc(_) => "bmstc",
            InstanceFile::Dks(_) => "dks",
        }
    }

    /// Canonical text. Edges are written in id order, so instances whose ids
    /// have gaps come back renumbered.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match self {
            InstanceFile::Nfi(inst) | InstanceFile::Bmstc(inst) => {
                let g = inst.graph();
                writeln!(
                    out,
                    "p {} {} {} {} {} {}",
                    self.kind(),
                    g.vertex_count(),
                    g.edge_count(),
                    inst.s(),
                    inst.t(),
                    inst.budget()
                )
                .unwrap();
                for e in g.edges() {
                    writeln!(out, "e {} {} {} {}", e.a, e.b, inst.capacity()[e.id], inst.cost()[e.id]).unwrap();
                }
            }
            InstanceFile::Dks(dks) => {
                let g = dks.graph();
                writeln!(out, "p dks {} {} {}", g.vertex_count(), g.edge_count(), dks.k()).unwrap();
                for e in g.edges() {
                    writeln!(out, "e {} {}", e.a, e.b).unwrap();
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<InstanceFile> {
        text.parse()
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn field<T: FromStr>(tokens: &[&str], i: usize, line: usize, name: &str) -> Result<T> {
    let tok = tokens.get(i).ok_or_else(|| perr(line, format!("missing {name}")))?;
    tok.parse().map_err(|_| perr(line, format!("bad {name} `{tok}`")))
}

enum Header {
    Flow { bmstc: bool, n: usize, m: usize, s: usize, t: usize, budget: u64 },
    Dks { n: usize, m: usize, k: usize },
}

impl FromStr for InstanceFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<InstanceFile> {
        let mut header: Option<(usize, Header)> = None;
        let mut pairs = Vec::new();
        let mut capacity = Vec::new();
        let mut cost = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some(&tag) = tokens.first() else { continue };
            match (tag, &header) {
                ("p", None) => {
                    let kind = tokens.get(1).ok_or_else(|| perr(line, "missing problem kind"))?;
                    let (h, arity) = match *kind {
                        "nfi" | "bmstc" => (
                            Header::Flow {
                                bmstc: *kind == "bmstc",
                                n: field(&tokens, 2, line, "vertex count")?,
                                m: field(&tokens, 3, line, "edge count")?,
                                s: field(&tokens, 4, line, "source")?,
                                t: field(&tokens, 5, line, "sink")?,
                                budget: field(&tokens, 6, line, "budget")?,
                            },
                            7,
                        ),
                        "dks" => (
                            Header::Dks {
                                n: field(&tokens, 2, line, "vertex count")?,
                                m: field(&tokens, 3, line, "edge count")?,
                                k: field(&tokens, 4, line, "subgraph size")?,
                            },
                            5,
                        ),
                        other => return Err(perr(line, format!("unknown problem kind `{other}`"))),
                    };
                    if tokens.len() != arity {
                        return Err(perr(line, format!("header takes {} fields", arity - 1)));
                    }
                    header = Some((line, h));
                }
                ("p", Some(_)) => return Err(perr(line, "duplicate header")),
                ("e", None) => return Err(perr(line, "edge record before header")),
                ("e", Some((_, h))) => {
                    let (n, m, arity) = match h {
                        Header::Flow { n, m, .. } => (*n, *m, 5),
                        Header::Dks { n, m, .. } => (*n, *m, 3),
                    };
                    if tokens.len() != arity {
                        return Err(perr(line, format!("edge record takes {} fields", arity - 1)));
                    }
                    if pairs.len() == m {
                        return Err(perr(line, format!("more than {m} edge records")));
                    }
                    let a: usize = field(&tokens, 1, line, "endpoint")?;
                    let b: usize = field(&tokens, 2, line, "endpoint")?;
                    if a >= n || b >= n {
                        return Err(perr(line, format!("endpoint outside 0..{n}")));
                    }
                    if a == b {
                        return Err(perr(line, format!("self-loop at vertex {a}")));
                    }
                    pairs.push((a, b));
                    if arity == 5 {
                        capacity.push(field::<ExtNat>(&tokens, 3, line, "capacity")?);
                        cost.push(field::<ExtNat>(&tokens, 4, line, "cost")?);
                    }
                }
                (other, _) => return Err(perr(line, format!("unknown record `{other}`"))),
            }
        }
        let (hline, header) = header.ok_or_else(|| perr(last_line.max(1), "missing header"))?;
        let m = match header {
            Header::Flow { m, .. } | Header::Dks { m, .. } => m,
        };
        if pairs.len() != m {
            return Err(perr(hline, format!("header declares {m} edges, found {}", pairs.len())));
        }
        let at_header = |e: Error| match e {
            Error::Parse { .. } => e,
            other => perr(hline, other.to_string()),
        };
        match header {
            Header::Flow { bmstc, n, s, t, budget, .. } => {
                let g = Multigraph::new(n, &pairs).map_err(at_header)?;
                let inst = NfiInstance::new(g, capacity, cost, s, t, budget).map_err(at_header)?;
                Ok(if bmstc { InstanceFile::Bmstc(inst) } else { InstanceFile::Nfi(inst) })
            }
            Header::Dks { n, k, .. } => {
                let g = Multigraph::new(n, &pairs).map_err(at_header)?;
                Ok(InstanceFile::Dks(DksInstance::new(g, k).map_err(at_header)?))
            }
        }
    }
}
