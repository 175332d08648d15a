//! Text format for matroid instances.
//!
//! ```text
//! # comment
//! matroid partition m=4
//! class 0 0
//! class 1 0
//! class 2 1
//! class 3 1
//! cap 0 1
//! cap 1 2
//! matroid graphic m=3
//! vertices 3            # optional; defaults to 1 + largest endpoint
//! edge 0 0 1
//! edge 1 1 2
//! edge 2 2 0
//! matroid uniform m=3
//! rank 2
//! set T 0 2
//! order asc 1 3
//! p 1/10 33/100
//! ```
//!
//! A file holds any number of `matroid` blocks over the same ids plus named
//! element lists. `set <name> ids...` and `order <name> ids...` both keep
//! their ids in file order; `order` lines are collected separately so that
//! a file can carry several arrival orders. Every other line is a
//! `<key> <values...>` attribute. Every element of a partition block needs
//! exactly one `class` line, every element of a graphic block exactly one
//! `edge` line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{AnyMatroid, Element, GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Default, Clone)]
pub struct MatroidFile {
    pub matroids: Vec<AnyMatroid>,
    pub sets: BTreeMap<String, Vec<Element>>,
    pub orders: Vec<(String, Vec<Element>)>,
    pub attributes: BTreeMap<String, Vec<String>>,
}

enum Block {
    Partition {
        m: usize,
        class_of: Vec<Option<usize>>,
        caps: BTreeMap<usize, usize>,
    },
    Graphic {
        m: usize,
        vertices: Option<usize>,
        edges: Vec<Option<(usize, usize)>>,
    },
    Uniform {
        m: usize,
        rank: Option<usize>,
    },
}

fn num(line: usize, s: &str) -> Result<usize, FormatError> {
    s.parse()
        .map_err(|_| err(line, format!("expected a non-negative integer, found `{s}`")))
}

fn finish(block: Block, line: usize) -> Result<AnyMatroid, FormatError> {
    match block {
        Block::Partition { m: _, class_of, caps } => {
            let class_of = class_of
                .into_iter()
                .enumerate()
                .map(|(e, c)| c.ok_or_else(|| err(line, format!("element {e} has no class"))))
                .collect::<Result<Vec<_>, _>>()?;
            let classes = class_of
                .iter()
                .copied()
                .chain(caps.keys().copied())
                .max()
                .map_or(0, |c| c + 1);
            let capacity = (0..classes)
                .map(|c| {
                    caps.get(&c)
                        .copied()
                        .ok_or_else(|| err(line, format!("class {c} has no cap line")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            PartitionMatroid::new(class_of, capacity)
                .map(AnyMatroid::from)
                .map_err(|e| err(line, e.to_string()))
        }
        Block::Graphic { m: _, vertices, edges } => {
            let edges = edges
                .into_iter()
                .enumerate()
                .map(|(e, uv)| uv.ok_or_else(|| err(line, format!("element {e} has no edge line"))))
                .collect::<Result<Vec<_>, _>>()?;
            let n = vertices.unwrap_or_else(|| {
                edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
            });
            GraphicMatroid::new(n, edges)
                .map(AnyMatroid::from)
                .map_err(|e| err(line, e.to_string()))
        }
        Block::Uniform { m, rank } => {
            let k = rank.ok_or_else(|| err(line, "uniform matroid without a rank line"))?;
            Ok(UniformMatroid::new(m, k).into())
        }
    }
}

pub fn parse(text: &str) -> Result<MatroidFile, FormatError> {
    let mut file = MatroidFile::default();
    let mut current: Option<(Block, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "matroid" => {
                if let Some((block, start)) = current.take() {
                    file.matroids.push(finish(block, start)?);
                }
                if tokens.len() != 3 {
                    return Err(err(line, "expected `matroid <kind> m=<int>`"));
                }
                let m = tokens[2]
                    .strip_prefix("m=")
                    .ok_or_else(|| err(line, "expected `m=<int>`"))
                    .and_then(|s| num(line, s))?;
                let block = match tokens[1] {
                    "partition" => Block::Partition {
                        m,
                        class_of: vec![None; m],
                        caps: BTreeMap::new(),
                    },
                    "graphic" => Block::Graphic {
                        m,
                        vertices: None,
                        edges: vec![None; m],
                    },
                    "uniform" => Block::Uniform { m, rank: None },
                    other => return Err(err(line, format!("unknown matroid kind `{other}`"))),
                };
                current = Some((block, line));
            }
            "set" | "order" => {
                if tokens.len() < 2 {
                    return Err(err(line, format!("expected `{} <name> ids...`", tokens[0])));
                }
                let ids = tokens[2..]
                    .iter()
                    .map(|s| num(line, s).map(Element))
                    .collect::<Result<Vec<_>, _>>()?;
                if tokens[0] == "set" {
                    file.sets.insert(tokens[1].to_string(), ids);
                } else {
                    file.orders.push((tokens[1].to_string(), ids));
                }
            }
            key @ ("class" | "cap" | "edge" | "vertices" | "rank") => {
                let Some((block, _)) = current.as_mut() else {
                    return Err(err(line, format!("`{key}` outside a matroid block")));
                };
                let args = tokens[1..]
                    .iter()
                    .map(|s| num(line, s))
                    .collect::<Result<Vec<_>, _>>()?;
                match (block, key, args.as_slice()) {
                    (Block::Partition { m, class_of, .. }, "class", &[e, c]) => {
                        if e >= *m {
                            return Err(err(line, format!("element {e} out of range m={m}")));
                        }
                        if class_of[e].replace(c).is_some() {
                            return Err(err(line, format!("element {e} classed twice")));
                        }
                    }
                    (Block::Partition { caps, .. }, "cap", &[c, k]) => {
                        caps.insert(c, k);
                    }
                    (Block::Graphic { m, edges, .. }, "edge", &[e, u, v]) => {
                        if e >= *m {
                            return Err(err(line, format!("element {e} out of range m={m}")));
                        }
                        if edges[e].replace((u, v)).is_some() {
                            return Err(err(line, format!("element {e} has two edge lines")));
                        }
                    }
                    (Block::Graphic { vertices, .. }, "vertices", &[n]) => *vertices = Some(n),
                    (Block::Uniform { rank, .. }, "rank", &[k]) => *rank = Some(k),
                    _ => return Err(err(line, format!("malformed or misplaced `{key}` line"))),
                }
            }
            key => {
                file.attributes.insert(
                    key.to_string(),
                    tokens[1..].iter().map(|s| s.to_string()).collect(),
                );
            }
        }
    }
    if let Some((block, start)) = current.take() {
        file.matroids.push(finish(block, start)?);
    }
    Ok(file)
}

fn write_ids(out: &mut String, ids: &[Element]) {
    for e in ids {
        let _ = write!(out, " {}", e.0);
    }
    out.push('\n');
}

pub fn write(file: &MatroidFile) -> String {
    let mut out = String::new();
    for m in &file.matroids {
        let size = m.ground_size();
        match m {
            AnyMatroid::Partition(p) => {
                let _ = writeln!(out, "matroid partition m={size}");
                for (e, c) in p.classes().iter().enumerate() {
                    let _ = writeln!(out, "class {e} {c}");
                }
                for (c, k) in p.capacities().iter().enumerate() {
                    let _ = writeln!(out, "cap {c} {k}");
                }
            }
            AnyMatroid::Graphic(g) => {
                let _ = writeln!(out, "matroid graphic m={size}");
                let _ = writeln!(out, "vertices {}", g.vertex_count());
                for (e, (u, v)) in g.edges().iter().enumerate() {
                    let _ = writeln!(out, "edge {e} {u} {v}");
                }
            }
            AnyMatroid::Uniform(u) => {
                let _ = writeln!(out, "matroid uniform m={size}");
                let _ = writeln!(out, "rank {}", u.rank_bound());
            }
        }
    }
    for (name, ids) in &file.sets {
        let _ = write!(out, "set {name}");
        write_ids(&mut out, ids);
    }
    for (name, ids) in &file.orders {
        let _ = write!(out, "order {name}");
        write_ids(&mut out, ids);
    }
    for (key, values) in &file.attributes {
        let _ = writeln!(out, "{key} {}", values.join(" "));
    }
    out
}
