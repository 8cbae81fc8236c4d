use std::collections::HashMap;
use std::io::BufRead;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// A whitespace edge list with external ids remapped to `0..n` in order of
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    /// Deduplicated undirected pairs, `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// External id of each dense vertex.
    pub ids: Vec<u64>,
}

impl EdgeList {
    pub fn graph(&self) -> Result<SignedGraph> {
        SignedGraph::from_edges(self.n, self.edges.iter().copied())
    }

    pub fn id_map(&self) -> HashMap<u64, usize> {
        self.ids.iter().enumerate().map(|(i, &x)| (x, i)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ids.iter().map(u64::to_string).collect()
    }
}

fn content(line: &str) -> Option<&str> {
    let t = line.trim();
    (!t.is_empty() && !t.starts_with('#')).then_some(t)
}

/// Parses SNAP-style lines `u v`; `#` lines and blank lines are skipped.
/// Directed duplicates and self-pairs are dropped.
pub fn parse_edge_list<R: BufRead>(input: R) -> Result<EdgeList> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let Some(t) = content(&line) else { continue };
        let mut tokens = t.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected two vertex ids, got `{t}`"),
            });
        };
        let mut dense = |tok: &str| -> Result<usize> {
            let x: u64 = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("`{tok}` is not an integer vertex id"),
            })?;
            Ok(*index.entry(x).or_insert_with(|| {
                ids.push(x);
                ids.len() - 1
            }))
        };
        let (u, v) = (dense(a)?, dense(b)?);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(EdgeList {
        n: ids.len(),
        edges,
        ids,
    })
}

/// One `u v` line per positive edge, using the given external ids.
pub fn write_edge_list(g: &SignedGraph, ids: Option<&[u64]>) -> String {
    let name = |x: usize| ids.map_or(x as u64, |ids| ids[x]);
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", name(u), name(v)));
    }
    out
}

/// Labelled vertex groups, possibly overlapping and not covering every
/// vertex. Members are dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircleSet {
    pub circles: Vec<(String, Vec<usize>)>,
    /// Members that were not vertices of the graph.
    pub dropped: usize,
}

/// Parses lines `label id id ...`. Ids missing from `id_map` are dropped
/// and counted.
pub fn parse_circles<R: BufRead>(input: R, id_map: &HashMap<u64, usize>) -> Result<CircleSet> {
    let mut set = CircleSet::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let Some(t) = content(&line) else { continue };
        let mut tokens = t.split_whitespace();
        let label = tokens.next().expect("non-empty line").to_string();
        let mut members = Vec::new();
        for tok in tokens {
            let x: u64 = tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("`{tok}` is not an integer vertex id"),
            })?;
            match id_map.get(&x) {
                Some(&u) => members.push(u),
                None => set.dropped += 1,
            }
        }
        members.sort_unstable();
        members.dedup();
        set.circles.push((label, members));
    }
    if set.dropped > 0 {
        warn!(
            "dropped {} circle members that are not in the graph",
            set.dropped
        );
    }
    Ok(set)
}

/// Circle file text: `label id id ...` per circle.
pub fn write_circles(circles: &[(String, Vec<usize>)], ids: Option<&[u64]>) -> String {
    let mut out = String::new();
    for (label, members) in circles {
        out.push_str(label);
        for &u in members {
            out.push(' ');
            out.push_str(&ids.map_or(u as u64, |ids| ids[u]).to_string());
        }
        out.push('\n');
    }
    out
}
