//! Lattice JSON and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::Semilattice;

/// `{"elements": [label, ...], "covers": [[lo, hi], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Semilattice) -> Self {
        LatticeJson {
            elements: l.labels().to_vec(),
            covers: l.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_lattice(&self, element_cap: usize) -> Result<Semilattice> {
        let rel: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        Semilattice::build_capped(self.elements.clone(), &rel, element_cap)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering with one node per element and one edge per cover.
/// Elements of equal height share a rank.
pub fn to_dot(l: &Semilattice) -> String {
    let heights = l.heights();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for a in 0..l.len() {
        let _ = writeln!(out, "  n{a} [label={}];", quote(l.label(a)));
    }
    let max_h = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max_h {
        let nodes: Vec<String> = (0..l.len())
            .filter(|&a| heights[a] == h)
            .map(|a| format!("n{a}"))
            .collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; "));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
