//! Hasse diagrams as Graphviz DOT, with one fill color per block.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::poset::{Partition, Poset};

pub const DEFAULT_PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff",
];

#[derive(Debug, Clone)]
pub struct RenderSpec<'a> {
    pub poset: &'a Poset,
    pub partition: Option<&'a Partition>,
    pub palette: Vec<String>,
}

impl<'a> RenderSpec<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        RenderSpec {
            poset,
            partition: None,
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn with_partition(mut self, partition: &'a Partition) -> Self {
        self.partition = Some(partition);
        self
    }

    pub fn with_palette<S: Into<String>>(mut self, palette: impl IntoIterator<Item = S>) -> Self {
        self.palette = palette.into_iter().map(Into::into).collect();
        self
    }
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders the cover graph bottom-to-top. Vertices of equal height share a
/// rank; without a partition every vertex takes the first palette color.
pub fn to_dot(spec: &RenderSpec<'_>) -> Result<String> {
    let poset = spec.poset;
    if spec.palette.is_empty() {
        return Err(Error::EmptyPalette);
    }
    let owner = match spec.partition {
        Some(pi) => {
            if pi.n_vertices() != poset.len() {
                return Err(Error::InvalidPartition(format!(
                    "partition covers {} vertices but the poset has {}",
                    pi.n_vertices(),
                    poset.len()
                )));
            }
            pi.block_of()
        }
        None => vec![0; poset.len()],
    };

    let heights = poset.heights();
    let levels = heights.iter().max().map_or(0, |&h| h + 1);

    let mut out = String::new();
    out.push_str("digraph hasse {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle, style=filled, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [arrowhead=none];\n");
    for (v, &block) in owner.iter().enumerate() {
        let color = &spec.palette[block % spec.palette.len()];
        writeln!(out, "  {v} [label=\"{v}\", fillcolor={}];", quoted(color)).unwrap();
    }
    for level in 0..levels {
        let members: Vec<String> = heights
            .iter()
            .enumerate()
            .filter(|&(_, &h)| h == level)
            .map(|(v, _)| v.to_string())
            .collect();
        writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
    }
    for &(lo, hi) in poset.covers() {
        writeln!(out, "  {lo} -> {hi};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
