//! Quivers, their paths, and the path algebra and path coalgebra.
//!
//! A path `p = a_k ⋯ a_1` traverses `a_1` first. Composition follows
//! functions: `p·q` is nonzero exactly when `source(p) = target(q)`, and then
//! it is the path that runs through `q` and continues with `p`. The
//! comultiplication splits a path as `Δ(p) = Σ_{p = q·r} q ⊗ r`, the later
//! segment on the left, so the dual basis of the path algebra multiplies
//! exactly as the path coalgebra comultiplies.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::coalgebra::FinCoalgebra;
use crate::error::{Error, Result};
use crate::finite_dual::{GradedAlgebra, GradedKind};
use crate::linalg::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite quiver. Vertices are `0..vertices.len()` with display names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// Candidate blocks: a name and the basis indices belonging to it.
pub type Grouping = Vec<(String, Vec<usize>)>;

/// A path given by its start vertex and the arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self · other`: run `other` first, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        (self.source == other.target).then(|| Path {
            source: other.source,
            target: self.target,
            arrows: other.arrows.iter().chain(&self.arrows).copied().collect(),
        })
    }

    /// All `(q, r)` with `self = q · r`, from `r` trivial to `q` trivial.
    pub fn splittings(&self, q: &Quiver) -> Vec<(Path, Path)> {
        (0..=self.len())
            .map(|cut| {
                let mid = if cut == 0 { self.source } else { q.arrows[self.arrows[cut - 1]].target };
                let initial = Path { source: self.source, target: mid, arrows: self.arrows[..cut].to_vec() };
                let later = Path { source: mid, target: self.target, arrows: self.arrows[cut..].to_vec() };
                (later, initial)
            })
            .collect()
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertices.len();
        if arrows.iter().any(|a| a.source >= n || a.target >= n) {
            return Err(Error::Invalid("arrow endpoint is not a vertex".into()));
        }
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != n {
            return Err(Error::Invalid("duplicate vertex name".into()));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Vertices named `1..=n` and arrows given by index pairs, labelled `a1, a2, …`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (1..=n).map(|v| v.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| Arrow { source: s, target: t, label: format!("a{}", i + 1) })
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for i in self.out_arrows(v).collect::<Vec<_>>() {
                let t = self.arrows[i].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Length of the longest path, `None` if there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut best = vec![0usize; self.vertex_count()];
        for v in order {
            for i in self.out_arrows(v) {
                let t = self.arrows[i].target;
                best[t] = best[t].max(best[v] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// All paths of length at most `max_len`, sorted by length, then by
    /// source vertex, then by arrow sequence.
    pub fn paths(&self, max_len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        let mut all = layer.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for i in self.out_arrows(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path { source: p.source, target: self.arrows[i].target, arrows });
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| (a.source, &a.arrows).cmp(&(b.source, &b.arrows)));
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// `e_v` for trivial paths, otherwise arrow labels in composition order.
    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows.iter().rev().map(|&i| self.arrows[i].label.as_str()).collect::<Vec<_>>().join("")
        }
    }

    fn index(paths: &[Path]) -> std::collections::HashMap<&Path, usize> {
        paths.iter().enumerate().map(|(i, p)| (p, i)).collect()
    }

    /// The path algebra on paths of length `≤ max_len`, graded by length.
    /// Products longer than `max_len` are dropped and the result is flagged
    /// as truncated when any such product exists.
    pub fn path_algebra(&self, field: FieldSpec, max_len: usize) -> GradedAlgebra {
        let paths = self.paths(max_len);
        let idx = Self::index(&paths);
        let mut truncated = false;
        let mut entries = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if let Some(pq) = p.compose(q) {
                    match idx.get(&pq) {
                        Some(&k) => entries.push((i, j, k, field.one())),
                        None => truncated = true,
                    }
                }
            }
        }
        let unit = (!paths.is_empty()).then(|| paths.iter().map(|p| if p.is_trivial() { field.one() } else { field.zero() }).collect());
        let labels = paths.iter().map(|p| self.path_label(p)).collect();
        let algebra = FinAlgebra::from_entries_unchecked(field, paths.len(), entries, unit)
            .expect("path indices are in range")
            .with_labels(labels);
        let degrees = paths.iter().map(Path::len).collect();
        GradedAlgebra::new(GradedKind::PathAlgebra, algebra, degrees, max_len, truncated).expect("one degree per path")
    }

    /// The path coalgebra on paths of length `≤ max_len` (always a subcoalgebra).
    pub fn path_coalgebra(&self, field: FieldSpec, max_len: usize) -> FinCoalgebra {
        let paths = self.paths(max_len);
        let idx = Self::index(&paths);
        let mut entries = Vec::new();
        for (k, p) in paths.iter().enumerate() {
            for (later, initial) in p.splittings(self) {
                entries.push((k, idx[&later], idx[&initial], field.one()));
            }
        }
        let counit = paths.iter().map(|p| if p.is_trivial() { field.one() } else { field.zero() }).collect();
        let labels = paths.iter().map(|p| self.path_label(p)).collect();
        FinCoalgebra::from_entries_unchecked(field, paths.len(), entries, Some(counit))
            .expect("path indices are in range")
            .with_labels(labels)
    }

    /// Basis indices of the paths of length `≤ max_len`, grouped by source
    /// vertex and by target vertex, keyed by vertex name.
    pub fn endpoint_groupings(&self, max_len: usize) -> [Grouping; 2] {
        let paths = self.paths(max_len);
        let group = |end: fn(&Path) -> usize| -> Grouping {
            (0..self.vertex_count())
                .map(|v| (self.vertices[v].clone(), (0..paths.len()).filter(|&i| end(&paths[i]) == v).collect()))
                .collect()
        };
        [group(|p| p.source), group(|p| p.target)]
    }

    /// Path algebra and coalgebra of an acyclic quiver, with every path included.
    pub fn exact_max_len(&self) -> Result<usize> {
        self.longest_path().ok_or_else(|| Error::NotAcyclic(self.vertices[self.cycle_vertex().unwrap_or(0)].clone()))
    }

    /// Some vertex lying on an oriented cycle.
    pub fn cycle_vertex(&self) -> Option<usize> {
        // repeatedly strip vertices without incoming or without outgoing arrows
        let n = self.vertex_count();
        let mut alive = vec![true; n];
        loop {
            let strip: Vec<usize> = (0..n)
                .filter(|&v| {
                    alive[v]
                        && (self.in_arrows(v).all(|i| !alive[self.arrows[i].source])
                            || self.out_arrows(v).all(|i| !alive[self.arrows[i].target]))
                })
                .collect();
            if strip.is_empty() {
                return (0..n).find(|&v| alive[v]);
            }
            for v in strip {
                alive[v] = false;
            }
        }
    }
}
