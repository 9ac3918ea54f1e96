//! Combinatorial semiperfectness. A path coalgebra is left semiperfect when
//! only finitely many paths end at each vertex and right semiperfect when
//! only finitely many start at each vertex. In the incidence coalgebra
//! `e_{x,y}` splits as `e_{x,z} ⊗ e_{z,y}`, which is how a path from `y` to
//! `x` splits, so there left semiperfectness asks for finitely many
//! intervals `[v, y]` above each `v`, and right for finitely many `[x, v]`.

use serde::Serialize;

use super::poset::Poset;
use super::quiver::Quiver;
use super::template::{PosetTemplate, QuiverTemplate};
use super::Hand;

/// What to examine.
#[derive(Clone, Copy, Debug)]
pub enum Family<'a> {
    Quiver(&'a Quiver),
    QuiverTemplate { template: QuiverTemplate, radius: usize },
    Poset(&'a Poset),
    PosetTemplate { template: PosetTemplate, radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SemiperfectVerdict {
    /// Every vertex in scope has a finite, fully enumerated set; `counts`
    /// lists its size per vertex.
    Holds { reason: String, counts: Vec<(String, usize)> },
    /// More than `bound` distinct paths (or intervals) at `vertex`.
    FailsWithCertificate { vertex: String, witnesses: Vec<String> },
    UnknownAtBound { reason: String },
}

impl SemiperfectVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SemiperfectVerdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, SemiperfectVerdict::FailsWithCertificate { .. })
    }
}

/// Work limit for a single vertex's enumeration.
const STEP_LIMIT: usize = 1_000_000;

enum Outcome {
    Finite(Vec<String>),
    Exceeds(Vec<String>),
    GaveUp,
}

/// Depth-first enumeration of paths through `step`, stopping once more than
/// `bound` have been seen.
fn enumerate_paths(start: i64, bound: usize, step: impl Fn(i64) -> Vec<(i64, String)>, start_label: String) -> Outcome {
    let mut found = vec![start_label];
    if found.len() > bound {
        return Outcome::Exceeds(found);
    }
    let mut stack: Vec<(i64, Vec<String>)> = vec![(start, Vec::new())];
    let mut steps = 0;
    while let Some((v, labels)) = stack.pop() {
        for (w, a) in step(v) {
            steps += 1;
            if steps > STEP_LIMIT {
                return Outcome::GaveUp;
            }
            let mut next = labels.clone();
            next.push(a);
            found.push(next.join("·"));
            if found.len() > bound {
                return Outcome::Exceeds(found);
            }
            stack.push((w, next));
        }
    }
    Outcome::Finite(found)
}

/// Breadth-first enumeration of distinct elements through `step`.
fn enumerate_elements(start: i64, bound: usize, step: impl Fn(i64) -> Vec<i64>, label: impl Fn(i64) -> String) -> Outcome {
    let mut seen = std::collections::BTreeSet::from([start]);
    let mut found = vec![label(start)];
    if found.len() > bound {
        return Outcome::Exceeds(found);
    }
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in step(v) {
            if seen.insert(w) {
                found.push(label(w));
                if found.len() > bound {
                    return Outcome::Exceeds(found);
                }
                queue.push_back(w);
            }
        }
    }
    Outcome::Finite(found)
}

/// Decides semiperfectness on `side` up to `bound` paths per vertex.
///
/// For finite quivers and posets the answer is exact. For templates the
/// vertices within the truncation radius are examined against the whole
/// infinite family; a failure certificate is a list of `bound + 1` distinct
/// paths (resp. intervals) ending at (resp. starting from) one vertex.
pub fn semiperfect_check(family: Family<'_>, side: Hand, bound: usize) -> SemiperfectVerdict {
    let backwards = side == Hand::Left;
    let mut counts = Vec::new();
    let mut record = |name: String, outcome: Outcome| -> Option<SemiperfectVerdict> {
        match outcome {
            Outcome::Finite(found) => {
                counts.push((name, found.len()));
                None
            }
            Outcome::Exceeds(found) => Some(SemiperfectVerdict::FailsWithCertificate { vertex: name, witnesses: found }),
            Outcome::GaveUp => Some(SemiperfectVerdict::UnknownAtBound {
                reason: format!("enumeration at vertex {name} exceeded {STEP_LIMIT} steps"),
            }),
        }
    };
    let reason = match family {
        Family::Quiver(q) => {
            if q.is_acyclic() {
                let paths = q.paths(q.vertex_count());
                let counts = (0..q.vertex_count())
                    .map(|v| {
                        let n = paths.iter().filter(|p| if backwards { p.target == v } else { p.source == v }).count();
                        (q.vertices[v].clone(), n)
                    })
                    .collect();
                return SemiperfectVerdict::Holds { reason: "finite acyclic quiver has finitely many paths".into(), counts };
            }
            for v in 0..q.vertex_count() {
                let step = |w: i64| -> Vec<(i64, String)> {
                    let w = w as usize;
                    if backwards {
                        q.in_arrows(w).map(|i| (q.arrows[i].source as i64, q.arrows[i].label.clone())).collect()
                    } else {
                        q.out_arrows(w).map(|i| (q.arrows[i].target as i64, q.arrows[i].label.clone())).collect()
                    }
                };
                let outcome = enumerate_paths(v as i64, bound, step, format!("e{}", q.vertices[v]));
                if let Some(verdict) = record(q.vertices[v].clone(), outcome) {
                    return verdict;
                }
            }
            "every vertex has finitely many paths on this side".to_string()
        }
        Family::QuiverTemplate { template, radius } => {
            let mut scope = template.vertices_within(radius);
            scope.sort_by_key(|&v| (template.distance(v), v));
            for v in scope {
                let step = |w: i64| if backwards { template.in_arrows(w) } else { template.out_arrows(w) };
                let outcome = enumerate_paths(v, bound, step, format!("e{v}"));
                if let Some(verdict) = record(v.to_string(), outcome) {
                    return verdict;
                }
            }
            format!("{} within radius {radius}: every vertex has at most {bound} paths on this side", template.name())
        }
        Family::Poset(x) => {
            let counts = (0..x.len())
                .map(|v| {
                    let n = (0..x.len()).filter(|&w| if backwards { x.leq(v, w) } else { x.leq(w, v) }).count();
                    (x.elements[v].clone(), n)
                })
                .collect();
            return SemiperfectVerdict::Holds { reason: "finite poset has finitely many intervals".into(), counts };
        }
        Family::PosetTemplate { template, radius } => {
            let mut scope = template.elements_within(radius);
            scope.sort_by_key(|&v| (v.unsigned_abs(), v));
            for v in scope {
                let step = |w: i64| if backwards { template.up(w) } else { template.down(w) };
                let label = |w: i64| if backwards { format!("e({v},{w})") } else { format!("e({w},{v})") };
                let outcome = enumerate_elements(v, bound, step, label);
                if let Some(verdict) = record(v.to_string(), outcome) {
                    return verdict;
                }
            }
            format!("{} within radius {radius}: every element has at most {bound} intervals on this side", template.name())
        }
    };
    SemiperfectVerdict::Holds { reason, counts }
}
