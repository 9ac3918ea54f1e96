//! Infinite quiver and poset families, seen only through local enumerators
//! and finite truncations around an origin.

use serde::{Deserialize, Serialize};

use super::poset::Poset;
use super::quiver::{Arrow, Quiver};
use crate::error::{Error, Result};

/// Locally finite infinite quivers. Vertex ids are integers; the origin is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuiverTemplate {
    /// `⋯ → -1 → 0 → 1 → ⋯`
    IntegerLine,
    /// `0 → 1 → 2 → ⋯`
    Ray,
    /// `arms` infinite rays flowing into a centre vertex 0. Vertex `(arm a,
    /// distance d)` has id `(d - 1) * arms + a + 1` and arrows point towards
    /// the centre.
    Star { arms: usize },
    /// One vertex with one loop `x`.
    SingleLoop,
}

impl QuiverTemplate {
    pub fn name(&self) -> String {
        match self {
            QuiverTemplate::IntegerLine => "integer-line".into(),
            QuiverTemplate::Ray => "ray".into(),
            QuiverTemplate::Star { arms } => format!("star-{arms}"),
            QuiverTemplate::SingleLoop => "single-loop".into(),
        }
    }

    pub fn from_name(kind: &str) -> Result<Self> {
        match kind {
            "integer-line" => Ok(QuiverTemplate::IntegerLine),
            "ray" => Ok(QuiverTemplate::Ray),
            "star" => Ok(QuiverTemplate::Star { arms: 3 }),
            "single-loop" | "loop" => Ok(QuiverTemplate::SingleLoop),
            other => match other.strip_prefix("star-").and_then(|a| a.parse().ok()) {
                Some(arms) if arms > 0 => Ok(QuiverTemplate::Star { arms }),
                _ => Err(Error::Invalid(format!("unknown quiver template `{other}`"))),
            },
        }
    }

    /// Arrows leaving `v`, as `(target, label)`.
    pub fn out_arrows(&self, v: i64) -> Vec<(i64, String)> {
        match *self {
            QuiverTemplate::IntegerLine => vec![(v + 1, format!("a{v}"))],
            QuiverTemplate::Ray => vec![(v + 1, format!("a{v}"))],
            QuiverTemplate::Star { arms } => {
                if v == 0 {
                    Vec::new()
                } else {
                    let k = arms as i64;
                    let target = if v <= k { 0 } else { v - k };
                    vec![(target, format!("a{v}"))]
                }
            }
            QuiverTemplate::SingleLoop => vec![(0, "x".into())],
        }
    }

    /// Arrows entering `v`, as `(source, label)`.
    pub fn in_arrows(&self, v: i64) -> Vec<(i64, String)> {
        match *self {
            QuiverTemplate::IntegerLine => vec![(v - 1, format!("a{}", v - 1))],
            QuiverTemplate::Ray => {
                if v == 0 {
                    Vec::new()
                } else {
                    vec![(v - 1, format!("a{}", v - 1))]
                }
            }
            QuiverTemplate::Star { arms } => {
                let k = arms as i64;
                if v == 0 {
                    (1..=k).map(|s| (s, format!("a{s}"))).collect()
                } else {
                    vec![(v + k, format!("a{}", v + k))]
                }
            }
            QuiverTemplate::SingleLoop => vec![(0, "x".into())],
        }
    }

    pub fn distance(&self, v: i64) -> usize {
        match *self {
            QuiverTemplate::IntegerLine | QuiverTemplate::Ray => v.unsigned_abs() as usize,
            QuiverTemplate::Star { arms } => {
                if v == 0 {
                    0
                } else {
                    (v as usize - 1) / arms + 1
                }
            }
            QuiverTemplate::SingleLoop => 0,
        }
    }

    /// Vertices at distance `≤ radius` from the origin, in increasing id order.
    pub fn vertices_within(&self, radius: usize) -> Vec<i64> {
        let r = radius as i64;
        match *self {
            QuiverTemplate::IntegerLine => (-r..=r).collect(),
            QuiverTemplate::Ray => (0..=r).collect(),
            QuiverTemplate::Star { arms } => (0..=r * arms as i64).collect(),
            QuiverTemplate::SingleLoop => vec![0],
        }
    }

    pub fn is_acyclic(&self) -> bool {
        !matches!(self, QuiverTemplate::SingleLoop)
    }

    /// The full subquiver on the vertices within `radius`, and the path
    /// length bound that makes its path (co)algebra finite.
    pub fn truncate(&self, radius: usize) -> Truncation {
        let ids = self.vertices_within(radius);
        let pos = |v: i64| ids.iter().position(|&w| w == v);
        let mut arrows = Vec::new();
        for (s, &v) in ids.iter().enumerate() {
            for (t, label) in self.out_arrows(v) {
                if let Some(t) = pos(t) {
                    arrows.push(Arrow { source: s, target: t, label });
                }
            }
        }
        let quiver = Quiver::new(ids.iter().map(|v| v.to_string()).collect(), arrows).expect("truncation is well formed");
        let max_len = match self {
            QuiverTemplate::SingleLoop => radius,
            _ => quiver.longest_path().expect("acyclic templates truncate to acyclic quivers"),
        };
        Truncation { radius, ids, quiver, max_len }
    }
}

/// A finite piece of a template.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub radius: usize,
    /// Template id of each vertex of `quiver`.
    pub ids: Vec<i64>,
    pub quiver: Quiver,
    pub max_len: usize,
}

/// Locally finite infinite posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PosetTemplate {
    /// `(ℤ, ≤)`
    IntegerChain,
    /// `(ℕ, ≤)`
    NaturalChain,
}

impl PosetTemplate {
    pub fn name(&self) -> &'static str {
        match self {
            PosetTemplate::IntegerChain => "integer-chain",
            PosetTemplate::NaturalChain => "natural-chain",
        }
    }

    pub fn from_name(kind: &str) -> Result<Self> {
        match kind {
            "integer-chain" => Ok(PosetTemplate::IntegerChain),
            "natural-chain" => Ok(PosetTemplate::NaturalChain),
            other => Err(Error::Invalid(format!("unknown poset template `{other}`"))),
        }
    }

    pub fn leq(&self, x: i64, y: i64) -> bool {
        x <= y
    }

    /// Upper covers of `x`.
    pub fn up(&self, x: i64) -> Vec<i64> {
        vec![x + 1]
    }

    /// Lower covers of `x`.
    pub fn down(&self, x: i64) -> Vec<i64> {
        match self {
            PosetTemplate::NaturalChain if x == 0 => Vec::new(),
            _ => vec![x - 1],
        }
    }

    pub fn elements_within(&self, radius: usize) -> Vec<i64> {
        let r = radius as i64;
        match self {
            PosetTemplate::IntegerChain => (-r..=r).collect(),
            PosetTemplate::NaturalChain => (0..=r).collect(),
        }
    }

    pub fn truncate(&self, radius: usize) -> Poset {
        let els = self.elements_within(radius);
        let n = els.len();
        let names = els.iter().map(|e| e.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Poset::new(names, &pairs).expect("chains are posets")
    }
}
