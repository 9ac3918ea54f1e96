//! Cross-validation of combinatorial semiperfectness against the density of
//! the rational dual, radius by radius.
//!
//! At radius `r` the truncation `C_r` is decomposed into injective blocks on
//! the side opposite to the semiperfectness side, and so is `C_{2r}`. A block
//! is complete when its copy in `C_{2r}` already lies in `C_r`; the density
//! proxy is the joint annihilator in `C_r` of the duals of complete blocks,
//! i.e. the kernel of `φ_l` for the rational dual built from them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::decompose::decompose_with_candidates;
use super::ratdual::{phi_l, rat_dual_of_blocks, Radii};
use crate::coalgebra::FinCoalgebra;
use crate::combinatorial::{semiperfect_check, Family, Grouping, Hand, Poset, PosetTemplate, Quiver, QuiverTemplate, SemiperfectVerdict};
use crate::error::Result;
use crate::linalg::{FieldSpec, Subspace};

/// Families the harness can truncate.
#[derive(Clone, Debug)]
pub enum TemplateFamily {
    FiniteQuiver(Quiver),
    Quiver(QuiverTemplate),
    FinitePoset(Poset),
    Poset(PosetTemplate),
}

impl TemplateFamily {
    pub fn name(&self) -> String {
        match self {
            TemplateFamily::FiniteQuiver(q) => format!("finite-quiver({} vertices, {} arrows)", q.vertex_count(), q.arrows.len()),
            TemplateFamily::Quiver(t) => t.name(),
            TemplateFamily::FinitePoset(p) => format!("finite-poset({} elements)", p.len()),
            TemplateFamily::Poset(t) => t.name().to_string(),
        }
    }

    /// The truncated coalgebra and its two endpoint groupings.
    fn truncate(&self, field: FieldSpec, radius: usize) -> (FinCoalgebra, [Grouping; 2]) {
        match self {
            TemplateFamily::FiniteQuiver(q) => {
                let len = q.longest_path().unwrap_or(radius);
                (q.path_coalgebra(field, len), q.endpoint_groupings(len))
            }
            TemplateFamily::Quiver(t) => {
                let tr = t.truncate(radius);
                (tr.quiver.path_coalgebra(field, tr.max_len), tr.quiver.endpoint_groupings(tr.max_len))
            }
            TemplateFamily::FinitePoset(p) => (p.incidence_coalgebra(field), p.endpoint_groupings()),
            TemplateFamily::Poset(t) => {
                let p = t.truncate(radius);
                (p.incidence_coalgebra(field), p.endpoint_groupings())
            }
        }
    }

    fn verdict(&self, side: Hand, radius: usize, bound: usize) -> SemiperfectVerdict {
        match self {
            TemplateFamily::FiniteQuiver(q) => semiperfect_check(Family::Quiver(q), side, bound),
            TemplateFamily::Quiver(t) => semiperfect_check(Family::QuiverTemplate { template: *t, radius }, side, bound),
            TemplateFamily::FinitePoset(p) => semiperfect_check(Family::Poset(p), side, bound),
            TemplateFamily::Poset(t) => semiperfect_check(Family::PosetTemplate { template: *t, radius }, side, bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusRow {
    pub radius: usize,
    pub combinatorial: SemiperfectVerdict,
    pub dim: usize,
    pub blocks: usize,
    pub complete_blocks: usize,
    /// Grouping certified for the decomposition of the truncation.
    pub grouping: String,
    pub annihilator_dim: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub family: String,
    pub side: Hand,
    pub bound: usize,
    pub rows: Vec<RadiusRow>,
    pub disagreements: usize,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

fn grouping_name(method: &super::decompose::Method) -> String {
    match method {
        super::decompose::Method::Grouping { name } => name.clone(),
        super::decompose::Method::Idempotents { seed } => format!("idempotents(seed {seed})"),
    }
}

/// Blocks are the injective hulls on the side opposite to `side`: right
/// semiperfectness concerns the left comodules `E(S_j)`.
pub fn semiperfect_iff_injective_harness(
    family: &TemplateFamily,
    side: Hand,
    radii: &[usize],
    bound: usize,
    field: FieldSpec,
) -> Result<HarnessReport> {
    let block_side = side.opposite();
    let mut rows = Vec::new();
    for &r in radii {
        let (small, small_groups) = family.truncate(field, r);
        let (big, big_groups) = family.truncate(field, 2 * r);
        let [g0, g1] = small_groups;
        let small = Arc::new(small);
        let d = decompose_with_candidates(&small, block_side, &[("source", g0), ("target", g1)], 0)?;
        let [b0, b1] = big_groups;
        let big = Arc::new(big);
        let dbig = decompose_with_candidates(&big, block_side, &[("source", b0), ("target", b1)], 0)?;
        let big_index: HashMap<String, usize> = (0..big.dim()).map(|i| (big.label(i), i)).collect();
        let embedded = Subspace::span(
            field,
            big.dim(),
            (0..small.dim()).map(|i| crate::linalg::unit_vec(field, big.dim(), big_index[&small.label(i)])),
        );
        let complete: Vec<usize> = d
            .blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| {
                dbig.blocks
                    .iter()
                    .find(|bb| bb.label == b.label)
                    .is_some_and(|bb| bb.basis.len() == b.basis.len() && bb.basis.iter().all(|v| embedded.contains(v)))
            })
            .map(|(j, _)| j)
            .collect();
        let rat = rat_dual_of_blocks(&d, complete.clone(), Some(Radii { radius: r, closure_radius: 2 * r }))?;
        let phi = phi_l(&rat)?;
        let combinatorial = family.verdict(side, r, bound);
        let annihilator_dim = phi.kernel.len();
        let agree = match &combinatorial {
            SemiperfectVerdict::Holds { .. } => annihilator_dim == 0,
            SemiperfectVerdict::FailsWithCertificate { .. } => annihilator_dim > 0,
            SemiperfectVerdict::UnknownAtBound { .. } => false,
        };
        rows.push(RadiusRow {
            radius: r,
            combinatorial,
            dim: small.dim(),
            blocks: d.blocks.len(),
            complete_blocks: complete.len(),
            grouping: grouping_name(&d.method),
            annihilator_dim,
            agree,
        });
    }
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    Ok(HarnessReport { family: family.name(), side, bound, rows, disagreements })
}
