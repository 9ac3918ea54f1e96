//! Objects written back as spec-document blocks.

use serde_json::{json, Value};

use crate::algebra::FinAlgebra;
use crate::coalgebra::{CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::{Poset, Quiver};
use crate::comodule::FinComodule;
use crate::finite_dual::LinRecFunctional;
use crate::linalg::{MatrixLiteral, Scalar};

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn entry(a: usize, b: usize, c: usize, s: &Scalar) -> Value {
    json!([a, b, c, s.to_string()])
}

pub fn algebra_block(a: &FinAlgebra) -> Value {
    let mut block = json!({
        "type": "algebra",
        "field": a.field().to_string(),
        "dim": a.dim(),
        "mult": a.structure_constants().map(|(i, j, k, s)| entry(i, j, k, s)).collect::<Vec<_>>(),
        "unit": a.unit().map(|u| strings(u)),
    });
    if let Some(l) = a.labels() {
        block["labels"] = json!(l);
    }
    block
}

pub fn coalgebra_block(c: &FinCoalgebra) -> Value {
    let mut block = json!({
        "type": "coalgebra",
        "field": c.field().to_string(),
        "dim": c.dim(),
        "comult": c.structure_constants().map(|(k, i, j, s)| entry(k, i, j, s)).collect::<Vec<_>>(),
        "counit": c.counit().map(|u| strings(u)),
    });
    if let Some(l) = c.labels() {
        block["labels"] = json!(l);
    }
    block
}

/// `coalgebra` is the id under which the underlying coalgebra is stored.
pub fn comodule_block(m: &FinComodule, coalgebra: &str) -> Value {
    json!({
        "type": "comodule",
        "coalgebra": coalgebra,
        "dim": m.dim(),
        "coaction": m.structure_constants().iter().map(|(t, s, k, x)| entry(*t, *s, *k, x)).collect::<Vec<_>>(),
        "counital": m.is_counital(),
    })
}

pub fn functional_block(f: &LinRecFunctional) -> Value {
    json!({"type": "functional", "field": f.field.to_string(), "values": strings(&f.values)})
}

pub fn quiver_block(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|a| json!([q.vertices[a.source], q.vertices[a.target], a.label]))
        .collect();
    json!({"type": "quiver", "vertices": q.vertices, "arrows": arrows})
}

pub fn poset_block(p: &Poset) -> Value {
    let n = p.len();
    let leq: Vec<Value> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| x != y && p.leq(x, y)).map(move |y| (x, y)))
        .map(|(x, y)| json!([p.elements[x], p.elements[y]]))
        .collect();
    json!({"type": "poset", "elements": p.elements, "leq": leq})
}

/// `source` and `target` are the ids of the two coalgebras.
pub fn morphism_block(f: &CoalgebraMorphism, source: &str, target: &str) -> Value {
    json!({"type": "coalgebra-morphism", "source": source, "target": target, "matrix": MatrixLiteral::from_matrix(&f.matrix)})
}
