//! Spec documents: a single JSON file naming objects and listing checks.
//!
//! ```json
//! {
//!   "field": "q",
//!   "objects": {
//!     "Q": {"type": "quiver", "vertices": ["1", "2"], "arrows": [["1", "2", "a"]]}
//!   },
//!   "checks": [{"check": "pathdual-iso", "objects": ["Q"]}]
//! }
//! ```
//!
//! Scalars are always JSON strings (`"3"`, `"-1/2"`), never JSON numbers.

mod blocks;
mod checks;
mod report;
mod suite;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FinAlgebra;
use crate::coalgebra::{CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::{Arrow, Poset, PosetTemplate, Quiver, QuiverTemplate};
use crate::comodule::FinComodule;
use crate::error::{Error, Result};
use crate::finite_dual::{bialgebra_dual, FinBialgebra, FiniteGroup, LinRecFunctional};
use crate::linalg::{FieldSpec, MatrixLiteral, Scalar, Vector};

pub use blocks::{algebra_block, coalgebra_block, comodule_block, functional_block, morphism_block, poset_block, quiver_block};
pub use checks::{check_names, run_document, CheckKind};
pub use report::{CheckResult, Report, SCHEMA};
pub use suite::{builtin_suite, SuiteKnobs, SuiteName};

/// One named object of a spec document.
#[derive(Clone, Debug)]
pub enum Object {
    Algebra(Arc<FinAlgebra>),
    Coalgebra(Arc<FinCoalgebra>),
    Comodule(Arc<FinComodule>),
    Functional(LinRecFunctional),
    Quiver(Quiver),
    QuiverTemplate { template: QuiverTemplate, radius: usize },
    Poset(Poset),
    PosetTemplate { template: PosetTemplate, radius: usize },
    Bialgebra(FinBialgebra),
    CoalgebraMorphism(Arc<CoalgebraMorphism>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Coalgebra(_) => "coalgebra",
            Object::Comodule(_) => "comodule",
            Object::Functional(_) => "functional",
            Object::Quiver(_) => "quiver",
            Object::QuiverTemplate { .. } => "quiver-template",
            Object::Poset(_) => "poset",
            Object::PosetTemplate { .. } => "poset-template",
            Object::Bialgebra(_) => "bialgebra",
            Object::CoalgebraMorphism(_) => "coalgebra-morphism",
        }
    }
}

/// A check as written in the document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub check: String,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub params: serde_json::Map<String, Value>,
}

#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub field: FieldSpec,
    pub seed: u64,
    pub objects: BTreeMap<String, Object>,
    pub checks: Vec<CheckSpec>,
    /// The blocks exactly as written, for replay.
    raw: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    field: Option<String>,
    seed: Option<u64>,
    #[serde(default)]
    objects: BTreeMap<String, RawObject>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Name {
    Text(String),
    Number(i64),
}

impl Name {
    fn text(&self) -> String {
        match self {
            Name::Text(s) => s.clone(),
            Name::Number(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum RawArrow {
    Labelled(Name, Name, String),
    Plain(Name, Name),
}

type Entry = (usize, usize, usize, String);

#[derive(Deserialize, Clone, Debug)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum RawObject {
    Algebra {
        field: Option<String>,
        dim: usize,
        #[serde(default)]
        mult: Vec<Entry>,
        unit: Option<Vec<String>>,
        labels: Option<Vec<String>>,
    },
    Coalgebra {
        field: Option<String>,
        dim: usize,
        #[serde(default)]
        comult: Vec<Entry>,
        counit: Option<Vec<String>>,
        labels: Option<Vec<String>>,
    },
    Comodule {
        coalgebra: String,
        dim: usize,
        #[serde(default)]
        coaction: Vec<Entry>,
        #[serde(default = "default_true")]
        counital: bool,
    },
    Functional {
        field: Option<String>,
        values: Option<Vec<String>>,
        sequence: Option<String>,
        terms: Option<usize>,
    },
    Quiver {
        vertices: Vec<Name>,
        #[serde(default)]
        arrows: Vec<RawArrow>,
    },
    QuiverTemplate {
        kind: String,
        radius: usize,
        arms: Option<usize>,
    },
    Poset {
        elements: Vec<Name>,
        #[serde(default)]
        leq: Vec<(Name, Name)>,
    },
    PosetTemplate {
        kind: String,
        radius: usize,
    },
    Bialgebra {
        field: Option<String>,
        group: Option<String>,
        #[serde(default)]
        dual: bool,
        algebra: Option<String>,
        coalgebra: Option<String>,
        antipode: Option<MatrixLiteral>,
    },
    CoalgebraMorphism {
        source: String,
        target: String,
        matrix: MatrixLiteral,
    },
}

fn default_true() -> bool {
    true
}

impl RawObject {
    fn references(&self) -> Vec<String> {
        match self {
            RawObject::Comodule { coalgebra, .. } => vec![coalgebra.clone()],
            RawObject::Bialgebra { algebra, coalgebra, .. } => algebra.iter().chain(coalgebra).cloned().collect(),
            RawObject::CoalgebraMorphism { source, target, .. } => vec![source.clone(), target.clone()],
            _ => Vec::new(),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    let mut message = e.to_string();
    // the position is reported separately
    if let Some(at) = message.rfind(" at line ") {
        message.truncate(at);
    }
    Error::ParseAt { line: e.line(), column: e.column(), message }
}

impl SpecDocument {
    /// Parses and builds every object. `field` overrides the document's
    /// default field when given; object-level fields always win.
    pub fn parse(text: &str, field: Option<FieldSpec>, seed: Option<u64>) -> Result<Self> {
        let doc: RawDocument = serde_json::from_str(text).map_err(json_error)?;
        let value: Value = serde_json::from_str(text).map_err(json_error)?;
        let raw = match value.get("objects") {
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            _ => BTreeMap::new(),
        };
        let default_field = match (field, &doc.field) {
            (Some(f), _) => f,
            (None, Some(s)) => FieldSpec::parse(s)?,
            (None, None) => FieldSpec::Rationals,
        };
        let mut objects = BTreeMap::new();
        // comodules and bialgebras refer to objects built in the first pass
        for pass in 0..2 {
            for (id, obj) in &doc.objects {
                let refs = obj.references();
                if (pass == 0) != refs.is_empty() {
                    continue;
                }
                for r in &refs {
                    if !doc.objects.contains_key(r) {
                        return Err(Error::UnresolvedReference(r.clone()));
                    }
                }
                let built = build_object(obj, default_field, &objects)
                    .map_err(|e| Error::Parse(format!("object `{id}`: {e}")))?;
                objects.insert(id.clone(), built);
            }
        }
        let document = SpecDocument {
            field: default_field,
            seed: seed.or(doc.seed).unwrap_or(0),
            objects,
            checks: doc.checks,
            raw,
        };
        for c in &document.checks {
            for id in &c.objects {
                if !document.objects.contains_key(id) {
                    return Err(Error::UnresolvedReference(id.clone()));
                }
            }
        }
        Ok(document)
    }

    pub fn object(&self, id: &str) -> Result<&Object> {
        self.objects.get(id).ok_or_else(|| Error::UnresolvedReference(id.to_string()))
    }

    /// A self-contained document holding `check` and exactly the objects it
    /// needs, dependencies included.
    pub fn replay_block(&self, check: &CheckSpec) -> Value {
        let mut needed: Vec<String> = check.objects.clone();
        let mut out = serde_json::Map::new();
        while let Some(id) = needed.pop() {
            if out.contains_key(&id) {
                continue;
            }
            if let Some(v) = self.raw.get(&id) {
                for key in ["coalgebra", "algebra", "source", "target"] {
                    if let Some(Value::String(r)) = v.get(key) {
                        needed.push(r.clone());
                    }
                }
                out.insert(id, v.clone());
            }
        }
        serde_json::json!({
            "field": self.field.to_string(),
            "seed": self.seed,
            "objects": out,
            "checks": [check],
        })
    }
}

fn scalars(field: FieldSpec, xs: &[String]) -> Result<Vector> {
    xs.iter().map(|s| field.parse_scalar(s)).collect()
}

fn entries(field: FieldSpec, es: &[Entry]) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    es.iter().map(|(a, b, c, s)| Ok((*a, *b, *c, field.parse_scalar(s)?))).collect()
}

fn field_of(own: &Option<String>, default: FieldSpec) -> Result<FieldSpec> {
    own.as_deref().map(FieldSpec::parse).unwrap_or(Ok(default))
}

fn check_labels(labels: &Option<Vec<String>>, dim: usize) -> Result<()> {
    match labels {
        Some(l) if l.len() != dim => Err(Error::DimensionMismatch(format!("{} labels for dimension {dim}", l.len()))),
        _ => Ok(()),
    }
}

pub(crate) fn named_sequence(field: FieldSpec, name: &str, terms: usize) -> Result<Vector> {
    let mut out: Vector = Vec::with_capacity(terms);
    for n in 0..terms {
        let next = match name {
            "fibonacci" if n < 2 => field.from_i64(n as i64),
            "fibonacci" => &out[n - 1] + &out[n - 2],
            "constant" => field.one(),
            "factorial" if n == 0 => field.one(),
            "factorial" => &out[n - 1] * &field.from_i64(n as i64),
            "powers-of-two" if n == 0 => field.one(),
            "powers-of-two" => &out[n - 1] * &field.from_i64(2),
            other => return Err(Error::Invalid(format!("unknown sequence `{other}`"))),
        };
        out.push(next);
    }
    Ok(out)
}

fn group_by_name(name: &str) -> Result<FiniteGroup> {
    if name == "S3" {
        return Ok(FiniteGroup::symmetric3());
    }
    let n = name
        .strip_prefix("Z/")
        .or_else(|| name.strip_prefix('C'))
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Invalid(format!("unknown group `{name}` (expected Z/<n>, C<n> or S3)")))?;
    Ok(FiniteGroup::cyclic(n))
}

fn build_object(raw: &RawObject, default_field: FieldSpec, built: &BTreeMap<String, Object>) -> Result<Object> {
    Ok(match raw {
        RawObject::Algebra { field, dim, mult, unit, labels } => {
            let f = field_of(field, default_field)?;
            check_labels(labels, *dim)?;
            let unit = unit.as_ref().map(|u| scalars(f, u)).transpose()?;
            let mut a = FinAlgebra::new(f, *dim, entries(f, mult)?, unit)?;
            if let Some(l) = labels {
                a = a.with_labels(l.clone());
            }
            Object::Algebra(Arc::new(a))
        }
        RawObject::Coalgebra { field, dim, comult, counit, labels } => {
            let f = field_of(field, default_field)?;
            check_labels(labels, *dim)?;
            let counit = counit.as_ref().map(|u| scalars(f, u)).transpose()?;
            let mut c = FinCoalgebra::new(f, *dim, entries(f, comult)?, counit)?;
            if let Some(l) = labels {
                c = c.with_labels(l.clone());
            }
            Object::Coalgebra(Arc::new(c))
        }
        RawObject::Comodule { coalgebra, dim, coaction, counital } => {
            let Some(Object::Coalgebra(c)) = built.get(coalgebra) else {
                return Err(Error::Invalid(format!("`{coalgebra}` is not a coalgebra")));
            };
            let f = c.field();
            Object::Comodule(Arc::new(FinComodule::new(c.clone(), *dim, entries(f, coaction)?, *counital)?))
        }
        RawObject::Functional { field, values, sequence, terms } => {
            let f = field_of(field, default_field)?;
            let values = match (values, sequence) {
                (Some(v), None) => scalars(f, v)?,
                (None, Some(name)) => named_sequence(f, name, terms.unwrap_or(40))?,
                _ => return Err(Error::Invalid("a functional needs exactly one of `values` or `sequence`".into())),
            };
            Object::Functional(LinRecFunctional::new(f, values))
        }
        RawObject::Quiver { vertices, arrows } => {
            let names: Vec<String> = vertices.iter().map(Name::text).collect();
            let index = |n: &Name| {
                let t = n.text();
                names.iter().position(|v| *v == t).ok_or_else(|| Error::Invalid(format!("arrow endpoint `{t}` is not a vertex")))
            };
            let arrows = arrows
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let (s, t, label) = match a {
                        RawArrow::Labelled(s, t, l) => (s, t, l.clone()),
                        RawArrow::Plain(s, t) => (s, t, format!("a{}", i + 1)),
                    };
                    Ok(Arrow { source: index(s)?, target: index(t)?, label })
                })
                .collect::<Result<Vec<_>>>()?;
            Object::Quiver(Quiver::new(names, arrows)?)
        }
        RawObject::QuiverTemplate { kind, radius, arms } => {
            let template = match (kind.as_str(), arms) {
                ("star", Some(arms)) if *arms > 0 => QuiverTemplate::Star { arms: *arms },
                (_, Some(_)) if kind != "star" => {
                    return Err(Error::Invalid("`arms` only applies to the star template".into()))
                }
                _ => QuiverTemplate::from_name(kind)?,
            };
            Object::QuiverTemplate { template, radius: *radius }
        }
        RawObject::Poset { elements, leq } => {
            let names: Vec<String> = elements.iter().map(Name::text).collect();
            let index = |n: &Name| {
                let t = n.text();
                names.iter().position(|v| *v == t).ok_or_else(|| Error::Invalid(format!("`{t}` is not an element")))
            };
            let rel = leq.iter().map(|(x, y)| Ok((index(x)?, index(y)?))).collect::<Result<Vec<_>>>()?;
            Object::Poset(Poset::new(names, &rel)?)
        }
        RawObject::PosetTemplate { kind, radius } => {
            Object::PosetTemplate { template: PosetTemplate::from_name(kind)?, radius: *radius }
        }
        RawObject::Bialgebra { field, group, dual, algebra, coalgebra, antipode } => {
            let h = match (group, algebra, coalgebra) {
                (Some(g), None, None) => {
                    let f = field_of(field, default_field)?;
                    FinBialgebra::group_algebra(f, &group_by_name(g)?)
                }
                (None, Some(a), Some(c)) => {
                    let (Some(Object::Algebra(a)), Some(Object::Coalgebra(c))) = (built.get(a), built.get(c)) else {
                        return Err(Error::Invalid("`algebra` and `coalgebra` must name an algebra and a coalgebra".into()));
                    };
                    let s = antipode.as_ref().map(|m| m.to_matrix(a.field())).transpose()?;
                    FinBialgebra::new((**a).clone(), (**c).clone(), s)?
                }
                _ => return Err(Error::Invalid("a bialgebra needs either `group` or both `algebra` and `coalgebra`".into())),
            };
            Object::Bialgebra(if *dual { bialgebra_dual(&h)? } else { h })
        }
        RawObject::CoalgebraMorphism { source, target, matrix } => {
            let (Some(Object::Coalgebra(s)), Some(Object::Coalgebra(t))) = (built.get(source), built.get(target)) else {
                return Err(Error::Invalid("`source` and `target` must name coalgebras".into()));
            };
            let m = matrix.to_matrix(s.field())?;
            Object::CoalgebraMorphism(Arc::new(CoalgebraMorphism::new(s.clone(), t.clone(), m)?))
        }
    })
}
