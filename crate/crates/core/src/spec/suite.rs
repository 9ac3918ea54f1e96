//! Built-in suites: the fixed theorem battery and seeded random invariants.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::blocks::{algebra_block, coalgebra_block, comodule_block, functional_block, morphism_block, poset_block, quiver_block};
use super::checks::{execute, finish, CheckKind, Outcome, Params, Planned};
use super::report::Report;
use super::{CheckSpec, Object};
use crate::algebra::FinAlgebra;
use crate::coalgebra::{CoalgebraMorphism, FinCoalgebra};
use crate::combinatorial::{Poset, PosetTemplate, Quiver, QuiverTemplate};
use crate::comodule::FinComodule;
use crate::error::{Error, Result};
use crate::finite_dual::{FinBialgebra, FiniteGroup, LinRecFunctional};
use crate::linalg::FieldSpec;
use crate::random::{
    posets_up_to_iso, random_algebra, random_coalgebra, random_comodule, random_dag, random_morphism_pair, random_poset,
    random_vector, rng,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    PaperTheorems,
    Randomized,
}

impl SuiteName {
    pub fn name(self) -> &'static str {
        match self {
            SuiteName::PaperTheorems => "paper-theorems",
            SuiteName::Randomized => "randomized",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-theorems" => Ok(SuiteName::PaperTheorems),
            "randomized" => Ok(SuiteName::Randomized),
            other => Err(Error::Invalid(format!("unknown suite `{other}` (expected paper-theorems or randomized)"))),
        }
    }
}

/// Size knobs. `dims` bounds the dimension of generated objects and
/// `trials` the number of instances per check; both only affect the
/// randomized suite. `field` restricts instances to one field; otherwise
/// they alternate between ℚ and 𝔽₁₀₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteKnobs {
    pub seed: u64,
    pub dims: usize,
    pub trials: usize,
    pub field: Option<FieldSpec>,
}

impl Default for SuiteKnobs {
    fn default() -> Self {
        SuiteKnobs { seed: 0, dims: 4, trials: 50, field: None }
    }
}

const F101: FieldSpec = FieldSpec::Prime(101);

/// An object together with the spec blocks that rebuild it under `id`.
struct Instance {
    id: String,
    field: FieldSpec,
    object: Object,
    blocks: Vec<(String, Value)>,
    /// Parameters specific to this instance, on top of the row's.
    params: Map<String, Value>,
}

impl Instance {
    fn new(id: String, field: FieldSpec, object: Object, blocks: Vec<(String, Value)>) -> Self {
        Instance { id, field, object, blocks, params: Map::new() }
    }

    fn param(mut self, key: &str, value: Value) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn algebra(id: String, a: FinAlgebra) -> Self {
        let block = algebra_block(&a);
        Instance::new(id.clone(), a.field(), Object::Algebra(Arc::new(a)), vec![(id, block)])
    }

    fn coalgebra(id: String, c: Arc<FinCoalgebra>) -> Self {
        let block = coalgebra_block(&c);
        Instance::new(id.clone(), c.field(), Object::Coalgebra(c), vec![(id, block)])
    }

    fn comodule(id: String, m: FinComodule) -> Self {
        let cid = format!("{id}.coalgebra");
        let blocks = vec![(cid.clone(), coalgebra_block(&m.coalgebra)), (id.clone(), comodule_block(&m, &cid))];
        Instance::new(id, m.field(), Object::Comodule(Arc::new(m)), blocks)
    }

    fn morphism(id: String, f: CoalgebraMorphism) -> Self {
        let (sid, tid) = (format!("{id}.source"), format!("{id}.target"));
        let blocks = vec![
            (sid.clone(), coalgebra_block(&f.source)),
            (tid.clone(), coalgebra_block(&f.target)),
            (id.clone(), morphism_block(&f, &sid, &tid)),
        ];
        Instance::new(id, f.source.field(), Object::CoalgebraMorphism(Arc::new(f)), blocks)
    }

    fn quiver(id: String, field: FieldSpec, q: Quiver) -> Self {
        let block = quiver_block(&q);
        Instance::new(id.clone(), field, Object::Quiver(q), vec![(id, block)])
    }

    fn poset(id: String, field: FieldSpec, p: Poset) -> Self {
        let block = poset_block(&p);
        Instance::new(id.clone(), field, Object::Poset(p), vec![(id, block)])
    }

    fn quiver_template(field: FieldSpec, template: QuiverTemplate, radius: usize) -> Self {
        let id = template.name();
        let block = json!({"type": "quiver-template", "kind": id, "radius": radius});
        Instance::new(id.clone(), field, Object::QuiverTemplate { template, radius }, vec![(id, block)])
    }

    fn poset_template(field: FieldSpec, template: PosetTemplate, radius: usize) -> Self {
        let id = template.name().to_string();
        let block = json!({"type": "poset-template", "kind": id, "radius": radius});
        Instance::new(id.clone(), field, Object::PosetTemplate { template, radius }, vec![(id, block)])
    }

    fn functional(id: String, f: LinRecFunctional) -> Self {
        let block = functional_block(&f);
        Instance::new(id.clone(), f.field, Object::Functional(f), vec![(id, block)])
    }

    fn group(field: FieldSpec, group: &str, dual: bool) -> Result<Self> {
        let g = match group {
            "S3" => FiniteGroup::symmetric3(),
            other => FiniteGroup::cyclic(other.trim_start_matches("Z/").parse().map_err(|_| Error::Invalid(other.into()))?),
        };
        let h = FinBialgebra::group_algebra(field, &g);
        let h = if dual { crate::finite_dual::bialgebra_dual(&h)? } else { h };
        let id = format!("{}{group}/{field}", if dual { "fun-" } else { "k" });
        let block = json!({"type": "bialgebra", "field": field.to_string(), "group": group, "dual": dual});
        Ok(Instance::new(id.clone(), field, Object::Bialgebra(h), vec![(id, block)]))
    }
}

/// One row of a suite: a check run over a batch of instances.
struct Item {
    kind: CheckKind,
    label: String,
    params: Map<String, Value>,
    instances: Vec<Instance>,
}

impl Item {
    fn new(kind: CheckKind, label: impl Into<String>, instances: Vec<Instance>) -> Self {
        Item { kind, label: label.into(), params: Map::new(), instances }
    }

    fn param(mut self, key: &str, value: Value) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn params_for(&self, inst: &Instance) -> Map<String, Value> {
        let mut p = self.params.clone();
        p.extend(inst.params.clone());
        p
    }

    fn replay(&self, inst: &Instance, seed: u64) -> Value {
        let objects: Map<String, Value> = inst.blocks.iter().cloned().collect();
        json!({
            "field": inst.field.to_string(),
            "seed": seed,
            "objects": objects,
            "checks": [{"check": self.kind.name(), "objects": [inst.id], "params": self.params_for(inst)}],
        })
    }

    /// Passes when every instance passes; the first failure is replayable.
    fn run(&self, seed: u64) -> Result<Outcome> {
        let results: Vec<(usize, bool, String)> = self
            .instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| {
                let map = self.params_for(inst);
                let spec = CheckSpec { check: self.kind.name().into(), objects: vec![inst.id.clone()], params: map.clone() };
                let outcome = Params::parse(&map).and_then(|params| {
                    let planned = Planned { kind: self.kind, object: Some(inst.object.clone()), params, field: inst.field, seed };
                    execute(&planned).map(|o| (o, planned.params.expect))
                });
                let (outcome, expect) = match outcome {
                    Ok((o, e)) => (Ok(o), e),
                    Err(e) => (Err(e), None),
                };
                let r = finish(i, &spec, self.kind.name(), expect.as_deref(), outcome, Instant::now());
                (i, r.passed, r.error.unwrap_or(r.verdict))
            })
            .collect();
        let failures: Vec<&(usize, bool, String)> = results.iter().filter(|r| !r.1).collect();
        let mut out = Outcome::verified(failures.is_empty())
            .with("instances", json!(self.instances.len()))
            .with("failures", json!(failures.len()));
        out.certificates = failures
            .iter()
            .take(3)
            .map(|(i, _, why)| json!({"instance": self.instances[*i].id, "result": why}))
            .collect();
        out.replay = failures.first().map(|(i, _, _)| self.replay(&self.instances[*i], seed));
        Ok(out)
    }
}

fn field_for(knobs: &SuiteKnobs, trial: usize) -> FieldSpec {
    knobs.field.unwrap_or(if trial.is_multiple_of(2) { FieldSpec::Rationals } else { F101 })
}

fn numbered<T>(prefix: &str, count: usize, mut make: impl FnMut(usize) -> Result<T>, wrap: impl Fn(String, T) -> Instance) -> Result<Vec<Instance>> {
    (0..count).map(|t| Ok(wrap(format!("{prefix}{t}"), make(t)?))).collect()
}

/// Combinatorial shapes used by several checks.
fn dag_corpus(count: usize, seed: u64) -> Vec<Quiver> {
    let mut r = rng(seed);
    (0..count).map(|_| random_dag(6, 10, &mut r)).collect()
}

fn poset_corpus(sampled: usize, seed: u64) -> Vec<Poset> {
    let mut r = rng(seed);
    let mut out: Vec<Poset> = (1..=5).flat_map(posets_up_to_iso).collect();
    out.extend((0..sampled).map(|_| random_poset(6, 0.3, &mut r)));
    out
}

fn paper_items(knobs: &SuiteKnobs) -> Result<Vec<Item>> {
    let seed = knobs.seed;
    let fixed = SuiteKnobs { field: knobs.field, ..SuiteKnobs::default() };
    let mut items = Vec::new();

    let mut r = rng(seed);
    let pairs = numbered("lift", 100, |t| random_morphism_pair(field_for(&fixed, t), 4, &mut r), Instance::morphism)?;
    items.push(Item::new(CheckKind::CounitalLift, "100 random (D, C, f), dims <= 4", pairs));

    let mut r = rng(seed.wrapping_add(1));
    let coalgebras: Vec<Arc<FinCoalgebra>> =
        (0..100).map(|t| Arc::new(random_coalgebra(field_for(&fixed, t), 5, t % 3 == 0, &mut r))).collect();
    let inst = |prefix: &str| coalgebras.iter().enumerate().map(|(t, c)| Instance::coalgebra(format!("{prefix}{t}"), c.clone())).collect();
    items.push(Item::new(CheckKind::DualUnitalizationIso, "100 random coalgebras, dims <= 5", inst("C")));
    items.push(Item::new(CheckKind::ComatrixCover, "100 random coalgebras, dims <= 5", inst("C")));

    let mut r = rng(seed.wrapping_add(2));
    let algebras = numbered("A", 100, |t| Ok(random_algebra(field_for(&fixed, t), 5, t % 3 == 0, &mut r)), Instance::algebra)?;
    items.push(Item::new(CheckKind::UnitalDualCompat, "100 random algebras, dims <= 5", algebras));

    let mut r = rng(seed.wrapping_add(3));
    let mut sub = Vec::new();
    for t in 0..200 {
        let field = field_for(&fixed, t);
        let c = Arc::new(random_coalgebra(field, 5, t % 2 == 0, &mut r));
        let v = random_vector(field, c.dim(), &mut r);
        sub.push(Instance::coalgebra(format!("S{t}"), c).param("vector", vector_json(&v)));
    }
    items.push(Item::new(CheckKind::SubcoalgebraGenerated, "200 random coalgebras and vectors", sub));

    let mut r = rng(seed.wrapping_add(4));
    let mut sub = Vec::new();
    for t in 0..200 {
        let field = field_for(&fixed, t);
        let m = random_comodule(field, 5, &mut r)?;
        let v = random_vector(field, m.dim(), &mut r);
        sub.push(Instance::comodule(format!("M{t}"), m).param("vector", vector_json(&v)));
    }
    items.push(Item::new(CheckKind::SubcomoduleGenerated, "200 random comodules and vectors", sub));

    let mut r = rng(seed.wrapping_add(5));
    let f2 = FieldSpec::Prime(2);
    let corpus = numbered("F2M", 20, |_| random_comodule(f2, 4, &mut r), Instance::comodule)?;
    items.push(Item::new(CheckKind::LatticeAgreement, "20 comodules over F_2, exhaustive", corpus));
    let q = numbered("QM", 20, |_| random_comodule(FieldSpec::Rationals, 4, &mut r), Instance::comodule)?;
    items.push(Item::new(CheckKind::LatticeAgreement, "20 comodules over Q, 100 subspaces each", q).param("trials", json!(100)));

    let dags = dag_corpus(200, seed.wrapping_add(6));
    let quivers: Vec<Instance> =
        dags.iter().enumerate().map(|(t, q)| Instance::quiver(format!("Q{t}"), FieldSpec::Rationals, q.clone())).collect();
    items.push(Item::new(CheckKind::PathdualIso, "200 acyclic quivers, <= 6 vertices, <= 10 arrows", quivers));

    let posets = poset_corpus(50, seed.wrapping_add(7));
    let px: Vec<Instance> =
        posets.iter().enumerate().map(|(t, p)| Instance::poset(format!("X{t}"), FieldSpec::Rationals, p.clone())).collect();
    items.push(Item::new(CheckKind::IncidencedualIso, "posets up to iso with <= 5 elements, 50 sampled at 6", px));

    let q = FieldSpec::Rationals;
    let fib = numbered("fibonacci", 1, |_| Ok(named(q, "fibonacci", 40)), Instance::functional)?;
    items.push(Item::new(CheckKind::Linrec, "Fibonacci", fib).param("expect", json!("recursive")));
    let fib = numbered("fibonacci", 1, |_| Ok(named(q, "fibonacci", 41)), Instance::functional)?;
    items.push(Item::new(CheckKind::DeltaOfFunctional, "Fibonacci to degree 20", fib).param("bound", json!(5)));
    let ones = numbered("constant", 1, |_| Ok(named(q, "constant", 40)), Instance::functional)?;
    items.push(Item::new(CheckKind::Linrec, "constant sequence", ones).param("expect", json!("recursive")));
    let fact = numbered("factorial", 1, |_| Ok(named(q, "factorial", 40)), Instance::functional)?;
    items.push(
        Item::new(CheckKind::Linrec, "factorial, rank bound 15", fact)
            .param("rank_bound", json!(15))
            .param("expect", json!("not-within-bound")),
    );

    let corpus = coreflexive_corpus(seed.wrapping_add(8), &dags, &posets);
    items.push(Item::new(CheckKind::LeftCoreflexive, "300 finite coalgebras", corpus.instances()));
    items.push(Item::new(CheckKind::CounitE, "300 finite coalgebras", corpus.instances()));
    let rays = (1..=6).map(|r| Instance::quiver_template(q, QuiverTemplate::Ray, r)).collect();
    items.push(Item::new(CheckKind::CounitE, "ray truncations, radii 1..6", rays));

    let finite = Quiver::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])?;
    let mut families = vec![Instance::quiver("finite-acyclic".into(), q, finite)];
    for t in [QuiverTemplate::Ray, QuiverTemplate::IntegerLine, QuiverTemplate::Star { arms: 3 }, QuiverTemplate::SingleLoop] {
        families.push(Instance::quiver_template(q, t, 2));
    }
    items.push(
        Item::new(CheckKind::SemiperfectIffInjective, "templates, radii 2..6, both sides", families)
            .param("radii", json!([2, 3, 4, 5, 6])),
    );
    let line = vec![Instance::quiver_template(q, QuiverTemplate::IntegerLine, 6)];
    items.push(
        Item::new(CheckKind::Semiperfect, "integer line fails on both sides", line)
            .param("expect", json!("left=fails-with-certificate,right=fails-with-certificate")),
    );
    let chain = vec![Instance::poset_template(q, PosetTemplate::NaturalChain, 4)];
    items.push(
        Item::new(CheckKind::SemiperfectIffInjective, "natural chain, radii 2..4", chain).param("radii", json!([2, 3, 4])),
    );

    let mut hopf = Vec::new();
    for field in [FieldSpec::Rationals, F101] {
        for g in ["Z/2", "Z/4", "S3"] {
            hopf.push(Instance::group(field, g, false)?);
        }
        hopf.push(Instance::group(field, "S3", true)?);
    }
    items.push(Item::new(CheckKind::HopfSelfdual, "K(Z/2), K(Z/4), K(S3), functions on S3; Q and F_101", hopf));
    Ok(items)
}

fn named(field: FieldSpec, name: &str, terms: usize) -> LinRecFunctional {
    LinRecFunctional::new(field, super::named_sequence(field, name, terms).expect("built-in sequence names"))
}

fn vector_json(v: &[crate::linalg::Scalar]) -> Value {
    json!(v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

struct Corpus(Vec<(String, FieldSpec, CorpusEntry)>);

enum CorpusEntry {
    Coalgebra(Arc<FinCoalgebra>),
    Quiver(Quiver),
    Poset(Poset),
}

impl Corpus {
    fn instances(&self) -> Vec<Instance> {
        self.0
            .iter()
            .map(|(id, field, e)| match e {
                CorpusEntry::Coalgebra(c) => Instance::coalgebra(id.clone(), c.clone()),
                CorpusEntry::Quiver(q) => Instance::quiver(id.clone(), *field, q.clone()),
                CorpusEntry::Poset(p) => Instance::poset(id.clone(), *field, p.clone()),
            })
            .collect()
    }
}

/// 150 random counital coalgebras, 100 path coalgebras and 50 incidence
/// coalgebras.
fn coreflexive_corpus(seed: u64, dags: &[Quiver], posets: &[Poset]) -> Corpus {
    let mut r = rng(seed);
    let knobs = SuiteKnobs::default();
    let mut out = Vec::new();
    for t in 0..150 {
        let field = field_for(&knobs, t);
        out.push((format!("C{t}"), field, CorpusEntry::Coalgebra(Arc::new(random_coalgebra(field, 5, true, &mut r)))));
    }
    for (t, q) in dags.iter().take(100).enumerate() {
        out.push((format!("Q{t}"), field_for(&knobs, t), CorpusEntry::Quiver(q.clone())));
    }
    for (t, p) in posets.iter().rev().take(50).enumerate() {
        out.push((format!("X{t}"), field_for(&knobs, t), CorpusEntry::Poset(p.clone())));
    }
    Corpus(out)
}

fn randomized_items(knobs: &SuiteKnobs) -> Result<Vec<Item>> {
    let (n, dims, seed) = (knobs.trials, knobs.dims, knobs.seed);
    let empty = n == 0 || dims == 0;
    let count = if empty { 0 } else { n };
    let mut r = rng(seed);
    let mut items = Vec::new();
    let algebras = numbered("A", count, |t| Ok(random_algebra(field_for(knobs, t), dims, r.gen_bool(0.5), &mut r)), Instance::algebra)?;
    let mut r = rng(seed.wrapping_add(1));
    let algebras2 = numbered("A", count, |t| Ok(random_algebra(field_for(knobs, t), dims, r.gen_bool(0.5), &mut r)), Instance::algebra)?;
    items.push(Item::new(CheckKind::AlgebraAxioms, "random algebras", algebras));
    items.push(Item::new(CheckKind::Unitalize, "random algebras", algebras2));
    let mut r = rng(seed.wrapping_add(2));
    let a3 = numbered("A", count, |t| Ok(random_algebra(field_for(knobs, t), dims, r.gen_bool(0.5), &mut r)), Instance::algebra)?;
    items.push(Item::new(CheckKind::UnitalDualCompat, "random algebras", a3));
    let mut r = rng(seed.wrapping_add(3));
    let coalgebras: Vec<Arc<FinCoalgebra>> =
        (0..count).map(|t| Arc::new(random_coalgebra(field_for(knobs, t), dims, t % 2 == 0, &mut r))).collect();
    let inst = |p: &str| coalgebras.iter().enumerate().map(|(t, c)| Instance::coalgebra(format!("{p}{t}"), c.clone())).collect();
    items.push(Item::new(CheckKind::CoalgebraAxioms, "random coalgebras", inst("C")));
    items.push(Item::new(CheckKind::Counitalize, "random coalgebras", inst("C")));
    items.push(Item::new(CheckKind::DualUnitalizationIso, "random coalgebras", inst("C")));
    items.push(Item::new(CheckKind::ComatrixCover, "random coalgebras", inst("C")));
    let counital: Vec<Instance> = coalgebras
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_counital())
        .map(|(t, c)| Instance::coalgebra(format!("C{t}"), c.clone()))
        .collect();
    items.push(Item::new(CheckKind::LeftCoreflexive, "random counital coalgebras", counital));
    let mut r = rng(seed.wrapping_add(4));
    let pairs = numbered("lift", count, |t| random_morphism_pair(field_for(knobs, t), dims, &mut r), Instance::morphism)?;
    items.push(Item::new(CheckKind::CounitalLift, "random morphisms", pairs));
    let mut r = rng(seed.wrapping_add(5));
    let comodules = numbered("M", count, |t| random_comodule(field_for(knobs, t), dims, &mut r), Instance::comodule)?;
    items.push(Item::new(CheckKind::LatticeAgreement, "random comodules", comodules).param("trials", json!(20)));
    let mut r = rng(seed.wrapping_add(6));
    let quivers = numbered("Q", count, |t| Ok((field_for(knobs, t), random_dag(dims, 2 * dims, &mut r))), |id, (f, q)| Instance::quiver(id, f, q))?;
    items.push(Item::new(CheckKind::PathdualIso, "random acyclic quivers", quivers));
    let mut r = rng(seed.wrapping_add(7));
    let posets = numbered("X", count, |t| Ok((field_for(knobs, t), random_poset(dims, 0.4, &mut r))), |id, (f, p)| Instance::poset(id, f, p))?;
    items.push(Item::new(CheckKind::IncidencedualIso, "random posets", posets));
    Ok(items)
}

/// Runs a suite. Rows run concurrently and are reported in a fixed order.
pub fn builtin_suite(name: SuiteName, knobs: SuiteKnobs) -> Result<Report> {
    let items = match name {
        SuiteName::PaperTheorems => paper_items(&knobs)?,
        SuiteName::Randomized => randomized_items(&knobs)?,
    };
    let results = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let started = Instant::now();
            let spec = CheckSpec { check: item.kind.name().into(), objects: vec![item.label.clone()], params: Map::new() };
            finish(i, &spec, item.kind.name(), None, item.run(knobs.seed), started)
        })
        .collect();
    let field = knobs.field.unwrap_or(FieldSpec::Rationals);
    Ok(Report::new(&format!("suite:{}", name.name()), field, knobs.seed, results))
}
