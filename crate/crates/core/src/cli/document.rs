//! Input documents: a JSON description of a field, an algebra, an optional
//! Morita context and named modules. Parsing is strict; every schema error
//! carries the path of the offending field.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::fdalg::{build_path_algebra, FDAlgebra, Presentation, Quiver, Relation};
use crate::fdmod::{injective, projective, simple, tensor, Bimodule, FDModule};
use crate::morita::{delta_context, end_context, flat_to_tuple, from_pierce, tuple_to_flat, Corner, MoritaContext, TupleModule};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

/// A matrix entry: an integer, or a string `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub type MatrixSpec = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Quiver {
        vertices: Vec<String>,
        /// `[label, source, target]`.
        arrows: Vec<(String, String, String)>,
        /// Each relation is a list of `[coefficient, word]`.
        #[serde(default)]
        relations: Vec<Vec<(Entry, String)>>,
        truncation_length: usize,
        #[serde(default)]
        radical_square_zero: bool,
    },
    TrivialExtension {
        base: Box<AlgebraSpec>,
        bimodule: BimoduleKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleKind {
    Regular,
    /// `D A = Hom_K(A, K)`.
    Dual,
    Zero,
}

/// A vertex given by position or by name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContextSpec {
    /// Split along the sum of the listed vertex idempotents.
    Pierce { part: Vec<VertexRef> },
    /// `A = B = M = N` the algebra, pairings by multiplication or zero.
    Delta {
        #[serde(default)]
        zero_maps: bool,
    },
    /// Peirce bimodules with both pairings zero.
    Zero { part: Vec<VertexRef> },
    /// `End(U ⊕ V)` for modules over the algebra named in `u` and `v`.
    Endomorphism { u: Vec<String>, v: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Over {
    #[serde(rename = "algebra")]
    Algebra,
    A,
    B,
    #[serde(rename = "ring")]
    Ring,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Simple {
        index: usize,
        #[serde(default)]
        over: Option<Over>,
    },
    Projective {
        index: usize,
        #[serde(default)]
        over: Option<Over>,
    },
    Injective {
        index: usize,
        #[serde(default)]
        over: Option<Over>,
    },
    /// One `dim × dim` matrix per basis element of the algebra.
    Explicit {
        dim: usize,
        action: Vec<MatrixSpec>,
        #[serde(default)]
        over: Option<Over>,
    },
    /// A representation of the document's quiver: one map per arrow.
    Representation { dims: Vec<usize>, maps: Vec<MatrixSpec> },
    /// `(X, Y, f, g)` with `X`, `Y` naming modules over `A` and `B`.
    Tuple {
        #[serde(alias = "X")]
        x: String,
        #[serde(alias = "Y")]
        y: String,
        f: MatrixSpec,
        g: MatrixSpec,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub window: Option<usize>,
}

/// Parses and schema-checks a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema { path, detail: e.into_inner().to_string() }
    })
}

pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    let hex: String = h.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn schema(path: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), detail: detail.into() }
}

// ---------------------------------------------------------------------------
// Building

#[derive(Clone, Debug)]
pub enum LoadedModule {
    Flat { over: Over, module: FDModule },
    Tuple(TupleModule),
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: LoadedModule,
}

impl NamedModule {
    pub fn over(&self) -> Over {
        match &self.module {
            LoadedModule::Flat { over, .. } => *over,
            LoadedModule::Tuple(_) => Over::Ring,
        }
    }

    /// The module over the Morita ring as a tuple, if it lives there.
    pub fn tuple(&self, ctx: &Arc<MoritaContext>) -> Result<Option<TupleModule>> {
        match &self.module {
            LoadedModule::Tuple(t) => Ok(Some(t.clone())),
            LoadedModule::Flat { over: Over::Ring, module } => Ok(Some(flat_to_tuple(ctx, module)?)),
            _ => Ok(None),
        }
    }

    pub fn flat(&self) -> Result<FDModule> {
        match &self.module {
            LoadedModule::Tuple(t) => tuple_to_flat(t),
            LoadedModule::Flat { module, .. } => Ok(module.clone()),
        }
    }
}

/// A document with every object built.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub digest: String,
    pub field: Field,
    pub quiver: Option<Quiver>,
    pub algebra: Option<Arc<FDAlgebra>>,
    /// Base and bimodule when the algebra is a trivial extension.
    pub trivext: Option<(Arc<FDAlgebra>, Bimodule)>,
    pub context: Option<Arc<MoritaContext>>,
    /// Vertex indices of the split, for Peirce-type contexts.
    pub part: Option<Vec<usize>>,
    pub modules: Vec<NamedModule>,
}

impl Loaded {
    pub fn context_kind(&self) -> Option<&'static str> {
        self.doc.context.as_ref().map(|c| match c {
            ContextSpec::Pierce { .. } => "pierce",
            ContextSpec::Delta { .. } => "delta",
            ContextSpec::Zero { .. } => "zero",
            ContextSpec::Endomorphism { .. } => "endomorphism",
        })
    }

    /// The Morita ring when there is a context, the algebra otherwise.
    pub fn main_algebra(&self) -> Result<Arc<FDAlgebra>> {
        match (&self.context, &self.algebra) {
            (Some(c), _) => c.algebra(),
            (None, Some(a)) => Ok(a.clone()),
            (None, None) => Err(Error::Precondition("document has no algebra".into())),
        }
    }

    pub fn require_context(&self) -> Result<&Arc<MoritaContext>> {
        self.context.as_ref().ok_or_else(|| Error::Precondition("this command needs a document with a context".into()))
    }

    pub fn require_algebra(&self) -> Result<&Arc<FDAlgebra>> {
        self.algebra.as_ref().ok_or_else(|| Error::Precondition("this command needs a document with an algebra".into()))
    }

    pub fn module(&self, name: &str) -> Option<&NamedModule> {
        self.modules.iter().find(|m| m.name == name)
    }
}

pub fn load(text: &str) -> Result<Loaded> {
    let doc = parse_document(text)?;
    build(doc, digest(text))
}

pub fn build(doc: Document, digest: String) -> Result<Loaded> {
    let field = match doc.field {
        FieldSpec::Rational => Field::Rational,
        FieldSpec::Prime { p } => Field::prime(p).map_err(|e| schema("field.p", e.to_string()))?,
    };
    let (algebra, quiver, trivext) = match &doc.algebra {
        // a bare document describes the ground field
        None if doc.context.is_none() => (Some(crate::corpus::ground_field(field)), None, None),
        None => (None, None, None),
        Some(spec) => {
            let (a, q, t) = build_algebra(field, spec, "algebra")?;
            (Some(a), q, t)
        }
    };
    let mut loaded = Loaded { doc: doc.clone(), digest, field, quiver, algebra, trivext, context: None, part: None, modules: Vec::new() };

    // modules over the algebra come first: the endomorphism context needs them
    for (name, spec) in &doc.modules {
        if over_of(spec, doc.context.is_some()) == Over::Algebra {
            let m = build_flat(&loaded, name, spec, Over::Algebra)?;
            loaded.modules.push(NamedModule { name: name.clone(), module: LoadedModule::Flat { over: Over::Algebra, module: m } });
        }
    }
    if let Some(spec) = &doc.context {
        if let ContextSpec::Pierce { part } | ContextSpec::Zero { part } = spec {
            loaded.part = Some(vertex_indices(&loaded, part, "context.part")?);
        }
        loaded.context = Some(Arc::new(build_context(&loaded, spec)?));
    }
    for pass_tuples in [false, true] {
        for (name, spec) in &doc.modules {
            let over = over_of(spec, doc.context.is_some());
            let is_tuple = matches!(spec, ModuleSpec::Tuple { .. });
            if over == Over::Algebra || is_tuple != pass_tuples {
                continue;
            }
            let module = if is_tuple {
                LoadedModule::Tuple(build_tuple(&loaded, name, spec)?)
            } else {
                LoadedModule::Flat { over, module: build_flat(&loaded, name, spec, over)? }
            };
            loaded.modules.push(NamedModule { name: name.clone(), module });
        }
    }
    // keep the document's (sorted) order
    loaded.modules.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(loaded)
}

fn over_of(spec: &ModuleSpec, has_context: bool) -> Over {
    let default = if has_context { Over::Ring } else { Over::Algebra };
    match spec {
        ModuleSpec::Simple { over, .. } | ModuleSpec::Projective { over, .. } | ModuleSpec::Injective { over, .. } | ModuleSpec::Explicit { over, .. } => {
            over.unwrap_or(default)
        }
        ModuleSpec::Representation { .. } => Over::Algebra,
        ModuleSpec::Tuple { .. } => Over::Ring,
    }
}

fn scalar(field: Field, e: &Entry, path: &str) -> Result<Scalar> {
    match e {
        Entry::Int(v) => Ok(field.from_i64(*v)),
        Entry::Text(s) => field.parse(s).map_err(|err| schema(path, err.to_string())),
    }
}

fn matrix(field: Field, spec: &MatrixSpec, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    if spec.len() != rows {
        return Err(schema(path, format!("expected {rows} rows, found {}", spec.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in spec.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(format!("{path}[{i}]"), format!("expected {cols} entries, found {}", row.len())));
        }
        let r = row.iter().enumerate().map(|(j, e)| scalar(field, e, &format!("{path}[{i}][{j}]"))).collect::<Result<Vec<_>>>()?;
        out.push(r);
    }
    Ok(Matrix::from_rows(field, cols, out)?)
}

type BuiltAlgebra = (Arc<FDAlgebra>, Option<Quiver>, Option<(Arc<FDAlgebra>, Bimodule)>);

fn build_algebra(field: Field, spec: &AlgebraSpec, path: &str) -> Result<BuiltAlgebra> {
    match spec {
        AlgebraSpec::Quiver { vertices, arrows, relations, truncation_length, radical_square_zero } => {
            for (i, (label, s, t)) in arrows.iter().enumerate() {
                for (end, v) in [("source", s), ("target", t)] {
                    if !vertices.contains(v) {
                        return Err(schema(format!("{path}.arrows[{i}]"), format!("{end} {v} of arrow {label} is not a vertex")));
                    }
                }
            }
            let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let arr: Vec<(&str, &str, &str)> = arrows.iter().map(|(l, s, t)| (l.as_str(), s.as_str(), t.as_str())).collect();
            let quiver = Quiver::new(&vs, &arr);
            let mut rels = Vec::new();
            for (i, rel) in relations.iter().enumerate() {
                let mut terms = Vec::new();
                for (j, (c, w)) in rel.iter().enumerate() {
                    let rpath = format!("{path}.relations[{i}][{j}]");
                    let word = quiver.parse_word(w).filter(|w| !w.is_empty()).ok_or_else(|| schema(&rpath, format!("relation {i} names an unknown arrow in {w:?}")))?;
                    terms.push((scalar(field, c, &rpath)?, word));
                }
                rels.push(Relation { terms });
            }
            let mut truncation = *truncation_length;
            if *radical_square_zero {
                for x in &quiver.arrows {
                    for (k, y) in quiver.arrows.iter().enumerate() {
                        if x.target == y.source {
                            let first = quiver.arrow_index(&x.label).expect("arrow of the quiver");
                            rels.push(Relation { terms: vec![(field.one(), vec![first, k])] });
                        }
                    }
                }
                truncation = truncation.min(2).max(1);
            }
            let a = build_path_algebra(field, &Presentation { quiver: quiver.clone(), relations: rels, truncation })?;
            Ok((Arc::new(a), Some(quiver), None))
        }
        AlgebraSpec::TrivialExtension { base, bimodule } => {
            let (a, _, _) = build_algebra(field, base, &format!("{path}.base"))?;
            let n = match bimodule {
                BimoduleKind::Regular => Bimodule::regular(&a),
                BimoduleKind::Zero => Bimodule::zero(&a, &a),
                BimoduleKind::Dual => dual_bimodule(&a)?,
            };
            let t = FDAlgebra::trivial_extension(&a, &n)?;
            Ok((Arc::new(t), None, Some((a, n))))
        }
    }
}

/// `D A` with `(b.f)(x) = f(x b)` and `(f.a)(x) = f(a x)`.
pub fn dual_bimodule(a: &Arc<FDAlgebra>) -> Result<Bimodule> {
    let reg = Bimodule::regular(a);
    let left = reg.right_actions().iter().map(Matrix::transpose).collect();
    let right = reg.left_actions().iter().map(Matrix::transpose).collect();
    Bimodule::new(a.clone(), a.clone(), a.dim(), left, right)
}

fn vertex_indices(loaded: &Loaded, part: &[VertexRef], path: &str) -> Result<Vec<usize>> {
    let n = loaded.algebra.as_ref().map_or(0, |a| a.num_idempotents());
    part.iter()
        .enumerate()
        .map(|(i, v)| {
            let p = format!("{path}[{i}]");
            match v {
                VertexRef::Index(k) if *k < n => Ok(*k),
                VertexRef::Index(k) => Err(schema(p, format!("vertex {k} out of range (have {n})"))),
                VertexRef::Name(s) => loaded
                    .quiver
                    .as_ref()
                    .and_then(|q| q.vertices.iter().position(|x| x == s))
                    .ok_or_else(|| schema(p, format!("unknown vertex {s}"))),
            }
        })
        .collect()
}

fn build_context(loaded: &Loaded, spec: &ContextSpec) -> Result<MoritaContext> {
    let l = loaded.algebra.as_ref().ok_or_else(|| schema("context", "a context needs an algebra"))?;
    match spec {
        ContextSpec::Pierce { part } => from_pierce(l, &vertex_indices(loaded, part, "context.part")?),
        ContextSpec::Zero { part } => {
            let p = from_pierce(l, &vertex_indices(loaded, part, "context.part")?)?;
            MoritaContext::with_zero_maps(p.alg_a().clone(), p.alg_b().clone(), p.bimod_m().clone(), p.bimod_n().clone())
        }
        ContextSpec::Delta { zero_maps: false } => Ok(delta_context(l)),
        ContextSpec::Delta { zero_maps: true } => {
            let reg = Bimodule::regular(l);
            MoritaContext::with_zero_maps(l.clone(), l.clone(), reg.clone(), reg)
        }
        ContextSpec::Endomorphism { u, v } => {
            let pick = |names: &[String], key: &str| -> Result<Vec<FDModule>> {
                names
                    .iter()
                    .enumerate()
                    .map(|(i, n)| match loaded.module(n) {
                        Some(NamedModule { module: LoadedModule::Flat { over: Over::Algebra, module }, .. }) => Ok(module.clone()),
                        _ => Err(schema(format!("context.{key}[{i}]"), format!("{n} is not a module over the algebra"))),
                    })
                    .collect()
            };
            end_context(l, &pick(u, "u")?, &pick(v, "v")?)
        }
    }
}

fn target_algebra(loaded: &Loaded, over: Over, path: &str) -> Result<Arc<FDAlgebra>> {
    let need_ctx = || loaded.context.as_ref().ok_or_else(|| schema(path, "module over a corner or the ring needs a context"));
    match over {
        Over::Algebra => loaded.algebra.clone().ok_or_else(|| schema(path, "module over the algebra needs an algebra")),
        Over::A => Ok(need_ctx()?.alg_a().clone()),
        Over::B => Ok(need_ctx()?.alg_b().clone()),
        Over::Ring => need_ctx()?.algebra(),
    }
}

fn build_flat(loaded: &Loaded, name: &str, spec: &ModuleSpec, over: Over) -> Result<FDModule> {
    let path = format!("modules.{name}");
    let alg = target_algebra(loaded, over, &path)?;
    let n = alg.num_idempotents();
    let check = |i: usize| if i < n { Ok(i) } else { Err(schema(format!("{path}.index"), format!("index {i} out of range (have {n})"))) };
    match spec {
        ModuleSpec::Simple { index, .. } => simple(&alg, check(*index)?),
        ModuleSpec::Projective { index, .. } => projective(&alg, check(*index)?),
        ModuleSpec::Injective { index, .. } => injective(&alg, check(*index)?),
        ModuleSpec::Explicit { dim, action, .. } => {
            if action.len() != alg.dim() {
                return Err(schema(format!("{path}.action"), format!("expected {} matrices, found {}", alg.dim(), action.len())));
            }
            let mats = action.iter().enumerate().map(|(k, m)| matrix(loaded.field, m, *dim, *dim, &format!("{path}.action[{k}]"))).collect::<Result<Vec<_>>>()?;
            FDModule::new(alg, *dim, mats)
        }
        ModuleSpec::Representation { dims, maps } => {
            let q = loaded.quiver.as_ref().ok_or_else(|| schema(&path, "representations need a quiver algebra"))?;
            if dims.len() != q.vertices.len() || maps.len() != q.arrows.len() {
                return Err(schema(&path, "representation does not match the quiver"));
            }
            let mats = q
                .arrows
                .iter()
                .zip(maps)
                .enumerate()
                .map(|(k, (a, m))| matrix(loaded.field, m, dims[a.source], dims[a.target], &format!("{path}.maps[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            FDModule::from_representation(&alg, q, dims, &mats)
        }
        ModuleSpec::Tuple { .. } => unreachable!("tuples are built separately"),
    }
}

fn build_tuple(loaded: &Loaded, name: &str, spec: &ModuleSpec) -> Result<TupleModule> {
    let path = format!("modules.{name}");
    let ModuleSpec::Tuple { x, y, f, g } = spec else { unreachable!("only tuples reach here") };
    let c = loaded.context.as_ref().ok_or_else(|| schema(&path, "tuples need a context"))?;
    let corner = |n: &str, side: Over, key: &str| -> Result<FDModule> {
        match loaded.module(n) {
            Some(NamedModule { module: LoadedModule::Flat { over, module }, .. }) if *over == side => Ok(module.clone()),
            _ => Err(schema(format!("{path}.{key}"), format!("{n} is not a declared module over {side:?}"))),
        }
    };
    let xm = corner(x, Over::A, "x")?;
    let ym = corner(y, Over::B, "y")?;
    let dmx = tensor(c.bimod_m(), &xm)?.module.dim();
    let dny = tensor(c.bimod_n(), &ym)?.module.dim();
    let fm = matrix(loaded.field, f, dmx, ym.dim(), &format!("{path}.f"))?;
    let gm = matrix(loaded.field, g, dny, xm.dim(), &format!("{path}.g"))?;
    TupleModule::new(c, xm, ym, fm, gm)
}

/// Modules to act on: the named one, or all declared modules accepted by `keep`.
pub fn select<'a>(loaded: &'a Loaded, name: Option<&str>, keep: impl Fn(&NamedModule) -> bool) -> Result<Vec<&'a NamedModule>> {
    match name {
        Some(n) => {
            let m = loaded.module(n).ok_or_else(|| Error::Precondition(format!("no module named {n}")))?;
            if keep(m) {
                Ok(vec![m])
            } else {
                Err(Error::Precondition(format!("module {n} does not fit this command")))
            }
        }
        None => Ok(loaded.modules.iter().filter(|m| keep(m)).collect()),
    }
}

pub fn corner_of(over: Over) -> Option<Corner> {
    match over {
        Over::A => Some(Corner::A),
        Over::B => Some(Corner::B),
        _ => None,
    }
}
