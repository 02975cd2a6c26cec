//! The JSON workspace file: named entities with sparse rational structure constants.
//!
//! Rationals are strings (`"-3/7"`), indices are 0-based, and every tensor is a
//! list of nonzero entries. Shapes and references are checked while resolving,
//! before anything is computed.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::ModuleSequence;
use crate::crossmod::{CrossedModule, CrossedModuleMorphism, DerivAction};
use crate::error::{Error, Result};
use crate::graded::{BasisIndexer, GradedMap, MultiTensor, Target, ThreeTermSpace, TwoTermSpace};
use crate::lie2core::{GradedSubspace, LInf, Lie2Algebra, Lie2Hom, Lie3Algebra};
use crate::ratlin::{format_rational, parse_rational, unit_vec, Rational, RationalMatrix};
use crate::repcoh::{Block, Cochain, Lie2Module};

/// `[row, col, value]`
pub type MatrixJson = Vec<(usize, usize, String)>;
/// `[g₀ indices, g₁ indices, output index, value]`
pub type TensorJson = Vec<(Vec<usize>, Vec<usize>, usize, String)>;
/// `[slot, row, col, value]`: one matrix per basis vector.
pub type StackJson = Vec<(usize, usize, usize, String)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    pub dims: (usize, usize),
    pub d: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dims: (usize, usize),
    pub d: MatrixJson,
    pub l2_00: TensorJson,
    pub l2_01: TensorJson,
    pub l3: TensorJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub algebra: String,
    pub space: String,
    pub act00: StackJson,
    pub act01: StackJson,
    pub act10: StackJson,
    /// `[x, y, row, col, value]` for `(x, y)▷ : V₀ → V₁`.
    pub act2: Vec<(usize, usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: String,
    pub target: String,
    pub f0: MatrixJson,
    pub f1: MatrixJson,
    pub f2: TensorJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub algebra: String,
    /// Spanning vectors of the degree-0 part.
    pub s0: Vec<Vec<String>>,
    pub s1: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub p: usize,
    pub q: usize,
    pub s: usize,
    pub entries: TensorJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub module: String,
    pub degree: i64,
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleJson {
    pub m: String,
    pub g: String,
    /// Module of `g` on the complex of `m`.
    pub action: String,
    /// `[x, [α, β], output index, value]` for `l_{φ₀(x)}`.
    pub lphi0: Vec<(usize, Vec<usize>, usize, String)>,
    pub phi0: MatrixJson,
    pub phi1: MatrixJson,
    pub phi2: TensorJson,
    /// `[x, row, col, value]` for `σ(x, ·) : m₀ → g₁`.
    pub sigma: StackJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub source: String,
    pub target: String,
    pub f: String,
    pub g: String,
    /// `[x, row, col, value]` for `τ(x, ·) : m₀ → m'₁`.
    pub tau: StackJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub sub: String,
    pub mid: String,
    pub quot: String,
    pub p0: MatrixJson,
    pub p1: MatrixJson,
    pub q0: MatrixJson,
    pub q1: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lie3Json {
    pub dims: (usize, usize, usize),
    pub d10: MatrixJson,
    pub d21: MatrixJson,
    /// `[tuple of global indices, output index, value]` for `l₂` and `l₃`.
    pub brackets: Vec<(Vec<usize>, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub module: String,
    pub ideal: String,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeJson {
    pub extension: String,
    /// Degree-1 cochain on `g`; absent means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    /// Degree-2 cochain on `h = g/k`; absent means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpliceJson {
    pub sequence: String,
    pub lambda: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Space,
    Algebra,
    Module,
    Homomorphism,
    Ideal,
    Cochain,
    CrossedModule,
    Morphism,
    Sequence,
    Lie3,
    Extension,
    Gauge,
    Splice,
}

impl Kind {
    pub const ALL: [Kind; 13] = [
        Kind::Space,
        Kind::Algebra,
        Kind::Module,
        Kind::Homomorphism,
        Kind::Ideal,
        Kind::Cochain,
        Kind::CrossedModule,
        Kind::Morphism,
        Kind::Sequence,
        Kind::Lie3,
        Kind::Extension,
        Kind::Gauge,
        Kind::Splice,
    ];

    /// The top-level key holding entities of this kind.
    pub fn key(self) -> &'static str {
        match self {
            Kind::Space => "spaces",
            Kind::Algebra => "algebras",
            Kind::Module => "modules",
            Kind::Homomorphism => "homomorphisms",
            Kind::Ideal => "ideals",
            Kind::Cochain => "cochains",
            Kind::CrossedModule => "crossed_modules",
            Kind::Morphism => "crossed_module_morphisms",
            Kind::Sequence => "sequences",
            Kind::Lie3 => "lie3_algebras",
            Kind::Extension => "extension_data",
            Kind::Gauge => "gauge_data",
            Kind::Splice => "splice_data",
        }
    }
}

/// A whole workspace file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Workspace {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spaces: BTreeMap<String, SpaceJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homomorphisms: BTreeMap<String, HomJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_modules: BTreeMap<String, CrossedModuleJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_module_morphisms: BTreeMap<String, MorphismJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, SequenceJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lie3_algebras: BTreeMap<String, Lie3Json>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extension_data: BTreeMap<String, ExtensionJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gauge_data: BTreeMap<String, GaugeJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub splice_data: BTreeMap<String, SpliceJson>,
}

fn rat(s: &str, path: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| Error::Parse(format!("{path}: not a rational: {s:?}")))
}

fn out_of_range(path: &str, what: &str, i: usize, n: usize) -> Error {
    Error::Shape(format!("{path}: {what} index {i} out of range (dimension {n})"))
}

fn read_matrix(rows: usize, cols: usize, entries: &MatrixJson, path: &str) -> Result<RationalMatrix> {
    let mut m = RationalMatrix::zeros(rows, cols);
    for (k, (i, j, v)) in entries.iter().enumerate() {
        let p = format!("{path}[{k}]");
        if *i >= rows {
            return Err(out_of_range(&p, "row", *i, rows));
        }
        if *j >= cols {
            return Err(out_of_range(&p, "column", *j, cols));
        }
        m.add_at(*i, *j, &rat(v, &p)?);
    }
    Ok(m)
}

fn write_matrix(m: &RationalMatrix) -> MatrixJson {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if !num_traits::Zero::is_zero(v) {
                out.push((i, j, format_rational(v)));
            }
        }
    }
    out
}

fn read_stack(count: usize, rows: usize, cols: usize, entries: &StackJson, path: &str) -> Result<Vec<RationalMatrix>> {
    let mut out = vec![RationalMatrix::zeros(rows, cols); count];
    for (k, (x, i, j, v)) in entries.iter().enumerate() {
        let p = format!("{path}[{k}]");
        if *x >= count {
            return Err(out_of_range(&p, "slot", *x, count));
        }
        if *i >= rows {
            return Err(out_of_range(&p, "row", *i, rows));
        }
        if *j >= cols {
            return Err(out_of_range(&p, "column", *j, cols));
        }
        out[*x].add_at(*i, *j, &rat(v, &p)?);
    }
    Ok(out)
}

fn write_stack(ms: &[RationalMatrix]) -> StackJson {
    let mut out = Vec::new();
    for (x, m) in ms.iter().enumerate() {
        for (i, j, v) in write_matrix(m) {
            out.push((x, i, j, v));
        }
    }
    out
}

/// Adds the listed entries to `t`.
fn fill_tensor(t: &mut MultiTensor, entries: &TensorJson, path: &str) -> Result<()> {
    for (k, (xs, as_, out, v)) in entries.iter().enumerate() {
        let p = format!("{path}[{k}]");
        if xs.len() != t.p || as_.len() != t.q {
            return Err(Error::Arity {
                expected: format!("{p}: {} g₀ and {} g₁ indices", t.p, t.q),
                got: format!("{} and {}", xs.len(), as_.len()),
            });
        }
        if let Some(&i) = xs.iter().find(|&&i| i >= t.n0) {
            return Err(out_of_range(&p, "g₀", i, t.n0));
        }
        if let Some(&i) = as_.iter().find(|&&i| i >= t.n1) {
            return Err(out_of_range(&p, "g₁", i, t.n1));
        }
        if *out >= t.target_dim() {
            return Err(out_of_range(&p, "output", *out, t.target_dim()));
        }
        let c = rat(v, &p)?;
        if t.locate(xs, as_).is_none() {
            if num_traits::Zero::is_zero(&c) {
                continue;
            }
            return Err(Error::Shape(format!("{p}: repeated antisymmetric index {xs:?}")));
        }
        let mut e = unit_vec(t.target_dim(), *out);
        e[*out] = c;
        t.add_basis(xs, as_, &e);
    }
    Ok(())
}

fn read_tensor(template: MultiTensor, entries: &TensorJson, path: &str) -> Result<MultiTensor> {
    let mut t = template;
    fill_tensor(&mut t, entries, path)?;
    Ok(t)
}

fn write_tensor(t: &MultiTensor) -> TensorJson {
    t.entries().into_iter().map(|(xs, as_, i, v)| (xs, as_, i, format_rational(&v))).collect()
}

fn read_vectors(n: usize, vs: &[Vec<String>], path: &str) -> Result<Vec<Vec<Rational>>> {
    vs.iter()
        .enumerate()
        .map(|(k, v)| {
            let p = format!("{path}[{k}]");
            if v.len() != n {
                return Err(Error::Shape(format!("{p}: vector of length {} in a space of dimension {n}", v.len())));
            }
            v.iter().map(|s| rat(s, &p)).collect()
        })
        .collect()
}

fn write_vectors(vs: &[Vec<Rational>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(format_rational).collect()).collect()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: Kind, name: &str, path: &str) -> Result<&'a T> {
    map.get(name)
        .ok_or_else(|| Error::Reference(format!("{path}: no entry {name:?} in {}", kind.key())))
}

fn same<T: PartialEq>(a: &T, b: &T, path: &str, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::Shape(format!("{path}: {what}")));
    }
    Ok(())
}

/// Sets `out[key] = value`, replacing anything stored under that name.
fn set<T>(map: &mut BTreeMap<String, T>, key: &str, value: T) {
    map.insert(key.to_string(), value);
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self> {
        let w: Workspace = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen: BTreeMap<&str, Kind> = BTreeMap::new();
        for (kind, name) in w.names() {
            if let Some(other) = seen.insert(name, kind) {
                return Err(Error::Parse(format!(
                    "name {name:?} is used in both {} and {}",
                    other.key(),
                    kind.key()
                )));
            }
        }
        Ok(w)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Deterministic text: objects one key per line, entry lists one entry per line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("workspace serializes");
        let mut out = String::new();
        render(&v, 0, &mut out);
        out.push('\n');
        out
    }

    /// All `(kind, name)` pairs in validation order.
    pub fn names(&self) -> Vec<(Kind, &str)> {
        fn ks<T>(k: Kind, m: &BTreeMap<String, T>) -> impl Iterator<Item = (Kind, &str)> {
            m.keys().map(move |n| (k, n.as_str()))
        }
        let mut out: Vec<(Kind, &str)> = Vec::new();
        out.extend(ks(Kind::Space, &self.spaces));
        out.extend(ks(Kind::Algebra, &self.algebras));
        out.extend(ks(Kind::Module, &self.modules));
        out.extend(ks(Kind::Homomorphism, &self.homomorphisms));
        out.extend(ks(Kind::Ideal, &self.ideals));
        out.extend(ks(Kind::Cochain, &self.cochains));
        out.extend(ks(Kind::CrossedModule, &self.crossed_modules));
        out.extend(ks(Kind::Morphism, &self.crossed_module_morphisms));
        out.extend(ks(Kind::Sequence, &self.sequences));
        out.extend(ks(Kind::Lie3, &self.lie3_algebras));
        out.extend(ks(Kind::Extension, &self.extension_data));
        out.extend(ks(Kind::Gauge, &self.gauge_data));
        out.extend(ks(Kind::Splice, &self.splice_data));
        out
    }

    pub fn kind_of(&self, name: &str) -> Option<Kind> {
        self.names().into_iter().find(|(_, n)| *n == name).map(|(k, _)| k)
    }

    // ---- reading ----

    pub fn space(&self, name: &str) -> Result<TwoTermSpace> {
        let s = lookup(&self.spaces, Kind::Space, name, "space")?;
        let path = format!("spaces.{name}");
        let (v0, v1) = s.dims;
        TwoTermSpace::new(v0, v1, read_matrix(v0, v1, &s.d, &format!("{path}.d"))?)
    }

    pub fn algebra(&self, name: &str) -> Result<Lie2Algebra> {
        let a = lookup(&self.algebras, Kind::Algebra, name, "algebra")?;
        let path = format!("algebras.{name}");
        let (n0, n1) = a.dims;
        let space = TwoTermSpace::new(n0, n1, read_matrix(n0, n1, &a.d, &format!("{path}.d"))?)?;
        let mut g = Lie2Algebra::abelian(space);
        fill_tensor(&mut g.l2_00, &a.l2_00, &format!("{path}.l2_00"))?;
        fill_tensor(&mut g.l2_01, &a.l2_01, &format!("{path}.l2_01"))?;
        fill_tensor(&mut g.l3, &a.l3, &format!("{path}.l3"))?;
        Ok(g)
    }

    pub fn module(&self, name: &str) -> Result<Lie2Module> {
        let m = lookup(&self.modules, Kind::Module, name, "module")?;
        let path = format!("modules.{name}");
        let algebra = self.algebra_at(&m.algebra, &format!("{path}.algebra"))?;
        let space = self.space_at(&m.space, &format!("{path}.space"))?;
        let (n0, n1) = algebra.dims();
        let (v0, v1) = (space.dim0, space.dim1);
        let pairs = BasisIndexer::get(n0, 2, true);
        let mut act2 = vec![RationalMatrix::zeros(v1, v0); pairs.len()];
        for (k, (x, y, i, j, v)) in m.act2.iter().enumerate() {
            let p = format!("{path}.act2[{k}]");
            for z in [x, y] {
                if *z >= n0 {
                    return Err(out_of_range(&p, "g₀", *z, n0));
                }
            }
            if x == y {
                return Err(Error::Shape(format!("{p}: repeated antisymmetric index {x}")));
            }
            if *i >= v1 {
                return Err(out_of_range(&p, "row", *i, v1));
            }
            if *j >= v0 {
                return Err(out_of_range(&p, "column", *j, v0));
            }
            let c = rat(v, &p)?;
            let (slot, c) = if x < y { (pairs.index_of(&[*x, *y]), c) } else { (pairs.index_of(&[*y, *x]), -c) };
            act2[slot.expect("canonical pair")].add_at(*i, *j, &c);
        }
        Lie2Module::new(
            algebra,
            space,
            read_stack(n0, v0, v0, &m.act00, &format!("{path}.act00"))?,
            read_stack(n0, v1, v1, &m.act01, &format!("{path}.act01"))?,
            read_stack(n1, v1, v0, &m.act10, &format!("{path}.act10"))?,
            act2,
        )
    }

    pub fn homomorphism(&self, name: &str) -> Result<Lie2Hom> {
        let h = lookup(&self.homomorphisms, Kind::Homomorphism, name, "homomorphism")?;
        let path = format!("homomorphisms.{name}");
        let src = self.algebra_at(&h.source, &format!("{path}.source"))?;
        let tgt = self.algebra_at(&h.target, &format!("{path}.target"))?;
        let (k0, k1) = src.dims();
        let (n0, n1) = tgt.dims();
        let maps = GradedMap::new(
            read_matrix(n0, k0, &h.f0, &format!("{path}.f0"))?,
            read_matrix(n1, k1, &h.f1, &format!("{path}.f1"))?,
        );
        let f2 = read_tensor(MultiTensor::zero(2, 0, k0, k1, Target::V1, n1), &h.f2, &format!("{path}.f2"))?;
        Lie2Hom::new(src, tgt, maps, f2)
    }

    /// The ideal with its ambient algebra.
    pub fn ideal(&self, name: &str) -> Result<(Lie2Algebra, GradedSubspace)> {
        let i = lookup(&self.ideals, Kind::Ideal, name, "ideal")?;
        let path = format!("ideals.{name}");
        let g = self.algebra_at(&i.algebra, &format!("{path}.algebra"))?;
        let (n0, n1) = g.dims();
        let s0 = read_vectors(n0, &i.s0, &format!("{path}.s0"))?;
        let s1 = read_vectors(n1, &i.s1, &format!("{path}.s1"))?;
        Ok((g, GradedSubspace::span(n0, &s0, n1, &s1)))
    }

    /// The cochain with its module.
    pub fn cochain(&self, name: &str) -> Result<(Lie2Module, Cochain)> {
        let c = lookup(&self.cochains, Kind::Cochain, name, "cochain")?;
        let path = format!("cochains.{name}");
        let m = self.module_at(&c.module, &format!("{path}.module"))?;
        let mut out = Cochain::zero(&m, c.degree);
        for (k, b) in c.blocks.iter().enumerate() {
            let p = format!("{path}.blocks[{k}]");
            let block = Block::new(b.p, b.q, b.s);
            let slot = out.block_mut(block).ok_or_else(|| {
                Error::Shape(format!("{p}: block {block} does not occur in degree {}", c.degree))
            })?;
            fill_tensor(slot, &b.entries, &format!("{p}.entries"))?;
        }
        Ok((m, out))
    }

    pub fn crossed_module(&self, name: &str) -> Result<CrossedModule> {
        let c = lookup(&self.crossed_modules, Kind::CrossedModule, name, "crossed module")?;
        let path = format!("crossed_modules.{name}");
        let m = self.algebra_at(&c.m, &format!("{path}.m"))?;
        let g = self.algebra_at(&c.g, &format!("{path}.g"))?;
        let module = self.module_at(&c.action, &format!("{path}.action"))?;
        same(&module.algebra, &g, &format!("{path}.action"), "the action module is not over g")?;
        same(&module.space, &m.space, &format!("{path}.action"), "the action module does not act on the complex of m")?;
        let (n0, n1) = g.dims();
        let (k0, k1) = m.dims();
        let mut lphi0 = vec![MultiTensor::zero(2, 0, k0, k1, Target::V1, k1); n0];
        for (k, (x, ab, out, v)) in c.lphi0.iter().enumerate() {
            let p = format!("{path}.lphi0[{k}]");
            if *x >= n0 {
                return Err(out_of_range(&p, "g₀", *x, n0));
            }
            fill_tensor(&mut lphi0[*x], &vec![(ab.clone(), vec![], *out, v.clone())], &p)?;
        }
        let phi = GradedMap::new(
            read_matrix(n0, k0, &c.phi0, &format!("{path}.phi0"))?,
            read_matrix(n1, k1, &c.phi1, &format!("{path}.phi1"))?,
        );
        let phi2 = read_tensor(MultiTensor::zero(2, 0, k0, k1, Target::V1, n1), &c.phi2, &format!("{path}.phi2"))?;
        let sigma = read_stack(n0, n1, k0, &c.sigma, &format!("{path}.sigma"))?;
        Ok(CrossedModule { m, g, action: DerivAction { module, lphi0 }, phi, phi2, sigma })
    }

    /// Source, target, and the morphism between them.
    pub fn morphism(&self, name: &str) -> Result<(CrossedModule, CrossedModule, CrossedModuleMorphism)> {
        let mj = lookup(&self.crossed_module_morphisms, Kind::Morphism, name, "morphism")?;
        let path = format!("crossed_module_morphisms.{name}");
        let src = self.crossed_module_at(&mj.source, &format!("{path}.source"))?;
        let tgt = self.crossed_module_at(&mj.target, &format!("{path}.target"))?;
        let f = self.homomorphism_at(&mj.f, &format!("{path}.f"))?;
        let g = self.homomorphism_at(&mj.g, &format!("{path}.g"))?;
        same(&f.source, &src.m, &format!("{path}.f"), "F must start at m")?;
        same(&f.target, &tgt.m, &format!("{path}.f"), "F must end at m'")?;
        same(&g.source, &src.g, &format!("{path}.g"), "G must start at g")?;
        same(&g.target, &tgt.g, &format!("{path}.g"), "G must end at g'")?;
        let tau = read_stack(src.g.n0(), tgt.m.n1(), src.m.n0(), &mj.tau, &format!("{path}.tau"))?;
        Ok((src, tgt, CrossedModuleMorphism { f, g, tau }))
    }

    pub fn sequence(&self, name: &str) -> Result<ModuleSequence> {
        let s = lookup(&self.sequences, Kind::Sequence, name, "sequence")?;
        let path = format!("sequences.{name}");
        let sub = self.module_at(&s.sub, &format!("{path}.sub"))?;
        let mid = self.module_at(&s.mid, &format!("{path}.mid"))?;
        let quot = self.module_at(&s.quot, &format!("{path}.quot"))?;
        let p = GradedMap::new(
            read_matrix(mid.v0(), sub.v0(), &s.p0, &format!("{path}.p0"))?,
            read_matrix(mid.v1(), sub.v1(), &s.p1, &format!("{path}.p1"))?,
        );
        let q = GradedMap::new(
            read_matrix(quot.v0(), mid.v0(), &s.q0, &format!("{path}.q0"))?,
            read_matrix(quot.v1(), mid.v1(), &s.q1, &format!("{path}.q1"))?,
        );
        Ok(ModuleSequence { sub, mid, quot, p, q })
    }

    pub fn lie3(&self, name: &str) -> Result<Lie3Algebra> {
        let l = lookup(&self.lie3_algebras, Kind::Lie3, name, "Lie 3-algebra")?;
        let path = format!("lie3_algebras.{name}");
        let (d0, d1, d2) = l.dims;
        let space = ThreeTermSpace::new(
            d0,
            d1,
            d2,
            read_matrix(d0, d1, &l.d10, &format!("{path}.d10"))?,
            read_matrix(d1, d2, &l.d21, &format!("{path}.d21"))?,
        )?;
        let mut br = LInf::new(vec![d0, d1, d2], 3);
        let total = br.total_dim();
        for (k, (t, out, v)) in l.brackets.iter().enumerate() {
            let p = format!("{path}.brackets[{k}]");
            if t.len() != 2 && t.len() != 3 {
                return Err(Error::Arity { expected: format!("{p}: 2 or 3 arguments"), got: t.len().to_string() });
            }
            if let Some(&i) = t.iter().chain(std::iter::once(out)).find(|&&i| i >= total) {
                return Err(out_of_range(&p, "global", i, total));
            }
            let c = rat(v, &p)?;
            if br.canonicalize(&mut t.clone()).is_none() {
                if num_traits::Zero::is_zero(&c) {
                    continue;
                }
                return Err(Error::Shape(format!("{p}: repeated index of even degree in {t:?}")));
            }
            br.perturb(t, *out, &c);
        }
        Lie3Algebra::new(space, br).map_err(|e| match e {
            Error::Shape(s) => Error::Shape(format!("{path}: {s}")),
            e => e,
        })
    }

    /// `(V, k, λ)` with all three over one algebra.
    pub fn extension(&self, name: &str) -> Result<(Lie2Module, GradedSubspace, Cochain)> {
        let e = lookup(&self.extension_data, Kind::Extension, name, "extension datum")?;
        let path = format!("extension_data.{name}");
        let v = self.module_at(&e.module, &format!("{path}.module"))?;
        let (g, k) = self.ideal_at(&e.ideal, &format!("{path}.ideal"))?;
        let (vm, lam) = self.cochain_at(&e.lambda, &format!("{path}.lambda"))?;
        same(&g, &v.algebra, &format!("{path}.ideal"), "the ideal lives in another algebra")?;
        same(&vm, &v, &format!("{path}.lambda"), "λ is a cochain for another module")?;
        if lam.degree != 2 {
            return Err(Error::Shape(format!("{path}.lambda: λ must have degree 2, got {}", lam.degree)));
        }
        Ok((v, k, lam))
    }

    /// The extension datum, `A`, and `R` (zero when absent).
    #[allow(clippy::type_complexity)]
    pub fn gauge(&self, name: &str) -> Result<((Lie2Module, GradedSubspace, Cochain), Cochain, Option<(Lie2Module, Cochain)>)> {
        let gj = lookup(&self.gauge_data, Kind::Gauge, name, "gauge datum")?;
        let path = format!("gauge_data.{name}");
        let ext = self.extension_at(&gj.extension, &format!("{path}.extension"))?;
        let a = match &gj.a {
            None => Cochain::zero(&ext.0, 1),
            Some(n) => {
                let (m, a) = self.cochain_at(n, &format!("{path}.a"))?;
                same(&m, &ext.0, &format!("{path}.a"), "A is a cochain for another module")?;
                a
            }
        };
        let r = match &gj.r {
            None => None,
            Some(n) => Some(self.cochain_at(n, &format!("{path}.r"))?),
        };
        Ok((ext, a, r))
    }

    pub fn splice(&self, name: &str) -> Result<(ModuleSequence, Cochain)> {
        let s = lookup(&self.splice_data, Kind::Splice, name, "splice datum")?;
        let path = format!("splice_data.{name}");
        let seq = self.sequence_at(&s.sequence, &format!("{path}.sequence"))?;
        let (m, lam) = self.cochain_at(&s.lambda, &format!("{path}.lambda"))?;
        same(&m, &seq.quot, &format!("{path}.lambda"), "λ must be a cochain for the quotient module")?;
        Ok((seq, lam))
    }

    fn at<T>(r: Result<T>, path: &str) -> Result<T> {
        r.map_err(|e| match e {
            Error::Reference(s) => Error::Reference(format!("{path} -> {s}")),
            e => e,
        })
    }

    fn space_at(&self, n: &str, path: &str) -> Result<TwoTermSpace> {
        Self::at(self.space(n), path)
    }
    fn algebra_at(&self, n: &str, path: &str) -> Result<Lie2Algebra> {
        Self::at(self.algebra(n), path)
    }
    fn module_at(&self, n: &str, path: &str) -> Result<Lie2Module> {
        Self::at(self.module(n), path)
    }
    fn homomorphism_at(&self, n: &str, path: &str) -> Result<Lie2Hom> {
        Self::at(self.homomorphism(n), path)
    }
    fn ideal_at(&self, n: &str, path: &str) -> Result<(Lie2Algebra, GradedSubspace)> {
        Self::at(self.ideal(n), path)
    }
    fn cochain_at(&self, n: &str, path: &str) -> Result<(Lie2Module, Cochain)> {
        Self::at(self.cochain(n), path)
    }
    fn crossed_module_at(&self, n: &str, path: &str) -> Result<CrossedModule> {
        Self::at(self.crossed_module(n), path)
    }
    fn sequence_at(&self, n: &str, path: &str) -> Result<ModuleSequence> {
        Self::at(self.sequence(n), path)
    }
    fn extension_at(&self, n: &str, path: &str) -> Result<(Lie2Module, GradedSubspace, Cochain)> {
        Self::at(self.extension(n), path)
    }

    // ---- writing ----

    /// `base`, or `base_2`, `base_3`, … if taken.
    pub fn fresh_name(&self, base: &str) -> String {
        let taken = |n: &str| self.kind_of(n).is_some();
        if !taken(base) {
            return base.to_string();
        }
        (2..).map(|i| format!("{base}_{i}")).find(|n| !taken(n)).expect("unbounded")
    }

    /// Name of an existing entity equal to `x`, if any.
    fn find_equal<T: PartialEq, J>(
        map: &BTreeMap<String, J>,
        x: &T,
        read: impl Fn(&str) -> Result<T>,
    ) -> Option<String> {
        map.keys().find(|n| read(n).map(|y| y == *x).unwrap_or(false)).cloned()
    }

    pub fn put_space(&mut self, name: &str, s: &TwoTermSpace) -> String {
        if let Some(n) = Self::find_equal(&self.spaces, s, |n| self.space(n)) {
            return n;
        }
        let n = self.fresh_name(name);
        set(&mut self.spaces, &n, SpaceJson { dims: (s.dim0, s.dim1), d: write_matrix(&s.diff) });
        n
    }

    pub fn put_algebra(&mut self, name: &str, g: &Lie2Algebra) -> String {
        if let Some(n) = Self::find_equal(&self.algebras, g, |n| self.algebra(n)) {
            return n;
        }
        let n = self.fresh_name(name);
        let j = AlgebraJson {
            dims: g.dims(),
            d: write_matrix(&g.space.diff),
            l2_00: write_tensor(&g.l2_00),
            l2_01: write_tensor(&g.l2_01),
            l3: write_tensor(&g.l3),
        };
        set(&mut self.algebras, &n, j);
        n
    }

    pub fn put_module(&mut self, name: &str, m: &Lie2Module) -> String {
        if let Some(n) = Self::find_equal(&self.modules, m, |n| self.module(n)) {
            return n;
        }
        let algebra = self.put_algebra(&format!("{name}_algebra"), &m.algebra);
        let space = self.put_space(&format!("{name}_space"), &m.space);
        let pairs = BasisIndexer::get(m.algebra.n0(), 2, true);
        let mut act2 = Vec::new();
        for (k, mat) in m.act2.iter().enumerate() {
            let t = pairs.tuple(k);
            for (i, j, v) in write_matrix(mat) {
                act2.push((t[0], t[1], i, j, v));
            }
        }
        let n = self.fresh_name(name);
        let j = ModuleJson {
            algebra,
            space,
            act00: write_stack(&m.act00),
            act01: write_stack(&m.act01),
            act10: write_stack(&m.act10),
            act2,
        };
        set(&mut self.modules, &n, j);
        n
    }

    pub fn put_homomorphism(&mut self, name: &str, f: &Lie2Hom) -> String {
        if let Some(n) = Self::find_equal(&self.homomorphisms, f, |n| self.homomorphism(n)) {
            return n;
        }
        let source = self.put_algebra(&format!("{name}_source"), &f.source);
        let target = self.put_algebra(&format!("{name}_target"), &f.target);
        let n = self.fresh_name(name);
        let j = HomJson {
            source,
            target,
            f0: write_matrix(&f.maps.m0),
            f1: write_matrix(&f.maps.m1),
            f2: write_tensor(&f.phi2),
        };
        set(&mut self.homomorphisms, &n, j);
        n
    }

    pub fn put_ideal(&mut self, name: &str, g: &Lie2Algebra, k: &GradedSubspace) -> String {
        let key = (g.clone(), k.clone());
        if let Some(n) = Self::find_equal(&self.ideals, &key, |n| self.ideal(n)) {
            return n;
        }
        let algebra = self.put_algebra(&format!("{name}_algebra"), g);
        let n = self.fresh_name(name);
        let j = IdealJson { algebra, s0: write_vectors(k.s0.basis()), s1: write_vectors(k.s1.basis()) };
        set(&mut self.ideals, &n, j);
        n
    }

    pub fn put_cochain(&mut self, name: &str, m: &Lie2Module, c: &Cochain) -> String {
        let key = (m.clone(), c.clone());
        if let Some(n) = Self::find_equal(&self.cochains, &key, |n| self.cochain(n)) {
            return n;
        }
        let module = self.put_module(&format!("{name}_module"), m);
        let blocks = c
            .blocks
            .iter()
            .zip(&c.parts)
            .filter(|(_, t)| !t.is_zero())
            .map(|(b, t)| BlockJson { p: b.p, q: b.q, s: b.s, entries: write_tensor(t) })
            .collect();
        let n = self.fresh_name(name);
        set(&mut self.cochains, &n, CochainJson { module, degree: c.degree, blocks });
        n
    }

    pub fn put_crossed_module(&mut self, name: &str, cm: &CrossedModule) -> String {
        if let Some(n) = Self::find_equal(&self.crossed_modules, cm, |n| self.crossed_module(n)) {
            return n;
        }
        let m = self.put_algebra(&format!("{name}_m"), &cm.m);
        let g = self.put_algebra(&format!("{name}_g"), &cm.g);
        let action = self.put_module(&format!("{name}_action"), &cm.action.module);
        let mut lphi0 = Vec::new();
        for (x, t) in cm.action.lphi0.iter().enumerate() {
            for (xs, _, i, v) in t.entries() {
                lphi0.push((x, xs, i, format_rational(&v)));
            }
        }
        let n = self.fresh_name(name);
        let j = CrossedModuleJson {
            m,
            g,
            action,
            lphi0,
            phi0: write_matrix(&cm.phi.m0),
            phi1: write_matrix(&cm.phi.m1),
            phi2: write_tensor(&cm.phi2),
            sigma: write_stack(&cm.sigma),
        };
        set(&mut self.crossed_modules, &n, j);
        n
    }

    pub fn put_morphism(
        &mut self,
        name: &str,
        src: &CrossedModule,
        tgt: &CrossedModule,
        mor: &CrossedModuleMorphism,
    ) -> String {
        let source = self.put_crossed_module(&format!("{name}_source"), src);
        let target = self.put_crossed_module(&format!("{name}_target"), tgt);
        let f = self.put_homomorphism(&format!("{name}_f"), &mor.f);
        let g = self.put_homomorphism(&format!("{name}_g"), &mor.g);
        let n = self.fresh_name(name);
        set(
            &mut self.crossed_module_morphisms,
            &n,
            MorphismJson { source, target, f, g, tau: write_stack(&mor.tau) },
        );
        n
    }

    pub fn put_lie3(&mut self, name: &str, l: &Lie3Algebra) -> String {
        let brackets = l.entries().into_iter().map(|(_, t, i, v)| (t, i, format_rational(&v))).collect();
        let [d0, d1, d2] = l.space.dims();
        let n = self.fresh_name(name);
        let j = Lie3Json {
            dims: (d0, d1, d2),
            d10: write_matrix(&l.space.diff10),
            d21: write_matrix(&l.space.diff21),
            brackets,
        };
        set(&mut self.lie3_algebras, &n, j);
        n
    }

    pub fn put_sequence(&mut self, name: &str, s: &ModuleSequence) -> String {
        if let Some(n) = Self::find_equal(&self.sequences, s, |n| self.sequence(n)) {
            return n;
        }
        let sub = self.put_module(&format!("{name}_sub"), &s.sub);
        let mid = self.put_module(&format!("{name}_mid"), &s.mid);
        let quot = self.put_module(&format!("{name}_quot"), &s.quot);
        let n = self.fresh_name(name);
        let j = SequenceJson {
            sub,
            mid,
            quot,
            p0: write_matrix(&s.p.m0),
            p1: write_matrix(&s.p.m1),
            q0: write_matrix(&s.q.m0),
            q1: write_matrix(&s.q.m1),
        };
        set(&mut self.sequences, &n, j);
        n
    }

    pub fn put_extension(&mut self, name: &str, v: &Lie2Module, k: &GradedSubspace, lambda: &Cochain) -> String {
        let module = self.put_module(&format!("{name}_module"), v);
        let ideal = self.put_ideal(&format!("{name}_ideal"), &v.algebra, k);
        let lambda = self.put_cochain(&format!("{name}_lambda"), v, lambda);
        let n = self.fresh_name(name);
        set(&mut self.extension_data, &n, ExtensionJson { module, ideal, lambda });
        n
    }

    pub fn put_splice(&mut self, name: &str, seq: &ModuleSequence, lambda: &Cochain) -> String {
        let sequence = self.put_sequence(&format!("{name}_sequence"), seq);
        let lambda = self.put_cochain(&format!("{name}_lambda"), &seq.quot, lambda);
        let n = self.fresh_name(name);
        set(&mut self.splice_data, &n, SpliceJson { sequence, lambda });
        n
    }
}

fn is_container(v: &Value) -> bool {
    matches!(v, Value::Array(_) | Value::Object(_))
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                render(val, indent + 1, out);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push('}');
        }
        Value::Array(items) if items.iter().any(is_container) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                if matches!(item, Value::Object(_)) {
                    render(item, indent + 1, out);
                } else {
                    out.push_str(&serde_json::to_string(item).expect("value"));
                }
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("value")),
    }
}
