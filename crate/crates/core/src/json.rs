//! JSON workspace documents: a single self-describing format holding
//! named groups, rings, bimodules, crossed bimodules, morphisms,
//! butterflies, torsors and cocycles, with canonical (sorted-key)
//! serialization for golden-file testing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bimodule, FinRing, RingHom};
use crate::butterfly::Butterfly;
use crate::cocycle::Cocycle;
use crate::crossed::{CrossedBimodule, XbmMorphism};
use crate::error::{Error, Result};
use crate::torsor::Torsor;
use crate::zmod::{Element, FinAbGroup, GroupHom};

pub const FORMAT_VERSION: u32 = 1;

type Coords = Vec<i64>;
type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupDoc {
    pub moduli: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RingDoc {
    pub moduli: Vec<i64>,
    pub unit: Coords,
    /// mult[j][l] = coordinates of e_j · e_l.
    pub mult: Vec<Vec<Coords>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BimoduleDoc {
    pub ring: String,
    pub moduli: Vec<i64>,
    pub left: Vec<Vec<Coords>>,
    pub right: Vec<Vec<Coords>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CrossedDoc {
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "M")]
    pub m: String,
    pub del: Matrix,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MorphismDoc {
    pub source: String,
    pub target: String,
    pub alpha: Matrix,
    pub beta: Matrix,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ButterflyDoc {
    pub source: String,
    pub target: String,
    #[serde(rename = "E")]
    pub e: String,
    pub kappa: Matrix,
    pub iota: Matrix,
    pub pi: Matrix,
    pub jay: Matrix,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TorsorDoc {
    pub xbm: String,
    pub carrier: usize,
    pub action: Vec<Vec<usize>>,
    pub s: Vec<Coords>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CocycleDoc {
    pub xbm: String,
    #[serde(rename = "I")]
    pub i: usize,
    pub r: Vec<Coords>,
    pub m: Vec<Vec<Coords>>,
}

/// One parsed JSON document; several documents merge into a workspace.
#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
pub struct Document {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed: BTreeMap<String, CrossedDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub butterflies: BTreeMap<String, ButterflyDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub torsors: BTreeMap<String, TorsorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, CocycleDoc>,
}

/// Resolved objects from one or more documents. Names are unique and
/// references are checked at load time; semantic laws are left to the
/// check commands.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, FinAbGroup>,
    pub rings: BTreeMap<String, FinRing>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub crossed: BTreeMap<String, CrossedBimodule>,
    pub morphisms: BTreeMap<String, XbmMorphism>,
    pub butterflies: BTreeMap<String, Butterfly>,
    pub torsors: BTreeMap<String, Torsor>,
    pub cocycles: BTreeMap<String, Cocycle>,
}

fn reduce_coords(g: &FinAbGroup, coords: &[i64], what: &str) -> Result<Element> {
    if coords.len() != g.rank() {
        return Err(Error::ShapeMismatch(format!(
            "{what}: expected {} coordinates, got {}",
            g.rank(),
            coords.len()
        )));
    }
    Ok(g.reduce(coords))
}

fn table(
    g: &FinAbGroup,
    rows: usize,
    cols: usize,
    data: &[Vec<Coords>],
    what: &str,
) -> Result<Vec<Vec<Element>>> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!("{what}: expected a {rows} x {cols} table")));
    }
    data.iter()
        .map(|row| row.iter().map(|c| reduce_coords(g, c, what)).collect())
        .collect()
}

fn matrix_hom(source: &FinAbGroup, target: &FinAbGroup, m: &Matrix, what: &str) -> Result<GroupHom> {
    if m.len() != target.rank() || m.iter().any(|row| row.len() != source.rank()) {
        return Err(Error::ShapeMismatch(format!(
            "{what}: expected a {} x {} matrix",
            target.rank(),
            source.rank()
        )));
    }
    GroupHom::new(source.clone(), target.clone(), m.clone())
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str) -> Result<&'a T> {
    map.get(name)
        .ok_or_else(|| Error::InvalidInput(format!("unresolved {kind} reference '{name}'")))
}

impl Workspace {
    pub fn from_documents(docs: Vec<Document>) -> Result<Workspace> {
        let mut merged = Document { version: FORMAT_VERSION, ..Document::default() };
        for doc in docs {
            if doc.version != FORMAT_VERSION {
                return Err(Error::InvalidInput(format!(
                    "unsupported document version {}",
                    doc.version
                )));
            }
            merge(&mut merged.groups, doc.groups)?;
            merge(&mut merged.rings, doc.rings)?;
            merge(&mut merged.bimodules, doc.bimodules)?;
            merge(&mut merged.crossed, doc.crossed)?;
            merge(&mut merged.morphisms, doc.morphisms)?;
            merge(&mut merged.butterflies, doc.butterflies)?;
            merge(&mut merged.torsors, doc.torsors)?;
            merge(&mut merged.cocycles, doc.cocycles)?;
        }
        Workspace::resolve(&merged)
    }

    fn resolve(doc: &Document) -> Result<Workspace> {
        let mut ws = Workspace::default();
        for (name, g) in &doc.groups {
            ws.groups.insert(name.clone(), FinAbGroup::new(g.moduli.clone())?);
        }
        for (name, r) in &doc.rings {
            let g = FinAbGroup::new(r.moduli.clone())?;
            let unit = reduce_coords(&g, &r.unit, name)?;
            let k = g.rank();
            let mult = table(&g, k, k, &r.mult, name)?;
            ws.rings.insert(name.clone(), FinRing::new(g, unit, mult));
        }
        for (name, b) in &doc.bimodules {
            let ring = lookup(&ws.rings, &b.ring, "ring")?.clone();
            let g = FinAbGroup::new(b.moduli.clone())?;
            let kr = ring.additive().rank();
            let km = g.rank();
            let left = table(&g, kr, km, &b.left, name)?;
            let right = table(&g, km, kr, &b.right, name)?;
            ws.bimodules.insert(name.clone(), Bimodule::new(ring, g, left, right));
        }
        for (name, x) in &doc.crossed {
            let ring = lookup(&ws.rings, &x.r, "ring")?.clone();
            let module = lookup(&ws.bimodules, &x.m, "bimodule")?.clone();
            if module.ring() != &ring {
                return Err(Error::InvalidInput(format!(
                    "{name}: bimodule '{}' is not over ring '{}'",
                    x.m, x.r
                )));
            }
            let del = matrix_hom(module.additive(), ring.additive(), &x.del, name)?;
            ws.crossed.insert(name.clone(), CrossedBimodule::new(ring, module, del));
        }
        for (name, f) in &doc.morphisms {
            let source = lookup(&ws.crossed, &f.source, "crossed bimodule")?.clone();
            let target = lookup(&ws.crossed, &f.target, "crossed bimodule")?.clone();
            let alpha = RingHom::from_group_hom(
                source.ring().clone(),
                target.ring().clone(),
                matrix_hom(source.ring().additive(), target.ring().additive(), &f.alpha, name)?,
            )?;
            let beta =
                matrix_hom(source.module().additive(), target.module().additive(), &f.beta, name)?;
            ws.morphisms.insert(name.clone(), XbmMorphism::new(source, target, alpha, beta));
        }
        for (name, b) in &doc.butterflies {
            let source = lookup(&ws.crossed, &b.source, "crossed bimodule")?.clone();
            let target = lookup(&ws.crossed, &b.target, "crossed bimodule")?.clone();
            let e = lookup(&ws.rings, &b.e, "ring")?.clone();
            let kappa = matrix_hom(source.module().additive(), e.additive(), &b.kappa, name)?;
            let iota = matrix_hom(target.module().additive(), e.additive(), &b.iota, name)?;
            let pi = RingHom::from_group_hom(
                e.clone(),
                source.ring().clone(),
                matrix_hom(e.additive(), source.ring().additive(), &b.pi, name)?,
            )?;
            let jay = RingHom::from_group_hom(
                e.clone(),
                target.ring().clone(),
                matrix_hom(e.additive(), target.ring().additive(), &b.jay, name)?,
            )?;
            ws.butterflies
                .insert(name.clone(), Butterfly::new(source, target, e, kappa, iota, pi, jay)?);
        }
        for (name, t) in &doc.torsors {
            let x = lookup(&ws.crossed, &t.xbm, "crossed bimodule")?.clone();
            if t.carrier != t.s.len() {
                return Err(Error::ShapeMismatch(format!("{name}: carrier != |s|")));
            }
            let rg = x.ring().additive().clone();
            let s = t
                .s
                .iter()
                .map(|c| reduce_coords(&rg, c, name))
                .collect::<Result<Vec<_>>>()?;
            ws.torsors.insert(name.clone(), Torsor::from_parts(x, t.action.clone(), s)?);
        }
        for (name, z) in &doc.cocycles {
            let x = lookup(&ws.crossed, &z.xbm, "crossed bimodule")?.clone();
            if z.i != z.r.len() {
                return Err(Error::ShapeMismatch(format!("{name}: I != |r|")));
            }
            let rg = x.ring().additive().clone();
            let mg = x.module().additive().clone();
            let r = z
                .r
                .iter()
                .map(|c| reduce_coords(&rg, c, name))
                .collect::<Result<Vec<_>>>()?;
            let m = table(&mg, z.i, z.i, &z.m, name)?;
            ws.cocycles.insert(name.clone(), Cocycle::new(x, r, m)?);
        }
        Ok(ws)
    }

    /// Emit the whole workspace as one canonical document. Group docs
    /// referenced only through richer objects are reconstructed inline.
    pub fn to_document(&self) -> Document {
        let mut doc = Document { version: FORMAT_VERSION, ..Document::default() };
        for (name, g) in &self.groups {
            doc.groups.insert(name.clone(), GroupDoc { moduli: g.moduli().to_vec() });
        }
        for (name, r) in &self.rings {
            doc.rings.insert(name.clone(), ring_doc(r));
        }
        for (name, b) in &self.bimodules {
            let ring = self
                .rings
                .iter()
                .find(|(_, r)| *r == b.ring())
                .map(|(n, _)| n.clone())
                .expect("bimodule ring must be a named ring");
            doc.bimodules.insert(name.clone(), bimodule_doc(b, ring));
        }
        for (name, x) in &self.crossed {
            let r = named(&self.rings, x.ring());
            let m = named(&self.bimodules, x.module());
            doc.crossed.insert(
                name.clone(),
                CrossedDoc { r, m, del: x.del().matrix().clone() },
            );
        }
        for (name, f) in &self.morphisms {
            doc.morphisms.insert(
                name.clone(),
                MorphismDoc {
                    source: named(&self.crossed, f.source()),
                    target: named(&self.crossed, f.target()),
                    alpha: f.alpha().hom().matrix().clone(),
                    beta: f.beta().matrix().clone(),
                },
            );
        }
        for (name, b) in &self.butterflies {
            doc.butterflies.insert(
                name.clone(),
                ButterflyDoc {
                    source: named(&self.crossed, b.source()),
                    target: named(&self.crossed, b.target()),
                    e: named(&self.rings, b.center()),
                    kappa: b.kappa().matrix().clone(),
                    iota: b.iota().matrix().clone(),
                    pi: b.pi().hom().matrix().clone(),
                    jay: b.jay().hom().matrix().clone(),
                },
            );
        }
        for (name, t) in &self.torsors {
            doc.torsors.insert(
                name.clone(),
                TorsorDoc {
                    xbm: named(&self.crossed, t.x()),
                    carrier: t.len(),
                    action: t.action_table().clone(),
                    s: t.trivialization().iter().map(|e| e.coords.clone()).collect(),
                },
            );
        }
        for (name, z) in &self.cocycles {
            doc.cocycles.insert(
                name.clone(),
                CocycleDoc {
                    xbm: named(&self.crossed, z.x()),
                    i: z.cover_size(),
                    r: z.r().iter().map(|e| e.coords.clone()).collect(),
                    m: z
                        .m()
                        .iter()
                        .map(|row| row.iter().map(|e| e.coords.clone()).collect())
                        .collect(),
                },
            );
        }
        doc
    }

    /// Insert a crossed bimodule along with fresh ring and bimodule
    /// entries named after it.
    pub fn add_crossed(&mut self, name: &str, x: &CrossedBimodule) {
        self.rings.insert(format!("{name}/R"), x.ring().clone());
        self.bimodules.insert(format!("{name}/M"), x.module().clone());
        self.crossed.insert(name.to_string(), x.clone());
    }

    /// Insert a butterfly along with its endpoints and center.
    pub fn add_butterfly(&mut self, name: &str, b: &Butterfly) {
        self.add_crossed(&format!("{name}/source"), b.source());
        self.add_crossed(&format!("{name}/target"), b.target());
        self.rings.insert(format!("{name}/E"), b.center().clone());
        self.butterflies.insert(name.to_string(), b.clone());
    }
}

fn named<T: PartialEq>(map: &BTreeMap<String, T>, value: &T) -> String {
    map.iter()
        .find(|(_, v)| *v == value)
        .map(|(n, _)| n.clone())
        .expect("referenced object must be a named workspace entry")
}

fn ring_doc(r: &FinRing) -> RingDoc {
    RingDoc {
        moduli: r.additive().moduli().to_vec(),
        unit: r.unit().coords.clone(),
        mult: r
            .table()
            .iter()
            .map(|row| row.iter().map(|e| e.coords.clone()).collect())
            .collect(),
    }
}

fn bimodule_doc(b: &Bimodule, ring: String) -> BimoduleDoc {
    BimoduleDoc {
        ring,
        moduli: b.additive().moduli().to_vec(),
        left: b
            .left_table()
            .iter()
            .map(|row| row.iter().map(|e| e.coords.clone()).collect())
            .collect(),
        right: b
            .right_table()
            .iter()
            .map(|row| row.iter().map(|e| e.coords.clone()).collect())
            .collect(),
    }
}

fn merge<T>(into: &mut BTreeMap<String, T>, from: BTreeMap<String, T>) -> Result<()> {
    for (name, v) in from {
        if into.contains_key(&name) {
            return Err(Error::InvalidInput(format!("duplicate name '{name}'")));
        }
        into.insert(name, v);
    }
    Ok(())
}

/// Canonical serialization: sorted keys, two-space indentation, one
/// trailing newline.
pub fn to_canonical_json(doc: &Document) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serialization");
    out.push('\n');
    out
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}
