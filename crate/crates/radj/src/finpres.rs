//! Finite categories and 2-categories given by explicit composition tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Obj = usize;
pub type Mor = usize;
pub type Cell = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Raw `fincat.json` tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<ArrowJson>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub comp: Vec<[String; 3]>,
    #[serde(default)]
    pub isos: Vec<[String; 2]>,
}

/// Raw `fin2cat.json` tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct TwoCatJson {
    #[serde(flatten)]
    pub underlying: CatJson,
    #[serde(default)]
    pub two_cells: Vec<ArrowJson>,
    #[serde(default)]
    pub vcomp: Vec<[String; 3]>,
    #[serde(default)]
    pub hcomp: Vec<[String; 3]>,
    #[serde(default)]
    pub identity2: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    identity: Vec<Mor>,
    comp: Vec<Option<Mor>>,
    inverse: Vec<Option<Mor>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

fn index_names(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::MalformedTable(format!("duplicate {what} id {n}")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, name: &str, what: &str) -> Result<usize> {
    map.get(name).copied().ok_or_else(|| Error::MalformedTable(format!("unknown {what} id {name}")))
}

fn axiom(axiom: &str, witness: String) -> Error {
    Error::AxiomViolation { axiom: axiom.to_string(), witness }
}

impl FinCategory {
    /// Parse and validate raw tables. Only the first violation is returned; see
    /// [`FinCategory::violations`] for the full list.
    pub fn from_json(raw: &CatJson) -> Result<FinCategory> {
        let cat = Self::build(raw)?;
        match cat.violations().into_iter().next() {
            Some(e) => Err(e),
            None => Ok(cat),
        }
    }

    pub fn from_json_str(s: &str) -> Result<FinCategory> {
        let raw: CatJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&raw)
    }

    /// Resolve ids without checking the axioms.
    pub fn build(raw: &CatJson) -> Result<FinCategory> {
        let obj_index = index_names(&raw.objects, "object")?;
        let names: Vec<String> = raw.morphisms.iter().map(|m| m.id.clone()).collect();
        let mor_index = index_names(&names, "morphism")?;
        let mut src = Vec::with_capacity(names.len());
        let mut tgt = Vec::with_capacity(names.len());
        for m in &raw.morphisms {
            src.push(lookup(&obj_index, &m.src, "object")?);
            tgt.push(lookup(&obj_index, &m.tgt, "object")?);
        }
        let mut identity = vec![usize::MAX; raw.objects.len()];
        for (o, m) in &raw.identities {
            let o = lookup(&obj_index, o, "object")?;
            let m = lookup(&mor_index, m, "morphism")?;
            identity[o] = m;
        }
        if let Some(o) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(Error::MalformedTable(format!("object {} has no identity", raw.objects[o])));
        }
        let n = names.len();
        let mut comp = vec![None; n * n];
        for [g, f, gf] in &raw.comp {
            let g = lookup(&mor_index, g, "morphism")?;
            let f = lookup(&mor_index, f, "morphism")?;
            let gf = lookup(&mor_index, gf, "morphism")?;
            if tgt[f] != src[g] {
                return Err(Error::MalformedTable(format!(
                    "comp entry ({}, {}) is not a composable pair",
                    names[g], names[f]
                )));
            }
            if src[gf] != src[f] || tgt[gf] != tgt[g] {
                return Err(Error::MalformedTable(format!(
                    "comp entry ({}, {}) = {} has wrong endpoints",
                    names[g], names[f], names[gf]
                )));
            }
            if let Some(old) = comp[g * n + f] {
                if old != gf {
                    return Err(Error::MalformedTable(format!("comp entry ({}, {}) given twice", names[g], names[f])));
                }
            }
            comp[g * n + f] = Some(gf);
        }
        let mut inverse = vec![None; n];
        for [f, finv] in &raw.isos {
            let f = lookup(&mor_index, f, "morphism")?;
            let finv = lookup(&mor_index, finv, "morphism")?;
            inverse[f] = Some(finv);
            inverse[finv] = Some(f);
        }
        Ok(FinCategory {
            objects: raw.objects.clone(),
            morphisms: names,
            src,
            tgt,
            identity,
            comp,
            inverse,
            obj_index,
            mor_index,
        })
    }

    /// Every violated axiom: identity typing, totality, unit laws, associativity, iso flags.
    pub fn violations(&self) -> Vec<Error> {
        let mut out = Vec::new();
        for (o, &i) in self.identity.iter().enumerate() {
            if self.src[i] != o || self.tgt[i] != o {
                out.push(axiom("identity", format!("{} for {}", self.morphisms[i], self.objects[o])));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let n = self.num_morphisms();
        for g in 0..n {
            for f in 0..n {
                if self.tgt[f] == self.src[g] && self.comp(g, f).is_none() {
                    out.push(axiom("totality", format!("({}, {})", self.morphisms[g], self.morphisms[f])));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..n {
            let l = self.comp(self.identity[self.tgt[f]], f);
            let r = self.comp(f, self.identity[self.src[f]]);
            if l != Some(f) || r != Some(f) {
                out.push(axiom("unit", self.morphisms[f].clone()));
            }
        }
        for h in 0..n {
            for g in 0..n {
                if self.tgt[g] != self.src[h] {
                    continue;
                }
                let hg = self.comp(h, g).unwrap();
                for f in 0..n {
                    if self.tgt[f] != self.src[g] {
                        continue;
                    }
                    let gf = self.comp(g, f).unwrap();
                    if self.comp(hg, f) != self.comp(h, gf) {
                        out.push(axiom(
                            "associativity",
                            format!("({}, {}, {})", self.morphisms[h], self.morphisms[g], self.morphisms[f]),
                        ));
                    }
                }
            }
        }
        for f in 0..n {
            if let Some(g) = self.inverse[f] {
                let ok = self.tgt[f] == self.src[g]
                    && self.tgt[g] == self.src[f]
                    && self.comp(g, f).map(|m| self.is_identity(m)) == Some(true)
                    && self.comp(f, g).map(|m| self.is_identity(m)) == Some(true);
                if !ok {
                    out.push(axiom("iso", format!("({}, {})", self.morphisms[f], self.morphisms[g])));
                }
            }
        }
        out
    }

    /// Replace the declared iso flags by a brute-force search for inverses.
    pub fn infer_isos(&mut self) {
        let n = self.num_morphisms();
        for f in 0..n {
            self.inverse[f] = (0..n).find(|&g| {
                self.tgt[f] == self.src[g]
                    && self.tgt[g] == self.src[f]
                    && self.comp(g, f).map(|m| self.is_identity(m)) == Some(true)
                    && self.comp(f, g).map(|m| self.is_identity(m)) == Some(true)
            });
        }
    }

    pub fn to_json(&self) -> CatJson {
        let n = self.num_morphisms();
        let mut comp = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.comp(g, f) {
                    comp.push([self.morphisms[g].clone(), self.morphisms[f].clone(), self.morphisms[gf].clone()]);
                }
            }
        }
        let mut isos = Vec::new();
        for f in 0..n {
            if let Some(g) = self.inverse[f] {
                if f <= g {
                    isos.push([self.morphisms[f].clone(), self.morphisms[g].clone()]);
                }
            }
        }
        CatJson {
            objects: self.objects.clone(),
            morphisms: (0..n)
                .map(|m| ArrowJson {
                    id: self.morphisms[m].clone(),
                    src: self.objects[self.src[m]].clone(),
                    tgt: self.objects[self.tgt[m]].clone(),
                })
                .collect(),
            identities: (0..self.num_objects())
                .map(|o| (self.objects[o].clone(), self.morphisms[self.identity[o]].clone()))
                .collect(),
            comp,
            isos,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m]
    }

    pub fn obj(&self, name: &str) -> Result<Obj> {
        lookup(&self.obj_index, name, "object")
    }

    pub fn mor(&self, name: &str) -> Result<Mor> {
        lookup(&self.mor_index, name, "morphism")
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.src[m]
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.tgt[m]
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.src[m]] == m
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        self.inverse[m]
    }

    /// Table lookup of `g ∘ f`; `None` when not composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp[g * self.morphisms.len() + f]
    }

    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        if self.tgt[f] != self.src[g] {
            return Err(Error::NotComposable(format!("{} after {}", self.morphisms[g], self.morphisms[f])));
        }
        self.comp(g, f).ok_or_else(|| {
            Error::NotComposable(format!("no entry for {} after {}", self.morphisms[g], self.morphisms[f]))
        })
    }

    /// Compose a path given first-applied first. Empty paths need a base object.
    pub fn compose_path(&self, base: Obj, path: &[Mor]) -> Result<Mor> {
        let mut acc = self.id(base);
        for &m in path {
            acc = self.compose(m, acc)?;
        }
        Ok(acc)
    }

    pub fn hom(&self, a: Obj, b: Obj) -> Vec<Mor> {
        self.morphisms().filter(|&m| self.src[m] == a && self.tgt[m] == b).collect()
    }

    /// Non-identity morphisms that are not composites of two non-identities.
    pub fn indecomposables(&self) -> Vec<Mor> {
        let n = self.num_morphisms();
        (0..n)
            .filter(|&h| {
                !self.is_identity(h)
                    && !(0..n).any(|g| {
                        !self.is_identity(g) && (0..n).any(|f| !self.is_identity(f) && self.comp(g, f) == Some(h))
                    })
            })
            .collect()
    }

    /// For a free category: the unique factorization of every morphism into
    /// indecomposables, first-applied first. `None` if some morphism has zero or
    /// several factorizations (bounded by the number of morphisms).
    pub fn free_factorizations(&self) -> Option<Vec<Vec<Mor>>> {
        let gens = self.indecomposables();
        let n = self.num_morphisms();
        let mut found: Vec<Vec<Vec<Mor>>> = vec![Vec::new(); n];
        for o in self.objects() {
            found[self.id(o)].push(Vec::new());
        }
        let mut frontier: Vec<(Mor, Vec<Mor>)> = gens.iter().map(|&g| (g, vec![g])).collect();
        let mut len = 1;
        while !frontier.is_empty() && len <= n + 1 {
            let mut next = Vec::new();
            for (m, word) in frontier {
                if self.is_identity(m) {
                    return None;
                }
                found[m].push(word.clone());
                if found[m].len() > 1 {
                    return None;
                }
                for &g in &gens {
                    if let Some(gm) = self.comp(g, m) {
                        let mut w = word.clone();
                        w.push(g);
                        next.push((gm, w));
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        if !frontier.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        for words in found {
            if words.len() != 1 {
                return None;
            }
            out.push(words.into_iter().next().unwrap());
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinTwoCategory {
    pub underlying: FinCategory,
    cells: Vec<String>,
    csrc: Vec<Mor>,
    ctgt: Vec<Mor>,
    vcomp: HashMap<(Cell, Cell), Cell>,
    hcomp: HashMap<(Cell, Cell), Cell>,
    identity2: Vec<Cell>,
    cell_index: HashMap<String, Cell>,
}

impl FinTwoCategory {
    pub fn from_json(raw: &TwoCatJson) -> Result<FinTwoCategory> {
        let d = Self::build(raw)?;
        match d.violations().into_iter().next() {
            Some(e) => Err(e),
            None => Ok(d),
        }
    }

    pub fn from_json_str(s: &str) -> Result<FinTwoCategory> {
        let raw: TwoCatJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&raw)
    }

    pub fn build(raw: &TwoCatJson) -> Result<FinTwoCategory> {
        let c = FinCategory::from_json(&raw.underlying)?;
        let names: Vec<String> = raw.two_cells.iter().map(|a| a.id.clone()).collect();
        let cell_index = index_names(&names, "2-cell")?;
        let mut csrc = Vec::new();
        let mut ctgt = Vec::new();
        for a in &raw.two_cells {
            let s = c.mor(&a.src)?;
            let t = c.mor(&a.tgt)?;
            if c.src(s) != c.src(t) || c.tgt(s) != c.tgt(t) {
                return Err(Error::MalformedTable(format!("2-cell {} between non-parallel 1-cells", a.id)));
            }
            csrc.push(s);
            ctgt.push(t);
        }
        let mut identity2 = vec![usize::MAX; c.num_morphisms()];
        for (m, a) in &raw.identity2 {
            identity2[c.mor(m)?] = lookup(&cell_index, a, "2-cell")?;
        }
        if let Some(m) = identity2.iter().position(|&a| a == usize::MAX) {
            return Err(Error::MalformedTable(format!("1-cell {} has no identity 2-cell", c.mor_name(m))));
        }
        let table = |rows: &[[String; 3]]| -> Result<HashMap<(Cell, Cell), Cell>> {
            let mut t = HashMap::new();
            for [b, a, ba] in rows {
                let b = lookup(&cell_index, b, "2-cell")?;
                let a = lookup(&cell_index, a, "2-cell")?;
                let ba = lookup(&cell_index, ba, "2-cell")?;
                t.insert((b, a), ba);
            }
            Ok(t)
        };
        let vcomp = table(&raw.vcomp)?;
        let hcomp = table(&raw.hcomp)?;
        Ok(FinTwoCategory { underlying: c, cells: names, csrc, ctgt, vcomp, hcomp, identity2, cell_index })
    }

    pub fn violations(&self) -> Vec<Error> {
        let c = &self.underlying;
        let mut out = Vec::new();
        let n = self.num_cells();
        for m in c.morphisms() {
            let i = self.identity2[m];
            if self.csrc[i] != m || self.ctgt[i] != m {
                out.push(axiom("identity2", c.mor_name(m).to_string()));
            }
        }
        for b in 0..n {
            for a in 0..n {
                let name = || format!("({}, {})", self.cells[b], self.cells[a]);
                if self.ctgt[a] == self.csrc[b] {
                    match self.vcomp(b, a) {
                        Some(ba) if self.csrc[ba] == self.csrc[a] && self.ctgt[ba] == self.ctgt[b] => {}
                        Some(_) => out.push(axiom("vcomp boundary", name())),
                        None => out.push(axiom("vcomp totality", name())),
                    }
                }
                if c.tgt(self.csrc[a]) == c.src(self.csrc[b]) {
                    let s = c.comp(self.csrc[b], self.csrc[a]).unwrap();
                    let t = c.comp(self.ctgt[b], self.ctgt[a]).unwrap();
                    match self.hcomp(b, a) {
                        Some(ba) if self.csrc[ba] == s && self.ctgt[ba] == t => {}
                        Some(_) => out.push(axiom("hcomp boundary", name())),
                        None => out.push(axiom("hcomp totality", name())),
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            let s = self.csrc[a];
            let t = self.ctgt[a];
            if self.vcomp(self.identity2[t], a) != Some(a) || self.vcomp(a, self.identity2[s]) != Some(a) {
                out.push(axiom("vcomp unit", self.cells[a].clone()));
            }
            let x = c.src(s);
            let y = c.tgt(s);
            let ix = self.identity2[c.id(x)];
            let iy = self.identity2[c.id(y)];
            if self.hcomp(iy, a) != Some(a) || self.hcomp(a, ix) != Some(a) {
                out.push(axiom("hcomp unit", self.cells[a].clone()));
            }
        }
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(gf) = c.comp(g, f) {
                    if self.hcomp(self.identity2[g], self.identity2[f]) != Some(self.identity2[gf]) {
                        out.push(axiom("identity2 functoriality", format!("({}, {})", c.mor_name(g), c.mor_name(f))));
                    }
                }
            }
        }
        for cc in 0..n {
            for b in 0..n {
                for a in 0..n {
                    let name = || format!("({}, {}, {})", self.cells[cc], self.cells[b], self.cells[a]);
                    if let (Some(cb), Some(ba)) = (self.vcomp(cc, b), self.vcomp(b, a)) {
                        if self.vcomp(cb, a) != self.vcomp(cc, ba) {
                            out.push(axiom("vcomp associativity", name()));
                        }
                    }
                    if let (Some(cb), Some(ba)) = (self.hcomp(cc, b), self.hcomp(b, a)) {
                        if self.hcomp(cb, a) != self.hcomp(cc, ba) {
                            out.push(axiom("hcomp associativity", name()));
                        }
                    }
                }
            }
        }
        for b in 0..n {
            for a in 0..n {
                let Some(ba) = self.vcomp(b, a) else { continue };
                for d in 0..n {
                    for cc in 0..n {
                        let Some(dc) = self.vcomp(d, cc) else { continue };
                        let (Some(bd), Some(ac)) = (self.hcomp(b, d), self.hcomp(a, cc)) else {
                            continue;
                        };
                        let lhs = self.hcomp(ba, dc);
                        let rhs = self.vcomp(bd, ac);
                        if lhs.is_some() && lhs != rhs {
                            out.push(axiom(
                                "interchange",
                                format!(
                                    "({}, {}, {}, {})",
                                    self.cells[b], self.cells[a], self.cells[d], self.cells[cc]
                                ),
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> TwoCatJson {
        let c = &self.underlying;
        let table = |t: &HashMap<(Cell, Cell), Cell>| {
            let mut rows: Vec<[String; 3]> = t
                .iter()
                .map(|(&(b, a), &ba)| [self.cells[b].clone(), self.cells[a].clone(), self.cells[ba].clone()])
                .collect();
            rows.sort();
            rows
        };
        TwoCatJson {
            underlying: c.to_json(),
            two_cells: (0..self.num_cells())
                .map(|a| ArrowJson {
                    id: self.cells[a].clone(),
                    src: c.mor_name(self.csrc[a]).to_string(),
                    tgt: c.mor_name(self.ctgt[a]).to_string(),
                })
                .collect(),
            vcomp: table(&self.vcomp),
            hcomp: table(&self.hcomp),
            identity2: c
                .morphisms()
                .map(|m| (c.mor_name(m).to_string(), self.cells[self.identity2[m]].clone()))
                .collect(),
        }
    }

    /// Reverse the 1-morphisms; 2-cells keep their direction.
    pub fn op1(&self) -> FinTwoCategory {
        let mut raw = self.to_json();
        for m in &mut raw.underlying.morphisms {
            std::mem::swap(&mut m.src, &mut m.tgt);
        }
        for row in &mut raw.underlying.comp {
            row.swap(0, 1);
        }
        for row in &mut raw.hcomp {
            row.swap(0, 1);
        }
        FinTwoCategory::build(&raw).expect("op1 of a valid 2-category is valid")
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_name(&self, a: Cell) -> &str {
        &self.cells[a]
    }

    pub fn cell(&self, name: &str) -> Result<Cell> {
        lookup(&self.cell_index, name, "2-cell")
    }

    pub fn cell_src(&self, a: Cell) -> Mor {
        self.csrc[a]
    }

    pub fn cell_tgt(&self, a: Cell) -> Mor {
        self.ctgt[a]
    }

    pub fn identity2(&self, m: Mor) -> Cell {
        self.identity2[m]
    }

    /// `b ∘₂ a`, `a` first.
    pub fn vcomp(&self, b: Cell, a: Cell) -> Option<Cell> {
        self.vcomp.get(&(b, a)).copied()
    }

    /// `b ∘₁ a`, `a` first.
    pub fn hcomp(&self, b: Cell, a: Cell) -> Option<Cell> {
        self.hcomp.get(&(b, a)).copied()
    }

    pub fn cells_between(&self, s: Mor, t: Mor) -> Vec<Cell> {
        (0..self.num_cells()).filter(|&a| self.csrc[a] == s && self.ctgt[a] == t).collect()
    }
}

/// `left ⊣ right` with unit `id ⇒ right ∘ left` and counit `left ∘ right ⇒ id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdjunctionDatum {
    pub left: Mor,
    pub right: Mor,
    pub unit: Cell,
    pub counit: Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionJson {
    pub left: String,
    pub right: String,
    pub unit: String,
    pub counit: String,
}

impl AdjunctionDatum {
    pub fn to_json(&self, d: &FinTwoCategory) -> AdjunctionJson {
        AdjunctionJson {
            left: d.underlying.mor_name(self.left).to_string(),
            right: d.underlying.mor_name(self.right).to_string(),
            unit: d.cell_name(self.unit).to_string(),
            counit: d.cell_name(self.counit).to_string(),
        }
    }

    pub fn from_json(d: &FinTwoCategory, j: &AdjunctionJson) -> Result<AdjunctionDatum> {
        Ok(AdjunctionDatum {
            left: d.underlying.mor(&j.left)?,
            right: d.underlying.mor(&j.right)?,
            unit: d.cell(&j.unit)?,
            counit: d.cell(&j.counit)?,
        })
    }
}

/// Both snake composites evaluated through the tables.
pub fn check_adjunction(d: &FinTwoCategory, a: &AdjunctionDatum) -> Result<bool> {
    let c = &d.underlying;
    let (f, g) = (a.left, a.right);
    let x = c.src(f);
    let y = c.tgt(f);
    let gf = c.comp(g, f);
    let fg = c.comp(f, g);
    let ok = c.src(g) == y
        && c.tgt(g) == x
        && d.cell_src(a.unit) == c.id(x)
        && Some(d.cell_tgt(a.unit)) == gf
        && Some(d.cell_src(a.counit)) == fg
        && d.cell_tgt(a.counit) == c.id(y);
    if !ok {
        return Err(Error::BoundaryMismatch(format!(
            "adjunction datum ({}, {}, {}, {})",
            c.mor_name(f),
            c.mor_name(g),
            d.cell_name(a.unit),
            d.cell_name(a.counit)
        )));
    }
    let idf = d.identity2(f);
    let idg = d.identity2(g);
    let snake_f = d.hcomp(idf, a.unit).zip(d.hcomp(a.counit, idf)).and_then(|(lower, upper)| d.vcomp(upper, lower));
    let snake_g = d.hcomp(a.unit, idg).zip(d.hcomp(idg, a.counit)).and_then(|(lower, upper)| d.vcomp(upper, lower));
    Ok(snake_f == Some(idf) && snake_g == Some(idg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sinister {
    /// One datum per 1-morphism, indexed by morphism.
    Table(Vec<AdjunctionDatum>),
    /// The first 1-morphism without a right adjoint.
    Failure(Mor),
}

pub fn find_adjunction(d: &FinTwoCategory, f: Mor) -> Option<AdjunctionDatum> {
    let c = &d.underlying;
    let x = c.src(f);
    let y = c.tgt(f);
    for g in c.hom(y, x) {
        let gf = c.comp(g, f).unwrap();
        let fg = c.comp(f, g).unwrap();
        for unit in d.cells_between(c.id(x), gf) {
            for counit in d.cells_between(fg, c.id(y)) {
                let datum = AdjunctionDatum { left: f, right: g, unit, counit };
                if check_adjunction(d, &datum) == Ok(true) {
                    return Some(datum);
                }
            }
        }
    }
    None
}

pub fn check_sinister(d: &FinTwoCategory) -> Sinister {
    let mut table = Vec::new();
    for f in d.underlying.morphisms() {
        match find_adjunction(d, f) {
            Some(a) => table.push(a),
            None => return Sinister::Failure(f),
        }
    }
    Sinister::Table(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn walking_arrow_is_valid() {
        let c = fixtures::walking_arrow();
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_morphisms(), 3);
        let f = c.mor("f").unwrap();
        let idy = c.id(c.obj("y").unwrap());
        assert_eq!(c.compose(idy, f), Ok(f));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = fixtures::walking_arrow().to_json();
        raw.comp.retain(|r| !(r[0] == "id_y" && r[1] == "f"));
        let err = FinCategory::from_json(&raw).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref axiom, .. } if axiom == "totality"));
    }

    #[test]
    fn perturbed_cyclic_table_has_associativity_witness() {
        let mut raw = fixtures::cyclic(3).to_json();
        for r in &mut raw.comp {
            if r[0] == "a1" && r[1] == "a2" {
                r[2] = "a1".into();
            }
        }
        let c = FinCategory::build(&raw).unwrap();
        let v = c.violations();
        // brute-force oracle: recompute the witnesses independently
        let n = c.num_morphisms();
        let mut expected = Vec::new();
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    let l = c.comp(c.comp(h, g).unwrap(), f);
                    let r = c.comp(h, c.comp(g, f).unwrap());
                    if l != r {
                        expected.push((h, g, f));
                    }
                }
            }
        }
        assert!(!expected.is_empty());
        assert!(v
            .iter()
            .any(|e| matches!(e, Error::AxiomViolation { axiom, .. } if axiom == "associativity" || axiom == "unit")));
    }

    #[test]
    fn compose_examples() {
        let c = fixtures::ordinal(2);
        let f = c.mor("01").unwrap();
        let g = c.mor("12").unwrap();
        assert_eq!(c.mor_name(c.compose(g, f).unwrap()), "02");
        let z = fixtures::cyclic(3);
        let a = z.mor("a1").unwrap();
        assert_eq!(z.mor_name(z.compose(a, a).unwrap()), "a2");
        assert!(c.compose(f, g).is_err());
    }

    #[test]
    fn empty_and_point_categories() {
        let e = FinCategory::from_json(&CatJson::default()).unwrap();
        assert_eq!(e.num_morphisms(), 0);
        let p = fixtures::ordinal(0);
        assert_eq!(p.num_morphisms(), 1);
        assert!(p.free_factorizations().is_some());
    }

    #[test]
    fn infer_isos_finds_group_inverses() {
        let mut z = fixtures::cyclic(3);
        z.infer_isos();
        let a1 = z.mor("a1").unwrap();
        assert_eq!(z.inverse(a1), Some(z.mor("a2").unwrap()));
        let mut w = fixtures::walking_arrow();
        w.infer_isos();
        assert_eq!(w.inverse(w.mor("f").unwrap()), None);
    }

    #[test]
    fn json_round_trip() {
        let c = fixtures::cyclic(3);
        let again = FinCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn adjunction_examples() {
        let t = fixtures::terminal_2cat();
        let x = t.underlying.obj("*").unwrap();
        let idx = t.underlying.id(x);
        let i2 = t.identity2(idx);
        let datum = AdjunctionDatum { left: idx, right: idx, unit: i2, counit: i2 };
        assert_eq!(check_adjunction(&t, &datum), Ok(true));

        let e = fixtures::adjoint_equivalence();
        let f = e.underlying.mor("f").unwrap();
        let g = e.underlying.mor("g").unwrap();
        let datum = AdjunctionDatum {
            left: f,
            right: g,
            unit: e.identity2(e.underlying.id(e.underlying.obj("x").unwrap())),
            counit: e.identity2(e.underlying.id(e.underlying.obj("y").unwrap())),
        };
        assert_eq!(check_adjunction(&e, &datum), Ok(true));

        let bad = fixtures::adjoint_equivalence_with_twist();
        let f = bad.underlying.mor("f").unwrap();
        let g = bad.underlying.mor("g").unwrap();
        let idx = bad.underlying.id(bad.underlying.obj("x").unwrap());
        let datum =
            AdjunctionDatum { left: f, right: g, unit: bad.identity2(idx), counit: bad.cell("t_id_y").unwrap() };
        assert_eq!(check_adjunction(&bad, &datum), Ok(false));
        let wrong = AdjunctionDatum { counit: bad.identity2(idx), ..datum };
        assert!(matches!(check_adjunction(&bad, &wrong), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn sinister_examples() {
        match check_sinister(&fixtures::terminal_2cat()) {
            Sinister::Table(t) => assert_eq!(t.len(), 1),
            Sinister::Failure(_) => panic!(),
        }
        let e = fixtures::adjoint_equivalence();
        let Sinister::Table(t) = check_sinister(&e) else { panic!() };
        let f = e.underlying.mor("f").unwrap();
        let g = e.underlying.mor("g").unwrap();
        assert_eq!(t[f].right, g);
        assert_eq!(t[g].right, f);
        let w = fixtures::locally_discrete(&fixtures::walking_arrow());
        assert_eq!(check_sinister(&w), Sinister::Failure(w.underlying.mor("f").unwrap()));
    }

    #[test]
    fn fixtures_satisfy_interchange() {
        for d in
            [fixtures::terminal_2cat(), fixtures::adjoint_equivalence(), fixtures::adjoint_equivalence_with_twist()]
        {
            assert!(d.violations().is_empty());
        }
    }

    #[test]
    fn adjunction_check_is_invariant_under_op1() {
        for d in [fixtures::adjoint_equivalence(), fixtures::adjoint_equivalence_with_twist()] {
            let op = d.op1();
            assert!(op.violations().is_empty());
            let c = &d.underlying;
            for f in c.morphisms() {
                for g in c.hom(c.tgt(f), c.src(f)) {
                    let gf = c.comp(g, f).unwrap();
                    let fg = c.comp(f, g).unwrap();
                    for unit in d.cells_between(c.id(c.src(f)), gf) {
                        for counit in d.cells_between(fg, c.id(c.tgt(f))) {
                            let a = AdjunctionDatum { left: f, right: g, unit, counit };
                            let b = AdjunctionDatum { left: g, right: f, unit, counit };
                            assert_eq!(check_adjunction(&d, &a), check_adjunction(&op, &b));
                        }
                    }
                }
            }
        }
    }
}
