//! Extension of a functor `X → τ₁D` to generators of the zigzag construction, given
//! adjunction data in `D`, and evaluation of engine relations through `D`'s tables.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::finpres::{check_adjunction, AdjunctionDatum, Cell, FinCategory, FinTwoCategory, Mor, Obj};
use crate::zigzag::{self, Dir, GenLetter, GeneratorWord, Leg, StackCell, WordLayer, Zigzag, DEFAULT_DEPTH};
use crate::{par, Error, Result, Verdict};

/// Object and morphism assignment, indexed by `X`'s objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorMap {
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorMap {
    /// The functor sending everything to `o` and its identity.
    pub fn constant(x: &FinCategory, d: &FinCategory, o: Obj) -> FunctorMap {
        FunctorMap { objects: vec![o; x.num_objects()], morphisms: vec![d.id(o); x.num_morphisms()] }
    }

    /// Match objects and morphisms by name.
    pub fn by_name(x: &FinCategory, d: &FinCategory) -> Result<FunctorMap> {
        Ok(FunctorMap {
            objects: x.objects().map(|o| d.obj(x.obj_name(o))).collect::<Result<_>>()?,
            morphisms: x.morphisms().map(|m| d.mor(x.mor_name(m))).collect::<Result<_>>()?,
        })
    }

    pub fn from_json(x: &FinCategory, d: &FinCategory, j: &FunctorJson) -> Result<FunctorMap> {
        let look = |m: &BTreeMap<String, String>, k: &str| {
            m.get(k).cloned().ok_or_else(|| Error::NotAFunctor(format!("no image for {k:?}")))
        };
        Ok(FunctorMap {
            objects: x.objects().map(|o| d.obj(&look(&j.objects, x.obj_name(o))?)).collect::<Result<_>>()?,
            morphisms: x.morphisms().map(|m| d.mor(&look(&j.morphisms, x.mor_name(m))?)).collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self, x: &FinCategory, d: &FinCategory) -> FunctorJson {
        FunctorJson {
            objects: x
                .objects()
                .map(|o| (x.obj_name(o).to_string(), d.obj_name(self.objects[o]).to_string()))
                .collect(),
            morphisms: x
                .morphisms()
                .map(|m| (x.mor_name(m).to_string(), d.mor_name(self.morphisms[m]).to_string()))
                .collect(),
        }
    }

    /// Endpoints, identities and composites, checked against both tables.
    pub fn check(&self, x: &FinCategory, d: &FinCategory) -> Result<()> {
        if self.objects.len() != x.num_objects() || self.morphisms.len() != x.num_morphisms() {
            return Err(Error::NotAFunctor("assignment has the wrong size".into()));
        }
        for m in x.morphisms() {
            let fm = self.morphisms[m];
            if d.src(fm) != self.objects[x.src(m)] || d.tgt(fm) != self.objects[x.tgt(m)] {
                return Err(Error::NotAFunctor(format!("endpoints of {}", x.mor_name(m))));
            }
        }
        for o in x.objects() {
            if self.morphisms[x.id(o)] != d.id(self.objects[o]) {
                return Err(Error::NotAFunctor(format!("identity of {}", x.obj_name(o))));
            }
        }
        for g in x.morphisms() {
            for f in x.morphisms() {
                if let Some(gf) = x.comp(g, f) {
                    if d.comp(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                        return Err(Error::NotAFunctor(format!("composite {} ∘ {}", x.mor_name(g), x.mor_name(f))));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Images of the generators of the zigzag construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub functor: FunctorMap,
    /// Per morphism `f` of `X`: the chosen datum for `F(f)`.
    pub data: Vec<AdjunctionDatum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

/// Extend `F` using the first datum in `table` whose left adjoint is `F(f)`.
pub fn extend(
    x: &FinCategory,
    d: &FinTwoCategory,
    functor: &FunctorMap,
    table: &[AdjunctionDatum],
) -> Result<Extension> {
    let c = &d.underlying;
    functor.check(x, c)?;
    let mut data = Vec::with_capacity(x.num_morphisms());
    for m in x.morphisms() {
        let fm = functor.morphisms[m];
        let datum = *table
            .iter()
            .find(|a| a.left == fm)
            .ok_or_else(|| Error::MissingAdjunctionData(c.mor_name(fm).to_string()))?;
        if !check_adjunction(d, &datum)? {
            return Err(Error::MissingAdjunctionData(format!("{}: snake composites fail", c.mor_name(fm))));
        }
        data.push(datum);
    }
    Ok(Extension { functor: functor.clone(), data })
}

impl Extension {
    pub fn leg(&self, l: Leg) -> Mor {
        match l.dir {
            Dir::Fwd => self.functor.morphisms[l.mor],
            Dir::Bwd => self.data[l.mor].right,
        }
    }

    /// The composite in `D` of a zigzag's legs.
    pub fn zigzag(&self, d: &FinTwoCategory, z: &Zigzag) -> Mor {
        let path: Vec<Mor> = z.legs.iter().map(|&l| self.leg(l)).collect();
        d.underlying.compose_path(self.functor.objects[z.start], &path).expect("images of legs chain")
    }

    pub fn letter(&self, d: &FinTwoCategory, l: GenLetter) -> Cell {
        match l {
            GenLetter::Id(dir, m) => d.identity2(self.leg(Leg { dir, mor: m })),
            GenLetter::Eta(m) => self.data[m].unit,
            GenLetter::Eps(m) => self.data[m].counit,
        }
    }

    pub fn layer(&self, d: &FinTwoCategory, layer: &WordLayer) -> Option<Cell> {
        let mut acc = d.identity2(d.underlying.id(self.functor.objects[layer.start]));
        for &l in &layer.letters {
            acc = d.hcomp(self.letter(d, l), acc)?;
        }
        Some(acc)
    }

    /// The composite 2-cell in `D`, or `None` if a table entry is missing.
    pub fn word(&self, d: &FinTwoCategory, w: &GeneratorWord) -> Option<Cell> {
        let mut acc = d.identity2(self.zigzag(d, &w.source));
        for layer in &w.layers {
            acc = d.vcomp(self.layer(d, layer)?, acc)?;
        }
        Some(acc)
    }

    /// Image of a stack cell through its generator normal form.
    pub fn cell(&self, x: &FinCategory, d: &FinTwoCategory, cell: &StackCell) -> Option<Cell> {
        self.word(d, &zigzag::normalize(x, cell))
    }

    pub fn generator_images(&self, x: &FinCategory, d: &FinTwoCategory) -> Vec<GeneratorImage> {
        let c = &d.underlying;
        let mut out = Vec::new();
        for m in x.morphisms() {
            let name = x.mor_name(m);
            let a = &self.data[m];
            out.push(GeneratorImage { generator: format!("{name}→"), image: c.mor_name(a.left).to_string() });
            out.push(GeneratorImage { generator: format!("{name}←"), image: c.mor_name(a.right).to_string() });
            out.push(GeneratorImage { generator: format!("η_{name}"), image: d.cell_name(a.unit).to_string() });
            out.push(GeneratorImage { generator: format!("ε_{name}"), image: d.cell_name(a.counit).to_string() });
        }
        out
    }

    /// Restriction along `X → Z`: objects to themselves, `f` to the one-leg zigzag.
    pub fn restrict(&self, x: &FinCategory, d: &FinTwoCategory) -> FunctorMap {
        let morphisms = x
            .morphisms()
            .map(|m| {
                let z = zigzag::reduce_zigzag(x, x.src(m), &[Leg::fwd(m)]).expect("single leg");
                self.zigzag(d, &z)
            })
            .collect();
        FunctorMap { objects: self.functor.objects.clone(), morphisms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Snake,
    Companion,
    Exchange,
    Identity,
    Class,
}

/// Two engine cells the engine judges equal.
#[derive(Debug, Clone)]
pub struct RelationSample {
    pub kind: SampleKind,
    pub label: String,
    pub lhs: StackCell,
    pub rhs: StackCell,
}

/// Snakes, η/ε built from companion squares against their generators, seeded
/// exchange steps, identity rows, and class-mates of a small enumeration.
pub fn relation_samples(x: &FinCategory, seed: u64) -> Vec<RelationSample> {
    let mut out = Vec::new();
    let gen = |w: &GeneratorWord| w.eval(x).expect("well formed");
    for f in x.morphisms() {
        let name = x.mor_name(f);
        let (l, r) = zigzag::snake_words(x, f);
        for (side, w) in [("left", l), ("right", r)] {
            let c = gen(&w);
            out.push(RelationSample {
                kind: SampleKind::Snake,
                label: format!("{side} snake of {name}"),
                rhs: StackCell::identity(&c.source),
                lhs: c,
            });
        }
        for (what, cell, letter) in
            [("η", zigzag::eta(x, f), GenLetter::Eta(f)), ("ε", zigzag::epsilon(x, f), GenLetter::Eps(f))]
        {
            let w = GeneratorWord {
                source: cell.source.clone(),
                layers: vec![WordLayer { start: cell.source.start, letters: vec![letter] }],
            };
            out.push(RelationSample {
                kind: SampleKind::Companion,
                label: format!("{what}_{name} from E/H"),
                lhs: cell,
                rhs: gen(&w),
            });
        }
    }
    let t = zigzag::truncate1(x, 2);
    for z in t.homs.values().flatten() {
        let id = GeneratorWord::identity(z);
        let row = zigzag::Row::identity(x, z.start, &z.legs);
        let lhs = StackCell { source: z.clone(), target: z.clone(), rows: vec![row] };
        out.push(RelationSample {
            kind: SampleKind::Identity,
            label: format!("id {}", z.display(x)),
            lhs,
            rhs: gen(&id),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    for _ in 0..200 {
        if n == 20 {
            break;
        }
        let w = zigzag::random_word(x, &mut rng, 2, 3);
        let c = gen(&w);
        for i in 0..c.rows.len().saturating_sub(1) {
            if let Ok(m) = zigzag::exchange_step(x, &c, i, None) {
                out.push(RelationSample {
                    kind: SampleKind::Exchange,
                    label: format!("{} at {i}", w.display(x)),
                    lhs: c.clone(),
                    rhs: m,
                });
                n += 1;
            }
        }
    }
    for f in x.morphisms().filter(|&f| !x.is_identity(f)) {
        let src = zigzag::reduce_zigzag(x, x.src(f), &[Leg::fwd(f), Leg::bwd(f)]).expect("chain");
        let mut by_tgt: BTreeMap<Zigzag, ()> = BTreeMap::new();
        for w in zigzag::words_up_to(x, &src, 2) {
            by_tgt.insert(w.target(x).expect("well formed"), ());
        }
        for tgt in by_tgt.keys() {
            let en = zigzag::enumerate_cells(x, &src, tgt, 2, DEFAULT_DEPTH);
            for class in &en.classes {
                for &i in &class[1..] {
                    out.push(RelationSample {
                        kind: SampleKind::Class,
                        label: format!("{} = {}", en.words[class[0]].display(x), en.words[i].display(x)),
                        lhs: gen(&en.words[class[0]]),
                        rhs: gen(&en.words[i]),
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleResult {
    pub kind: SampleKind,
    pub label: String,
    pub engine: Verdict,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub samples: Vec<SampleResult>,
    pub passed: usize,
    pub failed: usize,
    pub restriction_ok: bool,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.restriction_ok
    }
}

/// Evaluate both sides of every sample in `D` and compare.
pub fn verify_extension(
    x: &FinCategory,
    d: &FinTwoCategory,
    ext: &Extension,
    samples: &[RelationSample],
) -> VerifyReport {
    let results: Vec<SampleResult> = par::map(samples, |s| {
        let engine = zigzag::equal(x, &s.lhs, &s.rhs, DEFAULT_DEPTH).verdict;
        let (a, b) = (ext.cell(x, d, &s.lhs), ext.cell(x, d, &s.rhs));
        SampleResult {
            kind: s.kind,
            label: s.label.clone(),
            engine,
            pass: engine == Verdict::Equal && a.is_some() && a == b,
            lhs: a.map(|c| d.cell_name(c).to_string()),
            rhs: b.map(|c| d.cell_name(c).to_string()),
        }
    });
    let passed = results.iter().filter(|r| r.pass).count();
    VerifyReport {
        failed: results.len() - passed,
        passed,
        samples: results,
        restriction_ok: ext.restrict(x, d) == ext.functor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finpres::{check_sinister, Sinister};
    use crate::fixtures;

    fn table(d: &FinTwoCategory) -> Vec<AdjunctionDatum> {
        match check_sinister(d) {
            Sinister::Table(t) => t,
            Sinister::Failure(m) => panic!("{} has no right adjoint", d.underlying.mor_name(m)),
        }
    }

    #[test]
    fn arrow_into_equivalence() {
        let x = fixtures::walking_arrow();
        let d = fixtures::adjoint_equivalence();
        let f = FunctorMap::by_name(&x, &d.underlying).unwrap();
        let ext = extend(&x, &d, &f, &table(&d)).unwrap();
        let fx = x.mor("f").unwrap();
        let c = &d.underlying;
        assert_eq!(c.mor_name(ext.data[fx].right), "g");
        assert_eq!(ext.data[fx].unit, d.identity2(c.id(c.obj("x").unwrap())));
        assert_eq!(ext.data[fx].counit, d.identity2(c.id(c.obj("y").unwrap())));
        let r = verify_extension(&x, &d, &ext, &relation_samples(&x, 0));
        assert!(r.ok(), "{:?}", r.samples.iter().filter(|s| !s.pass).collect::<Vec<_>>());
        for k in
            [SampleKind::Snake, SampleKind::Companion, SampleKind::Exchange, SampleKind::Identity, SampleKind::Class]
        {
            assert!(r.samples.iter().any(|s| s.kind == k), "{k:?}");
        }
    }

    #[test]
    fn constant_functor_maps_to_identities() {
        let x = fixtures::walking_arrow();
        let d = fixtures::adjoint_equivalence();
        let o = d.underlying.obj("y").unwrap();
        let ext = extend(&x, &d, &FunctorMap::constant(&x, &d.underlying, o), &table(&d)).unwrap();
        let id = d.underlying.id(o);
        for a in &ext.data {
            assert_eq!((a.left, a.right, a.unit, a.counit), (id, id, d.identity2(id), d.identity2(id)));
        }
        assert!(verify_extension(&x, &d, &ext, &relation_samples(&x, 1)).ok());
    }

    #[test]
    fn terminal_target() {
        let x = fixtures::walking_arrow();
        let d = fixtures::terminal_2cat();
        let ext = extend(&x, &d, &FunctorMap::constant(&x, &d.underlying, 0), &table(&d)).unwrap();
        assert!(verify_extension(&x, &d, &ext, &relation_samples(&x, 2)).ok());
    }

    #[test]
    fn bad_inputs_fail_before_verification() {
        let x = fixtures::walking_arrow();
        let d = fixtures::adjoint_equivalence();
        let c = &d.underlying;
        let mut f = FunctorMap::by_name(&x, c).unwrap();
        let mut t = table(&d);
        let fd = c.mor("f").unwrap();
        t.iter_mut().find(|a| a.left == fd).unwrap().unit = d.identity2(fd);
        assert!(matches!(extend(&x, &d, &f, &t), Err(Error::BoundaryMismatch(_))));
        t.retain(|a| a.left != fd);
        assert!(matches!(extend(&x, &d, &f, &t), Err(Error::MissingAdjunctionData(_))));
        f.morphisms[x.mor("f").unwrap()] = c.mor("g").unwrap();
        assert!(matches!(extend(&x, &d, &f, &table(&d)), Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn every_table_on_the_twisted_equivalence_verifies() {
        let x = fixtures::walking_arrow();
        let d = fixtures::adjoint_equivalence_with_twist();
        let c = &d.underlying;
        let (fd, gd) = (c.mor("f").unwrap(), c.mor("g").unwrap());
        let (ox, oy) = (c.obj("x").unwrap(), c.obj("y").unwrap());
        let base = table(&d);
        let samples = relation_samples(&x, 3);
        let mut tables = 0;
        for unit in d.cells_between(c.id(ox), c.comp(gd, fd).unwrap()) {
            for counit in d.cells_between(c.comp(fd, gd).unwrap(), c.id(oy)) {
                let datum = AdjunctionDatum { left: fd, right: gd, unit, counit };
                if check_adjunction(&d, &datum) != Ok(true) {
                    continue;
                }
                let mut t = vec![datum];
                t.extend(base.iter().filter(|a| a.left != fd));
                let ext = extend(&x, &d, &FunctorMap::by_name(&x, c).unwrap(), &t).unwrap();
                assert!(verify_extension(&x, &d, &ext, &samples).ok());
                tables += 1;
            }
        }
        assert_eq!(tables, 2);
    }

    #[test]
    fn functor_json_round_trip() {
        let x = fixtures::walking_arrow();
        let d = fixtures::adjoint_equivalence();
        let f = FunctorMap::by_name(&x, &d.underlying).unwrap();
        let j = f.to_json(&x, &d.underlying);
        assert_eq!(FunctorMap::from_json(&x, &d.underlying, &j).unwrap(), f);
    }
}
