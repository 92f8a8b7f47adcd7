use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{canonical, concat, equal, Dir, GenLetter, GeneratorWord, Leg, Row, WordLayer, Zigzag};
use crate::finpres::{FinCategory, Obj};
use crate::{par, Result, Verdict};

fn id_letters(legs: &[Leg]) -> Vec<GenLetter> {
    legs.iter().map(|l| GenLetter::Id(l.dir, l.mor)).collect()
}

/// Layers with exactly one `η` or `ε` letter applicable to `z`.
pub fn extensions(x: &FinCategory, z: &Zigzag) -> Vec<WordLayer> {
    let mut objs = vec![z.start];
    objs.extend(z.legs.iter().map(|l| l.to(x)));
    let mut out = Vec::new();
    for (p, &o) in objs.iter().enumerate() {
        for h in x.morphisms().filter(|&h| !x.is_identity(h) && x.src(h) == o) {
            let mut letters = id_letters(&z.legs[..p]);
            letters.push(GenLetter::Eta(h));
            letters.extend(id_letters(&z.legs[p..]));
            out.push(WordLayer { start: z.start, letters });
        }
    }
    for p in 0..z.legs.len().saturating_sub(1) {
        let (a, b) = (z.legs[p], z.legs[p + 1]);
        if a.dir == Dir::Bwd && b.dir == Dir::Fwd && a.mor == b.mor {
            let mut letters = id_letters(&z.legs[..p]);
            letters.push(GenLetter::Eps(a.mor));
            letters.extend(id_letters(&z.legs[p + 2..]));
            out.push(WordLayer { start: z.start, letters });
        }
    }
    out
}

/// All words from `src` with at most `gen_bound` generator layers.
pub fn words_up_to(x: &FinCategory, src: &Zigzag, gen_bound: usize) -> Vec<GeneratorWord> {
    let mut all = vec![GeneratorWord::identity(src)];
    let mut frontier = vec![(GeneratorWord::identity(src), src.clone())];
    for _ in 0..gen_bound {
        let mut next = Vec::new();
        for (w, z) in &frontier {
            for layer in extensions(x, z) {
                let t = layer.target(x).expect("extensions chain");
                let mut w2 = w.clone();
                w2.layers.push(layer);
                all.push(w2.clone());
                next.push((w2, t));
            }
        }
        frontier = next;
    }
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub representative: String,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct CellEnumeration {
    pub words: Vec<GeneratorWord>,
    /// Indices into `words`.
    pub classes: Vec<Vec<usize>>,
    pub unknown_pairs: usize,
    pub distinct_pairs: usize,
}

impl CellEnumeration {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn summaries(&self, x: &FinCategory) -> Vec<ClassSummary> {
        self.classes
            .iter()
            .map(|c| ClassSummary { representative: self.words[c[0]].display(x), size: c.len() })
            .collect()
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Enumerate words `src ⇒ tgt` with at most `gen_bound` generators and quotient by
/// [`equal`] at `depth`.
pub fn enumerate_cells(x: &FinCategory, src: &Zigzag, tgt: &Zigzag, gen_bound: usize, depth: usize) -> CellEnumeration {
    let words: Vec<GeneratorWord> =
        words_up_to(x, src, gen_bound).into_iter().filter(|w| w.target(x).ok().as_ref() == Some(tgt)).collect();
    let cells: Vec<_> = words.iter().map(|w| w.eval(x).expect("enumerated words evaluate")).collect();
    let keys: Vec<Vec<Row>> = par::map(&cells, |c| canonical(x, c).0.rows);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut by_key: HashMap<&Vec<Row>, usize> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        match by_key.get(k) {
            Some(&g) => groups[g].push(i),
            None => {
                by_key.insert(k, groups.len());
                groups.push(vec![i]);
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..groups.len()).flat_map(|a| (a + 1..groups.len()).map(move |b| (a, b))).collect();
    let verdicts = par::map(&pairs, |&(a, b)| equal(x, &cells[groups[a][0]], &cells[groups[b][0]], depth).verdict);
    let mut parent: Vec<usize> = (0..groups.len()).collect();
    for (&(a, b), v) in pairs.iter().zip(&verdicts) {
        if *v == Verdict::Equal {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut unknown_pairs = 0;
    let mut distinct_pairs = 0;
    for (&(a, b), v) in pairs.iter().zip(&verdicts) {
        if find(&mut parent, a) == find(&mut parent, b) {
            continue;
        }
        match v {
            Verdict::Unknown => unknown_pairs += 1,
            Verdict::Distinct => distinct_pairs += 1,
            Verdict::Equal => {}
        }
    }
    let mut merged: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (g, members) in groups.into_iter().enumerate() {
        let r = find(&mut parent, g);
        merged.entry(r).or_default().extend(members);
    }
    let classes = merged.into_values().map(|mut v| {
        v.sort();
        v
    });
    CellEnumeration { words, classes: classes.collect(), unknown_pairs, distinct_pairs }
}

/// A random well-formed word: a random reduced source zigzag followed by random
/// generator layers.
pub fn random_word<R: Rng>(x: &FinCategory, rng: &mut R, max_legs: usize, max_layers: usize) -> GeneratorWord {
    let start = rng.gen_range(0..x.num_objects());
    let mut legs = Vec::new();
    let mut cur = start;
    for _ in 0..rng.gen_range(0..=max_legs) {
        let dir = if rng.gen_bool(0.5) { Dir::Fwd } else { Dir::Bwd };
        let opts: Vec<Leg> =
            x.morphisms().map(|m| Leg { dir, mor: m }).filter(|l| l.from(x) == cur && !x.is_identity(l.mor)).collect();
        if opts.is_empty() {
            continue;
        }
        let l = opts[rng.gen_range(0..opts.len())];
        cur = l.to(x);
        legs.push(l);
    }
    let src = super::reduce_zigzag(x, start, &legs).expect("legs chain");
    let mut w = GeneratorWord::identity(&src);
    let mut z = src;
    for _ in 0..rng.gen_range(0..=max_layers) {
        let ext = extensions(x, &z);
        if ext.is_empty() {
            break;
        }
        let layer = ext[rng.gen_range(0..ext.len())].clone();
        z = layer.target(x).expect("extensions chain");
        w.layers.push(layer);
    }
    w
}

/// The 1-truncation: reduced zigzags between objects, up to a leg bound.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub leg_bound: usize,
    pub homs: BTreeMap<(Obj, Obj), Vec<Zigzag>>,
}

impl Truncation {
    pub fn hom(&self, a: Obj, b: Obj) -> &[Zigzag] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self) -> usize {
        self.homs.values().map(Vec::len).sum()
    }

    pub fn compose(&self, x: &FinCategory, g: &Zigzag, f: &Zigzag) -> Result<Zigzag> {
        concat(x, f, g)
    }
}

pub fn truncate1(x: &FinCategory, leg_bound: usize) -> Truncation {
    let mut homs: BTreeMap<(Obj, Obj), Vec<Zigzag>> = BTreeMap::new();
    for a in x.objects() {
        let mut stack = vec![Zigzag::empty(a)];
        while let Some(z) = stack.pop() {
            homs.entry((a, z.end(x))).or_default().push(z.clone());
            if z.legs.len() == leg_bound {
                continue;
            }
            let end = z.end(x);
            for m in x.morphisms().filter(|&m| !x.is_identity(m)) {
                for dir in [Dir::Fwd, Dir::Bwd] {
                    let l = Leg { dir, mor: m };
                    if l.from(x) != end || z.legs.last().is_some_and(|p| p.dir == dir) {
                        continue;
                    }
                    let mut legs = z.legs.clone();
                    legs.push(l);
                    stack.push(Zigzag { start: a, legs });
                }
            }
        }
    }
    for v in homs.values_mut() {
        v.sort();
    }
    Truncation { leg_bound, homs }
}
