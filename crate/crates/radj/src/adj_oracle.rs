//! A model of the free adjunction `f ⊣ g` by generators and relations, kept
//! independent of the square machinery so it can serve as an oracle for the zigzag
//! engine over the walking arrow.
//!
//! 2-cells are linearized into sequences of single-generator moves; equality is
//! snake cancellation modulo interchange, with a bounded search as a fallback.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::finpres::FinCategory;
use crate::strings::{Atom, Diagram};
use crate::zigzag::{self, GenLetter, GeneratorWord, Leg, WordLayer, Zigzag};
use crate::{fixtures, par, Error, Result, Verdict};

const CLASS_CAP: usize = 20_000;
const STATE_CAP: usize = 4000;
/// Longest source word used by [`compare_with_zigzag`].
pub const SOURCE_LEN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjObj {
    X,
    Y,
}

impl AdjObj {
    fn flip(self) -> AdjObj {
        match self {
            AdjObj::X => AdjObj::Y,
            AdjObj::Y => AdjObj::X,
        }
    }
}

/// `f : x → y` and `g : y → x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gen1 {
    F,
    G,
}

impl Gen1 {
    fn src(self) -> AdjObj {
        match self {
            Gen1::F => AdjObj::X,
            Gen1::G => AdjObj::Y,
        }
    }
}

/// A composable 1-cell word, first letter applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word1 {
    pub start: AdjObj,
    pub letters: Vec<Gen1>,
}

impl Word1 {
    pub fn empty(start: AdjObj) -> Word1 {
        Word1 { start, letters: Vec::new() }
    }

    /// The alternating word of length `len` from `start`.
    pub fn alternating(start: AdjObj, len: usize) -> Word1 {
        let first = if start == AdjObj::X { Gen1::F } else { Gen1::G };
        let letters = (0..len).map(|i| if (i % 2 == 0) == (first == Gen1::F) { Gen1::F } else { Gen1::G }).collect();
        Word1 { start, letters }
    }

    /// Object sitting before position `p`.
    pub fn obj_at(&self, p: usize) -> AdjObj {
        if p.is_multiple_of(2) {
            self.start
        } else {
            self.start.flip()
        }
    }

    fn check(&self) -> Result<()> {
        for (i, l) in self.letters.iter().enumerate() {
            if l.src() != self.obj_at(i) {
                return Err(Error::InconsistentEndpoints(format!("letter {i} of {self}")));
            }
        }
        Ok(())
    }

    fn atoms(&self) -> Vec<Atom> {
        self.letters.iter().map(|l| if *l == Gen1::F { Atom::fwd(0) } else { Atom::bwd(0) }).collect()
    }

    /// The corresponding zigzag over the walking arrow: `f ↦ f→`, `g ↦ f←`.
    pub fn to_zigzag(&self, x: &FinCategory) -> Zigzag {
        let f = x.mor("f").expect("walking arrow");
        let legs = self.letters.iter().map(|l| if *l == Gen1::F { Leg::fwd(f) } else { Leg::bwd(f) }).collect();
        let start = x.obj(if self.start == AdjObj::X { "x" } else { "y" }).expect("walking arrow");
        Zigzag { start, legs }
    }
}

impl fmt::Display for Word1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", if self.start == AdjObj::X { "x" } else { "y" })?;
        for l in &self.letters {
            write!(f, " {}", if *l == Gen1::F { "f" } else { "g" })?;
        }
        Ok(())
    }
}

/// `x: f g` or `y:`.
impl FromStr for Word1 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word1> {
        let (start, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("word {s:?} needs `start:`")))?;
        let start = match start.trim() {
            "x" => AdjObj::X,
            "y" => AdjObj::Y,
            o => return Err(Error::Parse(format!("unknown object {o:?}"))),
        };
        let letters = rest
            .split_whitespace()
            .map(|t| match t {
                "f" => Ok(Gen1::F),
                "g" => Ok(Gen1::G),
                _ => Err(Error::Parse(format!("unknown 1-cell {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let w = Word1 { start, letters };
        w.check()?;
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjLetter {
    IdF,
    IdG,
    Eta,
    Eps,
}

impl AdjLetter {
    pub fn source(self) -> &'static [Gen1] {
        match self {
            AdjLetter::IdF => &[Gen1::F],
            AdjLetter::IdG => &[Gen1::G],
            AdjLetter::Eta => &[],
            AdjLetter::Eps => &[Gen1::G, Gen1::F],
        }
    }

    pub fn target(self) -> &'static [Gen1] {
        match self {
            AdjLetter::IdF => &[Gen1::F],
            AdjLetter::IdG => &[Gen1::G],
            AdjLetter::Eta => &[Gen1::F, Gen1::G],
            AdjLetter::Eps => &[],
        }
    }

    fn token(self) -> &'static str {
        match self {
            AdjLetter::IdF => "f",
            AdjLetter::IdG => "g",
            AdjLetter::Eta => "η",
            AdjLetter::Eps => "ε",
        }
    }

    fn to_gen(self, f: crate::finpres::Mor) -> GenLetter {
        match self {
            AdjLetter::IdF => GenLetter::Id(zigzag::Dir::Fwd, f),
            AdjLetter::IdG => GenLetter::Id(zigzag::Dir::Bwd, f),
            AdjLetter::Eta => GenLetter::Eta(f),
            AdjLetter::Eps => GenLetter::Eps(f),
        }
    }
}

/// A `∘₂`-chain of `∘₁`-layers, first layer applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjWord {
    pub source: Word1,
    pub layers: Vec<Vec<AdjLetter>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Eta,
    Eps,
}

/// One generator acting at position `pos` of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Move {
    kind: Kind,
    pos: usize,
}

impl Move {
    fn arity(self) -> (usize, usize) {
        match self.kind {
            Kind::Eta => (0, 2),
            Kind::Eps => (2, 0),
        }
    }
}

fn apply(w: &Word1, m: Move) -> Option<Word1> {
    let mut out = w.clone();
    match m.kind {
        Kind::Eta => {
            if m.pos > w.letters.len() || w.obj_at(m.pos) != AdjObj::X {
                return None;
            }
            out.letters.splice(m.pos..m.pos, [Gen1::F, Gen1::G]);
        }
        Kind::Eps => {
            if w.letters.get(m.pos..m.pos + 2) != Some(&[Gen1::G, Gen1::F][..]) {
                return None;
            }
            out.letters.drain(m.pos..m.pos + 2);
        }
    }
    Some(out)
}

/// Ways to perform `b` before `a` when `a` is followed by `b`.
fn swaps(a: Move, b: Move) -> Vec<(Move, Move)> {
    let (ia, oa) = a.arity();
    let (ib, ob) = b.arity();
    let mut out = Vec::new();
    if b.pos + ib <= a.pos {
        out.push((b, Move { kind: a.kind, pos: a.pos + ob - ib }));
    }
    if b.pos >= a.pos + oa {
        out.push((Move { kind: b.kind, pos: b.pos + ia - oa }, a));
    }
    out
}

fn interchange_neighbours(seq: &[Move]) -> Vec<Vec<Move>> {
    let mut out = Vec::new();
    for i in 0..seq.len().saturating_sub(1) {
        for (b, a) in swaps(seq[i], seq[i + 1]) {
            let mut s = seq.to_vec();
            s[i] = b;
            s[i + 1] = a;
            out.push(s);
        }
    }
    out
}

fn is_snake(a: Move, b: Move) -> bool {
    a.kind == Kind::Eta && b.kind == Kind::Eps && (b.pos == a.pos + 1 || b.pos + 1 == a.pos)
}

fn cancel_once(seq: &[Move]) -> Option<Vec<Move>> {
    let i = (0..seq.len().saturating_sub(1)).find(|&i| is_snake(seq[i], seq[i + 1]))?;
    let mut s = seq.to_vec();
    s.drain(i..i + 2);
    Some(s)
}

fn interchange_class(seq: Vec<Move>) -> BTreeSet<Vec<Move>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([seq.clone()]);
    seen.insert(seq);
    while let Some(s) = queue.pop_front() {
        for n in interchange_neighbours(&s) {
            if seen.len() < CLASS_CAP && seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    seen
}

impl AdjWord {
    pub fn identity(w: &Word1) -> AdjWord {
        AdjWord { source: w.clone(), layers: Vec::new() }
    }

    fn layer_moves(cur: &Word1, layer: &[AdjLetter]) -> Result<(Vec<Move>, Word1)> {
        let src: Vec<Gen1> = layer.iter().flat_map(|l| l.source().iter().copied()).collect();
        if src != cur.letters {
            return Err(Error::BoundaryMismatch(format!("layer does not apply to {cur}")));
        }
        let mut moves = Vec::new();
        let mut offset = 0;
        let mut in_pos = 0;
        for l in layer {
            match l {
                AdjLetter::IdF | AdjLetter::IdG => offset += 1,
                AdjLetter::Eta => {
                    if cur.obj_at(in_pos) != AdjObj::X {
                        return Err(Error::InconsistentEndpoints(format!("η placed at y in {cur}")));
                    }
                    moves.push(Move { kind: Kind::Eta, pos: offset });
                    offset += 2;
                }
                AdjLetter::Eps => moves.push(Move { kind: Kind::Eps, pos: offset }),
            }
            in_pos += l.source().len();
        }
        let tgt = layer.iter().flat_map(|l| l.target().iter().copied()).collect();
        Ok((moves, Word1 { start: cur.start, letters: tgt }))
    }

    fn moves(&self) -> Result<(Vec<Move>, Word1)> {
        self.source.check()?;
        let mut cur = self.source.clone();
        let mut all = Vec::new();
        for layer in &self.layers {
            let (m, next) = Self::layer_moves(&cur, layer)?;
            all.extend(m);
            cur = next;
        }
        Ok((all, cur))
    }

    pub fn check(&self) -> Result<()> {
        self.moves().map(|_| ())
    }

    pub fn target(&self) -> Result<Word1> {
        self.moves().map(|(_, t)| t)
    }

    pub fn generator_count(&self) -> usize {
        self.layers.iter().flatten().filter(|l| matches!(l, AdjLetter::Eta | AdjLetter::Eps)).count()
    }

    pub fn display(&self) -> String {
        if self.layers.is_empty() {
            return format!("id({})", self.source);
        }
        let layers: Vec<String> = self
            .layers
            .iter()
            .map(|l| {
                if l.is_empty() {
                    "·".to_string()
                } else {
                    l.iter().map(|t| t.token()).collect::<Vec<_>>().join(" ")
                }
            })
            .collect();
        format!("{} ; {}", self.source, layers.join(" | "))
    }

    /// The zigzag generator word over the walking arrow.
    pub fn to_zigzag(&self, x: &FinCategory) -> GeneratorWord {
        let f = x.mor("f").expect("walking arrow");
        let source = self.source.to_zigzag(x);
        let layers = self
            .layers
            .iter()
            .map(|l| WordLayer { start: source.start, letters: l.iter().map(|t| t.to_gen(f)).collect() })
            .collect();
        GeneratorWord { source, layers }
    }

    /// Planar matching of the string diagram.
    pub fn diagram(&self) -> Option<Diagram> {
        let mut d = Diagram::identity(self.source.atoms());
        for layer in &self.layers {
            let mut piece = Diagram::identity(Vec::new());
            for l in layer {
                let p = match l {
                    AdjLetter::IdF => Diagram::identity(vec![Atom::fwd(0)]),
                    AdjLetter::IdG => Diagram::identity(vec![Atom::bwd(0)]),
                    AdjLetter::Eta => Diagram::cup(&[0]),
                    AdjLetter::Eps => Diagram::cap(&[0]),
                };
                piece = piece.tensor(&p);
            }
            d = d.then(&piece)?;
        }
        Some(d)
    }
}

/// Snake-reduced move sequence, least in its interchange class.
fn canonical_moves(mut seq: Vec<Move>) -> Vec<Move> {
    loop {
        let class = interchange_class(seq);
        match class.iter().find_map(|s| cancel_once(s)) {
            Some(r) => seq = r,
            None => return class.into_iter().next().unwrap_or_default(),
        }
    }
}

/// Key of the canonical form of a well-formed word.
pub fn canonical_key(w: &AdjWord) -> Result<Vec<(bool, usize)>> {
    let (m, _) = w.moves()?;
    Ok(canonical_moves(m).into_iter().map(|m| (m.kind == Kind::Eta, m.pos)).collect())
}

fn snake_insertions(src: &Word1, seq: &[Move]) -> Vec<Vec<Move>> {
    let mut out = Vec::new();
    let mut cur = src.clone();
    for i in 0..=seq.len() {
        for p in 0..=cur.letters.len() {
            if cur.obj_at(p) != AdjObj::X {
                continue;
            }
            let eta = Move { kind: Kind::Eta, pos: p };
            if cur.letters.get(p) == Some(&Gen1::F) {
                let mut s = seq.to_vec();
                s.splice(i..i, [eta, Move { kind: Kind::Eps, pos: p + 1 }]);
                out.push(s);
            }
            if p > 0 && cur.letters[p - 1] == Gen1::G {
                let mut s = seq.to_vec();
                s.splice(i..i, [eta, Move { kind: Kind::Eps, pos: p - 1 }]);
                out.push(s);
            }
        }
        if i < seq.len() {
            cur = apply(&cur, seq[i]).expect("valid sequence");
        }
    }
    out
}

fn neighbours(src: &Word1, seq: &[Move]) -> Vec<Vec<Move>> {
    let mut out = interchange_neighbours(seq);
    for i in 0..seq.len().saturating_sub(1) {
        if is_snake(seq[i], seq[i + 1]) {
            let mut s = seq.to_vec();
            s.drain(i..i + 2);
            out.push(s);
        }
    }
    out.extend(snake_insertions(src, seq));
    out
}

fn search(src: &Word1, a: Vec<Move>, b: Vec<Move>, depth: usize) -> Option<usize> {
    let mut seen: [HashMap<Vec<Move>, usize>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(a.clone(), 0);
    seen[1].insert(b.clone(), 0);
    let mut frontier = [vec![a], vec![b]];
    for level in 1..=depth {
        let side = (level + 1) % 2;
        let d = level.div_ceil(2);
        let mut next = Vec::new();
        'outer: for s in &frontier[side] {
            for n in neighbours(src, s) {
                if seen[side].contains_key(&n) {
                    continue;
                }
                if let Some(&other) = seen[1 - side].get(&n) {
                    return Some(d + other);
                }
                seen[side].insert(n.clone(), d);
                next.push(n);
                if seen[side].len() >= STATE_CAP {
                    break 'outer;
                }
            }
        }
        frontier[side] = next;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjEqual {
    pub verdict: Verdict,
    /// Search depth at which the forms met; 0 for canonical matches.
    pub depth: usize,
}

/// Three-valued equality of two words with the same source.
pub fn equal_adj(w1: &AdjWord, w2: &AdjWord, depth: usize) -> Result<AdjEqual> {
    if w1.source != w2.source {
        return Err(Error::BoundaryMismatch(format!("sources {} and {}", w1.source, w2.source)));
    }
    let (m1, t1) = w1.moves()?;
    let (m2, t2) = w2.moves()?;
    if t1 != t2 {
        return Ok(AdjEqual { verdict: Verdict::Distinct, depth: 0 });
    }
    let (k1, k2) = (canonical_moves(m1), canonical_moves(m2));
    if k1 == k2 {
        return Ok(AdjEqual { verdict: Verdict::Equal, depth: 0 });
    }
    if w1.diagram() != w2.diagram() {
        return Ok(AdjEqual { verdict: Verdict::Distinct, depth: 0 });
    }
    Ok(match search(&w1.source, k1, k2, depth) {
        Some(d) => AdjEqual { verdict: Verdict::Equal, depth: d },
        None => AdjEqual { verdict: Verdict::Unknown, depth },
    })
}

/// Single-generator layers applicable to `w`.
pub fn extensions(w: &Word1) -> Vec<Vec<AdjLetter>> {
    let ids = |ls: &[Gen1]| -> Vec<AdjLetter> {
        ls.iter().map(|l| if *l == Gen1::F { AdjLetter::IdF } else { AdjLetter::IdG }).collect()
    };
    let mut out = Vec::new();
    for p in 0..=w.letters.len() {
        if w.obj_at(p) == AdjObj::X {
            let mut l = ids(&w.letters[..p]);
            l.push(AdjLetter::Eta);
            l.extend(ids(&w.letters[p..]));
            out.push(l);
        }
    }
    for p in 0..w.letters.len().saturating_sub(1) {
        if w.letters[p] == Gen1::G && w.letters[p + 1] == Gen1::F {
            let mut l = ids(&w.letters[..p]);
            l.push(AdjLetter::Eps);
            l.extend(ids(&w.letters[p + 2..]));
            out.push(l);
        }
    }
    out
}

/// Every word from `src` with at most `gen_bound` generator layers.
pub fn words_up_to(src: &Word1, gen_bound: usize) -> Vec<AdjWord> {
    let mut all = vec![AdjWord::identity(src)];
    let mut frontier = vec![(AdjWord::identity(src), src.clone())];
    for _ in 0..gen_bound {
        let mut next = Vec::new();
        for (w, t) in &frontier {
            for layer in extensions(t) {
                let mut w2 = w.clone();
                w2.layers.push(layer);
                let t2 = w2.target().expect("extensions apply");
                all.push(w2.clone());
                next.push((w2, t2));
            }
        }
        frontier = next;
    }
    all
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Word-level classes from a key grouping plus pairwise group verdicts.
struct Classes {
    /// Group index of each word.
    group: Vec<usize>,
    /// Root of each group after merging `Equal` pairs.
    root: Vec<usize>,
    /// Verdict between groups `(a, b)` with `a < b`.
    verdicts: HashMap<(usize, usize), Verdict>,
}

impl Classes {
    fn build<K: Eq + std::hash::Hash>(keys: &[K], verdict: impl Fn(usize, usize) -> Verdict + Sync + Send) -> Classes {
        let mut reps: Vec<usize> = Vec::new();
        let mut by_key: HashMap<&K, usize> = HashMap::new();
        let group: Vec<usize> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| {
                *by_key.entry(k).or_insert_with(|| {
                    reps.push(i);
                    reps.len() - 1
                })
            })
            .collect();
        let pairs: Vec<(usize, usize)> =
            (0..reps.len()).flat_map(|a| (a + 1..reps.len()).map(move |b| (a, b))).collect();
        let vs = par::map(&pairs, |&(a, b)| verdict(reps[a], reps[b]));
        let mut parent: Vec<usize> = (0..reps.len()).collect();
        for (&(a, b), v) in pairs.iter().zip(&vs) {
            if *v == Verdict::Equal {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let root = (0..reps.len()).map(|g| find(&mut parent, g)).collect();
        Classes { group, root, verdicts: pairs.into_iter().zip(vs).collect() }
    }

    fn count(&self) -> usize {
        self.root.iter().collect::<BTreeSet<_>>().len()
    }

    /// Verdict on words `i`, `j`, closing `Equal` under transitivity.
    fn word_verdict(&self, i: usize, j: usize) -> Verdict {
        let (a, b) = (self.group[i], self.group[j]);
        if self.root[a] == self.root[b] {
            return Verdict::Equal;
        }
        self.verdicts[&(a.min(b), a.max(b))]
    }

    /// Pairs of distinct classes left Unknown.
    fn unknown_pairs(&self) -> usize {
        self.verdicts.iter().filter(|(&(a, b), v)| **v == Verdict::Unknown && self.root[a] != self.root[b]).count()
    }

    fn classes(&self) -> Vec<Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.group.iter().enumerate() {
            m.entry(self.root[*g]).or_default().push(i);
        }
        m.into_values().collect()
    }
}

#[derive(Debug, Clone)]
pub struct AdjEnumeration {
    pub words: Vec<AdjWord>,
    /// Indices into `words`.
    pub classes: Vec<Vec<usize>>,
    pub unknown_pairs: usize,
}

impl AdjEnumeration {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

fn adj_classes(words: &[AdjWord], depth: usize) -> Classes {
    let keys: Vec<_> = par::map(words, |w| canonical_key(w).expect("enumerated words are well formed"));
    Classes::build(&keys, |i, j| equal_adj(&words[i], &words[j], depth).expect("same source").verdict)
}

/// Words `src ⇒ tgt` with at most `gen_bound` generators, quotiented by [`equal_adj`].
pub fn enumerate_adj(src: &Word1, tgt: &Word1, gen_bound: usize, depth: usize) -> AdjEnumeration {
    let words: Vec<AdjWord> =
        words_up_to(src, gen_bound).into_iter().filter(|w| w.target().ok().as_ref() == Some(tgt)).collect();
    let c = adj_classes(&words, depth);
    AdjEnumeration { unknown_pairs: c.unknown_pairs(), classes: c.classes(), words }
}

/// Sources `x`/`y` words of length at most `max_len`.
pub fn sources(max_len: usize) -> Vec<Word1> {
    [AdjObj::X, AdjObj::Y].into_iter().flat_map(|o| (0..=max_len).map(move |n| Word1::alternating(o, n))).collect()
}

/// Words grouped by boundary pair, for every source of length at most `max_len`.
pub fn boundary_pairs(max_len: usize, gen_bound: usize) -> Vec<(Word1, Word1, Vec<AdjWord>)> {
    let mut out = Vec::new();
    for s in sources(max_len) {
        let mut by_tgt: BTreeMap<Word1, Vec<AdjWord>> = BTreeMap::new();
        for w in words_up_to(&s, gen_bound) {
            by_tgt.entry(w.target().expect("well formed")).or_default().push(w);
        }
        out.extend(by_tgt.into_iter().map(|(t, ws)| (s.clone(), t, ws)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCount {
    pub src: String,
    pub tgt: String,
    pub gen_bound: usize,
    pub words: usize,
    pub classes: usize,
}

/// Class counts per boundary pair for sources up to [`SOURCE_LEN`].
pub fn golden_counts(gen_bound: usize, depth: usize) -> Vec<GoldenCount> {
    let pairs = boundary_pairs(SOURCE_LEN, gen_bound);
    par::map(&pairs, |(s, t, ws)| GoldenCount {
        src: s.to_string(),
        tgt: t.to_string(),
        gen_bound,
        words: ws.len(),
        classes: adj_classes(ws, depth).count(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairStatus {
    Agree,
    Disagree,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub src: String,
    pub tgt: String,
    pub words: usize,
    pub adj_classes: usize,
    pub zigzag_classes: usize,
    /// Word pairs on which either side returned `Unknown`.
    pub unknown_word_pairs: usize,
    /// Word pairs judged `Equal` by one side and `Distinct` by the other.
    pub hard_disagreements: usize,
    pub status: PairStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub gen_bound: usize,
    pub depth: usize,
    pub pairs: Vec<PairReport>,
    pub agreements: usize,
    pub disagreements: usize,
    pub unknown: usize,
    pub hard_disagreements: usize,
    pub word_pairs: usize,
    pub unknown_word_pairs: usize,
}

impl CompareReport {
    pub fn unknown_rate(&self) -> f64 {
        if self.word_pairs == 0 {
            0.0
        } else {
            self.unknown_word_pairs as f64 / self.word_pairs as f64
        }
    }

    /// No hard disagreement and no count mismatch outside `Unknown` pairs.
    pub fn ok(&self) -> bool {
        self.hard_disagreements == 0 && self.disagreements == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "gen_bound {} depth {}: {} boundary pairs, {} agree, {} disagree, {} unknown; {} hard disagreements; unknown rate {:.4} ({}/{})",
            self.gen_bound,
            self.depth,
            self.pairs.len(),
            self.agreements,
            self.disagreements,
            self.unknown,
            self.hard_disagreements,
            self.unknown_rate(),
            self.unknown_word_pairs,
            self.word_pairs
        )
    }
}

fn compare_pair(x: &FinCategory, s: &Word1, t: &Word1, words: &[AdjWord], depth: usize) -> PairReport {
    let adj = adj_classes(words, depth);
    let cells: Vec<_> =
        words.iter().map(|w| w.to_zigzag(x).eval(x).expect("translation preserves boundaries")).collect();
    let keys: Vec<_> = cells.iter().map(|c| zigzag::canonical(x, c).0.rows).collect();
    let invs: Vec<_> = cells.iter().map(|c| zigzag::invariant(x, c)).collect();
    let zig = Classes::build(&keys, |i, j| {
        if invs[i] != invs[j] {
            Verdict::Distinct
        } else {
            zigzag::equal(x, &cells[i], &cells[j], depth).verdict
        }
    });
    let (mut unknown, mut hard) = (0, 0);
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let (a, b) = (adj.word_verdict(i, j), zig.word_verdict(i, j));
            if a == Verdict::Unknown || b == Verdict::Unknown {
                unknown += 1;
            } else if a != b {
                hard += 1;
            }
        }
    }
    let (ac, zc) = (adj.count(), zig.count());
    let status = if hard > 0 || (ac != zc && unknown == 0) {
        PairStatus::Disagree
    } else if ac != zc {
        PairStatus::Unknown
    } else {
        PairStatus::Agree
    };
    PairReport {
        src: s.to_string(),
        tgt: t.to_string(),
        words: words.len(),
        adj_classes: ac,
        zigzag_classes: zc,
        unknown_word_pairs: unknown,
        hard_disagreements: hard,
        status,
    }
}

/// Compare class counts of the oracle and the zigzag engine over the walking arrow,
/// per boundary pair, for sources of length at most [`SOURCE_LEN`].
pub fn compare_with_zigzag(gen_bound: usize, depth: usize) -> CompareReport {
    let x = fixtures::walking_arrow();
    let pairs = boundary_pairs(SOURCE_LEN, gen_bound);
    let reports: Vec<PairReport> = par::map(&pairs, |(s, t, ws)| compare_pair(&x, s, t, ws, depth));
    let count = |st: PairStatus| reports.iter().filter(|r| r.status == st).count();
    CompareReport {
        gen_bound,
        depth,
        agreements: count(PairStatus::Agree),
        disagreements: count(PairStatus::Disagree),
        unknown: count(PairStatus::Unknown),
        hard_disagreements: reports.iter().map(|r| r.hard_disagreements).sum(),
        word_pairs: reports.iter().map(|r| r.words * r.words.saturating_sub(1) / 2).sum(),
        unknown_word_pairs: reports.iter().map(|r| r.unknown_word_pairs).sum(),
        pairs: reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word1 {
        s.parse().unwrap()
    }

    fn snake_f() -> AdjWord {
        AdjWord {
            source: w("x: f"),
            layers: vec![vec![AdjLetter::Eta, AdjLetter::IdF], vec![AdjLetter::IdF, AdjLetter::Eps]],
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("x: f g").letters, vec![Gen1::F, Gen1::G]);
        assert!("x: g".parse::<Word1>().is_err());
        assert!("z: f".parse::<Word1>().is_err());
        assert_eq!(w("y: g f").to_string(), "y: g f");
        assert_eq!(Word1::alternating(AdjObj::Y, 3), w("y: g f g"));
    }

    #[test]
    fn snakes_are_equal_to_identities() {
        let s = snake_f();
        assert_eq!(s.target().unwrap(), w("x: f"));
        let r = equal_adj(&s, &AdjWord::identity(&w("x: f")), 10).unwrap();
        assert_eq!(r.verdict, Verdict::Equal);
        let g = AdjWord {
            source: w("y: g"),
            layers: vec![vec![AdjLetter::IdG, AdjLetter::Eta], vec![AdjLetter::Eps, AdjLetter::IdG]],
        };
        assert_eq!(equal_adj(&g, &AdjWord::identity(&w("y: g")), 10).unwrap().verdict, Verdict::Equal);
    }

    #[test]
    fn unit_differs_from_identity() {
        let eta = AdjWord { source: w("x:"), layers: vec![vec![AdjLetter::Eta]] };
        let id = AdjWord::identity(&w("x:"));
        assert_eq!(equal_adj(&eta, &id, 10).unwrap().verdict, Verdict::Distinct);
        assert!(matches!(equal_adj(&eta, &AdjWord::identity(&w("y:")), 10), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn malformed_layers_are_rejected() {
        let bad = AdjWord { source: w("x: f"), layers: vec![vec![AdjLetter::Eps]] };
        assert!(bad.check().is_err());
        let bad = AdjWord { source: w("y:"), layers: vec![vec![AdjLetter::Eta]] };
        assert!(bad.check().is_err());
    }

    #[test]
    fn interchange_is_equal() {
        let a = AdjWord {
            source: w("x: f g"),
            layers: vec![
                vec![AdjLetter::Eta, AdjLetter::IdF, AdjLetter::IdG],
                vec![AdjLetter::IdF, AdjLetter::IdG, AdjLetter::IdF, AdjLetter::IdG, AdjLetter::Eta],
            ],
        };
        let b = AdjWord {
            source: w("x: f g"),
            layers: vec![
                vec![AdjLetter::IdF, AdjLetter::IdG, AdjLetter::Eta],
                vec![AdjLetter::Eta, AdjLetter::IdF, AdjLetter::IdG, AdjLetter::IdF, AdjLetter::IdG],
            ],
        };
        assert_eq!(a.target().unwrap(), b.target().unwrap());
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        let c = AdjWord {
            source: w("x: f g"),
            layers: vec![vec![AdjLetter::Eta, AdjLetter::IdF, AdjLetter::IdG, AdjLetter::Eta]],
        };
        assert_eq!(equal_adj(&a, &c, 4).unwrap().verdict, Verdict::Equal);
    }

    #[test]
    fn enumerate_examples() {
        let e = enumerate_adj(&w("x:"), &w("x:"), 0, 10);
        assert_eq!(e.class_count(), 1);
        let e = enumerate_adj(&w("x:"), &w("x: f g"), 1, 10);
        assert_eq!(e.class_count(), 1);
        assert_eq!(e.words[0].layers, vec![vec![AdjLetter::Eta]]);
        // `f g` contains no `g f`, so no bubble exists at x.
        let e = enumerate_adj(&w("x:"), &w("x:"), 2, 10);
        assert_eq!(e.class_count(), 1);
    }

    #[test]
    fn translation_preserves_boundaries() {
        let x = fixtures::walking_arrow();
        for (s, t, ws) in boundary_pairs(3, 2) {
            for aw in ws {
                let zw = aw.to_zigzag(&x);
                assert_eq!(zw.source, s.to_zigzag(&x));
                assert_eq!(zw.target(&x).unwrap(), t.to_zigzag(&x));
            }
        }
    }

    #[test]
    fn compare_at_bound_one_agrees() {
        let r = compare_with_zigzag(1, 10);
        assert!(r.ok(), "{}", r.summary());
        assert_eq!(r.unknown, 0);
        assert_eq!(r.agreements, r.pairs.len());
    }
}
