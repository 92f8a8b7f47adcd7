use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{
    merge_rows, normalize, partitions, reduce_zigzag, split_moves, Dir, GenLetter, GeneratorWord, Leg, Row, StackCell,
    WordLayer,
};
use crate::finpres::{FinCategory, Mor};
use crate::strings::{leg_atoms, Diagram};
use crate::{par, Verdict};

/// Depth for snake-scale goals.
pub const DEFAULT_DEPTH: usize = 6;
/// Depth for oracle comparisons.
pub const ORACLE_DEPTH: usize = 10;

const STATE_CAP: usize = 4000;
const PARTITION_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualResult {
    pub verdict: Verdict,
    /// Rewrite steps used to reach the common form, when `Equal`.
    pub depth: usize,
    pub states: usize,
}

/// Greedy form: tidy rows, then merge adjacent rows with the first valid partition
/// until no pair merges. Returns the form and the number of steps taken.
pub fn canonical(x: &FinCategory, cell: &StackCell) -> (StackCell, usize) {
    let mut steps = cell.rows.iter().filter(|r| r.normalized(x).is_identity(x)).count();
    let mut c = cell.tidy(x);
    loop {
        let mut changed = false;
        for i in 0..c.rows.len().saturating_sub(1) {
            if let Some(m) = merge_rows(x, &c.rows[i], &c.rows[i + 1], None) {
                let m = m.normalized(x);
                steps += 1;
                if m.is_identity(x) {
                    c.rows.drain(i..i + 2);
                    steps += 1;
                } else {
                    c.rows.splice(i..i + 2, [m]);
                }
                changed = true;
                break;
            }
        }
        if !changed {
            return (c, steps);
        }
    }
}

fn tidy_rows(x: &FinCategory, rows: Vec<Row>) -> Vec<Row> {
    rows.into_iter().map(|r| r.normalized(x)).filter(|r| !r.is_identity(x)).collect()
}

fn neighbours(x: &FinCategory, rows: &[Row]) -> Vec<Vec<Row>> {
    let mut out = Vec::new();
    for i in 0..rows.len().saturating_sub(1) {
        for (_, m) in partitions(x, &rows[i], &rows[i + 1], PARTITION_CAP) {
            let mut next = rows[..i].to_vec();
            next.push(m);
            next.extend_from_slice(&rows[i + 2..]);
            out.push(tidy_rows(x, next));
        }
    }
    for i in 0..rows.len() {
        for (a, b) in split_moves(x, &rows[i]) {
            let mut next = rows[..i].to_vec();
            next.push(a);
            next.push(b);
            next.extend_from_slice(&rows[i + 1..]);
            out.push(tidy_rows(x, next));
        }
    }
    out
}

/// Bounded bidirectional search. `Some(steps)` on meeting.
fn search(x: &FinCategory, a: Vec<Row>, b: Vec<Row>, depth: usize) -> (Option<usize>, usize) {
    let mut seen: [HashMap<Vec<Row>, usize>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(a.clone(), 0);
    seen[1].insert(b.clone(), 0);
    if a == b {
        return (Some(0), 2);
    }
    let mut frontier = [vec![a], vec![b]];
    for level in 1..=depth {
        let side = (level + 1) % 2;
        let expanded: Vec<Vec<Vec<Row>>> = par::map(&frontier[side], |s| neighbours(x, s));
        let mut next = Vec::new();
        for n in expanded.into_iter().flatten() {
            if seen[side].contains_key(&n) {
                continue;
            }
            let d = level.div_ceil(2);
            if let Some(&other) = seen[1 - side].get(&n) {
                return (Some(d + other), seen[0].len() + seen[1].len());
            }
            seen[side].insert(n.clone(), d);
            next.push(n);
            if seen[side].len() >= STATE_CAP {
                break;
            }
        }
        frontier[side] = next;
        if frontier[0].is_empty() && frontier[1].is_empty() {
            break;
        }
    }
    (None, seen[0].len() + seen[1].len())
}

/// The planar-matching image of a cell, defined when `X` is free on a graph.
pub fn invariant(x: &FinCategory, cell: &StackCell) -> Option<Diagram> {
    let fact = x.free_factorizations()?;
    word_diagram(x, &fact, &normalize(x, cell))
}

fn leg_word(fact: &[Vec<Mor>], legs: &[Leg]) -> Vec<crate::strings::Atom> {
    legs.iter().flat_map(|l| leg_atoms(&fact[l.mor], l.dir == Dir::Fwd)).collect()
}

fn layer_diagram(fact: &[Vec<Mor>], layer: &WordLayer) -> Diagram {
    let mut d = Diagram::identity(Vec::new());
    for l in &layer.letters {
        let piece = match *l {
            GenLetter::Id(dir, m) => Diagram::identity(leg_atoms(&fact[m], dir == Dir::Fwd)),
            GenLetter::Eta(m) => Diagram::cup(&fact[m]),
            GenLetter::Eps(m) => Diagram::cap(&fact[m]),
        };
        d = d.tensor(&piece);
    }
    d
}

pub fn word_diagram(x: &FinCategory, fact: &[Vec<Mor>], w: &GeneratorWord) -> Option<Diagram> {
    let _ = x;
    let mut d = Diagram::identity(leg_word(fact, &w.source.legs));
    for layer in &w.layers {
        d = d.then(&layer_diagram(fact, layer))?;
    }
    Some(d)
}

/// Three-valued equality of two stack cells.
pub fn equal(x: &FinCategory, c1: &StackCell, c2: &StackCell, depth: usize) -> EqualResult {
    if c1.source != c2.source || c1.target != c2.target {
        return EqualResult { verdict: Verdict::Distinct, depth: 0, states: 0 };
    }
    let (k1, s1) = canonical(x, c1);
    let (k2, s2) = canonical(x, c2);
    if k1.rows == k2.rows {
        return EqualResult { verdict: Verdict::Equal, depth: s1.max(s2), states: 2 };
    }
    if let (Some(a), Some(b)) = (invariant(x, c1), invariant(x, c2)) {
        if a != b {
            return EqualResult { verdict: Verdict::Distinct, depth: 0, states: 2 };
        }
    }
    let (found, states) = search(x, k1.rows, k2.rows, depth);
    if let Some(d) = found {
        return EqualResult { verdict: Verdict::Equal, depth: d + s1.max(s2), states };
    }
    EqualResult { verdict: Verdict::Unknown, depth, states }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeReport {
    pub morphism: String,
    pub left: EqualResult,
    pub right: EqualResult,
}

impl SnakeReport {
    pub fn ok(&self) -> bool {
        self.left.verdict == Verdict::Equal && self.right.verdict == Verdict::Equal
    }
}

/// `(ε_f ∘₁ id₂(f→)) ∘₂ (id₂(f→) ∘₁ η_f)` and `(id₂(f←) ∘₁ ε_f) ∘₂ (η_f ∘₁ id₂(f←))`.
pub fn snake_words(x: &FinCategory, f: Mor) -> (GeneratorWord, GeneratorWord) {
    let (a, b) = (x.src(f), x.tgt(f));
    let fwd = reduce_zigzag(x, a, &[Leg::fwd(f)]).expect("single leg");
    let bwd = reduce_zigzag(x, b, &[Leg::bwd(f)]).expect("single leg");
    let left = GeneratorWord {
        source: fwd,
        layers: vec![
            WordLayer { start: a, letters: vec![GenLetter::Eta(f), GenLetter::Id(Dir::Fwd, f)] },
            WordLayer { start: a, letters: vec![GenLetter::Id(Dir::Fwd, f), GenLetter::Eps(f)] },
        ],
    };
    let right = GeneratorWord {
        source: bwd,
        layers: vec![
            WordLayer { start: b, letters: vec![GenLetter::Id(Dir::Bwd, f), GenLetter::Eta(f)] },
            WordLayer { start: b, letters: vec![GenLetter::Eps(f), GenLetter::Id(Dir::Bwd, f)] },
        ],
    };
    (left, right)
}

pub fn snake_check(x: &FinCategory, f: Mor, depth: usize) -> SnakeReport {
    let (l, r) = snake_words(x, f);
    let run = |w: &GeneratorWord| {
        let c = w.eval(x).expect("snake words are well formed");
        let id = StackCell::identity(&c.source);
        equal(x, &c, &id, depth)
    };
    SnakeReport { morphism: x.mor_name(f).to_string(), left: run(&l), right: run(&r) }
}
