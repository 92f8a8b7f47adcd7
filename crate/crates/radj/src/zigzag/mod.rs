//! Zigzags of morphisms and the 2-cells between them: stacks of globular rows of
//! signed squares, the exchange rewrite, normalization to generator words and a
//! bounded equality search.

mod enumerate;
mod equal;
mod exchange;
mod word;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::finpres::{FinCategory, Mor, Obj};
use crate::squares::{self, hcompose_signed, Sign, SignedSquare, SquareJson};
use crate::{Error, Result};

pub use enumerate::{
    enumerate_cells, extensions, random_word, truncate1, words_up_to, CellEnumeration, ClassSummary, Truncation,
};
pub use equal::{
    canonical, equal, invariant, snake_check, snake_words, EqualResult, SnakeReport, DEFAULT_DEPTH, ORACLE_DEPTH,
};
pub use exchange::{exchange_step, merge_rows, partitions, split_moves, Partition};
pub use word::{normalize, normalize_row, GenLetter, GeneratorWord, GeneratorWordJson, WordLayer, WordLayerJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    pub fn arrow(self) -> &'static str {
        match self {
            Dir::Fwd => "→",
            Dir::Bwd => "←",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub dir: Dir,
    pub mor: Mor,
}

impl Leg {
    pub fn fwd(mor: Mor) -> Leg {
        Leg { dir: Dir::Fwd, mor }
    }

    pub fn bwd(mor: Mor) -> Leg {
        Leg { dir: Dir::Bwd, mor }
    }

    pub fn from(&self, x: &FinCategory) -> Obj {
        match self.dir {
            Dir::Fwd => x.src(self.mor),
            Dir::Bwd => x.tgt(self.mor),
        }
    }

    pub fn to(&self, x: &FinCategory) -> Obj {
        match self.dir {
            Dir::Fwd => x.tgt(self.mor),
            Dir::Bwd => x.src(self.mor),
        }
    }
}

/// A reduced zigzag; `start` is kept so that empty zigzags know their object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zigzag {
    pub start: Obj,
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegJson {
    pub dir: Dir,
    pub mor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagJson {
    pub start: String,
    #[serde(default)]
    pub legs: Vec<LegJson>,
}

/// Walk a raw leg sequence and return its end object.
pub fn chain_end(x: &FinCategory, start: Obj, legs: &[Leg]) -> Result<Obj> {
    let mut cur = start;
    for (i, l) in legs.iter().enumerate() {
        if l.from(x) != cur {
            return Err(Error::InconsistentEndpoints(format!(
                "leg {i} ({}{}) starts at {}, expected {}",
                x.mor_name(l.mor),
                l.dir.arrow(),
                x.obj_name(l.from(x)),
                x.obj_name(cur)
            )));
        }
        cur = l.to(x);
    }
    Ok(cur)
}

/// Merge two consecutive legs of the same direction.
fn merge_legs(x: &FinCategory, a: Leg, b: Leg) -> Leg {
    match a.dir {
        Dir::Fwd => Leg::fwd(x.comp(b.mor, a.mor).expect("chained legs compose")),
        Dir::Bwd => Leg::bwd(x.comp(a.mor, b.mor).expect("chained legs compose")),
    }
}

/// Delete identity legs and merge same-direction neighbours.
pub fn reduce_zigzag(x: &FinCategory, start: Obj, legs: &[Leg]) -> Result<Zigzag> {
    chain_end(x, start, legs)?;
    let mut out: Vec<Leg> = Vec::with_capacity(legs.len());
    for &l in legs {
        if x.is_identity(l.mor) {
            continue;
        }
        match out.last() {
            Some(&top) if top.dir == l.dir => {
                out.pop();
                let m = merge_legs(x, top, l);
                if !x.is_identity(m.mor) {
                    out.push(m);
                }
            }
            _ => out.push(l),
        }
    }
    Ok(Zigzag { start, legs: out })
}

/// Apply single reduction steps at random positions until none applies.
pub fn reduce_randomly<R: Rng>(x: &FinCategory, start: Obj, legs: &[Leg], rng: &mut R) -> Result<Zigzag> {
    chain_end(x, start, legs)?;
    let mut cur = legs.to_vec();
    loop {
        let mut moves = Vec::new();
        for i in 0..cur.len() {
            if x.is_identity(cur[i].mor) {
                moves.push((i, false));
            }
            if i + 1 < cur.len() && cur[i].dir == cur[i + 1].dir {
                moves.push((i, true));
            }
        }
        if moves.is_empty() {
            return Ok(Zigzag { start, legs: cur });
        }
        let (i, merge) = moves[rng.gen_range(0..moves.len())];
        if merge {
            let m = merge_legs(x, cur[i], cur[i + 1]);
            cur.splice(i..i + 2, [m]);
        } else {
            cur.remove(i);
        }
    }
}

pub fn concat(x: &FinCategory, z1: &Zigzag, z2: &Zigzag) -> Result<Zigzag> {
    if z1.end(x) != z2.start {
        return Err(Error::EndpointMismatch(format!(
            "{} ends at {}, {} starts at {}",
            z1.display(x),
            x.obj_name(z1.end(x)),
            z2.display(x),
            x.obj_name(z2.start)
        )));
    }
    let mut legs = z1.legs.clone();
    legs.extend(z2.legs.iter().copied());
    reduce_zigzag(x, z1.start, &legs)
}

impl Zigzag {
    pub fn empty(o: Obj) -> Zigzag {
        Zigzag { start: o, legs: Vec::new() }
    }

    pub fn end(&self, x: &FinCategory) -> Obj {
        self.legs.last().map(|l| l.to(x)).unwrap_or(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn is_reduced(&self, x: &FinCategory) -> bool {
        self.legs.iter().all(|l| !x.is_identity(l.mor)) && self.legs.windows(2).all(|w| w[0].dir != w[1].dir)
    }

    pub fn display(&self, x: &FinCategory) -> String {
        if self.legs.is_empty() {
            return format!("[] at {}", x.obj_name(self.start));
        }
        let legs: Vec<String> = self.legs.iter().map(|l| format!("{}{}", x.mor_name(l.mor), l.dir.arrow())).collect();
        format!("[{}]", legs.join(" "))
    }

    pub fn to_json(&self, x: &FinCategory) -> ZigzagJson {
        ZigzagJson {
            start: x.obj_name(self.start).to_string(),
            legs: self.legs.iter().map(|l| LegJson { dir: l.dir, mor: x.mor_name(l.mor).to_string() }).collect(),
        }
    }

    /// Parses and reduces.
    pub fn from_json(x: &FinCategory, j: &ZigzagJson) -> Result<Zigzag> {
        let start = x.obj(&j.start)?;
        let legs = j.legs.iter().map(|l| Ok(Leg { dir: l.dir, mor: x.mor(&l.mor)? })).collect::<Result<Vec<_>>>()?;
        reduce_zigzag(x, start, &legs)
    }

    /// Compact text form: `x: f> g<` (start object, then legs with `>` forward, `<` backward).
    pub fn parse(x: &FinCategory, s: &str) -> Result<Zigzag> {
        let (start, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("zigzag {s:?} needs `start:`")))?;
        let start = x.obj(start.trim())?;
        let mut legs = Vec::new();
        for tok in rest.split_whitespace() {
            let leg = if let Some(m) = tok.strip_suffix('>') {
                Leg::fwd(x.mor(m)?)
            } else if let Some(m) = tok.strip_suffix('<') {
                Leg::bwd(x.mor(m)?)
            } else {
                return Err(Error::Parse(format!("leg {tok:?} must end in > or <")));
            };
            legs.push(leg);
        }
        reduce_zigzag(x, start, &legs)
    }
}

/// One row of signed squares. `start` is the top-left object, needed for empty rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub start: Obj,
    pub cells: Vec<SignedSquare>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub start: String,
    pub cells: Vec<SquareJson>,
}

fn square_leg(s: &SignedSquare, top: bool) -> Leg {
    let mor = if top { s.top } else { s.bottom };
    if s.sign == Sign::Minus {
        Leg::bwd(mor)
    } else {
        Leg::fwd(mor)
    }
}

fn identity_square(x: &FinCategory, l: Leg) -> SignedSquare {
    let s = squares::id_horizontal(x, l.mor);
    match l.dir {
        Dir::Fwd => s.signed(x),
        Dir::Bwd => s.plus().reflect_h(),
    }
}

impl Row {
    pub fn identity(x: &FinCategory, start: Obj, legs: &[Leg]) -> Row {
        Row { start, cells: legs.iter().map(|&l| identity_square(x, l)).collect() }
    }

    /// Vertical legs `v_0 … v_m` between and around the squares.
    pub fn verticals(&self, x: &FinCategory) -> Vec<Mor> {
        match self.cells.first() {
            None => vec![x.id(self.start)],
            Some(first) => std::iter::once(first.left).chain(self.cells.iter().map(|s| s.right)).collect(),
        }
    }

    pub fn top_legs(&self) -> Vec<Leg> {
        self.cells.iter().map(|s| square_leg(s, true)).collect()
    }

    pub fn bottom_legs(&self) -> Vec<Leg> {
        self.cells.iter().map(|s| square_leg(s, false)).collect()
    }

    pub fn top(&self, x: &FinCategory) -> Result<Zigzag> {
        reduce_zigzag(x, self.start, &self.top_legs())
    }

    pub fn bottom(&self, x: &FinCategory) -> Result<Zigzag> {
        reduce_zigzag(x, self.start, &self.bottom_legs())
    }

    pub fn check(&self, x: &FinCategory) -> Result<()> {
        for s in &self.cells {
            s.check(x)?;
        }
        for w in self.cells.windows(2) {
            if w[0].right != w[1].left {
                return Err(Error::EdgeMismatch(format!(
                    "adjacent squares share {} and {}",
                    x.mor_name(w[0].right),
                    x.mor_name(w[1].left)
                )));
            }
        }
        let v = self.verticals(x);
        if !x.is_identity(v[0]) || !x.is_identity(*v.last().unwrap()) {
            return Err(Error::BoundaryMismatch("row is not globular: end verticals must be identities".into()));
        }
        if x.src(v[0]) != self.start {
            return Err(Error::InconsistentEndpoints("row start object".into()));
        }
        chain_end(x, self.start, &self.top_legs())?;
        chain_end(x, self.start, &self.bottom_legs())?;
        Ok(())
    }

    /// All verticals are identities, so the row is an identity 2-cell.
    pub fn is_identity(&self, x: &FinCategory) -> bool {
        self.verticals(x).iter().all(|&v| x.is_identity(v))
    }

    /// Delete zero squares and paste maximal runs of equal sign.
    pub fn normalized(&self, x: &FinCategory) -> Row {
        let mut out: Vec<SignedSquare> = Vec::new();
        for s in &self.cells {
            if s.is_zero(x) {
                continue;
            }
            match out.last() {
                Some(prev) if prev.sign == s.sign => {
                    let p = hcompose_signed(x, s, prev).expect("adjacent squares of one sign paste");
                    *out.last_mut().unwrap() = p;
                }
                _ => out.push(*s),
            }
        }
        Row { start: self.start, cells: out }
    }

    pub fn whiskered(&self, x: &FinCategory, left: &[Leg], right: &[Leg]) -> Result<Row> {
        let start = match left.first() {
            Some(l) => l.from(x),
            None => self.start,
        };
        let mut cells: Vec<SignedSquare> = left.iter().map(|&l| identity_square(x, l)).collect();
        cells.extend(self.cells.iter().copied());
        cells.extend(right.iter().map(|&l| identity_square(x, l)));
        let row = Row { start, cells };
        row.check(x)?;
        Ok(row)
    }

    pub fn to_json(&self, x: &FinCategory) -> RowJson {
        RowJson { start: x.obj_name(self.start).to_string(), cells: self.cells.iter().map(|s| s.to_json(x)).collect() }
    }

    pub fn from_json(x: &FinCategory, j: &RowJson) -> Result<Row> {
        let cells = j.cells.iter().map(|s| SignedSquare::from_json(x, s)).collect::<Result<Vec<_>>>()?;
        let row = Row { start: x.obj(&j.start)?, cells };
        row.check(x)?;
        Ok(row)
    }

    pub fn display(&self, x: &FinCategory) -> String {
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|s| {
                format!(
                    "{}({} | {} {} | {})",
                    s.sign,
                    x.mor_name(s.top),
                    x.mor_name(s.left),
                    x.mor_name(s.right),
                    x.mor_name(s.bottom)
                )
            })
            .collect();
        format!("<{}>", cells.join(" "))
    }
}

/// A 2-cell presented as a vertical stack of rows, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StackCell {
    pub source: Zigzag,
    pub target: Zigzag,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackCellJson {
    pub source: ZigzagJson,
    pub target: ZigzagJson,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WhiskerSide {
    Left,
    Right,
}

impl StackCell {
    pub fn identity(z: &Zigzag) -> StackCell {
        StackCell { source: z.clone(), target: z.clone(), rows: Vec::new() }
    }

    pub fn check(&self, x: &FinCategory) -> Result<()> {
        let mut cur = self.source.clone();
        for (i, r) in self.rows.iter().enumerate() {
            r.check(x)?;
            let top = r.top(x)?;
            if top != cur {
                return Err(Error::BoundaryMismatch(format!(
                    "row {i} has top {} but the cell above ends in {}",
                    top.display(x),
                    cur.display(x)
                )));
            }
            cur = r.bottom(x)?;
        }
        if cur != self.target {
            return Err(Error::BoundaryMismatch(format!(
                "stack ends in {} but the target is {}",
                cur.display(x),
                self.target.display(x)
            )));
        }
        Ok(())
    }

    /// Rows normalized, identity rows dropped.
    pub fn tidy(&self, x: &FinCategory) -> StackCell {
        let rows = self.rows.iter().map(|r| r.normalized(x)).filter(|r| !r.is_identity(x)).collect();
        StackCell { source: self.source.clone(), target: self.target.clone(), rows }
    }

    pub fn generator_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_json(&self, x: &FinCategory) -> StackCellJson {
        StackCellJson {
            source: self.source.to_json(x),
            target: self.target.to_json(x),
            rows: self.rows.iter().map(|r| r.to_json(x)).collect(),
        }
    }

    pub fn from_json(x: &FinCategory, j: &StackCellJson) -> Result<StackCell> {
        let rows = j.rows.iter().map(|r| Row::from_json(x, r)).collect::<Result<Vec<_>>>()?;
        let c = StackCell { source: Zigzag::from_json(x, &j.source)?, target: Zigzag::from_json(x, &j.target)?, rows };
        c.check(x)?;
        Ok(c)
    }

    pub fn display(&self, x: &FinCategory) -> String {
        let mut s = format!("{} => {}", self.source.display(x), self.target.display(x));
        for r in &self.rows {
            s.push_str("\n  ");
            s.push_str(&r.display(x));
        }
        s
    }
}

/// Stack rows; no evaluation happens.
pub fn vstack(x: &FinCategory, rows: Vec<Row>) -> Result<StackCell> {
    let first = rows.first().ok_or_else(|| Error::BoundaryMismatch("vstack of no rows".into()))?;
    let source = first.top(x)?;
    let target = rows.last().unwrap().bottom(x)?;
    let c = StackCell { source, target, rows };
    c.check(x)?;
    Ok(c)
}

/// `lower ∘₂ upper`.
pub fn vcomp(x: &FinCategory, lower: &StackCell, upper: &StackCell) -> Result<StackCell> {
    if upper.target != lower.source {
        return Err(Error::BoundaryMismatch(format!("{} vs {}", upper.target.display(x), lower.source.display(x))));
    }
    let mut rows = upper.rows.clone();
    rows.extend(lower.rows.iter().cloned());
    Ok(StackCell { source: upper.source.clone(), target: lower.target.clone(), rows })
}

pub fn whisker(x: &FinCategory, cell: &StackCell, side: WhiskerSide, z: &Zigzag) -> Result<StackCell> {
    let (source, target, rows) = match side {
        WhiskerSide::Right => {
            let source = concat(x, &cell.source, z)?;
            let target = concat(x, &cell.target, z)?;
            let rows = cell.rows.iter().map(|r| r.whiskered(x, &[], &z.legs)).collect::<Result<Vec<_>>>()?;
            (source, target, rows)
        }
        WhiskerSide::Left => {
            let source = concat(x, z, &cell.source)?;
            let target = concat(x, z, &cell.target)?;
            let rows = cell.rows.iter().map(|r| r.whiskered(x, &z.legs, &[])).collect::<Result<Vec<_>>>()?;
            (source, target, rows)
        }
    };
    Ok(StackCell { source, target, rows })
}

/// `b ∘₁ a`: `a` on the left. Rows of `a` come first, padded on the right by `b`'s source.
pub fn hcomp(x: &FinCategory, b: &StackCell, a: &StackCell) -> Result<StackCell> {
    let first = whisker(x, a, WhiskerSide::Right, &b.source)?;
    let second = whisker(x, b, WhiskerSide::Left, &a.target)?;
    vcomp(x, &second, &first)
}

/// Unit `η_f : [] ⇒ [f→ f←]` as the row `[H(f)+, reflect(H(f))−]`.
pub fn eta(x: &FinCategory, f: Mor) -> StackCell {
    let h = squares::h_square(x, f);
    let row = Row { start: x.src(f), cells: vec![h.plus(), h.plus().reflect_h()] };
    stack_of(x, row)
}

/// Counit `ε_f : [f← f→] ⇒ []` as the row `[reflect(E(f))−, E(f)+]`.
pub fn epsilon(x: &FinCategory, f: Mor) -> StackCell {
    let e = squares::e_square(x, f);
    let row = Row { start: x.tgt(f), cells: vec![e.plus().reflect_h(), e.plus()] };
    stack_of(x, row)
}

fn stack_of(x: &FinCategory, row: Row) -> StackCell {
    let source = row.top(x).expect("generator rows chain");
    let target = row.bottom(x).expect("generator rows chain");
    StackCell { source, target, rows: vec![row] }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Fwd => "fwd",
            Dir::Bwd => "bwd",
        })
    }
}
