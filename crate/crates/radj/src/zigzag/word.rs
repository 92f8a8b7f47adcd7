use std::fmt;

use serde::{Deserialize, Serialize};

use super::{chain_end, reduce_zigzag, Dir, Leg, Row, StackCell, Zigzag, ZigzagJson};
use crate::finpres::{FinCategory, Mor, Obj};
use crate::squares::{self, Sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLetter {
    /// `id₂(f→)` or `id₂(f←)`
    Id(Dir, Mor),
    /// `η_f`
    Eta(Mor),
    /// `ε_f`
    Eps(Mor),
}

impl GenLetter {
    pub fn start(&self, x: &FinCategory) -> Obj {
        match *self {
            GenLetter::Id(d, m) => Leg { dir: d, mor: m }.from(x),
            GenLetter::Eta(m) => x.src(m),
            GenLetter::Eps(m) => x.tgt(m),
        }
    }

    pub fn source_legs(&self) -> Vec<Leg> {
        match *self {
            GenLetter::Id(d, m) => vec![Leg { dir: d, mor: m }],
            GenLetter::Eta(_) => Vec::new(),
            GenLetter::Eps(m) => vec![Leg::bwd(m), Leg::fwd(m)],
        }
    }

    pub fn target_legs(&self) -> Vec<Leg> {
        match *self {
            GenLetter::Id(d, m) => vec![Leg { dir: d, mor: m }],
            GenLetter::Eta(m) => vec![Leg::fwd(m), Leg::bwd(m)],
            GenLetter::Eps(_) => Vec::new(),
        }
    }

    pub fn is_generator(&self) -> bool {
        !matches!(self, GenLetter::Id(..))
    }

    pub fn squares(&self, x: &FinCategory) -> Vec<squares::SignedSquare> {
        match *self {
            GenLetter::Id(d, m) => {
                let s = squares::id_horizontal(x, m).plus();
                vec![if d == Dir::Fwd { s } else { s.reflect_h() }]
            }
            GenLetter::Eta(m) => {
                let h = squares::h_square(x, m).plus();
                vec![h, h.reflect_h()]
            }
            GenLetter::Eps(m) => {
                let e = squares::e_square(x, m).plus();
                vec![e.reflect_h(), e]
            }
        }
    }

    pub fn display(&self, x: &FinCategory) -> String {
        match *self {
            GenLetter::Id(d, m) => format!("{}{}", x.mor_name(m), d.arrow()),
            GenLetter::Eta(m) => format!("η({})", x.mor_name(m)),
            GenLetter::Eps(m) => format!("ε({})", x.mor_name(m)),
        }
    }

    /// `fwd:f`, `bwd:f`, `eta:f`, `eps:f`.
    pub fn to_token(&self, x: &FinCategory) -> String {
        match *self {
            GenLetter::Id(d, m) => format!("{d}:{}", x.mor_name(m)),
            GenLetter::Eta(m) => format!("eta:{}", x.mor_name(m)),
            GenLetter::Eps(m) => format!("eps:{}", x.mor_name(m)),
        }
    }

    pub fn from_token(x: &FinCategory, t: &str) -> Result<GenLetter> {
        let (kind, m) = t.split_once(':').ok_or_else(|| Error::Parse(format!("letter {t:?} needs kind:morphism")))?;
        let m = x.mor(m)?;
        Ok(match kind {
            "fwd" => GenLetter::Id(Dir::Fwd, m),
            "bwd" => GenLetter::Id(Dir::Bwd, m),
            "eta" => GenLetter::Eta(m),
            "eps" => GenLetter::Eps(m),
            _ => return Err(Error::Parse(format!("unknown letter kind {kind:?}"))),
        })
    }
}

/// One `∘₁`-word of letters, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordLayer {
    pub start: Obj,
    pub letters: Vec<GenLetter>,
}

impl WordLayer {
    fn chain(&self, x: &FinCategory) -> Result<()> {
        let mut cur = self.start;
        for l in &self.letters {
            if l.start(x) != cur {
                return Err(Error::InconsistentEndpoints(format!(
                    "letter {} starts at {}, expected {}",
                    l.display(x),
                    x.obj_name(l.start(x)),
                    x.obj_name(cur)
                )));
            }
            let legs = l.source_legs();
            cur = chain_end(x, cur, &legs)?;
        }
        Ok(())
    }

    pub fn source_legs(&self) -> Vec<Leg> {
        self.letters.iter().flat_map(|l| l.source_legs()).collect()
    }

    pub fn target_legs(&self) -> Vec<Leg> {
        self.letters.iter().flat_map(|l| l.target_legs()).collect()
    }

    pub fn source(&self, x: &FinCategory) -> Result<Zigzag> {
        self.chain(x)?;
        reduce_zigzag(x, self.start, &self.source_legs())
    }

    pub fn target(&self, x: &FinCategory) -> Result<Zigzag> {
        self.chain(x)?;
        reduce_zigzag(x, self.start, &self.target_legs())
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|l| !l.is_generator())
    }

    pub fn row(&self, x: &FinCategory) -> Row {
        Row { start: self.start, cells: self.letters.iter().flat_map(|l| l.squares(x)).collect() }
    }

    pub fn display(&self, x: &FinCategory) -> String {
        if self.letters.is_empty() {
            return format!("id[] at {}", x.obj_name(self.start));
        }
        self.letters.iter().map(|l| l.display(x)).collect::<Vec<_>>().join(" ")
    }
}

/// A vertical chain of layers, first layer applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord {
    pub source: Zigzag,
    pub layers: Vec<WordLayer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordLayerJson {
    pub start: String,
    pub letters: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWordJson {
    pub source: ZigzagJson,
    pub layers: Vec<WordLayerJson>,
}

impl GeneratorWord {
    pub fn identity(z: &Zigzag) -> GeneratorWord {
        GeneratorWord { source: z.clone(), layers: Vec::new() }
    }

    pub fn target(&self, x: &FinCategory) -> Result<Zigzag> {
        let mut cur = self.source.clone();
        for (i, l) in self.layers.iter().enumerate() {
            let s = l.source(x)?;
            if s != cur {
                return Err(Error::BoundaryMismatch(format!(
                    "layer {i} has source {} but receives {}",
                    s.display(x),
                    cur.display(x)
                )));
            }
            cur = l.target(x)?;
        }
        Ok(cur)
    }

    pub fn check(&self, x: &FinCategory) -> Result<()> {
        self.target(x).map(|_| ())
    }

    /// Number of `η`/`ε` letters.
    pub fn generator_count(&self) -> usize {
        self.layers.iter().flat_map(|l| &l.letters).filter(|l| l.is_generator()).count()
    }

    pub fn eval(&self, x: &FinCategory) -> Result<StackCell> {
        let target = self.target(x)?;
        Ok(StackCell { source: self.source.clone(), target, rows: self.layers.iter().map(|l| l.row(x)).collect() })
    }

    pub fn display(&self, x: &FinCategory) -> String {
        if self.layers.is_empty() {
            return format!("id({})", self.source.display(x));
        }
        self.layers.iter().map(|l| format!("[{}]", l.display(x))).collect::<Vec<_>>().join(" ; ")
    }

    pub fn to_json(&self, x: &FinCategory) -> GeneratorWordJson {
        GeneratorWordJson {
            source: self.source.to_json(x),
            layers: self
                .layers
                .iter()
                .map(|l| WordLayerJson {
                    start: x.obj_name(l.start).to_string(),
                    letters: l.letters.iter().map(|g| g.to_token(x)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(x: &FinCategory, j: &GeneratorWordJson) -> Result<GeneratorWord> {
        let layers = j
            .layers
            .iter()
            .map(|l| {
                Ok(WordLayer {
                    start: x.obj(&l.start)?,
                    letters: l.letters.iter().map(|t| GenLetter::from_token(x, t)).collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let w = GeneratorWord { source: Zigzag::from_json(x, &j.source)?, layers };
        w.check(x)?;
        Ok(w)
    }
}

impl fmt::Display for GenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLetter::Id(d, m) => write!(f, "{d}:{m}"),
            GenLetter::Eta(m) => write!(f, "eta:{m}"),
            GenLetter::Eps(m) => write!(f, "eps:{m}"),
        }
    }
}

fn push_id(x: &FinCategory, out: &mut Vec<GenLetter>, dir: Dir, m: Mor) {
    if !x.is_identity(m) {
        out.push(GenLetter::Id(dir, m));
    }
}

fn leg_dir(s: Sign) -> Dir {
    if s == Sign::Minus {
        Dir::Bwd
    } else {
        Dir::Fwd
    }
}

/// Factor a row into a unit layer followed by a counit layer: every plus-to-minus
/// sign change contributes `η` of the vertical at that cut, every minus-to-plus
/// change contributes `ε`.
pub fn normalize_row(x: &FinCategory, row: &Row) -> Vec<WordLayer> {
    let row = row.normalized(x);
    let v = row.verticals(x);
    let m = row.cells.len();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for (i, s) in row.cells.iter().enumerate() {
        push_id(x, &mut up, leg_dir(s.sign), s.top);
        if i + 1 < m && s.sign == Sign::Plus && row.cells[i + 1].sign == Sign::Minus && !x.is_identity(v[i + 1]) {
            up.push(GenLetter::Eta(v[i + 1]));
        }
    }
    for (i, s) in row.cells.iter().enumerate() {
        if i > 0 && row.cells[i - 1].sign == Sign::Minus && s.sign == Sign::Plus && !x.is_identity(v[i]) {
            down.push(GenLetter::Eps(v[i]));
        }
        push_id(x, &mut down, leg_dir(s.sign), s.bottom);
    }
    let start = row.start;
    [WordLayer { start, letters: up }, WordLayer { start, letters: down }]
        .into_iter()
        .filter(|l| !l.is_identity())
        .collect()
}

/// Concatenate the factorizations of every row.
pub fn normalize(x: &FinCategory, cell: &StackCell) -> GeneratorWord {
    GeneratorWord { source: cell.source.clone(), layers: cell.rows.iter().flat_map(|r| normalize_row(x, r)).collect() }
}
