//! Commutative squares in a finite category, signed squares, and the `E`/`H`
//! companion squares.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finpres::{FinCategory, Mor};
use crate::{par, Error, Result};

/// `right ∘ top = bottom ∘ left`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub top: Mor,
    pub right: Mor,
    pub left: Mor,
    pub bottom: Mor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Zero => "0",
            Sign::Minus => "-",
        })
    }
}

/// A square as drawn. For `Minus` the horizontal legs point right to left, so
/// commutativity reads `left ∘ top = bottom ∘ right`. `Zero` squares have identity
/// horizontal legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSquare {
    pub top: Mor,
    pub right: Mor,
    pub left: Mor,
    pub bottom: Mor,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareJson {
    pub top: String,
    pub right: String,
    pub left: String,
    pub bottom: String,
    #[serde(default = "plus")]
    pub sign: Sign,
}

fn plus() -> Sign {
    Sign::Plus
}

fn names(x: &FinCategory, s: &Square) -> String {
    format!(
        "top {} right {} left {} bottom {}",
        x.mor_name(s.top),
        x.mor_name(s.right),
        x.mor_name(s.left),
        x.mor_name(s.bottom)
    )
}

pub fn make_square(x: &FinCategory, top: Mor, right: Mor, left: Mor, bottom: Mor) -> Result<Square> {
    let s = Square { top, right, left, bottom };
    let ends_ok = x.src(top) == x.src(left)
        && x.tgt(top) == x.src(right)
        && x.tgt(left) == x.src(bottom)
        && x.tgt(right) == x.tgt(bottom);
    if !ends_ok {
        return Err(Error::EdgeMismatch(names(x, &s)));
    }
    let a = x.compose(right, top)?;
    let b = x.compose(bottom, left)?;
    if a != b {
        return Err(Error::NotCommutative(x.mor_name(a).to_string(), x.mor_name(b).to_string()));
    }
    Ok(s)
}

/// `E_f`: top `f`, left `f`, identities elsewhere.
pub fn e_square(x: &FinCategory, f: Mor) -> Square {
    let y = x.id(x.tgt(f));
    Square { top: f, right: y, left: f, bottom: y }
}

/// `H_f`: right `f`, bottom `f`, identities elsewhere.
pub fn h_square(x: &FinCategory, f: Mor) -> Square {
    let i = x.id(x.src(f));
    Square { top: i, right: f, left: i, bottom: f }
}

/// `id₂(f→)`: top and bottom `f`, identity sides.
pub fn id_horizontal(x: &FinCategory, f: Mor) -> Square {
    Square { top: f, right: x.id(x.tgt(f)), left: x.id(x.src(f)), bottom: f }
}

/// `id₁(f↓)`: left and right `f`, identity top and bottom.
pub fn id_vertical(x: &FinCategory, f: Mor) -> Square {
    Square { top: x.id(x.src(f)), right: f, left: f, bottom: x.id(x.tgt(f)) }
}

/// `s2` to the right of `s1`.
pub fn hcompose(x: &FinCategory, s2: &Square, s1: &Square) -> Result<Square> {
    if s1.right != s2.left {
        return Err(Error::EdgeMismatch(format!("right {} vs left {}", x.mor_name(s1.right), x.mor_name(s2.left))));
    }
    let top = x.compose(s2.top, s1.top)?;
    let bottom = x.compose(s2.bottom, s1.bottom)?;
    make_square(x, top, s2.right, s1.left, bottom)
}

/// `s2` below `s1`.
pub fn vcompose(x: &FinCategory, s2: &Square, s1: &Square) -> Result<Square> {
    if s1.bottom != s2.top {
        return Err(Error::EdgeMismatch(format!("bottom {} vs top {}", x.mor_name(s1.bottom), x.mor_name(s2.top))));
    }
    let left = x.compose(s2.left, s1.left)?;
    let right = x.compose(s2.right, s1.right)?;
    make_square(x, s1.top, right, left, s2.bottom)
}

impl Square {
    pub fn signed(self, x: &FinCategory) -> SignedSquare {
        let sign = if x.is_identity(self.top) && x.is_identity(self.bottom) && self.left == self.right {
            Sign::Zero
        } else {
            Sign::Plus
        };
        SignedSquare { top: self.top, right: self.right, left: self.left, bottom: self.bottom, sign }
    }

    pub fn plus(self) -> SignedSquare {
        SignedSquare { top: self.top, right: self.right, left: self.left, bottom: self.bottom, sign: Sign::Plus }
    }

    pub fn to_json(&self, x: &FinCategory) -> SquareJson {
        self.plus().to_json(x)
    }

    pub fn display(&self, x: &FinCategory) -> String {
        names(x, self)
    }
}

/// The mirror image of a square, as a minus-signed square.
pub fn reflect_h(s: &Square) -> SignedSquare {
    s.plus().reflect_h()
}

impl SignedSquare {
    pub fn reflect_h(&self) -> SignedSquare {
        SignedSquare {
            top: self.top,
            right: self.left,
            left: self.right,
            bottom: self.bottom,
            sign: match self.sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
                Sign::Zero => Sign::Zero,
            },
        }
    }

    /// The square of `Sq²(X)` this one stands for.
    pub fn underlying(&self) -> Square {
        match self.sign {
            Sign::Minus => Square { top: self.top, right: self.left, left: self.right, bottom: self.bottom },
            _ => Square { top: self.top, right: self.right, left: self.left, bottom: self.bottom },
        }
    }

    /// Horizontal legs are identities and the sides agree.
    pub fn is_zero(&self, x: &FinCategory) -> bool {
        x.is_identity(self.top) && x.is_identity(self.bottom) && self.left == self.right
    }

    pub fn is_identity(&self, x: &FinCategory) -> bool {
        self.is_zero(x) && x.is_identity(self.left)
    }

    /// Geometric top zigzag leg: its direction (`true` for forward) and morphism.
    pub fn top_leg(&self) -> (bool, Mor) {
        (self.sign != Sign::Minus, self.top)
    }

    pub fn bottom_leg(&self) -> (bool, Mor) {
        (self.sign != Sign::Minus, self.bottom)
    }

    pub fn check(&self, x: &FinCategory) -> Result<()> {
        let u = self.underlying();
        make_square(x, u.top, u.right, u.left, u.bottom)?;
        if self.sign == Sign::Zero && !self.is_zero(x) {
            return Err(Error::EdgeMismatch("zero-signed square with a non-identity horizontal leg".into()));
        }
        Ok(())
    }

    pub fn to_json(&self, x: &FinCategory) -> SquareJson {
        SquareJson {
            top: x.mor_name(self.top).to_string(),
            right: x.mor_name(self.right).to_string(),
            left: x.mor_name(self.left).to_string(),
            bottom: x.mor_name(self.bottom).to_string(),
            sign: self.sign,
        }
    }

    pub fn from_json(x: &FinCategory, j: &SquareJson) -> Result<SignedSquare> {
        let s = SignedSquare {
            top: x.mor(&j.top)?,
            right: x.mor(&j.right)?,
            left: x.mor(&j.left)?,
            bottom: x.mor(&j.bottom)?,
            sign: j.sign,
        };
        s.check(x)?;
        Ok(s)
    }
}

/// Paste `s2` to the right of `s1` inside one sign block; zero squares glue to either.
pub fn hcompose_signed(x: &FinCategory, s2: &SignedSquare, s1: &SignedSquare) -> Result<SignedSquare> {
    if s1.right != s2.left {
        return Err(Error::EdgeMismatch(format!("right {} vs left {}", x.mor_name(s1.right), x.mor_name(s2.left))));
    }
    let sign = match (s1.sign, s2.sign) {
        (a, Sign::Zero) => a,
        (Sign::Zero, b) => b,
        (a, b) if a == b => a,
        _ => return Err(Error::NotComposable(format!("signs {} and {}", s1.sign, s2.sign))),
    };
    let (top, bottom) = match sign {
        Sign::Minus => (x.compose(s1.top, s2.top)?, x.compose(s1.bottom, s2.bottom)?),
        _ => (x.compose(s2.top, s1.top)?, x.compose(s2.bottom, s1.bottom)?),
    };
    Ok(SignedSquare { top, right: s2.right, left: s1.left, bottom, sign })
}

/// `s2` below `s1`, same sign block.
pub fn vcompose_signed(x: &FinCategory, s2: &SignedSquare, s1: &SignedSquare) -> Result<SignedSquare> {
    if s1.bottom != s2.top {
        return Err(Error::EdgeMismatch(format!("bottom {} vs top {}", x.mor_name(s1.bottom), x.mor_name(s2.top))));
    }
    let sign = match (s1.sign, s2.sign) {
        (a, Sign::Zero) => a,
        (Sign::Zero, b) => b,
        (a, b) if a == b => a,
        _ => return Err(Error::NotComposable(format!("signs {} and {}", s1.sign, s2.sign))),
    };
    Ok(SignedSquare {
        top: s1.top,
        right: x.compose(s2.right, s1.right)?,
        left: x.compose(s2.left, s1.left)?,
        bottom: s2.bottom,
        sign,
    })
}

/// `E ∘₁ H = id₂(f→)` and `E ∘₂ H = id₁(f↓)`.
pub fn companion_check(x: &FinCategory, f: Mor) -> bool {
    let e = e_square(x, f);
    let h = h_square(x, f);
    hcompose(x, &e, &h).ok() == Some(id_horizontal(x, f)) && vcompose(x, &e, &h).ok() == Some(id_vertical(x, f))
}

/// `(id₂(k→) ∘₁ E_h) ∘₂ (H_g ∘₁ id₂(f→))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub upper_left: Square,
    pub upper_right: Square,
    pub lower_left: Square,
    pub lower_right: Square,
}

impl Decomposition {
    pub fn repaste(&self, x: &FinCategory) -> Result<Square> {
        let upper = hcompose(x, &self.upper_right, &self.upper_left)?;
        let lower = hcompose(x, &self.lower_right, &self.lower_left)?;
        vcompose(x, &lower, &upper)
    }
}

pub fn decompose(x: &FinCategory, s: &Square) -> Decomposition {
    Decomposition {
        upper_left: id_horizontal(x, s.top),
        upper_right: h_square(x, s.right),
        lower_left: e_square(x, s.left),
        lower_right: id_horizontal(x, s.bottom),
    }
}

pub fn enumerate_squares(x: &FinCategory) -> Vec<Square> {
    let mors: Vec<Mor> = x.morphisms().collect();
    let mut out = par::flat_map(&mors, |&top| {
        let mut v = Vec::new();
        for right in x.morphisms().filter(|&r| x.src(r) == x.tgt(top)) {
            for left in x.morphisms().filter(|&l| x.src(l) == x.src(top)) {
                for bottom in x.morphisms().filter(|&b| x.src(b) == x.tgt(left) && x.tgt(b) == x.tgt(right)) {
                    if x.comp(right, top) == x.comp(bottom, left) {
                        v.push(Square { top, right, left, bottom });
                    }
                }
            }
        }
        v
    });
    out.sort();
    out
}

/// `rows[i][j]` is the square in row `i` (top to bottom), column `j` (left to right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridOfSquares {
    pub rows: Vec<Vec<Square>>,
}

impl GridOfSquares {
    pub fn new(x: &FinCategory, rows: Vec<Vec<Square>>) -> Result<GridOfSquares> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width || width == 0 {
                return Err(Error::EdgeMismatch(format!("row {i} has {} squares", row.len())));
            }
            for j in 1..row.len() {
                if row[j - 1].right != row[j].left {
                    return Err(Error::EdgeMismatch(format!("columns {} and {j} of row {i}", j - 1)));
                }
            }
            if i > 0 {
                for j in 0..width {
                    if rows[i - 1][j].bottom != row[j].top {
                        return Err(Error::EdgeMismatch(format!("rows {} and {i} at column {j}", i - 1)));
                    }
                }
            }
        }
        let _ = x;
        Ok(GridOfSquares { rows })
    }

    pub fn paste_rows_first(&self, x: &FinCategory) -> Result<Square> {
        let mut rows = Vec::new();
        for row in &self.rows {
            let mut acc = row[0];
            for s in &row[1..] {
                acc = hcompose(x, s, &acc)?;
            }
            rows.push(acc);
        }
        let mut acc = rows[0];
        for s in &rows[1..] {
            acc = vcompose(x, s, &acc)?;
        }
        Ok(acc)
    }

    pub fn paste_columns_first(&self, x: &FinCategory) -> Result<Square> {
        let width = self.rows[0].len();
        let mut cols = Vec::new();
        for j in 0..width {
            let mut acc = self.rows[0][j];
            for row in &self.rows[1..] {
                acc = vcompose(x, &row[j], &acc)?;
            }
            cols.push(acc);
        }
        let mut acc = cols[0];
        for s in &cols[1..] {
            acc = hcompose(x, s, &acc)?;
        }
        Ok(acc)
    }
}
