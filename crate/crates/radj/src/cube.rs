//! Faces of the combinatorial cube, parity, boundary pastings, grid cubes and the
//! collapse map onto the walking cell.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    P0,
    P1,
    I,
}

impl Letter {
    fn point(l: u8) -> Letter {
        if l == 0 {
            Letter::P0
        } else {
            Letter::P1
        }
    }
}

/// A face of `I^n`, most significant coordinate first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub Vec<Letter>);

impl Face {
    pub fn top(n: usize) -> Face {
        Face(vec![Letter::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|&&a| a == Letter::I).count()
    }

    pub fn is_top(&self) -> bool {
        self.0.iter().all(|&a| a == Letter::I)
    }

    fn with(&self, i: usize, a: Letter) -> Face {
        let mut w = self.0.clone();
        w[i] = a;
        Face(w)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            f.write_str(match a {
                Letter::P0 => "0",
                Letter::P1 => "1",
                Letter::I => "I",
            })?;
        }
        Ok(())
    }
}

/// Accepts `0I1` as well as space-separated `P0 I P1`.
impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Face> {
        let s = s.trim();
        let tokens: Vec<&str> = if s.contains(char::is_whitespace) {
            s.split_whitespace().collect()
        } else {
            s.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut out = Vec::with_capacity(tokens.len());
        for t in tokens {
            out.push(match t {
                "0" | "P0" | "p0" => Letter::P0,
                "1" | "P1" | "p1" => Letter::P1,
                "I" | "i" => Letter::I,
                _ => return Err(Error::Parse(format!("bad face letter {t:?} in {s:?}"))),
            });
        }
        Ok(Face(out))
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Face, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn parity(self) -> Parity {
        match self {
            Side::Source => Parity::Even,
            Side::Target => Parity::Odd,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Side::Source => 0,
            Side::Target => 1,
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "source" | "src" | "s" => Ok(Side::Source),
            "target" | "tgt" | "t" => Ok(Side::Target),
            _ => Err(Error::Parse(format!("bad side {s:?}"))),
        }
    }
}

pub fn all_faces(n: usize) -> Vec<Face> {
    let mut out = vec![Face(Vec::new())];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                [Letter::P0, Letter::P1, Letter::I].into_iter().map(move |a| {
                    let mut w = f.0.clone();
                    w.push(a);
                    Face(w)
                })
            })
            .collect();
    }
    out
}

pub fn contains(f: &Face, g: &Face) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    Ok(f.0.iter().zip(&g.0).all(|(a, b)| a == b || *b == Letter::I))
}

/// Parity of a codimension-one subface, via erasure of the point letters of `g`.
pub fn parity(f: &Face, g: &Face) -> Result<Parity> {
    if !contains(f, g)? || f.dim() + 1 != g.dim() {
        return Err(Error::NotCodimOne(f.to_string(), g.to_string()));
    }
    let mut r = 0;
    let mut l = 0;
    let mut pos = 0;
    for (a, b) in f.0.iter().zip(&g.0) {
        if *b != Letter::I {
            continue;
        }
        pos += 1;
        match a {
            Letter::P0 => r = pos,
            Letter::P1 => {
                r = pos;
                l = 1;
            }
            Letter::I => {}
        }
    }
    Ok(if (r + l + g.dim()).is_multiple_of(2) { Parity::Even } else { Parity::Odd })
}

fn facet_set(g: &Face, p: Parity) -> Vec<Face> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        if g.0[i] == Letter::I {
            for a in [Letter::P0, Letter::P1] {
                let f = g.with(i, a);
                if parity(&f, g) == Ok(p) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Codimension-one subfaces of the given parity, in pasting order (first applied
/// first) for `dim g ≤ 3`, and by coordinate otherwise.
pub fn facets(g: &Face, p: Parity) -> Vec<Face> {
    let set = facet_set(g, p);
    let side = if p == Parity::Even { Side::Source } else { Side::Target };
    match g.dim() {
        2 => {
            let (a, b) = (&set[0], &set[1]);
            if edge_end(a, Side::Target) == edge_end(b, Side::Source) {
                vec![a.clone(), b.clone()]
            } else {
                vec![b.clone(), a.clone()]
            }
        }
        3 => match assemble3(g, side) {
            Ok(c) => c.layers.iter().map(|l| l.face.clone()).collect(),
            Err(_) => set,
        },
        _ => set,
    }
}

fn edge_end(e: &Face, side: Side) -> Face {
    let i = e.0.iter().position(|&a| a == Letter::I).expect("an edge");
    e.with(i, Letter::point(side.bit()))
}

/// Formal pasting of cube cells. `Comp(j, a, b)` is `a ∘_j b` with `b` applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PastingExpr {
    Face(Face),
    Id(Box<PastingExpr>),
    Comp(usize, Box<PastingExpr>, Box<PastingExpr>),
}

impl PastingExpr {
    pub fn face(f: Face) -> PastingExpr {
        PastingExpr::Face(f)
    }

    pub fn id(e: PastingExpr) -> PastingExpr {
        PastingExpr::Id(Box::new(e))
    }

    pub fn comp(j: usize, a: PastingExpr, b: PastingExpr) -> PastingExpr {
        PastingExpr::Comp(j, Box::new(a), Box::new(b))
    }

    pub fn dim(&self) -> usize {
        match self {
            PastingExpr::Face(f) => f.dim(),
            PastingExpr::Id(e) => e.dim() + 1,
            PastingExpr::Comp(_, a, _) => a.dim(),
        }
    }

    pub fn boundary(&self, side: Side) -> Result<PastingExpr> {
        match self {
            PastingExpr::Face(f) => boundary_face(f, side),
            PastingExpr::Id(e) => Ok((**e).clone()),
            PastingExpr::Comp(j, a, b) => {
                let d = self.dim();
                if d == 0 {
                    return Err(Error::DimensionUnsupported("boundary of a 0-cell".into()));
                }
                if *j == d {
                    match side {
                        Side::Source => b.boundary(side),
                        Side::Target => a.boundary(side),
                    }
                } else {
                    Ok(PastingExpr::comp(*j, a.boundary(side)?, b.boundary(side)?))
                }
            }
        }
    }

    /// Check every composite node, returning the normal form on success.
    pub fn well_formed(&self) -> Result<Nf> {
        nf(self)
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            PastingExpr::Face(f) => format!("(face {f})"),
            PastingExpr::Id(e) => format!("(id {})", e.to_sexpr()),
            PastingExpr::Comp(j, a, b) => format!("(c{j} {} {})", a.to_sexpr(), b.to_sexpr()),
        }
    }

    pub fn parse_sexpr(s: &str) -> Result<PastingExpr> {
        let tokens: Vec<String> =
            s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect();
        let mut pos = 0;
        let e = parse_tokens(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing input after s-expression".into()));
        }
        Ok(e)
    }
}

fn parse_tokens(t: &[String], pos: &mut usize) -> Result<PastingExpr> {
    let bad = || Error::Parse("malformed pasting s-expression".into());
    let next = |pos: &mut usize| -> Result<String> {
        let s = t.get(*pos).cloned().ok_or_else(bad)?;
        *pos += 1;
        Ok(s)
    };
    if next(pos)? != "(" {
        return Err(bad());
    }
    let head = next(pos)?;
    let e = if head == "face" {
        PastingExpr::Face(next(pos)?.parse()?)
    } else if head == "id" {
        PastingExpr::id(parse_tokens(t, pos)?)
    } else if let Some(j) = head.strip_prefix('c') {
        let j: usize = j.parse().map_err(|_| bad())?;
        let a = parse_tokens(t, pos)?;
        let b = parse_tokens(t, pos)?;
        PastingExpr::comp(j, a, b)
    } else {
        return Err(bad());
    };
    if next(pos)? != ")" {
        return Err(bad());
    }
    Ok(e)
}

impl fmt::Display for PastingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Path of edges through the cube, first edge first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: Face,
    pub edges: Vec<Face>,
}

impl Path {
    pub fn end(&self) -> Face {
        self.edges.last().map(|e| edge_end(e, Side::Target)).unwrap_or_else(|| self.start.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub offset: usize,
    pub face: Face,
}

/// A 2-cell as a source path and a sequence of whiskered 2-face applications.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell2 {
    pub src: Path,
    pub layers: Vec<Layer>,
}

/// A 3-cell by its 2-dimensional boundary and its generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell3 {
    pub src: Cell2,
    pub tgt: Cell2,
    pub gens: Vec<Face>,
}

/// Normal forms: exact for dimension ≤ 2 (modulo interchange), generator lists in dimension 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Nf {
    Vertex(Face),
    Path(Path),
    Cell2(Cell2),
    Cell3(Cell3),
}

impl Nf {
    pub fn dim(&self) -> usize {
        match self {
            Nf::Vertex(_) => 0,
            Nf::Path(_) => 1,
            Nf::Cell2(_) => 2,
            Nf::Cell3(_) => 3,
        }
    }

    pub fn boundary(&self, side: Side) -> Result<Nf> {
        Ok(match self {
            Nf::Vertex(_) => return Err(Error::DimensionUnsupported("boundary of a 0-cell".into())),
            Nf::Path(p) => Nf::Vertex(match side {
                Side::Source => p.start.clone(),
                Side::Target => p.end(),
            }),
            Nf::Cell2(c) => Nf::Path(match side {
                Side::Source => c.src.clone(),
                Side::Target => cell2_target(c)?,
            }),
            Nf::Cell3(c) => Nf::Cell2(match side {
                Side::Source => c.src.clone(),
                Side::Target => c.tgt.clone(),
            }),
        })
    }

    /// Canonical representative for comparison.
    pub fn canonical(&self) -> Nf {
        match self {
            Nf::Cell2(c) => Nf::Cell2(canonical2(c)),
            Nf::Cell3(c) => {
                let mut gens = c.gens.clone();
                gens.sort();
                Nf::Cell3(Cell3 { src: canonical2(&c.src), tgt: canonical2(&c.tgt), gens })
            }
            other => other.clone(),
        }
    }

    pub fn equiv(&self, other: &Nf) -> bool {
        self.canonical() == other.canonical()
    }
}

fn face_path(f: &Face, side: Side) -> Result<Path> {
    match nf(&boundary_face(f, side)?)? {
        Nf::Path(p) => Ok(p),
        _ => unreachable!("boundary of a 2-face is a path"),
    }
}

fn apply_layer(path: &[Face], layer: &Layer) -> Result<Vec<Face>> {
    let s = face_path(&layer.face, Side::Source)?;
    let t = face_path(&layer.face, Side::Target)?;
    let o = layer.offset;
    if o + s.edges.len() > path.len() || path[o..o + s.edges.len()] != s.edges[..] {
        return Err(Error::BoundaryMismatch(format!("{} does not apply at offset {o}", layer.face)));
    }
    let mut out = path[..o].to_vec();
    out.extend(t.edges);
    out.extend_from_slice(&path[o + s.edges.len()..]);
    Ok(out)
}

pub fn cell2_target(c: &Cell2) -> Result<Path> {
    let mut p = c.src.edges.clone();
    for l in &c.layers {
        p = apply_layer(&p, l)?;
    }
    Ok(Path { start: c.src.start.clone(), edges: p })
}

fn layer_widths(l: &Layer) -> (usize, usize) {
    let s = face_path(&l.face, Side::Source).map(|p| p.edges.len()).unwrap_or(0);
    let t = face_path(&l.face, Side::Target).map(|p| p.edges.len()).unwrap_or(0);
    (s, t)
}

/// Swap two consecutive independent layers, if they are independent.
fn swap_layers(a: &Layer, b: &Layer) -> Option<(Layer, Layer)> {
    let (sa, ta) = layer_widths(a);
    let (sb, tb) = layer_widths(b);
    if b.offset + sb <= a.offset {
        Some((
            Layer { offset: b.offset, face: b.face.clone() },
            Layer { offset: a.offset + tb - sb, face: a.face.clone() },
        ))
    } else if b.offset >= a.offset + ta {
        Some((
            Layer { offset: b.offset + sa - ta, face: b.face.clone() },
            Layer { offset: a.offset, face: a.face.clone() },
        ))
    } else {
        None
    }
}

/// Least representative of the interchange class.
fn canonical2(c: &Cell2) -> Cell2 {
    let mut seen: HashSet<Vec<Layer>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(c.layers.clone());
    queue.push_back(c.layers.clone());
    while let Some(ls) = queue.pop_front() {
        for i in 0..ls.len().saturating_sub(1) {
            if let Some((x, y)) = swap_layers(&ls[i], &ls[i + 1]) {
                let mut m = ls.clone();
                m[i] = x;
                m[i + 1] = y;
                if seen.insert(m.clone()) {
                    queue.push_back(m);
                }
            }
        }
    }
    let layers = seen.into_iter().min().unwrap_or_default();
    Cell2 { src: c.src.clone(), layers }
}

fn mismatch(e: &PastingExpr) -> Error {
    Error::BoundaryMismatch(format!("ill-formed composite {}", e.to_sexpr()))
}

/// Normal form, checking well-formedness at every node.
pub fn nf(e: &PastingExpr) -> Result<Nf> {
    match e {
        PastingExpr::Face(f) => match f.dim() {
            0 => Ok(Nf::Vertex(f.clone())),
            1 => Ok(Nf::Path(Path { start: edge_end(f, Side::Source), edges: vec![f.clone()] })),
            2 => Ok(Nf::Cell2(Cell2 {
                src: face_path(f, Side::Source)?,
                layers: vec![Layer { offset: 0, face: f.clone() }],
            })),
            3 => {
                let src = nf(&boundary_face(f, Side::Source)?)?;
                let tgt = nf(&boundary_face(f, Side::Target)?)?;
                match (src, tgt) {
                    (Nf::Cell2(s), Nf::Cell2(t)) => Ok(Nf::Cell3(Cell3 { src: s, tgt: t, gens: vec![f.clone()] })),
                    _ => unreachable!(),
                }
            }
            d => Err(Error::DimensionUnsupported(format!("normal form of a {d}-face"))),
        },
        PastingExpr::Id(inner) => match nf(inner)? {
            Nf::Vertex(v) => Ok(Nf::Path(Path { start: v, edges: Vec::new() })),
            Nf::Path(p) => Ok(Nf::Cell2(Cell2 { src: p, layers: Vec::new() })),
            Nf::Cell2(c) => Ok(Nf::Cell3(Cell3 { src: c.clone(), tgt: c, gens: Vec::new() })),
            Nf::Cell3(_) => Err(Error::DimensionUnsupported("identity on a 3-cell".into())),
        },
        PastingExpr::Comp(j, a, b) => {
            let na = nf(a)?;
            let nb = nf(b)?;
            let d = na.dim();
            if nb.dim() != d || *j == 0 || *j > d {
                return Err(mismatch(e));
            }
            let mut ta = nb.clone();
            let mut sa = na.clone();
            for _ in 0..=(d - *j) {
                ta = ta.boundary(Side::Target)?;
                sa = sa.boundary(Side::Source)?;
            }
            if !ta.equiv(&sa) {
                return Err(mismatch(e));
            }
            compose_nf(*j, &na, &nb).ok_or_else(|| mismatch(e))
        }
    }
}

fn hcomp2(a: &Cell2, b: &Cell2) -> Option<Cell2> {
    let tb = cell2_target(b).ok()?;
    let mut edges = b.src.edges.clone();
    edges.extend(a.src.edges.iter().cloned());
    let mut layers = b.layers.clone();
    layers.extend(a.layers.iter().map(|l| Layer { offset: l.offset + tb.edges.len(), face: l.face.clone() }));
    Some(Cell2 { src: Path { start: b.src.start.clone(), edges }, layers })
}

fn vcomp2(a: &Cell2, b: &Cell2) -> Cell2 {
    let mut layers = b.layers.clone();
    layers.extend(a.layers.iter().cloned());
    Cell2 { src: b.src.clone(), layers }
}

fn compose_nf(j: usize, a: &Nf, b: &Nf) -> Option<Nf> {
    match (a, b) {
        (Nf::Path(pa), Nf::Path(pb)) => {
            let mut edges = pb.edges.clone();
            edges.extend(pa.edges.iter().cloned());
            Some(Nf::Path(Path { start: pb.start.clone(), edges }))
        }
        (Nf::Cell2(ca), Nf::Cell2(cb)) => Some(Nf::Cell2(if j == 2 { vcomp2(ca, cb) } else { hcomp2(ca, cb)? })),
        (Nf::Cell3(ca), Nf::Cell3(cb)) => {
            let mut gens = cb.gens.clone();
            gens.extend(ca.gens.iter().cloned());
            let (src, tgt) = match j {
                3 => (cb.src.clone(), ca.tgt.clone()),
                2 => (vcomp2(&ca.src, &cb.src), vcomp2(&ca.tgt, &cb.tgt)),
                _ => (hcomp2(&ca.src, &cb.src)?, hcomp2(&ca.tgt, &cb.tgt)?),
            };
            Some(Nf::Cell3(Cell3 { src, tgt, gens }))
        }
        _ => None,
    }
}

fn path_expr(p: &Path) -> PastingExpr {
    let mut it = p.edges.iter();
    match it.next() {
        None => PastingExpr::id(PastingExpr::Face(p.start.clone())),
        Some(first) => {
            it.fold(PastingExpr::Face(first.clone()), |acc, e| PastingExpr::comp(1, PastingExpr::Face(e.clone()), acc))
        }
    }
}

/// Expression for a 2-cell given as source path and layers.
pub fn cell2_expr(c: &Cell2) -> Result<PastingExpr> {
    let mut current = c.src.edges.clone();
    let mut acc: Option<PastingExpr> = None;
    for l in &c.layers {
        let s = face_path(&l.face, Side::Source)?;
        let mut e = PastingExpr::Face(l.face.clone());
        if l.offset > 0 {
            let pre = Path { start: c.src.start.clone(), edges: current[..l.offset].to_vec() };
            e = PastingExpr::comp(1, e, PastingExpr::id(path_expr(&pre)));
        }
        let rest = l.offset + s.edges.len();
        if rest < current.len() {
            let post = Path { start: edge_end(&current[rest], Side::Source), edges: current[rest..].to_vec() };
            e = PastingExpr::comp(1, PastingExpr::id(path_expr(&post)), e);
        }
        current = apply_layer(&current, l)?;
        acc = Some(match acc {
            None => e,
            Some(prev) => PastingExpr::comp(2, e, prev),
        });
    }
    Ok(acc.unwrap_or_else(|| PastingExpr::id(path_expr(&c.src))))
}

/// Vertices of `g` in some monotone order: all monotone edge paths from the least vertex.
fn monotone_paths(g: &Face) -> Vec<Path> {
    let free: Vec<usize> = (0..g.len()).filter(|&i| g.0[i] == Letter::I).collect();
    let start = Face(g.0.iter().map(|&a| if a == Letter::I { Letter::P0 } else { a }).collect());
    let mut out = Vec::new();
    for perm in permutations(&free) {
        let mut v = start.clone();
        let mut edges = Vec::new();
        for &i in &perm {
            edges.push(v.with(i, Letter::I));
            v = v.with(i, Letter::P1);
        }
        out.push(Path { start: start.clone(), edges });
    }
    out
}

fn permutations<T: Clone>(xs: &[T]) -> Vec<Vec<T>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

fn assemble3(g: &Face, side: Side) -> Result<Cell2> {
    let set = facet_set(g, side.parity());
    let mut found: BTreeSet<Cell2> = BTreeSet::new();
    for start in monotone_paths(g) {
        for order in permutations(&set) {
            let mut chains = vec![(start.edges.clone(), Vec::new())];
            for f in &order {
                let s = face_path(f, Side::Source)?;
                let mut next = Vec::new();
                for (path, layers) in chains {
                    for o in 0..=path.len().saturating_sub(s.edges.len()) {
                        let l = Layer { offset: o, face: f.clone() };
                        if let Ok(p) = apply_layer(&path, &l) {
                            let mut ls: Vec<Layer> = layers.clone();
                            ls.push(l);
                            next.push((p, ls));
                        }
                    }
                }
                chains = next;
            }
            for (_, layers) in chains {
                let c = Cell2 { src: start.clone(), layers };
                found.insert(canonical2(&c));
            }
        }
    }
    if found.len() != 1 {
        return Err(Error::BoundaryMismatch(format!(
            "{} pastings of the {} facets of {g}",
            found.len(),
            side.parity()
        )));
    }
    Ok(found.into_iter().next().unwrap())
}

/// The unique pasting of the even (source) or odd (target) facets of a face.
pub fn boundary_face(f: &Face, side: Side) -> Result<PastingExpr> {
    match f.dim() {
        0 => Err(Error::DimensionUnsupported(format!("boundary of the 0-face {f}"))),
        1 => Ok(PastingExpr::Face(edge_end(f, side))),
        2 => {
            let fs = facets(f, side.parity());
            if edge_end(&fs[0], Side::Target) != edge_end(&fs[1], Side::Source) {
                return Err(Error::BoundaryMismatch(format!("facets of {f} do not chain")));
            }
            Ok(PastingExpr::comp(1, PastingExpr::Face(fs[1].clone()), PastingExpr::Face(fs[0].clone())))
        }
        3 => cell2_expr(&assemble3(f, side)?),
        d => Err(Error::DimensionUnsupported(format!("pasting assembly for a {d}-face"))),
    }
}

/// Boundary of a face or a pasting expression.
pub fn boundary(e: &PastingExpr, side: Side) -> Result<PastingExpr> {
    if e.dim() == 0 {
        return Err(Error::DimensionUnsupported("boundary of a 0-cell".into()));
    }
    if e.dim() > 3 {
        return Err(Error::DimensionUnsupported(format!("boundary of a {}-cell", e.dim())));
    }
    e.boundary(side)
}

/// `∂∂`-globularity for an expression of dimension ≥ 2.
pub fn globular(e: &PastingExpr) -> Result<bool> {
    let s = nf(&e.boundary(Side::Source)?)?;
    let t = nf(&e.boundary(Side::Target)?)?;
    Ok(s.boundary(Side::Source)?.equiv(&t.boundary(Side::Source)?)
        && s.boundary(Side::Target)?.equiv(&t.boundary(Side::Target)?))
}

// ---------------------------------------------------------------- walking cells

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    /// `J^k q^l`
    J { k: usize, l: u8 },
    /// `J^n`
    Top { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkingCell {
    pub base: Base,
    pub id_wraps: usize,
}

impl WalkingCell {
    pub fn base_dim(&self) -> usize {
        match self.base {
            Base::J { k, .. } => k,
            Base::Top { n } => n,
        }
    }

    pub fn dim(&self) -> usize {
        self.base_dim() + self.id_wraps
    }

    pub fn boundary(&self, side: Side) -> Result<WalkingCell> {
        if self.id_wraps > 0 {
            return Ok(WalkingCell { base: self.base, id_wraps: self.id_wraps - 1 });
        }
        let k = self.base_dim();
        if k == 0 {
            return Err(Error::DimensionUnsupported("boundary of an object".into()));
        }
        Ok(WalkingCell { base: Base::J { k: k - 1, l: side.bit() }, id_wraps: 0 })
    }

    fn iterated(&self, m: usize, side: Side) -> Result<WalkingCell> {
        let mut c = *self;
        while c.dim() > m {
            c = c.boundary(side)?;
        }
        Ok(c)
    }

    /// `self ∘_j other` with `other` first.
    pub fn comp(&self, j: usize, other: &WalkingCell) -> Result<WalkingCell> {
        let (a, b) = (self, other);
        if a.dim() != b.dim() || j == 0 || j > a.dim() {
            return Err(Error::NotComposable(format!("{a} ∘{j} {b}")));
        }
        if b.iterated(j - 1, Side::Target)? != a.iterated(j - 1, Side::Source)? {
            return Err(Error::BoundaryMismatch(format!("{a} ∘{j} {b}")));
        }
        let a_triv = a.base_dim() < j;
        let b_triv = b.base_dim() < j;
        match (a_triv, b_triv) {
            (true, true) if a == b => Ok(*a),
            (true, false) => Ok(*b),
            (false, true) => Ok(*a),
            _ => Err(Error::NotComposable(format!("{a} ∘{j} {b}"))),
        }
    }
}

impl fmt::Display for WalkingCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id_wraps > 0 {
            write!(f, "id^{}(", self.id_wraps)?;
        }
        match self.base {
            Base::J { k, l } => write!(f, "J^{k}q^{l}")?,
            Base::Top { n } => write!(f, "J^{n}")?,
        }
        if self.id_wraps > 0 {
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn kappa(f: &Face) -> WalkingCell {
    if f.is_top() {
        return WalkingCell { base: Base::Top { n: f.len() }, id_wraps: 0 };
    }
    let k = f.0.iter().take_while(|&&a| a == Letter::I).count();
    let l = if f.0[k] == Letter::P1 { 1 } else { 0 };
    WalkingCell { base: Base::J { k, l }, id_wraps: f.dim() - k }
}

/// Push the collapse map through a pasting expression.
pub fn kappa_expr(e: &PastingExpr) -> Result<WalkingCell> {
    match e {
        PastingExpr::Face(f) => Ok(kappa(f)),
        PastingExpr::Id(inner) => {
            let c = kappa_expr(inner)?;
            Ok(WalkingCell { base: c.base, id_wraps: c.id_wraps + 1 })
        }
        PastingExpr::Comp(j, a, b) => kappa_expr(a)?.comp(*j, &kappa_expr(b)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaReport {
    pub n: usize,
    pub generators: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl KappaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_kappa_functorial(n: usize) -> Result<KappaReport> {
    if n > 3 {
        return Err(Error::DimensionUnsupported(format!("collapse check for n = {n}")));
    }
    let faces = all_faces(n);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for f in &faces {
        if f.dim() == 0 {
            continue;
        }
        for side in [Side::Source, Side::Target] {
            checked += 1;
            let expected = kappa(f).boundary(side)?;
            match boundary_face(f, side).and_then(|b| kappa_expr(&b)) {
                Ok(got) if got == expected => {}
                Ok(got) => mismatches.push(format!("{f} {side:?}: got {got}, expected {expected}")),
                Err(e) => mismatches.push(format!("{f} {side:?}: {e}")),
            }
        }
    }
    Ok(KappaReport { n, generators: faces.len(), checked, mismatches })
}

// ---------------------------------------------------------------- grids

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coord {
    /// vertex index `0..=t`
    V(usize),
    /// segment index `0..t`
    E(usize),
}

/// A generator of the grid `□^n(t)`, tagged with its position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridCell(pub Vec<Coord>);

impl GridCell {
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| matches!(c, Coord::E(_))).count()
    }
}

/// Number of generators per dimension; any `n`.
pub fn grid_counts(t: &GridSpec) -> Vec<u128> {
    let mut counts = vec![1u128];
    for &ti in &t.0 {
        let v = ti as u128 + 1;
        let e = ti as u128;
        let mut next = vec![0u128; counts.len() + 1];
        for (d, &c) in counts.iter().enumerate() {
            next[d] += c * v;
            next[d + 1] += c * e;
        }
        counts = next;
    }
    counts
}

pub fn grid_cells(t: &GridSpec) -> Result<Vec<GridCell>> {
    if t.0.len() > 3 {
        return Err(Error::DimensionUnsupported(format!("full grid inventory for n = {}", t.0.len())));
    }
    let mut out = vec![Vec::new()];
    for &ti in &t.0 {
        let choices: Vec<Coord> = (0..=ti).map(Coord::V).chain((0..ti).map(Coord::E)).collect();
        out = out
            .into_iter()
            .flat_map(|c: Vec<Coord>| {
                choices.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    let mut cells: Vec<GridCell> = out.into_iter().map(GridCell).collect();
    cells.sort_by_key(|c| (c.dim(), c.clone()));
    Ok(cells)
}

/// A cell of the grid walking cell `w(t)`: a walking cell with its block position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridWalkingCell {
    pub cell: WalkingCell,
    pub position: Vec<usize>,
}

impl GridWalkingCell {
    pub fn boundary(&self, side: Side) -> Result<GridWalkingCell> {
        let cell = self.cell.boundary(side)?;
        if self.cell.id_wraps > 0 {
            return Ok(GridWalkingCell { cell, position: self.position.clone() });
        }
        let mut position = self.position.clone();
        if let Base::J { .. } = self.cell.base {
            position.pop();
        }
        if let Some(last) = position.last_mut() {
            *last += side.bit() as usize;
        }
        let cell = WalkingCell { base: grid_base(cell.base), id_wraps: cell.id_wraps };
        Ok(GridWalkingCell { cell, position })
    }

    fn iterated(&self, m: usize, side: Side) -> Result<GridWalkingCell> {
        let mut c = self.clone();
        while c.cell.dim() > m {
            c = c.boundary(side)?;
        }
        Ok(c)
    }

    pub fn comp(&self, j: usize, other: &GridWalkingCell) -> Result<GridWalkingCell> {
        let (a, b) = (self, other);
        if a.cell.dim() != b.cell.dim() || j == 0 || j > a.cell.dim() {
            return Err(Error::NotComposable(format!("{a:?} ∘{j} {b:?}")));
        }
        if b.iterated(j - 1, Side::Target)? != a.iterated(j - 1, Side::Source)? {
            return Err(Error::BoundaryMismatch(format!("{a:?} ∘{j} {b:?}")));
        }
        match (a.cell.base_dim() < j, b.cell.base_dim() < j) {
            (true, true) if a == b => Ok(a.clone()),
            (true, false) => Ok(b.clone()),
            (false, true) => Ok(a.clone()),
            _ => Err(Error::NotComposable(format!("{a:?} ∘{j} {b:?}"))),
        }
    }
}

/// Valid blocks containing a grid cell, per non-degenerate coordinate.
fn blocks(t: &[usize], cell: &GridCell) -> Vec<Vec<(usize, Letter)>> {
    t.iter()
        .zip(&cell.0)
        .filter(|(&ti, _)| ti > 0)
        .map(|(&ti, &c)| match c {
            Coord::E(s) => vec![(s, Letter::I)],
            Coord::V(v) => {
                let mut opts = Vec::new();
                if v < ti {
                    opts.push((v, Letter::P0));
                }
                if v > 0 {
                    opts.push((v - 1, Letter::P1));
                }
                opts
            }
        })
        .collect()
}

/// Collapse a grid generator seen inside a chosen block.
pub fn kappa_grid_in_block(t: &GridSpec, cell: &GridCell, choice: &[(usize, Letter)]) -> Result<GridWalkingCell> {
    if choice.len() > 3 {
        return Err(Error::DimensionUnsupported(format!("grid collapse for n = {}", choice.len())));
    }
    let _ = (t, cell);
    let local = Face(choice.iter().map(|&(_, a)| a).collect());
    let kc = kappa(&local);
    let k = local.0.iter().take_while(|&&a| a == Letter::I).count();
    let mut position: Vec<usize> = choice[..k].iter().map(|&(b, _)| b).collect();
    if k < choice.len() {
        let (b, a) = choice[k];
        position.push(b + if a == Letter::P1 { 1 } else { 0 });
    }
    Ok(GridWalkingCell { cell: WalkingCell { base: grid_base(kc.base), id_wraps: kc.id_wraps }, position })
}

/// In a grid the point letter is absorbed into the vertex index.
fn grid_base(b: Base) -> Base {
    match b {
        Base::J { k, .. } => Base::J { k, l: 0 },
        top => top,
    }
}

/// Apply the collapse blockwise; coordinates with `t_i = 0` are erased.
pub fn kappa_grid(t: &GridSpec, cell: &GridCell) -> Result<GridWalkingCell> {
    if t.0.len() != cell.0.len() {
        return Err(Error::LengthMismatch(t.0.len(), cell.0.len()));
    }
    let opts = blocks(&t.0, cell);
    if opts.len() > 3 {
        return Err(Error::DimensionUnsupported(format!("grid collapse for n = {}", opts.len())));
    }
    let choice: Vec<(usize, Letter)> = opts.iter().map(|o| o[0]).collect();
    kappa_grid_in_block(t, cell, &choice)
}

/// Every way of seeing the cell inside a block gives the same collapse.
pub fn kappa_grid_block_independent(t: &GridSpec, cell: &GridCell) -> Result<bool> {
    let opts = blocks(&t.0, cell);
    let mut choices: Vec<Vec<(usize, Letter)>> = vec![Vec::new()];
    for o in &opts {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                o.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    let first = kappa_grid_in_block(t, cell, &choices[0])?;
    for c in &choices[1..] {
        if kappa_grid_in_block(t, cell, c)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Collapse the boundary pasting of each grid generator and compare with the boundary
/// of its collapse in `w(t)`. Returns the mismatches.
pub fn check_kappa_grid(t: &GridSpec) -> Result<Vec<String>> {
    let cells = grid_cells(t)?;
    let active: Vec<usize> = (0..t.0.len()).filter(|&i| t.0[i] > 0).collect();
    let mut out = Vec::new();
    for cell in &cells {
        let opts = blocks(&t.0, cell);
        let choice: Vec<(usize, Letter)> = opts.iter().map(|o| o[0]).collect();
        let local = Face(choice.iter().map(|&(_, a)| a).collect());
        if local.dim() == 0 {
            continue;
        }
        for side in [Side::Source, Side::Target] {
            let expected = kappa_grid(t, cell)?.boundary(side)?;
            let pasting = boundary_face(&local, side)?;
            let got = eval_grid(t, cell, &active, &choice, &pasting);
            match got {
                Ok(g) if g == expected => {}
                Ok(g) => out.push(format!("{cell:?} {side:?}: got {g:?}, expected {expected:?}")),
                Err(e) => out.push(format!("{cell:?} {side:?}: {e}")),
            }
        }
    }
    Ok(out)
}

fn eval_grid(
    t: &GridSpec,
    cell: &GridCell,
    active: &[usize],
    choice: &[(usize, Letter)],
    e: &PastingExpr,
) -> Result<GridWalkingCell> {
    match e {
        PastingExpr::Face(f) => {
            let mut coords = cell.0.clone();
            for (slot, &i) in active.iter().enumerate() {
                let b = choice[slot].0;
                coords[i] = match f.0[slot] {
                    Letter::I => Coord::E(b),
                    Letter::P0 => Coord::V(b),
                    Letter::P1 => Coord::V(b + 1),
                };
            }
            kappa_grid(t, &GridCell(coords))
        }
        PastingExpr::Id(inner) => {
            let c = eval_grid(t, cell, active, choice, inner)?;
            Ok(GridWalkingCell {
                cell: WalkingCell { base: c.cell.base, id_wraps: c.cell.id_wraps + 1 },
                position: c.position,
            })
        }
        PastingExpr::Comp(j, a, b) => {
            eval_grid(t, cell, active, choice, a)?.comp(*j, &eval_grid(t, cell, active, choice, b)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Face {
        s.parse().unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&f("P0 I"), &f("I I")).unwrap());
        assert!(contains(&f("P0 P1"), &f("P0 I")).unwrap());
        assert!(!contains(&f("P0 I"), &f("P1 I")).unwrap());
        assert_eq!(contains(&f("0"), &f("II")), Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(&f("1I"), &f("II")).unwrap(), Parity::Even);
        assert_eq!(parity(&f("I0"), &f("II")).unwrap(), Parity::Even);
        assert_eq!(parity(&f("0I"), &f("II")).unwrap(), Parity::Odd);
        assert!(matches!(parity(&f("00"), &f("II")), Err(Error::NotCodimOne(..))));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(facets(&f("II"), Parity::Even), vec![f("I0"), f("1I")]);
        assert_eq!(facets(&f("II"), Parity::Odd), vec![f("0I"), f("I1")]);
        let mut s = facets(&f("III"), Parity::Even);
        s.sort();
        let mut expected = vec![f("0II"), f("I1I"), f("II0")];
        expected.sort();
        assert_eq!(s, expected);
        // erasure reduces 0I to the one-dimensional cube, whose source vertex is 0
        assert_eq!(facets(&f("0I"), Parity::Even), vec![f("00")]);
        assert_eq!(facets(&f("0I"), Parity::Odd), vec![f("01")]);
    }

    #[test]
    fn square_boundary() {
        let s = boundary_face(&f("II"), Side::Source).unwrap();
        assert_eq!(s.to_sexpr(), "(c1 (face 1I) (face I0))");
        let t = boundary_face(&f("II"), Side::Target).unwrap();
        assert_eq!(t.to_sexpr(), "(c1 (face I1) (face 0I))");
        assert!(matches!(boundary_face(&f("01"), Side::Source), Err(Error::DimensionUnsupported(_))));
        assert!(matches!(boundary_face(&f("IIII"), Side::Source), Err(Error::DimensionUnsupported(_))));
    }

    #[test]
    fn cube_boundary_is_well_formed_and_globular() {
        for n in 1..=3 {
            for g in all_faces(n) {
                if g.dim() < 1 {
                    continue;
                }
                for side in [Side::Source, Side::Target] {
                    let b = boundary_face(&g, side).unwrap();
                    nf(&b).unwrap();
                    assert_eq!(b.dim(), g.dim() - 1);
                }
                if g.dim() >= 2 {
                    assert!(globular(&PastingExpr::Face(g.clone())).unwrap(), "{g}");
                }
            }
        }
    }

    #[test]
    fn sexpr_round_trip() {
        let e = boundary_face(&f("III"), Side::Target).unwrap();
        assert_eq!(PastingExpr::parse_sexpr(&e.to_sexpr()).unwrap(), e);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&f("II")), WalkingCell { base: Base::Top { n: 2 }, id_wraps: 0 });
        assert_eq!(kappa(&f("0I")), WalkingCell { base: Base::J { k: 0, l: 0 }, id_wraps: 1 });
        assert_eq!(kappa(&f("I1")), WalkingCell { base: Base::J { k: 1, l: 1 }, id_wraps: 0 });
    }

    #[test]
    fn kappa_is_functorial() {
        for (n, gens) in [(1, 3), (2, 9), (3, 27)] {
            let r = check_kappa_functorial(n).unwrap();
            assert_eq!(r.generators, gens);
            assert!(r.passed(), "{:?}", r.mismatches);
        }
    }

    #[test]
    fn grid_examples() {
        let count = |t: Vec<usize>| {
            let cells = grid_cells(&GridSpec(t)).unwrap();
            (0..3).map(|d| cells.iter().filter(|c| c.dim() == d).count()).collect::<Vec<_>>()
        };
        assert_eq!(count(vec![1, 1]), vec![4, 4, 1]);
        assert_eq!(count(vec![2, 1]), vec![6, 7, 2]);
        assert_eq!(count(vec![1, 0]), vec![2, 1, 0]);
    }

    #[test]
    fn kappa_grid_examples() {
        let t = GridSpec(vec![1, 1]);
        let sq = GridCell(vec![Coord::E(0), Coord::E(0)]);
        assert_eq!(kappa_grid(&t, &sq).unwrap().cell, WalkingCell { base: Base::Top { n: 2 }, id_wraps: 0 });
        let t = GridSpec(vec![2, 1]);
        let left = GridCell(vec![Coord::E(0), Coord::E(0)]);
        let right = GridCell(vec![Coord::E(1), Coord::E(0)]);
        assert_eq!(kappa_grid(&t, &left).unwrap().position, vec![0, 0]);
        assert_eq!(kappa_grid(&t, &right).unwrap().position, vec![1, 0]);
        let t = GridSpec(vec![1, 0]);
        let edge = GridCell(vec![Coord::E(0), Coord::V(0)]);
        assert_eq!(kappa_grid(&t, &edge).unwrap().cell, WalkingCell { base: Base::Top { n: 1 }, id_wraps: 0 });
    }

    #[test]
    fn kappa_grid_is_compatible() {
        for t in [vec![1], vec![3], vec![2, 1], vec![1, 2], vec![2, 2], vec![1, 0], vec![2, 1, 1], vec![1, 2, 2]] {
            let t = GridSpec(t);
            assert!(check_kappa_grid(&t).unwrap().is_empty(), "{t:?}");
            for c in grid_cells(&t).unwrap() {
                assert!(kappa_grid_block_independent(&t, &c).unwrap());
            }
        }
    }
}
