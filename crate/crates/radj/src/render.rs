//! DOT and TikZ emitters for rows of signed squares, with an optional red layer of
//! strands joining the midpoints of non-identity edges.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::finpres::{FinCategory, Mor};
use crate::squares::{self, Sign, SignedSquare};
use crate::zigzag::{self, Row, StackCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dot,
    Tikz,
}

/// Rows stacked top to bottom; several panels sit side by side.
pub type Panel = Vec<Row>;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Pt(f64, f64);

#[derive(Debug, Clone, PartialEq)]
struct Edge {
    from: Pt,
    to: Pt,
    label: String,
    identity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Strand {
    from: Pt,
    to: Pt,
    /// Bend towards this point, for cups and caps.
    bend: Option<Pt>,
}

#[derive(Debug, Default)]
struct Layout {
    vertices: Vec<Pt>,
    edges: Vec<Edge>,
    strands: Vec<Strand>,
}

const UNIT: f64 = 2.0;
const ROW_GAP: f64 = 1.0;
const PANEL_GAP: f64 = 1.5;

fn mid(a: Pt, b: Pt) -> Pt {
    Pt((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

fn square_layout(x: &FinCategory, s: &SignedSquare, ox: f64, oy: f64, out: &mut Layout) {
    let (tl, tr) = (Pt(ox, oy), Pt(ox + UNIT, oy));
    let (bl, br) = (Pt(ox, oy - UNIT), Pt(ox + UNIT, oy - UNIT));
    let leftward = s.sign == Sign::Minus;
    let horiz = |m: Mor, l: Pt, r: Pt| {
        let (from, to) = if leftward { (r, l) } else { (l, r) };
        Edge { from, to, label: x.mor_name(m).to_string(), identity: x.is_identity(m) }
    };
    let vert =
        |m: Mor, t: Pt, b: Pt| Edge { from: t, to: b, label: x.mor_name(m).to_string(), identity: x.is_identity(m) };
    let edges = [horiz(s.top, tl, tr), vert(s.right, tr, br), vert(s.left, tl, bl), horiz(s.bottom, bl, br)];
    let live: Vec<Pt> = edges.iter().filter(|e| !e.identity).map(|e| mid(e.from, e.to)).collect();
    let centre = Pt(ox + UNIT / 2.0, oy - UNIT / 2.0);
    match live.len() {
        2 => {
            let straight = live[0].0 == live[1].0 || live[0].1 == live[1].1;
            out.strands.push(Strand { from: live[0], to: live[1], bend: (!straight).then_some(centre) });
        }
        4 => {
            out.strands.push(Strand { from: live[0], to: live[3], bend: None });
            out.strands.push(Strand { from: live[1], to: live[2], bend: None });
        }
        _ => {}
    }
    out.edges.extend(edges);
}

fn layout(x: &FinCategory, panels: &[Panel]) -> Layout {
    let mut out = Layout::default();
    let mut ox = 0.0;
    for panel in panels {
        let width = panel.iter().map(|r| r.cells.len()).max().unwrap_or(0).max(1);
        for (r, row) in panel.iter().enumerate() {
            let oy = -(r as f64) * (UNIT + ROW_GAP);
            for k in 0..=row.cells.len() {
                out.vertices.push(Pt(ox + k as f64 * UNIT, oy));
                out.vertices.push(Pt(ox + k as f64 * UNIT, oy - UNIT));
            }
            for (k, s) in row.cells.iter().enumerate() {
                square_layout(x, s, ox + k as f64 * UNIT, oy, &mut out);
            }
        }
        ox += width as f64 * UNIT + PANEL_GAP;
    }
    out.vertices.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out.vertices.dedup();
    out
}

fn vertex_id(layout: &Layout, p: Pt) -> usize {
    layout.vertices.iter().position(|&v| v == p).expect("edge ends are vertices")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn dot(x: &FinCategory, panels: &[Panel], curves: bool) -> String {
    let l = layout(x, panels);
    let mut s = String::from("digraph cell {\n  graph [splines=true];\n  node [shape=point, width=0.08];\n");
    for (i, p) in l.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [pos=\"{},{}!\"];", p.0, p.1);
    }
    for e in &l.edges {
        let style = if e.identity { ", style=dashed, arrowhead=none" } else { "" };
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{}\"{style}];",
            vertex_id(&l, e.from),
            vertex_id(&l, e.to),
            dot_escape(&e.label)
        );
    }
    if curves {
        for (i, st) in l.strands.iter().enumerate() {
            let _ = writeln!(s, "  m{i}a [pos=\"{},{}!\", color=red];", st.from.0, st.from.1);
            let _ = writeln!(s, "  m{i}b [pos=\"{},{}!\", color=red];", st.to.0, st.to.1);
            let _ = writeln!(s, "  m{i}a -> m{i}b [color=red, dir=none];");
        }
    }
    s.push_str("}\n");
    s
}

fn tex_label(s: &str) -> String {
    s.replace('_', "\\_")
}

pub fn tikz(x: &FinCategory, panels: &[Panel], curves: bool) -> String {
    let l = layout(x, panels);
    let mut s = String::from("\\documentclass[tikz]{standalone}\n\\begin{document}\n\\begin{tikzpicture}[>=stealth]\n");
    for (i, p) in l.vertices.iter().enumerate() {
        let _ = writeln!(s, "  \\node (v{i}) at ({}, {}) {{$\\bullet$}};", p.0, p.1);
    }
    for e in &l.edges {
        let (a, b) = (vertex_id(&l, e.from), vertex_id(&l, e.to));
        if e.identity {
            let _ = writeln!(s, "  \\draw[double] (v{a}) -- (v{b});");
        } else {
            let _ =
                writeln!(s, "  \\draw[->] (v{a}) -- node[auto] {{$\\scriptstyle {}$}} (v{b});", tex_label(&e.label));
        }
    }
    if curves {
        for st in &l.strands {
            match st.bend {
                None => {
                    let _ = writeln!(s, "  \\draw[red] ({}, {}) -- ({}, {});", st.from.0, st.from.1, st.to.0, st.to.1);
                }
                Some(c) => {
                    let _ = writeln!(
                        s,
                        "  \\draw[red] ({}, {}) .. controls ({}, {}) .. ({}, {});",
                        st.from.0, st.from.1, c.0, c.1, st.to.0, st.to.1
                    );
                }
            }
        }
    }
    s.push_str("\\end{tikzpicture}\n\\end{document}\n");
    s
}

pub fn render(x: &FinCategory, panels: &[Panel], format: Format, curves: bool) -> String {
    match format {
        Format::Dot => dot(x, panels, curves),
        Format::Tikz => tikz(x, panels, curves),
    }
}

pub fn cell_panel(cell: &StackCell) -> Panel {
    cell.rows.clone()
}

/// `id₂(f→)`, `id₂(f←)`, `id₁(f)`, `η_f` and `ε_f`, one panel each.
pub fn unit_counit_panels(x: &FinCategory, f: Mor) -> Vec<Panel> {
    let idh = squares::id_horizontal(x, f).plus();
    let one = |s: SignedSquare, start| vec![Row { start, cells: vec![s] }];
    vec![
        one(idh, x.src(f)),
        one(idh.reflect_h(), x.tgt(f)),
        one(squares::id_vertical(x, f).plus(), x.src(f)),
        zigzag::eta(x, f).rows,
        zigzag::epsilon(x, f).rows,
    ]
}

#[derive(Debug, PartialEq)]
enum Tok {
    Id(String),
    Arrow,
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '-' && cs.get(i + 1) == Some(&'>') {
            out.push(Tok::Arrow);
            i += 2;
        } else if "{}[]=,;".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '"' {
            let mut j = i + 1;
            let mut v = String::new();
            while j < cs.len() && cs[j] != '"' {
                if cs[j] == '\\' {
                    j += 1;
                }
                v.push(*cs.get(j).ok_or("unterminated escape")?);
                j += 1;
            }
            if j >= cs.len() {
                return Err("unterminated string".into());
            }
            out.push(Tok::Id(v));
            i = j + 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let mut j = i;
            while j < cs.len()
                && (cs[j].is_alphanumeric()
                    || cs[j] == '_'
                    || cs[j] == '.'
                    || (cs[j] == '-' && cs.get(j + 1) != Some(&'>')))
            {
                j += 1;
            }
            out.push(Tok::Id(cs[i..j].iter().collect()));
            i = j;
        } else {
            return Err(format!("unexpected {c:?}"));
        }
    }
    Ok(out)
}

/// `digraph ID { stmt* }` with node, edge and `graph|node|edge` attribute statements.
pub fn validate_dot(s: &str) -> Result<(), String> {
    let t = lex(s)?;
    let mut i = 0;
    let id = |i: &mut usize| -> Result<String, String> {
        match t.get(*i) {
            Some(Tok::Id(v)) => {
                *i += 1;
                Ok(v.clone())
            }
            other => Err(format!("expected id at {i}, got {other:?}")),
        }
    };
    let sym = |i: &mut usize, c: char| -> Result<(), String> {
        if t.get(*i) == Some(&Tok::Sym(c)) {
            *i += 1;
            Ok(())
        } else {
            Err(format!("expected {c:?} at {i}, got {:?}", t.get(*i)))
        }
    };
    let attrs = |i: &mut usize| -> Result<(), String> {
        sym(i, '[')?;
        while t.get(*i) != Some(&Tok::Sym(']')) {
            id(i)?;
            sym(i, '=')?;
            id(i)?;
            if t.get(*i) == Some(&Tok::Sym(',')) {
                *i += 1;
            }
        }
        sym(i, ']')
    };
    if id(&mut i)? != "digraph" {
        return Err("not a digraph".into());
    }
    if matches!(t.get(i), Some(Tok::Id(_))) {
        id(&mut i)?;
    }
    sym(&mut i, '{')?;
    while t.get(i) != Some(&Tok::Sym('}')) {
        id(&mut i)?;
        while t.get(i) == Some(&Tok::Arrow) {
            i += 1;
            id(&mut i)?;
        }
        if t.get(i) == Some(&Tok::Sym('[')) {
            attrs(&mut i)?;
        }
        sym(&mut i, ';')?;
    }
    sym(&mut i, '}')?;
    if i != t.len() {
        return Err("trailing tokens".into());
    }
    Ok(())
}
