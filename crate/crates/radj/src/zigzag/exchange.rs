use std::collections::HashSet;

use super::{Leg, Row, StackCell};
use crate::finpres::{FinCategory, Mor};
use crate::squares::{hcompose_signed, vcompose_signed, SignedSquare};
use crate::{Error, Result};

/// Column blocks `(upper squares, lower squares)` from left to right.
pub type Partition = Vec<(usize, usize)>;

fn paste(x: &FinCategory, cells: &[SignedSquare]) -> Option<SignedSquare> {
    let mut acc = *cells.first()?;
    for s in &cells[1..] {
        acc = hcompose_signed(x, s, &acc).ok()?;
    }
    Some(acc)
}

/// Merge one block. `vu`/`vl` are the upper/lower verticals at the block's left cut.
fn merge_block(
    x: &FinCategory,
    upper: &[SignedSquare],
    lower: &[SignedSquare],
    vu: Mor,
    vl: Mor,
) -> Option<SignedSquare> {
    let block = |cells: &[SignedSquare]| if cells.is_empty() { Some(None) } else { paste(x, cells).map(Some) };
    match (block(upper)?, block(lower)?) {
        (Some(u), Some(l)) => vcompose_signed(x, &l, &u).ok(),
        (Some(u), None) => {
            if !x.is_identity(u.bottom) {
                return None;
            }
            let left = x.comp(vl, u.left)?;
            let right = x.comp(vl, u.right)?;
            Some(SignedSquare { top: u.top, left, right, bottom: x.id(x.tgt(vl)), sign: u.sign })
        }
        (None, Some(l)) => {
            if !x.is_identity(l.top) {
                return None;
            }
            let left = x.comp(l.left, vu)?;
            let right = x.comp(l.right, vu)?;
            Some(SignedSquare { top: x.id(x.src(vu)), left, right, bottom: l.bottom, sign: l.sign })
        }
        (None, None) => None,
    }
}

fn block_sizes(rem_u: usize, rem_l: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        [(1, 1), (0, 1), (1, 0)].into_iter().filter(|&(a, b)| a <= rem_u && b <= rem_l).collect();
    let mut rest = Vec::new();
    for a in 0..=rem_u {
        for b in 0..=rem_l {
            if a + b > 0 && !out.contains(&(a, b)) {
                rest.push((a, b));
            }
        }
    }
    rest.sort_by_key(|&(a, b)| (a + b, a));
    out.extend(rest);
    out
}

struct Search<'a> {
    x: &'a FinCategory,
    upper: &'a [SignedSquare],
    lower: &'a [SignedSquare],
    vu: Vec<Mor>,
    vl: Vec<Mor>,
    dead: HashSet<(usize, usize)>,
    found: Vec<(Partition, Vec<SignedSquare>)>,
    limit: usize,
}

impl Search<'_> {
    fn go(&mut self, i: usize, j: usize, part: &mut Partition, cells: &mut Vec<SignedSquare>) -> bool {
        if self.found.len() >= self.limit {
            return true;
        }
        if i == self.upper.len() && j == self.lower.len() {
            self.found.push((part.clone(), cells.clone()));
            return true;
        }
        if self.dead.contains(&(i, j)) {
            return false;
        }
        let mut any = false;
        for (a, b) in block_sizes(self.upper.len() - i, self.lower.len() - j) {
            let Some(sq) = merge_block(self.x, &self.upper[i..i + a], &self.lower[j..j + b], self.vu[i], self.vl[j])
            else {
                continue;
            };
            part.push((a, b));
            cells.push(sq);
            any |= self.go(i + a, j + b, part, cells);
            part.pop();
            cells.pop();
            if self.found.len() >= self.limit {
                return true;
            }
        }
        if !any {
            self.dead.insert((i, j));
        }
        any
    }
}

fn search(x: &FinCategory, upper: &Row, lower: &Row, limit: usize) -> Vec<(Partition, Row)> {
    let mut s = Search {
        x,
        upper: &upper.cells,
        lower: &lower.cells,
        vu: upper.verticals(x),
        vl: lower.verticals(x),
        dead: HashSet::new(),
        found: Vec::new(),
        limit,
    };
    s.go(0, 0, &mut Vec::new(), &mut Vec::new());
    s.found.into_iter().map(|(p, cells)| (p, Row { start: upper.start, cells })).collect()
}

/// Valid column partitions of two stacked rows, in preference order, up to `limit`.
pub fn partitions(x: &FinCategory, upper: &Row, lower: &Row, limit: usize) -> Vec<(Partition, Row)> {
    if upper.cells.is_empty() || lower.cells.is_empty() {
        // an empty row is an identity; stacking it changes nothing
        let keep = if upper.cells.is_empty() { lower } else { upper };
        return vec![(Vec::new(), keep.clone())];
    }
    search(x, upper, lower, limit)
}

/// Merge two rows with a given partition, or the first valid one.
pub fn merge_rows(x: &FinCategory, upper: &Row, lower: &Row, partition: Option<&[(usize, usize)]>) -> Option<Row> {
    match partition {
        None => partitions(x, upper, lower, 1).into_iter().next().map(|(_, r)| r),
        Some(p) => {
            let (vu, vl) = (upper.verticals(x), lower.verticals(x));
            let (mut i, mut j) = (0, 0);
            let mut cells = Vec::new();
            for &(a, b) in p {
                if i + a > upper.cells.len() || j + b > lower.cells.len() {
                    return None;
                }
                cells.push(merge_block(x, &upper.cells[i..i + a], &lower.cells[j..j + b], vu[i], vl[j])?);
                i += a;
                j += b;
            }
            (i == upper.cells.len() && j == lower.cells.len()).then_some(Row { start: upper.start, cells })
        }
    }
}

/// Replace rows `i` and `i + 1` by their blockwise vertical composite.
pub fn exchange_step(
    x: &FinCategory,
    cell: &StackCell,
    i: usize,
    partition: Option<&[(usize, usize)]>,
) -> Result<StackCell> {
    if i + 1 >= cell.rows.len() {
        return Err(Error::NoValidPartition(i, i + 1));
    }
    let merged = merge_rows(x, &cell.rows[i], &cell.rows[i + 1], partition).ok_or(Error::NoValidPartition(i, i + 1))?;
    let mut rows = cell.rows.clone();
    rows.splice(i..i + 2, [merged]);
    Ok(StackCell { source: cell.source.clone(), target: cell.target.clone(), rows })
}

/// Inverse of merging: cut a row at an interior identity vertical and stack the
/// two halves, in both orders.
pub fn split_moves(x: &FinCategory, row: &Row) -> Vec<(Row, Row)> {
    let v = row.verticals(x);
    let mut out = Vec::new();
    for (k, &vk) in v.iter().enumerate().take(row.cells.len()).skip(1) {
        if !x.is_identity(vk) {
            continue;
        }
        let (l, r) = row.cells.split_at(k);
        let l_top: Vec<Leg> = Row { start: row.start, cells: l.to_vec() }.top_legs();
        let l_bot: Vec<Leg> = Row { start: row.start, cells: l.to_vec() }.bottom_legs();
        let mid = x.src(vk);
        let r_top: Vec<Leg> = Row { start: mid, cells: r.to_vec() }.top_legs();
        let r_bot: Vec<Leg> = Row { start: mid, cells: r.to_vec() }.bottom_legs();
        let lrow = Row { start: row.start, cells: l.to_vec() };
        let rrow = Row { start: mid, cells: r.to_vec() };
        if let (Ok(a), Ok(b)) = (lrow.whiskered(x, &[], &r_top), rrow.whiskered(x, &l_bot, &[])) {
            out.push((a, b));
        }
        if let (Ok(a), Ok(b)) = (rrow.whiskered(x, &l_top, &[]), lrow.whiskered(x, &[], &r_bot)) {
            out.push((a, b));
        }
    }
    out
}
