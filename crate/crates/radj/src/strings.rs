//! Planar matchings: string diagrams for free adjunctions. Each 1-cell word is a
//! sequence of oriented atoms; a 2-cell is a perfect matching of the endpoints on its
//! top and bottom words together with a count of closed loops.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// An oriented strand label: a generating arrow and its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub label: usize,
    pub fwd: bool,
}

impl Atom {
    pub fn fwd(label: usize) -> Atom {
        Atom { label, fwd: true }
    }

    pub fn bwd(label: usize) -> Atom {
        Atom { label, fwd: false }
    }

    pub fn dual(self) -> Atom {
        Atom { label: self.label, fwd: !self.fwd }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Top(usize),
    Bot(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    pub top: Vec<Atom>,
    pub bottom: Vec<Atom>,
    /// Sorted pairs, each with the smaller end first.
    pub links: Vec<(End, End)>,
    pub loops: usize,
}

/// The word read along a leg, expanded into atoms: a backward leg reverses its atoms.
pub fn leg_atoms(atoms: &[usize], fwd: bool) -> Vec<Atom> {
    if fwd {
        atoms.iter().map(|&a| Atom::fwd(a)).collect()
    } else {
        atoms.iter().rev().map(|&a| Atom::bwd(a)).collect()
    }
}

impl Diagram {
    fn new(top: Vec<Atom>, bottom: Vec<Atom>, links: Vec<(End, End)>, loops: usize) -> Diagram {
        let mut links: Vec<(End, End)> = links.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
        links.sort();
        Diagram { top, bottom, links, loops }
    }

    pub fn identity(word: Vec<Atom>) -> Diagram {
        let links = (0..word.len()).map(|i| (End::Top(i), End::Bot(i))).collect();
        Diagram::new(word.clone(), word, links, 0)
    }

    /// Nested cups creating `w` followed by its reversed dual.
    pub fn cup(atoms: &[usize]) -> Diagram {
        let w = leg_atoms(atoms, true);
        let k = w.len();
        let mut bottom = w.clone();
        bottom.extend(leg_atoms(atoms, false));
        let links = (0..k).map(|i| (End::Bot(i), End::Bot(2 * k - 1 - i))).collect();
        Diagram::new(Vec::new(), bottom, links, 0)
    }

    /// Nested caps removing the reversed dual of `w` followed by `w`.
    pub fn cap(atoms: &[usize]) -> Diagram {
        let k = atoms.len();
        let mut top = leg_atoms(atoms, false);
        top.extend(leg_atoms(atoms, true));
        let links = (0..k).map(|i| (End::Top(i), End::Top(2 * k - 1 - i))).collect();
        Diagram::new(top, Vec::new(), links, 0)
    }

    /// Side by side, `self` on the left.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (nt, nb) = (self.top.len(), self.bottom.len());
        let shift = |e: End| match e {
            End::Top(i) => End::Top(i + nt),
            End::Bot(i) => End::Bot(i + nb),
        };
        let mut links = self.links.clone();
        links.extend(other.links.iter().map(|&(a, b)| (shift(a), shift(b))));
        let mut top = self.top.clone();
        top.extend(other.top.iter().copied());
        let mut bottom = self.bottom.clone();
        bottom.extend(other.bottom.iter().copied());
        Diagram::new(top, bottom, links, self.loops + other.loops)
    }

    /// `self` first, then `next` below it. `None` if the middle words differ.
    pub fn then(&self, next: &Diagram) -> Option<Diagram> {
        if self.bottom != next.top {
            return None;
        }
        // node ids: upper top ends, middle ends, lower bottom ends
        let nt = self.top.len();
        let nm = self.bottom.len();
        let upper = |e: End| match e {
            End::Top(i) => i,
            End::Bot(i) => nt + i,
        };
        let lower = |e: End| match e {
            End::Top(i) => nt + i,
            End::Bot(i) => nt + nm + i,
        };
        let mut up: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &self.links {
            up.insert(upper(a), upper(b));
            up.insert(upper(b), upper(a));
        }
        let mut down: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &next.links {
            down.insert(lower(a), lower(b));
            down.insert(lower(b), lower(a));
        }
        let is_mid = |n: usize| n >= nt && n < nt + nm;
        let outer = |n: usize| {
            if n < nt {
                End::Top(n)
            } else {
                End::Bot(n - nt - nm)
            }
        };
        let mut seen_mid = vec![false; nm];
        let mut links = Vec::new();
        let outer_nodes: Vec<usize> = (0..nt).chain(nt + nm..nt + nm + next.bottom.len()).collect();
        let mut done = vec![false; nt + nm + next.bottom.len()];
        for &start in &outer_nodes {
            if done[start] {
                continue;
            }
            let mut cur = start;
            let mut use_up = start < nt;
            loop {
                let nxt = if use_up { up[&cur] } else { down[&cur] };
                if is_mid(nxt) {
                    seen_mid[nxt - nt] = true;
                    cur = nxt;
                    use_up = !use_up;
                    continue;
                }
                done[start] = true;
                done[nxt] = true;
                links.push((outer(start), outer(nxt)));
                break;
            }
        }
        let mut loops = self.loops + next.loops;
        for m in 0..nm {
            if seen_mid[m] {
                continue;
            }
            loops += 1;
            let mut cur = nt + m;
            let mut use_up = true;
            loop {
                seen_mid[cur - nt] = true;
                cur = if use_up { up[&cur] } else { down[&cur] };
                use_up = !use_up;
                if cur == nt + m {
                    break;
                }
            }
        }
        Some(Diagram::new(self.top.clone(), next.bottom.clone(), links, loops))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snake_straightens() {
        let f = [0usize];
        let id_f = Diagram::identity(leg_atoms(&f, true));
        let lower = id_f.tensor(&Diagram::cap(&f));
        let upper = Diagram::cup(&f).tensor(&id_f);
        assert_eq!(upper.then(&lower).unwrap(), id_f);
        let id_g = Diagram::identity(leg_atoms(&f, false));
        let upper = id_g.tensor(&Diagram::cup(&f));
        let lower = Diagram::cap(&f).tensor(&id_g);
        assert_eq!(upper.then(&lower).unwrap(), id_g);
    }

    #[test]
    fn cup_then_cap_of_dual_makes_a_loop() {
        let c = Diagram {
            top: vec![],
            bottom: vec![Atom::bwd(0), Atom::fwd(0)],
            links: vec![(End::Bot(0), End::Bot(1))],
            loops: 0,
        };
        let d = c.then(&Diagram::cap(&[0])).unwrap();
        assert_eq!(d.loops, 1);
        assert!(d.links.is_empty());
    }

    #[test]
    fn interchange_holds() {
        let a = Diagram::cup(&[0]);
        let b = Diagram::cap(&[1]);
        let ida = Diagram::identity(a.bottom.clone());
        let idb = Diagram::identity(b.top.clone());
        let empty = Diagram::identity(Vec::new());
        let lhs = a.tensor(&b);
        let one = a.tensor(&idb).then(&ida.tensor(&b)).unwrap();
        let two = empty.tensor(&b).then(&a.tensor(&empty)).unwrap();
        assert_eq!(lhs, one);
        assert_eq!(lhs, two);
    }
}
