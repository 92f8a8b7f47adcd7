//! Small categories and 2-categories used by tests, benches and the CLI.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finpres::{ArrowJson, CatJson, FinCategory, FinTwoCategory, TwoCatJson};

/// Build tables from named arrows and a composition function on arrow indices.
fn tabulate(
    objects: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    identities: Vec<usize>,
    comp: impl Fn(usize, usize) -> usize,
) -> CatJson {
    let mut rows = Vec::new();
    for (g, ga) in arrows.iter().enumerate() {
        for (f, fa) in arrows.iter().enumerate() {
            if fa.2 == ga.1 {
                rows.push([ga.0.clone(), fa.0.clone(), arrows[comp(g, f)].0.clone()]);
            }
        }
    }
    CatJson {
        identities: identities.iter().enumerate().map(|(o, &m)| (objects[o].clone(), arrows[m].0.clone())).collect(),
        morphisms: arrows
            .iter()
            .map(|(id, s, t)| ArrowJson { id: id.clone(), src: objects[*s].clone(), tgt: objects[*t].clone() })
            .collect(),
        objects,
        comp: rows,
        isos: Vec::new(),
    }
}

fn finish(raw: CatJson) -> FinCategory {
    let mut c = FinCategory::from_json(&raw).expect("fixture tables are valid");
    c.infer_isos();
    c
}

/// The walking arrow `x --f--> y`.
pub fn walking_arrow() -> FinCategory {
    let objects = vec!["x".to_string(), "y".to_string()];
    let arrows = vec![("id_x".to_string(), 0, 0), ("id_y".to_string(), 1, 1), ("f".to_string(), 0, 1)];
    finish(tabulate(objects, arrows, vec![0, 1], |g, f| if g == 2 || f == 2 { 2 } else { g }))
}

/// A finite poset category given by a reflexive transitive relation on `0..n`.
pub fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> FinCategory {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    let mut index = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || le(i, j) {
                index.insert((i, j), arrows.len());
                arrows.push((format!("{i}{j}"), i, j));
            }
        }
    }
    let ids = (0..n).map(|i| index[&(i, i)]).collect();
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.1, a.2)).collect();
    finish(tabulate(objects, arrows, ids, |g, f| index[&(ends[f].0, ends[g].1)]))
}

/// The ordinal `[n]` = `0 → 1 → ⋯ → n`.
pub fn ordinal(n: usize) -> FinCategory {
    poset(n + 1, |i, j| i <= j)
}

/// The cyclic group `ℤ/k` as a one-object category; `a0` is the identity.
pub fn cyclic(k: usize) -> FinCategory {
    let objects = vec!["*".to_string()];
    let arrows = (0..k).map(|i| (format!("a{i}"), 0, 0)).collect();
    finish(tabulate(objects, arrows, vec![0], |g, f| (g + f) % k))
}

/// Product category; arrows are named `a.b`.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let mut objects = Vec::new();
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("{}.{}", c.obj_name(a), d.obj_name(b)));
        }
    }
    let nd = d.num_objects();
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            pairs.push((f, g));
            arrows.push((
                format!("{}.{}", c.mor_name(f), d.mor_name(g)),
                c.src(f) * nd + d.src(g),
                c.tgt(f) * nd + d.tgt(g),
            ));
        }
    }
    let md = d.num_morphisms();
    let ids = c.objects().flat_map(|a| d.objects().map(move |b| (a, b))).map(|(a, b)| c.id(a) * md + d.id(b)).collect();
    finish(tabulate(objects, arrows, ids, |x, y| {
        let (f2, g2) = pairs[x];
        let (f1, g1) = pairs[y];
        c.comp(f2, f1).unwrap() * md + d.comp(g2, g1).unwrap()
    }))
}

/// Seeded random category with at most `max_morphisms` morphisms: a random poset,
/// optionally multiplied by a small cyclic group.
pub fn random_category(seed: u64, max_morphisms: usize) -> FinCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=5);
        let p: f64 = rng.gen_range(0.2..0.7);
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
            for cell in row.iter_mut().skip(i + 1) {
                *cell = rng.gen_bool(p);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let pc = poset(n, |i, j| rel[i][j]);
        let k = rng.gen_range(1..=3);
        let c = if k > 1 { product(&pc, &cyclic(k)) } else { pc };
        if c.num_morphisms() <= max_morphisms {
            return c;
        }
    }
}

/// The category fixtures used by the acceptance suite.
pub fn fixture_categories() -> Vec<(String, FinCategory)> {
    let mut out = vec![
        ("walking_arrow".to_string(), walking_arrow()),
        ("ordinal_2".to_string(), ordinal(2)),
        ("cyclic_3".to_string(), cyclic(3)),
    ];
    for seed in 0..5 {
        out.push((format!("random_{seed}"), random_category(seed, 20)));
    }
    out
}

/// 2-category whose every hom-category is a commutative monoid `M` (given by
/// element names and multiplication), with vertical and horizontal composition
/// both the monoid product. Element 0 must be the unit.
pub fn monoid_enriched(c: &FinCategory, elems: &[&str], mul: impl Fn(usize, usize) -> usize) -> FinTwoCategory {
    let cell = |e: usize, m: usize| format!("{}_{}", elems[e], c.mor_name(m));
    let mut raw = TwoCatJson { underlying: c.to_json(), ..Default::default() };
    for m in c.morphisms() {
        for e in 0..elems.len() {
            let name = c.mor_name(m).to_string();
            raw.two_cells.push(ArrowJson { id: cell(e, m), src: name.clone(), tgt: name });
        }
        raw.identity2.insert(c.mor_name(m).to_string(), cell(0, m));
        for a in 0..elems.len() {
            for b in 0..elems.len() {
                raw.vcomp.push([cell(b, m), cell(a, m), cell(mul(b, a), m)]);
            }
        }
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(gf) = c.comp(g, f) {
                for a in 0..elems.len() {
                    for b in 0..elems.len() {
                        raw.hcomp.push([cell(b, g), cell(a, f), cell(mul(b, a), gf)]);
                    }
                }
            }
        }
    }
    FinTwoCategory::from_json(&raw).expect("commutative monoid enrichment is valid")
}

/// Only identity 2-cells.
pub fn locally_discrete(c: &FinCategory) -> FinTwoCategory {
    monoid_enriched(c, &["1"], |_, _| 0)
}

pub fn terminal_2cat() -> FinTwoCategory {
    let objects = vec!["*".to_string()];
    let arrows = vec![("id_*".to_string(), 0, 0)];
    locally_discrete(&finish(tabulate(objects, arrows, vec![0], |_, _| 0)))
}

fn equivalence_category() -> FinCategory {
    let objects = vec!["x".to_string(), "y".to_string()];
    let arrows =
        vec![("id_x".to_string(), 0, 0), ("id_y".to_string(), 1, 1), ("f".to_string(), 0, 1), ("g".to_string(), 1, 0)];
    let ends = [(0, 0), (1, 1), (0, 1), (1, 0)];
    let by_ends = |s: usize, t: usize| ends.iter().position(|&e| e == (s, t)).unwrap();
    finish(tabulate(objects, arrows, vec![0, 1], move |g, f| by_ends(ends[f].0, ends[g].1)))
}

/// `x ⇄ y` with `f`, `g` mutually inverse and only identity 2-cells.
pub fn adjoint_equivalence() -> FinTwoCategory {
    locally_discrete(&equivalence_category())
}

/// As [`adjoint_equivalence`] but every hom-category is `ℤ/2 = {1, t}`.
pub fn adjoint_equivalence_with_twist() -> FinTwoCategory {
    monoid_enriched(&equivalence_category(), &["1", "t"], |a, b| (a + b) % 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(walking_arrow().num_morphisms(), 3);
        assert_eq!(ordinal(2).num_morphisms(), 6);
        assert_eq!(cyclic(3).num_morphisms(), 3);
        for (_, c) in fixture_categories() {
            assert!(c.num_morphisms() <= 20);
            assert!(c.violations().is_empty());
        }
    }

    #[test]
    fn random_categories_are_seeded() {
        assert_eq!(random_category(7, 20), random_category(7, 20));
    }
}
