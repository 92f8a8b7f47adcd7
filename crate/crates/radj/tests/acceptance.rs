//! One pass/fail line per acceptance criterion. Runs without the libtest harness so
//! the lines always print; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radj::adj_oracle::compare_with_zigzag;
use radj::cube::{self, Face, Parity, PastingExpr, Side};
use radj::finpres::{check_sinister, FinCategory, Obj, Sinister};
use radj::squares::{self, Sign, SignedSquare};
use radj::univprop::{self, FunctorMap};
use radj::zigzag::{self, Dir, Leg, Row, StackCell, Zigzag, DEFAULT_DEPTH, ORACLE_DEPTH};
use radj::{fixtures, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cube_suite() -> Outcome {
    let mut gens = 0;
    for n in 1..=3 {
        for g in cube::all_faces(n).into_iter().filter(|g| g.dim() > 0) {
            gens += 1;
            for p in [Parity::Even, Parity::Odd] {
                let fs = cube::facets(&g, p);
                ensure(fs.len() == g.dim(), || format!("{g} has {} {p} facets", fs.len()))?;
                for f in &fs {
                    ensure(cube::parity(f, &g).map_err(|e| e.to_string())? == p, || format!("{f} in {g}"))?;
                }
            }
            if g.dim() >= 2 {
                ensure(cube::globular(&PastingExpr::face(g.clone())).map_err(|e| e.to_string())?, || {
                    format!("{g} not globular")
                })?;
            }
        }
    }
    let top: Face = "II".parse().map_err(|e: radj::Error| e.to_string())?;
    let s = cube::boundary_face(&top, Side::Source).map_err(|e| e.to_string())?.to_sexpr();
    let t = cube::boundary_face(&top, Side::Target).map_err(|e| e.to_string())?.to_sexpr();
    // top edge I0 then right edge 1I; left edge 0I then bottom edge I1
    ensure(s == "(c1 (face 1I) (face I0))", || format!("source {s}"))?;
    ensure(t == "(c1 (face I1) (face 0I))", || format!("target {t}"))?;
    Ok(format!("{gens} generators, II: {s} => {t}"))
}

fn kappa_suite() -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=3 {
        let r = cube::check_kappa_functorial(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("n = {n}: {:?}", r.mismatches))?;
        parts.push(format!("n={n}: {} generators", r.generators));
    }
    ensure(parts[1].ends_with(" 9 generators") && parts[2].ends_with(" 27 generators"), || parts.join(", "))?;
    Ok(format!("{}, 0 mismatches", parts.join(", ")))
}

fn companions_suite() -> Outcome {
    let (mut mors, mut sqs) = (0, 0);
    for (name, x) in fixtures::fixture_categories() {
        for f in x.morphisms() {
            ensure(squares::companion_check(&x, f), || format!("{name}: {}", x.mor_name(f)))?;
            mors += 1;
        }
        for s in squares::enumerate_squares(&x) {
            let back = squares::decompose(&x, &s).repaste(&x).map_err(|e| e.to_string())?;
            ensure(back == s, || format!("{name}: {}", s.display(&x)))?;
            sqs += 1;
        }
    }
    Ok(format!("{mors} morphisms, {sqs} squares repasted"))
}

fn snake_suite() -> Outcome {
    let mut n = 0;
    for (name, x) in fixtures::fixture_categories() {
        for f in x.morphisms() {
            let r = zigzag::snake_check(&x, f, DEFAULT_DEPTH);
            ensure(r.ok(), || format!("{name} {}: left {}, right {}", r.morphism, r.left.verdict, r.right.verdict))?;
            n += 1;
        }
    }
    Ok(format!("{n} morphisms, both snakes Equal at depth {DEFAULT_DEPTH}, 0 Unknown"))
}

fn rows_up_to(x: &FinCategory, len: usize) -> Vec<Row> {
    let signed: Vec<SignedSquare> = squares::enumerate_squares(x)
        .into_iter()
        .flat_map(|s| {
            [Sign::Plus, Sign::Zero, Sign::Minus].map(|sign| SignedSquare {
                top: s.top,
                right: s.right,
                left: s.left,
                bottom: s.bottom,
                sign,
            })
        })
        .filter(|s| s.check(x).is_ok())
        .collect();
    let mut out = Vec::new();
    let mut partial: Vec<Vec<SignedSquare>> =
        signed.iter().filter(|s| x.is_identity(s.left)).map(|s| vec![*s]).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for cells in &partial {
            let row = Row { start: x.src(cells[0].left), cells: cells.clone() };
            if row.check(x).is_ok() {
                out.push(row);
            }
            if cells.len() < len {
                for s in signed.iter().filter(|s| s.left == cells.last().unwrap().right) {
                    let mut c = cells.clone();
                    c.push(*s);
                    next.push(c);
                }
            }
        }
        partial = next;
    }
    out
}

fn normalize_suite() -> Outcome {
    let x = fixtures::walking_arrow();
    let rows = rows_up_to(&x, 3);
    let mut cells: Vec<StackCell> = rows.iter().map(|r| zigzag::vstack(&x, vec![r.clone()]).unwrap()).collect();
    let one_row = cells.len();
    for a in &rows {
        for b in &rows {
            if let Ok(c) = zigzag::vstack(&x, vec![a.clone(), b.clone()]) {
                cells.push(c);
            }
        }
    }
    let bad: Vec<String> = radj::par::map(&cells, |c| {
        let w = zigzag::normalize(&x, c);
        let alphabet = w.layers.iter().flat_map(|l| &l.letters).all(|l| {
            let t = l.to_token(&x);
            ["fwd:", "bwd:", "eta:", "eps:"].iter().any(|p| t.starts_with(p))
        });
        let n = w.eval(&x).map_err(|e| e.to_string());
        match n {
            Ok(n) if alphabet && zigzag::equal(&x, c, &n, DEFAULT_DEPTH).verdict == Verdict::Equal => None,
            _ => Some(format!("{:?}", c.to_json(&x))),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(bad.is_empty(), || format!("{} failures, first {}", bad.len(), bad[0]))?;
    Ok(format!("{one_row} one-row and {} two-row cells, all Equal to their normal form", cells.len() - one_row))
}

fn oracle_suite() -> Outcome {
    let mut parts = Vec::new();
    for b in 1..=3 {
        let r = compare_with_zigzag(b, ORACLE_DEPTH);
        ensure(r.hard_disagreements == 0, || r.summary())?;
        ensure(r.disagreements == 0, || r.summary())?;
        if b <= 2 {
            ensure(r.unknown_word_pairs == 0, || r.summary())?;
        }
        parts.push(format!(
            "b={b}: {}/{} pairs agree, unknown rate {:.4}",
            r.agreements,
            r.pairs.len(),
            r.unknown_rate()
        ));
    }
    Ok(parts.join("; "))
}

/// Every raw leg word of length at most `bound`, identities included, reduced.
fn brute_homs(x: &FinCategory, bound: usize) -> BTreeSet<Zigzag> {
    let legs: Vec<Leg> = x.morphisms().flat_map(|m| [Leg::fwd(m), Leg::bwd(m)]).collect();
    let mut out = BTreeSet::new();
    for a in x.objects() {
        let mut layer: Vec<(Obj, Vec<Leg>)> = vec![(a, Vec::new())];
        for depth in 0..=bound {
            let mut next = Vec::new();
            for (end, w) in &layer {
                out.insert(zigzag::reduce_zigzag(x, a, w).unwrap());
                if depth < bound {
                    for l in legs.iter().filter(|l| l.from(x) == *end) {
                        let mut w2 = w.clone();
                        w2.push(*l);
                        next.push((l.to(x), w2));
                    }
                }
            }
            layer = next;
        }
    }
    out
}

fn truncation_suite() -> Outcome {
    const BOUND: usize = 4;
    let mut total = 0;
    let mut triples = 0;
    for (name, x) in fixtures::fixture_categories() {
        let t = zigzag::truncate1(&x, BOUND);
        let mine: BTreeSet<Zigzag> = t.homs.values().flatten().cloned().collect();
        ensure(mine == brute_homs(&x, BOUND), || format!("{name}: hom sets differ"))?;
        total += mine.len();
        let all: Vec<&Zigzag> = mine.iter().collect();
        for z in &all {
            let a = z.start;
            let b = z.end(&x);
            let l = t.compose(&x, z, &Zigzag::empty(a)).map_err(|e| e.to_string())?;
            let r = t.compose(&x, &Zigzag::empty(b), z).map_err(|e| e.to_string())?;
            ensure(l == **z && r == **z, || format!("{name}: unit law fails on {}", z.display(&x)))?;
        }
        for f in &all {
            for g in all.iter().filter(|g| g.start == f.end(&x) && f.legs.len() + g.legs.len() <= BOUND) {
                for h in
                    all.iter().filter(|h| h.start == g.end(&x) && f.legs.len() + g.legs.len() + h.legs.len() <= BOUND)
                {
                    let gf = t.compose(&x, g, f).map_err(|e| e.to_string())?;
                    let hg = t.compose(&x, h, g).map_err(|e| e.to_string())?;
                    let left = t.compose(&x, h, &gf).map_err(|e| e.to_string())?;
                    let right = t.compose(&x, &hg, f).map_err(|e| e.to_string())?;
                    ensure(left == right, || format!("{name}: associativity fails"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{total} reduced zigzags match brute force; {triples} triples associative, units hold"))
}

fn univprop_suite() -> Outcome {
    let x = fixtures::walking_arrow();
    let mut parts = Vec::new();
    for (name, d) in [("adjoint equivalence", fixtures::adjoint_equivalence()), ("terminal", fixtures::terminal_2cat())]
    {
        let table = match check_sinister(&d) {
            Sinister::Table(t) => t,
            Sinister::Failure(m) => return Err(format!("{name}: {} has no right adjoint", d.underlying.mor_name(m))),
        };
        let f = FunctorMap::by_name(&x, &d.underlying).unwrap_or_else(|_| FunctorMap::constant(&x, &d.underlying, 0));
        let ext = univprop::extend(&x, &d, &f, &table).map_err(|e| e.to_string())?;
        let r = univprop::verify_extension(&x, &d, &ext, &univprop::relation_samples(&x, 0));
        ensure(r.restriction_ok, || format!("{name}: restriction differs from F"))?;
        ensure(r.failed == 0, || format!("{name}: {} samples failed", r.failed))?;
        parts.push(format!("{name}: {}/{} samples", r.passed, r.samples.len()));
    }
    Ok(format!("{}; restrictions equal F", parts.join(", ")))
}

fn raw_walk<R: Rng>(x: &FinCategory, rng: &mut R, len: usize) -> (Obj, Vec<Leg>) {
    let start = rng.gen_range(0..x.num_objects());
    let mut cur = start;
    let mut legs = Vec::new();
    for _ in 0..len {
        let dir = if rng.gen_bool(0.5) { Dir::Fwd } else { Dir::Bwd };
        let opts: Vec<Leg> = x.morphisms().map(|m| Leg { dir, mor: m }).filter(|l| l.from(x) == cur).collect();
        let l = opts[rng.gen_range(0..opts.len())];
        cur = l.to(x);
        legs.push(l);
    }
    (start, legs)
}

fn hygiene_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fx = fixtures::fixture_categories();
    let mut orders = 0;
    for (name, x) in &fx {
        for _ in 0..10 {
            let (a, legs) = raw_walk(x, &mut rng, 8);
            let r = zigzag::reduce_zigzag(x, a, &legs).map_err(|e| e.to_string())?;
            for _ in 0..10 {
                let o = zigzag::reduce_randomly(x, a, &legs, &mut rng).map_err(|e| e.to_string())?;
                ensure(o == r, || format!("{name}: reduction orders disagree"))?;
                orders += 1;
            }
        }
    }
    let mut moves = 0;
    for i in 0..1000 {
        let (name, x) = &fx[i % fx.len()];
        let c = zigzag::random_word(x, &mut rng, 3, 4).eval(x).map_err(|e| e.to_string())?;
        let keep = |d: &StackCell, what: &str| -> Result<(), String> {
            ensure(d.source == c.source && d.target == c.target && d.check(x).is_ok(), || {
                format!(
                    "{name}: {what} broke boundaries: {:?} from {}",
                    d.check(x).err(),
                    serde_json::to_string(&c.to_json(x)).unwrap()
                )
            })
        };
        for k in 0..c.rows.len().saturating_sub(1) {
            for (_, m) in zigzag::partitions(x, &c.rows[k], &c.rows[k + 1], 4) {
                let mut rows = c.rows.clone();
                rows.splice(k..k + 2, [m]);
                keep(&StackCell { source: c.source.clone(), target: c.target.clone(), rows }, "merge")?;
                moves += 1;
            }
        }
        for k in 0..c.rows.len() {
            for (a, b) in zigzag::split_moves(x, &c.rows[k]) {
                let mut rows = c.rows.clone();
                rows.splice(k..k + 1, [a, b]);
                keep(&StackCell { source: c.source.clone(), target: c.target.clone(), rows }, "split")?;
                moves += 1;
            }
            let mut rows = c.rows.clone();
            rows[k] = rows[k].normalized(x);
            keep(&StackCell { source: c.source.clone(), target: c.target.clone(), rows }, "row normalization")?;
            moves += 1;
        }
        keep(&zigzag::canonical(x, &c).0, "canonical")?;
        moves += 1;
    }
    Ok(format!("{orders} random reduction orders confluent; {moves} moves on 1000 cells preserve boundaries"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cube parity and boundary", cube_suite),
        ("collapse functoriality", kappa_suite),
        ("companionships", companions_suite),
        ("snake equations", snake_suite),
        ("normalization soundness", normalize_suite),
        ("oracle agreement", oracle_suite),
        ("truncation", truncation_suite),
        ("universal property", univprop_suite),
        ("engine hygiene", hygiene_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
