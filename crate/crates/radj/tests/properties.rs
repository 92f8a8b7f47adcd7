use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radj::adj_oracle::{self, AdjObj, Word1};
use radj::cube::{self, Face, Parity};
use radj::finpres::{FinCategory, Obj};
use radj::zigzag::{self, Dir, Leg, StackCell, WhiskerSide, Zigzag, DEFAULT_DEPTH};
use radj::{fixtures, Verdict};

fn fixture(i: usize) -> FinCategory {
    let mut all = fixtures::fixture_categories();
    let n = all.len();
    all.swap_remove(i % n).1
}

fn walk(x: &FinCategory, rng: &mut ChaCha8Rng, start: Obj, len: usize) -> Vec<Leg> {
    let mut cur = start;
    let mut legs = Vec::new();
    for _ in 0..len {
        let dir = if rng.gen_bool(0.5) { Dir::Fwd } else { Dir::Bwd };
        let opts: Vec<Leg> = x.morphisms().map(|m| Leg { dir, mor: m }).filter(|l| l.from(x) == cur).collect();
        let l = opts[rng.gen_range(0..opts.len())];
        cur = l.to(x);
        legs.push(l);
    }
    legs
}

fn zz(x: &FinCategory, rng: &mut ChaCha8Rng, start: Obj, len: usize) -> Zigzag {
    zigzag::reduce_zigzag(x, start, &walk(x, rng, start, len)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facets_split_evenly_by_parity(s in "[01I]{1,4}") {
        let g: Face = s.parse().unwrap();
        let n = s.len();
        let codim1: Vec<Face> = cube::all_faces(n)
            .into_iter()
            .filter(|f| f.dim() + 1 == g.dim() && cube::parity(f, &g).is_ok())
            .collect();
        prop_assert_eq!(codim1.len(), 2 * g.dim());
        for p in [Parity::Even, Parity::Odd] {
            let fs = cube::facets(&g, p);
            prop_assert_eq!(fs.len(), g.dim());
            for f in fs {
                prop_assert_eq!(cube::parity(&f, &g).unwrap(), p);
            }
        }
    }

    #[test]
    fn reduction_is_confluent(fx in 0usize..8, seed in any::<u64>(), len in 0usize..10) {
        let x = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rng.gen_range(0..x.num_objects());
        let legs = walk(&x, &mut rng, a, len);
        let r = zigzag::reduce_zigzag(&x, a, &legs).unwrap();
        prop_assert_eq!(&zigzag::reduce_randomly(&x, a, &legs, &mut rng).unwrap(), &r);
        prop_assert_eq!(&zigzag::reduce_zigzag(&x, a, &r.legs).unwrap(), &r);
    }

    #[test]
    fn concat_is_associative_and_unital(fx in 0usize..8, seed in any::<u64>(), l1 in 0usize..5, l2 in 0usize..5, l3 in 0usize..5) {
        let x = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rng.gen_range(0..x.num_objects());
        let f = zz(&x, &mut rng, a, l1);
        let g = zz(&x, &mut rng, f.end(&x), l2);
        let h = zz(&x, &mut rng, g.end(&x), l3);
        let left = zigzag::concat(&x, &zigzag::concat(&x, &f, &g).unwrap(), &h).unwrap();
        let right = zigzag::concat(&x, &f, &zigzag::concat(&x, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(&zigzag::concat(&x, &Zigzag::empty(a), &f).unwrap(), &f);
        prop_assert_eq!(&zigzag::concat(&x, &f, &Zigzag::empty(f.end(&x))).unwrap(), &f);
    }

    #[test]
    fn json_round_trips(fx in 0usize..8, seed in any::<u64>()) {
        let x = fixture(fx);
        prop_assert_eq!(&FinCategory::from_json(&x.to_json()).unwrap().to_json(), &x.to_json());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = zigzag::random_word(&x, &mut rng, 3, 3);
        let wj = serde_json::to_string(&w.to_json(&x)).unwrap();
        let w2 = zigzag::GeneratorWord::from_json(&x, &serde_json::from_str(&wj).unwrap()).unwrap();
        prop_assert_eq!(&w2, &w);
        let c = w.eval(&x).unwrap();
        let cj = serde_json::to_string(&c.to_json(&x)).unwrap();
        prop_assert_eq!(&StackCell::from_json(&x, &serde_json::from_str(&cj).unwrap()).unwrap(), &c);
        let zj = serde_json::to_string(&c.source.to_json(&x)).unwrap();
        prop_assert_eq!(&Zigzag::from_json(&x, &serde_json::from_str(&zj).unwrap()).unwrap(), &c.source);
    }

    #[test]
    fn equality_survives_whiskering(fx in 0usize..3, seed in any::<u64>(), len in 0usize..3, right in any::<bool>()) {
        let x = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = zigzag::random_word(&x, &mut rng, 2, 3).eval(&x).unwrap();
        let n = zigzag::normalize(&x, &c).eval(&x).unwrap();
        let (side, z) = if right {
            (WhiskerSide::Right, zz(&x, &mut rng, c.source.end(&x), len))
        } else {
            let legs = walk(&x, &mut rng, c.source.start, len);
            let back = zigzag::reduce_zigzag(&x, c.source.start, &legs).unwrap();
            let rev: Vec<Leg> = back.legs.iter().rev().map(|l| Leg { dir: if l.dir == Dir::Fwd { Dir::Bwd } else { Dir::Fwd }, mor: l.mor }).collect();
            (WhiskerSide::Left, zigzag::reduce_zigzag(&x, back.end(&x), &rev).unwrap())
        };
        let wc = zigzag::whisker(&x, &c, side, &z).unwrap();
        let wn = zigzag::whisker(&x, &n, side, &z).unwrap();
        prop_assert_eq!(zigzag::equal(&x, &wc, &wn, DEFAULT_DEPTH).verdict, Verdict::Equal);
    }

    #[test]
    fn oracle_verdicts_are_symmetric(len in 0usize..4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let src = Word1::alternating(AdjObj::X, len);
        let words = adj_oracle::words_up_to(&src, 2);
        let (a, b) = (i.get(&words), j.get(&words));
        let ab = adj_oracle::equal_adj(a, b, 10).unwrap().verdict;
        prop_assert_eq!(ab, adj_oracle::equal_adj(b, a, 10).unwrap().verdict);
        prop_assert_ne!(ab, Verdict::Unknown);
        let same_key = adj_oracle::canonical_key(a).unwrap() == adj_oracle::canonical_key(b).unwrap();
        if same_key {
            prop_assert_eq!(ab, Verdict::Equal);
        }
    }
}
