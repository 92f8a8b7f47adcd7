use std::collections::{BTreeMap, HashSet};

use radj::adj_oracle::{boundary_pairs, golden_counts, GoldenCount, SOURCE_LEN};
use radj::zigzag::ORACLE_DEPTH;

fn golden() -> Vec<GoldenCount> {
    serde_json::from_str(include_str!("golden/adj_counts.json")).unwrap()
}

#[test]
fn golden_counts_are_reproduced() {
    let g = golden();
    for b in 0..=3 {
        let want: Vec<_> = g.iter().filter(|e| e.gen_bound == b).cloned().collect();
        assert_eq!(golden_counts(b, ORACLE_DEPTH), want, "gen_bound {b}");
    }
}

/// Brute force: distinct planar matchings among all enumerated words.
#[test]
fn golden_counts_match_matching_classes() {
    let g: BTreeMap<(String, String, usize), usize> =
        golden().into_iter().map(|e| ((e.src, e.tgt, e.gen_bound), e.classes)).collect();
    for b in 0..=3 {
        for (s, t, ws) in boundary_pairs(SOURCE_LEN, b) {
            let diagrams: HashSet<_> = ws.iter().map(|w| w.diagram().unwrap()).collect();
            assert_eq!(g[&(s.to_string(), t.to_string(), b)], diagrams.len(), "{s} => {t} at {b}");
        }
    }
}
