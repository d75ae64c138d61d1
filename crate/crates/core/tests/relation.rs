mod common;

use citecoder_core::codebook::Relation;
use citecoder_core::network::{
    capital_scores, code_relation, percentile_ranks, Centralities, GraphBuilder,
};

/// Hub h joins two groups; z and y form a separate pair.
fn six_authors() -> citecoder_core::CoauthorGraph {
    let mut b = GraphBuilder::default();
    for (p, q) in [("h", "a"), ("h", "b"), ("h", "c"), ("a", "b"), ("y", "z")] {
        b.add_edge(p, q);
    }
    b.build()
}

#[test]
fn composites_follow_oracle_centralities() {
    let g = six_authors();
    let degree: Vec<f64> = (0..g.len()).map(|v| g.neighbours(v).len() as f64).collect();
    let oracle = [
        degree,
        common::brute_harmonic(&g),
        common::brute_betweenness(&g),
    ];
    let ranks: Vec<Vec<f64>> = oracle.iter().map(|m| percentile_ranks(m)).collect();
    let scores = capital_scores(&g, &Centralities::compute(&g));
    for (i, key) in g.nodes().iter().enumerate() {
        let want = (ranks[0][i] + ranks[1][i] + ranks[2][i]) / 3.0;
        assert!((scores[key].composite - want).abs() < 1e-12, "{key}");
    }
    // h leads every metric
    assert_eq!(scores["h"].composite, 1.0);
}

#[test]
fn capital_gap_decides_hierarchy() {
    let g = six_authors();
    let scores = capital_scores(&g, &Centralities::compute(&g));
    let gap = scores["h"].composite - scores["z"].composite;
    assert!(gap >= 0.2, "gap {gap}");
    assert_eq!(
        code_relation(&["z"], &["h"], &g, &scores, 0.2).get(),
        Some(Relation::Hierarchical)
    );
    // the reverse direction has no gap in the cited side's favour
    assert_eq!(
        code_relation(&["h"], &["z"], &g, &scores, 0.2).get(),
        Some(Relation::Parallel)
    );
    // edge beats gap
    assert_eq!(
        code_relation(&["c"], &["h"], &g, &scores, 0.0).rule,
        "C:coauthor-edge"
    );
    // a gap below delta falls back to the default
    let c = code_relation(&["z"], &["h"], &g, &scores, gap + 0.01);
    assert_eq!(
        (c.get(), c.rule),
        (Some(Relation::Parallel), "C:default-parallel")
    );
}
