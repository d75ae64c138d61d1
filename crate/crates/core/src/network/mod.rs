//! Coauthorship network, capital scores and Category C.

mod centrality;
mod graph;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::codebook::{Coding, Relation};

pub use centrality::{centrality_betweenness, centrality_degree, centrality_harmonic};
pub use graph::{build_coauthor_graph, CoauthorGraph, GraphBuilder};

/// Default minimum capital gap for a hierarchical relation.
pub const DEFAULT_DELTA: f64 = 0.2;

/// Composite given when a metric carries no ordering information.
pub const NEUTRAL_COMPOSITE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapitalScore {
    pub author: String,
    pub degree: usize,
    pub harmonic_closeness: f64,
    pub betweenness: f64,
    pub composite: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Centralities {
    pub degree: Vec<usize>,
    pub harmonic: Vec<f64>,
    pub betweenness: Vec<f64>,
}

impl Centralities {
    pub fn compute(g: &CoauthorGraph) -> Self {
        Centralities {
            degree: centrality_degree(g),
            harmonic: centrality_harmonic(g),
            betweenness: centrality_betweenness(g),
        }
    }
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Percentile rank `rank / n` of each value, ties sharing their mean rank.
/// A metric on which every author ties (including n = 1) carries no order
/// and maps everyone to 0.5.
pub fn percentile_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    if n == 0 {
        return Vec::new();
    }
    if same(values[order[0]], values[order[n - 1]]) {
        return vec![NEUTRAL_COMPOSITE; n];
    }
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && same(values[order[j]], values[order[j + 1]]) {
            j += 1;
        }
        // 1-based ranks i+1..=j+1 share their mean
        let mean = (i + j + 2) as f64 / 2.0;
        for &k in &order[i..=j] {
            ranks[k] = mean / n as f64;
        }
        i = j + 1;
    }
    ranks
}

/// Composite capital per author: the mean of the three percentile ranks.
pub fn capital_scores(g: &CoauthorGraph, c: &Centralities) -> BTreeMap<String, CapitalScore> {
    let degree: Vec<f64> = c.degree.iter().map(|&d| d as f64).collect();
    let pd = percentile_ranks(&degree);
    let ph = percentile_ranks(&c.harmonic);
    let pb = percentile_ranks(&c.betweenness);
    g.nodes()
        .iter()
        .enumerate()
        .map(|(i, key)| {
            let score = CapitalScore {
                author: key.clone(),
                degree: c.degree[i],
                harmonic_closeness: c.harmonic[i],
                betweenness: c.betweenness[i],
                composite: (pd[i] + ph[i] + pb[i]) / 3.0,
            };
            (key.clone(), score)
        })
        .collect()
}

fn max_composite(keys: &BTreeSet<&str>, scores: &BTreeMap<String, CapitalScore>) -> f64 {
    keys.iter()
        .map(|k| scores.get(*k).map_or(0.0, |s| s.composite))
        .fold(0.0, f64::max)
}

pub const RULE_C_DEFAULT: &str = "C:default-parallel";

/// Category C. Reciprocal when every cited author is among the citing
/// authors; parallel when the sets overlap or are linked by a coauthorship
/// edge; hierarchical when the cited side's best composite exceeds the
/// citing side's by at least `delta`; otherwise parallel by default.
pub fn code_relation<S: AsRef<str>>(
    citing: &[S],
    cited: &[S],
    g: &CoauthorGraph,
    scores: &BTreeMap<String, CapitalScore>,
    delta: f64,
) -> Coding<Relation> {
    let citing: BTreeSet<&str> = citing.iter().map(AsRef::as_ref).collect();
    let cited: BTreeSet<&str> = cited.iter().map(AsRef::as_ref).collect();
    if citing.is_empty() || cited.is_empty() {
        return Coding::uncodable("missing-authors", "C:missing-authors");
    }
    if cited.is_subset(&citing) {
        return Coding::value(Relation::Reciprocal, "C:self-citation");
    }
    if !cited.is_disjoint(&citing) {
        return Coding::value(Relation::Parallel, "C:shared-author");
    }
    if citing
        .iter()
        .any(|a| cited.iter().any(|b| g.has_edge(a, b)))
    {
        return Coding::value(Relation::Parallel, "C:coauthor-edge");
    }
    if max_composite(&cited, scores) - max_composite(&citing, scores) >= delta {
        return Coding::value(Relation::Hierarchical, "C:capital-gap");
    }
    Coding::value(Relation::Parallel, RULE_C_DEFAULT)
}
