//! Degree, harmonic closeness and betweenness. Results are vectors aligned
//! with [`CoauthorGraph::nodes`].

use std::collections::VecDeque;

use super::CoauthorGraph;

pub fn centrality_degree(g: &CoauthorGraph) -> Vec<usize> {
    (0..g.len()).map(|v| g.neighbours(v).len()).collect()
}

/// BFS distances from `source`; `usize::MAX` marks unreachable nodes.
fn distances(g: &CoauthorGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Sum of `1/d(a,b)` over all other nodes, unreachable nodes adding 0.
pub fn centrality_harmonic(g: &CoauthorGraph) -> Vec<f64> {
    (0..g.len())
        .map(|v| {
            distances(g, v)
                .iter()
                .filter(|&&d| d != usize::MAX && d > 0)
                .map(|&d| 1.0 / d as f64)
                .sum()
        })
        .collect()
}

/// Brandes accumulation over unordered pairs (each pair counted once).
pub fn centrality_betweenness(g: &CoauthorGraph) -> Vec<f64> {
    let n = g.len();
    let mut cb = vec![0.0; n];
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        stack.clear();
        for p in preds.iter_mut() {
            p.clear();
        }
        sigma.fill(0.0);
        dist.fill(-1);
        delta.fill(0.0);
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbours(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                cb[w] += delta[w];
            }
        }
    }
    // every unordered pair was visited from both ends
    cb.iter_mut().for_each(|x| *x /= 2.0);
    cb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::GraphBuilder;

    fn graph(edges: &[(&str, &str)], isolated: &[&str]) -> CoauthorGraph {
        let mut b = GraphBuilder::default();
        for (a, c) in edges {
            b.add_edge(a, c);
        }
        for i in isolated {
            b.add_clique(&[*i]);
        }
        b.build()
    }

    #[test]
    fn path_values() {
        let g = graph(&[("x", "y"), ("y", "z")], &[]);
        assert_eq!(centrality_degree(&g), vec![1, 2, 1]);
        assert_eq!(centrality_harmonic(&g), vec![1.5, 2.0, 1.5]);
        assert_eq!(centrality_betweenness(&g), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn triangle_and_star() {
        let t = graph(&[("a", "b"), ("b", "c"), ("a", "c")], &[]);
        assert_eq!(centrality_degree(&t), vec![2, 2, 2]);
        assert_eq!(centrality_betweenness(&t), vec![0.0; 3]);
        let s = graph(&[("c", "l1"), ("c", "l2"), ("c", "l3")], &[]);
        assert_eq!(centrality_betweenness(&s)[0], 3.0);
    }

    #[test]
    fn isolated_node_scores_zero() {
        let g = graph(&[("a", "b")], &["z"]);
        let i = g.index_of("z").unwrap();
        assert_eq!(centrality_degree(&g)[i], 0);
        assert_eq!(centrality_harmonic(&g)[i], 0.0);
        assert_eq!(centrality_betweenness(&g)[i], 0.0);
    }

    #[test]
    fn cycle_splits_paths() {
        // square a-b-c-d-a: each node carries half of the opposite pair
        let g = graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], &[]);
        assert_eq!(centrality_betweenness(&g), vec![0.5; 4]);
    }
}
