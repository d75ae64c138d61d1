use std::collections::{BTreeMap, BTreeSet};

use crate::ingest::DocumentMetadata;

/// Undirected, unweighted coauthorship graph. Nodes are author keys kept in
/// sorted order; adjacency lists are sorted node indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoauthorGraph {
    nodes: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

/// Accumulates author cliques. Builders merge associatively, so per-document
/// cliques can be reduced in any order.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    neighbours: BTreeMap<String, BTreeSet<String>>,
}

impl GraphBuilder {
    pub fn add_clique<S: AsRef<str>>(&mut self, keys: &[S]) {
        let keys: BTreeSet<&str> = keys
            .iter()
            .map(AsRef::as_ref)
            .filter(|k| !k.is_empty())
            .collect();
        for &a in &keys {
            let entry = self.neighbours.entry(a.to_string()).or_default();
            entry.extend(keys.iter().filter(|&&b| b != a).map(|b| b.to_string()));
        }
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        if a == b {
            self.add_clique(&[a]);
            return;
        }
        self.add_clique(&[a, b]);
    }

    pub fn merge(mut self, other: GraphBuilder) -> GraphBuilder {
        for (k, v) in other.neighbours {
            self.neighbours.entry(k).or_default().extend(v);
        }
        self
    }

    pub fn build(self) -> CoauthorGraph {
        let nodes: Vec<String> = self.neighbours.keys().cloned().collect();
        let index: BTreeMap<String, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let adj = self
            .neighbours
            .values()
            .map(|ns| ns.iter().map(|n| index[n]).collect())
            .collect();
        CoauthorGraph { nodes, index, adj }
    }
}

/// One clique per document author list; an edge joins every pair of
/// distinct authors that share at least one document.
pub fn build_coauthor_graph(corpus: &[DocumentMetadata]) -> CoauthorGraph {
    corpus
        .iter()
        .fold(GraphBuilder::default(), |mut b, meta| {
            b.add_clique(&meta.author_keys());
            b
        })
        .build()
}

impl CoauthorGraph {
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn neighbours(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn contains(&self, key: &str) -> bool {
        self.index.contains_key(key)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Edges as sorted `(a, b)` key pairs with `a < b`.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (i, ns) in self.adj.iter().enumerate() {
            for &j in ns.iter().filter(|&&j| j > i) {
                out.push((self.nodes[i].as_str(), self.nodes[j].as_str()));
            }
        }
        out
    }

    /// Tab-separated edge list, one `key1<TAB>key2` line per edge.
    pub fn edge_list(&self) -> String {
        self.edges()
            .into_iter()
            .map(|(a, b)| format!("{a}\t{b}\n"))
            .collect()
    }
}
