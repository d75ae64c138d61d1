//! Helpers shared by the integration suites: independent centrality
//! oracles, random graphs, the fixture corpus and a synthetic corpus.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use citecoder_core::network::{CoauthorGraph, GraphBuilder};
use citecoder_core::{parse_document, Document, InputFormat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

pub fn fixture(name: &str) -> Document {
    let bytes = std::fs::read(fixture_dir().join(name)).expect("fixture exists");
    parse_document(&bytes, InputFormat::PlainAnnotated).expect("fixture parses")
}

pub fn fixture_corpus() -> Vec<Document> {
    ["doc_a.txt", "doc_b.txt", "doc_c.txt", "styles.txt"]
        .iter()
        .map(|n| fixture(n))
        .collect()
}

/// Random graph on `n` nodes named `n0..`, each pair joined with
/// probability `p`.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> CoauthorGraph {
    let mut b = GraphBuilder::default();
    for i in 0..n {
        b.add_clique(&[format!("n{i}")]);
        for j in 0..i {
            if rng.gen_bool(p) {
                b.add_edge(&format!("n{i}"), &format!("n{j}"));
            }
        }
    }
    b.build()
}

/// Every simple path from `s` to `t`, by exhaustive depth-first search.
fn simple_paths(g: &CoauthorGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &CoauthorGraph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbours(v) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, t, &mut vec![s], &mut out);
    out
}

/// Shortest paths between `s` and `t`, picked out of all simple paths.
fn shortest_paths(g: &CoauthorGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let all = simple_paths(g, s, t);
    let best = all.iter().map(Vec::len).min();
    all.into_iter().filter(|p| Some(p.len()) == best).collect()
}

/// Betweenness straight from its definition.
pub fn brute_betweenness(g: &CoauthorGraph) -> Vec<f64> {
    let n = g.len();
    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            for (v, slot) in out.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                *slot += through as f64 / paths.len() as f64;
            }
        }
    }
    out
}

/// Harmonic closeness from path-enumeration distances, summed over other
/// nodes in index order.
pub fn brute_harmonic(g: &CoauthorGraph) -> Vec<f64> {
    let n = g.len();
    (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a)
                .map(|b| match shortest_paths(g, a, b).first() {
                    Some(p) => 1.0 / (p.len() - 1) as f64,
                    None => 0.0,
                })
                .sum()
        })
        .collect()
}

const SURNAMES: &[&str] = &[
    "Adams", "Baker", "Chen", "Dubois", "Evans", "Fischer", "Garcia", "Huang", "Ito", "Jensen",
    "Kowalski", "Larsen", "Moreau", "Nakamura", "Olsen", "Petrov", "Quinn", "Rossi", "Schmidt",
    "Tanaka", "Ueda", "Varga", "Weber", "Young", "Zhang",
];
const HEADERS: &[&str] = &[
    "Introduction",
    "Literature Review",
    "Methods",
    "Results",
    "Discussion",
    "Conclusion",
];
const VENUES: &[&str] = &[
    "Journal of Documentation",
    "Scientometrics",
    "Cell",
    "IEEE Transactions on Software Engineering",
    "Philosophy of Science",
    "Obscure Quarterly",
];
const FILLER: &[&str] = &[
    "The data were collected over two years",
    "Prior work has shown mixed results",
    "However, the effect was small",
    "This framework is based on earlier models",
    "We use a simple survey instrument",
    "A seminal account explains the pattern",
    "The experiment was repeated in the laboratory",
    "Results suggest a clear trend",
];

/// Plain-annotated text for one synthetic document with roughly
/// `sentences` body sentences and `refs` references.
pub fn synthetic_document(rng: &mut StdRng, index: usize, sentences: usize, refs: usize) -> String {
    let name = |rng: &mut StdRng| SURNAMES[rng.gen_range(0..SURNAMES.len())];
    let initial = |rng: &mut StdRng| (b'A' + rng.gen_range(0..26u8)) as char;
    let mut text = format!("#META id: syn-{index:04}\n#META title: Synthetic study {index}\n");
    let n_auth = rng.gen_range(1..=3);
    let authors: Vec<String> = (0..n_auth)
        .map(|_| format!("{}, {}.", name(rng), initial(rng)))
        .collect();
    text.push_str(&format!("#META authors: {}\n", authors.join("; ")));
    text.push_str(&format!(
        "#META venue: {}\n",
        VENUES[rng.gen_range(0..VENUES.len())]
    ));
    text.push_str(&format!(
        "#META venue_type: journal\n#META year: {}\n",
        rng.gen_range(1990..2020)
    ));

    // distinct (surname, year) so every marker resolves
    let mut bib: Vec<(String, Vec<String>, i32)> = Vec::new();
    while bib.len() < refs {
        let year = rng.gen_range(1950..2020);
        let first = name(rng);
        if bib.iter().any(|(f, _, y)| f == first && *y == year) {
            continue;
        }
        let co: Vec<String> = (0..rng.gen_range(0..3))
            .map(|_| name(rng).to_string())
            .collect();
        bib.push((first.to_string(), co, year));
    }
    let per_section = sentences.div_ceil(HEADERS.len());
    for header in HEADERS {
        text.push_str(&format!("#SECTION {header}\n"));
        for _ in 0..per_section {
            let filler = FILLER[rng.gen_range(0..FILLER.len())];
            if rng.gen_bool(0.6) {
                let (first, co, year) = &bib[rng.gen_range(0..bib.len())];
                let who = match co.len() {
                    0 => first.clone(),
                    1 => format!("{first} and {}", co[0]),
                    _ => format!("{first} et al."),
                };
                if rng.gen_bool(0.5) {
                    text.push_str(&format!("{filler} ({who}, {year}).\n"));
                } else {
                    text.push_str(&format!(
                        "{who} ({year}) reported that {}.\n",
                        filler.to_lowercase()
                    ));
                }
            } else {
                text.push_str(&format!("{filler}.\n"));
            }
        }
    }
    text.push_str("#REFERENCES\n");
    for (first, co, year) in &bib {
        let mut names = vec![format!("{first}, {}.", initial(rng))];
        names.extend(co.iter().map(|c| format!("{c}, {}.", initial(rng))));
        let authors = match names.len() {
            1 => names[0].clone(),
            n => format!("{}, & {}", names[..n - 1].join(", "), names[n - 1]),
        };
        text.push_str(&format!(
            "{authors} ({year}). A study of things. Journal of Studies, {}({}), 1-20.\n",
            rng.gen_range(1..60),
            rng.gen_range(1..6)
        ));
    }
    text
}

pub fn synthetic_texts(seed: u64, docs: usize, sentences: usize, refs: usize) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..docs)
        .map(|i| synthetic_document(&mut rng, i, sentences, refs))
        .collect()
}

pub fn synthetic_corpus(seed: u64, docs: usize, sentences: usize, refs: usize) -> Vec<Document> {
    synthetic_texts(seed, docs, sentences, refs)
        .iter()
        .map(|t| {
            parse_document(t.as_bytes(), InputFormat::PlainAnnotated)
                .expect("synthetic document parses")
        })
        .collect()
}
