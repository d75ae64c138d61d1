//! End-to-end coding of a corpus: a parallel per-document pass for every
//! category except C, the coauthorship graph over all document metadata,
//! then Category C and record assembly.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::codebook::{Category, Slot};
use crate::error::{Error, Result};
use crate::extract::{
    extract_citations, extract_context, mention_counts, CitationContext, InTextCitation, Link,
    Segmenter,
};
use crate::ingest::{parse_document_with, Document, InputFormat};
use crate::network::{
    build_coauthor_graph, capital_scores, code_relation, CapitalScore, Centralities, CoauthorGraph,
    DEFAULT_DELTA,
};
use crate::report::{assemble_record, CodeSet, CodedCitation};
use crate::semantic::{
    code_disposition, code_domain, code_focus, code_function, focus_cues, LexiconSet, VenueMapping,
};
use crate::syntactic::{
    code_authorship, code_citing_type, code_frequency, code_location, code_reference_type,
    code_style,
};

/// Everything a coding run depends on besides the documents.
#[derive(Debug, Clone)]
pub struct CodingConfig {
    pub window_before: usize,
    pub window_after: usize,
    pub delta: f64,
    pub lexicons: LexiconSet,
    pub venues: VenueMapping,
    pub segmenter: Segmenter,
}

impl Default for CodingConfig {
    fn default() -> Self {
        CodingConfig {
            window_before: 1,
            window_after: 1,
            delta: DEFAULT_DELTA,
            lexicons: LexiconSet::defaults(),
            venues: VenueMapping::defaults(),
            segmenter: Segmenter::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnresolvedCitation {
    pub doc_id: String,
    pub citation_id: u32,
    pub sentence_index: usize,
    pub marker: String,
    pub candidates: Vec<String>,
}

/// Per-document result before Category C is known.
#[derive(Debug, Clone)]
pub struct DocumentCoding {
    pub doc_id: String,
    pending: Vec<Pending>,
    pub unresolved: Vec<UnresolvedCitation>,
    pub citations_detected: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
struct Pending {
    citation: InTextCitation,
    context: CitationContext,
    codes: CodeSet,
    citing: Vec<String>,
    cited: Vec<String>,
}

/// Code every category except C for one document.
pub fn code_document(doc: &Document, cfg: &CodingConfig) -> Result<DocumentCoding> {
    let doc_id = doc.metadata.doc_id.clone();
    let citations = extract_citations(doc);
    let counts = mention_counts(doc, &citations);

    let g = code_citing_type(&doc.metadata);
    let h = code_authorship(&doc.metadata.authors);
    let k = code_domain(&doc.metadata, &cfg.venues);
    let focus = focus_cues(doc, &cfg.lexicons);
    let l = code_focus(&k.slot, &focus);
    let citing = doc.metadata.author_keys();

    let mut pending = Vec::new();
    let mut unresolved = Vec::new();
    for c in &citations {
        let sentence = &doc.sentences[c.sentence_index];
        let reference = match &c.link {
            Link::Resolved(id) => doc.reference(id),
            _ => None,
        };
        let Some(reference) = reference else {
            unresolved.push(UnresolvedCitation {
                doc_id: doc_id.clone(),
                citation_id: c.citation_id,
                sentence_index: c.sentence_index,
                marker: c.span_text(sentence),
                candidates: match &c.link {
                    Link::Ambiguous(ids) => ids.clone(),
                    _ => Vec::new(),
                },
            });
            continue;
        };
        let context = extract_context(doc, c, cfg.window_before, cfg.window_after);
        let section = doc
            .section_of(c.sentence_index)
            .map(|s| &doc.sections[s])
            .ok_or(Error::IncompleteCoding('D'))?;
        let (d, location_other) = code_location(section);
        let e = code_frequency(counts.get(&reference.ref_id).copied().unwrap_or(0) as i64)?;
        let (i, i_cues) = code_function(&context, section.location, &cfg.lexicons);
        let (j, j_cues) = code_disposition(&context, &cfg.lexicons);

        let mut codes = CodeSet::default();
        codes
            .set(Category::A, &code_reference_type(reference))
            .set(Category::B, &code_authorship(&reference.authors))
            .set(Category::D, &d)
            .set(Category::E, &e)
            .set(Category::F, &code_style(c, sentence))
            .set(Category::G, &g)
            .set(Category::H, &h)
            .set(Category::I, &i)
            .set(Category::J, &j)
            .set(Category::K, &k)
            .set(Category::L, &l);
        codes.location_other = location_other;
        codes.add_cues(&i_cues);
        codes.add_cues(&j_cues);
        codes.add_cues(&focus);
        pending.push(Pending {
            citation: c.clone(),
            context,
            codes,
            citing: citing.clone(),
            cited: reference.authors.iter().map(|a| a.key.clone()).collect(),
        });
    }
    let mut warnings = doc
        .warnings
        .iter()
        .map(|w| format!("{doc_id}: {w}"))
        .collect::<Vec<_>>();
    if let Slot::Uncodable(_) = k.slot {
        warnings.push(format!(
            "{doc_id}: venue '{}' has no domain mapping",
            doc.metadata.venue_name
        ));
    }
    Ok(DocumentCoding {
        doc_id,
        pending,
        unresolved,
        citations_detected: citations.len(),
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub documents: usize,
    pub citations_detected: usize,
    pub records: usize,
    pub unresolved_count: usize,
    pub unresolved: Vec<UnresolvedCitation>,
    pub graph_nodes: usize,
    pub graph_edges: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CorpusCoding {
    /// Sorted by `(doc_id, citation_id)`.
    pub records: Vec<CodedCitation>,
    pub graph: CoauthorGraph,
    pub scores: BTreeMap<String, CapitalScore>,
    pub summary: CorpusSummary,
}

/// Run `f` on a pool of `jobs` threads, or rayon's global pool when `None`.
fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidValue(format!("thread pool: {e}"))),
    }
}

/// Code a parsed corpus. Output does not depend on `jobs` or on the order
/// of `docs`.
pub fn code_corpus(
    docs: &[Document],
    cfg: &CodingConfig,
    jobs: Option<usize>,
) -> Result<CorpusCoding> {
    with_pool(jobs, || code_corpus_inner(docs, cfg))?
}

fn code_corpus_inner(docs: &[Document], cfg: &CodingConfig) -> Result<CorpusCoding> {
    let per_doc: Vec<DocumentCoding> = docs
        .par_iter()
        .map(|d| code_document(d, cfg))
        .collect::<Result<_>>()?;

    let metadata: Vec<_> = docs.iter().map(|d| d.metadata.clone()).collect();
    let graph = build_coauthor_graph(&metadata);
    let scores = capital_scores(&graph, &Centralities::compute(&graph));

    let mut records: Vec<CodedCitation> = per_doc
        .par_iter()
        .flat_map_iter(|dc| {
            dc.pending.iter().map(|p| {
                let mut codes = p.codes.clone();
                codes.set(
                    Category::C,
                    &code_relation(&p.citing, &p.cited, &graph, &scores, cfg.delta),
                );
                assemble_record(&dc.doc_id, &p.citation, &p.context, &codes)
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by(|a, b| (&a.doc_id, a.citation_id).cmp(&(&b.doc_id, b.citation_id)));

    let mut unresolved: Vec<UnresolvedCitation> =
        per_doc.iter().flat_map(|d| d.unresolved.clone()).collect();
    unresolved.sort_by(|a, b| (&a.doc_id, a.citation_id).cmp(&(&b.doc_id, b.citation_id)));
    let mut by_id: Vec<&DocumentCoding> = per_doc.iter().collect();
    by_id.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    let mut warnings: Vec<String> = by_id.iter().flat_map(|d| d.warnings.clone()).collect();
    let mut ids: Vec<&str> = by_id.iter().map(|d| d.doc_id.as_str()).collect();
    ids.dedup();
    if ids.len() != by_id.len() {
        warnings.push("duplicate doc_id values in corpus".to_string());
    }
    let summary = CorpusSummary {
        documents: docs.len(),
        citations_detected: per_doc.iter().map(|d| d.citations_detected).sum(),
        records: records.len(),
        unresolved_count: unresolved.len(),
        unresolved,
        graph_nodes: graph.len(),
        graph_edges: graph.edges().len(),
        warnings,
    };
    Ok(CorpusCoding {
        records,
        graph,
        scores,
        summary,
    })
}

/// Read and parse every input file, in input order. Each slot holds the
/// document or the error that stopped it.
pub fn parse_inputs(
    inputs: &[(PathBuf, InputFormat)],
    segmenter: &Segmenter,
    jobs: Option<usize>,
) -> Result<Vec<Result<Document>>> {
    with_pool(jobs, || {
        inputs
            .par_iter()
            .map(|(path, format)| {
                let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
                parse_document_with(&bytes, *format, segmenter)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{parse_document, InputFormat};
    use crate::report::write_jsonl;

    const DOC: &str = "#META id: p1
#META title: A test
#META author: Doe, Jane
#META venue: Journal of Documentation
#META venue_type: journal
#META year: 2012
#SECTION Introduction
Classic work set the stage (Smith, 2001). Nothing else is said here.
#SECTION Methods
We use the approach based on Smith (2001). Unknown work is cited (Nobody, 1999).
#REFERENCES
Smith, A. (2001). A theory. Journal of Things, 3(2), 1-10.
";

    #[test]
    fn codes_resolved_and_lists_unresolved() {
        let doc = parse_document(DOC.as_bytes(), InputFormat::PlainAnnotated).unwrap();
        let out = code_corpus(&[doc], &CodingConfig::default(), Some(1)).unwrap();
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.summary.unresolved_count, 1);
        assert_eq!(out.summary.unresolved[0].marker, "Nobody, 1999");
        let r = &out.records[0];
        assert_eq!(
            [&r.a, &r.b, &r.d, &r.e, &r.f, &r.g, &r.h, &r.k, &r.l],
            ["A1", "B1", "D2", "E2", "F1", "G1", "H1", "K1", "L2"]
        );
        assert_eq!(r.i, "I1");
        assert_eq!(out.records[1].i, "I2");
        assert_eq!(out.records[1].f, "F2");
        // disjoint authors in a two-node graph with no edge
        assert_eq!(r.c, "C2");
        assert!(r.relation_default);
    }

    #[test]
    fn parallel_runs_match_serial() {
        let docs: Vec<Document> = (0..6)
            .map(|i| {
                let text = DOC.replace("id: p1", &format!("id: p{i}"));
                parse_document(text.as_bytes(), InputFormat::PlainAnnotated).unwrap()
            })
            .collect();
        let cfg = CodingConfig::default();
        let a = code_corpus(&docs, &cfg, Some(1)).unwrap();
        let mut rev = docs.clone();
        rev.reverse();
        let b = code_corpus(&rev, &cfg, Some(4)).unwrap();
        assert_eq!(write_jsonl(&a.records), write_jsonl(&b.records));
    }
}
