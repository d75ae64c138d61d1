//! Sentence segmentation, citation detection and linking, and context
//! extraction.

mod context;
mod detect;
mod link;
mod segment;

use std::collections::BTreeMap;

pub use context::{extract_context, CitationContext, ContextLevel, MAX_WINDOW};
pub use detect::{detect_citations, parse_marker, InTextCitation, Marker, MarkerStyle};
pub use link::{link_citation, link_first_author, Link};
pub use segment::{collapse_whitespace, Segmenter};

use crate::error::{Error, Result};
use crate::ingest::Document;

/// Detect and link every citation in a document. Citation ids are assigned
/// in document order starting at 1.
pub fn extract_citations(doc: &Document) -> Vec<InTextCitation> {
    let mut out = Vec::new();
    for (index, sentence) in doc.sentences.iter().enumerate() {
        for mut c in detect_citations(sentence, &doc.references) {
            c.citation_id = out.len() as u32 + 1;
            c.sentence_index = index;
            out.push(c);
        }
    }
    out
}

/// Resolved mentions of `ref_id` across the whole document.
pub fn count_mentions(doc: &Document, citations: &[InTextCitation], ref_id: &str) -> Result<usize> {
    if doc.reference(ref_id).is_none() {
        return Err(Error::UnknownRef(ref_id.to_string()));
    }
    Ok(citations
        .iter()
        .filter(|c| c.link.ref_id() == Some(ref_id))
        .count())
}

/// Mention counts for every reference, in bibliography order.
pub fn mention_counts(doc: &Document, citations: &[InTextCitation]) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = doc
        .references
        .iter()
        .map(|r| (r.ref_id.clone(), 0))
        .collect();
    for c in citations {
        if let Some(id) = c.link.ref_id() {
            *counts.entry(id.to_string()).or_default() += 1;
        }
    }
    counts
}

/// References listed in the bibliography but never matched in the text.
pub fn unmentioned_references<'a>(doc: &'a Document, citations: &[InTextCitation]) -> Vec<&'a str> {
    doc.references
        .iter()
        .filter(|r| {
            !citations
                .iter()
                .any(|c| c.link.ref_id() == Some(r.ref_id.as_str()))
        })
        .map(|r| r.ref_id.as_str())
        .collect()
}
