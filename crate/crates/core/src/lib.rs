//! Citation content analysis engine.
//!
//! Parses full-text documents, detects and links in-text citations, and
//! assigns every citation a value in each of the twelve codebook
//! categories (A-L), together with aggregate tables and agreement metrics
//! against gold codings.

pub mod codebook;
pub mod error;
pub mod extract;
pub mod ingest;
pub mod network;
pub mod pipeline;
pub mod report;
pub mod semantic;
pub mod syntactic;

pub use codebook::{Category, CodeValue, Coding, Slot, UNCODABLE};
pub use error::{Error, Result};
pub use extract::{extract_citations, extract_context, CitationContext, InTextCitation, Segmenter};
pub use ingest::{
    parse_document, parse_document_with, Document, DocumentMetadata, InputFormat, ReferenceEntry,
};
pub use network::{
    build_coauthor_graph, capital_scores, code_relation, CapitalScore, Centralities, CoauthorGraph,
};
pub use pipeline::{
    code_corpus, code_document, parse_inputs, CodingConfig, CorpusCoding, CorpusSummary,
};
pub use report::{
    aggregate, assemble_record, cohens_kappa, percent_agreement, AgreementReport, CodedCitation,
    FrequencyTable,
};
pub use semantic::{CueLexicon, CueTag, LexiconSet, MatchedCue, VenueMapping};
