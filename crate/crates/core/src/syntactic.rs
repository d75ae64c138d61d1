//! Syntactic-module coding: categories A, B, D, E, F (cited side) and
//! G, H (citing side). Category C lives in [`crate::network`].

use std::collections::BTreeSet;

use crate::codebook::{Authorship, Coding, DocumentType, Frequency, Location, Style};
use crate::error::{Error, Result};
use crate::extract::{detect_citations, InTextCitation, MarkerStyle};
use crate::ingest::{
    AuthorName, DocumentMetadata, ReferenceEntry, Section, VenueSignal, VenueType,
};

/// Category A from reference venue signals. Precedence is fixed:
/// proceedings, volume(issue), publisher, report, URL, then other.
pub fn code_document_type(signals: &BTreeSet<VenueSignal>) -> Coding<DocumentType> {
    const ORDER: [(VenueSignal, DocumentType, &str); 5] = [
        (
            VenueSignal::Proceedings,
            DocumentType::Conference,
            "A:proceedings-marker",
        ),
        (
            VenueSignal::VolumeIssue,
            DocumentType::Journal,
            "A:volume-issue",
        ),
        (
            VenueSignal::Publisher,
            DocumentType::Book,
            "A:publisher-marker",
        ),
        (VenueSignal::Report, DocumentType::Report, "A:report-marker"),
        (VenueSignal::Url, DocumentType::Web, "A:url-marker"),
    ];
    ORDER
        .iter()
        .find(|(signal, _, _)| signals.contains(signal))
        .map(|&(_, t, rule)| Coding::value(t, rule))
        .unwrap_or_else(|| Coding::value(DocumentType::Other, "A:catch-all"))
}

pub fn code_reference_type(entry: &ReferenceEntry) -> Coding<DocumentType> {
    code_document_type(&entry.venue_signals)
}

/// Category G from the citing document's declared venue type.
pub fn code_citing_type(meta: &DocumentMetadata) -> Coding<DocumentType> {
    let t = match meta.venue_type {
        VenueType::Journal => DocumentType::Journal,
        VenueType::Conference => DocumentType::Conference,
        VenueType::Book => DocumentType::Book,
        VenueType::Report => DocumentType::Report,
        VenueType::Web => DocumentType::Web,
        VenueType::Other => DocumentType::Other,
    };
    Coding::value(t, "G:venue-type")
}

/// Categories B and H.
pub fn code_authorship(authors: &[AuthorName]) -> Coding<Authorship> {
    match authors.len() {
        0 => Coding::uncodable("missing-authors", "authorship:empty"),
        1 => Coding::value(Authorship::Single, "authorship:one"),
        _ => Coding::value(Authorship::Multiple, "authorship:many"),
    }
}

/// Category D. `Other` carries the raw header as its specification.
pub fn code_location(section: &Section) -> (Coding<Location>, Option<String>) {
    let payload = (section.location == Location::Other).then(|| section.raw_header.clone());
    (Coding::value(section.location, "D:section-header"), payload)
}

/// Category E from the per-document mention count of the reference.
pub fn code_frequency(mention_count: i64) -> Result<Coding<Frequency>> {
    match mention_count {
        n if n <= 0 => Err(Error::InvalidCount(n)),
        1 => Ok(Coding::value(Frequency::Once, "E:once")),
        2..=4 => Ok(Coding::value(Frequency::TwoToFour, "E:two-to-four")),
        _ => Ok(Coding::value(Frequency::FivePlus, "E:five-plus")),
    }
}

/// Quotations shorter than this many tokens are treated as scare quotes.
pub const MIN_QUOTE_TOKENS: usize = 3;

/// Double-quoted spans in char offsets (start of opening, end after closing).
pub fn quoted_spans(sentence: &str) -> Vec<(usize, usize)> {
    let chars: Vec<char> = sentence.chars().collect();
    let mut spans = Vec::new();
    let mut open: Option<(usize, char)> = None;
    for (i, &c) in chars.iter().enumerate() {
        match (open, c) {
            (None, '"') => open = Some((i, '"')),
            (None, '“') => open = Some((i, '”')),
            (Some((s, close)), c) if c == close => {
                spans.push((s, i + 1));
                open = None;
            }
            _ => {}
        }
    }
    spans
}

fn quote_tokens(sentence: &str, span: (usize, usize)) -> usize {
    let inner: String = sentence
        .chars()
        .skip(span.0 + 1)
        .take(span.1.saturating_sub(span.0 + 2))
        .collect();
    inner.split_whitespace().count()
}

/// Whether a long enough quotation in `sentence` belongs to `citation`: the
/// first marker after the quote owns it, otherwise the last marker before.
fn has_attributed_quote(citation: &InTextCitation, sentence: &str) -> bool {
    let spans: Vec<(usize, usize)> = detect_citations(sentence, &[])
        .iter()
        .map(|c| c.char_span)
        .collect();
    quoted_spans(sentence)
        .into_iter()
        .filter(|q| quote_tokens(sentence, *q) >= MIN_QUOTE_TOKENS)
        .any(|q| {
            let owner = spans
                .iter()
                .filter(|s| s.0 >= q.1.saturating_sub(1))
                .min_by_key(|s| s.0)
                .or_else(|| spans.iter().filter(|s| s.1 <= q.0 + 1).max_by_key(|s| s.1));
            owner == Some(&citation.char_span)
        })
}

/// Category F: direct quotation (page locator or attributed quote), then
/// narrative interpretation, then not specifically mentioning.
pub fn code_style(citation: &InTextCitation, sentence: &str) -> Coding<Style> {
    if citation.marker.locator.is_some() {
        return Coding::value(Style::DirectQuotation, "F:page-locator");
    }
    if has_attributed_quote(citation, sentence) {
        return Coding::value(Style::DirectQuotation, "F:quotation");
    }
    if citation.marker_style == MarkerStyle::Narrative && !citation.inside_example_cue {
        return Coding::value(Style::SpecificInterpreting, "F:narrative");
    }
    if citation.inside_example_cue {
        Coding::value(Style::NotSpecific, "F:example-cue")
    } else {
        Coding::value(Style::NotSpecific, "F:parenthetical")
    }
}
