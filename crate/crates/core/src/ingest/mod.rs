//! Document model and the two input grammars.

mod names;
mod plain;
mod reference;
mod xml;

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codebook::{Domain, Location};
use crate::error::{Error, Result};
use crate::extract::Segmenter;

pub use names::{fold, normalize_author_name, surname_key, AuthorName};
pub use reference::{
    parse_reference_entry, split_author_segment, venue_signals, ReferenceEntry, VenueSignal,
};
pub use xml::write_xml;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    StructuredXml,
    PlainAnnotated,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "xml" | "structured_xml" | "structured-xml" => Ok(InputFormat::StructuredXml),
            "plain" | "txt" | "plain_annotated" | "plain-annotated" => {
                Ok(InputFormat::PlainAnnotated)
            }
            other => Err(Error::InvalidValue(format!(
                "unknown input format '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VenueType {
    Journal,
    Conference,
    Book,
    Report,
    Web,
    #[default]
    Other,
}

impl VenueType {
    pub fn as_str(self) -> &'static str {
        match self {
            VenueType::Journal => "journal",
            VenueType::Conference => "conference",
            VenueType::Book => "book",
            VenueType::Report => "report",
            VenueType::Web => "web",
            VenueType::Other => "other",
        }
    }
}

impl fmt::Display for VenueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VenueType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = match s.trim().to_ascii_lowercase().as_str() {
            "journal" => VenueType::Journal,
            "conference" | "proceedings" => VenueType::Conference,
            "book" | "chapter" => VenueType::Book,
            "report" | "news" => VenueType::Report,
            "web" | "blog" | "link" => VenueType::Web,
            "other" => VenueType::Other,
            other => return Err(Error::InvalidValue(format!("unknown venue type '{other}'"))),
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DocumentMetadata {
    pub doc_id: String,
    pub title: String,
    pub authors: Vec<AuthorName>,
    pub venue_name: String,
    pub venue_type: VenueType,
    pub year: Option<i32>,
    pub domain_override: Option<Domain>,
}

impl DocumentMetadata {
    pub fn author_keys(&self) -> Vec<String> {
        self.authors.iter().map(|a| a.key.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub raw_header: String,
    pub location: Location,
    /// Half-open range of document sentence indices.
    pub sentences: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DocumentFlags {
    pub metadata_incomplete: bool,
    pub missing_references: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub metadata: DocumentMetadata,
    pub sections: Vec<Section>,
    pub sentences: Vec<String>,
    pub references: Vec<ReferenceEntry>,
    pub flags: DocumentFlags,
    pub warnings: Vec<String>,
}

impl Document {
    /// Index of the section holding `sentence`, if any.
    pub fn section_of(&self, sentence: usize) -> Option<usize> {
        self.sections
            .iter()
            .position(|s| s.sentences.contains(&sentence))
    }

    pub fn reference(&self, ref_id: &str) -> Option<&ReferenceEntry> {
        self.references.iter().find(|r| r.ref_id == ref_id)
    }

    /// Canonical interchange form (JSON).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

const HEADER_RULES: &[(Location, &[&str])] = &[
    (Location::Abstract, &["abstract"]),
    (Location::Introduction, &["introduction", "background"]),
    (
        Location::LiteratureReview,
        &["literature review", "related work", "prior work"],
    ),
    (
        Location::Methodology,
        &["method", "materials and methods", "experimental setup"],
    ),
    (
        Location::ResultsDiscussion,
        &[
            "results",
            "discussion",
            "findings",
            "evaluation",
            "experiments",
        ],
    ),
    (
        Location::Conclusion,
        &["conclusion", "summary", "future work"],
    ),
];

/// Lowercase, drop leading numbering ("2.", "IV.") and punctuation.
fn clean_header(raw: &str) -> String {
    let lowered = fold(raw);
    let words: Vec<&str> = lowered
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .collect();
    let is_numbering = |w: &str| {
        w.chars().all(|c| c.is_ascii_digit())
            || (w.len() <= 4 && w.chars().all(|c| matches!(c, 'i' | 'v' | 'x')))
    };
    let start = words
        .iter()
        .position(|w| !is_numbering(w))
        .unwrap_or(words.len());
    words[start..].join(" ")
}

fn pattern_at(header: &str, pattern: &str, at_start: bool) -> bool {
    let prefix_ok = |i: usize| i == 0 || header.as_bytes()[i - 1] == b' ';
    if at_start {
        return header.starts_with(pattern);
    }
    header.match_indices(pattern).any(|(i, _)| prefix_ok(i))
}

/// Map a section header onto the location codebook (D1-D7).
pub fn normalize_header(raw: &str) -> Location {
    let header = clean_header(raw);
    for at_start in [true, false] {
        for (location, patterns) in HEADER_RULES {
            if patterns.iter().any(|p| pattern_at(&header, p, at_start)) {
                return *location;
            }
        }
    }
    Location::Other
}

/// Accumulates sections while a parser walks its input.
pub(crate) struct DocumentBuilder<'a> {
    segmenter: &'a Segmenter,
    pub metadata: DocumentMetadata,
    sections: Vec<Section>,
    sentences: Vec<String>,
    references: Vec<ReferenceEntry>,
    pub saw_references: bool,
    pub warnings: Vec<String>,
}

impl<'a> DocumentBuilder<'a> {
    pub fn new(segmenter: &'a Segmenter) -> Self {
        DocumentBuilder {
            segmenter,
            metadata: DocumentMetadata::default(),
            sections: Vec::new(),
            sentences: Vec::new(),
            references: Vec::new(),
            saw_references: false,
            warnings: Vec::new(),
        }
    }

    pub fn open_section(&mut self, header: &str) {
        let n = self.sentences.len();
        self.sections.push(Section {
            raw_header: header.trim().to_string(),
            location: normalize_header(header),
            sentences: n..n,
        });
    }

    pub fn add_paragraph(&mut self, text: &str) {
        let new = self.segmenter.segment(text);
        self.sentences.extend(new);
        if let Some(s) = self.sections.last_mut() {
            s.sentences.end = self.sentences.len();
        }
    }

    pub fn add_reference(&mut self, text: &str) {
        let entry = parse_reference_entry(text);
        self.push_reference(entry);
    }

    pub fn push_reference(&mut self, entry: ReferenceEntry) {
        for w in &entry.warnings {
            self.warnings
                .push(format!("reference {}: {}", self.references.len() + 1, w));
        }
        self.references.push(entry);
    }

    pub fn add_author(&mut self, raw: &str) {
        match normalize_author_name(raw) {
            Ok(a) => self.metadata.authors.push(a),
            Err(e) => self.warnings.push(e.to_string()),
        }
    }

    pub fn finish(mut self) -> Result<Document> {
        if self.sections.is_empty() {
            return Err(Error::EmptyDocument);
        }
        if self.metadata.doc_id.trim().is_empty() {
            return Err(Error::malformed(0, "missing document id"));
        }
        for s in &self.sections {
            if s.sentences.is_empty() {
                self.warnings
                    .push(format!("section '{}' has no sentences", s.raw_header));
            }
        }

        // explicit labels must be unique; derived author-year ids are disambiguated
        let mut seen = HashSet::new();
        for r in &self.references {
            if r.label.is_some() && !seen.insert(r.ref_id.clone()) {
                return Err(Error::DuplicateRefId(r.ref_id.clone()));
            }
        }
        for i in 0..self.references.len() {
            if self.references[i].label.is_some() {
                continue;
            }
            let base = self.references[i].ref_id.clone();
            let mut id = base.clone();
            let mut n = 2;
            while seen.contains(&id) {
                id = format!("{base}#{n}");
                n += 1;
            }
            if id != base {
                self.warnings
                    .push(format!("reference id '{base}' repeated; renamed to '{id}'"));
            }
            seen.insert(id.clone());
            self.references[i].ref_id = id;
        }

        let flags = DocumentFlags {
            metadata_incomplete: self.metadata.authors.is_empty(),
            missing_references: self.references.is_empty(),
        };
        if !self.saw_references {
            self.warnings.push("no reference list".to_string());
        }
        if flags.metadata_incomplete {
            self.warnings
                .push("metadata incomplete: no authors".to_string());
        }
        Ok(Document {
            metadata: self.metadata,
            sections: self.sections,
            sentences: self.sentences,
            references: self.references,
            flags,
            warnings: self.warnings,
        })
    }
}

pub(crate) fn parse_year(value: &str, line: usize) -> Result<i32> {
    let y: i32 = value
        .trim()
        .parse()
        .map_err(|_| Error::malformed(line, format!("invalid year '{}'", value.trim())))?;
    if !(1400..=2100).contains(&y) {
        return Err(Error::malformed(line, format!("year {y} out of range")));
    }
    Ok(y)
}

/// Parse a document with the default abbreviation list.
pub fn parse_document(bytes: &[u8], format: InputFormat) -> Result<Document> {
    parse_document_with(bytes, format, &Segmenter::default())
}

pub fn parse_document_with(
    bytes: &[u8],
    format: InputFormat,
    segmenter: &Segmenter,
) -> Result<Document> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1;
        Error::malformed(line, "invalid UTF-8")
    })?;
    match format {
        InputFormat::PlainAnnotated => plain::parse(text, segmenter),
        InputFormat::StructuredXml => xml::parse(text, segmenter),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_table() {
        assert_eq!(normalize_header("Abstract"), Location::Abstract);
        assert_eq!(normalize_header("1. Introduction"), Location::Introduction);
        assert_eq!(
            normalize_header("Background and motivation"),
            Location::Introduction
        );
        assert_eq!(
            normalize_header("Literature Review"),
            Location::LiteratureReview
        );
        assert_eq!(
            normalize_header("2 Related Work"),
            Location::LiteratureReview
        );
        assert_eq!(normalize_header("Methodology"), Location::Methodology);
        assert_eq!(
            normalize_header("Materials and Methods"),
            Location::Methodology
        );
        assert_eq!(
            normalize_header("Experimental Setup"),
            Location::Methodology
        );
        assert_eq!(
            normalize_header("Results and Discussion"),
            Location::ResultsDiscussion
        );
        assert_eq!(
            normalize_header("IV. Experiments"),
            Location::ResultsDiscussion
        );
        assert_eq!(
            normalize_header("Evaluation of methods"),
            Location::ResultsDiscussion
        );
        assert_eq!(normalize_header("Conclusions"), Location::Conclusion);
        assert_eq!(
            normalize_header("Conclusion and future work"),
            Location::Conclusion
        );
        assert_eq!(normalize_header("Acknowledgements"), Location::Other);
    }

    #[test]
    fn invalid_utf8_is_structured_error() {
        let err =
            parse_document(b"#META id: x\n\xff\xfe", InputFormat::PlainAnnotated).unwrap_err();
        assert!(matches!(err, Error::MalformedInput { line: 2, .. }));
    }
}
