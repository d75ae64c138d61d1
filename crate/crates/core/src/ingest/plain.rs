//! Line-marker plain-text grammar.
//!
//! ```text
//! #META id: doc-1
//! #META authors: Hjørland, B.; Albrechtsen, H.
//! #SECTION Introduction
//! Body text. Blank lines separate paragraphs.
//! #REFERENCES
//! [1] Lipetz, B. A. (1965). ...
//! ```

use super::{parse_year, DocumentBuilder};
use crate::error::{Error, Result};
use crate::extract::Segmenter;
use crate::ingest::Document;

#[derive(PartialEq)]
enum State {
    Meta,
    Body,
    References,
}

pub(super) fn parse(text: &str, segmenter: &Segmenter) -> Result<Document> {
    let mut b = DocumentBuilder::new(segmenter);
    let mut state = State::Meta;
    let mut paragraph: Vec<&str> = Vec::new();

    fn flush(b: &mut DocumentBuilder<'_>, paragraph: &mut Vec<&str>) {
        if !paragraph.is_empty() {
            b.add_paragraph(&paragraph.join(" "));
            paragraph.clear();
        }
    }

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        let trimmed = line.trim();

        if let Some(rest) = trimmed.strip_prefix("#META") {
            if state != State::Meta {
                return Err(Error::malformed(line_no, "#META after body text"));
            }
            let (key, value) = rest
                .split_once(':')
                .ok_or_else(|| Error::malformed(line_no, "#META line without ':'"))?;
            apply_meta(&mut b, key.trim(), value.trim(), line_no)?;
        } else if let Some(rest) = trimmed.strip_prefix("#SECTION") {
            if state == State::References {
                return Err(Error::malformed(line_no, "#SECTION after #REFERENCES"));
            }
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(Error::malformed(line_no, "malformed #SECTION marker"));
            }
            flush(&mut b, &mut paragraph);
            b.open_section(rest.trim());
            state = State::Body;
        } else if trimmed == "#REFERENCES" {
            if state == State::References {
                return Err(Error::malformed(line_no, "repeated #REFERENCES"));
            }
            flush(&mut b, &mut paragraph);
            b.saw_references = true;
            state = State::References;
        } else if trimmed.starts_with('#') {
            b.warnings
                .push(format!("line {line_no}: unrecognized directive skipped"));
        } else if trimmed.is_empty() {
            if state == State::Body {
                flush(&mut b, &mut paragraph);
            }
        } else {
            match state {
                State::Meta => {
                    return Err(Error::malformed(line_no, "text before the first #SECTION"))
                }
                State::Body => paragraph.push(trimmed),
                State::References => b.add_reference(trimmed),
            }
        }
    }
    flush(&mut b, &mut paragraph);
    b.finish()
}

fn apply_meta(b: &mut DocumentBuilder<'_>, key: &str, value: &str, line: usize) -> Result<()> {
    match key.to_ascii_lowercase().as_str() {
        "id" => b.metadata.doc_id = value.to_string(),
        "title" => b.metadata.title = value.to_string(),
        "authors" | "author" => {
            for name in value.split(';').map(str::trim).filter(|n| !n.is_empty()) {
                b.add_author(name);
            }
        }
        "venue" => b.metadata.venue_name = value.to_string(),
        "venue-type" | "venue_type" => {
            b.metadata.venue_type = value
                .parse()
                .map_err(|e: Error| Error::malformed(line, e.to_string()))?
        }
        "year" => b.metadata.year = Some(parse_year(value, line)?),
        "domain" => {
            b.metadata.domain_override = Some(
                value
                    .parse()
                    .map_err(|e: Error| Error::malformed(line, e.to_string()))?,
            )
        }
        other => b
            .warnings
            .push(format!("line {line}: unknown #META key '{other}'")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::codebook::Location;
    use crate::error::Error;
    use crate::ingest::{parse_document, InputFormat, VenueType};

    fn parse(t: &str) -> Result<crate::ingest::Document, Error> {
        parse_document(t.as_bytes(), InputFormat::PlainAnnotated)
    }

    const FIXTURE: &str = "\
#META id: doc-1
#META title: A test
#META authors: Hjørland, B.; Albrechtsen, H.
#META venue: Journal of Documentation
#META venue-type: journal
#META year: 2002
#SECTION Introduction
First sentence here (Smith, 2011). Second one.

A new paragraph.
#SECTION Related Work
Jones et al. (2010) agree.
#REFERENCES
Smith, J. (2011). A title. J, 1(2), 3-4.
Jones, A., Brown, B., & Green, C. (2010). Other. J, 2(1), 5-6.
[3] Doe, A. (2020). Third. Report.
";

    #[test]
    fn two_sections_three_references() {
        let d = parse(FIXTURE).unwrap();
        assert_eq!(d.sections.len(), 2);
        assert_eq!(d.references.len(), 3);
        assert_eq!(d.sentences.len(), 4);
        assert_eq!(d.sections[0].sentences, 0..3);
        assert_eq!(d.sections[1].sentences, 3..4);
        assert_eq!(d.sections[1].location, Location::LiteratureReview);
        assert_eq!(d.metadata.authors[0].key, "hjorland,b");
        assert_eq!(d.metadata.venue_type, VenueType::Journal);
        assert_eq!(d.metadata.year, Some(2002));
        let ids: Vec<_> = d.references.iter().map(|r| r.ref_id.as_str()).collect();
        assert_eq!(ids, vec!["smith-2011", "jones-etal-2010", "3"]);
    }

    #[test]
    fn empty_section_is_kept_with_warning() {
        let d = parse("#META id: x\n#SECTION Introduction\n#SECTION Methods\nText.\n#REFERENCES\n")
            .unwrap();
        assert_eq!(d.sections.len(), 2);
        assert!(d.sections[0].sentences.is_empty());
        assert!(d.warnings.iter().any(|w| w.contains("no sentences")));
    }

    #[test]
    fn missing_references_block_is_flagged() {
        let d = parse("#META id: x\n#META authors: Smith, J.\n#SECTION Intro\nText.\n").unwrap();
        assert!(d.references.is_empty());
        assert!(d.flags.missing_references);
        assert!(d.warnings.iter().any(|w| w.contains("no reference list")));
    }

    #[test]
    fn grammar_errors_carry_line_numbers() {
        assert!(matches!(
            parse("#META id: x\nstray text\n"),
            Err(Error::MalformedInput { line: 2, .. })
        ));
        assert!(matches!(
            parse("#META id x\n"),
            Err(Error::MalformedInput { line: 1, .. })
        ));
        assert!(matches!(
            parse("#META id: x\n#SECTION A\nt\n#META year: 2000\n"),
            Err(Error::MalformedInput { line: 4, .. })
        ));
        assert!(matches!(
            parse("#META id: x\n#META year: 99\n#SECTION A\n"),
            Err(Error::MalformedInput { line: 2, .. })
        ));
        assert!(matches!(parse("#META id: x\n"), Err(Error::EmptyDocument)));
        assert!(matches!(
            parse("#META id: x\n#SECTION A\nt.\n#REFERENCES\n[1] A, B. (2000). T.\n[1] C, D. (2001). U.\n"),
            Err(Error::DuplicateRefId(id)) if id == "1"
        ));
    }

    #[test]
    fn unknown_directive_is_a_warning() {
        let d = parse("#META id: x\n#SECTION A\n#FIGURE 1\nText.\n").unwrap();
        assert!(d.warnings.iter().any(|w| w.contains("line 3")));
        assert!(d.flags.metadata_incomplete);
    }

    #[test]
    fn repeated_author_year_ids_are_disambiguated() {
        let d = parse("#META id: x\n#SECTION A\nt.\n#REFERENCES\nSmith, J. (2000). One.\nSmith, J. (2000). Two.\n").unwrap();
        assert_eq!(d.references[1].ref_id, "smith-2000#2");
    }
}
