//! Structured XML subset.
//!
//! ```xml
//! <document id="doc-1">
//!   <meta>
//!     <title>...</title>
//!     <author>Hjørland, B.</author>
//!     <venue type="journal">Journal of Documentation</venue>
//!     <year>2002</year>
//!     <domain>K1</domain>
//!   </meta>
//!   <body>
//!     <section header="Introduction"><p>Text.</p></section>
//!   </body>
//!   <references>
//!     <ref id="1">Lipetz, B. A. (1965). ...</ref>
//!   </references>
//! </document>
//! ```
//!
//! `<i>`, `<b>`, `<em>`, `<sup>` and `<sub>` are accepted inside `<p>` and
//! `<ref>` and contribute their text only.

use std::fmt::Write as _;

use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{parse_reference_entry, parse_year, DocumentBuilder};
use crate::error::{Error, Result};
use crate::extract::Segmenter;
use crate::ingest::Document;

const INLINE: &[&str] = &["i", "b", "em", "sup", "sub"];

fn allowed_child(parent: Option<&str>, child: &str) -> bool {
    match parent {
        None => child == "document",
        Some("document") => matches!(child, "meta" | "body" | "references"),
        Some("meta") => matches!(child, "title" | "author" | "venue" | "year" | "domain"),
        Some("body") => child == "section",
        Some("section") => child == "p",
        Some("references") => child == "ref",
        Some(p) if p == "p" || p == "ref" || INLINE.contains(&p) => INLINE.contains(&child),
        _ => false,
    }
}

fn holds_text(element: &str) -> bool {
    matches!(
        element,
        "title" | "author" | "venue" | "year" | "domain" | "p" | "ref"
    ) || INLINE.contains(&element)
}

fn line_at(text: &str, pos: usize) -> usize {
    text.as_bytes()[..pos.min(text.len())]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        + 1
}

fn attr(e: &BytesStart<'_>, name: &str, line: usize) -> Result<Option<String>> {
    for a in e.attributes() {
        let a = a.map_err(|err| Error::malformed(line, err.to_string()))?;
        if a.key.as_ref() == name.as_bytes() {
            let v = a
                .unescape_value()
                .map_err(|err| Error::malformed(line, err.to_string()))?;
            return Ok(Some(v.into_owned()));
        }
    }
    Ok(None)
}

struct Open {
    name: String,
    text: String,
    attr: Option<String>,
}

pub(super) fn parse(text: &str, segmenter: &Segmenter) -> Result<Document> {
    let mut reader = Reader::from_str(text);
    let mut b = DocumentBuilder::new(segmenter);
    let mut stack: Vec<Open> = Vec::new();
    let mut seen_root = false;

    loop {
        let pos = reader.buffer_position() as usize;
        let line = line_at(text, pos);
        let event = reader
            .read_event()
            .map_err(|e| Error::malformed(line, e.to_string()))?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => {
                let empty = matches!(event, Event::Empty(_));
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                let parent = stack.last().map(|o| o.name.as_str());
                if parent.is_none() && seen_root {
                    return Err(Error::malformed(line, "content after root element"));
                }
                if !allowed_child(parent, &name) {
                    return Err(Error::malformed(
                        line,
                        format!("unexpected element <{name}> in <{}>", parent.unwrap_or("")),
                    ));
                }
                let attr_value = match name.as_str() {
                    "document" => {
                        seen_root = true;
                        attr(e, "id", line)?
                    }
                    "section" => Some(attr(e, "header", line)?.unwrap_or_default()),
                    "venue" => attr(e, "type", line)?,
                    "ref" => attr(e, "id", line)?,
                    _ => None,
                };
                let open = Open {
                    name,
                    text: String::new(),
                    attr: attr_value,
                };
                open_element(&mut b, &open);
                if empty {
                    close(&mut b, open, &mut stack, line)?;
                } else {
                    stack.push(open);
                }
            }
            Event::End(e) => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                let open = stack
                    .pop()
                    .ok_or_else(|| Error::malformed(line, format!("unmatched </{name}>")))?;
                if open.name != name {
                    return Err(Error::malformed(
                        line,
                        format!("expected </{}>, found </{name}>", open.name),
                    ));
                }
                close(&mut b, open, &mut stack, line)?;
            }
            Event::Text(t) => {
                let value = t
                    .unescape()
                    .map_err(|e| Error::malformed(line, e.to_string()))?;
                append_text(&mut stack, &value, line)?;
            }
            Event::CData(t) => {
                let value = String::from_utf8_lossy(&t).into_owned();
                append_text(&mut stack, &value, line)?;
            }
            Event::Eof => break,
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
    if let Some(open) = stack.last() {
        return Err(Error::malformed(
            line_at(text, text.len()),
            format!("unclosed <{}>", open.name),
        ));
    }
    if !seen_root {
        return Err(Error::malformed(1, "missing <document> root"));
    }
    b.finish()
}

fn append_text(stack: &mut [Open], value: &str, line: usize) -> Result<()> {
    match stack.last_mut() {
        Some(open) if holds_text(&open.name) => {
            open.text.push_str(value);
            Ok(())
        }
        _ if value.trim().is_empty() => Ok(()),
        _ => Err(Error::malformed(line, "unexpected text")),
    }
}

fn open_element(b: &mut DocumentBuilder<'_>, open: &Open) {
    match open.name.as_str() {
        "document" => b.metadata.doc_id = open.attr.clone().unwrap_or_default(),
        "section" => b.open_section(open.attr.as_deref().unwrap_or("")),
        "references" => b.saw_references = true,
        _ => {}
    }
}

fn close(b: &mut DocumentBuilder<'_>, open: Open, stack: &mut [Open], line: usize) -> Result<()> {
    let value = open.text.trim();
    match open.name.as_str() {
        "title" => b.metadata.title = value.to_string(),
        "author" => {
            if !value.is_empty() {
                b.add_author(value);
            }
        }
        "venue" => {
            b.metadata.venue_name = value.to_string();
            if let Some(t) = open.attr.as_deref() {
                b.metadata.venue_type = t
                    .parse()
                    .map_err(|e: Error| Error::malformed(line, e.to_string()))?;
            }
        }
        "year" => b.metadata.year = Some(parse_year(value, line)?),
        "domain" => {
            b.metadata.domain_override = Some(
                value
                    .parse()
                    .map_err(|e: Error| Error::malformed(line, e.to_string()))?,
            )
        }
        "p" => {
            if !value.is_empty() {
                b.add_paragraph(value);
            }
        }
        "ref" => {
            if value.is_empty() {
                b.warnings.push(format!("line {line}: empty <ref> skipped"));
            } else {
                let mut entry = parse_reference_entry(value);
                if let Some(id) = open.attr.filter(|s| !s.trim().is_empty()) {
                    entry.label = Some(id.trim().to_string());
                    entry.ref_id = id.trim().to_string();
                }
                b.push_reference(entry);
            }
        }
        name if INLINE.contains(&name) => {
            if let Some(parent) = stack.last_mut() {
                parent.text.push_str(&open.text);
            }
        }
        _ => {}
    }
    Ok(())
}

/// Render a document in the XML subset. Each sentence becomes its own
/// paragraph so re-parsing reproduces the same sentence list.
pub fn write_xml(doc: &Document) -> String {
    let m = &doc.metadata;
    let mut out = String::new();
    let _ = writeln!(out, "<document id=\"{}\">", escape(m.doc_id.as_str()));
    out.push_str("  <meta>\n");
    let _ = writeln!(out, "    <title>{}</title>", escape(m.title.as_str()));
    for a in &m.authors {
        let _ = writeln!(out, "    <author>{}</author>", escape(a.raw.as_str()));
    }
    let _ = writeln!(
        out,
        "    <venue type=\"{}\">{}</venue>",
        m.venue_type,
        escape(m.venue_name.as_str())
    );
    if let Some(y) = m.year {
        let _ = writeln!(out, "    <year>{y}</year>");
    }
    if let Some(d) = m.domain_override {
        let _ = writeln!(
            out,
            "    <domain>K{}</domain>",
            crate::codebook::CodeValue::ordinal(d)
        );
    }
    out.push_str("  </meta>\n  <body>\n");
    for s in &doc.sections {
        let _ = writeln!(
            out,
            "    <section header=\"{}\">",
            escape(s.raw_header.as_str())
        );
        for i in s.sentences.clone() {
            let _ = writeln!(out, "      <p>{}</p>", escape(doc.sentences[i].as_str()));
        }
        out.push_str("    </section>\n");
    }
    out.push_str("  </body>\n");
    if !doc.flags.missing_references || !doc.references.is_empty() {
        out.push_str("  <references>\n");
        for r in &doc.references {
            match &r.label {
                Some(l) if !r.raw.trim_start().starts_with('[') => {
                    let _ = writeln!(
                        out,
                        "    <ref id=\"{}\">{}</ref>",
                        escape(l.as_str()),
                        escape(r.raw.as_str())
                    );
                }
                _ => {
                    let _ = writeln!(out, "    <ref>{}</ref>", escape(r.raw.as_str()));
                }
            }
        }
        out.push_str("  </references>\n");
    }
    out.push_str("</document>\n");
    out
}
