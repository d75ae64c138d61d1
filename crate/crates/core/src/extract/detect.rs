//! In-text citation detection for author-year and bracketed-numeric styles.

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::link::{link_citation, link_first_author, Link};
use crate::ingest::ReferenceEntry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerStyle {
    Parenthetical,
    Narrative,
    Numeric,
}

/// The parsed content of one citation marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    pub style: MarkerStyle,
    /// Author names as written, one per listed author.
    pub names: Vec<String>,
    pub et_al: bool,
    pub year: Option<i32>,
    pub year_suffix: Option<char>,
    pub label: Option<u32>,
    /// Page locator such as `pp. 98–99`.
    pub locator: Option<String>,
    /// Set when the author name was recovered from earlier in the sentence
    /// rather than sitting next to the year.
    #[serde(default)]
    pub names_from_context: bool,
}

impl Marker {
    fn numeric(label: u32) -> Self {
        Marker {
            style: MarkerStyle::Numeric,
            names: Vec::new(),
            et_al: false,
            year: None,
            year_suffix: None,
            label: Some(label),
            locator: None,
            names_from_context: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InTextCitation {
    pub citation_id: u32,
    pub ref_id: Option<String>,
    pub link: Link,
    pub sentence_index: usize,
    /// Start and end offsets in Unicode scalar values within the sentence.
    pub char_span: (usize, usize),
    pub marker_style: MarkerStyle,
    pub inside_example_cue: bool,
    pub marker: Marker,
}

impl InTextCitation {
    pub fn is_resolved(&self) -> bool {
        matches!(self.link, Link::Resolved(_))
    }

    /// The marker text this citation was detected from.
    pub fn span_text(&self, sentence: &str) -> String {
        sentence
            .chars()
            .skip(self.char_span.0)
            .take(self.char_span.1 - self.char_span.0)
            .collect()
    }
}

const PARTICLE: &str = r"(?:van|von|de|der|den|del|della|di|da|du|la|le|ter|ten|dos|das)";
const WORD: &str = r"\p{Lu}[\p{L}\p{M}'’\-]*";

static NAMES: Lazy<String> = Lazy::new(|| {
    let name = format!(r"(?:{PARTICLE}\s+)*{WORD}(?:\s+(?:{PARTICLE}\s+)*{WORD})*");
    let sep = r"(?:\s*,\s*(?:and\s+|&\s*)?|\s+and\s+|\s*&\s*)";
    format!(r"{name}(?:{sep}{name})*(?:,?\s+et\s+al\.?)?")
});
const YEAR: &str = r"\d{4}[a-z]?";
const LOCATOR: &str = r"[pP]{1,2}\.\s*\S.*";

static PART: Lazy<Regex> = Lazy::new(|| {
    Regex::new(&format!(
        r"^(?P<prefix>.*?)(?P<names>{names})\s*,?\s*(?P<years>{YEAR}(?:\s*,\s*{YEAR})*)(?:\s*,\s*(?P<loc>{LOCATOR}))?\s*$",
        names = *NAMES
    ))
    .unwrap()
});
static BARE_YEAR: Lazy<Regex> = Lazy::new(|| {
    Regex::new(&format!(
        r"^\s*(?P<year>\d{{4}})(?P<suf>[a-z])?(?:\s*,\s*(?P<loc>{LOCATOR}))?\s*$"
    ))
    .unwrap()
});
static NAMES_AT_END: Lazy<Regex> =
    Lazy::new(|| Regex::new(&format!(r"(?P<names>{names})\s*$", names = *NAMES)).unwrap());
static NARRATIVE_TEXT: Lazy<Regex> = Lazy::new(|| {
    Regex::new(&format!(
        r"^\s*(?P<names>{names})\s*\((?P<inner>[^()]*)\)\s*$",
        names = *NAMES
    ))
    .unwrap()
});
static NUMERIC: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\[\s*\d+(?:\s*[-–,]\s*\d+)*\s*\]").unwrap());
static YEAR_ITEM: Lazy<Regex> = Lazy::new(|| Regex::new(r"(\d{4})([a-z])?").unwrap());
static NAME_SPLIT: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\s*,\s*(?:and\s+|&\s*)?|\s+and\s+|\s*&\s*").unwrap());
static ET_AL: Lazy<Regex> = Lazy::new(|| Regex::new(r",?\s+et\s+al\.?$").unwrap());
static EXAMPLE_CUE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)(?:\be\.\s?g\.|\bsee\b|\bcf\.|\bfor example\b|\bfor instance\b)").unwrap()
});
static LEADING_CUE: Lazy<Regex> = Lazy::new(|| Regex::new(r"^(?:See|Cf\.|E\.\s?g\.,?)\s").unwrap());
static EXAMPLE_CUE_AT_END: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)(?:\be\.\s?g\.,?|\bsee|\bcf\.|\bfor example,?|\bfor instance,?)\s*$").unwrap()
});
static CAPITAL_WORD: Lazy<Regex> = Lazy::new(|| Regex::new(WORD).unwrap());

/// Capitalized words that open sentences or clauses and are never names.
const STOP_WORDS: &[&str] = &[
    "a",
    "according",
    "also",
    "although",
    "an",
    "and",
    "as",
    "but",
    "by",
    "cf",
    "for",
    "following",
    "from",
    "however",
    "in",
    "like",
    "moreover",
    "our",
    "see",
    "since",
    "that",
    "the",
    "these",
    "this",
    "thus",
    "to",
    "unlike",
    "we",
    "when",
    "while",
    "with",
];

fn strip_stop_words(name: &str) -> String {
    let words: Vec<&str> = name.split_whitespace().collect();
    let start = words
        .iter()
        .position(|w| !STOP_WORDS.contains(&w.to_lowercase().as_str()))
        .unwrap_or(words.len());
    words[start..].join(" ")
}

/// Split a names string into individual names plus the et-al flag.
fn split_names(names: &str) -> (Vec<String>, bool) {
    let et_al = ET_AL.is_match(names);
    let base = ET_AL.replace(names, "");
    let list = NAME_SPLIT
        .split(base.trim())
        .map(strip_stop_words)
        .filter(|s| !s.is_empty())
        .collect();
    (list, et_al)
}

fn years(text: &str) -> Vec<(i32, Option<char>)> {
    YEAR_ITEM
        .captures_iter(text)
        .filter_map(|c| {
            let y: i32 = c[1].parse().ok()?;
            Some((y, c.get(2).and_then(|m| m.as_str().chars().next())))
        })
        .collect()
}

fn expand_numeric(group: &str) -> Vec<u32> {
    let inner = group.trim_matches(|c| c == '[' || c == ']');
    let mut out = Vec::new();
    for piece in inner.split(',') {
        let piece = piece.trim();
        if let Some((a, b)) = piece.split_once(['-', '–']) {
            if let (Ok(a), Ok(b)) = (a.trim().parse::<u32>(), b.trim().parse::<u32>()) {
                if a <= b && b - a < 100 {
                    out.extend(a..=b);
                    continue;
                }
            }
        }
        if let Ok(n) = piece.parse() {
            out.push(n);
        }
    }
    out
}

/// Top-level parenthesized groups as byte ranges including the parentheses.
fn paren_groups(s: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                if depth == 0 {
                    start = i;
                }
                depth += 1;
            }
            ')' if depth > 0 => {
                depth -= 1;
                if depth == 0 {
                    out.push((start, i + 1));
                }
            }
            _ => {}
        }
    }
    out
}

struct Found {
    span: (usize, usize),
    marker: Marker,
    example_cue: bool,
}

fn parenthetical_group(s: &str, open: usize, close: usize, found: &mut Vec<Found>) -> bool {
    let content_start = open + 1;
    let content = &s[content_start..close - 1];
    let mut any = false;
    let mut cue = false;
    let mut offset = content_start;
    for part in content.split(';') {
        let part_start = offset;
        offset += part.len() + 1;
        let Some(c) = PART.captures(part) else {
            continue;
        };
        let prefix = c.name("prefix").map(|m| m.as_str()).unwrap_or("");
        cue |= EXAMPLE_CUE.is_match(prefix);
        let names_m = c.name("names").unwrap();
        let (names, et_al) = split_names(names_m.as_str());
        let locator = c.name("loc").map(|m| m.as_str().trim().to_string());
        let span_end = part_start + part.trim_end().len();
        for (year, suffix) in years(&c["years"]) {
            found.push(Found {
                span: (part_start + names_m.start(), span_end),
                marker: Marker {
                    style: MarkerStyle::Parenthetical,
                    names: names.clone(),
                    et_al,
                    year: Some(year),
                    year_suffix: suffix,
                    label: None,
                    locator: locator.clone(),
                    names_from_context: false,
                },
                example_cue: cue,
            });
            any = true;
        }
    }
    any
}

fn narrative_group(
    s: &str,
    open: usize,
    close: usize,
    references: &[ReferenceEntry],
    found: &mut Vec<Found>,
) -> bool {
    let Some(c) = BARE_YEAR.captures(&s[open + 1..close - 1]) else {
        return false;
    };
    let year: i32 = c["year"].parse().unwrap_or(0);
    let suffix = c.name("suf").and_then(|m| m.as_str().chars().next());
    let locator = c.name("loc").map(|m| m.as_str().trim().to_string());

    // look only at a bounded window before the group
    let mut window_start = open.saturating_sub(160);
    while !s.is_char_boundary(window_start) {
        window_start -= 1;
    }
    let before = &s[window_start..open];
    let (names, et_al, start, lead_cue) = match NAMES_AT_END.captures(before) {
        Some(n) => {
            let m = n.name("names").unwrap();
            let (names, et_al) = split_names(m.as_str());
            // "See Smith (2011)": the capitalized cue is swallowed into the names
            let lead_cue = LEADING_CUE.is_match(m.as_str());
            (names, et_al, window_start + m.start(), lead_cue)
        }
        None => (Vec::new(), false, open, false),
    };
    let example_cue = lead_cue || EXAMPLE_CUE_AT_END.is_match(&s[..start]);
    let mut marker = Marker {
        style: MarkerStyle::Narrative,
        names,
        et_al,
        year: Some(year),
        year_suffix: suffix,
        label: None,
        locator,
        names_from_context: false,
    };
    if matches!(link_citation(&marker, references), Link::Unresolved) {
        // "... Kuhn ... wrote The Structure of Scientific Revolutions (1962)"
        let earlier = &s[..start];
        let words: Vec<&str> = CAPITAL_WORD
            .find_iter(earlier)
            .map(|m| m.as_str())
            .collect();
        for w in words.iter().rev() {
            if let Link::Resolved(_) = link_first_author(w, year, suffix, references) {
                marker.names = vec![w.to_string()];
                marker.et_al = false;
                marker.names_from_context = true;
                break;
            }
        }
    }
    found.push(Found {
        span: (start, close),
        marker,
        example_cue,
    });
    true
}

fn byte_to_char(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}

/// Detect every citation marker in one sentence and link it against the
/// reference list. Citation ids count from 0 in sentence order and
/// `sentence_index` is left at 0; [`super::extract_citations`] renumbers
/// both at document level.
pub fn detect_citations(sentence: &str, references: &[ReferenceEntry]) -> Vec<InTextCitation> {
    let mut found = Vec::new();
    for m in NUMERIC.find_iter(sentence) {
        for n in expand_numeric(m.as_str()) {
            found.push(Found {
                span: (m.start(), m.end()),
                marker: Marker::numeric(n),
                example_cue: EXAMPLE_CUE_AT_END.is_match(&sentence[..m.start()]),
            });
        }
    }
    for (open, close) in paren_groups(sentence) {
        if !narrative_group(sentence, open, close, references, &mut found) {
            parenthetical_group(sentence, open, close, &mut found);
        }
    }
    found.sort_by_key(|f| f.span.0);

    found
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let link = link_citation(&f.marker, references);
            InTextCitation {
                citation_id: i as u32,
                ref_id: link.ref_id().map(str::to_string),
                link,
                sentence_index: 0,
                char_span: (
                    byte_to_char(sentence, f.span.0),
                    byte_to_char(sentence, f.span.1),
                ),
                marker_style: f.marker.style,
                inside_example_cue: f.example_cue,
                marker: f.marker,
            }
        })
        .collect()
}

/// Parse the text of a single marker span back into markers. Accepts the
/// three span shapes produced by [`detect_citations`]: `[3, 7]`,
/// `Smith (2011)` and `Smith & Jones, 2011`.
pub fn parse_marker(text: &str) -> Vec<Marker> {
    let t = text.trim();
    if NUMERIC.is_match(t) && t.starts_with('[') {
        return expand_numeric(t).into_iter().map(Marker::numeric).collect();
    }
    if let Some(c) = NARRATIVE_TEXT.captures(t) {
        if let Some(y) = BARE_YEAR.captures(&c["inner"]) {
            let (names, et_al) = split_names(&c["names"]);
            return vec![Marker {
                style: MarkerStyle::Narrative,
                names,
                et_al,
                year: y["year"].parse().ok(),
                year_suffix: y.name("suf").and_then(|m| m.as_str().chars().next()),
                label: None,
                locator: y.name("loc").map(|m| m.as_str().trim().to_string()),
                names_from_context: false,
            }];
        }
    }
    if let Some(y) = BARE_YEAR.captures(t.trim_start_matches('(').trim_end_matches(')')) {
        return vec![Marker {
            style: MarkerStyle::Narrative,
            names: Vec::new(),
            et_al: false,
            year: y["year"].parse().ok(),
            year_suffix: y.name("suf").and_then(|m| m.as_str().chars().next()),
            label: None,
            locator: y.name("loc").map(|m| m.as_str().trim().to_string()),
            names_from_context: false,
        }];
    }
    let wrapped = format!("({t})");
    let mut found = Vec::new();
    parenthetical_group(&wrapped, 0, wrapped.len(), &mut found);
    found.into_iter().map(|f| f.marker).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_reference_entry;

    fn refs(lines: &[&str]) -> Vec<ReferenceEntry> {
        lines.iter().map(|l| parse_reference_entry(l)).collect()
    }

    #[test]
    fn hjorland_sentence_yields_narrative_then_parenthetical() {
        let r = refs(&[
            "Hjørland, B. (1991). Information seeking. Journal of Documentation, 47(1), 1-10.",
            "Hjørland, B., & Albrechtsen, H. (1995). Toward a new horizon in information science: Domain analysis. Journal of the American Society for Information Science, 46(6), 400-425.",
        ]);
        let s = "Hjørland's (1991) criticized this approach in information science and began developing an alternative 'domain analysis' (Hjørland & Albrechtsen, 1995)";
        let c = detect_citations(s, &r);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].marker_style, MarkerStyle::Narrative);
        assert_eq!(c[0].ref_id.as_deref(), Some("hjorland-1991"));
        assert_eq!(c[0].span_text(s), "Hjørland's (1991)");
        assert_eq!(c[1].marker_style, MarkerStyle::Parenthetical);
        assert_eq!(c[1].ref_id.as_deref(), Some("hjorland-albrechtsen-1995"));
        assert_eq!(c[1].span_text(s), "Hjørland & Albrechtsen, 1995");
    }

    #[test]
    fn single_parenthetical() {
        let c = detect_citations("(Smith, 2011)", &[]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].marker_style, MarkerStyle::Parenthetical);
        assert_eq!(c[0].marker.year, Some(2011));
        assert!(!c[0].is_resolved());
    }

    #[test]
    fn numeric_lists_expand() {
        let c = detect_citations("As shown in [3, 7] and [9-11].", &[]);
        let labels: Vec<_> = c.iter().map(|c| c.marker.label.unwrap()).collect();
        assert_eq!(labels, vec![3, 7, 9, 10, 11]);
        assert!(c.iter().all(|c| c.marker_style == MarkerStyle::Numeric));
    }

    #[test]
    fn multi_work_group_and_no_comma_years() {
        let s = "Substantial empirical work has shown that prediction markets produce remarkably accurate forecasts (Berg et al. 2001; Wolfers and Zitzewitz 2004; Goel et al. 2010).";
        let c = detect_citations(s, &[]);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].marker.names, vec!["Berg"]);
        assert!(c[0].marker.et_al);
        assert_eq!(c[1].marker.names, vec!["Wolfers", "Zitzewitz"]);
        assert_eq!(c[2].marker.year, Some(2010));
    }

    #[test]
    fn example_cues_and_locators() {
        let c = detect_citations("Paradigms coexist (see, e.g., Mayr, 1997, pp. 98–99).", &[]);
        assert_eq!(c.len(), 1);
        assert!(c[0].inside_example_cue);
        assert_eq!(c[0].marker.locator.as_deref(), Some("pp. 98–99"));
        let c = detect_citations("A direct quote (Smith, 2011, P. xx).", &[]);
        assert_eq!(c[0].marker.locator.as_deref(), Some("P. xx"));
        assert!(!c[0].inside_example_cue);
        let c = detect_citations("Some studies have proposed this (e.g., Smith, 2011).", &[]);
        assert!(c[0].inside_example_cue);
        let c = detect_citations("(adapted from Bennett, 1995)", &[]);
        assert_eq!(c[0].marker.names, vec!["Bennett"]);
    }

    #[test]
    fn non_citation_parentheses_are_ignored() {
        assert!(detect_citations("Kuhn (1922–1996) lived. The PBE (PBE) holds.", &[]).is_empty());
    }

    #[test]
    fn narrative_name_recovered_from_context() {
        let r = refs(&["Kuhn, T. S. (1962). The structure of scientific revolutions. Chicago: University of Chicago Press."]);
        let s = "Since philosopher of science Thomas Kuhn (1922–1996) wrote his famous book The Structure of Scientific Revolutions (1962), “paradigm” has been a popular term in many fields, although it has also been seriously criticized";
        let c = detect_citations(s, &r);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].ref_id.as_deref(), Some("kuhn-1962"));
        assert!(c[0].marker.names_from_context);
        assert_eq!(c[0].marker_style, MarkerStyle::Narrative);
    }

    #[test]
    fn spans_reparse_to_same_marker() {
        let s = "Smith et al. (2010a) and Jones (2011, p. 4) differ [2, 5] (Lee & Park, 2001; see Kim, 2003).";
        for c in detect_citations(s, &[]) {
            let reparsed = parse_marker(&c.span_text(s));
            assert!(
                reparsed.contains(&c.marker),
                "{:?} vs {:?}",
                c.marker,
                reparsed
            );
        }
    }
}
