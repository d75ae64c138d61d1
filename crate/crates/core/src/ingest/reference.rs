//! Bibliography entry parsing.

use std::collections::BTreeSet;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::names::{normalize_author_name, AuthorName};

/// Surface tokens in a reference string that hint at the kind of venue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VenueSignal {
    Proceedings,
    VolumeIssue,
    Publisher,
    Report,
    Url,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub ref_id: String,
    pub raw: String,
    /// Numeric label when the entry was written as `[n] ...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub authors: Vec<AuthorName>,
    pub year: Option<i32>,
    pub year_suffix: Option<char>,
    pub venue_signals: BTreeSet<VenueSignal>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ReferenceEntry {
    pub fn first_surname(&self) -> Option<&str> {
        self.authors.first().map(AuthorName::surname)
    }
}

static LABEL: Lazy<Regex> = Lazy::new(|| Regex::new(r"^\[(\d+)\]\s*").unwrap());
static BULLET: Lazy<Regex> = Lazy::new(|| Regex::new(r"^[-*•]\s+").unwrap());
static PAREN_YEAR: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\((\d{4})([a-z])?(?:[,;][^)]*)?\)").unwrap());
static BARE_YEAR: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"(?:^|[\s,])(\d{4})([a-z])?(?:[.,;:]|\s|$)").unwrap());
static INITIALS: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"^\p{Lu}\.?(?:[-\s]?\p{Lu}\.?)*$").unwrap());
static AND_SEP: Lazy<Regex> = Lazy::new(|| Regex::new(r"\s*(?:,\s*)?(?:&|\band\b)\s*").unwrap());
static ET_AL: Lazy<Regex> = Lazy::new(|| Regex::new(r",?\s*et al\.?").unwrap());

static PROCEEDINGS: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(?:proceedings|conference|symposium|workshop|congress)\b").unwrap()
});
static VOLUME_ISSUE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r"(?i)\b\d+\s*\(\d+(?:\s*[-–]\s*\d+)?\)|,\s*\d+\s*,\s*\d+\s*[-–]\s*\d+|\bvol\.\s*\d+",
    )
    .unwrap()
});
static PUBLISHER: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r"(?i)\((?:\d+(?:st|nd|rd|th)\s+)?(?:eds?|edn)\.?\)|\b\d+(?:st|nd|rd|th)\s+ed\.|\bpress\b|\bpublish(?:er|ers|ing)\b",
    )
    .unwrap()
});
// "City: Publisher." closing the entry
static CITY_PUBLISHER: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\p{Lu}[\w .,]*:\s*\p{Lu}[^.:()]*\.?\s*$").unwrap());
static REPORT: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(?:report|news|newspaper|working paper|white paper|press release)\b")
        .unwrap()
});
static URL: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)https?://|\bwww\.|\bretrieved\b").unwrap());

/// Detect venue signals in the part of a reference that follows the authors.
pub fn venue_signals(text: &str) -> BTreeSet<VenueSignal> {
    let mut set = BTreeSet::new();
    if PROCEEDINGS.is_match(text) {
        set.insert(VenueSignal::Proceedings);
    }
    if VOLUME_ISSUE.is_match(text) {
        set.insert(VenueSignal::VolumeIssue);
    }
    if PUBLISHER.is_match(text) || CITY_PUBLISHER.is_match(text) {
        set.insert(VenueSignal::Publisher);
    }
    if REPORT.is_match(text) {
        set.insert(VenueSignal::Report);
    }
    if URL.is_match(text) {
        set.insert(VenueSignal::Url);
    }
    set
}

fn valid_year(y: i32) -> bool {
    (1400..=2100).contains(&y)
}

/// Split an author segment such as `"Othman, A., & Sandholm, T."` into
/// individual raw names.
pub fn split_author_segment(segment: &str) -> Vec<String> {
    let segment = ET_AL.replace_all(segment, "");
    let segment = AND_SEP.replace_all(&segment, ", ");
    let mut names: Vec<String> = Vec::new();
    for token in segment.split(',') {
        let token = token.trim().trim_end_matches(':').trim();
        if token.is_empty() {
            continue;
        }
        if INITIALS.is_match(token) {
            if let Some(last) = names.last_mut() {
                if !last.contains(',') {
                    last.push_str(", ");
                    last.push_str(token);
                    continue;
                }
            }
        }
        names.push(token.trim_end_matches('.').to_string());
    }
    names
}

fn derived_id(authors: &[AuthorName], year: Option<i32>, suffix: Option<char>) -> String {
    let surname = |a: &AuthorName| a.surname().replace(' ', "-");
    let mut id = match authors {
        [] => "anon".to_string(),
        [a] => surname(a),
        [a, b] => format!("{}-{}", surname(a), surname(b)),
        [a, ..] => format!("{}-etal", surname(a)),
    };
    match year {
        Some(y) => id.push_str(&format!("-{y}")),
        None => id.push_str("-nd"),
    }
    if let Some(s) = suffix {
        id.push(s);
    }
    id
}

/// Parse one bibliography line. Never fails: missing fields are left empty
/// and noted in `warnings`.
pub fn parse_reference_entry(text: &str) -> ReferenceEntry {
    let raw = text.trim().to_string();
    let mut rest = BULLET.replace(&raw, "").to_string();
    let mut warnings = Vec::new();

    let label = LABEL.captures(&rest).map(|c| c[1].to_string());
    if label.is_some() {
        rest = LABEL.replace(&rest, "").to_string();
    }

    let mut year = None;
    let mut year_suffix = None;
    let (author_end, tail_start) = if let Some(c) = PAREN_YEAR
        .captures_iter(&rest)
        .find(|c| c[1].parse().map(valid_year).unwrap_or(false))
    {
        let m = c.get(0).unwrap();
        year = c[1].parse().ok();
        year_suffix = c.get(2).and_then(|s| s.as_str().chars().next());
        (m.start(), m.end())
    } else if let Some(c) = BARE_YEAR
        .captures_iter(&rest)
        .find(|c| c[1].parse().map(valid_year).unwrap_or(false))
    {
        let m = c.get(1).unwrap();
        year = c[1].parse().ok();
        year_suffix = c.get(2).and_then(|s| s.as_str().chars().next());
        (m.start(), c.get(0).unwrap().end())
    } else {
        warnings.push("no publication year found".to_string());
        let end = rest
            .find('(')
            .or_else(|| title_start(&rest))
            .unwrap_or(rest.len());
        (end, end)
    };

    let segment = rest[..author_end].trim().trim_end_matches([',', '.', ' ']);
    let mut authors = Vec::new();
    for name in split_author_segment(segment) {
        match normalize_author_name(&name) {
            Ok(a) => authors.push(a),
            Err(e) => warnings.push(e.to_string()),
        }
    }
    if authors.is_empty() {
        warnings.push("no authors found".to_string());
    }

    let venue_signals = venue_signals(&rest[tail_start.min(rest.len())..]);
    let ref_id = label
        .clone()
        .unwrap_or_else(|| derived_id(&authors, year, year_suffix));

    ReferenceEntry {
        ref_id,
        raw,
        label,
        authors,
        year,
        year_suffix,
        venue_signals,
        warnings,
    }
}

/// Index of the first ". " that ends a word of three or more letters,
/// i.e. the end of an author list that has no year after it.
fn title_start(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    text.match_indices(". ").map(|(i, _)| i).find(|&i| {
        let word_len = text[..i]
            .chars()
            .rev()
            .take_while(|c| c.is_alphabetic())
            .count();
        word_len >= 3 && bytes.get(i + 2).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(e: &ReferenceEntry) -> Vec<&str> {
        e.authors.iter().map(|a| a.key.as_str()).collect()
    }

    #[test]
    fn lipetz_journal_entry() {
        let e = parse_reference_entry(
            "Lipetz, B. A. (1965). Improvement of the selectivity of citation indexes to science literature through inclusion of citation relationship indicators. American Documentation, 16(2), 81-90.",
        );
        assert_eq!(keys(&e), vec!["lipetz,b"]);
        assert_eq!(e.year, Some(1965));
        assert!(e.venue_signals.contains(&VenueSignal::VolumeIssue));
        assert_eq!(e.ref_id, "lipetz-1965");
        assert!(e.warnings.is_empty());
    }

    #[test]
    fn numeric_label_is_captured() {
        let e = parse_reference_entry("[12] Doe, A. (2020). A title. Some Journal, 3(1), 1-2.");
        assert_eq!(e.ref_id, "12");
        assert_eq!(e.label.as_deref(), Some("12"));
        assert_eq!(keys(&e), vec!["doe,a"]);
    }

    #[test]
    fn krippendorff_book_entry() {
        let e = parse_reference_entry(
            "Krippendorff, K. (2004). Content analysis: An introduction to its methodology (2nd ed.). CA: Sage.",
        );
        assert!(e.venue_signals.contains(&VenueSignal::Publisher));
        assert!(!e.venue_signals.contains(&VenueSignal::VolumeIssue));
    }

    #[test]
    fn multi_author_and_suffix() {
        let e = parse_reference_entry(
            "Tang, J., Wu, S., Sun, J. M., & Su, H. (2012b). Cross-domain collaboration recommendation. In Proceedings of KDD, Beijing, China",
        );
        assert_eq!(keys(&e), vec!["tang,j", "wu,s", "sun,j", "su,h"]);
        assert_eq!(e.year_suffix, Some('b'));
        assert_eq!(e.ref_id, "tang-etal-2012b");
        assert!(e.venue_signals.contains(&VenueSignal::Proceedings));
    }

    #[test]
    fn two_authors_with_ampersand() {
        let e = parse_reference_entry(
            "Othman, A., & Sandholm, T. (2010). Decision rules and decision markets. In Proceedings of the 9th International Conference on Autonomous Agents and Multiagent Systems (pp. 625-632), May 10–14, Toronto, Canada.",
        );
        assert_eq!(keys(&e), vec!["othman,a", "sandholm,t"]);
        assert_eq!(e.ref_id, "othman-sandholm-2010");
    }

    #[test]
    fn url_entry_and_missing_year() {
        let e = parse_reference_entry(
            "Priem, J., Taraborelli, D., Groth, P., & Neylon, C. (2010), Altmetrics: A manifesto (v.1.0), Retrieved on August 1, 2012 at http://altmetrics.org/manifesto",
        );
        assert!(e.venue_signals.contains(&VenueSignal::Url));
        assert!(!e.venue_signals.contains(&VenueSignal::Publisher));
        let e = parse_reference_entry("Milojević, S. (under review). How are academic age and collaboration related? PLoS One.");
        assert_eq!(e.year, None);
        assert_eq!(keys(&e), vec!["milojevic,s"]);
        assert!(!e.warnings.is_empty());
        assert_eq!(e.ref_id, "milojevic-nd");
    }

    #[test]
    fn corporate_author() {
        let e = parse_reference_entry(
            "Pew Research Center Survey. (1998). Internet use in the USA. Report.",
        );
        assert_eq!(e.authors.len(), 1);
        assert_eq!(e.year, Some(1998));
        assert!(e.venue_signals.contains(&VenueSignal::Report));
    }

    #[test]
    fn uninverted_editor_names_split() {
        assert_eq!(
            split_author_segment("Hjørland, B., & Albrechtsen, H."),
            vec!["Hjørland, B.", "Albrechtsen, H."]
        );
        assert_eq!(split_author_segment("Smith, J. et al."), vec!["Smith, J."]);
    }
}
