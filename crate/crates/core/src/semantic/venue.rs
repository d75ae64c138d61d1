//! Venue name to research-domain mapping.

use std::path::Path;

use crate::codebook::Domain;
use crate::error::{Error, Result};
use crate::ingest::fold;

pub const DEFAULT_VENUES: &str = include_str!("../../data/venues.csv");

/// Ordered `(pattern, domain)` rules; the first pattern contained in the
/// venue name (case-insensitively) decides.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VenueMapping {
    rules: Vec<(String, Domain)>,
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedMapping {
        line,
        message: message.into(),
    }
}

impl VenueMapping {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        let mut header_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let mut rdr = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(l.as_bytes());
            let record = rdr
                .records()
                .next()
                .transpose()
                .map_err(|e| bad(line, e.to_string()))?
                .ok_or_else(|| bad(line, "empty record"))?;
            if record.len() != 2 {
                return Err(bad(
                    line,
                    format!("expected 2 fields, found {}", record.len()),
                ));
            }
            if !header_seen {
                header_seen = true;
                if record[0].trim().eq_ignore_ascii_case("venue_pattern") {
                    continue;
                }
                return Err(bad(line, "missing 'venue_pattern,K_value' header"));
            }
            let pattern = fold(record[0].trim());
            if pattern.is_empty() {
                return Err(bad(line, "empty pattern"));
            }
            let domain: Domain = record[1]
                .parse()
                .map_err(|e: Error| bad(line, e.to_string()))?;
            rules.push((pattern, domain));
        }
        Ok(VenueMapping { rules })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn defaults() -> Self {
        Self::parse(DEFAULT_VENUES).expect("built-in venue mapping")
    }

    pub fn lookup(&self, venue: &str) -> Option<Domain> {
        let v = fold(venue);
        if v.trim().is_empty() {
            return None;
        }
        self.rules
            .iter()
            .find(|(p, _)| v.contains(p.as_str()))
            .map(|&(_, d)| d)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_lookups() {
        let m = VenueMapping::defaults();
        assert_eq!(
            m.lookup("Journal of the American Society for Information Science and Technology"),
            Some(Domain::Social)
        );
        assert_eq!(m.lookup("Cell"), Some(Domain::Natural));
        assert_eq!(
            m.lookup("Corporate Communications: An International Journal"),
            Some(Domain::Social)
        );
        assert_eq!(m.lookup("Obscure Quarterly"), None);
        assert_eq!(m.lookup(""), None);
    }

    #[test]
    fn first_match_wins() {
        let m = VenueMapping::parse("venue_pattern,K_value\nhistory,K2\nscience,K3\n").unwrap();
        assert_eq!(m.lookup("History of Science"), Some(Domain::Humanities));
    }

    #[test]
    fn malformed_mapping() {
        assert!(matches!(
            VenueMapping::parse("venue_pattern,K_value\nCell,K9\n"),
            Err(Error::MalformedMapping { line: 2, .. })
        ));
        assert!(VenueMapping::parse("Cell,K3\n").is_err());
    }
}
