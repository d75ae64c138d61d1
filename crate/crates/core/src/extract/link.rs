//! Linking citation markers to bibliography entries.

use serde::{Deserialize, Serialize};

use super::detect::{Marker, MarkerStyle};
use crate::ingest::{surname_key, ReferenceEntry};

/// Outcome of linking one marker. Unresolved and ambiguous links are
/// recorded per citation and never abort processing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "ref_ids", rename_all = "snake_case")]
pub enum Link {
    Resolved(String),
    Unresolved,
    Ambiguous(Vec<String>),
}

impl Link {
    pub fn ref_id(&self) -> Option<&str> {
        match self {
            Link::Resolved(id) => Some(id),
            _ => None,
        }
    }
}

fn from_candidates(candidates: Vec<&ReferenceEntry>) -> Link {
    match candidates.as_slice() {
        [] => Link::Unresolved,
        [one] => Link::Resolved(one.ref_id.clone()),
        many => Link::Ambiguous(many.iter().map(|r| r.ref_id.clone()).collect()),
    }
}

fn year_matches(r: &ReferenceEntry, year: i32, suffix: Option<char>) -> bool {
    r.year == Some(year) && (suffix.is_none() || r.year_suffix == suffix)
}

/// Match on first-author surname, year and suffix only.
pub fn link_first_author(
    name: &str,
    year: i32,
    suffix: Option<char>,
    references: &[ReferenceEntry],
) -> Link {
    let key = surname_key(name);
    if key.is_empty() {
        return Link::Unresolved;
    }
    from_candidates(
        references
            .iter()
            .filter(|r| year_matches(r, year, suffix) && r.first_surname() == Some(key.as_str()))
            .collect(),
    )
}

/// Link a marker: numeric markers by label, author-year markers by
/// normalized surname(s), year and suffix. Exactly one match resolves.
pub fn link_citation(marker: &Marker, references: &[ReferenceEntry]) -> Link {
    if marker.style == MarkerStyle::Numeric {
        let label = marker.label.map(|l| l.to_string());
        return from_candidates(
            references
                .iter()
                .filter(|r| r.label.is_some() && r.label == label)
                .collect(),
        );
    }
    let Some(year) = marker.year else {
        return Link::Unresolved;
    };
    let keys: Vec<String> = marker.names.iter().map(|n| surname_key(n)).collect();
    let Some(first) = keys.first().filter(|k| !k.is_empty()) else {
        return Link::Unresolved;
    };
    let mut candidates: Vec<&ReferenceEntry> = references
        .iter()
        .filter(|r| year_matches(r, year, marker.year_suffix))
        .filter(|r| r.first_surname() == Some(first.as_str()))
        .filter(|r| {
            keys.iter()
                .enumerate()
                .skip(1)
                .all(|(i, k)| r.authors.get(i).map(|a| a.surname()) == Some(k.as_str()))
        })
        .collect();
    if candidates.len() > 1 {
        let n = keys.len();
        let consistent: Vec<&ReferenceEntry> = candidates
            .iter()
            .copied()
            .filter(|r| {
                if marker.et_al {
                    r.authors.len() >= 3
                } else {
                    r.authors.len() == n
                }
            })
            .collect();
        if !consistent.is_empty() {
            candidates = consistent;
        }
    }
    from_candidates(candidates)
}
