//! Author-name normalization.
//!
//! Keys have the form `surname,i`: the folded lowercase surname, a comma,
//! and the first initial of the given names (empty when none is known).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuthorName {
    pub raw: String,
    pub key: String,
}

impl AuthorName {
    pub fn surname(&self) -> &str {
        self.key.split(',').next().unwrap_or("")
    }
}

impl fmt::Display for AuthorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Fixed transliteration table for Latin letters with diacritics.
fn fold_char(c: char) -> Option<&'static str> {
    let s = match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'ā' | 'ă' | 'ą' => "a",
        'À' | 'Á' | 'Â' | 'Ã' | 'Ä' | 'Å' | 'Ā' | 'Ă' | 'Ą' => "a",
        'æ' | 'Æ' => "ae",
        'ç' | 'ć' | 'ĉ' | 'ċ' | 'č' | 'Ç' | 'Ć' | 'Ĉ' | 'Ċ' | 'Č' => "c",
        'ď' | 'đ' | 'Ď' | 'Đ' | 'ð' | 'Ð' => "d",
        'è' | 'é' | 'ê' | 'ë' | 'ē' | 'ĕ' | 'ė' | 'ę' | 'ě' => "e",
        'È' | 'É' | 'Ê' | 'Ë' | 'Ē' | 'Ĕ' | 'Ė' | 'Ę' | 'Ě' => "e",
        'ĝ' | 'ğ' | 'ġ' | 'ģ' | 'Ĝ' | 'Ğ' | 'Ġ' | 'Ģ' => "g",
        'ĥ' | 'ħ' | 'Ĥ' | 'Ħ' => "h",
        'ì' | 'í' | 'î' | 'ï' | 'ĩ' | 'ī' | 'ĭ' | 'į' | 'ı' => "i",
        'Ì' | 'Í' | 'Î' | 'Ï' | 'Ĩ' | 'Ī' | 'Ĭ' | 'Į' | 'İ' => "i",
        'ĵ' | 'Ĵ' => "j",
        'ķ' | 'Ķ' => "k",
        'ĺ' | 'ļ' | 'ľ' | 'ŀ' | 'ł' | 'Ĺ' | 'Ļ' | 'Ľ' | 'Ŀ' | 'Ł' => "l",
        'ñ' | 'ń' | 'ņ' | 'ň' | 'Ñ' | 'Ń' | 'Ņ' | 'Ň' => "n",
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ø' | 'ō' | 'ŏ' | 'ő' => "o",
        'Ò' | 'Ó' | 'Ô' | 'Õ' | 'Ö' | 'Ø' | 'Ō' | 'Ŏ' | 'Ő' => "o",
        'œ' | 'Œ' => "oe",
        'ŕ' | 'ŗ' | 'ř' | 'Ŕ' | 'Ŗ' | 'Ř' => "r",
        'ś' | 'ŝ' | 'ş' | 'š' | 'Ś' | 'Ŝ' | 'Ş' | 'Š' => "s",
        'ß' => "ss",
        'ţ' | 'ť' | 'ŧ' | 'Ţ' | 'Ť' | 'Ŧ' => "t",
        'þ' | 'Þ' => "th",
        'ù' | 'ú' | 'û' | 'ü' | 'ũ' | 'ū' | 'ŭ' | 'ů' | 'ű' | 'ų' => "u",
        'Ù' | 'Ú' | 'Û' | 'Ü' | 'Ũ' | 'Ū' | 'Ŭ' | 'Ů' | 'Ű' | 'Ų' => "u",
        'ŵ' | 'Ŵ' => "w",
        'ý' | 'ÿ' | 'ŷ' | 'Ý' | 'Ÿ' | 'Ŷ' => "y",
        'ź' | 'ż' | 'ž' | 'Ź' | 'Ż' | 'Ž' => "z",
        _ => return None,
    };
    Some(s)
}

/// Lowercase and fold diacritics. Letters outside the table are kept
/// (lowercased) so that non-Latin names still produce a usable key.
pub fn fold(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match fold_char(c) {
            Some(s) => out.push_str(s),
            None => out.extend(c.to_lowercase()),
        }
    }
    out
}

const PARTICLES: &[&str] = &[
    "van", "von", "de", "der", "den", "del", "della", "di", "da", "du", "la", "le", "ter", "ten",
    "dos", "das",
];

const NAME_SUFFIXES: &[&str] = &["jr", "jr.", "sr", "sr.", "ii", "iii", "iv"];

/// Keep letters, digits, hyphens and single spaces.
fn clean_surname(folded: &str) -> String {
    let mut out = String::new();
    let mut space = false;
    for c in folded.chars() {
        if c.is_alphanumeric() || c == '-' {
            if space && !out.is_empty() {
                out.push(' ');
            }
            space = false;
            out.push(c);
        } else if c.is_whitespace() {
            space = true;
        }
    }
    out.trim_matches('-').to_string()
}

fn first_initial(given: &str) -> String {
    fold(given)
        .split_whitespace()
        .filter(|t| !NAME_SUFFIXES.contains(t))
        .flat_map(|t| t.chars())
        .find(|c| c.is_alphabetic())
        .map(|c| c.to_string())
        .unwrap_or_default()
}

fn looks_like_initials(token: &str) -> bool {
    let letters: Vec<char> = token.chars().filter(|c| c.is_alphabetic()).collect();
    !letters.is_empty() && letters.len() <= 3 && letters.iter().all(|c| c.is_uppercase())
}

/// Split an uninverted name ("Given Surname", "Given van Surname",
/// "Surname AB") into surname and given parts.
fn split_uninverted(tokens: &[&str]) -> (String, String) {
    match tokens.len() {
        0 => (String::new(), String::new()),
        1 => (tokens[0].to_string(), String::new()),
        n => {
            if looks_like_initials(tokens[n - 1]) && !looks_like_initials(tokens[0]) {
                return (tokens[..n - 1].join(" "), tokens[n - 1].to_string());
            }
            let start = (1..n)
                .find(|&i| i < n - 1 && PARTICLES.contains(&tokens[i]))
                .unwrap_or(n - 1);
            (tokens[start..].join(" "), tokens[..start].join(" "))
        }
    }
}

/// Surname component used for matching in-text markers against reference
/// authors. Applies the same rules as [`normalize_author_name`] to a bare
/// name with no given-name part.
pub fn surname_key(name: &str) -> String {
    let trimmed = name
        .trim()
        .trim_end_matches("'s")
        .trim_end_matches("’s")
        .trim_end_matches('\'');
    let folded = fold(trimmed);
    let tokens: Vec<&str> = folded.split_whitespace().collect();
    let start = (0..tokens.len())
        .find(|&i| i + 1 < tokens.len() && PARTICLES.contains(&tokens[i]))
        .unwrap_or(tokens.len().saturating_sub(1));
    clean_surname(&tokens[start.min(tokens.len())..].join(" "))
}

/// Normalize a raw author name into its matching key.
pub fn normalize_author_name(raw: &str) -> Result<AuthorName> {
    let trimmed = raw.trim();
    if !trimmed.chars().any(char::is_alphabetic) {
        return Err(Error::UnparseableName(raw.to_string()));
    }
    let (surname_raw, given_raw) = match trimmed.split_once(',') {
        Some((s, g)) => (s.to_string(), g.to_string()),
        None => {
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let folded_tokens: Vec<String> = tokens.iter().map(|t| fold(t)).collect();
            // particles are matched on folded tokens but the split is applied
            // to the original so initials detection still sees case
            let lowered: Vec<&str> = folded_tokens.iter().map(String::as_str).collect();
            let particle_at = (1..tokens.len())
                .find(|&i| i + 1 < tokens.len() && PARTICLES.contains(&lowered[i]));
            match particle_at {
                Some(i) => (tokens[i..].join(" "), tokens[..i].join(" ")),
                None => split_uninverted(&tokens),
            }
        }
    };
    let surname = clean_surname(&fold(&surname_raw));
    if !surname.chars().any(char::is_alphabetic) {
        return Err(Error::UnparseableName(raw.to_string()));
    }
    let initial = first_initial(&given_raw);
    Ok(AuthorName {
        raw: trimmed.to_string(),
        key: format!("{surname},{initial}"),
    })
}
