//! Sentence segmentation with abbreviation and parenthesis protection.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");

/// Splits paragraph text into sentences.
///
/// A boundary is placed after `.`, `!` or `?` (plus any closing quotes or
/// brackets) when whitespace follows, the next word does not start in
/// lowercase, no parenthesis or bracket is open, and the period does not
/// end a protected abbreviation or a single-letter initial.
#[derive(Debug, Clone)]
pub struct Segmenter {
    abbreviations: HashSet<String>,
}

impl Default for Segmenter {
    fn default() -> Self {
        Segmenter::from_list(DEFAULT_ABBREVIATIONS)
    }
}

impl Segmenter {
    /// Build from abbreviation-list text: one token per line, `#` comments.
    pub fn from_list(text: &str) -> Self {
        let mut abbreviations = HashSet::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            // only the last word carries the protected period ("et al." -> "al.")
            if let Some(last) = line.split_whitespace().last() {
                abbreviations.insert(last.to_lowercase());
            }
        }
        Segmenter { abbreviations }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Segmenter::from_list(&text))
    }

    /// Default list extended with additional tokens.
    pub fn with_extra(mut self, tokens: impl IntoIterator<Item = String>) -> Self {
        for t in tokens {
            self.abbreviations.insert(t.trim().to_lowercase());
        }
        self
    }

    pub fn is_abbreviation(&self, token: &str) -> bool {
        self.abbreviations.contains(&token.to_lowercase())
    }

    fn protected_period(&self, chars: &[char], dot: usize) -> bool {
        let start = chars[..dot]
            .iter()
            .rposition(|c| c.is_whitespace() || matches!(c, '(' | '[' | '"' | '“'))
            .map(|p| p + 1)
            .unwrap_or(0);
        let word: String = chars[start..=dot].iter().collect();
        if self.is_abbreviation(&word) {
            return true;
        }
        let parts: Vec<&str> = word.trim_end_matches('.').split('.').collect();
        let single_capitals = parts.iter().all(|p| {
            let mut it = p.chars();
            matches!((it.next(), it.next()), (Some(c), None) if c.is_uppercase())
        });
        if !single_capitals {
            return false;
        }
        if parts.len() > 1 {
            // "U.S.", "A.D."
            return true;
        }
        // a lone capital is an initial unless a lowercase word precedes it ("show X.")
        let Some(prev_end) = chars[..start].iter().rposition(|c| !c.is_whitespace()) else {
            return true;
        };
        let prev_start = chars[..prev_end]
            .iter()
            .rposition(|c| c.is_whitespace())
            .map_or(0, |p| p + 1);
        matches!(chars[prev_end], '.' | '!' | '?' | ':' | ';') || !chars[prev_start].is_lowercase()
    }

    pub fn segment(&self, text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut sentences = Vec::new();
        let mut start = 0;
        let mut depth: i32 = 0;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth = (depth - 1).max(0),
                '.' | '!' | '?' | '…' => {
                    let mut end = i + 1;
                    // ellipses never terminate
                    let ellipsis = c == '…'
                        || (c == '.'
                            && (chars.get(i + 1) == Some(&'.') || (i > 0 && chars[i - 1] == '.')));
                    while end < chars.len() && matches!(chars[end], '.' | '!' | '?') {
                        end += 1;
                    }
                    let terminal_end = end;
                    while end < chars.len()
                        && matches!(chars[end], '"' | '”' | '’' | '\'' | ')' | ']')
                    {
                        if matches!(chars[end], ')' | ']') {
                            depth = (depth - 1).max(0);
                        }
                        end += 1;
                    }
                    let followed_by_space = end < chars.len() && chars[end].is_whitespace();
                    let next_word = chars[end..].iter().find(|c| !c.is_whitespace());
                    let next_ok = matches!(next_word, Some(n) if !n.is_lowercase());
                    let is_boundary = !ellipsis
                        && depth == 0
                        && followed_by_space
                        && next_ok
                        && !(c == '.' && terminal_end == i + 1 && self.protected_period(&chars, i));
                    if is_boundary {
                        push_sentence(&mut sentences, &chars[start..end]);
                        start = end;
                    }
                    i = end;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        push_sentence(&mut sentences, &chars[start..]);
        sentences
    }
}

fn push_sentence(out: &mut Vec<String>, chars: &[char]) {
    let s = collapse_whitespace(&chars.iter().collect::<String>());
    if !s.is_empty() {
        out.push(s);
    }
}

/// Trim and collapse runs of whitespace into single spaces.
pub fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}
