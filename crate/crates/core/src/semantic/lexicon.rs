//! Cue lexicons: `phrase,tag` CSV files matched as whole tokens.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::fold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CueTag {
    Negative,
    Positive,
    Evidence,
    Framework,
    Background,
    Experimental,
    Empirical,
    Theoretical,
}

impl CueTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CueTag::Negative => "negative",
            CueTag::Positive => "positive",
            CueTag::Evidence => "evidence",
            CueTag::Framework => "framework",
            CueTag::Background => "background",
            CueTag::Experimental => "experimental",
            CueTag::Empirical => "empirical",
            CueTag::Theoretical => "theoretical",
        }
    }

    /// Tags that bear on disposition (Category J).
    pub fn is_disposition(self) -> bool {
        matches!(self, CueTag::Negative | CueTag::Positive)
    }
}

impl fmt::Display for CueTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CueTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = match s.trim().to_ascii_lowercase().as_str() {
            "negative" => CueTag::Negative,
            "positive" => CueTag::Positive,
            "evidence" => CueTag::Evidence,
            "framework" => CueTag::Framework,
            "background" => CueTag::Background,
            "experimental" => CueTag::Experimental,
            "empirical" => CueTag::Empirical,
            "theoretical" => CueTag::Theoretical,
            other => return Err(Error::InvalidValue(format!("unknown cue tag '{other}'"))),
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchedCue {
    pub phrase: String,
    pub tag: CueTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CueEntry {
    pub phrase: String,
    pub tag: CueTag,
    tokens: Vec<String>,
    /// Last token matches as a prefix (`manipulat*`).
    wildcard: bool,
}

impl CueEntry {
    pub fn new(phrase: &str, tag: CueTag) -> Option<Self> {
        let phrase = phrase.trim().to_lowercase();
        let (body, wildcard) = match phrase.strip_suffix('*') {
            Some(b) => (b.to_string(), true),
            None => (phrase.clone(), false),
        };
        let tokens = tokenize(&body);
        if tokens.is_empty() {
            return None;
        }
        Some(CueEntry {
            phrase,
            tag,
            tokens,
            wildcard,
        })
    }

    fn matches_at(&self, text: &[String], i: usize) -> bool {
        let n = self.tokens.len();
        if i + n > text.len() {
            return false;
        }
        self.tokens.iter().enumerate().all(|(k, t)| {
            if self.wildcard && k == n - 1 {
                text[i + k].starts_with(t.as_str())
            } else {
                text[i + k] == *t
            }
        })
    }

    pub fn occurs_in(&self, text: &[String]) -> bool {
        (0..text.len()).any(|i| self.matches_at(text, i))
    }
}

/// Lowercased, diacritic-folded alphanumeric tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    fold(text)
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CueLexicon {
    pub name: String,
    pub entries: Vec<CueEntry>,
}

impl CueLexicon {
    pub fn empty(name: &str) -> Self {
        CueLexicon {
            name: name.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries present in the token stream, in lexicon order.
    pub fn find(&self, tokens: &[String]) -> Vec<MatchedCue> {
        self.entries
            .iter()
            .filter(|e| e.occurs_in(tokens))
            .map(|e| MatchedCue {
                phrase: e.phrase.clone(),
                tag: e.tag,
            })
            .collect()
    }
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedLexicon {
        line,
        message: message.into(),
    }
}

/// Parse lexicon text. An empty lexicon is accepted with a warning.
pub fn parse_lexicon(name: &str, text: &str) -> Result<(CueLexicon, Vec<String>)> {
    let mut lex = CueLexicon::empty(name);
    let mut seen = HashSet::new();
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
            if record[0].trim().eq_ignore_ascii_case("phrase")
                && record[1].trim().eq_ignore_ascii_case("tag")
            {
                continue;
            }
            return Err(bad(line, "missing 'phrase,tag' header"));
        }
        let tag: CueTag = record[1]
            .parse()
            .map_err(|e: Error| bad(line, e.to_string()))?;
        let entry = CueEntry::new(&record[0], tag).ok_or_else(|| bad(line, "empty phrase"))?;
        if !seen.insert(entry.phrase.clone()) {
            return Err(bad(line, format!("duplicate phrase '{}'", entry.phrase)));
        }
        lex.entries.push(entry);
    }
    let mut warnings = Vec::new();
    if lex.is_empty() {
        warnings.push(format!("lexicon '{name}' is empty"));
    }
    Ok((lex, warnings))
}

pub fn load_lexicon(path: &Path) -> Result<(CueLexicon, Vec<String>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_lexicon(&name, &text)
}

pub const DEFAULT_NEGATIVE: &str = include_str!("../../data/negative.csv");
pub const DEFAULT_POSITIVE: &str = include_str!("../../data/positive.csv");
pub const DEFAULT_EVIDENCE: &str = include_str!("../../data/evidence.csv");
pub const DEFAULT_FRAMEWORK: &str = include_str!("../../data/framework.csv");
pub const DEFAULT_FOCUS: &str = include_str!("../../data/focus.csv");

/// The five lexicons a run uses. Each lexicon's tags decide what its
/// matches mean; the grouping only decides which coder reads it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LexiconSet {
    pub negative: CueLexicon,
    pub positive: CueLexicon,
    pub evidence: CueLexicon,
    pub framework: CueLexicon,
    pub focus: CueLexicon,
}

impl LexiconSet {
    pub fn defaults() -> Self {
        let load = |name: &str, text: &str| parse_lexicon(name, text).expect("built-in lexicon").0;
        LexiconSet {
            negative: load("negative", DEFAULT_NEGATIVE),
            positive: load("positive", DEFAULT_POSITIVE),
            evidence: load("evidence", DEFAULT_EVIDENCE),
            framework: load("framework", DEFAULT_FRAMEWORK),
            focus: load("focus", DEFAULT_FOCUS),
        }
    }

    pub fn empty() -> Self {
        LexiconSet {
            negative: CueLexicon::empty("negative"),
            positive: CueLexicon::empty("positive"),
            evidence: CueLexicon::empty("evidence"),
            framework: CueLexicon::empty("framework"),
            focus: CueLexicon::empty("focus"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_negative_has_listed_cues() {
        let lex = LexiconSet::defaults().negative;
        for cue in [
            "however",
            "but",
            "problem",
            "suffer",
            "nevertheless",
            "limit",
            "weak",
            "undermine",
            "ignore",
        ] {
            assert!(lex.entries.iter().any(|e| e.phrase == cue), "missing {cue}");
        }
    }

    #[test]
    fn whole_token_matching() {
        let lex = parse_lexicon(
            "n",
            "phrase,tag\nbut,negative\nfound that,evidence\nmanipulat*,experimental\n",
        )
        .unwrap()
        .0;
        assert!(lex.find(&tokenize("Butter and bread.")).is_empty());
        assert_eq!(lex.find(&tokenize("Fine, BUT no."))[0].phrase, "but");
        assert_eq!(
            lex.find(&tokenize("They found  that it works"))[0].tag,
            CueTag::Evidence
        );
        assert!(lex
            .find(&tokenize("found, and that"))
            .iter()
            .all(|m| m.tag != CueTag::Evidence));
        assert_eq!(
            lex.find(&tokenize("We manipulated genes"))[0].phrase,
            "manipulat*"
        );
    }

    #[test]
    fn empty_and_comment_only_files_warn() {
        let (lex, warn) = parse_lexicon("e", "").unwrap();
        assert!(lex.is_empty());
        assert_eq!(warn.len(), 1);
        let (lex, warn) = parse_lexicon("e", "# nothing\nphrase,tag\n").unwrap();
        assert!(lex.is_empty() && warn.len() == 1);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let dup = parse_lexicon("d", "phrase,tag\nweak,negative\n# c\nWeak,negative\n");
        assert!(matches!(dup, Err(Error::MalformedLexicon { line: 4, .. })));
        assert!(matches!(
            parse_lexicon("d", "phrase,tag\nweak\n"),
            Err(Error::MalformedLexicon { line: 2, .. })
        ));
        assert!(parse_lexicon("d", "phrase,tag\nweak,grumpy\n").is_err());
        assert!(parse_lexicon("d", "weak,negative\n").is_err());
        assert!(parse_lexicon("d", "phrase,tag\n\" \",negative\n").is_err());
    }
}
