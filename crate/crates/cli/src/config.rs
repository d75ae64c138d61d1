//! Flat `key=value` run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use citecoder_core::extract::MAX_WINDOW;
use citecoder_core::network::DEFAULT_DELTA;
use citecoder_core::semantic::{load_lexicon, CueLexicon, LexiconSet, VenueMapping};
use citecoder_core::{CodingConfig, Error, Result, Segmenter};

/// Value that selects the embedded default for a file-valued key.
pub const BUILTIN: &str = "builtin";

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub window_before: usize,
    pub window_after: usize,
    pub delta: f64,
    pub lexicon_negative: Option<PathBuf>,
    pub lexicon_positive: Option<PathBuf>,
    pub lexicon_evidence: Option<PathBuf>,
    pub lexicon_framework: Option<PathBuf>,
    pub lexicon_focus: Option<PathBuf>,
    pub venue_mapping: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub output_dir: PathBuf,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            window_before: 1,
            window_after: 1,
            delta: DEFAULT_DELTA,
            lexicon_negative: None,
            lexicon_positive: None,
            lexicon_evidence: None,
            lexicon_framework: None,
            lexicon_focus: None,
            venue_mapping: None,
            abbreviations: None,
            output_dir: PathBuf::from("out"),
        }
    }
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedInput {
        line,
        message: message.into(),
    }
}

impl PipelineConfig {
    /// Parse config text. Relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = PipelineConfig {
            output_dir: base.join("out"),
            ..PipelineConfig::default()
        };
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (key, value) = l
                .split_once('=')
                .ok_or_else(|| bad(line, "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.insert(key.to_string(), line).is_some() {
                return Err(bad(line, format!("duplicate key '{key}'")));
            }
            let path = || -> Option<PathBuf> { (value != BUILTIN).then(|| base.join(value)) };
            match key {
                "window_before" => cfg.window_before = parse_window(value, line)?,
                "window_after" => cfg.window_after = parse_window(value, line)?,
                "delta" => {
                    cfg.delta = value
                        .parse()
                        .ok()
                        .filter(|d: &f64| (0.0..=1.0).contains(d))
                        .ok_or_else(|| {
                            bad(
                                line,
                                format!("delta must be a number in [0,1], got '{value}'"),
                            )
                        })?
                }
                "lexicon_negative" => cfg.lexicon_negative = path(),
                "lexicon_positive" => cfg.lexicon_positive = path(),
                "lexicon_evidence" => cfg.lexicon_evidence = path(),
                "lexicon_framework" => cfg.lexicon_framework = path(),
                "lexicon_focus" => cfg.lexicon_focus = path(),
                "venue_mapping" => cfg.venue_mapping = path(),
                "abbreviations" => cfg.abbreviations = path(),
                "output_dir" => cfg.output_dir = base.join(value),
                other => return Err(bad(line, format!("unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &base_dir(path)?)
    }

    fn files(&self) -> [(&'static str, &Option<PathBuf>); 7] {
        [
            ("lexicon_negative", &self.lexicon_negative),
            ("lexicon_positive", &self.lexicon_positive),
            ("lexicon_evidence", &self.lexicon_evidence),
            ("lexicon_framework", &self.lexicon_framework),
            ("lexicon_focus", &self.lexicon_focus),
            ("venue_mapping", &self.venue_mapping),
            ("abbreviations", &self.abbreviations),
        ]
    }

    /// Effective configuration, every key present. Feeding it back through
    /// [`PipelineConfig::parse`] reproduces this configuration.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("window_before".into(), self.window_before.to_string());
        m.insert("window_after".into(), self.window_after.to_string());
        m.insert("delta".into(), self.delta.to_string());
        for (k, v) in self.files() {
            let s = v
                .as_ref()
                .map_or(BUILTIN.to_string(), |p| p.display().to_string());
            m.insert(k.into(), s);
        }
        m.insert("output_dir".into(), self.output_dir.display().to_string());
        m
    }

    pub fn echo_text(&self) -> String {
        self.echo()
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    /// Load every referenced file and build the core configuration.
    /// Returns lexicon warnings alongside.
    pub fn resolve(&self) -> Result<(CodingConfig, Vec<String>)> {
        let mut warnings = Vec::new();
        let mut lex = |path: &Option<PathBuf>, default: CueLexicon| -> Result<CueLexicon> {
            match path {
                None => Ok(default),
                Some(p) => {
                    let (l, w) = load_lexicon(p)?;
                    warnings.extend(w);
                    Ok(l)
                }
            }
        };
        let d = LexiconSet::defaults();
        let lexicons = LexiconSet {
            negative: lex(&self.lexicon_negative, d.negative)?,
            positive: lex(&self.lexicon_positive, d.positive)?,
            evidence: lex(&self.lexicon_evidence, d.evidence)?,
            framework: lex(&self.lexicon_framework, d.framework)?,
            focus: lex(&self.lexicon_focus, d.focus)?,
        };
        let venues = match &self.venue_mapping {
            Some(p) => VenueMapping::load(p)?,
            None => VenueMapping::defaults(),
        };
        let segmenter = match &self.abbreviations {
            Some(p) => Segmenter::from_file(p)?,
            None => Segmenter::default(),
        };
        let cfg = CodingConfig {
            window_before: self.window_before,
            window_after: self.window_after,
            delta: self.delta,
            lexicons,
            venues,
            segmenter,
        };
        Ok((cfg, warnings))
    }
}

/// Absolute directory holding `path`, so echoed paths stay valid from
/// any working directory.
pub fn base_dir(path: &Path) -> Result<PathBuf> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::path::absolute(parent).map_err(|e| Error::io(parent, e))
}

fn parse_window(value: &str, line: usize) -> Result<usize> {
    value
        .parse()
        .ok()
        .filter(|w| *w <= MAX_WINDOW)
        .ok_or_else(|| {
            bad(
                line,
                format!("window must be an integer in [0,{MAX_WINDOW}], got '{value}'"),
            )
        })
}
