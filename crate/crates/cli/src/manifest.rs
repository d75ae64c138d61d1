//! Corpus manifest: one `path<TAB>format` line per document.

use std::path::{Path, PathBuf};

use citecoder_core::{Error, InputFormat, Result};

use crate::config::base_dir;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    /// Path as written in the manifest.
    pub path: String,
    /// Path resolved against the manifest's directory.
    pub resolved: PathBuf,
    pub format: InputFormat,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            continue;
        }
        let (path, format) = l.split_once('\t').ok_or_else(|| Error::MalformedInput {
            line,
            message: "expected '<path><TAB><format>'".into(),
        })?;
        let format = format
            .trim()
            .parse()
            .map_err(|e: Error| Error::MalformedInput {
                line,
                message: e.to_string(),
            })?;
        let path = path.trim().to_string();
        out.push(ManifestEntry {
            resolved: base.join(&path),
            path,
            format,
        });
    }
    if out.is_empty() {
        return Err(Error::MalformedInput {
            line: 0,
            message: "manifest lists no documents".into(),
        });
    }
    Ok(out)
}

pub fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_manifest(&text, &base_dir(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries() {
        let m = parse_manifest(
            "# corpus\na.txt\tplain\n\nsub/b.xml\txml\n",
            Path::new("/m"),
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1].resolved, PathBuf::from("/m/sub/b.xml"));
        assert_eq!(m[1].format, InputFormat::StructuredXml);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            parse_manifest("a.txt plain\n", Path::new(".")),
            Err(Error::MalformedInput { line: 1, .. })
        ));
        assert!(parse_manifest("a.txt\tpdf\n", Path::new(".")).is_err());
        assert!(parse_manifest("# only comments\n", Path::new(".")).is_err());
    }
}
