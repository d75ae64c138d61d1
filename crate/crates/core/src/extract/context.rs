//! Single-sentence and sentence-cluster contexts.

use serde::{Deserialize, Serialize};

use super::InTextCitation;
use crate::ingest::Document;

/// Largest accepted window on either side of the citing sentence.
pub const MAX_WINDOW: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextLevel {
    SingleSentence,
    SentenceCluster,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationContext {
    pub citation_id: u32,
    pub level: ContextLevel,
    pub sentence_indices: Vec<usize>,
    pub text: String,
}

/// Collect up to `window_before`/`window_after` neighbouring sentences
/// around the citing sentence, clamped to its section. Windows above
/// [`MAX_WINDOW`] are clamped to it.
pub fn extract_context(
    doc: &Document,
    citation: &InTextCitation,
    window_before: usize,
    window_after: usize,
) -> CitationContext {
    let before = window_before.min(MAX_WINDOW);
    let after = window_after.min(MAX_WINDOW);
    let i = citation.sentence_index;
    let bounds = doc
        .section_of(i)
        .map(|s| doc.sections[s].sentences.clone())
        .unwrap_or(i..i + 1);
    let start = i.saturating_sub(before).max(bounds.start);
    let end = (i + after + 1)
        .min(bounds.end)
        .min(doc.sentences.len())
        .max(i + 1);
    let sentence_indices: Vec<usize> = (start..end).collect();
    let text = sentence_indices
        .iter()
        .filter_map(|&k| doc.sentences.get(k).map(String::as_str))
        .collect::<Vec<_>>()
        .join(" ");
    CitationContext {
        citation_id: citation.citation_id,
        level: if before == 0 && after == 0 {
            ContextLevel::SingleSentence
        } else {
            ContextLevel::SentenceCluster
        },
        sentence_indices,
        text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{Link, Marker, MarkerStyle};
    use crate::ingest::{parse_document, InputFormat};

    fn doc() -> Document {
        let mut text = String::from("#META id: d\n#SECTION Introduction\n");
        for i in 0..10 {
            text.push_str(&format!("Sentence number {i} is here.\n"));
        }
        text.push_str("#SECTION Methods\nFirst method sentence. Second method sentence.\n");
        parse_document(text.as_bytes(), InputFormat::PlainAnnotated).unwrap()
    }

    fn cite(sentence_index: usize) -> InTextCitation {
        InTextCitation {
            citation_id: 1,
            ref_id: None,
            link: Link::Unresolved,
            sentence_index,
            char_span: (0, 1),
            marker_style: MarkerStyle::Numeric,
            inside_example_cue: false,
            marker: Marker {
                style: MarkerStyle::Numeric,
                names: vec![],
                et_al: false,
                year: None,
                year_suffix: None,
                label: Some(1),
                locator: None,
                names_from_context: false,
            },
        }
    }

    #[test]
    fn window_arithmetic() {
        let d = doc();
        assert_eq!(d.sections[0].sentences, 0..10);
        assert_eq!(
            extract_context(&d, &cite(5), 1, 1).sentence_indices,
            vec![4, 5, 6]
        );
        assert_eq!(
            extract_context(&d, &cite(0), 2, 1).sentence_indices,
            vec![0, 1]
        );
        // last sentence of the introduction does not spill into methods
        assert_eq!(
            extract_context(&d, &cite(9), 1, 2).sentence_indices,
            vec![8, 9]
        );
        assert_eq!(
            extract_context(&d, &cite(10), 3, 0).sentence_indices,
            vec![10]
        );
    }

    #[test]
    fn zero_window_is_single_sentence() {
        let d = doc();
        let c = extract_context(&d, &cite(3), 0, 0);
        assert_eq!(c.level, ContextLevel::SingleSentence);
        assert_eq!(c.sentence_indices, vec![3]);
        assert_eq!(c.text, "Sentence number 3 is here.");
        assert_eq!(
            extract_context(&d, &cite(3), 0, 1).level,
            ContextLevel::SentenceCluster
        );
    }
}
