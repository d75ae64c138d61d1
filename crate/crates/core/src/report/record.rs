use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::codebook::{Category, CodeValue, Coding, UNCODABLE};
use crate::error::{Error, Result};
use crate::extract::{CitationContext, ContextLevel, InTextCitation};
use crate::semantic::MatchedCue;

/// One category's outcome before assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCode {
    pub label: String,
    pub reason: Option<String>,
    pub rule: String,
}

/// Per-category outcomes collected from the individual coders.
#[derive(Debug, Clone, Default)]
pub struct CodeSet {
    slots: BTreeMap<Category, CategoryCode>,
    pub location_other: Option<String>,
    pub matched_cues: Vec<MatchedCue>,
}

impl CodeSet {
    pub fn set<T: CodeValue>(&mut self, category: Category, coding: &Coding<T>) -> &mut Self {
        self.slots.insert(
            category,
            CategoryCode {
                label: coding.slot.label(category),
                reason: coding.slot.reason().map(str::to_string),
                rule: coding.rule.to_string(),
            },
        );
        self
    }

    pub fn get(&self, category: Category) -> Option<&CategoryCode> {
        self.slots.get(&category)
    }

    pub fn add_cues(&mut self, cues: &[MatchedCue]) {
        for c in cues {
            if !self.matched_cues.contains(c) {
                self.matched_cues.push(c.clone());
            }
        }
    }
}

/// A fully coded citation. Field order here is the serialized order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodedCitation {
    pub doc_id: String,
    pub citation_id: u32,
    pub ref_id: String,
    pub sentence_index: usize,
    pub context_level: ContextLevel,
    pub context_sentences: Vec<usize>,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "I")]
    pub i: String,
    #[serde(rename = "J")]
    pub j: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
    /// Raw section header when D is "other".
    pub location_other: Option<String>,
    /// C fell through to the parallel default.
    pub relation_default: bool,
    pub matched_cues: Vec<MatchedCue>,
    pub rule_trace: Vec<String>,
    pub uncodable_reasons: BTreeMap<Category, String>,
}

impl CodedCitation {
    pub fn code(&self, category: Category) -> &str {
        match category {
            Category::A => &self.a,
            Category::B => &self.b,
            Category::C => &self.c,
            Category::D => &self.d,
            Category::E => &self.e,
            Category::F => &self.f,
            Category::G => &self.g,
            Category::H => &self.h,
            Category::I => &self.i,
            Category::J => &self.j,
            Category::K => &self.k,
            Category::L => &self.l,
        }
    }

    pub fn is_uncodable(&self, category: Category) -> bool {
        self.code(category) == UNCODABLE
    }
}

/// Combine per-category codes into a record. Every category must have been
/// coded (a value or an uncodable reason).
pub fn assemble_record(
    doc_id: &str,
    citation: &InTextCitation,
    context: &CitationContext,
    codes: &CodeSet,
) -> Result<CodedCitation> {
    let mut labels = Vec::with_capacity(12);
    let mut rule_trace = Vec::with_capacity(12);
    let mut uncodable_reasons = BTreeMap::new();
    for cat in Category::ALL {
        let code = codes
            .get(cat)
            .ok_or(Error::IncompleteCoding(cat.letter()))?;
        if code.label == UNCODABLE {
            let reason = code
                .reason
                .clone()
                .ok_or(Error::IncompleteCoding(cat.letter()))?;
            uncodable_reasons.insert(cat, reason);
        } else if !cat.accepts(&code.label) {
            return Err(Error::InvalidValue(format!(
                "'{}' is not a {} value",
                code.label, cat
            )));
        }
        labels.push(code.label.clone());
        rule_trace.push(code.rule.clone());
    }
    let relation_default = codes
        .get(Category::C)
        .is_some_and(|c| c.rule == crate::network::RULE_C_DEFAULT);
    let mut it = labels.into_iter();
    let mut next = || it.next().unwrap();
    Ok(CodedCitation {
        doc_id: doc_id.to_string(),
        citation_id: citation.citation_id,
        ref_id: citation.ref_id.clone().unwrap_or_default(),
        sentence_index: citation.sentence_index,
        context_level: context.level,
        context_sentences: context.sentence_indices.clone(),
        a: next(),
        b: next(),
        c: next(),
        d: next(),
        e: next(),
        f: next(),
        g: next(),
        h: next(),
        i: next(),
        j: next(),
        k: next(),
        l: next(),
        location_other: codes.location_other.clone(),
        relation_default,
        matched_cues: codes.matched_cues.clone(),
        rule_trace,
        uncodable_reasons,
    })
}

/// One JSON object per line, records in the given order.
pub fn write_jsonl(records: &[CodedCitation]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn read_jsonl(text: &str) -> Result<Vec<CodedCitation>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::malformed(i + 1, e.to_string())))
        .collect()
}
