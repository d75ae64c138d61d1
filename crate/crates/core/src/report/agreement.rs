use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hash;

use serde::Serialize;
use serde_json::Value;

use super::aggregate::bucket_labels;
use super::CodedCitation;
use crate::codebook::Category;
use crate::error::{Error, Result};

fn check_lengths<T>(a: &[T], b: &[T]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// Fraction of positions where the two codings agree.
pub fn percent_agreement<T: PartialEq>(a: &[T], b: &[T]) -> Result<f64> {
    check_lengths(a, b)?;
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    Ok(same as f64 / a.len() as f64)
}

/// Cohen's kappa. When chance agreement is 1 (both codings use one and the
/// same value) the statistic is undefined; 1.0 is returned for perfect
/// observed agreement and 0.0 otherwise.
pub fn cohens_kappa<T: Eq + Hash + Ord>(a: &[T], b: &[T]) -> Result<f64> {
    let p_o = percent_agreement(a, b)?;
    let n = a.len() as f64;
    let mut ma: BTreeMap<&T, usize> = BTreeMap::new();
    let mut mb: BTreeMap<&T, usize> = BTreeMap::new();
    for x in a {
        *ma.entry(x).or_default() += 1;
    }
    for y in b {
        *mb.entry(y).or_default() += 1;
    }
    let p_e: f64 = ma
        .iter()
        .map(|(k, &ca)| (ca as f64 / n) * (mb.get(k).copied().unwrap_or(0) as f64 / n))
        .sum();
    if (1.0 - p_e).abs() < 1e-12 {
        return Ok(if p_o == 1.0 { 1.0 } else { 0.0 });
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub category: Category,
    pub n: usize,
    pub percent_agreement: f64,
    pub cohens_kappa: f64,
    /// Row/column labels of `confusion`: category values then uncodable.
    pub labels: Vec<String>,
    /// `confusion[i][j]`: items coded `labels[i]` automatically and
    /// `labels[j]` in the gold standard.
    pub confusion: Vec<Vec<usize>>,
}

impl AgreementReport {
    pub fn compute(category: Category, auto: &[String], gold: &[String]) -> Result<Self> {
        let percent_agreement = percent_agreement(auto, gold)?;
        let cohens_kappa = cohens_kappa(auto, gold)?;
        let labels = bucket_labels(category);
        let pos = |l: &str| labels.iter().position(|x| x == l);
        let mut confusion = vec![vec![0; labels.len()]; labels.len()];
        for (x, y) in auto.iter().zip(gold) {
            let (i, j) = pos(x).zip(pos(y)).ok_or_else(|| {
                Error::InvalidValue(format!("'{x}' or '{y}' is not a {category} value"))
            })?;
            confusion[i][j] += 1;
        }
        Ok(AgreementReport {
            category,
            n: auto.len(),
            percent_agreement,
            cohens_kappa,
            labels,
            confusion,
        })
    }
}

/// One gold-standard annotation: any subset of category values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldItem {
    pub doc_id: String,
    pub citation_id: u32,
    pub codes: BTreeMap<Category, String>,
}

pub fn read_gold(text: &str) -> Result<Vec<GoldItem>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |m: String| Error::malformed(i + 1, m);
        let v: Value = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| bad("expected a JSON object".into()))?;
        let doc_id = obj
            .get("doc_id")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing doc_id".into()))?
            .to_string();
        let citation_id = obj
            .get("citation_id")
            .and_then(Value::as_u64)
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| bad("missing or invalid citation_id".into()))?;
        let mut codes = BTreeMap::new();
        for cat in Category::ALL {
            if let Some(val) = obj.get(&cat.letter().to_string()) {
                let label = val
                    .as_str()
                    .ok_or_else(|| bad(format!("{cat} must be a string")))?;
                if !cat.accepts(label) {
                    return Err(bad(format!("'{label}' is not a {cat} value")));
                }
                codes.insert(cat, label.to_string());
            }
        }
        out.push(GoldItem {
            doc_id,
            citation_id,
            codes,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub reports: Vec<AgreementReport>,
    pub aligned: usize,
    /// Gold items with no matching coded record.
    pub unmatched_gold: Vec<(String, u32)>,
}

/// Align gold items to records by `(doc_id, citation_id)` and report
/// agreement per requested category over the items that carry that category.
pub fn evaluate(
    records: &[CodedCitation],
    gold: &[GoldItem],
    categories: &[Category],
) -> Result<Evaluation> {
    let index: BTreeMap<(&str, u32), &CodedCitation> = records
        .iter()
        .map(|r| ((r.doc_id.as_str(), r.citation_id), r))
        .collect();
    let mut pairs = Vec::new();
    let mut unmatched = BTreeSet::new();
    for g in gold {
        match index.get(&(g.doc_id.as_str(), g.citation_id)) {
            Some(r) => pairs.push((*r, g)),
            None => {
                unmatched.insert((g.doc_id.clone(), g.citation_id));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoOverlap);
    }
    let mut reports = Vec::new();
    for &cat in categories {
        let (auto, want): (Vec<String>, Vec<String>) = pairs
            .iter()
            .filter_map(|(r, g)| {
                g.codes
                    .get(&cat)
                    .map(|v| (r.code(cat).to_string(), v.clone()))
            })
            .unzip();
        if auto.is_empty() {
            continue;
        }
        reports.push(AgreementReport::compute(cat, &auto, &want)?);
    }
    Ok(Evaluation {
        reports,
        aligned: pairs.len(),
        unmatched_gold: unmatched.into_iter().collect(),
    })
}

/// `category,n,percent_agreement,cohens_kappa` rows.
pub fn agreement_csv(reports: &[AgreementReport]) -> String {
    let mut out = String::from("category,n,percent_agreement,cohens_kappa\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:.6},{:.6}\n",
            r.category, r.n, r.percent_agreement, r.cohens_kappa
        ));
    }
    out
}
