use std::collections::BTreeMap;

use super::CodedCitation;
use crate::codebook::{Category, UNCODABLE};

/// Frequency table over one category, or a cross-tabulation of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    pub rows: Category,
    pub cols: Option<Category>,
    counts: BTreeMap<(String, Option<String>), usize>,
    pub n: usize,
}

/// Category labels followed by the uncodable bucket.
pub fn bucket_labels(category: Category) -> Vec<String> {
    let mut labels = category.labels();
    labels.push(UNCODABLE.to_string());
    labels
}

impl FrequencyTable {
    pub fn new(rows: Category, cols: Option<Category>) -> Self {
        FrequencyTable {
            rows,
            cols,
            counts: BTreeMap::new(),
            n: 0,
        }
    }

    pub fn add(&mut self, record: &CodedCitation) {
        let key = (
            record.code(self.rows).to_string(),
            self.cols.map(|c| record.code(c).to_string()),
        );
        *self.counts.entry(key).or_default() += 1;
        self.n += 1;
    }

    /// Tables over the same categories merge by adding counts.
    pub fn merge(mut self, other: FrequencyTable) -> FrequencyTable {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "merging unlike tables"
        );
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.n += other.n;
        self
    }

    pub fn count(&self, row: &str) -> usize {
        self.counts
            .iter()
            .filter(|((r, _), _)| r == row)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn cell(&self, row: &str, col: &str) -> usize {
        self.counts
            .get(&(row.to_string(), Some(col.to_string())))
            .copied()
            .unwrap_or(0)
    }

    /// Non-zero cells.
    pub fn cells(&self) -> impl Iterator<Item = (&str, Option<&str>, usize)> {
        self.counts
            .iter()
            .map(|((r, c), &v)| (r.as_str(), c.as_deref(), v))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// CSV listing every value, zero counts included.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.cols {
            None => {
                out.push_str(&format!("{},count\n", self.rows));
                for label in bucket_labels(self.rows) {
                    out.push_str(&format!("{},{}\n", label, self.count(&label)));
                }
            }
            Some(cols) => {
                let col_labels = bucket_labels(cols);
                out.push_str(&format!("{}\\{}", self.rows, cols));
                for c in &col_labels {
                    out.push(',');
                    out.push_str(c);
                }
                out.push('\n');
                for r in bucket_labels(self.rows) {
                    out.push_str(&r);
                    for c in &col_labels {
                        out.push_str(&format!(",{}", self.cell(&r, c)));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}

pub fn aggregate(
    records: &[CodedCitation],
    rows: Category,
    cols: Option<Category>,
) -> FrequencyTable {
    let mut t = FrequencyTable::new(rows, cols);
    for r in records {
        t.add(r);
    }
    t
}
