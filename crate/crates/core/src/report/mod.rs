//! Coded records, frequency tables and agreement metrics.

mod aggregate;
mod agreement;
mod record;

pub use aggregate::{aggregate, bucket_labels, FrequencyTable};
pub use agreement::{
    agreement_csv, cohens_kappa, evaluate, percent_agreement, read_gold, AgreementReport,
    Evaluation, GoldItem,
};
pub use record::{assemble_record, read_jsonl, write_jsonl, CategoryCode, CodeSet, CodedCitation};
