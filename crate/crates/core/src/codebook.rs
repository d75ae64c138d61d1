//! The twelve codebook categories and their value sets.
//!
//! Categories A-H form the syntactic module, I-L the semantic module. Each
//! category has a fixed, ordered list of values rendered as `<letter><n>`
//! (for example `D3`), plus the shared [`UNCODABLE`] label used whenever a
//! value could not be assigned.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Label used in records and tables for a slot that carries an uncodable reason.
pub const UNCODABLE: &str = "uncodable";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

impl Category {
    pub const ALL: [Category; 12] = [
        Category::A,
        Category::B,
        Category::C,
        Category::D,
        Category::E,
        Category::F,
        Category::G,
        Category::H,
        Category::I,
        Category::J,
        Category::K,
        Category::L,
    ];

    pub fn letter(self) -> char {
        match self {
            Category::A => 'A',
            Category::B => 'B',
            Category::C => 'C',
            Category::D => 'D',
            Category::E => 'E',
            Category::F => 'F',
            Category::G => 'G',
            Category::H => 'H',
            Category::I => 'I',
            Category::J => 'J',
            Category::K => 'K',
            Category::L => 'L',
        }
    }

    /// Number of values defined for the category.
    pub fn value_count(self) -> u8 {
        match self {
            Category::A | Category::G => 6,
            Category::B | Category::H => 2,
            Category::C | Category::E | Category::F => 3,
            Category::D => 7,
            Category::I | Category::J | Category::K | Category::L => 4,
        }
    }

    /// All value labels in codebook order, without the uncodable bucket.
    pub fn labels(self) -> Vec<String> {
        (1..=self.value_count())
            .map(|n| format!("{}{}", self.letter(), n))
            .collect()
    }

    /// Whether `label` is a value of this category or the uncodable label.
    pub fn accepts(self, label: &str) -> bool {
        label == UNCODABLE || self.labels().iter().any(|l| l == label)
    }

    pub fn description(self) -> &'static str {
        match self {
            Category::A => "Type of cited documents",
            Category::B => "Type of authorship (cited)",
            Category::C => "Relation to the citing work",
            Category::D => "Location of mentioning",
            Category::E => "Frequency of mentioning",
            Category::F => "Style of mentioning",
            Category::G => "Type of citing documents",
            Category::H => "Type of authorship (citing)",
            Category::I => "Function of citation",
            Category::J => "Disposition of citation",
            Category::K => "Type of research domain",
            Category::L => "Type of research focus",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Category::ALL
                .iter()
                .copied()
                .find(|cat| cat.letter() == c.to_ascii_uppercase())
                .ok_or_else(|| Error::UnknownCategory(t.to_string())),
            _ => Err(Error::UnknownCategory(t.to_string())),
        }
    }
}

/// Parse a comma-separated category list such as `"D,I,J"`.
pub fn parse_category_list(s: &str) -> Result<Vec<Category>, Error> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// A codebook value that knows its 1-based position in its category.
pub trait CodeValue: Copy {
    fn ordinal(self) -> u8;

    fn label(self, category: Category) -> String {
        format!("{}{}", category.letter(), self.ordinal())
    }
}

macro_rules! code_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident = $n:expr),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $($variant),+
        }

        impl CodeValue for $name {
            fn ordinal(self) -> u8 {
                match self {
                    $($name::$variant => $n),+
                }
            }
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];
        }
    };
}

code_enum!(
    /// Categories A and G.
    DocumentType {
        Journal = 1,
        Conference = 2,
        Book = 3,
        Report = 4,
        Web = 5,
        Other = 6,
    }
);

code_enum!(
    /// Categories B and H.
    Authorship {
        Single = 1,
        Multiple = 2,
    }
);

code_enum!(
    /// Category C.
    Relation {
        Reciprocal = 1,
        Parallel = 2,
        Hierarchical = 3,
    }
);

code_enum!(
    /// Category D.
    Location {
        Abstract = 1,
        Introduction = 2,
        LiteratureReview = 3,
        Methodology = 4,
        ResultsDiscussion = 5,
        Conclusion = 6,
        Other = 7,
    }
);

code_enum!(
    /// Category E.
    Frequency {
        Once = 1,
        TwoToFour = 2,
        FivePlus = 3,
    }
);

code_enum!(
    /// Category F.
    Style {
        NotSpecific = 1,
        SpecificInterpreting = 2,
        DirectQuotation = 3,
    }
);

code_enum!(
    /// Category I.
    Function {
        Background = 1,
        Framework = 2,
        Evidence = 3,
        Challenges = 4,
    }
);

code_enum!(
    /// Category J.
    Disposition {
        Positive = 1,
        Negative = 2,
        Mixed = 3,
        Neutral = 4,
    }
);

code_enum!(
    /// Category K.
    Domain {
        Social = 1,
        Humanities = 2,
        Natural = 3,
        Applied = 4,
    }
);

code_enum!(
    /// Category L.
    Focus {
        Theoretical = 1,
        Empirical = 2,
        Experimental = 3,
        Other = 4,
    }
);

impl FromStr for Domain {
    type Err = Error;

    /// Accepts `K1`..`K4`, a bare digit, or the domain name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let d = match t.as_str() {
            "k1" | "1" | "social" | "social sciences" => Domain::Social,
            "k2" | "2" | "humanities" => Domain::Humanities,
            "k3" | "3" | "natural" | "natural sciences" => Domain::Natural,
            "k4" | "4" | "applied" | "applied sciences" | "engineering" => Domain::Applied,
            _ => {
                return Err(Error::InvalidValue(format!(
                    "unknown domain '{}'",
                    s.trim()
                )))
            }
        };
        Ok(d)
    }
}

/// A category slot: either a value or an explicit reason it could not be coded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot<T> {
    Value(T),
    Uncodable(String),
}

impl<T: CodeValue> Slot<T> {
    pub fn uncodable(reason: impl Into<String>) -> Self {
        Slot::Uncodable(reason.into())
    }

    pub fn value(&self) -> Option<T> {
        match self {
            Slot::Value(v) => Some(*v),
            Slot::Uncodable(_) => None,
        }
    }

    pub fn label(&self, category: Category) -> String {
        match self {
            Slot::Value(v) => v.label(category),
            Slot::Uncodable(_) => UNCODABLE.to_string(),
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Slot::Value(_) => None,
            Slot::Uncodable(r) => Some(r),
        }
    }
}

/// A slot together with the identifier of the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding<T> {
    pub slot: Slot<T>,
    pub rule: &'static str,
}

impl<T: CodeValue> Coding<T> {
    pub fn value(value: T, rule: &'static str) -> Self {
        Coding {
            slot: Slot::Value(value),
            rule,
        }
    }

    pub fn uncodable(reason: impl Into<String>, rule: &'static str) -> Self {
        Coding {
            slot: Slot::Uncodable(reason.into()),
            rule,
        }
    }

    pub fn get(&self) -> Option<T> {
        self.slot.value()
    }
}
