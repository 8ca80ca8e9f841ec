//! The unified record schema shared by every stage of the pipeline.
//!
//! One [`InstanceRecord`] is one text with its four-way subjectivity
//! class, domain, binary label, and source dataset — the same five
//! attributes the exported CSV carries.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Four-way subjectivity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class4 {
    #[serde(rename = "POS")]
    Pos,
    #[serde(rename = "NEG")]
    Neg,
    #[serde(rename = "NEUTRAL")]
    Neutral,
    #[serde(rename = "OBJ")]
    Obj,
}

impl Class4 {
    pub fn as_str(&self) -> &'static str {
        match self {
            Class4::Pos => "POS",
            Class4::Neg => "NEG",
            Class4::Neutral => "NEUTRAL",
            Class4::Obj => "OBJ",
        }
    }

    pub fn parse(s: &str) -> Option<Class4> {
        match s {
            "POS" => Some(Class4::Pos),
            "NEG" => Some(Class4::Neg),
            "NEUTRAL" => Some(Class4::Neutral),
            "OBJ" => Some(Class4::Obj),
            _ => None,
        }
    }
}

impl fmt::Display for Class4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Binary subjectivity label: 1 subjective, 0 objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Objective,
    Subjective,
}

impl Label {
    pub fn as_u8(&self) -> u8 {
        match self {
            Label::Objective => 0,
            Label::Subjective => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Label> {
        match v {
            0 => Some(Label::Objective),
            1 => Some(Label::Subjective),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Source dataset a record was picked from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SourceDataset {
    Astd,
    Labr,
    Hard,
    Sanad,
}

impl SourceDataset {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceDataset::Astd => "ASTD",
            SourceDataset::Labr => "LABR",
            SourceDataset::Hard => "HARD",
            SourceDataset::Sanad => "SANAD",
        }
    }

    pub fn parse(s: &str) -> Option<SourceDataset> {
        match s {
            "ASTD" => Some(SourceDataset::Astd),
            "LABR" => Some(SourceDataset::Labr),
            "HARD" => Some(SourceDataset::Hard),
            "SANAD" => Some(SourceDataset::Sanad),
            _ => None,
        }
    }

    pub const ALL: [SourceDataset; 4] = [
        SourceDataset::Astd,
        SourceDataset::Labr,
        SourceDataset::Hard,
        SourceDataset::Sanad,
    ];
}

impl fmt::Display for SourceDataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One annotated text instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    /// Stable unique identifier, `<dataset>-<source row>` for ingested
    /// records, with a `#dupN` suffix for oversampling duplicates.
    pub id: String,
    pub text: String,
    pub class4: Class4,
    /// Free-form domain, e.g. "Tweets", "Books reviews", "Hotel reviews",
    /// or a SANAD article category.
    pub domain: String,
    pub label: Label,
    pub dataset: SourceDataset,
    /// Id of the record this one duplicates, set by oversampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duplicate_of: Option<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("record {id}: label {label} inconsistent with class {class4}")]
    LabelClassMismatch {
        id: String,
        label: u8,
        class4: Class4,
    },
    #[error("record {id}: dataset {dataset} cannot carry label {label}")]
    DatasetLabelMismatch {
        id: String,
        dataset: SourceDataset,
        label: u8,
    },
    #[error("record {id}: HARD records cannot be NEUTRAL")]
    HardNeutral { id: String },
    #[error("record {id}: empty text")]
    EmptyText { id: String },
}

impl InstanceRecord {
    /// Stratum key used by the stratified split.
    pub fn stratum(&self) -> (SourceDataset, Label) {
        (self.dataset, self.label)
    }

    /// Check the schema invariants:
    ///
    /// - label 0 iff class OBJ, label 1 iff class in {POS, NEG, NEUTRAL}
    /// - SANAD records are objective; LABR and HARD records are subjective
    /// - HARD records are never NEUTRAL
    /// - text is non-empty
    pub fn validate(&self) -> Result<(), RecordError> {
        let class_is_obj = self.class4 == Class4::Obj;
        let label_is_obj = self.label == Label::Objective;
        if class_is_obj != label_is_obj {
            return Err(RecordError::LabelClassMismatch {
                id: self.id.clone(),
                label: self.label.as_u8(),
                class4: self.class4,
            });
        }
        let dataset_ok = match self.dataset {
            SourceDataset::Sanad => self.label == Label::Objective,
            SourceDataset::Labr | SourceDataset::Hard => self.label == Label::Subjective,
            SourceDataset::Astd => true,
        };
        if !dataset_ok {
            return Err(RecordError::DatasetLabelMismatch {
                id: self.id.clone(),
                dataset: self.dataset,
                label: self.label.as_u8(),
            });
        }
        if self.dataset == SourceDataset::Hard && self.class4 == Class4::Neutral {
            return Err(RecordError::HardNeutral {
                id: self.id.clone(),
            });
        }
        if self.text.is_empty() {
            return Err(RecordError::EmptyText {
                id: self.id.clone(),
            });
        }
        Ok(())
    }
}
