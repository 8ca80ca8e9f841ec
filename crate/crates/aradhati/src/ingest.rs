//! Loaders for the four source corpora.
//!
//! Each loader reads a UTF-8 delimited text file mirroring the public
//! distribution of its dataset and emits [`InstanceRecord`]s with the
//! class-mapping rules applied:
//!
//! - ASTD: `text<TAB>class`, class one of `OBJ | POS | NEG | NEUTRAL`
//!   (long forms `objective | subjective positive | subjective negative |
//!   subjective mixed` are accepted). Objective rows get label 0, all
//!   subjective variants label 1, mixed maps to NEUTRAL.
//! - LABR: `rating<TAB>review_id<TAB>user_id<TAB>book_id<TAB>text`,
//!   rating 1..=5. Ratings 4-5 are POS, 1-2 NEG, 3 NEUTRAL; every LABR
//!   record is subjective.
//! - HARD (balanced variant): TSV with a header naming at least the
//!   `rating` and `review` columns; ratings are 1, 2, 4 or 5 (3 was
//!   removed from the balanced distribution and is skipped with a count
//!   if it sneaks in).
//! - SANAD: `category<TAB>text`; every article is objective, and only
//!   articles from the selected categories are kept.
//!
//! Malformed rows are skipped and counted per line, never fatal; an
//! unreadable file is. Loaders are deterministic, and ids encode the
//! source line so reruns and dedup checks agree.

use crate::record::{Class4, InstanceRecord, Label, SourceDataset};
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// The seven SANAD article categories.
pub const SANAD_CATEGORIES: [&str; 7] = [
    "Culture",
    "Finance",
    "Medical",
    "Politics",
    "Religion",
    "Sports",
    "Technology",
];

/// Categories treated as objective sources by default.
pub const DEFAULT_SANAD_CATEGORIES: [&str; 3] = ["Medical", "Sports", "Technology"];

/// Registered file layout for one source dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceFormatSpec {
    pub dataset: SourceDataset,
    /// Human-readable column layout, tab-delimited.
    pub layout: &'static str,
    pub has_header: bool,
}

const FORMAT_SPECS: [SourceFormatSpec; 4] = [
    SourceFormatSpec {
        dataset: SourceDataset::Astd,
        layout: "text<TAB>class(OBJ|POS|NEG|NEUTRAL)",
        has_header: false,
    },
    SourceFormatSpec {
        dataset: SourceDataset::Labr,
        layout: "rating(1-5)<TAB>review_id<TAB>user_id<TAB>book_id<TAB>text",
        has_header: false,
    },
    SourceFormatSpec {
        dataset: SourceDataset::Hard,
        layout: "header row; columns must include rating(1|2|4|5) and review",
        has_header: true,
    },
    SourceFormatSpec {
        dataset: SourceDataset::Sanad,
        layout: "category<TAB>text",
        has_header: false,
    },
];

/// The one registered format spec for a dataset.
pub fn format_spec(dataset: SourceDataset) -> &'static SourceFormatSpec {
    FORMAT_SPECS
        .iter()
        .find(|s| s.dataset == dataset)
        .expect("every dataset has a registered spec")
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown SANAD category {name:?}; known categories: {known:?}")]
    UnknownCategory { name: String, known: [&'static str; 7] },
    #[error("{path}: missing required column {column:?} in header {header:?}")]
    MissingColumn {
        path: String,
        column: &'static str,
        header: String,
    },
}

/// Why a row was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    Malformed(String),
    UnknownClassTag(String),
    RatingOutOfRange(String),
    NeutralHardRating,
    EmptyText,
    CategoryExcluded(String),
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::Malformed(msg) => write!(f, "malformed row: {msg}"),
            SkipReason::UnknownClassTag(tag) => write!(f, "unknown class tag {tag:?}"),
            SkipReason::RatingOutOfRange(r) => write!(f, "rating {r:?} outside 1..=5"),
            SkipReason::NeutralHardRating => {
                write!(f, "rating 3 violates the balanced-HARD contract")
            }
            SkipReason::EmptyText => write!(f, "empty text"),
            SkipReason::CategoryExcluded(c) => write!(f, "category {c:?} not selected"),
        }
    }
}

/// A skipped row with its 1-based line number in the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedRow {
    pub line: usize,
    pub reason: SkipReason,
}

/// Records plus the per-row skip ledger. For every loader,
/// `records.len() + skipped.len()` equals the number of non-empty data
/// rows in the input.
#[derive(Debug, Clone, Default)]
pub struct LoadOutcome {
    pub records: Vec<InstanceRecord>,
    pub skipped: Vec<SkippedRow>,
}

impl LoadOutcome {
    pub fn skipped_count(&self) -> usize {
        self.skipped.len()
    }
}

fn read_file(path: &Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Unreadable {
        path: path.display().to_string(),
        source,
    })
}

// Non-empty lines with their 1-based line numbers, \r-trimmed.
fn data_lines(content: &str) -> impl Iterator<Item = (usize, &str)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn record_id(dataset: SourceDataset, line: usize) -> String {
    format!("{}-{}", dataset.as_str(), line)
}

fn astd_class(tag: &str) -> Option<Class4> {
    match tag {
        "OBJ" => Some(Class4::Obj),
        "POS" => Some(Class4::Pos),
        "NEG" => Some(Class4::Neg),
        "NEUTRAL" => Some(Class4::Neutral),
        _ => match tag.to_ascii_lowercase().as_str() {
            "objective" => Some(Class4::Obj),
            "subjective positive" => Some(Class4::Pos),
            "subjective negative" => Some(Class4::Neg),
            // The distribution merges "mixed" into the subjective pool;
            // NEUTRAL is the closest four-way bucket and the binary label
            // is unaffected.
            "subjective mixed" => Some(Class4::Neutral),
            _ => None,
        },
    }
}

/// Parse ASTD content. `text<TAB>class` per row.
pub fn parse_astd(content: &str) -> LoadOutcome {
    let mut out = LoadOutcome::default();
    for (line, row) in data_lines(content) {
        let Some((text, tag)) = row.rsplit_once('\t') else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::Malformed("expected text<TAB>class".into()),
            });
            continue;
        };
        let text = text.trim();
        let Some(class4) = astd_class(tag.trim()) else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::UnknownClassTag(tag.trim().to_owned()),
            });
            continue;
        };
        if text.is_empty() {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::EmptyText,
            });
            continue;
        }
        let label = if class4 == Class4::Obj {
            Label::Objective
        } else {
            Label::Subjective
        };
        out.records.push(InstanceRecord {
            id: record_id(SourceDataset::Astd, line),
            text: text.to_owned(),
            class4,
            domain: "Tweets".into(),
            label,
            dataset: SourceDataset::Astd,
            duplicate_of: None,
        });
    }
    out
}

/// Load ASTD rows from a file.
pub fn load_astd(path: &Path) -> Result<LoadOutcome, IngestError> {
    Ok(parse_astd(&read_file(path)?))
}

fn rating_class(rating: i64) -> Option<Class4> {
    match rating {
        4 | 5 => Some(Class4::Pos),
        1 | 2 => Some(Class4::Neg),
        3 => Some(Class4::Neutral),
        _ => None,
    }
}

/// Parse LABR content. Rating first, text last; the review/user/book id
/// columns in between are ignored.
pub fn parse_labr(content: &str) -> LoadOutcome {
    let mut out = LoadOutcome::default();
    for (line, row) in data_lines(content) {
        let fields: Vec<&str> = row.split('\t').collect();
        if fields.len() < 2 {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::Malformed("expected rating<TAB>...<TAB>text".into()),
            });
            continue;
        }
        let rating_str = fields[0].trim();
        let Ok(rating) = rating_str.parse::<i64>() else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::RatingOutOfRange(rating_str.to_owned()),
            });
            continue;
        };
        let Some(class4) = rating_class(rating) else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::RatingOutOfRange(rating_str.to_owned()),
            });
            continue;
        };
        let text = fields[fields.len() - 1].trim();
        if text.is_empty() {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::EmptyText,
            });
            continue;
        }
        out.records.push(InstanceRecord {
            id: record_id(SourceDataset::Labr, line),
            text: text.to_owned(),
            class4,
            domain: "Books reviews".into(),
            label: Label::Subjective,
            dataset: SourceDataset::Labr,
            duplicate_of: None,
        });
    }
    out
}

/// Load LABR rows from a file.
pub fn load_labr(path: &Path) -> Result<LoadOutcome, IngestError> {
    Ok(parse_labr(&read_file(path)?))
}

/// Parse balanced-HARD content: a TSV header naming at least `rating`
/// and `review`, then one review per row.
pub fn parse_hard(content: &str, path_for_errors: &str) -> Result<LoadOutcome, IngestError> {
    let mut lines = data_lines(content);
    let Some((_, header)) = lines.next() else {
        return Ok(LoadOutcome::default());
    };
    let columns: Vec<&str> = header.split('\t').map(str::trim).collect();
    let col = |name: &'static str| -> Result<usize, IngestError> {
        columns
            .iter()
            .position(|c| c.eq_ignore_ascii_case(name))
            .ok_or_else(|| IngestError::MissingColumn {
                path: path_for_errors.to_owned(),
                column: name,
                header: header.to_owned(),
            })
    };
    let rating_col = col("rating")?;
    let review_col = col("review")?;

    let mut out = LoadOutcome::default();
    for (line, row) in lines {
        let fields: Vec<&str> = row.split('\t').collect();
        if fields.len() <= rating_col.max(review_col) {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::Malformed(format!(
                    "expected {} tab-separated fields, found {}",
                    columns.len(),
                    fields.len()
                )),
            });
            continue;
        }
        let rating_str = fields[rating_col].trim();
        let Ok(rating) = rating_str.parse::<i64>() else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::RatingOutOfRange(rating_str.to_owned()),
            });
            continue;
        };
        let class4 = match rating {
            4 | 5 => Class4::Pos,
            1 | 2 => Class4::Neg,
            3 => {
                out.skipped.push(SkippedRow {
                    line,
                    reason: SkipReason::NeutralHardRating,
                });
                continue;
            }
            _ => {
                out.skipped.push(SkippedRow {
                    line,
                    reason: SkipReason::RatingOutOfRange(rating_str.to_owned()),
                });
                continue;
            }
        };
        let text = fields[review_col].trim();
        if text.is_empty() {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::EmptyText,
            });
            continue;
        }
        out.records.push(InstanceRecord {
            id: record_id(SourceDataset::Hard, line),
            text: text.to_owned(),
            class4,
            domain: "Hotel reviews".into(),
            label: Label::Subjective,
            dataset: SourceDataset::Hard,
            duplicate_of: None,
        });
    }
    Ok(out)
}

/// Load balanced-HARD rows from a file.
pub fn load_hard(path: &Path) -> Result<LoadOutcome, IngestError> {
    parse_hard(&read_file(path)?, &path.display().to_string())
}

/// Parse SANAD content, keeping only the selected categories. Every kept
/// article is objective with its category as the domain.
pub fn parse_sanad(content: &str, categories: &BTreeSet<String>) -> Result<LoadOutcome, IngestError> {
    for name in categories {
        if !SANAD_CATEGORIES.contains(&name.as_str()) {
            return Err(IngestError::UnknownCategory {
                name: name.clone(),
                known: SANAD_CATEGORIES,
            });
        }
    }
    let mut out = LoadOutcome::default();
    for (line, row) in data_lines(content) {
        let Some((category, text)) = row.split_once('\t') else {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::Malformed("expected category<TAB>text".into()),
            });
            continue;
        };
        let category = category.trim();
        if !SANAD_CATEGORIES.contains(&category) {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::Malformed(format!("unknown article category {category:?}")),
            });
            continue;
        }
        if !categories.contains(category) {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::CategoryExcluded(category.to_owned()),
            });
            continue;
        }
        let text = text.trim();
        if text.is_empty() {
            out.skipped.push(SkippedRow {
                line,
                reason: SkipReason::EmptyText,
            });
            continue;
        }
        out.records.push(InstanceRecord {
            id: record_id(SourceDataset::Sanad, line),
            text: text.to_owned(),
            class4: Class4::Obj,
            domain: category.to_owned(),
            label: Label::Objective,
            dataset: SourceDataset::Sanad,
            duplicate_of: None,
        });
    }
    Ok(out)
}

/// Load SANAD rows from a file, keeping the selected categories.
pub fn load_sanad(path: &Path, categories: &BTreeSet<String>) -> Result<LoadOutcome, IngestError> {
    parse_sanad(&read_file(path)?, categories)
}

/// The default SANAD selection as an owned set.
pub fn default_sanad_categories() -> BTreeSet<String> {
    DEFAULT_SANAD_CATEGORIES
        .iter()
        .map(|s| (*s).to_owned())
        .collect()
}
