//! Arabic text cleaning and normalization.
//!
//! Cleaning applies six ordered rules (URLs, non-Arabic characters,
//! punctuation, special characters, single-letter tokens, whitespace
//! collapsing), each individually toggleable. Normalization folds alef
//! variants to bare alef and strips tatweel and diacritics; ta-marbuta
//! and alef-maqsura folding exist as opt-in toggles since over-folding
//! can distort sentiment-bearing words.
//!
//! Stop words are never removed: they matter for subjectivity cues.
//! The full pipeline is idempotent, and its output contains only
//! Arabic-script letters, Arabic-Indic digits, and single spaces.

use regex::Regex;
use std::sync::LazyLock;
use thiserror::Error;

static URL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)(?:https?://|www\.)\S+").expect("valid url regex"));

/// Tatweel (kashida), the elongation character.
pub const TATWEEL: char = '\u{0640}';

/// Arabic diacritics and Quranic annotation marks (tashkeel and friends).
pub fn is_arabic_diacritic(c: char) -> bool {
    matches!(c,
        '\u{0610}'..='\u{061A}'
        | '\u{064B}'..='\u{065F}'
        | '\u{0670}'
        | '\u{06D6}'..='\u{06DC}'
        | '\u{06DF}'..='\u{06E4}'
        | '\u{06E7}' | '\u{06E8}'
        | '\u{06EA}'..='\u{06ED}'
        | '\u{08D3}'..='\u{08FF}'
    )
}

/// Arabic-Indic digits, both the standard and the extended set.
pub fn is_arabic_indic_digit(c: char) -> bool {
    matches!(c, '\u{0660}'..='\u{0669}' | '\u{06F0}'..='\u{06F9}')
}

/// Punctuation native to the Arabic block (comma, semicolon, question
/// mark, percent, decimal/thousands separators, five-pointed star, full
/// stop).
pub fn is_arabic_punct(c: char) -> bool {
    matches!(
        c,
        '\u{0609}'
            | '\u{060A}'
            | '\u{060C}'
            | '\u{060D}'
            | '\u{061B}'
            | '\u{061E}'
            | '\u{061F}'
            | '\u{066A}'..='\u{066D}'
            | '\u{06D4}'
    )
}

// Formatting signs inside the Arabic blocks (number sign, footnote marker,
// letter mark, end of ayah, ...) that are neither letters nor marks.
fn is_arabic_format_char(c: char) -> bool {
    matches!(c, '\u{0600}'..='\u{0605}' | '\u{061C}' | '\u{06DD}' | '\u{06DE}' | '\u{08E2}')
}

fn in_arabic_blocks(c: char) -> bool {
    matches!(c,
        '\u{0600}'..='\u{06FF}'
        | '\u{0750}'..='\u{077F}'
        | '\u{08A0}'..='\u{08FF}'
        | '\u{FB50}'..='\u{FDFF}'
        | '\u{FE70}'..='\u{FEFF}'
    )
}

/// Arabic-script letter (excludes digits, marks, tatweel, punctuation,
/// and formatting signs that share the Arabic blocks).
pub fn is_arabic_letter(c: char) -> bool {
    in_arabic_blocks(c)
        && c != TATWEEL
        && !is_arabic_diacritic(c)
        && !is_arabic_indic_digit(c)
        && !is_arabic_punct(c)
        && !is_arabic_format_char(c)
}

// Common non-ASCII punctuation: general punctuation block, guillemets,
// inverted marks. The special-character rule catches anything missed here.
fn is_other_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c, '\u{2000}'..='\u{206F}' | '\u{00AB}' | '\u{00BB}' | '\u{00A1}' | '\u{00BF}')
}

/// The six cleaning rules in their fixed application order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleaningRule {
    Urls,
    NonArabic,
    Punctuation,
    SpecialChars,
    SingleLetters,
    Whitespace,
}

impl CleaningRule {
    pub const ALL: [CleaningRule; 6] = [
        CleaningRule::Urls,
        CleaningRule::NonArabic,
        CleaningRule::Punctuation,
        CleaningRule::SpecialChars,
        CleaningRule::SingleLetters,
        CleaningRule::Whitespace,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CleaningRule::Urls => "urls",
            CleaningRule::NonArabic => "non_arabic",
            CleaningRule::Punctuation => "punctuation",
            CleaningRule::SpecialChars => "special_chars",
            CleaningRule::SingleLetters => "single_letters",
            CleaningRule::Whitespace => "whitespace",
        }
    }

    pub fn parse(name: &str) -> Option<CleaningRule> {
        CleaningRule::ALL.iter().copied().find(|r| r.name() == name)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown cleaning rule {0:?}; known rules: urls, non_arabic, punctuation, special_chars, single_letters, whitespace")]
pub struct UnknownRule(pub String);

/// Which cleaning rules are active. All rules are on by default; the
/// application order is fixed regardless of toggles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaningRuleSet {
    enabled: [bool; 6],
}

impl Default for CleaningRuleSet {
    fn default() -> Self {
        CleaningRuleSet { enabled: [true; 6] }
    }
}

impl CleaningRuleSet {
    /// Full rule set minus the named rules.
    pub fn without(disabled: &[String]) -> Result<Self, UnknownRule> {
        let mut set = CleaningRuleSet::default();
        for name in disabled {
            let rule = CleaningRule::parse(name).ok_or_else(|| UnknownRule(name.clone()))?;
            set.enabled[rule as usize] = false;
        }
        Ok(set)
    }

    pub fn is_enabled(&self, rule: CleaningRule) -> bool {
        self.enabled[rule as usize]
    }
}

/// Normalization toggles. Alef folding, tatweel removal, and diacritic
/// removal are always applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NormalizeOptions {
    pub fold_ta_marbuta: bool,
    pub fold_alef_maqsura: bool,
}

/// A configured cleaning + normalization pipeline.
#[derive(Debug, Clone, Default)]
pub struct Preprocessor {
    pub rules: CleaningRuleSet,
    pub normalize: NormalizeOptions,
}

impl Preprocessor {
    pub fn preprocess(&self, text: &str) -> String {
        normalize_with(&clean(text, &self.rules), &self.normalize)
    }
}

// Length of a token counted in letter-bearing characters: diacritics and
// tatweel do not count, so "بِ" is still a single-letter token.
fn token_letter_len(token: &str) -> usize {
    token
        .chars()
        .filter(|&c| !is_arabic_diacritic(c) && c != TATWEEL)
        .count()
}

/// Apply the active cleaning rules in their fixed order.
///
/// With the full rule set the output contains only Arabic-script
/// characters, Arabic-Indic digits, and single spaces, with no
/// single-letter tokens and no leading or trailing whitespace.
pub fn clean(text: &str, rules: &CleaningRuleSet) -> String {
    let mut out: String = if rules.is_enabled(CleaningRule::Urls) {
        URL_RE.replace_all(text, " ").into_owned()
    } else {
        text.to_owned()
    };

    let char_rules: [(CleaningRule, fn(char) -> bool); 3] = [
        (CleaningRule::NonArabic, |c| {
            c.is_alphanumeric() && !is_arabic_letter(c) && !is_arabic_indic_digit(c)
        }),
        (CleaningRule::Punctuation, |c| {
            is_arabic_punct(c) || is_other_punct(c)
        }),
        (CleaningRule::SpecialChars, |c| {
            !is_arabic_letter(c)
                && !is_arabic_diacritic(c)
                && c != TATWEEL
                && !is_arabic_indic_digit(c)
                && !c.is_whitespace()
        }),
    ];
    for (rule, hits) in char_rules {
        if rules.is_enabled(rule) {
            out = out.chars().map(|c| if hits(c) { ' ' } else { c }).collect();
        }
    }

    if rules.is_enabled(CleaningRule::SingleLetters) {
        out = out
            .split_whitespace()
            .filter(|tok| token_letter_len(tok) > 1)
            .collect::<Vec<_>>()
            .join(" ");
    } else if rules.is_enabled(CleaningRule::Whitespace) {
        out = out.split_whitespace().collect::<Vec<_>>().join(" ");
    }
    out
}

/// Normalize cleaned text: fold alef variants to bare alef, strip
/// tatweel and diacritics, plus the optional ta-marbuta and alef-maqsura
/// folds. Idempotent.
pub fn normalize_with(text: &str, opts: &NormalizeOptions) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c == TATWEEL || is_arabic_diacritic(c) {
            continue;
        }
        let folded = match c {
            '\u{0623}' | '\u{0625}' | '\u{0622}' => '\u{0627}',
            '\u{0629}' if opts.fold_ta_marbuta => '\u{0647}',
            '\u{0649}' if opts.fold_alef_maqsura => '\u{064A}',
            other => other,
        };
        out.push(folded);
    }
    out
}

/// Normalize with the default toggles.
pub fn normalize(text: &str) -> String {
    normalize_with(text, &NormalizeOptions::default())
}

/// Full pipeline with the default rule set: clean, then normalize.
pub fn preprocess(text: &str) -> String {
    Preprocessor::default().preprocess(text)
}

/// Whitespace-token count of a (preprocessed) text.
pub fn token_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Reference list of frequent Arabic stop words, in normalized form.
/// Used by the stop-word preservation property and the synthetic text
/// generators; the pipeline itself never removes them.
pub const STOP_WORDS: &[&str] = &[
    "في",
    "من",
    "على",
    "الى",
    "عن",
    "ان",
    "كان",
    "هذا",
    "هذه",
    "التي",
    "الذي",
    "مع",
    "بعد",
    "قبل",
    "حتى",
    "لكن",
];
