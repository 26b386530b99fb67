//! Declarative mapping knowledge for one language pair.
//!
//! A [`ResourceSet`] is loaded from a line-oriented, TAB-separated file with
//! five sections (`[lexicon]`, `[suffix]`, `[function]`, `[group]`,
//! `[filter]`). Senses and templates are stored in output notation. Once
//! built, a set is immutable; every constructor validates the per-entry
//! invariants, and [`validate_injectivity`] checks the set-wide one.

mod filters;
mod format;
mod injectivity;

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use indexmap::IndexMap;
use thiserror::Error;

use crate::notation::{Alternative, Marker, OutputWord};

pub use filters::{validate_filters, FilterReport, FilterViolation};
pub use injectivity::{
    enumerate_units, validate_injectivity, Ambiguity, Collision, InjectivityReport, Origin,
    RenderedItem, Slot,
};

/// Part-of-speech tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Pronoun,
    Function,
}

impl Pos {
    pub const ALL: [Pos; 6] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Adjective,
        Pos::Adverb,
        Pos::Pronoun,
        Pos::Function,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Pos::Noun => "n",
            Pos::Verb => "v",
            Pos::Adjective => "adj",
            Pos::Adverb => "adv",
            Pos::Pronoun => "pn",
            Pos::Function => "fn",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| format!("unknown part of speech {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub source_stem: String,
    pub pos: Pos,
    /// Target mappings in file order; each is a single notation alternative.
    pub senses: Vec<Alternative>,
    pub features: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixEntry {
    pub source_suffix: String,
    pub applies_to: Pos,
    pub tam_label: String,
    /// First word concatenates onto the inflected stem's last word.
    pub template: Alternative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionEntry {
    pub source_word: String,
    /// One or more `_`-joined plain words.
    pub target_base: String,
    pub annotation: Vec<String>,
    pub marker: Marker,
}

impl FunctionEntry {
    /// Output form: the target words with annotation and marker on the last one.
    pub fn rendered(&self) -> Alternative {
        let mut words: Vec<OutputWord> =
            self.target_base.split('_').map(OutputWord::plain).collect();
        if let Some(last) = words.last_mut() {
            last.annotation = self.annotation.clone();
            last.marker = self.marker;
        }
        Alternative::new(words)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Auxiliary,
    Postposition,
}

impl GroupKind {
    pub fn tag(self) -> &'static str {
        match self {
            GroupKind::Auxiliary => "aux",
            GroupKind::Postposition => "postp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRule {
    pub kind: GroupKind,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// The immediately preceding token is the word given.
    After(String),
    /// The immediately following token is the word given.
    Before(String),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::After(w) => write!(f, "after:{w}"),
            Condition::Before(w) => write!(f, "before:{w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRule {
    pub subject_word: String,
    pub condition: Condition,
    /// Analyses of the subject with any other part of speech are dropped.
    pub keep: Pos,
}

impl fmt::Display for FilterRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} keep:{}",
            self.subject_word, self.condition, self.keep
        )
    }
}

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("no sections found")]
    NoSections,
    #[error("line {line}: unknown section header [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("line {line} [{section}]: {reason}")]
    Malformed {
        line: usize,
        section: String,
        reason: String,
    },
    #[error("line {line} [{section}]: reserved character in source form {form:?}")]
    ReservedChar {
        line: usize,
        section: String,
        form: String,
    },
}

/// Immutable, per-entry-validated bundle of mapping knowledge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceSet {
    pair_id: String,
    lexicon: IndexMap<(String, Pos), LexEntry>,
    suffixes: Vec<SuffixEntry>,
    functions: IndexMap<String, FunctionEntry>,
    groups: Vec<GroupRule>,
    filters: Vec<FilterRule>,
    group_index: HashMap<String, GroupKind>,
    /// Lexicon positions per stem, ascending.
    stem_index: HashMap<String, Vec<usize>>,
}

impl ResourceSet {
    /// Loads a resource file; the pair id is the file stem (`tel-hin.anu` → `tel-hin`).
    pub fn load(path: impl AsRef<Path>) -> Result<ResourceSet, ResourceError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ResourceError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let pair_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        ResourceSet::parse(&text, &pair_id)
    }

    pub fn parse(text: &str, pair_id: &str) -> Result<ResourceSet, ResourceError> {
        format::parse(text, pair_id)
    }

    /// Serializes back to the resource file format.
    pub fn dump(&self) -> String {
        format::dump(self)
    }

    pub fn pair_id(&self) -> &str {
        &self.pair_id
    }

    pub fn lex_entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.lexicon.values()
    }

    pub fn lex_entry(&self, stem: &str, pos: Pos) -> Option<&LexEntry> {
        self.lexicon.get(&(stem.to_string(), pos))
    }

    /// All entries for `stem`, in file order.
    pub fn lex_entries_for(&self, stem: &str) -> Vec<&LexEntry> {
        self.stem_index
            .get(stem)
            .map(|ix| ix.iter().map(|&i| &self.lexicon[i]).collect())
            .unwrap_or_default()
    }

    pub fn suffixes(&self) -> &[SuffixEntry] {
        &self.suffixes
    }

    pub fn function_entries(&self) -> impl Iterator<Item = &FunctionEntry> {
        self.functions.values()
    }

    pub fn function(&self, word: &str) -> Option<&FunctionEntry> {
        self.functions.get(word)
    }

    pub fn group_rules(&self) -> &[GroupRule] {
        &self.groups
    }

    pub fn group_kind(&self, word: &str) -> Option<GroupKind> {
        self.group_index.get(word).copied()
    }

    pub fn filters(&self) -> &[FilterRule] {
        &self.filters
    }

    /// A copy of this set with its filter rules replaced.
    pub fn with_filters(&self, filters: Vec<FilterRule>) -> ResourceSet {
        ResourceSet {
            filters,
            ..self.clone()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lexicon.is_empty() && self.functions.is_empty()
    }
}

/// Sentence punctuation split off by the tokenizer and passed through verbatim.
pub const PUNCTUATION: [char; 4] = ['.', ',', '?', '!'];

pub(crate) fn is_punctuation_run(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| PUNCTUATION.contains(&c))
}
