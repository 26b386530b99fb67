//! Recovers source text from engine output.
//!
//! The index is the same segment enumeration the injectivity check runs
//! over, turned around: rendered segment → source surface. A unit is
//! decoded by splitting each alternative into one head segment plus zero or
//! more attached segments; every alternative must decode to the same
//! source tokens.

use std::collections::HashMap;

use thiserror::Error;

use crate::notation::{parse_unit, Base, Marker, NotationError, OutputWord};
use crate::resources::{
    enumerate_units, is_punctuation_run, validate_injectivity, InjectivityReport, ResourceSet, Slot,
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReverseIndex {
    heads: HashMap<String, String>,
    attached: HashMap<String, String>,
    max_head_words: usize,
    max_attached_words: usize,
}

#[derive(Debug, Error)]
#[error("resources are not injective:\n{0}")]
pub struct NotInjective(pub InjectivityReport);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvertError {
    #[error("unit {unit:?}: {source}")]
    Syntax {
        unit: String,
        #[source]
        source: NotationError,
    },
    #[error("unit {unit:?} is not produced by these resources (alternative {alternative:?})")]
    NotInIndex { unit: String, alternative: String },
    #[error("alternatives of unit {unit:?} invert to different sources: {}", readings.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join(" | "))]
    Inconsistent {
        unit: String,
        readings: Vec<Vec<String>>,
    },
}

impl ReverseIndex {
    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    /// Source surface for a rendered head segment.
    pub fn head(&self, rendered: &str) -> Option<&str> {
        self.heads.get(rendered).map(String::as_str)
    }

    pub fn attached(&self, rendered: &str) -> Option<&str> {
        self.attached.get(rendered).map(String::as_str)
    }
}

pub fn build_reverse_index(rs: &ResourceSet) -> Result<ReverseIndex, NotInjective> {
    let report = validate_injectivity(rs);
    if !report.is_empty() {
        return Err(NotInjective(report));
    }
    let mut index = ReverseIndex::default();
    for item in enumerate_units(rs) {
        let n = item.rendered.words.len();
        match item.slot {
            Slot::Head => {
                index.max_head_words = index.max_head_words.max(n);
                index.heads.insert(item.text, item.source);
            }
            Slot::Attached => {
                index.max_attached_words = index.max_attached_words.max(n);
                index.attached.insert(item.text, item.source);
            }
        }
    }
    Ok(index)
}

/// A `#`-marked word stands for itself.
fn passthrough(word: &OutputWord) -> Option<String> {
    match (&word.base, word.marker, word.annotation.is_empty()) {
        (Base::Plain(s), Marker::Unknown, true) => Some(s.clone()),
        _ => None,
    }
}

struct Decoder<'a> {
    index: &'a ReverseIndex,
    words: &'a [OutputWord],
    rendered: Vec<String>,
}

impl Decoder<'_> {
    fn segment(&self, start: usize, len: usize, slot: Slot) -> Option<String> {
        if len == 1 {
            if let Some(s) = passthrough(&self.words[start]) {
                return Some(s);
            }
        }
        let key = self.rendered[start..start + len].join("_");
        let table = match slot {
            Slot::Head => &self.index.heads,
            Slot::Attached => &self.index.attached,
        };
        table.get(&key).cloned()
    }

    /// Distinct readings of `words[start..]`, stopping once two are found.
    fn readings(&self, start: usize, slot: Slot, out: &mut Vec<Vec<String>>) {
        let n = self.words.len();
        let max = match slot {
            Slot::Head => self.index.max_head_words.max(1),
            Slot::Attached => self.index.max_attached_words.max(1),
        };
        for len in 1..=max.min(n - start) {
            let Some(source) = self.segment(start, len, slot) else {
                continue;
            };
            if start + len == n {
                push_distinct(out, vec![source]);
            } else {
                let mut rest = Vec::new();
                self.readings(start + len, Slot::Attached, &mut rest);
                for mut r in rest {
                    r.insert(0, source.clone());
                    push_distinct(out, r);
                }
            }
            if out.len() > 1 {
                return;
            }
        }
    }
}

fn push_distinct(out: &mut Vec<Vec<String>>, reading: Vec<String>) {
    if !out.contains(&reading) {
        out.push(reading);
    }
}

/// Source tokens for one whitespace-delimited output unit.
pub fn invert_unit(unit: &str, index: &ReverseIndex) -> Result<Vec<String>, InvertError> {
    if is_punctuation_run(unit) {
        return Ok(vec![unit.to_string()]);
    }
    let parsed = parse_unit(unit).map_err(|source| InvertError::Syntax {
        unit: unit.to_string(),
        source,
    })?;
    let mut all: Vec<Vec<String>> = Vec::new();
    for alt in &parsed.alternatives {
        let decoder = Decoder {
            index,
            words: &alt.words,
            rendered: alt.words.iter().map(ToString::to_string).collect(),
        };
        let mut found = Vec::new();
        decoder.readings(0, Slot::Head, &mut found);
        if found.is_empty() {
            return Err(InvertError::NotInIndex {
                unit: unit.to_string(),
                alternative: alt.to_string(),
            });
        }
        for r in found {
            push_distinct(&mut all, r);
        }
    }
    if all.len() > 1 {
        return Err(InvertError::Inconsistent {
            unit: unit.to_string(),
            readings: all,
        });
    }
    Ok(all.remove(0))
}

fn invert_line(line: &str, index: &ReverseIndex) -> Result<String, InvertError> {
    let mut tokens = Vec::new();
    for unit in line.split_whitespace() {
        tokens.extend(invert_unit(unit, index)?);
    }
    Ok(tokens.join(" "))
}

/// Inverts engine output line by line; tokens are joined by single spaces.
pub fn invert_text(output: &str, index: &ReverseIndex) -> Result<String, InvertError> {
    let lines = output
        .split('\n')
        .map(|line| invert_line(line, index))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(lines.join("\n"))
}
