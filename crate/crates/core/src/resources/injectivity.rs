//! Static reversibility check.
//!
//! Every string the mapper can emit for a word group is built from a finite
//! set of segments: one head segment (function word, bare sense, or sense
//! with a suffix template applied) followed by zero or more attached
//! segments (auxiliaries and postpositions). Output inverts uniquely iff
//! (a) no two distinct source forms share a head rendering and (b) no
//! sequence of rendered words splits into head and attached segments in two
//! different ways. (b) is a dangling-suffix search in the style of
//! Sardinas–Patterson over the alphabet of rendered words.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use indexmap::IndexMap;

use super::{Pos, ResourceSet};
use crate::mapper::expand_tam;
use crate::notation::Alternative;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Head,
    Attached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Function {
        word: String,
    },
    Bare {
        stem: String,
        pos: Pos,
        sense: usize,
    },
    Inflected {
        stem: String,
        pos: Pos,
        sense: usize,
        suffix: usize,
    },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Function { word } => write!(f, "function {word}"),
            Origin::Bare { stem, pos, sense } => write!(f, "{stem}({pos}) sense {}", sense + 1),
            Origin::Inflected {
                stem,
                pos,
                sense,
                suffix,
            } => {
                write!(
                    f,
                    "{stem}({pos}) sense {} + suffix #{}",
                    sense + 1,
                    suffix + 1
                )
            }
        }
    }
}

/// One renderable segment and the source form it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedItem {
    pub slot: Slot,
    pub rendered: Alternative,
    pub text: String,
    pub source: String,
    pub origin: Origin,
}

/// Enumerates every segment the mapper can produce for `rs`.
pub fn enumerate_units(rs: &ResourceSet) -> Vec<RenderedItem> {
    let mut items = Vec::new();
    let mut push = |slot, rendered: Alternative, source: String, origin| {
        let text = rendered.to_string();
        items.push(RenderedItem {
            slot,
            rendered,
            text,
            source,
            origin,
        });
    };
    for f in rs.function_entries() {
        let origin = Origin::Function {
            word: f.source_word.clone(),
        };
        push(
            Slot::Head,
            f.rendered(),
            f.source_word.clone(),
            origin.clone(),
        );
        if rs.group_kind(&f.source_word).is_some() {
            push(Slot::Attached, f.rendered(), f.source_word.clone(), origin);
        }
    }
    for entry in rs.lex_entries() {
        for (i, sense) in entry.senses.iter().enumerate() {
            let origin = Origin::Bare {
                stem: entry.source_stem.clone(),
                pos: entry.pos,
                sense: i,
            };
            push(Slot::Head, sense.clone(), entry.source_stem.clone(), origin);
        }
    }
    for (si, suffix) in rs.suffixes().iter().enumerate() {
        for entry in rs.lex_entries().filter(|e| e.pos == suffix.applies_to) {
            let source = format!("{}{}", entry.source_stem, suffix.source_suffix);
            for (i, sense) in entry.senses.iter().enumerate() {
                // expandability is checked when the set is built
                let Ok(expanded) = expand_tam(sense, suffix) else {
                    continue;
                };
                let origin = Origin::Inflected {
                    stem: entry.source_stem.clone(),
                    pos: entry.pos,
                    sense: i,
                    suffix: si,
                };
                push(Slot::Head, expanded, source.clone(), origin);
            }
        }
    }
    items
}

/// Distinct source forms rendering to the same head segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub rendered: String,
    pub sources: Vec<String>,
    pub origins: Vec<Origin>,
}

/// A rendered word sequence that splits into segments in two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub rendered: String,
    pub readings: [Vec<String>; 2],
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InjectivityReport {
    pub collisions: Vec<Collision>,
    pub ambiguities: Vec<Ambiguity>,
}

impl InjectivityReport {
    pub fn is_empty(&self) -> bool {
        self.collisions.is_empty() && self.ambiguities.is_empty()
    }
}

impl fmt::Display for InjectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.collisions {
            let origins: Vec<String> = c.origins.iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "collision: {} <- {} ({})",
                c.rendered,
                c.sources.join(", "),
                origins.join("; ")
            )?;
        }
        for a in &self.ambiguities {
            writeln!(
                f,
                "ambiguous segmentation: {} <- {} | {}",
                a.rendered,
                a.readings[0].join(" "),
                a.readings[1].join(" ")
            )?;
        }
        Ok(())
    }
}

pub fn validate_injectivity(rs: &ResourceSet) -> InjectivityReport {
    let items = enumerate_units(rs);

    let mut by_text: IndexMap<&str, Vec<&RenderedItem>> = IndexMap::new();
    for item in items.iter().filter(|i| i.slot == Slot::Head) {
        by_text.entry(item.text.as_str()).or_default().push(item);
    }
    let mut collisions = Vec::new();
    for (text, group) in &by_text {
        let mut sources: Vec<String> = Vec::new();
        let mut origins = Vec::new();
        for item in group {
            if !sources.contains(&item.source) {
                sources.push(item.source.clone());
                origins.push(item.origin.clone());
            }
        }
        if sources.len() > 1 {
            collisions.push(Collision {
                rendered: text.to_string(),
                sources,
                origins,
            });
        }
    }

    let heads = codewords(&items, Slot::Head);
    let attached = codewords(&items, Slot::Attached);
    let ambiguities = segmentation_ambiguities(&heads, &attached);

    InjectivityReport {
        collisions,
        ambiguities,
    }
}

struct Codeword {
    words: Vec<String>,
    source: String,
}

fn codewords(items: &[RenderedItem], slot: Slot) -> Vec<Codeword> {
    let mut seen = HashSet::new();
    items
        .iter()
        .filter(|i| i.slot == slot && seen.insert(i.text.clone()))
        .map(|i| Codeword {
            words: i.rendered.words.iter().map(ToString::to_string).collect(),
            source: i.source.clone(),
        })
        .collect()
}

/// Search state: `ahead` has consumed `dangling` more words than `behind`;
/// both continue with attached segments only.
struct State {
    dangling: Vec<String>,
    text: Vec<String>,
    ahead: Vec<String>,
    behind: Vec<String>,
}

fn segmentation_ambiguities(heads: &[Codeword], attached: &[Codeword]) -> Vec<Ambiguity> {
    let mut queue = VecDeque::new();
    for short in heads {
        for long in heads {
            if long.words.len() > short.words.len() && long.words.starts_with(&short.words) {
                queue.push_back(State {
                    dangling: long.words[short.words.len()..].to_vec(),
                    text: long.words.clone(),
                    ahead: vec![long.source.clone()],
                    behind: vec![short.source.clone()],
                });
            }
        }
    }

    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut found: Vec<Ambiguity> = Vec::new();
    let mut reported: HashSet<String> = HashSet::new();
    while let Some(state) = queue.pop_front() {
        if !seen.insert(state.dangling.clone()) {
            continue;
        }
        for a in attached {
            let mut behind = state.behind.clone();
            behind.push(a.source.clone());
            let d = &state.dangling;
            if a.words == *d {
                let rendered = state.text.join("_");
                if reported.insert(rendered.clone()) {
                    found.push(Ambiguity {
                        rendered,
                        readings: [state.ahead.clone(), behind],
                    });
                }
            } else if d.starts_with(&a.words) {
                queue.push_back(State {
                    dangling: d[a.words.len()..].to_vec(),
                    text: state.text.clone(),
                    ahead: state.ahead.clone(),
                    behind,
                });
            } else if a.words.starts_with(d) {
                let rest = a.words[d.len()..].to_vec();
                let mut text = state.text.clone();
                text.extend(rest.iter().cloned());
                queue.push_back(State {
                    dangling: rest,
                    text,
                    ahead: behind,
                    behind: state.ahead.clone(),
                });
            }
        }
    }
    found
}
