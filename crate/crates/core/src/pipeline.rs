//! End-to-end transduction, interlinear traces and the random sentence
//! generator used by the round-trip properties.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analyzer::{analyze, tokenize, Analysis, Token};
use crate::grouper::{apply_filters, group, AnalyzedToken, FilterOutcome};
use crate::inverter::{build_reverse_index, invert_text, InvertError, NotInjective, ReverseIndex};
use crate::mapper::{map_group, Provenance};
use crate::resources::{FilterRule, ResourceSet};

/// A validated resource set together with its reverse index.
#[derive(Debug, Clone)]
pub struct Engine {
    resources: ResourceSet,
    index: ReverseIndex,
}

impl Engine {
    /// Refuses resource sets that fail the injectivity check.
    pub fn new(resources: ResourceSet) -> Result<Engine, NotInjective> {
        let index = build_reverse_index(&resources)?;
        Ok(Engine { resources, index })
    }

    pub fn resources(&self) -> &ResourceSet {
        &self.resources
    }

    pub fn index(&self) -> &ReverseIndex {
        &self.index
    }

    pub fn transduce(&self, text: &str) -> Transduction {
        transduce(text, self)
    }

    pub fn invert(&self, output: &str) -> Result<String, InvertError> {
        invert_text(output, &self.index)
    }
}

/// Everything the pipeline decided for one word group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    pub tokens: Vec<Token>,
    /// Head readings before filtering.
    pub analyses: Vec<Analysis>,
    pub filters: Vec<(FilterRule, FilterOutcome)>,
    pub provenance: Vec<Provenance>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTrace {
    pub groups: Vec<GroupRecord>,
    pub output: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransductionTrace {
    pub sentences: Vec<SentenceTrace>,
}

impl TransductionTrace {
    pub fn records(&self) -> impl Iterator<Item = &GroupRecord> {
        self.sentences.iter().flat_map(|s| s.groups.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transduction {
    pub output: String,
    pub trace: TransductionTrace,
}

fn transduce_line(line: &str, engine: &Engine) -> SentenceTrace {
    let rs = &engine.resources;
    let analyzed: Vec<AnalyzedToken> = tokenize(line)
        .into_iter()
        .map(|token| AnalyzedToken {
            analyses: analyze(&token, rs),
            token,
        })
        .collect();
    let groups = group(&analyzed, rs);
    let before: Vec<Vec<Analysis>> = groups.iter().map(|g| g.head_analyses.clone()).collect();
    let (groups, events) = apply_filters(groups, rs);

    let mut records: Vec<GroupRecord> = groups
        .iter()
        .zip(before)
        .map(|(g, analyses)| {
            let mapped = map_group(g, rs);
            GroupRecord {
                tokens: g.tokens.clone(),
                analyses,
                filters: Vec::new(),
                provenance: mapped.provenance,
                unit: mapped.unit.to_string(),
            }
        })
        .collect();
    for event in events {
        let rule = rs.filters()[event.rule].clone();
        records[event.group].filters.push((rule, event.outcome));
    }
    let units: Vec<&str> = records.iter().map(|r| r.unit.as_str()).collect();
    let output = units.join(" ");
    SentenceTrace {
        groups: records,
        output,
    }
}

/// Transduces text line by line; each line is one sentence.
pub fn transduce(text: &str, engine: &Engine) -> Transduction {
    let sentences: Vec<SentenceTrace> = text
        .split('\n')
        .map(|line| transduce_line(line, engine))
        .collect();
    let outputs: Vec<&str> = sentences.iter().map(|s| s.output.as_str()).collect();
    Transduction {
        output: outputs.join("\n"),
        trace: TransductionTrace { sentences },
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

impl fmt::Display for SentenceTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<[String; 3]> = self
            .groups
            .iter()
            .map(|g| {
                let src: Vec<&str> = g.tokens.iter().map(|t| t.surface.as_str()).collect();
                let ana: Vec<String> = g.analyses.iter().map(ToString::to_string).collect();
                let ana = if ana.is_empty() {
                    "-".to_string()
                } else {
                    ana.join("|")
                };
                [src.join(" "), ana, g.unit.clone()]
            })
            .collect();
        let widths: Vec<usize> = cells
            .iter()
            .map(|c| c.iter().map(|s| width(s)).max().unwrap_or(0))
            .collect();
        for (row, label) in ["S:", "A:", "@:"].iter().enumerate() {
            let mut line = label.to_string();
            for (cell, w) in cells.iter().zip(&widths) {
                line.push(' ');
                line.push_str(&cell[row]);
                line.push_str(&" ".repeat(w - width(&cell[row])));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        for (i, g) in self.groups.iter().enumerate() {
            for (rule, outcome) in &g.filters {
                match outcome {
                    FilterOutcome::Applied { removed } => {
                        writeln!(f, "F: group {i}: {rule} (removed {removed})")?
                    }
                    FilterOutcome::Skipped => writeln!(
                        f,
                        "W: group {i}: {rule} would remove every reading; skipped"
                    )?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TransductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sentences.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("resources have no lexical or function entries to sample from")]
    NoVocabulary,
    #[error("max_len must be at least 1")]
    ZeroLength,
}

/// Samples a sentence of 1..=`max_len` word groups over the resourced
/// vocabulary. The same seed always yields the same sentence.
pub fn generate_sentence(
    rs: &ResourceSet,
    seed: u64,
    max_len: usize,
) -> Result<String, GenerateError> {
    if max_len == 0 {
        return Err(GenerateError::ZeroLength);
    }
    let lexicon: Vec<_> = rs.lex_entries().collect();
    let functions: Vec<_> = rs.function_entries().collect();
    if lexicon.is_empty() && functions.is_empty() {
        return Err(GenerateError::NoVocabulary);
    }
    let rules = rs.group_rules();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = rng.random_range(1..=max_len);
    let mut words: Vec<String> = Vec::with_capacity(groups * 2);
    for _ in 0..groups {
        let pick = rng.random_range(0..lexicon.len() + functions.len());
        if pick < lexicon.len() {
            let entry = lexicon[pick];
            let suffixes: Vec<_> = rs
                .suffixes()
                .iter()
                .filter(|s| s.applies_to == entry.pos)
                .collect();
            if !suffixes.is_empty() && rng.random_bool(0.5) {
                let s = suffixes[rng.random_range(0..suffixes.len())];
                words.push(format!("{}{}", entry.source_stem, s.source_suffix));
            } else {
                words.push(entry.source_stem.clone());
            }
        } else {
            words.push(functions[pick - lexicon.len()].source_word.clone());
        }
        if !rules.is_empty() && rng.random_bool(1.0 / 3.0) {
            words.push(rules[rng.random_range(0..rules.len())].word.clone());
        }
    }
    Ok(words.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(text: &str) -> Engine {
        Engine::new(ResourceSet::parse(text, "test").unwrap()).unwrap()
    }

    #[test]
    fn empty_text() {
        let e = engine("[lexicon]\nrAma\tpn\tRam\n");
        let t = e.transduce("");
        assert_eq!(t.output, "");
        assert_eq!(t.trace.records().count(), 0);
    }

    #[test]
    fn refuses_unvalidated_resources() {
        let rs = ResourceSet::parse("[function]\nA\tvaHa\t0\t0\nadi\tvaHa\t0\t0\n", "x").unwrap();
        assert!(Engine::new(rs).is_err());
    }

    #[test]
    fn one_unit_per_group_in_order() {
        let e = engine(
            "[lexicon]\nrAma\tpn\tRam\nroTI\tn\tbread\nkhAtA\tv\teats\nkhAtA\tn\tledger\n[function]\nHE\tis\t0\t0\n[group]\naux\tHE\n",
        );
        let t = e.transduce("rAma roTI khAtA HE .");
        assert_eq!(t.output, "Ram bread eats_is/ledger_is .");
        let units: Vec<&str> = t.trace.records().map(|r| r.unit.as_str()).collect();
        assert_eq!(units.join(" "), t.output);
        assert_eq!(e.invert(&t.output).unwrap(), "rAma roTI khAtA HE .");
    }

    #[test]
    fn lines_stay_separate() {
        let e =
            engine("[lexicon]\nrAma\tpn\tRam\n[function]\nne\terg.\t0\t0\n[group]\npostp\tne\n");
        let t = e.transduce("rAma\nne rAma");
        assert_eq!(t.output, "Ram\nerg. Ram");
        assert_eq!(t.trace.sentences.len(), 2);
    }

    #[test]
    fn trace_is_interlinear() {
        let e = engine(
            "[lexicon]\napanA\tpn\this\nkhAtA\tv\teats\nkhAtA\tn\tledger\n[filter]\nkhAtA\tafter:apanA\tkeep:n\n",
        );
        let t = e.transduce("apanA khAtA");
        let text = t.trace.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "S: apanA     khAtA");
        assert_eq!(lines[1], "A: apanA[pn] khAtA[v]|khAtA[n]");
        assert_eq!(lines[2], "@: his       ledger");
        assert_eq!(lines[3], "F: group 1: khAtA after:apanA keep:n (removed 1)");
    }

    #[test]
    fn generator_forced_outcome() {
        let rs = ResourceSet::parse("[lexicon]\nrAma\tpn\tRam\n", "x").unwrap();
        assert_eq!(generate_sentence(&rs, 0, 1).unwrap(), "rAma");
    }

    #[test]
    fn generator_is_deterministic() {
        let rs = ResourceSet::parse(
            "[lexicon]\na\tn\tx\nb\tv\ty\n[suffix]\nc\tv\tc\tz\n[function]\nd\tw\t0\t0\n[group]\naux\td\n",
            "x",
        )
        .unwrap();
        for seed in 0..50 {
            assert_eq!(
                generate_sentence(&rs, seed, 8),
                generate_sentence(&rs, seed, 8)
            );
        }
    }

    #[test]
    fn generator_needs_vocabulary() {
        let rs = ResourceSet::parse("[group]\naux\tHE\n", "x").unwrap();
        assert_eq!(
            generate_sentence(&rs, 0, 3),
            Err(GenerateError::NoVocabulary)
        );
    }
}
