use std::fmt;

use super::{FilterRule, Pos, ResourceSet};
use crate::analyzer::{analyze, tokenize, Token};
use crate::corpus::GoldCorpus;
use crate::grouper::{group, rule_fires, AnalyzedToken, WordGroupKind};

/// A filter firing whose kept part of speech disagrees with the gold
/// annotation, or that fires on an unannotated occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterViolation {
    pub corpus_line: usize,
    pub token_index: usize,
    pub rule: FilterRule,
    pub gold: Option<Pos>,
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gold {
            Some(gold) => write!(
                f,
                "corpus line {}, token {}: rule {} keeps {} but gold is {gold}",
                self.corpus_line, self.token_index, self.rule, self.rule.keep
            ),
            None => write!(
                f,
                "corpus line {}, token {}: rule {} fires on an occurrence with no gold annotation",
                self.corpus_line, self.token_index, self.rule
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilterReport {
    pub violations: Vec<FilterViolation>,
}

impl FilterReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every filter firing on the corpus against its gold part of speech.
pub fn validate_filters(rs: &ResourceSet, corpus: &GoldCorpus) -> FilterReport {
    let mut violations = Vec::new();
    for entry in &corpus.entries {
        let analyzed: Vec<AnalyzedToken> = tokenize(&entry.source)
            .into_iter()
            .map(|token| AnalyzedToken {
                analyses: analyze(&token, rs),
                token,
            })
            .collect();
        let groups = group(&analyzed, rs);
        let tokens: Vec<&Token> = analyzed.iter().map(|a| &a.token).collect();
        for g in groups
            .iter()
            .filter(|g| g.kind != WordGroupKind::Punctuation)
        {
            let head = g.head().index;
            for rule in rs.filters() {
                if !rule_fires(rule, &tokens, head) {
                    continue;
                }
                let gold = entry.gold_pos(head);
                if gold != Some(rule.keep) {
                    violations.push(FilterViolation {
                        corpus_line: entry.line,
                        token_index: head,
                        rule: rule.clone(),
                        gold,
                    });
                }
            }
        }
    }
    FilterReport { violations }
}
