//! Word-group level: attaches auxiliaries and postpositions to the group
//! before them, then prunes head readings with context filters.

use std::fmt;

use crate::analyzer::{Analysis, Token, TokenKind};
use crate::resources::{Condition, FilterRule, GroupKind, ResourceSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordGroupKind {
    NounGroup,
    VerbGroup,
    Singleton,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzedToken {
    pub token: Token,
    pub analyses: Vec<Analysis>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordGroup {
    /// Head first, then attached tokens, contiguous in sentence order.
    pub tokens: Vec<Token>,
    /// Surviving readings of the head; empty only for punctuation groups.
    pub head_analyses: Vec<Analysis>,
    pub attached: Vec<(Token, GroupKind)>,
    pub kind: WordGroupKind,
}

impl WordGroup {
    pub fn head(&self) -> &Token {
        &self.tokens[0]
    }
}

/// Greedy left-to-right grouping. A token listed in a group rule joins the
/// immediately preceding word group; with no such group it stands alone.
pub fn group(tokens: &[AnalyzedToken], rs: &ResourceSet) -> Vec<WordGroup> {
    let mut groups: Vec<WordGroup> = Vec::new();
    for at in tokens {
        let token = at.token.clone();
        if token.kind == TokenKind::Punctuation {
            groups.push(WordGroup {
                tokens: vec![token],
                head_analyses: Vec::new(),
                attached: Vec::new(),
                kind: WordGroupKind::Punctuation,
            });
            continue;
        }
        if let Some(role) = rs.group_kind(&token.surface) {
            if let Some(prev) = groups
                .last_mut()
                .filter(|g| g.kind != WordGroupKind::Punctuation)
            {
                if prev.attached.is_empty() {
                    prev.kind = match role {
                        GroupKind::Auxiliary => WordGroupKind::VerbGroup,
                        GroupKind::Postposition => WordGroupKind::NounGroup,
                    };
                }
                prev.tokens.push(token.clone());
                prev.attached.push((token, role));
                continue;
            }
        }
        groups.push(WordGroup {
            tokens: vec![token],
            head_analyses: at.analyses.clone(),
            attached: Vec::new(),
            kind: WordGroupKind::Singleton,
        });
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterOutcome {
    /// The rule fired and removed this many readings (possibly zero).
    Applied { removed: usize },
    /// The rule fired but would have removed every reading; nothing changed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterEvent {
    /// Index of the group in sentence order.
    pub group: usize,
    /// Index of the rule in [`ResourceSet::filters`].
    pub rule: usize,
    pub outcome: FilterOutcome,
}

impl fmt::Display for FilterEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            FilterOutcome::Applied { removed } => {
                write!(
                    f,
                    "group {}: rule {} removed {removed}",
                    self.group, self.rule
                )
            }
            FilterOutcome::Skipped => write!(
                f,
                "warning: group {}: rule {} would remove every reading; skipped",
                self.group, self.rule
            ),
        }
    }
}

/// True if `rule` fires on the token at `head` within `tokens` (sentence order).
pub fn rule_fires(rule: &FilterRule, tokens: &[&Token], head: usize) -> bool {
    let token = tokens[head];
    if token.kind != TokenKind::Word || token.surface != rule.subject_word {
        return false;
    }
    let neighbor = match &rule.condition {
        Condition::After(w) => head.checked_sub(1).map(|i| (i, w)),
        Condition::Before(w) => Some((head + 1, w)),
    };
    neighbor.is_some_and(|(i, w)| {
        tokens
            .get(i)
            .is_some_and(|t| t.kind == TokenKind::Word && &t.surface == w)
    })
}

/// Applies every filter rule, in rule order, to every group head.
pub fn apply_filters(
    groups: Vec<WordGroup>,
    rs: &ResourceSet,
) -> (Vec<WordGroup>, Vec<FilterEvent>) {
    let mut groups = groups;
    let mut events = Vec::new();
    let heads: Vec<usize> = {
        let mut pos = 0;
        groups
            .iter()
            .map(|g| {
                let h = pos;
                pos += g.tokens.len();
                h
            })
            .collect()
    };
    let flat: Vec<Token> = groups
        .iter()
        .flat_map(|g| g.tokens.iter().cloned())
        .collect();
    let refs: Vec<&Token> = flat.iter().collect();

    for (gi, group) in groups.iter_mut().enumerate() {
        if group.kind == WordGroupKind::Punctuation {
            continue;
        }
        for (ri, rule) in rs.filters().iter().enumerate() {
            if !rule_fires(rule, &refs, heads[gi]) {
                continue;
            }
            let kept = group
                .head_analyses
                .iter()
                .filter(|a| a.pos == Some(rule.keep))
                .count();
            let outcome = if kept == 0 {
                FilterOutcome::Skipped
            } else {
                let removed = group.head_analyses.len() - kept;
                group.head_analyses.retain(|a| a.pos == Some(rule.keep));
                FilterOutcome::Applied { removed }
            };
            events.push(FilterEvent {
                group: gi,
                rule: ri,
                outcome,
            });
        }
    }
    (groups, events)
}
