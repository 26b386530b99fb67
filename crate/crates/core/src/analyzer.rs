//! Tokenization and morpheme-level analysis.

use std::fmt;

use crate::resources::{Pos, ResourceSet, PUNCTUATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    /// 0-based position in the sentence.
    pub index: usize,
    pub kind: TokenKind,
}

/// Splits pre-edited text on whitespace; leading and trailing `. , ? !`
/// become separate punctuation tokens, one per character.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut push = |surface: &str, kind| {
        let index = tokens.len();
        tokens.push(Token {
            surface: surface.to_string(),
            index,
            kind,
        });
    };
    for run in text.split_whitespace() {
        let after_lead = run.trim_start_matches(PUNCTUATION);
        let lead = &run[..run.len() - after_lead.len()];
        let word = after_lead.trim_end_matches(PUNCTUATION);
        let trail = &after_lead[word.len()..];
        for c in lead.chars() {
            push(c.encode_utf8(&mut [0; 4]), TokenKind::Punctuation);
        }
        if !word.is_empty() {
            push(word, TokenKind::Word);
        }
        for c in trail.chars() {
            push(c.encode_utf8(&mut [0; 4]), TokenKind::Punctuation);
        }
    }
    tokens
}

/// Tokens joined by single spaces: the canonical spacing of a sentence.
pub fn canonical(text: &str) -> String {
    let tokens = tokenize(text);
    let surfaces: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
    surfaces.join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalysisSource {
    Lexical,
    Function,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AppliedSuffix {
    /// Index into [`ResourceSet::suffixes`].
    pub index: usize,
    pub source_suffix: String,
    pub tam_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Analysis {
    pub stem: String,
    pub pos: Option<Pos>,
    pub suffix: Option<AppliedSuffix>,
    pub features: Vec<String>,
    pub source: AnalysisSource,
}

impl Analysis {
    pub fn unknown(surface: &str) -> Analysis {
        Analysis {
            stem: surface.to_string(),
            pos: None,
            suffix: None,
            features: Vec::new(),
            source: AnalysisSource::Unknown,
        }
    }

    /// The source surface this analysis accounts for.
    pub fn surface(&self) -> String {
        match &self.suffix {
            Some(s) => format!("{}{}", self.stem, s.source_suffix),
            None => self.stem.clone(),
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.stem)?;
        if let Some(s) = &self.suffix {
            write!(f, "+{}<{}>", s.source_suffix, s.tam_label)?;
        }
        match (self.source, self.pos) {
            (AnalysisSource::Unknown, _) => f.write_str("[?]"),
            (_, Some(pos)) => write!(f, "[{pos}]"),
            (_, None) => Ok(()),
        }
    }
}

/// Every reading of `token`: the function-word match, then whole-stem
/// lexical matches in file order, then stem+suffix splits with longer
/// suffixes first. A token with no reading gets the single unknown analysis.
pub fn analyze(token: &Token, rs: &ResourceSet) -> Vec<Analysis> {
    let surface = token.surface.as_str();
    let mut out = Vec::new();

    if let Some(f) = rs.function(surface) {
        out.push(Analysis {
            stem: surface.to_string(),
            pos: Some(Pos::Function),
            suffix: None,
            features: f.annotation.clone(),
            source: AnalysisSource::Function,
        });
    }

    for entry in rs.lex_entries_for(surface) {
        out.push(Analysis {
            stem: entry.source_stem.clone(),
            pos: Some(entry.pos),
            suffix: None,
            features: entry.features.clone(),
            source: AnalysisSource::Lexical,
        });
    }

    let mut suffixes: Vec<(usize, &crate::resources::SuffixEntry)> = rs
        .suffixes()
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            surface.len() > s.source_suffix.len() && surface.ends_with(&s.source_suffix)
        })
        .collect();
    // stable: table order breaks ties
    suffixes.sort_by_key(|(_, s)| std::cmp::Reverse(s.source_suffix.chars().count()));
    for (index, suffix) in suffixes {
        let stem = &surface[..surface.len() - suffix.source_suffix.len()];
        for entry in rs.lex_entries_for(stem) {
            if entry.pos != suffix.applies_to {
                continue;
            }
            out.push(Analysis {
                stem: stem.to_string(),
                pos: Some(entry.pos),
                suffix: Some(AppliedSuffix {
                    index,
                    source_suffix: suffix.source_suffix.clone(),
                    tam_label: suffix.tam_label.clone(),
                }),
                features: entry.features.clone(),
                source: AnalysisSource::Lexical,
            });
        }
    }

    if out.is_empty() {
        out.push(Analysis::unknown(surface));
    }
    out
}
