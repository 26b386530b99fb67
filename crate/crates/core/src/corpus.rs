//! Gold corpus files.
//!
//! One entry per line: `source<TAB>expected_output[<TAB>gold_pos]`. Lines
//! starting with `#` are comments. `expected_output` may be empty, in which
//! case only the round trip is checked. `gold_pos` is a space-separated list
//! of `word@index=pos` annotations (0-based token index) used to validate
//! filter rules.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analyzer::tokenize;
use crate::resources::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldPos {
    pub word: String,
    pub index: usize,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    /// 1-based line in the corpus file.
    pub line: usize,
    pub source: String,
    pub expected: Option<String>,
    pub gold: Vec<GoldPos>,
}

impl CorpusEntry {
    pub fn gold_pos(&self, index: usize) -> Option<Pos> {
        self.gold.iter().find(|g| g.index == index).map(|g| g.pos)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldCorpus {
    pub pair_id: String,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

impl GoldCorpus {
    pub fn load(path: impl AsRef<Path>) -> Result<GoldCorpus, CorpusError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let pair_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        GoldCorpus::parse(&text, &pair_id)
    }

    pub fn parse(text: &str, pair_id: &str) -> Result<GoldCorpus, CorpusError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = |reason: String| CorpusError::Malformed { line, reason };
            let fields: Vec<&str> = raw.trim_end_matches('\r').split('\t').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(malformed(format!(
                    "expected 2 or 3 TAB-separated fields, found {}",
                    fields.len()
                )));
            }
            let source = fields[0].trim().to_string();
            let expected = Some(fields[1].trim().to_string()).filter(|s| !s.is_empty());
            let tokens = tokenize(&source);
            let mut gold = Vec::new();
            for ann in fields.get(2).map_or("", |s| s.trim()).split_whitespace() {
                let parsed = ann.split_once('@').and_then(|(word, rest)| {
                    let (index, pos) = rest.split_once('=')?;
                    Some((word, index.parse::<usize>().ok()?, pos.parse::<Pos>().ok()?))
                });
                let Some((word, index, pos)) = parsed else {
                    return Err(malformed(format!("bad gold annotation {ann:?}")));
                };
                if tokens.get(index).map(|t| t.surface.as_str()) != Some(word) {
                    return Err(malformed(format!(
                        "token {index} of the source is not {word:?}"
                    )));
                }
                gold.push(GoldPos {
                    word: word.to_string(),
                    index,
                    pos,
                });
            }
            entries.push(CorpusEntry {
                line,
                source,
                expected,
                gold,
            });
        }
        Ok(GoldCorpus {
            pair_id: pair_id.to_string(),
            entries,
        })
    }
}
