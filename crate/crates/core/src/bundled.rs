//! The toy language-pair fragments and gold corpora shipped with the crate.

use crate::corpus::GoldCorpus;
use crate::resources::ResourceSet;

pub const PAIRS: [&str; 3] = ["hin-eng", "kan-hin", "tel-hin"];

pub fn resource_text(pair: &str) -> Option<&'static str> {
    match pair {
        "hin-eng" => Some(include_str!("../resources/hin-eng.anu")),
        "kan-hin" => Some(include_str!("../resources/kan-hin.anu")),
        "tel-hin" => Some(include_str!("../resources/tel-hin.anu")),
        _ => None,
    }
}

pub fn corpus_text(pair: &str) -> Option<&'static str> {
    match pair {
        "hin-eng" => Some(include_str!("../resources/hin-eng.corpus")),
        "kan-hin" => Some(include_str!("../resources/kan-hin.corpus")),
        "tel-hin" => Some(include_str!("../resources/tel-hin.corpus")),
        _ => None,
    }
}

/// Parses a bundled fragment. Panics only if the shipped file is broken.
pub fn resources(pair: &str) -> Option<ResourceSet> {
    let text = resource_text(pair)?;
    Some(ResourceSet::parse(text, pair).unwrap_or_else(|e| panic!("bundled {pair}: {e}")))
}

pub fn corpus(pair: &str) -> Option<GoldCorpus> {
    let text = corpus_text(pair)?;
    Some(GoldCorpus::parse(text, pair).unwrap_or_else(|e| panic!("bundled {pair} corpus: {e}")))
}
