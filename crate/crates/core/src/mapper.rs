//! Word- and morpheme-level substitution.
//!
//! Each surviving head reading contributes one alternative per sense; suffix
//! readings pass through their TAM/vibhakti template; attached tokens append
//! their own renderings. Nothing is chosen and nothing is added.

use thiserror::Error;

use crate::analyzer::{Analysis, AnalysisSource};
use crate::grouper::{WordGroup, WordGroupKind};
use crate::notation::{Alternative, Base, Marker, OutputUnit, OutputWord};
use crate::resources::{ResourceSet, SuffixEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("template {0} does not begin with a plain word")]
    TemplateHead(String),
    #[error("sense {0} does not end with a plain word")]
    SenseTail(String),
}

/// Concatenates the template's first word onto the last word of the sense
/// and appends the remaining template words unchanged.
pub fn expand_tam(sense: &Alternative, suffix: &SuffixEntry) -> Result<Alternative, ExpandError> {
    let (first, rest) = suffix
        .template
        .words
        .split_first()
        .ok_or_else(|| ExpandError::TemplateHead(suffix.template.to_string()))?;
    let Base::Plain(ending) = &first.base else {
        return Err(ExpandError::TemplateHead(suffix.template.to_string()));
    };
    let mut words = sense.words.clone();
    let last = words
        .last_mut()
        .ok_or_else(|| ExpandError::SenseTail(sense.to_string()))?;
    let Base::Plain(stem) = &mut last.base else {
        return Err(ExpandError::SenseTail(sense.to_string()));
    };
    stem.push_str(ending);
    last.annotation.extend(first.annotation.iter().cloned());
    if first.marker != Marker::None {
        last.marker = first.marker;
    }
    words.extend(rest.iter().cloned());
    Ok(Alternative::new(words))
}

/// Where one alternative of a unit came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// `None` only for punctuation.
    pub analysis: Option<Analysis>,
    /// Index into the lexical entry's senses.
    pub sense: Option<usize>,
    /// Index into [`ResourceSet::suffixes`].
    pub suffix: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappedUnit {
    pub source_group: WordGroup,
    pub unit: OutputUnit,
    /// Parallel to `unit.alternatives`.
    pub provenance: Vec<Provenance>,
}

fn unknown_word(surface: &str) -> OutputWord {
    OutputWord::plain(surface).with_marker(Marker::Unknown)
}

fn attached_words(group: &WordGroup, rs: &ResourceSet) -> Vec<OutputWord> {
    group
        .attached
        .iter()
        .flat_map(|(token, _)| match rs.function(&token.surface) {
            Some(f) => f.rendered().words,
            None => vec![unknown_word(&token.surface)],
        })
        .collect()
}

pub fn map_group(group: &WordGroup, rs: &ResourceSet) -> MappedUnit {
    if group.kind == WordGroupKind::Punctuation {
        return MappedUnit {
            source_group: group.clone(),
            unit: OutputUnit::single(OutputWord::plain(group.head().surface.clone())),
            provenance: vec![Provenance {
                analysis: None,
                sense: None,
                suffix: None,
            }],
        };
    }

    let mut heads: Vec<(Alternative, Provenance)> = Vec::new();
    for analysis in &group.head_analyses {
        let prov = |sense, suffix| Provenance {
            analysis: Some(analysis.clone()),
            sense,
            suffix,
        };
        match analysis.source {
            AnalysisSource::Function => {
                let f = rs
                    .function(&analysis.stem)
                    .expect("function analysis refers to a function entry");
                heads.push((f.rendered(), prov(None, None)));
            }
            AnalysisSource::Lexical => {
                let pos = analysis.pos.expect("lexical analysis has a part of speech");
                let entry = rs
                    .lex_entry(&analysis.stem, pos)
                    .expect("lexical analysis refers to a lexicon entry");
                let suffix = analysis.suffix.as_ref().map(|s| s.index);
                for (i, sense) in entry.senses.iter().enumerate() {
                    let alt = match suffix {
                        Some(si) => expand_tam(sense, &rs.suffixes()[si])
                            .expect("sense/suffix combinations are checked when resources load"),
                        None => sense.clone(),
                    };
                    heads.push((alt, prov(Some(i), suffix)));
                }
            }
            AnalysisSource::Unknown => {
                let alt = Alternative::new(vec![unknown_word(&analysis.stem)]);
                heads.push((alt, prov(None, None)));
            }
        }
    }

    let tail = attached_words(group, rs);
    let mut alternatives: Vec<Alternative> = Vec::with_capacity(heads.len());
    let mut provenance: Vec<Provenance> = Vec::with_capacity(heads.len());
    for (mut alt, prov) in heads {
        alt.words.extend(tail.iter().cloned());
        let duplicate = alternatives
            .iter()
            .zip(&provenance)
            .any(|(a, p)| *a == alt && *p == prov);
        if !duplicate {
            alternatives.push(alt);
            provenance.push(prov);
        }
    }

    MappedUnit {
        source_group: group.clone(),
        unit: OutputUnit::new(alternatives),
        provenance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{analyze, tokenize};
    use crate::grouper::{group, AnalyzedToken};
    use crate::notation::parse_unit;

    fn alt(s: &str) -> Alternative {
        parse_unit(s).unwrap().alternatives.remove(0)
    }

    fn suffix(template: &str) -> SuffixEntry {
        SuffixEntry {
            source_suffix: "x".into(),
            applies_to: crate::resources::Pos::Verb,
            tam_label: "x".into(),
            template: alt(template),
        }
    }

    fn map_sentence(text: &str, rs: &ResourceSet) -> Vec<String> {
        let analyzed: Vec<AnalyzedToken> = tokenize(text)
            .into_iter()
            .map(|token| AnalyzedToken {
                analyses: analyze(&token, rs),
                token,
            })
            .collect();
        group(&analyzed, rs)
            .iter()
            .map(|g| map_group(g, rs).unit.to_string())
            .collect()
    }

    #[test]
    fn expands_participle_template() {
        let out = expand_tam(&alt("khA"), &suffix("yA_[HE/tHA]_jo_*_vaHa-")).unwrap();
        assert_eq!(out.to_string(), "khAyA_[HE/tHA]_jo_*_vaHa-");
    }

    #[test]
    fn expands_single_word_template() {
        assert_eq!(
            expand_tam(&alt("A"), &suffix("egA")).unwrap().to_string(),
            "AegA"
        );
    }

    #[test]
    fn attaches_to_last_word_of_multiword_sense() {
        let out = expand_tam(&alt("kAma_kar"), &suffix("yA_[HE/tHA]")).unwrap();
        assert_eq!(out.to_string(), "kAma_karyA_[HE/tHA]");
    }

    #[test]
    fn merged_word_keeps_both_annotations() {
        let out = expand_tam(&alt("ghara{m}"), &suffix("oM{pl}-")).unwrap();
        assert_eq!(out.to_string(), "gharaoM{m,pl}-");
    }

    #[test]
    fn rejects_unconcatenable_templates() {
        for t in ["*_jo", "[HE/tHA]_jo"] {
            let s = suffix(t);
            assert!(matches!(
                expand_tam(&alt("khA"), &s),
                Err(ExpandError::TemplateHead(_))
            ));
        }
        assert!(matches!(
            expand_tam(&alt("jo_*"), &suffix("yA")),
            Err(ExpandError::SenseTail(_))
        ));
    }

    #[test]
    fn enumerates_every_sense() {
        let rs =
            ResourceSet::parse("[lexicon]\nkhAtA\tv\teats\nkhAtA\tn\tledger\n", "hin-eng").unwrap();
        assert_eq!(map_sentence("khAtA", &rs), ["eats/ledger"]);
    }

    #[test]
    fn function_word_replacement() {
        let rs = ResourceSet::parse("[function]\neMdu\tEsA\t0\t0\n", "kan-hin").unwrap();
        assert_eq!(map_sentence("eMdu", &rs), ["EsA"]);
    }

    #[test]
    fn participle_group() {
        let rs = ResourceSet::parse(
            "[lexicon]\ntin\tv\tkhA\n[suffix]\nina\tv\tina\tyA_[HE/tHA]_jo_*_vaHa-\n",
            "tel-hin",
        )
        .unwrap();
        assert_eq!(map_sentence("tinina", &rs), ["khAyA_[HE/tHA]_jo_*_vaHa-"]);
    }

    #[test]
    fn attached_tokens_join_every_alternative() {
        let rs = ResourceSet::parse(
            "[lexicon]\nghara\tn\thouse|home\n[function]\nko\tacc.\t0\t0\n[group]\npostp\tko\naux\tHE\n",
            "hin-eng",
        )
        .unwrap();
        assert_eq!(
            map_sentence("ghara ko HE .", &rs),
            ["house_acc._HE#/home_acc._HE#", "."]
        );
    }

    #[test]
    fn unknown_head_is_marked() {
        let rs = ResourceSet::parse("[lexicon]\nrAma\tpn\tRam\n", "x").unwrap();
        assert_eq!(map_sentence("rAma zzz", &rs), ["Ram", "zzz#"]);
    }

    #[test]
    fn provenance_covers_alternatives() {
        let rs = ResourceSet::parse(
            "[lexicon]\nkhAtA\tv\teats\nkhAtA\tn\tledger|account\n",
            "hin-eng",
        )
        .unwrap();
        let token = tokenize("khAtA").remove(0);
        let analyzed = [AnalyzedToken {
            analyses: analyze(&token, &rs),
            token,
        }];
        let g = group(&analyzed, &rs);
        let m = map_group(&g[0], &rs);
        assert_eq!(m.unit.alternatives.len(), 3);
        assert_eq!(m.provenance.len(), 3);
        let senses: Vec<Option<usize>> = m.provenance.iter().map(|p| p.sense).collect();
        assert_eq!(senses, [Some(0), Some(0), Some(1)]);
    }
}
