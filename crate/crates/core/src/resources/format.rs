use std::collections::HashMap;

use indexmap::IndexMap;

use super::{
    is_punctuation_run, Condition, FilterRule, FunctionEntry, GroupKind, GroupRule, LexEntry, Pos,
    ResourceError, ResourceSet, SuffixEntry, PUNCTUATION,
};
use crate::mapper::expand_tam;
use crate::notation::{self, is_atom, is_plain, Alternative, Base, Marker};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Lexicon,
    Suffix,
    Function,
    Group,
    Filter,
}

impl Section {
    fn from_header(name: &str) -> Option<Section> {
        match name {
            "lexicon" => Some(Section::Lexicon),
            "suffix" => Some(Section::Suffix),
            "function" => Some(Section::Function),
            "group" => Some(Section::Group),
            "filter" => Some(Section::Filter),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::Lexicon => "lexicon",
            Section::Suffix => "suffix",
            Section::Function => "function",
            Section::Group => "group",
            Section::Filter => "filter",
        }
    }
}

struct Ctx {
    line: usize,
    section: &'static str,
}

impl Ctx {
    fn malformed(&self, reason: impl Into<String>) -> ResourceError {
        ResourceError::Malformed {
            line: self.line,
            section: self.section.to_string(),
            reason: reason.into(),
        }
    }

    fn source_form(&self, form: &str) -> Result<String, ResourceError> {
        if form.is_empty() {
            return Err(self.malformed("empty source form"));
        }
        if form.chars().any(char::is_whitespace) {
            return Err(self.malformed(format!("whitespace in source form {form:?}")));
        }
        if form.chars().any(notation::is_reserved) {
            return Err(ResourceError::ReservedChar {
                line: self.line,
                section: self.section.to_string(),
                form: form.to_string(),
            });
        }
        let starts = form.starts_with(PUNCTUATION);
        if starts || form.ends_with(PUNCTUATION) {
            return Err(self.malformed(format!(
                "source form {form:?} begins or ends with sentence punctuation"
            )));
        }
        Ok(form.to_string())
    }

    fn pos(&self, field: &str) -> Result<Pos, ResourceError> {
        field.parse().map_err(|e: String| self.malformed(e))
    }

    fn atoms(&self, field: &str) -> Result<Vec<String>, ResourceError> {
        if field.is_empty() || field == "0" {
            return Ok(Vec::new());
        }
        let mut atoms: Vec<String> = Vec::new();
        for atom in field.split(',') {
            if !is_atom(atom) {
                return Err(self.malformed(format!("invalid feature atom {atom:?}")));
            }
            if !atoms.iter().any(|a| a == atom) {
                atoms.push(atom.to_string());
            }
        }
        Ok(atoms)
    }

    /// A sense or template: exactly one notation alternative, no `#` markers.
    fn mapping(&self, text: &str) -> Result<Alternative, ResourceError> {
        let unit = notation::parse_unit(text)
            .map_err(|e| self.malformed(format!("mapping {text:?}: {e}")))?;
        let [alt]: [Alternative; 1] = unit.alternatives.try_into().map_err(|_| {
            self.malformed(format!("mapping {text:?} must be a single alternative"))
        })?;
        if alt.words.iter().any(|w| w.marker == Marker::Unknown) {
            return Err(self.malformed(format!(
                "mapping {text:?} uses the `#` marker, which is reserved for unknown tokens"
            )));
        }
        if is_punctuation_run(text) {
            return Err(self.malformed(format!(
                "mapping {text:?} is indistinguishable from punctuation"
            )));
        }
        Ok(alt)
    }
}

fn fields<'a>(
    ctx: &Ctx,
    line: &'a str,
    min: usize,
    max: usize,
) -> Result<Vec<&'a str>, ResourceError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < min || fields.len() > max {
        let expected = if min == max {
            format!("{min}")
        } else {
            format!("{min} to {max}")
        };
        return Err(ctx.malformed(format!(
            "expected {expected} TAB-separated fields, found {}",
            fields.len()
        )));
    }
    Ok(fields)
}

#[derive(Default)]
struct Builder {
    lexicon: IndexMap<(String, Pos), LexEntry>,
    suffixes: Vec<SuffixEntry>,
    functions: IndexMap<String, FunctionEntry>,
    groups: Vec<GroupRule>,
    filters: Vec<FilterRule>,
    group_lines: Vec<usize>,
    suffix_lines: Vec<usize>,
}

impl Builder {
    fn lexicon_line(&mut self, ctx: &Ctx, line: &str) -> Result<(), ResourceError> {
        let f = fields(ctx, line, 3, 4)?;
        let stem = ctx.source_form(f[0])?;
        let pos = ctx.pos(f[1])?;
        let senses = f[2]
            .split('|')
            .map(|s| ctx.mapping(s))
            .collect::<Result<Vec<_>, _>>()?;
        let features = ctx.atoms(f.get(3).copied().unwrap_or(""))?;
        match self.lexicon.get_mut(&(stem.clone(), pos)) {
            Some(entry) => {
                for sense in senses {
                    if !entry.senses.contains(&sense) {
                        entry.senses.push(sense);
                    }
                }
                for feat in features {
                    if !entry.features.contains(&feat) {
                        entry.features.push(feat);
                    }
                }
            }
            None => {
                let mut unique: Vec<Alternative> = Vec::with_capacity(senses.len());
                for sense in senses {
                    if !unique.contains(&sense) {
                        unique.push(sense);
                    }
                }
                self.lexicon.insert(
                    (stem.clone(), pos),
                    LexEntry {
                        source_stem: stem,
                        pos,
                        senses: unique,
                        features,
                    },
                );
            }
        }
        Ok(())
    }

    fn suffix_line(&mut self, ctx: &Ctx, line: &str) -> Result<(), ResourceError> {
        let f = fields(ctx, line, 4, 4)?;
        let source_suffix = ctx.source_form(f[0])?;
        let applies_to = ctx.pos(f[1])?;
        let tam_label = f[2].to_string();
        if tam_label.is_empty() || tam_label.chars().any(char::is_whitespace) {
            return Err(ctx.malformed(format!("invalid TAM label {tam_label:?}")));
        }
        let template = ctx.mapping(f[3])?;
        if !matches!(template.words[0].base, Base::Plain(_)) {
            return Err(ctx.malformed(format!("template {:?} must begin with a plain word", f[3])));
        }
        let entry = SuffixEntry {
            source_suffix,
            applies_to,
            tam_label,
            template,
        };
        if self.suffixes.contains(&entry) {
            return Err(ctx.malformed("duplicate suffix entry"));
        }
        self.suffixes.push(entry);
        self.suffix_lines.push(ctx.line);
        Ok(())
    }

    fn function_line(&mut self, ctx: &Ctx, line: &str) -> Result<(), ResourceError> {
        let f = fields(ctx, line, 4, 4)?;
        let source_word = ctx.source_form(f[0])?;
        let target_base = f[1].to_string();
        if !target_base.split('_').all(is_plain) {
            return Err(ctx.malformed(format!("invalid target base {target_base:?}")));
        }
        let annotation = ctx.atoms(f[2])?;
        let marker = match f[3] {
            "0" => Marker::None,
            "-" => Marker::Modifier,
            "`" => Marker::Pronoun,
            other => return Err(ctx.malformed(format!("unknown marker {other:?}"))),
        };
        let entry = FunctionEntry {
            source_word: source_word.clone(),
            target_base,
            annotation,
            marker,
        };
        if is_punctuation_run(&entry.rendered().to_string()) {
            return Err(ctx.malformed("rendered form is indistinguishable from punctuation"));
        }
        if self.functions.contains_key(&source_word) {
            return Err(ctx.malformed(format!("duplicate function word {source_word:?}")));
        }
        self.functions.insert(source_word, entry);
        Ok(())
    }

    fn group_line(&mut self, ctx: &Ctx, line: &str) -> Result<(), ResourceError> {
        let f = fields(ctx, line, 2, 2)?;
        let kind = match f[0] {
            "aux" => GroupKind::Auxiliary,
            "postp" => GroupKind::Postposition,
            other => return Err(ctx.malformed(format!("unknown group kind {other:?}"))),
        };
        let word = ctx.source_form(f[1])?;
        if self.groups.iter().any(|g| g.word == word) {
            return Err(ctx.malformed(format!("duplicate group word {word:?}")));
        }
        self.groups.push(GroupRule { kind, word });
        self.group_lines.push(ctx.line);
        Ok(())
    }

    fn filter_line(&mut self, ctx: &Ctx, line: &str) -> Result<(), ResourceError> {
        let f = fields(ctx, line, 3, 3)?;
        let subject_word = ctx.source_form(f[0])?;
        let condition = match f[1].split_once(':') {
            Some(("after", w)) => Condition::After(ctx.source_form(w)?),
            Some(("before", w)) => Condition::Before(ctx.source_form(w)?),
            _ => return Err(ctx.malformed(format!("invalid condition {:?}", f[1]))),
        };
        let keep = match f[2].split_once(':') {
            Some(("keep", pos)) => ctx.pos(pos)?,
            _ => return Err(ctx.malformed(format!("invalid action {:?}", f[2]))),
        };
        self.filters.push(FilterRule {
            subject_word,
            condition,
            keep,
        });
        Ok(())
    }

    /// Cross-entry checks that need the whole file.
    fn finish(self, pair_id: &str) -> Result<ResourceSet, ResourceError> {
        for (rule, &line) in self.groups.iter().zip(&self.group_lines) {
            if self.lexicon.contains_key(&(rule.word.clone(), Pos::Noun)) {
                return Err(ResourceError::Malformed {
                    line,
                    section: "group".into(),
                    reason: format!("group word {:?} is also a noun stem", rule.word),
                });
            }
        }
        for (suffix, &line) in self.suffixes.iter().zip(&self.suffix_lines) {
            for entry in self.lexicon.values().filter(|e| e.pos == suffix.applies_to) {
                for sense in &entry.senses {
                    let expanded =
                        expand_tam(sense, suffix).map_err(|e| ResourceError::Malformed {
                            line,
                            section: "suffix".into(),
                            reason: format!(
                                "cannot apply to {} sense {sense}: {e}",
                                entry.source_stem
                            ),
                        })?;
                    if is_punctuation_run(&expanded.to_string()) {
                        return Err(ResourceError::Malformed {
                            line,
                            section: "suffix".into(),
                            reason: format!(
                                "expansion {expanded} is indistinguishable from punctuation"
                            ),
                        });
                    }
                }
            }
        }
        let group_index: HashMap<String, GroupKind> = self
            .groups
            .iter()
            .map(|g| (g.word.clone(), g.kind))
            .collect();
        let mut stem_index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, (stem, _)) in self.lexicon.keys().enumerate() {
            stem_index.entry(stem.clone()).or_default().push(i);
        }
        Ok(ResourceSet {
            pair_id: pair_id.to_string(),
            lexicon: self.lexicon,
            suffixes: self.suffixes,
            functions: self.functions,
            groups: self.groups,
            filters: self.filters,
            group_index,
            stem_index,
        })
    }
}

pub(super) fn parse(text: &str, pair_id: &str) -> Result<ResourceSet, ResourceError> {
    let mut builder = Builder::default();
    let mut section: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match raw.find('#') {
            Some(at) => &raw[..at],
            None => raw,
        };
        let content = content
            .trim_end_matches([' ', '\r'])
            .trim_start_matches(' ');
        if content.trim().is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section =
                Some(
                    Section::from_header(name).ok_or_else(|| ResourceError::UnknownSection {
                        line: line_no,
                        name: name.to_string(),
                    })?,
                );
            continue;
        }
        let Some(current) = section else {
            return Err(ResourceError::Malformed {
                line: line_no,
                section: "(none)".into(),
                reason: "entry before any section header".into(),
            });
        };
        let ctx = Ctx {
            line: line_no,
            section: current.name(),
        };
        match current {
            Section::Lexicon => builder.lexicon_line(&ctx, content)?,
            Section::Suffix => builder.suffix_line(&ctx, content)?,
            Section::Function => builder.function_line(&ctx, content)?,
            Section::Group => builder.group_line(&ctx, content)?,
            Section::Filter => builder.filter_line(&ctx, content)?,
        }
    }
    if section.is_none() {
        return Err(ResourceError::NoSections);
    }
    builder.finish(pair_id)
}

fn atoms_field(atoms: &[String]) -> String {
    if atoms.is_empty() {
        "0".to_string()
    } else {
        atoms.join(",")
    }
}

pub(super) fn dump(rs: &ResourceSet) -> String {
    let mut out = String::new();
    out.push_str("[lexicon]\n");
    for e in rs.lexicon.values() {
        let senses: Vec<String> = e.senses.iter().map(ToString::to_string).collect();
        out.push_str(&format!(
            "{}\t{}\t{}",
            e.source_stem,
            e.pos,
            senses.join("|")
        ));
        if !e.features.is_empty() {
            out.push_str(&format!("\t{}", e.features.join(",")));
        }
        out.push('\n');
    }
    out.push_str("\n[suffix]\n");
    for s in &rs.suffixes {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            s.source_suffix, s.applies_to, s.tam_label, s.template
        ));
    }
    out.push_str("\n[function]\n");
    for f in rs.functions.values() {
        let marker = f.marker.as_char().map_or("0".to_string(), String::from);
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            f.source_word,
            f.target_base,
            atoms_field(&f.annotation),
            marker
        ));
    }
    out.push_str("\n[group]\n");
    for g in &rs.groups {
        out.push_str(&format!("{}\t{}\n", g.kind.tag(), g.word));
    }
    out.push_str("\n[filter]\n");
    for f in &rs.filters {
        out.push_str(&format!(
            "{}\t{}\tkeep:{}\n",
            f.subject_word, f.condition, f.keep
        ));
    }
    out
}
