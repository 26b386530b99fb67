//! Surface grammar of the output dialect.
//!
//! Every whitespace-delimited unit of engine output conforms to:
//!
//! ```text
//! unit   := alt ("/" alt)*
//! alt    := word ("_" word)*
//! word   := base annot? marker?
//! base   := PLAIN | "[" PLAIN ("/" PLAIN)+ "]" | "*"
//! annot  := "{" ATOM ("," ATOM)* "}"
//! marker := "`" | "-" | "#"
//! ```
//!
//! `PLAIN` is a maximal run of characters that are neither reserved nor
//! whitespace. `ATOM` additionally excludes `,` but admits `-`, which
//! cannot end an annotation early (`vaHa{non-masculine}`` is one word). [`render_unit`] and
//! [`parse_unit`] are exact inverses of each other.

use std::fmt;

use thiserror::Error;

/// Characters with syntactic meaning in the output dialect.
pub const RESERVED: [char; 10] = ['/', '_', '{', '}', '[', ']', '*', '`', '-', '#'];

pub fn is_reserved(c: char) -> bool {
    RESERVED.contains(&c)
}

fn is_plain_char(c: char) -> bool {
    !is_reserved(c) && !c.is_whitespace()
}

fn is_atom_char(c: char) -> bool {
    (is_plain_char(c) && c != ',') || c == '-'
}

/// True if `s` is a valid non-empty `PLAIN` run.
pub fn is_plain(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_plain_char)
}

/// True if `s` is a valid non-empty annotation atom.
pub fn is_atom(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_atom_char)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Marker {
    #[default]
    None,
    /// `` ` `` standalone pronoun form.
    Pronoun,
    /// `-` modifier/correlative form whose head follows.
    Modifier,
    /// `#` unknown token passed through verbatim.
    Unknown,
}

impl Marker {
    pub fn as_char(self) -> Option<char> {
        match self {
            Marker::None => None,
            Marker::Pronoun => Some('`'),
            Marker::Modifier => Some('-'),
            Marker::Unknown => Some('#'),
        }
    }

    pub fn from_char(c: char) -> Option<Marker> {
        match c {
            '`' => Some(Marker::Pronoun),
            '-' => Some(Marker::Modifier),
            '#' => Some(Marker::Unknown),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    Plain(String),
    /// `[a/b/...]`, at least two members.
    Alternation(Vec<String>),
    /// `*`
    Placeholder,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutputWord {
    pub base: Base,
    pub annotation: Vec<String>,
    pub marker: Marker,
}

impl OutputWord {
    pub fn plain(base: impl Into<String>) -> Self {
        OutputWord {
            base: Base::Plain(base.into()),
            annotation: Vec::new(),
            marker: Marker::None,
        }
    }

    pub fn with_annotation(mut self, atoms: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.annotation = atoms.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_marker(mut self, marker: Marker) -> Self {
        self.marker = marker;
        self
    }

    /// Checks the type invariants. Reported offsets are always 0.
    pub fn check(&self) -> Result<(), NotationError> {
        let bad = |kind| Err(NotationError { offset: 0, kind });
        match &self.base {
            Base::Plain(s) if !is_plain(s) => return bad(ErrorKind::InvalidPlain(s.clone())),
            Base::Alternation(members) => {
                if members.len() < 2 {
                    return bad(ErrorKind::SingleMemberAlternation);
                }
                if let Some(m) = members.iter().find(|m| !is_plain(m)) {
                    return bad(ErrorKind::InvalidPlain(m.clone()));
                }
            }
            _ => {}
        }
        if let Some(a) = self.annotation.iter().find(|a| !is_atom(a)) {
            return bad(ErrorKind::InvalidAtom(a.clone()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alternative {
    pub words: Vec<OutputWord>,
}

impl Alternative {
    pub fn new(words: Vec<OutputWord>) -> Self {
        Alternative { words }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutputUnit {
    pub alternatives: Vec<Alternative>,
}

impl OutputUnit {
    pub fn new(alternatives: Vec<Alternative>) -> Self {
        OutputUnit { alternatives }
    }

    pub fn single(word: OutputWord) -> Self {
        OutputUnit::new(vec![Alternative::new(vec![word])])
    }

    pub fn check(&self) -> Result<(), NotationError> {
        if self.alternatives.is_empty() {
            return Err(NotationError {
                offset: 0,
                kind: ErrorKind::EmptyInput,
            });
        }
        for alt in &self.alternatives {
            if alt.words.is_empty() {
                return Err(NotationError {
                    offset: 0,
                    kind: ErrorKind::EmptyAlternative,
                });
            }
            alt.words.iter().try_for_each(OutputWord::check)?;
        }
        Ok(())
    }
}

impl fmt::Display for OutputWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Plain(s) => f.write_str(s)?,
            Base::Alternation(members) => write!(f, "[{}]", members.join("/"))?,
            Base::Placeholder => f.write_str("*")?,
        }
        if !self.annotation.is_empty() {
            write!(f, "{{{}}}", self.annotation.join(","))?;
        }
        if let Some(c) = self.marker.as_char() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str("_")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Display for OutputUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, alt) in self.alternatives.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{alt}")?;
        }
        Ok(())
    }
}

pub fn render_unit(unit: &OutputUnit) -> String {
    unit.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorKind {
    EmptyInput,
    EmptyAlternative,
    /// A `_` not followed by a word, including a trailing `_`.
    EmptyWord,
    EmptyAtom,
    EmptyAlternationMember,
    SingleMemberAlternation,
    UnbalancedBrace,
    UnbalancedBracket,
    Whitespace,
    UnexpectedChar(char),
    InvalidPlain(String),
    InvalidAtom(String),
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorKind::EmptyInput => f.write_str("empty unit"),
            ErrorKind::EmptyAlternative => f.write_str("empty alternative"),
            ErrorKind::EmptyWord => f.write_str("empty word after `_`"),
            ErrorKind::EmptyAtom => f.write_str("empty annotation atom"),
            ErrorKind::EmptyAlternationMember => f.write_str("empty member in `[...]`"),
            ErrorKind::SingleMemberAlternation => {
                f.write_str("inner alternation needs at least two members")
            }
            ErrorKind::UnbalancedBrace => f.write_str("unbalanced `{`"),
            ErrorKind::UnbalancedBracket => f.write_str("unbalanced `[`"),
            ErrorKind::Whitespace => f.write_str("whitespace inside unit"),
            ErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ErrorKind::InvalidPlain(s) => write!(f, "invalid word base {s:?}"),
            ErrorKind::InvalidAtom(s) => write!(f, "invalid annotation atom {s:?}"),
        }
    }
}

/// Syntax error; `offset` counts characters from the start of the unit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct NotationError {
    pub offset: usize,
    pub kind: ErrorKind,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, kind: ErrorKind) -> Result<T, NotationError> {
        Err(NotationError {
            offset: self.pos,
            kind,
        })
    }

    fn run(&mut self, accept: fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(accept) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn unit(&mut self) -> Result<OutputUnit, NotationError> {
        if self.chars.is_empty() {
            return self.err(ErrorKind::EmptyInput);
        }
        let mut alternatives = vec![self.alternative()?];
        loop {
            match self.peek() {
                None => break,
                Some('/') => {
                    self.pos += 1;
                    alternatives.push(self.alternative()?);
                }
                Some(c) if c.is_whitespace() => return self.err(ErrorKind::Whitespace),
                Some(c) => return self.err(ErrorKind::UnexpectedChar(c)),
            }
        }
        Ok(OutputUnit { alternatives })
    }

    fn alternative(&mut self) -> Result<Alternative, NotationError> {
        let mut words = vec![self.word(ErrorKind::EmptyAlternative)?];
        while self.peek() == Some('_') {
            self.pos += 1;
            words.push(self.word(ErrorKind::EmptyWord)?);
        }
        Ok(Alternative { words })
    }

    fn word(&mut self, if_empty: ErrorKind) -> Result<OutputWord, NotationError> {
        let base = match self.peek() {
            Some('*') => {
                self.pos += 1;
                Base::Placeholder
            }
            Some('[') => {
                self.pos += 1;
                self.alternation()?
            }
            Some(c) if is_plain_char(c) => Base::Plain(self.run(is_plain_char)),
            None | Some('/') | Some('_') => return self.err(if_empty),
            Some(c) if c.is_whitespace() => return self.err(ErrorKind::Whitespace),
            Some(c) => return self.err(ErrorKind::UnexpectedChar(c)),
        };
        let mut annotation = Vec::new();
        if self.peek() == Some('{') {
            self.pos += 1;
            loop {
                let atom = self.run(is_atom_char);
                if atom.is_empty() {
                    return match self.peek() {
                        None => self.err(ErrorKind::UnbalancedBrace),
                        Some(',') | Some('}') => self.err(ErrorKind::EmptyAtom),
                        Some(c) => self.err(ErrorKind::UnexpectedChar(c)),
                    };
                }
                annotation.push(atom);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some('}') => {
                        self.pos += 1;
                        break;
                    }
                    None => return self.err(ErrorKind::UnbalancedBrace),
                    Some(c) => return self.err(ErrorKind::UnexpectedChar(c)),
                }
            }
        }
        let marker = match self.peek().and_then(Marker::from_char) {
            Some(m) => {
                self.pos += 1;
                m
            }
            None => Marker::None,
        };
        Ok(OutputWord {
            base,
            annotation,
            marker,
        })
    }

    fn alternation(&mut self) -> Result<Base, NotationError> {
        let mut members = Vec::new();
        loop {
            let member = self.run(is_plain_char);
            if member.is_empty() {
                return match self.peek() {
                    None => self.err(ErrorKind::UnbalancedBracket),
                    Some('/') | Some(']') => self.err(ErrorKind::EmptyAlternationMember),
                    Some(c) => self.err(ErrorKind::UnexpectedChar(c)),
                };
            }
            members.push(member);
            match self.peek() {
                Some('/') => self.pos += 1,
                Some(']') => {
                    if members.len() < 2 {
                        return self.err(ErrorKind::SingleMemberAlternation);
                    }
                    self.pos += 1;
                    return Ok(Base::Alternation(members));
                }
                None => return self.err(ErrorKind::UnbalancedBracket),
                Some(c) => return self.err(ErrorKind::UnexpectedChar(c)),
            }
        }
    }
}

pub fn parse_unit(s: &str) -> Result<OutputUnit, NotationError> {
    Parser {
        chars: s.chars().collect(),
        pos: 0,
    }
    .unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn participle_unit() -> OutputUnit {
        OutputUnit::new(vec![Alternative::new(vec![
            OutputWord::plain("khAyA"),
            OutputWord {
                base: Base::Alternation(vec!["HE".into(), "tHA".into()]),
                annotation: vec![],
                marker: Marker::None,
            },
            OutputWord::plain("jo"),
            OutputWord {
                base: Base::Placeholder,
                annotation: vec![],
                marker: Marker::None,
            },
            OutputWord::plain("vaHa").with_marker(Marker::Modifier),
        ])])
    }

    #[test]
    fn renders_top_level_alternatives() {
        let u = OutputUnit::new(vec![
            Alternative::new(vec![OutputWord::plain("eats")]),
            Alternative::new(vec![OutputWord::plain("ledger")]),
        ]);
        assert_eq!(render_unit(&u), "eats/ledger");
    }

    #[test]
    fn renders_participle_expansion() {
        assert_eq!(render_unit(&participle_unit()), "khAyA_[HE/tHA]_jo_*_vaHa-");
    }

    #[test]
    fn renders_bare_word() {
        assert_eq!(
            render_unit(&OutputUnit::single(OutputWord::plain("vaHa"))),
            "vaHa"
        );
    }

    #[test]
    fn parses_annotated_pronoun() {
        let u = parse_unit("vaHa{masculine,singular}`").unwrap();
        let expected = OutputUnit::single(
            OutputWord::plain("vaHa")
                .with_annotation(["masculine", "singular"])
                .with_marker(Marker::Pronoun),
        );
        assert_eq!(u, expected);
    }

    #[test]
    fn parses_participle_expansion() {
        assert_eq!(
            parse_unit("khAyA_[HE/tHA]_jo_*_vaHa-").unwrap(),
            participle_unit()
        );
    }

    #[test]
    fn atoms_may_contain_periods() {
        let u = parse_unit("vaHa{fem.,singular}`").unwrap();
        assert_eq!(
            u.alternatives[0].words[0].annotation,
            vec!["fem.", "singular"]
        );
    }

    #[test]
    fn atoms_may_contain_hyphens() {
        let u = parse_unit("vaHa{non-masculine}`").unwrap();
        let w = &u.alternatives[0].words[0];
        assert_eq!(
            (w.annotation.as_slice(), w.marker),
            (&["non-masculine".to_string()][..], Marker::Pronoun)
        );
        assert_eq!(parse_unit("a{-}-").unwrap().to_string(), "a{-}-");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let cases = [
            ("a//b", 2, ErrorKind::EmptyAlternative),
            ("a/", 2, ErrorKind::EmptyAlternative),
            ("/a", 0, ErrorKind::EmptyAlternative),
            ("a_", 2, ErrorKind::EmptyWord),
            ("a__b", 2, ErrorKind::EmptyWord),
            ("a{x", 3, ErrorKind::UnbalancedBrace),
            ("a{x,}", 4, ErrorKind::EmptyAtom),
            ("a{}", 2, ErrorKind::EmptyAtom),
            ("[a/b", 4, ErrorKind::UnbalancedBracket),
            ("[a]", 2, ErrorKind::SingleMemberAlternation),
            ("[a//b]", 3, ErrorKind::EmptyAlternationMember),
            ("a b", 1, ErrorKind::Whitespace),
            ("a-b", 2, ErrorKind::UnexpectedChar('b')),
            ("a}", 1, ErrorKind::UnexpectedChar('}')),
            ("", 0, ErrorKind::EmptyInput),
        ];
        for (input, offset, kind) in cases {
            let err = parse_unit(input).unwrap_err();
            assert_eq!((err.offset, &err.kind), (offset, &kind), "input {input:?}");
        }
    }

    #[test]
    fn offsets_count_characters_not_bytes() {
        let err = parse_unit("अ//b").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    pub(crate) fn plain() -> impl Strategy<Value = String> {
        "[a-zA-Z.,'ँ-ॿ]{1,5}"
    }

    fn atom() -> impl Strategy<Value = String> {
        "[a-zA-Z.0-9-]{1,6}"
    }

    fn word() -> impl Strategy<Value = OutputWord> {
        let base = prop_oneof![
            4 => plain().prop_map(Base::Plain),
            1 => prop::collection::vec(plain(), 2..4).prop_map(Base::Alternation),
            1 => Just(Base::Placeholder),
        ];
        let marker = prop_oneof![
            Just(Marker::None),
            Just(Marker::Pronoun),
            Just(Marker::Modifier),
            Just(Marker::Unknown),
        ];
        (base, prop::collection::vec(atom(), 0..3), marker).prop_map(
            |(base, annotation, marker)| OutputWord {
                base,
                annotation,
                marker,
            },
        )
    }

    fn unit() -> impl Strategy<Value = OutputUnit> {
        prop::collection::vec(
            prop::collection::vec(word(), 1..5).prop_map(Alternative::new),
            1..4,
        )
        .prop_map(OutputUnit::new)
    }

    proptest! {
        #[test]
        fn parse_inverts_render(u in unit()) {
            let s = render_unit(&u);
            prop_assert!(!s.chars().any(char::is_whitespace));
            prop_assert_eq!(parse_unit(&s).unwrap(), u);
        }

        #[test]
        fn rendering_is_injective(a in unit(), b in unit()) {
            if a != b {
                prop_assert_ne!(render_unit(&a), render_unit(&b));
            }
        }

        #[test]
        fn render_inverts_parse(s in "[ab/_*`#{},\\[\\]-]{1,12}") {
            if let Ok(u) = parse_unit(&s) {
                prop_assert_eq!(render_unit(&u), s);
            }
        }
    }
}
