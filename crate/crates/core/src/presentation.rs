//! Words, the short-lex order and finite monoid/semigroup presentations.
//!
//! Text format, one declaration per line (`#` starts a comment):
//!
//! ```text
//! alphabet: ab
//! kind: monoid
//! inverses: aA        # optional, expands to aA = 1 and Aa = 1
//! relation: aa = a
//! relation: ab = 1    # `1` is the empty word
//! ```

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A word over an alphabet `{0, .., m - 1}`; the empty vector is the empty word.
pub type Word = Vec<Letter>;

/// Compares two words in short-lex order: shorter words first, then
/// lexicographically by letter index.
pub fn shortlex_compare(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Monoid,
    Semigroup,
}

/// A finite presentation `<A | R>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    letters: Vec<char>,
    relations: Vec<(Word, Word)>,
    kind: Kind,
}

/// Default letter names for an alphabet of size `m`: `a..z`, `A..Z`, then
/// Greek lower case.
pub fn default_letters(m: usize) -> Vec<char> {
    ('a'..='z')
        .chain('A'..='Z')
        .chain('α'..='ω')
        .chain('Α'..='Ω')
        .take(m)
        .collect()
}

impl Presentation {
    /// A presentation over `m` letters with default letter names.
    pub fn new(m: usize, relations: Vec<(Word, Word)>, kind: Kind) -> Result<Self> {
        let letters = default_letters(m);
        if letters.len() < m {
            return Err(Error::input(format!("alphabet of size {m} has no default names")));
        }
        Self::with_letters(letters, relations, kind)
    }

    pub fn with_letters(letters: Vec<char>, relations: Vec<(Word, Word)>, kind: Kind) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::input("empty alphabet"));
        }
        for (i, c) in letters.iter().enumerate() {
            if *c == '1' || c.is_whitespace() || *c == '=' || *c == '#' {
                return Err(Error::input(format!("reserved character '{c}' used as a letter")));
            }
            if letters[..i].contains(c) {
                return Err(Error::input(format!("duplicate letter '{c}'")));
            }
        }
        let m = letters.len();
        for (u, v) in &relations {
            for &x in u.iter().chain(v) {
                if x as usize >= m {
                    return Err(Error::LetterOutOfRange { letter: x, alphabet: m });
                }
            }
        }
        Ok(Presentation {
            letters,
            relations,
            kind,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Relations with both sides reversed; an involution.
    pub fn reverse(&self) -> Presentation {
        let relations = self
            .relations
            .iter()
            .map(|(u, v)| (u.iter().rev().copied().collect(), v.iter().rev().copied().collect()))
            .collect();
        Presentation {
            letters: self.letters.clone(),
            relations,
            kind: self.kind,
        }
    }

    /// Sum of the lengths of all relation words.
    pub fn length(&self) -> usize {
        self.relations.iter().map(|(u, v)| u.len() + v.len()).sum()
    }

    /// Relation words equal to the empty word are flagged for semigroup
    /// presentations; they are allowed but unusual.
    pub fn has_empty_relation_word(&self) -> bool {
        self.relations.iter().any(|(u, v)| u.is_empty() || v.is_empty())
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut letters: Option<Vec<char>> = None;
        let mut kind = Kind::Monoid;
        let mut relations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, format!("expected 'key: value', got '{line}'")))?;
            let value = value.trim();
            match key.trim() {
                "alphabet" => {
                    if letters.is_some() {
                        return Err(Error::parse(line_no, "alphabet declared twice"));
                    }
                    let ls: Vec<char> = value.chars().filter(|c| !c.is_whitespace()).collect();
                    // validate eagerly so the error carries a line number
                    Presentation::with_letters(ls.clone(), Vec::new(), Kind::Monoid)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    letters = Some(ls);
                }
                "kind" => {
                    kind = match value {
                        "monoid" => Kind::Monoid,
                        "semigroup" => Kind::Semigroup,
                        other => return Err(Error::parse(line_no, format!("unknown kind '{other}'"))),
                    }
                }
                "inverses" => {
                    let ls = letters
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, "inverses before alphabet"))?;
                    for token in value.split_whitespace() {
                        let w = parse_word_in(ls, token).map_err(|m| Error::parse(line_no, m))?;
                        if w.len() != 2 {
                            return Err(Error::parse(
                                line_no,
                                format!("inverse pair '{token}' must have two letters"),
                            ));
                        }
                        relations.push((vec![w[0], w[1]], Vec::new()));
                        relations.push((vec![w[1], w[0]], Vec::new()));
                    }
                }
                "relation" => {
                    let ls = letters
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, "relation before alphabet"))?;
                    relations.push(parse_pair_in(ls, value).map_err(|m| Error::parse(line_no, m))?);
                }
                other => return Err(Error::parse(line_no, format!("unknown declaration '{other}'"))),
            }
        }
        let letters = letters.ok_or_else(|| Error::parse(0, "missing alphabet declaration"))?;
        Presentation::with_letters(letters, relations, kind)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet: ");
        out.extend(self.letters.iter());
        out.push('\n');
        out.push_str(match self.kind {
            Kind::Monoid => "kind: monoid\n",
            Kind::Semigroup => "kind: semigroup\n",
        });
        for (u, v) in &self.relations {
            out.push_str("relation: ");
            out.push_str(&self.format_word(u));
            out.push_str(" = ");
            out.push_str(&self.format_word(v));
            out.push('\n');
        }
        out
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&x| self.letters[x as usize]).collect()
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word_in(&self.letters, s.trim()).map_err(Error::Input)
    }

    /// Parses a file of word pairs, one `u = v` per line, `#` comments.
    pub fn parse_pairs(&self, text: &str) -> Result<Vec<(Word, Word)>> {
        let mut out = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            out.push(parse_pair_in(&self.letters, line).map_err(|m| Error::parse(idx + 1, m))?);
        }
        Ok(out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn parse_word_in(letters: &[char], s: &str) -> std::result::Result<Word, String> {
    if s == "1" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err("empty word (write 1 for the identity)".to_string());
    }
    s.chars()
        .map(|c| {
            letters
                .iter()
                .position(|&l| l == c)
                .map(|p| p as Letter)
                .ok_or_else(|| format!("unknown letter '{c}'"))
        })
        .collect()
}

fn parse_pair_in(letters: &[char], s: &str) -> std::result::Result<(Word, Word), String> {
    let (lhs, rhs) = s
        .split_once('=')
        .ok_or_else(|| format!("expected 'u = v', got '{s}'"))?;
    Ok((parse_word_in(letters, lhs.trim())?, parse_word_in(letters, rhs.trim())?))
}
