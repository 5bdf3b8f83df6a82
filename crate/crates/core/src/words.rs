//! Words over a countable alphabet of letters, plus the letter-level
//! projections (content, simple/multiple, `ini`, `ini2`, `ini_sq`).
//!
//! Words are immutable values; every operation returns a new word, so
//! results can be shared and memoized freely across threads.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A letter of the alphabet. Tokens match `[a-z][a-z0-9]*`; subscripts are
/// plain characters (`x0`, `y12`, `zoo`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Result<Self, ParseError> {
        if is_token(name) {
            Ok(Letter(Arc::from(name)))
        } else {
            Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::BadToken(name.to_string()),
            })
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

fn is_token(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Letter {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::new(s)
    }
}

/// A set of letters, ordered by name for deterministic iteration.
pub type LetterSet = BTreeSet<Letter>;

/// A finite word, possibly empty. The empty word renders as `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// The `i`th occurrence of a letter in a word (`i` is 1-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OccRef {
    pub letter: Letter,
    /// 1-based occurrence number.
    pub index: usize,
    /// 0-based position in the word.
    pub position: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed token `{0}` (expected [a-z][a-z0-9]*)")]
    BadToken(String),
    #[error("empty input (the empty word is written `1`)")]
    Empty,
    #[error("`1` may only appear alone")]
    MisplacedOne,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter `{letter}` has {available} occurrence(s), requested #{requested}")]
    OccurrenceRange {
        letter: Letter,
        requested: usize,
        available: usize,
    },
    #[error("letter `{0}` does not occur in the word")]
    UnknownLetter(Letter),
    #[error("span {start}..{end} is out of bounds for a word of length {len}")]
    SpanOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses the text grammar `word := "1" | token (WS token)*`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::Empty,
            });
        }
        if trimmed == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let base = text.as_ptr() as usize;
        for tok in text.split_whitespace() {
            let offset = tok.as_ptr() as usize - base;
            if tok == "1" {
                return Err(ParseError {
                    offset,
                    kind: ParseErrorKind::MisplacedOne,
                });
            }
            if !is_token(tok) {
                return Err(ParseError {
                    offset,
                    kind: ParseErrorKind::BadToken(tok.to_string()),
                });
            }
            letters.push(Letter(Arc::from(tok)));
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn get(&self, pos: usize) -> Option<&Letter> {
        self.0.get(pos)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn slice(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(parts: &[&Word]) -> Word {
        let mut out = Vec::with_capacity(parts.iter().map(|w| w.len()).sum());
        for part in parts {
            out.extend_from_slice(&part.0);
        }
        Word(out)
    }

    /// The set of letters occurring in the word.
    pub fn content(&self) -> LetterSet {
        self.0.iter().cloned().collect()
    }

    /// Number of occurrences of `x`.
    pub fn occ(&self, x: &Letter) -> usize {
        self.0.iter().filter(|l| *l == x).count()
    }

    /// The `i`th occurrence of `x` (1-based).
    pub fn nth_occ(&self, x: &Letter, i: usize) -> Result<OccRef, WordError> {
        let mut seen = 0;
        for (position, l) in self.0.iter().enumerate() {
            if l == x {
                seen += 1;
                if seen == i {
                    return Ok(OccRef {
                        letter: x.clone(),
                        index: i,
                        position,
                    });
                }
            }
        }
        if seen == 0 {
            Err(WordError::UnknownLetter(x.clone()))
        } else {
            Err(WordError::OccurrenceRange {
                letter: x.clone(),
                requested: i,
                available: seen,
            })
        }
    }

    /// 1-based occurrence number of the letter at `pos`.
    pub fn occ_index_at(&self, pos: usize) -> usize {
        let letter = &self.0[pos];
        self.0[..=pos].iter().filter(|l| *l == letter).count()
    }

    /// Letters occurring exactly once / at least twice, and the full content.
    pub fn classify(&self) -> Classification {
        let con = self.content();
        let mut sim = LetterSet::new();
        let mut mul = LetterSet::new();
        for l in &con {
            if self.occ(l) == 1 {
                sim.insert(l.clone());
            } else {
                mul.insert(l.clone());
            }
        }
        Classification { con, sim, mul }
    }

    pub fn simple(&self) -> LetterSet {
        self.classify().sim
    }

    pub fn multiple(&self) -> LetterSet {
        self.classify().mul
    }

    /// Removes all occurrences of letters from `xs`.
    pub fn delete(&self, xs: &LetterSet) -> Word {
        Word(
            self.0
                .iter()
                .filter(|l| !xs.contains(*l))
                .cloned()
                .collect(),
        )
    }

    /// Keeps only occurrences of letters from `xs`.
    pub fn retain(&self, xs: &LetterSet) -> Word {
        Word(self.0.iter().filter(|l| xs.contains(*l)).cloned().collect())
    }

    /// First occurrence of each letter, in order of first appearance.
    pub fn ini(&self) -> Word {
        let mut seen = LetterSet::new();
        let mut out = Vec::new();
        for l in &self.0 {
            if seen.insert(l.clone()) {
                out.push(l.clone());
            }
        }
        Word(out)
    }

    /// First and second occurrences of each letter, in order.
    pub fn ini2(&self) -> Word {
        let mut counts: Vec<(Letter, usize)> = Vec::new();
        let mut out = Vec::new();
        for l in &self.0 {
            let count = match counts.iter_mut().find(|(k, _)| k == l) {
                Some((_, c)) => {
                    *c += 1;
                    *c
                }
                None => {
                    counts.push((l.clone(), 1));
                    1
                }
            };
            if count <= 2 {
                out.push(l.clone());
            }
        }
        Word(out)
    }

    /// `ini` with every letter doubled.
    pub fn ini_sq(&self) -> Word {
        let mut out = Vec::new();
        for l in self.ini().0 {
            out.push(l.clone());
            out.push(l);
        }
        Word(out)
    }

    /// No letter occurs more than twice.
    pub fn is_2_limited(&self) -> bool {
        self.content().iter().all(|l| self.occ(l) <= 2)
    }
}

/// Partition of the content into simple and multiple letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub con: LetterSet,
    pub sim: LetterSet,
    pub mul: LetterSet,
}

/// Equal occurrence counts per letter on both sides.
pub fn is_balanced(u: &Word, v: &Word) -> bool {
    let letters: LetterSet = u.content().union(&v.content()).cloned().collect();
    letters.iter().all(|l| u.occ(l) == v.occ(l))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn l(s: &str) -> Letter {
        Letter::new(s).unwrap()
    }

    #[test]
    fn parse_basic() {
        assert_eq!(w("x s x t").len(), 4);
        assert_eq!(w("1"), Word::empty());
        assert_eq!(w("x0 x1").letters()[0], l("x0"));
        assert_eq!(w("  x   y  "), w("x y"));
    }

    #[test]
    fn parse_errors_carry_offset() {
        let err = Word::parse("x s X t").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(matches!(err.kind, ParseErrorKind::BadToken(_)));
        let err = Word::parse("x 1 y").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MisplacedOne));
        assert!(Word::parse("  ").is_err());
        assert!(Word::parse("0x").is_err());
    }

    #[test]
    fn render_round_trip() {
        for s in ["1", "x", "x s x t", "x0 x1 zoo"] {
            assert_eq!(w(s).to_string(), s);
            assert_eq!(Word::parse(&w(s).to_string()).unwrap(), w(s));
        }
    }

    #[test]
    fn classify_partitions() {
        let c = w("x s x t").classify();
        assert_eq!(c.con, [l("x"), l("s"), l("t")].into_iter().collect());
        assert_eq!(c.sim, [l("s"), l("t")].into_iter().collect());
        assert_eq!(c.mul, [l("x")].into_iter().collect());
        let c = Word::empty().classify();
        assert!(c.con.is_empty() && c.sim.is_empty() && c.mul.is_empty());
        let c = w("x y x y").classify();
        assert!(c.sim.is_empty());
        assert_eq!(c.mul.len(), 2);
    }

    #[test]
    fn occurrences() {
        let word = w("x s x t");
        assert_eq!(word.occ(&l("x")), 2);
        assert_eq!(word.nth_occ(&l("x"), 2).unwrap().position, 2);
        assert_eq!(Word::empty().occ(&l("x")), 0);
        assert!(matches!(
            word.nth_occ(&l("x"), 3),
            Err(WordError::OccurrenceRange { available: 2, .. })
        ));
        assert!(matches!(
            word.nth_occ(&l("q"), 1),
            Err(WordError::UnknownLetter(_))
        ));
    }

    #[test]
    fn delete_retain() {
        let word = w("x s x t");
        let xs = [l("x")].into_iter().collect();
        assert_eq!(word.delete(&xs), w("s t"));
        let keep = [l("x"), l("t")].into_iter().collect();
        assert_eq!(word.retain(&keep), w("x x t"));
        assert_eq!(word.retain(&word.content()), word);
    }

    #[test]
    fn projections() {
        let word = w("x x x y z y x");
        assert_eq!(word.ini(), w("x y z"));
        assert_eq!(word.ini_sq(), w("x x y y z z"));
        assert_eq!(word.ini2(), w("x x y z y"));
    }

    #[test]
    fn limits_and_balance() {
        assert!(w("x s x t").is_2_limited());
        assert!(!w("x x x").is_2_limited());
        assert!(is_balanced(&w("x y x y"), &w("x x y y")));
        assert!(!is_balanced(&w("x y"), &w("x y y")));
    }
}
