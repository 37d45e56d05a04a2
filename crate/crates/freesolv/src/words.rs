//! Words over a free-group alphabet and their abelianizations.
//!
//! A [`Word`] is a plain letter sequence over the rank-`r` alphabet
//! `x1..xr` and their inverses. Words are *not* kept freely reduced:
//! every downstream algorithm is valid on unreduced input, and input
//! length matters for the complexity experiments, so reduction is an
//! explicit call.
//!
//! Two text syntaxes round-trip through [`Word::parse`]:
//!
//! * compact: `abAB` — `a..z` for `x1..x26`, `A..Z` for their inverses;
//! * explicit: `x2 x1^-1` — whitespace-separated `xK` / `xK^-1` tokens.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::{Error, Result};

/// One signed generator letter: `x_gen` or `x_gen^-1`.
///
/// Stored as the signed integer `+gen` / `-gen`; `gen` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn positive(gen: usize) -> Letter {
        assert!(gen >= 1 && gen <= i32::MAX as usize);
        Letter(gen as i32)
    }

    pub fn negative(gen: usize) -> Letter {
        assert!(gen >= 1 && gen <= i32::MAX as usize);
        Letter(-(gen as i32))
    }

    pub fn new(gen: usize, positive: bool) -> Letter {
        if positive {
            Letter::positive(gen)
        } else {
            Letter::negative(gen)
        }
    }

    /// 1-based generator index.
    pub fn gen(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Exponent as `+1` / `-1`.
    pub fn exponent(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
}

/// Exponent-sum vector of a word: the image in the free abelian group.
///
/// Doubles as a grid vertex of the Cayley graph of `Z^r`. The derived
/// ordering is lexicographic, which is the key order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianVector(Vec<i64>);

impl AbelianVector {
    pub fn zero(rank: usize) -> AbelianVector {
        AbelianVector(alloc::vec![0; rank])
    }

    pub fn new(coords: Vec<i64>) -> AbelianVector {
        AbelianVector(coords)
    }

    /// Unit vector along `axis` (1-based).
    pub fn unit(rank: usize, axis: usize) -> AbelianVector {
        assert!(axis >= 1 && axis <= rank);
        let mut v = alloc::vec![0; rank];
        v[axis - 1] = 1;
        AbelianVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> i64 {
        self.0[axis - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// Componentwise sum; panics on rank mismatch or overflow.
    pub fn add(&self, other: &AbelianVector) -> AbelianVector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        AbelianVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn sub(&self, other: &AbelianVector) -> AbelianVector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        AbelianVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> AbelianVector {
        AbelianVector(self.0.iter().map(|c| -c).collect())
    }

    /// Copy with `axis` shifted by `step` (`+1` or `-1`).
    pub fn stepped(&self, axis: usize, step: i64) -> AbelianVector {
        let mut v = self.0.clone();
        v[axis - 1] = v[axis - 1].checked_add(step).expect("exponent overflow");
        AbelianVector(v)
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

/// A word in the free group of the given rank. Not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(rank: usize) -> Word {
        assert!(rank >= 1, "rank must be at least 1");
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Builds a word, checking every letter against `rank`.
    pub fn from_letters(rank: usize, letters: Vec<Letter>) -> Result<Word> {
        assert!(rank >= 1, "rank must be at least 1");
        for l in &letters {
            if l.gen() > rank {
                return Err(Error::GeneratorOutOfRange {
                    gen: l.gen(),
                    rank,
                });
            }
        }
        Ok(Word { rank, letters })
    }

    /// Single generator `x_gen`.
    pub fn generator(rank: usize, gen: usize) -> Word {
        Word::from_letters(rank, alloc::vec![Letter::positive(gen)]).expect("gen within rank")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The length-`j` prefix, `0 <= j <= len`.
    pub fn prefix(&self, j: usize) -> Word {
        assert!(j <= self.len());
        Word {
            rank: self.rank,
            letters: self.letters[..j].to_vec(),
        }
    }

    /// Parses compact (`abAB`) or explicit (`x1 x2^-1`) syntax.
    ///
    /// Classification is per whitespace-separated token: a token shaped
    /// `xK` / `xK^-1` is explicit, an all-alphabetic token is compact,
    /// and the two kinds cannot be mixed in one input.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        assert!(rank >= 1, "rank must be at least 1");
        let mut letters = Vec::new();
        let mut saw_compact = false;
        let mut saw_explicit = false;
        for (pos, token) in text.split_whitespace().enumerate() {
            match classify_token(token, pos)? {
                Token::Explicit(gen, positive) => {
                    saw_explicit = true;
                    if gen > rank {
                        return Err(Error::GeneratorOutOfRange { gen, rank });
                    }
                    letters.push(Letter::new(gen, positive));
                }
                Token::Compact => {
                    saw_compact = true;
                    for ch in token.chars() {
                        let (gen, positive) = match ch {
                            'a'..='z' => (ch as usize - 'a' as usize + 1, true),
                            'A'..='Z' => (ch as usize - 'A' as usize + 1, false),
                            _ => unreachable!("classify_token accepts only ascii alphabetic"),
                        };
                        if gen > rank {
                            return Err(Error::GeneratorOutOfRange { gen, rank });
                        }
                        letters.push(Letter::new(gen, positive));
                    }
                }
            }
            if saw_compact && saw_explicit {
                return Err(Error::MixedSyntax);
            }
        }
        Ok(Word { rank, letters })
    }

    /// Compact rendering; `None` when some generator is beyond `z`.
    pub fn to_compact(&self) -> Option<String> {
        let mut s = String::with_capacity(self.len());
        for l in &self.letters {
            if l.gen() > 26 {
                return None;
            }
            let base = if l.is_positive() { b'a' } else { b'A' };
            s.push((base + (l.gen() as u8 - 1)) as char);
        }
        Some(s)
    }

    /// Explicit rendering: `x1 x2^-1`; empty string for the empty word.
    pub fn to_explicit(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "x{}", l.gen());
            if !l.is_positive() {
                s.push_str("^-1");
            }
        }
        s
    }

    /// The unique freely reduced word equal to this one in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last().copied() == Some(l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| w[0] != w[1].inverse())
    }

    /// Reversed letters with flipped signs (the free-group inverse).
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Juxtaposition without reduction; errors on rank mismatch.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    /// `t w t^-1`.
    pub fn conjugated_by(&self, t: &Word) -> Result<Word> {
        t.concat(self)?.concat(&t.inverse())
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Result<Word> {
        u.concat(v)?.concat(&u.inverse())?.concat(&v.inverse())
    }

    /// Signed count of occurrences of each generator.
    pub fn abelianize(&self) -> AbelianVector {
        let mut coords = alloc::vec![0i64; self.rank];
        for l in &self.letters {
            let c = &mut coords[l.gen() - 1];
            *c = c.checked_add(l.exponent()).expect("exponent overflow");
        }
        AbelianVector(coords)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_explicit()),
        }
    }
}

enum Token {
    Explicit(usize, bool),
    Compact,
}

fn classify_token(token: &str, pos: usize) -> Result<Token> {
    if token.chars().all(|c| c.is_ascii_alphabetic()) {
        // A bare `x` is the compact letter x24, not a truncated explicit token.
        return Ok(Token::Compact);
    }
    if let Some(rest) = token.strip_prefix('x') {
        let (digits, positive) = match rest.strip_suffix("^-1") {
            Some(d) => (d, false),
            None => (rest, true),
        };
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let gen: usize = digits
                .parse()
                .map_err(|_| Error::MalformedToken { pos })?;
            if gen == 0 {
                return Err(Error::ZeroGeneratorIndex { pos });
            }
            return Ok(Token::Explicit(gen, positive));
        }
        return Err(Error::MalformedToken { pos });
    }
    match token.chars().find(|c| !c.is_ascii_alphabetic()) {
        Some(ch) => Err(Error::UnknownCharacter { ch, pos }),
        None => Ok(Token::Compact),
    }
}
