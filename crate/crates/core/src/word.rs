//! Freely reduced words in a free group of fixed rank.
//!
//! A word is a sequence of signed generator letters, stored eagerly reduced:
//! there is never an adjacent pair `x_i x_i^{-1}`. Equality of group elements
//! is therefore plain structural equality. The textual grammar is
//! whitespace-separated tokens `x<k>` or `x<k>^<m>` with `m` a nonzero signed
//! integer; `1` (or the empty string) denotes the identity.

use crate::error::{Error, Result};
use std::fmt;

/// One signed letter `x_index^sign` with `sign` in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index.
    pub index: usize,
    /// +1 or -1.
    pub sign: i8,
}

impl Letter {
    pub fn new(index: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: -self.sign }
    }
}

/// A freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    /// The identity word.
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// The single-letter word `x_index` (sign +1) or `x_index^{-1}` (sign -1).
    pub fn generator(rank: usize, index: usize, sign: i8) -> Result<Self> {
        if index == 0 || index > rank {
            return Err(Error::IndexOutOfRange { index, rank });
        }
        Ok(FreeWord { rank, letters: vec![Letter::new(index, sign)] })
    }

    /// Builds a word from raw letters, validating indices and reducing freely.
    pub fn from_letters<I>(rank: usize, letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if l.index == 0 || l.index > rank {
                return Err(Error::IndexOutOfRange { index: l.index, rank });
            }
            push_reduced(&mut stack, l);
        }
        Ok(FreeWord { rank, letters: stack })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Freely reduced product `self · other`.
    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Ok(FreeWord { rank: self.rank, letters: stack })
    }

    /// Group inverse: letters reversed with flipped signs.
    pub fn invert(&self) -> FreeWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        FreeWord { rank: self.rank, letters }
    }

    /// The reverse word: letters in reversed order with unchanged signs.
    pub fn reverse(&self) -> FreeWord {
        let letters = self.letters.iter().rev().copied().collect();
        FreeWord { rank: self.rank, letters }
    }

    /// True iff the word equals its reverse.
    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|p| self.letters[p] == self.letters[n - 1 - p])
    }

    /// Signed count of occurrences of `x_j` (the function `l_j`).
    pub fn exponent_sum(&self, j: usize) -> Result<i64> {
        if j == 0 || j > self.rank {
            return Err(Error::IndexOutOfRange { index: j, rank: self.rank });
        }
        Ok(self
            .letters
            .iter()
            .filter(|l| l.index == j)
            .map(|l| l.sign as i64)
            .sum())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k >= 0 { self.clone() } else { self.invert() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base).expect("equal ranks");
        }
        out
    }

    /// Maximal runs of one signed letter: `x1 x1 x2^-1` yields `[(1, 2), (2, -1)]`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((idx, exp)) if *idx == l.index => *exp += l.sign as i64,
                _ => out.push((l.index, l.sign as i64)),
            }
        }
        out
    }

    /// Parses the word grammar, reducing freely.
    pub fn parse(text: &str, rank: usize) -> Result<FreeWord> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(FreeWord::identity(rank));
        }
        let mut stack: Vec<Letter> = Vec::new();
        let mut offset = 0usize;
        for tok in trimmed.split_whitespace() {
            // Actual byte position of this token for error reporting.
            let position = text[offset..]
                .find(tok)
                .map(|p| p + offset)
                .unwrap_or(offset);
            offset = position + tok.len();
            let (index, exp) = parse_token(tok, position)?;
            if index == 0 || index > rank {
                return Err(Error::IndexOutOfRange { index, rank });
            }
            let sign = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                push_reduced(&mut stack, Letter::new(index, sign));
            }
        }
        Ok(FreeWord { rank, letters: stack })
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    match stack.last() {
        Some(&top) if top == l.inverse() => {
            stack.pop();
        }
        _ => stack.push(l),
    }
}

fn parse_token(tok: &str, position: usize) -> Result<(usize, i64)> {
    let err = |message: String| Error::Parse { position, message };
    let rest = tok
        .strip_prefix('x')
        .ok_or_else(|| err(format!("expected token starting with `x`, got `{tok}`")))?;
    let (digits, exp_part) = match rest.find('^') {
        Some(caret) => (&rest[..caret], Some(&rest[caret + 1..])),
        None => (rest, None),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("bad generator index in `{tok}`")));
    }
    let index: usize = digits
        .parse()
        .map_err(|_| err(format!("index overflow in `{tok}`")))?;
    let exp = match exp_part {
        None => 1,
        Some(e) => {
            let v: i64 = e
                .parse()
                .map_err(|_| err(format!("bad exponent in `{tok}`")))?;
            if v == 0 {
                return Err(err(format!("zero exponent in `{tok}`")));
            }
            v
        }
    };
    Ok((index, exp))
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (index, exp) in self.syllables() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "x{index}")?;
            } else {
                write!(f, "x{index}^{exp}")?;
            }
        }
        Ok(())
    }
}
