//! Free-group word algebra.
//!
//! Words live in the free group on the loop generators `g0, ..., g{rank-1}`
//! around the finite punctures of a marked sphere. Every [`Word`] carries its
//! rank and binary operations refuse to mix ranks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("cannot parse token `{0}` (expected `g<j>` or `g<j>^-1`)")]
    BadToken(String),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator)
        } else {
            write!(f, "g{}", self.generator)
        }
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadToken(tok.to_string());
        let body = tok.strip_prefix('g').ok_or_else(bad)?;
        let (digits, inverse) = match body.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (body, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let generator = digits.parse().map_err(|_| bad())?;
        Ok(Letter { generator, inverse })
    }
}

/// An element of the free group of a fixed rank, stored as a flat letter
/// sequence. The sequence need not be reduced; [`Word::reduce`] produces the
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Self { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, j: usize) -> Result<Self, WordError> {
        Self::from_letters(rank, vec![Letter::pos(j)])
    }

    pub fn from_letters(rank: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(bad) = letters.iter().find(|l| l.generator >= rank) {
            return Err(WordError::IndexOutOfRange { index: bad.generator, rank });
        }
        Ok(Self { rank, letters })
    }

    /// Parses the whitespace-separated token syntax, e.g. `g1 g0 g1^-1 g0^-1`.
    /// The empty string is the identity.
    pub fn parse(rank: usize, text: &str) -> Result<Self, WordError> {
        let letters = text
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_letters(rank, letters)
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

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Free reduction in one stack pass.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { rank: self.rank, letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Letter-level concatenation, without reduction.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters })
    }

    /// Group product, reduced.
    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        Ok(self.concat(other)?.reduce())
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `[a, b] = a b a^-1 b^-1`, reduced.
    pub fn commutator(a: &Word, b: &Word) -> Result<Word, WordError> {
        a.check_rank(b)?;
        let mut letters = Vec::with_capacity(2 * (a.len() + b.len()));
        letters.extend_from_slice(&a.letters);
        letters.extend_from_slice(&b.letters);
        letters.extend(a.letters.iter().rev().map(|l| l.inv()));
        letters.extend(b.letters.iter().rev().map(|l| l.inv()));
        Ok(Word { rank: a.rank, letters }.reduce())
    }

    /// Kills generator `j` (fills the puncture it encircles) and reduces.
    /// The rank is kept; the result lies in the subgroup on the other generators.
    pub fn delete_generator(&self, j: usize) -> Result<Word, WordError> {
        if j >= self.rank {
            return Err(WordError::IndexOutOfRange { index: j, rank: self.rank });
        }
        let letters = self.letters.iter().copied().filter(|l| l.generator != j).collect();
        Ok(Word { rank: self.rank, letters }.reduce())
    }

    /// Imposes `g0 g1 ... g{rank-1} = 1` (the product loop surrounds infinity)
    /// by substituting the last generator with `(g0 ... g{rank-2})^-1`.
    /// The result lives in the free group of rank `rank - 1`.
    pub fn fill_infinity(&self) -> Word {
        if self.rank == 0 {
            return self.reduce();
        }
        let last = self.rank - 1;
        let kept: Vec<usize> = (0..last).collect();
        let letters = substitute_relator(&self.letters, last, &kept);
        Word { rank: last, letters }.reduce()
    }

    /// Signed letter counts per generator (the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn is_trivial(&self) -> bool {
        self.reduce().is_empty()
    }

    /// Reinterprets the word in a larger (or equal) rank, keeping indices.
    pub fn with_rank(&self, rank: usize) -> Result<Word, WordError> {
        Word::from_letters(rank, self.letters.clone())
    }
}

/// Replaces every occurrence of `eliminated` by the inverse of the ordered
/// product of `others` (and its inverse by the product itself).
pub(crate) fn substitute_relator(letters: &[Letter], eliminated: usize, others: &[usize]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        if l.generator != eliminated {
            out.push(l);
        } else if l.inverse {
            out.extend(others.iter().map(|&g| Letter::pos(g)));
        } else {
            out.extend(others.iter().rev().map(|&g| Letter::neg(g)));
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
