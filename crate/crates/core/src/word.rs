//! Words over a finite alphabet, their contents, staircase paths, letter
//! heights, and the lattice order on two-letter words of equal content.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported alphabet; text form uses 'a'..'z'.
pub const MAX_ALPHABET: usize = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("character {0:?} outside the first {1} lowercase letters")]
    BadChar(char, usize),
    #[error("letter index {0} out of range for alphabet of size {1}")]
    BadLetter(usize, usize),
    #[error("alphabet size {0} not in 1..={MAX_ALPHABET}")]
    BadAlphabet(usize),
    #[error("operation requires a two-letter alphabet, got m={0}")]
    NotTwoLetter(usize),
    #[error("words have different contents")]
    ContentMismatch,
    #[error("height sequence is not non-decreasing or exceeds the letter budget")]
    BadHeight,
    #[error("cannot delete every letter of the alphabet")]
    DeleteAll,
    #[error("not a permutation of the alphabet")]
    BadPermutation,
}

/// A finite nonempty word over an `m`-letter alphabet, letters stored as
/// 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<u8>,
    m: usize,
}

/// Per-letter occurrence counts of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Content(pub Vec<i64>);

impl Content {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn alphabet_size(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The lattice points of the staircase walk of a word, from the origin to
/// its content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircasePath(pub Vec<Vec<i64>>);

/// The height set of one letter: for the j-th occurrence of the letter, the
/// content of the prefix strictly before it. Sorted by the distinguished
/// coordinate, so it is a canonical chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    pub letter: usize,
    pub points: Vec<Vec<i64>>,
}

impl Height {
    /// Empty-height signal: the letter does not occur in the word.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Outcome of comparing two words of equal content in the staircase order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Word {
    pub fn new(letters: Vec<u8>, m: usize) -> Result<Self, WordError> {
        if m == 0 || m > MAX_ALPHABET {
            return Err(WordError::BadAlphabet(m));
        }
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(&bad) = letters.iter().find(|&&l| (l as usize) >= m) {
            return Err(WordError::BadLetter(bad as usize, m));
        }
        Ok(Word { letters, m })
    }

    pub fn parse(text: &str, m: usize) -> Result<Self, WordError> {
        if m == 0 || m > MAX_ALPHABET {
            return Err(WordError::BadAlphabet(m));
        }
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                'a'..='z' if (ch as usize - 'a' as usize) < m => {
                    letters.push((ch as u8) - b'a');
                }
                _ => return Err(WordError::BadChar(ch, m)),
            }
        }
        Self::new(letters, m)
    }

    /// Parse with the alphabet size inferred as max letter index + 1.
    pub fn parse_infer(text: &str) -> Result<Self, WordError> {
        let m = text
            .chars()
            .map(|c| (c as usize).wrapping_sub('a' as usize) + 1)
            .max()
            .unwrap_or(0);
        if m == 0 || m > MAX_ALPHABET {
            return Err(WordError::Empty);
        }
        Self::parse(text, m)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn content(&self) -> Content {
        let mut counts = vec![0i64; self.m];
        for &l in &self.letters {
            counts[l as usize] += 1;
        }
        Content(counts)
    }

    pub fn count_of(&self, letter: usize) -> i64 {
        self.letters.iter().filter(|&&l| l as usize == letter).count() as i64
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, m: self.m }
    }

    /// Replace letter `i` by `sigma[i]` throughout.
    pub fn apply_letter_permutation(&self, sigma: &[usize]) -> Result<Word, WordError> {
        if sigma.len() != self.m {
            return Err(WordError::BadPermutation);
        }
        let mut seen = vec![false; self.m];
        for &s in sigma {
            if s >= self.m || seen[s] {
                return Err(WordError::BadPermutation);
            }
            seen[s] = true;
        }
        let letters = self
            .letters
            .iter()
            .map(|&l| sigma[l as usize] as u8)
            .collect();
        Ok(Word { letters, m: self.m })
    }

    /// The dual of a two-letter word: exchange the roles of the letters.
    pub fn dual(&self) -> Result<Word, WordError> {
        if self.m != 2 {
            return Err(WordError::NotTwoLetter(self.m));
        }
        self.apply_letter_permutation(&[1, 0])
    }

    pub fn path(&self) -> StaircasePath {
        let mut points = Vec::with_capacity(self.letters.len() + 1);
        let mut cur = vec![0i64; self.m];
        points.push(cur.clone());
        for &l in &self.letters {
            cur[l as usize] += 1;
            points.push(cur.clone());
        }
        StaircasePath(points)
    }

    /// Height set of `letter`: one point per occurrence, the content of the
    /// prefix strictly before it. Empty when the letter is absent.
    pub fn letter_height(&self, letter: usize) -> Height {
        let mut points = Vec::new();
        let mut cur = vec![0i64; self.m];
        for &l in &self.letters {
            if l as usize == letter {
                points.push(cur.clone());
            }
            cur[l as usize] += 1;
        }
        Height { letter, points }
    }

    /// For m=2, the vector of second coordinates of the a-height: entry k is
    /// the number of b's before the (k+1)-th a.
    pub fn a_height_profile(&self) -> Result<Vec<i64>, WordError> {
        if self.m != 2 {
            return Err(WordError::NotTwoLetter(self.m));
        }
        let mut alpha = Vec::new();
        let mut bs = 0i64;
        for &l in &self.letters {
            if l == 0 {
                alpha.push(bs);
            } else {
                bs += 1;
            }
        }
        Ok(alpha)
    }

    /// The unique two-letter word with the given a-height profile and `ell_b`
    /// occurrences of the second letter.
    pub fn from_a_height(alpha: &[i64], ell_b: i64) -> Result<Word, WordError> {
        if alpha.is_empty() {
            if ell_b <= 0 {
                return Err(WordError::Empty);
            }
            return Word::new(vec![1; ell_b as usize], 2);
        }
        if alpha[0] < 0 || alpha.windows(2).any(|w| w[0] > w[1]) || *alpha.last().unwrap() > ell_b
        {
            return Err(WordError::BadHeight);
        }
        let mut letters = Vec::with_capacity(alpha.len() + ell_b as usize);
        let mut prev = 0i64;
        for &a in alpha {
            letters.extend(std::iter::repeat(1u8).take((a - prev) as usize));
            letters.push(0);
            prev = a;
        }
        letters.extend(std::iter::repeat(1u8).take((ell_b - prev) as usize));
        Word::new(letters, 2)
    }

    /// Staircase-order comparison of two-letter words of equal content.
    pub fn compare(&self, other: &Word) -> Result<WordOrder, WordError> {
        if self.m != 2 || other.m != 2 {
            return Err(WordError::NotTwoLetter(self.m.max(other.m)));
        }
        if self.content() != other.content() {
            return Err(WordError::ContentMismatch);
        }
        let (a, b) = (self.a_height_profile()?, other.a_height_profile()?);
        let mut le = true;
        let mut ge = true;
        for (x, y) in a.iter().zip(&b) {
            if x > y {
                le = false;
            }
            if x < y {
                ge = false;
            }
        }
        Ok(match (le, ge) {
            (true, true) => WordOrder::Equal,
            (true, false) => WordOrder::Less,
            (false, true) => WordOrder::Greater,
            (false, false) => WordOrder::Incomparable,
        })
    }

    pub fn meet(&self, other: &Word) -> Result<Word, WordError> {
        self.lattice_op(other, i64::min)
    }

    pub fn join(&self, other: &Word) -> Result<Word, WordError> {
        self.lattice_op(other, i64::max)
    }

    fn lattice_op(&self, other: &Word, op: fn(i64, i64) -> i64) -> Result<Word, WordError> {
        if self.m != 2 || other.m != 2 {
            return Err(WordError::NotTwoLetter(self.m.max(other.m)));
        }
        if self.content() != other.content() {
            return Err(WordError::ContentMismatch);
        }
        let alpha: Vec<i64> = self
            .a_height_profile()?
            .iter()
            .zip(&other.a_height_profile()?)
            .map(|(&x, &y)| op(x, y))
            .collect();
        Word::from_a_height(&alpha, self.count_of(1))
    }

    /// All words obtained by a single adjacent swap of two distinct letters.
    pub fn neighbors(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for i in 0..self.letters.len().saturating_sub(1) {
            if self.letters[i] != self.letters[i + 1] {
                let mut letters = self.letters.clone();
                letters.swap(i, i + 1);
                out.push(Word { letters, m: self.m });
            }
        }
        out
    }

    /// Delete all occurrences of the letters in `delta` and reindex the rest.
    pub fn delete_letters(&self, delta: &[usize]) -> Result<Word, WordError> {
        let mut drop = vec![false; self.m];
        for &d in delta {
            if d >= self.m {
                return Err(WordError::BadLetter(d, self.m));
            }
            drop[d] = true;
        }
        if drop.iter().all(|&d| d) {
            return Err(WordError::DeleteAll);
        }
        let mut remap = vec![0u8; self.m];
        let mut next = 0u8;
        for (i, &d) in drop.iter().enumerate() {
            if !d {
                remap[i] = next;
                next += 1;
            }
        }
        let letters: Vec<u8> = self
            .letters
            .iter()
            .filter(|&&l| !drop[l as usize])
            .map(|&l| remap[l as usize])
            .collect();
        Word::new(letters, next as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            m: self.m.max(other.m),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", (b'a' + l) as char)?;
        }
        Ok(())
    }
}
