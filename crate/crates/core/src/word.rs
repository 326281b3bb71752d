//! Finite words over small integer alphabets.
//!
//! Letters are plain `u8` values. Rendering maps `0..=9` to ASCII digits and
//! `10..=35` to `a..=z`; it is purely a presentation concern.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet the text rendering can express.
pub const MAX_ALPHABET: usize = 36;

const SYMBOLS: &[u8; MAX_ALPHABET] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub(crate) fn check_alphabet(k: usize) -> Result<()> {
    if (1..=MAX_ALPHABET).contains(&k) {
        Ok(())
    } else {
        Err(Error::AlphabetSize(k))
    }
}

pub fn render_letter(letter: Letter) -> char {
    SYMBOLS[letter as usize] as char
}

pub fn parse_letter(c: char, position: usize) -> Result<Letter> {
    match c {
        '0'..='9' => Ok(c as u8 - b'0'),
        'a'..='z' => Ok(c as u8 - b'a' + 10),
        _ => Err(Error::InvalidSymbol { found: c, position }),
    }
}

/// An immutable finite word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word over an alphabet of size `k`, rejecting letters `>= k`.
    pub fn new(letters: Vec<Letter>, k: usize) -> Result<Self> {
        check_alphabet(k)?;
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l as usize >= k) {
            return Err(Error::LetterOutOfRange { letter, position, alphabet: k });
        }
        Ok(Word { letters })
    }

    /// Callers guarantee every letter is below [`MAX_ALPHABET`].
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < MAX_ALPHABET));
        Word { letters }
    }

    /// Parses the digits-then-lowercase rendering over an alphabet of size `k`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        check_alphabet(k)?;
        let letters = text
            .chars()
            .enumerate()
            .map(|(position, c)| {
                let letter = parse_letter(c, position)?;
                if letter as usize >= k {
                    Err(Error::LetterOutOfRange { letter, position, alphabet: k })
                } else {
                    Ok(letter)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { letters })
    }

    /// Parses a rendering, taking the alphabet to be the smallest one containing every letter.
    pub fn parse_inferred(text: &str) -> Result<Self> {
        Word::parse(text, MAX_ALPHABET)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Smallest alphabet size the word fits in (1 for the empty word).
    pub fn alphabet_size(&self) -> usize {
        self.letters.iter().max().map_or(1, |&m| m as usize + 1)
    }

    pub fn reverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.letters)
    }

    /// The factor of length `len` starting at 0-based index `start`.
    pub fn factor(&self, start: usize, len: usize) -> Result<Word> {
        match start.checked_add(len) {
            Some(end) if end <= self.len() => Ok(Word { letters: self.letters[start..end].to_vec() }),
            _ => Err(Error::FactorRange { start, len, word_len: self.len() }),
        }
    }

    pub fn concat<'a, I>(words: I) -> Word
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut letters = Vec::new();
        for w in words {
            letters.extend_from_slice(&w.letters);
        }
        Word { letters }
    }

    /// Applies a letter-to-letter renaming; `coding[a]` is the new name of `a`.
    pub fn recode(&self, coding: &[Letter]) -> Result<Word> {
        let letters = self
            .letters
            .iter()
            .enumerate()
            .map(|(position, &l)| match coding.get(l as usize) {
                Some(&m) if (m as usize) < MAX_ALPHABET => Ok(m),
                Some(&m) => Err(Error::LetterOutOfRange { letter: m, position, alphabet: MAX_ALPHABET }),
                None => Err(Error::LetterOutOfRange { letter: l, position, alphabet: coding.len() }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { letters })
    }

    pub fn render(&self) -> String {
        self.letters.iter().map(|&l| render_letter(l)).collect()
    }
}

pub fn is_palindrome(letters: &[Letter]) -> bool {
    letters.iter().eq(letters.iter().rev())
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        Word::new(letters, MAX_ALPHABET)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.render())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Word::parse_inferred(&text).map_err(serde::de::Error::custom)
    }
}
