//! Words over the alphabet [m] = {1, .., m}: contraction, plus-extension,
//! canonical indexing, and a packed fixed-width encoding for scan loops.

use std::fmt;

use crate::error::{Error, Result};

/// Longest word the 2-bit packed encoding can hold.
pub const PACKED_MAX_LEN: usize = 30;

pub(crate) fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let exp32 = u32::try_from(exp).map_err(|_| Error::SpaceTooLarge { base, exp })?;
    base.checked_pow(exp32)
        .ok_or(Error::SpaceTooLarge { base, exp })
}

/// An element of [m]^n. Letters are 1-based and the empty word is legal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    m: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, m: u8) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        for &letter in &letters {
            if letter == 0 || letter > m {
                return Err(Error::LetterOutOfRange { letter, m });
            }
        }
        Ok(Word { letters, m })
    }

    pub fn empty(m: u8) -> Self {
        Word { letters: Vec::new(), m }
    }

    /// The constant word i^n.
    pub fn repeated(letter: u8, n: usize, m: u8) -> Result<Self> {
        Word::new(vec![letter; n], m)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Collapses every maximal constant run to a single letter.
    pub fn contract(&self) -> Word {
        let mut out = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            if out.last() != Some(&letter) {
                out.push(letter);
            }
        }
        Word { letters: out, m: self.m }
    }

    /// The word 1 w 1.
    pub fn plus_extend(&self) -> Word {
        let mut out = Vec::with_capacity(self.letters.len() + 2);
        out.push(1);
        out.extend_from_slice(&self.letters);
        out.push(1);
        Word { letters: out, m: self.m }
    }

    /// Position of this word in the lexicographic enumeration of [m]^n,
    /// with letter 1 as the smallest digit.
    pub fn index(&self) -> Result<u64> {
        let m = self.m as u64;
        let mut acc: u64 = 0;
        for &letter in &self.letters {
            acc = acc
                .checked_mul(m)
                .and_then(|a| a.checked_add((letter - 1) as u64))
                .ok_or(Error::SpaceTooLarge { base: m, exp: self.letters.len() })?;
        }
        Ok(acc)
    }

    /// Inverse of [`Word::index`] for fixed (m, n).
    pub fn from_index(index: u64, m: u8, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAlphabet { m });
        }
        let space = checked_pow(m as u64, n)?;
        if index >= space {
            return Err(Error::IndexOutOfRange { index, space });
        }
        let mut letters = vec![1u8; n];
        let mut rest = index;
        for slot in letters.iter_mut().rev() {
            *slot = (rest % m as u64) as u8 + 1;
            rest /= m as u64;
        }
        Ok(Word { letters, m })
    }

    /// Parses the ASCII digit form; `-` is the empty word. Only m <= 9.
    pub fn from_text(text: &str, m: u8) -> Result<Self> {
        if text == "-" {
            return Word::new(Vec::new(), m);
        }
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let digit = ch.to_digit(10).ok_or(Error::BadSymbol { ch })?;
            if digit == 0 || digit > 9 {
                return Err(Error::BadSymbol { ch });
            }
            letters.push(digit as u8);
        }
        Word::new(letters, m)
    }

    /// 2-bit packed encoding, most significant symbol first. Available for
    /// m <= 4 and n <= [`PACKED_MAX_LEN`].
    pub fn pack(&self) -> Option<u64> {
        if self.m > 4 || self.letters.len() > PACKED_MAX_LEN {
            return None;
        }
        let mut bits: u64 = 0;
        for &letter in &self.letters {
            bits = (bits << 2) | (letter - 1) as u64;
        }
        Some(bits)
    }

    pub fn unpack(bits: u64, m: u8, n: usize) -> Result<Self> {
        if m == 0 || m > 4 {
            return Err(Error::InvalidAlphabet { m });
        }
        if n > PACKED_MAX_LEN {
            return Err(Error::PositionOutOfRange { pos: n, n: PACKED_MAX_LEN });
        }
        let mut letters = Vec::with_capacity(n);
        for code in packed_codes(bits, n) {
            if code >= m {
                return Err(Error::LetterOutOfRange { letter: code + 1, m });
            }
            letters.push(code + 1);
        }
        Word::new(letters, m)
    }
}

/// The 2-bit symbol codes of a packed sequence, most significant first.
pub fn packed_codes(bits: u64, n: usize) -> impl Iterator<Item = u8> {
    debug_assert!(n <= PACKED_MAX_LEN + 2);
    (0..n).map(move |j| ((bits >> (2 * (n - 1 - j))) & 3) as u8)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        for &letter in &self.letters {
            if letter <= 9 {
                write!(f, "{letter}")?;
            } else {
                write!(f, "<{letter}>")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}; m={}]", self.m)
    }
}
