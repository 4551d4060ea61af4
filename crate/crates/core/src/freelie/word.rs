//! Words in a two-letter alphabet packed into an integer.

use std::cmp::Ordering;
use std::fmt;

/// Letter 0 is `T` (or `X0`), letter 1 is `A` (or `X1`).
pub const T: u8 = 0;
pub const A: u8 = 1;

/// Maximum supported word length.
pub const MAX_LEN: usize = 32;

/// A word of length at most 32; bit `i` holds the letter at position `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: u32,
    len: u8,
}

impl Word {
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    pub fn letter(l: u8) -> Word {
        Word { bits: l as u32, len: 1 }
    }

    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() <= MAX_LEN);
        let mut bits = 0u32;
        for (i, &l) in letters.iter().enumerate() {
            debug_assert!(l < 2);
            bits |= (l as u32) << i;
        }
        Word { bits, len: letters.len() as u8 }
    }

    /// Parse from a string over `{T, A}` (also accepts `0`/`1`).
    pub fn parse(s: &str) -> Option<Word> {
        let letters: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                'T' | '0' => Some(T),
                'A' | '1' => Some(A),
                _ => None,
            })
            .collect();
        letters.map(|l| Word::from_letters(&l))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn at(self, i: usize) -> u8 {
        ((self.bits >> i) & 1) as u8
    }

    pub fn letters(self) -> Vec<u8> {
        (0..self.len()).map(|i| self.at(i)).collect()
    }

    #[inline]
    pub fn concat(self, other: Word) -> Word {
        debug_assert!(self.len() + other.len() <= MAX_LEN);
        Word { bits: self.bits | (other.bits << self.len), len: self.len + other.len }
    }

    /// First `k` letters.
    #[inline]
    pub fn prefix(self, k: usize) -> Word {
        let mask = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
        Word { bits: self.bits & mask, len: k as u8 }
    }

    /// Letters from position `k` on.
    #[inline]
    pub fn suffix(self, k: usize) -> Word {
        if k >= self.len() {
            return Word::EMPTY;
        }
        Word { bits: self.bits >> k, len: self.len - k as u8 }
    }

    /// Number of occurrences of letter `A`.
    #[inline]
    pub fn count_a(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn reverse(self) -> Word {
        if self.len == 0 {
            return self;
        }
        Word { bits: self.bits.reverse_bits() >> (32 - self.len as u32), len: self.len }
    }

    /// Lexicographic comparison (`T < A`); a proper prefix is smaller.
    pub fn lex_cmp(self, other: Word) -> Ordering {
        let n = self.len().min(other.len());
        for i in 0..n {
            match self.at(i).cmp(&other.at(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.len.cmp(&other.len)
    }

    /// Swap the two letters.
    pub fn swap_letters(self) -> Word {
        let mask = if self.len >= 32 { u32::MAX } else { (1u32 << self.len) - 1 };
        Word { bits: !self.bits & mask, len: self.len }
    }

    /// Subword on the positions set in `mask`, and on the complement.
    pub fn split_by_mask(self, mask: u32) -> (Word, Word) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                a.push(self.at(i));
            } else {
                b.push(self.at(i));
            }
        }
        (Word::from_letters(&a), Word::from_letters(&b))
    }

    pub fn render(self, names: [&str; 2]) -> String {
        if self.len == 0 {
            return "1".to_string();
        }
        (0..self.len()).map(|i| names[self.at(i) as usize]).collect::<Vec<_>>().join("")
    }
}

/// Orders by length, then lexicographically.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.lex_cmp(*other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["T", "A"]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["T", "A"]))
    }
}
