//! Bit-packed binary words and finitely supported binary configurations.

use std::fmt;

use rand::Rng;

use crate::error::{MarkerError, Result};

/// A binary word of fixed length; bit `i` lives in `bits[i / 64]` at position `i % 64`.
/// Storage bits past `len` are always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    len: usize,
    bits: Vec<u64>,
}

impl Word {
    pub fn zeros(len: usize) -> Self {
        Word { len, bits: vec![0; len.div_ceil(64)] }
    }

    pub fn from_symbols(symbols: &[u8]) -> Self {
        let mut w = Word::zeros(symbols.len());
        for (i, &b) in symbols.iter().enumerate() {
            w.set(i, b != 0);
        }
        w
    }

    pub fn parse(text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(MarkerError::Parse(format!("unexpected character {other:?} in a binary word"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word::from_symbols(&symbols))
    }

    pub fn random<R: Rng>(rng: &mut R, len: usize) -> Self {
        let mut w = Word::zeros(len);
        for b in &mut w.bits {
            *b = rng.gen();
        }
        w.clear_tail();
        w
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Symbol at `i` of the zero-padded bi-infinite extension.
    pub fn padded(&self, i: i64) -> u8 {
        if i < 0 || i >= self.len as i64 {
            0
        } else {
            u8::from(self.get(i as usize))
        }
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let mask = 1u64 << (i % 64);
        if b {
            self.bits[i / 64] |= mask;
        } else {
            self.bits[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Hamming distance; both words must have the same length.
    pub fn hamming(&self, other: &Word) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.bits.iter().zip(&other.bits).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    /// 64 bits starting at `p` of the zero-padded extension.
    fn chunk(&self, p: i64) -> u64 {
        if p >= self.len as i64 || p <= -64 {
            return 0;
        }
        if p < 0 {
            return self.bits[0] << (-p) as u32;
        }
        let (w, s) = ((p / 64) as usize, (p % 64) as u32);
        let lo = self.bits[w] >> s;
        let hi = if s > 0 && w + 1 < self.bits.len() { self.bits[w + 1] << (64 - s) } else { 0 };
        lo | hi
    }

    /// The length-`len` word read from the zero-padded extension starting at `offset`.
    pub fn window(&self, offset: i64, len: usize) -> Word {
        let mut out = Word::zeros(len);
        for (t, b) in out.bits.iter_mut().enumerate() {
            *b = self.chunk(offset + 64 * t as i64);
        }
        out.clear_tail();
        out
    }

    /// Hamming distance between `window(offset, other.len())` and `other`, without allocating.
    pub fn window_hamming(&self, offset: i64, other: &Word) -> usize {
        let full = other.len / 64;
        let mut total = 0usize;
        for t in 0..other.bits.len() {
            let mut c = self.chunk(offset + 64 * t as i64);
            if t == full {
                c &= (1u64 << (other.len % 64)) - 1;
            }
            total += (c ^ other.bits[t]).count_ones() as usize;
        }
        total
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A binary configuration over the zero background, stored on `[start, start + len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    pub start: i64,
    pub word: Word,
}

impl Tape {
    pub fn new(start: i64, word: Word) -> Self {
        Tape { start, word }
    }

    pub fn at(&self, i: i64) -> u8 {
        self.word.padded(i - self.start)
    }

    pub fn window_hamming(&self, j: i64, other: &Word) -> usize {
        self.word.window_hamming(j - self.start, other)
    }

    pub fn flipped(&self, i: i64) -> Tape {
        let mut t = self.clone();
        let k = i - self.start;
        assert!(k >= 0 && (k as usize) < t.word.len(), "flip outside the stored span");
        t.word.flip(k as usize);
        t
    }
}
