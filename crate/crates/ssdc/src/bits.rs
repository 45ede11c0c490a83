//! Packed bit rows for the table-filling dynamic programs.
//!
//! A [`BitRow`] records which sums in `0..=max` are achievable. The solvers
//! need exactly three things from it: point access, ORing one row into
//! another under a shift (optionally keeping only a prefix of the source),
//! and iteration over set bits. Everything is word-level so that rows of a
//! few hundred bits cost a handful of u64 operations. Indices are `u64`
//! because they are sums of item sizes.

/// Fixed-width bitset addressing sums `0..=max`.
#[derive(Clone, PartialEq, Eq)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    /// All-zero row addressing `0..=max`.
    pub fn zeros(max: u64) -> Self {
        let len = max as usize + 1;
        BitRow {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Number of addressable bits (`max + 1`).
    pub fn len(&self) -> u64 {
        self.len as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at `i`; positions beyond the row width read as false.
    pub fn get(&self, i: u64) -> bool {
        if i >= self.len as u64 {
            return false;
        }
        let i = i as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: u64) {
        assert!(
            i < self.len as u64,
            "bit index {i} out of range for row of {}",
            self.len
        );
        let i = i as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= src << shift`, dropping anything past the row width.
    pub fn or_shifted(&mut self, src: &BitRow, shift: u64) {
        self.or_shifted_below(src, shift, src.len as u64);
    }

    /// `self |= (src restricted to bits < below) << shift`.
    ///
    /// The workhorse of the solvers: restriction expresses the strict upper
    /// bounds of the recurrence cases, the shift adds a fixed sum.
    pub fn or_shifted_below(&mut self, src: &BitRow, shift: u64, below: u64) {
        let nbits = below.min(src.len as u64) as usize;
        if nbits == 0 || shift >= self.len as u64 {
            return;
        }
        let shift = shift as usize;
        let ws = shift / 64;
        let bs = shift % 64;
        let src_words = nbits.div_ceil(64);
        for i in 0..src_words {
            let mut w = src.words[i];
            let keep = nbits - i * 64;
            if keep < 64 {
                w &= (1u64 << keep) - 1;
            }
            if w == 0 {
                continue;
            }
            let lo = i + ws;
            if lo < self.words.len() {
                self.words[lo] |= w << bs;
            }
            if bs != 0 && lo + 1 < self.words.len() {
                self.words[lo + 1] |= w >> (64 - bs);
            }
        }
        self.clear_tail();
    }

    /// `self |= src` over the common width.
    pub fn or_row(&mut self, src: &BitRow) {
        self.or_shifted_below(src, 0, src.len as u64);
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Largest set bit, if any.
    pub fn max_one(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i as u64 * 64 + 63 - u64::from(w.leading_zeros()));
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitRow[")?;
        for i in 0..self.len as u64 {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as u64;
                self.cur &= self.cur - 1;
                return Some(self.idx as u64 * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// `out |= a convolved with b`: every pair of set bits adds.
pub fn convolve_or_into(a: &BitRow, b: &BitRow, out: &mut BitRow) {
    for i in a.iter_ones() {
        out.or_shifted(b, i);
    }
}
