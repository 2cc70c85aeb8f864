//! Bit-packed dense 0/1 matrix.
//!
//! Storage is row-major with 64 entries per `u64` word. Every row starts on a
//! word boundary; padding bits past the last column are always zero, which
//! lets row sums be computed with plain `count_ones` over the row's words.

use std::fmt;

use crate::error::Error;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.words.iter_mut().for_each(|w| *w = !0);
        m.clear_padding();
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested rows of booleans. All rows must have the
    /// same length.
    pub fn from_rows<R, T>(rows: R) -> Result<Self, Error>
    where
        R: IntoIterator<Item = T>,
        T: AsRef<[bool]>,
    {
        let rows: Vec<T> = rows.into_iter().collect();
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Ragged {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from a contiguous row-major buffer of 0/1 bytes.
    pub fn from_bytes(rows: usize, cols: usize, bytes: &[u8]) -> Result<Self, Error> {
        if bytes.len() != rows * cols {
            return Err(Error::BufferLength {
                len: bytes.len(),
                expected: rows * cols,
            });
        }
        let mut m = Self::zeros(rows, cols);
        for (idx, &b) in bytes.iter().enumerate() {
            match b {
                0 => {}
                1 => m.set(idx / cols, idx % cols, true),
                other => {
                    return Err(Error::NonBinary {
                        row: idx / cols,
                        col: idx % cols,
                        value: other as i64,
                    })
                }
            }
        }
        Ok(m)
    }

    /// Row-major 0/1 byte buffer of length `rows * cols`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            out.extend((0..self.cols).map(|j| self.get(i, j) as u8));
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        let w = self.words[i * self.stride + j / WORD_BITS];
        (w >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        let w = &mut self.words[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `i`; bit `j % 64` of word `j / 64` is entry `(i, j)`.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row_sum(i)).collect()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        assert!(j < self.cols, "column {j} out of bounds");
        let (word, bit) = (j / WORD_BITS, j % WORD_BITS);
        (0..self.rows)
            .map(|i| (self.words[i * self.stride + word] >> bit) & 1)
            .sum()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.cols];
        for i in 0..self.rows {
            for (wi, &word) in self.row_words(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let bit = w.trailing_zeros() as usize;
                    sums[wi * WORD_BITS + bit] += 1;
                    w &= w - 1;
                }
            }
        }
        sums
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Coordinates of every 1-entry in row-major order.
    pub fn ones_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| {
            self.row_words(i)
                .iter()
                .enumerate()
                .flat_map(move |(wi, &word)| {
                    let mut w = word;
                    std::iter::from_fn(move || {
                        if w == 0 {
                            return None;
                        }
                        let bit = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some((i, wi * WORD_BITS + bit))
                    })
                })
        })
    }

    /// Entrywise `1 - m_ij`. Maps a valid `(m, n, a, b)` magic matrix to a
    /// valid `(m, n, n - a, m - b)` one.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.words.iter_mut().for_each(|w| *w = !*w);
        out.clear_padding();
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j) in self.ones_positions() {
            out.set(j, i, true);
        }
        out
    }

    fn clear_padding(&mut self) {
        let tail = self.cols % WORD_BITS;
        if tail == 0 || self.stride == 0 {
            return;
        }
        let mask = (1u64 << tail) - 1;
        for i in 0..self.rows {
            self.words[i * self.stride + self.stride - 1] &= mask;
        }
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
