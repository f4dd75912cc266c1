//! Dense matrices over GF(2), stored as packed row bitsets.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Any nonzero byte counts as 1.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.words_per_row + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.words_per_row + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Entrywise sum. Returns `None` on a shape mismatch.
    pub fn add(&self, other: &BitMatrix) -> Option<BitMatrix> {
        if self.shape() != other.shape() {
            return None;
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Some(out)
    }

    /// Matrix product `self * other`. Returns `None` when the inner dimensions differ.
    pub fn mul(&self, other: &BitMatrix) -> Option<BitMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row(k);
                    let start = i * out.words_per_row;
                    for (dst, s) in out.data[start..start + out.words_per_row]
                        .iter_mut()
                        .zip(src)
                    {
                        *dst ^= s;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}
