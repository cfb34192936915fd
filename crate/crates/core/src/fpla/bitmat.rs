use super::matrix::FpMatrix;

/// Dense `F_2` matrix with 64 columns packed per word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn from_fp(m: &FpMatrix) -> Self {
        assert_eq!(m.modulus(), 2, "bit-packed path is only valid over F_2");
        let mut b = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != 0 {
                    b.bits[i * b.words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        b
    }

    pub fn to_fp(&self) -> FpMatrix {
        let mut data = vec![0u32; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[i * self.cols + j] = self.get(i, j) as u32;
            }
        }
        FpMatrix::from_raw(self.rows, self.cols, 2, data).expect("shape is consistent")
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.bits.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    /// `row[dst] ^= row[src]`, touching words from `from_word` on.
    fn xor_row(&mut self, dst: usize, src: usize, from_word: usize) {
        let w = self.words;
        for k in from_word..w {
            let s = self.bits[src * w + k];
            self.bits[dst * w + k] ^= s;
        }
    }

    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(pr, r);
            let start = if full { 0 } else { r + 1 };
            for i in start..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r, c / 64);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(mut self) -> (Self, Vec<usize>) {
        let pivots = self.eliminate(true);
        (self, pivots)
    }

    pub fn rank(mut self) -> usize {
        self.eliminate(false).len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        let w = out.words;
        for i in 0..self.rows {
            for (kw, &word) in self.row(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let k = kw * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for (dst, src) in out.bits[i * w..(i + 1) * w].iter_mut().zip(other.row(k)) {
                        *dst ^= src;
                    }
                }
            }
        }
        out
    }
}
