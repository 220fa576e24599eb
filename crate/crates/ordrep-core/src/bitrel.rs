//! Square boolean relations packed into 64-bit rows.

/// A dense `n x n` boolean matrix with bit-packed rows.
///
/// Rows are the unit of work: subset tests and unions over a row cost
/// `n/64` word operations, which is what keeps the relation-heavy
/// constructions cheap on gadget-sized inputs.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Does row `i` denote a subset of row `j`?
    pub fn row_subset(&self, i: usize, j: usize) -> bool {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn row_eq(&self, i: usize, j: usize) -> bool {
        self.row(i) == self.row(j)
    }

    /// OR row `src` into row `dst`. Returns true if `dst` changed.
    pub fn row_or(&mut self, dst: usize, src: usize) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let s = self.bits[src * self.words + k];
            let d = &mut self.bits[dst * self.words + k];
            let new = *d | s;
            changed |= new != *d;
            *d = new;
        }
        changed
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, &word) in self.row(i).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push((k * 64 + b) as u32);
                w &= w - 1;
            }
        }
        out
    }

    /// Reflexive-transitive-style closure: propagates every row into all
    /// rows that reach it. Warshall over packed rows.
    pub fn transitive_close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.row_or(i, k);
                }
            }
        }
    }

    /// Checks `get(i,j) && get(j,k) => get(i,k)` for all triples; returns the
    /// first failing triple in lexicographic order.
    pub fn transitivity_gap(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) && !self.row_subset(j, i) {
                    for k in 0..self.n {
                        if self.get(j, k) && !self.get(i, k) {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for (k, &word) in self.row(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    t.set(k * 64 + b, i, true);
                    w &= w - 1;
                }
            }
        }
        t
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
