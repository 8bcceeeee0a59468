//! Binary relations on `{0..n-1}` stored as bit-packed adjacency rows, so
//! that relational composition is a boolean matrix product.

/// A binary relation on `{0..n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        let words = n.div_ceil(64).max(1);
        Relation { n, words, rows: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for a in 0..n {
            r.set(a, a, true);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut r = Relation::empty(n);
        for &(a, b) in pairs {
            r.set(a, b, true);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, val: bool) {
        let w = a * self.words + b / 64;
        if val {
            self.rows[w] |= 1 << (b % 64);
        } else {
            self.rows[w] &= !(1 << (b % 64));
        }
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    /// Successors of `a` in ascending order.
    pub fn successors(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.get(a, b)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if self.get(a, b) {
                    t.set(b, a, true);
                }
            }
        }
        t
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (w, ow) in r.rows.iter_mut().zip(&other.rows) {
            *w |= ow;
        }
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n);
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Boolean matrix product `self ; other`: `a (R;S) c` iff there is a
    /// `b` with `a R b` and `b S c`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut out = Relation::empty(self.n);
        for a in 0..self.n {
            let dst = a * self.words;
            for b in 0..self.n {
                if self.get(a, b) {
                    let src = b * self.words;
                    for w in 0..self.words {
                        out.rows[dst + w] |= other.rows[src + w];
                    }
                }
            }
        }
        out
    }

    /// `n`-fold composition; the 0th power is the identity.
    pub fn power(&self, k: usize) -> Relation {
        let mut out = Relation::identity(self.n);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.get(a, b) != self.get(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_serial(&self) -> bool {
        (0..self.n).all(|a| self.row(a).iter().any(|&w| w != 0))
    }

    pub fn is_total(&self) -> bool {
        let mask_last = if self.n.is_multiple_of(64) && self.n > 0 {
            u64::MAX
        } else {
            (1u64 << (self.n % 64)) - 1
        };
        (0..self.n).all(|a| {
            let row = self.row(a);
            row[..self.words - 1].iter().all(|&w| w == u64::MAX)
                && row[self.words - 1] == mask_last
        })
    }
}
