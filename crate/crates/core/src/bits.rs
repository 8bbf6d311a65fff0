//! Fixed-width bit rows over family indices.
//!
//! A [`RowTable`] stores one row per family member; bit `j` of row `i`
//! records a relation between member `i` and member `j`.

#[derive(Clone, Debug)]
pub(crate) struct RowTable {
    words: usize,
    data: Vec<u64>,
}

impl RowTable {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        RowTable {
            words,
            data: vec![0; rows * words],
        }
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }
}

#[inline]
pub(crate) fn set_bit(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

#[cfg(test)]
pub(crate) fn test_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

/// `out = a & b`; returns whether the result is nonzero.
#[inline]
pub(crate) fn and_into(out: &mut [u64], a: &[u64], b: &[u64]) -> bool {
    let mut any = 0;
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
        any |= *o;
    }
    any != 0
}

/// Index of the first set bit of `a & b & c`, if any.
#[inline]
pub(crate) fn first_common(a: &[u64], b: &[u64], c: &[u64]) -> Option<usize> {
    for (w, ((x, y), z)) in a.iter().zip(b).zip(c).enumerate() {
        let v = x & y & z;
        if v != 0 {
            return Some(w * 64 + v.trailing_zeros() as usize);
        }
    }
    None
}

pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub(crate) fn count(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}
