use crate::lattice::SetWord;
use crate::{Error, Result};

/// A bijection on `{1..n}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// `image[k]` is the image of element `k + 1`.
    pub fn new(image: Vec<usize>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("{v} appears twice")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// `i ↦ n + 1 - i`.
    pub fn reversal(n: usize) -> Permutation {
        Permutation {
            image: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            image[v - 1] = k + 1;
        }
        Permutation { image }
    }

    /// `σ ∘ τ`: apply `tau` first.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        Permutation {
            image: tau.image.iter().map(|&v| self.image[v - 1]).collect(),
        }
    }

    pub fn apply(&self, s: SetWord) -> SetWord {
        let mut bits = 0u32;
        for e in s.elements() {
            bits |= 1 << (self.image[e - 1] - 1);
        }
        SetWord(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 4, 2]).is_err());
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn inverse_and_compose() {
        let s = Permutation::new(vec![2, 3, 1, 5, 4]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(5));
        assert_eq!(s.inverse().compose(&s), Permutation::identity(5));
        assert_eq!(s.apply(SetWord(0b00001)), SetWord(0b00010));
        assert_eq!(
            Permutation::reversal(4).apply(SetWord(0b0011)),
            SetWord(0b1100)
        );
    }
}
