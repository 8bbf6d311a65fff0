//! Sets, families and the fixed landmarks of `B_n`.
//!
//! Element `i` of `[n]` is stored at bit `i - 1` of a [`SetWord`]. The prefix
//! sets `C_i = [i]` form the canonical maximal chain and the shackles
//! `S_i = [i-1] ∪ {i+1}` are the sets comparable to every chain member except
//! `C_i`.

mod json;
mod permutation;
mod shorthand;

use std::fmt;

pub use permutation::Permutation;
pub(crate) use shorthand::parse_sets;
pub use shorthand::{parse_family, parse_set, render_family, render_off_chain, render_set};

use crate::{Error, Result};

/// Largest supported ground size.
pub const MAX_GROUND_SIZE: usize = 20;

pub(crate) fn check_ground_size(n: usize) -> Result<()> {
    if (1..=MAX_GROUND_SIZE).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSize(n))
    }
}

/// A subset of `[n]` as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetWord(pub u32);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    /// The full set `[n]`.
    #[inline]
    pub const fn full(n: usize) -> SetWord {
        SetWord(((1u64 << n) - 1) as u32)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<SetWord> {
        let mut bits = 0u32;
        for e in elements {
            if !(1..=MAX_GROUND_SIZE).contains(&e) {
                return Err(Error::InvalidArgument(format!(
                    "element {e} outside 1..={MAX_GROUND_SIZE}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SetWord(bits))
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, element: usize) -> bool {
        element >= 1 && element <= 32 && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub const fn is_subset_of(self, other: SetWord) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset_of(self, other: SetWord) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    /// `x ⊆ y` or `y ⊆ x`.
    #[inline]
    pub const fn related(self, other: SetWord) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        (self.0 as u64) < 1u64 << n
    }

    #[inline]
    pub const fn complement(self, n: usize) -> SetWord {
        SetWord(!self.0 & SetWord::full(n).0)
    }

    #[inline]
    pub const fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    /// Largest element, or 0 for the empty set.
    #[inline]
    pub const fn max_element(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(e)
        })
    }

    /// The image under `i ↦ n + 1 - i`.
    pub fn reversed(self, n: usize) -> SetWord {
        SetWord(self.0.reverse_bits() >> (32 - n))
    }

    /// The order-reversing image: complement followed by `i ↦ n + 1 - i`.
    pub fn dual(self, n: usize) -> SetWord {
        self.complement(n).reversed(n)
    }
}

impl fmt::Display for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_set(*self))
    }
}

impl fmt::Debug for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", render_set(*self))
    }
}

/// `C_i = [i]`.
pub fn chain_set(i: usize, n: usize) -> Result<SetWord> {
    check_ground_size(n)?;
    if i > n {
        return Err(Error::IndexOutOfRange {
            what: "chain",
            index: i,
            n,
        });
    }
    Ok(SetWord::full(i))
}

/// `S_i = [i-1] ∪ {i+1}` for `1 ≤ i ≤ n - 1`.
pub fn shackle(i: usize, n: usize) -> Result<SetWord> {
    check_ground_size(n)?;
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            what: "shackle",
            index: i,
            n,
        });
    }
    Ok(shackle_unchecked(i))
}

#[inline]
pub(crate) const fn shackle_unchecked(i: usize) -> SetWord {
    SetWord(SetWord::full(i - 1).0 | 1 << i)
}

/// Whether `s` is one of the prefix sets `C_0..C_n`.
#[inline]
pub fn is_chain_set(s: SetWord) -> bool {
    s.0 & s.0.wrapping_add(1) == 0
}

/// The index `i` with `s = S_i`, if `s` is a shackle of `B_n`.
pub fn shackle_index(s: SetWord, n: usize) -> Option<usize> {
    let top = s.max_element();
    if top < 2 || top > n {
        return None;
    }
    let i = top - 1;
    (s == shackle_unchecked(i)).then_some(i)
}

/// `C♭ = {C_0, C_1, …, C_n}`.
pub fn canonical_chain(n: usize) -> Result<Family> {
    check_ground_size(n)?;
    Ok(Family {
        n,
        members: (0..=n).map(SetWord::full).collect(),
    })
}

/// A family of subsets of `[n]`, kept strictly increasing by bitmask value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    n: usize,
    members: Vec<SetWord>,
}

impl Family {
    /// Sorts and deduplicates `members`, rejecting sets outside `[n]`.
    pub fn new<I: IntoIterator<Item = SetWord>>(n: usize, members: I) -> Result<Family> {
        check_ground_size(n)?;
        let mut members: Vec<SetWord> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.fits(n)) {
            return Err(Error::SetOutOfRange { bits: bad.0, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, members })
    }

    pub fn empty(n: usize) -> Result<Family> {
        Family::new(n, [])
    }

    /// `C♭` together with `extras`.
    pub fn with_chain<I: IntoIterator<Item = SetWord>>(n: usize, extras: I) -> Result<Family> {
        check_ground_size(n)?;
        Family::new(n, (0..=n).map(SetWord::full).chain(extras))
    }

    /// Every subset of `[n]`.
    pub fn power_set(n: usize) -> Result<Family> {
        check_ground_size(n)?;
        Ok(Family {
            n,
            members: (0..1u32 << n).map(SetWord).collect(),
        })
    }

    /// Members must already be strictly increasing and inside `[n]`.
    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<SetWord>) -> Family {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|s| s.fits(n)));
        Family { n, members }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SetWord> {
        self.members.iter()
    }

    #[inline]
    pub fn contains(&self, s: SetWord) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn index_of(&self, s: SetWord) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    /// A copy with `s` added.
    pub fn with(&self, s: SetWord) -> Result<Family> {
        if !s.fits(self.n) {
            return Err(Error::SetOutOfRange {
                bits: s.0,
                n: self.n,
            });
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&s) {
            members.insert(pos, s);
        }
        Ok(Family { n: self.n, members })
    }

    /// A copy with `s` removed.
    pub fn without(&self, s: SetWord) -> Family {
        Family {
            n: self.n,
            members: self.members.iter().copied().filter(|&m| m != s).collect(),
        }
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }

    /// Whether every prefix set `C_0..C_n` is a member.
    pub fn contains_canonical_chain(&self) -> bool {
        (0..=self.n).all(|i| self.contains(SetWord::full(i)))
    }

    /// Members that are not prefix sets, in increasing order.
    pub fn off_chain(&self) -> Vec<SetWord> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !is_chain_set(s))
            .collect()
    }

    /// Subsets of `[n]` that are not members, in increasing order.
    pub fn outsiders(&self) -> impl Iterator<Item = SetWord> + '_ {
        let mut next = 0;
        (0..1u32 << self.n).map(SetWord).filter(move |&s| {
            while next < self.members.len() && self.members[next] < s {
                next += 1;
            }
            !(next < self.members.len() && self.members[next] == s)
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_family(self))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}; {})", self.n, render_family(self))
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a SetWord;
    type IntoIter = std::slice::Iter<'a, SetWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// The family turned upside down: every member is complemented and then
/// relabeled by `i ↦ n + 1 - i`, so `C♭` is mapped onto itself.
pub fn dual(family: &Family) -> Family {
    let n = family.n;
    let mut members: Vec<SetWord> = family.members.iter().map(|s| s.dual(n)).collect();
    members.sort_unstable();
    Family { n, members }
}

/// Applies `sigma` to every element of every member.
pub fn relabel(family: &Family, sigma: &Permutation) -> Result<Family> {
    if sigma.len() != family.n {
        return Err(Error::InvalidPermutation(format!(
            "permutation of length {} applied to a family over [{}]",
            sigma.len(),
            family.n
        )));
    }
    let mut members: Vec<SetWord> = family.members.iter().map(|&s| sigma.apply(s)).collect();
    members.sort_unstable();
    Ok(Family {
        n: family.n,
        members,
    })
}
