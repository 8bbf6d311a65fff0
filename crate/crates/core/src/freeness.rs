//! Induced `2C_2` detection, freeness and saturation.
//!
//! Every member gets three bit rows over family indices (strict supersets,
//! strict subsets, incomparable members), so the quadruple search reduces to
//! word operations. A copy is found by fixing its two incomparable bottoms
//! and looking for tops above each that avoid the other side.

use serde::{Deserialize, Serialize};

use crate::bits::{self, RowTable};
use crate::lattice::{Family, SetWord};
use crate::{Error, Result};

/// `a ⊆ b` or `b ⊆ a`.
#[inline]
pub fn related(a: SetWord, b: SetWord) -> bool {
    a.related(b)
}

/// `a ⊊ a_up`, `b ⊊ b_up`, and no other comparabilities among the four.
pub fn is_induced_2c2(a: SetWord, a_up: SetWord, b: SetWord, b_up: SetWord) -> bool {
    a.is_proper_subset_of(a_up)
        && b.is_proper_subset_of(b_up)
        && !a.related(b)
        && !a.related(b_up)
        && !a_up.related(b)
        && !a_up.related(b_up)
}

/// Whether four distinct sets, in any order, form an induced `2C_2`: their
/// comparability graph is a perfect matching.
pub fn forms_induced_2c2(sets: [SetWord; 4]) -> bool {
    let mut degree = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if sets[i] == sets[j] {
                return false;
            }
            if sets[i].related(sets[j]) {
                degree[i] += 1;
                degree[j] += 1;
                edges += 1;
            }
        }
    }
    edges == 2 && degree == [1; 4]
}

/// Four sets `a ⊊ a_up`, `b ⊊ b_up` whose only comparabilities are those two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedCopy {
    pub a: SetWord,
    pub a_up: SetWord,
    pub b: SetWord,
    pub b_up: SetWord,
}

impl InducedCopy {
    pub fn is_valid(&self) -> bool {
        is_induced_2c2(self.a, self.a_up, self.b, self.b_up)
    }

    pub fn members(&self) -> [SetWord; 4] {
        [self.a, self.a_up, self.b, self.b_up]
    }

    pub fn uses(&self, s: SetWord) -> bool {
        self.members().contains(&s)
    }
}

impl std::fmt::Display for InducedCopy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ⊊ {} ∥ {} ⊊ {}", self.a, self.a_up, self.b, self.b_up)
    }
}

/// The comparability structure of a list of distinct sets.
pub(crate) struct Relations<'a> {
    sets: &'a [SetWord],
    up: RowTable,
    down: RowTable,
    incomp: RowTable,
}

/// Rows of an outside set against the members of a [`Relations`].
struct Probe {
    up: Vec<u64>,
    down: Vec<u64>,
    incomp: Vec<u64>,
}

impl<'a> Relations<'a> {
    pub fn new(sets: &'a [SetWord]) -> Self {
        let m = sets.len();
        let mut up = RowTable::new(m, m);
        let mut down = RowTable::new(m, m);
        let mut incomp = RowTable::new(m, m);
        for (i, &x) in sets.iter().enumerate() {
            for (j, &y) in sets.iter().enumerate().skip(i + 1) {
                if x.is_subset_of(y) {
                    up.set(i, j);
                    down.set(j, i);
                } else if y.is_subset_of(x) {
                    up.set(j, i);
                    down.set(i, j);
                } else {
                    incomp.set(i, j);
                    incomp.set(j, i);
                }
            }
        }
        Relations {
            sets,
            up,
            down,
            incomp,
        }
    }

    #[inline]
    pub fn down_row(&self, i: usize) -> &[u64] {
        self.down.row(i)
    }

    fn probe(&self, s: SetWord) -> Probe {
        let w = self.up.words();
        let mut p = Probe {
            up: vec![0; w],
            down: vec![0; w],
            incomp: vec![0; w],
        };
        for (j, &y) in self.sets.iter().enumerate() {
            if s == y {
                continue;
            }
            if s.is_subset_of(y) {
                bits::set_bit(&mut p.up, j);
            } else if y.is_subset_of(s) {
                bits::set_bit(&mut p.down, j);
            } else {
                bits::set_bit(&mut p.incomp, j);
            }
        }
        p
    }

    /// Some induced copy among the members.
    pub fn find_copy(&self) -> Option<InducedCopy> {
        let w = self.up.words();
        let mut ua = vec![0u64; w];
        let mut ub = vec![0u64; w];
        for a in 0..self.sets.len() {
            let inc_a = self.incomp.row(a);
            for b in bits::ones(inc_a).filter(|&b| b > a) {
                let inc_b = self.incomp.row(b);
                if !bits::and_into(&mut ua, self.up.row(a), inc_b)
                    || !bits::and_into(&mut ub, self.up.row(b), inc_a)
                {
                    continue;
                }
                for a_up in bits::ones(&ua) {
                    let inc_top = self.incomp.row(a_up);
                    if let Some(b_up) = bits::first_common(&ub, inc_top, &ub) {
                        return Some(self.copy(a, a_up, b, b_up));
                    }
                }
            }
        }
        None
    }

    /// Some induced copy among the members together with `s`, using `s`.
    /// `s` must not be a member.
    pub fn find_copy_with(&self, s: SetWord) -> Option<InducedCopy> {
        let p = self.probe(s);
        let w = self.up.words();
        let mut ua = vec![0u64; w];
        let mut ub = vec![0u64; w];

        // `s` at the bottom of one pair.
        for b in bits::ones(&p.incomp) {
            let inc_b = self.incomp.row(b);
            if !bits::and_into(&mut ua, &p.up, inc_b)
                || !bits::and_into(&mut ub, self.up.row(b), &p.incomp)
            {
                continue;
            }
            for a_up in bits::ones(&ua) {
                if let Some(b_up) = bits::first_common(&ub, self.incomp.row(a_up), &ub) {
                    return Some(InducedCopy {
                        a: s,
                        a_up: self.sets[a_up],
                        b: self.sets[b],
                        b_up: self.sets[b_up],
                    });
                }
            }
        }

        // `s` at the top of one pair.
        for a in bits::ones(&p.down) {
            let inc_a = self.incomp.row(a);
            if !bits::and_into(&mut ub, &p.incomp, inc_a) {
                continue;
            }
            for b_up in bits::ones(&ub) {
                if let Some(b) = bits::first_common(self.down.row(b_up), &p.incomp, inc_a) {
                    return Some(InducedCopy {
                        a: self.sets[a],
                        a_up: s,
                        b: self.sets[b],
                        b_up: self.sets[b_up],
                    });
                }
            }
        }
        None
    }

    fn copy(&self, a: usize, a_up: usize, b: usize, b_up: usize) -> InducedCopy {
        InducedCopy {
            a: self.sets[a],
            a_up: self.sets[a_up],
            b: self.sets[b],
            b_up: self.sets[b_up],
        }
    }
}

/// Some induced copy of `2C_2` inside `family`, or `None` when it is free.
pub fn find_induced_copy(family: &Family) -> Option<InducedCopy> {
    Relations::new(family.members()).find_copy()
}

/// Some induced copy inside `family ∪ {s}` that uses `s`.
pub fn find_induced_copy_with(family: &Family, s: SetWord) -> Result<Option<InducedCopy>> {
    if family.contains(s) {
        return Err(Error::InvalidArgument(format!(
            "{s} is already a member of the family"
        )));
    }
    if !s.fits(family.n()) {
        return Err(Error::SetOutOfRange {
            bits: s.bits(),
            n: family.n(),
        });
    }
    Ok(Relations::new(family.members()).find_copy_with(s))
}

pub fn is_free(family: &Family) -> bool {
    find_induced_copy(family).is_none()
}

/// Free, and every outside set completes an induced copy. Outsiders are
/// tried in increasing bitmask order and the scan stops at the first failure.
pub fn is_saturated(family: &Family) -> bool {
    let rel = Relations::new(family.members());
    rel.find_copy().is_none() && family.outsiders().all(|s| rel.find_copy_with(s).is_some())
}

/// Outcome of a full saturation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    /// One completing copy per outside set, in increasing order of the outsider.
    Saturated { witnesses: Vec<OutsiderWitness> },
    /// The family itself contains this copy.
    NotFree { copy: InducedCopy },
    /// Adding this set creates no induced copy.
    Unsaturated { outsider: SetWord },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutsiderWitness {
    pub outsider: SetWord,
    pub copy: InducedCopy,
}

impl Certificate {
    pub fn is_saturated(&self) -> bool {
        matches!(self, Certificate::Saturated { .. })
    }
}

pub fn certify(family: &Family) -> Certificate {
    let rel = Relations::new(family.members());
    if let Some(copy) = rel.find_copy() {
        return Certificate::NotFree { copy };
    }
    let mut witnesses = Vec::new();
    for outsider in family.outsiders() {
        match rel.find_copy_with(outsider) {
            Some(copy) => witnesses.push(OutsiderWitness { outsider, copy }),
            None => return Certificate::Unsaturated { outsider },
        }
    }
    Certificate::Saturated { witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{canonical_chain, dual, parse_family, parse_set};
    use proptest::prelude::*;

    fn set(s: &str) -> SetWord {
        parse_set(s, 20).unwrap()
    }

    fn fam(n: usize, s: &str) -> Family {
        parse_family(s, n).unwrap()
    }

    /// Every ordered quadruple of distinct members.
    fn brute_force_copy(f: &Family) -> Option<InducedCopy> {
        let m = f.members();
        for &a in m {
            for &a_up in m {
                for &b in m {
                    for &b_up in m {
                        let c = InducedCopy { a, a_up, b, b_up };
                        if c.is_valid() {
                            return Some(c);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn relation_basics() {
        assert!(related(set("1"), set("13")));
        assert!(!related(set("1"), set("23")));
        assert!(related(set("12"), set("12")));
    }

    #[test]
    fn unordered_predicate() {
        assert!(forms_induced_2c2([
            set("23"),
            set("1"),
            set("2"),
            set("13")
        ]));
        assert!(!forms_induced_2c2([
            set("1"),
            set("12"),
            set("2"),
            set("23")
        ]));
        assert!(!forms_induced_2c2([
            set("1"),
            set("1"),
            set("2"),
            set("23")
        ]));
    }

    #[test]
    fn quadruple_predicate() {
        assert!(is_induced_2c2(set("1"), set("13"), set("2"), set("23")));
        assert!(!is_induced_2c2(
            SetWord::EMPTY,
            set("1"),
            set("2"),
            set("23")
        ));
        assert!(!is_induced_2c2(set("1"), set("12"), set("2"), set("23")));
    }

    #[test]
    fn finds_copies() {
        for n in 1..=10 {
            assert_eq!(find_induced_copy(&canonical_chain(n).unwrap()), None);
        }
        let listed = Family::with_chain(3, [set("2"), set("13")]).unwrap();
        assert_eq!(find_induced_copy(&listed), None);

        let four = fam(3, "1,13,2,23");
        let copy = find_induced_copy(&four).unwrap();
        assert!(copy.is_valid());
        // exactly one unordered copy exists
        let mut found = 0;
        let m = four.members();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        if is_induced_2c2(m[i], m[j], m[k], m[l]) {
                            found += 1;
                        }
                    }
                }
            }
        }
        // counted once per ordering of the two pairs
        assert_eq!(found, 2);
    }

    #[test]
    fn completes_with_outsider() {
        let f = Family::with_chain(3, [set("2"), set("3")]).unwrap();
        let copy = find_induced_copy_with(&f, set("13")).unwrap().unwrap();
        assert!(copy.is_valid() && copy.uses(set("13")));
        // the hand-built quadruple from the singleton construction also works
        assert!(is_induced_2c2(set("2"), set("12"), set("3"), set("13")));

        for s in canonical_chain(4).unwrap().outsiders() {
            assert_eq!(
                find_induced_copy_with(&canonical_chain(4).unwrap(), s).unwrap(),
                None
            );
        }

        let f_star = Family::with_chain(4, [set("2"), set("134"), set("124")]).unwrap();
        let copy = find_induced_copy_with(&f_star, set("3")).unwrap().unwrap();
        assert!(copy.is_valid() && copy.uses(set("3")));

        assert!(matches!(
            find_induced_copy_with(&f, set("2")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn saturation_examples() {
        let c3 = canonical_chain(3).unwrap();
        assert!(is_free(&c3));
        assert!(!is_saturated(&c3));
        assert!(is_saturated(&Family::power_set(2).unwrap()));
        let f = Family::with_chain(5, [set("2"), set("3"), set("1235"), set("1245")]).unwrap();
        assert!(is_saturated(&f));
        assert!(certify(&f).is_saturated());
        assert!(f.contains(SetWord::EMPTY) && f.contains(SetWord::full(5)));

        match certify(&c3) {
            Certificate::Unsaturated { outsider } => assert_eq!(outsider, set("2")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            certify(&fam(3, "1,13,2,23")),
            Certificate::NotFree { .. }
        ));
    }

    #[test]
    fn certificate_witnesses_are_valid() {
        let f = Family::with_chain(4, [set("2"), set("3"), set("4")]).unwrap();
        let Certificate::Saturated { witnesses } = certify(&f) else {
            panic!("not saturated");
        };
        assert_eq!(witnesses.len(), 16 - f.len());
        for w in witnesses {
            assert!(w.copy.is_valid());
            assert!(w.copy.uses(w.outsider));
            for s in w.copy.members() {
                assert!(s == w.outsider || f.contains(s));
            }
        }
    }

    fn small_family() -> impl Strategy<Value = Family> {
        (2usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(0u32..1 << n, 0..=12)
                .prop_map(move |v| Family::new(n, v.into_iter().map(SetWord)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn kernel_matches_brute_force(f in small_family()) {
            let fast = find_induced_copy(&f);
            prop_assert_eq!(fast.is_some(), brute_force_copy(&f).is_some());
            if let Some(c) = fast {
                prop_assert!(c.is_valid());
                prop_assert!(c.members().iter().all(|&s| f.contains(s)));
            }
        }

        #[test]
        fn outsider_kernel_matches_brute_force(f in small_family(), raw in any::<u32>()) {
            let s = SetWord(raw & SetWord::full(f.n()).bits());
            prop_assume!(!f.contains(s));
            let fast = find_induced_copy_with(&f, s).unwrap();
            let g = f.with(s).unwrap();
            let m = g.members();
            let mut slow = false;
            for &a in m { for &b in m { for &c in m { for &d in m {
                let q = InducedCopy { a, a_up: b, b: c, b_up: d };
                slow |= q.is_valid() && q.uses(s);
            }}}}
            prop_assert_eq!(fast.is_some(), slow);
            if let Some(c) = fast {
                prop_assert!(c.is_valid() && c.uses(s));
            }
        }

        #[test]
        fn freeness_is_monotone_and_dual_invariant(f in small_family(), drop in any::<u64>()) {
            let free = is_free(&f);
            prop_assert_eq!(is_free(&dual(&f)), free);
            if free {
                let sub = Family::new(
                    f.n(),
                    f.iter().enumerate().filter(|(k, _)| drop >> (k % 64) & 1 == 0).map(|(_, &s)| s),
                ).unwrap();
                prop_assert!(is_free(&sub));
            }
        }
    }
}
