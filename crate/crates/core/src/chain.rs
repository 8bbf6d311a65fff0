//! Open downsets and maximal-chain extraction.
//!
//! In a free family the open downsets `D(F) = {G ∈ F : G ⊊ F}` are totally
//! preordered by inclusion. Listing members from the largest downset down
//! (`F_1 = [n]`, …, `F_m = ∅`) and intersecting prefixes gives a decreasing
//! sequence `G_j = F_1 ∩ … ∩ F_j`. For a saturated family every set in a gap
//! `[G_{j+1}, G_j)` is a member, so walking the `G_j` downward one element
//! at a time traces a maximal chain inside the family.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::freeness::{self, Relations};
use crate::lattice::{Family, SetWord};
use crate::{Error, Result};

/// `{G ∈ F : G ⊊ s}`.
pub fn downset(family: &Family, s: SetWord) -> Family {
    let members = family
        .iter()
        .copied()
        .filter(|g| g.is_proper_subset_of(s))
        .collect();
    Family::from_sorted_unchecked(family.n(), members)
}

/// The first pair (in member order) whose open downsets are not nested.
pub fn trichotomy_violation(family: &Family) -> Option<(SetWord, SetWord)> {
    let rel = Relations::new(family.members());
    find_violation(family, &rel)
}

fn find_violation(family: &Family, rel: &Relations<'_>) -> Option<(SetWord, SetWord)> {
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let (di, dj) = (rel.down_row(i), rel.down_row(j));
            if !bits::is_subset(di, dj) && !bits::is_subset(dj, di) {
                return Some((m[i], m[j]));
            }
        }
    }
    None
}

/// Checks that every two open downsets are nested or equal.
pub fn downset_trichotomy(family: &Family) -> Result<()> {
    match trichotomy_violation(family) {
        None => Ok(()),
        Some((first, second)) => Err(Error::Trichotomy { first, second }),
    }
}

/// Members ordered by weakly decreasing open downset; equal downsets are
/// ordered by increasing bitmask.
pub fn linear_extension_of_downset_preorder(family: &Family) -> Result<Vec<SetWord>> {
    let rel = Relations::new(family.members());
    if let Some((first, second)) = find_violation(family, &rel) {
        return Err(Error::Trichotomy { first, second });
    }
    // nested downsets compare by size
    let mut keyed: Vec<(usize, SetWord)> = family
        .iter()
        .enumerate()
        .map(|(i, &s)| (bits::count(rel.down_row(i)), s))
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    /// `F_1 ≥ F_2 ≥ … ≥ F_m` in the downset preorder.
    pub order: Vec<SetWord>,
    /// `G_j = F_1 ∩ … ∩ F_j`.
    pub g_seq: Vec<SetWord>,
    /// `[n] = chain[0] ⊋ chain[1] ⊋ … ⊋ chain[n] = ∅`.
    pub chain: Vec<SetWord>,
}

impl ExtractionTrace {
    /// The nonempty gaps `(G_{j+1}, G_j)`, read as half-open intervals
    /// `[G_{j+1}, G_j)`.
    pub fn gaps(&self) -> impl Iterator<Item = (SetWord, SetWord)> + '_ {
        self.g_seq
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| (w[1], w[0]))
    }
}

/// Extracts a maximal chain of `family`.
///
/// With `verify` set the family is first checked to be saturated. Without
/// it, any family whose gaps happen to lie inside it (a family that already
/// contains the chain the walk follows, for instance) succeeds as well.
pub fn extract_maximal_chain(family: &Family, verify: bool) -> Result<(Family, ExtractionTrace)> {
    let n = family.n();
    if verify {
        if let Some(copy) = freeness::find_induced_copy(family) {
            return Err(Error::NotSaturated(format!("contains induced copy {copy}")));
        }
        if !freeness::is_saturated(family) {
            return Err(Error::NotSaturated(
                "some outside set completes no induced copy".into(),
            ));
        }
    }
    let full = SetWord::full(n);
    for endpoint in [full, SetWord::EMPTY] {
        if !family.contains(endpoint) {
            return Err(Error::NotSaturated(format!(
                "{endpoint} is not a member, so no maximal chain fits"
            )));
        }
    }

    let order = linear_extension_of_downset_preorder(family)?;
    let mut g_seq = Vec::with_capacity(order.len());
    let mut g = full;
    for &f in &order {
        g = g.intersection(f);
        g_seq.push(g);
    }

    let mut chain = vec![full];
    let mut current = full;
    for w in g_seq.windows(2) {
        let (upper, lower) = (w[0], w[1]);
        if upper == lower {
            continue;
        }
        // Drop the largest remaining element at each step.
        while current != lower {
            let extra = SetWord(current.bits() & !lower.bits());
            let top = extra.max_element();
            current = SetWord(current.bits() & !(1 << (top - 1)));
            if !family.contains(current) {
                return Err(Error::Extraction {
                    lower,
                    upper,
                    missing: current,
                });
            }
            chain.push(current);
        }
    }
    if current != SetWord::EMPTY {
        // unreachable: the order ends at ∅
        return Err(Error::Extraction {
            lower: SetWord::EMPTY,
            upper: current,
            missing: current,
        });
    }

    let chain_family = Family::new(n, chain.iter().copied())?;
    Ok((
        chain_family,
        ExtractionTrace {
            order,
            g_seq,
            chain,
        },
    ))
}

/// Whether `chain` is `n + 1` members of `family` covering each other from
/// `∅` up to `[n]`.
pub fn is_maximal_chain_in(chain: &Family, family: &Family) -> bool {
    let n = family.n();
    let m = chain.members();
    m.len() == n + 1
        && chain.is_subfamily_of(family)
        && m.windows(2)
            .all(|w| w[0].is_proper_subset_of(w[1]) && w[1].len() == w[0].len() + 1)
        && m[0] == SetWord::EMPTY
}
