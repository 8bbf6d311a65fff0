//! How a saturated family containing `C♭` forces its missing shackles.
//!
//! Adding a missing shackle `S_i` must create an induced `2C_2`. Such a copy
//! holds at most one chain member, which leaves three shapes:
//!
//! - Case 1: `{A, C_i} ∥ {B, S_i}` with `A ∼ C_i`, `B ∼ S_i`.
//! - Case 2: `A ⊋ B` against `{C_j, S_i}` for some `j ≠ i`.
//! - Case 3: `A ⊋ B` against `{D, S_i}` with `D ∼ S_i`, no chain member.
//!
//! Case 3 always reduces to the other two. The members taking part in these
//! copies are the witnesses of `S_i`, and bounding how many shackles one
//! member can witness gives `n - 1 ≤ 2k` for the `k` off-chain members.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::freeness::forms_induced_2c2;
use crate::lattice::{is_chain_set, shackle_index, shackle_unchecked, Family, SetWord};
use crate::{Error, Result};

/// Position of an off-chain set relative to `C♭`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanInfo {
    /// Greatest `p` with `C_p ⊊ F`.
    pub p: usize,
    /// Least `q` with `F ⊊ C_q`.
    pub q: usize,
}

impl SpanInfo {
    pub fn is_shackle(&self) -> bool {
        self.q == self.p + 2
    }

    /// Shackle indices an element with this span can witness, when it is not
    /// itself a shackle: `{p, p+1, p+2, q-2, q-1, q}` within `1..n-1`.
    pub fn candidate_loads(&self, n: usize) -> BTreeSet<usize> {
        let (p, q) = (self.p as isize, self.q as isize);
        [p, p + 1, p + 2, q - 2, q - 1, q]
            .into_iter()
            .filter(|&i| i >= 1 && i < n as isize)
            .map(|i| i as usize)
            .collect()
    }
}

pub fn span(x: SetWord, n: usize) -> Result<SpanInfo> {
    if !x.fits(n) {
        return Err(Error::SetOutOfRange { bits: x.bits(), n });
    }
    if is_chain_set(x) {
        return Err(Error::InvalidArgument(format!(
            "{x} is a member of the canonical chain"
        )));
    }
    Ok(span_unchecked(x))
}

#[inline]
fn span_unchecked(x: SetWord) -> SpanInfo {
    SpanInfo {
        p: x.bits().trailing_ones() as usize,
        q: x.max_element(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    /// `B ⊊ C_j ⊊ A`.
    ChainBetween { j: usize },
    /// `B ⊆ S_j ⊆ A` with `C_j` incomparable to both.
    ShackleSandwich { j: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub kind: PairKind,
    /// Greatest index with `C_{j_a} ⊊ A`.
    pub j_a: usize,
    /// Least index with `C_{j_b} ⊋ B`.
    pub j_b: usize,
}

/// Places an off-chain related pair `b ⊊ a` against the chain.
///
/// `ChainBetween` reports `j = j_b`. A gap `j_b - j_a` of 1 or at least 3
/// cannot occur in a free family containing `C♭`; it is returned as
/// [`Error::Contradiction`].
pub fn classify_related_pair(
    family: &Family,
    a: SetWord,
    b: SetWord,
) -> Result<PairClassification> {
    for x in [a, b] {
        if !family.contains(x) {
            return Err(Error::InvalidArgument(format!("{x} is not a member")));
        }
        if is_chain_set(x) {
            return Err(Error::InvalidArgument(format!("{x} is a chain member")));
        }
    }
    if !b.is_proper_subset_of(a) {
        return Err(Error::InvalidArgument(format!(
            "{b} is not a proper subset of {a}"
        )));
    }
    classify_pair(a, b)
}

fn classify_pair(a: SetWord, b: SetWord) -> Result<PairClassification> {
    let j_a = span_unchecked(a).p;
    let j_b = span_unchecked(b).q;
    if j_a >= j_b {
        return Ok(PairClassification {
            kind: PairKind::ChainBetween { j: j_b },
            j_a,
            j_b,
        });
    }
    let gap = j_b - j_a;
    if gap == 2 {
        return Ok(PairClassification {
            kind: PairKind::ShackleSandwich { j: j_a + 1 },
            j_a,
            j_b,
        });
    }
    Err(Error::Contradiction {
        below: b,
        above: a,
        j_above: j_a,
        j_below: j_b,
        gap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum WitnessCase {
    Case1 { a: SetWord, b: SetWord },
    Case2 { a: SetWord, b: SetWord, j: usize },
    Case3 { a: SetWord, b: SetWord, d: SetWord },
}

/// One way the members of a family complete an induced copy with `S_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub target: usize,
    #[serde(flatten)]
    pub case: WitnessCase,
}

impl WitnessConfig {
    /// The off-chain members taking part.
    pub fn participants(&self) -> Vec<SetWord> {
        match self.case {
            WitnessCase::Case1 { a, b } | WitnessCase::Case2 { a, b, .. } => vec![a, b],
            WitnessCase::Case3 { a, b, d } => vec![a, b, d],
        }
    }

    /// The four sets of the induced copy this configuration describes.
    pub fn copy_members(&self) -> [SetWord; 4] {
        let s = shackle_unchecked(self.target);
        match self.case {
            WitnessCase::Case1 { a, b } => [a, SetWord::full(self.target), b, s],
            WitnessCase::Case2 { a, b, j } => [a, b, SetWord::full(j), s],
            WitnessCase::Case3 { a, b, d } => [a, b, d, s],
        }
    }

    pub fn is_case3(&self) -> bool {
        matches!(self.case, WitnessCase::Case3 { .. })
    }

    /// Checks the defining conditions of the case against `S_target`.
    pub fn holds(&self, n: usize) -> bool {
        let i = self.target;
        if i == 0 || i >= n {
            return false;
        }
        let s = shackle_unchecked(i);
        let c = SetWord::full(i);
        let off = |x: SetWord| x.fits(n) && !is_chain_set(x) && x != s;
        let shape = match self.case {
            WitnessCase::Case1 { a, b } => {
                off(a)
                    && off(b)
                    && !a.related(b)
                    && a.related(c)
                    && b.related(s)
                    && !a.related(s)
                    && !c.related(b)
            }
            WitnessCase::Case2 { a, b, j } => {
                let cj = SetWord::full(j);
                off(a)
                    && off(b)
                    && j >= 1
                    && j < n
                    && j != i
                    && b.is_proper_subset_of(a)
                    && [a, b].iter().all(|x| !x.related(cj) && !x.related(s))
            }
            WitnessCase::Case3 { a, b, d } => {
                off(a)
                    && off(b)
                    && off(d)
                    && b.is_proper_subset_of(a)
                    && d.related(s)
                    && [a, b].iter().all(|x| !x.related(d) && !x.related(s))
            }
        };
        shape && forms_induced_2c2(self.copy_members())
    }

    /// For Case 2: `j ∈ {i-1, i+1}` and `B ⊆ S_j ⊆ A`.
    pub fn case2_refinement_holds(&self) -> bool {
        match self.case {
            WitnessCase::Case2 { a, b, j } => {
                let i = self.target;
                let sj = shackle_unchecked(j);
                (j + 1 == i || j == i + 1) && b.is_subset_of(sj) && sj.is_subset_of(a)
            }
            _ => true,
        }
    }
}

fn require_chain(family: &Family) -> Result<()> {
    if family.contains_canonical_chain() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "family does not contain the canonical chain".into(),
        ))
    }
}

fn missing_shackle(family: &Family, i: usize) -> Result<SetWord> {
    let n = family.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            what: "shackle",
            index: i,
            n,
        });
    }
    let s = shackle_unchecked(i);
    if family.contains(s) {
        return Err(Error::InvalidArgument(format!(
            "shackle S_{i} = {s} is a member"
        )));
    }
    Ok(s)
}

/// Every Case 1, 2 and 3 configuration realized in `family ∪ {S_i}`.
/// An empty list means `S_i` completes no copy, reported as
/// [`Error::NotSaturated`].
pub fn witness_configs(family: &Family, i: usize) -> Result<Vec<WitnessConfig>> {
    require_chain(family)?;
    missing_shackle(family, i)?;
    let configs = enumerate_configs(family, i);
    if configs.is_empty() {
        return Err(Error::NotSaturated(format!(
            "adding shackle S_{i} creates no induced copy"
        )));
    }
    Ok(configs)
}

fn enumerate_configs(family: &Family, i: usize) -> Vec<WitnessConfig> {
    let n = family.n();
    let off = family.off_chain();
    let mut out = Vec::new();
    let mut push = |case| {
        let cfg = WitnessConfig { target: i, case };
        if cfg.holds(n) {
            out.push(cfg);
        }
    };
    for &a in &off {
        for &b in &off {
            push(WitnessCase::Case1 { a, b });
            if b.is_proper_subset_of(a) {
                for j in 1..n {
                    push(WitnessCase::Case2 { a, b, j });
                }
                for &d in &off {
                    push(WitnessCase::Case3 { a, b, d });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Rewrites a Case 3 configuration as Case 1 and Case 2 configurations that
/// involve each of `A`, `B` and `D`.
///
/// The split follows where `B ⊊ A` sits against the chain. A chain member
/// between them must be `C_i`, and then `{A, C_i} ∥ {D, S_i}` and
/// `{B, C_i} ∥ {D, S_i}` are both Case 1. Otherwise `B ⊆ S_j ⊆ A` with
/// `j ≠ i`, which is a Case 2 on `{C_j, S_i}`, and `C_i` lies above `B` or
/// below `A`, giving one more Case 1 with `D`.
pub fn reduce_case3(family: &Family, config: &WitnessConfig) -> Result<Vec<WitnessConfig>> {
    let n = family.n();
    let WitnessCase::Case3 { a, b, d } = config.case else {
        return Err(Error::InvalidArgument("not a Case 3 configuration".into()));
    };
    let i = config.target;
    if !config.holds(n) || ![a, b, d].iter().all(|&x| family.contains(x)) {
        return Err(Error::InvalidArgument(format!(
            "{config:?} is not a Case 3 configuration of this family"
        )));
    }
    let invalid = |why: &str| Error::Integrity(format!("Case 3 {config:?}: {why}"));
    let cls = classify_pair(a, b)?;
    let ci = SetWord::full(i);
    let mut out = Vec::new();
    match cls.kind {
        PairKind::ChainBetween { .. } => {
            // every C_j with B ⊊ C_j ⊊ A is comparable to S_i unless j = i
            if cls.j_b != i || cls.j_a != i {
                return Err(invalid("a chain member between A and B relates to S_i"));
            }
            out.push(WitnessConfig {
                target: i,
                case: WitnessCase::Case1 { a, b: d },
            });
            out.push(WitnessConfig {
                target: i,
                case: WitnessCase::Case1 { a: b, b: d },
            });
        }
        PairKind::ShackleSandwich { j } => {
            if j == i {
                return Err(invalid("B ⊆ S_i ⊆ A"));
            }
            out.push(WitnessConfig {
                target: i,
                case: WitnessCase::Case2 { a, b, j },
            });
            let with_d = if ci.is_proper_subset_of(a) {
                a
            } else if b.is_proper_subset_of(ci) {
                b
            } else {
                return Err(invalid("C_i is incomparable to both A and B"));
            };
            out.push(WitnessConfig {
                target: i,
                case: WitnessCase::Case1 { a: with_d, b: d },
            });
        }
    }
    if let Some(bad) = out.iter().find(|c| !c.holds(n)) {
        return Err(invalid(&format!("derived {bad:?} does not hold")));
    }
    Ok(out)
}

/// Replaces every Case 3 entry by its reduction; the result is sorted and
/// free of duplicates.
pub fn resolve_case3(family: &Family, configs: &[WitnessConfig]) -> Result<Vec<WitnessConfig>> {
    let mut out = Vec::with_capacity(configs.len());
    for cfg in configs {
        if cfg.is_case3() {
            out.extend(reduce_case3(family, cfg)?);
        } else {
            out.push(*cfg);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Indices `i` of missing shackles such that some induced copy in
/// `family ∪ {S_i}` contains both `x` and `S_i`.
///
/// Computed straight from the definition by scanning pairs of other members.
pub fn witness_load(family: &Family, x: SetWord) -> Result<BTreeSet<usize>> {
    if !family.contains(x) {
        return Err(Error::InvalidArgument(format!("{x} is not a member")));
    }
    if is_chain_set(x) {
        return Err(Error::InvalidArgument(format!("{x} is a chain member")));
    }
    let n = family.n();
    let others: Vec<SetWord> = family.iter().copied().filter(|&y| y != x).collect();
    let mut load = BTreeSet::new();
    for i in 1..n {
        let s = shackle_unchecked(i);
        if family.contains(s) {
            continue;
        }
        let hit = others.iter().enumerate().any(|(k, &y)| {
            others[k + 1..]
                .iter()
                .any(|&z| forms_induced_2c2([x, s, y, z]))
        });
        if hit {
            load.insert(i);
        }
    }
    Ok(load)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingShackle {
    pub index: usize,
    pub set: SetWord,
    /// Off-chain members witnessing it.
    pub witnesses: Vec<SetWord>,
    pub configs: Vec<WitnessConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementLoad {
    pub set: SetWord,
    /// `Some(k)` when the member is the shackle `S_k`.
    pub shackle: Option<usize>,
    pub span: SpanInfo,
    pub load: Vec<usize>,
}

/// A violated structural bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "finding", rename_all = "snake_case")]
pub enum Finding {
    RelatedPairContradiction {
        above: SetWord,
        below: SetWord,
        gap: usize,
    },
    NoConfiguration {
        shackle: usize,
    },
    Case3Unresolved {
        shackle: usize,
        detail: String,
    },
    Case3WitnessNotCovered {
        shackle: usize,
        member: SetWord,
    },
    Case2OutOfPlace {
        shackle: usize,
        config: WitnessConfig,
    },
    TooFewWitnesses {
        shackle: usize,
        count: usize,
    },
    ShackleLoad {
        set: SetWord,
        shackle: usize,
        load: Vec<usize>,
    },
    NonShackleLoad {
        set: SetWord,
        load: Vec<usize>,
    },
    LoadOutsideCandidates {
        set: SetWord,
        load: Vec<usize>,
    },
    BothLowNeighbours {
        set: SetWord,
        p: usize,
    },
    BothHighNeighbours {
        set: SetWord,
        q: usize,
    },
    WitnessCounting {
        missing: usize,
        incidences: usize,
        capacity: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub family_size: usize,
    /// Shackles that are members.
    pub s: usize,
    /// Off-chain members.
    pub k: usize,
    pub missing_shackles: Vec<MissingShackle>,
    pub loads: Vec<ElementLoad>,
    /// Sum of all loads: the number of (witness, shackle) incidences.
    pub witness_incidences: usize,
    pub findings: Vec<Finding>,
    /// `n - 1 ≤ 2k`.
    pub inequality_holds: bool,
    /// `|F| ≥ 3n/2 + 1/2`.
    pub size_bound_holds: bool,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty() && self.inequality_holds && self.size_bound_holds
    }
}

/// Checks the witness structure of a saturated family containing `C♭`.
/// Violations are collected as findings.
pub fn audit(family: &Family) -> Result<AuditReport> {
    require_chain(family)?;
    let n = family.n();
    let off = family.off_chain();
    let mut findings = Vec::new();

    for &a in &off {
        for &b in &off {
            if b.is_proper_subset_of(a) {
                if let Err(Error::Contradiction { gap, .. }) = classify_pair(a, b) {
                    findings.push(Finding::RelatedPairContradiction {
                        above: a,
                        below: b,
                        gap,
                    });
                }
            }
        }
    }

    let mut loads = Vec::with_capacity(off.len());
    for &x in &off {
        let load = witness_load(family, x)?;
        let span = span_unchecked(x);
        let shackle = shackle_index(x, n);
        let list: Vec<usize> = load.iter().copied().collect();
        match shackle {
            Some(k) => {
                if load.len() > 2 || load.iter().any(|&i| i + 1 != k && i != k + 1) {
                    findings.push(Finding::ShackleLoad {
                        set: x,
                        shackle: k,
                        load: list.clone(),
                    });
                }
            }
            None => {
                if load.len() > 4 {
                    findings.push(Finding::NonShackleLoad {
                        set: x,
                        load: list.clone(),
                    });
                }
                if !load.is_subset(&span.candidate_loads(n)) {
                    findings.push(Finding::LoadOutsideCandidates {
                        set: x,
                        load: list.clone(),
                    });
                }
                let (p, q) = (span.p, span.q);
                if load.contains(&(p + 1)) && load.contains(&(p + 2)) {
                    findings.push(Finding::BothLowNeighbours { set: x, p });
                }
                if q >= 2 && load.contains(&(q - 1)) && load.contains(&(q - 2)) {
                    findings.push(Finding::BothHighNeighbours { set: x, q });
                }
            }
        }
        loads.push(ElementLoad {
            set: x,
            shackle,
            span,
            load: list,
        });
    }

    let mut missing_shackles = Vec::new();
    for i in 1..n {
        let s = shackle_unchecked(i);
        if family.contains(s) {
            continue;
        }
        let configs = enumerate_configs(family, i);
        if configs.is_empty() {
            findings.push(Finding::NoConfiguration { shackle: i });
        }
        for cfg in configs.iter().filter(|c| !c.case2_refinement_holds()) {
            findings.push(Finding::Case2OutOfPlace {
                shackle: i,
                config: *cfg,
            });
        }
        match resolve_case3(family, &configs) {
            Ok(resolved) => {
                let covered: BTreeSet<SetWord> =
                    resolved.iter().flat_map(|c| c.participants()).collect();
                let case3_members: BTreeSet<SetWord> = configs
                    .iter()
                    .filter(|c| c.is_case3())
                    .flat_map(|c| c.participants())
                    .collect();
                for member in case3_members.difference(&covered) {
                    findings.push(Finding::Case3WitnessNotCovered {
                        shackle: i,
                        member: *member,
                    });
                }
            }
            Err(e) => findings.push(Finding::Case3Unresolved {
                shackle: i,
                detail: e.to_string(),
            }),
        }
        let witnesses: Vec<SetWord> = loads
            .iter()
            .filter(|l| l.load.contains(&i))
            .map(|l| l.set)
            .collect();
        if witnesses.len() < 2 {
            findings.push(Finding::TooFewWitnesses {
                shackle: i,
                count: witnesses.len(),
            });
        }
        missing_shackles.push(MissingShackle {
            index: i,
            set: s,
            witnesses,
            configs,
        });
    }

    let k = off.len();
    let s = off
        .iter()
        .filter(|&&x| shackle_index(x, n).is_some())
        .count();
    let witness_incidences: usize = loads.iter().map(|l| l.load.len()).sum();
    // each missing shackle needs two witnesses; shackles carry at most two
    // incidences and other members at most four
    let capacity = 2 * s + 4 * (k - s);
    let missing = missing_shackles.len();
    if 2 * missing > witness_incidences || witness_incidences > capacity {
        findings.push(Finding::WitnessCounting {
            missing,
            incidences: witness_incidences,
            capacity,
        });
    }

    Ok(AuditReport {
        n,
        family_size: family.len(),
        s,
        k,
        missing_shackles,
        loads,
        witness_incidences,
        findings,
        inequality_holds: n - 1 <= 2 * k,
        size_bound_holds: 2 * family.len() > 3 * n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainCounterexample {
    pub family: Family,
    pub below: SetWord,
    pub above: SetWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainReport {
    /// Shackle-free families whose off-chain part was checked.
    pub examined: usize,
    /// Families holding a shackle, or not containing `C♭`.
    pub skipped: usize,
    pub counterexamples: Vec<AntichainCounterexample>,
}

/// For every family whose off-chain part holds no shackle, checks that the
/// off-chain part is an antichain.
pub fn antichain_scan<'a, I: IntoIterator<Item = &'a Family>>(families: I) -> AntichainReport {
    let mut report = AntichainReport::default();
    for family in families {
        let n = family.n();
        let off = family.off_chain();
        if !family.contains_canonical_chain() || off.iter().any(|&x| shackle_index(x, n).is_some())
        {
            report.skipped += 1;
            continue;
        }
        report.examined += 1;
        'pairs: for &x in &off {
            for &y in &off {
                if x.is_proper_subset_of(y) {
                    report.counterexamples.push(AntichainCounterexample {
                        family: family.clone(),
                        below: x,
                        above: y,
                    });
                    break 'pairs;
                }
            }
        }
    }
    report
}
