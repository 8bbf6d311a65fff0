//! Properties checked across the full size-2n catalogs for n ≤ 6.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::SeedableRng;
use satlattice::chain::{downset, extract_maximal_chain, linear_extension_of_downset_preorder};
use satlattice::freeness::{is_free, is_saturated};
use satlattice::lattice::{canonical_chain, dual, relabel, shackle_index};
use satlattice::search::{enumerate_at, search, Catalog, SearchConfig};
use satlattice::witness::{audit, classify_related_pair, span, Finding, PairKind};
use satlattice::{Family, Permutation};

use common::*;

fn catalogs() -> &'static Vec<Catalog> {
    static CATALOGS: OnceLock<Vec<Catalog>> = OnceLock::new();
    CATALOGS.get_or_init(|| {
        (3..=6)
            .map(|n| enumerate_at(&SearchConfig::new(n), 2 * n).unwrap())
            .collect()
    })
}

fn families() -> impl Iterator<Item = &'static Family> {
    catalogs().iter().flat_map(|c| c.families.iter())
}

#[test]
fn every_catalog_family_is_saturated_by_brute_force() {
    for f in families() {
        let n = f.n();
        assert!(brute_saturated(n, &bits_of(f)), "{f:?}");
        assert!(f.contains(satlattice::SetWord::EMPTY));
        assert!(f.contains(satlattice::SetWord::full(n)));
    }
}

#[test]
fn catalogs_are_closed_under_dual() {
    for cat in catalogs() {
        let set: BTreeSet<&Family> = cat.families.iter().collect();
        for f in &cat.families {
            assert!(set.contains(&dual(f)), "{f:?}");
        }
        let self_dual = cat.families.iter().filter(|f| dual(f) == **f).count();
        assert_eq!(cat.self_dual_count(), self_dual);
    }
}

#[test]
fn related_pairs_never_contradict() {
    let mut pairs = 0;
    let mut sandwiches = 0;
    for f in families() {
        let off = f.off_chain();
        for &a in &off {
            for &b in &off {
                if b.is_proper_subset_of(a) {
                    let c = classify_related_pair(f, a, b).unwrap_or_else(|e| panic!("{f:?}: {e}"));
                    pairs += 1;
                    if let PairKind::ShackleSandwich { j } = c.kind {
                        let s = satlattice::lattice::shackle(j, f.n()).unwrap();
                        assert!(b.is_subset_of(s) && s.is_subset_of(a), "{f:?}: {b} {s} {a}");
                        sandwiches += 1;
                    }
                }
            }
        }
    }
    assert!(pairs > 0 && sandwiches > 0);
}

#[test]
fn extraction_on_every_family_and_relabeling() {
    let mut rng = StdRng::seed_from_u64(17);
    for f in families() {
        let n = f.n();
        for g in [
            f.clone(),
            relabel(f, &random_permutation(n, &mut rng)).unwrap(),
        ] {
            let (chain, trace) = extract_maximal_chain(&g, true).unwrap();
            let c = bits_of(&chain);
            assert_eq!(c.len(), n + 1);
            assert_eq!(c[0], 0);
            assert_eq!(c[n], (1 << n) - 1);
            assert!(c
                .windows(2)
                .all(|w| w[0] & !w[1] == 0 && (w[1] ^ w[0]).count_ones() == 1));
            assert!(chain.is_subfamily_of(&g));
            assert!(trace.g_seq.windows(2).all(|w| w[1].is_subset_of(w[0])));
            for (lower, upper) in trace.gaps() {
                for x in interval_below(lower.bits(), upper.bits()) {
                    assert!(g.contains(satlattice::SetWord(x)), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn linear_extension_respects_the_downset_preorder() {
    for f in families().filter(|f| f.n() <= 5) {
        let order = linear_extension_of_downset_preorder(f).unwrap();
        assert_eq!(order.len(), f.len());
        assert_eq!(order.first(), Some(&satlattice::SetWord::full(f.n())));
        assert_eq!(order.last(), Some(&satlattice::SetWord::EMPTY));
        for (k, &x) in order.iter().enumerate() {
            for &y in &order[k + 1..] {
                let (dx, dy) = (downset(f, x), downset(f, y));
                assert!(dy.is_subfamily_of(&dx), "{f:?}: {x} before {y}");
            }
        }
    }
}

#[test]
fn saturation_survives_relabel_and_dual() {
    let mut rng = StdRng::seed_from_u64(99);
    for f in families().step_by(7) {
        let n = f.n();
        let sigma = random_permutation(n, &mut rng);
        let g = relabel(f, &sigma).unwrap();
        assert!(is_saturated(&g) && is_saturated(&dual(&g)), "{f:?}");
        assert_eq!(relabel(&g, &sigma.inverse()).unwrap(), *f);
    }
}

/// Every saturated family with only `∅` and `[n]` forced contains a maximal
/// chain; moving that chain onto `C♭` lands in the fixed-chain search.
#[test]
fn fixing_the_chain_loses_no_family() {
    for n in 2..=4 {
        let free_chain = search(&SearchConfig::new(n).fix_chain(false).sizes(2, 1 << n)).unwrap();
        let fixed = search(&SearchConfig::new(n).sizes(n + 1, 1 << n)).unwrap();
        let fixed: BTreeSet<Family> = fixed.by_size.into_values().flatten().collect();
        for f in free_chain.by_size.values().flatten() {
            let (chain, _) = extract_maximal_chain(f, true).unwrap();
            // chain member of size k is [k] after relabeling: send the
            // element added at step k to k
            let c = bits_of(&chain);
            let mut image = vec![0; n];
            for k in 1..=n {
                let added = (c[k] & !c[k - 1]).trailing_zeros() as usize;
                image[added] = k;
            }
            let g = relabel(f, &Permutation::new(image).unwrap()).unwrap();
            assert!(g.contains_canonical_chain());
            assert!(fixed.contains(&g), "{f:?} -> {g:?}");
        }
    }
}

#[test]
fn audit_on_the_five_element_catalog() {
    let cat = &catalogs()[2];
    assert_eq!(cat.n, 5);
    let mut clean = 0;
    let mut overlap_only = 0;
    for f in &cat.families {
        let r = audit(f).unwrap();
        assert!(r.inequality_holds && r.size_bound_holds);
        assert_eq!(r.k, 4);
        assert_eq!(
            r.s,
            f.off_chain()
                .iter()
                .filter(|&&x| shackle_index(x, 5).is_some())
                .count()
        );
        if r.passed() {
            clean += 1;
            continue;
        }
        // the only failures: one member with q = p + 4 witnessing both
        // neighbours on one side, where the two windows overlap
        for finding in &r.findings {
            let set = match finding {
                Finding::BothLowNeighbours { set, .. }
                | Finding::BothHighNeighbours { set, .. } => *set,
                other => panic!("{f:?}: {other:?}"),
            };
            let sp = span(set, 5).unwrap();
            assert_eq!(sp.q, sp.p + 4, "{f:?}: {finding:?}");
        }
        overlap_only += 1;
    }
    assert_eq!((clean, overlap_only), (77, 6));
}

#[test]
fn overlapping_windows_example() {
    let n = 4;
    let f = family_of(n, &[0, 1, 2, 3, 4, 7, 10, 15]);
    assert!(is_saturated(&f));
    let x = satlattice::SetWord(0b1010);
    let sp = span(x, n).unwrap();
    assert_eq!((sp.p, sp.q), (0, 4));
    let load = satlattice::witness::witness_load(&f, x).unwrap();
    assert_eq!(load.into_iter().collect::<Vec<_>>(), vec![2, 3]);
    let r = audit(&f).unwrap();
    assert_eq!(
        r.findings,
        vec![Finding::BothHighNeighbours { set: x, q: 4 }]
    );
}

#[test]
fn chain_alone_is_free_not_saturated() {
    for n in 2..=8 {
        let c = canonical_chain(n).unwrap();
        assert!(is_free(&c));
        assert!(!is_saturated(&c));
    }
}
