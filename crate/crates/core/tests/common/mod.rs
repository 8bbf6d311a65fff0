//! Brute-force reference implementations for integration tests. Nothing here
//! calls into the library's comparability or freeness code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use satlattice::{Family, Permutation, SetWord};

fn sub(a: u32, b: u32) -> bool {
    a & !b == 0
}

fn rel(a: u32, b: u32) -> bool {
    sub(a, b) || sub(b, a)
}

/// `a ⊊ a2`, `b ⊊ b2`, every cross pair incomparable.
pub fn quad(a: u32, a2: u32, b: u32, b2: u32) -> bool {
    a != a2
        && b != b2
        && sub(a, a2)
        && sub(b, b2)
        && !rel(a, b)
        && !rel(a, b2)
        && !rel(a2, b)
        && !rel(a2, b2)
}

/// Scans every ordered 4-tuple of distinct members.
pub fn brute_has_copy(sets: &[u32]) -> bool {
    let m = sets.len();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let distinct = i != j && i != k && i != l && j != k && j != l && k != l;
                    if distinct && quad(sets[i], sets[j], sets[k], sets[l]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Whether some copy in `sets ∪ {c}` uses `c`.
pub fn brute_completes(sets: &[u32], c: u32) -> bool {
    let m = sets.len();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if i == j || i == k || j == k {
                    continue;
                }
                let (x, y, z) = (sets[i], sets[j], sets[k]);
                if quad(c, x, y, z) || quad(x, c, y, z) || quad(x, y, c, z) || quad(x, y, z, c) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn brute_saturated(n: usize, sets: &[u32]) -> bool {
    if brute_has_copy(sets) {
        return false;
    }
    let have: BTreeSet<u32> = sets.iter().copied().collect();
    (0..1u32 << n)
        .filter(|c| !have.contains(c))
        .all(|c| brute_completes(sets, c))
}

pub fn bits_of(f: &Family) -> Vec<u32> {
    f.iter().map(|s| s.bits()).collect()
}

pub fn family_of(n: usize, sets: &[u32]) -> Family {
    Family::new(n, sets.iter().map(|&b| SetWord(b))).unwrap()
}

pub fn chain_bits(n: usize) -> Vec<u32> {
    (0..=n).map(|i| (1u32 << i) - 1).collect()
}

/// Every saturated family over `[n]` containing the forced sets (`C♭` when
/// `fix_chain`, else `∅` and `[n]`), by checking every superset.
pub fn naive_saturated(n: usize, fix_chain: bool) -> BTreeSet<Family> {
    let forced: Vec<u32> = if fix_chain {
        chain_bits(n)
    } else {
        vec![0, (1 << n) - 1]
    };
    let pool: Vec<u32> = (0..1u32 << n).filter(|s| !forced.contains(s)).collect();
    let mut out = BTreeSet::new();
    for pick in 0u64..1 << pool.len() {
        let mut sets = forced.clone();
        sets.extend(
            pool.iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .map(|(_, &s)| s),
        );
        if brute_saturated(n, &sets) {
            out.insert(family_of(n, &sets));
        }
    }
    out
}

pub fn random_permutation(n: usize, rng: &mut StdRng) -> Permutation {
    let mut image: Vec<usize> = (1..=n).collect();
    image.shuffle(rng);
    Permutation::new(image).unwrap()
}

/// A free family grown by inserting sets in random order while the family
/// stays free, stopping at a random target size.
pub fn random_free_family(n: usize, rng: &mut StdRng) -> Family {
    let mut order: Vec<u32> = (0..1u32 << n).collect();
    order.shuffle(rng);
    let target = rng.gen_range(1..=3 * n);
    let mut sets: Vec<u32> = Vec::new();
    for c in order {
        if sets.len() >= target {
            break;
        }
        if !brute_completes(&sets, c) {
            sets.push(c);
        }
    }
    family_of(n, &sets)
}

pub fn random_family(n: usize, max_len: usize, rng: &mut StdRng) -> Family {
    let len = rng.gen_range(0..=max_len);
    let sets: Vec<u32> = (0..len).map(|_| rng.gen_range(0..1u32 << n)).collect();
    family_of(n, &sets)
}

/// Every `S` with `lower ⊆ S ⊊ upper`.
pub fn interval_below(lower: u32, upper: u32) -> Vec<u32> {
    let free = upper & !lower;
    let mut out = Vec::new();
    let mut m = free;
    loop {
        if m != free {
            out.push(lower | m);
        }
        if m == 0 {
            break;
        }
        m = (m - 1) & free;
    }
    out
}

/// `F(n,i)` written out directly: chain, `{2}..{i}`, and `[n] ∖ {j}` for
/// `i ≤ j ≤ n-1`.
pub fn f_star_by_hand(n: usize, i: usize) -> Vec<u32> {
    let full = (1u32 << n) - 1;
    let mut sets = chain_bits(n);
    sets.extend((2..=i).map(|j| 1u32 << (j - 1)));
    sets.extend((i..n).map(|j| full & !(1u32 << (j - 1))));
    sets
}

pub fn dual_by_hand(n: usize, x: u32) -> u32 {
    let comp = !x & ((1u32 << n) - 1);
    (1..=n)
        .filter(|e| comp >> (e - 1) & 1 == 1)
        .fold(0, |acc, e| acc | 1 << (n - e))
}
