//! Depth-first enumeration of free families over the whole of `B_n`.
//!
//! For `n ≤ 7` every subset of `[n]` gets one bit of a `u128`, so a family is
//! a single mask and the comparability structure of `B_n` is three mask
//! tables. Adding a set to a free family can only create copies that use the
//! new set, which is what [`Universe::completes`] tests.

/// Largest ground size the mask representation holds.
pub(crate) const MAX_KERNEL_N: usize = 7;

pub(crate) type Mask = u128;

#[inline]
pub(crate) fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

pub(crate) struct Universe {
    pub size: usize,
    up: Vec<Mask>,
    down: Vec<Mask>,
    incomp: Vec<Mask>,
}

impl Universe {
    pub fn new(n: usize) -> Universe {
        assert!(n <= MAX_KERNEL_N);
        let size = 1usize << n;
        let mut up = vec![0; size];
        let mut down = vec![0; size];
        let mut incomp = vec![0; size];
        for x in 0..size {
            for y in 0..size {
                if x == y {
                    continue;
                }
                if x & !y == 0 {
                    up[x] |= 1 << y;
                } else if y & !x == 0 {
                    down[x] |= 1 << y;
                } else {
                    incomp[x] |= 1 << y;
                }
            }
        }
        Universe {
            size,
            up,
            down,
            incomp,
        }
    }

    pub fn all(&self) -> Mask {
        if self.size == 128 {
            Mask::MAX
        } else {
            (1 << self.size) - 1
        }
    }

    /// Whether `family ∪ {c}` has an induced copy using `c`; `c ∉ family`.
    #[inline]
    pub fn completes(&self, family: Mask, c: usize) -> bool {
        let inc_c = self.incomp[c] & family;
        if inc_c == 0 {
            return false;
        }
        // c at the bottom of a pair
        let up_c = self.up[c] & family;
        if up_c != 0 {
            for b in ones(inc_c) {
                let ua = up_c & self.incomp[b];
                if ua == 0 {
                    continue;
                }
                let ub = self.up[b] & inc_c;
                if ub == 0 {
                    continue;
                }
                for a_up in ones(ua) {
                    if ub & self.incomp[a_up] != 0 {
                        return true;
                    }
                }
            }
        }
        // c at the top of a pair
        for a in ones(self.down[c] & family) {
            let tops = inc_c & self.incomp[a];
            for b_up in ones(tops) {
                if self.down[b_up] & inc_c & self.incomp[a] != 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Free `family` is saturated: every outsider completes a copy.
    #[inline]
    pub fn saturated(&self, family: Mask) -> bool {
        ones(self.all() & !family).all(|o| self.completes(family, o))
    }
}

pub(crate) trait Visitor {
    /// Called once for every free family reached, including the root.
    fn visit(&mut self, family: Mask, size: usize);
}

/// Visits every free family `root ∪ E` with `E` drawn from
/// `candidates[start..]` in increasing order and `|root ∪ E| ≤ max_size`.
/// `root` must be free.
pub(crate) fn walk<V: Visitor>(
    universe: &Universe,
    candidates: &[usize],
    root: Mask,
    start: usize,
    max_size: usize,
    visitor: &mut V,
) -> u64 {
    let size = root.count_ones() as usize;
    visitor.visit(root, size);
    let mut nodes = 1;
    if size >= max_size {
        return nodes;
    }
    for k in start..candidates.len() {
        let c = candidates[k];
        if !universe.completes(root, c) {
            nodes += walk(
                universe,
                candidates,
                root | 1 << c,
                k + 1,
                max_size,
                visitor,
            );
        }
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness;
    use crate::lattice::{Family, SetWord};

    fn to_family(n: usize, m: Mask) -> Family {
        Family::new(n, ones(m).map(|b| SetWord(b as u32))).unwrap()
    }

    #[test]
    fn completes_matches_generic_kernel() {
        let n = 4;
        let u = Universe::new(n);
        // a spread of families: all subsets of a few fixed 6-set windows
        for seed in 0..200u32 {
            let mut m: Mask = 0;
            let mut x = seed.wrapping_mul(2654435761);
            for _ in 0..6 {
                x ^= x << 13;
                x ^= x >> 17;
                x ^= x << 5;
                m |= 1 << (x % 16);
            }
            let f = to_family(n, m);
            for c in 0..16 {
                if m >> c & 1 == 1 {
                    continue;
                }
                let generic = freeness::find_induced_copy_with(&f, SetWord(c as u32))
                    .unwrap()
                    .is_some();
                assert_eq!(u.completes(m, c), generic, "{f:?} + {c}");
            }
        }
    }

    #[test]
    fn saturated_power_set_of_two() {
        let u = Universe::new(2);
        assert!(u.saturated(0b1111));
        assert!(!u.saturated(0b1011));
    }

    #[test]
    fn universe_at_seven() {
        let u = Universe::new(7);
        assert_eq!(u.all(), Mask::MAX);
        assert_eq!(u.up[0].count_ones(), 127);
    }
}
