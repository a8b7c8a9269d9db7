//! Brute-force isomorphism and homomorphism search between small semigroups.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::green::green_data;
use crate::semigroup::FiniteSemigroup;

pub const DEFAULT_ISO_BOUND: usize = 64;

/// Per-element invariant preserved by every isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    idempotent: bool,
    /// Index and period of the monogenic subsemigroup.
    index: usize,
    period: usize,
    l_size: usize,
    r_size: usize,
    d_size: usize,
    left_ideal: usize,
    right_ideal: usize,
    central: bool,
}

fn signatures(s: &FiniteSemigroup) -> Vec<Signature> {
    let g = green_data(s);
    let count = |classes: &[usize], c: usize| classes.iter().filter(|&&x| x == c).count();
    s.elements()
        .map(|a| {
            let mut powers = vec![a];
            loop {
                let next = s.mul(*powers.last().unwrap(), a);
                if let Some(pos) = powers.iter().position(|&p| p == next) {
                    break Signature {
                        idempotent: s.is_idempotent(a),
                        index: pos + 1,
                        period: powers.len() - pos,
                        l_size: count(&g.lclass, g.lclass[a]),
                        r_size: count(&g.rclass, g.rclass[a]),
                        d_size: count(&g.dclass, g.dclass[a]),
                        left_ideal: g.left_ideal[a].len(),
                        right_ideal: g.right_ideal[a].len(),
                        central: s.elements().all(|x| s.mul(a, x) == s.mul(x, a)),
                    };
                }
                powers.push(next);
            }
        })
        .collect()
}

/// A small generating set, chosen greedily in index order.
pub fn generators(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = vec![false; s.order()];
    // prefer elements outside S², which must be generators anyway
    let mut order: Vec<usize> = s.elements().collect();
    let mut in_square = vec![false; s.order()];
    for a in s.elements() {
        for b in s.elements() {
            in_square[s.mul(a, b)] = true;
        }
    }
    order.sort_by_key(|&a| in_square[a]);
    for a in order {
        if !covered[a] {
            gens.push(a);
            for x in s.closure(&gens) {
                covered[x] = true;
            }
        }
    }
    gens
}

/// Extends generator images to a map on all of `s`; `None` on an inconsistency.
fn extend(s: &FiniteSemigroup, t: &FiniteSemigroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; s.order()];
    let mut queue = Vec::new();
    for (&g, &h) in gens.iter().zip(images) {
        if map[g] != usize::MAX && map[g] != h {
            return None;
        }
        if map[g] == usize::MAX {
            map[g] = h;
            queue.push(g);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let ag = s.mul(a, g);
            let img = t.mul(map[a], h);
            if map[ag] == usize::MAX {
                map[ag] = img;
                queue.push(ag);
            } else if map[ag] != img {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

fn search(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    bijective: bool,
    found: &mut Vec<Vec<usize>>,
    first_only: bool,
) {
    if first_only && !found.is_empty() {
        return;
    }
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend(s, t, gens, images) {
            if s.is_homomorphism(t, &map) {
                let ok = !bijective || {
                    let mut seen = vec![false; t.order()];
                    map.iter().all(|&x| !core::mem::replace(&mut seen[x], true))
                };
                if ok {
                    found.push(map);
                }
            }
        }
        return;
    }
    for &c in &candidates[k] {
        if bijective && images.contains(&c) {
            continue;
        }
        images.push(c);
        // partial consistency on the subsemigroup generated so far
        let partial_ok = extend_partial(s, t, &gens[..=k], images);
        if partial_ok {
            search(s, t, gens, candidates, images, bijective, found, first_only);
        }
        images.pop();
    }
}

/// Consistency of the partial assignment on the subsemigroup it generates.
fn extend_partial(s: &FiniteSemigroup, t: &FiniteSemigroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map = vec![usize::MAX; s.order()];
    let mut queue = Vec::new();
    for (&g, &h) in gens.iter().zip(images) {
        if map[g] == usize::MAX {
            map[g] = h;
            queue.push(g);
        } else if map[g] != h {
            return false;
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        for j in 0..i {
            let b = queue[j];
            for (x, y, img) in [(a, b, t.mul(map[a], map[b])), (b, a, t.mul(map[b], map[a]))] {
                let xy = s.mul(x, y);
                if map[xy] == usize::MAX {
                    map[xy] = img;
                    queue.push(xy);
                } else if map[xy] != img {
                    return false;
                }
            }
        }
    }
    true
}

/// An isomorphism `s → t` as an image vector, if one exists.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<Option<Vec<usize>>> {
    find_isomorphism_bounded(s, t, DEFAULT_ISO_BOUND)
}

pub fn find_isomorphism_bounded(s: &FiniteSemigroup, t: &FiniteSemigroup, bound: usize) -> Result<Option<Vec<usize>>> {
    for x in [s, t] {
        if x.order() > bound {
            return Err(Error::SizeGuard { bound, actual: x.order() });
        }
    }
    if s.order() != t.order() {
        return Ok(None);
    }
    let (sig_s, sig_t) = (signatures(s), signatures(t));
    let (mut a, mut b) = (sig_s.clone(), sig_t.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let gens = generators(s);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| t.elements().filter(|&h| sig_t[h] == sig_s[g]).collect()).collect();
    let mut found = Vec::new();
    search(s, t, &gens, &candidates, &mut Vec::new(), true, &mut found, true);
    Ok(found.pop())
}

/// Every homomorphism `s → t`.
pub fn enumerate_homomorphisms(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let gens = generators(s);
    let candidates: Vec<Vec<usize>> = gens.iter().map(|_| t.elements().collect()).collect();
    let mut found = Vec::new();
    search(s, t, &gens, &candidates, &mut Vec::new(), false, &mut found, false);
    found.sort();
    found
}

/// Inverse of a bijection given as an image vector.
pub fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (a, &b) in map.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let sl2 = fixtures::sl2();
        assert_eq!(find_isomorphism(&sl2, &sl2).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_isomorphism(&fixtures::lz2(), &fixtures::rz2()).unwrap(), None);
        assert_eq!(find_isomorphism(&fixtures::z2(), &sl2).unwrap(), None);
    }

    #[test]
    fn size_guard() {
        let big = FiniteSemigroup::from_fn(65, |a, b| a.max(b)).unwrap();
        assert_eq!(find_isomorphism(&big, &big), Err(Error::SizeGuard { bound: 64, actual: 65 }));
    }

    #[test]
    fn relabelled_copies_are_found() {
        let m9 = fixtures::m9();
        let perm: Vec<usize> = (0..9).map(|x| (x * 4 + 3) % 9).collect();
        let inv = invert(&perm);
        let copy = FiniteSemigroup::from_fn(9, |a, b| perm[m9.mul(inv[a], inv[b])]).unwrap();
        let iso = find_isomorphism(&m9, &copy).unwrap().unwrap();
        assert!(m9.is_homomorphism(&copy, &iso));
    }

    #[test]
    fn homomorphism_counts() {
        // endomorphisms of Z2: trivial and identity
        assert_eq!(enumerate_homomorphisms(&fixtures::z2(), &fixtures::z2()).len(), 2);
        // maps from a left-zero semigroup are arbitrary maps into idempotents satisfying xy = x
        let homs = enumerate_homomorphisms(&fixtures::lz2(), &fixtures::lz2());
        assert_eq!(homs.len(), 4);
    }

    proptest! {
        #[test]
        fn isomorphism_search_is_symmetric(i in 0usize..113, j in 0usize..113) {
            let all = fixtures::enumerate_semigroups(3);
            let (s, t) = (&all[i], &all[j]);
            let fwd = find_isomorphism(s, t).unwrap();
            let back = find_isomorphism(t, s).unwrap();
            prop_assert_eq!(fwd.is_some(), back.is_some());
            if let Some(f) = fwd {
                prop_assert!(s.is_homomorphism(t, &f));
                prop_assert!(t.is_homomorphism(s, &invert(&f)));
            }
        }
    }
}
