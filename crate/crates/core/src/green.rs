//! Green's relations, the biorder preorders on idempotents, and inverses.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::semigroup::FiniteSemigroup;

/// Dense boolean relation on the elements of a semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n] }
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |a| (0..self.n).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.holds(a, b))
    }
}

#[derive(Debug, Clone)]
pub struct GreenData {
    pub lclass: Vec<usize>,
    pub rclass: Vec<usize>,
    pub hclass: Vec<usize>,
    pub dclass: Vec<usize>,
    /// `S¹a` for every `a`, sorted.
    pub left_ideal: Vec<Vec<usize>>,
    /// `aS¹` for every `a`, sorted.
    pub right_ideal: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    /// `e ≤ℓ f ⟺ ef = e`, on idempotents only.
    pub leq_l: Relation,
    /// `e ≤r f ⟺ fe = e`, on idempotents only.
    pub leq_r: Relation,
    pub leq: Relation,
    /// Indexed by element; empty for non-idempotents.
    pub omega: Vec<Vec<usize>>,
    pub omega_l: Vec<Vec<usize>>,
    pub omega_r: Vec<Vec<usize>>,
    /// Whether `L∘R = R∘L` held when computing `D`.
    pub l_r_commute: bool,
}

impl GreenData {
    pub fn l_related(&self, a: usize, b: usize) -> bool {
        self.lclass[a] == self.lclass[b]
    }

    pub fn r_related(&self, a: usize, b: usize) -> bool {
        self.rclass[a] == self.rclass[b]
    }

    pub fn h_related(&self, a: usize, b: usize) -> bool {
        self.hclass[a] == self.hclass[b]
    }

    pub fn d_related(&self, a: usize, b: usize) -> bool {
        self.dclass[a] == self.dclass[b]
    }

    /// Members of each class, classes ordered by their least element.
    pub fn classes(labels: &[usize]) -> Vec<Vec<usize>> {
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (a, &c) in labels.iter().enumerate() {
            out[c].push(a);
        }
        out
    }
}

fn classify_by_key(keys: &[Vec<usize>]) -> Vec<usize> {
    let mut seen: BTreeMap<&[usize], usize> = BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.as_slice()).or_insert(next)
        })
        .collect()
}

fn relabel(raw: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    raw.iter()
        .map(|&r| {
            let next = map.len();
            *map.entry(r).or_insert(next)
        })
        .collect()
}

/// Computes every Green relation by comparing principal one-sided ideals of `S¹`.
pub fn green_data(s: &FiniteSemigroup) -> GreenData {
    let n = s.order();
    let left_ideal: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut set: Vec<usize> = (0..n).map(|x| s.mul(x, a)).collect();
            set.push(a);
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect();
    let right_ideal: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut set: Vec<usize> = (0..n).map(|x| s.mul(a, x)).collect();
            set.push(a);
            set.sort_unstable();
            set.dedup();
            set
        })
        .collect();
    let lclass = classify_by_key(&left_ideal);
    let rclass = classify_by_key(&right_ideal);
    let hraw: Vec<usize> = (0..n).map(|a| lclass[a] * n + rclass[a]).collect();
    let hclass = relabel(&hraw);

    // a (L∘R) b ⟺ ∃c: a L c R b
    let lr = |a: usize, b: usize| (0..n).any(|c| lclass[a] == lclass[c] && rclass[c] == rclass[b]);
    let rl = |a: usize, b: usize| (0..n).any(|c| rclass[a] == rclass[c] && lclass[c] == lclass[b]);
    let mut l_r_commute = true;
    let mut d_rep: Vec<usize> = (0..n).collect();
    for a in 0..n {
        let mut first = None;
        for b in 0..n {
            let x = lr(a, b);
            if x != rl(a, b) {
                l_r_commute = false;
            }
            if x && first.is_none() {
                first = Some(b);
            }
        }
        d_rep[a] = first.unwrap_or(a);
    }
    let dclass = relabel(&d_rep);

    let idempotents = s.idempotents();
    let mut leq_l = Relation::new(n);
    let mut leq_r = Relation::new(n);
    let mut leq = Relation::new(n);
    for &e in &idempotents {
        for &f in &idempotents {
            let l = s.mul(e, f) == e;
            let r = s.mul(f, e) == e;
            if l {
                leq_l.set(e, f);
            }
            if r {
                leq_r.set(e, f);
            }
            if l && r {
                leq.set(e, f);
            }
        }
    }
    let down = |rel: &Relation| -> Vec<Vec<usize>> {
        (0..n)
            .map(|e| {
                if s.is_idempotent(e) {
                    idempotents.iter().copied().filter(|&f| rel.holds(f, e)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect()
    };
    let omega = down(&leq);
    let omega_l = down(&leq_l);
    let omega_r = down(&leq_r);

    GreenData {
        lclass,
        rclass,
        hclass,
        dclass,
        left_ideal,
        right_ideal,
        idempotents,
        leq_l,
        leq_r,
        leq,
        omega,
        omega_l,
        omega_r,
        l_r_commute,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inverses {
    pub idempotents: Vec<usize>,
    /// `V(a) = {b : aba = a, bab = b}`.
    pub inverses: Vec<Vec<usize>>,
    pub is_regular: bool,
    /// Least element with no inverse.
    pub witness: Option<usize>,
}

pub fn idempotents_and_inverses(s: &FiniteSemigroup) -> Inverses {
    let n = s.order();
    let inverses: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| s.product(&[a, b, a]) == a && s.product(&[b, a, b]) == b)
                .collect()
        })
        .collect();
    let witness = inverses.iter().position(Vec::is_empty);
    Inverses { idempotents: s.idempotents(), inverses, is_regular: witness.is_none(), witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn left_zero_has_one_l_class() {
        let g = green_data(&fixtures::lz2());
        assert_eq!(g.lclass, vec![0, 0]);
        assert_eq!(g.rclass, vec![0, 1]);
    }

    #[test]
    fn brandt_classes() {
        let b2 = fixtures::b2();
        let g = green_data(&b2);
        let idx = |i, j| fixtures::b2_element(i, j);
        assert!(g.l_related(idx(1, 1), idx(2, 1)));
        assert!(g.l_related(idx(1, 2), idx(2, 2)));
        assert!(!g.l_related(idx(1, 1), idx(1, 2)));
        assert!(g.r_related(idx(1, 1), idx(1, 2)));
        assert!(g.r_related(idx(2, 1), idx(2, 2)));
        let l = GreenData::classes(&g.lclass);
        assert_eq!(l.len(), 3);
        assert!(l.contains(&vec![0]));
        assert!(g.l_r_commute);
        assert!(g.d_related(idx(1, 1), idx(2, 2)));
        assert!(!g.d_related(0, idx(2, 2)));
    }

    #[test]
    fn group_is_one_h_class() {
        let g = green_data(&fixtures::z2());
        assert_eq!(g.hclass, vec![0, 0]);
    }

    #[test]
    fn brandt_inverse_sets() {
        let b2 = fixtures::b2();
        let inv = idempotents_and_inverses(&b2);
        // brute force over all candidates, independent of the implementation above
        let a = fixtures::b2_element(1, 2);
        let brute: Vec<usize> = (0..5)
            .filter(|&b| b2.mul(b2.mul(a, b), a) == a && b2.mul(b2.mul(b, a), b) == b)
            .collect();
        assert_eq!(brute, vec![fixtures::b2_element(2, 1)]);
        assert_eq!(inv.inverses[a], brute);
        assert!(inv.is_regular);
    }

    #[test]
    fn null_semigroup_is_not_regular() {
        let null3 = FiniteSemigroup::from_fn(3, |_, _| 0).unwrap();
        let inv = idempotents_and_inverses(&null3);
        assert!(!inv.is_regular);
        assert_eq!(inv.witness, Some(1));
        assert_eq!(null3.product(&[1, 1, 1]), 0);
    }

    #[test]
    fn semilattice_zero_is_self_inverse() {
        let inv = idempotents_and_inverses(&fixtures::sl2());
        assert_eq!(inv.inverses[0], vec![0]);
    }

    #[test]
    fn omega_is_intersection() {
        for s in fixtures::corpus() {
            let g = green_data(&s.semigroup);
            for &e in &g.idempotents {
                let both: Vec<usize> =
                    g.omega_l[e].iter().copied().filter(|f| g.omega_r[e].contains(f)).collect();
                assert_eq!(both, g.omega[e], "{}", s.name);
            }
        }
    }
}
