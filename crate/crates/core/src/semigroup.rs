//! Finite semigroups given by their multiplication table.

use alloc::borrow::Cow;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite semigroup on the elements `0..order`.
///
/// The table is validated at construction: every entry is in range and the
/// product is associative. A two-sided zero, when present, is recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
    zero: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates a square grid of 0-based element indices.
    pub fn from_cayley_table(
        grid: &[Vec<usize>],
        labels: Option<Vec<String>>,
        zero_hint: Option<usize>,
    ) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in grid.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare { rows: n, row, len: entries.len() });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::OutOfRange { row, col, value });
                }
                table.push(value);
            }
        }
        Self::from_flat(n, table, labels, zero_hint)
    }

    /// Builds the semigroup whose product is `op`.
    pub fn from_fn(order: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let value = op(a, b);
                if value >= order {
                    return Err(Error::OutOfRange { row: a, col: b, value });
                }
                table.push(value);
            }
        }
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        Self::from_flat(order, table, None, None)
    }

    fn from_flat(
        n: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        zero_hint: Option<usize>,
    ) -> Result<Self> {
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::BadLabels { expected: n, found: labels.len() });
            }
        }
        let mut s = FiniteSemigroup { order: n, table, labels, zero: None };
        if let Some((a, b, c)) = s.associativity_failure() {
            return Err(Error::NonAssociative(a, b, c));
        }
        s.zero = match zero_hint {
            Some(z) if z >= n || !s.is_zero(z) => return Err(Error::NotAZero(z)),
            Some(z) => Some(z),
            None => (0..n).find(|&z| s.is_zero(z)),
        };
        Ok(s)
    }

    /// First triple (in lexicographic order) violating associativity.
    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn is_zero(&self, z: usize) -> bool {
        (0..self.order).all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Product of a non-empty word, evaluated left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        let mut it = word.iter().copied();
        let first = it.next().expect("empty word");
        it.fold(first, |acc, x| self.mul(acc, x))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> Cow<'_, str> {
        match &self.labels {
            Some(l) => Cow::Borrowed(l[a].as_str()),
            None => Cow::Owned(format!("{a}")),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::BadLabels { expected: self.order, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn to_grid(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    #[inline]
    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.is_idempotent(e)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A group is a monoid in which every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        self.group_inverses().is_some()
    }

    /// Inverse of every element when the semigroup is a group.
    pub fn group_inverses(&self) -> Option<Vec<usize>> {
        let e = self.identity()?;
        (0..self.order)
            .map(|a| (0..self.order).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e))
            .collect()
    }

    /// `S¹`: the semigroup itself when it already has an identity, otherwise
    /// a copy with a fresh identity appended as the last element.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity().is_some() {
            return self.clone();
        }
        let n = self.order;
        let one = n;
        let mut table = Vec::with_capacity((n + 1) * (n + 1));
        for a in 0..=n {
            for b in 0..=n {
                table.push(if a == one {
                    b
                } else if b == one {
                    a
                } else {
                    self.mul(a, b)
                });
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push(String::from("1"));
            l
        });
        FiniteSemigroup { order: n + 1, table, labels, zero: self.zero }
    }

    /// The subsemigroup on `elements` (which must be closed), together with
    /// the index map from the new elements back to `self`.
    pub fn restrict(&self, elements: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
        let mut members: Vec<usize> = elements.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut position = alloc::vec![usize::MAX; self.order];
        for (i, &a) in members.iter().enumerate() {
            position[a] = i;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                let ab = self.mul(a, b);
                if position[ab] == usize::MAX {
                    return Err(Error::NotClosed(a, b));
                }
                table.push(position[ab]);
            }
        }
        let labels = self.labels.as_ref().map(|l| members.iter().map(|&a| l[a].clone()).collect());
        let sub = Self::from_flat(m, table, labels, None)?;
        Ok((sub, members))
    }

    /// Smallest subsemigroup containing `generators`.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut member = alloc::vec![false; self.order];
        let mut list: Vec<usize> = Vec::new();
        for &g in generators {
            if !member[g] {
                member[g] = true;
                list.push(g);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let b = list[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        list.push(p);
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Checks whether `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteSemigroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }

    /// Right regular representation `a ↦ (x ↦ xa)` as explicit maps on `S`.
    pub fn right_regular_representation(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|x| self.mul(x, a)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn min_semilattice_is_valid_with_zero() {
        let s = FiniteSemigroup::from_cayley_table(&[vec![0, 0], vec![0, 1]], None, None).unwrap();
        assert_eq!(s.zero(), Some(0));
        assert_eq!(s.identity(), Some(1));
    }

    #[test]
    fn non_associative_triple_is_reported() {
        let err = FiniteSemigroup::from_cayley_table(&[vec![1, 0], vec![0, 0]], None, None)
            .unwrap_err();
        assert_eq!(err, Error::NonAssociative(0, 0, 1));
    }

    #[test]
    fn z2_has_no_zero() {
        let s = FiniteSemigroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], None, None).unwrap();
        assert_eq!(s.zero(), None);
        assert!(s.is_group());
    }

    #[test]
    fn out_of_range_and_ragged_rows() {
        let err = FiniteSemigroup::from_cayley_table(&[vec![0, 2], vec![0, 0]], None, None)
            .unwrap_err();
        assert_eq!(err, Error::OutOfRange { row: 0, col: 1, value: 2 });
        let err =
            FiniteSemigroup::from_cayley_table(&[vec![0, 0], vec![0]], None, None).unwrap_err();
        assert!(matches!(err, Error::NotSquare { row: 1, .. }));
        assert_eq!(FiniteSemigroup::from_cayley_table(&[], None, None), Err(Error::EmptyTable));
    }

    #[test]
    fn zero_hint_is_checked() {
        let grid = [vec![0, 0], vec![0, 1]];
        assert!(FiniteSemigroup::from_cayley_table(&grid, None, Some(0)).is_ok());
        assert_eq!(
            FiniteSemigroup::from_cayley_table(&grid, None, Some(1)),
            Err(Error::NotAZero(1))
        );
    }

    #[test]
    fn adjoin_identity_only_when_missing() {
        let lz2 = FiniteSemigroup::from_fn(2, |a, _| a).unwrap();
        let m = lz2.adjoin_identity();
        assert_eq!(m.order(), 3);
        assert_eq!(m.identity(), Some(2));

        let z2 = FiniteSemigroup::from_fn(2, |a, b| (a + b) % 2).unwrap();
        assert_eq!(z2.adjoin_identity(), z2);

        let sl2 = FiniteSemigroup::from_fn(2, |a, b| a.min(b)).unwrap();
        assert_eq!(sl2.adjoin_identity(), sl2);
    }

    #[test]
    fn restrict_rejects_open_sets() {
        let z2 = FiniteSemigroup::from_fn(2, |a, b| (a + b) % 2).unwrap();
        assert_eq!(z2.restrict(&[1]).unwrap_err(), Error::NotClosed(1, 1));
        let (sub, map) = z2.restrict(&[0]).unwrap();
        assert_eq!(sub.order(), 1);
        assert_eq!(map, vec![0]);
    }
}
