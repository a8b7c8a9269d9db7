//! Regular, inverse and locally inverse semigroups.
//!
//! Each predicate is evaluated through every equivalent characterisation we
//! know of, and the characterisations must agree. Disagreement is reported as
//! [`Error::InternalDisagreement`].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::green::{green_data, idempotents_and_inverses, GreenData};
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Regular,
    Inverse,
    LocallyInverse,
}

/// A counterexample; [`Witness::replays`] re-checks it against the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    NoInverse { a: usize },
    /// `b != c` are both inverses of `a`.
    TwoInverses { a: usize, b: usize, c: usize },
    /// Distinct idempotents in one R-class.
    RelatedIdempotentsR { e: usize, f: usize },
    /// Distinct idempotents in one L-class.
    RelatedIdempotentsL { e: usize, f: usize },
    NonCommuting { e: usize, f: usize },
    /// `eSe` is not inverse: `a ∈ eSe` has inverses `b != c` inside `eSe`.
    LocalNotInverse { e: usize, a: usize, b: usize, c: usize },
    /// `e (L ∪ R) f`, both in `ω(g)`, `e != f`.
    OmegaCollision { e: usize, f: usize, g: usize },
    /// `x, y ∈ ω(g)` but `xy ∉ ω(g)` or `xy != yx`.
    OmegaNotSemilattice { g: usize, x: usize, y: usize },
    /// In `ω^ℓ(g)`: not closed at `(x, y)` or `xyz != xzy`.
    NotLeftNormal { g: usize, x: usize, y: usize, z: usize },
    /// In `ω^r(g)`: not closed at `(x, y)` or `xyz != yxz`.
    NotRightNormal { g: usize, x: usize, y: usize, z: usize },
}

impl Witness {
    /// Whether the witness really exhibits a violation in `s`.
    pub fn replays(&self, s: &FiniteSemigroup) -> bool {
        let is_inv = |a: usize, b: usize| s.product(&[a, b, a]) == a && s.product(&[b, a, b]) == b;
        let g = green_data(s);
        match *self {
            Witness::NoInverse { a } => s.elements().all(|b| !is_inv(a, b)),
            Witness::TwoInverses { a, b, c } => b != c && is_inv(a, b) && is_inv(a, c),
            Witness::RelatedIdempotentsR { e, f } => {
                e != f && s.is_idempotent(e) && s.is_idempotent(f) && g.r_related(e, f)
            }
            Witness::RelatedIdempotentsL { e, f } => {
                e != f && s.is_idempotent(e) && s.is_idempotent(f) && g.l_related(e, f)
            }
            Witness::NonCommuting { e, f } => {
                s.is_idempotent(e) && s.is_idempotent(f) && s.mul(e, f) != s.mul(f, e)
            }
            Witness::LocalNotInverse { e, a, b, c } => {
                let inside = |x: usize| s.product(&[e, x, e]) == x;
                s.is_idempotent(e)
                    && inside(a)
                    && inside(b)
                    && inside(c)
                    && b != c
                    && is_inv(a, b)
                    && is_inv(a, c)
            }
            Witness::OmegaCollision { e, f, g: top } => {
                e != f
                    && (g.l_related(e, f) || g.r_related(e, f))
                    && g.omega[top].contains(&e)
                    && g.omega[top].contains(&f)
            }
            Witness::OmegaNotSemilattice { g: top, x, y } => {
                let xy = s.mul(x, y);
                g.omega[top].contains(&x)
                    && g.omega[top].contains(&y)
                    && (!g.omega[top].contains(&xy) || xy != s.mul(y, x))
            }
            Witness::NotLeftNormal { g: top, x, y, z } => {
                let set = &g.omega_l[top];
                set.contains(&x)
                    && set.contains(&y)
                    && set.contains(&z)
                    && (!set.contains(&s.mul(x, y))
                        || s.product(&[x, y, z]) != s.product(&[x, z, y]))
            }
            Witness::NotRightNormal { g: top, x, y, z } => {
                let set = &g.omega_r[top];
                set.contains(&x)
                    && set.contains(&y)
                    && set.contains(&z)
                    && (!set.contains(&s.mul(x, y))
                        || s.product(&[x, y, z]) != s.product(&[y, x, z]))
            }
        }
    }
}

/// Verdicts of each equivalent condition for one predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub predicate: Predicate,
    pub conditions: Vec<(&'static str, bool)>,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// Verdict plus witness and the per-condition record for one predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub cross_check: CrossCheck,
    /// Witness of each failing condition, in condition order.
    pub condition_witnesses: Vec<Option<Witness>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_regular: bool,
    pub is_inverse: bool,
    pub is_locally_inverse: bool,
    pub witnesses: Vec<(Predicate, Witness)>,
    pub cross_checks: Vec<CrossCheck>,
}

pub fn is_regular(s: &FiniteSemigroup) -> Verdict {
    let inv = idempotents_and_inverses(s);
    // aS¹ contains an idempotent for every a
    let g = green_data(s);
    let by_class = s.elements().all(|a| g.idempotents.iter().any(|&e| g.r_related(a, e)));
    let cross_check = CrossCheck {
        predicate: Predicate::Regular,
        conditions: alloc::vec![("inverse exists", inv.is_regular), ("idempotent in R-class", by_class)],
    };
    let witness = inv.witness.map(|a| Witness::NoInverse { a });
    Verdict {
        holds: inv.is_regular,
        witness: witness.clone(),
        cross_check,
        condition_witnesses: alloc::vec![witness.clone(), witness],
    }
}

fn first_pair(items: &[usize], mut bad: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    for (i, &x) in items.iter().enumerate() {
        for &y in &items[i + 1..] {
            if bad(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

fn two_inverses(s: &FiniteSemigroup, within: &[usize]) -> Option<Witness> {
    for &a in within {
        let invs: Vec<usize> = within
            .iter()
            .copied()
            .filter(|&b| s.product(&[a, b, a]) == a && s.product(&[b, a, b]) == b)
            .collect();
        if invs.len() >= 2 {
            return Some(Witness::TwoInverses { a, b: invs[0], c: invs[1] });
        }
    }
    None
}

/// Evaluates the three characterisations of inverse semigroups.
pub fn is_inverse(s: &FiniteSemigroup) -> Result<Verdict> {
    let inv = idempotents_and_inverses(s);
    let g = green_data(s);
    let all: Vec<usize> = s.elements().collect();

    // (1) unique inverses
    let c1_witness = inv
        .witness
        .map(|a| Witness::NoInverse { a })
        .or_else(|| two_inverses(s, &all));
    let c1 = c1_witness.is_none();

    // (2) exactly one idempotent per R-class and per L-class
    let e = &g.idempotents;
    let c2_witness = first_pair(e, |x, y| g.r_related(x, y))
        .map(|(e, f)| Witness::RelatedIdempotentsR { e, f })
        .or_else(|| first_pair(e, |x, y| g.l_related(x, y)).map(|(e, f)| Witness::RelatedIdempotentsL { e, f }))
        .or_else(|| {
            s.elements()
                .find(|&a| !e.iter().any(|&f| g.r_related(a, f)) || !e.iter().any(|&f| g.l_related(a, f)))
                .map(|a| Witness::NoInverse { a })
        });
    let c2 = c2_witness.is_none();

    // (3) regular and E(S) commutative
    let c3_witness = inv
        .witness
        .map(|a| Witness::NoInverse { a })
        .or_else(|| first_pair(e, |x, y| s.mul(x, y) != s.mul(y, x)).map(|(e, f)| Witness::NonCommuting { e, f }));
    let c3 = c3_witness.is_none();

    let cross_check = CrossCheck {
        predicate: Predicate::Inverse,
        conditions: alloc::vec![
            ("unique inverses", c1),
            ("one idempotent per L- and R-class", c2),
            ("regular with commuting idempotents", c3),
        ],
    };
    if !cross_check.agree() {
        return Err(Error::InternalDisagreement("inverse semigroup characterisations"));
    }
    let witness = c2_witness.clone().or_else(|| c1_witness.clone()).or_else(|| c3_witness.clone());
    Ok(Verdict {
        holds: c1,
        witness,
        cross_check,
        condition_witnesses: alloc::vec![c1_witness, c2_witness, c3_witness],
    })
}

/// `eSe` as a semigroup, with the index map back into `s`.
pub fn local_submonoid(s: &FiniteSemigroup, e: usize) -> Result<(FiniteSemigroup, Vec<usize>)> {
    if e >= s.order() || !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let elements: Vec<usize> = s.elements().map(|x| s.product(&[e, x, e])).collect();
    s.restrict(&elements)
}

fn omega_semilattice_witness(s: &FiniteSemigroup, g: &GreenData) -> Option<Witness> {
    for &top in &g.idempotents {
        let set = &g.omega[top];
        for &x in set {
            for &y in set {
                let xy = s.mul(x, y);
                if !set.contains(&xy) || xy != s.mul(y, x) {
                    return Some(Witness::OmegaNotSemilattice { g: top, x, y });
                }
            }
        }
    }
    None
}

fn normal_band_witness(s: &FiniteSemigroup, g: &GreenData, left: bool) -> Option<Witness> {
    for &top in &g.idempotents {
        let set = if left { &g.omega_l[top] } else { &g.omega_r[top] };
        for &x in set {
            for &y in set {
                let closed = set.contains(&s.mul(x, y));
                for &z in set {
                    let ok = closed
                        && if left {
                            s.product(&[x, y, z]) == s.product(&[x, z, y])
                        } else {
                            s.product(&[x, y, z]) == s.product(&[y, x, z])
                        };
                    if !ok {
                        return Some(if left {
                            Witness::NotLeftNormal { g: top, x, y, z }
                        } else {
                            Witness::NotRightNormal { g: top, x, y, z }
                        });
                    }
                }
            }
        }
    }
    None
}

/// Evaluates the four characterisations of locally inverse semigroups.
/// A non-regular semigroup gets a `false` verdict with a [`Witness::NoInverse`].
pub fn is_locally_inverse(s: &FiniteSemigroup) -> Result<Verdict> {
    let regular = is_regular(s);
    if !regular.holds {
        let witness = regular.witness.clone();
        return Ok(Verdict {
            holds: false,
            witness: witness.clone(),
            cross_check: CrossCheck {
                predicate: Predicate::LocallyInverse,
                conditions: alloc::vec![("regular", false)],
            },
            condition_witnesses: alloc::vec![witness],
        });
    }
    let g = green_data(s);

    // (1) eSe inverse
    let mut c1_witness = None;
    for &e in &g.idempotents {
        let local: Vec<usize> = {
            let mut v: Vec<usize> = s.elements().map(|x| s.product(&[e, x, e])).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (sub, map) = local_submonoid(s, e)?;
        let verdict = is_inverse(&sub)?;
        if !verdict.holds {
            c1_witness = match two_inverses(s, &local) {
                Some(Witness::TwoInverses { a, b, c }) => Some(Witness::LocalNotInverse { e, a, b, c }),
                _ => {
                    // a regular eSe always has some element with two inverses when not inverse
                    let a = map[0];
                    Some(Witness::LocalNotInverse { e, a, b: a, c: a })
                }
            };
            break;
        }
    }
    let c1 = c1_witness.is_none();

    // (2) (L ∪ R)-related idempotents in a common ω(g) coincide
    let mut c2_witness = None;
    'outer: for (i, &e) in g.idempotents.iter().enumerate() {
        for &f in &g.idempotents[i + 1..] {
            if !(g.l_related(e, f) || g.r_related(e, f)) {
                continue;
            }
            for &top in &g.idempotents {
                if g.omega[top].contains(&e) && g.omega[top].contains(&f) {
                    c2_witness = Some(Witness::OmegaCollision { e, f, g: top });
                    break 'outer;
                }
            }
        }
    }
    let c2 = c2_witness.is_none();

    // (3) every ω(e) is a semilattice
    let c3_witness = omega_semilattice_witness(s, &g);
    let c3 = c3_witness.is_none();

    // (4) ω^ℓ(e) left normal band, ω^r(e) right normal band
    let c4_witness = normal_band_witness(s, &g, true).or_else(|| normal_band_witness(s, &g, false));
    let c4 = c4_witness.is_none();

    let cross_check = CrossCheck {
        predicate: Predicate::LocallyInverse,
        conditions: alloc::vec![
            ("every eSe inverse", c1),
            ("(L∪R)-related idempotents in ω(g) coincide", c2),
            ("every ω(e) a semilattice", c3),
            ("ω^ℓ(e) left normal, ω^r(e) right normal", c4),
        ],
    };
    if !cross_check.agree() {
        return Err(Error::InternalDisagreement("locally inverse characterisations"));
    }
    let witness = c2_witness
        .clone()
        .or_else(|| c1_witness.clone())
        .or_else(|| c3_witness.clone())
        .or_else(|| c4_witness.clone());
    Ok(Verdict {
        holds: c1,
        witness,
        cross_check,
        condition_witnesses: alloc::vec![c1_witness, c2_witness, c3_witness, c4_witness],
    })
}

pub fn classify(s: &FiniteSemigroup) -> Result<Classification> {
    let regular = is_regular(s);
    let inverse = is_inverse(s)?;
    let local = is_locally_inverse(s)?;
    if !regular.cross_check.agree() {
        return Err(Error::InternalDisagreement("regularity characterisations"));
    }
    let mut witnesses = Vec::new();
    for (p, v) in [
        (Predicate::Regular, &regular),
        (Predicate::Inverse, &inverse),
        (Predicate::LocallyInverse, &local),
    ] {
        if let Some(w) = &v.witness {
            witnesses.push((p, w.clone()));
        }
    }
    if (inverse.holds && !local.holds) || (local.holds && !regular.holds) {
        return Err(Error::InternalDisagreement("inverse ⇒ locally inverse ⇒ regular"));
    }
    Ok(Classification {
        is_regular: regular.holds,
        is_inverse: inverse.holds,
        is_locally_inverse: local.holds,
        witnesses,
        cross_checks: alloc::vec![regular.cross_check, inverse.cross_check, local.cross_check],
    })
}

/// Outcome of the idempotent-separation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub separated: bool,
    /// A pair `p != q` with `pe = qe` for every idempotent `e`.
    pub witness: Option<(usize, usize)>,
}

/// Whether right multiplication by idempotents separates all elements.
pub fn separation_by_idempotents(s: &FiniteSemigroup) -> Separation {
    let e = s.idempotents();
    let all: Vec<usize> = s.elements().collect();
    let witness = first_pair(&all, |p, q| e.iter().all(|&f| s.mul(p, f) == s.mul(q, f)));
    Separation { separated: witness.is_none(), witness }
}

/// A pair `a != b` with `xa = xb` for all `x`, if the right regular
/// representation is not injective.
pub fn right_regular_collision(s: &FiniteSemigroup) -> Option<(usize, usize)> {
    let rep = s.right_regular_representation();
    let all: Vec<usize> = s.elements().collect();
    first_pair(&all, |a, b| rep[a] == rep[b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    #[test]
    fn brandt_is_inverse() {
        let v = is_inverse(&fixtures::b2()).unwrap();
        assert!(v.holds);
        assert!(v.witness.is_none());
    }

    #[test]
    fn full_transformations_on_two_points() {
        let t2 = fixtures::t2();
        let (c1, c2, id) = (fixtures::T2_C1, fixtures::T2_C2, fixtures::T2_ID);
        let v = is_inverse(&t2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::RelatedIdempotentsR { e: c1, f: c2 }));
        assert!(v.witness.unwrap().replays(&t2));

        let l = is_locally_inverse(&t2).unwrap();
        assert!(!l.holds);
        assert_eq!(l.witness, Some(Witness::OmegaCollision { e: c1, f: c2, g: id }));
        for w in l.condition_witnesses.iter().flatten() {
            assert!(w.replays(&t2), "{w:?}");
        }
    }

    #[test]
    fn semilattice_and_left_zero() {
        assert!(is_inverse(&fixtures::sl2()).unwrap().holds);
        assert!(is_locally_inverse(&fixtures::lz2()).unwrap().holds);
        assert!(!is_inverse(&fixtures::lz2()).unwrap().holds);
        assert!(is_locally_inverse(&fixtures::b2()).unwrap().holds);
    }

    #[test]
    fn non_regular_is_not_locally_inverse() {
        let null3 = FiniteSemigroup::from_fn(3, |_, _| 0).unwrap();
        let v = is_locally_inverse(&null3).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::NoInverse { a: 1 }));
        assert!(v.witness.unwrap().replays(&null3));
    }

    #[test]
    fn local_submonoids() {
        let t2 = fixtures::t2();
        let (sub, map) = local_submonoid(&t2, fixtures::T2_ID).unwrap();
        assert_eq!(sub.order(), 4);
        assert_eq!(map, vec![0, 1, 2, 3]);

        let b2 = fixtures::b2();
        let e = fixtures::b2_element(1, 1);
        let (sub, map) = local_submonoid(&b2, e).unwrap();
        assert_eq!(map, vec![0, e]);
        // a 2-chain: a semilattice with two comparable elements
        assert!(sub.is_commutative());
        assert_eq!(sub.idempotents().len(), 2);

        let sl2 = fixtures::sl2();
        assert_eq!(local_submonoid(&sl2, 1).unwrap().0, sl2);
        assert_eq!(local_submonoid(&b2, fixtures::b2_element(1, 2)).unwrap_err(), Error::NotIdempotent(2));
    }

    #[test]
    fn idempotent_separation() {
        assert!(separation_by_idempotents(&fixtures::b2()).separated);
        assert!(separation_by_idempotents(&fixtures::sl2()).separated);
        // pe = p in a left-zero semigroup, so distinct elements stay apart
        assert!(separation_by_idempotents(&fixtures::lz2()).separated);
        let rz2 = fixtures::rz2();
        let sep = separation_by_idempotents(&rz2);
        assert_eq!(sep, Separation { separated: false, witness: Some((0, 1)) });
    }

    #[test]
    fn implications_hold_on_small_semigroups() {
        for n in 1..=3 {
            for s in fixtures::enumerate_semigroups(n) {
                let c = classify(&s).unwrap();
                assert!(!c.is_inverse || c.is_locally_inverse);
                assert!(!c.is_locally_inverse || c.is_regular);
                for (_, w) in &c.witnesses {
                    assert!(w.replays(&s), "{w:?} on {:?}", s.to_grid());
                }
            }
        }
    }
}
