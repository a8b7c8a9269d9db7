//! The categories `𝕃(S)` of principal left ideals and `ℝ(S)` of principal
//! right ideals of a regular semigroup.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{MorphismSpec, ObjectSpec, Side, SoCategory};
use crate::error::{Error, Result};
use crate::green::{green_data, idempotents_and_inverses};
use crate::semigroup::FiniteSemigroup;

/// `𝕃(S)` or `ℝ(S)` together with the semigroup data that names its morphisms.
///
/// In `𝕃(S)` the morphism `ρ(e, u, f)` with `u ∈ eSf` is right translation by
/// `u`; in `ℝ(S)` the morphism `λ(e, u, f)` with `u ∈ fSe` is left translation.
/// Payloads are normalised (`êu` resp. `uê`) so equal maps share one index.
#[derive(Debug, Clone)]
pub struct IdealCategory {
    pub cat: SoCategory,
    pub semigroup: FiniteSemigroup,
    /// Object of each idempotent.
    object_of: Vec<Option<usize>>,
    index: BTreeMap<(usize, usize, usize), usize>,
}

impl IdealCategory {
    pub fn side(&self) -> Side {
        self.cat.side()
    }

    /// Canonical idempotent of object `c`.
    pub fn idempotent(&self, c: usize) -> usize {
        self.cat.object(c).payload.expect("ideal category objects carry an idempotent")
    }

    /// The object `Se` (or `eS`) of an idempotent `e`.
    pub fn object_of(&self, e: usize) -> Result<usize> {
        self.object_of.get(e).copied().flatten().ok_or(Error::NotIdempotent(e))
    }

    /// Object containing a regular element `a` as a generator: `Sf` with `f L a`
    /// on the left, `fS` with `f R a` on the right.
    pub fn object_generated_by(&self, a: usize) -> Result<usize> {
        let g = green_data(&self.semigroup);
        let related = |f: usize| match self.side() {
            Side::Right => g.r_related(a, f),
            _ => g.l_related(a, f),
        };
        self.cat
            .objects()
            .find(|&c| related(self.idempotent(c)))
            .ok_or(Error::NotRegular(a))
    }

    /// Element `u` labelling morphism `m`.
    pub fn element(&self, m: usize) -> usize {
        self.cat.morphism(m).payload.expect("ideal category morphisms carry an element")
    }

    /// Index of `ρ(e, u, f)` (left) or `λ(e, u, f)` (right) for arbitrary
    /// idempotents `e`, `f`.
    pub fn canonical_morphism(&self, e: usize, u: usize, f: usize) -> Result<usize> {
        let s = &self.semigroup;
        let (a, b) = (self.object_of(e)?, self.object_of(f)?);
        let (inside, normal) = match self.side() {
            Side::Right => (s.mul(f, u) == u && s.mul(u, e) == u, s.mul(u, self.idempotent(a))),
            _ => (s.mul(e, u) == u && s.mul(u, f) == u, s.mul(self.idempotent(a), u)),
        };
        if !inside {
            return Err(Error::NotInHomSet { e, u, f });
        }
        Ok(self.index[&(a, normal, b)])
    }

    /// Evaluates morphism `m` at an element `x` of its domain ideal.
    pub fn apply(&self, m: usize, x: usize) -> usize {
        match self.side() {
            Side::Right => self.semigroup.mul(self.element(m), x),
            _ => self.semigroup.mul(x, self.element(m)),
        }
    }

    /// Elements of the ideal `Se` or `eS` of object `c`, sorted.
    pub fn ideal(&self, c: usize) -> Vec<usize> {
        let s = &self.semigroup;
        let e = self.idempotent(c);
        let mut v: Vec<usize> = match self.side() {
            Side::Right => s.elements().map(|x| s.mul(e, x)).collect(),
            _ => s.elements().map(|x| s.mul(x, e)).collect(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn build(s: &FiniteSemigroup, side: Side) -> Result<IdealCategory> {
    let inv = idempotents_and_inverses(s);
    if let Some(a) = inv.witness {
        return Err(Error::NotRegular(a));
    }
    let g = green_data(s);
    let related = |a: usize, b: usize| if side == Side::Right { g.r_related(a, b) } else { g.l_related(a, b) };

    let mut reps: Vec<usize> = Vec::new();
    let mut object_of = alloc::vec![None; s.order()];
    for &e in &inv.idempotents {
        let c = match reps.iter().position(|&r| related(r, e)) {
            Some(c) => c,
            None => {
                reps.push(e);
                reps.len() - 1
            }
        };
        object_of[e] = Some(c);
    }
    let prefix = if side == Side::Right { "λ" } else { "ρ" };
    let objects: Vec<ObjectSpec> = reps
        .iter()
        .map(|&e| ObjectSpec {
            label: if side == Side::Right { format!("{}S", s.label(e)) } else { format!("S{}", s.label(e)) },
            payload: Some(e),
        })
        .collect();

    let mut morphisms = Vec::new();
    let mut index = BTreeMap::new();
    for (a, &e) in reps.iter().enumerate() {
        for (b, &f) in reps.iter().enumerate() {
            // hom(Se, Sf) ↔ eSf; hom(eS, fS) ↔ fSe
            let mut us: Vec<usize> = if side == Side::Right {
                s.elements().map(|x| s.product(&[f, x, e])).collect()
            } else {
                s.elements().map(|x| s.product(&[e, x, f])).collect()
            };
            us.sort_unstable();
            us.dedup();
            for u in us {
                index.insert((a, u, b), morphisms.len());
                morphisms.push(MorphismSpec {
                    dom: a,
                    cod: b,
                    label: format!("{prefix}({},{},{})", s.label(e), s.label(u), s.label(f)),
                    payload: Some(u),
                });
            }
        }
    }
    let payload: Vec<usize> = morphisms.iter().map(|m| m.payload.unwrap()).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.dom, m.cod)).collect();
    let compose = |x: usize, y: usize| {
        let u = if side == Side::Right { s.mul(payload[y], payload[x]) } else { s.mul(payload[x], payload[y]) };
        index.get(&(ends[x].0, u, ends[y].1)).copied()
    };
    let mut inclusions = Vec::new();
    for (a, &e) in reps.iter().enumerate() {
        for (b, &f) in reps.iter().enumerate() {
            let below = if side == Side::Right { s.mul(f, e) == e } else { s.mul(e, f) == e };
            if below {
                inclusions.push(index[&(a, e, b)]);
            }
        }
    }
    let cat = SoCategory::new(side, objects, morphisms, compose, &inclusions)?;
    Ok(IdealCategory { cat, semigroup: s.clone(), object_of, index })
}

/// `𝕃(S)`: objects `Se` with least-index `e` in each L-class of idempotents.
pub fn left_ideal_category(s: &FiniteSemigroup) -> Result<IdealCategory> {
    build(s, Side::Left)
}

/// `ℝ(S)`: objects `eS` with least-index `e` in each R-class of idempotents.
pub fn right_ideal_category(s: &FiniteSemigroup) -> Result<IdealCategory> {
    build(s, Side::Right)
}
