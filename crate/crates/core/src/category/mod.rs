//! Finite categories with subobjects.
//!
//! Morphisms are dense indices. Composition is written left to right:
//! `compose(f, g)` is "first `f`, then `g`" and needs `cod f = dom g`.

pub mod ideal;
pub mod iso;
pub mod report;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use ideal::{left_ideal_category, right_ideal_category, IdealCategory};
pub use iso::{find_category_isomorphism, verify_functor, CategoryIsomorphism, Functor};
pub use report::{classify_category, classify_with_cones, verify_subobject_structure, CategoryReport, SubobjectReport, Verdict};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Abstract,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectSpec {
    pub label: String,
    /// Canonical idempotent for ideal categories.
    pub payload: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    pub dom: usize,
    pub cod: usize,
    pub label: String,
    /// The element `u` of `ρ(e, u, f)` or `λ(e, u, f)` for ideal categories.
    pub payload: Option<usize>,
}

/// `φ = θσι` with `θ` a retraction, `σ` an isomorphism and `ι` an inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalFactorisation {
    pub retraction: usize,
    pub iso: usize,
    pub inclusion: usize,
    pub coimage: usize,
    pub image: usize,
    /// `θσ`.
    pub epi_component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoCategory {
    side: Side,
    objects: Vec<ObjectSpec>,
    morphisms: Vec<MorphismSpec>,
    compose: Vec<usize>,
    identity: Vec<usize>,
    inclusion: Vec<usize>,
    hom: Vec<Vec<usize>>,
    mono: Vec<bool>,
    epi: Vec<bool>,
    inverse: Vec<usize>,
    factorisations: Vec<Vec<NormalFactorisation>>,
}

impl SoCategory {
    /// Validates the category and derives identities, hom-sets and the
    /// cancellation properties of each morphism.
    ///
    /// `compose(f, g)` is consulted only when `cod f = dom g`. Identities are
    /// added to the inclusions automatically.
    pub fn new(
        side: Side,
        objects: Vec<ObjectSpec>,
        morphisms: Vec<MorphismSpec>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
        inclusions: &[usize],
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        let bad = |msg: String| Err(Error::InvalidCategory(msg));
        for (i, mo) in morphisms.iter().enumerate() {
            if mo.dom >= n || mo.cod >= n {
                return bad(format!("morphism {i} has an endpoint out of range"));
            }
        }
        let mut hom = vec![Vec::new(); n * n];
        for (i, mo) in morphisms.iter().enumerate() {
            hom[mo.dom * n + mo.cod].push(i);
        }
        let mut table = vec![NONE; m * m];
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].cod != morphisms[g].dom {
                    continue;
                }
                let Some(h) = compose(f, g) else {
                    return bad(format!("composite of {f} and {g} is undefined"));
                };
                if h >= m || morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod {
                    return bad(format!("composite of {f} and {g} has the wrong type"));
                }
                table[f * m + g] = h;
            }
        }
        for f in 0..m {
            for g in 0..m {
                let fg = table[f * m + g];
                if fg == NONE {
                    continue;
                }
                for h in 0..m {
                    let gh = table[g * m + h];
                    if gh == NONE {
                        continue;
                    }
                    if table[fg * m + h] != table[f * m + gh] {
                        return bad(format!("composition is not associative at ({f}, {g}, {h})"));
                    }
                }
            }
        }
        let mut identity = vec![NONE; n];
        for c in 0..n {
            let found = hom[c * n + c].iter().copied().find(|&e| {
                (0..m).all(|f| {
                    (morphisms[f].cod != c || table[f * m + e] == f)
                        && (morphisms[f].dom != c || table[e * m + f] == f)
                })
            });
            match found {
                Some(e) => identity[c] = e,
                None => return bad(format!("object {c} has no identity")),
            }
        }
        let mut inclusion = vec![NONE; n * n];
        for c in 0..n {
            inclusion[c * n + c] = identity[c];
        }
        for &i in inclusions {
            if i >= m {
                return bad(format!("inclusion {i} is not a morphism"));
            }
            let (a, b) = (morphisms[i].dom, morphisms[i].cod);
            let slot = &mut inclusion[a * n + b];
            if *slot != NONE && *slot != i {
                return bad(format!("two inclusions from {a} to {b}"));
            }
            *slot = i;
        }

        let mut cat = SoCategory {
            side,
            objects,
            morphisms,
            compose: table,
            identity,
            inclusion,
            hom,
            mono: Vec::new(),
            epi: Vec::new(),
            inverse: Vec::new(),
            factorisations: Vec::new(),
        };
        cat.mono = (0..m).map(|f| cat.compute_mono(f)).collect();
        cat.epi = (0..m).map(|f| cat.compute_epi(f)).collect();
        cat.inverse = (0..m).map(|f| cat.compute_inverse(f).unwrap_or(NONE)).collect();
        cat.factorisations = (0..m).map(|f| cat.compute_factorisations(f)).collect();
        Ok(cat)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> core::ops::Range<usize> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> core::ops::Range<usize> {
        0..self.morphisms.len()
    }

    pub fn object(&self, c: usize) -> &ObjectSpec {
        &self.objects[c]
    }

    pub fn morphism(&self, f: usize) -> &MorphismSpec {
        &self.morphisms[f]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    /// `f` then `g`, if composable.
    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        let h = self.compose[f * self.morphisms.len() + g];
        (h != NONE).then_some(h)
    }

    /// `f` then `g`; panics when `cod f != dom g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.try_compose(f, g).unwrap_or_else(|| panic!("morphisms {f} and {g} are not composable"))
    }

    /// Composite of a non-empty path.
    pub fn compose_all(&self, path: &[usize]) -> usize {
        path[1..].iter().fold(path[0], |acc, &g| self.compose(acc, g))
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// The designated inclusion `ι(a, b)` when `a ⊆ b`.
    pub fn inclusion(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.inclusion[a * self.objects.len() + b];
        (i != NONE).then_some(i)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.inclusion(a, b).is_some()
    }

    pub fn is_inclusion(&self, f: usize) -> bool {
        self.inclusion(self.dom(f), self.cod(f)) == Some(f)
    }

    /// All designated inclusions, in index order.
    pub fn inclusions(&self) -> Vec<usize> {
        self.morphisms().filter(|&f| self.is_inclusion(f)).collect()
    }

    pub fn is_mono(&self, f: usize) -> bool {
        self.mono[f]
    }

    pub fn is_epi(&self, f: usize) -> bool {
        self.epi[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f] != NONE
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let g = self.inverse[f];
        (g != NONE).then_some(g)
    }

    /// `q : d → c` with `c ⊆ d` and `ι(c, d) q = 1_c`.
    pub fn is_retraction(&self, q: usize) -> bool {
        let (d, c) = (self.dom(q), self.cod(q));
        self.inclusion(c, d)
            .is_some_and(|i| self.compose(i, q) == self.identity(c))
    }

    /// Every splitting of `ι(c, d)`.
    pub fn retractions(&self, c: usize, d: usize) -> Vec<usize> {
        match self.inclusion(c, d) {
            Some(i) => self
                .hom(d, c)
                .iter()
                .copied()
                .filter(|&q| self.compose(i, q) == self.identity(c))
                .collect(),
            None => Vec::new(),
        }
    }

    /// All normal factorisations of `f`, sorted.
    pub fn factorisations(&self, f: usize) -> &[NormalFactorisation] {
        &self.factorisations[f]
    }

    /// The epimorphic component `f°`, required to be the same for every
    /// normal factorisation of `f`.
    pub fn epi_component(&self, f: usize) -> Result<usize> {
        let all = &self.factorisations[f];
        let first = all.first().ok_or(Error::NoFactorisation(f))?;
        if all.iter().any(|x| x.epi_component != first.epi_component) {
            return Err(Error::InternalDisagreement("epimorphic component depends on the factorisation"));
        }
        Ok(first.epi_component)
    }

    /// Image object of `f`, i.e. the codomain of `f°`.
    pub fn image(&self, f: usize) -> Result<usize> {
        Ok(self.cod(self.epi_component(f)?))
    }

    pub fn coimage(&self, f: usize) -> Result<usize> {
        let all = &self.factorisations[f];
        let first = all.first().ok_or(Error::NoFactorisation(f))?;
        if all.iter().any(|x| x.coimage != first.coimage) {
            return Err(Error::InternalDisagreement("coimage depends on the factorisation"));
        }
        Ok(first.coimage)
    }

    /// Objects below `c`, including `c`.
    pub fn down_set(&self, c: usize) -> Vec<usize> {
        self.objects().filter(|&a| self.le(a, c)).collect()
    }

    /// Greatest lower bound in the inclusion order, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = self.objects().filter(|&x| self.le(x, a) && self.le(x, b)).collect();
        lower.iter().copied().find(|&x| lower.iter().all(|&y| self.le(y, x)))
    }

    fn compute_mono(&self, f: usize) -> bool {
        let a = self.dom(f);
        self.objects().all(|x| {
            let hs = self.hom(x, a);
            let images: BTreeSet<usize> = hs.iter().map(|&g| self.compose(g, f)).collect();
            images.len() == hs.len()
        })
    }

    fn compute_epi(&self, f: usize) -> bool {
        let b = self.cod(f);
        self.objects().all(|y| {
            let hs = self.hom(b, y);
            let images: BTreeSet<usize> = hs.iter().map(|&g| self.compose(f, g)).collect();
            images.len() == hs.len()
        })
    }

    fn compute_inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(f, g) == self.identity(a) && self.compose(g, f) == self.identity(b))
    }

    fn compute_factorisations(&self, f: usize) -> Vec<NormalFactorisation> {
        let (a, b) = (self.dom(f), self.cod(f));
        let mut out = Vec::new();
        for c1 in self.objects().filter(|&c| self.le(c, a)) {
            for theta in self.retractions(c1, a) {
                for c2 in self.objects().filter(|&c| self.le(c, b)) {
                    let iota = self.inclusion(c2, b).unwrap();
                    for &sigma in self.hom(c1, c2) {
                        if self.inverse[sigma] == NONE {
                            continue;
                        }
                        let epi = self.compose(theta, sigma);
                        if self.compose(epi, iota) == f {
                            out.push(NormalFactorisation {
                                retraction: theta,
                                iso: sigma,
                                inclusion: iota,
                                coimage: c1,
                                image: c2,
                                epi_component: epi,
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn object_label(&self, c: usize) -> &str {
        &self.objects[c].label
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    /// Every defined composite as `(f, g, f then g)`.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if let Some(h) = self.try_compose(f, g) {
                    out.push((f, g, h));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    /// Two objects `0 ⊆ 1` with an inclusion and a retraction.
    fn split_pair() -> SoCategory {
        let objects = vec![
            ObjectSpec { label: "a".to_string(), payload: None },
            ObjectSpec { label: "b".to_string(), payload: None },
        ];
        let mor = |dom, cod, label: &str| MorphismSpec { dom, cod, label: label.to_string(), payload: None };
        // 0: 1_a, 1: 1_b, 2: ι, 3: q, 4: qι (idempotent on b)
        let morphisms = vec![mor(0, 0, "1a"), mor(1, 1, "1b"), mor(0, 1, "i"), mor(1, 0, "q"), mor(1, 1, "e")];
        let table = |f: usize, g: usize| -> Option<usize> {
            Some(match (f, g) {
                (0, x) | (x, 0) if x != 1 => x,
                (1, x) | (x, 1) => x,
                (2, 3) => 0,
                (3, 2) => 4,
                (2, 4) => 2,
                (4, 3) => 3,
                (4, 4) => 4,
                _ => return None,
            })
        };
        SoCategory::new(Side::Abstract, objects, morphisms, table, &[2]).unwrap()
    }

    #[test]
    fn cancellation_properties() {
        let c = split_pair();
        assert_eq!(c.identity(0), 0);
        assert!(c.is_mono(2));
        assert!(!c.is_epi(2));
        assert!(c.is_epi(3));
        assert!(c.is_retraction(3));
        assert_eq!(c.retractions(0, 1), vec![3]);
        assert!(c.is_iso(1));
        assert!(!c.is_iso(4));
    }

    #[test]
    fn factorisation_of_idempotent() {
        let c = split_pair();
        let f = c.factorisations(4);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].retraction, f[0].iso, f[0].inclusion), (3, 0, 2));
        assert_eq!(c.epi_component(4).unwrap(), 3);
        assert_eq!(c.image(4).unwrap(), 0);
    }

    #[test]
    fn rejects_non_associative_tables() {
        let objects = vec![ObjectSpec { label: "a".to_string(), payload: None }];
        let mor = |label: &str| MorphismSpec { dom: 0, cod: 0, label: label.to_string(), payload: None };
        // x·x = y, everything else x: (x·x)·y = x but x·(x·y) = y
        let table = |f: usize, g: usize| Some(if f == 0 && g == 0 { 1 } else { 0 });
        let err = SoCategory::new(Side::Abstract, objects, vec![mor("x"), mor("y")], table, &[]);
        assert!(matches!(err, Err(Error::InvalidCategory(_))));
    }
}
