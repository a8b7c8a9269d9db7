//! Subobject axioms and the normal/unambiguous classification.

use alloc::vec;
use alloc::vec::Vec;

use super::SoCategory;
use crate::cones::{enumerate_normal_cones, Cone};
use crate::error::Result;

/// A counterexample to one of the category axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryWitness {
    /// `a ⊆ b ⊆ c` but `ι(a,b)ι(b,c)` is not `ι(a,c)`.
    InclusionsNotClosed { a: usize, b: usize, c: usize },
    /// `a ⊆ b ⊆ a` with `a != b`.
    NotAntisymmetric { a: usize, b: usize },
    NotMono { inclusion: usize },
    /// `φ = αψ` with `φ`, `ψ` inclusions but `α` not an inclusion.
    NotInclusionClosed { phi: usize, alpha: usize, psi: usize },
    NoSplitting { inclusion: usize },
    SeveralSplittings { inclusion: usize, first: usize, second: usize },
    NoFactorisation { morphism: usize },
    SeveralFactorisations { morphism: usize },
    NoIdentityCone { object: usize },
}

impl CategoryWitness {
    /// Re-checks the counterexample against `cat`.
    pub fn replays(&self, cat: &SoCategory, cones: &[Cone]) -> bool {
        match *self {
            CategoryWitness::InclusionsNotClosed { a, b, c } => {
                match (cat.inclusion(a, b), cat.inclusion(b, c)) {
                    (Some(x), Some(y)) => cat.inclusion(a, c) != Some(cat.compose(x, y)),
                    _ => false,
                }
            }
            CategoryWitness::NotAntisymmetric { a, b } => a != b && cat.le(a, b) && cat.le(b, a),
            CategoryWitness::NotMono { inclusion } => cat.is_inclusion(inclusion) && !cat.is_mono(inclusion),
            CategoryWitness::NotInclusionClosed { phi, alpha, psi } => {
                cat.is_inclusion(phi)
                    && cat.is_inclusion(psi)
                    && cat.try_compose(alpha, psi) == Some(phi)
                    && !cat.is_inclusion(alpha)
            }
            CategoryWitness::NoSplitting { inclusion } => {
                cat.is_inclusion(inclusion) && cat.retractions(cat.dom(inclusion), cat.cod(inclusion)).is_empty()
            }
            CategoryWitness::SeveralSplittings { inclusion, first, second } => {
                let r = cat.retractions(cat.dom(inclusion), cat.cod(inclusion));
                first != second && r.contains(&first) && r.contains(&second)
            }
            CategoryWitness::NoFactorisation { morphism } => cat.factorisations(morphism).is_empty(),
            CategoryWitness::SeveralFactorisations { morphism } => cat.factorisations(morphism).len() > 1,
            CategoryWitness::NoIdentityCone { object } => {
                !cones.iter().any(|c| c.component(object) == cat.identity(object))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubobjectReport {
    pub strict_preorder: bool,
    pub inclusions_mono: bool,
    pub inclusion_closed: bool,
    pub is_semilattice: bool,
    /// `meets[a * n + b]` when the meet exists.
    pub meets: Vec<Option<usize>>,
    pub witnesses: Vec<CategoryWitness>,
}

impl SubobjectReport {
    pub fn holds(&self) -> bool {
        self.strict_preorder && self.inclusions_mono && self.inclusion_closed
    }

    pub fn meet(&self, n: usize, a: usize, b: usize) -> Option<usize> {
        self.meets[a * n + b]
    }
}

/// Checks that the inclusions form a subcategory with subobjects and tabulates meets.
pub fn verify_subobject_structure(cat: &SoCategory) -> SubobjectReport {
    let n = cat.object_count();
    let mut witnesses = Vec::new();
    let mut strict_preorder = true;
    for a in cat.objects() {
        for b in cat.objects() {
            if a != b && cat.le(a, b) && cat.le(b, a) && a < b {
                strict_preorder = false;
                witnesses.push(CategoryWitness::NotAntisymmetric { a, b });
            }
            for c in cat.objects() {
                if let (Some(x), Some(y)) = (cat.inclusion(a, b), cat.inclusion(b, c)) {
                    if cat.inclusion(a, c) != Some(cat.compose(x, y)) {
                        strict_preorder = false;
                        witnesses.push(CategoryWitness::InclusionsNotClosed { a, b, c });
                    }
                }
            }
        }
    }
    let mut inclusions_mono = true;
    let inclusions = cat.inclusions();
    for &i in &inclusions {
        if !cat.is_mono(i) {
            inclusions_mono = false;
            witnesses.push(CategoryWitness::NotMono { inclusion: i });
        }
    }
    let mut inclusion_closed = true;
    for &phi in &inclusions {
        for &psi in inclusions.iter().filter(|&&psi| cat.cod(psi) == cat.cod(phi)) {
            for &alpha in cat.hom(cat.dom(phi), cat.dom(psi)) {
                if cat.compose(alpha, psi) == phi && !cat.is_inclusion(alpha) {
                    inclusion_closed = false;
                    witnesses.push(CategoryWitness::NotInclusionClosed { phi, alpha, psi });
                }
            }
        }
    }
    let mut meets = vec![None; n * n];
    let mut is_semilattice = true;
    for a in cat.objects() {
        for b in cat.objects() {
            meets[a * n + b] = cat.meet(a, b);
            if meets[a * n + b].is_none() {
                is_semilattice = false;
            }
        }
    }
    SubobjectReport { strict_preorder, inclusions_mono, inclusion_closed, is_semilattice, meets, witnesses }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unambiguous,
    Normal,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryReport {
    pub is_with_subobjects: bool,
    pub all_inclusions_split: bool,
    pub splits_unique: bool,
    pub all_factorable: bool,
    pub factorisations_unique: bool,
    pub has_identity_cones: bool,
    pub verdict: Verdict,
    pub witnesses: Vec<CategoryWitness>,
}

impl CategoryReport {
    pub fn is_normal(&self) -> bool {
        self.verdict != Verdict::Neither
    }

    pub fn is_unambiguous(&self) -> bool {
        self.verdict == Verdict::Unambiguous
    }
}

/// Evaluates the normal-category axioms and their unique variants,
/// enumerating cones under the given bound.
pub fn classify_category(cat: &SoCategory, bound: usize) -> Result<CategoryReport> {
    let cones = enumerate_normal_cones(cat, bound)?;
    Ok(classify_with_cones(cat, &cones))
}

/// As [`classify_category`] with the normal cones already enumerated.
pub fn classify_with_cones(cat: &SoCategory, cones: &[Cone]) -> CategoryReport {
    let sub = verify_subobject_structure(cat);
    let mut witnesses = sub.witnesses.clone();

    let mut all_inclusions_split = true;
    let mut splits_unique = true;
    for i in cat.inclusions() {
        let r = cat.retractions(cat.dom(i), cat.cod(i));
        match r.len() {
            0 => {
                all_inclusions_split = false;
                witnesses.push(CategoryWitness::NoSplitting { inclusion: i });
            }
            1 => {}
            _ => {
                splits_unique = false;
                witnesses.push(CategoryWitness::SeveralSplittings { inclusion: i, first: r[0], second: r[1] });
            }
        }
    }
    let mut all_factorable = true;
    let mut factorisations_unique = true;
    for f in cat.morphisms() {
        match cat.factorisations(f).len() {
            0 => {
                all_factorable = false;
                witnesses.push(CategoryWitness::NoFactorisation { morphism: f });
            }
            1 => {}
            _ => {
                factorisations_unique = false;
                witnesses.push(CategoryWitness::SeveralFactorisations { morphism: f });
            }
        }
    }
    let mut has_identity_cones = true;
    for c in cat.objects() {
        if !cones.iter().any(|g| g.component(c) == cat.identity(c)) {
            has_identity_cones = false;
            witnesses.push(CategoryWitness::NoIdentityCone { object: c });
        }
    }
    let normal = sub.holds() && all_inclusions_split && all_factorable && has_identity_cones;
    let verdict = if !normal {
        Verdict::Neither
    } else if splits_unique && factorisations_unique {
        Verdict::Unambiguous
    } else {
        Verdict::Normal
    };
    CategoryReport {
        is_with_subobjects: sub.holds(),
        all_inclusions_split,
        splits_unique,
        all_factorable,
        factorisations_unique,
        has_identity_cones,
        verdict,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::left_ideal_category;
    use crate::cones::DEFAULT_CONE_BOUND;
    use crate::fixtures;

    #[test]
    fn subobject_structure_examples() {
        let b = left_ideal_category(&fixtures::b2()).unwrap();
        let r = verify_subobject_structure(&b.cat);
        assert!(r.holds() && r.is_semilattice);
        let zero = b.object_of(0).unwrap();
        let c1 = b.object_of(fixtures::b2_element(1, 1)).unwrap();
        let c2 = b.object_of(fixtures::b2_element(2, 2)).unwrap();
        assert_eq!(r.meet(3, c1, c2), Some(zero));

        let t = left_ideal_category(&fixtures::t2()).unwrap();
        let r = verify_subobject_structure(&t.cat);
        assert!(r.holds());
        assert!(!r.is_semilattice);
        let (a, b2) = (t.object_of(fixtures::T2_C1).unwrap(), t.object_of(fixtures::T2_C2).unwrap());
        assert_eq!(r.meet(3, a, b2), None);

        let s = left_ideal_category(&fixtures::sl2()).unwrap();
        let r = verify_subobject_structure(&s.cat);
        assert!(r.is_semilattice);
        assert_eq!(r.meet(2, 0, 1), Some(0));
    }

    #[test]
    fn classification_examples() {
        let b = left_ideal_category(&fixtures::b2()).unwrap();
        assert_eq!(classify_category(&b.cat, DEFAULT_CONE_BOUND).unwrap().verdict, Verdict::Unambiguous);
        let t = left_ideal_category(&fixtures::t2()).unwrap();
        let rep = classify_category(&t.cat, DEFAULT_CONE_BOUND).unwrap();
        assert_eq!(rep.verdict, Verdict::Normal);
        let cones = enumerate_normal_cones(&t.cat, DEFAULT_CONE_BOUND).unwrap();
        assert!(!rep.witnesses.is_empty());
        for w in &rep.witnesses {
            assert!(w.replays(&t.cat, &cones), "{w:?}");
        }
        let lz = left_ideal_category(&fixtures::lz2()).unwrap();
        assert_eq!(classify_category(&lz.cat, DEFAULT_CONE_BOUND).unwrap().verdict, Verdict::Unambiguous);
    }

    #[test]
    fn retractions_split_inclusions() {
        for fx in fixtures::corpus() {
            let Ok(l) = left_ideal_category(&fx.semigroup) else { continue };
            for i in l.cat.inclusions() {
                for q in l.cat.retractions(l.cat.dom(i), l.cat.cod(i)) {
                    assert_eq!(l.cat.compose(i, q), l.cat.identity(l.cat.dom(i)));
                }
            }
        }
    }
}
