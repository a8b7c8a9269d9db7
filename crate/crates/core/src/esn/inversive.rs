//! Inversive factorisations, inversive cones and inversive categories.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::{
    classify_with_cones, left_ideal_category, verify_functor, verify_subobject_structure, Functor, IdealCategory,
    SoCategory,
};
use crate::classify::is_inverse;
use crate::cones::{cone_apply, cone_semigroup, enumerate_normal_cones, principal_cone, Cone, ConeSemigroup, DEFAULT_CONE_BOUND};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// The retraction `q(c, d)` for `d ⊆ c`, when it is unique.
pub fn retraction(cat: &SoCategory, c: usize, d: usize) -> Option<usize> {
    match cat.retractions(d, c).as_slice() {
        [q] => Some(*q),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    /// Morphisms of `⟨C⟩`, sorted.
    pub morphisms: Vec<usize>,
    /// `(f, d)` for every zigzag reaching `f` whose odd objects meet in `d`.
    pub zigzags: Vec<(usize, usize)>,
    /// Zigzags with `f != q(c₁, d) ι(d, c_n)`.
    pub failures: Vec<(usize, usize)>,
    pub only_identity_isos: bool,
}

impl CoreReport {
    pub fn all_factor(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Closes inclusions and retractions under composition. Each zigzag
/// `ι q ι q ⋯` is tracked with the meet of its odd objects and compared with
/// its candidate inversive factorisation.
pub fn core_and_inversive_factorisation(cat: &SoCategory) -> Result<CoreReport> {
    let meet = |a: usize, b: usize| cat.meet(a, b).ok_or(Error::Precondition(String::from("objects lack a meet")));
    let mut states: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut frontier: Vec<(usize, usize)> = cat.objects().map(|c| (cat.identity(c), c)).collect();
    let mut steps: Vec<(usize, usize)> = Vec::new();
    for i in cat.inclusions() {
        let b = cat.cod(i);
        for c in cat.objects().filter(|&c| cat.le(c, b)) {
            let q = retraction(cat, b, c).ok_or(Error::Precondition(String::from("inclusion does not split uniquely")))?;
            steps.push((cat.compose(i, q), c));
        }
    }
    while let Some((m, d)) = frontier.pop() {
        if !states.insert((m, d)) {
            continue;
        }
        let end = cat.cod(m);
        for &(step, c) in &steps {
            if cat.dom(step) == end {
                frontier.push((cat.compose(m, step), meet(d, c)?));
            }
        }
    }
    let mut failures = Vec::new();
    for &(m, d) in &states {
        let (c1, cn) = (cat.dom(m), cat.cod(m));
        let candidate = match (retraction(cat, c1, d), cat.inclusion(d, cn)) {
            (Some(q), Some(i)) => Some(cat.compose(q, i)),
            _ => None,
        };
        if candidate != Some(m) {
            failures.push((m, d));
        }
    }
    let morphisms: Vec<usize> = states.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let only_identity_isos = morphisms.iter().all(|&m| !cat.is_iso(m) || cat.is_identity(m));
    Ok(CoreReport { morphisms, zigzags: states.into_iter().collect(), failures, only_identity_isos })
}

/// Whether `γ` has a singleton M-set `{m}` and `coim γ(c) = c ∧ m` for all `c`.
pub fn is_inversive_cone(cat: &SoCategory, gamma: &Cone) -> bool {
    let [m] = gamma.m_set() else { return false };
    cat.objects().all(|c| match (cat.meet(c, *m), cat.coimage(gamma.component(c))) {
        (Some(x), Ok(y)) => x == y,
        _ => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversiveReport {
    pub ic1: bool,
    pub ic2: bool,
    pub ic3: bool,
    pub ic4: bool,
    pub ic5: bool,
    pub core: Option<CoreReport>,
    /// `meets[a * n + b]`.
    pub meets: Vec<Option<usize>>,
    /// Index (in the normal cone enumeration) of `μ_c` per object, when unique.
    pub unique_inversive_idempotent: Vec<Option<usize>>,
    pub witnesses: Vec<String>,
}

impl InversiveReport {
    pub fn is_inversive(&self) -> bool {
        self.ic1 && self.ic2 && self.ic3 && self.ic4 && self.ic5
    }
}

pub fn classify_inversive(cat: &SoCategory) -> Result<InversiveReport> {
    classify_inversive_bounded(cat, DEFAULT_CONE_BOUND)
}

pub fn classify_inversive_bounded(cat: &SoCategory, bound: usize) -> Result<InversiveReport> {
    let cones = enumerate_normal_cones(cat, bound)?;
    let sub = verify_subobject_structure(cat);
    let rep = classify_with_cones(cat, &cones);
    let mut witnesses = Vec::new();
    let ic1 = sub.holds() && sub.is_semilattice;
    if !ic1 {
        witnesses.push(String::from("objects do not form a semilattice under inclusion"));
    }
    let ic2 = rep.all_inclusions_split && rep.splits_unique;
    if !ic2 {
        witnesses.push(String::from("some inclusion does not split uniquely"));
    }
    let ic3 = rep.all_factorable && rep.factorisations_unique;
    if !ic3 {
        witnesses.push(String::from("some morphism lacks a unique normal factorisation"));
    }
    let core = if ic1 && ic2 { Some(core_and_inversive_factorisation(cat)?) } else { None };
    let ic4 = core.as_ref().is_some_and(|c| c.all_factor() && c.only_identity_isos);
    if let Some(c) = &core {
        for &(m, d) in &c.failures {
            witnesses.push(format!("core morphism {} has no inversive factorisation through {d}", cat.morphism_label(m)));
        }
    }
    let mut unique = Vec::with_capacity(cat.object_count());
    let mut ic5 = ic1;
    for c in cat.objects() {
        let found: Vec<usize> = (0..cones.len())
            .filter(|&i| cones[i].apex() == c && cones[i].is_idempotent_in(cat) && is_inversive_cone(cat, &cones[i]))
            .collect();
        if found.len() == 1 {
            unique.push(Some(found[0]));
        } else {
            ic5 = false;
            witnesses.push(format!("object {} has {} idempotent inversive cones", cat.object_label(c), found.len()));
            unique.push(None);
        }
    }
    Ok(InversiveReport { ic1, ic2, ic3, ic4, ic5, core, meets: sub.meets, unique_inversive_idempotent: unique, witnesses })
}

/// `C̃`: the inversive cones of an inversive category as a subsemigroup of `Ĉ`.
#[derive(Debug, Clone)]
pub struct InversiveSemigroup {
    pub cones: ConeSemigroup,
    /// Indices into `Ĉ`, sorted; element `i` of `semigroup` is `members[i]`.
    pub members: Vec<usize>,
    pub semigroup: FiniteSemigroup,
    /// `μ_c` per object, as an index into `Ĉ`.
    pub mu: Vec<usize>,
}

impl InversiveSemigroup {
    pub fn position(&self, cone_index: usize) -> Option<usize> {
        self.members.binary_search(&cone_index).ok()
    }
}

pub fn inversive_cone_semigroup(cat: &SoCategory) -> Result<InversiveSemigroup> {
    inversive_cone_semigroup_bounded(cat, DEFAULT_CONE_BOUND)
}

pub fn inversive_cone_semigroup_bounded(cat: &SoCategory, bound: usize) -> Result<InversiveSemigroup> {
    let rep = classify_inversive_bounded(cat, bound)?;
    if !rep.is_inversive() {
        let w = rep.witnesses.first().cloned().unwrap_or_default();
        return Err(Error::Precondition(format!("category is not inversive: {w}")));
    }
    let cs = cone_semigroup(cat, bound)?;
    let members: Vec<usize> = (0..cs.len()).filter(|&i| is_inversive_cone(cat, cs.cone(i))).collect();
    for &a in &members {
        for &b in &members {
            if members.binary_search(&cs.mul(a, b)).is_err() {
                return Err(Error::NotClosed(a, b));
            }
        }
    }
    let (semigroup, _) = cs.semigroup.restrict(&members)?;
    if !is_inverse(&semigroup)?.holds {
        return Err(Error::NotInverse);
    }
    let mu: Vec<usize> = rep.unique_inversive_idempotent.iter().map(|m| m.expect("IC5 holds")).collect();
    for &g in &members {
        let cone = cs.cone(g);
        let m = cone.m_set()[0];
        let back = cone_apply(cat, cs.cone(mu[m]), cone.component(m))?;
        if &back != cone {
            return Err(Error::InternalDisagreement("inversive cone is not μ ∗ γ(m)"));
        }
    }
    Ok(InversiveSemigroup { cones: cs, members, semigroup, mu })
}

/// `C̃(𝕃(S))` for an inverse semigroup `S`.
pub fn inversive_cone_semigroup_of(s: &FiniteSemigroup) -> Result<(IdealCategory, InversiveSemigroup)> {
    if !is_inverse(s)?.holds {
        return Err(Error::NotInverse);
    }
    let l = left_ideal_category(s)?;
    let inv = inversive_cone_semigroup(&l.cat)?;
    Ok((l, inv))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoIsoReport {
    /// `a ↦ ρ^a` as positions in `C̃`.
    pub map: Vec<usize>,
    pub is_homomorphism: bool,
    pub is_bijective: bool,
    /// For `p != q` some idempotent `e` has `pe != qe`.
    pub right_reductive: bool,
    pub inversive_cones_are_principal: bool,
}

impl RhoIsoReport {
    pub fn holds(&self) -> bool {
        self.is_homomorphism && self.is_bijective && self.right_reductive && self.inversive_cones_are_principal
    }
}

/// Checks that `a ↦ ρ^a` is an isomorphism `S → C̃(𝕃(S))`.
pub fn rho_iso_check(s: &FiniteSemigroup) -> Result<RhoIsoReport> {
    let (l, inv) = inversive_cone_semigroup_of(s)?;
    let mut map = Vec::with_capacity(s.order());
    for a in s.elements() {
        let idx = inv.cones.index_of(&principal_cone(&l, a)?).ok_or(Error::NotClosed(a, a))?;
        map.push(inv.position(idx).ok_or(Error::InternalDisagreement("principal cone is not inversive"))?);
    }
    let is_homomorphism = s.is_homomorphism(&inv.semigroup, &map);
    let image: BTreeSet<usize> = map.iter().copied().collect();
    let is_bijective = image.len() == s.order() && image.len() == inv.members.len();
    let es = s.idempotents();
    let right_reductive = s
        .elements()
        .all(|p| s.elements().all(|q| p == q || es.iter().any(|&e| s.mul(p, e) != s.mul(q, e))));
    let inversive_cones_are_principal = (0..inv.members.len()).all(|i| image.contains(&i));
    Ok(RhoIsoReport { map, is_homomorphism, is_bijective, right_reductive, inversive_cones_are_principal })
}

/// Checks that `μ ∗ q` is an idempotent inversive cone with apex `d` for each
/// idempotent inversive `μ` and retraction `q : c_μ → d`. Returns the number
/// of pairs checked.
pub fn retraction_closure_check(cat: &SoCategory) -> Result<usize> {
    let cones = enumerate_normal_cones(cat, DEFAULT_CONE_BOUND)?;
    let mut checked = 0;
    for mu in cones.iter().filter(|c| c.is_idempotent_in(cat) && is_inversive_cone(cat, c)) {
        let c = mu.apex();
        for d in cat.objects().filter(|&d| cat.le(d, c)) {
            for q in cat.retractions(d, c) {
                let nu = cone_apply(cat, mu, q)?;
                if nu.apex() != d || !nu.is_idempotent_in(cat) || !is_inversive_cone(cat, &nu) {
                    return Err(Error::AxiomViolation(format!("μ ∗ q fails at apex {}", cat.object_label(d))));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `Φ : 𝕃(S₁) → 𝕃(S₂)`, `S₁e ↦ S₂(eφ)`, `ρ(e,u,f) ↦ ρ(eφ,uφ,fφ)`.
pub fn induced_functor(l1: &IdealCategory, l2: &IdealCategory, phi: &[usize]) -> Result<Functor> {
    let objects = l1
        .cat
        .objects()
        .map(|c| l2.object_of(phi[l1.idempotent(c)]))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = l1
        .cat
        .morphisms()
        .map(|m| {
            let (e, f) = (l1.idempotent(l1.cat.dom(m)), l1.idempotent(l1.cat.cod(m)));
            l2.canonical_morphism(phi[e], phi[l1.element(m)], phi[f])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor { objects, morphisms })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub is_functor: bool,
    pub preserves_meets: bool,
    /// `Φ(ρ^a) = ρ^{aφ}` for every `a`.
    pub cone_map_matches: bool,
    pub cone_map_is_homomorphism: bool,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.is_functor && self.preserves_meets && self.cone_map_matches && self.cone_map_is_homomorphism
    }
}

/// For a homomorphism `φ : S₁ → S₂` of inverse semigroups, checks that the
/// induced functor is inversive and that the induced cone map
/// `μ_m ∗ u ↦ μ_{Φ(m)} ∗ Φ(u)` sends `ρ^a` to `ρ^{aφ}`.
pub fn homomorphism_functoriality(s1: &FiniteSemigroup, s2: &FiniteSemigroup, phi: &[usize]) -> Result<FunctorialityReport> {
    if !s1.is_homomorphism(s2, phi) {
        return Err(Error::Precondition(String::from("map is not a homomorphism")));
    }
    let (l1, inv1) = inversive_cone_semigroup_of(s1)?;
    let (l2, inv2) = inversive_cone_semigroup_of(s2)?;
    let f = induced_functor(&l1, &l2, phi)?;
    let is_functor = verify_functor(&l1.cat, &l2.cat, &f).is_ok();
    let preserves_meets = l1.cat.objects().all(|a| {
        l1.cat.objects().all(|b| match (l1.cat.meet(a, b), l2.cat.meet(f.objects[a], f.objects[b])) {
            (Some(m), Some(n)) => f.objects[m] == n,
            _ => false,
        })
    });
    let mut cone_map: BTreeMap<usize, usize> = BTreeMap::new();
    for (pos, &g) in inv1.members.iter().enumerate() {
        let cone = inv1.cones.cone(g);
        let m = cone.m_set()[0];
        let image = cone_apply(&l2.cat, inv2.cones.cone(inv2.mu[f.objects[m]]), f.morphisms[cone.component(m)])?;
        let idx = inv2.cones.index_of(&image).and_then(|i| inv2.position(i)).ok_or(Error::NotClosed(g, m))?;
        cone_map.insert(pos, idx);
    }
    let mut cone_map_matches = true;
    for a in s1.elements() {
        let pa = inv1.position(inv1.cones.index_of(&principal_cone(&l1, a)?).unwrap()).unwrap();
        let pb = inv2.position(inv2.cones.index_of(&principal_cone(&l2, phi[a])?).unwrap()).unwrap();
        cone_map_matches &= cone_map[&pa] == pb;
    }
    let as_vec: Vec<usize> = cone_map.values().copied().collect();
    let cone_map_is_homomorphism = inv1.semigroup.is_homomorphism(&inv2.semigroup, &as_vec);
    Ok(FunctorialityReport { is_functor, preserves_meets, cone_map_matches, cone_map_is_homomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::{enumerate_homomorphisms, find_isomorphism};
    use alloc::vec;

    #[test]
    fn semilattice_core() {
        let l = left_ideal_category(&fixtures::sl2()).unwrap();
        let core = core_and_inversive_factorisation(&l.cat).unwrap();
        assert_eq!(core.morphisms.len(), 5);
        assert!(core.all_factor() && core.only_identity_isos);
        let m = l.canonical_morphism(1, 0, 1).unwrap();
        let (c0, c1) = (l.object_of(0).unwrap(), l.object_of(1).unwrap());
        let q = retraction(&l.cat, c1, c0).unwrap();
        assert_eq!(m, l.cat.compose(q, l.cat.inclusion(c0, c1).unwrap()));
    }

    #[test]
    fn brandt_core_excludes_isomorphisms() {
        let l = left_ideal_category(&fixtures::b2()).unwrap();
        let core = core_and_inversive_factorisation(&l.cat).unwrap();
        assert!(core.all_factor() && core.only_identity_isos);
        assert!(core.morphisms.len() < l.cat.morphism_count());
    }

    #[test]
    fn inversive_verdicts() {
        let b = left_ideal_category(&fixtures::b2()).unwrap();
        let rep = classify_inversive(&b.cat).unwrap();
        assert!(rep.is_inversive(), "{:?}", rep.witnesses);
        let cones = enumerate_normal_cones(&b.cat, DEFAULT_CONE_BOUND).unwrap();
        for e in fixtures::b2().idempotents() {
            let c = b.object_of(e).unwrap();
            assert_eq!(cones[rep.unique_inversive_idempotent[c].unwrap()], principal_cone(&b, e).unwrap());
        }
        let t = left_ideal_category(&fixtures::t2()).unwrap();
        let rep = classify_inversive(&t.cat).unwrap();
        assert!(!rep.ic1 && !rep.is_inversive());
        let s = left_ideal_category(&fixtures::sl2()).unwrap();
        assert!(classify_inversive(&s.cat).unwrap().is_inversive());
    }

    #[test]
    fn brandt_inversive_cones() {
        let (_, inv) = inversive_cone_semigroup_of(&fixtures::b2()).unwrap();
        assert_eq!(inv.cones.len(), 7);
        assert_eq!(inv.members.len(), 5);
        assert!(find_isomorphism(&inv.semigroup, &fixtures::b2()).unwrap().is_some());
    }

    #[test]
    fn semilattice_inversive_cones_are_all_cones() {
        let (_, inv) = inversive_cone_semigroup_of(&fixtures::sl2()).unwrap();
        assert_eq!(inv.members, vec![0, 1]);
        assert!(find_isomorphism(&inv.semigroup, &fixtures::sl2()).unwrap().is_some());
    }

    #[test]
    fn non_inverse_rejected() {
        assert_eq!(inversive_cone_semigroup_of(&fixtures::lz2()).unwrap_err(), Error::NotInverse);
        assert_eq!(rho_iso_check(&fixtures::t2()).unwrap_err(), Error::NotInverse);
    }

    #[test]
    fn rho_is_an_isomorphism() {
        // a diagonal sandwich matrix gives a Brandt semigroup, so M9 is inverse
        for s in [fixtures::b2(), fixtures::sl2(), fixtures::z2(), fixtures::m9()] {
            let rep = rho_iso_check(&s).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
        assert_eq!(rho_iso_check(&fixtures::b2()).unwrap().map.len(), 5);
    }

    #[test]
    fn retractions_preserve_idempotent_inversive_cones() {
        for s in [fixtures::b2(), fixtures::sl2(), fixtures::z2()] {
            let l = left_ideal_category(&s).unwrap();
            assert!(retraction_closure_check(&l.cat).unwrap() >= l.cat.object_count());
        }
    }

    #[test]
    fn homomorphisms_induce_inversive_functors() {
        let inverse = [fixtures::sl2(), fixtures::z2(), fixtures::b2()];
        let mut checked = 0;
        for s1 in &inverse {
            for s2 in &inverse {
                for phi in enumerate_homomorphisms(s1, s2) {
                    let rep = homomorphism_functoriality(s1, s2, &phi).unwrap();
                    assert!(rep.holds(), "{rep:?} for {phi:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }
}
