//! Normal cones and the semigroup `Ĉ` of all normal cones of a category.
//!
//! The product is `γ·δ = γ ∗ (δ(c_γ))°`, where `γ ∗ φ` post-composes every
//! component of `γ` with the epimorphism `φ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::report::{classify_with_cones, CategoryReport};
use crate::category::{left_ideal_category, Functor, IdealCategory, Side, SoCategory};
use crate::classify::{is_locally_inverse, right_regular_collision};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

pub const DEFAULT_CONE_BOUND: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    apex: usize,
    components: Vec<usize>,
    m_set: Vec<usize>,
}

impl Cone {
    /// Checks typing, compatibility with inclusions and the iso component.
    pub fn new(cat: &SoCategory, apex: usize, components: Vec<usize>) -> Result<Self> {
        if components.len() != cat.object_count() {
            return Err(Error::AxiomViolation(String::from("cone needs one component per object")));
        }
        for (c, &g) in components.iter().enumerate() {
            if cat.dom(g) != c || cat.cod(g) != apex {
                return Err(Error::AxiomViolation(format!("component at {c} has the wrong type")));
            }
        }
        for a in cat.objects() {
            for b in cat.objects() {
                if let Some(i) = cat.inclusion(a, b) {
                    if cat.compose(i, components[b]) != components[a] {
                        return Err(Error::AxiomViolation(format!("components at {a} and {b} are incompatible")));
                    }
                }
            }
        }
        let m_set: Vec<usize> = cat.objects().filter(|&c| cat.is_iso(components[c])).collect();
        if m_set.is_empty() {
            return Err(Error::AxiomViolation(String::from("cone has no isomorphism component")));
        }
        Ok(Cone { apex, components, m_set })
    }

    pub fn apex(&self) -> usize {
        self.apex
    }

    pub fn component(&self, c: usize) -> usize {
        self.components[c]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    /// Objects whose component is an isomorphism.
    pub fn m_set(&self) -> &[usize] {
        &self.m_set
    }

    pub fn is_idempotent_in(&self, cat: &SoCategory) -> bool {
        self.components[self.apex] == cat.identity(self.apex)
    }
}

/// Every normal cone of `cat`, sorted by apex and then components.
pub fn enumerate_normal_cones(cat: &SoCategory, bound: usize) -> Result<Vec<Cone>> {
    let n = cat.object_count();
    let mut total: usize = 0;
    for d in cat.objects() {
        let mut count: usize = 1;
        for c in cat.objects() {
            count = count.saturating_mul(cat.hom(c, d).len());
        }
        total = total.saturating_add(count);
    }
    if total > bound {
        return Err(Error::SizeGuard { bound, actual: total });
    }
    let mut out = Vec::new();
    for d in cat.objects() {
        let mut comps = vec![0usize; n];
        extend_cone(cat, d, 0, &mut comps, &mut out);
    }
    out.sort();
    Ok(out)
}

fn extend_cone(cat: &SoCategory, d: usize, c: usize, comps: &mut Vec<usize>, out: &mut Vec<Cone>) {
    if c == cat.object_count() {
        if let Ok(cone) = Cone::new(cat, d, comps.clone()) {
            out.push(cone);
        }
        return;
    }
    for &g in cat.hom(c, d) {
        let compatible = (0..c).all(|a| {
            let down = cat.inclusion(a, c).map_or(true, |i| cat.compose(i, g) == comps[a]);
            let up = cat.inclusion(c, a).map_or(true, |i| cat.compose(i, comps[a]) == g);
            down && up
        });
        if compatible {
            comps[c] = g;
            extend_cone(cat, d, c + 1, comps, out);
        }
    }
}

/// `γ ∗ φ` for an epimorphism `φ` out of the apex.
pub fn cone_apply(cat: &SoCategory, gamma: &Cone, phi: usize) -> Result<Cone> {
    if cat.dom(phi) != gamma.apex {
        return Err(Error::DomainMismatch { expected: gamma.apex, found: cat.dom(phi) });
    }
    if !cat.is_epi(phi) {
        return Err(Error::NotEpimorphism(phi));
    }
    let comps = gamma.components.iter().map(|&g| cat.compose(g, phi)).collect();
    Cone::new(cat, cat.cod(phi), comps)
}

/// `γ · δ`, computed from every normal factorisation of `δ(c_γ)`; all of
/// them must give the same cone.
pub fn cone_compose(cat: &SoCategory, gamma: &Cone, delta: &Cone) -> Result<Cone> {
    let f = delta.component(gamma.apex);
    let facts = cat.factorisations(f);
    let first = facts.first().ok_or(Error::NoFactorisation(f))?;
    let result = cone_apply(cat, gamma, first.epi_component)?;
    for other in &facts[1..] {
        if other.epi_component != first.epi_component && cone_apply(cat, gamma, other.epi_component)? != result {
            return Err(Error::AmbiguousProduct(gamma.apex, delta.apex));
        }
    }
    Ok(result)
}

/// `Ĉ` with its multiplication table.
#[derive(Debug, Clone)]
pub struct ConeSemigroup {
    pub base: SoCategory,
    pub cones: Vec<Cone>,
    pub semigroup: FiniteSemigroup,
    pub idempotents: Vec<usize>,
    pub report: CategoryReport,
    index: BTreeMap<Vec<usize>, usize>,
}

impl ConeSemigroup {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.index.get(&cone.components).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.semigroup.mul(a, b)
    }

    /// Index of `γ ∗ φ`.
    pub fn apply(&self, gamma: usize, phi: usize) -> Result<usize> {
        let cone = cone_apply(&self.base, &self.cones[gamma], phi)?;
        self.index_of(&cone).ok_or(Error::NotClosed(gamma, phi))
    }

    /// Least-index idempotent cone with apex `c`.
    pub fn idempotent_at(&self, c: usize) -> Option<usize> {
        self.idempotents.iter().copied().find(|&i| self.cones[i].apex == c)
    }
}

/// Builds `Ĉ` and checks that it is a regular semigroup whose idempotents are
/// the cones with an identity component at the apex. When the category is
/// unambiguous, local inversity is checked as well.
pub fn cone_semigroup(cat: &SoCategory, bound: usize) -> Result<ConeSemigroup> {
    let cones = enumerate_normal_cones(cat, bound)?;
    let report = classify_with_cones(cat, &cones);
    if !report.is_normal() {
        return Err(Error::Precondition(String::from("category is not normal")));
    }
    let index: BTreeMap<Vec<usize>, usize> =
        cones.iter().enumerate().map(|(i, c)| (c.components.clone(), i)).collect();
    let k = cones.len();
    let mut table = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            let prod = cone_compose(cat, &cones[a], &cones[b])?;
            table[a * k + b] = *index.get(&prod.components).ok_or(Error::NotClosed(a, b))?;
        }
    }
    let labels = (0..k).map(|i| format!("γ{i}")).collect();
    let semigroup = FiniteSemigroup::from_fn(k, |a, b| table[a * k + b])?.with_labels(labels)?;
    let idempotents = semigroup.idempotents();
    let by_component: Vec<usize> = (0..k).filter(|&i| cones[i].is_idempotent_in(cat)).collect();
    if idempotents != by_component {
        return Err(Error::InternalDisagreement("idempotent cones"));
    }
    let local = is_locally_inverse(&semigroup)?;
    if !local.cross_check.agree() {
        return Err(Error::InternalDisagreement("locally inverse characterisations"));
    }
    let regular = crate::green::idempotents_and_inverses(&semigroup);
    if let Some(a) = regular.witness {
        return Err(Error::NotRegular(a));
    }
    if report.is_unambiguous() && !local.holds {
        return Err(Error::InternalDisagreement("cones of an unambiguous category"));
    }
    Ok(ConeSemigroup { base: cat.clone(), cones, semigroup, idempotents, report, index })
}

/// The principal cone `ρ^a` in `𝕃(S)`, or `λ^a` in `ℝ(S)`.
///
/// The component at the object of `e` is `ρ(e, ea, f)` with `f L a`
/// (dually `λ(e, ae, f)` with `f R a`); every choice of representatives is
/// evaluated and must agree.
pub fn principal_cone(ideal: &IdealCategory, a: usize) -> Result<Cone> {
    let s = &ideal.semigroup;
    let cat = &ideal.cat;
    let apex = ideal.object_generated_by(a)?;
    let mut comps = Vec::with_capacity(cat.object_count());
    for c in cat.objects() {
        let mut value = None;
        for e in s.idempotents().into_iter().filter(|&e| ideal.object_of(e) == Ok(c)) {
            for f in s.idempotents().into_iter().filter(|&f| ideal.object_of(f) == Ok(apex)) {
                let m = match ideal.side() {
                    Side::Right => ideal.canonical_morphism(e, s.mul(a, e), f)?,
                    _ => ideal.canonical_morphism(e, s.mul(e, a), f)?,
                };
                match value {
                    None => value = Some(m),
                    Some(v) if v != m => {
                        return Err(Error::InternalDisagreement("principal cone depends on representatives"))
                    }
                    _ => {}
                }
            }
        }
        comps.push(value.expect("every object has an idempotent"));
    }
    Cone::new(cat, apex, comps)
}

/// Violations of the order characterisations of idempotent cones; empty when
/// everything holds.
pub fn cone_order_facts(cs: &ConeSemigroup) -> Vec<String> {
    let cat = &cs.base;
    let s = &cs.semigroup;
    let mut violations = Vec::new();
    for &nu in &cs.idempotents {
        for &th in &cs.idempotents {
            let (n, t) = (&cs.cones[nu], &cs.cones[th]);
            let leq_l = s.mul(nu, th) == nu;
            if leq_l != cat.le(n.apex, t.apex) {
                violations.push(format!("≤ℓ criterion fails for ({nu}, {th})"));
            }
            let leq_r = s.mul(th, nu) == nu;
            let comp = n.component(t.apex);
            let by_epi = cat.is_epi(comp) && cs.apply(th, comp).ok() == Some(nu);
            if leq_r != by_epi {
                violations.push(format!("≤r criterion fails for ({nu}, {th})"));
            }
            let leq = leq_l && leq_r;
            let by_retraction = cat.is_retraction(comp) && cs.apply(th, comp).ok() == Some(nu);
            if leq != by_retraction {
                violations.push(format!("≤ criterion fails for ({nu}, {th})"));
            }
        }
    }
    violations
}

#[derive(Debug, Clone)]
pub struct RepresentationReport {
    /// `F : C → 𝕃(Ĉ)`.
    pub functor: Functor,
    pub target: IdealCategory,
    pub is_isomorphism: bool,
    pub failures: Vec<String>,
}

/// Builds `F : C → 𝕃(Ĉ)` with `F(c) = Ĉμ` and `F(f) = ρ(μ, μ∗f°, ν)` and checks
/// that it is an inclusion-preserving isomorphism.
pub fn verify_representation(cat: &SoCategory, bound: usize) -> Result<RepresentationReport> {
    let cs = cone_semigroup(cat, bound)?;
    let target = left_ideal_category(&cs.semigroup)?;
    let mut failures = Vec::new();
    let mut objects = Vec::with_capacity(cat.object_count());
    for c in cat.objects() {
        let mu = cs.idempotent_at(c).ok_or(Error::Precondition(format!("no idempotent cone at {c}")))?;
        objects.push(target.object_of(mu)?);
        for &other in cs.idempotents.iter().filter(|&&i| cs.cones[i].apex == c) {
            if target.object_of(other)? != objects[c] {
                failures.push(format!("idempotent cones at {c} give different objects"));
            }
        }
    }
    let mut morphisms = Vec::with_capacity(cat.morphism_count());
    for f in cat.morphisms() {
        let mu = cs.idempotent_at(cat.dom(f)).unwrap();
        let nu = cs.idempotent_at(cat.cod(f)).unwrap();
        let u = cs.apply(mu, cat.epi_component(f)?)?;
        morphisms.push(target.canonical_morphism(mu, u, nu)?);
    }
    let functor = Functor { objects, morphisms };
    if let Err(e) = crate::category::verify_functor(cat, &target.cat, &functor) {
        failures.push(e);
    }
    let is_isomorphism =
        failures.is_empty() && crate::category::iso::is_inclusion_isomorphism(cat, &target.cat, &functor);
    if !is_isomorphism && failures.is_empty() {
        failures.push(String::from("functor is not an inclusion-preserving bijection"));
    }
    Ok(RepresentationReport { functor, target, is_isomorphism, failures })
}

/// Outcome of comparing `a ↦ ρ^a` with the right regular representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalConeMap {
    /// Index in `Ĉ` of `ρ^a` for each `a`.
    pub map: Vec<usize>,
    pub is_homomorphism: bool,
    pub is_injective: bool,
    /// Whether `x ↦ xa` is injective in `a`.
    pub right_regular_injective: bool,
    /// `ρ_a = ρ_b ⟺ ρ^a = ρ^b` for all `a, b`.
    pub triangle_commutes: bool,
}

/// `a ↦ ρ^a` into `Ĉ(𝕃(S))`.
pub fn principal_cone_map(ideal: &IdealCategory, cs: &ConeSemigroup) -> Result<PrincipalConeMap> {
    let s = &ideal.semigroup;
    let mut map = Vec::with_capacity(s.order());
    for a in s.elements() {
        let cone = principal_cone(ideal, a)?;
        map.push(cs.index_of(&cone).ok_or(Error::InternalDisagreement("principal cone missing from Ĉ"))?);
    }
    let is_homomorphism = s.is_homomorphism(&cs.semigroup, &map);
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let is_injective = sorted.len() == map.len();
    let right_regular_injective = right_regular_collision(s).is_none();
    let rep = s.right_regular_representation();
    let triangle_commutes =
        s.elements().all(|a| s.elements().all(|b| (rep[a] == rep[b]) == (map[a] == map[b])));
    Ok(PrincipalConeMap { map, is_homomorphism, is_injective, right_regular_injective, triangle_commutes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::right_ideal_category;
    use crate::fixtures;
    use crate::iso::find_isomorphism;

    fn ideal(s: &FiniteSemigroup) -> IdealCategory {
        left_ideal_category(s).unwrap()
    }

    #[test]
    fn cone_counts() {
        let count = |s: FiniteSemigroup| enumerate_normal_cones(&ideal(&s).cat, DEFAULT_CONE_BOUND).unwrap().len();
        assert_eq!(count(fixtures::sl2()), 2);
        assert_eq!(count(fixtures::lz2()), 1);
        assert_eq!(count(fixtures::b2()), 7);
        assert_eq!(count(fixtures::t2()), 4);
    }

    #[test]
    fn size_guard() {
        let l = ideal(&fixtures::b2());
        assert!(matches!(enumerate_normal_cones(&l.cat, 3), Err(Error::SizeGuard { bound: 3, .. })));
    }

    #[test]
    fn principal_cones_of_sl2() {
        let l = ideal(&fixtures::sl2());
        let rho0 = principal_cone(&l, 0).unwrap();
        assert_eq!(rho0.apex(), l.object_of(0).unwrap());
        assert_eq!(
            rho0.components(),
            &[l.canonical_morphism(0, 0, 0).unwrap(), l.canonical_morphism(1, 0, 0).unwrap()]
        );
        let rho1 = principal_cone(&l, 1).unwrap();
        let q = l.canonical_morphism(1, 0, 0).unwrap();
        assert_eq!(cone_apply(&l.cat, &rho1, q).unwrap(), rho0);
        assert_eq!(cone_apply(&l.cat, &rho1, l.cat.identity(1)).unwrap(), rho1);
        let i = l.cat.inclusion(0, 1).unwrap();
        assert_eq!(cone_apply(&l.cat, &rho0, i), Err(Error::NotEpimorphism(i)));
        assert!(matches!(cone_apply(&l.cat, &rho1, i), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn principal_cone_of_idempotent_has_identity_at_apex() {
        for fx in fixtures::corpus() {
            let Ok(l) = left_ideal_category(&fx.semigroup) else { continue };
            for e in fx.semigroup.idempotents() {
                let cone = principal_cone(&l, e).unwrap();
                let c = l.object_of(e).unwrap();
                assert_eq!(cone.component(c), l.cat.identity(c), "{}", fx.name);
            }
        }
    }

    #[test]
    fn brandt_principal_cone() {
        let b2 = fixtures::b2();
        let l = ideal(&b2);
        let cone = principal_cone(&l, fixtures::b2_element(1, 2)).unwrap();
        assert_eq!(cone.apex(), l.object_of(fixtures::b2_element(2, 2)).unwrap());
        assert_eq!(cone.m_set(), &[l.object_of(fixtures::b2_element(1, 1)).unwrap()]);
    }

    #[test]
    fn cone_semigroup_examples() {
        let sl2 = fixtures::sl2();
        let cs = cone_semigroup(&ideal(&sl2).cat, DEFAULT_CONE_BOUND).unwrap();
        assert!(find_isomorphism(&cs.semigroup, &sl2).unwrap().is_some());

        let b2 = fixtures::b2();
        let cs = cone_semigroup(&ideal(&b2).cat, DEFAULT_CONE_BOUND).unwrap();
        assert_eq!(cs.len(), 7);
        assert!(is_locally_inverse(&cs.semigroup).unwrap().holds);
        assert!(find_isomorphism(&cs.semigroup, &b2).unwrap().is_none());

        let cs = cone_semigroup(&ideal(&fixtures::lz2()).cat, DEFAULT_CONE_BOUND).unwrap();
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn order_facts_hold() {
        for fx in fixtures::corpus() {
            let Ok(l) = left_ideal_category(&fx.semigroup) else { continue };
            let cs = cone_semigroup(&l.cat, DEFAULT_CONE_BOUND).unwrap();
            assert_eq!(cone_order_facts(&cs), Vec::<String>::new(), "{}", fx.name);
        }
    }

    #[test]
    fn representation_examples() {
        for s in [fixtures::b2(), fixtures::sl2(), fixtures::lz2()] {
            let rep = verify_representation(&ideal(&s).cat, DEFAULT_CONE_BOUND).unwrap();
            assert!(rep.is_isomorphism, "{:?}", rep.failures);
        }
    }

    #[test]
    fn principal_map_matches_right_regular_representation() {
        for fx in fixtures::corpus() {
            let Ok(l) = left_ideal_category(&fx.semigroup) else { continue };
            if !is_locally_inverse(&fx.semigroup).unwrap().holds {
                continue;
            }
            let cs = cone_semigroup(&l.cat, DEFAULT_CONE_BOUND).unwrap();
            let p = principal_cone_map(&l, &cs).unwrap();
            assert!(p.is_homomorphism, "{}", fx.name);
            assert!(p.triangle_commutes, "{}", fx.name);
            assert_eq!(p.is_injective, p.right_regular_injective, "{}", fx.name);
        }
        let l = ideal(&fixtures::lz2());
        let cs = cone_semigroup(&l.cat, DEFAULT_CONE_BOUND).unwrap();
        let p = principal_cone_map(&l, &cs).unwrap();
        assert!(!p.right_regular_injective && !p.is_injective);
    }

    #[test]
    fn right_principal_cones_are_normal() {
        for fx in fixtures::corpus() {
            let Ok(r) = right_ideal_category(&fx.semigroup) else { continue };
            for a in fx.semigroup.elements() {
                principal_cone(&r, a).unwrap();
            }
        }
    }
}
