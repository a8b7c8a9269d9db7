//! Cross-connections: the canonical `ΩS = (𝕃(S), ℝ(S); Γ_S, Δ_S)`, local
//! isomorphisms, transposes, the natural isomorphism `χ` and the
//! cross-connection semigroup.

pub mod dual;
pub mod semigroup;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{left_ideal_category, right_ideal_category, verify_functor, Functor, IdealCategory, SoCategory};
use crate::classify::is_locally_inverse;
use crate::cones::{cone_semigroup, principal_cone, ConeSemigroup, DEFAULT_CONE_BOUND};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

pub use dual::{eta, h_functor, normal_dual, normal_dual_of, HFunctor, NormalDual, Transformation};
pub use semigroup::{cxn_semigroup, rebuild_check, rebuild_check_bounded, CxnSemigroup, RebuildReport};

/// Largest hom-set searched for a transpose.
pub const TRANSPOSE_GUARD: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIsoReport {
    pub functorial: bool,
    pub inclusion_preserving: bool,
    pub fully_faithful: bool,
    pub ideals_isomorphic: bool,
    pub witnesses: Vec<String>,
}

impl LocalIsoReport {
    pub fn holds(&self) -> bool {
        self.functorial && self.inclusion_preserving && self.fully_faithful && self.ideals_isomorphic
    }
}

/// Checks that `f : src → tgt` is inclusion preserving, fully faithful and an
/// isomorphism of each ideal `(c)` onto `(F(c))`.
pub fn verify_local_isomorphism(src: &SoCategory, tgt: &SoCategory, f: &Functor) -> LocalIsoReport {
    let mut witnesses = Vec::new();
    let functorial = match verify_functor(src, tgt, f) {
        Ok(()) => true,
        Err(e) => {
            witnesses.push(e);
            false
        }
    };
    if f.objects.len() != src.object_count() || f.morphisms.len() != src.morphism_count() {
        return LocalIsoReport {
            functorial,
            inclusion_preserving: false,
            fully_faithful: false,
            ideals_isomorphic: false,
            witnesses,
        };
    }
    let mut inclusion_preserving = true;
    for m in src.inclusions() {
        if !tgt.is_inclusion(f.morphisms[m]) {
            inclusion_preserving = false;
            witnesses.push(format!("inclusion {m} is sent to a non-inclusion"));
        }
    }
    let mut fully_faithful = true;
    for a in src.objects() {
        for b in src.objects() {
            let mut image: Vec<usize> = src.hom(a, b).iter().map(|&m| f.morphisms[m]).collect();
            image.sort_unstable();
            image.dedup();
            let target = tgt.hom(f.objects[a], f.objects[b]);
            if image.len() != src.hom(a, b).len() || image != target {
                fully_faithful = false;
                witnesses.push(format!("hom({a}, {b}) is not mapped bijectively"));
            }
        }
    }
    let mut ideals_isomorphic = true;
    for c in src.objects() {
        let below: Vec<usize> = src.objects().filter(|&a| src.le(a, c)).collect();
        let mut image: Vec<usize> = below.iter().map(|&a| f.objects[a]).collect();
        image.sort_unstable();
        image.dedup();
        let target: Vec<usize> = tgt.objects().filter(|&x| tgt.le(x, f.objects[c])).collect();
        let order_ok = below
            .iter()
            .all(|&a| below.iter().all(|&b| src.le(a, b) == tgt.le(f.objects[a], f.objects[b])));
        if image.len() != below.len() || image != target || !order_ok {
            ideals_isomorphic = false;
            witnesses.push(format!("ideal of object {c} is not mapped isomorphically"));
        }
    }
    LocalIsoReport { functorial, inclusion_preserving, fully_faithful, ideals_isomorphic, witnesses }
}

/// A verified cross-connection `(C, D; Γ, Δ)` with `Γ : D → C*` and
/// `Δ : C → D*`. The categories are the bases of the two duals' cones.
#[derive(Debug, Clone)]
pub struct CrossConnection {
    pub c_dual: NormalDual,
    pub d_dual: NormalDual,
    pub gamma: Functor,
    pub delta: Functor,
    /// Sorted pairs `(c, d)` with `c ∈ MΓ(d)`.
    pub e_omega: Vec<(usize, usize)>,
    pub gamma_cd: BTreeMap<(usize, usize), usize>,
    pub delta_cd: BTreeMap<(usize, usize), usize>,
}

/// Chooses the unique idempotent cone with apex `c` whose H-functor is `obj`.
fn idempotent_with(dual: &NormalDual, apex: usize, obj: usize) -> Result<usize> {
    let mut found = dual
        .cones
        .idempotents
        .iter()
        .copied()
        .filter(|&mu| dual.cones.cone(mu).apex() == apex && dual.object_of_idempotent[&mu] == obj);
    let first = found.next().ok_or(Error::InternalDisagreement("no idempotent cone for a pair of E_Ω"))?;
    if found.next().is_some() {
        return Err(Error::InternalDisagreement("several idempotent cones for a pair of E_Ω"));
    }
    Ok(first)
}

impl CrossConnection {
    /// Verifies the cross-connection axioms and tabulates `E_Ω`, `γ(c,d)` and `δ(c,d)`.
    pub fn new(c_dual: NormalDual, d_dual: NormalDual, gamma: Functor, delta: Functor) -> Result<Self> {
        for (name, dual) in [("C", &c_dual), ("D", &d_dual)] {
            if !dual.cones.report.is_unambiguous() {
                return Err(Error::Precondition(format!("{name} is not unambiguous")));
            }
        }
        let (c, d) = (&c_dual.cones.base, &d_dual.cones.base);
        for (name, src, tgt, f) in [("Γ", d, &c_dual.cat, &gamma), ("Δ", c, &d_dual.cat, &delta)] {
            let rep = verify_local_isomorphism(src, tgt, f);
            if !rep.holds() {
                let w = rep.witnesses.first().cloned().unwrap_or_default();
                return Err(Error::AxiomViolation(format!("{name} is not a local isomorphism: {w}")));
            }
        }
        let mut e_omega = Vec::new();
        for ci in c.objects() {
            for di in d.objects() {
                let in_gamma = c_dual.functor(gamma.objects[di]).m_set.contains(&ci);
                let in_delta = d_dual.functor(delta.objects[ci]).m_set.contains(&di);
                if in_gamma != in_delta {
                    return Err(Error::AxiomViolation(format!(
                        "M-sets disagree at ({}, {})",
                        c.object_label(ci),
                        d.object_label(di)
                    )));
                }
                if in_gamma {
                    e_omega.push((ci, di));
                }
            }
        }
        let mut gamma_cd = BTreeMap::new();
        let mut delta_cd = BTreeMap::new();
        for &(ci, di) in &e_omega {
            gamma_cd.insert((ci, di), idempotent_with(&c_dual, ci, gamma.objects[di])?);
            delta_cd.insert((ci, di), idempotent_with(&d_dual, di, delta.objects[ci])?);
        }
        Ok(CrossConnection { c_dual, d_dual, gamma, delta, e_omega, gamma_cd, delta_cd })
    }

    pub fn c(&self) -> &SoCategory {
        &self.c_dual.cones.base
    }

    pub fn d(&self) -> &SoCategory {
        &self.d_dual.cones.base
    }

    pub fn c_cones(&self) -> &ConeSemigroup {
        &self.c_dual.cones
    }

    pub fn d_cones(&self) -> &ConeSemigroup {
        &self.d_dual.cones
    }

    /// `Γ(d)` as an H-functor on `C`.
    pub fn gamma_of(&self, d: usize) -> &HFunctor {
        self.c_dual.functor(self.gamma.objects[d])
    }

    /// `Δ(c)` as an H-functor on `D`.
    pub fn delta_of(&self, c: usize) -> &HFunctor {
        self.d_dual.functor(self.delta.objects[c])
    }

    pub fn m_gamma(&self, d: usize) -> &[usize] {
        &self.gamma_of(d).m_set
    }

    pub fn m_delta(&self, c: usize) -> &[usize] {
        &self.delta_of(c).m_set
    }

    /// `Γ(c, d) = Γ(d)(c)`.
    pub fn gamma_set(&self, c: usize, d: usize) -> &[usize] {
        &self.gamma_of(d).sets[c]
    }

    /// `Δ(c, d) = Δ(c)(d)`.
    pub fn delta_set(&self, c: usize, d: usize) -> &[usize] {
        &self.delta_of(c).sets[d]
    }

    pub fn in_e_omega(&self, c: usize, d: usize) -> bool {
        self.e_omega.binary_search(&(c, d)).is_ok()
    }

    /// The transpose `g ∈ D(d', d)` of `f ∈ C(c', c)` for `(c', d), (c, d') ∈ E_Ω`.
    pub fn transpose(&self, f: usize, (c1, d): (usize, usize), (c, d1): (usize, usize)) -> Result<usize> {
        let (cc, dd) = (self.c(), self.d());
        if cc.dom(f) != c1 || cc.cod(f) != c {
            return Err(Error::DomainMismatch { expected: c1, found: cc.dom(f) });
        }
        let (Some(&from), Some(&to)) = (self.delta_cd.get(&(c1, d)), self.delta_cd.get(&(c, d1))) else {
            return Err(Error::Precondition(String::from("transpose needs two pairs of E_Ω")));
        };
        let candidates = dd.hom(d1, d);
        if candidates.len() > TRANSPOSE_GUARD {
            return Err(Error::SizeGuard { bound: TRANSPOSE_GUARD, actual: candidates.len() });
        }
        let ds = self.d_cones();
        let src = self.delta_of(c1);
        let t = self.delta.morphisms[f];
        // (x, η_{δ(c',d)}(β), η_{δ(c,d')}(Δ(f)_x(β))) for every x and β
        let mut squares = Vec::new();
        for x in dd.objects() {
            for &beta in &src.sets[x] {
                let left = eta(ds, from, x, beta).ok_or(Error::EtaNotWellDefined { object: x })?;
                let image = self.d_dual.apply(t, x, beta).ok_or(Error::NotClosed(beta, f))?;
                let right = eta(ds, to, x, image).ok_or(Error::EtaNotWellDefined { object: x })?;
                squares.push((left, right));
            }
        }
        let mut found = None;
        for &g in candidates {
            if squares.iter().all(|&(l, r)| dd.compose(g, l) == r) {
                if found.is_some() {
                    return Err(Error::MultipleTransposes { morphism: f });
                }
                found = Some(g);
            }
        }
        found.ok_or(Error::NoTranspose { morphism: f })
    }

    /// `χ(c, d)` with explicit choices `c' ∈ MΓ(d)` and `d' ∈ MΔ(c)`, as sorted
    /// pairs `(γ, χ(c,d)(γ))`.
    pub fn chi_with(&self, c: usize, d: usize, c1: usize, d1: usize) -> Result<Vec<(usize, usize)>> {
        let (Some(&g_pair), Some(&d_pair)) = (self.gamma_cd.get(&(c1, d)), self.delta_cd.get(&(c, d1))) else {
            return Err(Error::Precondition(String::from("χ choices must lie in E_Ω")));
        };
        let (cc, dd) = (self.c(), self.d());
        let mut out = Vec::with_capacity(self.gamma_set(c, d).len());
        for &gamma in self.gamma_set(c, d) {
            let f = eta(self.c_cones(), g_pair, c, gamma).ok_or(Error::EtaNotWellDefined { object: c })?;
            debug_assert_eq!(cc.dom(f), c1);
            let g = self.transpose(f, (c1, d), (c, d1))?;
            let delta = self.d_cones().apply(d_pair, dd.epi_component(g)?)?;
            if self.delta_of(c).position(d, delta).is_none() {
                return Err(Error::NotClosed(gamma, g));
            }
            out.push((gamma, delta));
        }
        let mut images: Vec<usize> = out.iter().map(|p| p.1).collect();
        images.sort_unstable();
        images.dedup();
        if images.as_slice() != self.delta_set(c, d) {
            return Err(Error::InternalDisagreement("χ(c,d) is not a bijection"));
        }
        Ok(out)
    }

    /// `χ(c, d)` with the least admissible `c'` and `d'`.
    pub fn chi(&self, c: usize, d: usize) -> Result<Vec<(usize, usize)>> {
        let c1 = *self.m_gamma(d).first().ok_or(Error::Precondition(String::from("empty M-set")))?;
        let d1 = *self.m_delta(c).first().ok_or(Error::Precondition(String::from("empty M-set")))?;
        self.chi_with(c, d, c1, d1)
    }

    /// `χ(c, d)(γ)`.
    pub fn chi_at(&self, c: usize, d: usize, gamma: usize) -> Result<usize> {
        self.chi(c, d)?
            .into_iter()
            .find(|p| p.0 == gamma)
            .map(|p| p.1)
            .ok_or(Error::NotClosed(gamma, d))
    }

    /// Checks that `χ` does not depend on the choices of `c'` and `d'` and is
    /// natural in both arguments. Returns the tables of `χ`.
    pub fn verify_chi(&self) -> Result<ChiReport> {
        let (cc, dd) = (self.c(), self.d());
        let mut tables = BTreeMap::new();
        let mut failures = Vec::new();
        for c in cc.objects() {
            for d in dd.objects() {
                let base = self.chi(c, d)?;
                for &c1 in self.m_gamma(d) {
                    for &d1 in self.m_delta(c) {
                        if self.chi_with(c, d, c1, d1)? != base {
                            failures.push(format!("χ({c},{d}) depends on the choice ({c1},{d1})"));
                        }
                    }
                }
                tables.insert((c, d), base);
            }
        }
        let lookup = |c: usize, d: usize, g: usize| tables[&(c, d)].iter().find(|p| p.0 == g).map(|p| p.1);
        let mut squares = 0;
        for u in cc.morphisms() {
            let (c, c1) = (cc.dom(u), cc.cod(u));
            for d in dd.objects() {
                for &(gamma, delta) in &tables[&(c, d)] {
                    let moved = self.gamma_of(d).act(self.c_cones(), u, gamma)?;
                    let there = self.d_dual.apply(self.delta.morphisms[u], d, delta);
                    squares += 1;
                    if lookup(c1, d, moved) != there {
                        failures.push(format!("naturality fails for C-morphism {u} at D-object {d}"));
                    }
                }
            }
        }
        for v in dd.morphisms() {
            let (d, d1) = (dd.dom(v), dd.cod(v));
            for c in cc.objects() {
                for &(gamma, delta) in &tables[&(c, d)] {
                    let moved = self.c_dual.apply(self.gamma.morphisms[v], c, gamma);
                    let there = self.delta_of(c).act(self.d_cones(), v, delta)?;
                    squares += 1;
                    if moved.and_then(|m| lookup(c, d1, m)) != Some(there) {
                        failures.push(format!("naturality fails for D-morphism {v} at C-object {c}"));
                    }
                }
            }
        }
        Ok(ChiReport { tables, squares, failures })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub tables: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    /// Number of naturality squares checked.
    pub squares: usize,
    pub failures: Vec<String>,
}

impl ChiReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The canonical cross-connection of a locally inverse semigroup together with
/// its ideal categories.
#[derive(Debug, Clone)]
pub struct CanonicalCxn {
    pub left: IdealCategory,
    pub right: IdealCategory,
    pub omega: CrossConnection,
}

/// `ΩS = (𝕃(S), ℝ(S); Γ_S, Δ_S)` with the default cone bound.
pub fn canonical_cxn(s: &FiniteSemigroup) -> Result<CanonicalCxn> {
    canonical_cxn_bounded(s, DEFAULT_CONE_BOUND)
}

/// `Γ_S : eS ↦ H(ρ^e; −)` and `λ(e,u,f) ↦ σ^{ρ(f,u,e)}`; `Δ_S` dually.
fn side_functor(
    src: &IdealCategory,
    other: &IdealCategory,
    dual: &NormalDual,
    principal: &[usize],
) -> Result<Functor> {
    let mut objects = Vec::with_capacity(src.cat.object_count());
    for d in src.cat.objects() {
        objects.push(dual.object_of_idempotent[&principal[src.idempotent(d)]]);
    }
    let mut morphisms = Vec::with_capacity(src.cat.morphism_count());
    for m in src.cat.morphisms() {
        let (e, f) = (src.idempotent(src.cat.dom(m)), src.idempotent(src.cat.cod(m)));
        let k = other.canonical_morphism(f, src.element(m), e)?;
        let t = dual.sigma(principal[e], principal[f], k)?;
        morphisms.push(dual.transformation_index(&t).ok_or(Error::InternalDisagreement("σ is not in the dual"))?);
    }
    Ok(Functor { objects, morphisms })
}

pub fn canonical_cxn_bounded(s: &FiniteSemigroup, bound: usize) -> Result<CanonicalCxn> {
    if !is_locally_inverse(s)?.holds {
        return Err(Error::NotLocallyInverse);
    }
    let left = left_ideal_category(s)?;
    let right = right_ideal_category(s)?;
    let c_dual = normal_dual_of(cone_semigroup(&left.cat, bound)?)?;
    let d_dual = normal_dual_of(cone_semigroup(&right.cat, bound)?)?;
    let mut rho = vec![usize::MAX; s.order()];
    let mut lambda = vec![usize::MAX; s.order()];
    for e in s.idempotents() {
        rho[e] = c_dual.cones.index_of(&principal_cone(&left, e)?).ok_or(Error::NotClosed(e, e))?;
        lambda[e] = d_dual.cones.index_of(&principal_cone(&right, e)?).ok_or(Error::NotClosed(e, e))?;
    }
    let gamma = side_functor(&right, &left, &c_dual, &rho)?;
    let delta = side_functor(&left, &right, &d_dual, &lambda)?;
    let omega = CrossConnection::new(c_dual, d_dual, gamma, delta)?;
    Ok(CanonicalCxn { left, right, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn e_omega_sizes() {
        let size = |s| canonical_cxn(&s).unwrap().omega.e_omega.len();
        assert_eq!(size(fixtures::b2()), 3);
        assert_eq!(size(fixtures::sl2()), 2);
        assert_eq!(size(fixtures::lz2()), 2);
        assert_eq!(size(fixtures::z2()), 1);
    }

    #[test]
    fn e_omega_matches_idempotents() {
        for s in [fixtures::b2(), fixtures::sl2(), fixtures::lz2(), fixtures::m9()] {
            let cx = canonical_cxn(&s).unwrap();
            let mut pairs: Vec<(usize, usize)> = s
                .idempotents()
                .into_iter()
                .map(|e| (cx.left.object_of(e).unwrap(), cx.right.object_of(e).unwrap()))
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(pairs, cx.omega.e_omega);
        }
    }

    #[test]
    fn non_locally_inverse_rejected() {
        assert_eq!(canonical_cxn(&fixtures::t2()).unwrap_err(), Error::NotLocallyInverse);
    }

    #[test]
    fn gamma_cones_have_the_right_apex_and_functor() {
        for s in [fixtures::b2(), fixtures::m9(), fixtures::lz2()] {
            let o = canonical_cxn(&s).unwrap().omega;
            for (&(c, d), &g) in &o.gamma_cd {
                assert_eq!(o.c_cones().cone(g).apex(), c);
                assert_eq!(h_functor(o.c_cones(), g).unwrap().sets, o.gamma_of(d).sets);
            }
            for (&(c, d), &g) in &o.delta_cd {
                assert_eq!(o.d_cones().cone(g).apex(), d);
                assert_eq!(h_functor(o.d_cones(), g).unwrap().sets, o.delta_of(c).sets);
            }
        }
    }

    #[test]
    fn gamma_acts_by_left_multiplication() {
        for s in [fixtures::b2(), fixtures::m9(), fixtures::sl2()] {
            let cx = canonical_cxn(&s).unwrap();
            let o = &cx.omega;
            for m in cx.right.cat.morphisms() {
                let u = cx.right.element(m);
                let rho_u = o.c_cones().index_of(&principal_cone(&cx.left, u).unwrap()).unwrap();
                let t = &o.c_dual.transformations[o.gamma.morphisms[m]];
                for (c, row) in t.components.iter().enumerate() {
                    for (&gamma, &image) in o.gamma_of(cx.right.cat.dom(m)).sets[c].iter().zip(row) {
                        assert_eq!(image, o.c_cones().mul(rho_u, gamma));
                    }
                }
            }
        }
    }

    #[test]
    fn local_isomorphisms() {
        for s in [fixtures::b2(), fixtures::sl2()] {
            let o = canonical_cxn(&s).unwrap().omega;
            assert!(verify_local_isomorphism(o.d(), &o.c_dual.cat, &o.gamma).holds());
            assert!(verify_local_isomorphism(o.c(), &o.d_dual.cat, &o.delta).holds());
        }
    }

    #[test]
    fn corrupted_functor_fails_local_isomorphism() {
        let o = canonical_cxn(&fixtures::b2()).unwrap().omega;
        let mut bad = o.gamma.clone();
        let d = o.d();
        let (a, b) = d
            .objects()
            .find_map(|x| {
                let h = d.hom(x, x);
                (h.len() > 1).then(|| (h[0], h[1]))
            })
            .unwrap();
        bad.morphisms.swap(a, b);
        let rep = verify_local_isomorphism(d, &o.c_dual.cat, &bad);
        assert!(!rep.holds());
        assert!(!rep.witnesses.is_empty());
    }

    #[test]
    fn identity_transposes_to_identity() {
        for s in [fixtures::b2(), fixtures::m9()] {
            let o = canonical_cxn(&s).unwrap().omega;
            for &(c, d) in &o.e_omega {
                let g = o.transpose(o.c().identity(c), (c, d), (c, d)).unwrap();
                assert_eq!(g, o.d().identity(d));
            }
        }
    }

    #[test]
    fn brandt_iso_transposes_to_iso() {
        let b2 = fixtures::b2();
        let e = |i, j| fixtures::b2_element(i, j);
        let cx = canonical_cxn(&b2).unwrap();
        let o = &cx.omega;
        let f = cx.left.canonical_morphism(e(1, 1), e(1, 2), e(2, 2)).unwrap();
        let (c1, c) = (o.c().dom(f), o.c().cod(f));
        let (d11, d22) = (cx.right.object_of(e(1, 1)).unwrap(), cx.right.object_of(e(2, 2)).unwrap());
        let g = o.transpose(f, (c1, d11), (c, d22)).unwrap();
        assert!(o.d().is_iso(g));
        assert!(!o.d().is_identity(g));
        assert_eq!((o.d().dom(g), o.d().cod(g)), (d22, d11));
        assert_eq!(g, cx.right.canonical_morphism(e(2, 2), e(1, 2), e(1, 1)).unwrap());
    }

    #[test]
    fn semilattice_transpose() {
        let cx = canonical_cxn(&fixtures::sl2()).unwrap();
        let o = &cx.omega;
        let f = cx.left.canonical_morphism(1, 0, 1).unwrap();
        let c1 = cx.left.object_of(1).unwrap();
        let d1 = cx.right.object_of(1).unwrap();
        let g = o.transpose(f, (c1, d1), (c1, d1)).unwrap();
        assert_eq!(o.d().hom(d1, d1).len(), 2);
        assert!(!o.d().is_identity(g));
        assert_eq!(o.d().dom(g), d1);
    }

    #[test]
    fn chi_is_a_natural_bijection() {
        for s in [fixtures::b2(), fixtures::sl2(), fixtures::lz2(), fixtures::m9(), fixtures::z2()] {
            let o = canonical_cxn(&s).unwrap().omega;
            let rep = o.verify_chi().unwrap();
            assert!(rep.holds(), "{:?}", rep.failures);
            assert!(rep.squares > 0);
            for (&(c, d), table) in &rep.tables {
                assert_eq!(table.len(), o.gamma_set(c, d).len());
                assert_eq!(o.gamma_set(c, d).len(), o.delta_set(c, d).len());
            }
        }
    }

    #[test]
    fn chi_sends_idempotent_pairs() {
        for s in [fixtures::b2(), fixtures::lz2()] {
            let o = canonical_cxn(&s).unwrap().omega;
            for &(c, d) in &o.e_omega {
                assert_eq!(o.chi_at(c, d, o.gamma_cd[&(c, d)]).unwrap(), o.delta_cd[&(c, d)]);
            }
        }
    }
}
