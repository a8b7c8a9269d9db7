//! H-functors and the normal dual `C*` as a concrete category of natural
//! transformations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::iso::is_inclusion_isomorphism;
use crate::category::{right_ideal_category, verify_functor, Functor, IdealCategory, MorphismSpec, ObjectSpec, Side, SoCategory};
use crate::cones::{cone_semigroup, ConeSemigroup};
use crate::error::{Error, Result};

/// `H(μ; −)` for an idempotent cone `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFunctor {
    pub mu: usize,
    /// `H(μ; c) = {μ ∗ f° : f ∈ C(c_μ, c)}`, sorted, per object.
    pub sets: Vec<Vec<usize>>,
    /// `η_μ` at `c`, aligned with `sets[c]`: the morphism in `C(c_μ, c)`.
    pub eta: Vec<Vec<usize>>,
    /// `{c : μ(c) is an isomorphism}`.
    pub m_set: Vec<usize>,
}

impl HFunctor {
    pub fn position(&self, c: usize, gamma: usize) -> Option<usize> {
        self.sets[c].binary_search(&gamma).ok()
    }

    /// `η_μ(γ)` at `c`.
    pub fn eta_at(&self, c: usize, gamma: usize) -> Option<usize> {
        self.position(c, gamma).map(|i| self.eta[c][i])
    }

    /// The preimage `μ ∗ f°` of `f ∈ C(c_μ, c)`.
    pub fn eta_inverse(&self, c: usize, f: usize) -> Option<usize> {
        self.eta[c].iter().position(|&g| g == f).map(|i| self.sets[c][i])
    }

    /// `H(μ; g)(γ) = μ ∗ (η(γ) g)°` for `g : c → d`.
    pub fn act(&self, cs: &ConeSemigroup, g: usize, gamma: usize) -> Result<usize> {
        let cat = &cs.base;
        let f = self.eta_at(cat.dom(g), gamma).ok_or(Error::NotClosed(gamma, g))?;
        cs.apply(self.mu, cat.epi_component(cat.compose(f, g))?)
    }
}

/// `η_μ(γ)` at `c` computed directly as `γ(c_μ) ι(c_γ, c)`.
pub fn eta(cs: &ConeSemigroup, mu: usize, c: usize, gamma: usize) -> Option<usize> {
    let cat = &cs.base;
    let g = cs.cone(gamma);
    let i = cat.inclusion(g.apex(), c)?;
    Some(cat.compose(g.component(cs.cone(mu).apex()), i))
}

/// Builds `H(μ; −)` and checks that `η_μ` is a bijection onto `C(c_μ, c)`.
pub fn h_functor(cs: &ConeSemigroup, mu: usize) -> Result<HFunctor> {
    let cat = &cs.base;
    if !cs.semigroup.is_idempotent(mu) {
        return Err(Error::NotIdempotent(mu));
    }
    let apex = cs.cone(mu).apex();
    let mut sets = Vec::with_capacity(cat.object_count());
    let mut etas = Vec::with_capacity(cat.object_count());
    for c in cat.objects() {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &f in cat.hom(apex, c) {
            let gamma = cs.apply(mu, cat.epi_component(f)?)?;
            if pairs.iter().any(|&(g, _)| g == gamma) {
                return Err(Error::EtaNotWellDefined { object: c });
            }
            if eta(cs, mu, c, gamma) != Some(f) {
                return Err(Error::EtaNotWellDefined { object: c });
            }
            pairs.push((gamma, f));
        }
        pairs.sort_unstable();
        sets.push(pairs.iter().map(|p| p.0).collect());
        etas.push(pairs.iter().map(|p| p.1).collect());
    }
    let m_set = cs.cone(mu).m_set().to_vec();
    Ok(HFunctor { mu, sets, eta: etas, m_set })
}

/// A natural transformation between two objects of the dual, stored as one
/// map per object aligned with the source sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transformation {
    pub dom: usize,
    pub cod: usize,
    pub components: Vec<Vec<usize>>,
}

/// The dual `C*`: distinct H-functors and the transformations between them,
/// together with the verified isomorphism `ℝ(Ĉ) → C*`.
#[derive(Debug, Clone)]
pub struct NormalDual {
    pub cones: ConeSemigroup,
    pub functors: Vec<HFunctor>,
    /// Dual object of each idempotent cone.
    pub object_of_idempotent: BTreeMap<usize, usize>,
    pub transformations: Vec<Transformation>,
    pub cat: SoCategory,
    pub right: IdealCategory,
    /// `λ(μ, ξ, ν) ↦ (γ ↦ ξ·γ)`.
    pub from_right: Functor,
    index: BTreeMap<Transformation, usize>,
}

impl NormalDual {
    pub fn functor(&self, object: usize) -> &HFunctor {
        &self.functors[object]
    }

    pub fn transformation_index(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Applies transformation `t` at object `c` to `γ`.
    pub fn apply(&self, t: usize, c: usize, gamma: usize) -> Option<usize> {
        let tr = &self.transformations[t];
        let pos = self.functors[tr.dom].position(c, gamma)?;
        Some(tr.components[c][pos])
    }

    /// `σ^k : H(μ) → H(ν)` for `k ∈ C(c_ν, c_μ)`, with `σ^k_c(γ) = ν ∗ (k η_μ(γ))°`.
    /// `mu` and `nu` are any idempotent cones representing the two objects.
    pub fn sigma(&self, mu: usize, nu: usize, k: usize) -> Result<Transformation> {
        sigma(&self.cones, &self.functors, &self.object_of_idempotent, mu, nu, k)
    }
}

fn sigma(
    cs: &ConeSemigroup,
    functors: &[HFunctor],
    object_of: &BTreeMap<usize, usize>,
    mu: usize,
    nu: usize,
    k: usize,
) -> Result<Transformation> {
    let cat = &cs.base;
    let (dom, cod) = (object_of[&mu], object_of[&nu]);
    let (src, dst) = (&functors[dom], &functors[cod]);
    let mut components = Vec::with_capacity(cat.object_count());
    for c in cat.objects() {
        let mut row = Vec::with_capacity(src.sets[c].len());
        for &gamma in &src.sets[c] {
            let f = eta(cs, mu, c, gamma).ok_or(Error::EtaNotWellDefined { object: c })?;
            let image = cs.apply(nu, cat.epi_component(cat.compose(k, f))?)?;
            if dst.position(c, image).is_none() {
                return Err(Error::NotClosed(gamma, k));
            }
            row.push(image);
        }
        components.push(row);
    }
    Ok(Transformation { dom, cod, components })
}

/// Builds `C*` from the cones of `cat` and checks it against `ℝ(Ĉ)`.
pub fn normal_dual(cat: &SoCategory, bound: usize) -> Result<NormalDual> {
    let cs = cone_semigroup(cat, bound)?;
    normal_dual_of(cs)
}

pub fn normal_dual_of(cs: ConeSemigroup) -> Result<NormalDual> {
    let cat = cs.base.clone();
    let mut functors: Vec<HFunctor> = Vec::new();
    let mut object_of_idempotent = BTreeMap::new();
    for &mu in &cs.idempotents {
        let h = h_functor(&cs, mu)?;
        let obj = match functors.iter().position(|x| x.sets == h.sets) {
            Some(i) => {
                if functors[i].m_set != h.m_set {
                    return Err(Error::InternalDisagreement("M-set of an H-functor"));
                }
                i
            }
            None => {
                functors.push(h);
                functors.len() - 1
            }
        };
        object_of_idempotent.insert(mu, obj);
    }
    let mut transformations = Vec::new();
    for a in 0..functors.len() {
        for b in 0..functors.len() {
            let (mu, nu) = (functors[a].mu, functors[b].mu);
            let (cm, cn) = (cs.cone(mu).apex(), cs.cone(nu).apex());
            let mut here: Vec<Transformation> = Vec::new();
            for &k in cat.hom(cn, cm) {
                let t = sigma(&cs, &functors, &object_of_idempotent, mu, nu, k)?;
                if here.contains(&t) {
                    return Err(Error::InternalDisagreement("distinct morphisms give one transformation"));
                }
                here.push(t);
            }
            transformations.extend(here);
        }
    }
    let index: BTreeMap<Transformation, usize> =
        transformations.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let objects: Vec<ObjectSpec> = functors
        .iter()
        .map(|h| ObjectSpec { label: format!("H(γ{})", h.mu), payload: Some(h.mu) })
        .collect();
    let morphisms: Vec<MorphismSpec> = transformations
        .iter()
        .enumerate()
        .map(|(i, t)| MorphismSpec { dom: t.dom, cod: t.cod, label: format!("σ{i}"), payload: None })
        .collect();
    let compose = |x: usize, y: usize| {
        let (s, t) = (&transformations[x], &transformations[y]);
        let mid = &functors[s.cod];
        let components: Vec<Vec<usize>> = s
            .components
            .iter()
            .enumerate()
            .map(|(c, row)| row.iter().map(|&g| t.components[c][mid.position(c, g).unwrap()]).collect())
            .collect();
        index.get(&Transformation { dom: s.dom, cod: t.cod, components }).copied()
    };
    let mut inclusions = Vec::new();
    for (i, t) in transformations.iter().enumerate() {
        let src = &functors[t.dom];
        if t.components.iter().zip(&src.sets).all(|(row, set)| row == set) {
            inclusions.push(i);
        }
    }
    let dual_cat = SoCategory::new(Side::Abstract, objects, morphisms, compose, &inclusions)?;

    // ℝ(Ĉ) → C*
    let right = right_ideal_category(&cs.semigroup)?;
    let mut obj_map = Vec::with_capacity(right.cat.object_count());
    for r in right.cat.objects() {
        let mu = right.idempotent(r);
        let obj = object_of_idempotent[&mu];
        for &other in &cs.idempotents {
            let same_r = right.object_of(other)? == r;
            if same_r != (object_of_idempotent[&other] == obj) {
                return Err(Error::InternalDisagreement("R-classes of idempotent cones and H-functors"));
            }
        }
        obj_map.push(obj);
    }
    let mut mor_map = Vec::with_capacity(right.cat.morphism_count());
    for m in right.cat.morphisms() {
        let xi = right.element(m);
        let (a, b) = (obj_map[right.cat.dom(m)], obj_map[right.cat.cod(m)]);
        let src = &functors[a];
        let components: Vec<Vec<usize>> =
            src.sets.iter().map(|set| set.iter().map(|&g| cs.mul(xi, g)).collect()).collect();
        let t = Transformation { dom: a, cod: b, components };
        mor_map.push(index.get(&t).copied().ok_or(Error::InternalDisagreement("left multiplication is not natural"))?);
    }
    let from_right = Functor { objects: obj_map, morphisms: mor_map };
    verify_functor(&right.cat, &dual_cat, &from_right).map_err(Error::AxiomViolation)?;
    if !is_inclusion_isomorphism(&right.cat, &dual_cat, &from_right) {
        return Err(Error::AxiomViolation(String::from("ℝ(Ĉ) is not isomorphic to the dual")));
    }
    Ok(NormalDual {
        cones: cs,
        functors,
        object_of_idempotent,
        transformations,
        cat: dual_cat,
        right,
        from_right,
        index,
    })
}
