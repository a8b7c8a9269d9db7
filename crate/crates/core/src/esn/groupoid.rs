//! Inductive groupoids and the passage between them, inverse semigroups and
//! inversive categories.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::inversive::{classify_inversive, is_inversive_cone};
use crate::category::{find_category_isomorphism, Functor, MorphismSpec, ObjectSpec, Side, SoCategory};
use crate::classify::is_inverse;
use crate::cones::{enumerate_normal_cones, Cone, DEFAULT_CONE_BOUND};
use crate::error::{Error, Result};
use crate::green::idempotents_and_inverses;
use crate::iso::find_isomorphism;
use crate::semigroup::FiniteSemigroup;

/// A finite ordered groupoid whose objects form a meet semilattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveGroupoid {
    pub object_labels: Vec<String>,
    pub morphism_labels: Vec<String>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    meet: Vec<usize>,
    compose: Vec<Option<usize>>,
    order: Vec<bool>,
}

impl InductiveGroupoid {
    /// Builds a groupoid from its objects, meet table, morphisms
    /// `(dom, cod, label)`, composition and order, and checks every axiom.
    pub fn new(
        object_labels: Vec<String>,
        meet: Vec<usize>,
        morphisms: Vec<(usize, usize, String)>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
        mut le: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = object_labels.len();
        let m = morphisms.len();
        if meet.len() != n * n || meet.iter().any(|&x| x >= n) {
            return Err(Error::AxiomViolation(String::from("meet table has the wrong shape")));
        }
        let dom: Vec<usize> = morphisms.iter().map(|x| x.0).collect();
        let cod: Vec<usize> = morphisms.iter().map(|x| x.1).collect();
        if dom.iter().chain(&cod).any(|&o| o >= n) {
            return Err(Error::AxiomViolation(String::from("morphism endpoint out of range")));
        }
        let mut table = vec![None; m * m];
        for x in 0..m {
            for y in 0..m {
                if cod[x] == dom[y] {
                    let z = compose(x, y).ok_or_else(|| Error::AxiomViolation(format!("{x}·{y} is undefined")))?;
                    if z >= m || dom[z] != dom[x] || cod[z] != cod[y] {
                        return Err(Error::AxiomViolation(format!("{x}·{y} has the wrong type")));
                    }
                    table[x * m + y] = Some(z);
                }
            }
        }
        let order: Vec<bool> = (0..m * m).map(|i| le(i / m, i % m)).collect();
        let morphism_labels = morphisms.into_iter().map(|x| x.2).collect();
        let mut g = InductiveGroupoid {
            object_labels,
            morphism_labels,
            dom,
            cod,
            identity: Vec::new(),
            inverse: Vec::new(),
            meet,
            compose: table,
            order,
        };
        g.identity = (0..n)
            .map(|e| {
                (0..m)
                    .find(|&i| {
                        g.dom[i] == e
                            && g.cod[i] == e
                            && (0..m).all(|x| {
                                (g.dom[x] != e || g.compose(i, x) == Some(x)) && (g.cod[x] != e || g.compose(x, i) == Some(x))
                            })
                    })
                    .ok_or_else(|| Error::AxiomViolation(format!("object {e} has no identity")))
            })
            .collect::<Result<_>>()?;
        g.inverse = (0..m)
            .map(|x| {
                (0..m)
                    .find(|&y| g.compose(x, y) == Some(g.identity[g.dom[x]]) && g.compose(y, x) == Some(g.identity[g.cod[x]]))
                    .ok_or_else(|| Error::AxiomViolation(format!("morphism {x} is not invertible")))
            })
            .collect::<Result<_>>()?;
        g.verify().map_err(Error::AxiomViolation)?;
        Ok(g)
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.meet[e * self.object_count() + f]
    }

    pub fn object_le(&self, e: usize, f: usize) -> bool {
        self.meet(e, f) == e
    }

    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.compose[x * self.morphism_count() + y]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.order[x * self.morphism_count() + y]
    }

    /// `e ↿ x`: the unique `u ≤ x` with `d(u) = e`.
    pub fn restrict(&self, e: usize, x: usize) -> Option<usize> {
        let mut found = (0..self.morphism_count()).filter(|&u| self.dom[u] == e && self.le(u, x));
        let u = found.next()?;
        found.next().is_none().then_some(u)
    }

    /// `x ⇂ f`: the unique `u ≤ x` with `r(u) = f`.
    pub fn corestrict(&self, x: usize, f: usize) -> Option<usize> {
        let mut found = (0..self.morphism_count()).filter(|&u| self.cod[u] == f && self.le(u, x));
        let u = found.next()?;
        found.next().is_none().then_some(u)
    }

    /// Groupoid, semilattice and ordered-groupoid axioms.
    pub fn verify(&self) -> core::result::Result<(), String> {
        let (n, m) = (self.object_count(), self.morphism_count());
        for e in 0..n {
            for f in 0..n {
                let x = self.meet(e, f);
                if x != self.meet(f, e) || !self.object_le(x, e) || !self.object_le(x, f) {
                    return Err(format!("meet of {e} and {f} is not a lower bound"));
                }
                for g in 0..n {
                    if self.meet(self.meet(e, f), g) != self.meet(e, self.meet(f, g)) {
                        return Err(String::from("meet is not associative"));
                    }
                }
            }
            if self.meet(e, e) != e {
                return Err(String::from("meet is not idempotent"));
            }
        }
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if let (Some(xy), Some(yz)) = (self.compose(x, y), self.compose(y, z)) {
                        if self.compose(xy, z) != self.compose(x, yz) {
                            return Err(format!("composition is not associative at ({x}, {y}, {z})"));
                        }
                    }
                    if self.le(x, y) && self.le(y, z) && !self.le(x, z) {
                        return Err(String::from("order is not transitive"));
                    }
                }
                if x != y && self.le(x, y) && self.le(y, x) {
                    return Err(String::from("order is not antisymmetric"));
                }
            }
            if !self.le(x, x) {
                return Err(String::from("order is not reflexive"));
            }
        }
        for e in 0..n {
            for f in 0..n {
                if self.le(self.identity[e], self.identity[f]) != self.object_le(e, f) {
                    return Err(format!("order on identities {e}, {f} differs from the semilattice"));
                }
            }
        }
        for u in 0..m {
            for x in 0..m {
                if !self.le(u, x) {
                    continue;
                }
                if !self.le(self.inverse[u], self.inverse[x]) {
                    return Err(format!("OG2 fails for {u} ≤ {x}"));
                }
                for v in 0..m {
                    for y in 0..m {
                        if let (true, Some(uv), Some(xy)) = (self.le(v, y), self.compose(u, v), self.compose(x, y)) {
                            if !self.le(uv, xy) {
                                return Err(format!("OG1 fails for {u} ≤ {x}, {v} ≤ {y}"));
                            }
                        }
                    }
                }
            }
        }
        for x in 0..m {
            for e in 0..n {
                if self.object_le(e, self.dom[x]) && self.restrict(e, x).is_none() {
                    return Err(format!("OG3 fails for {e} and {x}"));
                }
                if self.object_le(e, self.cod[x]) && self.corestrict(x, e).is_none() {
                    return Err(format!("OG3* fails for {x} and {e}"));
                }
            }
        }
        Ok(())
    }

    /// The inverse semigroup on the morphisms with the pseudo-product
    /// `x ⊗ y = (x ⇂ h)(h ↿ y)`, `h = r(x) ∧ d(y)`.
    pub fn pseudo_product_semigroup(&self) -> Result<FiniteSemigroup> {
        let s = FiniteSemigroup::from_fn(self.morphism_count(), |x, y| {
            let h = self.meet(self.cod[x], self.dom[y]);
            let a = self.corestrict(x, h).expect("OG3*");
            let b = self.restrict(h, y).expect("OG3");
            self.compose(a, b).expect("composable")
        })?;
        s.with_labels(self.morphism_labels.clone())
    }
}

/// `G(S)`: objects `E(S)` under `ef`, morphisms the elements of `S` with
/// `d(x) = xx⁻¹`, `r(x) = x⁻¹x`, and `x ≤ y ⟺ x = (xx⁻¹)y`.
pub fn inductive_groupoid_of(s: &FiniteSemigroup) -> Result<InductiveGroupoid> {
    if !is_inverse(s)?.holds {
        return Err(Error::NotInverse);
    }
    let inv = idempotents_and_inverses(s);
    let es = inv.idempotents.clone();
    let obj: BTreeMap<usize, usize> = es.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let a_inv: Vec<usize> = inv.inverses.iter().map(|v| v[0]).collect();
    let n = es.len();
    let mut meet = vec![0; n * n];
    for (i, &e) in es.iter().enumerate() {
        for (j, &f) in es.iter().enumerate() {
            meet[i * n + j] = obj[&s.mul(e, f)];
        }
    }
    let morphisms = s
        .elements()
        .map(|x| (obj[&s.mul(x, a_inv[x])], obj[&s.mul(a_inv[x], x)], s.label(x).to_string()))
        .collect();
    let labels = es.iter().map(|&e| s.label(e).to_string()).collect();
    InductiveGroupoid::new(labels, meet, morphisms, |x, y| Some(s.mul(x, y)), |x, y| {
        x == s.product(&[x, a_inv[x], y])
    })
}

/// `C_G`: morphisms `[e, α, f⟩` with `d(α) ≤ e`, `r(α) ≤ f`, composed by
/// `[e,α,f⟩[f,β,g⟩ = [e, (α ⇂ h)(h ↿ β), g⟩` with `h = r(α) ∧ d(β)`.
/// The result is checked to be inversive with the cones `r^α` as its
/// inversive cones.
pub fn groupoid_to_category(g: &InductiveGroupoid) -> Result<SoCategory> {
    let n = g.object_count();
    let mut triples = Vec::new();
    for e in 0..n {
        for f in 0..n {
            for a in 0..g.morphism_count() {
                if g.object_le(g.dom[a], e) && g.object_le(g.cod[a], f) {
                    triples.push((e, a, f));
                }
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let objects = g.object_labels.iter().map(|l| ObjectSpec { label: l.clone(), payload: None }).collect();
    let morphisms = triples
        .iter()
        .map(|&(e, a, f)| MorphismSpec {
            dom: e,
            cod: f,
            label: format!("[{},{},{}⟩", g.object_labels[e], g.morphism_labels[a], g.object_labels[f]),
            payload: Some(a),
        })
        .collect();
    let compose = |x: usize, y: usize| {
        let ((e, a, f), (f1, b, h1)) = (triples[x], triples[y]);
        if f != f1 {
            return None;
        }
        let h = g.meet(g.cod[a], g.dom[b]);
        let ab = g.compose(g.corestrict(a, h)?, g.restrict(h, b)?)?;
        index.get(&(e, ab, h1)).copied()
    };
    let inclusions: Vec<usize> = (0..n)
        .flat_map(|e| (0..n).map(move |f| (e, f)))
        .filter(|&(e, f)| g.object_le(e, f))
        .map(|(e, f)| index[&(e, g.identity[e], f)])
        .collect();
    let cat = SoCategory::new(Side::Abstract, objects, morphisms, compose, &inclusions)?;

    let rep = classify_inversive(&cat)?;
    if !rep.is_inversive() {
        return Err(Error::AxiomViolation(format!("C_G is not inversive: {:?}", rep.witnesses)));
    }
    let mut r_cones = Vec::with_capacity(g.morphism_count());
    for a in 0..g.morphism_count() {
        let comps = (0..n)
            .map(|c| {
                let h = g.meet(c, g.dom[a]);
                index[&(c, g.restrict(h, a).expect("OG3"), g.cod[a])]
            })
            .collect();
        r_cones.push(Cone::new(&cat, g.cod[a], comps)?);
    }
    r_cones.sort();
    r_cones.dedup();
    let mut inversive: Vec<Cone> = enumerate_normal_cones(&cat, DEFAULT_CONE_BOUND)?
        .into_iter()
        .filter(|c| is_inversive_cone(&cat, c))
        .collect();
    inversive.sort();
    if r_cones != inversive {
        return Err(Error::InternalDisagreement("the cones r^α are not the inversive cones"));
    }
    Ok(cat)
}

/// `G_C`: the isomorphisms of an inversive category with
/// `f ≤ g ⟺ dom f ⊆ dom g` and `f = (ι(dom f, dom g) g)°`.
pub fn category_to_groupoid(cat: &SoCategory) -> Result<InductiveGroupoid> {
    let rep = classify_inversive(cat)?;
    if !rep.is_inversive() {
        return Err(Error::Precondition(format!("category is not inversive: {:?}", rep.witnesses)));
    }
    let n = cat.object_count();
    let isos: Vec<usize> = cat.morphisms().filter(|&m| cat.is_iso(m)).collect();
    let pos: BTreeMap<usize, usize> = isos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = cat.meet(a, b).ok_or(Error::Precondition(String::from("no meet")))?;
        }
    }
    let morphisms = isos.iter().map(|&m| (cat.dom(m), cat.cod(m), cat.morphism_label(m).to_string())).collect();
    let labels = cat.objects().map(|c| cat.object_label(c).to_string()).collect();
    InductiveGroupoid::new(
        labels,
        meet,
        morphisms,
        |x, y| pos.get(&cat.compose(isos[x], isos[y])).copied(),
        |x, y| {
            let (f, g) = (isos[x], isos[y]);
            match cat.inclusion(cat.dom(f), cat.dom(g)) {
                Some(i) => cat.epi_component(cat.compose(i, g)) == Ok(f),
                None => false,
            }
        },
    )
}

/// Whether `map` on morphisms is an isomorphism of ordered groupoids.
pub fn is_groupoid_isomorphism(a: &InductiveGroupoid, b: &InductiveGroupoid, map: &[usize]) -> bool {
    let m = a.morphism_count();
    if map.len() != m || b.morphism_count() != m || a.object_count() != b.object_count() {
        return false;
    }
    let mut seen = vec![false; m];
    if !map.iter().all(|&x| x < m && !core::mem::replace(&mut seen[x], true)) {
        return false;
    }
    let objects: Vec<usize> = a.identity.iter().map(|&i| b.identity.iter().position(|&j| j == map[i])).collect::<Option<_>>().unwrap_or_default();
    if objects.len() != a.object_count() {
        return false;
    }
    (0..m).all(|x| {
        b.dom[map[x]] == objects[a.dom[x]]
            && b.cod[map[x]] == objects[a.cod[x]]
            && (0..m).all(|y| {
                a.compose(x, y).map(|z| map[z]) == b.compose(map[x], map[y]) && a.le(x, y) == b.le(map[x], map[y])
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// `C_{G_C} → C`.
    pub category: Option<Functor>,
    /// `G_{C_G} → G` on morphisms.
    pub groupoid: Option<Vec<usize>>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.category.is_some() && self.groupoid.is_some()
    }
}

/// An isomorphism of inductive groupoids, found through their pseudo-product
/// semigroups and then checked directly.
pub fn find_groupoid_isomorphism(a: &InductiveGroupoid, b: &InductiveGroupoid) -> Result<Option<Vec<usize>>> {
    let (sa, sb) = (a.pseudo_product_semigroup()?, b.pseudo_product_semigroup()?);
    Ok(find_isomorphism(&sa, &sb)?.filter(|map| is_groupoid_isomorphism(a, b, map)))
}

/// Runs `C → G_C → C_{G_C}` and `G_C → C_{G_C} → G_{C_{G_C}}` for an
/// inversive category.
pub fn round_trip(cat: &SoCategory) -> Result<RoundTrip> {
    let g = category_to_groupoid(cat)?;
    let c2 = groupoid_to_category(&g)?;
    let category = find_category_isomorphism(&c2, cat);
    let g2 = category_to_groupoid(&c2)?;
    let groupoid = find_groupoid_isomorphism(&g2, &g)?;
    Ok(RoundTrip { category, groupoid })
}
