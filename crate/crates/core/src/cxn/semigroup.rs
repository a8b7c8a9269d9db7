//! The cross-connection semigroup `SΩ` of linked cone pairs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{canonical_cxn_bounded, CrossConnection};
use crate::category::{find_category_isomorphism, left_ideal_category, right_ideal_category};
use crate::classify::is_locally_inverse;
use crate::cones::DEFAULT_CONE_BOUND;
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone)]
pub struct CxnSemigroup {
    /// Sorted linked pairs `(γ, δ)`; element `i` of the semigroup is `pairs[i]`.
    pub pairs: Vec<(usize, usize)>,
    pub semigroup: FiniteSemigroup,
    /// `Γ̂` and `Δ̂`, sorted.
    pub gamma_hat: Vec<usize>,
    pub delta_hat: Vec<usize>,
    /// Idempotent element ↦ its pair `(c, d) ∈ E_Ω`.
    pub idempotent_labels: BTreeMap<usize, (usize, usize)>,
    pub naturality_squares: usize,
}

impl CxnSemigroup {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }
}

fn union_closed(sets: impl Iterator<Item = Vec<usize>>, mul: impl Fn(usize, usize) -> usize) -> Result<Vec<usize>> {
    let all: BTreeSet<usize> = sets.flatten().collect();
    for &a in &all {
        for &b in &all {
            if !all.contains(&mul(a, b)) {
                return Err(Error::NotClosed(a, b));
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// Builds `SΩ` with product `(γ, δ)(γ', δ') = (γ·γ', δ'·δ)` and checks closure,
/// local inversity, the idempotents and the biorder against `E_Ω`.
pub fn cxn_semigroup(omega: &CrossConnection) -> Result<CxnSemigroup> {
    let chi = omega.verify_chi()?;
    if let Some(f) = chi.failures.first() {
        return Err(Error::AxiomViolation(f.clone()));
    }
    let (cc, dd) = (omega.c(), omega.d());
    let (cs, ds) = (omega.c_cones(), omega.d_cones());
    let gamma_hat = union_closed(
        cc.objects().flat_map(|c| dd.objects().map(move |d| omega.gamma_set(c, d).to_vec())),
        |a, b| cs.mul(a, b),
    )?;
    let delta_hat = union_closed(
        cc.objects().flat_map(|c| dd.objects().map(move |d| omega.delta_set(c, d).to_vec())),
        |a, b| ds.mul(a, b),
    )?;

    let pairs: Vec<(usize, usize)> = chi.tables.values().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = pairs.len();
    let mut table = Vec::with_capacity(n * n);
    for &(g1, d1) in &pairs {
        for (j, &(g2, d2)) in pairs.iter().enumerate() {
            let product = (cs.mul(g1, g2), ds.mul(d2, d1));
            match index.get(&product) {
                Some(&k) => table.push(k),
                None => return Err(Error::NotClosed(index[&(g1, d1)], j)),
            }
        }
    }
    let labels = pairs
        .iter()
        .map(|&(g, d)| format!("({},{})", cs.semigroup.label(g), ds.semigroup.label(d)))
        .collect();
    let semigroup = FiniteSemigroup::from_fn(n, |a, b| table[a * n + b])?.with_labels(labels)?;
    if !is_locally_inverse(&semigroup)?.holds {
        return Err(Error::NotLocallyInverse);
    }

    let projections_onto = |coord: fn(&(usize, usize)) -> usize, hat: &[usize]| {
        let image: BTreeSet<usize> = pairs.iter().map(coord).collect();
        image.into_iter().eq(hat.iter().copied())
    };
    if !projections_onto(|p| p.0, &gamma_hat) || !projections_onto(|p| p.1, &delta_hat) {
        return Err(Error::InternalDisagreement("SΩ is not a subdirect product"));
    }

    let mut idempotent_labels = BTreeMap::new();
    for &(c, d) in &omega.e_omega {
        let pair = (omega.gamma_cd[&(c, d)], omega.delta_cd[&(c, d)]);
        let i = *index.get(&pair).ok_or(Error::InternalDisagreement("idempotent pair is not linked"))?;
        if idempotent_labels.insert(i, (c, d)).is_some() {
            return Err(Error::InternalDisagreement("two pairs of E_Ω share an idempotent"));
        }
    }
    if semigroup.idempotents() != idempotent_labels.keys().copied().collect::<Vec<_>>() {
        return Err(Error::InternalDisagreement("idempotents of SΩ and E_Ω"));
    }
    for (&x, &(c, d)) in &idempotent_labels {
        for (&y, &(c1, d1)) in &idempotent_labels {
            let left = semigroup.mul(x, y) == x;
            let right = semigroup.mul(y, x) == x;
            if left != cc.le(c, c1) || right != dd.le(d, d1) {
                return Err(Error::InternalDisagreement("biorder of E_Ω"));
            }
        }
    }
    Ok(CxnSemigroup { pairs, semigroup, gamma_hat, delta_hat, idempotent_labels, naturality_squares: chi.squares })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebuildReport {
    pub e_omega: usize,
    pub order: usize,
    /// `SΩ` with pair labels.
    pub rebuilt: FiniteSemigroup,
    /// `S → SΩ`, when one exists.
    pub isomorphism: Option<Vec<usize>>,
    pub left_categories_isomorphic: bool,
    pub right_categories_isomorphic: bool,
    pub pseudo_semilattice: bool,
    pub naturality_squares: usize,
    pub failures: Vec<String>,
}

impl RebuildReport {
    pub fn holds(&self) -> bool {
        self.isomorphism.is_some()
            && self.left_categories_isomorphic
            && self.right_categories_isomorphic
            && self.pseudo_semilattice
            && self.failures.is_empty()
    }
}

/// Runs `S → ΩS → SΩ` and compares the result with `S`.
pub fn rebuild_check(s: &FiniteSemigroup) -> Result<RebuildReport> {
    rebuild_check_bounded(s, DEFAULT_CONE_BOUND)
}

pub fn rebuild_check_bounded(s: &FiniteSemigroup, bound: usize) -> Result<RebuildReport> {
    let cx = canonical_cxn_bounded(s, bound)?;
    let so = cxn_semigroup(&cx.omega)?;
    let mut failures = Vec::new();
    let isomorphism = find_isomorphism(s, &so.semigroup)?;
    if isomorphism.is_none() {
        failures.push(format!("SΩ has {} elements and is not isomorphic to S", so.len()));
    }
    let l = left_ideal_category(&so.semigroup)?;
    let r = right_ideal_category(&so.semigroup)?;
    let left_categories_isomorphic = find_category_isomorphism(&l.cat, &cx.left.cat).is_some();
    let right_categories_isomorphic = find_category_isomorphism(&r.cat, &cx.right.cat).is_some();
    if !left_categories_isomorphic {
        failures.push(String::from("𝕃(SΩ) is not isomorphic to 𝕃(S)"));
    }
    if !right_categories_isomorphic {
        failures.push(String::from("ℝ(SΩ) is not isomorphic to ℝ(S)"));
    }
    let verdict = is_locally_inverse(&so.semigroup)?;
    let pseudo_semilattice = verdict.condition_witnesses.get(1).is_some_and(Option::is_none)
        && verdict.condition_witnesses.get(2).is_some_and(Option::is_none);
    if !pseudo_semilattice {
        failures.push(format!("E_Ω is not a pseudo-semilattice: {:?}", verdict.witness));
    }
    Ok(RebuildReport {
        e_omega: cx.omega.e_omega.len(),
        order: so.len(),
        rebuilt: so.semigroup,
        isomorphism,
        left_categories_isomorphic,
        right_categories_isomorphic,
        pseudo_semilattice,
        naturality_squares: so.naturality_squares,
        failures,
    })
}
