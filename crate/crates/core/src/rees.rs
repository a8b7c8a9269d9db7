//! Rees matrix semigroups `M°(G; I, L; P)` and the wreath model of their cones.

use alloc::borrow::Cow;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{
    left_ideal_category, verify_functor, Functor, IdealCategory, MorphismSpec, ObjectSpec, Side, SoCategory,
};
use crate::cones::{cone_semigroup, principal_cone, Cone, DEFAULT_CONE_BOUND};
use crate::cxn::{canonical_cxn_bounded, cxn_semigroup, CrossConnection, CxnSemigroup, NormalDual, Transformation};
use crate::error::{Error, MatrixLine, Result};
use crate::green::green_data;
use crate::iso::find_isomorphism;
use crate::semigroup::FiniteSemigroup;

/// Sandwich data. `matrix[ℓ][i]` is `p_{ℓi}`: a group element or `None` for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesSpec {
    pub group: FiniteSemigroup,
    pub i_size: usize,
    pub l_size: usize,
    pub matrix: Vec<Vec<Option<usize>>>,
}

/// First all-zero row, then first all-zero column, if any.
pub fn check_matrix_regular(matrix: &[Vec<Option<usize>>]) -> Option<MatrixLine> {
    if let Some(r) = matrix.iter().position(|row| row.iter().all(Option::is_none)) {
        return Some(MatrixLine::Row(r));
    }
    let cols = matrix.first().map_or(0, Vec::len);
    (0..cols)
        .find(|&c| matrix.iter().all(|row| row[c].is_none()))
        .map(MatrixLine::Column)
}

impl ReesSpec {
    pub fn new(
        group: FiniteSemigroup,
        i_size: usize,
        l_size: usize,
        matrix: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let spec = ReesSpec { group, i_size, l_size, matrix };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.group.is_group() {
            return Err(Error::NotAGroup);
        }
        if self.i_size == 0 || self.l_size == 0 {
            return Err(Error::Precondition(String::from("index sets must be non-empty")));
        }
        if self.matrix.len() != self.l_size {
            return Err(Error::NotSquare { rows: self.l_size, row: self.matrix.len(), len: 0 });
        }
        for (row, entries) in self.matrix.iter().enumerate() {
            if entries.len() != self.i_size {
                return Err(Error::NotSquare { rows: self.i_size, row, len: entries.len() });
            }
            for (col, entry) in entries.iter().enumerate() {
                if let Some(g) = *entry {
                    if g >= self.group.order() {
                        return Err(Error::OutOfRange { row, col, value: g });
                    }
                }
            }
        }
        match check_matrix_regular(&self.matrix) {
            Some(line) => Err(Error::IrregularMatrix(line)),
            None => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        self.i_size * self.group.order() * self.l_size + 1
    }

    /// Index of `(i, g, ℓ)`; the zero is index 0.
    pub fn element(&self, i: usize, g: usize, l: usize) -> usize {
        1 + (i * self.group.order() + g) * self.l_size + l
    }

    /// Inverse of [`ReesSpec::element`]; `None` for the zero.
    pub fn decode(&self, x: usize) -> Option<(usize, usize, usize)> {
        if x == 0 {
            return None;
        }
        let y = x - 1;
        let l = y % self.l_size;
        let rest = y / self.l_size;
        Some((rest / self.group.order(), rest % self.group.order(), l))
    }

    /// `p_{ℓi}`.
    pub fn entry(&self, l: usize, i: usize) -> Option<usize> {
        self.matrix[l][i]
    }
}

/// Builds `M°(G; I, L; P)` with the zero at index 0.
pub fn rees_semigroup(spec: &ReesSpec) -> Result<FiniteSemigroup> {
    spec.validate()?;
    let g = &spec.group;
    let s = FiniteSemigroup::from_fn(spec.order(), |x, y| match (spec.decode(x), spec.decode(y)) {
        (Some((i, a, l)), Some((j, b, k))) => match spec.entry(l, j) {
            Some(p) => spec.element(i, g.product(&[a, p, b]), k),
            None => 0,
        },
        _ => 0,
    })?;
    let mut labels = vec![String::from("0")];
    for x in 1..spec.order() {
        let (i, a, l) = spec.decode(x).unwrap();
        labels.push(format!("({},{},{})", i + 1, g.label(a), l + 1));
    }
    s.with_labels(labels)
}

/// `T = (G°)^L × L` with its ideal `U` of zero tuples and the quotient `T/U`.
#[derive(Debug, Clone)]
pub struct WreathModel {
    pub group_order: usize,
    pub l_size: usize,
    pub t_semigroup: FiniteSemigroup,
    pub u_ideal: Vec<usize>,
    pub quotient: FiniteSemigroup,
    /// Index in `quotient` of each element of `t_semigroup`.
    pub quotient_map: Vec<usize>,
}

impl WreathModel {
    /// Entries in `G°` are `None` (zero) or a group element.
    pub fn decode(&self, x: usize) -> (Vec<Option<usize>>, usize) {
        let base = self.group_order + 1;
        let k = x % self.l_size;
        let mut code = x / self.l_size;
        let mut tuple = vec![None; self.l_size];
        for slot in tuple.iter_mut() {
            let digit = code % base;
            code /= base;
            *slot = if digit == 0 { None } else { Some(digit - 1) };
        }
        (tuple, k)
    }

    pub fn encode(&self, tuple: &[Option<usize>], k: usize) -> usize {
        let base = self.group_order + 1;
        let code = tuple.iter().rev().fold(0, |acc, e| acc * base + e.map_or(0, |g| g + 1));
        code * self.l_size + k
    }
}

/// The wreath product with `γ∗δ = ((g_α h_ℓ)_α ; k)` and its Rees quotient.
pub fn wreath_quotient(group: &FiniteSemigroup, l_size: usize, bound: usize) -> Result<WreathModel> {
    if !group.is_group() {
        return Err(Error::NotAGroup);
    }
    let base = group.order() + 1;
    let size = base.checked_pow(l_size as u32).and_then(|p| p.checked_mul(l_size)).unwrap_or(usize::MAX);
    if size > bound {
        return Err(Error::SizeGuard { bound, actual: size });
    }
    let mut model = WreathModel {
        group_order: group.order(),
        l_size,
        t_semigroup: FiniteSemigroup::from_fn(1, |_, _| 0)?,
        u_ideal: Vec::new(),
        quotient: FiniteSemigroup::from_fn(1, |_, _| 0)?,
        quotient_map: Vec::new(),
    };
    let decoded: Vec<(Vec<Option<usize>>, usize)> = (0..size).map(|x| model.decode(x)).collect();
    let t = FiniteSemigroup::from_fn(size, |x, y| {
        let (g, l) = &decoded[x];
        let (h, k) = &decoded[y];
        let product: Vec<Option<usize>> = g
            .iter()
            .map(|ga| match (ga, h[*l]) {
                (Some(a), Some(b)) => Some(group.mul(*a, b)),
                _ => None,
            })
            .collect();
        model.encode(&product, *k)
    })?;
    let u_ideal: Vec<usize> = (0..size).filter(|&x| decoded[x].0.iter().all(Option::is_none)).collect();
    for &u in &u_ideal {
        for x in 0..size {
            if !u_ideal.contains(&t.mul(u, x)) || !u_ideal.contains(&t.mul(x, u)) {
                return Err(Error::NotClosed(u, x));
            }
        }
    }
    // zero of the quotient first, then surviving elements in index order
    let mut quotient_map = vec![0; size];
    let mut next = 1;
    for x in 0..size {
        if !u_ideal.contains(&x) {
            quotient_map[x] = next;
            next += 1;
        }
    }
    let mut rep = vec![0; next];
    for x in 0..size {
        rep[quotient_map[x]] = x;
    }
    let q = FiniteSemigroup::from_fn(next, |a, b| if a == 0 || b == 0 { 0 } else { quotient_map[t.mul(rep[a], rep[b])] })?;
    model.t_semigroup = t;
    model.u_ideal = u_ideal;
    model.quotient = q;
    model.quotient_map = quotient_map;
    Ok(model)
}


/// Coordinates on an ideal category of `M°(G; I, L; P)`: a nonzero object of
/// `𝕃` is some `ℓ ∈ L` (of `ℝ`, some `i ∈ I`) and a morphism between nonzero
/// objects is `ρ_g` (resp. `λ_g`) with `g ∈ G°`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesCoordinates {
    pub side: Side,
    /// `ℓ` (or `i`) of each object; `None` for the zero object.
    pub index: Vec<Option<usize>>,
    /// Object of each `ℓ` (or `i`).
    pub object: Vec<usize>,
    pub zero_object: usize,
    /// Group coordinate of each morphism; `None` for zero maps.
    pub coordinate: Vec<Option<usize>>,
}

impl ReesCoordinates {
    /// Tuple `(g_α)` and apex of a cone, `None` for the cone with apex `0`.
    pub fn cone_tuple(&self, cone: &Cone) -> Option<(Vec<Option<usize>>, usize)> {
        let apex = self.index[cone.apex()]?;
        Some((self.object.iter().map(|&c| self.coordinate[cone.component(c)]).collect(), apex))
    }
}

/// Reads off `ℓ`, `i` and the group coordinates. On the left, `ρ_g` sends
/// `(i, a, ℓ₁)` to `(i, ag, ℓ₂)`; on the right `λ_g` sends `(i₁, a, ℓ)` to
/// `(i₂, ga, ℓ)`.
pub fn rees_coordinates(spec: &ReesSpec, ideal: &IdealCategory) -> Result<ReesCoordinates> {
    let side = ideal.side();
    let one = spec.group.identity().ok_or(Error::NotAGroup)?;
    let cat = &ideal.cat;
    let count = if side == Side::Right { spec.i_size } else { spec.l_size };
    let mut index = Vec::with_capacity(cat.object_count());
    let mut object = vec![usize::MAX; count];
    let mut zero_object = None;
    for c in cat.objects() {
        match spec.decode(ideal.idempotent(c)) {
            None => {
                zero_object = Some(c);
                index.push(None);
            }
            Some((i, _, l)) => {
                let k = if side == Side::Right { i } else { l };
                if object[k] != usize::MAX {
                    return Err(Error::InternalDisagreement("two objects share a Rees index"));
                }
                object[k] = c;
                index.push(Some(k));
            }
        }
    }
    let zero_object = zero_object.ok_or(Error::InternalDisagreement("no zero object"))?;
    if object.contains(&usize::MAX) {
        return Err(Error::InternalDisagreement("a Rees index has no object"));
    }
    let representative = |k: usize| if side == Side::Right { spec.element(k, one, 0) } else { spec.element(0, one, k) };
    let mut coordinate = Vec::with_capacity(cat.morphism_count());
    for m in cat.morphisms() {
        let (Some(a), Some(b)) = (index[cat.dom(m)], index[cat.cod(m)]) else {
            coordinate.push(None);
            continue;
        };
        let value = match spec.decode(ideal.apply(m, representative(a))) {
            None => None,
            Some((i, g, l)) => {
                let expected = if side == Side::Right { (b, 0) } else { (0, b) };
                if (i, l) != expected {
                    return Err(Error::InternalDisagreement("morphism leaves the expected ideal"));
                }
                Some(g)
            }
        };
        coordinate.push(value);
    }
    Ok(ReesCoordinates { side, index, object, zero_object, coordinate })
}

fn times(group: &FiniteSemigroup, a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(group.mul(a?, b?))
}

/// The category on `L°` (or `I°`) with morphisms `ρ(ℓ₁, g, ℓ₂)`, built
/// straight from `G°`. Object 0 is the zero object and object `k + 1` is `k`.
pub fn labelled_category(spec: &ReesSpec, side: Side) -> Result<SoCategory> {
    let count = if side == Side::Right { spec.i_size } else { spec.l_size };
    let letter = if side == Side::Right { "i" } else { "ℓ" };
    let prefix = if side == Side::Right { "λ" } else { "ρ" };
    let g = &spec.group;
    let mut objects = vec![ObjectSpec { label: String::from("0"), payload: None }];
    objects.extend((0..count).map(|k| ObjectSpec { label: format!("{letter}{}", k + 1), payload: None }));
    let coefficients: Vec<Option<usize>> = core::iter::once(None).chain(g.elements().map(Some)).collect();
    let mut morphisms = Vec::new();
    let mut index = BTreeMap::new();
    for a in 0..=count {
        for b in 0..=count {
            let here: &[Option<usize>] = if a == 0 || b == 0 { &[None] } else { &coefficients };
            for &x in here {
                index.insert((a, x, b), morphisms.len());
                let name = x.map_or(Cow::Borrowed("0"), |x| g.label(x));
                morphisms.push(MorphismSpec {
                    dom: a,
                    cod: b,
                    label: format!("{prefix}({},{name},{})", objects[a].label, objects[b].label),
                    payload: x,
                });
            }
        }
    }
    let ends: Vec<(usize, usize, Option<usize>)> = morphisms.iter().map(|m| (m.dom, m.cod, m.payload)).collect();
    let compose = |x: usize, y: usize| {
        let ((a, _, p), (_, b, q)) = (ends[x], ends[y]);
        let r = if side == Side::Right { times(g, q, p) } else { times(g, p, q) };
        index.get(&(a, r, b)).copied()
    };
    let inclusions: Vec<usize> = (1..=count).map(|b| index[&(0, None, b)]).collect();
    SoCategory::new(Side::Abstract, objects, morphisms, compose, &inclusions)
}

/// The functor from the generic ideal category onto [`labelled_category`].
pub fn labelling_functor(coords: &ReesCoordinates, cat: &SoCategory, labelled: &SoCategory) -> Result<Functor> {
    let lookup: BTreeMap<(usize, Option<usize>, usize), usize> = labelled
        .morphisms()
        .map(|m| ((labelled.dom(m), labelled.morphism(m).payload, labelled.cod(m)), m))
        .collect();
    let objects: Vec<usize> = coords.index.iter().map(|k| k.map_or(0, |k| k + 1)).collect();
    let mut morphisms = Vec::with_capacity(cat.morphism_count());
    for m in cat.morphisms() {
        let key = (objects[cat.dom(m)], coords.coordinate[m], objects[cat.cod(m)]);
        morphisms.push(*lookup.get(&key).ok_or(Error::InternalDisagreement("morphism has no labelled counterpart"))?);
    }
    Ok(Functor { objects, morphisms })
}

/// `v·h` for the left side (a column scaled on the right), `h·v` for the right.
fn scaled(group: &FiniteSemigroup, side: Side, v: &[Option<usize>], h: Option<usize>) -> Vec<Option<usize>> {
    v.iter()
        .map(|&x| if side == Side::Right { times(group, h, x) } else { times(group, x, h) })
        .collect()
}

/// The `h ∈ G°` with `t = v·h` (or `h·v`), if any. `v` must be nonzero.
fn coefficient(group: &FiniteSemigroup, side: Side, v: &[Option<usize>], t: &[Option<usize>]) -> Option<Option<usize>> {
    let inverses = group.group_inverses()?;
    let (k, p) = v.iter().enumerate().find_map(|(k, x)| x.map(|p| (k, p)))?;
    let h = if side == Side::Right { times(group, t[k], Some(inverses[p])) } else { times(group, Some(inverses[p]), t[k]) };
    (scaled(group, side, v, h) == t).then_some(h)
}

/// The set `gG°` (or `G°g`) of a tuple.
fn tuple_class(group: &FiniteSemigroup, side: Side, t: &[Option<usize>]) -> BTreeSet<Vec<Option<usize>>> {
    core::iter::once(None)
        .chain(group.elements().map(Some))
        .map(|h| scaled(group, side, t, h))
        .collect()
}

/// Number of distinct sets `gG°` over all `g ∈ (G°)^L`.
pub fn tuple_class_count(group: &FiniteSemigroup, len: usize, side: Side) -> usize {
    let base = group.order() + 1;
    let mut classes = BTreeSet::new();
    for mut code in 0..base.pow(len as u32) {
        let mut t = Vec::with_capacity(len);
        for _ in 0..len {
            t.push(if code % base == 0 { None } else { Some(code % base - 1) });
            code /= base;
        }
        classes.insert(tuple_class(group, side, &t));
    }
    classes.len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesConeReport {
    pub cones: usize,
    pub quotient: usize,
    /// `(|G°|^|L| − 1)·|L| + 1`.
    pub formula: usize,
    /// Cone ↦ element of the wreath quotient, read off from coordinates.
    pub wreath_map: Vec<usize>,
    pub wreath_map_is_isomorphism: bool,
    pub isomorphism: Option<Vec<usize>>,
    pub labelled_category_isomorphic: bool,
    pub principal_cones_match: bool,
    pub r_classes: usize,
    pub tuple_classes: usize,
    pub r_classes_match_tuples: bool,
    pub failures: Vec<String>,
}

impl ReesConeReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `Ĉ(𝕃(M°))` with `(G° ≀ L)/({0} ≀ L)`.
pub fn rees_cone_iso(spec: &ReesSpec) -> Result<ReesConeReport> {
    rees_cone_iso_bounded(spec, DEFAULT_CONE_BOUND)
}

pub fn rees_cone_iso_bounded(spec: &ReesSpec, bound: usize) -> Result<ReesConeReport> {
    let s = rees_semigroup(spec)?;
    let left = left_ideal_category(&s)?;
    let coords = rees_coordinates(spec, &left)?;
    let cs = cone_semigroup(&left.cat, bound)?;
    let w = wreath_quotient(&spec.group, spec.l_size, bound)?;
    let g = &spec.group;
    let mut failures = Vec::new();

    let formula = (g.order() + 1)
        .checked_pow(spec.l_size as u32)
        .map(|p| (p - 1) * spec.l_size + 1)
        .ok_or(Error::SizeGuard { bound, actual: usize::MAX })?;
    if cs.len() != formula || w.quotient.order() != formula {
        failures.push(format!("{} cones, quotient of order {}, formula {formula}", cs.len(), w.quotient.order()));
    }

    let labelled = labelled_category(spec, Side::Left)?;
    let functor = labelling_functor(&coords, &left.cat, &labelled)?;
    let labelled_category_isomorphic =
        functor.is_bijective(&labelled) && verify_functor(&left.cat, &labelled, &functor).is_ok();
    if !labelled_category_isomorphic {
        failures.push(String::from("𝕃(S) differs from the category on L°"));
    }

    let wreath_map: Vec<usize> = cs
        .cones
        .iter()
        .map(|c| coords.cone_tuple(c).map_or(0, |(t, l)| w.quotient_map[w.encode(&t, l)]))
        .collect();
    let mut seen = vec![false; w.quotient.order()];
    let bijective = wreath_map.len() == w.quotient.order() && wreath_map.iter().all(|&x| !core::mem::replace(&mut seen[x], true));
    let wreath_map_is_isomorphism = bijective && cs.semigroup.is_homomorphism(&w.quotient, &wreath_map);
    if !wreath_map_is_isomorphism {
        failures.push(String::from("cone tuples do not multiply as the wreath product"));
    }
    let isomorphism = find_isomorphism(&cs.semigroup, &w.quotient)?;
    if isomorphism.is_none() {
        failures.push(String::from("no isomorphism onto the wreath quotient"));
    }

    let mut principal_cones_match = true;
    for x in s.elements() {
        let got = coords.cone_tuple(&principal_cone(&left, x)?);
        let expected = spec.decode(x).map(|(i, a, l)| {
            let column: Vec<Option<usize>> = (0..spec.l_size).map(|k| spec.entry(k, i)).collect();
            (scaled(g, Side::Left, &column, Some(a)), l)
        });
        if got != expected {
            principal_cones_match = false;
            failures.push(format!("principal cone of {} is not the translated column", s.label(x)));
        }
    }

    let green = green_data(&cs.semigroup);
    let classes: Vec<BTreeSet<Vec<Option<usize>>>> = cs
        .cones
        .iter()
        .map(|c| {
            let t = coords.cone_tuple(c).map_or_else(|| vec![None; spec.l_size], |(t, _)| t);
            tuple_class(g, Side::Left, &t)
        })
        .collect();
    let mut r_classes_match_tuples = true;
    for a in 0..cs.len() {
        for b in 0..cs.len() {
            if green.r_related(a, b) != (classes[a] == classes[b]) {
                r_classes_match_tuples = false;
            }
        }
    }
    let r_classes = (0..cs.len()).filter(|&a| (0..a).all(|b| !green.r_related(a, b))).count();
    let tuple_classes = tuple_class_count(g, spec.l_size, Side::Left);
    if !r_classes_match_tuples || r_classes != tuple_classes {
        r_classes_match_tuples = false;
        failures.push(format!("{r_classes} R-classes against {tuple_classes} sets gG°"));
    }

    Ok(ReesConeReport {
        cones: cs.len(),
        quotient: w.quotient.order(),
        formula,
        wreath_map,
        wreath_map_is_isomorphism,
        isomorphism,
        labelled_category_isomorphic,
        principal_cones_match,
        r_classes,
        tuple_classes,
        r_classes_match_tuples,
        failures,
    })
}

/// `Γ_P` (`side = Right`, into `𝕃(S)*`) or `Δ_P` (`side = Left`, into `ℝ(S)*`)
/// built from the columns (rows) of `P`.
fn matrix_functor(
    spec: &ReesSpec,
    src: &IdealCategory,
    dual: &NormalDual,
    dual_coords: &ReesCoordinates,
) -> Result<Functor> {
    let g = &spec.group;
    let src_coords = rees_coordinates(spec, src)?;
    // the cones live on the other side
    let side = dual_coords.side;
    let cs = &dual.cones;
    let mut by_tuple = BTreeMap::new();
    let mut zero_cone = None;
    for (k, c) in cs.cones.iter().enumerate() {
        match dual_coords.cone_tuple(c) {
            Some(key) => {
                by_tuple.insert(key, k);
            }
            None => zero_cone = Some(k),
        }
    }
    let zero_cone = zero_cone.ok_or(Error::InternalDisagreement("no cone with apex 0"))?;
    let line = |k: usize| -> Vec<Option<usize>> {
        if side == Side::Left {
            (0..spec.l_size).map(|l| spec.entry(l, k)).collect()
        } else {
            spec.matrix[k].clone()
        }
    };

    let mut class_of_object = Vec::with_capacity(dual.functors.len());
    for h in &dual.functors {
        let sample = h.sets.iter().flatten().find(|&&x| x != zero_cone);
        class_of_object.push(sample.map(|&x| {
            let (t, _) = dual_coords.cone_tuple(cs.cone(x)).expect("nonzero cone");
            tuple_class(g, side, &t)
        }));
    }
    let mut objects = Vec::with_capacity(src.cat.object_count());
    for d in src.cat.objects() {
        let wanted = src_coords.index[d].map(|k| tuple_class(g, side, &line(k)));
        let found: Vec<usize> = (0..dual.functors.len()).filter(|&j| class_of_object[j] == wanted).collect();
        match found.as_slice() {
            [j] => objects.push(*j),
            _ => return Err(Error::InternalDisagreement("no unique dual object for a line of P")),
        }
    }

    let mut morphisms = Vec::with_capacity(src.cat.morphism_count());
    for m in src.cat.morphisms() {
        let (d1, d2) = (src.cat.dom(m), src.cat.cod(m));
        let (dom, cod) = (objects[d1], objects[d2]);
        let x = src_coords.coordinate[m];
        let mut components = Vec::with_capacity(dual.cat.object_count());
        for c in cs.base.objects() {
            let mut row = Vec::new();
            for &gamma in &dual.functors[dom].sets[c] {
                let image = match (dual_coords.cone_tuple(cs.cone(gamma)), src_coords.index[d1], src_coords.index[d2]) {
                    (Some((t, apex)), Some(k1), Some(k2)) => {
                        let h = coefficient(g, side, &line(k1), &t)
                            .ok_or(Error::InternalDisagreement("cone outside the class of its H-functor"))?;
                        let k = if side == Side::Left { times(g, x, h) } else { times(g, h, x) };
                        match k {
                            None => zero_cone,
                            Some(_) => *by_tuple
                                .get(&(scaled(g, side, &line(k2), k), apex))
                                .ok_or(Error::InternalDisagreement("scaled line is not a cone"))?,
                        }
                    }
                    _ => zero_cone,
                };
                row.push(image);
            }
            components.push(row);
        }
        let t = Transformation { dom, cod, components };
        morphisms.push(dual.transformation_index(&t).ok_or(Error::InternalDisagreement("matrix transformation is not in the dual"))?);
    }
    Ok(Functor { objects, morphisms })
}

#[derive(Debug, Clone)]
pub struct MatrixCxn {
    /// `(𝕃(S), ℝ(S); Γ_P, Δ_P)`.
    pub omega: CrossConnection,
    pub semigroup: FiniteSemigroup,
    pub gamma_matches_canonical: bool,
    pub delta_matches_canonical: bool,
    /// `M° → SΩ`, when one exists.
    pub isomorphism: Option<Vec<usize>>,
    pub cxn_semigroup: CxnSemigroup,
    pub failures: Vec<String>,
}

impl MatrixCxn {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds `Γ_P`, `Δ_P` from the sandwich matrix, compares them with `Γ_S`,
/// `Δ_S` and rebuilds the semigroup from them.
pub fn matrix_cxn(spec: &ReesSpec) -> Result<MatrixCxn> {
    matrix_cxn_bounded(spec, DEFAULT_CONE_BOUND)
}

pub fn matrix_cxn_bounded(spec: &ReesSpec, bound: usize) -> Result<MatrixCxn> {
    let s = rees_semigroup(spec)?;
    let canonical = canonical_cxn_bounded(&s, bound)?;
    let (left, right) = (&canonical.left, &canonical.right);
    let c_dual = canonical.omega.c_dual.clone();
    let d_dual = canonical.omega.d_dual.clone();
    let left_coords = rees_coordinates(spec, left)?;
    let right_coords = rees_coordinates(spec, right)?;
    let gamma = matrix_functor(spec, right, &c_dual, &left_coords)?;
    let delta = matrix_functor(spec, left, &d_dual, &right_coords)?;
    let mut failures = Vec::new();
    let gamma_matches_canonical = gamma == canonical.omega.gamma;
    let delta_matches_canonical = delta == canonical.omega.delta;
    if !gamma_matches_canonical {
        failures.push(String::from("Γ_P differs from Γ_S"));
    }
    if !delta_matches_canonical {
        failures.push(String::from("Δ_P differs from Δ_S"));
    }
    let omega = CrossConnection::new(c_dual, d_dual, gamma, delta)?;
    let so = cxn_semigroup(&omega)?;
    let isomorphism = find_isomorphism(&s, &so.semigroup)?;
    if isomorphism.is_none() {
        failures.push(format!("SΩ has {} elements and is not isomorphic to M°", so.len()));
    }
    Ok(MatrixCxn {
        omega,
        semigroup: s,
        gamma_matches_canonical,
        delta_matches_canonical,
        isomorphism,
        cxn_semigroup: so,
        failures,
    })
}
