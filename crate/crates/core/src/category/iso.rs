//! Functors between finite categories and an inclusion-preserving
//! isomorphism search.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::SoCategory;

/// Object and morphism maps of a functor, as image vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

pub type CategoryIsomorphism = Functor;

impl Functor {
    pub fn is_bijective(&self, target: &SoCategory) -> bool {
        let bij = |map: &[usize], size: usize| {
            let mut seen = vec![false; size];
            map.len() == size && map.iter().all(|&x| x < size && !core::mem::replace(&mut seen[x], true))
        };
        bij(&self.objects, target.object_count()) && bij(&self.morphisms, target.morphism_count())
    }
}

/// Checks typing, identities, composition and inclusion preservation.
pub fn verify_functor(src: &SoCategory, tgt: &SoCategory, f: &Functor) -> Result<(), String> {
    if f.objects.len() != src.object_count() || f.morphisms.len() != src.morphism_count() {
        return Err(String::from("map sizes do not match the source category"));
    }
    for m in src.morphisms() {
        let fm = f.morphisms[m];
        if fm >= tgt.morphism_count()
            || tgt.dom(fm) != f.objects[src.dom(m)]
            || tgt.cod(fm) != f.objects[src.cod(m)]
        {
            return Err(format!("morphism {m} is sent to a morphism of the wrong type"));
        }
        if src.is_inclusion(m) && !tgt.is_inclusion(fm) {
            return Err(format!("inclusion {m} is not sent to an inclusion"));
        }
    }
    for c in src.objects() {
        if f.morphisms[src.identity(c)] != tgt.identity(f.objects[c]) {
            return Err(format!("identity of object {c} is not preserved"));
        }
    }
    for (x, y, xy) in src.composition_triples() {
        if tgt.compose(f.morphisms[x], f.morphisms[y]) != f.morphisms[xy] {
            return Err(format!("composite of {x} and {y} is not preserved"));
        }
    }
    Ok(())
}

/// Whether `f` is an isomorphism whose inverse also preserves inclusions.
pub fn is_inclusion_isomorphism(src: &SoCategory, tgt: &SoCategory, f: &Functor) -> bool {
    verify_functor(src, tgt, f).is_ok()
        && f.is_bijective(tgt)
        && src.morphisms().all(|m| src.is_inclusion(m) == tgt.is_inclusion(f.morphisms[m]))
}

fn morphism_signature(c: &SoCategory, m: usize) -> (bool, bool, bool, bool, bool, bool, usize) {
    (
        c.is_identity(m),
        c.is_inclusion(m),
        c.is_iso(m),
        c.is_epi(m),
        c.is_mono(m),
        c.is_retraction(m),
        c.factorisations(m).len(),
    )
}

struct Search<'a> {
    a: &'a SoCategory,
    b: &'a SoCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
    used_objects: Vec<bool>,
    used_morphisms: Vec<bool>,
}

impl Search<'_> {
    fn objects_ok(&self, x: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let fx = self.objects[x];
        (0..=x).all(|y| {
            let fy = self.objects[y];
            a.le(x, y) == b.le(fx, fy)
                && a.le(y, x) == b.le(fy, fx)
                && a.hom(x, y).len() == b.hom(fx, fy).len()
                && a.hom(y, x).len() == b.hom(fy, fx).len()
        })
    }

    fn assign_objects(&mut self, x: usize) -> bool {
        if x == self.a.object_count() {
            return self.assign_morphisms(0);
        }
        for fx in self.b.objects() {
            if self.used_objects[fx] {
                continue;
            }
            self.objects[x] = fx;
            if !self.objects_ok(x) {
                continue;
            }
            self.used_objects[fx] = true;
            if self.assign_objects(x + 1) {
                return true;
            }
            self.used_objects[fx] = false;
        }
        false
    }

    fn consistent(&self, m: usize) -> bool {
        let a = self.a;
        let fm = self.morphisms[m];
        for g in 0..=m {
            let fg = self.morphisms[g];
            for (x, y, fx, fy) in [(m, g, fm, fg), (g, m, fg, fm)] {
                if let Some(xy) = a.try_compose(x, y) {
                    if xy <= m && self.b.compose(fx, fy) != self.morphisms[xy] {
                        return false;
                    }
                }
            }
        }
        // composites landing on m from earlier pairs
        for x in 0..m {
            for y in 0..m {
                if a.try_compose(x, y) == Some(m)
                    && self.b.compose(self.morphisms[x], self.morphisms[y]) != fm
                {
                    return false;
                }
            }
        }
        true
    }

    fn assign_morphisms(&mut self, m: usize) -> bool {
        if m == self.a.morphism_count() {
            return true;
        }
        let (a, b) = (self.a, self.b);
        let sig = morphism_signature(a, m);
        let (x, y) = (self.objects[a.dom(m)], self.objects[a.cod(m)]);
        for &fm in b.hom(x, y) {
            if self.used_morphisms[fm] || morphism_signature(b, fm) != sig {
                continue;
            }
            self.morphisms[m] = fm;
            if !self.consistent(m) {
                continue;
            }
            self.used_morphisms[fm] = true;
            if self.assign_morphisms(m + 1) {
                return true;
            }
            self.used_morphisms[fm] = false;
        }
        false
    }
}

/// An inclusion-preserving isomorphism `a → b`, if any.
pub fn find_category_isomorphism(a: &SoCategory, b: &SoCategory) -> Option<Functor> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let mut s = Search {
        a,
        b,
        objects: vec![0; a.object_count()],
        morphisms: vec![0; a.morphism_count()],
        used_objects: vec![false; b.object_count()],
        used_morphisms: vec![false; b.morphism_count()],
    };
    if !s.assign_objects(0) {
        return None;
    }
    let f = Functor { objects: s.objects, morphisms: s.morphisms };
    debug_assert!(is_inclusion_isomorphism(a, b, &f));
    Some(f)
}
