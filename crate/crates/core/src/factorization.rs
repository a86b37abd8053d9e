//! The comprehensive factorization systems: final functors against discrete
//! fibrations and, dually, initial functors against discrete opfibrations.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::catalog;
use crate::comma::{coelements, elements, pi0, pullback_over, slice, ComponentsPartition};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, ArrId, Bound, FinCategory, FinFunctor, ObjId, TableBuilder};
use crate::sets::{Copresheaf, Presheaf};

/// Objects `(q, alpha : x -> f q)` of `x\f`, in lexicographic order, with
/// their components.
fn upper_components(f: &FinFunctor, x: ObjId) -> (Vec<(ObjId, ArrId)>, ComponentsPartition) {
    let (p, t) = (f.source(), f.target());
    let objects: Vec<(ObjId, ArrId)> =
        p.objects().flat_map(|q| t.hom(x, f.obj(q)).iter().map(move |&a| (q, a))).collect();
    let index: HashMap<(ObjId, ArrId), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut edges = Vec::new();
    for (i, &(q, alpha)) in objects.iter().enumerate() {
        for u in p.arrows_from(q) {
            edges.push((i, index[&(p.cod(u), t.compose(f.arr(u), alpha))]));
        }
    }
    let parts = ComponentsPartition::from_edges(objects.len(), edges);
    (objects, parts)
}

/// Objects `(q, alpha : f q -> x)` of `f/x` with their components.
fn lower_components(f: &FinFunctor, x: ObjId) -> (Vec<(ObjId, ArrId)>, ComponentsPartition) {
    let (p, t) = (f.source(), f.target());
    let objects: Vec<(ObjId, ArrId)> =
        p.objects().flat_map(|q| t.hom(f.obj(q), x).iter().map(move |&a| (q, a))).collect();
    let index: HashMap<(ObjId, ArrId), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut edges = Vec::new();
    for (i, &(q, alpha)) in objects.iter().enumerate() {
        for u in p.arrows_into(q) {
            edges.push((index[&(p.dom(u), t.compose(alpha, f.arr(u)))], i));
        }
    }
    let parts = ComponentsPartition::from_edges(objects.len(), edges);
    (objects, parts)
}

/// `x\f` is connected for every object `x` of the target.
pub fn is_final(f: &FinFunctor) -> bool {
    f.target().objects().all(|x| upper_components(f, x).1.size == 1)
}

/// `f/x` is connected for every object `x` of the target.
pub fn is_initial(f: &FinFunctor) -> bool {
    f.target().objects().all(|x| lower_components(f, x).1.size == 1)
}

/// Every arrow `a : x' -> x` has exactly one lift ending at each object over `x`.
pub fn is_discrete_fibration(f: &FinFunctor) -> bool {
    let (a, x) = (f.source(), f.target());
    a.objects().all(|b| {
        let mut count = vec![0usize; x.num_arrows()];
        for g in a.arrows_into(b) {
            count[f.arr(g)] += 1;
        }
        x.arrows_into(f.obj(b)).all(|arr| count[arr] == 1)
    })
}

pub fn is_discrete_opfibration(f: &FinFunctor) -> bool {
    is_discrete_fibration(&f.opposite())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorizationKind {
    /// Final followed by a discrete fibration.
    Em,
    /// Initial followed by a discrete opfibration.
    EmPrime,
}

/// The set-valued functor classified by the right factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reflected {
    Down(Presheaf),
    Up(Copresheaf),
}

/// `p = m . e` with `e : P -> A` and `m : A -> X`.
#[derive(Clone, Debug)]
pub struct FactorizationPair {
    pub kind: FactorizationKind,
    pub original: FinFunctor,
    pub e: FinFunctor,
    pub m: FinFunctor,
    pub reflected: Reflected,
}

impl FactorizationPair {
    pub fn middle(&self) -> &Arc<FinCategory> {
        self.e.target()
    }

    pub fn presheaf(&self) -> Option<&Presheaf> {
        match &self.reflected {
            Reflected::Down(m) => Some(m),
            Reflected::Up(_) => None,
        }
    }

    pub fn copresheaf(&self) -> Option<&Copresheaf> {
        match &self.reflected {
            Reflected::Up(n) => Some(n),
            Reflected::Down(_) => None,
        }
    }

    /// `m . e = p` and the class conditions on both legs.
    pub fn holds(&self) -> bool {
        let composite = self.m.after(&self.e).map(|c| c == self.original).unwrap_or(false);
        composite
            && match self.kind {
                FactorizationKind::Em => is_final(&self.e) && is_discrete_fibration(&self.m),
                FactorizationKind::EmPrime => is_initial(&self.e) && is_discrete_opfibration(&self.m),
            }
    }
}

/// Reflection of `p : P -> X` into discrete fibrations: the presheaf
/// `x |-> pi0(x\p)`, acting by precomposition.
pub fn em_factorize(p: &FinFunctor) -> FactorizationPair {
    let (src, x) = (p.source(), p.target());
    let data: Vec<_> = x.objects().map(|o| upper_components(p, o)).collect();
    let lookup: Vec<HashMap<(ObjId, ArrId), usize>> = data
        .iter()
        .map(|(objs, parts)| objs.iter().enumerate().map(|(i, &o)| (o, parts.class_of[i])).collect())
        .collect();
    let fibers: Vec<Vec<String>> = data
        .iter()
        .map(|(objs, parts)| {
            parts
                .representatives
                .iter()
                .map(|&r| format!("({},{})", x.arrow_name(objs[r].1), src.object_name(objs[r].0)))
                .collect()
        })
        .collect();
    let action: Vec<Vec<usize>> = x
        .arrows()
        .map(|f| {
            let (d, c) = (x.dom(f), x.cod(f));
            let (objs, parts) = &data[c];
            parts
                .representatives
                .iter()
                .map(|&r| {
                    let (q, alpha) = objs[r];
                    lookup[d][&(q, x.compose(alpha, f))]
                })
                .collect()
        })
        .collect();
    let m = Presheaf::new_unchecked(format!("down({})", src.name()), x.clone(), fibers, action);
    let el = elements(&m);
    let class_of_id = |q: ObjId| lookup[p.obj(q)][&(q, x.id(p.obj(q)))];
    let e = FinFunctor::new_unchecked(
        src.clone(),
        el.category.clone(),
        src.objects().map(|q| el.object_of(p.obj(q), class_of_id(q))).collect(),
        src.arrows().map(|u| el.arrow_of(p.arr(u), class_of_id(src.cod(u)))).collect(),
    );
    FactorizationPair { kind: FactorizationKind::Em, original: p.clone(), e, m: el.projection, reflected: Reflected::Down(m) }
}

/// Reflection into discrete opfibrations, by duality.
pub fn em_prime_factorize(p: &FinFunctor) -> FactorizationPair {
    let dual = em_factorize(&p.opposite());
    let Reflected::Down(m) = dual.reflected else { unreachable!("em gives a presheaf") };
    let n = m.dual().with_base(p.target()).with_name(format!("up({})", p.source().name()));
    let coel = coelements(&n);
    let e_op = dual.e.opposite();
    let e = FinFunctor::new_unchecked(
        p.source().clone(),
        coel.category.clone(),
        e_op.obj_map().to_vec(),
        e_op.arr_map().to_vec(),
    );
    FactorizationPair { kind: FactorizationKind::EmPrime, original: p.clone(), e, m: coel.projection, reflected: Reflected::Up(n) }
}

/// All isomorphisms `phi : A -> A'` over the base with `m' phi = m`, where
/// `m'` is a discrete fibration or opfibration.
pub fn isos_over(m: &FinFunctor, m2: &FinFunctor) -> Vec<FinFunctor> {
    let (a, a2) = (m.source(), m2.source());
    if a.num_objects() != a2.num_objects() || a.num_arrows() != a2.num_arrows() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut obj_map = vec![usize::MAX; a.num_objects()];
    let mut used = vec![false; a2.num_objects()];
    fn rec(
        k: usize,
        m: &FinFunctor,
        m2: &FinFunctor,
        obj_map: &mut Vec<ObjId>,
        used: &mut Vec<bool>,
        out: &mut Vec<FinFunctor>,
    ) {
        let (a, a2) = (m.source(), m2.source());
        if k == a.num_objects() {
            let mut arr_map = Vec::with_capacity(a.num_arrows());
            for g in a.arrows() {
                let lift = a2
                    .hom(obj_map[a.dom(g)], obj_map[a.cod(g)])
                    .iter()
                    .copied()
                    .find(|&h| m2.arr(h) == m.arr(g));
                match lift {
                    Some(h) => arr_map.push(h),
                    None => return,
                }
            }
            if let Ok(phi) = FinFunctor::new(a.clone(), a2.clone(), obj_map.clone(), arr_map) {
                if phi.is_isomorphism() {
                    out.push(phi);
                }
            }
            return;
        }
        for b in a2.objects() {
            if !used[b] && m2.obj(b) == m.obj(k) {
                used[b] = true;
                obj_map[k] = b;
                rec(k + 1, m, m2, obj_map, used, out);
                used[b] = false;
            }
        }
    }
    rec(0, m, m2, &mut obj_map, &mut used, &mut out);
    out
}

/// An isomorphism of middle objects commuting with both legs, if any.
pub fn factorizations_isomorphic(x: &FactorizationPair, y: &FactorizationPair) -> Option<FinFunctor> {
    isos_over(&x.m, &y.m)
        .into_iter()
        .find(|phi| phi.after(&x.e).map(|c| c == y.e).unwrap_or(false))
}

/// Every commuting square from `f : A -> B` to `g : C -> D` has exactly one
/// diagonal `B -> C`.
pub fn orthogonal(f: &FinFunctor, g: &FinFunctor, bound: Bound) -> Result<bool> {
    Ok(orthogonality_witness(f, g, bound)?.is_none())
}

/// A square `(u, v)` whose number of diagonals is not one, with that number.
pub fn orthogonality_witness(
    f: &FinFunctor,
    g: &FinFunctor,
    bound: Bound,
) -> Result<Option<(FinFunctor, FinFunctor, usize)>> {
    let tops = enumerate_functors(f.source(), g.source(), bound)?;
    let bottoms = enumerate_functors(f.target(), g.target(), bound)?;
    let diagonals = enumerate_functors(f.target(), g.source(), bound)?;
    let gd: Vec<FinFunctor> = diagonals.iter().map(|d| g.after(d).expect("composable")).collect();
    let df: Vec<FinFunctor> = diagonals.iter().map(|d| d.after(f).expect("composable")).collect();
    for u in &tops {
        let gu = g.after(u)?;
        for v in &bottoms {
            if v.after(f)? != gu {
                continue;
            }
            let count = (0..diagonals.len()).filter(|&i| df[i] == *u && gd[i] == *v).count();
            if count != 1 {
                return Ok(Some((u.clone(), v.clone(), count)));
            }
        }
    }
    Ok(None)
}

/// Orthogonality of two arrows inside one category.
pub fn orthogonal_arrows(cat: &FinCategory, f: ArrId, g: ArrId) -> bool {
    let (a, b, c, d) = (cat.dom(f), cat.cod(f), cat.dom(g), cat.cod(g));
    cat.hom(a, c).iter().all(|&u| {
        cat.hom(b, d).iter().all(|&v| {
            cat.compose(g, u) != cat.compose(v, f)
                || cat
                    .hom(b, c)
                    .iter()
                    .filter(|&&w| cat.compose(w, f) == u && cat.compose(g, w) == v)
                    .count()
                    == 1
        })
    })
}

/// For an adjunction `l -| r`, checks `l f _|_ g` iff `f _|_ r g` over all
/// arrows. The adjunction itself is verified through universal units.
pub fn adjunction_transfer_check(l: &FinFunctor, r: &FinFunctor) -> Result<bool> {
    let (c, d) = (l.source(), l.target());
    if !Arc::ptr_eq(r.source(), d) && **r.source() != **d || **r.target() != **c {
        return Err(Error::PreconditionFailed("functors are not opposed".into()));
    }
    for x in c.objects() {
        let universal = c.hom(x, r.obj(l.obj(x))).iter().any(|&eta| {
            d.objects().all(|y| {
                let mut images: Vec<ArrId> = d.hom(l.obj(x), y).iter().map(|&g| c.compose(r.arr(g), eta)).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == d.hom(l.obj(x), y).len() && images.len() == c.hom(x, r.obj(y)).len()
            })
        });
        if !universal {
            return Err(Error::PreconditionFailed(format!("no universal unit at `{}`", c.object_name(x))));
        }
    }
    Ok(c.arrows().all(|f| d.arrows().all(|g| orthogonal_arrows(d, l.arr(f), g) == orthogonal_arrows(c, f, r.arr(g)))))
}

/// Counts of global sections of `m` and of `e^* m`, and whether restriction
/// along `e` is a bijection between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionsCheck {
    pub sections: usize,
    pub pulled_sections: usize,
    pub bijective: bool,
}

pub fn sections_bijection_check(e: &FinFunctor, m: &Presheaf) -> Result<SectionsCheck> {
    let pulled = m.restrict(e)?;
    let sections = m.sections();
    let pulled_sections = pulled.sections();
    let mut images: Vec<Vec<usize>> =
        sections.iter().map(|s| e.source().objects().map(|q| s[e.obj(q)]).collect()).collect();
    images.sort();
    images.dedup();
    let bijective = images.len() == sections.len() && images.len() == pulled_sections.len();
    Ok(SectionsCheck { sections: sections.len(), pulled_sections: pulled_sections.len(), bijective })
}

/// The interval category of factorizations `z` of `alpha = gamma beta`, with
/// its projection `(z, beta, gamma) |-> z`.
pub fn interval_category(cat: &Arc<FinCategory>, alpha: ArrId) -> FinFunctor {
    let (y, y2) = (cat.dom(alpha), cat.cod(alpha));
    let mut objects = Vec::new();
    for z in cat.objects() {
        for &beta in cat.hom(y, z) {
            for &gamma in cat.hom(z, y2) {
                if cat.compose(gamma, beta) == alpha {
                    objects.push((z, beta, gamma));
                }
            }
        }
    }
    let mut tb: TableBuilder<(usize, usize, ArrId)> = TableBuilder::new();
    for &(_, beta, gamma) in &objects {
        tb.add_object(format!("({},{})", cat.arrow_name(beta), cat.arrow_name(gamma)));
    }
    let mut arr_map = Vec::new();
    for (i, &(z, beta, gamma)) in objects.iter().enumerate() {
        for (j, &(z2, beta2, gamma2)) in objects.iter().enumerate() {
            for &delta in cat.hom(z, z2) {
                if cat.compose(delta, beta) == beta2 && cat.compose(gamma2, delta) == gamma {
                    tb.add_arrow((i, j, delta), cat.arrow_name(delta).to_string(), i, j);
                    arr_map.push(delta);
                    if i == j && cat.is_identity(delta) {
                        tb.set_identity(i, &(i, j, delta));
                    }
                }
            }
        }
    }
    let name = format!("[{}]", cat.arrow_name(alpha));
    let interval = Arc::new(tb.finish(name, |&(_, k, d2), &(i, _, d)| (i, k, cat.compose(d2, d))));
    FinFunctor::new_unchecked(interval, cat.clone(), objects.iter().map(|o| o.0).collect(), arr_map)
}

/// Outcome of the absolute density test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub dense: bool,
    /// An arrow whose interval pulls back to a disconnected category.
    pub failing_arrow: Option<ArrId>,
    /// An object at which local finality fails.
    pub failing_object: Option<ObjId>,
}

/// Decides absolute density by connectedness of every pulled-back interval,
/// cross-checked against local finality.
pub fn is_absolutely_dense(f: &FinFunctor) -> Result<Density> {
    let y = f.target();
    let failing_arrow = y.arrows().find(|&alpha| {
        let interval = interval_category(y, alpha);
        let pb = pullback_over(f, &interval).expect("shared codomain");
        pi0(&pb.apex).size != 1
    });
    let failing_object = y.objects().find(|&o| {
        let s = slice(y, o);
        let pb = pullback_over(f, &s.left_proj).expect("shared codomain");
        !is_final(&pb.right_proj)
    });
    if failing_arrow.is_some() != failing_object.is_some() {
        return Err(Error::CriteriaDisagree(format!(
            "`{}`: interval criterion {}, local finality {}",
            f.describe(),
            failing_arrow.is_none(),
            failing_object.is_none()
        )));
    }
    Ok(Density { dense: failing_arrow.is_none(), failing_arrow, failing_object })
}

/// A cocone under `p` with vertex `x`: `legs[q] : p q -> x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub p: FinFunctor,
    pub x: ObjId,
    pub legs: Vec<ArrId>,
}

/// All cocones under `p` with vertex `x`.
pub fn cocones(p: &FinFunctor, x: ObjId) -> Vec<Vec<ArrId>> {
    let src = p.source();
    let n = src.num_objects();
    let mut checks: Vec<Vec<ArrId>> = vec![Vec::new(); n];
    for u in src.non_identity_arrows() {
        checks[src.dom(u).max(src.cod(u))].push(u);
    }
    let mut out = Vec::new();
    let mut legs = vec![0; n];
    fn rec(k: usize, p: &FinFunctor, x: ObjId, checks: &[Vec<ArrId>], legs: &mut Vec<ArrId>, out: &mut Vec<Vec<ArrId>>) {
        let (src, t) = (p.source(), p.target());
        if k == legs.len() {
            out.push(legs.clone());
            return;
        }
        for &h in t.hom(p.obj(k), x) {
            legs[k] = h;
            if checks[k].iter().all(|&u| t.compose(legs[src.cod(u)], p.arr(u)) == legs[src.dom(u)]) {
                rec(k + 1, p, x, checks, legs, out);
            }
        }
    }
    rec(0, p, x, &checks, &mut legs, &mut out);
    out
}

impl Cone {
    pub fn new(p: FinFunctor, x: ObjId, legs: Vec<ArrId>) -> Result<Self> {
        let (src, t) = (p.source(), p.target());
        let typed = legs.len() == src.num_objects()
            && src.objects().all(|q| t.dom(legs[q]) == p.obj(q) && t.cod(legs[q]) == x);
        let natural = typed && src.arrows().all(|u| t.compose(legs[src.cod(u)], p.arr(u)) == legs[src.dom(u)]);
        if !natural {
            return Err(Error::PreconditionFailed("legs do not form a cocone".into()));
        }
        Ok(Cone { p, x, legs })
    }

    /// Composition with the legs is a bijection `X(x, y) -> Cocone(p, y)`.
    pub fn is_colimiting(&self) -> bool {
        let t = self.p.target();
        t.objects().all(|y| {
            let homs = t.hom(self.x, y);
            let mut images: Vec<Vec<ArrId>> =
                homs.iter().map(|&h| self.legs.iter().map(|&l| t.compose(h, l)).collect()).collect();
            images.sort();
            images.dedup();
            images.len() == homs.len() && homs.len() == cocones(&self.p, y).len()
        })
    }

    /// The cone as a functor `P -> X/x`.
    pub fn as_slice_functor(&self) -> FinFunctor {
        let (src, t) = (self.p.source(), self.p.target());
        let s = slice(t, self.x);
        let obj_map: Vec<ObjId> =
            src.objects().map(|q| s.find(self.p.obj(q), 0, self.legs[q]).expect("leg is a slice object")).collect();
        let arr_map: Vec<ArrId> = src
            .arrows()
            .map(|u| {
                *s.apex
                    .hom(obj_map[src.dom(u)], obj_map[src.cod(u)])
                    .iter()
                    .find(|&&a| s.left_proj.arr(a) == self.p.arr(u))
                    .expect("naturality gives a slice arrow")
            })
            .collect();
        FinFunctor::new_unchecked(src.clone(), s.apex.clone(), obj_map, arr_map)
    }

    /// Image of the cone under a functor out of `X`.
    pub fn push(&self, f: &FinFunctor) -> Result<Cone> {
        Ok(Cone { p: f.after(&self.p)?, x: f.obj(self.x), legs: self.legs.iter().map(|&l| f.arr(l)).collect() })
    }
}

/// A colimit of `p` computed inside its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    /// Colimiting cone at the least colimit object.
    pub cone: Cone,
    /// Every object carrying a colimiting cone.
    pub objects: Vec<ObjId>,
}

pub fn colimit_in(p: &FinFunctor, bound: Bound) -> Result<Option<Colimit>> {
    bound.check(p.source())?;
    let mut found: Option<Cone> = None;
    let mut objects = Vec::new();
    for x in p.target().objects() {
        let colimiting = cocones(p, x)
            .into_iter()
            .map(|legs| Cone { p: p.clone(), x, legs })
            .find(Cone::is_colimiting);
        if let Some(cone) = colimiting {
            objects.push(x);
            found.get_or_insert(cone);
        }
    }
    Ok(found.map(|cone| Colimit { cone, objects }))
}

/// A cone is absolute when, seen as a functor into the slice, it is final.
/// A positive answer is backed by checking that the cone is colimiting and
/// that every functor out of `X` into a catalog category preserves it.
pub fn is_absolute_colimit_cone(cone: &Cone, bound: Bound) -> Result<bool> {
    if !is_final(&cone.as_slice_functor()) {
        return Ok(false);
    }
    if !cone.is_colimiting() {
        return Err(Error::AbsoluteColimitViolated("final cone is not colimiting".into()));
    }
    let x = cone.p.target();
    let mut targets = catalog::all();
    targets.push(x.clone());
    let failures: Vec<Result<Option<String>>> = targets
        .par_iter()
        .map(|z| {
            for f in enumerate_functors(x, z, bound)? {
                if !cone.push(&f)?.is_colimiting() {
                    return Ok(Some(f.describe()));
                }
            }
            Ok(None)
        })
        .collect();
    for r in failures {
        if let Some(witness) = r? {
            return Err(Error::AbsoluteColimitViolated(format!("not preserved by {witness}")));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<FinCategory> {
        catalog::two()
    }

    #[test]
    fn finality_examples() {
        let t = two();
        assert!(is_final(&FinFunctor::pick(&t, 1)));
        assert!(!is_final(&FinFunctor::pick(&t, 0)));
        assert!(is_initial(&FinFunctor::pick(&t, 0)));
        assert!(!is_initial(&FinFunctor::pick(&t, 1)));
        for c in catalog::all() {
            let id = FinFunctor::identity(&c);
            assert!(is_final(&id) && is_initial(&id) && is_discrete_fibration(&id));
        }
        assert!(!is_discrete_fibration(&FinFunctor::to_terminal(&t)));
    }

    #[test]
    fn final_agrees_with_comma_construction() {
        // fast components against the literal comma category
        for c in catalog::all() {
            for x in c.objects() {
                let f = FinFunctor::pick(&c, x);
                for y in c.objects() {
                    let literal = pi0(&crate::comma::upper_comma(&f, y).apex).size;
                    assert_eq!(literal, upper_components(&f, y).1.size);
                    let literal = pi0(&crate::comma::lower_comma(&f, y).apex).size;
                    assert_eq!(literal, lower_components(&f, y).1.size);
                }
            }
        }
    }

    #[test]
    fn factorize_point_of_two() {
        let t = two();
        let fp = em_factorize(&FinFunctor::pick(&t, 0));
        assert!(fp.holds());
        let m = fp.presheaf().unwrap();
        assert_eq!((m.fiber_len(0), m.fiber_len(1)), (1, 0));
        assert!(m.find_isomorphism(&Presheaf::representable(&t, 0)).unwrap().is_some());
        let fp = em_prime_factorize(&FinFunctor::pick(&t, 0));
        assert!(fp.holds());
        let n = fp.copresheaf().unwrap();
        assert_eq!((n.fiber_len(0), n.fiber_len(1)), (1, 1));
    }

    #[test]
    fn factorize_identity_and_fold() {
        for c in catalog::all() {
            let fp = em_factorize(&FinFunctor::identity(&c));
            assert!(fp.holds());
            assert!(fp.e.is_isomorphism());
            assert!(em_prime_factorize(&FinFunctor::identity(&c)).holds());
        }
        let idem = catalog::idem();
        let pair = catalog::pair();
        let fold = FinFunctor::constant(&pair, &idem, 0);
        let fp = em_factorize(&fold);
        assert!(fp.holds());
        // pair has no arrows to join the four objects (id, a), (e, a), (id, b), (e, b)
        assert_eq!(fp.presheaf().unwrap().fiber_len(0), 4);
        assert!(em_prime_factorize(&fold).holds());
    }

    #[test]
    fn factorization_is_unique_up_to_iso() {
        let idem = catalog::idem();
        let fold = FinFunctor::constant(&catalog::pair(), &idem, 0);
        let a = em_factorize(&fold);
        assert!(factorizations_isomorphic(&a, &a.clone()).is_some());
    }

    #[test]
    fn orthogonality_examples() {
        let t = two();
        let bound = Bound::default();
        let s1 = FinFunctor::pick(&t, 1);
        for c in [catalog::two(), catalog::idem(), catalog::span()] {
            for m in crate::sets::presheaves_up_to(&c, 1) {
                assert!(orthogonal(&s1, &elements(&m).projection, bound).unwrap());
            }
        }
        // s : 1 -> 2 against the point over 0
        let s0 = FinFunctor::pick(&t, 0);
        let w = orthogonality_witness(&s0, &elements(&Presheaf::representable(&t, 0)).projection, bound).unwrap();
        assert!(w.is_some());
        let iso = FinFunctor::identity(&t);
        assert!(orthogonal(&iso, &FinFunctor::pick(&t, 0), bound).unwrap());
    }

    #[test]
    fn sections_examples() {
        let t = two();
        let r = sections_bijection_check(&FinFunctor::pick(&t, 1), &Presheaf::representable(&t, 1)).unwrap();
        assert_eq!((r.sections, r.pulled_sections, r.bijective), (1, 1, true));
        let r = sections_bijection_check(&FinFunctor::pick(&t, 0), &Presheaf::representable(&t, 0)).unwrap();
        assert_eq!((r.sections, r.pulled_sections, r.bijective), (0, 1, false));
        let r = sections_bijection_check(&FinFunctor::identity(&t), &Presheaf::terminal(&t)).unwrap();
        assert!(r.bijective);
    }

    #[test]
    fn density_examples() {
        let t = two();
        assert!(is_absolutely_dense(&FinFunctor::identity(&t)).unwrap().dense);
        assert!(!is_absolutely_dense(&FinFunctor::pick(&t, 1)).unwrap().dense);
        let fold = FinFunctor::to_terminal(&catalog::pair());
        assert!(!is_absolutely_dense(&fold).unwrap().dense);
        // the inclusion of a group's underlying category is dense over itself
        let z2 = catalog::z2();
        assert!(is_absolutely_dense(&FinFunctor::identity(&z2)).unwrap().dense);
    }

    #[test]
    fn colimit_examples() {
        let t = two();
        let bound = Bound::default();
        let c = colimit_in(&FinFunctor::identity(&t), bound).unwrap().unwrap();
        assert_eq!(c.cone.x, 1);
        let c = colimit_in(&FinFunctor::from_empty(&t), bound).unwrap().unwrap();
        assert_eq!(c.cone.x, 0);
        let idem = catalog::idem();
        assert!(colimit_in(&FinFunctor::identity(&idem), bound).unwrap().is_none());
        let c = colimit_in(&FinFunctor::pick(&idem, 0), bound).unwrap().unwrap();
        assert_eq!(c.objects, vec![0]);
    }

    #[test]
    fn absolute_cones() {
        let t = two();
        let bound = Bound::default();
        let point = Cone::new(FinFunctor::pick(&t, 0), 0, vec![t.id(0)]).unwrap();
        assert!(is_absolute_colimit_cone(&point, bound).unwrap());
        let top = colimit_in(&FinFunctor::identity(&t), bound).unwrap().unwrap().cone;
        assert!(is_absolute_colimit_cone(&top, bound).unwrap());
        let pair = catalog::pair();
        let p = FinFunctor::new(pair, t.clone(), vec![0, 1], vec![t.id(0), t.id(1)]).unwrap();
        let a = t.arrow_by_name("a").unwrap();
        let cone = Cone::new(p, 1, vec![a, t.id(1)]).unwrap();
        assert!(cone.is_colimiting());
        assert!(!is_absolute_colimit_cone(&cone, bound).unwrap());
    }

    #[test]
    fn transfer_along_poset_adjunction() {
        // the reflection of `two` onto its top element
        let t = two();
        let l = FinFunctor::to_terminal(&t);
        let r = FinFunctor::pick(&t, 1);
        assert!(adjunction_transfer_check(&l, &r).unwrap());
        let wrong = FinFunctor::pick(&t, 0);
        assert!(adjunction_transfer_check(&l, &wrong).is_err());
    }
}
