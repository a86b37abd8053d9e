use std::sync::Arc;

use super::category::{ArrId, FinCategory, ObjId, TableBuilder};
use crate::catalog;
use crate::error::{Error, Result};

/// Same category, by pointer or by structure.
pub fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    arr_map: Vec<ArrId>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.arr_map == other.arr_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for FinFunctor {}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        arr_map: Vec<ArrId>,
    ) -> Result<Self> {
        let f = FinFunctor { source, target, obj_map, arr_map };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        arr_map: Vec<ArrId>,
    ) -> Self {
        let f = FinFunctor { source, target, obj_map, arr_map };
        debug_assert_eq!(f.validate(), Ok(()));
        f
    }

    /// Exhaustive check of dom/cod, identity and composition preservation.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.num_objects() || self.arr_map.len() != s.num_arrows() {
            return Err(Error::InvalidFunctor("map sizes do not match the source".into()));
        }
        if self.obj_map.iter().any(|&y| y >= t.num_objects())
            || self.arr_map.iter().any(|&g| g >= t.num_arrows())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for f in s.arrows() {
            let g = self.arr_map[f];
            if t.dom(g) != self.obj_map[s.dom(f)] || t.cod(g) != self.obj_map[s.cod(f)] {
                return Err(Error::InvalidFunctor(format!(
                    "`{}` is sent to `{}` with the wrong endpoints",
                    s.arrow_name(f),
                    t.arrow_name(g)
                )));
            }
        }
        for x in s.objects() {
            if self.arr_map[s.id(x)] != t.id(self.obj_map[x]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` not preserved",
                    s.object_name(x)
                )));
            }
        }
        for f in s.arrows() {
            for g in s.arrows_from(s.cod(f)) {
                let lhs = self.arr_map[s.compose(g, f)];
                let rhs = t.compose(self.arr_map[g], self.arr_map[f]);
                if lhs != rhs {
                    return Err(Error::InvalidFunctor(format!(
                        "composite `{} . {}` not preserved",
                        s.arrow_name(g),
                        s.arrow_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }

    pub fn arr(&self, f: ArrId) -> ArrId {
        self.arr_map[f]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn arr_map(&self) -> &[ArrId] {
        &self.arr_map
    }

    pub fn identity(cat: &Arc<FinCategory>) -> Self {
        FinFunctor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.objects().collect(),
            arr_map: cat.arrows().collect(),
        }
    }

    /// The point `x : one -> X`.
    pub fn pick(cat: &Arc<FinCategory>, x: ObjId) -> Self {
        FinFunctor {
            source: catalog::one(),
            target: cat.clone(),
            obj_map: vec![x],
            arr_map: vec![cat.id(x)],
        }
    }

    /// The unique functor `X -> one`.
    pub fn to_terminal(cat: &Arc<FinCategory>) -> Self {
        FinFunctor {
            source: cat.clone(),
            target: catalog::one(),
            obj_map: vec![0; cat.num_objects()],
            arr_map: vec![0; cat.num_arrows()],
        }
    }

    /// The unique functor out of the empty category.
    pub fn from_empty(cat: &Arc<FinCategory>) -> Self {
        FinFunctor {
            source: catalog::empty(),
            target: cat.clone(),
            obj_map: Vec::new(),
            arr_map: Vec::new(),
        }
    }

    /// Functor from `source` that is constant at the object `x` of `target`.
    pub fn constant(source: &Arc<FinCategory>, target: &Arc<FinCategory>, x: ObjId) -> Self {
        FinFunctor {
            source: source.clone(),
            target: target.clone(),
            obj_map: vec![x; source.num_objects()],
            arr_map: vec![target.id(x); source.num_arrows()],
        }
    }

    /// Full subcategory inclusion.
    pub fn inclusion(sub: &Arc<FinCategory>, cat: &Arc<FinCategory>, objects: &[ObjId]) -> Result<Self> {
        let arr_map = sub
            .arrows()
            .map(|f| {
                let (d, c) = (objects[sub.dom(f)], objects[sub.cod(f)]);
                cat.hom(d, c)
                    .iter()
                    .copied()
                    .find(|&g| cat.arrow_name(g) == sub.arrow_name(f))
                    .ok_or_else(|| Error::InvalidFunctor(format!("no arrow `{}`", sub.arrow_name(f))))
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(sub.clone(), cat.clone(), objects.to_vec(), arr_map)
    }

    /// `self . first`.
    pub fn after(&self, first: &FinFunctor) -> Result<Self> {
        if !same_category(first.target(), &self.source) {
            return Err(Error::InvalidFunctor(format!(
                "cannot compose: `{}` is not `{}`",
                first.target().name(),
                self.source.name()
            )));
        }
        Ok(FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            arr_map: first.arr_map.iter().map(|&f| self.arr_map[f]).collect(),
        })
    }

    /// The same index data viewed between opposite categories.
    pub fn opposite(&self) -> Self {
        FinFunctor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            obj_map: self.obj_map.clone(),
            arr_map: self.arr_map.clone(),
        }
    }

    /// `self x other` between product categories.
    pub fn product(&self, other: &FinFunctor) -> Self {
        let source = Arc::new(self.source.product(&other.source));
        let target = Arc::new(self.target.product(&other.target));
        let (sn, tn) = (other.source.num_objects(), other.target.num_objects());
        let (sa, ta) = (other.source.num_arrows(), other.target.num_arrows());
        let mut obj_map = vec![0; source.num_objects()];
        for x in self.source.objects() {
            for y in other.source.objects() {
                obj_map[x * sn + y] = self.obj_map[x] * tn + other.obj_map[y];
            }
        }
        let mut arr_map = vec![0; source.num_arrows()];
        for f in self.source.arrows() {
            for g in other.source.arrows() {
                arr_map[f * sa + g] = self.arr_map[f] * ta + other.arr_map[g];
            }
        }
        FinFunctor::new_unchecked(source, target, obj_map, arr_map)
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.source, &self.target)
            && self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.arr_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Bijective on objects and on arrows.
    pub fn is_isomorphism(&self) -> bool {
        fn bijective(map: &[usize], n: usize) -> bool {
            if map.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }
        bijective(&self.obj_map, self.target.num_objects())
            && bijective(&self.arr_map, self.target.num_arrows())
    }

    /// Object assignment, for reports.
    pub fn describe(&self) -> String {
        let s = &self.source;
        let t = &self.target;
        let objs: Vec<String> = s
            .objects()
            .map(|x| format!("{}->{}", s.object_name(x), t.object_name(self.obj_map[x])))
            .collect();
        format!("{} -> {} [{}]", s.name(), t.name(), objs.join(", "))
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    source_functor: FinFunctor,
    target_functor: FinFunctor,
    components: Vec<ArrId>,
}

impl NatTrans {
    pub fn new(source_functor: FinFunctor, target_functor: FinFunctor, components: Vec<ArrId>) -> Result<Self> {
        if !same_category(source_functor.source(), target_functor.source())
            || !same_category(source_functor.target(), target_functor.target())
        {
            return Err(Error::InvalidNatTrans("functors are not parallel".into()));
        }
        let (c, d) = (source_functor.source().clone(), source_functor.target().clone());
        if components.len() != c.num_objects() {
            return Err(Error::InvalidNatTrans("one component per object required".into()));
        }
        for x in c.objects() {
            let a = components[x];
            if a >= d.num_arrows()
                || d.dom(a) != source_functor.obj(x)
                || d.cod(a) != target_functor.obj(x)
            {
                return Err(Error::InvalidNatTrans(format!(
                    "component at `{}` has the wrong type",
                    c.object_name(x)
                )));
            }
        }
        for f in c.arrows() {
            let (x, y) = (c.dom(f), c.cod(f));
            let lhs = d.compose(target_functor.arr(f), components[x]);
            let rhs = d.compose(components[y], source_functor.arr(f));
            if lhs != rhs {
                return Err(Error::InvalidNatTrans(format!(
                    "naturality fails at `{}`",
                    c.arrow_name(f)
                )));
            }
        }
        Ok(NatTrans { source_functor, target_functor, components })
    }

    pub fn component(&self, x: ObjId) -> ArrId {
        self.components[x]
    }

    pub fn components(&self) -> &[ArrId] {
        &self.components
    }

    pub fn source_functor(&self) -> &FinFunctor {
        &self.source_functor
    }

    pub fn target_functor(&self) -> &FinFunctor {
        &self.target_functor
    }

    pub fn is_isomorphism(&self) -> bool {
        let d = self.source_functor.target();
        self.components.iter().all(|&a| d.is_isomorphism(a))
    }
}

/// Size limits for exhaustive enumeration. Defaults: 4 objects, 12 arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub max_objects: usize,
    pub max_arrows: usize,
}

impl Default for Bound {
    fn default() -> Self {
        Bound { max_objects: 4, max_arrows: 12 }
    }
}

impl Bound {
    pub fn new(max_objects: usize, max_arrows: usize) -> Self {
        Bound { max_objects, max_arrows }
    }

    /// Parses `OBJECTS,ARROWS` (the `BKIT_BOUND` format).
    pub fn parse(text: &str) -> Option<Bound> {
        let (o, a) = text.split_once(',')?;
        Some(Bound { max_objects: o.trim().parse().ok()?, max_arrows: a.trim().parse().ok()? })
    }

    pub fn check(&self, cat: &FinCategory) -> Result<()> {
        if cat.num_objects() > self.max_objects || cat.num_arrows() > self.max_arrows {
            return Err(Error::BoundExceeded(format!(
                "`{}` has {} objects and {} arrows (bound {} / {})",
                cat.name(),
                cat.num_objects(),
                cat.num_arrows(),
                self.max_objects,
                self.max_arrows
            )));
        }
        Ok(())
    }
}

/// All functors `source -> target`, by backtracking with composition checks
/// scheduled at the last-assigned arrow of each composable triple.
pub fn enumerate_functors(
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    bound: Bound,
) -> Result<Vec<FinFunctor>> {
    bound.check(source)?;
    let s = &**source;
    let t = &**target;
    let free: Vec<ArrId> = s.non_identity_arrows().collect();
    let mut order = vec![usize::MAX; s.num_arrows()];
    for (k, &f) in free.iter().enumerate() {
        order[f] = k;
    }
    // (g, f, h = g.f) for composable pairs of non-identity arrows, keyed by the
    // position at which the last of the three becomes assigned.
    let mut checks: Vec<Vec<(ArrId, ArrId, ArrId)>> = vec![Vec::new(); free.len()];
    for &f in &free {
        for g in s.arrows_from(s.cod(f)) {
            if s.is_identity(g) {
                continue;
            }
            let h = s.compose(g, f);
            let last = order[g].max(order[f]).max(if s.is_identity(h) { 0 } else { order[h] });
            checks[last].push((g, f, h));
        }
    }

    let mut out = Vec::new();
    let mut obj_map = vec![0; s.num_objects()];
    let mut arr_map = vec![usize::MAX; s.num_arrows()];

    fn assign_arrows(
        k: usize,
        s: &FinCategory,
        t: &FinCategory,
        free: &[ArrId],
        checks: &[Vec<(ArrId, ArrId, ArrId)>],
        obj_map: &[ObjId],
        arr_map: &mut Vec<ArrId>,
        emit: &mut dyn FnMut(&[ArrId]),
    ) {
        if k == free.len() {
            emit(arr_map);
            return;
        }
        let f = free[k];
        let (d, c) = (obj_map[s.dom(f)], obj_map[s.cod(f)]);
        for &g in t.hom(d, c) {
            arr_map[f] = g;
            let ok = checks[k]
                .iter()
                .all(|&(g2, f2, h2)| arr_map[h2] == t.compose(arr_map[g2], arr_map[f2]));
            if ok {
                assign_arrows(k + 1, s, t, free, checks, obj_map, arr_map, emit);
            }
        }
        arr_map[f] = usize::MAX;
    }

    fn assign_objects(
        i: usize,
        s: &FinCategory,
        t: &FinCategory,
        obj_map: &mut Vec<ObjId>,
        visit: &mut dyn FnMut(&[ObjId]),
    ) {
        if i == s.num_objects() {
            visit(obj_map);
            return;
        }
        for y in t.objects() {
            obj_map[i] = y;
            // every arrow between assigned objects needs a candidate image
            let feasible = (0..=i).all(|j| {
                (s.hom(j, i).is_empty() || !t.hom(obj_map[j], y).is_empty())
                    && (s.hom(i, j).is_empty() || !t.hom(y, obj_map[j]).is_empty())
            });
            if feasible {
                assign_objects(i + 1, s, t, obj_map, visit);
            }
        }
    }

    assign_objects(0, s, t, &mut obj_map, &mut |objs: &[ObjId]| {
        for x in s.objects() {
            arr_map[s.id(x)] = t.id(objs[x]);
        }
        assign_arrows(0, s, t, &free, &checks, objs, &mut arr_map, &mut |arrs: &[ArrId]| {
            out.push(FinFunctor {
                source: source.clone(),
                target: target.clone(),
                obj_map: objs.to_vec(),
                arr_map: arrs.to_vec(),
            });
        });
    });
    debug_assert!(out.iter().all(|f| f.validate().is_ok()));
    Ok(out)
}

/// The discrete category on `n` objects `k0 .. k{n-1}`.
pub fn discrete(n: usize, name: impl Into<String>) -> FinCategory {
    let mut tb = TableBuilder::new();
    for i in 0..n {
        tb.add_object(format!("k{i}"));
        tb.add_arrow(i, format!("id_k{i}"), i, i);
        tb.set_identity(i, &i);
    }
    tb.finish(name.into(), |&g, _| g)
}
