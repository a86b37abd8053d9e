//! Comma categories, slices, categories of elements, pullbacks and components.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::catalog;
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, same_category, ArrId, Bound, FinCategory, FinFunctor, ObjId, TableBuilder};
use crate::sets::{Copresheaf, Presheaf};

/// Connected components, numbered in order of their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentsPartition {
    pub class_of: Vec<usize>,
    pub size: usize,
    /// Smallest member of each class.
    pub representatives: Vec<usize>,
}

impl ComponentsPartition {
    /// Partition of `0..n` generated by the given pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::<usize>::new(n);
        for (a, b) in edges {
            uf.union(a, b);
        }
        let mut class_of = vec![usize::MAX; n];
        let mut of_root = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if of_root[r] == usize::MAX {
                of_root[r] = representatives.len();
                representatives.push(v);
            }
            class_of[v] = of_root[r];
        }
        ComponentsPartition { class_of, size: representatives.len(), representatives }
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |&(_, &c)| c == class).map(|(v, _)| v)
    }
}

/// Connected components of the underlying undirected graph.
pub fn pi0(cat: &FinCategory) -> ComponentsPartition {
    ComponentsPartition::from_edges(cat.num_objects(), cat.arrows().map(|f| (cat.dom(f), cat.cod(f))))
}

fn check_codomains(f: &FinFunctor, g: &FinFunctor) -> Result<()> {
    if same_category(f.target(), g.target()) {
        Ok(())
    } else {
        Err(Error::CodomainMismatch(format!("`{}` vs `{}`", f.target().name(), g.target().name())))
    }
}

/// The comma category `f/g`: objects `(p, q, alpha : f p -> g q)`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub apex: Arc<FinCategory>,
    pub left_proj: FinFunctor,
    pub right_proj: FinFunctor,
    objects: Vec<(ObjId, ObjId, ArrId)>,
}

impl CommaCategory {
    pub fn object(&self, o: ObjId) -> (ObjId, ObjId, ArrId) {
        self.objects[o]
    }

    pub fn find(&self, p: ObjId, q: ObjId, alpha: ArrId) -> Option<ObjId> {
        self.objects.binary_search(&(p, q, alpha)).ok()
    }

    /// The arrow `alpha` of each object.
    pub fn alphas(&self) -> impl Iterator<Item = ArrId> + '_ {
        self.objects.iter().map(|o| o.2)
    }
}

pub fn comma(f: &FinFunctor, g: &FinFunctor) -> Result<CommaCategory> {
    let name = format!("({}/{})", f.source().name(), g.source().name());
    comma_named(f, g, name, |x, (p, q, alpha)| {
        format!(
            "({},{},{})",
            f.source().object_name(p),
            x.arrow_name(alpha),
            g.source().object_name(q)
        )
    })
}

fn comma_named(
    f: &FinFunctor,
    g: &FinFunctor,
    name: String,
    object_name: impl Fn(&FinCategory, (ObjId, ObjId, ArrId)) -> String,
) -> Result<CommaCategory> {
    check_codomains(f, g)?;
    let (a, b, x) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    for p in a.objects() {
        for q in b.objects() {
            for &alpha in x.hom(f.obj(p), g.obj(q)) {
                objects.push((p, q, alpha));
            }
        }
    }
    let mut tb: TableBuilder<(ObjId, ObjId, ArrId, ArrId)> = TableBuilder::new();
    for &o in &objects {
        tb.add_object(object_name(x, o));
    }
    let mut arrow_maps = (Vec::new(), Vec::new());
    for (i, &(p, q, alpha)) in objects.iter().enumerate() {
        for (j, &(p2, q2, alpha2)) in objects.iter().enumerate() {
            for &u in a.hom(p, p2) {
                for &v in b.hom(q, q2) {
                    if x.compose(g.arr(v), alpha) == x.compose(alpha2, f.arr(u)) {
                        let arrow_name = format!("({},{})", a.arrow_name(u), b.arrow_name(v));
                        tb.add_arrow((i, j, u, v), arrow_name, i, j);
                        arrow_maps.0.push(u);
                        arrow_maps.1.push(v);
                        if i == j && a.is_identity(u) && b.is_identity(v) {
                            tb.set_identity(i, &(i, j, u, v));
                        }
                    }
                }
            }
        }
    }
    let apex = Arc::new(tb.finish(name, |&(_, k, u2, v2), &(i, _, u, v)| (i, k, a.compose(u2, u), b.compose(v2, v))));
    let left_proj = FinFunctor::new_unchecked(
        apex.clone(),
        a.clone(),
        objects.iter().map(|o| o.0).collect(),
        arrow_maps.0,
    );
    let right_proj = FinFunctor::new_unchecked(
        apex.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        arrow_maps.1,
    );
    Ok(CommaCategory { apex, left_proj, right_proj, objects })
}

/// The slice `X/x = id/x`; objects are named by their arrow into `x`.
pub fn slice(cat: &Arc<FinCategory>, x: ObjId) -> CommaCategory {
    let name = format!("{}/{}", cat.name(), cat.object_name(x));
    comma_named(&FinFunctor::identity(cat), &FinFunctor::pick(cat, x), name, |c, o| c.arrow_name(o.2).to_string())
        .expect("shared codomain")
}

/// The coslice `x\X = x/id`.
pub fn coslice(cat: &Arc<FinCategory>, x: ObjId) -> CommaCategory {
    let name = format!("{}\\{}", cat.object_name(x), cat.name());
    comma_named(&FinFunctor::pick(cat, x), &FinFunctor::identity(cat), name, |c, o| c.arrow_name(o.2).to_string())
        .expect("shared codomain")
}

/// `f/y`: objects `(p, alpha : f p -> y)`.
pub fn lower_comma(f: &FinFunctor, y: ObjId) -> CommaCategory {
    let name = format!("{}/{}", f.source().name(), f.target().object_name(y));
    comma_named(f, &FinFunctor::pick(f.target(), y), name, |x, (p, _, alpha)| {
        format!("({},{})", f.source().object_name(p), x.arrow_name(alpha))
    })
    .expect("shared codomain")
}

/// `y\f`: objects `(p, alpha : y -> f p)`.
pub fn upper_comma(f: &FinFunctor, y: ObjId) -> CommaCategory {
    let name = format!("{}\\{}", f.target().object_name(y), f.source().name());
    comma_named(&FinFunctor::pick(f.target(), y), f, name, |x, (_, p, alpha)| {
        format!("({},{})", x.arrow_name(alpha), f.source().object_name(p))
    })
    .expect("shared codomain")
}

/// Category of elements together with its discrete fibration to the base.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Arc<FinCategory>,
    pub projection: FinFunctor,
    elements: Vec<(ObjId, usize)>,
    object_of: Vec<Vec<ObjId>>,
    arrow_of: Vec<Vec<ArrId>>,
}

impl ElementsCategory {
    /// The object `(x, a)`.
    pub fn object_of(&self, x: ObjId, a: usize) -> ObjId {
        self.object_of[x][a]
    }

    pub fn element(&self, o: ObjId) -> (ObjId, usize) {
        self.elements[o]
    }

    /// The arrow over `f` ending at the element `a` of the codomain fiber
    /// (starting there, for categories of coelements).
    pub fn arrow_of(&self, f: ArrId, a: usize) -> ArrId {
        self.arrow_of[f][a]
    }
}

fn element_table(
    base: &Arc<FinCategory>,
    fibers: &[Vec<String>],
    action: impl Fn(ArrId, usize) -> usize,
    name: String,
) -> ElementsCategory {
    let mut tb: TableBuilder<(ArrId, usize)> = TableBuilder::new();
    let mut elements = Vec::new();
    let mut object_of = Vec::new();
    for x in base.objects() {
        let mut row = Vec::new();
        for (a, token) in fibers[x].iter().enumerate() {
            row.push(tb.add_object(format!("{}:{}", base.object_name(x), token)));
            elements.push((x, a));
        }
        object_of.push(row);
    }
    let mut arr_map = Vec::new();
    let mut arrow_of = Vec::new();
    // arrow (f, a) : (x', m(f) a) -> (x, a) for f : x' -> x
    for f in base.arrows() {
        let (d, c) = (base.dom(f), base.cod(f));
        let mut row = Vec::new();
        for (a, token) in fibers[c].iter().enumerate() {
            let from = object_of[d][action(f, a)];
            let to = object_of[c][a];
            row.push(tb.add_arrow((f, a), format!("{}@{}", base.arrow_name(f), token), from, to));
            arr_map.push(f);
            if base.is_identity(f) {
                tb.set_identity(to, &(f, a));
            }
        }
        arrow_of.push(row);
    }
    let category = Arc::new(tb.finish(name, |&(g, b), &(f, _)| (base.compose(g, f), b)));
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        base.clone(),
        elements.iter().map(|e| e.0).collect(),
        arr_map,
    );
    ElementsCategory { category, projection, elements, object_of, arrow_of }
}

/// The category of elements of a presheaf: arrows `(x', m(f) a) -> (x, a)`.
pub fn elements(m: &Presheaf) -> ElementsCategory {
    element_table(m.base(), m.fibers(), |f, a| m.act(f, a), format!("el({})", m.name()))
}

/// Category of elements of a copresheaf: arrows `(x, b) -> (x', n(f) b)`.
pub fn coelements(n: &Copresheaf) -> ElementsCategory {
    let el = elements(&n.dual());
    let category = Arc::new(el.category.opposite().with_name(format!("coel({})", n.name())));
    let op = el.projection.opposite();
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        n.base().clone(),
        op.obj_map().to_vec(),
        op.arr_map().to_vec(),
    );
    ElementsCategory { category, projection, elements: el.elements, object_of: el.object_of, arrow_of: el.arrow_of }
}

/// Strict pullback `P x_X Q` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: Arc<FinCategory>,
    pub left_proj: FinFunctor,
    pub right_proj: FinFunctor,
}

pub fn pullback_over(p: &FinFunctor, q: &FinFunctor) -> Result<Pullback> {
    check_codomains(p, q)?;
    let (a, b) = (p.source(), q.source());
    let mut tb: TableBuilder<(ArrId, ArrId)> = TableBuilder::new();
    let mut index = vec![usize::MAX; a.num_objects() * b.num_objects()];
    let mut objs = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            if p.obj(x) == q.obj(y) {
                index[x * b.num_objects() + y] =
                    tb.add_object(format!("({},{})", a.object_name(x), b.object_name(y)));
                objs.push((x, y));
            }
        }
    }
    let mut arrs = Vec::new();
    for u in a.arrows() {
        for v in b.arrows() {
            if p.arr(u) != q.arr(v) {
                continue;
            }
            let from = index[a.dom(u) * b.num_objects() + b.dom(v)];
            let to = index[a.cod(u) * b.num_objects() + b.cod(v)];
            tb.add_arrow((u, v), format!("({},{})", a.arrow_name(u), b.arrow_name(v)), from, to);
            arrs.push((u, v));
            if a.is_identity(u) && b.is_identity(v) {
                tb.set_identity(from, &(u, v));
            }
        }
    }
    let name = format!("({}x{})", a.name(), b.name());
    let apex = Arc::new(tb.finish(name, |&(u2, v2), &(u, v)| (a.compose(u2, u), b.compose(v2, v))));
    let left_proj = FinFunctor::new_unchecked(
        apex.clone(),
        a.clone(),
        objs.iter().map(|o| o.0).collect(),
        arrs.iter().map(|r| r.0).collect(),
    );
    let right_proj = FinFunctor::new_unchecked(
        apex.clone(),
        b.clone(),
        objs.iter().map(|o| o.1).collect(),
        arrs.iter().map(|r| r.1).collect(),
    );
    Ok(Pullback { apex, left_proj, right_proj })
}

impl Pullback {
    /// Checks the universal property against every cone with vertex `one` or
    /// `two`: each commuting pair factors through exactly one functor.
    pub fn verify_universal(&self, p: &FinFunctor, q: &FinFunctor, bound: Bound) -> Result<bool> {
        for t in [catalog::one(), catalog::two()] {
            let into_p = enumerate_functors(&t, self.left_proj.target(), bound)?;
            let into_q = enumerate_functors(&t, self.right_proj.target(), bound)?;
            let into_apex = enumerate_functors(&t, &self.apex, bound)?;
            for a in &into_p {
                for b in &into_q {
                    let commutes = p.after(a)? == q.after(b)?;
                    let factors = into_apex
                        .iter()
                        .filter(|h| self.left_proj.after(h).ok().as_ref() == Some(a) && self.right_proj.after(h).ok().as_ref() == Some(b))
                        .count();
                    if factors != usize::from(commutes) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{Copresheaf, Presheaf};

    #[test]
    fn components_of_catalog() {
        assert_eq!(pi0(&catalog::two()).size, 1);
        assert_eq!(pi0(&catalog::pair()).size, 2);
        assert_eq!(pi0(&catalog::par()).size, 1);
        assert_eq!(pi0(&catalog::empty()).size, 0);
        for c in catalog::all() {
            assert_eq!(pi0(&c).size, pi0(&c.opposite()).size);
        }
    }

    #[test]
    fn slices_of_two_and_idem() {
        let two = catalog::two();
        let s1 = slice(&two, 1);
        assert_eq!(s1.apex.num_objects(), 2);
        assert_eq!(s1.apex.num_arrows(), 3);
        assert_eq!(s1.apex.object_names(), ["a", "id_1"]);
        assert_eq!(slice(&two, 0).apex.num_objects(), 1);
        let idem = catalog::idem();
        let cs = coslice(&idem, 0);
        assert_eq!(cs.apex.num_objects(), 2);
        // arrows: id_e at both objects, e : id -> e, e : e -> e
        assert_eq!(cs.apex.num_arrows(), 4);
        let e_obj = cs.apex.object_by_name("e").unwrap();
        let endo: Vec<_> = cs.apex.hom(e_obj, e_obj).iter().copied().filter(|&a| !cs.apex.is_identity(a)).collect();
        assert_eq!(endo.len(), 1);
        assert_eq!(cs.apex.compose(endo[0], endo[0]), endo[0]);
    }

    #[test]
    fn elements_and_pullbacks() {
        let two = catalog::two();
        let el = elements(&Presheaf::representable(&two, 1));
        assert_eq!(el.category.num_objects(), 2);
        assert_eq!(el.category.num_arrows(), 3);
        let el1 = elements(&Presheaf::terminal(&two));
        assert_eq!((el1.category.num_objects(), el1.category.num_arrows()), (2, 3));
        assert!(elements(&Presheaf::empty(&two)).category.is_empty());

        let pb = pullback_over(&FinFunctor::pick(&two, 0), &FinFunctor::pick(&two, 1)).unwrap();
        assert!(pb.apex.is_empty());

        let idem = catalog::idem();
        let p = elements(&Presheaf::representable(&idem, 0)).projection;
        let q = coelements(&Copresheaf::corepresentable(&idem, 0)).projection;
        let pb = pullback_over(&p, &q).unwrap();
        assert_eq!(pb.apex.num_objects(), 4);
        assert!(pb.verify_universal(&p, &q, Bound::default()).unwrap());
    }

    #[test]
    fn codomain_mismatch() {
        let err = comma(&FinFunctor::identity(&catalog::two()), &FinFunctor::identity(&catalog::idem()));
        assert!(matches!(err, Err(Error::CodomainMismatch(_))));
    }
}
