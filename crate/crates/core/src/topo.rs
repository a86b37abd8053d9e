//! Categories as finite spaces: open and closed parts, neighborhoods and
//! closures, finite coverings, bounded simple connectedness.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::calculus::restrict_copresheaf;
use crate::comma::{coelements, pi0, pullback_over, slice};
use crate::error::{Error, Result};
use crate::factorization::{em_factorize, is_discrete_fibration, is_discrete_opfibration, is_final};
use crate::fincat::{FinCategory, FinFunctor, ObjId};
use crate::sets::{default_tokens, enumerate_actions, Copresheaf, FinSet, SetMap};

/// `x <= y` iff there is an arrow `x -> y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    pub names: Vec<String>,
    pub le: Vec<Vec<bool>>,
}

impl Preorder {
    pub fn leq(&self, x: ObjId, y: ObjId) -> bool {
        self.le[x][y]
    }

    /// Classes of mutually related objects, each sorted, in order of their
    /// least member.
    pub fn classes(&self) -> Vec<Vec<ObjId>> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if !seen[x] {
                let class: Vec<ObjId> = (x..n).filter(|&y| self.le[x][y] && self.le[y][x]).collect();
                for &y in &class {
                    seen[y] = true;
                }
                out.push(class);
            }
        }
        out
    }

    /// Strict relations between classes, by class index.
    pub fn class_order(&self) -> Vec<(usize, usize)> {
        let cls = self.classes();
        let mut out = Vec::new();
        for (i, a) in cls.iter().enumerate() {
            for (j, b) in cls.iter().enumerate() {
                if i != j && self.le[a[0]][b[0]] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cls = self.classes();
        let render = |c: &Vec<ObjId>| c.iter().map(|&x| self.names[x].as_str()).collect::<Vec<_>>().join("~");
        writeln!(f, "points: {}", cls.iter().map(render).collect::<Vec<_>>().join(" "))?;
        for (i, j) in self.class_order() {
            writeln!(f, "{} <= {}", render(&cls[i]), render(&cls[j]))?;
        }
        Ok(())
    }
}

pub fn thin_reflection(cat: &FinCategory) -> Preorder {
    let le = cat.objects().map(|x| cat.objects().map(|y| !cat.hom(x, y).is_empty()).collect()).collect();
    Preorder { names: cat.object_names().to_vec(), le }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Closed under sources of arrows into the part.
    Open,
    /// Closed under targets of arrows out of the part.
    Closed,
    General,
}

#[derive(Clone, Debug)]
pub struct PartOfCategory {
    base: Arc<FinCategory>,
    member: Vec<bool>,
    flavor: Flavor,
}

impl PartOfCategory {
    pub fn new(base: &Arc<FinCategory>, objects: &[ObjId], flavor: Flavor) -> Result<Self> {
        let mut member = vec![false; base.num_objects()];
        for &x in objects {
            *member.get_mut(x).ok_or_else(|| Error::UnknownObject(x.to_string()))? = true;
        }
        let part = PartOfCategory { base: base.clone(), member, flavor };
        match flavor {
            Flavor::Open if !part.is_open() => Err(Error::NotDownClosed(part.render())),
            Flavor::Closed if !part.is_closed() => Err(Error::NotUpClosed(part.render())),
            _ => Ok(part),
        }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn objects(&self) -> Vec<ObjId> {
        self.base.objects().filter(|&x| self.member[x]).collect()
    }

    pub fn contains(&self, x: ObjId) -> bool {
        self.member[x]
    }

    pub fn is_subset_of(&self, other: &PartOfCategory) -> bool {
        self.member.iter().zip(&other.member).all(|(&a, &b)| !a || b)
    }

    pub fn is_open(&self) -> bool {
        self.base.arrows().all(|f| !self.member[self.base.cod(f)] || self.member[self.base.dom(f)])
    }

    pub fn is_closed(&self) -> bool {
        self.base.arrows().all(|f| !self.member[self.base.dom(f)] || self.member[self.base.cod(f)])
    }

    pub fn complement(&self) -> PartOfCategory {
        let flavor = match self.flavor {
            Flavor::Open => Flavor::Closed,
            Flavor::Closed => Flavor::Open,
            Flavor::General => Flavor::General,
        };
        PartOfCategory { base: self.base.clone(), member: self.member.iter().map(|b| !b).collect(), flavor }
    }

    /// The full subcategory on the part and its inclusion.
    pub fn inclusion(&self) -> FinFunctor {
        let objs = self.objects();
        let sub = Arc::new(self.base.full_subcategory(&objs, format!("{}|{}", self.base.name(), self.render())));
        FinFunctor::inclusion(&sub, &self.base, &objs).expect("full subcategory")
    }

    pub fn render(&self) -> String {
        let names: Vec<&str> = self.objects().into_iter().map(|x| self.base.object_name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }

    fn saturate(&self, forward: bool, flavor: Flavor) -> PartOfCategory {
        let mut member = self.member.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for f in self.base.arrows() {
                let (from, to) = if forward {
                    (self.base.dom(f), self.base.cod(f))
                } else {
                    (self.base.cod(f), self.base.dom(f))
                };
                if member[from] && !member[to] {
                    member[to] = true;
                    changed = true;
                }
            }
        }
        PartOfCategory { base: self.base.clone(), member, flavor }
    }
}

impl PartialEq for PartOfCategory {
    fn eq(&self, other: &Self) -> bool {
        self.member == other.member && *self.base == *other.base
    }
}

/// Every part with the given closure property.
pub fn parts(base: &Arc<FinCategory>, flavor: Flavor) -> Result<Vec<PartOfCategory>> {
    let n = base.num_objects();
    if n > 20 {
        return Err(Error::BoundExceeded(format!("{n} objects is too many to enumerate parts")));
    }
    Ok((0u32..1 << n)
        .map(|s| PartOfCategory { base: base.clone(), member: (0..n).map(|i| s >> i & 1 == 1).collect(), flavor })
        .filter(|p| match flavor {
            Flavor::Open => p.is_open(),
            Flavor::Closed => p.is_closed(),
            Flavor::General => true,
        })
        .collect())
}

fn check_minimal(p: &PartOfCategory, result: &PartOfCategory, flavor: Flavor) -> Result<()> {
    for q in parts(&p.base, flavor)? {
        if p.is_subset_of(&q) && !result.is_subset_of(&q) {
            return Err(Error::CrossCheckFailure(format!("{} is not the least part containing {}", result.render(), p.render())));
        }
    }
    Ok(())
}

/// The least open part containing `p`.
pub fn neighborhood(p: &PartOfCategory) -> Result<PartOfCategory> {
    let result = p.saturate(false, Flavor::Open);
    check_minimal(p, &result, Flavor::Open)?;
    Ok(result)
}

/// The least closed part containing `p`.
pub fn closure(p: &PartOfCategory) -> Result<PartOfCategory> {
    let result = p.saturate(true, Flavor::Closed);
    check_minimal(p, &result, Flavor::Closed)?;
    Ok(result)
}

/// A copresheaf whose transports are all bijections.
#[derive(Clone, Debug)]
pub struct FiniteCovering {
    fibers: Copresheaf,
}

impl FiniteCovering {
    pub fn new(fibers: Copresheaf) -> Result<Self> {
        let base = fibers.base().clone();
        for f in base.arrows() {
            let t = fibers.action(f);
            let mut seen = vec![false; fibers.fiber_len(base.cod(f))];
            let ok = t.len() == seen.len() && t.iter().all(|&b| !std::mem::replace(&mut seen[b], true));
            if !ok {
                return Err(Error::NotACovering(format!("transport along `{}` is not a bijection", base.arrow_name(f))));
            }
        }
        Ok(FiniteCovering { fibers })
    }

    pub fn constant(base: &Arc<FinCategory>, set: &FinSet) -> Self {
        FiniteCovering { fibers: Copresheaf::constant(base, set).with_name(format!("const({})", set.len())) }
    }

    /// The covering of a functor that is both a discrete fibration and opfibration.
    pub fn from_functor(b: &FinFunctor) -> Result<Self> {
        if !is_finite_covering(b)? {
            return Err(Error::NotACovering(b.source().name().to_string()));
        }
        Self::new(Copresheaf::from_discrete_opfibration(b)?)
    }

    pub fn copresheaf(&self) -> &Copresheaf {
        &self.fibers
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.fibers.base()
    }

    /// The total category over the base.
    pub fn projection(&self) -> FinFunctor {
        coelements(&self.fibers).projection
    }

    pub fn is_trivial(&self) -> Result<bool> {
        let base = self.base();
        let sizes: Vec<usize> = base.objects().map(|x| self.fibers.fiber_len(x)).collect();
        let Some(&k) = sizes.first() else { return Ok(true) };
        if sizes.iter().any(|&s| s != k) {
            return Ok(false);
        }
        Ok(self.fibers.find_isomorphism(&Copresheaf::constant(base, &FinSet::of_size(k)))?.is_some())
    }
}

/// Both a discrete fibration and a discrete opfibration; cross-checked
/// against the transports of the associated copresheaf.
pub fn is_finite_covering(b: &FinFunctor) -> Result<bool> {
    let direct = is_discrete_fibration(b) && is_discrete_opfibration(b);
    let via_transports = is_discrete_opfibration(b)
        && FiniteCovering::new(Copresheaf::from_discrete_opfibration(b)?).is_ok();
    if direct != via_transports {
        return Err(Error::CriteriaDisagree(format!(
            "covering test on `{}`: fibration criteria {direct}, transports {via_transports}",
            b.source().name()
        )));
    }
    Ok(direct)
}

/// Every covering with fibers of size at most `max`. Fiber sizes are
/// constant on components.
pub fn coverings_up_to(base: &Arc<FinCategory>, max: usize) -> Vec<FiniteCovering> {
    let parts = pi0(base);
    let mut vectors = vec![Vec::new()];
    for _ in 0..parts.size {
        vectors = vectors
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=max).map(move |s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    vectors
        .par_iter()
        .flat_map_iter(|per_class| {
            let sizes: Vec<usize> = base.objects().map(|x| per_class[parts.class_of[x]]).collect();
            let tokens = default_tokens(&sizes);
            enumerate_actions::<rand_chacha::ChaCha8Rng>(base, &sizes, true, true, None, None)
                .into_iter()
                .map(move |action| FiniteCovering {
                    fibers: Copresheaf::new_unchecked(format!("cov{sizes:?}"), base.clone(), tokens.clone(), action),
                })
        })
        .collect()
}

/// Restricts `b` along `X/x -> X` and looks for an isomorphism with the
/// constant covering at the fiber over `x`.
pub fn local_triviality_check(b: &FiniteCovering, x: ObjId) -> Result<bool> {
    let s = slice(b.base(), x);
    let pulled = restrict_copresheaf(&s.left_proj, b.copresheaf())?;
    let constant = Copresheaf::constant(&s.apex, &FinSet::new(b.copresheaf().fiber(x).to_vec()));
    Ok(pulled.find_isomorphism(&constant)?.is_some())
}

/// Every covering with fibers of size at most `k` is constant, and constant
/// coverings of different sizes differ.
pub fn is_simply_connected_upto(cat: &Arc<FinCategory>, k: usize) -> Result<bool> {
    if k > 6 || cat.num_objects() > 8 || cat.num_arrows() > 16 {
        return Err(Error::BoundExceeded(format!(
            "simple connectedness of `{}` with fibers up to {k}",
            cat.name()
        )));
    }
    for a in 0..=k {
        for c in a + 1..=k {
            let (ca, cc) = (FiniteCovering::constant(cat, &FinSet::of_size(a)), FiniteCovering::constant(cat, &FinSet::of_size(c)));
            if ca.fibers.find_isomorphism(&cc.fibers)?.is_some() {
                return Ok(false);
            }
        }
    }
    let all = coverings_up_to(cat, k);
    let trivial: Vec<bool> = all.par_iter().map(|b| b.is_trivial()).collect::<Result<_>>()?;
    Ok(trivial.into_iter().all(|t| t))
}

/// What was verified for a retraction `r i = id` with `i` final.
#[derive(Clone, Debug)]
pub struct Pi1Retraction {
    /// `i^* B -> exists_r B` is an isomorphism.
    pub comparison_iso: bool,
    /// `exists_r B` is again a covering.
    pub pushed_is_covering: bool,
    /// The unit `b -> r^* exists_r b` is an isomorphism.
    pub unit_iso: bool,
}

impl Pi1Retraction {
    pub fn holds(&self) -> bool {
        self.comparison_iso && self.pushed_is_covering && self.unit_iso
    }
}

pub fn pi1_retraction_verify(i: &FinFunctor, r: &FinFunctor, b: &FiniteCovering) -> Result<Pi1Retraction> {
    let ri = r.after(i)?;
    if !ri.is_identity() {
        return Err(Error::PreconditionFailed("r . i is not the identity".into()));
    }
    if !is_final(i) {
        return Err(Error::PreconditionFailed("i is not final".into()));
    }
    let p = b.projection();
    if !crate::fincat::same_category(p.target(), i.target()) {
        return Err(Error::BaseMismatch("the covering lives over another category".into()));
    }
    let fac = em_factorize(&r.after(&p)?);
    let pulled = pullback_over(i, &p)?;
    let comparison = fac.e.after(&pulled.right_proj)?;
    let comparison_iso = comparison.is_isomorphism();
    let pushed_is_covering = is_finite_covering(&fac.m)?;
    let mut unit_iso = false;
    if pushed_is_covering {
        let pushed = Copresheaf::from_discrete_opfibration(&fac.m)?;
        let back = restrict_copresheaf(r, &pushed)?;
        let (total, middle) = (p.source(), fac.m.source());
        let els = coelements(b.copresheaf());
        let unit = SetMap {
            components: b
                .base()
                .objects()
                .map(|x| {
                    (0..b.copresheaf().fiber_len(x))
                        .map(|s| {
                            let o = fac.e.obj(els.object_of(x, s));
                            middle.objects().filter(|&q| fac.m.obj(q) == fac.m.obj(o)).position(|q| q == o).expect("over r x")
                        })
                        .collect()
                })
                .collect(),
        };
        debug_assert_eq!(total.num_objects(), els.category.num_objects());
        let sizes: Vec<usize> = b.base().objects().map(|x| back.fiber_len(x)).collect();
        unit_iso = b.copresheaf().is_natural(&back, &unit) && unit.is_bijective(&sizes);
    }
    Ok(Pi1Retraction { comparison_iso, pushed_is_covering, unit_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::comma::{elements, slice};
    use crate::sets::Presheaf;

    #[test]
    fn thin() {
        let two = thin_reflection(&catalog::two());
        assert!(two.leq(0, 1) && !two.leq(1, 0));
        assert_eq!(thin_reflection(&catalog::idem()).classes().len(), 1);
        let par = thin_reflection(&catalog::par());
        assert_eq!((par.classes().len(), par.class_order()), (2, vec![(0, 1)]));
    }

    #[test]
    fn neighborhoods_and_closures() {
        let two = catalog::two();
        let p = |objs: &[ObjId]| PartOfCategory::new(&two, objs, Flavor::General).unwrap();
        assert_eq!(neighborhood(&p(&[1])).unwrap().objects(), vec![0, 1]);
        assert_eq!(neighborhood(&p(&[0])).unwrap().objects(), vec![0]);
        assert!(neighborhood(&p(&[])).unwrap().objects().is_empty());
        assert_eq!(closure(&p(&[0])).unwrap().objects(), vec![0, 1]);
        assert_eq!(closure(&p(&[1])).unwrap().objects(), vec![1]);
        assert!(closure(&p(&[])).unwrap().objects().is_empty());
        assert!(matches!(PartOfCategory::new(&two, &[1], Flavor::Open), Err(Error::NotDownClosed(_))));
        let open = PartOfCategory::new(&two, &[0], Flavor::Open).unwrap();
        assert!(is_discrete_fibration(&open.inclusion()));
        assert!(open.complement().is_closed());
    }

    #[test]
    fn coverings() {
        let two = catalog::two();
        let c = FiniteCovering::constant(&two, &FinSet::of_size(2));
        assert!(is_finite_covering(&c.projection()).unwrap());
        let down0 = elements(&Presheaf::representable(&two, 0)).projection;
        assert!(!is_finite_covering(&down0).unwrap());
        let down1 = elements(&Presheaf::representable(&two, 1)).projection;
        assert!(is_finite_covering(&down1).unwrap());
        let z2 = catalog::z2();
        let regular = Copresheaf::new("reg", z2.clone(), vec![vec!["0".into(), "1".into()]], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let reg = FiniteCovering::new(regular).unwrap();
        assert!(is_finite_covering(&reg.projection()).unwrap());
        assert!(local_triviality_check(&reg, 0).unwrap());
        assert!(!reg.is_trivial().unwrap());
        for b in coverings_up_to(&two, 3) {
            assert!(local_triviality_check(&b, 1).unwrap());
        }
    }

    #[test]
    fn simple_connectedness() {
        assert!(is_simply_connected_upto(&catalog::two(), 3).unwrap());
        assert!(is_simply_connected_upto(&catalog::idem(), 3).unwrap());
        assert!(!is_simply_connected_upto(&catalog::z2(), 2).unwrap());
        assert!(matches!(is_simply_connected_upto(&catalog::two(), 9), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn retractions() {
        let two = catalog::two();
        let id = FinFunctor::identity(&two);
        for b in coverings_up_to(&two, 2) {
            assert!(pi1_retraction_verify(&id, &id, &b).unwrap().holds());
        }
        let one = catalog::one();
        let i = FinFunctor::pick(&two, 1);
        let r = FinFunctor::to_terminal(&two);
        for b in coverings_up_to(&two, 3) {
            assert!(pi1_retraction_verify(&i, &r, &b).unwrap().holds());
        }
        let bad = FinFunctor::pick(&two, 0);
        let b = FiniteCovering::constant(&two, &FinSet::of_size(1));
        assert!(matches!(pi1_retraction_verify(&bad, &r, &b), Err(Error::PreconditionFailed(_))));
        let split = catalog::split();
        let s = slice(&split, 0);
        let apex = s.apex.clone();
        let top = apex.objects().find(|&o| split.is_identity(s.object(o).2)).unwrap();
        let i = FinFunctor::pick(&apex, top);
        let r = FinFunctor::to_terminal(&apex);
        assert!(r.target().num_objects() == one.num_objects());
        for b in coverings_up_to(&apex, 2) {
            assert!(pi1_retraction_verify(&i, &r, &b).unwrap().holds());
        }
    }
}
