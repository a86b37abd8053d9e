//! Karoubi envelope, retracts of slices and coslices, the bimodule
//! `ten(n, m) = n (x) m` between them, and atoms.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calculus::{colim_presheaf, tensor, Tensor};
use crate::comma::{elements, pi0};
use crate::error::{Error, Result};
use crate::factorization::{em_factorize, em_prime_factorize};
use crate::fincat::{ArrId, FinCategory, FinFunctor, ObjId, TableBuilder};
use crate::profunctor::{ProfElement, Profunctor};
use crate::sets::{position, random_presheaf, Copresheaf, Presheaf, SetMap};

/// Objects `(x, e)` for idempotents `e`, arrows `f : x -> x'` with
/// `e' f = f = f e`. The objects `(x, id)` form a copy of the category.
pub fn karoubi(cat: &Arc<FinCategory>) -> Arc<FinCategory> {
    let idems = cat.idempotents();
    let name_of = |(x, e): (ObjId, ArrId)| {
        if cat.is_identity(e) {
            cat.object_name(x).to_string()
        } else {
            format!("({},{})", cat.object_name(x), cat.arrow_name(e))
        }
    };
    let mut tb: TableBuilder<(usize, usize, ArrId)> = TableBuilder::new();
    for &ie in &idems {
        tb.add_object(name_of(ie));
    }
    for (i, &(x, e)) in idems.iter().enumerate() {
        for (j, &(y, e2)) in idems.iter().enumerate() {
            for &f in cat.hom(x, y) {
                if cat.compose(e2, f) == f && cat.compose(f, e) == f {
                    let name = if cat.is_identity(e) && cat.is_identity(e2) {
                        cat.arrow_name(f).to_string()
                    } else {
                        format!("{}:{}>{}", cat.arrow_name(f), name_of((x, e)), name_of((y, e2)))
                    };
                    tb.add_arrow((i, j, f), name, i, j);
                    if i == j && f == e {
                        tb.set_identity(i, &(i, j, f));
                    }
                }
            }
        }
    }
    Arc::new(tb.finish(format!("kar({})", cat.name()), |&(_, k, g), &(i, _, f)| (i, k, cat.compose(g, f))))
}

/// The retract `y |-> { f : y -> x | e f = f }` of the representable at `x`
/// and its partner `y |-> { g : x -> y | g e = g }`.
#[derive(Clone, Debug)]
pub struct RetractOfSlice {
    pub x: ObjId,
    pub e: ArrId,
    pub presheaf: Presheaf,
    pub copartner: Copresheaf,
    /// Inclusion into and retraction from the representable.
    pub include: SetMap,
    pub retract: SetMap,
    /// Inclusion into and retraction from the corepresentable.
    pub co_include: SetMap,
    pub co_retract: SetMap,
}

impl RetractOfSlice {
    pub fn new(base: &Arc<FinCategory>, x: ObjId, e: ArrId) -> Result<Self> {
        if base.dom(e) != x || base.cod(e) != x {
            return Err(Error::NotEndomorphism(base.arrow_name(e).to_string()));
        }
        if base.compose(e, e) != e {
            return Err(Error::PreconditionFailed(format!("`{}` is not idempotent", base.arrow_name(e))));
        }
        let (xn, en) = (base.object_name(x), base.arrow_name(e));
        let suffix = if base.is_identity(e) { xn.to_string() } else { format!("{xn},{en}") };
        let down_fiber: Vec<Vec<ArrId>> = base
            .objects()
            .map(|y| base.hom(y, x).iter().copied().filter(|&f| base.compose(e, f) == f).collect())
            .collect();
        let up_fiber: Vec<Vec<ArrId>> = base
            .objects()
            .map(|y| base.hom(x, y).iter().copied().filter(|&g| base.compose(g, e) == g).collect())
            .collect();
        let names = |fib: &Vec<Vec<ArrId>>| -> Vec<Vec<String>> {
            fib.iter().map(|v| v.iter().map(|&a| base.arrow_name(a).to_string()).collect()).collect()
        };
        let down_action = base
            .arrows()
            .map(|h| down_fiber[base.cod(h)].iter().map(|&f| position(&down_fiber[base.dom(h)], base.compose(f, h))).collect())
            .collect();
        let up_action = base
            .arrows()
            .map(|k| up_fiber[base.dom(k)].iter().map(|&g| position(&up_fiber[base.cod(k)], base.compose(k, g))).collect())
            .collect();
        let presheaf = Presheaf::new(format!("down({suffix})"), base.clone(), names(&down_fiber), down_action)?;
        let copartner = Copresheaf::new(format!("up({suffix})"), base.clone(), names(&up_fiber), up_action)?;
        let include = SetMap {
            components: base.objects().map(|y| down_fiber[y].iter().map(|&f| position(base.hom(y, x), f)).collect()).collect(),
        };
        let retract = SetMap {
            components: base
                .objects()
                .map(|y| base.hom(y, x).iter().map(|&f| position(&down_fiber[y], base.compose(e, f))).collect())
                .collect(),
        };
        let co_include = SetMap {
            components: base.objects().map(|y| up_fiber[y].iter().map(|&g| position(base.hom(x, y), g)).collect()).collect(),
        };
        let co_retract = SetMap {
            components: base
                .objects()
                .map(|y| base.hom(x, y).iter().map(|&g| position(&up_fiber[y], base.compose(g, e))).collect())
                .collect(),
        };
        Ok(RetractOfSlice { x, e, presheaf, copartner, include, retract, co_include, co_retract })
    }
}

/// A finite full subcategory of set-valued functors, arrows the natural maps.
#[derive(Clone, Debug)]
pub struct SetFunctorCategory {
    pub category: Arc<FinCategory>,
    /// The natural map behind each arrow.
    pub maps: Vec<SetMap>,
    index: HashMap<(ObjId, ObjId, SetMap), ArrId>,
}

impl SetFunctorCategory {
    fn build(name: String, names: Vec<String>, sizes: Vec<Vec<usize>>, hom: impl Fn(usize, usize) -> Result<Vec<SetMap>>) -> Result<Self> {
        let mut tb: TableBuilder<(ObjId, ObjId, SetMap)> = TableBuilder::new();
        for n in &names {
            tb.add_object(n.clone());
        }
        let mut maps = Vec::new();
        let mut index = HashMap::new();
        for i in 0..names.len() {
            for j in 0..names.len() {
                for (k, map) in hom(i, j)?.into_iter().enumerate() {
                    let identity = i == j && map == SetMap::identity(sizes[i].iter().copied());
                    let arrow_name = if identity { format!("id_{}", names[i]) } else { format!("{}>{}#{}", names[i], names[j], k) };
                    let id = tb.add_arrow((i, j, map.clone()), arrow_name, i, j);
                    if identity {
                        tb.set_identity(i, &(i, j, map.clone()));
                    }
                    index.insert((i, j, map.clone()), id);
                    maps.push(map);
                }
            }
        }
        let category = Arc::new(tb.finish(name, |(_, k, g), (i, _, f)| (*i, *k, g.after(f))));
        Ok(SetFunctorCategory { category, maps, index })
    }

    pub fn presheaves(objects: &[Presheaf], name: impl Into<String>) -> Result<Self> {
        Self::build(
            name.into(),
            objects.iter().map(|m| m.name().to_string()).collect(),
            objects.iter().map(|m| m.fibers().iter().map(Vec::len).collect()).collect(),
            |i, j| objects[i].maps_to(&objects[j]),
        )
    }

    pub fn copresheaves(objects: &[Copresheaf], name: impl Into<String>) -> Result<Self> {
        Self::build(
            name.into(),
            objects.iter().map(|m| m.name().to_string()).collect(),
            objects.iter().map(|m| m.fibers().iter().map(Vec::len).collect()).collect(),
            |i, j| objects[i].maps_to(&objects[j]),
        )
    }

    pub fn arrow_for(&self, i: ObjId, j: ObjId, map: &SetMap) -> Option<ArrId> {
        self.index.get(&(i, j, map.clone())).copied()
    }
}

/// `ten(n, m) = n (x) m` from copresheaves (left category, opposite of the
/// natural maps) to presheaves.
#[derive(Clone, Debug)]
pub struct TenBimodule {
    pub base: Arc<FinCategory>,
    pub retracts: Vec<RetractOfSlice>,
    pub copresheaves: Vec<Copresheaf>,
    pub presheaves: Vec<Presheaf>,
    /// Copresheaves and natural maps; the profunctor uses its opposite.
    pub copresheaf_cat: SetFunctorCategory,
    pub presheaf_cat: SetFunctorCategory,
    pub profunctor: Profunctor,
    tensors: Vec<Tensor>,
}

impl TenBimodule {
    /// Built over every retract of a slice and of a coslice.
    pub fn new(base: &Arc<FinCategory>) -> Result<Self> {
        Self::with_extra(base, Vec::new(), Vec::new())
    }

    /// Adds further copresheaves and presheaves after the retracts.
    pub fn with_extra(base: &Arc<FinCategory>, extra_up: Vec<Copresheaf>, extra_down: Vec<Presheaf>) -> Result<Self> {
        let retracts: Vec<RetractOfSlice> =
            base.idempotents().into_iter().map(|(x, e)| RetractOfSlice::new(base, x, e)).collect::<Result<_>>()?;
        let mut copresheaves: Vec<Copresheaf> = retracts.iter().map(|r| r.copartner.clone()).collect();
        copresheaves.extend(extra_up);
        let mut presheaves: Vec<Presheaf> = retracts.iter().map(|r| r.presheaf.clone()).collect();
        presheaves.extend(extra_down);
        let copresheaf_cat = SetFunctorCategory::copresheaves(&copresheaves, format!("up({})", base.name()))?;
        let presheaf_cat = SetFunctorCategory::presheaves(&presheaves, format!("down({})", base.name()))?;
        let (nl, nr) = (copresheaves.len(), presheaves.len());
        let tensors: Vec<Tensor> = (0..nl * nr)
            .into_par_iter()
            .map(|k| tensor(&copresheaves[k / nr], &presheaves[k % nr]))
            .collect::<Result<_>>()?;
        let sets = tensors.iter().map(|t| t.set.elements().to_vec()).collect();
        let left = Arc::new(copresheaf_cat.category.opposite());
        // an arrow a -> b of the opposite is a natural map n_b -> n_a
        let right_action = left
            .arrows()
            .map(|f| {
                let (a, b) = (left.dom(f), left.cod(f));
                let psi = &copresheaf_cat.maps[f];
                (0..nr)
                    .map(|y| {
                        let t = &tensors[b * nr + y];
                        (0..t.len())
                            .map(|s| {
                                let (x, c, d) = t.representative(s);
                                tensors[a * nr + y].class(x, psi.components[x][c], d)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let right = presheaf_cat.category.clone();
        let left_action = right
            .arrows()
            .map(|g| {
                let (c0, c1) = (right.dom(g), right.cod(g));
                let phi = &presheaf_cat.maps[g];
                (0..nl)
                    .map(|xo| {
                        let t = &tensors[xo * nr + c0];
                        (0..t.len())
                            .map(|s| {
                                let (x, c, d) = t.representative(s);
                                tensors[xo * nr + c1].class(x, c, phi.components[x][d])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let profunctor = Profunctor::new(format!("ten({})", base.name()), left, right, sets, right_action, left_action)?;
        Ok(TenBimodule { base: base.clone(), retracts, copresheaves, presheaves, copresheaf_cat, presheaf_cat, profunctor, tensors })
    }

    /// Position of the retract `(x, e)`.
    pub fn retract_index(&self, x: ObjId, e: ArrId) -> Option<usize> {
        self.retracts.iter().position(|r| r.x == x && r.e == e)
    }

    /// The element of `ten(n_i, m_j)` containing `(x, a, b)`.
    pub fn element(&self, i: usize, j: usize, x: ObjId, a: usize, b: usize) -> ProfElement {
        ProfElement { x: i, y: j, s: self.tensors[i * self.presheaves.len() + j].class(x, a, b) }
    }

    /// The left-category arrow for a natural map `n_j -> n_i`.
    fn left_arrow(&self, i: usize, j: usize, map: &SetMap) -> Option<ArrId> {
        self.copresheaf_cat.arrow_for(j, i, map)
    }
}

/// The class of `(x, id_x, id_x)` in `up(x) (x) down(x)`.
pub fn slice_coslice_bicartesian(ten: &TenBimodule, x: ObjId) -> ProfElement {
    let base = &ten.base;
    let k = ten.retract_index(x, base.id(x)).expect("identity is idempotent");
    let r = &ten.retracts[k];
    let a = r.copartner.element_index(x, base.arrow_name(base.id(x))).expect("identity in coslice");
    let b = r.presheaf.element_index(x, base.arrow_name(base.id(x))).expect("identity in slice");
    ten.element(k, k, x, a, b)
}

/// The retract of `(x, e)` with a bicartesian witness in `ten(up(x,e), down(x,e))`
/// obtained by splitting conjugate idempotents.
#[derive(Clone, Debug)]
pub struct ConjugateRetract {
    pub index: usize,
    pub witness: ProfElement,
}

pub fn conjugate_of_retract(ten: &TenBimodule, x: ObjId, e: ArrId) -> Result<ConjugateRetract> {
    let base = &ten.base;
    let u = slice_coslice_bicartesian(ten, x);
    let full = ten.retract_index(x, base.id(x)).expect("identity is idempotent");
    let k = ten.retract_index(x, e).ok_or_else(|| Error::PreconditionFailed("not an idempotent".into()))?;
    let r = &ten.retracts[k];
    // k |-> k e on up(x), as an endo of the opposite
    let pre_e = r.co_include.after(&r.co_retract);
    let pre_e = ten.left_arrow(full, full, &pre_e).expect("endo of up(x)");
    let post_e = r.include.after(&r.retract);
    let post_e = ten.presheaf_cat.arrow_for(full, full, &post_e).expect("endo of down(x)");
    let conj = ten.profunctor.conjugate_along(u, pre_e)?;
    if conj != post_e {
        return Err(Error::CrossCheckFailure(format!(
            "precomposition with `{}` is not conjugate to postcomposition",
            base.arrow_name(e)
        )));
    }
    // in the opposite: r_l : up(x) -> up(x,e) is the inclusion, i_l the retraction
    let r_l = ten.left_arrow(full, k, &r.co_include).expect("inclusion");
    let i_l = ten.left_arrow(k, full, &r.co_retract).expect("retraction");
    let r_r = ten.presheaf_cat.arrow_for(full, k, &r.retract).expect("retraction");
    let i_r = ten.presheaf_cat.arrow_for(k, full, &r.include).expect("inclusion");
    let witness = ten.profunctor.split_conjugates(u, pre_e, (r_l, i_l), post_e, (r_r, i_r))?;
    if !ten.profunctor.is_bicartesian(witness) {
        return Err(Error::CrossCheckFailure("split conjugate is not bicartesian".into()));
    }
    Ok(ConjugateRetract { index: k, witness })
}

/// Outcome of the atom test; `witness` is the first `(x, e)` found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub witness: Option<(ObjId, ArrId)>,
    /// Presheaves on which colimit and limit were compared.
    pub battery: usize,
}

impl Atom {
    pub fn is_atom(&self) -> bool {
        self.witness.is_some()
    }
}

fn unique_absorbing(cat: &FinCategory, x: ObjId, e: ArrId) -> bool {
    cat.objects().all(|y| {
        cat.hom(y, x).iter().filter(|&&f| cat.compose(e, f) == f).count() == 1
            && cat.hom(x, y).iter().filter(|&&g| cat.compose(g, e) == g).count() == 1
    })
}

/// Presheaves used to cross-check atoms: terminal, representables and a
/// seeded random sample.
pub fn atom_battery(cat: &Arc<FinCategory>, seed: u64, count: usize) -> Vec<Presheaf> {
    let mut out = vec![Presheaf::terminal(cat), Presheaf::empty(cat)];
    out.extend(cat.objects().map(|x| Presheaf::representable(cat, x)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..count).map(|_| random_presheaf(cat, 2, &mut rng)));
    out
}

/// Decides atomicity by the `(x, e)` criterion; a positive answer is
/// cross-checked by comparing limits and colimits on a battery, together
/// with naturality of the comparison `lim m -> colim m`.
pub fn is_atom(cat: &Arc<FinCategory>) -> Result<Atom> {
    is_atom_with(cat, 0x5eed, 24)
}

/// [`is_atom`] with `count` random presheaves in the cross-check battery.
pub fn is_atom_with(cat: &Arc<FinCategory>, seed: u64, count: usize) -> Result<Atom> {
    let idems = cat.idempotents();
    let witness = idems.par_iter().copied().find_first(|&(x, e)| unique_absorbing(cat, x, e));
    let Some((x, _)) = witness else {
        return Ok(Atom { witness: None, battery: 0 });
    };
    let battery = atom_battery(cat, seed, count);
    let comparisons: Vec<Vec<usize>> = battery
        .iter()
        .map(|m| {
            let colim = colim_presheaf(m).len();
            let lim = m.sections();
            if colim != lim.len() {
                return Err(Error::CrossCheckFailure(format!(
                    "`{}`: colimit has {} elements, limit {}",
                    m.name(),
                    colim,
                    lim.len()
                )));
            }
            let el = elements(m);
            let parts = pi0(&el.category);
            let image: Vec<usize> = lim.iter().map(|s| parts.class_of[el.object_of(x, s[x])]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != image.len() {
                return Err(Error::CrossCheckFailure(format!("`{}`: lim -> colim is not injective", m.name())));
            }
            Ok(image)
        })
        .collect::<Result<_>>()?;
    for (i, m) in battery.iter().enumerate() {
        for (j, m2) in battery.iter().enumerate().skip(i).take(4) {
            let (lim1, lim2) = (m.sections(), m2.sections());
            let el2 = elements(m2);
            let p2 = pi0(&el2.category);
            for phi in m.maps_to(m2)?.into_iter().take(4) {
                for s in &lim1 {
                    let moved: Vec<usize> = cat.objects().map(|y| phi.components[y][s[y]]).collect();
                    let k2 = lim2.iter().position(|t| *t == moved).expect("natural maps send sections to sections");
                    let via_lim = comparisons[j][k2];
                    let via_colim = p2.class_of[el2.object_of(x, phi.components[x][s[x]])];
                    if via_lim != via_colim {
                        return Err(Error::CrossCheckFailure(format!("naturality fails from `{}`", m.name())));
                    }
                }
            }
        }
    }
    Ok(Atom { witness, battery: battery.len() })
}

/// The reflections of a figure with atomic shape, with a bicartesian element
/// of `ten(up(p), down(p))`.
#[derive(Clone, Debug)]
pub struct AtomicFigure {
    pub down: Presheaf,
    pub up: Copresheaf,
    pub witness: ProfElement,
    pub ten: TenBimodule,
}

pub fn reflect_atomic_figure(p: &FinFunctor) -> Result<AtomicFigure> {
    if !is_atom(p.source())?.is_atom() {
        return Err(Error::NotAtomicShape(p.source().name().to_string()));
    }
    let down = em_factorize(p).presheaf().expect("fibration part").clone().with_name("down(p)");
    let up = em_prime_factorize(p).copresheaf().expect("opfibration part").clone().with_name("up(p)");
    let ten = TenBimodule::with_extra(p.target(), vec![up.clone()], vec![down.clone()])?;
    let (i, j) = (ten.copresheaves.len() - 1, ten.presheaves.len() - 1);
    let witness = (0..ten.profunctor.len(i, j))
        .map(|s| ProfElement { x: i, y: j, s })
        .find(|&el| ten.profunctor.is_bicartesian(el))
        .ok_or_else(|| Error::CrossCheckFailure("reflections of an atomic figure are not conjugate".into()))?;
    Ok(AtomicFigure { down, up, witness, ten })
}

/// For each pair of objects: `|Nat(down x, down y)|`, `|Nat(up y, up x)|`,
/// `|X(x, y)|`, and whether the bicartesian elements induce a bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDuality {
    pub rows: Vec<(ObjId, ObjId, usize, usize, usize)>,
    pub ok: bool,
}

pub fn slice_duality_check(cat: &Arc<FinCategory>) -> Result<SliceDuality> {
    let ten = TenBimodule::new(cat)?;
    let t = &ten.profunctor;
    let (left, right) = (t.left_cat().clone(), t.right_cat().clone());
    let mut rows = Vec::new();
    let mut ok = true;
    for x in cat.objects() {
        for y in cat.objects() {
            let (ux, uy) = (slice_coslice_bicartesian(&ten, x), slice_coslice_bicartesian(&ten, y));
            let downs = right.hom(ux.y, uy.y);
            let ups = left.hom(ux.x, uy.x);
            let mut images: Vec<ArrId> = Vec::new();
            for &phi in downs {
                let target = t.mul_left(phi, ux);
                match ups.iter().find(|&&psi| t.mul_right(uy, psi) == target) {
                    Some(&psi) => images.push(psi),
                    None => ok = false,
                }
            }
            images.sort_unstable();
            images.dedup();
            ok &= images.len() == downs.len() && downs.len() == ups.len() && ups.len() == cat.hom(x, y).len();
            rows.push((x, y, downs.len(), ups.len(), cat.hom(x, y).len()));
        }
    }
    Ok(SliceDuality { rows, ok })
}

/// The conjugate objects of `ten` form a category equivalent to the Karoubi
/// envelope: every retract is conjugate, and the comparison functor is fully
/// faithful with hom-sets matching those of the envelope.
pub fn karoubi_equivalence_check(cat: &Arc<FinCategory>) -> Result<bool> {
    let ten = TenBimodule::new(cat)?;
    let kar = karoubi(cat);
    let fixed = ten.profunctor.fixed_subcategories();
    let (_, equivalence) = fixed.comparison(&ten.profunctor)?;
    let all_left = fixed.left_objects.len() == ten.copresheaves.len();
    let homs = (0..ten.presheaves.len()).all(|i| {
        (0..ten.presheaves.len())
            .all(|j| ten.presheaf_cat.category.hom(i, j).len() == kar.hom(i, j).len())
    });
    Ok(equivalence && all_left && homs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn karoubi_examples() {
        let k1 = karoubi(&catalog::one());
        assert_eq!((k1.num_objects(), k1.num_arrows()), (1, 1));
        let k = karoubi(&catalog::idem());
        assert_eq!(k.num_objects(), 2);
        assert_eq!(k.hom(1, 1).len(), 1);
        assert_eq!(k.num_arrows(), 5);
        let k2 = karoubi(&catalog::two());
        assert_eq!((k2.num_objects(), k2.num_arrows()), (2, 3));
    }

    #[test]
    fn bicartesian_slice_coslice() {
        for cat in catalog::all().into_iter().filter(|c| !c.is_empty()) {
            let ten = TenBimodule::new(&cat).unwrap();
            for x in cat.objects() {
                let u = slice_coslice_bicartesian(&ten, x);
                assert!(ten.profunctor.is_bicartesian(u), "{} at {}", cat.name(), x);
            }
        }
        let idem = catalog::idem();
        let ten = TenBimodule::new(&idem).unwrap();
        let u = slice_coslice_bicartesian(&ten, 0);
        assert_eq!(ten.profunctor.len(u.x, u.y), 2);
    }

    #[test]
    fn conjugates_of_retracts() {
        for cat in catalog::all() {
            let ten = TenBimodule::new(&cat).unwrap();
            for (x, e) in cat.idempotents() {
                let c = conjugate_of_retract(&ten, x, e).unwrap();
                assert!(ten.profunctor.is_bicartesian(c.witness));
            }
        }
        let idem = catalog::idem();
        let r = RetractOfSlice::new(&idem, 0, 1).unwrap();
        assert_eq!(r.presheaf.fiber(0), ["e"]);
        assert_eq!(r.copartner.fiber(0), ["e"]);
        let split = catalog::split();
        let x = split.object_by_name("x").unwrap();
        let y = split.object_by_name("y").unwrap();
        let e = split.arrow_by_name("e").unwrap();
        let r = RetractOfSlice::new(&split, x, e).unwrap();
        assert!(r.presheaf.find_isomorphism(&Presheaf::representable(&split, y)).unwrap().is_some());
    }

    #[test]
    fn atoms() {
        let a = is_atom(&catalog::idem()).unwrap();
        assert_eq!(a.witness, Some((0, 1)));
        assert_eq!(is_atom(&catalog::one()).unwrap().witness, Some((0, 0)));
        let two = catalog::two();
        assert!(!is_atom(&two).unwrap().is_atom());
        let f = Presheaf::new("F", two.clone(), vec![vec!["a".into()], vec![]], vec![vec![0], vec![], vec![]]).unwrap();
        assert_eq!((colim_presheaf(&f).len(), f.sections().len()), (1, 0));
        for c in catalog::all() {
            if is_atom(&c).unwrap().is_atom() {
                assert_eq!(pi0(&c).size, 1);
            }
        }
    }

    #[test]
    fn atomic_figures() {
        let two = catalog::two();
        let fig = reflect_atomic_figure(&FinFunctor::pick(&two, 0)).unwrap();
        assert!(fig.down.find_isomorphism(&Presheaf::representable(&two, 0)).unwrap().is_some());
        let idem = catalog::idem();
        let kar = karoubi(&idem);
        let p = FinFunctor::new(idem.clone(), kar.clone(), vec![0], vec![kar.id(0), kar.arrow_by_name("e").unwrap()]).unwrap();
        let fig = reflect_atomic_figure(&p).unwrap();
        assert!(fig.down.find_isomorphism(&Presheaf::representable(&kar, 1)).unwrap().is_some());
        let c = FinFunctor::constant(&idem, &two, 1);
        let fig = reflect_atomic_figure(&c).unwrap();
        assert!(fig.down.find_isomorphism(&Presheaf::representable(&two, 1)).unwrap().is_some());
        assert!(matches!(reflect_atomic_figure(&FinFunctor::identity(&two)), Err(Error::NotAtomicShape(_))));
    }

    #[test]
    fn duality_and_karoubi() {
        for cat in [catalog::one(), catalog::two(), catalog::idem(), catalog::z2(), catalog::split()] {
            assert!(slice_duality_check(&cat).unwrap().ok, "{}", cat.name());
            assert!(karoubi_equivalence_check(&cat).unwrap(), "{}", cat.name());
        }
    }
}
