//! Finite bimodules `t : X -> Y`, read as functors `X^op x Y -> FinSet`.
//!
//! An element `s` of `t(x, y)` behaves like an arrow `x -> y`: arrows of `X`
//! act on the right by precomposition and arrows of `Y` on the left.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{ArrId, FinCategory, FinFunctor, ObjId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    name: String,
    left: Arc<FinCategory>,
    right: Arc<FinCategory>,
    sets: Vec<Vec<String>>,
    // [f][y][s]: s in t(cod f, y) to s.f in t(dom f, y)
    right_action: Vec<Vec<Vec<usize>>>,
    // [g][x][s]: s in t(x, dom g) to g.s in t(x, cod g)
    left_action: Vec<Vec<Vec<usize>>>,
}

/// An element `s` of `t(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfElement {
    pub x: ObjId,
    pub y: ObjId,
    pub s: usize,
}

impl Profunctor {
    pub fn new(
        name: impl Into<String>,
        left: Arc<FinCategory>,
        right: Arc<FinCategory>,
        sets: Vec<Vec<String>>,
        right_action: Vec<Vec<Vec<usize>>>,
        left_action: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let t = Profunctor { name: name.into(), left, right, sets, right_action, left_action };
        t.validate()?;
        Ok(t)
    }

    /// Unit, associativity and bimodule laws, exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (x, y) = (&*self.left, &*self.right);
        let bad = |m: &str| Err(Error::InvalidProfunctor(m.to_string()));
        if self.sets.len() != x.num_objects() * y.num_objects()
            || self.right_action.len() != x.num_arrows()
            || self.left_action.len() != y.num_arrows()
        {
            return bad("table sizes do not match the categories");
        }
        for f in x.arrows() {
            for b in y.objects() {
                let row = &self.right_action[f][b];
                if row.len() != self.len(x.cod(f), b) || row.iter().any(|&v| v >= self.len(x.dom(f), b)) {
                    return bad(&format!("right action of `{}` is not a function", x.arrow_name(f)));
                }
            }
        }
        for g in y.arrows() {
            for a in x.objects() {
                let row = &self.left_action[g][a];
                if row.len() != self.len(a, y.dom(g)) || row.iter().any(|&v| v >= self.len(a, y.cod(g))) {
                    return bad(&format!("left action of `{}` is not a function", y.arrow_name(g)));
                }
            }
        }
        for a in x.objects() {
            for b in y.objects() {
                for s in 0..self.len(a, b) {
                    if self.act_right(b, s, x.id(a)) != s || self.act_left(y.id(b), a, s) != s {
                        return bad("identities must act trivially");
                    }
                }
            }
        }
        for f in x.arrows() {
            for f2 in x.arrows_into(x.dom(f)) {
                let ff = x.compose(f, f2);
                for b in y.objects() {
                    for s in 0..self.len(x.cod(f), b) {
                        if self.act_right(b, self.act_right(b, s, f), f2) != self.act_right(b, s, ff) {
                            return bad("right action is not associative");
                        }
                    }
                }
            }
        }
        for g in y.arrows() {
            for g2 in y.arrows_from(y.cod(g)) {
                let gg = y.compose(g2, g);
                for a in x.objects() {
                    for s in 0..self.len(a, y.dom(g)) {
                        if self.act_left(g2, a, self.act_left(g, a, s)) != self.act_left(gg, a, s) {
                            return bad("left action is not associative");
                        }
                    }
                }
            }
        }
        for f in x.arrows() {
            for g in y.arrows() {
                for s in 0..self.len(x.cod(f), y.dom(g)) {
                    let one = self.act_right(y.cod(g), self.act_left(g, x.cod(f), s), f);
                    let two = self.act_left(g, x.dom(f), self.act_right(y.dom(g), s, f));
                    if one != two {
                        return bad(&format!(
                            "actions of `{}` and `{}` do not commute",
                            x.arrow_name(f),
                            y.arrow_name(g)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `t(x, y) = Y(x, y)` on a single category.
    pub fn hom(cat: &Arc<FinCategory>) -> Self {
        let n = cat.num_objects();
        let sets = (0..n * n)
            .map(|k| cat.hom(k / n, k % n).iter().map(|&h| cat.arrow_name(h).to_string()).collect())
            .collect();
        let idx = |a: ObjId, b: ObjId, h: ArrId| cat.hom(a, b).iter().position(|&v| v == h).expect("in hom");
        let right_action = cat
            .arrows()
            .map(|f| {
                cat.objects()
                    .map(|b| cat.hom(cat.cod(f), b).iter().map(|&s| idx(cat.dom(f), b, cat.compose(s, f))).collect())
                    .collect()
            })
            .collect();
        let left_action = cat
            .arrows()
            .map(|g| {
                cat.objects()
                    .map(|a| cat.hom(a, cat.dom(g)).iter().map(|&s| idx(a, cat.cod(g), cat.compose(g, s))).collect())
                    .collect()
            })
            .collect();
        Profunctor {
            name: format!("hom({})", cat.name()),
            left: cat.clone(),
            right: cat.clone(),
            sets,
            right_action,
            left_action,
        }
    }

    /// `t(x, y) = Y(F x, y)` for `F : X -> Y`.
    pub fn from_functor(functor: &FinFunctor) -> Self {
        let (x, y) = (functor.source(), functor.target());
        let ny = y.num_objects();
        let sets = x
            .objects()
            .flat_map(|a| y.objects().map(move |b| (a, b)))
            .map(|(a, b)| y.hom(functor.obj(a), b).iter().map(|&h| y.arrow_name(h).to_string()).collect())
            .collect();
        let idx = |a: ObjId, b: ObjId, h: ArrId| y.hom(a, b).iter().position(|&v| v == h).expect("in hom");
        let right_action = x
            .arrows()
            .map(|f| {
                y.objects()
                    .map(|b| {
                        y.hom(functor.obj(x.cod(f)), b)
                            .iter()
                            .map(|&s| idx(functor.obj(x.dom(f)), b, y.compose(s, functor.arr(f))))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let left_action = y
            .arrows()
            .map(|g| {
                x.objects()
                    .map(|a| {
                        y.hom(functor.obj(a), y.dom(g))
                            .iter()
                            .map(|&s| idx(functor.obj(a), y.cod(g), y.compose(g, s)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        debug_assert_eq!(ny, y.num_objects());
        Profunctor {
            name: format!("rep({})", x.name()),
            left: x.clone(),
            right: y.clone(),
            sets,
            right_action,
            left_action,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left_cat(&self) -> &Arc<FinCategory> {
        &self.left
    }

    pub fn right_cat(&self) -> &Arc<FinCategory> {
        &self.right
    }

    pub fn set(&self, x: ObjId, y: ObjId) -> &[String] {
        &self.sets[x * self.right.num_objects() + y]
    }

    pub fn len(&self, x: ObjId, y: ObjId) -> usize {
        self.set(x, y).len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(Vec::is_empty)
    }

    /// `s . f` for `s` in `t(cod f, y)`.
    pub fn act_right(&self, y: ObjId, s: usize, f: ArrId) -> usize {
        self.right_action[f][y][s]
    }

    /// `g . s` for `s` in `t(x, dom g)`.
    pub fn act_left(&self, g: ArrId, x: ObjId, s: usize) -> usize {
        self.left_action[g][x][s]
    }

    pub fn elements(&self) -> impl Iterator<Item = ProfElement> + '_ {
        self.left.objects().flat_map(move |x| {
            self.right.objects().flat_map(move |y| (0..self.len(x, y)).map(move |s| ProfElement { x, y, s }))
        })
    }

    pub fn element_name(&self, el: ProfElement) -> &str {
        &self.set(el.x, el.y)[el.s]
    }

    pub fn mul_right(&self, el: ProfElement, f: ArrId) -> ProfElement {
        debug_assert_eq!(self.left.cod(f), el.x);
        ProfElement { x: self.left.dom(f), y: el.y, s: self.act_right(el.y, el.s, f) }
    }

    pub fn mul_left(&self, g: ArrId, el: ProfElement) -> ProfElement {
        debug_assert_eq!(self.right.dom(g), el.y);
        ProfElement { x: el.x, y: self.right.cod(g), s: self.act_left(g, el.x, el.s) }
    }

    fn is_bijection(values: impl Iterator<Item = usize>, target: usize) -> bool {
        let mut seen = vec![false; target];
        let mut count = 0;
        for v in values {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
            count += 1;
        }
        count == target
    }

    /// Every `x'` sees `X(x', x) -> t(x', y), f |-> s.f` as a bijection.
    pub fn is_cartesian(&self, el: ProfElement) -> bool {
        self.left.objects().all(|x2| {
            Self::is_bijection(
                self.left.hom(x2, el.x).iter().map(|&f| self.act_right(el.y, el.s, f)),
                self.len(x2, el.y),
            )
        })
    }

    /// Every `y'` sees `Y(y, y') -> t(x, y'), g |-> g.s` as a bijection.
    pub fn is_opcartesian(&self, el: ProfElement) -> bool {
        self.right.objects().all(|y2| {
            Self::is_bijection(
                self.right.hom(el.y, y2).iter().map(|&g| self.act_left(g, el.x, el.s)),
                self.len(el.x, y2),
            )
        })
    }

    pub fn is_bicartesian(&self, el: ProfElement) -> bool {
        self.is_cartesian(el) && self.is_opcartesian(el)
    }

    pub fn bicartesian_elements(&self) -> Vec<ProfElement> {
        self.elements().filter(|&el| self.is_bicartesian(el)).collect()
    }

    fn require_bicartesian(&self, u: ProfElement) -> Result<()> {
        if self.is_bicartesian(u) {
            Ok(())
        } else {
            Err(Error::NotBicartesian(format!(
                "`{}` in t({}, {})",
                self.element_name(u),
                self.left.object_name(u.x),
                self.right.object_name(u.y)
            )))
        }
    }

    /// The unique endo `g` of `u.y` with `g.u = u.f`.
    pub fn conjugate_along(&self, u: ProfElement, f: ArrId) -> Result<ArrId> {
        self.require_bicartesian(u)?;
        if self.left.dom(f) != u.x || self.left.cod(f) != u.x {
            return Err(Error::NotEndomorphism(self.left.arrow_name(f).to_string()));
        }
        let target = self.act_right(u.y, u.s, f);
        Ok(*self
            .right
            .hom(u.y, u.y)
            .iter()
            .find(|&&g| self.act_left(g, u.x, u.s) == target)
            .expect("opcartesian element factors every element"))
    }

    /// The unique endo `f` of `u.x` with `g.u = u.f`.
    pub fn conjugate_back(&self, u: ProfElement, g: ArrId) -> Result<ArrId> {
        self.require_bicartesian(u)?;
        if self.right.dom(g) != u.y || self.right.cod(g) != u.y {
            return Err(Error::NotEndomorphism(self.right.arrow_name(g).to_string()));
        }
        let target = self.act_left(g, u.x, u.s);
        Ok(*self
            .left
            .hom(u.x, u.x)
            .iter()
            .find(|&&f| self.act_right(u.y, u.s, f) == target)
            .expect("cartesian element factors every element"))
    }

    /// Whether conjugation along `u` is a monoid isomorphism `End(x) -> End(y)`.
    pub fn conjugation_is_monoid_iso(&self, u: ProfElement) -> Result<bool> {
        let (x, y) = (&*self.left, &*self.right);
        let ends = x.hom(u.x, u.x);
        let image: Vec<ArrId> = ends.iter().map(|&f| self.conjugate_along(u, f)).collect::<Result<_>>()?;
        let bijective = Self::is_bijection(
            image.iter().map(|g| y.hom(u.y, u.y).iter().position(|h| h == g).expect("endo")),
            y.hom(u.y, u.y).len(),
        );
        let unital = self.conjugate_along(u, x.id(u.x))? == y.id(u.y);
        let multiplicative = ends.iter().zip(&image).all(|(&f1, &g1)| {
            ends.iter().zip(&image).all(|(&f2, &g2)| {
                self.conjugate_along(u, x.compose(f1, f2)).ok() == Some(y.compose(g1, g2))
            })
        });
        Ok(bijective && unital && multiplicative)
    }

    /// Given `e'<u>e` with splittings `e = i r` through `y` and
    /// `e' = i' r'` through `y'`, returns the element `r' u i` of `t(y, y')`.
    pub fn split_conjugates(
        &self,
        u: ProfElement,
        e: ArrId,
        (r, i): (ArrId, ArrId),
        e2: ArrId,
        (r2, i2): (ArrId, ArrId),
    ) -> Result<ProfElement> {
        check_splitting(&self.left, u.x, e, r, i)?;
        check_splitting(&self.right, u.y, e2, r2, i2)?;
        let conj = self.conjugate_along(u, e).map_err(|err| Error::NotConjugate(err.to_string()))?;
        if conj != e2 {
            return Err(Error::NotConjugate(format!(
                "`{}` is conjugate to `{}`, not `{}`",
                self.left.arrow_name(e),
                self.right.arrow_name(conj),
                self.right.arrow_name(e2)
            )));
        }
        Ok(self.mul_left(r2, self.mul_right(u, i)))
    }

    /// Objects admitting a bicartesian partner, each paired with its first
    /// partner, plus the induced comparison functor.
    pub fn fixed_subcategories(&self) -> FixedSubcategories {
        let bic = self.bicartesian_elements();
        let mut left_objects: Vec<ObjId> = bic.iter().map(|e| e.x).collect();
        left_objects.dedup();
        let mut right_objects: Vec<ObjId> = bic.iter().map(|e| e.y).collect();
        right_objects.sort_unstable();
        right_objects.dedup();
        let pairing: Vec<ProfElement> =
            left_objects.iter().map(|&x| *bic.iter().find(|e| e.x == x).expect("has partner")).collect();
        let left = Arc::new(self.left.full_subcategory(&left_objects, format!("{}_t", self.left.name())));
        let right = Arc::new(self.right.full_subcategory(&right_objects, format!("{}_t", self.right.name())));
        FixedSubcategories { left, right, left_objects, right_objects, pairing }
    }
}

fn check_splitting(cat: &FinCategory, x: ObjId, e: ArrId, r: ArrId, i: ArrId) -> Result<()> {
    let ok = cat.dom(e) == x
        && cat.cod(e) == x
        && cat.dom(r) == x
        && cat.cod(i) == x
        && cat.dom(i) == cat.cod(r)
        && cat.compose(i, r) == e
        && cat.compose(r, i) == cat.id(cat.cod(r));
    if ok {
        Ok(())
    } else {
        Err(Error::NotASplitting(format!(
            "`{}` via `{}`, `{}` in `{}`",
            cat.arrow_name(e),
            cat.arrow_name(r),
            cat.arrow_name(i),
            cat.name()
        )))
    }
}

/// The full subcategories `X_t`, `Y_t` of conjugate objects.
#[derive(Clone, Debug)]
pub struct FixedSubcategories {
    pub left: Arc<FinCategory>,
    pub right: Arc<FinCategory>,
    pub left_objects: Vec<ObjId>,
    pub right_objects: Vec<ObjId>,
    /// One bicartesian element per object of `left_objects`.
    pub pairing: Vec<ProfElement>,
}

impl FixedSubcategories {
    /// The functor `X_t -> Y_t` sending `f : x -> x2` to the unique `g` with
    /// `g.u = u2.f`, checked to be fully faithful and essentially surjective.
    pub fn comparison(&self, t: &Profunctor) -> Result<(FinFunctor, bool)> {
        let (x, y) = (&*t.left, &*t.right);
        let pos_right = |b: ObjId| self.right_objects.iter().position(|&v| v == b).expect("conjugate");
        let obj_map: Vec<ObjId> = self.pairing.iter().map(|u| pos_right(u.y)).collect();
        let mut arr_map = Vec::new();
        let mut fully_faithful = true;
        for (ia, &a) in self.left_objects.iter().enumerate() {
            for (ib, &b) in self.left_objects.iter().enumerate() {
                let (ua, ub) = (self.pairing[ia], self.pairing[ib]);
                let mut images = Vec::new();
                for &f in x.hom(a, b) {
                    let target = t.mul_right(ub, f);
                    let g = *y
                        .hom(ua.y, ub.y)
                        .iter()
                        .find(|&&g| t.mul_left(g, ua) == target)
                        .expect("opcartesian element factors every element");
                    images.push(g);
                }
                let mut sorted = images.clone();
                sorted.sort_unstable();
                sorted.dedup();
                fully_faithful &= sorted.len() == images.len() && images.len() == y.hom(ua.y, ub.y).len();
            }
        }
        // arrows of the subcategory are listed in source order; rebuild by name
        for f in self.left.arrows() {
            let orig = x.arrow_by_name(self.left.arrow_name(f)).expect("subcategory arrow");
            let a = self.left_objects[self.left.dom(f)];
            let b = self.left_objects[self.left.cod(f)];
            let ua = self.pairing[self.left_objects.iter().position(|&v| v == a).expect("present")];
            let ub = self.pairing[self.left_objects.iter().position(|&v| v == b).expect("present")];
            let target = t.mul_right(ub, orig);
            let g = *y.hom(ua.y, ub.y).iter().find(|&&g| t.mul_left(g, ua) == target).expect("factors");
            arr_map.push(self.right.arrow_by_name(y.arrow_name(g)).expect("subcategory arrow"));
        }
        let functor = FinFunctor::new(self.left.clone(), self.right.clone(), obj_map, arr_map)?;
        let essentially_surjective = self.right_objects.iter().all(|&b| {
            self.pairing.iter().any(|u| y.hom(u.y, b).iter().any(|&h| y.is_isomorphism(h)))
        });
        Ok((functor, fully_faithful && essentially_surjective))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fincat::CategoryBuilder;

    fn el(x: ObjId, y: ObjId, s: usize) -> ProfElement {
        ProfElement { x, y, s }
    }

    #[test]
    fn hom_profunctors_validate() {
        for c in catalog::all() {
            Profunctor::hom(&c).validate().unwrap();
        }
    }

    #[test]
    fn cartesian_examples() {
        let two = catalog::two();
        let t = Profunctor::hom(&two);
        assert!(!t.is_cartesian(el(0, 1, 0)));
        assert!(t.is_bicartesian(el(0, 0, 0)));
        let to_one = FinFunctor::to_terminal(&two);
        let adj = Profunctor::from_functor(&to_one);
        adj.validate().unwrap();
        assert!(adj.is_cartesian(el(1, 0, 0)));
    }

    #[test]
    fn hom_bicartesian_iff_iso() {
        for c in catalog::all().into_iter().filter(|c| c.num_objects() <= 3) {
            let t = Profunctor::hom(&c);
            for e in t.elements() {
                let h = c.hom(e.x, e.y)[e.s];
                assert_eq!(t.is_bicartesian(e), c.is_isomorphism(h), "{} {}", c.name(), c.arrow_name(h));
            }
        }
    }

    #[test]
    fn conjugation_in_groups() {
        let z2 = catalog::z2();
        let t = Profunctor::hom(&z2);
        let g = z2.arrow_by_name("g").unwrap();
        let u = el(0, 0, z2.hom(0, 0).iter().position(|&h| h == g).unwrap());
        // u f u^-1 with u = g, in an abelian group: f itself
        for &f in z2.hom(0, 0) {
            assert_eq!(t.conjugate_along(u, f).unwrap(), f);
        }
        assert!(t.conjugation_is_monoid_iso(u).unwrap());
        let idem = catalog::idem();
        let t = Profunctor::hom(&idem);
        let e_arr = idem.arrow_by_name("e").unwrap();
        let e_el = el(0, 0, idem.hom(0, 0).iter().position(|&h| h == e_arr).unwrap());
        assert!(matches!(t.conjugate_along(e_el, e_arr), Err(Error::NotBicartesian(_))));
    }

    #[test]
    fn split_conjugate_idempotents() {
        let split = catalog::split();
        let t = Profunctor::hom(&split);
        let x = split.object_by_name("x").unwrap();
        let y = split.object_by_name("y").unwrap();
        let a = |n: &str| split.arrow_by_name(n).unwrap();
        let u = el(x, x, split.hom(x, x).iter().position(|&h| h == split.id(x)).unwrap());
        let out = t.split_conjugates(u, a("e"), (a("r"), a("i")), a("e"), (a("r"), a("i"))).unwrap();
        assert_eq!((out.x, out.y), (y, y));
        assert!(t.is_bicartesian(out));
        // trivial splittings return u
        let idx = split.id(x);
        assert_eq!(t.split_conjugates(u, idx, (idx, idx), idx, (idx, idx)).unwrap(), u);
        // a bad splitting
        assert!(matches!(
            t.split_conjugates(u, a("e"), (a("e"), a("e")), a("e"), (a("r"), a("i"))),
            Err(Error::NotASplitting(_))
        ));
        // not conjugate
        assert!(matches!(
            t.split_conjugates(u, a("e"), (a("r"), a("i")), idx, (idx, idx)),
            Err(Error::NotConjugate(_))
        ));
    }

    #[test]
    fn fixed_subcategories_of_hom_and_empty() {
        for c in catalog::all() {
            let t = Profunctor::hom(&c);
            let fixed = t.fixed_subcategories();
            assert_eq!(fixed.left.num_objects(), c.num_objects());
            let (_, eq) = fixed.comparison(&t).unwrap();
            assert!(eq);
        }
        let two = catalog::two();
        let empty = Profunctor::new(
            "0",
            two.clone(),
            two.clone(),
            vec![Vec::new(); 4],
            vec![vec![Vec::new(); 2]; 3],
            vec![vec![Vec::new(); 2]; 3],
        )
        .unwrap();
        let fixed = empty.fixed_subcategories();
        assert!(fixed.left.is_empty() && fixed.right.is_empty());
    }

    #[test]
    fn adjunction_fixes_isomorphic_units() {
        // the reflection of 0 < 1 onto {1}: every unit is invertible only at 1
        let two = catalog::two();
        let one = CategoryBuilder::new("top").object("1").build().unwrap();
        let f = FinFunctor::to_terminal(&two);
        let t = Profunctor::from_functor(&f);
        let fixed = t.fixed_subcategories();
        assert_eq!(fixed.left_objects, vec![1]);
        assert_eq!(fixed.right.num_objects(), one.num_objects());
        assert!(fixed.comparison(&t).unwrap().1);
    }
}
