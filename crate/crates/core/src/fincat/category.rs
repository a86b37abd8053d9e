use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type ArrId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category with a fully materialized composition table.
///
/// Objects and arrows are dense indices; names are only used for I/O. Arrow
/// order is canonical: identities come first in object order, followed by the
/// remaining arrows in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<ArrId>,
    // comp[g * n + f] = g . f when cod f = dom g
    comp: Vec<Option<ArrId>>,
    hom: Vec<Vec<ArrId>>,
}

impl FinCategory {
    /// Validates a raw composition table and builds the category.
    pub fn from_table(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<ArrId>,
        comp: Vec<Option<ArrId>>,
    ) -> Result<Self> {
        let cat = Self::assemble(name.into(), objects, arrows, identity, comp);
        cat.validate()?;
        Ok(cat)
    }

    pub(crate) fn assemble(
        name: String,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<ArrId>,
        comp: Vec<Option<ArrId>>,
    ) -> Self {
        let n_obj = objects.len();
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for (a, arr) in arrows.iter().enumerate() {
            hom[arr.dom * n_obj + arr.cod].push(a);
        }
        FinCategory { name, objects, arrows, identity, comp, hom }
    }

    /// Checks every category axiom exhaustively.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        if self.identity.len() != self.objects.len() || self.comp.len() != n * n {
            return Err(Error::IdentityViolation("table sizes do not match".into()));
        }
        for (x, &i) in self.identity.iter().enumerate() {
            let arr = self.arrows.get(i).ok_or_else(|| {
                Error::IdentityViolation(format!("identity of `{}` out of range", self.objects[x]))
            })?;
            if arr.dom != x || arr.cod != x {
                return Err(Error::IdentityViolation(format!(
                    "identity `{}` is not an endomorphism of `{}`",
                    arr.name, self.objects[x]
                )));
            }
        }
        for x in 0..self.identity.len() {
            for y in 0..x {
                if self.identity[x] == self.identity[y] {
                    return Err(Error::IdentityViolation(format!(
                        "`{}` and `{}` share an identity",
                        self.objects[x], self.objects[y]
                    )));
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match (composable, self.comp[g * n + f]) {
                    (true, None) => {
                        return Err(Error::MissingComposite {
                            g: self.arrow_name(g).into(),
                            f: self.arrow_name(f).into(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(Error::NotComposable {
                            g: self.arrow_name(g).into(),
                            f: self.arrow_name(f).into(),
                        })
                    }
                    (true, Some(h)) => {
                        if h >= n
                            || self.arrows[h].dom != self.arrows[f].dom
                            || self.arrows[h].cod != self.arrows[g].cod
                        {
                            return Err(Error::CompositeTypeMismatch {
                                g: self.arrow_name(g).into(),
                                f: self.arrow_name(f).into(),
                                h: if h < n { self.arrow_name(h).into() } else { h.to_string() },
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let Arrow { dom, cod, .. } = self.arrows[f];
            if self.compose(self.identity[cod], f) != f || self.compose(f, self.identity[dom]) != f {
                return Err(Error::IdentityViolation(format!(
                    "unit law fails for `{}`",
                    self.arrow_name(f)
                )));
            }
        }
        for f in 0..n {
            let mid = self.arrows[f].cod;
            for y in 0..self.objects.len() {
                for &g in self.hom(mid, y) {
                    let gf = self.compose(g, f);
                    for z in 0..self.objects.len() {
                        for &h in self.hom(y, z) {
                            if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                return Err(Error::AssociativityViolation {
                                    h: self.arrow_name(h).into(),
                                    g: self.arrow_name(g).into(),
                                    f: self.arrow_name(f).into(),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn arrows(&self) -> std::ops::Range<ArrId> {
        0..self.arrows.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: ArrId) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_name(&self, f: ArrId) -> &str {
        &self.arrows[f].name
    }

    pub fn dom(&self, f: ArrId) -> ObjId {
        self.arrows[f].dom
    }

    pub fn cod(&self, f: ArrId) -> ObjId {
        self.arrows[f].cod
    }

    pub fn id(&self, x: ObjId) -> ArrId {
        self.identity[x]
    }

    pub fn is_identity(&self, f: ArrId) -> bool {
        self.identity[self.arrows[f].dom] == f
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// `g . f`. Panics when the arrows are not composable.
    pub fn compose(&self, g: ArrId, f: ArrId) -> ArrId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("`{}` . `{}` is not composable in `{}`", self.arrow_name(g), self.arrow_name(f), self.name)
        })
    }

    pub fn try_compose(&self, g: ArrId, f: ArrId) -> Option<ArrId> {
        self.comp[g * self.arrows.len() + f]
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrId] {
        &self.hom[x * self.objects.len() + y]
    }

    /// Arrows with codomain `x`.
    pub fn arrows_into(&self, x: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        self.objects().flat_map(move |y| self.hom(y, x).iter().copied())
    }

    /// Arrows with domain `x`.
    pub fn arrows_from(&self, x: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        self.objects().flat_map(move |y| self.hom(x, y).iter().copied())
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = ArrId> + '_ {
        self.arrows().filter(move |&f| !self.is_identity(f))
    }

    /// Idempotent endomorphisms `e . e = e`, objects ascending then arrows ascending.
    pub fn idempotents(&self) -> Vec<(ObjId, ArrId)> {
        let mut out = Vec::new();
        for x in self.objects() {
            for &e in self.hom(x, x) {
                if self.compose(e, e) == e {
                    out.push((x, e));
                }
            }
        }
        out
    }

    pub fn is_isomorphism(&self, f: ArrId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: ArrId) -> Option<ArrId> {
        let Arrow { dom, cod, .. } = self.arrows[f];
        self.hom(cod, dom)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(dom) && self.compose(f, g) == self.id(cod))
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn opposite(&self) -> FinCategory {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), dom: a.cod, cod: a.dom })
            .collect();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                comp[g * n + f] = self.comp[f * n + g];
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        FinCategory::assemble(name, self.objects.clone(), arrows, self.identity.clone(), comp)
    }

    /// Cartesian product; objects and arrows are ordered lexicographically.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let mut tb = TableBuilder::new();
        for x in self.objects() {
            for y in other.objects() {
                tb.add_object(format!("({},{})", self.object_name(x), other.object_name(y)));
            }
        }
        let no = other.num_objects();
        for f in self.arrows() {
            for g in other.arrows() {
                let dom = self.dom(f) * no + other.dom(g);
                let cod = self.cod(f) * no + other.cod(g);
                let name = format!("({},{})", self.arrow_name(f), other.arrow_name(g));
                tb.add_arrow((f, g), name, dom, cod);
            }
        }
        for x in self.objects() {
            for y in other.objects() {
                tb.set_identity(x * no + y, &(self.id(x), other.id(y)));
            }
        }
        tb.finish(format!("{}x{}", self.name, other.name), |&(g1, g2), &(f1, f2)| {
            (self.compose(g1, f1), other.compose(g2, f2))
        })
    }

    /// Full subcategory on the given objects, in the given order.
    pub fn full_subcategory(&self, objects: &[ObjId], name: impl Into<String>) -> FinCategory {
        let mut tb = TableBuilder::new();
        for &x in objects {
            tb.add_object(self.object_name(x).to_string());
        }
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for &f in self.hom(x, y) {
                    tb.add_arrow(f, self.arrow_name(f).to_string(), i, j);
                }
            }
        }
        for (i, &x) in objects.iter().enumerate() {
            tb.set_identity(i, &self.id(x));
        }
        tb.finish(name.into(), |&g, &f| self.compose(g, f))
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} arrows)",
            self.name,
            self.objects.len(),
            self.arrows.len()
        )
    }
}

/// Builds derived categories whose arrows carry structured keys; the
/// composition table is filled by composing keys.
pub(crate) struct TableBuilder<K> {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    keys: Vec<K>,
    index: HashMap<K, ArrId>,
    identity: Vec<Option<ArrId>>,
}

impl<K: Clone + Eq + Hash> TableBuilder<K> {
    pub fn new() -> Self {
        TableBuilder {
            objects: Vec::new(),
            arrows: Vec::new(),
            keys: Vec::new(),
            index: HashMap::new(),
            identity: Vec::new(),
        }
    }

    pub fn add_object(&mut self, name: String) -> ObjId {
        self.objects.push(name);
        self.identity.push(None);
        self.objects.len() - 1
    }

    pub fn add_arrow(&mut self, key: K, name: String, dom: ObjId, cod: ObjId) -> ArrId {
        let id = self.arrows.len();
        self.arrows.push(Arrow { name, dom, cod });
        self.keys.push(key.clone());
        let prev = self.index.insert(key, id);
        debug_assert!(prev.is_none(), "duplicate arrow key");
        id
    }

    pub fn set_identity(&mut self, x: ObjId, key: &K) {
        self.identity[x] = Some(self.index[key]);
    }

    pub fn finish(self, name: impl Into<String>, compose: impl Fn(&K, &K) -> K) -> FinCategory {
        let n = self.arrows.len();
        let mut comp = vec![None; n * n];
        let mut by_dom: Vec<Vec<ArrId>> = vec![Vec::new(); self.objects.len()];
        for (a, arr) in self.arrows.iter().enumerate() {
            by_dom[arr.dom].push(a);
        }
        for f in 0..n {
            for &g in &by_dom[self.arrows[f].cod] {
                let key = compose(&self.keys[g], &self.keys[f]);
                let h = *self
                    .index
                    .get(&key)
                    .expect("derived composite must be one of the enumerated arrows");
                comp[g * n + f] = Some(h);
            }
        }
        let identity = self
            .identity
            .into_iter()
            .map(|i| i.expect("every derived object needs an identity"))
            .collect();
        let cat = FinCategory::assemble(name.into(), self.objects, self.arrows, identity, comp);
        debug_assert_eq!(cat.validate(), Ok(()));
        cat
    }
}

/// Incremental description of a category by names, as read from `.fincat` text.
///
/// Identity composites are filled automatically; every other composable pair
/// must be declared.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn object(mut self, name: &str) -> Self {
        self.add_object(name);
        self
    }

    pub fn arrow(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.add_arrow(name, dom, cod);
        self
    }

    pub fn identity(mut self, object: &str, name: &str) -> Self {
        self.add_identity(object, name);
        self
    }

    /// Declares `g . f = h`.
    pub fn comp(mut self, g: &str, f: &str, h: &str) -> Self {
        self.add_composite(g, f, h);
        self
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn add_object(&mut self, name: &str) {
        self.objects.push(name.to_string());
    }

    pub fn add_arrow(&mut self, name: &str, dom: &str, cod: &str) {
        self.arrows.push((name.to_string(), dom.to_string(), cod.to_string()));
    }

    pub fn add_identity(&mut self, object: &str, name: &str) {
        self.identities.push((object.to_string(), name.to_string()));
    }

    pub fn add_composite(&mut self, g: &str, f: &str, h: &str) {
        self.composites.push((g.to_string(), f.to_string(), h.to_string()));
    }

    pub fn build(&self) -> Result<FinCategory> {
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(Error::DuplicateName { kind: "object", name: o.clone() });
            }
        }
        let lookup_obj = |name: &str| {
            obj_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()))
        };

        let mut id_names: Vec<Option<String>> = vec![None; self.objects.len()];
        for (o, name) in &self.identities {
            let x = lookup_obj(o)?;
            if let Some(prev) = &id_names[x] {
                if prev != name {
                    return Err(Error::IdentityViolation(format!("`{o}` given two identities")));
                }
            }
            id_names[x] = Some(name.clone());
        }
        let id_names: Vec<String> = id_names
            .into_iter()
            .enumerate()
            .map(|(x, n)| n.unwrap_or_else(|| format!("id_{}", self.objects[x])))
            .collect();

        let mut arrows: Vec<Arrow> = id_names
            .iter()
            .enumerate()
            .map(|(x, n)| Arrow { name: n.clone(), dom: x, cod: x })
            .collect();
        let mut arr_index: HashMap<String, ArrId> =
            id_names.iter().enumerate().map(|(x, n)| (n.clone(), x)).collect();
        if arr_index.len() != id_names.len() {
            return Err(Error::IdentityViolation("two objects share an identity name".into()));
        }
        for (name, d, c) in &self.arrows {
            let (dom, cod) = (lookup_obj(d)?, lookup_obj(c)?);
            if let Some(&existing) = arr_index.get(name) {
                if existing < id_names.len() && dom == existing && cod == existing {
                    // explicit declaration of an identity arrow
                    continue;
                }
                if existing < id_names.len() {
                    return Err(Error::IdentityViolation(format!(
                        "identity `{name}` declared with domain `{d}` and codomain `{c}`"
                    )));
                }
                return Err(Error::DuplicateName { kind: "arrow", name: name.clone() });
            }
            arr_index.insert(name.clone(), arrows.len());
            arrows.push(Arrow { name: name.clone(), dom, cod });
        }

        let n = arrows.len();
        let lookup_arr = |name: &str| {
            arr_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
        };
        let mut comp: Vec<Option<ArrId>> = vec![None; n * n];
        for (g, f, h) in &self.composites {
            let (gi, fi, hi) = (lookup_arr(g)?, lookup_arr(f)?, lookup_arr(h)?);
            if arrows[fi].cod != arrows[gi].dom {
                return Err(Error::NotComposable { g: g.clone(), f: f.clone() });
            }
            if arrows[hi].dom != arrows[fi].dom || arrows[hi].cod != arrows[gi].cod {
                return Err(Error::CompositeTypeMismatch { g: g.clone(), f: f.clone(), h: h.clone() });
            }
            let slot = &mut comp[gi * n + fi];
            if let Some(prev) = *slot {
                if prev != hi {
                    return Err(Error::ConflictingComposite { g: g.clone(), f: f.clone() });
                }
            }
            *slot = Some(hi);
        }
        for f in 0..n {
            let Arrow { dom, cod, .. } = arrows[f];
            for (g, fi, expect) in [(cod, f, f), (f, dom, f)] {
                match comp[g * n + fi] {
                    Some(h) if h != expect => {
                        return Err(Error::IdentityViolation(format!(
                            "`{} . {}` must be `{}`",
                            arrows[g].name, arrows[fi].name, arrows[expect].name
                        )))
                    }
                    _ => comp[g * n + fi] = Some(expect),
                }
            }
        }
        let identity = (0..self.objects.len()).collect();
        FinCategory::from_table(self.name.clone(), self.objects.clone(), arrows, identity, comp)
    }
}
