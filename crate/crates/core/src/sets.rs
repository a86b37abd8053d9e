//! Finite-set-valued functors: presheaves, copresheaves and maps between them.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fincat::{same_category, ArrId, FinCategory, FinFunctor, ObjId};

/// A named finite set of tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    pub fn new(elements: Vec<String>) -> Self {
        FinSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn of_size(n: usize) -> Self {
        FinSet { elements: (0..n).map(|i| i.to_string()).collect() }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(", "))
    }
}

fn check_functorial(base: &FinCategory, fibers: &[Vec<String>], action: &[Vec<usize>], covariant: bool) -> Result<()> {
    if fibers.len() != base.num_objects() || action.len() != base.num_arrows() {
        return Err(Error::InvalidPresheaf("one fiber per object and one action per arrow required".into()));
    }
    // (from, to) of the function attached to f
    let ends = |f: ArrId| if covariant { (base.dom(f), base.cod(f)) } else { (base.cod(f), base.dom(f)) };
    for f in base.arrows() {
        let (from, to) = ends(f);
        if action[f].len() != fibers[from].len() || action[f].iter().any(|&b| b >= fibers[to].len()) {
            return Err(Error::InvalidPresheaf(format!("action of `{}` is not a function", base.arrow_name(f))));
        }
    }
    for x in base.objects() {
        if action[base.id(x)].iter().enumerate().any(|(a, &b)| a != b) {
            return Err(Error::InvalidPresheaf(format!("identity of `{}` acts non-trivially", base.object_name(x))));
        }
    }
    for f in base.arrows() {
        for g in base.arrows_from(base.cod(f)) {
            let h = base.compose(g, f);
            // covariant: h = g after f; contravariant: h acts as f after g
            let (first, second) = if covariant { (f, g) } else { (g, f) };
            let ok = (0..action[first].len()).all(|a| action[h][a] == action[second][action[first][a]]);
            if !ok {
                return Err(Error::InvalidPresheaf(format!(
                    "action does not respect `{} . {}`",
                    base.arrow_name(g),
                    base.arrow_name(f)
                )));
            }
        }
    }
    Ok(())
}

macro_rules! set_functor_common {
    () => {
        pub fn name(&self) -> &str {
            &self.name
        }

        pub fn with_name(mut self, name: impl Into<String>) -> Self {
            self.name = name.into();
            self
        }

        pub fn base(&self) -> &Arc<FinCategory> {
            &self.base
        }

        pub fn fiber(&self, x: ObjId) -> &[String] {
            &self.fibers[x]
        }

        pub fn fiber_len(&self, x: ObjId) -> usize {
            self.fibers[x].len()
        }

        pub fn fibers(&self) -> &[Vec<String>] {
            &self.fibers
        }

        /// The function attached to the arrow `f`.
        pub fn action(&self, f: ArrId) -> &[usize] {
            &self.action[f]
        }

        pub fn act(&self, f: ArrId, a: usize) -> usize {
            self.action[f][a]
        }

        pub fn total_size(&self) -> usize {
            self.fibers.iter().map(Vec::len).sum()
        }

        pub fn element_index(&self, x: ObjId, token: &str) -> Option<usize> {
            self.fibers[x].iter().position(|t| t == token)
        }

        /// Maps into `other` (natural transformations), in lexicographic order.
        pub fn maps_to(&self, other: &Self) -> Result<Vec<SetMap>> {
            self.check_same_base(other)?;
            Ok(natural_maps(&self.graph(), &other.graph(), MapMode::All, None))
        }

        /// Some natural isomorphism into `other`, if one exists.
        pub fn find_isomorphism(&self, other: &Self) -> Result<Option<SetMap>> {
            self.check_same_base(other)?;
            Ok(natural_maps(&self.graph(), &other.graph(), MapMode::Bijective, Some(1)).pop())
        }

        /// Checks that `map` is natural from `self` to `other`.
        pub fn is_natural(&self, other: &Self, map: &SetMap) -> bool {
            let (g1, g2) = (self.graph(), other.graph());
            map.components.len() == g1.sizes.len()
                && map.components.iter().enumerate().all(|(x, c)| {
                    c.len() == g1.sizes[x] && c.iter().all(|&b| b < g2.sizes[x])
                })
                && g1.edges.iter().zip(&g2.edges).all(|(&(u, v, smap), &(_, _, tmap))| {
                    (0..g1.sizes[u]).all(|a| map.components[v][smap[a]] == tmap[map.components[u][a]])
                })
        }

        fn check_same_base(&self, other: &Self) -> Result<()> {
            if same_category(&self.base, &other.base) {
                Ok(())
            } else {
                Err(Error::BaseMismatch(format!("`{}` vs `{}`", self.base.name(), other.base.name())))
            }
        }

        /// The function pairs used by the map search.
        pub(crate) fn graph(&self) -> ActionGraph<'_> {
            let mut edges = Vec::new();
            for f in self.base.non_identity_arrows() {
                edges.push((self.from_end(f), self.to_end(f), self.action[f].as_slice()));
            }
            ActionGraph { sizes: self.fibers.iter().map(Vec::len).collect(), edges }
        }

        /// Pullback `f^* m` along a functor into the base.
        pub fn restrict(&self, f: &FinFunctor) -> Result<Self> {
            if !same_category(f.target(), &self.base) {
                return Err(Error::BaseMismatch(format!(
                    "functor into `{}` vs base `{}`",
                    f.target().name(),
                    self.base.name()
                )));
            }
            let src = f.source();
            Ok(Self {
                name: format!("{}*{}", src.name(), self.name),
                base: src.clone(),
                fibers: src.objects().map(|x| self.fibers[f.obj(x)].clone()).collect(),
                action: src.arrows().map(|u| self.action[f.arr(u)].clone()).collect(),
            })
        }

        /// Global sections: one chosen element per object, compatible with
        /// every action.
        pub fn sections(&self) -> Vec<Vec<usize>> {
            let ones = ActionGraph {
                sizes: vec![1; self.base.num_objects()],
                edges: self.graph().edges.iter().map(|&(u, v, _)| (u, v, &[0usize][..])).collect(),
            };
            natural_maps(&ones, &self.graph(), MapMode::All, None)
                .into_iter()
                .map(|m| m.components.into_iter().map(|c| c[0]).collect())
                .collect()
        }

        pub fn render(&self) -> String {
            let mut out = String::new();
            for x in self.base.objects() {
                out.push_str(&format!("  {} : {{{}}}\n", self.base.object_name(x), self.fibers[x].join(" ")));
            }
            out
        }
    };
}

/// A contravariant finite-set-valued functor `X^op -> FinSet`.
///
/// `action(f)` for `f : x' -> x` is a function `fiber(x) -> fiber(x')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    name: String,
    base: Arc<FinCategory>,
    fibers: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl Presheaf {
    set_functor_common!();

    pub fn new(
        name: impl Into<String>,
        base: Arc<FinCategory>,
        fibers: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_functorial(&base, &fibers, &action, false)?;
        Ok(Presheaf { name: name.into(), base, fibers, action })
    }

    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        base: Arc<FinCategory>,
        fibers: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(check_functorial(&base, &fibers, &action, false), Ok(()));
        Presheaf { name: name.into(), base, fibers, action }
    }

    fn from_end(&self, f: ArrId) -> ObjId {
        self.base.cod(f)
    }

    fn to_end(&self, f: ArrId) -> ObjId {
        self.base.dom(f)
    }

    /// The constant presheaf at `set`.
    pub fn constant(base: &Arc<FinCategory>, set: &FinSet) -> Self {
        let fibers = vec![set.elements().to_vec(); base.num_objects()];
        let action = vec![(0..set.len()).collect(); base.num_arrows()];
        Presheaf::new_unchecked(format!("const{set}"), base.clone(), fibers, action)
    }

    /// The terminal presheaf `1_X`.
    pub fn terminal(base: &Arc<FinCategory>) -> Self {
        Presheaf::constant(base, &FinSet::new(vec!["*".into()])).with_name("1")
    }

    pub fn empty(base: &Arc<FinCategory>) -> Self {
        Presheaf::constant(base, &FinSet::default()).with_name("0")
    }

    /// The representable `down(x) = Hom(-, x)`.
    pub fn representable(base: &Arc<FinCategory>, x: ObjId) -> Self {
        let fibers = base
            .objects()
            .map(|y| base.hom(y, x).iter().map(|&h| base.arrow_name(h).to_string()).collect())
            .collect();
        let action = base
            .arrows()
            .map(|f| {
                let (d, c) = (base.dom(f), base.cod(f));
                base.hom(c, x)
                    .iter()
                    .map(|&h| position(base.hom(d, x), base.compose(h, f)))
                    .collect()
            })
            .collect();
        Presheaf::new_unchecked(format!("down({})", base.object_name(x)), base.clone(), fibers, action)
    }

    /// Presheaf of a discrete fibration: fibers are the objects over each `x`.
    pub fn from_discrete_fibration(m: &FinFunctor) -> Result<Self> {
        let (a, x) = (m.source(), m.target());
        let mut fibers: Vec<Vec<String>> = vec![Vec::new(); x.num_objects()];
        let mut local = vec![0; a.num_objects()];
        for b in a.objects() {
            let fib = &mut fibers[m.obj(b)];
            local[b] = fib.len();
            fib.push(a.object_name(b).to_string());
        }
        let mut over: Vec<Vec<ObjId>> = vec![Vec::new(); x.num_objects()];
        for b in a.objects() {
            over[m.obj(b)].push(b);
        }
        let mut action = Vec::with_capacity(x.num_arrows());
        for f in x.arrows() {
            let mut row = Vec::new();
            for &b in &over[x.cod(f)] {
                let lifts: Vec<ArrId> = a.arrows_into(b).filter(|&g| m.arr(g) == f).collect();
                if lifts.len() != 1 {
                    return Err(Error::InvalidPresheaf(format!(
                        "`{}` has {} lifts of `{}`; not a discrete fibration",
                        a.object_name(b),
                        lifts.len(),
                        x.arrow_name(f)
                    )));
                }
                row.push(local[a.dom(lifts[0])]);
            }
            action.push(row);
        }
        Presheaf::new(format!("fib({})", a.name()), x.clone(), fibers, action)
    }

    /// The same data as a copresheaf on the opposite base.
    pub fn dual(&self) -> Copresheaf {
        Copresheaf {
            name: self.name.clone(),
            base: Arc::new(self.base.opposite()),
            fibers: self.fibers.clone(),
            action: self.action.clone(),
        }
    }
}

/// A covariant finite-set-valued functor `X -> FinSet`.
///
/// `action(f)` for `f : x -> x'` is a function `fiber(x) -> fiber(x')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copresheaf {
    name: String,
    base: Arc<FinCategory>,
    fibers: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl Copresheaf {
    set_functor_common!();

    pub fn new(
        name: impl Into<String>,
        base: Arc<FinCategory>,
        fibers: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_functorial(&base, &fibers, &action, true)?;
        Ok(Copresheaf { name: name.into(), base, fibers, action })
    }

    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        base: Arc<FinCategory>,
        fibers: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(check_functorial(&base, &fibers, &action, true), Ok(()));
        Copresheaf { name: name.into(), base, fibers, action }
    }

    fn from_end(&self, f: ArrId) -> ObjId {
        self.base.dom(f)
    }

    fn to_end(&self, f: ArrId) -> ObjId {
        self.base.cod(f)
    }

    pub fn constant(base: &Arc<FinCategory>, set: &FinSet) -> Self {
        Presheaf::constant(&Arc::new(base.opposite()), set).dual().with_base(base)
    }

    pub fn terminal(base: &Arc<FinCategory>) -> Self {
        Copresheaf::constant(base, &FinSet::new(vec!["*".into()])).with_name("1")
    }

    pub fn empty(base: &Arc<FinCategory>) -> Self {
        Copresheaf::constant(base, &FinSet::default()).with_name("0")
    }

    /// The corepresentable `up(x) = Hom(x, -)`.
    pub fn corepresentable(base: &Arc<FinCategory>, x: ObjId) -> Self {
        let op = Arc::new(base.opposite());
        Presheaf::representable(&op, x)
            .dual()
            .with_base(base)
            .with_name(format!("up({})", base.object_name(x)))
    }

    pub fn from_discrete_opfibration(n: &FinFunctor) -> Result<Self> {
        let p = Presheaf::from_discrete_fibration(&n.opposite())?;
        Ok(p.dual().with_base(n.target()).with_name(format!("opfib({})", n.source().name())))
    }

    pub fn dual(&self) -> Presheaf {
        Presheaf {
            name: self.name.clone(),
            base: Arc::new(self.base.opposite()),
            fibers: self.fibers.clone(),
            action: self.action.clone(),
        }
    }

    // Replaces the base by a structurally identical category (used after
    // round trips through the opposite).
    pub(crate) fn with_base(mut self, base: &Arc<FinCategory>) -> Self {
        debug_assert!(*self.base == **base);
        self.base = base.clone();
        self
    }
}

pub(crate) fn position(slice: &[usize], value: usize) -> usize {
    slice.iter().position(|&v| v == value).expect("value present")
}

/// A family of functions, one per object, between two set-valued functors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMap {
    pub components: Vec<Vec<usize>>,
}

impl SetMap {
    pub fn identity(sizes: impl IntoIterator<Item = usize>) -> Self {
        SetMap { components: sizes.into_iter().map(|n| (0..n).collect()).collect() }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &SetMap) -> SetMap {
        SetMap {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(f, g)| f.iter().map(|&a| g[a]).collect())
                .collect(),
        }
    }

    pub fn is_bijective(&self, target_sizes: &[usize]) -> bool {
        self.components.iter().zip(target_sizes).all(|(c, &n)| {
            let mut seen = vec![false; n];
            c.len() == n && c.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
        })
    }
}

/// Fiber sizes plus the non-identity actions as `(from, to, function)`.
pub(crate) struct ActionGraph<'a> {
    pub sizes: Vec<usize>,
    pub edges: Vec<(ObjId, ObjId, &'a [usize])>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum MapMode {
    All,
    Bijective,
}

/// Natural maps between two action graphs over the same base, by backtracking
/// over elements; each naturality constraint is checked once both of its
/// elements have been assigned.
pub(crate) fn natural_maps(src: &ActionGraph<'_>, tgt: &ActionGraph<'_>, mode: MapMode, limit: Option<usize>) -> Vec<SetMap> {
    let n_obj = src.sizes.len();
    if mode == MapMode::Bijective && src.sizes != tgt.sizes {
        return Vec::new();
    }
    let mut offset = vec![0; n_obj + 1];
    for x in 0..n_obj {
        offset[x + 1] = offset[x] + src.sizes[x];
    }
    let obj_of: Vec<ObjId> = (0..n_obj).flat_map(|x| std::iter::repeat(x).take(src.sizes[x])).collect();
    if (0..n_obj).any(|x| src.sizes[x] > 0 && tgt.sizes[x] == 0) {
        return Vec::new();
    }
    let mut constraints = Vec::new();
    for (&(u, v, smap), &(_, _, tmap)) in src.edges.iter().zip(&tgt.edges) {
        for a in 0..src.sizes[u] {
            constraints.push((offset[u] + a, offset[v] + smap[a], tmap));
        }
    }
    solve(&obj_of, &tgt.sizes, &constraints, mode == MapMode::Bijective, limit)
        .into_iter()
        .map(|flat| SetMap {
            components: (0..n_obj).map(|x| flat[offset[x]..offset[x + 1]].to_vec()).collect(),
        })
        .collect()
}

/// Backtracking over variables `k` with values in `0..domain[group[k]]`,
/// subject to `value[j] == map[value[i]]` for each `(i, j, map)`. Each
/// constraint is checked as soon as both its variables are assigned. With
/// `injective`, values within a group are pairwise distinct.
pub(crate) fn solve(
    group: &[usize],
    domain: &[usize],
    constraints: &[(usize, usize, &[usize])],
    injective: bool,
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let n_vars = group.len();
    let mut by_last: Vec<Vec<(usize, usize, &[usize])>> = vec![Vec::new(); n_vars];
    for &(i, j, map) in constraints {
        by_last[i.max(j)].push((i, j, map));
    }

    struct Search<'s> {
        group: &'s [usize],
        domain: &'s [usize],
        constraints: &'s [Vec<(usize, usize, &'s [usize])>],
        values: Vec<usize>,
        used: Vec<Vec<bool>>,
        injective: bool,
        out: Vec<Vec<usize>>,
        limit: usize,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize) {
            if self.out.len() >= self.limit {
                return;
            }
            if k == self.values.len() {
                self.out.push(self.values.clone());
                return;
            }
            let x = self.group[k];
            for b in 0..self.domain[x] {
                if self.injective && self.used[x][b] {
                    continue;
                }
                self.values[k] = b;
                let ok = self.constraints[k].iter().all(|&(i, j, map)| self.values[j] == map[self.values[i]]);
                if ok {
                    if self.injective {
                        self.used[x][b] = true;
                    }
                    self.run(k + 1);
                    if self.injective {
                        self.used[x][b] = false;
                    }
                }
            }
        }
    }

    let mut search = Search {
        group,
        domain,
        constraints: &by_last,
        values: vec![0; n_vars],
        used: domain.iter().map(|&n| vec![false; n]).collect(),
        injective,
        out: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
    };
    search.run(0);
    search.out
}

/// Functorial action tables over `base` with the given fiber sizes.
///
/// With `covariant` the function attached to `f` goes `dom -> cod`, otherwise
/// `cod -> dom`. With `bijective` only permutations are admitted. When an `rng`
/// is supplied the candidate order is shuffled at every arrow.
pub(crate) fn enumerate_actions<R: Rng>(
    base: &FinCategory,
    sizes: &[usize],
    covariant: bool,
    bijective: bool,
    mut rng: Option<&mut R>,
    limit: Option<usize>,
) -> Vec<Vec<Vec<usize>>> {
    let ends = |f: ArrId| if covariant { (base.dom(f), base.cod(f)) } else { (base.cod(f), base.dom(f)) };
    let free: Vec<ArrId> = base.non_identity_arrows().collect();
    let mut order = vec![usize::MAX; base.num_arrows()];
    for (k, &f) in free.iter().enumerate() {
        order[f] = k;
    }
    let mut checks: Vec<Vec<(ArrId, ArrId, ArrId)>> = vec![Vec::new(); free.len()];
    for &f in &free {
        for g in base.arrows_from(base.cod(f)) {
            if base.is_identity(g) {
                continue;
            }
            let h = base.compose(g, f);
            let last = order[g].max(order[f]).max(if base.is_identity(h) { 0 } else { order[h] });
            let (first, second) = if covariant { (f, g) } else { (g, f) };
            checks[last].push((first, second, h));
        }
    }
    let mut action: Vec<Vec<usize>> = vec![Vec::new(); base.num_arrows()];
    for x in base.objects() {
        action[base.id(x)] = (0..sizes[x]).collect();
    }
    let mut out = Vec::new();
    let limit = limit.unwrap_or(usize::MAX);

    fn candidates(from: usize, to: usize, bijective: bool) -> Vec<Vec<usize>> {
        if bijective {
            if from != to {
                return Vec::new();
            }
            let mut perms = Vec::new();
            let mut cur: Vec<usize> = Vec::new();
            fn rec(n: usize, cur: &mut Vec<usize>, perms: &mut Vec<Vec<usize>>) {
                if cur.len() == n {
                    perms.push(cur.clone());
                    return;
                }
                for b in 0..n {
                    if !cur.contains(&b) {
                        cur.push(b);
                        rec(n, cur, perms);
                        cur.pop();
                    }
                }
            }
            rec(from, &mut cur, &mut perms);
            return perms;
        }
        if to == 0 {
            return if from == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let count = to.pow(from as u32);
        (0..count)
            .map(|mut code| {
                (0..from)
                    .map(|_| {
                        let b = code % to;
                        code /= to;
                        b
                    })
                    .collect()
            })
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn rec<R: Rng>(
        k: usize,
        free: &[ArrId],
        cands: &[Vec<Vec<usize>>],
        checks: &[Vec<(ArrId, ArrId, ArrId)>],
        action: &mut Vec<Vec<usize>>,
        rng: &mut Option<&mut R>,
        out: &mut Vec<Vec<Vec<usize>>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == free.len() {
            out.push(action.clone());
            return;
        }
        let f = free[k];
        let mut idx: Vec<usize> = (0..cands[k].len()).collect();
        if let Some(r) = rng.as_mut() {
            idx.shuffle(*r);
        }
        for i in idx {
            action[f] = cands[k][i].clone();
            let ok = checks[k].iter().all(|&(first, second, h)| {
                (0..action[first].len()).all(|a| action[h][a] == action[second][action[first][a]])
            });
            if ok {
                rec(k + 1, free, cands, checks, action, rng, out, limit);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }

    let cands: Vec<Vec<Vec<usize>>> = free
        .iter()
        .map(|&f| {
            let (from, to) = ends(f);
            candidates(sizes[from], sizes[to], bijective)
        })
        .collect();
    rec(0, &free, &cands, &checks, &mut action, &mut rng, &mut out, limit);
    out
}

pub(crate) fn default_tokens(sizes: &[usize]) -> Vec<Vec<String>> {
    sizes
        .iter()
        .map(|&n| (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
        .collect()
}

/// Every presheaf on `base` with the given fiber sizes; tokens `a, b, c, ...`.
pub fn enumerate_presheaves(base: &Arc<FinCategory>, sizes: &[usize]) -> Vec<Presheaf> {
    let tokens = default_tokens(sizes);
    enumerate_actions::<rand_chacha::ChaCha8Rng>(base, sizes, false, false, None, None)
        .into_iter()
        .enumerate()
        .map(|(i, action)| Presheaf::new_unchecked(format!("m{i}"), base.clone(), tokens.clone(), action))
        .collect()
}

/// Every copresheaf on `base` with the given fiber sizes.
pub fn enumerate_copresheaves(base: &Arc<FinCategory>, sizes: &[usize]) -> Vec<Copresheaf> {
    let tokens = default_tokens(sizes);
    enumerate_actions::<rand_chacha::ChaCha8Rng>(base, sizes, true, false, None, None)
        .into_iter()
        .enumerate()
        .map(|(i, action)| Copresheaf::new_unchecked(format!("n{i}"), base.clone(), tokens.clone(), action))
        .collect()
}

/// All fiber-size vectors with entries `0..=max`.
pub fn size_vectors(n_objects: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n_objects {
        out = out
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
    out
}

/// Every presheaf with all fibers of size at most `max`.
pub fn presheaves_up_to(base: &Arc<FinCategory>, max: usize) -> Vec<Presheaf> {
    size_vectors(base.num_objects(), max)
        .iter()
        .flat_map(|s| enumerate_presheaves(base, s))
        .collect()
}

pub fn copresheaves_up_to(base: &Arc<FinCategory>, max: usize) -> Vec<Copresheaf> {
    size_vectors(base.num_objects(), max)
        .iter()
        .flat_map(|s| enumerate_copresheaves(base, s))
        .collect()
}

/// A seeded random presheaf with fibers of size at most `max`.
pub fn random_presheaf<R: Rng>(base: &Arc<FinCategory>, max: usize, rng: &mut R) -> Presheaf {
    loop {
        let sizes: Vec<usize> = base.objects().map(|_| rng.gen_range(0..=max)).collect();
        let found = enumerate_actions(base, &sizes, false, false, Some(&mut *rng), Some(1));
        if let Some(action) = found.into_iter().next() {
            return Presheaf::new_unchecked("m", base.clone(), default_tokens(&sizes), action);
        }
    }
}

pub fn random_copresheaf<R: Rng>(base: &Arc<FinCategory>, max: usize, rng: &mut R) -> Copresheaf {
    loop {
        let sizes: Vec<usize> = base.objects().map(|_| rng.gen_range(0..=max)).collect();
        let found = enumerate_actions(base, &sizes, true, false, Some(&mut *rng), Some(1));
        if let Some(action) = found.into_iter().next() {
            return Copresheaf::new_unchecked("n", base.clone(), default_tokens(&sizes), action);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn representable_on_two() {
        let two = catalog::two();
        let down1 = Presheaf::representable(&two, 1);
        assert_eq!(down1.fiber_len(0), 1);
        assert_eq!(down1.fiber_len(1), 1);
        let down0 = Presheaf::representable(&two, 0);
        assert_eq!(down0.fiber_len(0), 1);
        assert_eq!(down0.fiber_len(1), 0);
        let up0 = Copresheaf::corepresentable(&two, 0);
        assert_eq!((up0.fiber_len(0), up0.fiber_len(1)), (1, 1));
    }

    #[test]
    fn rejects_non_functorial_action() {
        let idem = catalog::idem();
        // e acting as the swap violates e.e = e
        let err = Presheaf::new(
            "bad",
            idem.clone(),
            vec![vec!["a".into(), "b".into()]],
            vec![vec![0, 1], vec![1, 0]],
        );
        assert!(matches!(err, Err(Error::InvalidPresheaf(_))));
    }

    #[test]
    fn yoneda_count() {
        // Nat(down x, m) has |m(x)| elements
        for cat in catalog::all() {
            for m in presheaves_up_to(&cat, 1).into_iter().take(20) {
                for x in cat.objects() {
                    let maps = Presheaf::representable(&cat, x).maps_to(&m).unwrap();
                    assert_eq!(maps.len(), m.fiber_len(x), "{} at {}", cat.name(), x);
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_filtering_all_tables() {
        let idem = catalog::idem();
        // functions {a,b} -> {a,b} for e: 4 candidates, idempotent ones: 3
        assert_eq!(enumerate_presheaves(&idem, &[2]).len(), 3);
        let z2 = catalog::z2();
        assert_eq!(enumerate_presheaves(&z2, &[2]).len(), 2);
    }
}
