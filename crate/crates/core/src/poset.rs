//! Finite posets with down-dense maps and down-closed embeddings (and their
//! duals) as the factorization classes; subsets are bit masks.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory};

/// A subset of a poset with at most 64 elements.
pub type Mask = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    name: String,
    elements: Vec<String>,
    // down[a] = { b | b <= a }
    down: Vec<Mask>,
    up: Vec<Mask>,
}

impl FinPoset {
    /// Takes generating relations `a <= b`; reflexive and transitive closure
    /// is computed, antisymmetry checked.
    pub fn new(name: impl Into<String>, elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        if n > 64 {
            return Err(Error::BoundExceeded(format!("posets are limited to 64 elements, got {n}")));
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::DuplicateName { kind: "element", name: e.clone() });
            }
        }
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if le[a][b] && le[b][a] {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` and `{}` are distinct but equivalent",
                        elements[a], elements[b]
                    )));
                }
            }
        }
        let down = (0..n).map(|a| (0..n).filter(|&b| le[b][a]).fold(0, |m, b| m | 1 << b)).collect();
        let up = (0..n).map(|a| (0..n).filter(|&b| le[a][b]).fold(0, |m, b| m | 1 << b)).collect();
        Ok(FinPoset { name: name.into(), elements, down, up })
    }

    fn from_down(name: String, elements: Vec<String>, down: Vec<Mask>) -> Self {
        let n = elements.len();
        let up = (0..n).map(|a| (0..n).filter(|&b| down[b] >> a & 1 == 1).fold(0, |m, b| m | 1 << b)).collect();
        FinPoset { name, elements, down, up }
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(format!("chain{n}"), (0..n).map(|i| i.to_string()).collect(), &rel).expect("chain")
    }

    pub fn antichain(names: &[&str]) -> Self {
        Self::new(format!("antichain{}", names.len()), names.iter().map(|s| s.to_string()).collect(), &[]).expect("antichain")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
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

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b] >> a & 1 == 1
    }

    pub fn full(&self) -> Mask {
        if self.len() == 64 {
            !0
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn down_closure(&self, s: Mask) -> Mask {
        bits(s).fold(0, |m, a| m | self.down[a])
    }

    pub fn up_closure(&self, s: Mask) -> Mask {
        bits(s).fold(0, |m, a| m | self.up[a])
    }

    pub fn is_down_closed(&self, s: Mask) -> bool {
        self.down_closure(s) == s
    }

    pub fn is_up_closed(&self, s: Mask) -> bool {
        self.up_closure(s) == s
    }

    /// Every down-closed subset, in increasing mask order.
    pub fn down_sets(&self) -> Vec<Mask> {
        (0..=self.full()).filter(|&s| self.is_down_closed(s)).collect()
    }

    pub fn up_sets(&self) -> Vec<Mask> {
        (0..=self.full()).filter(|&s| self.is_up_closed(s)).collect()
    }

    pub fn mask_of(&self, names: &[&str]) -> Result<Mask> {
        names.iter().try_fold(0, |m, n| {
            self.element_by_name(n).map(|a| m | 1 << a).ok_or_else(|| Error::UnknownObject(n.to_string()))
        })
    }

    pub fn render_mask(&self, s: Mask) -> String {
        format!("{{{}}}", bits(s).map(|a| self.elements[a].as_str()).join(", "))
    }

    /// The sub-poset on `s`, with the induced order.
    pub fn restrict(&self, s: Mask, name: impl Into<String>) -> (FinPoset, Vec<usize>) {
        let keep: Vec<usize> = bits(s).collect();
        let down = keep
            .iter()
            .map(|&a| keep.iter().enumerate().filter(|&(_, &b)| self.leq(b, a)).fold(0, |m, (i, _)| m | 1 << i))
            .collect();
        let elements = keep.iter().map(|&a| self.elements[a].clone()).collect();
        (Self::from_down(name.into(), elements, down), keep)
    }

    pub fn opposite(&self) -> FinPoset {
        FinPoset { name: format!("{}^op", self.name), elements: self.elements.clone(), down: self.up.clone(), up: self.down.clone() }
    }

    /// Generating relations: the covering pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq(a, b))
            .filter(|&(a, b)| !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)))
            .collect()
    }

    /// The poset as a thin category, with an arrow `a<=b` for each relation.
    pub fn to_category(&self) -> FinCategory {
        let mut b = CategoryBuilder::new(self.name.clone());
        for e in &self.elements {
            b.add_object(e);
        }
        let n = self.len();
        let arrow = |a: usize, c: usize| {
            if a == c {
                format!("id_{}", self.elements[a])
            } else {
                format!("{}<={}", self.elements[a], self.elements[c])
            }
        };
        for a in 0..n {
            for c in 0..n {
                if a != c && self.leq(a, c) {
                    b.add_arrow(&arrow(a, c), &self.elements[a], &self.elements[c]);
                }
            }
        }
        for a in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a != c && c != d && self.leq(a, c) && self.leq(c, d) {
                        b.add_composite(&arrow(c, d), &arrow(a, c), &arrow(a, d));
                    }
                }
            }
        }
        b.build().expect("thin category of a poset")
    }

    // Minimal row-major encoding of the order matrix over all relabelings.
    fn canonical_code(&self) -> Vec<bool> {
        let n = self.len();
        (0..n)
            .permutations(n)
            .map(|p| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.leq(p[i], p[j])).collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }
}

impl fmt::Display for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poset {}", self.name)?;
        writeln!(f, "elements {}", self.elements.join(" "))?;
        for (a, b) in self.covers() {
            writeln!(f, "le {} {}", self.elements[a], self.elements[b])?;
        }
        Ok(())
    }
}

pub fn bits(s: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| s >> i & 1 == 1)
}

/// All posets with exactly `n` elements up to isomorphism. Every poset
/// arises from a smaller one by adding a maximal element above a down-set.
pub fn posets_of_size(n: usize) -> Vec<FinPoset> {
    let mut level = vec![FinPoset::from_down("p0_0".into(), Vec::new(), Vec::new())];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            for d in p.down_sets() {
                let mut down = p.down.clone();
                down.push(d | 1 << (k - 1));
                let elements = (0..k).map(|i| format!("e{i}")).collect();
                let q = FinPoset::from_down(String::new(), elements, down);
                if seen.insert(q.canonical_code()) {
                    next.push(q);
                }
            }
        }
        for (i, q) in next.iter_mut().enumerate() {
            q.name = format!("p{k}_{i}");
        }
        level = next;
    }
    level
}

/// All posets with at most `n` elements up to isomorphism, smallest first.
pub fn posets_up_to(n: usize) -> Vec<FinPoset> {
    (0..=n).flat_map(posets_of_size).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinPoset>, target: Arc<FinPoset>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&b| b >= target.len()) {
            return Err(Error::InvalidMonotoneMap("mapping does not match the element counts".into()));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(map[a], map[b]) {
                    return Err(Error::InvalidMonotoneMap(format!(
                        "`{}` <= `{}` but `{}` is not <= `{}`",
                        source.elements[a], source.elements[b], target.elements[map[a]], target.elements[map[b]]
                    )));
                }
            }
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn identity(p: &Arc<FinPoset>) -> Self {
        MonotoneMap { source: p.clone(), target: p.clone(), map: (0..p.len()).collect() }
    }

    pub fn inclusion(sub: Arc<FinPoset>, target: Arc<FinPoset>, keep: Vec<usize>) -> Result<Self> {
        Self::new(sub, target, keep)
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn image(&self, s: Mask) -> Mask {
        bits(s).fold(0, |m, a| m | 1 << self.map[a])
    }

    pub fn preimage(&self, s: Mask) -> Mask {
        (0..self.source.len()).filter(|&a| s >> self.map[a] & 1 == 1).fold(0, |m, a| m | 1 << a)
    }

    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if *first.target != *self.source {
            return Err(Error::CodomainMismatch("monotone maps are not composable".into()));
        }
        Ok(MonotoneMap { source: first.source.clone(), target: self.target.clone(), map: first.map.iter().map(|&a| self.map[a]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().all_unique()
    }

    /// `a <= b` iff `f a <= f b`.
    pub fn is_embedding(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| (0..n).all(|b| self.source.leq(a, b) == self.target.leq(self.map[a], self.map[b])))
    }

    /// Every element of the target lies below some image point.
    pub fn is_down_dense(&self) -> bool {
        self.target.down_closure(self.image(self.source.full())) == self.target.full()
    }

    pub fn is_up_dense(&self) -> bool {
        self.target.up_closure(self.image(self.source.full())) == self.target.full()
    }

    /// An embedding onto a down-closed subset.
    pub fn is_down_closed_embedding(&self) -> bool {
        self.is_embedding() && self.target.is_down_closed(self.image(self.source.full()))
    }

    pub fn is_up_closed_embedding(&self) -> bool {
        self.is_embedding() && self.target.is_up_closed(self.image(self.source.full()))
    }
}

/// Every monotone map between two posets.
pub fn monotone_maps(source: &Arc<FinPoset>, target: &Arc<FinPoset>) -> Vec<MonotoneMap> {
    fn go(s: &FinPoset, t: &FinPoset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let a = cur.len();
        if a == s.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..t.len() {
            let ok = (0..a).all(|c| (!s.leq(c, a) || t.leq(cur[c], b)) && (!s.leq(a, c) || t.leq(b, cur[c])));
            if ok {
                cur.push(b);
                go(s, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(source, target, &mut Vec::new(), &mut out);
    out.into_iter().map(|map| MonotoneMap { source: source.clone(), target: target.clone(), map }).collect()
}

#[derive(Clone, Debug)]
pub struct PosFactorization {
    /// The closed subset of the target through which the map factors.
    pub part: Mask,
    pub middle: Arc<FinPoset>,
    pub e: MonotoneMap,
    pub m: MonotoneMap,
}

impl PosFactorization {
    pub fn holds(&self, f: &MonotoneMap) -> bool {
        self.m.after(&self.e).map(|g| g.map == f.map).unwrap_or(false)
    }
}

fn factor_through(f: &MonotoneMap, part: Mask, name: String) -> PosFactorization {
    let (sub, keep) = f.target.restrict(part, name);
    let middle = Arc::new(sub);
    let e_map = f.map.iter().map(|b| keep.iter().position(|k| k == b).expect("image inside part")).collect();
    let e = MonotoneMap { source: f.source.clone(), target: middle.clone(), map: e_map };
    let m = MonotoneMap { source: middle.clone(), target: f.target.clone(), map: keep };
    PosFactorization { part, middle, e, m }
}

/// `f = m e` with `m` the inclusion of the down-closure of the image.
pub fn pos_em_factorize(f: &MonotoneMap) -> PosFactorization {
    let part = f.target.down_closure(f.image(f.source.full()));
    factor_through(f, part, format!("down({})", f.target.name))
}

/// `f = m' e'` with `m'` the inclusion of the up-closure of the image.
pub fn pos_em_prime_factorize(f: &MonotoneMap) -> PosFactorization {
    let part = f.target.up_closure(f.image(f.source.full()));
    factor_through(f, part, format!("up({})", f.target.name))
}

/// The down-closed subsets through which `f` factors down-densely; the
/// factorization is unique when this is a single set.
pub fn down_dense_factorizations(f: &MonotoneMap) -> Vec<Mask> {
    let img = f.image(f.source.full());
    f.target
        .down_sets()
        .into_iter()
        .filter(|&c| c & img == img && f.target.down_closure(img) & c == c)
        .collect()
}

/// Meets predicate: whether `n` and `m` intersect.
pub fn pos_tensor(x: &FinPoset, n: Mask, m: Mask) -> Result<bool> {
    if !x.is_up_closed(n) {
        return Err(Error::NotUpClosed(x.render_mask(n)));
    }
    if !x.is_down_closed(m) {
        return Err(Error::NotDownClosed(x.render_mask(m)));
    }
    Ok(n & m != 0)
}

/// Pulls a down-dense inclusion `a` of `b` back along an up-closed `u` and
/// reports whether `a & u` is still down-dense in `u`.
pub fn pos_rsl_check(b: &FinPoset, a: Mask, u: Mask) -> Result<bool> {
    if b.down_closure(a) != b.full() {
        return Err(Error::PreconditionFailed(format!("{} is not down-dense in `{}`", b.render_mask(a), b.name)));
    }
    if !b.is_up_closed(u) {
        return Err(Error::NotUpClosed(b.render_mask(u)));
    }
    Ok(b.down_closure(a & u) & u == u)
}

/// `f^* n (x) m` against `n (x) exists_f m`.
pub fn pos_coadjunction_check(f: &MonotoneMap, m: Mask, n: Mask) -> Result<bool> {
    let left = pos_tensor(&f.source, f.preimage(n), m)?;
    let right = pos_tensor(&f.target, n, f.target.down_closure(f.image(m)))?;
    Ok(left == right)
}

/// Given down-dense `e : A -> B` (an inclusion), a down-closed `c` in `d`
/// and a square `v e = m u`, the number of diagonals `B -> C`.
pub fn inclusion_square_diagonals(b: &FinPoset, a: Mask, d: &FinPoset, c: Mask, v: &[usize]) -> usize {
    debug_assert!(d.is_down_closed(c) && bits(a).all(|x| c >> v[x] & 1 == 1));
    // C -> D is injective, so a diagonal is v read inside C when it lands there
    usize::from((0..b.len()).all(|x| c >> v[x] & 1 == 1))
}

/// Totals of an exhaustive sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sweep {
    pub posets: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.posets += other.posets;
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self
    }
}

/// Reciprocal stability for every down-dense `A` and up-closed `u` of every poset.
pub fn rsl_sweep(posets: &[FinPoset]) -> Sweep {
    posets
        .par_iter()
        .map(|b| {
            let mut s = Sweep { posets: 1, ..Sweep::default() };
            let ups = b.up_sets();
            for a in (0..=b.full()).filter(|&a| b.down_closure(a) == b.full()) {
                for &u in &ups {
                    s.cases += 1;
                    if !pos_rsl_check(b, a, u).unwrap_or(false) {
                        s.failures.push(format!("{}: A = {}, u = {}", b.name, b.render_mask(a), b.render_mask(u)));
                    }
                }
            }
            s
        })
        .reduce(Sweep::default, Sweep::merge)
}

/// The coadjunction law for every monotone map between the posets and all
/// closed subsets, together with the dual law for up-sets and down-sets.
pub fn coadjunction_sweep(posets: &[FinPoset]) -> Sweep {
    let arcs: Vec<Arc<FinPoset>> = posets.iter().cloned().map(Arc::new).collect();
    let downs: Vec<Vec<Mask>> = posets.iter().map(FinPoset::down_sets).collect();
    let ups: Vec<Vec<Mask>> = posets.iter().map(FinPoset::up_sets).collect();
    let pairs: Vec<(usize, usize)> = (0..arcs.len()).flat_map(|i| (0..arcs.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&arcs[i], &arcs[j]);
            let mut s = Sweep { posets: usize::from(i == j), ..Sweep::default() };
            for f in monotone_maps(x, y) {
                let pushed: Vec<Mask> = downs[i].iter().map(|&m| y.down_closure(f.image(m))).collect();
                let pulled: Vec<Mask> = ups[j].iter().map(|&n| f.preimage(n)).collect();
                for (&m, &em) in downs[i].iter().zip(&pushed) {
                    for (&n, &fn_) in ups[j].iter().zip(&pulled) {
                        s.cases += 1;
                        if (fn_ & m != 0) != (n & em != 0) {
                            s.failures.push(format!(
                                "{} -> {} via {:?}: m = {}, n = {}",
                                x.name,
                                y.name,
                                f.map,
                                x.render_mask(m),
                                y.render_mask(n)
                            ));
                        }
                    }
                }
            }
            s
        })
        .reduce(Sweep::default, Sweep::merge)
}

/// Tensor against the direct intersection oracle on all closed pairs.
pub fn tensor_sweep(posets: &[FinPoset]) -> Sweep {
    posets
        .par_iter()
        .map(|x| {
            let mut s = Sweep { posets: 1, ..Sweep::default() };
            for n in x.up_sets() {
                for m in x.down_sets() {
                    s.cases += 1;
                    let oracle = bits(n).any(|a| bits(m).any(|b| a == b));
                    if pos_tensor(x, n, m).ok() != Some(oracle) {
                        s.failures.push(format!("{}: n = {}, m = {}", x.name, x.render_mask(n), x.render_mask(m)));
                    }
                }
            }
            s
        })
        .reduce(Sweep::default, Sweep::merge)
}

/// Unique diagonals in every square from a down-dense inclusion to a
/// down-closed embedding, and uniqueness of the factorization of every map.
pub fn orthogonality_sweep(posets: &[FinPoset]) -> Sweep {
    let arcs: Vec<Arc<FinPoset>> = posets.iter().cloned().map(Arc::new).collect();
    let pairs: Vec<(usize, usize)> = (0..arcs.len()).flat_map(|i| (0..arcs.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (b, d) = (&arcs[i], &arcs[j]);
            let mut s = Sweep { posets: usize::from(i == j), ..Sweep::default() };
            let dense: Vec<Mask> = (0..=b.full()).filter(|&a| b.down_closure(a) == b.full()).collect();
            let closed = d.down_sets();
            for v in monotone_maps(b, d) {
                let unique = down_dense_factorizations(&v);
                if unique.len() != 1 || !pos_em_factorize(&v).holds(&v) {
                    s.failures.push(format!("factorization of {:?}: {} -> {}", v.map, b.name, d.name));
                }
                for &a in &dense {
                    let img = v.image(a);
                    for &c in closed.iter().filter(|&&c| c & img == img) {
                        s.cases += 1;
                        if inclusion_square_diagonals(b, a, d, c, &v.map) != 1 {
                            s.failures.push(format!(
                                "{} -> {}: A = {}, C = {}, v = {:?}",
                                b.name,
                                d.name,
                                b.render_mask(a),
                                d.render_mask(c),
                                v.map
                            ));
                        }
                    }
                }
            }
            s
        })
        .reduce(Sweep::default, Sweep::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<FinPoset> {
        Arc::new(FinPoset::chain(n))
    }

    #[test]
    fn closure_and_validation() {
        let p = FinPoset::new("v", vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(matches!(
            FinPoset::new("bad", vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]),
            Err(Error::InvalidPoset(_))
        ));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        let cat = p.to_category();
        assert_eq!((cat.num_objects(), cat.num_arrows()), (3, 6));
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn factorizations() {
        let c2 = chain(2);
        let f = MonotoneMap::identity(&c2);
        let fac = pos_em_factorize(&f);
        assert_eq!(fac.part, 0b11);
        assert!(fac.holds(&f));
        let one = chain(1);
        let pick1 = MonotoneMap::new(one.clone(), c2.clone(), vec![1]).unwrap();
        let fac = pos_em_factorize(&pick1);
        assert_eq!(fac.part, 0b11);
        assert!(fac.e.is_down_dense() && fac.m.is_down_closed_embedding());
        let pick0 = MonotoneMap::new(one.clone(), c2.clone(), vec![0]).unwrap();
        assert_eq!(pos_em_factorize(&pick0).part, 0b01);
        assert_eq!(pos_em_prime_factorize(&pick0).part, 0b11);
        assert_eq!(pos_em_prime_factorize(&pick1).part, 0b10);
        assert_eq!(down_dense_factorizations(&pick1), vec![0b11]);
        assert!(matches!(MonotoneMap::new(c2.clone(), c2.clone(), vec![1, 0]), Err(Error::InvalidMonotoneMap(_))));
    }

    #[test]
    fn tensor_examples() {
        let c2 = FinPoset::chain(2);
        assert!(!pos_tensor(&c2, 0b10, 0b01).unwrap());
        assert!(pos_tensor(&c2, 0b11, 0b01).unwrap());
        assert!(pos_tensor(&c2, 0b10, 0b11).unwrap());
        assert!(matches!(pos_tensor(&c2, 0b01, 0b01), Err(Error::NotUpClosed(_))));
        assert!(matches!(pos_tensor(&c2, 0b10, 0b10), Err(Error::NotDownClosed(_))));
        let one = FinPoset::chain(1);
        assert_eq!(one.down_sets(), vec![0, 1]);
    }

    #[test]
    fn rsl_examples() {
        let c3 = FinPoset::chain(3);
        assert!(pos_rsl_check(&c3, 0b100, 0b110).unwrap());
        assert!(pos_rsl_check(&c3, 0b100, 0b111).unwrap());
        let ab = FinPoset::antichain(&["a", "b"]);
        assert!(matches!(pos_rsl_check(&ab, 0b01, 0b11), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn coadjunction_examples() {
        let c3 = chain(3);
        let ab = Arc::new(FinPoset::antichain(&["a", "b"]));
        let f = MonotoneMap::new(ab.clone(), c3.clone(), vec![0, 2]).unwrap();
        for m in ab.down_sets() {
            for n in c3.up_sets() {
                assert!(pos_coadjunction_check(&f, m, n).unwrap());
            }
        }
        assert!(!pos_tensor(&ab, f.preimage(0b111), 0).unwrap());
        let g = MonotoneMap::new(c3.clone(), ab.clone(), vec![1, 1, 1]).unwrap();
        assert!(pos_coadjunction_check(&g, 0b011, 0b10).unwrap());
        assert!(pos_coadjunction_check(&g, 0b001, 0b01).unwrap());
    }

    #[test]
    fn small_sweeps() {
        let ps = posets_up_to(3);
        assert!(rsl_sweep(&ps).passed());
        assert!(coadjunction_sweep(&ps).passed());
        assert!(tensor_sweep(&ps).passed());
        assert!(orthogonality_sweep(&ps).passed());
    }
}
