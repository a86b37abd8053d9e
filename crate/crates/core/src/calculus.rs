//! Restriction, Kan extensions, colimits and limits of set-valued functors,
//! tensor and hom, exponentials, and the coadjunction bijections.

use std::collections::HashMap;

use crate::comma::{coelements, elements, pi0, pullback_over, ComponentsPartition};
use crate::error::{Error, Result};
use crate::factorization::{em_factorize, em_prime_factorize};
use crate::fincat::{same_category, ArrId, FinFunctor, ObjId};
use crate::sets::{solve, Copresheaf, FinSet, Presheaf, SetMap};

/// `f^* m`.
pub fn restrict(f: &FinFunctor, m: &Presheaf) -> Result<Presheaf> {
    m.restrict(f)
}

pub fn restrict_copresheaf(f: &FinFunctor, n: &Copresheaf) -> Result<Copresheaf> {
    n.restrict(f)
}

/// A Kan extension with its unit `m -> f^* lan(m)`.
#[derive(Clone, Debug)]
pub struct KanExtension<T> {
    pub result: T,
    pub unit: SetMap,
}

/// Left Kan extension of a presheaf: the fiber over `y` is the set of
/// triples `(x, alpha : y -> f x, b in m(x))` modulo
/// `(x, alpha, m(u) b') ~ (x', f(u) alpha, b')`.
pub fn lan(f: &FinFunctor, m: &Presheaf) -> Result<KanExtension<Presheaf>> {
    let (x, y) = (f.source(), f.target());
    if !same_category(x, m.base()) {
        return Err(Error::BaseMismatch(format!("functor from `{}` vs base `{}`", x.name(), m.base().name())));
    }
    let mut triples: Vec<Vec<(ObjId, ArrId, usize)>> = Vec::new();
    let mut index: Vec<HashMap<(ObjId, ArrId, usize), usize>> = Vec::new();
    let mut parts: Vec<ComponentsPartition> = Vec::new();
    for yy in y.objects() {
        let list: Vec<(ObjId, ArrId, usize)> = x
            .objects()
            .flat_map(|o| y.hom(yy, f.obj(o)).iter().flat_map(move |&a| (0..m.fiber_len(o)).map(move |b| (o, a, b))))
            .collect();
        let idx: HashMap<_, _> = list.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut edges = Vec::new();
        for u in x.arrows() {
            let (o, o2) = (x.dom(u), x.cod(u));
            for &alpha in y.hom(yy, f.obj(o)) {
                for b2 in 0..m.fiber_len(o2) {
                    edges.push((idx[&(o, alpha, m.act(u, b2))], idx[&(o2, y.compose(f.arr(u), alpha), b2)]));
                }
            }
        }
        parts.push(ComponentsPartition::from_edges(list.len(), edges));
        triples.push(list);
        index.push(idx);
    }
    let class = |yy: ObjId, t: (ObjId, ArrId, usize)| parts[yy].class_of[index[yy][&t]];
    let fibers = y
        .objects()
        .map(|yy| {
            parts[yy]
                .representatives
                .iter()
                .map(|&r| {
                    let (o, a, b) = triples[yy][r];
                    format!("({},{},{})", x.object_name(o), y.arrow_name(a), m.fiber(o)[b])
                })
                .collect()
        })
        .collect();
    let action = y
        .arrows()
        .map(|beta| {
            let (d, c) = (y.dom(beta), y.cod(beta));
            parts[c]
                .representatives
                .iter()
                .map(|&r| {
                    let (o, a, b) = triples[c][r];
                    class(d, (o, y.compose(a, beta), b))
                })
                .collect()
        })
        .collect();
    let result = Presheaf::new_unchecked(format!("lan({})", m.name()), y.clone(), fibers, action);
    let unit = SetMap {
        components: x
            .objects()
            .map(|o| (0..m.fiber_len(o)).map(|b| class(f.obj(o), (o, y.id(f.obj(o)), b))).collect())
            .collect(),
    };
    Ok(KanExtension { result, unit })
}

/// Left Kan extension of a copresheaf, through the opposites.
pub fn colan(f: &FinFunctor, n: &Copresheaf) -> Result<KanExtension<Copresheaf>> {
    let k = lan(&f.opposite(), &n.dual())?;
    Ok(KanExtension {
        result: k.result.dual().with_base(f.target()).with_name(format!("colan({})", n.name())),
        unit: k.unit,
    })
}

/// `pi0(el(m))`, one token `[x:a]` per component.
pub fn colim_presheaf(m: &Presheaf) -> FinSet {
    let el = elements(m);
    let parts = pi0(&el.category);
    FinSet::new(
        parts
            .representatives
            .iter()
            .map(|&r| {
                let (x, a) = el.element(r);
                format!("[{}:{}]", m.base().object_name(x), m.fiber(x)[a])
            })
            .collect(),
    )
}

pub fn colim_copresheaf(n: &Copresheaf) -> FinSet {
    colim_presheaf(&n.dual())
}

/// Compatible families, rendered `{x=a,...}`.
pub fn lim_presheaf(m: &Presheaf) -> FinSet {
    FinSet::new(
        m.sections()
            .into_iter()
            .map(|s| {
                let parts: Vec<String> = m
                    .base()
                    .objects()
                    .map(|x| format!("{}={}", m.base().object_name(x), m.fiber(x)[s[x]]))
                    .collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect(),
    )
}

pub fn lim_copresheaf(n: &Copresheaf) -> FinSet {
    lim_presheaf(&n.dual())
}

/// `n (x)_X m` with the class of every triple `(x, a, b)`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub set: FinSet,
    representatives: Vec<(ObjId, usize, usize)>,
    offsets: Vec<usize>,
    widths: Vec<usize>,
    class_of: Vec<usize>,
}

impl Tensor {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Smallest triple `(x, a, b)` of each class.
    pub fn representative(&self, class: usize) -> (ObjId, usize, usize) {
        self.representatives[class]
    }

    /// Class of `a in n(x)`, `b in m(x)`.
    pub fn class(&self, x: ObjId, a: usize, b: usize) -> usize {
        self.class_of[self.offsets[x] + a * self.widths[x] + b]
    }
}

/// `(x, a, m(u) b') ~ (x', n(u) a, b')` for `u : x -> x'`.
pub fn tensor(n: &Copresheaf, m: &Presheaf) -> Result<Tensor> {
    let base = m.base();
    if !same_category(n.base(), base) {
        return Err(Error::BaseMismatch(format!("`{}` vs `{}`", n.base().name(), base.name())));
    }
    let mut offsets = Vec::new();
    let mut total = 0;
    for x in base.objects() {
        offsets.push(total);
        total += n.fiber_len(x) * m.fiber_len(x);
    }
    let widths: Vec<usize> = base.objects().map(|x| m.fiber_len(x)).collect();
    let at = |x: ObjId, a: usize, b: usize| offsets[x] + a * widths[x] + b;
    let mut edges = Vec::new();
    for u in base.arrows() {
        let (x, x2) = (base.dom(u), base.cod(u));
        for a in 0..n.fiber_len(x) {
            for b2 in 0..m.fiber_len(x2) {
                edges.push((at(x, a, m.act(u, b2)), at(x2, n.act(u, a), b2)));
            }
        }
    }
    let parts = ComponentsPartition::from_edges(total, edges);
    let mut owner = Vec::with_capacity(total);
    for x in base.objects() {
        for a in 0..n.fiber_len(x) {
            for b in 0..m.fiber_len(x) {
                owner.push((x, a, b));
            }
        }
    }
    let tokens = parts
        .representatives
        .iter()
        .map(|&r| {
            let (x, a, b) = owner[r];
            format!("[{}:{}|{}]", base.object_name(x), n.fiber(x)[a], m.fiber(x)[b])
        })
        .collect();
    let representatives = parts.representatives.iter().map(|&r| owner[r]).collect();
    Ok(Tensor { set: FinSet::new(tokens), representatives, offsets, widths, class_of: parts.class_of })
}

/// `pi0(P x_X Q)` for figures `p`, `q` over `X`.
pub fn bar_tensor(p: &FinFunctor, q: &FinFunctor) -> Result<ComponentsPartition> {
    Ok(pi0(&pullback_over(p, q)?.apex))
}

pub fn hom_presheaves(m: &Presheaf, m2: &Presheaf) -> Result<Vec<SetMap>> {
    m.maps_to(m2)
}

pub fn hom_copresheaves(n: &Copresheaf, n2: &Copresheaf) -> Result<Vec<SetMap>> {
    n.maps_to(n2)
}

/// Functions `n(x) -> m(x)` encoded in base `|m(x)|`, least significant first.
fn decode(mut code: usize, len: usize, radix: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = code % radix;
            code /= radix;
            d
        })
        .collect()
}

fn encode(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

/// `m^n`: fiber over `x` is all functions `n(x) -> m(x)`, and `f : x' -> x`
/// sends `phi` to `m(f) . phi . n(f)`.
pub fn exp_fib_by_opfib(m: &Presheaf, n: &Copresheaf) -> Result<Presheaf> {
    let base = m.base();
    if !same_category(n.base(), base) {
        return Err(Error::BaseMismatch(format!("`{}` vs `{}`", n.base().name(), base.name())));
    }
    let count = |x: ObjId| m.fiber_len(x).pow(n.fiber_len(x) as u32);
    let fibers = base
        .objects()
        .map(|x| {
            (0..count(x))
                .map(|c| {
                    let phi = decode(c, n.fiber_len(x), m.fiber_len(x));
                    let parts: Vec<&str> = phi.iter().map(|&b| m.fiber(x)[b].as_str()).collect();
                    format!("<{}>", parts.join(","))
                })
                .collect()
        })
        .collect();
    let action = base
        .arrows()
        .map(|f| {
            let (x2, x) = (base.dom(f), base.cod(f));
            (0..count(x))
                .map(|c| {
                    let phi = decode(c, n.fiber_len(x), m.fiber_len(x));
                    let out: Vec<usize> = (0..n.fiber_len(x2)).map(|a| m.act(f, phi[n.act(f, a)])).collect();
                    encode(&out, m.fiber_len(x2))
                })
                .collect()
        })
        .collect();
    Ok(Presheaf::new_unchecked(format!("{}^{}", m.name(), n.name()), base.clone(), fibers, action))
}

/// Maps `el(k) x_X coel(n) -> el(m)` over `X`, as assignments
/// `psi(x, a, c) in m(x)`.
pub fn maps_from_product(k: &Presheaf, n: &Copresheaf, m: &Presheaf) -> Vec<Vec<usize>> {
    let base = m.base();
    let mut offsets = Vec::new();
    let mut group = Vec::new();
    for x in base.objects() {
        offsets.push(group.len());
        group.extend(std::iter::repeat(x).take(k.fiber_len(x) * n.fiber_len(x)));
    }
    let at = |x: ObjId, a: usize, c: usize| offsets[x] + a * n.fiber_len(x) + c;
    let mut constraints = Vec::new();
    for u in base.non_identity_arrows() {
        let (x2, x) = (base.dom(u), base.cod(u));
        for a in 0..k.fiber_len(x) {
            for c2 in 0..n.fiber_len(x2) {
                constraints.push((at(x, a, n.act(u, c2)), at(x2, k.act(u, a), c2), m.action(u)));
            }
        }
    }
    let domain: Vec<usize> = base.objects().map(|x| m.fiber_len(x)).collect();
    solve(&group, &domain, &constraints, false, None)
}

/// Checks `Hom(k x_X n, m) = Hom(k, m^n)` through the currying map.
pub fn exponential_bijection(k: &Presheaf, n: &Copresheaf, m: &Presheaf) -> Result<bool> {
    let exp = exp_fib_by_opfib(m, n)?;
    let curried = k.maps_to(&exp)?;
    let mut uncurried: Vec<Vec<usize>> = curried
        .iter()
        .map(|theta| {
            let base = m.base();
            base.objects()
                .flat_map(|x| {
                    let theta = &theta.components[x];
                    (0..k.fiber_len(x)).flat_map(move |a| decode(theta[a], n.fiber_len(x), m.fiber_len(x)))
                })
                .collect()
        })
        .collect();
    let mut direct = maps_from_product(k, n, m);
    uncurried.sort();
    direct.sort();
    let before = uncurried.len();
    uncurried.dedup();
    Ok(before == uncurried.len() && uncurried == direct)
}

/// One verified bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub name: String,
    pub left: usize,
    pub right: usize,
}

fn check_class_map(
    name: &str,
    pairs: impl IntoIterator<Item = (usize, usize)>,
    left: usize,
    right: usize,
) -> Result<BijectionCheck> {
    let mut image: Vec<Option<usize>> = vec![None; left];
    for (l, r) in pairs {
        match image[l] {
            Some(prev) if prev != r => {
                return Err(Error::BijectionFailure(format!("{name}: class {l} sent to {prev} and {r}")));
            }
            _ => image[l] = Some(r),
        }
    }
    let mut hit = vec![false; right];
    for (l, r) in image.iter().enumerate() {
        let r = r.ok_or_else(|| Error::BijectionFailure(format!("{name}: class {l} has no image")))?;
        if std::mem::replace(&mut hit[r], true) {
            return Err(Error::BijectionFailure(format!("{name}: class {r} hit twice")));
        }
    }
    if let Some(r) = hit.iter().position(|h| !h) {
        return Err(Error::BijectionFailure(format!("{name}: class {r} not hit")));
    }
    Ok(BijectionCheck { name: name.to_string(), left, right })
}

/// The endo of `n (x) m` induced by a fiberwise map of triples, checked to
/// respect the quotient.
fn tensor_class_map(
    t: &Tensor,
    n: &Copresheaf,
    m: &Presheaf,
    g: impl Fn(ObjId, usize, usize) -> (usize, usize),
) -> Result<Vec<usize>> {
    let mut image: Vec<Option<usize>> = vec![None; t.len()];
    for x in m.base().objects() {
        for a in 0..n.fiber_len(x) {
            for b in 0..m.fiber_len(x) {
                let (a2, b2) = g(x, a, b);
                let target = t.class(x, a2, b2);
                match image[t.class(x, a, b)] {
                    Some(prev) if prev != target => {
                        return Err(Error::BijectionFailure("map does not respect the tensor quotient".into()))
                    }
                    _ => image[t.class(x, a, b)] = Some(target),
                }
            }
        }
    }
    Ok(image.into_iter().map(|i| i.expect("every class has a member")).collect())
}

fn element_at(fibers: &[Vec<String>], mut o: usize) -> (ObjId, usize) {
    for (x, f) in fibers.iter().enumerate() {
        if o < f.len() {
            return (x, o);
        }
        o -= f.len();
    }
    unreachable!("element index in range")
}

const NATURALITY_CAP: usize = 12;

/// The coadjunction bijections, each built as an explicit map of classes:
///
/// * (a) `f^* n (x)_X m = n (x)_Y lan(f, m)`, natural in `m` and `n`;
/// * (b) `f (x)bar el(m') = up(f) (x)_Y m'` and `coel(n) (x)bar f = n (x)_Y down(f)`
///   with `m' = lan(f, m)`;
/// * (c) `e^* n' (x) 1 = n' (x) 1` for the final part `e` of `f`;
/// * (d) `(f p) (x)bar q = p (x)bar f^* q` for `p = el(m)`, `q = coel(n)`.
pub fn verify_coadjunction_battery(f: &FinFunctor, m: &Presheaf, n: &Copresheaf) -> Result<Vec<BijectionCheck>> {
    let x = f.source();
    let mut out = Vec::new();

    // (a)
    let fn_ = n.restrict(f)?;
    let kan = lan(f, m)?;
    let left = tensor(&fn_, m)?;
    let right = tensor(n, &kan.result)?;
    let pairs: Vec<(usize, usize)> = x
        .objects()
        .flat_map(|o| {
            let (left, right, kan) = (&left, &right, &kan);
            (0..fn_.fiber_len(o)).flat_map(move |a| {
                (0..m.fiber_len(o)).map(move |b| (left.class(o, a, b), right.class(f.obj(o), a, kan.unit.components[o][b])))
            })
        })
        .collect();
    out.push(check_class_map("f*n (x) m = n (x) lan m", pairs.iter().copied(), left.len(), right.len())?);
    let mut bij = vec![0; left.len()];
    for &(l, r) in &pairs {
        bij[l] = r;
    }
    let lan_maps = kan.result.maps_to(&kan.result)?;
    for phi in m.maps_to(m)?.into_iter().take(NATURALITY_CAP) {
        // lan(phi): the unique endo of lan m extending unit . phi
        let psi = lan_maps
            .iter()
            .find(|psi| {
                x.objects().all(|o| {
                    (0..m.fiber_len(o)).all(|b| {
                        psi.components[f.obj(o)][kan.unit.components[o][b]] == kan.unit.components[o][phi.components[o][b]]
                    })
                })
            })
            .ok_or_else(|| Error::BijectionFailure("lan of an endomorphism not found".into()))?;
        let l_map = tensor_class_map(&left, &fn_, m, |o, a, b| (a, phi.components[o][b]))?;
        let r_map = tensor_class_map(&right, n, &kan.result, |yy, a, c| (a, psi.components[yy][c]))?;
        if (0..left.len()).any(|c| bij[l_map[c]] != r_map[bij[c]]) {
            return Err(Error::BijectionFailure("naturality in m fails".into()));
        }
    }
    for psi in n.maps_to(n)?.into_iter().take(NATURALITY_CAP) {
        let l_map = tensor_class_map(&left, &fn_, m, |o, a, b| (psi.components[f.obj(o)][a], b))?;
        let r_map = tensor_class_map(&right, n, &kan.result, |yy, a, c| (psi.components[yy][a], c))?;
        if (0..left.len()).any(|c| bij[l_map[c]] != r_map[bij[c]]) {
            return Err(Error::BijectionFailure("naturality in n fails".into()));
        }
    }

    // (b)
    let m2 = &kan.result;
    let el = elements(m2);
    let pb = pullback_over(f, &el.projection)?;
    let comps = pi0(&pb.apex);
    let up = em_prime_factorize(f);
    let upf = up.copresheaf().expect("opfibration part").clone();
    let right = tensor(&upf, m2)?;
    let up_fibers = upf.fibers().to_vec();
    let pairs: Vec<(usize, usize)> = pb
        .apex
        .objects()
        .map(|o| {
            let q = pb.left_proj.obj(o);
            let (yy, b) = el.element(pb.right_proj.obj(o));
            let (yy2, a) = element_at(&up_fibers, up.e.obj(q));
            debug_assert_eq!(yy, yy2);
            (comps.class_of[o], right.class(yy, a, b))
        })
        .collect();
    out.push(check_class_map("f (x)bar m' = up(f) (x) m'", pairs, comps.size, right.len())?);

    let coel = coelements(n);
    let pb = pullback_over(&coel.projection, f)?;
    let comps = pi0(&pb.apex);
    let down = em_factorize(f);
    let downf = down.presheaf().expect("fibration part").clone();
    let right = tensor(n, &downf)?;
    let down_fibers = downf.fibers().to_vec();
    let pairs: Vec<(usize, usize)> = pb
        .apex
        .objects()
        .map(|o| {
            let (yy, a) = coel.element(pb.left_proj.obj(o));
            let (yy2, b) = element_at(&down_fibers, down.e.obj(pb.right_proj.obj(o)));
            debug_assert_eq!(yy, yy2);
            (comps.class_of[o], right.class(yy, a, b))
        })
        .collect();
    out.push(check_class_map("n (x)bar f = n (x) down(f)", pairs, comps.size, right.len())?);

    // (c)
    let e = &down.e;
    let n_mid = n.restrict(&down.m)?;
    let pulled = n_mid.restrict(e)?;
    let left = tensor(&pulled, &Presheaf::terminal(x))?;
    let right = tensor(&n_mid, &Presheaf::terminal(e.target()))?;
    let pairs: Vec<(usize, usize)> = x
        .objects()
        .flat_map(|o| {
            let (left, right) = (&left, &right);
            (0..pulled.fiber_len(o)).map(move |a| (left.class(o, a, 0), right.class(e.obj(o), a, 0)))
        })
        .collect();
    out.push(check_class_map("e*n (x) 1 = n (x) 1", pairs, left.len(), right.len())?);

    // (d)
    let p = elements(m).projection;
    let q = coelements(n).projection;
    let fp = f.after(&p)?;
    let big = pullback_over(&fp, &q)?;
    let fq = pullback_over(f, &q)?;
    let small = pullback_over(&p, &fq.left_proj)?;
    let big_c = pi0(&big.apex);
    let small_c = pi0(&small.apex);
    let index: HashMap<(ObjId, ObjId), ObjId> =
        big.apex.objects().map(|o| ((big.left_proj.obj(o), big.right_proj.obj(o)), o)).collect();
    let pairs: Vec<(usize, usize)> = small
        .apex
        .objects()
        .map(|o| {
            let a = small.left_proj.obj(o);
            let c = fq.right_proj.obj(small.right_proj.obj(o));
            (small_c.class_of[o], big_c.class_of[index[&(a, c)]])
        })
        .collect();
    out.push(check_class_map("p (x)bar f*q = f p (x)bar q", pairs, small_c.size, big_c.size)?);
    Ok(out)
}

/// Cardinality identities for hom-sets in the `Set`-valued model.
pub fn underline_hom_checks(f: &FinFunctor, p: &FinFunctor, m: &Presheaf, l: &Presheaf) -> Result<Vec<BijectionCheck>> {
    let mut out = Vec::new();
    let fail = |name: &str, a: usize, b: usize| Error::BijectionFailure(format!("{name}: {a} vs {b}"));

    // maps of figures p -> el(m) over X are assignments psi(q) in m(p q)
    let src = p.source();
    let group: Vec<usize> = src.objects().collect();
    let domain: Vec<usize> = src.objects().map(|q| m.fiber_len(p.obj(q))).collect();
    let constraints: Vec<(usize, usize, &[usize])> =
        src.non_identity_arrows().map(|u| (src.cod(u), src.dom(u), m.action(p.arr(u)))).collect();
    let over = solve(&group, &domain, &constraints, false, None).len();
    let down = em_factorize(p);
    let nat = down.presheaf().expect("fibration part").maps_to(m)?.len();
    if over != nat {
        return Err(fail("C/X(p, m) = Nat(down p, m)", over, nat));
    }
    out.push(BijectionCheck { name: "C/X(p, m) = Nat(down p, m)".into(), left: over, right: nat });

    let kan = lan(f, m)?;
    let a = m.maps_to(&l.restrict(f)?)?.len();
    let b = kan.result.maps_to(l)?.len();
    if a != b {
        return Err(fail("Nat(m, f*l) = Nat(lan m, l)", a, b));
    }
    out.push(BijectionCheck { name: "Nat(m, f*l) = Nat(lan m, l)".into(), left: a, right: b });

    let fact = em_factorize(f);
    let l_mid = l.restrict(&fact.m)?;
    let a = l_mid.restrict(&fact.e)?.sections().len();
    let b = l_mid.sections().len();
    if a != b {
        return Err(fail("Nat(1, e*l) = Nat(1, l)", a, b));
    }
    out.push(BijectionCheck { name: "Nat(1, e*l) = Nat(1, l)".into(), left: a, right: b });
    Ok(out)
}

/// The unit of `lan` is universal: restriction along it is a bijection
/// `Nat(lan m, l) -> Nat(m, f^* l)`.
pub fn lan_is_universal(f: &FinFunctor, m: &Presheaf, l: &Presheaf) -> Result<bool> {
    let kan = lan(f, m)?;
    let fl = l.restrict(f)?;
    let from_lan = kan.result.maps_to(l)?;
    let mut images: Vec<SetMap> = from_lan
        .iter()
        .map(|phi| SetMap {
            components: f
                .source()
                .objects()
                .map(|o| kan.unit.components[o].iter().map(|&c| phi.components[f.obj(o)][c]).collect())
                .collect(),
        })
        .collect();
    images.sort();
    images.dedup();
    let direct = m.maps_to(&fl)?;
    Ok(images.len() == from_lan.len() && images.len() == direct.len() && images.iter().all(|i| m.is_natural(&fl, i)))
}

/// `colim(e^* n) -> colim(n)` is a bijection for the canonical map.
pub fn final_preserves_colimit(e: &FinFunctor, n: &Copresheaf) -> Result<bool> {
    let pulled = n.restrict(e)?;
    let coel_p = coelements(&pulled);
    let coel_n = coelements(n);
    let cp = pi0(&coel_p.category);
    let cn = pi0(&coel_n.category);
    let pairs = coel_p.category.objects().map(|o| {
        let (x, a) = coel_p.element(o);
        (cp.class_of[o], cn.class_of[coel_n.object_of(e.obj(x), a)])
    });
    Ok(check_class_map("colim e*n = colim n", pairs, cp.size, cn.size).is_ok())
}

/// The presheaf maps act on `n (x) m` compatibly with the quotient.
pub fn tensor_is_functorial(n: &Copresheaf, m: &Presheaf, cap: usize) -> Result<bool> {
    let t = tensor(n, m)?;
    for phi in m.maps_to(m)?.into_iter().take(cap) {
        if tensor_class_map(&t, n, m, |x, a, b| (a, phi.components[x][b])).is_err() {
            return Ok(false);
        }
    }
    for psi in n.maps_to(n)?.into_iter().take(cap) {
        if tensor_class_map(&t, n, m, |x, a, b| (psi.components[x][a], b)).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sets::{copresheaves_up_to, presheaves_up_to};

    #[test]
    fn restriction_examples() {
        let two = catalog::two();
        let down1 = Presheaf::representable(&two, 1);
        assert_eq!(restrict(&FinFunctor::identity(&two), &down1).unwrap().fibers(), down1.fibers());
        assert_eq!(restrict(&FinFunctor::pick(&two, 1), &down1).unwrap().fiber_len(0), 1);
        assert_eq!(restrict(&FinFunctor::pick(&two, 0), &down1).unwrap().fiber_len(0), 1);
    }

    #[test]
    fn lan_examples() {
        for c in catalog::all() {
            let k = lan(&FinFunctor::to_terminal(&c), &Presheaf::terminal(&c)).unwrap();
            assert_eq!(k.result.fiber_len(0), pi0(&c).size);
            for m in presheaves_up_to(&c, 1).into_iter().take(6) {
                let k = lan(&FinFunctor::identity(&c), &m).unwrap();
                assert!(k.result.find_isomorphism(&m).unwrap().is_some());
            }
        }
        let idem = catalog::idem();
        let one = catalog::one();
        let k = lan(&FinFunctor::pick(&idem, 0), &Presheaf::terminal(&one)).unwrap();
        // the representable: Hom(*, *) = {id, e}
        assert_eq!(k.result.fiber_len(0), 2);
        for l in presheaves_up_to(&idem, 2) {
            assert!(lan_is_universal(&FinFunctor::pick(&idem, 0), &Presheaf::terminal(&one), &l).unwrap());
        }
    }

    #[test]
    fn colan_is_dual() {
        let two = catalog::two();
        let one = catalog::one();
        let k = colan(&FinFunctor::pick(&two, 0), &Copresheaf::terminal(&one)).unwrap();
        assert_eq!((k.result.fiber_len(0), k.result.fiber_len(1)), (1, 1));
        let k = colan(&FinFunctor::pick(&two, 1), &Copresheaf::terminal(&one)).unwrap();
        assert_eq!((k.result.fiber_len(0), k.result.fiber_len(1)), (0, 1));
    }

    #[test]
    fn colimits_and_limits() {
        let two = catalog::two();
        assert_eq!(colim_presheaf(&Presheaf::terminal(&two)).len(), 1);
        assert!(colim_presheaf(&Presheaf::empty(&two)).is_empty());
        let idem = catalog::idem();
        let f = Presheaf::new("F", idem.clone(), vec![vec!["a".into(), "b".into()]], vec![vec![0, 1], vec![0, 0]])
            .unwrap();
        assert_eq!(colim_presheaf(&f).elements(), ["[*:a]"]);
        assert_eq!(lim_presheaf(&f).len(), 1);
        assert_eq!(lim_presheaf(&Presheaf::terminal(&two)).len(), 1);
        assert!(lim_presheaf(&Presheaf::representable(&two, 0)).is_empty());
    }

    #[test]
    fn tensor_examples() {
        let idem = catalog::idem();
        let t = tensor(&Copresheaf::corepresentable(&idem, 0), &Presheaf::representable(&idem, 0)).unwrap();
        assert_eq!(t.len(), 2);
        let two = catalog::two();
        for m in presheaves_up_to(&two, 2) {
            let t = tensor(&Copresheaf::terminal(&two), &m).unwrap();
            assert_eq!(t.len(), colim_presheaf(&m).len());
        }
        // up(1) (x) down(0) = Hom(0, 1)... restricted: pick-1 pulled back
        let t = tensor(&Copresheaf::corepresentable(&two, 1), &Presheaf::representable(&two, 0)).unwrap();
        assert_eq!(t.len(), two.hom(1, 0).len());
    }

    #[test]
    fn tensor_two_routes_agree() {
        for c in catalog::all().into_iter().filter(|c| c.num_objects() <= 3) {
            for n in copresheaves_up_to(&c, 1).into_iter().take(8) {
                for m in presheaves_up_to(&c, 1).into_iter().take(8) {
                    let direct = tensor(&n, &m).unwrap().len();
                    let bar = bar_tensor(&coelements(&n).projection, &elements(&m).projection).unwrap().size;
                    assert_eq!(direct, bar);
                }
            }
        }
    }

    #[test]
    fn bar_tensor_examples() {
        for c in catalog::all() {
            let id = FinFunctor::identity(&c);
            assert_eq!(bar_tensor(&id, &id).unwrap().size, pi0(&c).size);
            for m in presheaves_up_to(&c, 1).into_iter().take(6) {
                for x in c.objects() {
                    let v = bar_tensor(&FinFunctor::pick(&c, x), &elements(&m).projection).unwrap();
                    assert_eq!(v.size, m.fiber_len(x));
                }
            }
        }
    }

    #[test]
    fn hom_examples() {
        let c = catalog::span();
        for m in presheaves_up_to(&c, 1) {
            assert_eq!(hom_presheaves(&m, &Presheaf::terminal(&c)).unwrap().len(), 1);
            assert_eq!(hom_presheaves(&Presheaf::empty(&c), &m).unwrap().len(), 1);
        }
    }

    #[test]
    fn exponential_examples() {
        let idem = catalog::idem();
        let m = Presheaf::constant(&idem, &FinSet::of_size(2));
        let empty = Copresheaf::empty(&idem);
        let exp = exp_fib_by_opfib(&m, &empty).unwrap();
        assert_eq!(exp.fiber_len(0), 1);
        let n = Copresheaf::new("n", idem.clone(), vec![vec!["u".into(), "v".into()]], vec![vec![0, 1], vec![0, 0]])
            .unwrap();
        let exp = exp_fib_by_opfib(&m, &n).unwrap();
        assert_eq!(exp.fiber_len(0), 4);
        let e = idem.arrow_by_name("e").unwrap();
        // phi |-> phi . n(e) makes both values equal to phi(u)
        assert_eq!(exp.action(e), [0, 3, 0, 3]);
        for k in presheaves_up_to(&idem, 2) {
            assert!(exponential_bijection(&k, &n, &m).unwrap());
            let maps = 2usize.pow(tensor(&n, &k).unwrap().len() as u32);
            assert_eq!(maps, k.maps_to(&exp).unwrap().len());
        }
    }

    #[test]
    fn battery_examples() {
        let two = catalog::two();
        let one = catalog::one();
        let bang = FinFunctor::to_terminal(&two);
        for m in presheaves_up_to(&two, 1) {
            let checks = verify_coadjunction_battery(&bang, &m, &Copresheaf::terminal(&one)).unwrap();
            assert_eq!(checks[0].left, colim_presheaf(&m).len());
        }
        let pick1 = FinFunctor::pick(&two, 1);
        verify_coadjunction_battery(&pick1, &Presheaf::terminal(&one), &Copresheaf::corepresentable(&two, 0)).unwrap();
        let idem = catalog::idem();
        let p = FinFunctor::pick(&idem, 0);
        for n in copresheaves_up_to(&idem, 2) {
            verify_coadjunction_battery(&p, &Presheaf::terminal(&one), &n).unwrap();
        }
    }

    #[test]
    fn underline_hom_examples() {
        let two = catalog::two();
        let one = catalog::one();
        let pick1 = FinFunctor::pick(&two, 1);
        let id1 = FinFunctor::identity(&one);
        for l in presheaves_up_to(&two, 2) {
            underline_hom_checks(&pick1, &id1, &Presheaf::terminal(&one), &l).unwrap();
        }
        let bang = FinFunctor::to_terminal(&two);
        for m in presheaves_up_to(&two, 2) {
            underline_hom_checks(&bang, &FinFunctor::pick(&two, 0), &m, &Presheaf::terminal(&one)).unwrap();
        }
    }

    #[test]
    fn tensor_functoriality() {
        let idem = catalog::idem();
        for n in copresheaves_up_to(&idem, 2) {
            for m in presheaves_up_to(&idem, 2) {
                assert!(tensor_is_functorial(&n, &m, 8).unwrap());
            }
        }
    }

    #[test]
    fn final_maps_preserve_colimits() {
        let two = catalog::two();
        let pick1 = FinFunctor::pick(&two, 1);
        for n in copresheaves_up_to(&two, 2) {
            assert!(final_preserves_colimit(&pick1, &n).unwrap());
        }
    }
}
