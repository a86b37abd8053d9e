//! The law suites: seeded or exhaustive batteries over the catalog, random
//! functors within a bound, and small posets.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calculus::{colan, final_preserves_colimit, hom_presheaves, lan, lan_is_universal, tensor, verify_coadjunction_battery};
use crate::catalog;
use crate::cauchy::{conjugate_of_retract, is_atom_with, TenBimodule};
use crate::comma::{coelements, elements, pi0, pullback_over, slice, upper_comma};
use crate::error::{Error, Result};
use crate::factorization::{
    em_factorize, em_prime_factorize, factorizations_isomorphic, is_final, is_initial, FactorizationKind,
    FactorizationPair, Reflected,
};
use crate::fincat::{Bound, FinCategory, FinFunctor};
use crate::gen::{catalog_functors, category_pool, random_functor};
use crate::poset::{coadjunction_sweep, orthogonality_sweep, posets_up_to, rsl_sweep, tensor_sweep, FinPoset, Sweep};
use crate::sets::{presheaves_up_to, random_copresheaf, random_presheaf, Copresheaf, Presheaf, SetMap};
use crate::topo::{
    coverings_up_to, is_finite_covering, is_simply_connected_upto, local_triviality_check, parts,
    pi1_retraction_verify, Flavor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub bound: Bound,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cases: 100, bound: Bound::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawOutcome {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// First counterexample or error.
    pub witness: Option<String>,
}

impl LawOutcome {
    fn from_failures(name: &str, cases: usize, failures: Vec<String>) -> Self {
        LawOutcome { name: name.to_string(), passed: failures.is_empty(), cases, witness: failures.into_iter().next() }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&SuiteConfig) -> Result<Vec<LawOutcome>>,
}

impl Suite {
    /// Runs every law of the suite; an error becomes a failed law.
    pub fn run(&self, cfg: &SuiteConfig) -> Vec<LawOutcome> {
        (self.run)(cfg).unwrap_or_else(|e| {
            vec![LawOutcome { name: format!("{}/error", self.name), passed: false, cases: 0, witness: Some(e.to_string()) }]
        })
    }
}

pub fn registry() -> Vec<Suite> {
    vec![
        Suite { name: "factorization", summary: "comprehensive factorizations are sound and unique", run: factorization },
        Suite { name: "reciprocal-stability", summary: "final and initial functors are stable under pullback", run: reciprocal_stability },
        Suite { name: "coadjunction", summary: "coadjunction bijections, Frobenius, final maps preserve colimits", run: coadjunction },
        Suite { name: "representability", summary: "up(x) (x) m = Nat(down(x), m)", run: representability },
        Suite { name: "conjugate-retracts", summary: "split conjugate idempotents give bicartesian elements", run: conjugate_retracts },
        Suite { name: "atoms", summary: "atom detection with limit/colimit cross-checks", run: atoms },
        Suite { name: "pos-model", summary: "the poset model, exhaustively on small posets", run: pos_model },
        Suite { name: "topology", summary: "parts, coverings, local triviality, simple connectedness", run: topology },
        Suite { name: "kan-oracle", summary: "left Kan extension: fibers and universality", run: kan_oracle },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

/// Runs the named suites (or all) in parallel; results keep registry order.
pub fn run_suites(names: &[&str], cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let reg = registry();
    for n in names {
        if !reg.iter().any(|s| s.name == *n) {
            return Err(Error::UnknownObject(format!("suite `{n}`")));
        }
    }
    let chosen: Vec<&Suite> = reg.iter().filter(|s| names.is_empty() || names.contains(&s.name)).collect();
    Ok(chosen.par_iter().map(|s| s.run(cfg)).collect::<Vec<_>>().into_iter().flatten().collect())
}

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_functors(cfg: &SuiteConfig, salt: u64, count: usize) -> Result<Vec<FinFunctor>> {
    let pool = category_pool(cfg.bound);
    let mut rng = rng_for(cfg, salt);
    (0..count).map(|_| random_functor(&pool, cfg.bound, &mut rng)).collect()
}

fn collect_failures<T: Sync>(items: &[T], check: impl Fn(&T) -> Result<Option<String>> + Sync) -> Vec<String> {
    items
        .par_iter()
        .map(|it| match check(it) {
            Ok(w) => w,
            Err(e) => Some(e.to_string()),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// The fibration part computed as `lan(f, 1)` with its unit.
pub fn em_via_lan(f: &FinFunctor) -> Result<FactorizationPair> {
    let src = f.source();
    let k = lan(f, &Presheaf::terminal(src))?;
    let el = elements(&k.result);
    let obj_map = src.objects().map(|a| el.object_of(f.obj(a), k.unit.components[a][0])).collect();
    let arr_map = src.arrows().map(|u| el.arrow_of(f.arr(u), k.unit.components[src.cod(u)][0])).collect();
    let e = FinFunctor::new(src.clone(), el.category.clone(), obj_map, arr_map)?;
    Ok(FactorizationPair { kind: FactorizationKind::Em, original: f.clone(), e, m: el.projection, reflected: Reflected::Down(k.result) })
}

/// The opfibration part computed as `colan(f, 1)`.
pub fn em_prime_via_colan(f: &FinFunctor) -> Result<FactorizationPair> {
    let src = f.source();
    let k = colan(f, &Copresheaf::terminal(src))?;
    let el = coelements(&k.result);
    let obj_map = src.objects().map(|a| el.object_of(f.obj(a), k.unit.components[a][0])).collect();
    let arr_map = src.arrows().map(|u| el.arrow_of(f.arr(u), k.unit.components[src.dom(u)][0])).collect();
    let e = FinFunctor::new(src.clone(), el.category.clone(), obj_map, arr_map)?;
    Ok(FactorizationPair { kind: FactorizationKind::EmPrime, original: f.clone(), e, m: el.projection, reflected: Reflected::Up(k.result) })
}

fn factorization(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let mut functors = catalog_functors(cfg.bound)?;
    functors.extend(random_functors(cfg, 1, 2 * cfg.cases)?);
    let check = |prime: bool| {
        collect_failures(&functors, |f| {
            let (a, b) = if prime {
                (em_prime_factorize(f), em_prime_via_colan(f)?)
            } else {
                (em_factorize(f), em_via_lan(f)?)
            };
            Ok(if !a.holds() {
                Some(format!("{}: factorization invalid", f.describe()))
            } else if !b.holds() {
                Some(format!("{}: second factorization invalid", f.describe()))
            } else if factorizations_isomorphic(&a, &b).is_none() {
                Some(format!("{}: no isomorphism between factorizations", f.describe()))
            } else {
                None
            })
        })
    };
    Ok(vec![
        LawOutcome::from_failures("factorization/final-discrete-fibration", functors.len(), check(false)),
        LawOutcome::from_failures("factorization/initial-discrete-opfibration", functors.len(), check(true)),
    ])
}

fn reciprocal_stability(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let functors = random_functors(cfg, 2, cfg.cases)?;
    let seeds: Vec<(usize, &FinFunctor)> = functors.iter().enumerate().collect();
    let finals = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 200 + k as u64);
        let e = em_factorize(f).e;
        let n = random_copresheaf(e.target(), 2, &mut rng);
        let pb = pullback_over(&e, &coelements(&n).projection)?;
        Ok((!is_final(&pb.right_proj)).then(|| format!("{}: pullback along coel({:?}) not final", f.describe(), n.fibers())))
    });
    let initials = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 300 + k as u64);
        let i = em_prime_factorize(f).e;
        let m = random_presheaf(i.target(), 2, &mut rng);
        let pb = pullback_over(&i, &elements(&m).projection)?;
        Ok((!is_initial(&pb.right_proj)).then(|| format!("{}: pullback along el({:?}) not initial", f.describe(), m.fibers())))
    });
    Ok(vec![
        LawOutcome::from_failures("reciprocal-stability/final", functors.len(), finals),
        LawOutcome::from_failures("reciprocal-stability/initial", functors.len(), initials),
    ])
}

fn coadjunction(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let functors = random_functors(cfg, 3, cfg.cases)?;
    let seeds: Vec<(usize, &FinFunctor)> = functors.iter().enumerate().collect();
    let battery = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 400 + k as u64);
        let m = random_presheaf(f.source(), 2, &mut rng);
        let n = random_copresheaf(f.target(), 2, &mut rng);
        Ok(verify_coadjunction_battery(f, &m, &n).err().map(|e| format!("{}: {e}", f.describe())))
    });
    let colimits = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 500 + k as u64);
        let e = em_factorize(f).e;
        let n = random_copresheaf(e.target(), 2, &mut rng);
        Ok((!final_preserves_colimit(&e, &n)?).then(|| format!("{}: colimit not preserved", f.describe())))
    });
    Ok(vec![
        LawOutcome::from_failures("coadjunction/battery", functors.len(), battery),
        LawOutcome::from_failures("coadjunction/final-preserves-colimit", functors.len(), colimits),
    ])
}

/// The map `[y, g, b] |-> (h |-> m(h) m(g) b)` from `up(x) (x) m` to
/// `Nat(down(x), m)`, checked well defined and bijective.
pub fn representability_check(cat: &Arc<FinCategory>, x: usize, m: &Presheaf) -> Result<bool> {
    let up = Copresheaf::corepresentable(cat, x);
    let down = Presheaf::representable(cat, x);
    let t = tensor(&up, m)?;
    let nat = hom_presheaves(&down, m)?;
    let mut image: Vec<Option<usize>> = vec![None; t.len()];
    for y in cat.objects() {
        for (a, token) in up.fiber(y).iter().enumerate() {
            let g = cat.arrow_by_name(token).ok_or_else(|| Error::UnknownArrow(token.clone()))?;
            for b in 0..m.fiber_len(y) {
                let v = m.act(g, b);
                let psi = SetMap {
                    components: cat
                        .objects()
                        .map(|z| {
                            down.fiber(z)
                                .iter()
                                .map(|h| m.act(cat.arrow_by_name(h).expect("arrow token"), v))
                                .collect()
                        })
                        .collect(),
                };
                let idx = nat.iter().position(|phi| *phi == psi);
                let class = t.class(y, a, b);
                match (idx, image[class]) {
                    (None, _) => return Ok(false),
                    (Some(i), Some(j)) if i != j => return Ok(false),
                    (Some(i), _) => image[class] = Some(i),
                }
            }
        }
    }
    let mut hit: Vec<usize> = image.into_iter().collect::<Option<Vec<_>>>().unwrap_or_default();
    let total = hit.len();
    hit.sort_unstable();
    hit.dedup();
    Ok(total == t.len() && hit.len() == total && total == nat.len())
}

fn representability(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let mut items = Vec::new();
    for (c, cat) in catalog::all().into_iter().enumerate() {
        let mut battery = presheaves_up_to(&cat, 2);
        if battery.len() > 4 * cfg.cases {
            let mut rng = rng_for(cfg, 600 + c as u64);
            battery = (0..4 * cfg.cases).map(|_| random_presheaf(&cat, 2, &mut rng)).collect();
        }
        for x in cat.objects() {
            items.extend(battery.iter().map(|m| (cat.clone(), x, m.clone())));
        }
    }
    let failures = collect_failures(&items, |(cat, x, m)| {
        Ok((!representability_check(cat, *x, m)?)
            .then(|| format!("{} at {}: {:?}", cat.name(), cat.object_name(*x), m.fibers())))
    });
    Ok(vec![LawOutcome::from_failures("representability/tensor-is-nat", items.len(), failures)])
}

fn conjugate_retracts(_cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let cats = catalog::all();
    let results: Vec<(usize, Vec<String>)> = cats
        .par_iter()
        .map(|cat| {
            let idems = cat.idempotents();
            let failures = match TenBimodule::new(cat) {
                Err(e) => vec![format!("{}: {e}", cat.name())],
                Ok(ten) => idems
                    .iter()
                    .filter_map(|&(x, e)| match conjugate_of_retract(&ten, x, e) {
                        Ok(c) if ten.profunctor.is_bicartesian(c.witness) => None,
                        Ok(_) => Some(format!("{} ({}, {}): not bicartesian", cat.name(), cat.object_name(x), cat.arrow_name(e))),
                        Err(err) => Some(format!("{} ({}, {}): {err}", cat.name(), cat.object_name(x), cat.arrow_name(e))),
                    })
                    .collect(),
            };
            (idems.len(), failures)
        })
        .collect();
    let cases = results.iter().map(|r| r.0).sum();
    Ok(vec![LawOutcome::from_failures(
        "conjugate-retracts/bicartesian",
        cases,
        results.into_iter().flat_map(|r| r.1).collect(),
    )])
}

fn atoms(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let mut failures = Vec::new();
    let idem = catalog::idem();
    let e = idem.arrow_by_name("e").expect("idem has e");
    let expected = [
        (catalog::idem(), Some((0, e))),
        (catalog::one(), Some((0, 0))),
        (catalog::two(), None),
        (catalog::pair(), None),
        (catalog::par(), None),
    ];
    for (cat, want) in &expected {
        let got = is_atom_with(cat, cfg.seed, cfg.cases)?;
        if got.witness != *want {
            failures.push(format!("{}: witness {:?}, expected {:?}", cat.name(), got.witness, want));
        }
    }
    let mut cases = expected.len();
    for cat in catalog::all() {
        let a = is_atom_with(&cat, cfg.seed, cfg.cases)?;
        cases += a.battery;
        if a.is_atom() && pi0(&cat).size != 1 {
            failures.push(format!("{}: atom is not connected", cat.name()));
        }
    }
    Ok(vec![LawOutcome::from_failures("atoms/detection-and-cross-check", cases, failures)])
}

fn sweep_outcome(name: &str, s: Sweep) -> LawOutcome {
    LawOutcome::from_failures(name, s.cases, s.failures)
}

fn pos_model(_cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let posets = posets_up_to(5);
    let point = FinPoset::chain(1);
    let s_is_two = point.down_sets() == vec![0, 1] && point.up_sets() == vec![0, 1];
    Ok(vec![
        sweep_outcome("pos-model/reciprocal-stability", rsl_sweep(&posets)),
        sweep_outcome("pos-model/coadjunction", coadjunction_sweep(&posets)),
        sweep_outcome("pos-model/tensor-is-meets", tensor_sweep(&posets)),
        sweep_outcome("pos-model/orthogonality-and-uniqueness", orthogonality_sweep(&posets)),
        LawOutcome::from_failures(
            "pos-model/truth-values",
            1,
            if s_is_two { vec![] } else { vec!["the point has other closed parts".into()] },
        ),
    ])
}

fn topology(_cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let cats = catalog::all();
    let local: Vec<(usize, Vec<String>)> = cats
        .par_iter()
        .map(|cat| {
            let mut cases = 0;
            let mut failures = Vec::new();
            for b in coverings_up_to(cat, 3) {
                match is_finite_covering(&b.projection()) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("{}: {:?} not a covering", cat.name(), b.copresheaf().fibers())),
                    Err(e) => failures.push(e.to_string()),
                }
                for x in cat.objects() {
                    cases += 1;
                    match local_triviality_check(&b, x) {
                        Ok(true) => {}
                        Ok(false) => failures.push(format!(
                            "{} at {}: {:?} not locally trivial",
                            cat.name(),
                            cat.object_name(x),
                            b.copresheaf().fibers()
                        )),
                        Err(e) => failures.push(e.to_string()),
                    }
                }
            }
            (cases, failures)
        })
        .collect();
    let local_cases = local.iter().map(|r| r.0).sum();
    let local_failures = local.into_iter().flat_map(|r| r.1).collect();

    let mut sc_failures = Vec::new();
    for (cat, k, want) in [(catalog::two(), 3, true), (catalog::idem(), 3, true), (catalog::z2(), 2, false)] {
        let got = is_simply_connected_upto(&cat, k)?;
        if got != want {
            sc_failures.push(format!("{} up to {k}: {got}, expected {want}", cat.name()));
        }
    }

    let mut pi1_cases = 0;
    let mut pi1_failures = Vec::new();
    for cat in &cats {
        for x in cat.objects() {
            let s = slice(cat, x);
            let apex = s.apex.clone();
            let top = apex.objects().find(|&o| cat.is_identity(s.object(o).2)).expect("identity in slice");
            let i = FinFunctor::pick(&apex, top);
            let r = FinFunctor::to_terminal(&apex);
            for b in coverings_up_to(&apex, 2) {
                pi1_cases += 1;
                match pi1_retraction_verify(&i, &r, &b) {
                    Ok(v) if v.holds() => {}
                    Ok(v) => pi1_failures.push(format!("{}/{}: {:?}", cat.name(), cat.object_name(x), v)),
                    Err(e) => pi1_failures.push(e.to_string()),
                }
            }
        }
    }

    let mut part_cases = 0;
    let mut part_failures = Vec::new();
    for cat in &cats {
        for p in parts(cat, Flavor::General)? {
            part_cases += 1;
            let (nb, cl) = (crate::topo::neighborhood(&p)?, crate::topo::closure(&p)?);
            let ok = p.is_open() == p.complement().is_closed()
                && crate::topo::neighborhood(&nb)? == nb
                && crate::topo::closure(&cl)? == cl
                && p.is_subset_of(&crate::topo::neighborhood(&cl)?);
            if !ok {
                part_failures.push(format!("{}: part {}", cat.name(), p.render()));
            }
        }
    }

    Ok(vec![
        LawOutcome::from_failures("topology/local-triviality", local_cases, local_failures),
        LawOutcome::from_failures("topology/simple-connectedness", 3, sc_failures),
        LawOutcome::from_failures("topology/pi1-retraction", pi1_cases, pi1_failures),
        LawOutcome::from_failures("topology/open-closed-parts", part_cases, part_failures),
    ])
}

/// Fiber of `lan(f, m)` at `y` against `pi0` of `y\f` pulled back to `el(m)`.
pub fn lan_fiber_oracle(f: &FinFunctor, m: &Presheaf) -> Result<bool> {
    let kan = lan(f, m)?;
    let el = elements(m);
    for y in f.target().objects() {
        let comma = upper_comma(f, y);
        let pb = pullback_over(&comma.right_proj, &el.projection)?;
        if pi0(&pb.apex).size != kan.result.fiber_len(y) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn kan_oracle(cfg: &SuiteConfig) -> Result<Vec<LawOutcome>> {
    let functors = random_functors(cfg, 9, cfg.cases)?;
    let seeds: Vec<(usize, &FinFunctor)> = functors.iter().enumerate().collect();
    let fibers = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 900 + k as u64);
        let m = random_presheaf(f.source(), 2, &mut rng);
        Ok((!lan_fiber_oracle(f, &m)?).then(|| format!("{}: fibers of lan on {:?}", f.describe(), m.fibers())))
    });
    let universal = collect_failures(&seeds, |&(k, f)| {
        let mut rng = rng_for(cfg, 1000 + k as u64);
        let m = random_presheaf(f.source(), 2, &mut rng);
        let l = random_presheaf(f.target(), 2, &mut rng);
        Ok((!lan_is_universal(f, &m, &l)?).then(|| format!("{}: Nat(lan m, l) != Nat(m, f*l)", f.describe())))
    });
    Ok(vec![
        LawOutcome::from_failures("kan-oracle/pointwise-fibers", functors.len(), fibers),
        LawOutcome::from_failures("kan-oracle/universality", functors.len(), universal),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_factorizations() {
        for f in catalog_functors(Bound::default()).unwrap() {
            let a = em_via_lan(&f).unwrap();
            assert!(a.holds(), "{}", f.describe());
            assert!(factorizations_isomorphic(&a, &em_factorize(&f)).is_some());
            let b = em_prime_via_colan(&f).unwrap();
            assert!(b.holds(), "{}", f.describe());
            assert!(factorizations_isomorphic(&b, &em_prime_factorize(&f)).is_some());
        }
    }

    #[test]
    fn representability_on_idem() {
        let idem = catalog::idem();
        for m in presheaves_up_to(&idem, 2) {
            assert!(representability_check(&idem, 0, &m).unwrap());
        }
    }

    #[test]
    fn small_runs() {
        let cfg = SuiteConfig { seed: 3, cases: 5, bound: Bound::default() };
        for name in ["factorization", "reciprocal-stability", "coadjunction", "kan-oracle", "conjugate-retracts"] {
            for o in run_suites(&[name], &cfg).unwrap() {
                assert!(o.passed, "{}: {:?}", o.name, o.witness);
            }
        }
        assert!(run_suites(&["nope"], &cfg).is_err());
    }
}
