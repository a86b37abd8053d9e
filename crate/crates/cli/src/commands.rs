//! Subcommands. Each produces human-readable text plus a structured result.

use std::fmt::Write as _;
use std::sync::Arc;

use bkit_core::calculus::{
    bar_tensor, colan, colim_copresheaf, colim_presheaf, exp_fib_by_opfib, hom_copresheaves, hom_presheaves, lan,
    lim_copresheaf, lim_presheaf, restrict, restrict_copresheaf, tensor,
};
use bkit_core::cauchy::{conjugate_of_retract, is_atom, karoubi, karoubi_equivalence_check, slice_duality_check, TenBimodule};
use bkit_core::comma::{comma, coslice, pi0, slice, CommaCategory};
use bkit_core::factorization::{
    colimit_in, em_factorize, em_prime_factorize, is_absolutely_dense, is_discrete_fibration, is_discrete_opfibration,
    is_final, is_initial, orthogonality_witness, FactorizationPair,
};
use bkit_core::fincat::{Bound, FinCategory, ObjId};
use bkit_core::laws::{run_suites, suite_names, SuiteConfig};
use bkit_core::poset::{pos_em_factorize, pos_em_prime_factorize, pos_tensor, FinPoset, Mask, MonotoneMap, PosFactorization};
use bkit_core::sets::FinSet;
use bkit_core::topo::{
    closure, is_finite_covering, is_simply_connected_upto, local_triviality_check, neighborhood, pi1_retraction_verify,
    thin_reflection, FiniteCovering, Flavor, PartOfCategory,
};
use bkit_core::Error;
use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::formats::{serialize_cpsh, serialize_fincat, serialize_fun, serialize_psh, Loader, SetFunctor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawRecord {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(default)]
    pub witness: Option<String>,
}

/// What a command produced, before it is wrapped into a report.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub result: Value,
    pub laws: Vec<LawRecord>,
    /// A verification the command performs did not hold.
    pub check_failed: bool,
}

impl Output {
    fn new(text: String, result: Value) -> Self {
        Output { text, result, ..Default::default() }
    }
}

#[derive(Debug, Args)]
pub struct CheckLaws {
    /// Suite to run; repeatable; `all` runs every suite.
    #[arg(long = "suite", default_value = "all")]
    pub suites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a file of any supported format.
    Validate { file: String },
    /// Connected components of a category.
    Pi0 { category: String },
    /// The slice over an object.
    Slice { category: String, object: String },
    /// The coslice under an object.
    Coslice { category: String, object: String },
    /// The comma category of two functors with a common target.
    Comma { left: String, right: String },
    /// Final functor followed by a discrete fibration.
    Factorize { functor: String },
    /// Initial functor followed by a discrete opfibration.
    FactorizePrime { functor: String },
    IsFinal { functor: String },
    IsInitial { functor: String },
    IsDfib { functor: String },
    IsDopfib { functor: String },
    /// Unique diagonal fillers for every square from the first to the second functor.
    Orthogonal { left: String, right: String },
    /// Colimit of a presheaf or copresheaf.
    Colim { file: String },
    /// Limit of a presheaf or copresheaf.
    Lim { file: String },
    /// Left Kan extension of a presheaf along a functor.
    Kan { functor: String, presheaf: String },
    /// Extension of a copresheaf along a functor.
    KanCo { functor: String, copresheaf: String },
    /// Restriction of a presheaf or copresheaf along a functor.
    Restrict { functor: String, file: String },
    /// Tensor of a copresheaf with a presheaf.
    Tensor { copresheaf: String, presheaf: String },
    /// Components of the pullback of two functors.
    BarTensor { left: String, right: String },
    /// Natural maps between two presheaves or two copresheaves.
    Hom { source: String, target: String },
    /// Exponential of a presheaf by a copresheaf.
    Exp { presheaf: String, copresheaf: String },
    /// Colimit of a diagram inside its target category.
    ColimitIn { functor: String },
    /// Absolute density.
    Dense { functor: String },
    /// Karoubi envelope.
    Karoubi { category: String },
    /// Bicartesian element for the retract of an idempotent.
    Conjugate { category: String, object: String, idempotent: String },
    /// Atom test.
    Atom { category: String },
    /// Slice/coslice duality and the Karoubi comparison.
    Duality { category: String },
    /// Whether a functor is a finite covering.
    Covering { functor: String },
    /// Local triviality of a covering given as a copresheaf.
    LocalTrivial { copresheaf: String },
    /// Coverings with small fibers are all constant.
    SimplyConnected {
        category: String,
        #[arg(long = "fiber-bound", default_value_t = 4)]
        fiber_bound: usize,
    },
    /// Retraction r, i with i final acting on a covering.
    Pi1Retract { inclusion: String, retraction: String, covering: String },
    /// Least open part containing the given objects.
    Neighborhood { category: String, objects: Vec<String> },
    /// Least closed part containing the given objects.
    Closure { category: String, objects: Vec<String> },
    /// Thin reflection.
    Thin { category: String },
    /// Factorizations of a monotone map given as `a=x,b=y`.
    PosFactorize { source: String, target: String, map: String },
    /// Whether an up-set meets a down-set.
    PosTensor {
        poset: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        up: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        down: Vec<String>,
    },
    /// Run the law suites.
    CheckLaws(CheckLaws),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Pi0 { .. } => "pi0",
            Command::Slice { .. } => "slice",
            Command::Coslice { .. } => "coslice",
            Command::Comma { .. } => "comma",
            Command::Factorize { .. } => "factorize",
            Command::FactorizePrime { .. } => "factorize-prime",
            Command::IsFinal { .. } => "is-final",
            Command::IsInitial { .. } => "is-initial",
            Command::IsDfib { .. } => "is-dfib",
            Command::IsDopfib { .. } => "is-dopfib",
            Command::Orthogonal { .. } => "orthogonal",
            Command::Colim { .. } => "colim",
            Command::Lim { .. } => "lim",
            Command::Kan { .. } => "kan",
            Command::KanCo { .. } => "kan-co",
            Command::Restrict { .. } => "restrict",
            Command::Tensor { .. } => "tensor",
            Command::BarTensor { .. } => "bar-tensor",
            Command::Hom { .. } => "hom",
            Command::Exp { .. } => "exp",
            Command::ColimitIn { .. } => "colimit-in",
            Command::Dense { .. } => "dense",
            Command::Karoubi { .. } => "karoubi",
            Command::Conjugate { .. } => "conjugate",
            Command::Atom { .. } => "atom",
            Command::Duality { .. } => "duality",
            Command::Covering { .. } => "covering",
            Command::LocalTrivial { .. } => "local-trivial",
            Command::SimplyConnected { .. } => "simply-connected",
            Command::Pi1Retract { .. } => "pi1-retract",
            Command::Neighborhood { .. } => "neighborhood",
            Command::Closure { .. } => "closure",
            Command::Thin { .. } => "thin",
            Command::PosFactorize { .. } => "pos-factorize",
            Command::PosTensor { .. } => "pos-tensor",
            Command::CheckLaws(_) => "check-laws",
        }
    }
}

/// Bound for functor enumeration: `BKIT_BOUND=OBJECTS,ARROWS` or the default.
pub fn bound_from_env() -> CliResult<Bound> {
    match std::env::var("BKIT_BOUND") {
        Ok(v) => Bound::parse(&v).ok_or_else(|| CliError::BadArity(format!("BKIT_BOUND must be `OBJECTS,ARROWS`, got `{v}`"))),
        Err(_) => Ok(Bound::default()),
    }
}

fn object(cat: &FinCategory, name: &str) -> CliResult<ObjId> {
    cat.object_by_name(name).ok_or_else(|| Error::UnknownObject(name.to_string()).into())
}

fn yes(label: &str, v: bool) -> Output {
    Output::new(format!("{label}: {v}\n"), json!({ label: v }))
}

fn category_output(cat: &FinCategory) -> Output {
    Output::new(
        serialize_fincat(cat),
        json!({ "name": cat.name(), "objects": cat.num_objects(), "arrows": cat.num_arrows(), "text": serialize_fincat(cat) }),
    )
}

fn comma_output(c: &CommaCategory) -> Output {
    category_output(&c.apex)
}

fn factorization_output(p: &FactorizationPair) -> Output {
    let reflected = match (p.presheaf(), p.copresheaf()) {
        (Some(m), _) => serialize_psh(m),
        (_, Some(n)) => serialize_cpsh(n),
        _ => String::new(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "holds: {}", p.holds());
    let _ = writeln!(text, "e: {}", p.e.describe());
    let _ = writeln!(text, "m: {}", p.m.describe());
    text.push_str(&reflected);
    let result = json!({
        "holds": p.holds(),
        "middle": serialize_fincat(p.middle()),
        "e": serialize_fun("e", &p.e),
        "m": serialize_fun("m", &p.m),
        "reflected": reflected,
    });
    Output { text, result, check_failed: !p.holds(), ..Default::default() }
}

fn set_output(label: &str, set: &FinSet) -> Output {
    let mut text = format!("{label}: {}\n", set.len());
    for e in set.elements() {
        let _ = writeln!(text, "  {e}");
    }
    Output::new(text, json!({ "size": set.len(), "elements": set.elements() }))
}

fn set_functor_output(sf: &SetFunctor) -> Output {
    let text = match sf {
        SetFunctor::Pre(m) => serialize_psh(m),
        SetFunctor::Co(n) => serialize_cpsh(n),
    };
    Output::new(text.clone(), json!({ "text": text }))
}

fn part_output(label: &str, p: &PartOfCategory) -> Output {
    let names: Vec<&str> = p.objects().into_iter().map(|x| p.base().object_name(x)).collect();
    Output::new(format!("{label}: {}\n", p.render()), json!({ label: names }))
}

fn parse_map(text: &str, src: &FinPoset, tgt: &FinPoset) -> CliResult<Vec<usize>> {
    let mut map = vec![None; src.len()];
    for pair in text.split(',').filter(|s| !s.is_empty()) {
        let (a, b) = pair
            .split_once('=')
            .ok_or_else(|| CliError::BadArity(format!("expected `a=x` in the map, got `{pair}`")))?;
        let i = src.element_by_name(a).ok_or_else(|| Error::UnknownObject(a.to_string()))?;
        map[i] = Some(tgt.element_by_name(b).ok_or_else(|| Error::UnknownObject(b.to_string()))?);
    }
    map.into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| CliError::BadArity(format!("`{}` is not mapped", src.elements()[i]))))
        .collect()
}

fn pos_factorization_text(label: &str, f: &MonotoneMap, fac: &PosFactorization) -> (String, Value) {
    let t = f.target();
    let text = format!("{label}: {} (holds: {})\n", t.render_mask(fac.part), fac.holds(f));
    let part: Vec<&str> = bkit_core::poset::bits(fac.part).map(|a| t.elements()[a].as_str()).collect();
    (text, json!({ "part": part, "holds": fac.holds(f) }))
}

fn mask(p: &FinPoset, names: &[String]) -> CliResult<Mask> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(p.mask_of(&refs)?)
}

pub fn run(cmd: &Command, loader: &mut Loader) -> CliResult<Output> {
    Ok(match cmd {
        Command::Validate { file } => {
            let lower = file.to_ascii_lowercase();
            if lower.ends_with(".psh") || lower.ends_with(".cpsh") {
                let sf = loader.set_functor(file)?;
                let (kind, name, base) = match &sf {
                    SetFunctor::Pre(m) => ("presheaf", m.name().to_string(), m.base().name().to_string()),
                    SetFunctor::Co(n) => ("copresheaf", n.name().to_string(), n.base().name().to_string()),
                };
                Output::new(format!("valid {kind} {name} on {base}\n"), json!({ "kind": kind, "name": name }))
            } else if lower.ends_with(".fpos") {
                let p = loader.poset(file)?;
                Output::new(format!("valid poset {}: {} elements\n", p.name(), p.len()), json!({ "kind": "poset", "name": p.name() }))
            } else if lower.ends_with(".fun") {
                let f = loader.functor(file)?;
                Output::new(format!("valid functor {}\n", f.describe()), json!({ "kind": "functor" }))
            } else {
                let c = loader.category(file)?;
                Output::new(
                    format!("valid category {}: {} objects, {} arrows\n", c.name(), c.num_objects(), c.num_arrows()),
                    json!({ "kind": "category", "name": c.name(), "objects": c.num_objects(), "arrows": c.num_arrows() }),
                )
            }
        }
        Command::Pi0 { category } => {
            let c = loader.category(category)?;
            let parts = pi0(&c);
            let mut text = format!("components: {}\n", parts.size);
            let mut comps = Vec::new();
            for k in 0..parts.size {
                let members: Vec<&str> = parts.members(k).map(|x| c.object_name(x)).collect();
                let _ = writeln!(text, "  [{}]: {}", c.object_name(parts.representatives[k]), members.join(" "));
                comps.push(members);
            }
            Output::new(text, json!({ "components": parts.size, "classes": comps }))
        }
        Command::Slice { category, object: o } => {
            let c = loader.category(category)?;
            comma_output(&slice(&c, object(&c, o)?))
        }
        Command::Coslice { category, object: o } => {
            let c = loader.category(category)?;
            comma_output(&coslice(&c, object(&c, o)?))
        }
        Command::Comma { left, right } => {
            let (f, g) = (loader.functor(left)?, loader.functor(right)?);
            comma_output(&comma(&f, &g)?)
        }
        Command::Factorize { functor } => factorization_output(&em_factorize(&loader.functor(functor)?)),
        Command::FactorizePrime { functor } => factorization_output(&em_prime_factorize(&loader.functor(functor)?)),
        Command::IsFinal { functor } => yes("final", is_final(&loader.functor(functor)?)),
        Command::IsInitial { functor } => yes("initial", is_initial(&loader.functor(functor)?)),
        Command::IsDfib { functor } => yes("discrete fibration", is_discrete_fibration(&loader.functor(functor)?)),
        Command::IsDopfib { functor } => yes("discrete opfibration", is_discrete_opfibration(&loader.functor(functor)?)),
        Command::Orthogonal { left, right } => {
            let (f, g) = (loader.functor(left)?, loader.functor(right)?);
            match orthogonality_witness(&f, &g, bound_from_env()?)? {
                None => yes("orthogonal", true),
                Some((top, bottom, n)) => Output::new(
                    format!("orthogonal: false\nsquare: top {}, bottom {}, diagonals {n}\n", top.describe(), bottom.describe()),
                    json!({ "orthogonal": false, "top": top.describe(), "bottom": bottom.describe(), "diagonals": n }),
                ),
            }
        }
        Command::Colim { file } => match loader.set_functor(file)? {
            SetFunctor::Pre(m) => set_output("colim", &colim_presheaf(&m)),
            SetFunctor::Co(n) => set_output("colim", &colim_copresheaf(&n)),
        },
        Command::Lim { file } => match loader.set_functor(file)? {
            SetFunctor::Pre(m) => set_output("lim", &lim_presheaf(&m)),
            SetFunctor::Co(n) => set_output("lim", &lim_copresheaf(&n)),
        },
        Command::Kan { functor, presheaf } => {
            let f = loader.functor(functor)?;
            let m = loader.presheaf(presheaf)?;
            set_functor_output(&SetFunctor::Pre(lan(&f, &m)?.result))
        }
        Command::KanCo { functor, copresheaf } => {
            let f = loader.functor(functor)?;
            let n = loader.copresheaf(copresheaf)?;
            set_functor_output(&SetFunctor::Co(colan(&f, &n)?.result))
        }
        Command::Restrict { functor, file } => {
            let f = loader.functor(functor)?;
            match loader.set_functor(file)? {
                SetFunctor::Pre(m) => set_functor_output(&SetFunctor::Pre(restrict(&f, &m)?)),
                SetFunctor::Co(n) => set_functor_output(&SetFunctor::Co(restrict_copresheaf(&f, &n)?)),
            }
        }
        Command::Tensor { copresheaf, presheaf } => {
            let n = loader.copresheaf(copresheaf)?;
            let m = loader.presheaf(presheaf)?;
            set_output("tensor", &tensor(&n, &m)?.set)
        }
        Command::BarTensor { left, right } => {
            let (p, q) = (loader.functor(left)?, loader.functor(right)?);
            let parts = bar_tensor(&p, &q)?;
            Output::new(format!("bar-tensor: {}\n", parts.size), json!({ "size": parts.size }))
        }
        Command::Hom { source, target } => {
            let maps = match (loader.set_functor(source)?, loader.set_functor(target)?) {
                (SetFunctor::Pre(a), SetFunctor::Pre(b)) => hom_presheaves(&a, &b)?,
                (SetFunctor::Co(a), SetFunctor::Co(b)) => hom_copresheaves(&a, &b)?,
                _ => return Err(CliError::BadArity("hom needs two presheaves or two copresheaves".into())),
            };
            let mut text = format!("hom: {}\n", maps.len());
            for m in &maps {
                let _ = writeln!(text, "  {:?}", m.components);
            }
            Output::new(text, json!({ "size": maps.len(), "maps": maps.iter().map(|m| &m.components).collect::<Vec<_>>() }))
        }
        Command::Exp { presheaf, copresheaf } => {
            let m = loader.presheaf(presheaf)?;
            let n = loader.copresheaf(copresheaf)?;
            set_functor_output(&SetFunctor::Pre(exp_fib_by_opfib(&m, &n)?))
        }
        Command::ColimitIn { functor } => {
            let p = loader.functor(functor)?;
            let tgt = p.target().clone();
            match colimit_in(&p, bound_from_env()?)? {
                Some(c) => {
                    let objs: Vec<&str> = c.objects.iter().map(|&x| tgt.object_name(x)).collect();
                    Output::new(
                        format!("colimit: {}\ncolimiting objects: {}\n", tgt.object_name(c.cone.x), objs.join(" ")),
                        json!({ "colimit": tgt.object_name(c.cone.x), "objects": objs }),
                    )
                }
                None => Output::new("colimit: none\n".into(), json!({ "colimit": null })),
            }
        }
        Command::Dense { functor } => {
            let f = loader.functor(functor)?;
            let d = is_absolutely_dense(&f)?;
            let mut out = yes("absolutely dense", d.dense);
            if let Some(a) = d.failing_arrow {
                let _ = writeln!(out.text, "failing arrow: {}", f.target().arrow_name(a));
            }
            out
        }
        Command::Karoubi { category } => category_output(&karoubi(&loader.category(category)?)),
        Command::Conjugate { category, object: o, idempotent } => {
            let c = loader.category(category)?;
            let x = object(&c, o)?;
            let e = c.arrow_by_name(idempotent).ok_or_else(|| Error::UnknownArrow(idempotent.clone()))?;
            let ten = TenBimodule::new(&c)?;
            let r = conjugate_of_retract(&ten, x, e)?;
            let t = &ten.profunctor;
            let el = r.witness;
            let bic = t.is_bicartesian(el);
            let text = format!(
                "witness: {} in ten({}, {})\nbicartesian: {bic}\n",
                t.element_name(el),
                t.left_cat().object_name(el.x),
                t.right_cat().object_name(el.y)
            );
            Output {
                text,
                result: json!({ "witness": t.element_name(el), "bicartesian": bic }),
                check_failed: !bic,
                ..Default::default()
            }
        }
        Command::Atom { category } => {
            let c = loader.category(category)?;
            let a = is_atom(&c)?;
            match a.witness {
                Some((x, e)) => Output::new(
                    format!("atom: true, witness ({}, {})\n", c.object_name(x), c.arrow_name(e)),
                    json!({ "atom": true, "witness": [c.object_name(x), c.arrow_name(e)] }),
                ),
                None => Output::new("atom: false\n".into(), json!({ "atom": false })),
            }
        }
        Command::Duality { category } => {
            let c = loader.category(category)?;
            let d = slice_duality_check(&c)?;
            let k = karoubi_equivalence_check(&c)?;
            let mut text = String::from("x y |Nat(down x, down y)| |Nat(up y, up x)| |X(x, y)|\n");
            for &(x, y, a, b, h) in &d.rows {
                let _ = writeln!(text, "{} {} {a} {b} {h}", c.object_name(x), c.object_name(y));
            }
            let _ = writeln!(text, "slice duality: {}\nkaroubi comparison: {k}", d.ok);
            let laws = vec![
                LawRecord { name: "duality/slice-coslice".into(), passed: d.ok, cases: d.rows.len(), witness: None },
                LawRecord { name: "duality/karoubi-comparison".into(), passed: k, cases: 1, witness: None },
            ];
            Output { text, result: json!({ "slice_duality": d.ok, "karoubi": k }), laws, check_failed: !(d.ok && k) }
        }
        Command::Covering { functor } => yes("covering", is_finite_covering(&loader.functor(functor)?)?),
        Command::LocalTrivial { copresheaf } => {
            let b = FiniteCovering::new(loader.copresheaf(copresheaf)?)?;
            let base = b.base().clone();
            let mut text = String::new();
            let mut all = true;
            let mut per = serde_json::Map::new();
            for x in base.objects() {
                let ok = local_triviality_check(&b, x)?;
                all &= ok;
                let _ = writeln!(text, "{}: {ok}", base.object_name(x));
                per.insert(base.object_name(x).to_string(), json!(ok));
            }
            let _ = writeln!(text, "locally trivial: {all}");
            Output { text, result: json!({ "locally_trivial": all, "objects": per }), check_failed: !all, ..Default::default() }
        }
        Command::SimplyConnected { category, fiber_bound } => {
            let c = loader.category(category)?;
            let v = is_simply_connected_upto(&c, *fiber_bound)?;
            Output::new(
                format!("simply connected (fibers <= {fiber_bound}): {v}\n"),
                json!({ "simply_connected": v, "fiber_bound": fiber_bound }),
            )
        }
        Command::Pi1Retract { inclusion, retraction, covering } => {
            let i = loader.functor(inclusion)?;
            let r = loader.functor(retraction)?;
            let b = FiniteCovering::new(loader.copresheaf(covering)?)?;
            let v = pi1_retraction_verify(&i, &r, &b)?;
            let text = format!(
                "comparison iso: {}\npushed forward is a covering: {}\nunit iso: {}\n",
                v.comparison_iso, v.pushed_is_covering, v.unit_iso
            );
            Output {
                text,
                result: json!({ "comparison_iso": v.comparison_iso, "pushed_is_covering": v.pushed_is_covering, "unit_iso": v.unit_iso }),
                check_failed: !v.holds(),
                ..Default::default()
            }
        }
        Command::Neighborhood { category, objects } | Command::Closure { category, objects } => {
            let c = loader.category(category)?;
            let ids = objects.iter().map(|o| object(&c, o)).collect::<CliResult<Vec<_>>>()?;
            let p = PartOfCategory::new(&c, &ids, Flavor::General)?;
            if matches!(cmd, Command::Neighborhood { .. }) {
                part_output("neighborhood", &neighborhood(&p)?)
            } else {
                part_output("closure", &closure(&p)?)
            }
        }
        Command::Thin { category } => {
            let c = loader.category(category)?;
            let t = thin_reflection(&c);
            let classes: Vec<Vec<&str>> = t.classes().iter().map(|k| k.iter().map(|&x| c.object_name(x)).collect()).collect();
            Output::new(t.to_string(), json!({ "points": classes, "order": t.class_order() }))
        }
        Command::PosFactorize { source, target, map } => {
            let (s, t) = (Arc::new(loader.poset(source)?), Arc::new(loader.poset(target)?));
            let m = parse_map(map, &s, &t)?;
            let f = MonotoneMap::new(s, t, m)?;
            let (a, ja) = pos_factorization_text("down-closure", &f, &pos_em_factorize(&f));
            let (b, jb) = pos_factorization_text("up-closure", &f, &pos_em_prime_factorize(&f));
            Output::new(a + &b, json!({ "em": ja, "em_prime": jb }))
        }
        Command::PosTensor { poset, up, down } => {
            let p = loader.poset(poset)?;
            let v = pos_tensor(&p, mask(&p, up)?, mask(&p, down)?)?;
            yes("tensor", v)
        }
        Command::CheckLaws(args) => check_laws(args)?,
    })
}

fn check_laws(args: &CheckLaws) -> CliResult<Output> {
    let known = suite_names();
    let names: Vec<&str> = if args.suites.iter().any(|s| s == "all") {
        Vec::new()
    } else {
        args.suites.iter().map(String::as_str).collect()
    };
    for n in &names {
        if !known.contains(n) {
            return Err(CliError::BadArity(format!("unknown suite `{n}`; known: {}", known.join(", "))));
        }
    }
    let cfg = SuiteConfig { seed: args.seed, cases: args.cases, bound: bound_from_env()? };
    let outcomes = run_suites(&names, &cfg)?;
    let mut text = String::new();
    let mut laws = Vec::new();
    for o in outcomes {
        match &o.witness {
            None if o.passed => {
                let _ = writeln!(text, "PASS {} ({} cases)", o.name, o.cases);
            }
            w => {
                let _ = writeln!(text, "FAIL {} ({} cases): {}", o.name, o.cases, w.as_deref().unwrap_or("failed"));
            }
        }
        laws.push(LawRecord { name: o.name, passed: o.passed, cases: o.cases, witness: o.witness });
    }
    let failed = laws.iter().filter(|l| !l.passed).count();
    let _ = writeln!(text, "{} laws, {} failed (seed {}, cases {})", laws.len(), failed, args.seed, args.cases);
    Ok(Output {
        text,
        result: json!({ "seed": args.seed, "cases": args.cases, "failed": failed }),
        laws,
        check_failed: failed > 0,
    })
}
