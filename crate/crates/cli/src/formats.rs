//! Text formats: `.fincat`, `.psh`, `.cpsh`, `.fpos` and `.fun`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bkit_core::catalog;
use bkit_core::fincat::{CategoryBuilder, FinCategory, FinFunctor};
use bkit_core::poset::FinPoset;
use bkit_core::sets::{Copresheaf, Presheaf};
use bkit_core::Error;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

// Non-empty lines with their numbers, comments removed. A comment starts
// with `#` at the beginning of a line or after whitespace.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let mut end = raw.len();
        let bytes = raw.as_bytes();
        for (k, &b) in bytes.iter().enumerate() {
            if b == b'#' && (k == 0 || bytes[k - 1].is_ascii_whitespace()) {
                end = k;
                break;
            }
        }
        let toks: Vec<&str> = raw[..end].split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn syntax(path: &str, line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax { path: path.to_string(), line, message: message.into() }
}

fn invalid(path: &str, source: Error) -> CliError {
    CliError::Validation { path: path.to_string(), source }
}

pub fn parse_fincat(text: &str, path: &str) -> CliResult<FinCategory> {
    let mut b = CategoryBuilder::new("");
    let mut named = false;
    for (ln, t) in lines(text) {
        match t.as_slice() {
            ["category", name] if !named => {
                b.set_name(name);
                named = true;
            }
            ["object", names @ ..] if !names.is_empty() => names.iter().for_each(|n| b.add_object(n)),
            ["arrow", f, ":", d, "->", c] => b.add_arrow(f, d, c),
            ["id", x, "=", name] => b.add_identity(x, name),
            ["comp", g, ".", f, "=", h] => b.add_composite(g, f, h),
            _ => return Err(syntax(path, ln, format!("unrecognized declaration `{}`", t.join(" ")))),
        }
    }
    if !named {
        return Err(syntax(path, 1, "missing `category NAME` header"));
    }
    b.build().map_err(|e| invalid(path, e))
}

pub fn serialize_fincat(cat: &FinCategory) -> String {
    let mut out = format!("category {}\n", cat.name());
    if cat.num_objects() > 0 {
        let _ = writeln!(out, "object {}", cat.object_names().join(" "));
    }
    for x in cat.objects() {
        let id = cat.arrow_name(cat.id(x));
        if id != format!("id_{}", cat.object_name(x)) {
            let _ = writeln!(out, "id {} = {}", cat.object_name(x), id);
        }
    }
    for f in cat.non_identity_arrows() {
        let _ = writeln!(out, "arrow {} : {} -> {}", cat.arrow_name(f), cat.object_name(cat.dom(f)), cat.object_name(cat.cod(f)));
    }
    for f in cat.non_identity_arrows() {
        for g in cat.arrows_from(cat.cod(f)) {
            if !cat.is_identity(g) {
                let h = cat.compose(g, f);
                let _ = writeln!(out, "comp {} . {} = {}", cat.arrow_name(g), cat.arrow_name(f), cat.arrow_name(h));
            }
        }
    }
    out
}

/// A parsed set-valued functor of either variance.
#[derive(Clone, Debug)]
pub enum SetFunctor {
    Pre(Presheaf),
    Co(Copresheaf),
}

fn parse_set_functor(
    text: &str,
    path: &str,
    resolve: &mut dyn FnMut(&str) -> CliResult<Arc<FinCategory>>,
) -> CliResult<SetFunctor> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| syntax(path, 1, "empty file"))?;
    let (covariant, name, cat_name) = match header.as_slice() {
        ["presheaf", name, "on", cat] => (false, *name, *cat),
        ["copresheaf", name, "on", cat] => (true, *name, *cat),
        _ => return Err(syntax(path, ln, "expected `presheaf NAME on CATEGORY` or `copresheaf NAME on CATEGORY`")),
    };
    let base = resolve(cat_name)?;
    let mut fibers: Vec<Option<Vec<String>>> = vec![None; base.num_objects()];
    let mut acts: Vec<(usize, &str, &str, &str)> = Vec::new();
    for (ln, t) in it {
        match t.as_slice() {
            ["fiber", x, "=", rest @ ..] => {
                let joined = rest.join(" ");
                let inner = joined
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| syntax(path, ln, "fiber must be written `{ a b c }`"))?;
                let o = base.object_by_name(x).ok_or_else(|| invalid(path, Error::UnknownObject(x.to_string())))?;
                if fibers[o].is_some() {
                    return Err(syntax(path, ln, format!("second fiber for `{x}`")));
                }
                fibers[o] = Some(inner.split_whitespace().map(String::from).collect());
            }
            ["act", f, ":", a, "->", b] => acts.push((ln, f, a, b)),
            _ => return Err(syntax(path, ln, format!("unrecognized declaration `{}`", t.join(" ")))),
        }
    }
    let fibers: Vec<Vec<String>> = fibers.into_iter().map(Option::unwrap_or_default).collect();
    let mut action: Vec<Vec<Option<usize>>> = base
        .arrows()
        .map(|f| {
            let from = if covariant { base.dom(f) } else { base.cod(f) };
            if base.is_identity(f) {
                (0..fibers[from].len()).map(Some).collect()
            } else {
                vec![None; fibers[from].len()]
            }
        })
        .collect();
    let bad = |ln: usize, msg: String| invalid(path, Error::InvalidPresheaf(format!("line {ln}: {msg}")));
    for (ln, f, a, b) in acts {
        let fi = base.arrow_by_name(f).ok_or_else(|| invalid(path, Error::UnknownArrow(f.to_string())))?;
        let (from, to) = if covariant { (base.dom(fi), base.cod(fi)) } else { (base.cod(fi), base.dom(fi)) };
        let ai = fibers[from]
            .iter()
            .position(|e| e == a)
            .ok_or_else(|| bad(ln, format!("`{a}` is not in the fiber over `{}`", base.object_name(from))))?;
        let bi = fibers[to]
            .iter()
            .position(|e| e == b)
            .ok_or_else(|| bad(ln, format!("`{b}` is not in the fiber over `{}`", base.object_name(to))))?;
        let slot = &mut action[fi][ai];
        if slot.is_some_and(|prev| prev != bi) {
            return Err(bad(ln, format!("`{f}` acts on `{a}` twice")));
        }
        *slot = Some(bi);
    }
    let action: Vec<Vec<usize>> = action
        .into_iter()
        .enumerate()
        .map(|(f, row)| {
            row.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| invalid(path, Error::InvalidPresheaf(format!("action of `{}` is incomplete", base.arrow_name(f)))))
        })
        .collect::<CliResult<_>>()?;
    Ok(if covariant {
        SetFunctor::Co(Copresheaf::new(name, base, fibers, action).map_err(|e| invalid(path, e))?)
    } else {
        SetFunctor::Pre(Presheaf::new(name, base, fibers, action).map_err(|e| invalid(path, e))?)
    })
}

fn serialize_set_functor(kind: &str, name: &str, base: &FinCategory, fibers: &[Vec<String>], act: impl Fn(usize, usize) -> usize, covariant: bool) -> String {
    let mut out = format!("{kind} {name} on {}\n", base.name());
    for x in base.objects() {
        let body: Vec<&str> = std::iter::once("{").chain(fibers[x].iter().map(String::as_str)).chain(["}"]).collect();
        let _ = writeln!(out, "fiber {} = {}", base.object_name(x), body.join(" "));
    }
    for f in base.non_identity_arrows() {
        let (from, to) = if covariant { (base.dom(f), base.cod(f)) } else { (base.cod(f), base.dom(f)) };
        for (a, token) in fibers[from].iter().enumerate() {
            let _ = writeln!(out, "act {} : {} -> {}", base.arrow_name(f), token, fibers[to][act(f, a)]);
        }
    }
    out
}

pub fn serialize_psh(m: &Presheaf) -> String {
    serialize_set_functor("presheaf", m.name(), m.base(), m.fibers(), |f, a| m.act(f, a), false)
}

pub fn serialize_cpsh(n: &Copresheaf) -> String {
    serialize_set_functor("copresheaf", n.name(), n.base(), n.fibers(), |f, a| n.act(f, a), true)
}

pub fn parse_fpos(text: &str, path: &str) -> CliResult<FinPoset> {
    let mut name = None;
    let mut elements: Vec<String> = Vec::new();
    let mut rel: Vec<(usize, String, String)> = Vec::new();
    for (ln, t) in lines(text) {
        match t.as_slice() {
            ["poset", n] if name.is_none() => name = Some(n.to_string()),
            ["elements", es @ ..] => elements.extend(es.iter().map(|s| s.to_string())),
            ["le", a, b] => rel.push((ln, a.to_string(), b.to_string())),
            _ => return Err(syntax(path, ln, format!("unrecognized declaration `{}`", t.join(" ")))),
        }
    }
    let name = name.ok_or_else(|| syntax(path, 1, "missing `poset NAME` header"))?;
    let pairs = rel
        .iter()
        .map(|(ln, a, b)| {
            let find = |s: &str| {
                elements
                    .iter()
                    .position(|e| e == s)
                    .ok_or_else(|| invalid(path, Error::InvalidPoset(format!("line {ln}: unknown element `{s}`"))))
            };
            Ok((find(a)?, find(b)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    FinPoset::new(name, elements, &pairs).map_err(|e| invalid(path, e))
}

pub fn serialize_fpos(p: &FinPoset) -> String {
    p.to_string()
}

fn parse_fun(
    text: &str,
    path: &str,
    resolve: &mut dyn FnMut(&str) -> CliResult<Arc<FinCategory>>,
) -> CliResult<FinFunctor> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| syntax(path, 1, "empty file"))?;
    let (src, tgt) = match header.as_slice() {
        ["functor", _, ":", s, "->", t] => (resolve(s)?, resolve(t)?),
        _ => return Err(syntax(path, ln, "expected `functor NAME : SOURCE -> TARGET`")),
    };
    let mut obj_map: Vec<Option<usize>> = vec![None; src.num_objects()];
    let mut arr_map: Vec<Option<usize>> = vec![None; src.num_arrows()];
    let missing = |kind: &str, what: &str| invalid(path, Error::InvalidFunctor(format!("{kind} `{what}` is not assigned")));
    for (ln, t) in it {
        match t.as_slice() {
            ["obj", a, "=", b] => {
                let x = src.object_by_name(a).ok_or_else(|| invalid(path, Error::UnknownObject(a.to_string())))?;
                obj_map[x] = Some(tgt.object_by_name(b).ok_or_else(|| invalid(path, Error::UnknownObject(b.to_string())))?);
            }
            ["arr", f, "=", g] => {
                let u = src.arrow_by_name(f).ok_or_else(|| invalid(path, Error::UnknownArrow(f.to_string())))?;
                arr_map[u] = Some(tgt.arrow_by_name(g).ok_or_else(|| invalid(path, Error::UnknownArrow(g.to_string())))?);
            }
            _ => return Err(syntax(path, ln, format!("unrecognized declaration `{}`", t.join(" ")))),
        }
    }
    let obj_map: Vec<usize> = src
        .objects()
        .map(|x| obj_map[x].ok_or_else(|| missing("object", src.object_name(x))))
        .collect::<CliResult<_>>()?;
    let arr_map: Vec<usize> = src
        .arrows()
        .map(|u| match arr_map[u] {
            Some(g) => Ok(g),
            None if src.is_identity(u) => Ok(tgt.id(obj_map[src.dom(u)])),
            None => Err(missing("arrow", src.arrow_name(u))),
        })
        .collect::<CliResult<_>>()?;
    FinFunctor::new(src, tgt, obj_map, arr_map).map_err(|e| invalid(path, e))
}

pub fn serialize_fun(name: &str, f: &FinFunctor) -> String {
    let (s, t) = (f.source(), f.target());
    let mut out = format!("functor {name} : {} -> {}\n", s.name(), t.name());
    for x in s.objects() {
        let _ = writeln!(out, "obj {} = {}", s.object_name(x), t.object_name(f.obj(x)));
    }
    for u in s.non_identity_arrows() {
        let _ = writeln!(out, "arr {} = {}", s.arrow_name(u), t.arrow_name(f.arr(u)));
    }
    out
}

/// Reads inputs, resolves category names, and records what was read.
///
/// A category argument is either a `.fincat` path or `catalog:NAME`. Names
/// mentioned inside other files resolve to categories already loaded, then
/// to a sibling `NAME.fincat`, then to the catalog.
#[derive(Default)]
pub struct Loader {
    categories: HashMap<String, Arc<FinCategory>>,
    inputs: Vec<InputDigest>,
}

impl Loader {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn inputs(&self) -> &[InputDigest] {
        &self.inputs
    }

    fn read(&mut self, path: &str) -> CliResult<String> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
        let name = Path::new(path).file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.to_string());
        if !self.inputs.iter().any(|i| i.name == name && i.sha256 == digest(&text)) {
            self.inputs.push(InputDigest { name, sha256: digest(&text) });
        }
        Ok(text)
    }

    fn register(&mut self, cat: FinCategory) -> Arc<FinCategory> {
        let arc = Arc::new(cat);
        self.categories.entry(arc.name().to_string()).or_insert(arc).clone()
    }

    pub fn category(&mut self, spec: &str) -> CliResult<Arc<FinCategory>> {
        if let Some(name) = spec.strip_prefix("catalog:") {
            if let Some(c) = self.categories.get(name) {
                return Ok(c.clone());
            }
            let cat = catalog::by_name(name).ok_or_else(|| CliError::UnresolvedCategory(name.to_string()))?;
            let text = serialize_fincat(&cat);
            self.inputs.push(InputDigest { name: spec.to_string(), sha256: digest(&text) });
            return Ok(self.register((*cat).clone()));
        }
        let text = self.read(spec)?;
        let cat = parse_fincat(&text, spec)?;
        if let Some(existing) = self.categories.get(cat.name()) {
            if **existing == cat {
                return Ok(existing.clone());
            }
        }
        let arc = Arc::new(cat);
        self.categories.insert(arc.name().to_string(), arc.clone());
        Ok(arc)
    }

    fn resolve_near(&mut self, name: &str, near: &Path) -> CliResult<Arc<FinCategory>> {
        if let Some(c) = self.categories.get(name) {
            return Ok(c.clone());
        }
        let sibling: PathBuf = near.parent().unwrap_or(Path::new(".")).join(format!("{name}.fincat"));
        if sibling.exists() {
            return self.category(&sibling.to_string_lossy());
        }
        self.category(&format!("catalog:{name}"))
    }

    pub fn set_functor(&mut self, path: &str) -> CliResult<SetFunctor> {
        let text = self.read(path)?;
        let near = PathBuf::from(path);
        parse_set_functor(&text, path, &mut |n| self.resolve_near(n, &near))
    }

    pub fn presheaf(&mut self, path: &str) -> CliResult<Presheaf> {
        match self.set_functor(path)? {
            SetFunctor::Pre(m) => Ok(m),
            SetFunctor::Co(_) => Err(CliError::BadArity(format!("`{path}` holds a copresheaf; a presheaf is expected"))),
        }
    }

    pub fn copresheaf(&mut self, path: &str) -> CliResult<Copresheaf> {
        match self.set_functor(path)? {
            SetFunctor::Co(n) => Ok(n),
            SetFunctor::Pre(_) => Err(CliError::BadArity(format!("`{path}` holds a presheaf; a copresheaf is expected"))),
        }
    }

    pub fn functor(&mut self, path: &str) -> CliResult<FinFunctor> {
        let text = self.read(path)?;
        let near = PathBuf::from(path);
        parse_fun(&text, path, &mut |n| self.resolve_near(n, &near))
    }

    pub fn poset(&mut self, path: &str) -> CliResult<FinPoset> {
        let text = self.read(path)?;
        parse_fpos(&text, path)
    }
}

/// Parses text in the given format against the catalog; used for
/// round-trip checks.
pub fn parse_text_set_functor(text: &str) -> CliResult<SetFunctor> {
    parse_set_functor(text, "<text>", &mut |n| {
        catalog::by_name(n).ok_or_else(|| CliError::UnresolvedCategory(n.to_string()))
    })
}

pub fn parse_text_functor(text: &str, cats: &[Arc<FinCategory>]) -> CliResult<FinFunctor> {
    parse_fun(text, "<text>", &mut |n| {
        cats.iter()
            .find(|c| c.name() == n)
            .cloned()
            .or_else(|| catalog::by_name(n))
            .ok_or_else(|| CliError::UnresolvedCategory(n.to_string()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idem_round_trip() {
        let text = "category idem\nobject *\narrow e : * -> *\ncomp e . e = e\n";
        let cat = parse_fincat(text, "idem.fincat").unwrap();
        assert_eq!(cat, *catalog::idem());
        assert_eq!(serialize_fincat(&cat), text);
    }

    #[test]
    fn syntax_errors_have_lines() {
        let err = parse_fincat("category c\nobject a\narow f : a -> a\n", "c.fincat").unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 3, .. }), "{err}");
        let err = parse_fincat("category c\nobject a\narrow f : a -> a\n", "c.fincat").unwrap_err();
        assert!(matches!(err, CliError::Validation { .. }), "{err}");
    }

    #[test]
    fn dangling_action_target() {
        let text = "presheaf m on two\nfiber 0 = { p }\nfiber 1 = { q }\nact a : q -> r\n";
        let err = parse_text_set_functor(text).unwrap_err();
        assert!(matches!(err, CliError::Validation { .. }), "{err}");
    }

    #[test]
    fn chain_poset() {
        let p = parse_fpos("poset c3\nelements 0 1 2\nle 0 1\nle 1 2\n", "c3.fpos").unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(parse_fpos(&serialize_fpos(&p), "again").unwrap(), p);
    }

    #[test]
    fn comments_and_hashes_in_names() {
        let cat = parse_fincat("# header\ncategory c # trailing\nobject a#1\n", "c").unwrap();
        assert_eq!(cat.object_name(0), "a#1");
    }
}
