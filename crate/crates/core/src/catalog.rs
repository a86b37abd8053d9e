//! Small named categories used throughout the test batteries.

use std::sync::{Arc, OnceLock};

use crate::fincat::{CategoryBuilder, FinCategory};

fn build(b: CategoryBuilder) -> Arc<FinCategory> {
    Arc::new(b.build().expect("catalog entries are valid"))
}

/// The terminal category.
pub fn one() -> Arc<FinCategory> {
    static ONE: OnceLock<Arc<FinCategory>> = OnceLock::new();
    ONE.get_or_init(|| build(CategoryBuilder::new("one").object("*"))).clone()
}

pub fn empty() -> Arc<FinCategory> {
    static EMPTY: OnceLock<Arc<FinCategory>> = OnceLock::new();
    EMPTY.get_or_init(|| build(CategoryBuilder::new("empty"))).clone()
}

/// The arrow category `0 -> 1`.
pub fn two() -> Arc<FinCategory> {
    build(CategoryBuilder::new("two").object("0").object("1").arrow("a", "0", "1"))
}

/// Discrete category on two objects.
pub fn pair() -> Arc<FinCategory> {
    build(CategoryBuilder::new("pair").object("a").object("b"))
}

/// Parallel pair `s, t : a => b`.
pub fn par() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("par")
            .object("a")
            .object("b")
            .arrow("s", "a", "b")
            .arrow("t", "a", "b"),
    )
}

/// The monoid `{id, e}` with `e . e = e`.
pub fn idem() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("idem")
            .object("*")
            .arrow("e", "*", "*")
            .comp("e", "e", "e"),
    )
}

/// The group of order two as a one-object category.
pub fn z2() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("z2")
            .object("*")
            .arrow("g", "*", "*")
            .comp("g", "g", "id_*"),
    )
}

/// An idempotent `e = i . r` on `x` split through `y` (`r . i = id_y`).
pub fn split() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("split")
            .object("x")
            .object("y")
            .arrow("r", "x", "y")
            .arrow("i", "y", "x")
            .arrow("e", "x", "x")
            .comp("r", "i", "id_y")
            .comp("i", "r", "e")
            .comp("e", "e", "e")
            .comp("r", "e", "r")
            .comp("e", "i", "i"),
    )
}

/// The chain `0 < 1 < 2`.
pub fn chain3() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("chain3")
            .object("0")
            .object("1")
            .object("2")
            .arrow("a", "0", "1")
            .arrow("b", "1", "2")
            .arrow("c", "0", "2")
            .comp("b", "a", "c"),
    )
}

/// `l <- c -> r`.
pub fn span() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("span")
            .object("c")
            .object("l")
            .object("r")
            .arrow("p", "c", "l")
            .arrow("q", "c", "r"),
    )
}

/// `l -> c <- r`.
pub fn cospan() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("cospan")
            .object("l")
            .object("r")
            .object("c")
            .arrow("u", "l", "c")
            .arrow("v", "r", "c"),
    )
}

/// The commuting square `0 < 1, 0 < 2, 1 < 3, 2 < 3` (the poset `two x two`).
pub fn square() -> Arc<FinCategory> {
    build(
        CategoryBuilder::new("square")
            .object("0")
            .object("1")
            .object("2")
            .object("3")
            .arrow("a", "0", "1")
            .arrow("b", "0", "2")
            .arrow("c", "1", "3")
            .arrow("d", "2", "3")
            .arrow("k", "0", "3")
            .comp("c", "a", "k")
            .comp("d", "b", "k"),
    )
}

/// Every catalog entry, in a fixed order.
pub fn all() -> Vec<Arc<FinCategory>> {
    vec![one(), two(), pair(), par(), idem(), z2(), split(), chain3(), span(), cospan(), square()]
}

pub fn by_name(name: &str) -> Option<Arc<FinCategory>> {
    match name {
        "empty" => Some(empty()),
        _ => all().into_iter().find(|c| c.name() == name),
    }
}
