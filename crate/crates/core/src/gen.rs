//! Seeded generators of small categories, functors and set-valued functors
//! for the law suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog;
use crate::error::Result;
use crate::fincat::{enumerate_functors, Bound, FinCategory, FinFunctor, ObjId, TableBuilder};
use crate::poset::posets_up_to;

/// The free category on a finite acyclic graph; arrows are paths.
pub fn free_category(name: &str, objects: usize, edges: &[(ObjId, ObjId)]) -> FinCategory {
    let mut tb: TableBuilder<(ObjId, Vec<usize>)> = TableBuilder::new();
    for x in 0..objects {
        tb.add_object(x.to_string());
    }
    // paths grouped by start, built by extending along outgoing edges
    let mut paths: Vec<(ObjId, Vec<usize>, ObjId)> = (0..objects).map(|x| (x, Vec::new(), x)).collect();
    let mut k = 0;
    while k < paths.len() {
        let (start, path, end) = paths[k].clone();
        for (e, &(d, c)) in edges.iter().enumerate() {
            if d == end {
                let mut longer = path.clone();
                longer.push(e);
                paths.push((start, longer, c));
            }
        }
        k += 1;
    }
    for (start, path, end) in &paths {
        let name = if path.is_empty() {
            format!("id_{start}")
        } else {
            path.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(".")
        };
        tb.add_arrow((*start, path.clone()), name, *start, *end);
        if path.is_empty() {
            tb.set_identity(*start, &(*start, Vec::new()));
        }
    }
    tb.finish(name.to_string(), |(_, g), (s, f)| (*s, f.iter().chain(g).copied().collect()))
}

/// A fixed, deduplicated pool of categories within `bound`: the catalog and
/// opposites, pairwise products, thin categories of posets, and free
/// categories on small acyclic graphs.
pub fn category_pool(bound: Bound) -> Vec<Arc<FinCategory>> {
    let base = catalog::all();
    let mut pool: Vec<FinCategory> = Vec::new();
    let mut push = |c: FinCategory| {
        if bound.check(&c).is_ok() && !c.is_empty() && !pool.iter().any(|p| p.num_arrows() == c.num_arrows() && same_shape(p, &c)) {
            pool.push(c);
        }
    };
    for c in &base {
        push((**c).clone());
        push(c.opposite().with_name(format!("{}^op", c.name())));
    }
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.num_arrows() * b.num_arrows() <= bound.max_arrows {
                push(a.product(b));
            }
        }
    }
    for p in posets_up_to(4) {
        if !p.is_empty() {
            push(p.to_category());
        }
    }
    let graphs: [(&str, usize, &[(ObjId, ObjId)]); 4] = [
        ("fork3", 3, &[(0, 1), (0, 2)]),
        ("path4", 4, &[(0, 1), (1, 2), (2, 3)]),
        ("par2", 3, &[(0, 1), (0, 1), (1, 2)]),
        ("diamond", 4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
    ];
    for (name, n, edges) in graphs {
        push(free_category(name, n, edges));
    }
    pool.into_iter().map(Arc::new).collect()
}

// Equal tables up to naming.
fn same_shape(a: &FinCategory, b: &FinCategory) -> bool {
    a.num_objects() == b.num_objects()
        && a.arrows().all(|f| a.dom(f) == b.dom(f) && a.cod(f) == b.cod(f))
        && a.arrows().all(|g| a.arrows().all(|f| a.try_compose(g, f) == b.try_compose(g, f)))
}

/// A random functor between two categories from the pool.
pub fn random_functor<R: Rng>(pool: &[Arc<FinCategory>], bound: Bound, rng: &mut R) -> Result<FinFunctor> {
    loop {
        let src = pool.choose(rng).expect("nonempty pool");
        let tgt = pool.choose(rng).expect("nonempty pool");
        let all = enumerate_functors(src, tgt, bound)?;
        if let Some(f) = all.choose(rng) {
            return Ok(f.clone());
        }
    }
}

/// Functors out of the catalog used by the exhaustive part of the suites:
/// identities, terminal maps, object picks and every functor from `two`.
pub fn catalog_functors(bound: Bound) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    let two = catalog::two();
    for c in catalog::all() {
        out.push(FinFunctor::identity(&c));
        out.push(FinFunctor::to_terminal(&c));
        out.extend(c.objects().map(|x| FinFunctor::pick(&c, x)));
        out.extend(enumerate_functors(&two, &c, bound)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn free_categories() {
        let c = free_category("sq", 4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(c.num_arrows(), 4 + 4 + 2);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn pool_and_functors() {
        let bound = Bound::default();
        let pool = category_pool(bound);
        assert!(pool.len() > 30);
        assert!(pool.iter().all(|c| bound.check(c).is_ok() && c.validate().is_ok()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_functor(&pool, bound, &mut rng).unwrap();
        assert!(f.validate().is_ok());
        assert!(!catalog_functors(bound).unwrap().is_empty());
    }
}
