//! Finite categories, functors and natural transformations.

mod category;
mod functor;

pub use category::{ArrId, Arrow, CategoryBuilder, FinCategory, ObjId};
pub(crate) use category::TableBuilder;
pub use functor::{discrete, enumerate_functors, same_category, Bound, FinFunctor, NatTrans};

/// The opposite category; `opposite(opposite(c)) == c`.
pub fn opposite(cat: &FinCategory) -> FinCategory {
    cat.opposite()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::error::Error;

    #[test]
    fn builder_fills_identity_composites() {
        let idem = CategoryBuilder::new("idem").object("*").arrow("e", "*", "*").comp("e", "e", "e").build().unwrap();
        assert_eq!((idem.num_objects(), idem.num_arrows()), (1, 2));
        let e = idem.arrow_by_name("e").unwrap();
        assert_eq!(idem.compose(idem.id(0), e), e);
        assert_eq!(idem.compose(e, e), e);
        assert!(idem.validate().is_ok());
    }

    #[test]
    fn builder_rejects_broken_tables() {
        let missing = CategoryBuilder::new("m").object("*").arrow("e", "*", "*").build();
        assert!(matches!(missing, Err(Error::MissingComposite { .. })));

        // e.e = f, f.e = e.f = f, f.f = e breaks associativity: (f.f).e = e.e = f, f.(f.e) = f.f = e
        let assoc = CategoryBuilder::new("a")
            .object("*")
            .arrow("e", "*", "*")
            .arrow("f", "*", "*")
            .comp("e", "e", "f")
            .comp("f", "e", "f")
            .comp("e", "f", "f")
            .comp("f", "f", "e")
            .build();
        assert!(matches!(assoc, Err(Error::AssociativityViolation { .. })));

        let dup = CategoryBuilder::new("d").object("x").object("x").build();
        assert!(matches!(dup, Err(Error::DuplicateName { .. })));
    }

    #[test]
    fn group_tables_are_accepted() {
        let z2 = CategoryBuilder::new("z2").object("*").arrow("g", "*", "*").comp("g", "g", "id_*").build().unwrap();
        let g = z2.arrow_by_name("g").unwrap();
        assert!(z2.is_isomorphism(g));
        assert_eq!(z2.inverse(g), Some(g));
    }

    #[test]
    fn catalog_is_valid() {
        for c in catalog::all() {
            assert!(c.validate().is_ok(), "{}", c.name());
        }
    }

    #[test]
    fn functor_counts() {
        let b = Bound::default();
        let count = |s: &Arc<FinCategory>, t: &Arc<FinCategory>| enumerate_functors(s, t, b).unwrap().len();
        assert_eq!(count(&catalog::one(), &catalog::two()), 2);
        assert_eq!(count(&catalog::two(), &catalog::one()), 1);
        assert_eq!(count(&catalog::idem(), &catalog::idem()), 2);
        assert_eq!(count(&catalog::two(), &catalog::two()), 3);
        // functors z2 -> z2 and idem -> z2: group homomorphisms, monoid maps into a group
        assert_eq!(count(&catalog::z2(), &catalog::z2()), 2);
        assert_eq!(count(&catalog::idem(), &catalog::z2()), 1);
    }

    #[test]
    fn enumeration_respects_bound() {
        let big = Arc::new(discrete(5, "five"));
        assert!(matches!(enumerate_functors(&big, &catalog::one(), Bound::default()), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn opposites() {
        let two = catalog::two();
        let op = opposite(&two);
        let a = op.arrow_by_name("a").unwrap();
        assert_eq!((op.object_name(op.dom(a)), op.object_name(op.cod(a))), ("1", "0"));
        for c in catalog::all() {
            let back = opposite(&opposite(&c));
            assert!(c.arrows().all(|f| back.dom(f) == c.dom(f) && back.cod(f) == c.cod(f)));
        }
        let idem = catalog::idem();
        let iop = opposite(&idem);
        assert!(idem.arrows().all(|g| idem.arrows().all(|f| idem.compose(g, f) == iop.compose(g, f))));
    }

    #[test]
    fn functor_composition_and_naturality() {
        let two = catalog::two();
        let one = catalog::one();
        let p0 = FinFunctor::pick(&two, 0);
        let p1 = FinFunctor::pick(&two, 1);
        let bang = FinFunctor::to_terminal(&two);
        assert!(bang.after(&p0).unwrap().is_identity());
        let a = two.arrow_by_name("a").unwrap();
        assert!(NatTrans::new(p0.clone(), p1.clone(), vec![a]).is_ok());
        assert!(NatTrans::new(p1, p0, vec![a]).is_err());
        assert!(FinFunctor::identity(&one).is_isomorphism());
    }
}
