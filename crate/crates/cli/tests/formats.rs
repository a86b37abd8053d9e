use std::sync::Arc;

use bkit::formats::{
    parse_fincat, parse_fpos, parse_text_functor, parse_text_set_functor, serialize_cpsh, serialize_fincat,
    serialize_fpos, serialize_fun, serialize_psh, SetFunctor,
};
use bkit::CliError;
use bkit_core::catalog;
use bkit_core::fincat::{enumerate_functors, Bound};
use bkit_core::poset::posets_up_to;
use bkit_core::sets::{presheaves_up_to, copresheaves_up_to, random_copresheaf, random_presheaf, Copresheaf, Presheaf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pre(text: &str) -> Presheaf {
    match parse_text_set_functor(text).unwrap() {
        SetFunctor::Pre(m) => m,
        SetFunctor::Co(_) => panic!("expected a presheaf"),
    }
}

fn co(text: &str) -> Copresheaf {
    match parse_text_set_functor(text).unwrap() {
        SetFunctor::Co(n) => n,
        SetFunctor::Pre(_) => panic!("expected a copresheaf"),
    }
}

#[test]
fn catalog_categories_round_trip() {
    for c in catalog::all() {
        let text = serialize_fincat(&c);
        assert_eq!(parse_fincat(&text, "t").unwrap(), *c, "{text}");
        let op = Arc::new(c.opposite());
        assert_eq!(parse_fincat(&serialize_fincat(&op), "t").unwrap(), *op);
    }
}

#[test]
fn catalog_set_functors_round_trip() {
    for c in catalog::all() {
        for m in presheaves_up_to(&c, 2) {
            assert_eq!(pre(&serialize_psh(&m)), m);
        }
        for n in copresheaves_up_to(&c, 2) {
            assert_eq!(co(&serialize_cpsh(&n)), n);
        }
    }
}

#[test]
fn catalog_functors_round_trip() {
    let cats = catalog::all();
    for s in &cats {
        for t in &cats {
            for f in enumerate_functors(s, t, Bound::default()).unwrap().into_iter().take(20) {
                let g = parse_text_functor(&serialize_fun("f", &f), &cats).unwrap();
                assert_eq!((g.obj_map(), g.arr_map()), (f.obj_map(), f.arr_map()));
            }
        }
    }
}

#[test]
fn posets_round_trip() {
    for p in posets_up_to(4) {
        assert_eq!(parse_fpos(&serialize_fpos(&p), "t").unwrap(), p);
    }
}

#[test]
fn errors_carry_positions() {
    let err = parse_fincat("category c\nobject x\nmorphism f : x -> x\n", "c.fincat").unwrap_err();
    assert!(matches!(err, CliError::Syntax { line: 3, .. }), "{err}");
    let dangling = "presheaf m on two\nfiber 0 = { a }\nfiber 1 = { b }\nact a : b -> z\n";
    assert!(matches!(parse_text_set_functor(dangling), Err(CliError::Validation { .. })));
    let cyclic = "poset c\nelements a b\nle a b\nle b a\n";
    assert!(matches!(parse_fpos(cyclic, "c.fpos"), Err(CliError::Validation { .. })));
}

proptest! {
    #[test]
    fn random_set_functors_round_trip(i in 0usize..32, seed in any::<u64>()) {
        let cats = catalog::all();
        let c = &cats[i % cats.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_presheaf(c, 3, &mut rng);
        prop_assert_eq!(pre(&serialize_psh(&m)), m);
        let n = random_copresheaf(c, 3, &mut rng);
        prop_assert_eq!(co(&serialize_cpsh(&n)), n);
    }
}
