use std::sync::Arc;

use bkit_core::calculus::{colim_presheaf, lan, tensor};
use bkit_core::catalog;
use bkit_core::comma::{coelements, elements, pi0};
use bkit_core::factorization::{
    em_factorize, em_prime_factorize, is_discrete_fibration, is_discrete_opfibration, is_final, is_initial,
};
use bkit_core::fincat::{Bound, FinCategory};
use bkit_core::gen::{category_pool, random_functor};
use bkit_core::laws::lan_fiber_oracle;
use bkit_core::poset::{monotone_maps, pos_em_factorize, pos_em_prime_factorize, pos_tensor, posets_up_to, FinPoset};
use bkit_core::sets::{random_copresheaf, random_presheaf};
use bkit_core::topo::{closure, is_finite_covering, neighborhood, Flavor, PartOfCategory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cat_at(i: usize) -> Arc<FinCategory> {
    let all = catalog::all();
    all[i % all.len()].clone()
}

fn part(cat: &Arc<FinCategory>, mask: u32) -> PartOfCategory {
    let objs: Vec<usize> = cat.objects().filter(|&x| mask >> x & 1 == 1).collect();
    PartOfCategory::new(cat, &objs, Flavor::General).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorizations_hold(seed in any::<u64>()) {
        let pool = category_pool(Bound::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_functor(&pool, Bound::default(), &mut rng).unwrap();
        let em = em_factorize(&f);
        prop_assert!(em.holds());
        prop_assert!(is_final(&em.e) && is_discrete_fibration(&em.m));
        let emp = em_prime_factorize(&f);
        prop_assert!(emp.holds());
        prop_assert!(is_initial(&emp.e) && is_discrete_opfibration(&emp.m));
    }

    #[test]
    fn neighborhood_and_closure_are_hulls(i in 0usize..64, a in 0u32..16, b in 0u32..16) {
        let cat = cat_at(i);
        let (p, q) = (part(&cat, a), part(&cat, a | b));
        let n = neighborhood(&p).unwrap();
        let c = closure(&p).unwrap();
        prop_assert!(n.is_open() && c.is_closed());
        prop_assert!(p.is_subset_of(&n) && p.is_subset_of(&c));
        prop_assert_eq!(neighborhood(&n).unwrap().objects(), n.objects());
        prop_assert_eq!(closure(&c).unwrap().objects(), c.objects());
        prop_assert!(n.is_subset_of(&neighborhood(&q).unwrap()));
        prop_assert!(c.is_subset_of(&closure(&q).unwrap()));
        prop_assert!(p.is_subset_of(&neighborhood(&c).unwrap()));
        prop_assert!(n.complement().is_closed() && c.complement().is_open());
    }

    #[test]
    fn covering_criteria_agree(i in 0usize..64, seed in any::<u64>()) {
        let cat = cat_at(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_copresheaf(&cat, 2, &mut rng);
        let m = random_presheaf(&cat, 2, &mut rng);
        // errors are raised when the two decision paths disagree
        is_finite_covering(&coelements(&n).projection).unwrap();
        is_finite_covering(&elements(&m).projection).unwrap();
    }

    #[test]
    fn colimit_counts_components(i in 0usize..64, seed in any::<u64>()) {
        let cat = cat_at(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_presheaf(&cat, 3, &mut rng);
        prop_assert_eq!(colim_presheaf(&m).len(), pi0(&elements(&m).category).size);
    }

    #[test]
    fn lan_matches_oracle_and_restricts(seed in any::<u64>()) {
        let pool = category_pool(Bound::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_functor(&pool, Bound::default(), &mut rng).unwrap();
        let m = random_presheaf(f.source(), 2, &mut rng);
        prop_assert!(lan_fiber_oracle(&f, &m).unwrap());
        // colimits are preserved: colim lan(f, m) = colim m
        let l = lan(&f, &m).unwrap().result;
        prop_assert_eq!(colim_presheaf(&l).len(), colim_presheaf(&m).len());
    }

    #[test]
    fn tensor_with_terminal_is_colimit(i in 0usize..64, seed in any::<u64>()) {
        let cat = cat_at(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_presheaf(&cat, 2, &mut rng);
        let one = bkit_core::sets::Copresheaf::terminal(&cat);
        prop_assert_eq!(tensor(&one, &m).unwrap().len(), colim_presheaf(&m).len());
    }
}

fn small_posets() -> Vec<Arc<FinPoset>> {
    posets_up_to(3).into_iter().map(Arc::new).collect()
}

#[test]
fn pos_factorizations_hold_for_all_small_maps() {
    let ps = small_posets();
    for s in &ps {
        for t in &ps {
            for f in monotone_maps(s, t) {
                assert!(pos_em_factorize(&f).holds(&f));
                assert!(pos_em_prime_factorize(&f).holds(&f));
            }
        }
    }
}

proptest! {
    #[test]
    fn pos_tensor_is_intersection(i in 0usize..16, a in any::<u64>(), b in any::<u64>()) {
        let ps = posets_up_to(4);
        let p = &ps[i % ps.len()];
        let up = p.up_sets();
        let down = p.down_sets();
        let n = up[(a as usize) % up.len()];
        let m = down[(b as usize) % down.len()];
        prop_assert_eq!(pos_tensor(p, n, m).unwrap(), n & m != 0);
    }
}
