use proptest::prelude::*;

use lagmat::exactlin::{congruence_diagonalize, kronecker_index, rank};
use lagmat::index::{crosscheck_quadratic, index_relative};
use lagmat::orient::{cocycle_failures, reciprocity_failures};
use lagmat::polytope::{check_balance, orient_skeleton, skeleton};
use lagmat::represent::{fundamental_reduction, representation_table, Representation};
use lagmat::selftest::random_symmetric;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rep(seed: u64, n: usize, bound: i64) -> Representation<lagmat::exactlin::Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Representation::with_identity(random_symmetric(&mut rng, n, -bound, bound)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representation_tables_are_consistent(seed in any::<u64>(), n in 1usize..=4, bound in 1i64..=3) {
        let r = rep(seed, n, bound);
        let m = r.matroid().unwrap();
        let st = representation_table(&r, &m).unwrap();
        prop_assert!(cocycle_failures(&st).is_empty());
        prop_assert!(reciprocity_failures(&st).is_empty());
        let os = orient_skeleton(&m, &st).unwrap();
        prop_assert!(check_balance(&os).is_empty());
    }

    #[test]
    fn index_matches_inertia(seed in any::<u64>(), n in 1usize..=4, bound in 1i64..=4) {
        let r = rep(seed, n, bound);
        let m = r.matroid().unwrap();
        let sk = skeleton(&m).unwrap();
        let st = representation_table(&r, &m).unwrap();
        for f in m.bases() {
            let c = crosscheck_quadratic(&r, &sk, f).unwrap();
            prop_assert!(c.agree, "{:?}", c);
            let cf = fundamental_reduction(&r, f).unwrap().cf;
            let inertia = congruence_diagonalize(&cf).unwrap();
            prop_assert_eq!(inertia.rank, rank(&cf));
            prop_assert_eq!(kronecker_index(&cf).unwrap().index(), index_relative(&sk, &st, f).unwrap().index);
        }
    }
}
