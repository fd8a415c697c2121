mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::{arb_graph, random_subset};
use ktcolor::blum::{
    certificate_is_valid, common_neighbor_check, max_common_neighbors, multichromatic_test, verify_growth,
    GrowthCheck, MultichromaticResult,
};
use ktcolor::lab::gen::{gen_growth_config, gen_planted};
use ktcolor::lab::oracle::{oracle_is_multichromatic, oracle_mono_somewhere};
use ktcolor::params::{Params, DEFAULT_CK};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn certificates_are_sound(n in 4usize..=16, p in 0.2f64..0.7, seed in any::<u64>(), keep in 0.15f64..0.6) {
        let inst = gen_planted(n, p, seed).unwrap();
        let g = &inst.graph;
        let x = random_subset(g, keep, seed ^ 0x5eed);
        prop_assume!(!x.is_empty());
        let params = Params::new(n as u64, 1, DEFAULT_CK).unwrap().with_nu(Ratio::from_integer(1));
        match multichromatic_test(g, &x, &params).unwrap() {
            MultichromaticResult::Certificate(cert) => {
                prop_assert!(certificate_is_valid(g, &x, &cert));
                prop_assert!(oracle_is_multichromatic(g, &x).unwrap());
            }
            MultichromaticResult::ProgressCandidate(_) => {
                // Without a certificate, N(X) is bipartite; nothing is claimed.
                prop_assert!(g.two_color_within(&g.neighborhood(&x)).is_bipartite());
            }
        }
    }

    #[test]
    fn certificates_refute_monochromatic_sets(n in 4usize..=14, seed in any::<u64>()) {
        let inst = gen_planted(n, 0.5, seed).unwrap();
        let g = &inst.graph;
        let x = random_subset(g, 0.4, seed.rotate_left(7));
        prop_assume!(!x.is_empty());
        let params = Params::new(n as u64, 1, DEFAULT_CK).unwrap().with_nu(Ratio::from_integer(1));
        if multichromatic_test(g, &x, &params).unwrap().is_certificate() {
            prop_assert!(!oracle_mono_somewhere(g, &x).unwrap());
        }
    }

    #[test]
    fn common_neighbor_check_is_exhaustive(g in arb_graph(60, 0.15), num in 0u64..6, den in 1u64..3) {
        let nu = Ratio::new(num, den);
        let params = Params::new(g.n() as u64, 1, DEFAULT_CK).unwrap().with_nu(nu);
        let best = max_common_neighbors(&g);
        match common_neighbor_check(&g, &params) {
            None => prop_assert!(Ratio::from_integer(best as u64) <= nu),
            Some(cn) => {
                prop_assert!(cn.u < cn.v);
                prop_assert_eq!(cn.witness, g.common_neighbors(cn.u, cn.v).unwrap());
                prop_assert!(Ratio::from_integer(g.common_neighbor_count(cn.u, cn.v) as u64) > nu);
                for a in 0..cn.u {
                    for b in a + 1..g.n() {
                        prop_assert!(Ratio::from_integer(g.common_neighbor_count(a, b) as u64) <= nu);
                    }
                }
            }
        }
    }

    #[test]
    fn growth_bound_never_fails(z in 1usize..40, u in 1usize..120, d in 1u64..20, nu in 1u64..5, seed in any::<u64>()) {
        let cfg = gen_growth_config(z, u, d, Ratio::from_integer(nu), seed).unwrap();
        let check = verify_growth(&cfg.graph, &cfg.z, &cfg.u, cfg.d, cfg.nu);
        prop_assert!(!matches!(check, GrowthCheck::Violated { .. }), "{:?}", check);
    }
}

#[test]
fn pair_scan_agrees_on_larger_graphs() {
    for seed in 0..6 {
        let g = common::random_graph(200, 0.05, seed);
        let best = max_common_neighbors(&g) as u64;
        for nu in [best.saturating_sub(1), best] {
            let params = Params::new(200, 1, DEFAULT_CK).unwrap().with_nu(Ratio::from_integer(nu));
            assert_eq!(common_neighbor_check(&g, &params).is_some(), nu < best, "seed {seed} nu {nu}");
        }
    }
}
