mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::arb_graph;
use ktcolor::driver::{drive, replay, wigderson_bound, wigderson_coloring, DriveOptions};
use ktcolor::lab::gen::{generate, Family};
use ktcolor::lab::oracle::is_three_colorable;
use ktcolor::progress::{colors_used, is_proper, verify_coloring};

fn small_opts(k: u64, nu: u64) -> DriveOptions {
    DriveOptions { k: Some(k), nu: Some(Ratio::from_integer(nu)), ..DriveOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn drive_is_sound_on_small_graphs(g in arb_graph(14, 0.45), k in 1u64..=4, nu in 1u64..=3) {
        let out = drive(&g, &small_opts(k, nu)).unwrap();
        let as_options: Vec<Option<u32>> = out.coloring.iter().map(|&c| Some(c)).collect();
        prop_assert_eq!(verify_coloring(&g, &as_options).unwrap(), vec![]);
        prop_assert_eq!(out.colors_used, colors_used(&out.coloring));
        prop_assert_eq!(replay(&g, &out.history).unwrap(), out.kt_coloring.clone());
        prop_assert!(out.colors_used <= out.wigderson_colors);
        if let Some(ev) = &out.evidence {
            if ev.conclusive {
                prop_assert!(!is_three_colorable(&g).unwrap(), "conclusive {:?} on a 3-colorable graph", ev.kind);
            }
        }
    }

    #[test]
    fn drive_default_parameters(family in prop::sample::select(Family::ALL.to_vec()), n in 4usize..300, deg in 2.0f64..20.0, seed in any::<u64>()) {
        let p = (deg / (n - 1) as f64).min(1.0);
        let Ok(inst) = generate(family, n, p, 3, seed) else { return Ok(()) };
        let g = &inst.graph;
        let out = drive(g, &DriveOptions::default()).unwrap();
        prop_assert!(is_proper(g, &out.coloring));
        prop_assert_eq!(replay(g, &out.history).unwrap(), out.kt_coloring.clone());
        let base = wigderson_coloring(g);
        prop_assert!(is_proper(g, &base.coloring));
        prop_assert_eq!(out.wigderson_colors, base.colors);
        prop_assert!(out.colors_used <= base.colors);
        if inst.family.three_colorable() == Some(true) {
            prop_assert!(base.colors <= wigderson_bound(g.n()));
            prop_assert!(!out.evidence.as_ref().is_some_and(|e| e.conclusive));
        }
    }

    #[test]
    fn drive_is_deterministic(g in arb_graph(40, 0.2), k in 1u64..=4) {
        let a = drive(&g, &small_opts(k, 1)).unwrap();
        let b = drive(&g, &small_opts(k, 1)).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        prop_assert_eq!(a.history, b.history);
    }
}

#[test]
fn planted_inputs_use_planted_colors_as_reference() {
    for seed in 0..20 {
        let inst = generate(Family::Planted, 60, 0.2, 3, seed).unwrap();
        let planted = inst.planted.clone().unwrap();
        let as_u32: Vec<u32> = planted.iter().map(|&c| c as u32).collect();
        assert!(is_proper(&inst.graph, &as_u32));
        let out = drive(&inst.graph, &DriveOptions::default()).unwrap();
        assert!(is_proper(&inst.graph, &out.coloring));
    }
}
