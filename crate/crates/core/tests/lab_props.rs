mod common;

use proptest::prelude::*;

use common::arb_graph;
use ktcolor::io::{read_dimacs, read_json_graph, write_dimacs, GraphDoc};
use ktcolor::lab::gen::{gen_structured, generate, structured_spec_for, Family};
use ktcolor::lab::oracle::{brute_force_colorings, chromatic_polynomial_at_3, count_colorings, find_coloring};
use ktcolor::progress::is_proper;
use ktcolor::recursion::check_structure;

proptest! {
    #[test]
    fn dimacs_round_trip_is_bit_exact(g in arb_graph(40, 0.2), notes in prop::collection::vec("[a-z ]{0,12}", 0..3)) {
        let text = write_dimacs(&g, &notes);
        let parsed = read_dimacs(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert_eq!(&parsed.comments, &notes.iter().map(|c| c.trim().to_string()).collect::<Vec<_>>());
        prop_assert_eq!(write_dimacs(&parsed.graph, &parsed.comments), write_dimacs(&g, &parsed.comments));
    }

    #[test]
    fn json_round_trip(g in arb_graph(40, 0.2)) {
        let text = serde_json::to_string(&GraphDoc::from_graph(&g)).unwrap();
        prop_assert_eq!(read_json_graph(&text).unwrap().to_graph().unwrap(), g);
    }

    #[test]
    fn generators_are_valid(family in prop::sample::select(Family::ALL.to_vec()), n in 4usize..400, deg in 1.0f64..30.0, seed in any::<u64>()) {
        let p = (deg / (n - 1) as f64).min(1.0);
        let Ok(inst) = generate(family, n, p, 3, seed) else { return Ok(()) };
        prop_assert_eq!(inst.graph.n(), n);
        if let Some(planted) = &inst.planted {
            let colors: Vec<u32> = planted.iter().map(|&c| c as u32).collect();
            prop_assert!(is_proper(&inst.graph, &colors));
            prop_assert!(planted.iter().all(|&c| c < 3));
        }
        let again = generate(family, n, p, 3, seed).unwrap();
        prop_assert_eq!(&again.graph, &inst.graph);
        prop_assert_eq!(again.planted, inst.planted);
    }

    #[test]
    fn structured_instances_pass_the_checker(n in 40usize..1500, k in 2u64..12, seed in any::<u64>()) {
        let Ok(spec) = structured_spec_for(n, 4.0 / n as f64, k, seed) else { return Ok(()) };
        let inst = gen_structured(&spec).unwrap();
        let st = inst.structure.as_ref().unwrap();
        prop_assert_eq!(check_structure(&inst.graph, st, k), Vec::<String>::new());
    }

    #[test]
    fn oracles_agree(g in arb_graph(10, 0.35)) {
        let count = count_colorings(&g).unwrap();
        prop_assert_eq!(count, chromatic_polynomial_at_3(&g).unwrap());
        prop_assert_eq!(count, brute_force_colorings(&g).unwrap().len() as u64);
        prop_assert_eq!(count > 0, find_coloring(&g, &[], &[]).unwrap().is_some());
    }
}
