mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::second_neighborhoods;
use ktcolor::cut::{check_sparse_cut, cut_or_color, is_high_degree, CutColorOutcome};
use ktcolor::lab::gen::gen_planted;
use ktcolor::lab::oracle::for_each_coloring;
use ktcolor::params::{Params, DEFAULT_CK};
use ktcolor::subproblem::Subproblem;
use ktcolor::trace::{TraceEvent, Tracer};

/// Every vertex with a neighbor in `S` counts as high, and sets of one
/// vertex meet the size bar.
fn small_params(n: usize) -> Params {
    let one = Ratio::from_integer(1);
    Params::new(n as u64, 1, DEFAULT_CK).unwrap().with_nu(one).with_structure_degrees(one, one)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn outcomes_are_sound(n in 5usize..=14, p in 0.25f64..0.7, seed in any::<u64>()) {
        let inst = gen_planted(n, p, seed).unwrap();
        let g = &inst.graph;
        let params = small_params(n);
        for (root, s, t_set) in second_neighborhoods(g) {
            let sub = Subproblem::new(g, root, s, t_set.clone()).unwrap();
            for t in t_set.iter().filter(|&t| is_high_degree(&sub, t, &params)) {
                let mut tracer = Tracer::enabled();
                let outcome = cut_or_color(t, &sub, &params, &mut tracer).unwrap();
                let again = cut_or_color(t, &sub, &params, &mut Tracer::disabled()).unwrap();
                prop_assert_eq!(&outcome, &again);
                // X and Y only grow.
                let mut last = (0, 0);
                for ev in tracer.events() {
                    if let TraceEvent::XExtension { x, y, .. } | TraceEvent::YExtension { x, y, .. } = ev {
                        prop_assert!(*x >= last.0 && *y >= last.1);
                        last = (*x, *y);
                    }
                }
                match outcome {
                    CutColorOutcome::SparseCut { x, y } => {
                        prop_assert_eq!(check_sparse_cut(&sub, &x, &y, t, &params), vec![]);
                    }
                    CutColorOutcome::MonoGuarantee { s, root: r0, t: t0 } => {
                        prop_assert_eq!((r0, t0), (root, t));
                        let members = s.to_vec();
                        let mut ok = true;
                        for_each_coloring(g, |c| {
                            if c[r0] != c[t0] {
                                let third = 3 - c[r0] - c[t0];
                                ok &= members.iter().all(|&v| c[v] == third);
                            }
                            ok
                        })
                        .unwrap();
                        prop_assert!(ok, "S not forced to the third color");
                    }
                    CutColorOutcome::ProgressFound { progress } => {
                        prop_assert!(progress.kind() == "assume_mono");
                    }
                }
            }
        }
    }
}

#[test]
fn low_degree_vertex_is_rejected() {
    let g = ktcolor::graph::Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let sub = Subproblem::new(&g, 0, g.set_of([1]), g.set_of([2])).unwrap();
    let mut params = small_params(4);
    params = params.with_structure_degrees(Ratio::from_integer(1), Ratio::from_integer(16));
    assert!(cut_or_color(2, &sub, &params, &mut Tracer::disabled()).is_err());
}
