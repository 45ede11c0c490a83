//! Property tests: format round-trips, order relations between the three
//! problem kinds, reduction laws, and traceback validity.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssdc::bits::BitRow;
use ssdc::digraph::Digraph;
use ssdc::expr::{decompose_msp, eval_msp, parse_dico, parse_msp};
use ssdc::gen::{gen_instance, GenClass};
use ssdc::instance::{parse_instance, validate_solution, GraphForm, ProblemKind, SizeMap};
use ssdc::oracle::{brute_force, Tracked};
use ssdc::solve::solve_instance;
use ssdc::ssgw::{solve_ssgw_cograph, solve_ssgw_msp};
use std::collections::BTreeSet;

fn class_strategy() -> impl Strategy<Value = GenClass> {
    prop_oneof![Just(GenClass::Dico), Just(GenClass::Msp)]
}

fn kind_strategy() -> impl Strategy<Value = ProblemKind> {
    prop_oneof![
        Just(ProblemKind::Ssp),
        Just(ProblemKind::Ssg),
        Just(ProblemKind::Ssgw)
    ]
}

/// Pair-set view of a weak-rule table: (total, tracked total).
fn pair_set(rows: &[BitRow]) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for (t, row) in rows.iter().enumerate() {
        for s in row.iter_ones() {
            out.insert((s, t as u64));
        }
    }
    out
}

/// Random DAG with arcs oriented low to high; `density` in percent.
fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: u32) -> Digraph {
    let mut arcs = Vec::new();
    for u in 1..=n as u32 {
        for v in (u + 1)..=n as u32 {
            if rng.gen_ratio(density, 100) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, &arcs).unwrap()
}

/// Random digraph, cycles allowed.
fn random_digraph(rng: &mut ChaCha8Rng, n: usize, density: u32) -> Digraph {
    let mut arcs = Vec::new();
    for u in 1..=n as u32 {
        for v in 1..=n as u32 {
            if u != v && rng.gen_ratio(density, 100) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, &arcs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serialize_then_parse_is_identity(
        class in class_strategy(),
        kind in kind_strategy(),
        n in 1usize..=12,
        c in 1u64..=30,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, c, c.min(8), seed, kind);
        let back = parse_instance(&inst.serialize()).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.serialize(), inst.serialize());
    }

    #[test]
    fn expression_display_reparses(
        class in class_strategy(),
        n in 1usize..=12,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, 10, 5, seed, ProblemKind::Ssg);
        match &inst.graph {
            GraphForm::DiCo(x) => prop_assert_eq!(&parse_dico(&x.to_string()).unwrap(), x),
            GraphForm::Msp(x) => prop_assert_eq!(&parse_msp(&x.to_string()).unwrap(), x),
            GraphForm::Edges(_) => unreachable!("gen emits expressions"),
        }
    }

    #[test]
    fn spectra_nest_across_problem_kinds(
        class in class_strategy(),
        n in 1usize..=8,
        c in 1u64..=20,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, c, c.min(6), seed, ProblemKind::Ssg);
        let g = inst.digraph();
        let ssp = brute_force(&g, &inst.sizes, c, ProblemKind::Ssp, Tracked::None).sums;
        let ssg = brute_force(&g, &inst.sizes, c, ProblemKind::Ssg, Tracked::None).sums;
        let ssgw = brute_force(&g, &inst.sizes, c, ProblemKind::Ssgw, Tracked::None).sums;
        prop_assert!(ssg.is_subset(&ssgw), "forcing-rule sums must stay weak-feasible");
        prop_assert!(ssgw.is_subset(&ssp), "weak-rule sums must stay within plain subset sums");
    }

    #[test]
    fn weak_tables_track_within_total(
        class in class_strategy(),
        n in 1usize..=9,
        c in 1u64..=20,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, c, c.min(6), seed, ProblemKind::Ssgw);
        let tables = match &inst.graph {
            GraphForm::DiCo(x) => solve_ssgw_cograph(x, &inst.sizes, c).tables,
            GraphForm::Msp(x) => solve_ssgw_msp(x, &inst.sizes, c).tables,
            GraphForm::Edges(_) => unreachable!("gen emits expressions"),
        };
        for rows in &tables {
            for (s, t) in pair_set(rows) {
                prop_assert!(t <= s && s <= c, "pair ({s},{t}) out of range");
            }
            prop_assert!(rows[0].get(0), "(0,0) must always be present");
        }
    }

    #[test]
    fn solver_optimum_matches_oracle(
        class in class_strategy(),
        kind in kind_strategy(),
        n in 1usize..=7,
        c in 1u64..=18,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, c, c.min(6), seed, kind);
        let oracle = brute_force(&inst.digraph(), &inst.sizes, c, kind, Tracked::None);
        let (opt, _) = solve_instance(&inst).unwrap();
        prop_assert_eq!(opt, oracle.opt);
    }

    #[test]
    fn traced_solutions_validate(
        class in class_strategy(),
        kind in kind_strategy(),
        n in 1usize..=10,
        c in 1u64..=25,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(class, n, c, c.min(8), seed, kind);
        let (opt, chosen) = solve_instance(&inst).unwrap();
        let sol = validate_solution(&inst, &chosen).unwrap();
        prop_assert_eq!(sol.total, opt);
    }

    #[test]
    fn reduction_laws_on_dags(
        n in 1usize..=9,
        density in 10u32..=60,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_dag(&mut rng, n, density);
        let tr = g.transitive_reduction().unwrap();
        prop_assert_eq!(g.transitive_closure().arcs(), tr.transitive_closure().arcs());
        prop_assert_eq!(tr.transitive_reduction().unwrap().arcs(), tr.arcs());
        prop_assert!(tr.arc_count() <= g.arc_count());
    }

    #[test]
    fn contraction_preserves_forcing_spectrum(
        n in 1usize..=8,
        density in 10u32..=50,
        seed in any::<u64>(),
        c in 1u64..=20,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, n, density);
        let sizes = SizeMap::new((0..n).map(|_| rng.gen_range(1..=6)).collect()).unwrap();
        let con = g.condense(&sizes);
        let direct = brute_force(&g, &sizes, c, ProblemKind::Ssg, Tracked::None).sums;
        let contracted = brute_force(&con.dag, &con.sizes, c, ProblemKind::Ssg, Tracked::None).sums;
        prop_assert_eq!(direct, contracted);
    }

    #[test]
    fn decompose_inverts_eval(
        n in 1usize..=12,
        seed in any::<u64>(),
    ) {
        let inst = gen_instance(GenClass::Msp, n, 10, 5, seed, ProblemKind::Ssg);
        let g = inst.digraph();
        let expr = decompose_msp(&g).unwrap();
        prop_assert_eq!(eval_msp(&expr).arcs(), g.arcs());
    }
}

#[test]
fn generated_instances_round_trip_over_1000_seeds() {
    for seed in 0..1000u64 {
        let class = if seed % 2 == 0 { GenClass::Dico } else { GenClass::Msp };
        let n = (seed % 13 + 1) as usize;
        let c = seed % 29 + 1;
        let inst = gen_instance(class, n, c, c.min(7), seed, ProblemKind::Ssg);
        let again = gen_instance(class, n, c, c.min(7), seed, ProblemKind::Ssg);
        assert_eq!(inst.serialize(), again.serialize(), "seed {seed} must be reproducible");
        let back = parse_instance(&inst.serialize())
            .unwrap_or_else(|e| panic!("seed {seed} does not re-parse: {e}"));
        assert_eq!(back, inst, "seed {seed} round trip");
    }
}

#[test]
fn n_shaped_digraph_does_not_decompose() {
    let g = Digraph::from_arcs(4, &[(1, 3), (2, 3), (2, 4)]).unwrap();
    assert!(!g.is_n_free());
    assert!(matches!(
        decompose_msp(&g),
        Err(ssdc::expr::DecomposeError::NotDecomposable)
    ));
}
