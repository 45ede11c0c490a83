//! Acceptance gate. Each test covers one numbered criterion, prints one
//! `ACCEPTANCE C<k> ...: PASS` line on success, and panics with a FAIL
//! message carrying the mismatch otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssdc::bits::BitRow;
use ssdc::digraph::Digraph;
use ssdc::expr::{decompose_msp, eval_msp, node_labels, ExprOp, Flat, FlatNode};
use ssdc::gen::{gen_instance, GenClass};
use ssdc::instance::{
    parse_instance, validate_solution, GraphForm, Instance, ItemId, ProblemKind, SizeMap,
};
use ssdc::oracle::{brute_force, condensation_fixture, feasible_sets, reduction_fixture, Tracked};
use ssdc::ssg::{solve_ssg_cograph, solve_ssg_general, solve_ssg_msp};
use ssdc::ssgw::{solve_ssgw_cograph, solve_ssgw_msp};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const E1_SSG: &str = "problem ssg\ncapacity 7\nitems 4\nsize 1 1\nsize 2 2\nsize 3 2\nsize 4 3\ngraph dico ((v1 + v3) -> (v2 * v4))\n";
const E1_SSGW: &str = "problem ssgw\ncapacity 7\nitems 4\nsize 1 1\nsize 2 2\nsize 3 2\nsize 4 3\ngraph dico ((v1 + v3) -> (v2 * v4))\n";
const E2_SSG: &str = "problem ssg\ncapacity 7\nitems 6\nsize 1 2\nsize 2 1\nsize 3 4\nsize 4 3\nsize 5 2\nsize 6 3\ngraph msp (((v1 * v2) | (v3 * v4)) * (v5 * v6))\n";
const E2_SSGW: &str = "problem ssgw\ncapacity 7\nitems 6\nsize 1 2\nsize 2 1\nsize 3 4\nsize 4 3\nsize 5 2\nsize 6 3\ngraph msp (((v1 * v2) | (v3 * v4)) * (v5 * v6))\n";

fn row_bits(row: &BitRow, capacity: u64) -> Vec<u8> {
    (0..=capacity).map(|s| u8::from(row.get(s))).collect()
}

fn node_index(labels: &[String], label: &str, ctx: &str) -> usize {
    labels
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("{ctx} FAIL: no node labeled {label}"))
}

fn pair_set(rows: &[BitRow]) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for (t, row) in rows.iter().enumerate() {
        for s in row.iter_ones() {
            out.insert((s, t as u64));
        }
    }
    out
}

/// Item ids under each node, ascending.
fn leaf_sets<Op>(flat: &Flat<Op>) -> Vec<Vec<ItemId>> {
    let mut sets: Vec<Vec<ItemId>> = Vec::with_capacity(flat.nodes.len());
    for node in &flat.nodes {
        let set = match node {
            FlatNode::Leaf(id) => vec![*id],
            FlatNode::Node(_, l, r) => {
                let mut v = sets[*l].clone();
                v.extend_from_slice(&sets[*r]);
                v.sort_unstable();
                v
            }
        };
        sets.push(set);
    }
    sets
}

/// Sub-digraph induced on `leaves`, relabeled 1..k by rank, with the
/// matching size map.
fn induced(g: &Digraph, leaves: &[ItemId], sizes: &SizeMap) -> (Digraph, SizeMap) {
    let mut rank = vec![0u32; g.n() + 1];
    for (k, &v) in leaves.iter().enumerate() {
        rank[v as usize] = (k + 1) as u32;
    }
    let arcs: Vec<(u32, u32)> = g
        .arcs()
        .into_iter()
        .filter(|&(u, v)| rank[u as usize] != 0 && rank[v as usize] != 0)
        .map(|(u, v)| (rank[u as usize], rank[v as usize]))
        .collect();
    let sub = Digraph::from_arcs(leaves.len(), &arcs).expect("induced subgraph stays simple");
    let sub_sizes =
        SizeMap::new(leaves.iter().map(|&id| sizes.get(id)).collect()).expect("sizes stay positive");
    (sub, sub_sizes)
}

#[test]
fn c01_dico_forcing_golden_tables() {
    let start = Instant::now();
    let inst = parse_instance(E1_SSG).unwrap();
    let GraphForm::DiCo(x) = &inst.graph else {
        panic!("ACCEPTANCE C1 FAIL: expected a dico instance")
    };
    let solve = solve_ssg_cograph(x, &inst.sizes, inst.capacity);
    let flat = x.flatten();
    let labels = node_labels(&flat);
    let expected: [(&str, [u8; 8]); 7] = [
        ("v1", [1, 1, 0, 0, 0, 0, 0, 0]),
        ("v2", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v3", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v4", [1, 0, 0, 1, 0, 0, 0, 0]),
        ("(v1 + v3)", [1, 1, 1, 1, 0, 0, 0, 0]),
        ("(v2 * v4)", [1, 0, 0, 0, 0, 1, 0, 0]),
        ("((v1 + v3) -> (v2 * v4))", [1, 0, 0, 0, 0, 1, 1, 1]),
    ];
    for (label, row) in expected {
        let i = node_index(&labels, label, "ACCEPTANCE C1");
        assert_eq!(
            row_bits(&solve.tables[i], 7),
            row,
            "ACCEPTANCE C1 FAIL: F row of {label}"
        );
    }
    assert_eq!(solve.opt, 7, "ACCEPTANCE C1 FAIL: opt");
    assert_eq!(solve.solution, vec![2, 3, 4], "ACCEPTANCE C1 FAIL: solution");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "ACCEPTANCE C1 FAIL: took {elapsed:?}"
    );
    println!("ACCEPTANCE C1 dico forcing-rule tables, opt 7, solution {{2,3,4}}: PASS");
}

#[test]
fn c02_dico_weak_golden_tables() {
    let start = Instant::now();
    let inst = parse_instance(E1_SSGW).unwrap();
    let GraphForm::DiCo(x) = &inst.graph else {
        panic!("ACCEPTANCE C2 FAIL: expected a dico instance")
    };
    let solve = solve_ssgw_cograph(x, &inst.sizes, inst.capacity);
    let flat = x.flatten();
    let labels = node_labels(&flat);
    let plain: [(&str, [u8; 8]); 7] = [
        ("v1", [1, 1, 0, 0, 0, 0, 0, 0]),
        ("v2", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v3", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v4", [1, 0, 0, 1, 0, 0, 0, 0]),
        ("(v1 + v3)", [1, 1, 1, 1, 0, 0, 0, 0]),
        ("(v2 * v4)", [1, 0, 1, 1, 0, 1, 0, 0]),
        ("((v1 + v3) -> (v2 * v4))", [1, 1, 1, 1, 1, 1, 1, 1]),
    ];
    for (label, row) in plain {
        let i = node_index(&labels, label, "ACCEPTANCE C2");
        assert_eq!(
            row_bits(&solve.ssp[i], 7),
            row,
            "ACCEPTANCE C2 FAIL: unconstrained row of {label}"
        );
    }
    let tracked: [(&str, &[(u64, u64)]); 7] = [
        ("v1", &[(0, 0), (1, 1)]),
        ("v2", &[(0, 0), (2, 2)]),
        ("v3", &[(0, 0), (2, 2)]),
        ("v4", &[(0, 0), (3, 3)]),
        ("(v1 + v3)", &[(0, 0), (1, 1), (2, 2), (3, 3)]),
        ("(v2 * v4)", &[(0, 0), (5, 0)]),
        (
            "((v1 + v3) -> (v2 * v4))",
            &[
                (0, 0),
                (1, 1),
                (2, 0),
                (2, 2),
                (3, 0),
                (3, 1),
                (3, 3),
                (4, 1),
                (4, 2),
                (5, 0),
                (5, 2),
                (6, 1),
                (7, 2),
            ],
        ),
    ];
    for (label, cells) in tracked {
        let i = node_index(&labels, label, "ACCEPTANCE C2");
        assert_eq!(
            pair_set(&solve.tables[i]),
            cells.iter().copied().collect::<BTreeSet<_>>(),
            "ACCEPTANCE C2 FAIL: tracked cells of {label}"
        );
    }
    assert_eq!(solve.opt, 7, "ACCEPTANCE C2 FAIL: opt");
    let sol = validate_solution(&inst, &solve.solution).expect("ACCEPTANCE C2 FAIL: solution invalid");
    assert_eq!(sol.total, 7, "ACCEPTANCE C2 FAIL: solution total");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "ACCEPTANCE C2 FAIL: took {elapsed:?}"
    );
    println!("ACCEPTANCE C2 dico weak-rule tables, opt 7: PASS");
}

#[test]
fn c03_msp_forcing_golden_tables() {
    let start = Instant::now();
    let inst = parse_instance(E2_SSG).unwrap();
    let GraphForm::Msp(x) = &inst.graph else {
        panic!("ACCEPTANCE C3 FAIL: expected an msp instance")
    };
    let solve = solve_ssg_msp(x, &inst.sizes, inst.capacity);
    let flat = x.flatten();
    let labels = node_labels(&flat);
    let expected: [(&str, [u8; 8]); 11] = [
        ("v1", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v2", [1, 1, 0, 0, 0, 0, 0, 0]),
        ("v3", [1, 0, 0, 0, 1, 0, 0, 0]),
        ("v4", [1, 0, 0, 1, 0, 0, 0, 0]),
        ("v5", [1, 0, 1, 0, 0, 0, 0, 0]),
        ("v6", [1, 0, 0, 1, 0, 0, 0, 0]),
        ("(v1 * v2)", [1, 1, 0, 1, 0, 0, 0, 0]),
        ("(v3 * v4)", [1, 0, 0, 1, 0, 0, 0, 1]),
        ("(v5 * v6)", [1, 0, 0, 1, 0, 1, 0, 0]),
        ("((v1 * v2) | (v3 * v4))", [1, 1, 0, 1, 1, 0, 1, 1]),
        (
            "(((v1 * v2) | (v3 * v4)) * (v5 * v6))",
            [1, 0, 0, 1, 0, 1, 1, 0],
        ),
    ];
    for (label, row) in expected {
        let i = node_index(&labels, label, "ACCEPTANCE C3");
        assert_eq!(
            row_bits(&solve.tables[i], 7),
            row,
            "ACCEPTANCE C3 FAIL: F row of {label}"
        );
    }
    assert_eq!(solve.opt, 6, "ACCEPTANCE C3 FAIL: opt");
    assert_eq!(solve.solution, vec![2, 5, 6], "ACCEPTANCE C3 FAIL: solution");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "ACCEPTANCE C3 FAIL: took {elapsed:?}"
    );
    println!("ACCEPTANCE C3 msp forcing-rule tables, opt 6, solution {{2,5,6}}: PASS");
}

#[test]
fn c04_msp_weak_golden_tables() {
    let start = Instant::now();
    let inst = parse_instance(E2_SSGW).unwrap();
    let GraphForm::Msp(x) = &inst.graph else {
        panic!("ACCEPTANCE C4 FAIL: expected an msp instance")
    };
    let solve = solve_ssgw_msp(x, &inst.sizes, inst.capacity);
    let flat = x.flatten();
    let labels = node_labels(&flat);
    let tracked: [(&str, &[(u64, u64)]); 11] = [
        ("v1", &[(0, 0), (2, 2)]),
        ("v2", &[(0, 0), (1, 1)]),
        ("v3", &[(0, 0), (4, 4)]),
        ("v4", &[(0, 0), (3, 3)]),
        ("v5", &[(0, 0), (2, 2)]),
        ("v6", &[(0, 0), (3, 3)]),
        ("(v1 * v2)", &[(0, 0), (1, 1), (3, 1)]),
        ("(v3 * v4)", &[(0, 0), (3, 3), (7, 3)]),
        ("(v5 * v6)", &[(0, 0), (3, 3), (5, 3)]),
        (
            "((v1 * v2) | (v3 * v4))",
            &[(0, 0), (1, 1), (3, 1), (3, 3), (4, 4), (6, 4), (7, 3)],
        ),
        (
            "(((v1 * v2) | (v3 * v4)) * (v5 * v6))",
            &[
                (0, 0),
                (1, 0),
                (3, 0),
                (7, 0),
                (3, 3),
                (4, 3),
                (5, 3),
                (6, 3),
            ],
        ),
    ];
    for (label, cells) in tracked {
        let i = node_index(&labels, label, "ACCEPTANCE C4");
        assert_eq!(
            pair_set(&solve.tables[i]),
            cells.iter().copied().collect::<BTreeSet<_>>(),
            "ACCEPTANCE C4 FAIL: tracked cells of {label}"
        );
    }
    assert_eq!(solve.opt, 7, "ACCEPTANCE C4 FAIL: opt");
    assert_eq!(solve.solution, vec![3, 4], "ACCEPTANCE C4 FAIL: solution");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "ACCEPTANCE C4 FAIL: took {elapsed:?}"
    );
    println!("ACCEPTANCE C4 msp weak-rule tables, opt 7, solution {{3,4}}: PASS");
}

fn check_ssg_nodes<Op: ExprOp>(
    flat: &Flat<Op>,
    tables: &[BitRow],
    g: &Digraph,
    inst: &Instance,
    ctx: &str,
) {
    let labels = node_labels(flat);
    let sets = leaf_sets(flat);
    for i in 0..flat.nodes.len() {
        let (sub, sub_sizes) = induced(g, &sets[i], &inst.sizes);
        let oracle = brute_force(&sub, &sub_sizes, inst.capacity, ProblemKind::Ssg, Tracked::None);
        let got: BTreeSet<u64> = tables[i].iter_ones().collect();
        assert_eq!(
            got, oracle.sums,
            "{ctx} FAIL: F mismatch at node {}",
            labels[i]
        );
    }
}

#[test]
fn c05_forcing_solver_matches_oracle_at_every_node() {
    let start = Instant::now();
    let mut meta = ChaCha8Rng::seed_from_u64(0xacce5);
    for class in [GenClass::Dico, GenClass::Msp] {
        for round in 0..500 {
            let n = meta.gen_range(1..=10);
            let c = meta.gen_range(1..=25u64);
            let max_size = meta.gen_range(1..=8u64).min(c);
            let seed: u64 = meta.gen();
            let inst = gen_instance(class, n, c, max_size, seed, ProblemKind::Ssg);
            let g = inst.digraph();
            let ctx = format!("ACCEPTANCE C5 (class {class:?}, round {round}, seed {seed})");
            match &inst.graph {
                GraphForm::DiCo(x) => {
                    let solve = solve_ssg_cograph(x, &inst.sizes, c);
                    check_ssg_nodes(&x.flatten(), &solve.tables, &g, &inst, &ctx);
                }
                GraphForm::Msp(x) => {
                    let solve = solve_ssg_msp(x, &inst.sizes, c);
                    check_ssg_nodes(&x.flatten(), &solve.tables, &g, &inst, &ctx);
                }
                GraphForm::Edges(_) => unreachable!("gen emits expressions"),
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "ACCEPTANCE C5 FAIL: took {elapsed:?}"
    );
    println!(
        "ACCEPTANCE C5 forcing-rule tables equal oracle spectra at every node (500 dico + 500 msp, {elapsed:?}): PASS"
    );
}

fn check_ssgw_nodes<Op: ExprOp>(
    flat: &Flat<Op>,
    tables: &[Vec<BitRow>],
    g: &Digraph,
    inst: &Instance,
    tracked: Tracked,
    ctx: &str,
) {
    let labels = node_labels(flat);
    let sets = leaf_sets(flat);
    for i in 0..flat.nodes.len() {
        let (sub, sub_sizes) = induced(g, &sets[i], &inst.sizes);
        let oracle = brute_force(&sub, &sub_sizes, inst.capacity, ProblemKind::Ssgw, tracked);
        assert_eq!(
            pair_set(&tables[i]),
            oracle.pairs,
            "{ctx} FAIL: H mismatch at node {}",
            labels[i]
        );
    }
}

#[test]
fn c06_weak_solver_matches_oracle_at_every_node() {
    let start = Instant::now();
    let mut meta = ChaCha8Rng::seed_from_u64(0xacce6);
    for class in [GenClass::Dico, GenClass::Msp] {
        for round in 0..300 {
            let n = meta.gen_range(1..=9);
            let c = meta.gen_range(1..=20u64);
            let max_size = meta.gen_range(1..=6u64).min(c);
            let seed: u64 = meta.gen();
            let inst = gen_instance(class, n, c, max_size, seed, ProblemKind::Ssgw);
            let g = inst.digraph();
            let ctx = format!("ACCEPTANCE C6 (class {class:?}, round {round}, seed {seed})");
            match &inst.graph {
                GraphForm::DiCo(x) => {
                    let solve = solve_ssgw_cograph(x, &inst.sizes, c);
                    check_ssgw_nodes(&x.flatten(), &solve.tables, &g, &inst, Tracked::Sources, &ctx);
                }
                GraphForm::Msp(x) => {
                    let solve = solve_ssgw_msp(x, &inst.sizes, c);
                    check_ssgw_nodes(&x.flatten(), &solve.tables, &g, &inst, Tracked::Sinks, &ctx);
                }
                GraphForm::Edges(_) => unreachable!("gen emits expressions"),
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "ACCEPTANCE C6 FAIL: took {elapsed:?}"
    );
    println!(
        "ACCEPTANCE C6 weak-rule tables equal oracle pair spectra at every node (300 dico + 300 msp, {elapsed:?}): PASS"
    );
}

#[test]
fn c07_general_solver_and_reduction_invariance() {
    let mut meta = ChaCha8Rng::seed_from_u64(0xacce7);
    for round in 0..200 {
        let n = meta.gen_range(1..=10usize);
        let mut arcs = Vec::new();
        for u in 1..=n as u32 {
            for v in 1..=n as u32 {
                if u != v && meta.gen_bool(0.25) {
                    arcs.push((u, v));
                }
            }
        }
        let g = Digraph::from_arcs(n, &arcs).unwrap();
        let sizes = SizeMap::new((0..n).map(|_| meta.gen_range(1..=8u64)).collect()).unwrap();
        let c = meta.gen_range(1..=25u64);
        let oracle = brute_force(&g, &sizes, c, ProblemKind::Ssg, Tracked::None);
        let (opt, chosen) = solve_ssg_general(&g, &sizes, c)
            .unwrap_or_else(|e| panic!("ACCEPTANCE C7 FAIL: round {round}: {e}"));
        assert_eq!(opt, oracle.opt, "ACCEPTANCE C7 FAIL: opt, round {round}");
        let total: u64 = chosen.iter().map(|&id| sizes.get(id)).sum();
        assert_eq!(total, opt, "ACCEPTANCE C7 FAIL: solution total, round {round}");
        assert!(
            g.check_digraph_constraint(&chosen),
            "ACCEPTANCE C7 FAIL: infeasible solution, round {round}"
        );
    }
    for round in 0..200 {
        let n = meta.gen_range(1..=10usize);
        let mut arcs = Vec::new();
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                if meta.gen_bool(0.3) {
                    arcs.push((u, v));
                }
            }
        }
        let g = Digraph::from_arcs(n, &arcs).unwrap();
        let tr = g.transitive_reduction().unwrap();
        let sizes = SizeMap::new((0..n).map(|_| meta.gen_range(1..=8u64)).collect()).unwrap();
        let c = meta.gen_range(1..=25u64);
        assert_eq!(
            feasible_sets(&g, &sizes, c, ProblemKind::Ssg),
            feasible_sets(&tr, &sizes, c, ProblemKind::Ssg),
            "ACCEPTANCE C7 FAIL: forcing-rule family changed under reduction, round {round}"
        );
    }
    println!(
        "ACCEPTANCE C7 general solver matches oracle (200 digraphs); reduction keeps forcing-rule families (200 dags): PASS"
    );
}

#[test]
fn c08_weak_rule_not_preserved_by_reductions() {
    // Contracting components: the 4-cycle fixture.
    let inst = condensation_fixture();
    let g = inst.digraph();
    assert!(
        validate_solution(&inst, &[4]).is_ok(),
        "ACCEPTANCE C8 FAIL: {{4}} must be weak-feasible on the cycle fixture"
    );
    let g_sums = brute_force(&g, &inst.sizes, inst.capacity, ProblemKind::Ssgw, Tracked::None).sums;
    let con = g.condense(&inst.sizes);
    let con_sums = brute_force(
        &con.dag,
        &con.sizes,
        inst.capacity,
        ProblemKind::Ssgw,
        Tracked::None,
    )
    .sums;
    assert_eq!(
        g_sums,
        BTreeSet::from([0, 1, 2]),
        "ACCEPTANCE C8 FAIL: weak spectrum of the cycle fixture"
    );
    assert_eq!(
        con_sums,
        BTreeSet::from([0, 1]),
        "ACCEPTANCE C8 FAIL: weak spectrum of its condensation"
    );
    let images: Vec<Vec<ItemId>> = feasible_sets(&con.dag, &con.sizes, inst.capacity, ProblemKind::Ssgw)
        .into_iter()
        .map(|comps| {
            let mut items: Vec<ItemId> = comps
                .into_iter()
                .flat_map(|k| con.members[k as usize - 1].iter().copied())
                .collect();
            items.sort_unstable();
            items
        })
        .collect();
    assert!(
        !images.contains(&vec![4]),
        "ACCEPTANCE C8 FAIL: no condensation-feasible set may map back to {{4}}"
    );
    // The forcing rule survives the contraction on the same fixture.
    let g_strong = brute_force(&g, &inst.sizes, inst.capacity, ProblemKind::Ssg, Tracked::None).sums;
    let con_strong = brute_force(
        &con.dag,
        &con.sizes,
        inst.capacity,
        ProblemKind::Ssg,
        Tracked::None,
    )
    .sums;
    assert_eq!(g_strong, con_strong, "ACCEPTANCE C8 FAIL: forcing-rule spectrum must survive contraction");

    // Dropping shortcut arcs: the chord fixture.
    let inst = reduction_fixture();
    let g = inst.digraph();
    let tr = g.transitive_reduction().unwrap();
    assert!(
        validate_solution(&inst, &[2]).is_ok(),
        "ACCEPTANCE C8 FAIL: {{2}} must be weak-feasible with the chord present"
    );
    assert_eq!(
        tr.weak_forcing_witness(&[2]),
        Some(3),
        "ACCEPTANCE C8 FAIL: without the chord, {{2}} must force v3"
    );
    let pairs_g = brute_force(&g, &inst.sizes, inst.capacity, ProblemKind::Ssgw, Tracked::Sinks).pairs;
    let pairs_tr = brute_force(&tr, &inst.sizes, inst.capacity, ProblemKind::Ssgw, Tracked::Sinks).pairs;
    assert!(
        pairs_g.contains(&(1, 0)) && !pairs_tr.contains(&(1, 0)),
        "ACCEPTANCE C8 FAIL: sink-tracked pair (1,0) must separate the two spectra"
    );
    assert_ne!(pairs_g, pairs_tr, "ACCEPTANCE C8 FAIL: pair spectra must differ");
    assert_ne!(
        feasible_sets(&g, &inst.sizes, inst.capacity, ProblemKind::Ssgw),
        feasible_sets(&tr, &inst.sizes, inst.capacity, ProblemKind::Ssgw),
        "ACCEPTANCE C8 FAIL: weak-feasible families must differ"
    );
    println!(
        "ACCEPTANCE C8 weak-rule spectra change under contraction and under shortcut removal: PASS"
    );
}

#[test]
fn c09_decompose_round_trip() {
    let mut meta = ChaCha8Rng::seed_from_u64(0xacce9);
    for round in 0..300 {
        let n = meta.gen_range(1..=12);
        let seed: u64 = meta.gen();
        let inst = gen_instance(GenClass::Msp, n, 10, 5, seed, ProblemKind::Ssg);
        let g = inst.digraph();
        let expr = decompose_msp(&g).unwrap_or_else(|e| {
            panic!("ACCEPTANCE C9 FAIL: round {round}, seed {seed}: {e}")
        });
        let back = eval_msp(&expr);
        assert_eq!(back.n(), g.n(), "ACCEPTANCE C9 FAIL: vertex count, round {round}");
        assert_eq!(
            back.arcs(),
            g.arcs(),
            "ACCEPTANCE C9 FAIL: arc set, round {round}, seed {seed}"
        );
    }
    println!("ACCEPTANCE C9 composition of eval and decompose is the identity on 300 msp graphs: PASS");
}

#[test]
fn c10_scaling_envelopes() {
    let inst = gen_instance(GenClass::Dico, 2000, 200, 8, 0xacce10, ProblemKind::Ssg);
    let GraphForm::DiCo(x) = &inst.graph else {
        unreachable!("gen emits a dico expression")
    };
    let start = Instant::now();
    let solve = solve_ssg_cograph(x, &inst.sizes, inst.capacity);
    let ssg_time = start.elapsed();
    let total: u64 = solve.solution.iter().map(|&id| inst.sizes.get(id)).sum();
    assert_eq!(total, solve.opt, "ACCEPTANCE C10 FAIL: forcing-rule solution total");
    assert!(
        ssg_time < Duration::from_secs(5),
        "ACCEPTANCE C10 FAIL: forcing-rule solve took {ssg_time:?} (n=2000, c=200)"
    );

    let inst = gen_instance(GenClass::Dico, 200, 60, 6, 0xacce11, ProblemKind::Ssgw);
    let GraphForm::DiCo(x) = &inst.graph else {
        unreachable!("gen emits a dico expression")
    };
    let start = Instant::now();
    let solve = solve_ssgw_cograph(x, &inst.sizes, inst.capacity);
    let weak_time = start.elapsed();
    let total: u64 = solve.solution.iter().map(|&id| inst.sizes.get(id)).sum();
    assert_eq!(total, solve.opt, "ACCEPTANCE C10 FAIL: weak-rule solution total");
    assert!(
        weak_time < Duration::from_secs(30),
        "ACCEPTANCE C10 FAIL: weak-rule solve took {weak_time:?} (n=200, c=60)"
    );
    println!(
        "ACCEPTANCE C10 scaling envelopes (forcing n=2000 c=200 in {ssg_time:?}, weak n=200 c=60 in {weak_time:?}): PASS"
    );
}
