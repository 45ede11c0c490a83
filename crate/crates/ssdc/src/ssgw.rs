//! Solvers for the weak forcing rule: a vertex whose nonempty
//! in-neighborhood is fully chosen must be chosen too.
//!
//! Feasibility of a part now depends on whether the other side of an
//! operator is fully chosen, so each node keeps one reachable-sum row per
//! tracked side sum: source sums on directed co-graphs (order and series
//! arcs enter from the left), sink sums on series-parallel digraphs (series
//! arcs leave the sinks). Tracking lets a parent express "contains every
//! source/sink" as "tracked sum equals the full side sum", since sizes are
//! positive. A plain subset-sum row per node covers the parts that become
//! unconstrained when the gating side is not fully chosen.

use crate::bits::BitRow;
use crate::expr::{aggregates, DiCoExpr, DiCoOp, ExprOp, Flat, FlatNode, MspExpr, MspOp, NodeAggregates};
use crate::instance::{ItemId, SizeMap};
use crate::ssp::subset_sum_tables;

/// How one operator's arcs gate the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OpKind {
    /// No arcs between the sides; sums and tracked sums add.
    Sumset,
    /// Arcs from every left vertex to every right vertex: the right side
    /// is unconstrained until the left is fully chosen, then it must cover
    /// its own sources.
    LeftGatesRight,
    /// Arcs both ways: each side is unconstrained below its full set, and
    /// a fully chosen side forces the other to cover its sources.
    MutualGates,
    /// Arcs from the left sinks to the right sources: the right side keeps
    /// its own rule until every left sink is chosen, then all of it is
    /// forced.
    SinksGateSources,
}

fn dico_kind(op: DiCoOp) -> OpKind {
    match op {
        DiCoOp::Union => OpKind::Sumset,
        DiCoOp::Order => OpKind::LeftGatesRight,
        DiCoOp::Series => OpKind::MutualGates,
    }
}

fn msp_kind(op: MspOp) -> OpKind {
    match op {
        MspOp::Parallel => OpKind::Sumset,
        MspOp::Series => OpKind::SinksGateSources,
    }
}

/// Tables and solution of one weak-rule solve.
///
/// `tables[i][t]` marks the totals of feasible sets at postorder node `i`
/// whose tracked side sum is `t`; `ssp[i]` marks all subset sums of the
/// node's items. The solution realizes `opt` with tracked sum
/// `opt_tracked`, the smallest one that attains `opt` at the root.
#[derive(Debug, Clone)]
pub struct SsgwSolve {
    pub tables: Vec<Vec<BitRow>>,
    pub ssp: Vec<BitRow>,
    pub aggs: Vec<NodeAggregates>,
    pub opt: u64,
    pub opt_tracked: u64,
    pub solution: Vec<ItemId>,
}

fn fill_tables<Op: Copy>(
    flat: &Flat<Op>,
    aggs: &[NodeAggregates],
    ssp: &[BitRow],
    capacity: u64,
    kind: impl Fn(Op) -> OpKind,
    sizes: &SizeMap,
) -> Vec<Vec<BitRow>> {
    let mut tables: Vec<Vec<BitRow>> = Vec::with_capacity(flat.nodes.len());
    for (i, node) in flat.nodes.iter().enumerate() {
        let width = capacity.min(aggs[i].size_sum);
        let mut rows: Vec<BitRow> =
            (0..=width).map(|_| BitRow::zeros(width)).collect();
        match *node {
            FlatNode::Leaf(id) => {
                rows[0].set(0);
                let s = sizes.get(id);
                if s <= width {
                    rows[s as usize].set(s);
                }
            }
            FlatNode::Node(op, l, r) => {
                let (hl, hr) = (&tables[l], &tables[r]);
                match kind(op) {
                    OpKind::Sumset => {
                        for (t1, row1) in hl.iter().enumerate() {
                            if t1 >= rows.len() {
                                break;
                            }
                            for (t2, row2) in hr.iter().enumerate() {
                                let t = t1 + t2;
                                if t >= rows.len() {
                                    break;
                                }
                                for s1 in row1.iter_ones() {
                                    rows[t].or_shifted(row2, s1);
                                }
                            }
                        }
                    }
                    OpKind::LeftGatesRight => {
                        let s_l = aggs[l].size_sum;
                        // left not fully chosen: the right side is a free
                        // item pool
                        for (t, row1) in hl.iter().enumerate() {
                            if t >= rows.len() {
                                break;
                            }
                            for s1 in row1.iter_ones().take_while(|&s1| s1 < s_l) {
                                rows[t].or_shifted(&ssp[r], s1);
                            }
                        }
                        // all of the left: the right must cover its sources
                        if s_l <= capacity {
                            let o1 = aggs[l].source_sum as usize;
                            let o2 = aggs[r].source_sum as usize;
                            if o1 < rows.len() && o2 < hr.len() {
                                rows[o1].or_shifted(&hr[o2], s_l);
                            }
                        }
                    }
                    OpKind::MutualGates => {
                        let (s_l, s_r) = (aggs[l].size_sum, aggs[r].size_sum);
                        let (o1, o2) = (
                            aggs[l].source_sum as usize,
                            aggs[r].source_sum as usize,
                        );
                        // both sides below full: free item pools
                        for s1 in ssp[l].iter_ones().take_while(|&s1| s1 < s_l) {
                            rows[0].or_shifted_below(&ssp[r], s1, s_r);
                        }
                        // one full side forces source cover on the other
                        if s_l <= capacity && o2 < hr.len() {
                            rows[0].or_shifted_below(&hr[o2], s_l, s_r);
                        }
                        if s_r <= capacity && o1 < hl.len() {
                            rows[0].or_shifted_below(&hl[o1], s_r, s_l);
                        }
                        if aggs[i].size_sum <= width {
                            rows[0].set(aggs[i].size_sum);
                        }
                    }
                    OpKind::SinksGateSources => {
                        let i1 = aggs[l].sink_sum as usize;
                        let i2 = aggs[r].sink_sum as usize;
                        // left sinks not all chosen: the right side keeps
                        // its own rule untouched
                        let mut low = BitRow::zeros(hl[0].len() - 1);
                        for row1 in hl.iter().take(i1) {
                            low.or_row(row1);
                        }
                        for s1 in low.iter_ones() {
                            for (t, row2) in hr.iter().enumerate() {
                                if t >= rows.len() {
                                    break;
                                }
                                rows[t].or_shifted(row2, s1);
                            }
                        }
                        // every left sink chosen: all of the right is forced
                        let s_r = aggs[r].size_sum;
                        if s_r <= capacity && i1 < hl.len() && i2 < rows.len() {
                            rows[i2].or_shifted(&hl[i1], s_r);
                        }
                    }
                }
            }
        }
        tables.push(rows);
    }
    tables
}

/// Reconstruct a plain subset of the node's items summing to `target`.
fn ssp_trace<Op: Copy>(
    flat: &Flat<Op>,
    ssp: &[BitRow],
    node: usize,
    target: u64,
    chosen: &mut Vec<ItemId>,
) {
    let mut stack = vec![(node, target)];
    while let Some((i, s)) = stack.pop() {
        debug_assert!(ssp[i].get(s), "subset sum {s} not reachable");
        match flat.nodes[i] {
            FlatNode::Leaf(id) => {
                if s > 0 {
                    chosen.push(id);
                }
            }
            FlatNode::Node(_, l, r) => {
                let s1 = ssp[l]
                    .iter_ones()
                    .take_while(|&s1| s1 <= s)
                    .find(|&s1| ssp[r].get(s - s1))
                    .expect("a split exists");
                stack.push((l, s1));
                stack.push((r, s - s1));
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn trace<Op: Copy>(
    flat: &Flat<Op>,
    aggs: &[NodeAggregates],
    tables: &[Vec<BitRow>],
    ssp: &[BitRow],
    kind: impl Fn(Op) -> OpKind,
    sizes: &SizeMap,
    target: u64,
    target_tracked: u64,
) -> Vec<ItemId> {
    let root = flat.nodes.len() - 1;
    assert!(
        tables[root][target_tracked as usize].get(target),
        "target pair is not feasible"
    );
    let mut chosen = Vec::new();
    let mut stack = vec![(root, target, target_tracked)];
    while let Some((i, s, t)) = stack.pop() {
        let (op, l, r) = match flat.nodes[i] {
            FlatNode::Leaf(id) => {
                debug_assert!(
                    (s == 0 && t == 0) || (s == sizes.get(id) && t == s),
                    "leaf state out of range"
                );
                if s > 0 {
                    chosen.push(id);
                }
                continue;
            }
            FlatNode::Node(op, l, r) => (op, l, r),
        };
        let (hl, hr) = (&tables[l], &tables[r]);
        match kind(op) {
            OpKind::Sumset => {
                let mut found = false;
                'split: for (t1, row) in hl.iter().enumerate().take(t as usize + 1) {
                    let t2 = t as usize - t1;
                    if t2 >= hr.len() {
                        continue;
                    }
                    for s1 in row.iter_ones().take_while(|&s1| s1 <= s) {
                        if hr[t2].get(s - s1) {
                            stack.push((l, s1, t1 as u64));
                            stack.push((r, s - s1, t2 as u64));
                            found = true;
                            break 'split;
                        }
                    }
                }
                assert!(found, "no split for a recorded sum");
            }
            OpKind::LeftGatesRight => {
                let s_l = aggs[l].size_sum;
                let mut found = false;
                if (t as usize) < hl.len() {
                    for s1 in hl[t as usize]
                        .iter_ones()
                        .take_while(|&s1| s1 < s_l && s1 <= s)
                    {
                        if ssp[r].get(s - s1) {
                            stack.push((l, s1, t));
                            let mut pool = Vec::new();
                            ssp_trace(flat, ssp, r, s - s1, &mut pool);
                            chosen.append(&mut pool);
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    let (o1, o2) = (aggs[l].source_sum, aggs[r].source_sum);
                    assert!(
                        t == o1 && s >= s_l && (o2 as usize) < hr.len()
                            && hr[o2 as usize].get(s - s_l),
                        "no order split for a recorded sum"
                    );
                    stack.push((l, s_l, o1));
                    stack.push((r, s - s_l, o2));
                }
            }
            OpKind::MutualGates => {
                debug_assert_eq!(t, 0);
                let (s_l, s_r) = (aggs[l].size_sum, aggs[r].size_sum);
                let (o1, o2) = (aggs[l].source_sum, aggs[r].source_sum);
                let free_split = ssp[l]
                    .iter_ones()
                    .take_while(|&s1| s1 < s_l && s1 <= s)
                    .find(|&s1| s - s1 < s_r && ssp[r].get(s - s1));
                if let Some(s1) = free_split {
                    ssp_trace(flat, ssp, l, s1, &mut chosen);
                    ssp_trace(flat, ssp, r, s - s1, &mut chosen);
                } else if s >= s_l
                    && s - s_l < s_r
                    && (o2 as usize) < hr.len()
                    && hr[o2 as usize].get(s - s_l)
                {
                    stack.push((l, s_l, o1));
                    stack.push((r, s - s_l, o2));
                } else if s >= s_r
                    && s - s_r < s_l
                    && (o1 as usize) < hl.len()
                    && hl[o1 as usize].get(s - s_r)
                {
                    stack.push((l, s - s_r, o1));
                    stack.push((r, s_r, o2));
                } else {
                    assert_eq!(s, aggs[i].size_sum, "no series split for a recorded sum");
                    stack.push((l, s_l, o1));
                    stack.push((r, s_r, o2));
                }
            }
            OpKind::SinksGateSources => {
                let (i1, i2) = (aggs[l].sink_sum, aggs[r].sink_sum);
                let mut found = false;
                'outer: for (t1, row) in hl.iter().enumerate().take(i1 as usize) {
                    for s1 in row.iter_ones().take_while(|&s1| s1 <= s) {
                        if (t as usize) < hr.len() && hr[t as usize].get(s - s1) {
                            stack.push((l, s1, t1 as u64));
                            stack.push((r, s - s1, t));
                            found = true;
                            break 'outer;
                        }
                    }
                }
                if !found {
                    let s_r = aggs[r].size_sum;
                    assert!(
                        t == i2 && s >= s_r && (i1 as usize) < hl.len()
                            && hl[i1 as usize].get(s - s_r),
                        "no series split for a recorded sum"
                    );
                    stack.push((l, s - s_r, i1));
                    stack.push((r, s_r, i2));
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

fn solve_flat<Op: ExprOp>(
    flat: &Flat<Op>,
    capacity: u64,
    sizes: &SizeMap,
    kind: impl Fn(Op) -> OpKind + Copy,
) -> SsgwSolve {
    let aggs = aggregates(flat, sizes);
    let ssp = subset_sum_tables(flat, &aggs, capacity, sizes);
    let tables = fill_tables(flat, &aggs, &ssp, capacity, kind, sizes);
    let root = tables.last().unwrap();
    let opt = root
        .iter()
        .filter_map(|row| row.max_one())
        .max()
        .expect("the empty set is always feasible");
    let opt_tracked = root
        .iter()
        .position(|row| row.get(opt))
        .expect("some row attains the optimum") as u64;
    let solution = trace(
        flat, &aggs, &tables, &ssp, kind, sizes, opt, opt_tracked,
    );
    SsgwSolve {
        tables,
        ssp,
        aggs,
        opt,
        opt_tracked,
        solution,
    }
}

pub fn solve_ssgw_cograph(x: &DiCoExpr, sizes: &SizeMap, capacity: u64) -> SsgwSolve {
    solve_flat(&x.flatten(), capacity, sizes, dico_kind)
}

pub fn solve_ssgw_msp(x: &MspExpr, sizes: &SizeMap, capacity: u64) -> SsgwSolve {
    solve_flat(&x.flatten(), capacity, sizes, msp_kind)
}

/// A set realizing the given (total, tracked total) root entry, if that
/// entry is feasible.
pub fn trace_ssgw_cograph(
    x: &DiCoExpr,
    sizes: &SizeMap,
    capacity: u64,
    total: u64,
    tracked: u64,
) -> Option<Vec<ItemId>> {
    let flat = x.flatten();
    let aggs = aggregates(&flat, sizes);
    let ssp = subset_sum_tables(&flat, &aggs, capacity, sizes);
    let tables = fill_tables(&flat, &aggs, &ssp, capacity, dico_kind, sizes);
    let row = tables.last().unwrap().get(tracked as usize)?;
    if !row.get(total) {
        return None;
    }
    Some(trace(
        &flat, &aggs, &tables, &ssp, dico_kind, sizes, total, tracked,
    ))
}

pub fn trace_ssgw_msp(
    x: &MspExpr,
    sizes: &SizeMap,
    capacity: u64,
    total: u64,
    tracked: u64,
) -> Option<Vec<ItemId>> {
    let flat = x.flatten();
    let aggs = aggregates(&flat, sizes);
    let ssp = subset_sum_tables(&flat, &aggs, capacity, sizes);
    let tables = fill_tables(&flat, &aggs, &ssp, capacity, msp_kind, sizes);
    let row = tables.last().unwrap().get(tracked as usize)?;
    if !row.get(total) {
        return None;
    }
    Some(trace(
        &flat, &aggs, &tables, &ssp, msp_kind, sizes, total, tracked,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_dico, parse_msp};

    fn pairs(rows: &[BitRow]) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (t, row) in rows.iter().enumerate() {
            for s in row.iter_ones() {
                out.push((s, t as u64));
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn cograph_subset_sum_rows() {
        let x = parse_dico("((v1 + v3) -> (v2 * v4))").unwrap();
        let sizes = SizeMap::new(vec![1, 2, 2, 3]).unwrap();
        let solve = solve_ssgw_cograph(&x, &sizes, 7);
        // postorder: v1, v3, union, v2, v4, series, root
        let expected: Vec<Vec<u64>> = vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 1, 2, 3],
            vec![0, 2],
            vec![0, 3],
            vec![0, 2, 3, 5],
            vec![0, 1, 2, 3, 4, 5, 6, 7],
        ];
        let got: Vec<Vec<u64>> = solve.ssp.iter().map(|r| r.iter_ones().collect()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn cograph_tracked_tables_per_node() {
        let x = parse_dico("((v1 + v3) -> (v2 * v4))").unwrap();
        let sizes = SizeMap::new(vec![1, 2, 2, 3]).unwrap();
        let solve = solve_ssgw_cograph(&x, &sizes, 7);
        let got: Vec<Vec<(u64, u64)>> = solve.tables.iter().map(|rows| pairs(rows)).collect();
        let expected: Vec<Vec<(u64, u64)>> = vec![
            vec![(0, 0), (1, 1)],
            vec![(0, 0), (2, 2)],
            vec![(0, 0), (1, 1), (2, 2), (3, 3)],
            vec![(0, 0), (2, 2)],
            vec![(0, 0), (3, 3)],
            vec![(0, 0), (5, 0)],
            vec![
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
        ];
        assert_eq!(got, expected);
        assert_eq!(solve.opt, 7);
        assert_eq!(solve.opt_tracked, 2);
        assert_eq!(solve.solution, vec![2, 3, 4]);
    }

    #[test]
    fn cograph_secondary_trace() {
        let x = parse_dico("((v1 + v3) -> (v2 * v4))").unwrap();
        let sizes = SizeMap::new(vec![1, 2, 2, 3]).unwrap();
        assert_eq!(trace_ssgw_cograph(&x, &sizes, 7, 3, 3), Some(vec![1, 3]));
        assert_eq!(trace_ssgw_cograph(&x, &sizes, 7, 5, 0), Some(vec![2, 4]));
        assert_eq!(trace_ssgw_cograph(&x, &sizes, 7, 6, 0), None);
    }

    #[test]
    fn msp_tracked_tables_per_node() {
        let x = parse_msp("(((v1 * v2) | (v3 * v4)) * (v5 * v6))").unwrap();
        let sizes = SizeMap::new(vec![2, 1, 4, 3, 2, 3]).unwrap();
        let solve = solve_ssgw_msp(&x, &sizes, 7);
        let got: Vec<Vec<(u64, u64)>> = solve.tables.iter().map(|rows| pairs(rows)).collect();
        let expected: Vec<Vec<(u64, u64)>> = vec![
            vec![(0, 0), (2, 2)],
            vec![(0, 0), (1, 1)],
            vec![(0, 0), (1, 1), (3, 1)],
            vec![(0, 0), (4, 4)],
            vec![(0, 0), (3, 3)],
            vec![(0, 0), (3, 3), (7, 3)],
            vec![
                (0, 0),
                (1, 1),
                (3, 1),
                (3, 3),
                (4, 4),
                (6, 4),
                (7, 3),
            ],
            vec![(0, 0), (2, 2)],
            vec![(0, 0), (3, 3)],
            vec![(0, 0), (3, 3), (5, 3)],
            vec![
                (0, 0),
                (1, 0),
                (3, 0),
                (3, 3),
                (4, 3),
                (5, 3),
                (6, 3),
                (7, 0),
            ],
        ];
        assert_eq!(got, expected);
        assert_eq!(solve.opt, 7);
        assert_eq!(solve.opt_tracked, 0);
        assert_eq!(solve.solution, vec![3, 4]);
    }

    #[test]
    fn weak_solutions_validate() {
        let x = parse_dico("((v1 + v3) -> (v2 * v4))").unwrap();
        let sizes = SizeMap::new(vec![1, 2, 2, 3]).unwrap();
        let g = crate::expr::eval_dico(&x);
        for (s, t) in [(7, 2), (3, 3), (5, 0), (4, 1)] {
            let set = trace_ssgw_cograph(&x, &sizes, 7, s, t).unwrap();
            assert!(g.check_weak_digraph_constraint(&set), "({s},{t}) -> {set:?}");
            assert_eq!(sizes.sum(set.iter().copied()), s);
        }
    }
}
