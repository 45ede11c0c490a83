//! Solvers for the forcing rule: choosing any in-neighbor of a vertex
//! forces that vertex into the solution.
//!
//! Feasible sets are exactly the successor-closed sets, so one reachable-sum
//! row per expression node suffices. Explicit digraphs go through
//! decomposition when possible and through contraction of strongly
//! connected components otherwise.

use crate::bits::{convolve_or_into, BitRow};
use crate::digraph::{Digraph, Vertex};
use crate::expr::{
    aggregates, decompose_msp, DecomposeError, DiCoExpr, DiCoOp, ExprOp, Flat, FlatNode, MspExpr,
    MspOp, NodeAggregates,
};
use crate::instance::{ItemId, SizeMap};
use thiserror::Error;

/// How one expression operator combines child solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OpKind {
    /// Any feasible pair combines freely (disjoint union, parallel).
    Sumset,
    /// Either the right part alone, or anything from the left together
    /// with all of the right (order, series on series-parallel digraphs).
    AppendAll,
    /// All arcs in both directions: the empty set or everything.
    AllOrNothing,
}

fn dico_kind(op: DiCoOp) -> OpKind {
    match op {
        DiCoOp::Union => OpKind::Sumset,
        DiCoOp::Order => OpKind::AppendAll,
        DiCoOp::Series => OpKind::AllOrNothing,
    }
}

fn msp_kind(op: MspOp) -> OpKind {
    match op {
        MspOp::Parallel => OpKind::Sumset,
        MspOp::Series => OpKind::AppendAll,
    }
}

/// Tables and solution of one solve: `tables[i]` marks the feasible totals
/// of the sub-digraph at postorder node `i`, up to `min(c, size of node)`.
#[derive(Debug, Clone)]
pub struct SsgSolve {
    pub tables: Vec<BitRow>,
    pub aggs: Vec<NodeAggregates>,
    pub opt: u64,
    pub solution: Vec<ItemId>,
}

fn fill_tables<Op: Copy>(
    flat: &Flat<Op>,
    aggs: &[NodeAggregates],
    capacity: u64,
    kind: impl Fn(Op) -> OpKind,
    sizes: &SizeMap,
) -> Vec<BitRow> {
    let mut tables: Vec<BitRow> = Vec::with_capacity(flat.nodes.len());
    for (i, node) in flat.nodes.iter().enumerate() {
        let width = capacity.min(aggs[i].size_sum);
        let mut row = BitRow::zeros(width);
        match *node {
            FlatNode::Leaf(id) => {
                row.set(0);
                let s = sizes.get(id);
                if s <= width {
                    row.set(s);
                }
            }
            FlatNode::Node(op, l, r) => match kind(op) {
                OpKind::Sumset => convolve_or_into(&tables[l], &tables[r], &mut row),
                OpKind::AppendAll => {
                    row.or_row(&tables[r]);
                    row.or_shifted(&tables[l], aggs[r].size_sum);
                }
                OpKind::AllOrNothing => {
                    row.set(0);
                    let total = aggs[i].size_sum;
                    if total <= width {
                        row.set(total);
                    }
                }
            },
        }
        tables.push(row);
    }
    tables
}

fn trace<Op: Copy>(
    flat: &Flat<Op>,
    aggs: &[NodeAggregates],
    tables: &[BitRow],
    kind: impl Fn(Op) -> OpKind,
    sizes: &SizeMap,
    target: u64,
) -> Vec<ItemId> {
    let root = flat.nodes.len() - 1;
    assert!(tables[root].get(target), "target sum is not feasible");
    let mut chosen = Vec::new();
    let mut stack = vec![(root, target)];
    while let Some((i, s)) = stack.pop() {
        match flat.nodes[i] {
            FlatNode::Leaf(id) => {
                debug_assert!(s == 0 || s == sizes.get(id));
                if s > 0 {
                    chosen.push(id);
                }
            }
            FlatNode::Node(op, l, r) => match kind(op) {
                OpKind::Sumset => {
                    let s1 = tables[l]
                        .iter_ones()
                        .take_while(|&s1| s1 <= s)
                        .find(|&s1| tables[r].get(s - s1))
                        .expect("a feasible split exists");
                    stack.push((l, s1));
                    stack.push((r, s - s1));
                }
                OpKind::AppendAll => {
                    if tables[r].get(s) {
                        stack.push((r, s));
                    } else {
                        let s_right = aggs[r].size_sum;
                        debug_assert!(s >= s_right && tables[l].get(s - s_right));
                        stack.push((l, s - s_right));
                        stack.push((r, s_right));
                    }
                }
                OpKind::AllOrNothing => {
                    if s > 0 {
                        debug_assert_eq!(s, aggs[i].size_sum);
                        stack.push((l, aggs[l].size_sum));
                        stack.push((r, aggs[r].size_sum));
                    }
                }
            },
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
) -> SsgSolve {
    let aggs = aggregates(flat, sizes);
    let tables = fill_tables(flat, &aggs, capacity, kind, sizes);
    let opt = tables.last().unwrap().max_one().expect("0 is feasible");
    let solution = trace(flat, &aggs, &tables, kind, sizes, opt);
    SsgSolve {
        tables,
        aggs,
        opt,
        solution,
    }
}

pub fn solve_ssg_cograph(x: &DiCoExpr, sizes: &SizeMap, capacity: u64) -> SsgSolve {
    solve_flat(&x.flatten(), capacity, sizes, dico_kind)
}

pub fn solve_ssg_msp(x: &MspExpr, sizes: &SizeMap, capacity: u64) -> SsgSolve {
    solve_flat(&x.flatten(), capacity, sizes, msp_kind)
}

/// Solve an explicit acyclic digraph by reducing it transitively and
/// decomposing the result into a series-parallel expression. Feasible sets
/// only depend on reachability, so the reduction is harmless.
pub fn solve_ssg_sp(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
) -> Result<SsgSolve, DecomposeError> {
    let reduced = g
        .transitive_reduction()
        .map_err(|_| DecomposeError::NotADag)?;
    let expr = decompose_msp(&reduced)?;
    let solve = solve_ssg_msp(&expr, sizes, capacity);
    debug_assert!(g.check_digraph_constraint(&solve.solution));
    Ok(solve)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("digraph has {0} strongly connected components, above the limit of {1}")]
pub struct TooManyComponents(pub usize, pub usize);

pub const GENERAL_COMPONENT_LIMIT: usize = 24;

/// Solve any digraph by contracting strongly connected components and
/// enumerating successor-closed component sets.
pub fn solve_ssg_general(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
) -> Result<(u64, Vec<ItemId>), TooManyComponents> {
    solve_ssg_general_with_cap(g, sizes, capacity, GENERAL_COMPONENT_LIMIT)
}

pub fn solve_ssg_general_with_cap(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
    cap: usize,
) -> Result<(u64, Vec<ItemId>), TooManyComponents> {
    let con = g.condense(sizes);
    let t = con.dag.n();
    if t > cap {
        return Err(TooManyComponents(t, cap));
    }
    let mut succ_masks = vec![0u32; t + 1];
    for comp in 1..=t as Vertex {
        for &w in con.dag.successors(comp).expect("in range") {
            succ_masks[comp as usize] |= 1 << (w - 1);
        }
    }
    let comp_sizes: Vec<u64> = (1..=t as Vertex).map(|comp| con.sizes.get(comp)).collect();
    let mut best_mask = 0u32;
    let mut opt = 0u64;
    'masks: for mask in 0..1u32 << t {
        let mut total = 0;
        let mut m = mask;
        while m != 0 {
            let comp = m.trailing_zeros() as usize;
            if succ_masks[comp + 1] & !mask != 0 {
                continue 'masks;
            }
            total += comp_sizes[comp];
            m &= m - 1;
        }
        if total <= capacity && total > opt {
            opt = total;
            best_mask = mask;
        }
    }
    let mut solution: Vec<ItemId> = Vec::new();
    let mut m = best_mask;
    while m != 0 {
        let comp = m.trailing_zeros() as usize;
        solution.extend_from_slice(&con.members[comp]);
        m &= m - 1;
    }
    solution.sort_unstable();
    Ok((opt, solution))
}

/// On a tournament whose arcs all point down a single vertex order, the
/// feasible sets are exactly the suffixes of that order, so the best one is
/// the longest suffix that fits.
pub fn solve_ssg_transitive_tournament(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
) -> Option<(u64, Vec<ItemId>)> {
    let order = g.transitive_tournament_order()?;
    let mut total = 0;
    let mut solution: Vec<ItemId> = Vec::new();
    for &v in order.iter().rev() {
        if total + sizes.get(v) > capacity {
            break;
        }
        total += sizes.get(v);
        solution.push(v);
    }
    solution.sort_unstable();
    Some((total, solution))
}

/// With every arc present in both directions, the only feasible sets are
/// the empty set and the whole vertex set.
pub fn solve_ssg_bioriented_clique(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
) -> Option<(u64, Vec<ItemId>)> {
    if !g.is_bioriented_clique() {
        return None;
    }
    let total = sizes.total();
    if total <= capacity {
        Some((total, (1..=g.n() as ItemId).collect()))
    } else {
        Some((0, Vec::new()))
    }
}
