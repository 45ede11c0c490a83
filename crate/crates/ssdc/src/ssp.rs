//! Capacity-only subset sum over the item sizes, with traceback.

use crate::bits::BitRow;
use crate::expr::{Flat, FlatNode, NodeAggregates};
use crate::instance::{ItemId, SizeMap};

/// All sums reachable by subsets of `sizes`, up to `capacity`.
pub fn subset_sums(sizes: &[u64], capacity: u64) -> BitRow {
    let mut cur = BitRow::zeros(capacity);
    cur.set(0);
    for &s in sizes {
        let prev = cur.clone();
        cur.or_shifted(&prev, s);
    }
    cur
}

/// Subset-sum row per expression node, ignoring all arcs: every operator
/// just merges item pools.
pub fn subset_sum_tables<Op: Copy>(
    flat: &Flat<Op>,
    aggs: &[NodeAggregates],
    capacity: u64,
    sizes: &SizeMap,
) -> Vec<BitRow> {
    let mut tables: Vec<BitRow> = Vec::with_capacity(flat.nodes.len());
    for (i, node) in flat.nodes.iter().enumerate() {
        let mut row = BitRow::zeros(capacity.min(aggs[i].size_sum));
        match *node {
            FlatNode::Leaf(id) => {
                row.set(0);
                let s = sizes.get(id);
                if s < row.len() {
                    row.set(s);
                }
            }
            FlatNode::Node(_, l, r) => {
                for s1 in tables[l].iter_ones() {
                    row.or_shifted(&tables[r], s1);
                }
            }
        }
        tables.push(row);
    }
    tables
}

/// Largest reachable sum at most `capacity` and a subset attaining it.
///
/// The traceback prefers excluding an item when both choices work, so the
/// returned set is deterministic.
pub fn solve_ssp(sizes: &SizeMap, capacity: u64) -> (u64, Vec<ItemId>) {
    let n = sizes.n();
    let mut rows: Vec<BitRow> = Vec::with_capacity(n + 1);
    let mut first = BitRow::zeros(capacity);
    first.set(0);
    rows.push(first);
    for i in 1..=n {
        let mut row = rows[i - 1].clone();
        row.or_shifted(&rows[i - 1], sizes.get(i as ItemId));
        rows.push(row);
    }
    let opt = rows[n].max_one().expect("sum 0 is always reachable");
    let mut chosen = Vec::new();
    let mut s = opt;
    for i in (1..=n).rev() {
        if rows[i - 1].get(s) {
            continue;
        }
        chosen.push(i as ItemId);
        s -= sizes.get(i as ItemId);
    }
    debug_assert_eq!(s, 0);
    chosen.reverse();
    (opt, chosen)
}
