//! Exhaustive reference solvers for small instances, used to cross-check
//! the table-based solvers, plus fixtures showing which reductions do not
//! carry over to the weak constraint.

use crate::digraph::{Digraph, Vertex};
use crate::instance::{GraphForm, Instance, ItemId, ProblemKind, SizeMap};
use std::collections::BTreeSet;

/// Enumeration is 2^n; callers must stay at or below this.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Which side sum to record next to each feasible total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tracked {
    None,
    Sources,
    Sinks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    /// Feasible totals, ascending.
    pub sums: BTreeSet<u64>,
    /// (total, tracked-side total) pairs; empty when nothing is tracked.
    pub pairs: BTreeSet<(u64, u64)>,
    pub opt: u64,
    /// First optimal set in ascending bitmask order, ids ascending.
    pub best: Vec<ItemId>,
}

fn pred_masks(g: &Digraph) -> Vec<u32> {
    let n = g.n();
    let mut masks = vec![0u32; n + 1];
    for v in 1..=n as Vertex {
        for &p in g.predecessors(v).expect("in range") {
            masks[v as usize] |= 1 << (p - 1);
        }
    }
    masks
}

fn mask_ok(mask: u32, preds: &[u32], n: usize, kind: ProblemKind) -> bool {
    match kind {
        ProblemKind::Ssp => true,
        ProblemKind::Ssg => (1..=n).all(|y| {
            let bit = 1u32 << (y - 1);
            mask & bit != 0 || preds[y] & mask == 0
        }),
        ProblemKind::Ssgw => (1..=n).all(|y| {
            let bit = 1u32 << (y - 1);
            mask & bit != 0 || preds[y] == 0 || preds[y] & mask != preds[y]
        }),
    }
}

fn mask_sum(mask: u32, sizes: &SizeMap) -> u64 {
    let mut m = mask;
    let mut total = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        total += sizes.get((b + 1) as ItemId);
        m &= m - 1;
    }
    total
}

fn mask_ids(mask: u32) -> Vec<ItemId> {
    let mut m = mask;
    let mut ids = Vec::new();
    while m != 0 {
        ids.push((m.trailing_zeros() + 1) as ItemId);
        m &= m - 1;
    }
    ids
}

/// Enumerate every subset and record the feasible totals.
pub fn brute_force(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
    kind: ProblemKind,
    tracked: Tracked,
) -> Oracle {
    let n = g.n();
    assert!(n <= BRUTE_FORCE_LIMIT, "brute force limited to {BRUTE_FORCE_LIMIT} items");
    assert_eq!(sizes.n(), n);
    let preds = pred_masks(g);
    let tracked_mask: u32 = match tracked {
        Tracked::None => 0,
        Tracked::Sources => g.sources().iter().map(|&v| 1 << (v - 1)).sum(),
        Tracked::Sinks => g.sinks().iter().map(|&v| 1 << (v - 1)).sum(),
    };
    let mut out = Oracle {
        sums: BTreeSet::new(),
        pairs: BTreeSet::new(),
        opt: 0,
        best: Vec::new(),
    };
    for mask in 0..1u32 << n {
        let total = mask_sum(mask, sizes);
        if total > capacity || !mask_ok(mask, &preds, n, kind) {
            continue;
        }
        out.sums.insert(total);
        if tracked != Tracked::None {
            out.pairs.insert((total, mask_sum(mask & tracked_mask, sizes)));
        }
        if total > out.opt || mask == 0 {
            out.opt = total;
            out.best = mask_ids(mask);
        }
    }
    out
}

/// Every feasible set, in ascending bitmask order with ids ascending.
pub fn feasible_sets(
    g: &Digraph,
    sizes: &SizeMap,
    capacity: u64,
    kind: ProblemKind,
) -> Vec<Vec<ItemId>> {
    let n = g.n();
    assert!(n <= BRUTE_FORCE_LIMIT);
    let preds = pred_masks(g);
    (0..1u32 << n)
        .filter(|&mask| mask_sum(mask, sizes) <= capacity && mask_ok(mask, &preds, n, kind))
        .map(mask_ids)
        .collect()
}

/// A 4-cycle with a chord plus a pendant vertex, unit sizes, capacity 2.
/// Under the weak rule {v4} alone is feasible on the graph itself, while
/// contracting the cycle into one heavy vertex leaves no feasible set
/// that maps back to it, so the feasible totals change.
pub fn condensation_fixture() -> Instance {
    let arcs = [(1, 2), (2, 3), (3, 4), (4, 1), (3, 1), (1, 5)];
    let g = Digraph::from_arcs(5, &arcs).unwrap();
    let sizes = SizeMap::new(vec![1; 5]).unwrap();
    Instance::new(ProblemKind::Ssgw, 2, sizes, GraphForm::Edges(g)).unwrap()
}

/// Dropping the shortcut (v1, v3) shrinks N-(v3) from {v1, v2} to {v2},
/// so {v2} switches from feasible to forcing v3 under the weak rule.
/// Unit sizes, capacity 2.
pub fn reduction_fixture() -> Instance {
    let arcs = [(1, 2), (2, 3), (3, 4), (1, 3)];
    let g = Digraph::from_arcs(4, &arcs).unwrap();
    let sizes = SizeMap::new(vec![1; 4]).unwrap();
    Instance::new(ProblemKind::Ssgw, 2, sizes, GraphForm::Edges(g)).unwrap()
}
