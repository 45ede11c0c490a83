//! Simple digraphs on vertices `1..=n` plus the structural machinery the
//! solvers lean on: reachability, strongly connected components,
//! condensation, transitive closure/reduction, the two vertex-forcing
//! constraints, and recognizers for a few special graph classes.

use crate::bits::BitRow;
use crate::instance::SizeMap;
use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex v{0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at v{0}")]
    SelfLoop(Vertex),
    #[error("duplicate arc (v{0}, v{1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("digraph has a directed cycle")]
    NotADag,
}

/// Digraph on vertices `1..=n`, no self-loops, no duplicate arcs.
///
/// Successor and predecessor lists are kept sorted, so iteration order is
/// deterministic everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
    m: usize,
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self, DigraphError> {
        let mut succ = vec![Vec::new(); n + 1];
        let mut pred = vec![Vec::new(); n + 1];
        for &(u, v) in arcs {
            for w in [u, v] {
                if w == 0 || w as usize > n {
                    return Err(DigraphError::VertexOutOfRange(w, n));
                }
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            succ[u as usize].push(v);
            pred[v as usize].push(u);
        }
        for v in 1..=n {
            succ[v].sort_unstable();
            pred[v].sort_unstable();
            if let Some(w) = succ[v].windows(2).find(|w| w[0] == w[1]) {
                return Err(DigraphError::DuplicateArc(v as Vertex, w[0]));
            }
        }
        Ok(Digraph {
            n,
            succ,
            pred,
            m: arcs.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.m
    }

    /// All arcs, sorted by (tail, head).
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 1..=self.n {
            for &v in &self.succ[u] {
                out.push((u as Vertex, v));
            }
        }
        out
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), DigraphError> {
        if v == 0 || v as usize > self.n {
            Err(DigraphError::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    pub fn successors(&self, v: Vertex) -> Result<&[Vertex], DigraphError> {
        self.check_vertex(v)?;
        Ok(&self.succ[v as usize])
    }

    pub fn predecessors(&self, v: Vertex) -> Result<&[Vertex], DigraphError> {
        self.check_vertex(v)?;
        Ok(&self.pred[v as usize])
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1
            && (u as usize) <= self.n
            && self.succ[u as usize].binary_search(&v).is_ok()
    }

    /// Vertices with no incoming arc, ascending.
    pub fn sources(&self) -> Vec<Vertex> {
        (1..=self.n as Vertex)
            .filter(|&v| self.pred[v as usize].is_empty())
            .collect()
    }

    /// Vertices with no outgoing arc, ascending.
    pub fn sinks(&self) -> Vec<Vertex> {
        (1..=self.n as Vertex)
            .filter(|&v| self.succ[v as usize].is_empty())
            .collect()
    }

    /// Everything reachable from `v` by directed paths, `v` included, ascending.
    pub fn reachable_set(&self, v: Vertex) -> Result<Vec<Vertex>, DigraphError> {
        self.check_vertex(v)?;
        let mut seen = vec![false; self.n + 1];
        seen[v as usize] = true;
        let mut queue = vec![v];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in &self.succ[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// Topological order, or `None` if the digraph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..=self.n).map(|v| self.pred[v].len()).collect();
        let mut queue: Vec<Vertex> = (1..=self.n as Vertex)
            .filter(|&v| indeg[v as usize] == 0)
            .collect();
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in &self.succ[u as usize] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    queue.push(w);
                }
            }
        }
        (queue.len() == self.n).then_some(queue)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Strongly connected components via iterative Tarjan.
    ///
    /// Components are listed sorted by smallest member, members ascending;
    /// component ids are 1-based so they double as vertices of the
    /// condensation.
    pub fn scc(&self) -> SccPartition {
        let n = self.n;
        let mut index = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut on_stack = vec![false; n + 1];
        let mut stack: Vec<Vertex> = Vec::new();
        let mut next = 1usize;
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        let mut frames: Vec<(Vertex, usize)> = Vec::new();
        for start in 1..=n as Vertex {
            if index[start as usize] != 0 {
                continue;
            }
            index[start as usize] = next;
            low[start as usize] = next;
            next += 1;
            stack.push(start);
            on_stack[start as usize] = true;
            frames.push((start, 0));
            while let Some(frame) = frames.last_mut() {
                let v = frame.0;
                if frame.1 < self.succ[v as usize].len() {
                    let w = self.succ[v as usize][frame.1];
                    frame.1 += 1;
                    if index[w as usize] == 0 {
                        index[w as usize] = next;
                        low[w as usize] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w as usize] = true;
                        frames.push((w, 0));
                    } else if on_stack[w as usize] {
                        low[v as usize] = low[v as usize].min(index[w as usize]);
                    }
                } else {
                    frames.pop();
                    if let Some(parent) = frames.last() {
                        let p = parent.0 as usize;
                        low[p] = low[p].min(low[v as usize]);
                    }
                    if low[v as usize] == index[v as usize] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w as usize] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort_by_key(|c| c[0]);
        let mut component_of = vec![0usize; n + 1];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                component_of[v as usize] = i + 1;
            }
        }
        SccPartition {
            components: comps,
            component_of,
        }
    }

    /// Contract every strongly connected component to one vertex, summing
    /// sizes; `members[k-1]` lists the original vertices behind condensed
    /// vertex `k`.
    pub fn condense(&self, sizes: &SizeMap) -> CondensedInstance {
        let part = self.scc();
        let t = part.components.len();
        let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in self.arcs() {
            let cu = part.component_of[u as usize] as Vertex;
            let cv = part.component_of[v as usize] as Vertex;
            if cu != cv {
                arcs.push((cu, cv));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let dag = Digraph::from_arcs(t, &arcs).expect("condensation is a simple digraph");
        let merged: Vec<u64> = part
            .components
            .iter()
            .map(|c| c.iter().map(|&v| sizes.get(v)).sum())
            .collect();
        CondensedInstance {
            dag,
            sizes: SizeMap::new(merged).expect("component sizes stay positive"),
            members: part.components,
        }
    }

    /// Digraph with an arc `u -> v` whenever `v` is reachable from `u`.
    pub fn transitive_closure(&self) -> Digraph {
        let mut arcs = Vec::new();
        for u in 1..=self.n as Vertex {
            for v in self.reachable_set(u).expect("vertex in range") {
                if v != u {
                    arcs.push((u, v));
                }
            }
        }
        Digraph::from_arcs(self.n, &arcs).expect("closure arcs are simple")
    }

    /// Unique minimal sub-digraph with the same closure. Only defined on
    /// acyclic digraphs.
    pub fn transitive_reduction(&self) -> Result<Digraph, DigraphError> {
        let order = self.topological_order().ok_or(DigraphError::NotADag)?;
        let mut reach: Vec<BitRow> = (0..=self.n).map(|_| BitRow::zeros(self.n as u64)).collect();
        for &v in order.iter().rev() {
            let mut row = BitRow::zeros(self.n as u64);
            row.set(u64::from(v));
            for &w in &self.succ[v as usize] {
                row.or_row(&reach[w as usize]);
            }
            reach[v as usize] = row;
        }
        let mut kept = Vec::new();
        for u in 1..=self.n as Vertex {
            'arcs: for &v in &self.succ[u as usize] {
                for &w in &self.succ[u as usize] {
                    if w != v && reach[w as usize].get(u64::from(v)) {
                        continue 'arcs;
                    }
                }
                kept.push((u, v));
            }
        }
        Ok(Digraph::from_arcs(self.n, &kept).expect("reduction keeps a subset of arcs"))
    }

    /// Smallest vertex outside `chosen` that has a chosen predecessor, i.e.
    /// a witness that "a chosen predecessor forces membership" fails.
    pub fn forcing_witness(&self, chosen: &[Vertex]) -> Option<Vertex> {
        let inside = self.membership(chosen);
        (1..=self.n as Vertex).find(|&y| {
            !inside[y as usize]
                && self.pred[y as usize].iter().any(|&p| inside[p as usize])
        })
    }

    /// Smallest vertex outside `chosen` whose predecessor set is nonempty and
    /// entirely chosen, witnessing failure of the weaker forcing rule.
    pub fn weak_forcing_witness(&self, chosen: &[Vertex]) -> Option<Vertex> {
        let inside = self.membership(chosen);
        (1..=self.n as Vertex).find(|&y| {
            !inside[y as usize]
                && !self.pred[y as usize].is_empty()
                && self.pred[y as usize].iter().all(|&p| inside[p as usize])
        })
    }

    pub fn check_digraph_constraint(&self, chosen: &[Vertex]) -> bool {
        self.forcing_witness(chosen).is_none()
    }

    pub fn check_weak_digraph_constraint(&self, chosen: &[Vertex]) -> bool {
        self.weak_forcing_witness(chosen).is_none()
    }

    fn membership(&self, chosen: &[Vertex]) -> Vec<bool> {
        let mut inside = vec![false; self.n + 1];
        for &v in chosen {
            assert!(
                v >= 1 && (v as usize) <= self.n,
                "chosen vertex v{v} out of range"
            );
            inside[v as usize] = true;
        }
        inside
    }

    /// For a tournament whose outdegrees are exactly `{0, …, n-1}`, the
    /// vertices ordered by decreasing outdegree (so every arc points
    /// rightward to all later vertices). `None` for any other digraph.
    pub fn transitive_tournament_order(&self) -> Option<Vec<Vertex>> {
        let n = self.n;
        if self.m != n * n.saturating_sub(1) / 2 {
            return None;
        }
        for u in 1..=n as Vertex {
            for v in u + 1..=n as Vertex {
                if self.has_arc(u, v) == self.has_arc(v, u) {
                    return None;
                }
            }
        }
        let mut order: Vec<Vertex> = (1..=n as Vertex).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.succ[v as usize].len()));
        for (i, &v) in order.iter().enumerate() {
            if self.succ[v as usize].len() != n - 1 - i {
                return None;
            }
        }
        Some(order)
    }

    pub fn is_transitive_tournament(&self) -> bool {
        self.transitive_tournament_order().is_some()
    }

    /// True when every ordered pair of distinct vertices is an arc.
    pub fn is_bioriented_clique(&self) -> bool {
        (1..=self.n).all(|v| self.succ[v].len() == self.n - 1)
    }

    /// True when the transitive closure has no induced subgraph on four
    /// vertices shaped like `u -> w, u -> x, v -> w`.
    pub fn is_n_free(&self) -> bool {
        const PERMS: [[usize; 4]; 24] = [
            [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
            [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
            [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
            [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
        ];
        let n = self.n;
        if n < 4 {
            return true;
        }
        let closure = self.transitive_closure();
        let verts: Vec<Vertex> = (1..=n as Vertex).collect();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let q = [verts[a], verts[b], verts[c], verts[d]];
                        let mut induced = 0u16;
                        for (i, &x) in q.iter().enumerate() {
                            for (j, &y) in q.iter().enumerate() {
                                if i != j && closure.has_arc(x, y) {
                                    induced |= 1 << (i * 4 + j);
                                }
                            }
                        }
                        if induced.count_ones() != 3 {
                            continue;
                        }
                        for p in PERMS {
                            let (u, v, w, x) = (p[0], p[1], p[2], p[3]);
                            let pattern: u16 =
                                1 << (v * 4 + w) | 1 << (u * 4 + w) | 1 << (u * 4 + x);
                            if induced == pattern {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Output of [`Digraph::scc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    /// Components sorted by smallest member; members ascending.
    pub components: Vec<Vec<Vertex>>,
    /// 1-based component id per vertex (index 0 unused).
    pub component_of: Vec<usize>,
}

/// Output of [`Digraph::condense`]: the component DAG, the summed sizes, and
/// the original vertices behind each condensed vertex.
#[derive(Debug, Clone)]
pub struct CondensedInstance {
    pub dag: Digraph,
    pub sizes: SizeMap,
    pub members: Vec<Vec<Vertex>>,
}
