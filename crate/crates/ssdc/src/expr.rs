//! Expression trees for two recursively built digraph families.
//!
//! Both families share one fully parenthesized concrete syntax: leaves are
//! `v<digits>`, inner nodes are `( left OP right )`. The first family uses
//! `+` (disjoint union, no arcs), `->` (all arcs left to right) and `*`
//! (all arcs in both directions). The second uses `|` (disjoint union) and
//! `*` (arcs from every sink of the left part to every source of the right
//! part). Alongside the ASTs this module provides parsing, evaluation to a
//! concrete [`Digraph`], per-node size aggregates, canonical printing, and
//! the decomposition that recovers an expression from an arc list.

use crate::digraph::{Digraph, Vertex};
use crate::instance::{ItemId, SizeMap};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected token at position {pos}: {found}")]
    UnexpectedToken { pos: usize, found: String },
    #[error("unbalanced parentheses at position {pos}")]
    Unbalanced { pos: usize },
    #[error("duplicate leaf v{0}")]
    DuplicateLeaf(ItemId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("digraph has a directed cycle")]
    NotADag,
    #[error("digraph is not expressible with parallel and series composition")]
    NotDecomposable,
}

/// Union / order / series expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiCoExpr {
    Leaf(ItemId),
    Union(Box<DiCoExpr>, Box<DiCoExpr>),
    Order(Box<DiCoExpr>, Box<DiCoExpr>),
    Series(Box<DiCoExpr>, Box<DiCoExpr>),
}

/// Parallel / series expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MspExpr {
    Leaf(ItemId),
    Parallel(Box<MspExpr>, Box<MspExpr>),
    Series(Box<MspExpr>, Box<MspExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiCoOp {
    Union,
    Order,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MspOp {
    Parallel,
    Series,
}

/// Expression flattened to postorder; children come before their parent, the
/// last node is the root. Per-node solver tables use these indices.
#[derive(Debug, Clone)]
pub struct Flat<Op> {
    pub nodes: Vec<FlatNode<Op>>,
}

#[derive(Debug, Clone, Copy)]
pub enum FlatNode<Op> {
    Leaf(ItemId),
    Node(Op, usize, usize),
}

/// Per-node size sums: all items, items on source vertices, items on sink
/// vertices of the sub-digraph the node evaluates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeAggregates {
    pub size_sum: u64,
    pub source_sum: u64,
    pub sink_sum: u64,
}

/// How an operator combines child aggregates, plus its printed symbol.
pub trait ExprOp: Copy {
    fn combine(self, l: NodeAggregates, r: NodeAggregates) -> NodeAggregates;
    fn symbol(self) -> &'static str;
}

impl ExprOp for DiCoOp {
    fn combine(self, l: NodeAggregates, r: NodeAggregates) -> NodeAggregates {
        let size_sum = l.size_sum + r.size_sum;
        match self {
            DiCoOp::Union => NodeAggregates {
                size_sum,
                source_sum: l.source_sum + r.source_sum,
                sink_sum: l.sink_sum + r.sink_sum,
            },
            // order: right vertices gain predecessors, left vertices gain successors
            DiCoOp::Order => NodeAggregates {
                size_sum,
                source_sum: l.source_sum,
                sink_sum: r.sink_sum,
            },
            // series: every vertex gains both, so no sources or sinks remain
            DiCoOp::Series => NodeAggregates {
                size_sum,
                source_sum: 0,
                sink_sum: 0,
            },
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            DiCoOp::Union => "+",
            DiCoOp::Order => "->",
            DiCoOp::Series => "*",
        }
    }
}

impl ExprOp for MspOp {
    fn combine(self, l: NodeAggregates, r: NodeAggregates) -> NodeAggregates {
        let size_sum = l.size_sum + r.size_sum;
        match self {
            MspOp::Parallel => NodeAggregates {
                size_sum,
                source_sum: l.source_sum + r.source_sum,
                sink_sum: l.sink_sum + r.sink_sum,
            },
            MspOp::Series => NodeAggregates {
                size_sum,
                source_sum: l.source_sum,
                sink_sum: r.sink_sum,
            },
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            MspOp::Parallel => "|",
            MspOp::Series => "*",
        }
    }
}

enum NodeView<'a, T, Op> {
    Leaf(ItemId),
    Node(Op, &'a T, &'a T),
}

trait Tree: Sized {
    type Op: ExprOp;
    fn view(&self) -> NodeView<'_, Self, Self::Op>;
}

impl Tree for DiCoExpr {
    type Op = DiCoOp;
    fn view(&self) -> NodeView<'_, Self, DiCoOp> {
        match self {
            DiCoExpr::Leaf(id) => NodeView::Leaf(*id),
            DiCoExpr::Union(l, r) => NodeView::Node(DiCoOp::Union, l, r),
            DiCoExpr::Order(l, r) => NodeView::Node(DiCoOp::Order, l, r),
            DiCoExpr::Series(l, r) => NodeView::Node(DiCoOp::Series, l, r),
        }
    }
}

impl Tree for MspExpr {
    type Op = MspOp;
    fn view(&self) -> NodeView<'_, Self, MspOp> {
        match self {
            MspExpr::Leaf(id) => NodeView::Leaf(*id),
            MspExpr::Parallel(l, r) => NodeView::Node(MspOp::Parallel, l, r),
            MspExpr::Series(l, r) => NodeView::Node(MspOp::Series, l, r),
        }
    }
}

fn flatten_tree<T: Tree>(root: &T) -> Flat<T::Op> {
    let mut nodes = Vec::new();
    let mut idx_stack: Vec<usize> = Vec::new();
    // two-phase explicit walk so deep trees cannot overflow the call stack
    enum Phase<'a, T> {
        Enter(&'a T),
        Exit(&'a T),
    }
    let mut work = vec![Phase::Enter(root)];
    while let Some(p) = work.pop() {
        match p {
            Phase::Enter(t) => match t.view() {
                NodeView::Leaf(id) => {
                    idx_stack.push(nodes.len());
                    nodes.push(FlatNode::Leaf(id));
                }
                NodeView::Node(_, l, r) => {
                    work.push(Phase::Exit(t));
                    work.push(Phase::Enter(r));
                    work.push(Phase::Enter(l));
                }
            },
            Phase::Exit(t) => {
                if let NodeView::Node(op, _, _) = t.view() {
                    let r = idx_stack.pop().expect("right child index");
                    let l = idx_stack.pop().expect("left child index");
                    idx_stack.push(nodes.len());
                    nodes.push(FlatNode::Node(op, l, r));
                }
            }
        }
    }
    Flat { nodes }
}

impl DiCoExpr {
    pub fn flatten(&self) -> Flat<DiCoOp> {
        flatten_tree(self)
    }

    pub fn leaf_ids(&self) -> Vec<ItemId> {
        leaf_ids(&self.flatten())
    }
}

impl MspExpr {
    pub fn flatten(&self) -> Flat<MspOp> {
        flatten_tree(self)
    }

    pub fn leaf_ids(&self) -> Vec<ItemId> {
        leaf_ids(&self.flatten())
    }
}

/// Leaf ids in left-to-right order.
pub fn leaf_ids<Op>(flat: &Flat<Op>) -> Vec<ItemId> {
    flat.nodes
        .iter()
        .filter_map(|n| match n {
            FlatNode::Leaf(id) => Some(*id),
            FlatNode::Node(..) => None,
        })
        .collect()
}

/// Canonical text per node, postorder.
pub fn node_labels<Op: ExprOp>(flat: &Flat<Op>) -> Vec<String> {
    let mut labels: Vec<String> = Vec::with_capacity(flat.nodes.len());
    for node in &flat.nodes {
        let label = match node {
            FlatNode::Leaf(id) => format!("v{id}"),
            FlatNode::Node(op, l, r) => {
                format!("({} {} {})", labels[*l], op.symbol(), labels[*r])
            }
        };
        labels.push(label);
    }
    labels
}

/// Height per node, postorder; leaves are 0.
pub fn node_heights<Op>(flat: &Flat<Op>) -> Vec<usize> {
    let mut heights: Vec<usize> = Vec::with_capacity(flat.nodes.len());
    for node in &flat.nodes {
        let h = match node {
            FlatNode::Leaf(_) => 0,
            FlatNode::Node(_, l, r) => 1 + heights[*l].max(heights[*r]),
        };
        heights.push(h);
    }
    heights
}

/// Size aggregates per node, postorder.
pub fn aggregates<Op: ExprOp>(flat: &Flat<Op>, sizes: &SizeMap) -> Vec<NodeAggregates> {
    let mut aggs: Vec<NodeAggregates> = Vec::with_capacity(flat.nodes.len());
    for node in &flat.nodes {
        let a = match node {
            FlatNode::Leaf(id) => {
                let s = sizes.get(*id);
                NodeAggregates {
                    size_sum: s,
                    source_sum: s,
                    sink_sum: s,
                }
            }
            FlatNode::Node(op, l, r) => op.combine(aggs[*l], aggs[*r]),
        };
        aggs.push(a);
    }
    aggs
}

pub fn aggregates_dico(x: &DiCoExpr, sizes: &SizeMap) -> Vec<NodeAggregates> {
    aggregates(&x.flatten(), sizes)
}

pub fn aggregates_msp(x: &MspExpr, sizes: &SizeMap) -> Vec<NodeAggregates> {
    aggregates(&x.flatten(), sizes)
}

impl fmt::Display for DiCoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.flatten();
        f.write_str(node_labels(&flat).last().expect("nonempty expression"))
    }
}

impl fmt::Display for MspExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.flatten();
        f.write_str(node_labels(&flat).last().expect("nonempty expression"))
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OpTok {
    Plus,
    Arrow,
    Star,
    Pipe,
}

impl OpTok {
    fn text(self) -> &'static str {
        match self {
            OpTok::Plus => "+",
            OpTok::Arrow => "->",
            OpTok::Star => "*",
            OpTok::Pipe => "|",
        }
    }
}

#[derive(Debug)]
enum Tok {
    LParen,
    RParen,
    Op(OpTok),
    Leaf(ItemId),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    /// Next token with its start position, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok)>, ExprError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.src[start];
        let tok = match b {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'+' => {
                self.pos += 1;
                Tok::Op(OpTok::Plus)
            }
            b'*' => {
                self.pos += 1;
                Tok::Op(OpTok::Star)
            }
            b'|' => {
                self.pos += 1;
                Tok::Op(OpTok::Pipe)
            }
            b'-' => {
                if self.src.get(start + 1) == Some(&b'>') {
                    self.pos += 2;
                    Tok::Op(OpTok::Arrow)
                } else {
                    return Err(ExprError::UnexpectedToken {
                        pos: start,
                        found: "-".into(),
                    });
                }
            }
            b'v' => {
                let mut end = start + 1;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[start..end]).expect("ascii");
                let id: ItemId = text[1..].parse().map_err(|_| ExprError::UnexpectedToken {
                    pos: start,
                    found: text.to_string(),
                })?;
                if id == 0 {
                    return Err(ExprError::UnexpectedToken {
                        pos: start,
                        found: text.to_string(),
                    });
                }
                self.pos = end;
                Tok::Leaf(id)
            }
            _ => {
                let ch = self.src[start] as char;
                return Err(ExprError::UnexpectedToken {
                    pos: start,
                    found: ch.to_string(),
                });
            }
        };
        Ok(Some((start, tok)))
    }
}

enum RawExpr {
    Leaf(ItemId),
    Node(OpTok, Box<RawExpr>, Box<RawExpr>),
}

/// Iterative parser for the fully parenthesized grammar; `allowed` filters
/// which operators this expression family accepts.
fn parse_raw(text: &str, allowed: &[OpTok]) -> Result<RawExpr, ExprError> {
    let mut lexer = Lexer::new(text);
    let mut frames: Vec<(usize, Option<(RawExpr, OpTok)>)> = Vec::new();
    let mut value: Option<RawExpr> = None;
    let mut seen: BTreeSet<ItemId> = BTreeSet::new();
    loop {
        match lexer.next()? {
            None => {
                return match (value, frames.last()) {
                    (Some(v), None) => Ok(v),
                    (_, Some(&(pos, _))) => Err(ExprError::Unbalanced { pos }),
                    (None, None) => Err(ExprError::UnexpectedToken {
                        pos: text.len(),
                        found: "end of input".into(),
                    }),
                };
            }
            Some((pos, tok)) => match tok {
                Tok::Leaf(id) if value.is_none() => {
                    if !seen.insert(id) {
                        return Err(ExprError::DuplicateLeaf(id));
                    }
                    value = Some(RawExpr::Leaf(id));
                }
                Tok::LParen if value.is_none() => frames.push((pos, None)),
                Tok::Op(op) if value.is_some() => {
                    if !allowed.contains(&op) {
                        return Err(ExprError::UnexpectedToken {
                            pos,
                            found: op.text().into(),
                        });
                    }
                    match frames.last_mut() {
                        Some(slot @ (_, None)) => {
                            slot.1 = Some((value.take().expect("checked"), op));
                        }
                        _ => {
                            return Err(ExprError::UnexpectedToken {
                                pos,
                                found: op.text().into(),
                            })
                        }
                    }
                }
                Tok::RParen if value.is_some() => match frames.pop() {
                    Some((_, Some((left, op)))) => {
                        let right = value.take().expect("checked");
                        value = Some(RawExpr::Node(op, Box::new(left), Box::new(right)));
                    }
                    _ => {
                        return Err(ExprError::UnexpectedToken {
                            pos,
                            found: ")".into(),
                        })
                    }
                },
                other => {
                    let found = match other {
                        Tok::LParen => "(".into(),
                        Tok::RParen => ")".into(),
                        Tok::Op(op) => op.text().into(),
                        Tok::Leaf(id) => format!("v{id}"),
                    };
                    return Err(ExprError::UnexpectedToken { pos, found });
                }
            },
        }
    }
}

pub fn parse_dico(text: &str) -> Result<DiCoExpr, ExprError> {
    fn build(raw: RawExpr) -> DiCoExpr {
        // iterative rebuild mirroring flatten_tree, to stay stack-safe
        let mut out: Vec<DiCoExpr> = Vec::new();
        for node in raw_postorder(raw) {
            match node {
                RawFlat::Leaf(id) => out.push(DiCoExpr::Leaf(id)),
                RawFlat::Node(op) => {
                    let r = Box::new(out.pop().expect("right"));
                    let l = Box::new(out.pop().expect("left"));
                    out.push(match op {
                        OpTok::Plus => DiCoExpr::Union(l, r),
                        OpTok::Arrow => DiCoExpr::Order(l, r),
                        OpTok::Star => DiCoExpr::Series(l, r),
                        OpTok::Pipe => unreachable!("filtered by parse_raw"),
                    });
                }
            }
        }
        out.pop().expect("nonempty")
    }
    parse_raw(text, &[OpTok::Plus, OpTok::Arrow, OpTok::Star]).map(build)
}

pub fn parse_msp(text: &str) -> Result<MspExpr, ExprError> {
    fn build(raw: RawExpr) -> MspExpr {
        let mut out: Vec<MspExpr> = Vec::new();
        for node in raw_postorder(raw) {
            match node {
                RawFlat::Leaf(id) => out.push(MspExpr::Leaf(id)),
                RawFlat::Node(op) => {
                    let r = Box::new(out.pop().expect("right"));
                    let l = Box::new(out.pop().expect("left"));
                    out.push(match op {
                        OpTok::Pipe => MspExpr::Parallel(l, r),
                        OpTok::Star => MspExpr::Series(l, r),
                        _ => unreachable!("filtered by parse_raw"),
                    });
                }
            }
        }
        out.pop().expect("nonempty")
    }
    parse_raw(text, &[OpTok::Pipe, OpTok::Star]).map(build)
}

enum RawFlat {
    Leaf(ItemId),
    Node(OpTok),
}

fn raw_postorder(raw: RawExpr) -> Vec<RawFlat> {
    enum Phase {
        Enter(RawExpr),
        Exit(OpTok),
    }
    let mut out = Vec::new();
    let mut work = vec![Phase::Enter(raw)];
    while let Some(p) = work.pop() {
        match p {
            Phase::Enter(RawExpr::Leaf(id)) => out.push(RawFlat::Leaf(id)),
            Phase::Enter(RawExpr::Node(op, l, r)) => {
                work.push(Phase::Exit(op));
                work.push(Phase::Enter(*r));
                work.push(Phase::Enter(*l));
            }
            Phase::Exit(op) => out.push(RawFlat::Node(op)),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// evaluation

/// Sorted distinct leaf ids and the rank relabeling used by evaluation:
/// vertex k of the evaluated digraph stands for the k-th smallest leaf id.
/// Instances require leaves 1..n, making the relabeling the identity there.
pub fn sorted_leaves<Op>(flat: &Flat<Op>) -> Vec<ItemId> {
    let mut ids = leaf_ids(flat);
    ids.sort_unstable();
    assert!(
        ids.windows(2).all(|w| w[0] != w[1]),
        "expression has duplicate leaves"
    );
    ids
}

fn rank_of(sorted: &[ItemId], id: ItemId) -> Vertex {
    (sorted.binary_search(&id).expect("leaf id present") + 1) as Vertex
}

pub fn eval_dico(x: &DiCoExpr) -> Digraph {
    let flat = x.flatten();
    let sorted = sorted_leaves(&flat);
    let mut members: Vec<Vec<Vertex>> = Vec::with_capacity(flat.nodes.len());
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    for node in &flat.nodes {
        let m = match node {
            FlatNode::Leaf(id) => vec![rank_of(&sorted, *id)],
            FlatNode::Node(op, l, r) => {
                let left = std::mem::take(&mut members[*l]);
                let right = std::mem::take(&mut members[*r]);
                match op {
                    DiCoOp::Union => {}
                    DiCoOp::Order => {
                        for &a in &left {
                            for &b in &right {
                                arcs.push((a, b));
                            }
                        }
                    }
                    DiCoOp::Series => {
                        for &a in &left {
                            for &b in &right {
                                arcs.push((a, b));
                                arcs.push((b, a));
                            }
                        }
                    }
                }
                let mut m = left;
                m.extend(right);
                m
            }
        };
        members.push(m);
    }
    Digraph::from_arcs(sorted.len(), &arcs).expect("evaluation emits simple arcs")
}

pub fn eval_msp(x: &MspExpr) -> Digraph {
    let flat = x.flatten();
    let sorted = sorted_leaves(&flat);
    let mut srcs: Vec<Vec<Vertex>> = Vec::with_capacity(flat.nodes.len());
    let mut snks: Vec<Vec<Vertex>> = Vec::with_capacity(flat.nodes.len());
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    for node in &flat.nodes {
        let (s, t) = match node {
            FlatNode::Leaf(id) => {
                let v = rank_of(&sorted, *id);
                (vec![v], vec![v])
            }
            FlatNode::Node(op, l, r) => match op {
                MspOp::Parallel => {
                    let mut s = std::mem::take(&mut srcs[*l]);
                    s.extend(std::mem::take(&mut srcs[*r]));
                    let mut t = std::mem::take(&mut snks[*l]);
                    t.extend(std::mem::take(&mut snks[*r]));
                    (s, t)
                }
                MspOp::Series => {
                    for &a in &snks[*l] {
                        for &b in &srcs[*r] {
                            arcs.push((a, b));
                        }
                    }
                    (std::mem::take(&mut srcs[*l]), std::mem::take(&mut snks[*r]))
                }
            },
        };
        srcs.push(s);
        snks.push(t);
    }
    Digraph::from_arcs(sorted.len(), &arcs).expect("evaluation emits simple arcs")
}

// ---------------------------------------------------------------------------
// decomposition

/// Recover a parallel/series expression whose evaluation is exactly `g`.
///
/// Split search: a weakly disconnected graph splits in parallel over its
/// components (sorted by smallest vertex, folded left to right); otherwise
/// every vertex with incoming arcs nominates its predecessor set P as the
/// left-side sink set, the right side is everything reachable from the
/// vertices whose predecessor set is exactly P, and the split is accepted
/// when the crossing arcs are exactly P times those vertices and the left
/// sinks are exactly P.
pub fn decompose_msp(g: &Digraph) -> Result<MspExpr, DecomposeError> {
    if !g.is_acyclic() {
        return Err(DecomposeError::NotADag);
    }
    let all: Vec<Vertex> = (1..=g.n() as Vertex).collect();
    if all.is_empty() {
        return Err(DecomposeError::NotDecomposable);
    }
    let expr = decompose_subset(g, &all).ok_or(DecomposeError::NotDecomposable)?;
    if eval_msp(&expr).arcs() != g.arcs() {
        return Err(DecomposeError::NotDecomposable);
    }
    Ok(expr)
}

fn decompose_subset(g: &Digraph, s: &[Vertex]) -> Option<MspExpr> {
    if s.len() == 1 {
        return Some(MspExpr::Leaf(s[0]));
    }
    let inside = subset_mask(g, s);
    let comps = weak_components(g, s, &inside);
    if comps.len() > 1 {
        let mut iter = comps.into_iter();
        let mut acc = decompose_subset(g, &iter.next()?)?;
        for comp in iter {
            acc = MspExpr::Parallel(Box::new(acc), Box::new(decompose_subset(g, &comp)?));
        }
        return Some(acc);
    }
    for &v in s {
        let p = preds_in(g, v, &inside);
        if p.is_empty() {
            continue;
        }
        let i2: Vec<Vertex> = s
            .iter()
            .copied()
            .filter(|&w| preds_in(g, w, &inside) == p)
            .collect();
        let right = reachable_from(g, &i2, &inside);
        let right_mask = subset_mask(g, &right);
        let left: Vec<Vertex> = s
            .iter()
            .copied()
            .filter(|&w| !right_mask[w as usize])
            .collect();
        if left.is_empty() {
            continue;
        }
        if !cross_arcs_match(g, s, &inside, &right_mask, &p, &i2) {
            continue;
        }
        if sinks_within(g, &left) != p {
            continue;
        }
        let (l, r) = match (decompose_subset(g, &left), decompose_subset(g, &right)) {
            (Some(l), Some(r)) => (l, r),
            _ => continue,
        };
        return Some(MspExpr::Series(Box::new(l), Box::new(r)));
    }
    None
}

fn subset_mask(g: &Digraph, s: &[Vertex]) -> Vec<bool> {
    let mut mask = vec![false; g.n() + 1];
    for &v in s {
        mask[v as usize] = true;
    }
    mask
}

fn preds_in(g: &Digraph, v: Vertex, inside: &[bool]) -> Vec<Vertex> {
    g.predecessors(v)
        .expect("vertex in range")
        .iter()
        .copied()
        .filter(|&u| inside[u as usize])
        .collect()
}

fn weak_components(g: &Digraph, s: &[Vertex], inside: &[bool]) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n() + 1];
    let mut comps = Vec::new();
    for &start in s {
        if seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            let succ = g.successors(u).expect("vertex in range").iter();
            let pred = g.predecessors(u).expect("vertex in range").iter();
            for &w in succ.chain(pred) {
                if inside[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

fn reachable_from(g: &Digraph, starts: &[Vertex], inside: &[bool]) -> Vec<Vertex> {
    let mut seen = vec![false; g.n() + 1];
    let mut queue: Vec<Vertex> = Vec::new();
    for &v in starts {
        if !seen[v as usize] {
            seen[v as usize] = true;
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in g.successors(u).expect("vertex in range") {
            if inside[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                queue.push(w);
            }
        }
    }
    queue.sort_unstable();
    queue
}

fn cross_arcs_match(
    g: &Digraph,
    s: &[Vertex],
    in_s: &[bool],
    right_mask: &[bool],
    p: &[Vertex],
    i2: &[Vertex],
) -> bool {
    let p_mask = subset_mask(g, p);
    let i2_mask = subset_mask(g, i2);
    let mut crossing = 0usize;
    for &u in s {
        for &w in g.successors(u).expect("vertex in range") {
            if !in_s[w as usize] {
                continue;
            }
            let u_right = right_mask[u as usize];
            let w_right = right_mask[w as usize];
            if u_right == w_right {
                continue;
            }
            // no arc may point back from the right part, and every forward
            // crossing must be a left-sink-to-right-source arc
            if u_right || !(p_mask[u as usize] && i2_mask[w as usize]) {
                return false;
            }
            crossing += 1;
        }
    }
    crossing == p.len() * i2.len()
}

fn sinks_within(g: &Digraph, part: &[Vertex]) -> Vec<Vertex> {
    let mask = subset_mask(g, part);
    part.iter()
        .copied()
        .filter(|&v| {
            g.successors(v)
                .expect("vertex in range")
                .iter()
                .all(|&w| !mask[w as usize])
        })
        .collect()
}
