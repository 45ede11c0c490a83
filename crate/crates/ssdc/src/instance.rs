//! Problem instances: positive item sizes, a capacity, a digraph given as an
//! expression or an explicit arc list, and the problem kind tying them
//! together. Includes the line-oriented text format and solution validation.

use crate::digraph::{Digraph, DigraphError, Vertex};
use crate::expr::{parse_dico, parse_msp, DiCoExpr, ExprError, MspExpr};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub type ItemId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Capacity bound only.
    Ssp,
    /// A chosen in-neighbor forces membership.
    Ssg,
    /// A fully chosen nonempty in-neighborhood forces membership.
    Ssgw,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::Ssp => "ssp",
            ProblemKind::Ssg => "ssg",
            ProblemKind::Ssgw => "ssgw",
        })
    }
}

impl FromStr for ProblemKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "ssp" => Ok(ProblemKind::Ssp),
            "ssg" => Ok(ProblemKind::Ssg),
            "ssgw" => Ok(ProblemKind::Ssgw),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("capacity must be at least 1")]
    InvalidCapacity,
    #[error("item {item} has size 0; sizes must be positive")]
    ZeroSize { item: ItemId },
    #[error("item {item} has size {size} above the capacity {capacity}")]
    SizeAboveCapacity { item: ItemId, size: u64, capacity: u64 },
    #[error("expression leaves do not match the declared items: {0}")]
    LeafItemMismatch(String),
    #[error("graph has {graph_n} vertices but {items} items are declared")]
    GraphSizeMismatch { graph_n: usize, items: usize },
}

/// Item sizes indexed by 1-based item id; all sizes are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeMap {
    sizes: Vec<u64>,
}

impl SizeMap {
    pub fn new(sizes: Vec<u64>) -> Result<Self, InstanceError> {
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(InstanceError::ZeroSize {
                item: (i + 1) as ItemId,
            });
        }
        let mut v = Vec::with_capacity(sizes.len() + 1);
        v.push(0);
        v.extend(sizes);
        Ok(SizeMap { sizes: v })
    }

    pub fn n(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn get(&self, id: ItemId) -> u64 {
        assert!(
            id >= 1 && (id as usize) < self.sizes.len(),
            "item id {id} out of range"
        );
        self.sizes[id as usize]
    }

    /// Sizes by ascending item id.
    pub fn values(&self) -> &[u64] {
        &self.sizes[1..]
    }

    pub fn total(&self) -> u64 {
        self.values().iter().sum()
    }

    pub fn sum<I: IntoIterator<Item = ItemId>>(&self, ids: I) -> u64 {
        ids.into_iter().map(|id| self.get(id)).sum()
    }
}

/// The digraph of an instance, in whichever form the file gave it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphForm {
    DiCo(DiCoExpr),
    Msp(MspExpr),
    Edges(Digraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: ProblemKind,
    pub capacity: u64,
    pub sizes: SizeMap,
    pub graph: GraphForm,
}

impl Instance {
    pub fn new(
        kind: ProblemKind,
        capacity: u64,
        sizes: SizeMap,
        graph: GraphForm,
    ) -> Result<Self, InstanceError> {
        if capacity == 0 {
            return Err(InstanceError::InvalidCapacity);
        }
        for (i, &s) in sizes.values().iter().enumerate() {
            if s > capacity {
                return Err(InstanceError::SizeAboveCapacity {
                    item: (i + 1) as ItemId,
                    size: s,
                    capacity,
                });
            }
        }
        let n = sizes.n();
        match &graph {
            GraphForm::DiCo(x) => check_leaves(&x.leaf_ids(), n)?,
            GraphForm::Msp(x) => check_leaves(&x.leaf_ids(), n)?,
            GraphForm::Edges(g) => {
                if g.n() != n {
                    return Err(InstanceError::GraphSizeMismatch {
                        graph_n: g.n(),
                        items: n,
                    });
                }
            }
        }
        Ok(Instance {
            kind,
            capacity,
            sizes,
            graph,
        })
    }

    pub fn n(&self) -> usize {
        self.sizes.n()
    }

    /// The concrete digraph: expressions are evaluated, arc lists cloned.
    pub fn digraph(&self) -> Digraph {
        match &self.graph {
            GraphForm::DiCo(x) => crate::expr::eval_dico(x),
            GraphForm::Msp(x) => crate::expr::eval_msp(x),
            GraphForm::Edges(g) => g.clone(),
        }
    }

    /// Canonical text form; `parse_instance` of the output reproduces `self`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("problem {}\n", self.kind));
        out.push_str(&format!("capacity {}\n", self.capacity));
        out.push_str(&format!("items {}\n", self.n()));
        for (i, &s) in self.sizes.values().iter().enumerate() {
            out.push_str(&format!("size {} {}\n", i + 1, s));
        }
        match &self.graph {
            GraphForm::DiCo(x) => out.push_str(&format!("graph dico {x}\n")),
            GraphForm::Msp(x) => out.push_str(&format!("graph msp {x}\n")),
            GraphForm::Edges(g) => {
                out.push_str("graph edges\n");
                for (u, v) in g.arcs() {
                    out.push_str(&format!("arc {u} {v}\n"));
                }
                out.push_str("end\n");
            }
        }
        out
    }

    /// The instance as a 0/1 integer program in lp_solve LP format. The
    /// digraph rule becomes one constraint per arc, the weak rule one
    /// constraint per vertex with incoming arcs.
    pub fn export_ip(&self) -> String {
        let n = self.n();
        let terms: Vec<String> = (1..=n)
            .map(|j| format!("{} x{j}", self.sizes.get(j as ItemId)))
            .collect();
        let mut out = String::new();
        out.push_str(&format!("max: {};\n", terms.join(" + ")));
        out.push_str(&format!("cap: {} <= {};\n", terms.join(" + "), self.capacity));
        match self.kind {
            ProblemKind::Ssp => {}
            ProblemKind::Ssg => {
                for (u, v) in self.digraph().arcs() {
                    out.push_str(&format!("arc_{u}_{v}: x{u} - x{v} <= 0;\n"));
                }
            }
            ProblemKind::Ssgw => {
                let g = self.digraph();
                for j in 1..=n as Vertex {
                    let preds = g.predecessors(j).expect("in range");
                    if preds.is_empty() {
                        continue;
                    }
                    let lhs: Vec<String> = preds.iter().map(|p| format!("x{p}")).collect();
                    out.push_str(&format!(
                        "ind_{j}: {} - x{j} <= {};\n",
                        lhs.join(" + "),
                        preds.len() - 1
                    ));
                }
            }
        }
        let vars: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
        out.push_str(&format!("bin {};\n", vars.join(", ")));
        out
    }
}

fn check_leaves(ids: &[ItemId], n: usize) -> Result<(), InstanceError> {
    let mut sorted: Vec<ItemId> = ids.to_vec();
    sorted.sort_unstable();
    if sorted.len() != n || sorted.iter().zip(1..).any(|(&id, k)| id != k) {
        return Err(InstanceError::LeafItemMismatch(format!(
            "expected leaves v1..v{n}, found {} leaves",
            ids.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown item id {id}")]
    UnknownItem { line: usize, id: u64 },
    #[error("line {line}: size {size} out of range [1, {capacity}] for item {item}")]
    SizeOutOfRange {
        line: usize,
        item: u64,
        size: u64,
        capacity: u64,
    },
    #[error("line {line}: duplicate size declaration for item {item}")]
    DuplicateSize { line: usize, item: u64 },
    #[error("line {line}: {source}")]
    Expr { line: usize, source: ExprError },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: DigraphError },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Parse the canonical instance file format.
///
/// Lines in order: `problem <kind>`, `capacity <c>`, `items <n>`, then `n`
/// lines `size <id> <s>`, then either `graph dico <expr>`, `graph msp
/// <expr>`, or `graph edges` followed by `arc <u> <v>` lines and `end`.
/// Blank lines are skipped and `#` starts a comment anywhere.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let syntax = |line: usize, msg: &str| ParseError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            (i + 1, body.trim())
        })
        .filter(|(_, body)| !body.is_empty());
    let mut next = |expected: &str| -> Result<(usize, &str), ParseError> {
        lines.next().ok_or_else(|| ParseError::Syntax {
            line: text.lines().count() + 1,
            msg: format!("unexpected end of file: expected {expected}"),
        })
    };

    let (lno, line) = next("problem line")?;
    let kind: ProblemKind = match line.strip_prefix("problem ") {
        Some(rest) => rest
            .trim()
            .parse()
            .map_err(|_| syntax(lno, "problem must be ssp, ssg or ssgw"))?,
        None => return Err(syntax(lno, "expected `problem <ssp|ssg|ssgw>`")),
    };

    let (lno, line) = next("capacity line")?;
    let capacity: u64 = match line.strip_prefix("capacity ") {
        Some(rest) => rest
            .trim()
            .parse()
            .map_err(|_| syntax(lno, "capacity must be an unsigned integer"))?,
        None => return Err(syntax(lno, "expected `capacity <c>`")),
    };
    if capacity == 0 {
        return Err(syntax(lno, "capacity must be at least 1"));
    }

    let (lno, line) = next("items line")?;
    let n: usize = match line.strip_prefix("items ") {
        Some(rest) => rest
            .trim()
            .parse()
            .map_err(|_| syntax(lno, "items must be an unsigned integer"))?,
        None => return Err(syntax(lno, "expected `items <n>`")),
    };
    if n == 0 {
        return Err(syntax(lno, "items must be at least 1"));
    }
    if n > ItemId::MAX as usize {
        return Err(syntax(lno, "too many items"));
    }

    let mut sizes: Vec<Option<u64>> = vec![None; n];
    for _ in 0..n {
        let (lno, line) = next("size line")?;
        let rest = line
            .strip_prefix("size ")
            .ok_or_else(|| syntax(lno, "expected `size <id> <s>`"))?;
        let mut parts = rest.split_whitespace();
        let id: u64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(lno, "expected `size <id> <s>`"))?;
        let s: u64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(lno, "expected `size <id> <s>`"))?;
        if parts.next().is_some() {
            return Err(syntax(lno, "trailing tokens after `size <id> <s>`"));
        }
        if id == 0 || id > n as u64 {
            return Err(ParseError::UnknownItem { line: lno, id });
        }
        if s == 0 || s > capacity {
            return Err(ParseError::SizeOutOfRange {
                line: lno,
                item: id,
                size: s,
                capacity,
            });
        }
        let slot = &mut sizes[(id - 1) as usize];
        if slot.is_some() {
            return Err(ParseError::DuplicateSize { line: lno, item: id });
        }
        *slot = Some(s);
    }
    let sizes = SizeMap::new(sizes.into_iter().map(|s| s.expect("all declared")).collect())
        .expect("parse checked positivity");

    let (lno, line) = next("graph line")?;
    let graph = if let Some(rest) = line.strip_prefix("graph dico ") {
        GraphForm::DiCo(parse_dico(rest).map_err(|source| ParseError::Expr { line: lno, source })?)
    } else if let Some(rest) = line.strip_prefix("graph msp ") {
        GraphForm::Msp(parse_msp(rest).map_err(|source| ParseError::Expr { line: lno, source })?)
    } else if line == "graph edges" {
        let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
        loop {
            let (lno, line) = next("`arc <u> <v>` or `end`")?;
            if line == "end" {
                break;
            }
            let rest = line
                .strip_prefix("arc ")
                .ok_or_else(|| syntax(lno, "expected `arc <u> <v>` or `end`"))?;
            let mut parts = rest.split_whitespace();
            let mut vertex = |what: &str| -> Result<Vertex, ParseError> {
                let raw: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lno, "expected `arc <u> <v>`"))?;
                if raw == 0 || raw > n as u64 {
                    return Err(ParseError::UnknownItem { line: lno, id: raw });
                }
                let _ = what;
                Ok(raw as Vertex)
            };
            let u = vertex("tail")?;
            let v = vertex("head")?;
            if parts.next().is_some() {
                return Err(syntax(lno, "trailing tokens after `arc <u> <v>`"));
            }
            if u == v {
                return Err(ParseError::Graph {
                    line: lno,
                    source: DigraphError::SelfLoop(u),
                });
            }
            if arcs.contains(&(u, v)) {
                return Err(ParseError::Graph {
                    line: lno,
                    source: DigraphError::DuplicateArc(u, v),
                });
            }
            arcs.push((u, v));
        }
        GraphForm::Edges(Digraph::from_arcs(n, &arcs).expect("arcs validated line by line"))
    } else {
        return Err(syntax(
            lno,
            "expected `graph dico <expr>`, `graph msp <expr>` or `graph edges`",
        ));
    };

    if let Some((lno, _)) = lines.next() {
        return Err(syntax(lno, "unexpected content after the graph section"));
    }

    Ok(Instance::new(kind, capacity, sizes, graph)?)
}

/// A feasible chosen set with its total size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Chosen item ids, ascending.
    pub chosen: Vec<ItemId>,
    pub total: u64,
    pub kind: ProblemKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("unknown item id {0}")]
    UnknownItem(u64),
    #[error("duplicate item id {0}")]
    DuplicateItem(ItemId),
    #[error("infeasible: capacity {total}")]
    CapacityExceeded { total: u64, capacity: u64 },
    #[error("infeasible: digraph-constraint v{witness}")]
    DigraphConstraint { witness: Vertex },
    #[error("infeasible: weak-digraph-constraint v{witness}")]
    WeakDigraphConstraint { witness: Vertex },
}

/// Check a chosen set against capacity and the instance's constraint; the
/// graph constraints report the smallest violating vertex as witness.
pub fn validate_solution(inst: &Instance, chosen: &[ItemId]) -> Result<Solution, SolutionError> {
    let n = inst.n();
    let mut ids: Vec<ItemId> = Vec::with_capacity(chosen.len());
    for &id in chosen {
        if id == 0 || id as usize > n {
            return Err(SolutionError::UnknownItem(id as u64));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(SolutionError::DuplicateItem(w[0]));
    }
    let total = inst.sizes.sum(ids.iter().copied());
    if total > inst.capacity {
        return Err(SolutionError::CapacityExceeded {
            total,
            capacity: inst.capacity,
        });
    }
    match inst.kind {
        ProblemKind::Ssp => {}
        ProblemKind::Ssg => {
            if let Some(witness) = inst.digraph().forcing_witness(&ids) {
                return Err(SolutionError::DigraphConstraint { witness });
            }
        }
        ProblemKind::Ssgw => {
            if let Some(witness) = inst.digraph().weak_forcing_witness(&ids) {
                return Err(SolutionError::WeakDigraphConstraint { witness });
            }
        }
    }
    Ok(Solution {
        chosen: ids,
        total,
        kind: inst.kind,
    })
}
