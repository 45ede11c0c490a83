//! Command line front end.
//!
//! Exit codes: 0 on success (a negative feasibility check still succeeds),
//! 1 for argument or input errors, 2 when a command does not apply to the
//! given instance (oracle above the enumeration limit, table output or the
//! weak rule on an arc-list graph, undecomposable digraphs, too many
//! strongly connected components).

use crate::expr::{node_heights, node_labels, DecomposeError, ExprOp, Flat, FlatNode};
use crate::gen::{gen_instance, GenClass};
use crate::instance::{
    parse_instance, validate_solution, GraphForm, Instance, ItemId, ProblemKind, SolutionError,
};
use crate::oracle::{brute_force, Tracked, BRUTE_FORCE_LIMIT};
use crate::solve::{solve_instance, SolveError};
use crate::ssg::{solve_ssg_cograph, solve_ssg_msp};
use crate::ssgw::{solve_ssgw_cograph, solve_ssgw_msp, SsgwSolve};
use crate::ssp::{subset_sum_tables, subset_sums};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "ssdc", version, about = "Subset sum under digraph constraints")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArg {
    /// Instance file to read
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance exactly
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Print the per-node tables the solver filled
        #[arg(long)]
        emit_tables: bool,
        /// Print an optimal item set
        #[arg(long)]
        emit_solution: bool,
    },
    /// Enumerate all subsets of a small instance
    Oracle {
        #[command(flatten)]
        input: InputArg,
    },
    /// Check a given item set against the instance constraints
    Check {
        #[command(flatten)]
        input: InputArg,
        /// Whitespace-separated item ids, e.g. "2 3 4"
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        set: String,
    },
    /// Generate a random instance
    Gen {
        /// Graph family: dico or msp
        #[arg(long)]
        class: String,
        /// Number of items
        #[arg(long)]
        n: usize,
        /// Capacity
        #[arg(long)]
        c: u64,
        /// Largest item size
        #[arg(long)]
        max_size: u64,
        /// Random seed; equal seeds give equal instances
        #[arg(long)]
        seed: u64,
        /// Problem kind written into the instance
        #[arg(long, default_value = "ssg")]
        problem: String,
    },
    /// Write the instance as a 0/1 integer program in LP format
    ExportIp {
        #[command(flatten)]
        input: InputArg,
    },
    /// Express an arc-list digraph with parallel and series composition
    Decompose {
        #[command(flatten)]
        input: InputArg,
    },
}

/// Run with the given argv; everything the command prints goes to the two
/// writers. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Solve {
            input,
            emit_tables,
            emit_solution,
        } => cmd_solve(&input, emit_tables, emit_solution, out),
        Cmd::Oracle { input } => cmd_oracle(&input, out),
        Cmd::Check { input, set } => cmd_check(&input, &set, out),
        Cmd::Gen {
            class,
            n,
            c,
            max_size,
            seed,
            problem,
        } => cmd_gen(&class, n, c, max_size, seed, &problem, out),
        Cmd::ExportIp { input } => cmd_export_ip(&input, out),
        Cmd::Decompose { input } => cmd_decompose(&input, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.msg);
            e.code
        }
    }
}

struct CmdError {
    code: i32,
    msg: String,
}

fn invalid(msg: impl Display) -> CmdError {
    CmdError {
        code: 1,
        msg: msg.to_string(),
    }
}

fn inapplicable(msg: impl Display) -> CmdError {
    CmdError {
        code: 2,
        msg: msg.to_string(),
    }
}

type CmdResult = Result<(), CmdError>;

fn load(input: &InputArg) -> Result<Instance, CmdError> {
    let text = std::fs::read_to_string(&input.input)
        .map_err(|e| invalid(format!("{}: {e}", input.input.display())))?;
    parse_instance(&text).map_err(invalid)
}

fn io(e: std::io::Error) -> CmdError {
    CmdError {
        code: 1,
        msg: e.to_string(),
    }
}

/// Table row order: leaves by item id, then inner nodes bottom-up.
fn render_order<Op>(flat: &Flat<Op>) -> Vec<usize> {
    let heights = node_heights(flat);
    let mut leaves: Vec<(ItemId, usize)> = Vec::new();
    let mut inner: Vec<(usize, usize)> = Vec::new();
    for (i, node) in flat.nodes.iter().enumerate() {
        match node {
            FlatNode::Leaf(id) => leaves.push((*id, i)),
            FlatNode::Node(..) => inner.push((heights[i], i)),
        }
    }
    leaves.sort_unstable();
    inner.sort_unstable();
    leaves
        .into_iter()
        .map(|(_, i)| i)
        .chain(inner.into_iter().map(|(_, i)| i))
        .collect()
}

fn write_bit_table(
    out: &mut dyn Write,
    labels: &[String],
    order: &[usize],
    capacity: u64,
    cell: impl Fn(usize, u64) -> bool,
) -> std::io::Result<()> {
    write!(out, "node")?;
    for s in 0..=capacity {
        write!(out, "\t{s}")?;
    }
    writeln!(out)?;
    for &i in order {
        write!(out, "{}", labels[i])?;
        for s in 0..=capacity {
            write!(out, "\t{}", u8::from(cell(i, s)))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_plain_tables<Op: ExprOp>(
    out: &mut dyn Write,
    flat: &Flat<Op>,
    capacity: u64,
    sizes: &crate::instance::SizeMap,
) -> std::io::Result<()> {
    let aggs = crate::expr::aggregates(flat, sizes);
    let tables = subset_sum_tables(flat, &aggs, capacity, sizes);
    write_ssg_tables(out, flat, capacity, &tables)
}

fn write_ssg_tables<Op: ExprOp>(
    out: &mut dyn Write,
    flat: &Flat<Op>,
    capacity: u64,
    tables: &[crate::bits::BitRow],
) -> std::io::Result<()> {
    writeln!(out, "TABLE F")?;
    write_bit_table(out, &node_labels(flat), &render_order(flat), capacity, |i, s| {
        tables[i].get(s)
    })
}

fn write_weak_tables<Op: ExprOp>(
    out: &mut dyn Write,
    flat: &Flat<Op>,
    capacity: u64,
    solve: &SsgwSolve,
) -> std::io::Result<()> {
    let labels = node_labels(flat);
    let order = render_order(flat);
    writeln!(out, "TABLE HP")?;
    write_bit_table(out, &labels, &order, capacity, |i, s| solve.ssp[i].get(s))?;
    writeln!(out, "TABLE H")?;
    for t in 0..=capacity {
        writeln!(out, "H s'={t}")?;
        write_bit_table(out, &labels, &order, capacity, |i, s| {
            solve.tables[i]
                .get(t as usize)
                .is_some_and(|row| row.get(s))
        })?;
    }
    Ok(())
}

fn write_solution(out: &mut dyn Write, solution: &[ItemId]) -> std::io::Result<()> {
    write!(out, "SOLUTION")?;
    for id in solution {
        write!(out, " {id}")?;
    }
    writeln!(out)
}

fn cmd_solve(
    input: &InputArg,
    emit_tables: bool,
    emit_solution: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let inst = load(input)?;
    let capacity = inst.capacity;
    if emit_tables && matches!(inst.graph, GraphForm::Edges(_)) {
        return Err(inapplicable(
            "table output needs a dico or msp expression graph",
        ));
    }
    if emit_tables {
        match (&inst.graph, inst.kind) {
            (GraphForm::DiCo(x), ProblemKind::Ssp) => {
                write_plain_tables(out, &x.flatten(), capacity, &inst.sizes).map_err(io)?;
            }
            (GraphForm::Msp(x), ProblemKind::Ssp) => {
                write_plain_tables(out, &x.flatten(), capacity, &inst.sizes).map_err(io)?;
            }
            (GraphForm::DiCo(x), ProblemKind::Ssg) => {
                let solve = solve_ssg_cograph(x, &inst.sizes, capacity);
                write_ssg_tables(out, &x.flatten(), capacity, &solve.tables).map_err(io)?;
            }
            (GraphForm::Msp(x), ProblemKind::Ssg) => {
                let solve = solve_ssg_msp(x, &inst.sizes, capacity);
                write_ssg_tables(out, &x.flatten(), capacity, &solve.tables).map_err(io)?;
            }
            (GraphForm::DiCo(x), ProblemKind::Ssgw) => {
                let solve = solve_ssgw_cograph(x, &inst.sizes, capacity);
                write_weak_tables(out, &x.flatten(), capacity, &solve).map_err(io)?;
            }
            (GraphForm::Msp(x), ProblemKind::Ssgw) => {
                let solve = solve_ssgw_msp(x, &inst.sizes, capacity);
                write_weak_tables(out, &x.flatten(), capacity, &solve).map_err(io)?;
            }
            (GraphForm::Edges(_), _) => unreachable!("rejected above"),
        }
    }
    let (opt, solution) = solve_instance(&inst).map_err(|e| match e {
        SolveError::WeakNeedsExpression | SolveError::TooManyComponents(_) => inapplicable(e),
    })?;
    writeln!(out, "OPT {opt}").map_err(io)?;
    if emit_solution {
        write_solution(out, &solution).map_err(io)?;
    }
    Ok(())
}

fn cmd_oracle(input: &InputArg, out: &mut dyn Write) -> CmdResult {
    let inst = load(input)?;
    if inst.n() > BRUTE_FORCE_LIMIT {
        return Err(inapplicable(format!(
            "instance has {} items; the oracle enumerates at most {BRUTE_FORCE_LIMIT}",
            inst.n()
        )));
    }
    match inst.kind {
        ProblemKind::Ssp => {
            let row = subset_sums(inst.sizes.values(), inst.capacity);
            write!(out, "SPECTRUM").map_err(io)?;
            for s in row.iter_ones() {
                write!(out, " {s}").map_err(io)?;
            }
            writeln!(out).map_err(io)?;
            writeln!(out, "OPT {}", row.max_one().unwrap_or(0)).map_err(io)?;
        }
        ProblemKind::Ssg => {
            let o = brute_force(
                &inst.digraph(),
                &inst.sizes,
                inst.capacity,
                ProblemKind::Ssg,
                Tracked::None,
            );
            write!(out, "SPECTRUM").map_err(io)?;
            for s in &o.sums {
                write!(out, " {s}").map_err(io)?;
            }
            writeln!(out).map_err(io)?;
            writeln!(out, "OPT {}", o.opt).map_err(io)?;
        }
        ProblemKind::Ssgw => {
            let tracked = match inst.graph {
                GraphForm::DiCo(_) => Tracked::Sources,
                GraphForm::Msp(_) => Tracked::Sinks,
                GraphForm::Edges(_) => Tracked::None,
            };
            let o = brute_force(
                &inst.digraph(),
                &inst.sizes,
                inst.capacity,
                ProblemKind::Ssgw,
                tracked,
            );
            write!(out, "SPECTRUM").map_err(io)?;
            if tracked == Tracked::None {
                for s in &o.sums {
                    write!(out, " {s}").map_err(io)?;
                }
            } else {
                for (s, t) in &o.pairs {
                    write!(out, " ({s},{t})").map_err(io)?;
                }
            }
            writeln!(out).map_err(io)?;
            writeln!(out, "OPT {}", o.opt).map_err(io)?;
        }
    }
    Ok(())
}

fn cmd_check(input: &InputArg, set: &str, out: &mut dyn Write) -> CmdResult {
    let inst = load(input)?;
    let mut chosen: Vec<ItemId> = Vec::new();
    for token in set.split_whitespace() {
        let id: ItemId = token
            .parse()
            .map_err(|_| invalid(format!("invalid item id {token:?}")))?;
        chosen.push(id);
    }
    match validate_solution(&inst, &chosen) {
        Ok(sol) => writeln!(out, "FEASIBLE {}", sol.total).map_err(io)?,
        Err(SolutionError::CapacityExceeded { total, .. }) => {
            writeln!(out, "INFEASIBLE capacity {total}").map_err(io)?;
        }
        Err(SolutionError::DigraphConstraint { witness }) => {
            writeln!(out, "INFEASIBLE digraph-constraint v{witness}").map_err(io)?;
        }
        Err(SolutionError::WeakDigraphConstraint { witness }) => {
            writeln!(out, "INFEASIBLE weak-digraph-constraint v{witness}").map_err(io)?;
        }
        Err(e @ (SolutionError::UnknownItem(_) | SolutionError::DuplicateItem(_))) => {
            return Err(invalid(e));
        }
    }
    Ok(())
}

fn cmd_gen(
    class: &str,
    n: usize,
    c: u64,
    max_size: u64,
    seed: u64,
    problem: &str,
    out: &mut dyn Write,
) -> CmdResult {
    let class = match class {
        "dico" => GenClass::Dico,
        "msp" => GenClass::Msp,
        other => return Err(invalid(format!("unknown class {other:?}, expected dico or msp"))),
    };
    let kind: ProblemKind = problem
        .parse()
        .map_err(|_| invalid("problem must be ssp, ssg or ssgw"))?;
    if n == 0 {
        return Err(invalid("need at least one item"));
    }
    if max_size == 0 || max_size > c {
        return Err(invalid("need c >= max-size >= 1"));
    }
    let inst = gen_instance(class, n, c, max_size, seed, kind);
    write!(out, "{}", inst.serialize()).map_err(io)
}

fn cmd_export_ip(input: &InputArg, out: &mut dyn Write) -> CmdResult {
    let inst = load(input)?;
    write!(out, "{}", inst.export_ip()).map_err(io)
}

fn cmd_decompose(input: &InputArg, out: &mut dyn Write) -> CmdResult {
    let inst = load(input)?;
    match crate::expr::decompose_msp(&inst.digraph()) {
        Ok(expr) => writeln!(out, "{expr}").map_err(io),
        Err(DecomposeError::NotADag) => Err(inapplicable("not-a-dag: the digraph has a cycle")),
        Err(DecomposeError::NotDecomposable) => Err(inapplicable(
            "not-decomposable: the digraph is not expressible with parallel and series composition",
        )),
    }
}
