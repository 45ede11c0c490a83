//! One-call solver dispatch over a parsed instance.

use crate::expr::DecomposeError;
use crate::instance::{GraphForm, Instance, ItemId, ProblemKind};
use crate::ssg::{
    solve_ssg_cograph, solve_ssg_general, solve_ssg_msp, solve_ssg_sp, TooManyComponents,
};
use crate::ssgw::{solve_ssgw_cograph, solve_ssgw_msp};
use crate::ssp::solve_ssp;
use thiserror::Error;

/// Why [`solve_instance`] could not produce an optimum.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("the weak rule solver needs a dico or msp expression graph")]
    WeakNeedsExpression,
    #[error(transparent)]
    TooManyComponents(#[from] TooManyComponents),
}

/// Solve with the most specific algorithm that applies and return the
/// optimal value together with one optimal item set.
///
/// Arc-list graphs under the digraph rule go through the series-parallel
/// pipeline when they decompose and otherwise fall back to component
/// enumeration, which is capped; the weak rule requires an expression graph.
pub fn solve_instance(inst: &Instance) -> Result<(u64, Vec<ItemId>), SolveError> {
    let c = inst.capacity;
    Ok(match (&inst.graph, inst.kind) {
        (_, ProblemKind::Ssp) => solve_ssp(&inst.sizes, c),
        (GraphForm::DiCo(x), ProblemKind::Ssg) => {
            let s = solve_ssg_cograph(x, &inst.sizes, c);
            (s.opt, s.solution)
        }
        (GraphForm::Msp(x), ProblemKind::Ssg) => {
            let s = solve_ssg_msp(x, &inst.sizes, c);
            (s.opt, s.solution)
        }
        (GraphForm::Edges(g), ProblemKind::Ssg) => {
            let direct = if g.is_acyclic() {
                match solve_ssg_sp(g, &inst.sizes, c) {
                    Ok(s) => Some((s.opt, s.solution)),
                    Err(DecomposeError::NotDecomposable) => None,
                    Err(DecomposeError::NotADag) => unreachable!("checked acyclic"),
                }
            } else {
                None
            };
            match direct {
                Some(res) => res,
                None => solve_ssg_general(g, &inst.sizes, c)?,
            }
        }
        (GraphForm::DiCo(x), ProblemKind::Ssgw) => {
            let s = solve_ssgw_cograph(x, &inst.sizes, c);
            (s.opt, s.solution)
        }
        (GraphForm::Msp(x), ProblemKind::Ssgw) => {
            let s = solve_ssgw_msp(x, &inst.sizes, c);
            (s.opt, s.solution)
        }
        (GraphForm::Edges(_), ProblemKind::Ssgw) => return Err(SolveError::WeakNeedsExpression),
    })
}
