//! Python bindings for the ssdc solvers.
//!
//! The module exposes one class, `Instance`, constructed from the same text
//! format the command line tool reads, plus a `generate` function mirroring
//! `ssdc gen`. Invalid input raises `ValueError`.

// The conversion clippy flags sits in pyo3's generated trampolines.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use ssdc::gen::{gen_instance, GenClass};
use ssdc::instance::{parse_instance, validate_solution, ItemId, ProblemKind, SolutionError};
use ssdc::solve::solve_instance;

#[pyclass(frozen, name = "Instance")]
struct PyInstance {
    inner: ssdc::instance::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_instance(text)
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Problem kind: "ssp", "ssg" or "ssgw".
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind.to_string()
    }

    #[getter]
    fn capacity(&self) -> u64 {
        self.inner.capacity
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Item sizes in item-id order, sizes[0] belonging to item 1.
    #[getter]
    fn sizes(&self) -> Vec<u64> {
        self.inner.sizes.values().to_vec()
    }

    /// Arcs of the constraint digraph as (tail, head) pairs.
    fn arcs(&self) -> Vec<(u32, u32)> {
        self.inner.digraph().arcs()
    }

    /// Optimal value and one optimal item set.
    fn solve(&self) -> PyResult<(u64, Vec<ItemId>)> {
        solve_instance(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Feasibility report for an item set: "FEASIBLE <total>" or an
    /// "INFEASIBLE ..." line naming the violated constraint.
    fn check(&self, chosen: Vec<ItemId>) -> PyResult<String> {
        match validate_solution(&self.inner, &chosen) {
            Ok(sol) => Ok(format!("FEASIBLE {}", sol.total)),
            Err(SolutionError::CapacityExceeded { total, .. }) => {
                Ok(format!("INFEASIBLE capacity {total}"))
            }
            Err(SolutionError::DigraphConstraint { witness }) => {
                Ok(format!("INFEASIBLE digraph-constraint v{witness}"))
            }
            Err(SolutionError::WeakDigraphConstraint { witness }) => {
                Ok(format!("INFEASIBLE weak-digraph-constraint v{witness}"))
            }
            Err(e) => Err(PyValueError::new_err(e.to_string())),
        }
    }

    /// The instance in its text format.
    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    /// The instance as a 0/1 integer program in LP format.
    fn export_ip(&self) -> String {
        self.inner.export_ip()
    }

    /// A parallel/series expression for the constraint digraph.
    fn decompose(&self) -> PyResult<String> {
        ssdc::expr::decompose_msp(&self.inner.digraph())
            .map(|x| x.to_string())
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(kind={}, n={}, capacity={})",
            self.inner.kind,
            self.inner.n(),
            self.inner.capacity
        )
    }
}

/// Generate a random instance; equal arguments give equal instances.
#[pyfunction]
#[pyo3(signature = (class, n, capacity, max_size, seed, problem = "ssg"))]
fn generate(
    class: &str,
    n: usize,
    capacity: u64,
    max_size: u64,
    seed: u64,
    problem: &str,
) -> PyResult<PyInstance> {
    let class = match class {
        "dico" => GenClass::Dico,
        "msp" => GenClass::Msp,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown class {other:?}, expected dico or msp"
            )))
        }
    };
    let kind: ProblemKind = problem
        .parse()
        .map_err(|_| PyValueError::new_err("problem must be ssp, ssg or ssgw"))?;
    if n == 0 {
        return Err(PyValueError::new_err("need at least one item"));
    }
    if max_size == 0 || max_size > capacity {
        return Err(PyValueError::new_err("need capacity >= max_size >= 1"));
    }
    Ok(PyInstance {
        inner: gen_instance(class, n, capacity, max_size, seed, kind),
    })
}

#[pymodule]
fn ssdc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
