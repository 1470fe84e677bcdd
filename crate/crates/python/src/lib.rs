//! Python bindings: lattices, transfer systems, saturated covers, the
//! characteristic function and the fusion counts.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use transys::characteristic::{count_interior_operators, enumerate_interior_operators, fiber_decomposition};
use transys::fusion;
use transys::matchstick::{enumerate_covers, system_to_cover};
use transys::{chi, Error, Lattice, LatticeJson, TrLattice, TransferSystem};

create_exception!(transys_py, GuardError, PyException, "A size guard refused the request.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } => GuardError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite bounded lattice.
#[pyclass(name = "Lattice", module = "transys_py", frozen)]
struct PyLattice(Arc<Lattice>);

fn wrap(l: Result<Lattice, Error>) -> PyResult<PyLattice> {
    l.map(|l| PyLattice(Arc::new(l))).map_err(py_err)
}

#[pymethods]
impl PyLattice {
    #[staticmethod]
    fn chain(m: usize) -> PyResult<Self> {
        wrap(Lattice::chain(m))
    }

    #[staticmethod]
    fn boolean_cube(k: usize) -> PyResult<Self> {
        wrap(Lattice::boolean_cube(k))
    }

    #[staticmethod]
    fn rectangle(m: usize, n: usize) -> PyResult<Self> {
        wrap(Lattice::rectangle(m, n))
    }

    #[staticmethod]
    fn product(p: &PyLattice, q: &PyLattice) -> PyResult<Self> {
        wrap(Lattice::product(&p.0, &q.0))
    }

    #[staticmethod]
    fn fusion(p: &PyLattice, q: &PyLattice) -> PyResult<Self> {
        wrap(Lattice::fusion(&p.0, &q.0))
    }

    #[staticmethod]
    fn iterated_fusion(p: &PyLattice, k: usize) -> PyResult<Self> {
        wrap(Lattice::iterated_fusion(&p.0, k))
    }

    /// Subgroup lattice of `C_p × C_p`.
    #[staticmethod]
    fn sub_cp_cp(p: u64) -> PyResult<Self> {
        wrap(Lattice::sub_cp_cp(p))
    }

    #[staticmethod]
    fn pentagon() -> Self {
        PyLattice(Arc::new(Lattice::pentagon()))
    }

    /// Order generated by `pairs` on `0..n`.
    #[staticmethod]
    fn from_order(n: usize, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        wrap(Lattice::build_from_order(n, &pairs))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: LatticeJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        wrap(Lattice::from_json(&json))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("plain JSON values")
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Lattice(n={}, covers={})", self.0.len(), self.0.covers().len())
    }

    #[getter]
    fn bottom(&self) -> usize {
        self.0.bottom()
    }

    #[getter]
    fn top(&self) -> usize {
        self.0.top()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    #[getter]
    fn covers(&self) -> Vec<(usize, usize)> {
        self.0.covers().to_vec()
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check(&[x, y])?;
        Ok(self.0.leq(x, y))
    }

    fn meet(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(&[x, y])?;
        Ok(self.0.meet(x, y))
    }

    fn join(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(&[x, y])?;
        Ok(self.0.join(x, y))
    }

    fn is_modular(&self) -> bool {
        self.0.is_modular()
    }

    fn is_isomorphic(&self, other: &PyLattice) -> PyResult<bool> {
        self.0.is_isomorphic(&other.0).map_err(py_err)
    }

    fn hasse_dot(&self) -> String {
        self.0.hasse_dot()
    }

    /// All transfer systems, in canonical order.
    fn transfer_systems(&self) -> PyResult<Vec<PyTransferSystem>> {
        let tr = TrLattice::enumerate_all(&self.0).map_err(py_err)?;
        Ok(tr.systems().iter().cloned().map(PyTransferSystem).collect())
    }

    fn count_transfer_systems(&self) -> PyResult<usize> {
        Ok(TrLattice::enumerate_all(&self.0).map_err(py_err)?.len())
    }

    /// Saturated covers as lists of `(lower, upper)` cover edges.
    fn saturated_covers(&self) -> PyResult<Vec<Vec<(usize, usize)>>> {
        let covers = enumerate_covers(&self.0).map_err(py_err)?;
        Ok(covers
            .iter()
            .map(|q| q.edges().iter().map(|e| (e.lower, e.upper)).collect())
            .collect())
    }

    fn count_interior_operators(&self) -> PyResult<u64> {
        count_interior_operators(&self.0).map_err(py_err)
    }

    /// Interior operators as image lists.
    fn interior_operators(&self) -> PyResult<Vec<Vec<usize>>> {
        let ops = enumerate_interior_operators(&self.0).map_err(py_err)?;
        Ok(ops.iter().map(|f| f.image().to_vec()).collect())
    }

    /// Fibers of the characteristic function as dicts with keys
    /// `operator`, `least`, `greatest`, `size`.
    fn fibers<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let fibers = fiber_decomposition(&self.0).map_err(py_err)?;
        fibers
            .iter()
            .map(|f| {
                let d = PyDict::new(py);
                d.set_item("operator", f.operator.image().to_vec())?;
                d.set_item("least", f.least.pairs())?;
                d.set_item("greatest", f.greatest.pairs())?;
                d.set_item("size", f.members.len())?;
                Ok(d)
            })
            .collect()
    }
}

impl PyLattice {
    fn check(&self, xs: &[usize]) -> PyResult<()> {
        match xs.iter().find(|&&x| x >= self.0.len()) {
            Some(&x) => Err(py_err(Error::OutOfRange { index: x, n: self.0.len() })),
            None => Ok(()),
        }
    }
}

/// A transfer system on a lattice.
#[pyclass(name = "TransferSystem", module = "transys_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTransferSystem(TransferSystem);

#[pymethods]
impl PyTransferSystem {
    /// Least transfer system containing `pairs`.
    #[staticmethod]
    fn generate(lattice: &PyLattice, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        TransferSystem::generate(&lattice.0, &pairs).map(Self).map_err(py_err)
    }

    /// `pairs` must already be a transfer system (reflexive pairs implied).
    #[staticmethod]
    fn validate(lattice: &PyLattice, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        TransferSystem::validate(&lattice.0, &pairs)
            .map(Self)
            .map_err(|v| PyValueError::new_err(v.to_string()))
    }

    #[staticmethod]
    fn discrete(lattice: &PyLattice) -> Self {
        Self(TransferSystem::discrete(&lattice.0))
    }

    #[staticmethod]
    fn complete(lattice: &PyLattice) -> Self {
        Self(TransferSystem::complete(&lattice.0))
    }

    #[getter]
    fn lattice(&self) -> PyLattice {
        PyLattice(Arc::clone(self.0.lattice()))
    }

    /// Non-reflexive relations.
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.pairs()
    }

    fn relates(&self, x: usize, y: usize) -> bool {
        x < self.0.lattice().len() && y < self.0.lattice().len() && self.0.relates(x, y)
    }

    fn is_saturated(&self) -> bool {
        self.0.is_saturated()
    }

    fn saturated_hull(&self) -> Self {
        Self(self.0.saturated_hull())
    }

    fn minimal_fibrant(&self) -> usize {
        self.0.minimal_fibrant()
    }

    /// Image list of the characteristic interior operator.
    fn chi(&self) -> Vec<usize> {
        chi(&self.0).image().to_vec()
    }

    /// Cover edges of a saturated system on a modular lattice.
    fn cover(&self) -> PyResult<Vec<(usize, usize)>> {
        let q = system_to_cover(&self.0).map_err(py_err)?;
        Ok(q.edges().iter().map(|e| (e.lower, e.upper)).collect())
    }

    fn le(&self, other: &Self) -> bool {
        self.0.le(&other.0)
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        self.0.meet(&other.0).map(Self).map_err(py_err)
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        self.0.join(&other.0).map(Self).map_err(py_err)
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("TransferSystem({})", self.0)
    }
}

#[pyfunction]
fn catalan(n: u64) -> BigUint {
    fusion::catalan(n)
}

/// `|Tr(Sub(C_p × C_p))|` from the closed form.
#[pyfunction]
fn tr_rank_two(p: u64) -> PyResult<BigUint> {
    fusion::tr_rank_two(p).map_err(py_err)
}

#[pyfunction]
fn tr_iterated_fusion_closed_form(n: u64) -> BigUint {
    fusion::tr_iterated_fusion_closed_form(n)
}

#[pyfunction]
fn count_tr_chain_fusion(m: u64, n: u64) -> BigUint {
    fusion::count_tr_chain_fusion(m, n)
}

/// Terms of the fusion recursion, as a dict ending in `total`.
#[pyfunction]
fn count_tr_fusion<'py>(py: Python<'py>, p: &PyLattice, q: &PyLattice) -> PyResult<Bound<'py, PyDict>> {
    let b = fusion::count_tr_fusion(&p.0, &q.0).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("top_term", b.top_term)?;
    d.set_item("bottom_term", b.bottom_term)?;
    d.set_item("middle_terms_p", b.middle_terms_p)?;
    d.set_item("middle_terms_q", b.middle_terms_q)?;
    d.set_item("total", b.total)?;
    Ok(d)
}

#[pymodule]
fn transys_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyTransferSystem>()?;
    m.add("GuardError", m.py().get_type::<GuardError>())?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(tr_rank_two, m)?)?;
    m.add_function(wrap_pyfunction!(tr_iterated_fusion_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(count_tr_chain_fusion, m)?)?;
    m.add_function(wrap_pyfunction!(count_tr_fusion, m)?)?;
    Ok(())
}
