use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lefkit_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Word", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWord(core::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str, genus: u32) -> PyResult<Self> {
        core::Word::parse(text, genus).map(PyWord).map_err(err)
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.0.genus()
    }

    fn concat(&self, other: &PyWord) -> PyResult<PyWord> {
        self.0.concat(&other.0).map(PyWord).map_err(err)
    }

    fn invert(&self) -> PyWord {
        PyWord(self.0.invert())
    }

    fn cyclic_reduce(&self) -> PyWord {
        PyWord(self.0.cyclic_reduce())
    }

    fn homology_class(&self) -> Vec<i64> {
        self.0.homology_class().coefficients
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &PyWord) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', {})", self.0, self.0.genus())
    }
}

#[pyclass(name = "MappingClass", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMappingClass(core::MappingClass);

#[pymethods]
impl PyMappingClass {
    /// `MappingClass("D(a2)^3 D(b1)^-1", 2)`; the last factor acts first.
    #[new]
    fn new(text: &str, genus: u32) -> PyResult<Self> {
        core::MappingClass::parse(text, genus)
            .map(PyMappingClass)
            .map_err(err)
    }

    fn apply(&self, word: &PyWord) -> PyResult<PyWord> {
        core::apply_mapping_class(&self.0, &word.0)
            .map(PyWord)
            .map_err(err)
    }

    fn inverse(&self) -> PyMappingClass {
        PyMappingClass(self.0.inverse())
    }

    /// Rows of the symplectic matrix acting on H1.
    fn h1_action(&self) -> PyResult<Vec<Vec<i64>>> {
        core::h1_action(&self.0)
            .map(|m| m.matrix().to_rows())
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "AbelianInvariants", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAbelianInvariants(core::AbelianInvariants);

#[pymethods]
impl PyAbelianInvariants {
    #[getter]
    fn rank(&self) -> usize {
        self.0.rank
    }

    #[getter]
    fn torsion(&self) -> Vec<i64> {
        self.0.torsion.clone()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Presentation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation(core::Presentation);

#[pymethods]
impl PyPresentation {
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    #[getter]
    fn relators(&self) -> Vec<String> {
        self.0
            .relators()
            .iter()
            .map(|r| self.0.relator_to_string(r))
            .collect()
    }

    #[pyo3(signature = (max_passes = 8))]
    fn simplify(&self, max_passes: usize) -> PyPresentation {
        PyPresentation(core::tietze_simplify(&self.0, max_passes))
    }

    fn abelianization(&self) -> PyResult<PyAbelianInvariants> {
        core::abelianization(&self.0)
            .map(PyAbelianInvariants)
            .map_err(err)
    }

    fn relation_matrix(&self) -> Vec<Vec<i64>> {
        core::relation_matrix(&self.0).to_rows()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "InvariantReport", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInvariantReport(core::InvariantReport);

#[pymethods]
impl PyInvariantReport {
    #[getter]
    fn chi(&self) -> i64 {
        self.0.chi
    }

    #[getter]
    fn sigma(&self) -> i64 {
        self.0.sigma
    }

    #[getter]
    fn b1(&self) -> i64 {
        self.0.b1
    }

    #[getter]
    fn b2(&self) -> i64 {
        self.0.b2
    }

    #[getter]
    fn b2_plus(&self) -> i64 {
        self.0.b2_plus
    }

    #[getter]
    fn b2_minus(&self) -> i64 {
        self.0.b2_minus
    }

    #[getter]
    fn h1(&self) -> PyAbelianInvariants {
        PyAbelianInvariants(self.0.h1.clone())
    }

    fn reverse(&self) -> PyInvariantReport {
        PyInvariantReport(core::orientation_reverse(&self.0))
    }

    #[pyo3(signature = (degree, b1 = 1))]
    fn cover(&self, degree: i64, b1: i64) -> PyResult<PyInvariantReport> {
        core::cover_invariants(&self.0, degree, b1)
            .map(PyInvariantReport)
            .map_err(err)
    }

    /// Verdict lines, one per class. Without `pi1_infinite_cyclic` the
    /// fundamental group is described by this report's H1.
    #[pyo3(signature = (pi1_infinite_cyclic = false))]
    fn kodaira_exclusion(&self, pi1_infinite_cyclic: bool) -> Vec<String> {
        let pi1 = if pi1_infinite_cyclic {
            core::Pi1Class::InfiniteCyclic
        } else {
            match (self.0.h1.rank, self.0.h1.torsion.as_slice()) {
                (1, &[n]) => core::Pi1Class::RankOneWithTorsion(n),
                (rank, torsion) => core::Pi1Class::Other {
                    rank,
                    torsion: torsion.to_vec(),
                },
            }
        };
        core::kodaira_exclusion(&self.0, &pi1)
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Factorization", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFactorization(core::MonodromyFactorization);

#[pymethods]
impl PyFactorization {
    #[staticmethod]
    fn matsumoto() -> Self {
        PyFactorization(core::matsumoto_factorization())
    }

    #[staticmethod]
    fn bn(n: i64) -> PyResult<Self> {
        core::build_bn(n).map(PyFactorization).map_err(err)
    }

    #[staticmethod]
    fn empty(genus: u32) -> PyResult<Self> {
        core::MonodromyFactorization::empty(genus)
            .map(PyFactorization)
            .map_err(err)
    }

    /// Parses the text format; kind warnings are dropped.
    #[staticmethod]
    fn from_dsl(text: &str) -> PyResult<Self> {
        core::parse_factorization(text)
            .map(|p| PyFactorization(p.factorization))
            .map_err(err)
    }

    fn to_dsl(&self) -> String {
        core::to_dsl(&self.0)
    }

    #[getter]
    fn fiber_genus(&self) -> u32 {
        self.0.fiber_genus()
    }

    fn cycles(&self) -> Vec<(String, String)> {
        self.0
            .cycles()
            .iter()
            .map(|c| (c.word.to_string(), c.kind.to_string()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn fiber_sum(
        &self,
        other: &PyFactorization,
        twist: &PyMappingClass,
    ) -> PyResult<PyFactorization> {
        core::twisted_fiber_sum(&self.0, &other.0, &twist.0)
            .map(PyFactorization)
            .map_err(err)
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = core::validate(&self.0).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("h1_monodromy_trivial", v.h1_monodromy_trivial)?;
        d.set_item("kind_consistent", v.kind_consistent)?;
        d.set_item("offending_indices", v.offending_indices)?;
        Ok(d)
    }

    fn euler_characteristic(&self) -> i64 {
        core::euler_characteristic(&self.0)
    }

    #[pyo3(signature = (assume_hyperelliptic = false))]
    fn signature(&self, assume_hyperelliptic: bool) -> PyResult<i64> {
        core::signature_hyperelliptic(&self.0, assume_hyperelliptic).map_err(err)
    }

    fn pi1(&self) -> PyResult<PyPresentation> {
        core::total_space_pi1(&self.0)
            .map(PyPresentation)
            .map_err(err)
    }

    fn h1(&self) -> PyResult<PyAbelianInvariants> {
        core::total_space_pi1(&self.0)
            .and_then(|p| core::abelianization(&p))
            .map(PyAbelianInvariants)
            .map_err(err)
    }

    #[pyo3(signature = (assume_hyperelliptic = false))]
    fn invariants(&self, assume_hyperelliptic: bool) -> PyResult<PyInvariantReport> {
        core::invariant_report(&self.0, assume_hyperelliptic)
            .map(PyInvariantReport)
            .map_err(err)
    }
}

#[pyfunction]
fn twist_word(curve: &str, power: i64, word: &PyWord) -> PyResult<PyWord> {
    let g = core::Generator::parse_name(curve)
        .ok_or_else(|| PyValueError::new_err(format!("unknown generator `{curve}`")))?;
    core::twist_word(g, power, &word.0).map(PyWord).map_err(err)
}

#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<i64>>) -> PyResult<Vec<i64>> {
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    core::smith_normal_form(&core::IntegerMatrix::from_rows(rows)).map_err(err)
}

#[pymodule]
fn lefkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyMappingClass>()?;
    m.add_class::<PyAbelianInvariants>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyInvariantReport>()?;
    m.add_class::<PyFactorization>()?;
    m.add_function(wrap_pyfunction!(twist_word, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    Ok(())
}
