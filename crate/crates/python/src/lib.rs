//! Python bindings: fields, rational functions, units, groups and the
//! fixing-group and fixed-field computations.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fixgroup_core::expr::{parse_field, parse_ratfun, parse_unit, parse_unit_list};
use fixgroup_core::fixing::StageError;
use fixgroup_core::moebius::DEFAULT_CLOSURE_CAP;
use fixgroup_core::{self as core, Error, FixingOptions, UnitOrder};

create_exception!(fixgroup_py, FixGroupError, PyValueError);

fn err(e: Error) -> PyErr {
    FixGroupError::new_err(e.to_string())
}

fn stage_err(e: StageError) -> PyErr {
    FixGroupError::new_err(e.to_string())
}

fn strings(p: &core::Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// A coefficient field given by a descriptor such as `"Q"`, `"Qi"`, `"GF(7)"`
/// or `"GF(2^3; 1,1,0,1)"`.
#[pyclass(frozen, skip_from_py_object, name = "Field")]
#[derive(Clone)]
struct PyField(core::Field);

#[pymethods]
impl PyField {
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        parse_field(descriptor).map(PyField).map_err(err)
    }

    /// Number of elements, or `None` for `Q` and `Q(i)`.
    #[getter]
    fn size(&self) -> Option<u64> {
        self.0.size()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.0)
    }
}

/// A reduced rational function.
#[pyclass(frozen, skip_from_py_object, name = "RatFun")]
#[derive(Clone)]
struct PyRatFun(core::RatFun);

#[pymethods]
impl PyRatFun {
    #[new]
    fn new(source: &str, field: &PyField) -> PyResult<Self> {
        parse_ratfun(source, &field.0).map(PyRatFun).map_err(err)
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Numerator coefficients, lowest degree first, as exact strings.
    #[getter]
    fn num(&self) -> Vec<String> {
        strings(self.0.num())
    }

    #[getter]
    fn den(&self) -> Vec<String> {
        strings(self.0.den())
    }

    /// `self ∘ inner`.
    fn compose(&self, inner: &PyRatFun) -> PyResult<PyRatFun> {
        self.0.compose(&inner.0).map(PyRatFun).map_err(err)
    }

    /// The `g` with `self = g ∘ h`, or `None`.
    fn left_factor(&self, h: &PyRatFun) -> Option<PyRatFun> {
        self.0.left_factor(&h.0).map(PyRatFun)
    }

    /// Whether `self` and `other` generate the same subfield.
    fn same_field(&self, other: &PyRatFun) -> bool {
        self.0.same_field(&other.0)
    }

    /// `(u, v, f')` with `f' = u ∘ self ∘ v` in normal form.
    fn normal_form(&self) -> PyResult<(PyUnit, PyUnit, PyRatFun)> {
        let nf = self.0.normal_form().map_err(err)?;
        Ok((PyUnit(nf.left), PyUnit(nf.right), PyRatFun(nf.normalized)))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFun('{}', {})", self.0, self.0.field())
    }
}

/// A Möbius unit `(a*x + b)/(c*x + d)`.
#[pyclass(frozen, skip_from_py_object, name = "Unit")]
#[derive(Clone)]
struct PyUnit(core::MoebiusUnit);

#[pymethods]
impl PyUnit {
    #[new]
    fn new(source: &str, field: &PyField) -> PyResult<Self> {
        parse_unit(source, &field.0).map(PyUnit).map_err(err)
    }

    /// Canonical matrix entries `(a, b, c, d)` as exact strings.
    #[getter]
    fn entries(&self) -> (String, String, String, String) {
        let [a, b, c, d] = self.0.entries().map(|e| e.to_string());
        (a, b, c, d)
    }

    fn compose(&self, other: &PyUnit) -> PyUnit {
        PyUnit(self.0.compose(&other.0))
    }

    fn inverse(&self) -> PyUnit {
        PyUnit(self.0.inverse())
    }

    /// Order of the unit, or `None` if it exceeds `cap`.
    #[pyo3(signature = (cap=DEFAULT_CLOSURE_CAP))]
    fn order(&self, cap: usize) -> Option<usize> {
        match self.0.order(cap) {
            UnitOrder::Finite(n) => Some(n),
            UnitOrder::Infinite => None,
        }
    }

    fn to_ratfun(&self) -> PyRatFun {
        PyRatFun(self.0.to_ratfun())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Unit('{}')", self.0)
    }
}

/// A finite group of units.
#[pyclass(frozen, skip_from_py_object, name = "Group")]
#[derive(Clone)]
struct PyGroup(core::UnitGroup);

#[pymethods]
impl PyGroup {
    /// The group generated by a `;`-separated list of units.
    #[staticmethod]
    #[pyo3(signature = (generators, field, cap=DEFAULT_CLOSURE_CAP))]
    fn closure(generators: &str, field: &PyField, cap: usize) -> PyResult<PyGroup> {
        let gens = parse_unit_list(generators, &field.0).map_err(err)?;
        core::UnitGroup::closure(&field.0, &gens, cap).map(PyGroup).map_err(err)
    }

    /// All units over a finite field, or only the affine ones.
    #[staticmethod]
    #[pyo3(signature = (field, linear_only=false))]
    fn enumerate(field: &PyField, linear_only: bool) -> PyResult<PyGroup> {
        core::UnitGroup::enumerate(&field.0, linear_only).map(PyGroup).map_err(err)
    }

    #[getter]
    fn elements(&self) -> Vec<PyUnit> {
        self.0.elements().iter().cloned().map(PyUnit).collect()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    /// Klein type, e.g. `"Cyclic(3)"` or `"Tetrahedral"`.
    fn classify(&self) -> String {
        self.0.classify().to_string()
    }

    /// `{v ∘ w ∘ v⁻¹ : w in self}`.
    fn conjugate(&self, v: &PyUnit) -> PyGroup {
        PyGroup(self.0.conjugate(&v.0))
    }

    fn contains(&self, u: &PyUnit) -> bool {
        self.0.contains(&u.0)
    }

    /// A generator of the field fixed by the group.
    fn fixed_field_generator(&self) -> PyResult<PyRatFun> {
        core::fixed_field_generator(&self.0).map(PyRatFun).map_err(err)
    }

    /// All elementary symmetric functions of the elements.
    fn symmetric_functions(&self) -> PyResult<Vec<PyRatFun>> {
        Ok(core::symmetric_functions(&self.0).map_err(err)?.into_iter().map(PyRatFun).collect())
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        let items: Vec<String> = self.0.elements().iter().map(|u| u.to_string()).collect();
        format!("{{{}}}", items.join(", "))
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, {})", self.0.order(), self.0.classify())
    }
}

/// The group of units `u` with `f ∘ u = f`.
#[pyfunction]
#[pyo3(signature = (f, max_extension=None))]
fn fixing_group(f: &PyRatFun, max_extension: Option<u32>) -> PyResult<PyGroup> {
    let mut opts = FixingOptions::default();
    if let Some(e) = max_extension {
        opts.max_extension = e;
    }
    Ok(PyGroup(core::fixing_group_traced(&f.0, opts).map_err(stage_err)?.group))
}

/// The fixing group by exhaustion over a finite field.
#[pyfunction]
fn brute_force_fixing_group(f: &PyRatFun) -> PyResult<PyGroup> {
    core::brute_force_fixing_group(&f.0).map(PyGroup).map_err(err)
}

/// Group, classification, normality flag, generator and left factor as a dict.
#[pyfunction]
fn fixing_report<'py>(py: Python<'py>, f: &PyRatFun) -> PyResult<Bound<'py, PyDict>> {
    let report = core::fixing_report(&f.0, FixingOptions::default()).map_err(stage_err)?;
    let dict = PyDict::new(py);
    dict.set_item("group", PyGroup(report.trace.group.clone()))?;
    dict.set_item("order", report.trace.group.order())?;
    dict.set_item("classification", report.classification.to_string())?;
    dict.set_item("normal_certified", report.normal_certified)?;
    dict.set_item("generator", report.generator.map(PyRatFun))?;
    dict.set_item("left_factor", report.left_factor.map(PyRatFun))?;
    dict.set_item("extension_degree", report.trace.extension_degree)?;
    Ok(dict)
}

/// `(f0, g_full)` generating the fields fixed by the affine and full unit
/// groups of a finite field.
#[pyfunction]
fn canonical_generators(field: &PyField) -> PyResult<(PyRatFun, PyRatFun)> {
    let (f0, g) = core::finite_field_canonical_generators(&field.0).map_err(err)?;
    Ok((PyRatFun(f0), PyRatFun(g)))
}

#[pymodule]
fn fixgroup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyRatFun>()?;
    m.add_class::<PyUnit>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(fixing_group, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_fixing_group, m)?)?;
    m.add_function(wrap_pyfunction!(fixing_report, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_generators, m)?)?;
    m.add("FixGroupError", m.py().get_type::<FixGroupError>())?;
    Ok(())
}
