//! Python bindings. Sequences are built from the same spec strings the
//! command-line tool accepts; coefficients come back as `fractions.Fraction`
//! and reports as plain dicts.

use std::collections::BTreeMap;

use binomid::classify as cls;
use binomid::verify;
use binomid::{ExactRational, Sequence};
use binomid_cli::commands::{classify_battery, PropertyName};
use binomid_cli::render::to_json_line;
use binomid_cli::{parse_seqspec, CliError};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

create_exception!(pybinomid, BinomidError, PyValueError);

fn core_err(e: binomid::Error) -> PyErr {
    BinomidError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    BinomidError::new_err(e.to_string())
}

/// An integer sequence, 1-indexed.
#[pyclass(name = "Sequence", module = "pybinomid", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySequence {
    inner: Sequence,
}

#[pymethods]
impl PySequence {
    /// Parses a sequence spec such as `"fib"`, `"lucas:1,-1"` or
    /// `"product(I,cpow:2)"`.
    #[new]
    #[pyo3(signature = (spec, bfile_skip = 0))]
    fn new(spec: &str, bfile_skip: usize) -> PyResult<Self> {
        let parsed = parse_seqspec(spec).map_err(|e| BinomidError::new_err(e.render(spec)))?;
        Ok(Self {
            inner: parsed.evaluate_with(bfile_skip).map_err(cli_err)?,
        })
    }

    /// A finite sequence from explicit nonzero terms.
    #[staticmethod]
    fn from_list(values: Vec<BigInt>) -> PyResult<Self> {
        Ok(Self {
            inner: Sequence::from_list(values).map_err(core_err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    /// Number of terms, or `None` for an unbounded sequence.
    #[getter]
    fn length(&self) -> Option<usize> {
        self.inner.len()
    }

    fn term(&self, n: usize) -> PyResult<BigInt> {
        self.inner.term(n).map_err(core_err)
    }

    fn prefix(&self, n: usize) -> PyResult<Vec<BigInt>> {
        self.inner.prefix(n).map_err(core_err)
    }

    fn row(&self, m: usize) -> PyResult<Self> {
        Ok(Self {
            inner: binomid::triangle::row_seq(&self.inner, m).map_err(core_err)?,
        })
    }

    fn column(&self, j: usize) -> PyResult<Self> {
        Ok(Self {
            inner: binomid::triangle::col_seq(&self.inner, j).map_err(core_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Sequence({:?})", self.inner.name())
    }

    fn __str__(&self) -> String {
        self.inner.name().to_string()
    }
}

/// Accepts either a `Sequence` or a spec string.
fn seq_arg(obj: &Bound<'_, PyAny>) -> PyResult<Sequence> {
    if let Ok(s) = obj.cast::<PySequence>() {
        return Ok(s.get().inner.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        let spec = s.to_str()?;
        return Ok(PySequence::new(spec, 0)?.inner);
    }
    Err(pyo3::exceptions::PyTypeError::new_err(
        "expected a Sequence or a spec string",
    ))
}

fn fraction<'py>(py: Python<'py>, q: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, row: &[ExactRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    row.iter().map(|q| fraction(py, q)).collect()
}

/// Round-trips a serializable value through JSON into Python objects.
fn to_py<'py, T: Serialize + ?Sized>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?
        .getattr("loads")?
        .call1((to_json_line(value),))
}

/// `[n k]_f` as a `Fraction`.
#[pyfunction]
fn fbinom<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    n: usize,
    k: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let q = binomid::fbinom(&seq_arg(f)?, n, k).map_err(core_err)?;
    fraction(py, &q)
}

/// `f_1 f_2 ... f_n`.
#[pyfunction]
fn ffactorial(f: &Bound<'_, PyAny>, n: usize) -> PyResult<BigInt> {
    binomid::ffactorial(&seq_arg(f)?, n).map_err(core_err)
}

/// Rows `0..=depth` of the triangle, entries as `Fraction`.
#[pyfunction]
fn triangle<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    depth: usize,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let tri = binomid::triangle(&seq_arg(f)?, depth).map_err(core_err)?;
    tri.rows().iter().map(|r| fractions(py, r)).collect()
}

/// Slices `0..=depth` of the pyramid; slice `m` has rows `0..=m`.
#[pyfunction]
fn pyramid<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    depth: usize,
) -> PyResult<Vec<Vec<Vec<Bound<'py, PyAny>>>>> {
    let pyr = binomid::pyramid(&seq_arg(f)?, depth).map_err(core_err)?;
    pyr.slices()
        .iter()
        .map(|t| t.rows().iter().map(|r| fractions(py, r)).collect())
        .collect()
}

fn property_name(s: &str) -> PyResult<PropertyName> {
    Ok(match s.replace('-', "_").as_str() {
        "binomid" => PropertyName::Binomid,
        "binomid_at_level" => PropertyName::BinomidAtLevel,
        "binomid_every_level" => PropertyName::BinomidEveryLevel,
        "divisor_chain" => PropertyName::DivisorChain,
        "divisible" => PropertyName::Divisible,
        "gcd_sequence" => PropertyName::GcdSequence,
        "dual_gcd" => PropertyName::DualGcd,
        "divisor_product" => PropertyName::DivisorProduct,
        "multiplicative" => PropertyName::Multiplicative,
        "homomorphic" => PropertyName::Homomorphic,
        _ => return Err(PyValueError::new_err(format!("unknown property '{s}'"))),
    })
}

/// Classifies `f` up to `bound`. Returns a list of report dicts with keys
/// `property`, `bound`, `effective_bound`, `verdict` and `witness`.
#[pyfunction]
#[pyo3(signature = (f, bound, levels = 3, only = None))]
fn classify<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    bound: usize,
    levels: usize,
    only: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let only = only
        .unwrap_or_default()
        .iter()
        .map(|s| property_name(s))
        .collect::<PyResult<Vec<_>>>()?;
    let (reports, _) = classify_battery(&seq_arg(f)?, bound, levels, &only).map_err(core_err)?;
    to_py(py, &reports)
}

/// Binomid check at a single level `c` of the pyramid.
#[pyfunction]
fn binomid_at_level<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    c: usize,
    bound: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &cls::is_binomid_at_level(&seq_arg(f)?, c, bound).map_err(core_err)?,
    )
}

/// The sequence `g` with `f_n = prod_{d | n} g_d`, as `Fraction`s.
#[pyfunction]
fn mobius_invert<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    count: usize,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let g = cls::mobius_invert(&seq_arg(f)?, count).map_err(core_err)?;
    fractions(py, &g)
}

/// Exponents of `[n k]` on slice `m` of the generic pyramid, as `{r: e}`.
#[pyfunction]
fn generic_pyramid_entry(m: usize, n: usize, k: usize) -> PyResult<BTreeMap<usize, i64>> {
    Ok(verify::generic_pyramid_entry(m, n, k)
        .map_err(core_err)?
        .iter()
        .collect())
}

/// Runs one named checker. Returns a dict with `check`, `cases` and
/// `violation`.
#[pyfunction]
#[pyo3(signature = (name, *args))]
fn check<'py>(
    py: Python<'py>,
    name: &str,
    args: &Bound<'py, pyo3::types::PyTuple>,
) -> PyResult<Bound<'py, PyAny>> {
    let int = |i: usize| -> PyResult<usize> { args.get_item(i)?.extract::<usize>() };
    let report = match name {
        "delta_pattern" => verify::check_delta_pattern(int(0)?, int(1)?, int(2)?),
        "window_minimality" => verify::check_window_minimality(int(0)?, int(1)?, int(2)?, int(3)?),
        "generic_pyramid" => verify::check_generic_pyramid(int(0)?, int(1)?),
        "symmetry" => verify::check_symmetry(&seq_arg(&args.get_item(0)?)?),
        "slice_identity" => {
            verify::check_slice_identity(&seq_arg(&args.get_item(0)?)?, int(1)?, int(2)?, int(3)?)
        }
        "determinant" => verify::check_determinant_identity(int(0)?, int(1)?, int(2)?),
        "determinant_range" => verify::check_determinant_range(int(0)?, int(1)?, int(2)?),
        "cyclotomic_product" => {
            verify::check_cyclotomic_product(int(0)? as u64, args.get_item(1)?.extract::<i64>()?)
        }
        "hm" => verify::check_hm_identity(int(0)?, int(1)?, int(2)?),
        _ => return Err(PyValueError::new_err(format!("unknown check '{name}'"))),
    }
    .map_err(core_err)?;
    to_py(py, &report)
}

/// Checks the two-term recurrence step for `[n+1 k]_f`. Missing `u`, `v`
/// are solved for.
#[pyfunction]
#[pyo3(signature = (f, n, k, u = None, v = None))]
fn recurrence_step<'py>(
    py: Python<'py>,
    f: &Bound<'py, PyAny>,
    n: usize,
    k: usize,
    u: Option<BigInt>,
    v: Option<BigInt>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &verify::check_recurrence_step(&seq_arg(f)?, n, k, u, v).map_err(core_err)?,
    )
}

/// Canonical form of a sequence spec.
#[pyfunction]
fn canonical_spec(spec: &str) -> PyResult<String> {
    parse_seqspec(spec)
        .map(|s| s.to_string())
        .map_err(|e| BinomidError::new_err(e.render(spec)))
}

#[pymodule]
fn pybinomid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BinomidError", m.py().get_type::<BinomidError>())?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(fbinom, m)?)?;
    m.add_function(wrap_pyfunction!(ffactorial, m)?)?;
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(pyramid, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(binomid_at_level, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_invert, m)?)?;
    m.add_function(wrap_pyfunction!(generic_pyramid_entry, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_step, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_spec, m)?)?;
    Ok(())
}
