//! Python bindings: parsing, type checking, both normalizers and the
//! equality decision, over the textual surface syntax.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nulam_core::harness::{selftest as run_selftest, SelftestConfig};
use nulam_core::nbe::norm as nbe_norm;
use nulam_core::staged::{staged_norm, staged_trace, StagedError, DEFAULT_FUEL};
use nulam_core::surface::{pretty_nf, pretty_term, pretty_wh, read_term, Scope, SurfaceError};
use nulam_core::syntax::{nf_eq, Nf, Term as CoreTerm, Ty, DEFAULT_BASES};

create_exception!(nulam, NulamError, PyValueError, "Base class for errors raised by nulam.");
create_exception!(nulam, ParseError, NulamError, "The input is not syntactically valid.");
create_exception!(nulam, TypeCheckError, NulamError, "The input does not elaborate to a well-typed term.");
create_exception!(nulam, FuelExhausted, NulamError, "The staged normalizer ran out of fuel.");

fn surface_err(e: SurfaceError) -> PyErr {
    match e {
        SurfaceError::Syntax(_) => ParseError::new_err(e.to_string()),
        SurfaceError::Elab(_) => TypeCheckError::new_err(e.to_string()),
    }
}

fn staged_err(e: StagedError) -> PyErr {
    match e {
        StagedError::FuelExhausted => FuelExhausted::new_err(e.to_string()),
        StagedError::IllTyped(_) => TypeCheckError::new_err(e.to_string()),
        StagedError::ShapeViolation(_) => NulamError::new_err(e.to_string()),
    }
}

/// A well-typed term together with the context it was read in.
#[pyclass(frozen, module = "nulam")]
struct Term {
    scope: Scope,
    term: CoreTerm,
    ty: Ty,
}

#[pymethods]
impl Term {
    #[new]
    #[pyo3(signature = (expr, context = "", bases = DEFAULT_BASES))]
    fn new(expr: &str, context: &str, bases: u32) -> PyResult<Term> {
        let (scope, term, ty) = read_term(bases, context, expr).map_err(surface_err)?;
        Ok(Term { scope, term, ty })
    }

    #[getter(r#type)]
    fn ty(&self) -> String {
        self.ty.to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.term.size()
    }

    /// Normalizes with `engine` ("nbe" or "staged").
    #[pyo3(signature = (engine = "nbe", fuel = DEFAULT_FUEL))]
    fn norm(&self, engine: &str, fuel: u64) -> PyResult<NormalForm> {
        let nf = match engine {
            "nbe" => nbe_norm(self.scope.ctx(), &self.term).map_err(|e| TypeCheckError::new_err(e.to_string()))?,
            "staged" => staged_norm(self.scope.ctx(), &self.term, fuel).map_err(staged_err)?,
            other => return Err(PyValueError::new_err(format!("unknown engine {other:?}"))),
        };
        Ok(NormalForm { names: self.scope.names().to_vec(), nf })
    }

    fn __str__(&self) -> String {
        pretty_term(self.scope.names(), &self.term)
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.__str__())
    }
}

/// A standard form; equality is α-equivalence.
#[pyclass(frozen, eq, module = "nulam")]
struct NormalForm {
    names: Vec<String>,
    nf: Nf,
}

impl PartialEq for NormalForm {
    fn eq(&self, other: &NormalForm) -> bool {
        nf_eq(&self.nf, &other.nf)
    }
}

#[pymethods]
impl NormalForm {
    fn __str__(&self) -> String {
        pretty_nf(&self.names, &self.nf)
    }

    fn __repr__(&self) -> String {
        format!("NormalForm({:?})", self.__str__())
    }
}

/// The outcome of `decide_eq`.
#[pyclass(frozen, get_all, module = "nulam")]
struct Verdict {
    convertible: bool,
    left: String,
    right: String,
}

#[pymethods]
impl Verdict {
    fn __bool__(&self) -> bool {
        self.convertible
    }

    fn __repr__(&self) -> String {
        if self.convertible {
            format!("Verdict(convertible, {:?})", self.left)
        } else {
            format!("Verdict(distinct, {:?}, {:?})", self.left, self.right)
        }
    }
}

/// The type of `expr`, printed.
#[pyfunction]
#[pyo3(signature = (expr, context = "", bases = DEFAULT_BASES))]
fn check(expr: &str, context: &str, bases: u32) -> PyResult<String> {
    Ok(Term::new(expr, context, bases)?.ty())
}

/// The normal form of `expr`, printed.
#[pyfunction]
#[pyo3(signature = (expr, context = "", engine = "nbe", fuel = DEFAULT_FUEL, bases = DEFAULT_BASES))]
fn norm(expr: &str, context: &str, engine: &str, fuel: u64, bases: u32) -> PyResult<String> {
    Ok(Term::new(expr, context, bases)?.norm(engine, fuel)?.__str__())
}

/// Decides whether two expressions of the same type are equal.
#[pyfunction]
#[pyo3(signature = (left, right, context = "", bases = DEFAULT_BASES))]
fn decide_eq(left: &str, right: &str, context: &str, bases: u32) -> PyResult<Verdict> {
    let (l, r) = (Term::new(left, context, bases)?, Term::new(right, context, bases)?);
    if l.ty != r.ty {
        return Err(TypeCheckError::new_err(format!("the expressions have different types: {} and {}", l.ty, r.ty)));
    }
    let verdict =
        nulam_core::decide_eq(l.scope.ctx(), &l.term, &r.term).map_err(|e| TypeCheckError::new_err(e.to_string()))?;
    let names = l.scope.names();
    Ok(match verdict {
        nulam_core::EqVerdict::Convertible(nf) => {
            let s = pretty_nf(names, &nf);
            Verdict { convertible: true, left: s.clone(), right: s }
        }
        nulam_core::EqVerdict::Distinct(a, b) => {
            Verdict { convertible: false, left: pretty_nf(names, &a), right: pretty_nf(names, &b) }
        }
    })
}

/// The stages of the staged normalizer and the NbE result, as a dict.
#[pyfunction]
#[pyo3(signature = (expr, context = "", fuel = DEFAULT_FUEL, bases = DEFAULT_BASES))]
fn trace<'py>(py: Python<'py>, expr: &str, context: &str, fuel: u64, bases: u32) -> PyResult<Bound<'py, PyDict>> {
    let t = Term::new(expr, context, bases)?;
    let (ctx, names) = (t.scope.ctx(), t.scope.names());
    let tr = staged_trace(ctx, &t.term, fuel).map_err(staged_err)?;
    let nbe = nbe_norm(ctx, &t.term).map_err(|e| TypeCheckError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    d.set_item("type", t.ty.to_string())?;
    d.set_item("whnf", pretty_wh(names, &tr.wh))?;
    d.set_item("eta_long", pretty_term(names, &tr.eta.embed()))?;
    d.set_item("standard", pretty_nf(names, &tr.nf))?;
    d.set_item("nbe", pretty_nf(names, &nbe))?;
    d.set_item("fuel_used", tr.fuel_used)?;
    d.set_item("agree", nf_eq(&tr.nf, &nbe))?;
    Ok(d)
}

/// Runs the built-in suites; returns `(suite, checked, failures)` rows.
#[pyfunction]
#[pyo3(signature = (size = 4, random = 200, seed = 0))]
fn selftest(py: Python<'_>, size: usize, random: usize, seed: u64) -> Vec<(String, usize, Vec<String>)> {
    let cfg = SelftestConfig { size_bound: size, random_count: random, seed, ..SelftestConfig::default() };
    let reports = py.detach(|| run_selftest(&cfg));
    reports.into_iter().map(|r| (r.suite, r.checked, r.failures)).collect()
}

#[pymodule]
fn nulam(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("NulamError", py.get_type::<NulamError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("TypeCheckError", py.get_type::<TypeCheckError>())?;
    m.add("FuelExhausted", py.get_type::<FuelExhausted>())?;
    m.add("DEFAULT_FUEL", DEFAULT_FUEL)?;
    m.add_class::<Term>()?;
    m.add_class::<NormalForm>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(decide_eq, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
