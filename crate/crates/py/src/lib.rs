//! Python bindings.

use core_lib::classify::{census as run_census, check_conjectures, enumerate_atomistic, lattice_invariants};
use core_lib::lattice::io::to_dot;
use core_lib::lattice::{canonical_form, find_isomorphism};
use core_lib::monomial::{
    colon_pair, deform_pair, inflate, is_generic, polarize, radical_pair, restrict_variable_pair,
    weight_map, Deformation,
};
use core_lib::realize::{canonical_realization, equalize_degrees, realize};
use core_lib::resolution::taylor_betti;
use core_lib::sdepth::sdepth_solve;
use core_lib::{
    Config, Error, Field, GeneratorSet, LcmLattice as CoreLcm, Monomial, QuotientPair, Semilattice,
    Weighting as CoreWeighting,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

pyo3::create_exception!(lcmlat, LimitExceeded, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_limit() {
        LimitExceeded::new_err(e.to_string())
    } else if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn config(field: &str) -> PyResult<Config> {
    let field: Field = field.parse().map_err(err)?;
    Ok(Config {
        field,
        ..Config::default()
    })
}

/// Serializable report as plain Python objects.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn parse_monomial(s: &str, vars: &[String]) -> PyResult<Monomial> {
    Monomial::parse(s, vars).map_err(err)
}

/// Finitely generated monomial ideal. Generators are strings like `"x^2*y"`.
#[pyclass(frozen, from_py_object, module = "lcmlat")]
#[derive(Clone)]
struct Ideal {
    inner: GeneratorSet,
}

#[pymethods]
impl Ideal {
    #[new]
    fn new(variables: Vec<String>, generators: Vec<String>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| parse_monomial(g, &variables))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Ideal {
            inner: GeneratorSet::new(variables, gens).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_exponents(variables: Vec<String>, exponents: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = exponents.into_iter().map(Monomial::new).collect();
        Ok(Ideal {
            inner: GeneratorSet::new(variables, gens).map_err(err)?,
        })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.render()
    }

    #[getter]
    fn exponents(&self) -> Vec<Vec<u32>> {
        self.inner.gens().iter().map(|m| m.exponents().to_vec()).collect()
    }

    fn minimalize(&self) -> Ideal {
        Ideal {
            inner: self.inner.minimalize(),
        }
    }

    fn contains(&self, monomial: &str) -> PyResult<bool> {
        Ok(self.inner.contains(&parse_monomial(monomial, self.inner.vars())?))
    }

    fn is_squarefree(&self) -> bool {
        self.inner.is_squarefree()
    }

    fn is_generic(&self) -> bool {
        is_generic(&self.inner)
    }

    #[pyo3(signature = (element_cap = 1 << 16))]
    fn lcm_lattice(&self, element_cap: usize) -> PyResult<LcmLattice> {
        Ok(LcmLattice {
            inner: CoreLcm::new(&self.inner, element_cap).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner.render().join(", "))
    }
}

/// The module `I/J` with `J ⊆ I`. A missing `I` is the whole ring, a missing `J` is zero.
#[pyclass(frozen, skip_from_py_object, module = "lcmlat")]
#[derive(Clone)]
struct Quotient {
    inner: QuotientPair,
}

fn wrap(p: QuotientPair) -> Quotient {
    Quotient { inner: p }
}

#[pymethods]
impl Quotient {
    #[new]
    #[pyo3(signature = (i = None, j = None))]
    fn new(i: Option<Ideal>, j: Option<Ideal>) -> PyResult<Self> {
        let p = match (i, j) {
            (Some(i), Some(j)) => QuotientPair::new(i.inner, j.inner).map_err(err)?,
            (Some(i), None) => QuotientPair::ideal(i.inner),
            (None, Some(j)) => QuotientPair::quotient_ring(j.inner),
            (None, None) => return Err(PyValueError::new_err("need at least one of I and J")),
        };
        Ok(wrap(p))
    }

    #[getter]
    fn i(&self) -> Ideal {
        Ideal {
            inner: self.inner.i().clone(),
        }
    }

    #[getter]
    fn j(&self) -> Ideal {
        Ideal {
            inner: self.inner.j().clone(),
        }
    }

    fn sdepth(&self, py: Python<'_>) -> PyResult<usize> {
        let p = self.inner.clone();
        let r = py.detach(move || sdepth_solve(&p, &Config::default()));
        Ok(r.map_err(err)?.sdepth)
    }

    /// Full report: sdepth, spdim, the exponent bound `g` and an interval partition.
    fn sdepth_report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let p = self.inner.clone();
        let r = py.detach(move || sdepth_solve(&p, &Config::default())).map_err(err)?;
        to_py(py, &r)
    }

    #[pyo3(signature = (field = "Q"))]
    fn betti(&self, py: Python<'_>, field: &str) -> PyResult<Vec<u64>> {
        let cfg = config(field)?;
        let p = self.inner.clone();
        Ok(py.detach(move || taylor_betti(&p, &cfg)).map_err(err)?.betti)
    }

    #[pyo3(signature = (field = "Q"))]
    fn pdim(&self, py: Python<'_>, field: &str) -> PyResult<usize> {
        let cfg = config(field)?;
        let p = self.inner.clone();
        Ok(py.detach(move || taylor_betti(&p, &cfg)).map_err(err)?.pdim)
    }

    fn polarize(&self) -> Quotient {
        wrap(polarize(&self.inner))
    }

    fn radical(&self) -> PyResult<Quotient> {
        Ok(wrap(radical_pair(&self.inner).map_err(err)?))
    }

    fn colon(&self, by: &str) -> PyResult<Quotient> {
        let v = parse_monomial(by, self.inner.vars())?;
        Ok(wrap(colon_pair(&self.inner, &v).map_err(err)?))
    }

    fn restrict(&self, var: &str) -> PyResult<Quotient> {
        let i = self
            .inner
            .vars()
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| PyValueError::new_err(format!("unknown variable {var}")))?;
        Ok(wrap(restrict_variable_pair(&self.inner, i).map_err(err)?))
    }

    fn inflate(&self, at: &str) -> PyResult<Quotient> {
        let m = parse_monomial(at, self.inner.vars())?;
        Ok(wrap(inflate(&self.inner, &m).map_err(err)?))
    }

    /// `epsilons[g][v]` shifts variable `v` of the `g`-th generator of `G_I` followed by `G_J`.
    fn deform(&self, epsilons: Vec<Vec<u32>>) -> PyResult<Quotient> {
        Ok(wrap(
            deform_pair(&self.inner, &Deformation { epsilons }).map_err(err)?,
        ))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Quotient(I=[{}], J=[{}])",
            self.inner.i().render().join(", "),
            self.inner.j().render().join(", ")
        )
    }
}

/// Finite join-semilattice with labeled elements.
#[pyclass(frozen, skip_from_py_object, module = "lcmlat")]
#[derive(Clone)]
struct Lattice {
    inner: Semilattice,
}

#[pymethods]
impl Lattice {
    /// `covers` holds pairs `(a, b)` with `a < b`; the transitive closure is taken.
    #[new]
    fn new(elements: Vec<String>, covers: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Lattice {
            inner: Semilattice::build(elements, &covers).map_err(err)?,
        })
    }

    #[staticmethod]
    fn boolean(k: usize) -> PyResult<Self> {
        Ok(Lattice {
            inner: Semilattice::boolean(k, 1 << 16).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers()
    }

    fn join(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.join(a, b))
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.leq(a, b))
    }

    fn top(&self) -> usize {
        self.inner.top()
    }

    fn atoms(&self) -> Vec<usize> {
        self.inner.atoms()
    }

    fn meet_irreducibles(&self) -> Vec<usize> {
        self.inner.meet_irreducibles()
    }

    fn join_irreducibles(&self) -> Vec<usize> {
        self.inner.join_irreducibles()
    }

    fn is_atomistic(&self) -> bool {
        self.inner.is_atomistic()
    }

    fn canonical_form(&self) -> PyResult<String> {
        let c = canonical_form(&self.inner, Config::default().canon_perm_cap).map_err(err)?;
        Ok(c.as_str().to_string())
    }

    /// An isomorphism onto `other` as a list of target indices, or `None`.
    fn isomorphism(&self, other: &Lattice) -> PyResult<Option<Vec<usize>>> {
        find_isomorphism(&self.inner, &other.inner, Config::default().canon_perm_cap).map_err(err)
    }

    fn to_dot(&self) -> String {
        to_dot(&self.inner)
    }

    /// Squarefree ideal whose lcm-semilattice is this lattice.
    fn canonical_realization(&self) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: canonical_realization(&self.inner).map_err(err)?,
        })
    }

    #[pyo3(signature = (field = "Q"))]
    fn invariants(&self, py: Python<'_>, field: &str) -> PyResult<Py<PyAny>> {
        let cfg = config(field)?;
        let l = self.inner.clone();
        let inv = py.detach(move || lattice_invariants(&l, &cfg)).map_err(err)?;
        to_py(py, &inv)
    }

    #[pyo3(signature = (field = "Q"))]
    fn check_conjectures(&self, py: Python<'_>, field: &str) -> PyResult<Py<PyAny>> {
        let cfg = config(field)?;
        let l = self.inner.clone();
        let r = py.detach(move || check_conjectures(&l, &cfg)).map_err(err)?;
        to_py(py, &r)
    }

    fn __repr__(&self) -> String {
        format!("Lattice({} elements)", self.inner.len())
    }
}

impl Lattice {
    fn check(&self, a: usize) -> PyResult<()> {
        if a < self.inner.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("no element {a}")))
        }
    }
}

/// lcm-semilattice of an ideal: the lcms of nonempty subsets of generators.
#[pyclass(frozen, module = "lcmlat")]
struct LcmLattice {
    inner: CoreLcm,
}

#[pymethods]
impl LcmLattice {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn monomials(&self) -> Vec<String> {
        let vars = self.inner.vars();
        self.inner.monomials().iter().map(|m| m.render(vars)).collect()
    }

    fn lattice(&self) -> Lattice {
        Lattice {
            inner: self.inner.lattice().clone(),
        }
    }

    fn weighting(&self) -> Weighting {
        Weighting {
            inner: weight_map(&self.inner),
        }
    }

    fn index_of(&self, monomial: &str) -> PyResult<Option<usize>> {
        Ok(self.inner.index_of(&parse_monomial(monomial, self.inner.vars())?))
    }
}

/// Monomial weights on a semilattice plus its virtual bottom.
#[pyclass(frozen, skip_from_py_object, module = "lcmlat")]
#[derive(Clone)]
struct Weighting {
    inner: CoreWeighting,
}

#[pymethods]
impl Weighting {
    #[new]
    fn new(variables: Vec<String>, lattice: &Lattice, bottom: &str, weights: Vec<String>) -> PyResult<Self> {
        let ws = weights
            .iter()
            .map(|w| parse_monomial(w, &variables))
            .collect::<PyResult<Vec<_>>>()?;
        let b = parse_monomial(bottom, &variables)?;
        Ok(Weighting {
            inner: CoreWeighting::new(variables, lattice.inner.clone(), b, ws).map_err(err)?,
        })
    }

    #[getter]
    fn bottom(&self) -> String {
        self.inner.render().0
    }

    #[getter]
    fn weights(&self) -> Vec<String> {
        self.inner.render().1
    }

    #[getter]
    fn lattice(&self) -> Lattice {
        Lattice {
            inner: self.inner.lattice().clone(),
        }
    }

    /// One generator per lattice element, in element order.
    fn realize(&self) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: realize(&self.inner).map_err(err)?,
        })
    }

    fn equalize(&self, antichain: Vec<usize>) -> PyResult<Weighting> {
        Ok(Weighting {
            inner: equalize_degrees(&self.inner, &antichain).map_err(err)?,
        })
    }
}

/// Representatives of the isomorphism classes of atomistic semilattices on `k` atoms.
#[pyfunction]
fn atomistic_lattices(py: Python<'_>, k: usize) -> PyResult<Vec<Lattice>> {
    let classes = py
        .detach(move || enumerate_atomistic(k, &Config::default()))
        .map_err(err)?;
    Ok(classes
        .into_iter()
        .map(|c| Lattice { inner: c.lattice })
        .collect())
}

/// Census records and summary for `k` atoms, as dictionaries.
#[pyfunction]
#[pyo3(signature = (k, check = true, field = "Q"))]
fn census(py: Python<'_>, k: usize, check: bool, field: &str) -> PyResult<Py<PyAny>> {
    let cfg = config(field)?;
    let c = py.detach(move || run_census(k, check, &cfg)).map_err(err)?;
    to_py(py, &c)
}

#[pymodule]
fn lcmlat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ideal>()?;
    m.add_class::<Quotient>()?;
    m.add_class::<Lattice>()?;
    m.add_class::<LcmLattice>()?;
    m.add_class::<Weighting>()?;
    m.add_function(wrap_pyfunction!(atomistic_lattices, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add("LimitExceeded", m.py().get_type::<LimitExceeded>())?;
    Ok(())
}
