//! Python bindings: orbit enumeration, per-surface invariants, arithmetic
//! counts and the verification suites.

use origami::arith;
use origami::census::curve_invariants;
use origami::orbit::{self, EnumerationMode};
use origami::origami::{from_h2_params, H2Params, StratumSignature};
use origami::sl2z::Alphabet;
use origami::verify::{self, VerifyConfig};
use origami::Origami;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: origami::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_surface(s: &str) -> PyResult<Origami> {
    match H2Params::parse(s) {
        Ok(p) => from_h2_params(p),
        Err(_) => Origami::parse(s, None),
    }
    .map_err(py_err)
}

/// A summary of one orbit: label, size, HLK of its first member, and the
/// curve genus when every member has `-I` symmetry.
#[pyclass(get_all, frozen, skip_from_py_object)]
#[derive(Clone)]
struct OrbitInfo {
    label: String,
    n: usize,
    stratum: String,
    size: usize,
    hlk: Option<String>,
    genus: Option<i64>,
    members: Vec<String>,
}

#[pymethods]
impl OrbitInfo {
    fn __repr__(&self) -> String {
        format!("OrbitInfo({} n={} {}, size={})", self.stratum, self.n, self.label, self.size)
    }
}

impl From<&orbit::Orbit> for OrbitInfo {
    fn from(o: &orbit::Orbit) -> Self {
        OrbitInfo {
            label: o.label.clone().unwrap_or_default(),
            n: o.n(),
            stratum: o.stratum.label(),
            size: o.len(),
            hlk: o.origami(0).hlk().ok().map(|h| h.to_string()),
            genus: curve_invariants(o).ok().map(|c| c.genus),
            members: o.members.iter().map(|m| m.origami.to_string()).collect(),
        }
    }
}

/// Orbit of a surface given by `(w1,h1,t1,w2,h2,t2)` or cycle notation.
#[pyfunction]
fn orbit_of(seed: &str) -> PyResult<OrbitInfo> {
    let x = parse_surface(seed)?;
    let mut o = orbit::enumerate_orbit(&x, Alphabet::Parabolic).map_err(py_err)?;
    orbit::label_orbits(std::slice::from_mut(&mut o));
    Ok(OrbitInfo::from(&o))
}

/// All primitive orbits of a stratum such as `"H(2)"` or `"H(1,1)"`.
#[pyfunction]
#[pyo3(signature = (stratum, n, brute_cap = orbit::DEFAULT_BRUTE_CAP))]
fn stratum_orbits(py: Python<'_>, stratum: &str, n: usize, brute_cap: usize) -> PyResult<Vec<OrbitInfo>> {
    let sig = StratumSignature::parse(stratum).map_err(py_err)?;
    let mode = if sig.zero_orders == [2] { EnumerationMode::Seeded } else { EnumerationMode::Brute };
    let orbits = py.detach(|| orbit::enumerate_stratum(n, &sig, mode, brute_cap)).map_err(py_err)?;
    Ok(orbits.iter().map(OrbitInfo::from).collect())
}

#[pyfunction]
fn hlk(surface: &str) -> PyResult<String> {
    Ok(parse_surface(surface)?.hlk().map_err(py_err)?.to_string())
}

#[pyfunction]
fn stratum_of(surface: &str) -> PyResult<String> {
    Ok(parse_surface(surface)?.stratum().map_err(py_err)?.label())
}

/// `(h, unit count)` for a negative discriminant.
#[pyfunction]
fn class_number(d: i64) -> PyResult<(u64, u64)> {
    let r = arith::class_numbers(d).map_err(py_err)?;
    Ok((r.h, r.unit_count))
}

/// Runs a suite and returns `(id, title, passed)` per check.
#[pyfunction]
#[pyo3(signature = (suite, max_n = None))]
fn run_suite(py: Python<'_>, suite: &str, max_n: Option<usize>) -> PyResult<Vec<(String, String, bool)>> {
    let suite = suite.parse().map_err(py_err)?;
    let mut cfg = VerifyConfig::default();
    if let Some(n) = max_n {
        cfg = cfg.with_max_n(n);
    }
    let results = py.detach(|| verify::run_suite(suite, &cfg));
    Ok(results.into_iter().map(|r| (r.id, r.title, r.passed)).collect())
}

#[pymodule]
fn origami_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<OrbitInfo>()?;
    m.add_function(wrap_pyfunction!(orbit_of, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(hlk, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_of, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summaries_of_five_square_orbits() {
        let x = parse_surface("(1,1,0,2,2,1)").unwrap();
        let o = orbit::enumerate_orbit(&x, Alphabet::Parabolic).unwrap();
        let info = OrbitInfo::from(&o);
        assert_eq!((info.size, info.n, info.hlk.as_deref()), (9, 5, Some("(2,[1,1,1])")));
        assert_eq!(info.members.len(), 9);
        assert!(parse_surface("(1,2),(3,4)").is_err());
    }
}
