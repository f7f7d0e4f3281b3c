//! Python bindings for grovelab. Values cross the boundary in their
//! canonical text forms.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use grovelab::bush::{self, MultiGraph};
use grovelab::catalan::{self, CatalanObject, DyckPath, Kind, Matching, NcPartition, Target};
use grovelab::grove;
use grovelab::immanant::{self, BetaRule, PartialNcMatching, ImmanantTables};
use grovelab::network::CactusNetwork;
use grovelab::straighten::{self, LMonomial, Straightener};

fn py_err(e: grovelab::Error) -> PyErr {
    match e {
        grovelab::Error::Input(m) => PyValueError::new_err(m),
        grovelab::Error::Internal(m) => PyRuntimeError::new_err(m),
    }
}

fn parse<T: std::str::FromStr<Err = grovelab::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

/// A built-in name (`y3`, `fig3`) or network JSON text.
fn network(spec: &str) -> PyResult<CactusNetwork> {
    let r = if spec.trim_start().starts_with('{') { CactusNetwork::from_json(spec) } else { CactusNetwork::builtin(spec) };
    r.map_err(py_err)
}

/// Catalan objects of size `n`: kind is dyck, ncm, ncp, matchings, tc or chains.
#[pyfunction]
#[pyo3(signature = (n, kind, d=None))]
pub fn enumerate(n: usize, kind: &str, d: Option<usize>) -> PyResult<Vec<String>> {
    let objs = catalan::enumerate(n, Kind::parse(kind, d).map_err(py_err)?).map_err(py_err)?;
    Ok(objs.iter().map(|o| o.to_string()).collect())
}

/// Converts between dyck, ncm and ncp.
#[pyfunction]
pub fn convert(value: &str, source: &str, target: &str) -> PyResult<String> {
    let obj = match source {
        "dyck" => CatalanObject::Dyck(parse::<DyckPath>(value)?),
        "ncm" => CatalanObject::Matching(parse::<Matching>(value)?),
        "ncp" => CatalanObject::Partition(parse::<NcPartition>(value)?),
        _ => return Err(PyValueError::new_err(format!("unknown kind {source:?}"))),
    };
    let target: Target = parse(target)?;
    Ok(catalan::convert(&obj, target).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn medial_pairing(net: &str) -> PyResult<String> {
    Ok(network(net)?.medial_pairing().to_string())
}

#[pyfunction]
pub fn dual_network(net: &str) -> PyResult<String> {
    Ok(network(net)?.dual().to_json())
}

/// `L_σ(Γ)` as a polynomial string.
#[pyfunction]
pub fn grove_measurement(net: &str, partition: &str) -> PyResult<String> {
    let p = grove::grove_measurement(&network(net)?, &parse(partition)?).map_err(py_err)?;
    Ok(p.to_string())
}

/// α of a network with optional edge multiplicities.
#[pyfunction]
#[pyo3(signature = (net, mult=None))]
pub fn alpha(net: &str, mult: Option<Vec<u32>>) -> PyResult<String> {
    let net = network(net)?;
    let h = match mult {
        None => MultiGraph::simple(net),
        Some(m) => MultiGraph::new(net, m).map_err(py_err)?,
    };
    Ok(bush::alpha(&h).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn bush_value(net: &str, xi: &str) -> PyResult<String> {
    Ok(bush::bush_value(&network(net)?, &parse(xi)?).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn a_coeff(xi: &str, sigma: &str, sigma2: &str) -> PyResult<u64> {
    bush::a_coeff(&parse(xi)?, &parse(sigma)?, &parse(sigma2)?).map_err(py_err)
}

/// β(ξ); `rule` is `full` or `single`.
#[pyfunction]
#[pyo3(signature = (xi, rule="full"))]
pub fn beta(xi: &str, rule: &str) -> PyResult<String> {
    let rule = match rule {
        "full" => BetaRule::Full,
        "single" => BetaRule::SingleRepresentative,
        _ => return Err(PyValueError::new_err(format!("unknown rule {rule:?}"))),
    };
    Ok(immanant::beta_with(&parse(xi)?, rule).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn f_immanant(partial: &str, n: usize) -> PyResult<String> {
    let p = PartialNcMatching::parse(2 * n, partial).map_err(py_err)?;
    Ok(immanant::f_immanant(&p, n).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn delta(n: usize, subset: Vec<usize>) -> PyResult<String> {
    Ok(immanant::delta(n, &subset).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn verify_delta_product(n: usize, i: Vec<usize>, j: Vec<usize>) -> PyResult<bool> {
    ImmanantTables::new(n).and_then(|t| t.verify_delta_product(&i, &j)).map_err(py_err)
}

/// Straightens a monomial such as `"12|3;1|23"`.
#[pyfunction]
pub fn straighten_monomial(monomial: &str) -> PyResult<String> {
    let parts: Vec<NcPartition> = monomial.split(';').map(parse).collect::<PyResult<_>>()?;
    let n = parts.first().map(|p| p.n()).ok_or_else(|| PyValueError::new_err("empty monomial"))?;
    let m = LMonomial::from_partitions(&parts).map_err(py_err)?;
    let s = Straightener::new(n).and_then(|mut st| st.straighten_monomial(&m)).map_err(py_err)?;
    Ok(s.to_string())
}

#[pyfunction]
pub fn dim_formula(n: usize, d: usize) -> PyResult<String> {
    Ok(straighten::dim_formula(n, d).map_err(py_err)?.to_string())
}

#[pyfunction]
pub fn count_standard(n: usize, d: usize) -> usize {
    straighten::count_standard(n, d)
}

/// Runs a command line (without the program name); returns the exit code
/// and standard output.
#[pyfunction]
pub fn run(args: Vec<String>) -> (i32, String) {
    let argv = std::iter::once("grovelab".to_string()).chain(args);
    let (r, as_json) = grovelab::cli::run(argv);
    (r.exit_code(), r.stdout(as_json))
}

#[pymodule]
pub fn pygrovelab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(convert, m)?)?;
    m.add_function(wrap_pyfunction!(medial_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(dual_network, m)?)?;
    m.add_function(wrap_pyfunction!(grove_measurement, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(bush_value, m)?)?;
    m.add_function(wrap_pyfunction!(a_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(f_immanant, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_delta_product, m)?)?;
    m.add_function(wrap_pyfunction!(straighten_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(dim_formula, m)?)?;
    m.add_function(wrap_pyfunction!(count_standard, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
