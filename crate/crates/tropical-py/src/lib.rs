//! Python bindings. Polynomials and ideals travel as text, curves and
//! reports as JSON strings, rationals as strings like "-3/2".

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use tropical::additive::is_additive;
use tropical::curve::curve_from_poly2;
use tropical::newton::{dual_subdivision, essential_monomials};
use tropical::parse::{
    curve_from_json, curve_to_json, parse_ideal, parse_ideal_n, parse_poly, parse_poly_n,
    poly_to_string,
};
use tropical::scalar::{fmt_rat, parse_rat};
use tropical::synth::{synthesize_curve, verify_ideal, VerifyOptions, DEFAULT_CGAP};
use tropical::Rat;

fn err(e: tropical::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts ints, Fractions or strings.
fn point(xs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Rat>> {
    xs.iter()
        .map(|x| {
            let s = x.str()?.to_string();
            parse_rat(&s).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s}")))
        })
        .collect()
}

/// Value (None for -inf) and the indices of the maximizing monomials, in
/// the order of `monomials(f)`.
#[pyfunction]
fn evaluate(f: &str, x: Vec<Bound<'_, PyAny>>) -> PyResult<(Option<String>, Vec<usize>)> {
    let x = point(x)?;
    let f = parse_poly_n(f, x.len()).map_err(err)?;
    let ev = f.evaluate(&x).map_err(err)?;
    Ok((ev.value.as_rat().map(fmt_rat), ev.argmax))
}

/// Monomials in canonical text, sorted by exponent vector.
#[pyfunction]
fn monomials(f: &str) -> PyResult<Vec<String>> {
    let f = parse_poly(f).map_err(err)?;
    Ok(f.monomials()
        .iter()
        .map(|m| {
            poly_to_string(
                &tropical::TropPolynomial::new(f.nvars(), vec![m.clone()])
                    .expect("one finite monomial"),
            )
        })
        .collect())
}

#[pyfunction]
fn is_simple(f: &str) -> PyResult<bool> {
    Ok(parse_poly(f).map_err(err)?.is_simple())
}

#[pyfunction]
fn essential(f: &str) -> PyResult<Vec<usize>> {
    essential_monomials(&parse_poly(f).map_err(err)?).map_err(err)
}

/// Corner locus of a bivariate polynomial as curve JSON.
#[pyfunction]
fn corner_locus(f: &str) -> PyResult<String> {
    let f = parse_poly_n(f, 2).map_err(err)?;
    Ok(curve_to_json(&curve_from_poly2(&f).map_err(err)?))
}

#[pyfunction]
fn subdivision(f: &str) -> PyResult<String> {
    let s = dual_subdivision(&parse_poly(f).map_err(err)?).map_err(err)?;
    Ok(s.to_json().to_string())
}

/// True if every point lies on the corner locus of every generator.
#[pyfunction]
fn contains(ideal: &str, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    let x = point(x)?;
    let id = parse_ideal_n(ideal, x.len()).map_err(err)?;
    id.contains(&x).map_err(err)
}

/// Additivity certificate as JSON.
#[pyfunction]
fn additivity(curve: &str) -> PyResult<String> {
    let c = curve_from_json(curve).map_err(err)?;
    Ok(is_additive(&c).map_err(err)?.to_value().to_string())
}

/// Simple generators for an additive curve in the plane or in space.
#[pyfunction]
#[pyo3(signature = (curve, cgap = DEFAULT_CGAP))]
fn synthesize(curve: &str, cgap: u64) -> PyResult<Vec<String>> {
    let c = curve_from_json(curve).map_err(err)?;
    let id = synthesize_curve(&c, cgap).map_err(err)?;
    Ok(id.generators().iter().map(poly_to_string).collect())
}

/// Verification report as JSON.
#[pyfunction]
#[pyo3(signature = (ideal, curve, samples = 200, seed = 0))]
fn verify(ideal: &str, curve: &str, samples: usize, seed: u64) -> PyResult<String> {
    let c = curve_from_json(curve).map_err(err)?;
    let id = parse_ideal(ideal).map_err(err)?;
    let id = if id.nvars() < c.dim {
        parse_ideal_n(ideal, c.dim).map_err(err)?
    } else {
        id
    };
    let rep = verify_ideal(
        &id,
        &c,
        &VerifyOptions {
            off_samples: samples,
            seed,
        },
    )
    .map_err(err)?;
    Ok(rep.to_value().to_string())
}

#[pymodule]
fn pytropical(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(monomials, m)?)?;
    m.add_function(wrap_pyfunction!(is_simple, m)?)?;
    m.add_function(wrap_pyfunction!(essential, m)?)?;
    m.add_function(wrap_pyfunction!(corner_locus, m)?)?;
    m.add_function(wrap_pyfunction!(subdivision, m)?)?;
    m.add_function(wrap_pyfunction!(contains, m)?)?;
    m.add_function(wrap_pyfunction!(additivity, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
