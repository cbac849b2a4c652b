//! Python bindings. Results cross the boundary as JSON strings so the
//! Python side stays dependency-free; see python/smoke.py.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use olex_core::moduli::{classify_arrangement, ConstructionPlan};
use olex_core::symmetry::{automorphism_group, find_isomorphism};
use olex_core::{extend, Arrangement, Catalog};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Resolves a catalog name like "(10_3)_7.ADO" or a raw arrangement table.
fn resolve(target: &str) -> PyResult<Arrangement> {
    if target.contains('\n') {
        return Arrangement::parse_table(target).map_err(err);
    }
    Catalog::bundled().build_named(target).map_err(err)
}

/// Names of the bundled (9_3) and (10_3) configurations.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    Catalog::bundled()
        .entries()
        .iter()
        .map(|e| e.name.clone())
        .collect()
}

/// The arrangement table of a catalog name or extension name.
#[pyfunction]
fn arrangement_table(target: &str) -> PyResult<String> {
    Ok(resolve(target)?.emit_table())
}

/// Order of the automorphism group.
#[pyfunction]
fn aut_order(target: &str) -> PyResult<usize> {
    Ok(automorphism_group(&resolve(target)?).order)
}

/// Isomorphism witness as JSON, or None.
#[pyfunction]
fn isomorphism(target_a: &str, target_b: &str) -> PyResult<Option<String>> {
    let a = resolve(target_a)?;
    let b = resolve(target_b)?;
    Ok(find_isomorphism(&a, &b).map(|m| serde_json::to_string(&m).expect("witness serializes")))
}

/// Census report over the bundled catalog as JSON.
#[pyfunction]
#[pyo3(signature = (k, nine3 = false))]
fn census(k: usize, nine3: bool) -> PyResult<String> {
    let catalog = Catalog::bundled();
    let report = if nine3 {
        extend::nine3_census(&catalog)
    } else {
        extend::enumerate_census(k, &catalog)
    }
    .map_err(err)?;
    Ok(report.to_json().to_string())
}

/// Moduli classification as JSON: verdict plus the reduced presentation.
#[pyfunction]
#[pyo3(signature = (target, plan = None))]
fn classify(target: &str, plan: Option<&str>) -> PyResult<String> {
    let a = resolve(target)?;
    let plan = plan.map(ConstructionPlan::parse).transpose().map_err(err)?;
    let (m, v) = classify_arrangement(&a, plan.as_ref()).map_err(err)?;
    Ok(serde_json::json!({
        "verdict": v.to_json(),
        "presentation": m.to_json(),
    })
    .to_string())
}

#[pymodule]
fn olex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(arrangement_table, m)?)?;
    m.add_function(wrap_pyfunction!(aut_order, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
