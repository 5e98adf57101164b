//! Python bindings for the weakifc library.
//!
//! Exposes the channel model, region construction, classical bounds and the
//! dirty-paper-coding verifier. Rates are bits per channel use; regions are
//! returned as lists of (R1, R2) vertices in canonical order.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use weakifc::model::CoopSplit;
use weakifc::regions::{InformedTx, RegionSpec, TradeoffQuery};

fn err(e: weakifc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Two-user Gaussian interference channel with unit noise variances.
#[pyclass(name = "ChannelParams")]
#[derive(Clone)]
struct PyChannelParams {
    inner: weakifc::ChannelParams,
}

#[pymethods]
impl PyChannelParams {
    #[new]
    fn new(a: f64, b: f64, p1: f64, p2: f64) -> PyResult<Self> {
        let inner = weakifc::model::validate_channel(
            weakifc::ChannelParams::new(a, b, p1, p2),
            false,
            false,
        )
        .map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    #[getter]
    fn p1(&self) -> f64 {
        self.inner.p1
    }

    #[getter]
    fn p2(&self) -> f64 {
        self.inner.p2
    }

    fn __repr__(&self) -> String {
        format!(
            "ChannelParams(a={}, b={}, p1={}, p2={})",
            self.inner.a, self.inner.b, self.inner.p1, self.inner.p2
        )
    }
}

/// R2-maximizing cross-covariance for the given power split.
#[pyfunction]
fn optimal_gamma(params: &PyChannelParams, alpha: f64) -> f64 {
    weakifc::regions::optimal_gamma(params.inner, alpha)
}

/// Achievable (R1, R2) with T1 informed; gamma defaults to the optimum.
#[pyfunction]
#[pyo3(signature = (params, alpha, gamma=None))]
fn achievable_rates_t1(
    params: &PyChannelParams,
    alpha: f64,
    gamma: Option<f64>,
) -> PyResult<(f64, f64)> {
    let gamma = gamma.unwrap_or_else(|| weakifc::regions::optimal_gamma(params.inner, alpha));
    let r = weakifc::regions::achievable_rates_t1(params.inner, CoopSplit::new(alpha, gamma))
        .map_err(err)?;
    Ok((r.r1, r.r2))
}

fn region_to_list(region: &weakifc::ConvexRegion) -> Vec<(f64, f64)> {
    region.vertices.iter().map(|p| (p.x, p.y)).collect()
}

/// Canonical vertices of the informed-transmitter capacity region.
#[pyfunction]
#[pyo3(signature = (params, tx, n_alpha=1024))]
fn region_boundary(
    params: &PyChannelParams,
    tx: u8,
    n_alpha: usize,
) -> PyResult<Vec<(f64, f64)>> {
    let region = match tx {
        1 => weakifc::regions::region_boundary_t1(&RegionSpec::new(
            params.inner,
            InformedTx::T1,
            n_alpha,
        )),
        2 => weakifc::regions::region_boundary_t2(&RegionSpec::new(
            params.inner,
            InformedTx::T2,
            n_alpha,
        )),
        _ => return Err(PyValueError::new_err("tx must be 1 or 2")),
    }
    .map_err(err)?;
    Ok(region_to_list(&region))
}

/// Vertices of the intersection outer bound; needs both gains weak.
#[pyfunction]
#[pyo3(signature = (params, n_alpha=1024))]
fn intersection_outer(params: &PyChannelParams, n_alpha: usize) -> PyResult<Vec<(f64, f64)>> {
    let region = weakifc::bounds::intersection_outer(params.inner, n_alpha).map_err(err)?;
    Ok(region_to_list(&region))
}

/// Kramer's outer bound as (c1, c2, d) constraints meaning c1*R1+c2*R2 <= d.
#[pyfunction]
fn kramer_outer(params: &PyChannelParams) -> PyResult<Vec<(f64, f64, f64)>> {
    let hs = weakifc::bounds::kramer_outer(params.inner).map_err(err)?;
    Ok(hs.constraints.iter().map(|c| (c.c1, c.c2, c.d)).collect())
}

/// Vertices of the polygon cut out by Kramer's outer bound.
#[pyfunction]
fn kramer_region(params: &PyChannelParams) -> PyResult<Vec<(f64, f64)>> {
    let hs = weakifc::bounds::kramer_outer(params.inner).map_err(err)?;
    let region = weakifc::geometry::halfspaces_to_region(&hs).map_err(err)?;
    Ok(region_to_list(&region))
}

/// Strong-interference capacity constraints; errors on weak channels.
#[pyfunction]
fn strong_interference_region(params: &PyChannelParams) -> PyResult<Vec<(f64, f64, f64)>> {
    let hs = weakifc::bounds::strong_interference_region(params.inner).map_err(err)?;
    Ok(hs.constraints.iter().map(|c| (c.c1, c.c2, c.d)).collect())
}

/// The frontier corner points A and B.
#[pyfunction]
fn corner_points(params: &PyChannelParams) -> PyResult<((f64, f64), (f64, f64))> {
    let (a, b) = weakifc::bounds::corner_points(params.inner).map_err(err)?;
    Ok(((a.r1, a.r2), (b.r1, b.r2)))
}

/// Exact I(U;Y1) - I(U;S) for the capacity-achieving Costa coder.
#[pyfunction]
fn costa_rate_analytic(params: &PyChannelParams, alpha: f64) -> PyResult<f64> {
    let coder = weakifc::dpc::CostaCoder::capacity_achieving(params.inner, alpha);
    weakifc::dpc::costa_rate_analytic(&coder).map_err(err)
}

/// Maximizes R1 + mu*R2 over the split; returns (alpha, value, (r1, r2)).
#[pyfunction]
fn scalarized_boundary(
    params: &PyChannelParams,
    mu: f64,
) -> PyResult<(f64, f64, (f64, f64))> {
    let (alpha, value, rates) =
        weakifc::regions::scalarized_boundary(params.inner, TradeoffQuery::new(mu)).map_err(err)?;
    Ok((alpha, value, (rates.r1, rates.r2)))
}

/// Full analytic + Monte-Carlo check of one sweep point, as a dict.
#[pyfunction]
#[pyo3(signature = (params, alpha, n_samples=1_000_000, seed=42, tol=0.02))]
fn verify_point<'py>(
    py: Python<'py>,
    params: &PyChannelParams,
    alpha: f64,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = weakifc::dpc::SimConfig::new(n_samples, seed);
    let report = weakifc::dpc::verify_point(params.inner, alpha, &cfg, tol).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("alpha", report.alpha)?;
    d.set_item("gamma", report.gamma)?;
    d.set_item("lambda", report.lambda)?;
    d.set_item("tol", report.tol)?;
    d.set_item("generator", report.generator)?;
    d.set_item(
        "analytic_rates",
        (report.analytic_rates.r1, report.analytic_rates.r2),
    )?;
    d.set_item("costa_rate", report.costa_rate)?;
    d.set_item("costa_residual", report.costa_residual)?;
    d.set_item("costa_pass", report.costa_pass)?;
    d.set_item(
        "mc_rates",
        (report.r1.estimate.rate_hat, report.r2.estimate.rate_hat),
    )?;
    d.set_item("mc_stderr", (report.r1.estimate.stderr, report.r2.estimate.stderr))?;
    d.set_item("pass", report.pass)?;
    Ok(d)
}

#[pymodule]
fn weakifc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChannelParams>()?;
    m.add_function(wrap_pyfunction!(optimal_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(achievable_rates_t1, m)?)?;
    m.add_function(wrap_pyfunction!(region_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_outer, m)?)?;
    m.add_function(wrap_pyfunction!(kramer_outer, m)?)?;
    m.add_function(wrap_pyfunction!(kramer_region, m)?)?;
    m.add_function(wrap_pyfunction!(strong_interference_region, m)?)?;
    m.add_function(wrap_pyfunction!(corner_points, m)?)?;
    m.add_function(wrap_pyfunction!(costa_rate_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(scalarized_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(verify_point, m)?)?;
    Ok(())
}
