//! Closed-form entanglement measures for Werner and isotropic states.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::entropy::h2;
use crate::error::Result;
use crate::families::{isotropic_singlet_fraction as singlet_fraction, Isotropic, StateFamily, Werner};

/// Number of λ samples used for the isotropic convex hull.
pub const HULL_POINTS: usize = 2001;

/// Measures at one family point. `g_raw` is only defined for isotropic states.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurePoint {
    pub family: &'static str,
    pub d: usize,
    pub param: f64,
    pub er: f64,
    pub ef: f64,
    pub g_raw: Option<f64>,
}

/// Regularized relative entropy of entanglement of `ρ_W(d, β)`.
pub fn er_inf_werner(d: usize, beta: f64) -> Result<f64> {
    Werner.check_param(d, beta)?;
    let beta = beta.clamp(-1.0, 1.0);
    let df = d as f64;
    if beta >= -1.0 / df {
        return Ok(0.0);
    }
    let p = crate::families::werner_antisym_weight(d, beta);
    if d >= 3 && beta <= -3.0 * df / (df * df + 2.0) {
        Ok(((df - 2.0) / df).log2() + p * ((df + 2.0) / (df - 2.0)).log2())
    } else {
        Ok(1.0 - h2(p))
    }
}

/// Entanglement of formation of `ρ_W(d, β)`.
pub fn ef_werner(d: usize, beta: f64) -> Result<f64> {
    Werner.check_param(d, beta)?;
    let beta = beta.clamp(-1.0, 1.0);
    let df = d as f64;
    if beta > -1.0 / df {
        return Ok(0.0);
    }
    let a = (1.0 + df * beta) / (df + beta);
    Ok(h2(0.5 * (1.0 - (1.0 - a * a).max(0.0).sqrt())))
}

fn is_entangled_iso(d: usize, lam: f64) -> bool {
    lam > 1.0 / (d as f64 + 1.0)
}

/// Relative entropy of entanglement of `ρ_iso(d, λ)`.
pub fn er_isotropic(d: usize, lam: f64) -> Result<f64> {
    Isotropic.check_param(d, lam)?;
    if !is_entangled_iso(d, lam) {
        return Ok(0.0);
    }
    let df = d as f64;
    let f = singlet_fraction(d, lam.min(1.0));
    let tail = if f >= 1.0 {
        0.0
    } else {
        (1.0 - f) * ((1.0 - f) / (df - 1.0)).log2()
    };
    Ok(df.log2() + f * f.log2() + tail)
}

/// `γ(λ) = (√F + √((d-1)(1-F)))² / d` with `F` the singlet fraction.
pub fn isotropic_gamma(d: usize, lam: f64) -> Result<f64> {
    Isotropic.check_param(d, lam)?;
    Ok(gamma_unchecked(d, lam))
}

fn gamma_unchecked(d: usize, lam: f64) -> f64 {
    let df = d as f64;
    let f = singlet_fraction(d, lam).clamp(0.0, 1.0);
    (f.sqrt() + ((df - 1.0) * (1.0 - f)).sqrt()).powi(2) / df
}

fn g_of_gamma(d: usize, gamma: f64) -> f64 {
    h2(gamma) + (1.0 - gamma) * ((d - 1) as f64).log2()
}

/// `g(γ(λ))` before taking the convex hull; 0 on the separable range.
pub fn isotropic_g_raw(d: usize, lam: f64) -> Result<f64> {
    Isotropic.check_param(d, lam)?;
    if !is_entangled_iso(d, lam) {
        return Ok(0.0);
    }
    Ok(g_of_gamma(d, gamma_unchecked(d, lam)))
}

/// Lower convex hull of points sorted by x (Andrew's monotone chain).
pub fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Piecewise-linear interpolation on a hull sorted by x.
fn interpolate(hull: &[(f64, f64)], x: f64) -> f64 {
    let i = hull.partition_point(|p| p.0 < x);
    if i == 0 {
        return hull[0].1;
    }
    if i == hull.len() {
        return hull[hull.len() - 1].1;
    }
    let (a, b) = (hull[i - 1], hull[i]);
    a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
}

type Hull = Arc<Vec<(f64, f64)>>;

fn isotropic_hull(d: usize) -> Hull {
    static CACHE: OnceLock<Mutex<HashMap<usize, Hull>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(h) = cache.lock().expect("hull cache poisoned").get(&d) {
        return Arc::clone(h);
    }
    let lo = 1.0 / (d as f64 + 1.0);
    let points: Vec<(f64, f64)> = (0..HULL_POINTS)
        .map(|i| {
            let lam = lo + (1.0 - lo) * i as f64 / (HULL_POINTS - 1) as f64;
            (lam, g_of_gamma(d, gamma_unchecked(d, lam)))
        })
        .collect();
    let hull = Arc::new(lower_hull(&points));
    cache
        .lock()
        .expect("hull cache poisoned")
        .entry(d)
        .or_insert(hull)
        .clone()
}

/// Entanglement of formation of `ρ_iso(d, λ)`: the convex hull of
/// `g(γ(λ))` over the entangled range, 0 on the separable range.
pub fn ef_isotropic(d: usize, lam: f64) -> Result<f64> {
    Isotropic.check_param(d, lam)?;
    if !is_entangled_iso(d, lam) {
        return Ok(0.0);
    }
    let lam = lam.min(1.0);
    // chords between samples sit above g where g is convex; the hull never does
    let hull = interpolate(&isotropic_hull(d), lam);
    Ok(hull.min(g_of_gamma(d, gamma_unchecked(d, lam))).max(0.0))
}

/// Measures for a named family.
pub fn measure_point(family: &str, d: usize, param: f64) -> Result<MeasurePoint> {
    crate::families::registry().get(family)?.measures(d, param)
}
