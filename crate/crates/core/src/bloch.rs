//! α-Bloch seminorm estimation by structured sampling of the unit disk.
//!
//! `‖f‖_{B_α} = sup_{|z|<1} (1 − |z|²)^α |f′(z)|` is approximated by the
//! maximum over a polar [`SampleGrid`] whose radii cluster geometrically
//! toward the boundary. The result is a lower bound for the true supremum
//! (up to truncation error, which is reported separately).

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::series::{horner, PowerSeries};

/// Relative threshold above which a grid point's truncation tail disqualifies it.
pub const TAIL_THRESHOLD: f64 = 1e-6;

/// Absolute slack of the growth-bound check.
pub const GROWTH_SLACK: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochParams {
    alpha: f64,
}

impl BlochParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(domain(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `(1 − r²)^α`
    pub fn weight(&self, r: f64) -> f64 {
        (1.0 - r * r).powf(self.alpha)
    }
}

/// Polar sampling grid: every radius paired with every angle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleGrid {
    radii: Vec<f64>,
    angles: Vec<f64>,
}

impl SampleGrid {
    pub fn new(radii: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if radii.is_empty() || angles.is_empty() {
            return Err(LabError::Invalid("grid needs at least one radius and one angle".into()));
        }
        if radii.iter().any(|r| !(0.0..1.0).contains(r)) {
            return Err(domain("grid radii must lie in [0, 1)"));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabError::Invalid("grid radii must be strictly increasing".into()));
        }
        if angles.iter().any(|t| !(0.0..2.0 * PI).contains(t)) {
            return Err(domain("grid angles must lie in [0, 2π)"));
        }
        let mut sorted = angles.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(LabError::Invalid("grid angles must be distinct".into()));
        }
        Ok(Self { radii, angles })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("grid is never empty")
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `i` in radius-major order.
    pub fn point(&self, i: usize) -> (f64, f64) {
        let na = self.angles.len();
        (self.radii[i / na], self.angles[i % na])
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.angles.iter().map(move |&t| Complex64::from_polar(r, t)))
    }

    /// Superset grid: `factor − 1` points inserted between consecutive radii
    /// and between consecutive angles (cyclically).
    pub fn refined(&self, factor: usize) -> Self {
        let factor = factor.max(1);
        let mut radii = Vec::with_capacity(self.radii.len() * factor);
        for w in self.radii.windows(2) {
            for k in 0..factor {
                radii.push(w[0] + (w[1] - w[0]) * k as f64 / factor as f64);
            }
        }
        radii.push(self.r_max());

        let mut sorted = self.angles.clone();
        sorted.sort_by(f64::total_cmp);
        let mut angles = Vec::with_capacity(sorted.len() * factor);
        for (i, &a) in sorted.iter().enumerate() {
            let next = sorted.get(i + 1).copied().unwrap_or(sorted[0] + 2.0 * PI);
            for k in 0..factor {
                let t = a + (next - a) * k as f64 / factor as f64;
                angles.push(if t >= 2.0 * PI { t - 2.0 * PI } else { t });
            }
        }
        angles.dedup();
        Self { radii, angles }
    }
}

/// Radii `r_k = 1 − ρ^k` (`k = 0..=n_radial`, `ρ^n_radial = 1 − r_max`) and
/// `n_angular` uniform angles.
pub fn default_grid(n_radial: usize, n_angular: usize, r_max: f64) -> Result<SampleGrid> {
    if n_radial == 0 || n_angular == 0 {
        return Err(domain("grid sizes must be at least 1"));
    }
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(domain(format!("r_max must lie in (0, 1), got {r_max}")));
    }
    let rho = (1.0 - r_max).powf(1.0 / n_radial as f64);
    let mut radii: Vec<f64> = (0..=n_radial).map(|k| 1.0 - rho.powi(k as i32)).collect();
    radii[0] = 0.0;
    radii[n_radial] = r_max;
    let angles = (0..n_angular)
        .map(|j| 2.0 * PI * j as f64 / n_angular as f64)
        .collect();
    SampleGrid::new(radii, angles)
}

/// The default 64 × 128 grid with `r_max = 0.999`.
pub fn standard_grid() -> SampleGrid {
    default_grid(64, 128, 0.999).expect("constant parameters are valid")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeminormEstimate {
    /// Maximum of `(1 − |z|²)^α |f′(z)|` over the accepted grid points.
    pub value: f64,
    #[serde(serialize_with = "ser_complex")]
    pub argmax: Complex64,
    /// Largest weighted truncation tail among accepted points.
    pub max_tail: f64,
    /// Points dropped because their tail exceeded the threshold.
    pub excluded: usize,
}

pub(crate) fn ser_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// One sampled point of the seminorm computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridRecord {
    pub r: f64,
    pub theta: f64,
    pub weight: f64,
    pub deriv_abs: f64,
    pub product: f64,
    pub tail: f64,
    pub excluded: bool,
}

/// Per-point records in radius-major order.
pub fn grid_records(f: &PowerSeries, p: &BlochParams, g: &SampleGrid) -> Vec<GridRecord> {
    let d = f.derivative();
    let coeffs = d.coeffs();
    (0..g.len())
        .into_par_iter()
        .map(|i| {
            let (r, theta) = g.point(i);
            let z = Complex64::from_polar(r, theta);
            let deriv_abs = horner(coeffs, z).norm();
            let tail = d.tail_estimate(r);
            let weight = p.weight(r);
            GridRecord {
                r,
                theta,
                weight,
                deriv_abs,
                product: weight * deriv_abs,
                tail,
                excluded: tail > TAIL_THRESHOLD * (1.0 + deriv_abs),
            }
        })
        .collect()
}

pub fn seminorm_estimate(
    f: &PowerSeries,
    p: &BlochParams,
    g: &SampleGrid,
) -> Result<SeminormEstimate> {
    let mut est = SeminormEstimate {
        value: 0.0,
        argmax: Complex64::new(0.0, 0.0),
        max_tail: 0.0,
        excluded: 0,
    };
    let mut first = true;
    for rec in grid_records(f, p, g) {
        if rec.excluded {
            est.excluded += 1;
            continue;
        }
        est.max_tail = est.max_tail.max(rec.weight * rec.tail);
        if first || rec.product > est.value {
            est.value = rec.product;
            est.argmax = Complex64::from_polar(rec.r, rec.theta);
            first = false;
        }
    }
    Ok(est)
}

/// `|f(0)| + ‖f‖_{B_α}` with the seminorm estimated on `g`.
pub fn bloch_norm(f: &PowerSeries, p: &BlochParams, g: &SampleGrid) -> Result<f64> {
    Ok(f.coeff(0).norm() + seminorm_estimate(f, p, g)?.value)
}

/// Grid maximum of `|f(z)|`, skipping points with a large truncation tail.
pub fn sup_modulus(f: &PowerSeries, g: &SampleGrid) -> f64 {
    let coeffs = f.coeffs();
    (0..g.len())
        .into_par_iter()
        .map(|i| {
            let (r, theta) = g.point(i);
            let v = horner(coeffs, Complex64::from_polar(r, theta)).norm();
            if f.tail_estimate(r) > TAIL_THRESHOLD * (1.0 + v) {
                0.0
            } else {
                v
            }
        })
        .reduce(|| 0.0, f64::max)
}

/// Pointwise growth bound for `f ∈ B_α` at `|z| = r`:
///
/// - `α < 1`: `|f(0)| + s/(1 − α)`
/// - `α = 1`: `|f(0)| + (s/2)·log((1 + r)/(1 − r))`
/// - `α > 1`: `|f(0)| + (s/(α − 1))·((1 − r)^(1−α) − 1)`
pub fn growth_bound(p: &BlochParams, r: f64, seminorm: f64, f0: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("radius {r} outside [0, 1)")));
    }
    let a = p.alpha();
    let g = if a < 1.0 {
        seminorm / (1.0 - a)
    } else if a == 1.0 {
        // log((1+r)/(1−r)) = 2 atanh r
        seminorm * r.atanh()
    } else {
        seminorm / (a - 1.0) * ((1.0 - r).powf(1.0 - a) - 1.0)
    };
    Ok(f0 + g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub passed: bool,
    /// Smallest `bound + slack − |f(z)|` over checked points.
    pub worst_margin: f64,
    #[serde(serialize_with = "ser_complex")]
    pub worst_point: Complex64,
    pub seminorm: SeminormEstimate,
    pub checked: usize,
    /// Points skipped because the truncation tail of `f` was too large.
    pub skipped: usize,
}

/// Checks `|f(z)| ≤ growth_bound(α, |z|, ‖f‖, |f(0)|)` on every point of `g`.
/// The seminorm is estimated on a 2× refinement of `g`.
pub fn growth_check(f: &PowerSeries, p: &BlochParams, g: &SampleGrid) -> Result<GrowthReport> {
    let seminorm = seminorm_estimate(f, p, &g.refined(2))?;
    let s = seminorm.value + seminorm.max_tail;
    let f0 = f.coeff(0).norm();
    let coeffs = f.coeffs();
    let margins: Vec<Option<f64>> = (0..g.len())
        .into_par_iter()
        .map(|i| {
            let (r, theta) = g.point(i);
            let v = horner(coeffs, Complex64::from_polar(r, theta)).norm();
            let tail = f.tail_estimate(r);
            if tail > TAIL_THRESHOLD * (1.0 + v) {
                return None;
            }
            let bound = growth_bound(p, r, s, f0).expect("grid radii are inside the disk");
            Some(bound + GROWTH_SLACK + tail - v)
        })
        .collect();

    let mut report = GrowthReport {
        passed: true,
        worst_margin: f64::INFINITY,
        worst_point: Complex64::new(0.0, 0.0),
        seminorm,
        checked: 0,
        skipped: 0,
    };
    for (i, m) in margins.into_iter().enumerate() {
        match m {
            None => report.skipped += 1,
            Some(m) => {
                report.checked += 1;
                if m < report.worst_margin {
                    report.worst_margin = m;
                    let (r, theta) = g.point(i);
                    report.worst_point = Complex64::from_polar(r, theta);
                }
            }
        }
    }
    report.passed = report.worst_margin >= 0.0;
    Ok(report)
}

/// CSV with columns `r,theta,weight,deriv_abs,product,tail,excluded`.
pub fn write_grid_csv<W: Write>(records: &[GridRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.serialize(rec).map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
    Ok(())
}
