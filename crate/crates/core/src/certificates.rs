//! Boundedness constants, the (α, β) decision table, and divergence probes
//! for the unbounded regimes.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{domain, LabError, Result};

/// Right end of the search interval for the 1-D suprema.
pub const SUP_T_MAX: f64 = 1.0 - 1e-9;

/// Domain tolerance of the golden-section refinement.
pub const SUP_T_TOL: f64 = 1e-10;

/// A fitted exponent above this counts as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 0.05;

/// Which closed-form supremum certifies boundedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// `β ≤ α < 1`
    SmallAlpha,
    /// `β ≤ 1 < α`
    LargeAlpha,
    /// `β < α = 1`
    UnitAlpha,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundConstant {
    pub alpha: f64,
    pub beta: f64,
    pub case: BoundCase,
    pub value: f64,
    /// Where the maximum sits; `1.0` when it is the limit `t → 1`.
    pub argmax_t: f64,
    pub at_boundary: bool,
}

fn bound_case(alpha: f64, beta: f64) -> Result<BoundCase> {
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(LabError::Invalid("alpha and beta must be finite".into()));
    }
    if beta < 0.0 {
        // the constants rely on |1 − z|^β ≥ (1 − |z|)^β
        return Err(domain(format!("bound constants need beta >= 0, got {beta}")));
    }
    if alpha > 0.0 && alpha < 1.0 && beta <= alpha {
        Ok(BoundCase::SmallAlpha)
    } else if alpha > 1.0 && beta <= 1.0 {
        Ok(BoundCase::LargeAlpha)
    } else if alpha == 1.0 && beta < 1.0 {
        Ok(BoundCase::UnitAlpha)
    } else {
        Err(domain(format!(
            "(alpha={alpha}, beta={beta}) is not a bounded regime"
        )))
    }
}

/// `atanh(t)/t`, with its series near 0.
fn atanh_over_t(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 + t2 / 3.0 + t2 * t2 / 5.0
    } else {
        t.atanh() / t
    }
}

/// `Σ_{k=1..m} C(m,k)(−t)^{k−1} = (1 − (1 − t)^m)/t`.
fn alternating_binomial_sum(m: f64, t: f64) -> f64 {
    if t == 0.0 {
        m
    } else {
        -(m * (-t).ln_1p()).exp_m1() / t
    }
}

fn bound_integrand(case: BoundCase, alpha: f64, beta: f64, t: f64) -> f64 {
    match case {
        BoundCase::SmallAlpha => (1.0 + t).powf(alpha) * (1.0 - t).powf(alpha - beta) / (1.0 - alpha),
        BoundCase::LargeAlpha => {
            (1.0 + t).powf(alpha) * (1.0 - t).powf(1.0 - beta) / (alpha - 1.0)
                * alternating_binomial_sum(alpha.ceil(), t)
        }
        // log((1+t)/(1−t))/t = 2 atanh(t)/t
        BoundCase::UnitAlpha => (1.0 - t).powf(1.0 - beta) * 2.0 * atanh_over_t(t),
    }
}

fn boundary_limit(case: BoundCase, alpha: f64, beta: f64) -> f64 {
    match case {
        BoundCase::SmallAlpha if alpha == beta => 2f64.powf(alpha) / (1.0 - alpha),
        BoundCase::LargeAlpha if beta == 1.0 => 2f64.powf(alpha) / (alpha - 1.0),
        _ => 0.0,
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Scan points on `[0, SUP_T_MAX]`: a uniform part plus points clustered at 1.
fn scan_points() -> Vec<f64> {
    let mut ts: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0 * SUP_T_MAX).collect();
    ts.extend((0..=1000).map(|i| 1.0 - 10f64.powf(-1.0 - 8.0 * i as f64 / 1000.0)));
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// The supremum constant with its location.
pub fn bound_constant_detail(alpha: f64, beta: f64) -> Result<BoundConstant> {
    let case = bound_case(alpha, beta)?;
    let f = |t: f64| bound_integrand(case, alpha, beta, t);
    let ts = scan_points();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let mut best = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v > vals[best] {
            best = i;
        }
    }
    let lo = ts[best.saturating_sub(1)];
    let hi = ts[(best + 1).min(ts.len() - 1)];
    let (mut t_star, mut value) = golden_max(f, lo, hi, SUP_T_TOL);
    if vals[best] > value {
        t_star = ts[best];
        value = vals[best];
    }
    let limit = boundary_limit(case, alpha, beta);
    // an increasing integrand can overshoot its limit by rounding
    let at_boundary = limit > 0.0 && limit >= value * (1.0 - 1e-12);
    if at_boundary {
        t_star = 1.0;
        value = limit;
    }
    Ok(BoundConstant {
        alpha,
        beta,
        case,
        value,
        argmax_t: t_star,
        at_boundary,
    })
}

/// Constant `K` with `‖C_β f‖_{B_α} ≤ K ‖f‖_{B_α}` in the bounded regimes.
pub fn bound_constant(alpha: f64, beta: f64) -> Result<f64> {
    Ok(bound_constant_detail(alpha, beta)?.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Bounded,
    Unbounded,
    Compact,
    EssentialNormZero,
    NotCovered,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Bounded => "Bounded",
            Verdict::Unbounded => "Unbounded",
            Verdict::Compact => "Compact",
            Verdict::EssentialNormZero => "EssentialNormZero",
            Verdict::NotCovered => "NotCovered",
        }
    }
}

/// The test function that witnesses unboundedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `f(z) = z`, for `β > α`.
    Identity,
    /// `f(z) = Log(1 − z)`, for `β ≥ α ≥ 1`.
    Log,
    /// `f(z) = z/(1 − z)^α` probed in `B_{α+1}`, for `β > 1`.
    Pole,
}

impl Witness {
    pub fn as_str(self) -> &'static str {
        match self {
            Witness::Identity => "identity",
            Witness::Log => "log",
            Witness::Pole => "pole",
        }
    }
}

impl std::str::FromStr for Witness {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Witness::Identity),
            "log" => Ok(Witness::Log),
            "pole" => Ok(Witness::Pole),
            _ => Err(LabError::Invalid(format!(
                "unknown witness {s:?} (expected identity, log or pole)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdicts: Vec<Verdict>,
    pub source: &'static str,
    pub witness: Option<Witness>,
}

impl Classification {
    /// `"Bounded+EssentialNormZero"` style label.
    pub fn label(&self) -> String {
        self.verdicts
            .iter()
            .map(|v| v.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn contains(&self, v: Verdict) -> bool {
        self.verdicts.contains(&v)
    }

    /// Compact directly, or through a zero essential norm.
    pub fn is_compact(&self) -> bool {
        self.contains(Verdict::Compact) || self.contains(Verdict::EssentialNormZero)
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Classification", 4)?;
        st.serialize_field("verdict", &self.label())?;
        st.serialize_field("verdicts", &self.verdicts)?;
        st.serialize_field("source", self.source)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// Decision table for `C_β` on `B_α⁰`.
pub fn classify(alpha: f64, beta: f64) -> Classification {
    use Verdict::*;
    let cell = |verdicts: &[Verdict], source: &'static str, witness: Option<Witness>| Classification {
        verdicts: verdicts.to_vec(),
        source,
        witness,
    };
    let unbounded = |alpha: f64, beta: f64| {
        if beta > alpha {
            cell(&[Unbounded], "identity witness, beta > alpha", Some(Witness::Identity))
        } else if beta == alpha {
            cell(&[Unbounded], "log witness, alpha = beta >= 1", Some(Witness::Log))
        } else {
            cell(&[Unbounded], "pole witness, alpha > beta > 1", Some(Witness::Pole))
        }
    };
    if !(alpha.is_finite() && beta.is_finite()) || alpha <= 0.0 {
        return cell(&[NotCovered], "alpha must be positive and finite", None);
    }
    if alpha < 1.0 {
        if beta < alpha {
            cell(
                &[Bounded, Compact, EssentialNormZero],
                "bound for beta <= alpha < 1; compact for beta < alpha < 1",
                None,
            )
        } else if beta == alpha {
            cell(
                &[Bounded, EssentialNormZero],
                "bound for beta <= alpha < 1; essential norm zero for beta = alpha < 1",
                None,
            )
        } else {
            unbounded(alpha, beta)
        }
    } else if alpha == 1.0 {
        if beta < 1.0 {
            cell(
                &[Bounded, Compact, EssentialNormZero],
                "bound for beta < alpha = 1; compact for beta < alpha = 1",
                None,
            )
        } else {
            unbounded(alpha, beta)
        }
    } else if beta < 1.0 {
        cell(
            &[Bounded, Compact, EssentialNormZero],
            "bound for beta <= 1 < alpha; compact for beta < 1 < alpha",
            None,
        )
    } else if beta == 1.0 {
        cell(
            &[Bounded, EssentialNormZero],
            "bound for beta <= 1 < alpha; essential norm zero for beta = 1 < alpha",
            None,
        )
    } else {
        unbounded(alpha, beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    Diverges,
    Bounded,
}

/// Fit of `log v = p x + q log x + c` with `x = −log(1 − t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogCorrectedFit {
    pub exponent: f64,
    pub log_power: f64,
    /// `q` within 0.5 of 1.
    pub log_correction_detected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub witness: Witness,
    pub alpha: f64,
    pub beta: f64,
    pub samples: Vec<(f64, f64)>,
    /// Slope of `log(value)` against `−log(1 − t)`.
    pub fitted_exponent: f64,
    /// Only for the log witness.
    pub log_fit: Option<LogCorrectedFit>,
    pub verdict: ProbeVerdict,
}

impl ProbeReport {
    /// Columns `t,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| LabError::Invalid(format!("csv: {e}"));
        w.write_record(["t", "value"]).map_err(err)?;
        for (t, v) in &self.samples {
            w.write_record([t.to_string(), v.to_string()]).map_err(err)?;
        }
        w.flush().map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
        Ok(())
    }
}

/// Forty points with `1 − t` log-spaced from `0.1` down to `1e−4`.
pub fn default_t_list() -> Vec<f64> {
    (0..40)
        .map(|i| 1.0 - 10f64.powf(-1.0 - 3.0 * i as f64 / 39.0))
        .collect()
}

fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let a = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let b = DVector::from_column_slice(y);
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| LabError::Invalid(format!("least squares: {e}")))?;
    Ok(sol.iter().copied().collect())
}

/// Displayed quantity of the witness along `z = t`.
pub fn witness_quantity(which: Witness, alpha: f64, beta: f64, t: f64) -> f64 {
    match which {
        Witness::Identity => (1.0 + t).powf(alpha) / (1.0 - t).powf(beta - alpha),
        Witness::Log => {
            (1.0 + t).powf(alpha) / (1.0 - t).powf(beta - alpha) * (-t).ln_1p().abs() / t
        }
        Witness::Pole => (1.0 + t).powf(alpha + 1.0) / (1.0 - t).powf(beta - 1.0),
    }
}

/// Samples a witness quantity on `t_list` and fits its blow-up rate at `t → 1`.
pub fn counterexample_probe(
    alpha: f64,
    beta: f64,
    which: Witness,
    t_list: &[f64],
) -> Result<ProbeReport> {
    let in_regime = match which {
        Witness::Identity => beta > alpha,
        Witness::Log => beta >= alpha && alpha >= 1.0,
        Witness::Pole => beta > 1.0,
    };
    if !(alpha > 0.0) || !in_regime {
        return Err(domain(format!(
            "the {} witness does not apply at (alpha={alpha}, beta={beta})",
            which.as_str()
        )));
    }
    if t_list.len() < 3 {
        return Err(domain("t_list needs at least three points"));
    }
    if t_list.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
        return Err(domain("t_list must lie in (0, 1)"));
    }
    if t_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("t_list must be strictly increasing"));
    }

    let samples: Vec<(f64, f64)> = t_list
        .iter()
        .map(|&t| (t, witness_quantity(which, alpha, beta, t)))
        .collect();
    let xs: Vec<f64> = t_list.iter().map(|t| -(-t).ln_1p()).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, v)| v.ln()).collect();

    let plain_rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, 1.0]).collect();
    let fitted_exponent = least_squares(&plain_rows, &ys)?[0];

    let log_fit = if which == Witness::Log {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, x.ln(), 1.0]).collect();
        let sol = least_squares(&rows, &ys)?;
        Some(LogCorrectedFit {
            exponent: sol[0],
            log_power: sol[1],
            log_correction_detected: (sol[1] - 1.0).abs() <= 0.5,
        })
    } else {
        None
    };

    Ok(ProbeReport {
        witness: which,
        alpha,
        beta,
        samples,
        fitted_exponent,
        log_fit,
        verdict: if fitted_exponent > DIVERGENCE_THRESHOLD {
            ProbeVerdict::Diverges
        } else {
            ProbeVerdict::Bounded
        },
    })
}

/// `|1 − e^{ln2/n}| + e^{ln2/n}·|e^{iπ/(2n)} − 1|`, a z-independent
/// majorant proposed for `|1 − (1 − bz)^{1/n}|`.
pub fn one_minus_power_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let n = n as f64;
    let growth = (std::f64::consts::LN_2 / n).exp_m1();
    // |e^{iθ} − 1| = 2 sin(θ/2)
    let chord = 2.0 * (std::f64::consts::PI / (4.0 * n)).sin();
    Ok(growth + (1.0 + growth) * chord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Dense brute-force maximum, independent of the golden-section search.
    fn brute_sup(f: impl Fn(f64) -> f64) -> f64 {
        let n = 2_000_000;
        (0..n)
            .map(|i| f(i as f64 / n as f64 * SUP_T_MAX))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn bound_constant_examples() {
        let b = bound_constant_detail(0.5, 0.0).unwrap();
        assert!((b.value - 2.0).abs() < 1e-12);
        assert!(b.argmax_t.abs() < 1e-6);
        assert!(!b.at_boundary);

        let b = bound_constant_detail(0.5, 0.5).unwrap();
        assert!((b.value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(b.at_boundary);

        for beta in [0.0, 0.5, 0.9, 0.99, 0.999999] {
            let v = bound_constant(1.0, beta).unwrap();
            assert!(v.is_finite() && v >= 2.0, "beta={beta}: {v}");
        }
        // removable point: log((1+t)/(1−t))/t → 2
        assert!((bound_integrand(BoundCase::UnitAlpha, 1.0, 0.5, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bound_constant_matches_brute_force() {
        for (alpha, beta) in [(0.25, 0.1), (0.75, 0.5), (2.0, 1.0), (2.5, 0.3), (1.5, 1.0), (1.0, 0.5), (1.0, 0.0)] {
            let case = bound_case(alpha, beta).unwrap();
            let brute = brute_sup(|t| {
                let mut v = 0.0;
                // direct alternating sum as the oracle for the large-alpha case
                if case == BoundCase::LargeAlpha {
                    let m = alpha.ceil() as u32;
                    let mut binom = 1.0;
                    for k in 1..=m {
                        binom *= (m - k + 1) as f64 / k as f64;
                        v += binom * (-t).powi(k as i32 - 1);
                    }
                    (1.0 + t).powf(alpha) * (1.0 - t).powf(1.0 - beta) / (alpha - 1.0) * v
                } else if case == BoundCase::UnitAlpha {
                    if t == 0.0 {
                        2.0 * (1.0f64).powf(1.0 - beta)
                    } else {
                        (1.0 - t).powf(1.0 - beta) / t * ((1.0 + t) / (1.0 - t)).ln()
                    }
                } else {
                    (1.0 + t).powf(alpha) * (1.0 - t).powf(alpha - beta) / (1.0 - alpha)
                }
            });
            let got = bound_constant(alpha, beta).unwrap();
            assert!(got >= brute - 1e-9, "({alpha},{beta}): {got} < {brute}");
            assert!(got <= brute + 1e-5 * brute.max(1.0), "({alpha},{beta}): {got} vs {brute}");
        }
    }

    #[test]
    fn bound_constant_rejects_unbounded_regimes() {
        for (alpha, beta) in [(0.5, 0.7), (1.0, 1.0), (2.0, 1.5), (3.0, 4.0), (0.0, 0.0), (0.5, -0.1)] {
            assert!(matches!(bound_constant(alpha, beta), Err(LabError::Domain(_))), "({alpha},{beta})");
        }
    }

    #[test]
    fn ceiling_in_the_large_alpha_sum() {
        // α = 2.5 → ⌈α⌉ = 3: (1 − (1−t)^3)/t = 3 − 3t + t²
        let t: f64 = 0.3;
        let want = 3.0 - 3.0 * t + t * t;
        assert!((alternating_binomial_sum(2.5f64.ceil(), t) - want).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let c = classify(0.5, 0.7);
        assert_eq!(c.verdicts, vec![Verdict::Unbounded]);
        assert_eq!(c.witness, Some(Witness::Identity));

        let c = classify(2.0, 1.0);
        assert_eq!(c.label(), "Bounded+EssentialNormZero");

        let c = classify(1.0, 1.0);
        assert_eq!(c.verdicts, vec![Verdict::Unbounded]);
        assert_eq!(c.witness, Some(Witness::Log));
    }

    #[test]
    fn classify_table_cells() {
        use Verdict::*;
        let compact = vec![Bounded, Compact, EssentialNormZero];
        let ess = vec![Bounded, EssentialNormZero];
        let cases: &[(f64, f64, Vec<Verdict>, Option<Witness>)] = &[
            (0.5, 0.25, compact.clone(), None),
            (0.5, 0.5, ess.clone(), None),
            (0.5, 0.75, vec![Unbounded], Some(Witness::Identity)),
            (1.0, 0.5, compact.clone(), None),
            (1.0, 1.0, vec![Unbounded], Some(Witness::Log)),
            (1.0, 2.0, vec![Unbounded], Some(Witness::Identity)),
            (2.0, 0.5, compact.clone(), None),
            (2.0, 1.0, ess.clone(), None),
            (3.0, 2.0, vec![Unbounded], Some(Witness::Pole)),
            (2.0, 2.0, vec![Unbounded], Some(Witness::Log)),
            (2.0, 3.0, vec![Unbounded], Some(Witness::Identity)),
            (0.0, 0.0, vec![NotCovered], None),
            (-1.0, 0.0, vec![NotCovered], None),
        ];
        for (alpha, beta, verdicts, witness) in cases {
            let c = classify(*alpha, *beta);
            assert_eq!(&c.verdicts, verdicts, "({alpha},{beta})");
            assert_eq!(&c.witness, witness, "({alpha},{beta})");
        }
    }

    #[test]
    fn classification_json() {
        let v = serde_json::to_value(classify(2.0, 1.0)).unwrap();
        assert_eq!(v["verdict"], "Bounded+EssentialNormZero");
        assert_eq!(v["verdicts"][1], "EssentialNormZero");
        assert!(v["witness"].is_null());
    }

    #[test]
    fn identity_witness_exponent() {
        let ts: Vec<f64> = (1..=30).map(|i| 1.0 - 10f64.powf(-1.0 - 2.0 * i as f64 / 30.0)).collect();
        let rep = counterexample_probe(0.5, 1.0, Witness::Identity, &ts).unwrap();
        assert!((rep.fitted_exponent - 0.5).abs() < 0.05);
        assert_eq!(rep.verdict, ProbeVerdict::Diverges);
        assert!(rep.samples.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn pole_witness_exponent() {
        let rep = counterexample_probe(1.0, 2.0, Witness::Pole, &default_t_list()).unwrap();
        assert!((rep.fitted_exponent - 1.0).abs() < 0.05);
    }

    #[test]
    fn log_witness_detects_correction() {
        let rep = counterexample_probe(1.0, 1.5, Witness::Log, &default_t_list()).unwrap();
        let fit = rep.log_fit.unwrap();
        assert!((fit.exponent - 0.5).abs() < 0.05, "{fit:?}");
        assert!(fit.log_correction_detected, "{fit:?}");
        // the plain slope is biased upward by the logarithm
        assert!(rep.fitted_exponent > fit.exponent);

        // α = β: pure logarithmic growth still reads as divergence
        let rep = counterexample_probe(1.0, 1.0, Witness::Log, &default_t_list()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::Diverges);
        assert!(rep.log_fit.unwrap().exponent.abs() < 0.05);
    }

    #[test]
    fn regime_guards() {
        let ts = default_t_list();
        assert!(counterexample_probe(1.0, 0.5, Witness::Identity, &ts).is_err());
        assert!(counterexample_probe(0.5, 1.0, Witness::Log, &ts).is_err());
        assert!(counterexample_probe(2.0, 1.0, Witness::Pole, &ts).is_err());
        assert!(counterexample_probe(0.5, 1.0, Witness::Identity, &[0.5, 0.4, 0.9]).is_err());
        assert!(counterexample_probe(0.5, 1.0, Witness::Identity, &[0.5, 0.9, 1.0]).is_err());
    }

    #[test]
    fn probe_csv() {
        let rep = counterexample_probe(0.5, 1.0, Witness::Identity, &[0.5, 0.75, 0.875]).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,value\n0.5,"));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn one_minus_power_bound_values() {
        assert!((one_minus_power_bound(1).unwrap() - (1.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!(one_minus_power_bound(1_000_000).unwrap() < 1e-5);
        assert!(one_minus_power_bound(10_000).unwrap() < 1e-3);
        let vals: Vec<f64> = (4..200).map(|n| one_minus_power_bound(n).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(one_minus_power_bound(0).is_err());
    }

    #[test]
    fn majorant_does_not_dominate_near_branch_point() {
        // |1 − (1 − bz)^{1/n}| → 1 as z → 1/b, for every n, so the bound
        // above is not a uniform majorant once it drops below 1.
        let b = Complex64::from_polar(1.0, 0.4);
        for n in [4u64, 50, 10_000] {
            let z = b.conj() * (1.0 - 1e-12);
            let w = (Complex64::new(1.0, 0.0) - b * z).powf(1.0 / n as f64);
            let lhs = (Complex64::new(1.0, 0.0) - w).norm();
            let bound = one_minus_power_bound(n).unwrap();
            if n >= 50 {
                assert!(lhs > bound, "n={n}: {lhs} <= {bound}");
            }
            assert!(lhs < 1.0);
        }
    }
}
