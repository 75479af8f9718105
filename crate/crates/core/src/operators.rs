//! Generalized β-Cesàro operators in the coefficient domain.
//!
//! For a symbol `g(w) = Σ_j a_j (1 − b_j w)^(−β) + h(w)` with Taylor
//! coefficients `γ_k`, the operator `C_g f(z) = ∫₀ᶻ f(w) g(w)/w dw` maps
//! `f = Σ c_n zⁿ` (with `c_0 = 0`) to
//!
//! ```text
//! (C_g f)_m = (1/m) Σ_{n=1..m} c_n γ_{m−n}.
//! ```
//!
//! The coefficient matrix is lower triangular with diagonal `g(0)/n`, so
//! truncation commutes with the operator and the truncated spectrum is exact.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{seminorm_estimate, ser_complex, BlochParams, SampleGrid};
use crate::error::{domain, LabError, Result};
use crate::series::{binomial_series, PowerSeries, DEFAULT_ORDER};

/// Tolerance for `|b_j| = 1` and for pairwise distinctness of the `b_j`.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// `|g(0)|` below this is treated as zero.
pub const ZERO_SYMBOL_TOL: f64 = 1e-12;

/// One pole term `a / (1 − b w)^β` of the symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolTerm {
    pub a: Complex64,
    pub b: Complex64,
}

/// The operator symbol `g_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGBeta {
    terms: Vec<SymbolTerm>,
    beta: f64,
    h: PowerSeries,
}

impl SymbolGBeta {
    pub fn new(terms: Vec<SymbolTerm>, beta: f64, h: PowerSeries) -> Result<Self> {
        if !beta.is_finite() {
            return Err(LabError::Invalid(format!("beta must be finite, got {beta}")));
        }
        for (j, t) in terms.iter().enumerate() {
            if !(t.a.norm() > 0.0) || !t.a.re.is_finite() || !t.a.im.is_finite() {
                return Err(domain(format!("term {j}: a must be nonzero and finite")));
            }
            if (t.b.norm() - 1.0).abs() > UNIMODULAR_TOL {
                return Err(domain(format!("term {j}: |b| = {} is not 1", t.b.norm())));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if (terms[i].b - terms[j].b).norm() <= UNIMODULAR_TOL {
                    return Err(domain(format!("terms {i} and {j} share the point b")));
                }
            }
        }
        Ok(Self { terms, beta, h })
    }

    /// Builds `b_j = exp(iθ_j)` from angles, so unimodularity holds by construction.
    pub fn from_angles(terms: &[(Complex64, f64)], beta: f64, h: PowerSeries) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|&(a, theta)| SymbolTerm {
                a,
                b: Complex64::from_polar(1.0, theta),
            })
            .collect();
        Self::new(terms, beta, h)
    }

    /// `(1 − w)^(−β)`: the plain β-Cesàro operator (`β = 0` is the Alexander operator).
    pub fn cesaro(beta: f64) -> Self {
        Self::new(
            vec![SymbolTerm {
                a: Complex64::new(1.0, 0.0),
                b: Complex64::new(1.0, 0.0),
            }],
            beta,
            PowerSeries::zero(0),
        )
        .expect("the plain symbol is valid")
    }

    /// Symbol with no pole terms: `g = h`.
    pub fn bounded(beta: f64, h: PowerSeries) -> Self {
        Self { terms: Vec::new(), beta, h }
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    /// `g(0) = Σ a_j + h(0)`.
    pub fn value_at_zero(&self) -> Complex64 {
        self.terms.iter().map(|t| t.a).sum::<Complex64>() + self.h.coeff(0)
    }

    /// Taylor coefficients `γ_0..=γ_n` of the symbol.
    pub fn series(&self, n: usize) -> PowerSeries {
        let mut acc = self.h.resize(n);
        for t in &self.terms {
            acc = &acc + &binomial_series(self.beta, t.b, n).scale(t.a);
        }
        acc
    }

    /// Same symbol multiplied by `c` (all `a_j` and `h`).
    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| SymbolTerm { a: t.a * c, b: t.b })
            .collect();
        Self::new(terms, self.beta, self.h.scale(c))
    }

    /// Grid estimate of `‖h‖_∞`.
    pub fn h_sup_norm(&self, g: &SampleGrid) -> f64 {
        crate::bloch::sup_modulus(&self.h, g)
    }

    /// Grid estimate of `‖g‖_∞` from the order-`n` truncation (meaningful
    /// when `β ≤ 0`, where the symbol is bounded).
    pub fn sup_norm(&self, g: &SampleGrid, n: usize) -> f64 {
        crate::bloch::sup_modulus(&self.series(n), g)
    }
}

/// `Σ_j a_j binomial_series(β, b_j, N) + h`, truncated to `N`.
pub fn symbol_series(s: &SymbolGBeta, n: usize) -> PowerSeries {
    s.series(n)
}

// Symbol file: {"terms":[{"a":[re,im],"b_angle":θ}], "beta":β, "h":{"coeffs":[...]}}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    a: [f64; 2],
    b_angle: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolRepr {
    terms: Vec<TermRepr>,
    beta: f64,
    #[serde(default = "zero_h")]
    h: PowerSeries,
}

fn zero_h() -> PowerSeries {
    PowerSeries::zero(0)
}

impl Serialize for SymbolGBeta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolRepr {
            terms: self
                .terms
                .iter()
                .map(|t| TermRepr {
                    a: [t.a.re, t.a.im],
                    b_angle: t.b.arg(),
                })
                .collect(),
            beta: self.beta,
            h: self.h.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolGBeta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SymbolRepr::deserialize(d)?;
        let terms: Vec<_> = r
            .terms
            .iter()
            .map(|t| (Complex64::new(t.a[0], t.a[1]), t.b_angle))
            .collect();
        SymbolGBeta::from_angles(&terms, r.beta, r.h).map_err(serde::de::Error::custom)
    }
}

/// `C_g f` at the order of `f`.
pub fn apply_generalized(f: &PowerSeries, s: &SymbolGBeta) -> Result<PowerSeries> {
    let q = f.div_by_z()?;
    if f.order() == 0 {
        return Ok(f.clone());
    }
    let gamma = s.series(q.order());
    Ok(q.mul(&gamma).integrate())
}

/// `C_β f = ∫₀ᶻ f(w) / (w (1 − w)^β) dw`.
pub fn apply_beta_cesaro(f: &PowerSeries, beta: f64) -> Result<PowerSeries> {
    apply_generalized(f, &SymbolGBeta::cesaro(beta))
}

/// Dense lower-triangular matrix acting on `(c_1, …, c_N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    size: usize,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry in row `m`, column `n` (both 1-based): the weight of `c_n` in
    /// the coefficient of `z^m`.
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        assert!((1..=self.size).contains(&m) && (1..=self.size).contains(&n));
        self.entries[(m - 1) * self.size + (n - 1)]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (1..=self.size).map(|n| self.entry(n, n)).collect()
    }

    /// Matrix-vector product on the coefficients `c_1..=c_N` of `f`.
    pub fn apply(&self, f: &PowerSeries) -> Result<PowerSeries> {
        if f.coeff(0) != Complex64::new(0.0, 0.0) {
            return Err(domain("f(0) != 0: function is not in H_0"));
        }
        let n = self.size;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (m, o) in out.iter_mut().enumerate().skip(1) {
            let row = &self.entries[(m - 1) * n..m * n];
            *o = (1..=m).map(|k| row[k - 1] * f.coeff(k)).sum();
        }
        Ok(PowerSeries::from_parts(out, false))
    }

    /// Dense row-major CSV: one line per row, `re+imi` per cell.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        for m in 0..self.size {
            let row: Vec<String> = self.entries[m * self.size..(m + 1) * self.size]
                .iter()
                .map(|c| format!("{}{:+}i", c.re, c.im))
                .collect();
            w.write_record(&row).map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
        }
        w.flush().map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
        Ok(())
    }

    /// Rows as `[[re, im], …]` lists for JSON reports.
    pub fn rows(&self) -> Vec<Vec<[f64; 2]>> {
        self.entries
            .chunks(self.size)
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
            .collect()
    }
}

/// `entry(m, n) = γ_{m−n} / m` for `1 ≤ n ≤ m ≤ N`.
pub fn operator_matrix(s: &SymbolGBeta, n: usize) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(domain("matrix size must be at least 1"));
    }
    let gamma = s.series(n - 1);
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for m in 1..=n {
        for k in 1..=m {
            entries[(m - 1) * n + (k - 1)] = gamma.coeff(m - k) / m as f64;
        }
    }
    Ok(OperatorMatrix { size: n, entries })
}

/// Eigenvalues of the truncation (its diagonal), by decreasing modulus.
pub fn truncated_spectrum(m: &OperatorMatrix) -> Vec<Complex64> {
    let mut d = m.diagonal();
    d.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    d
}

fn nonzero_g0(s: &SymbolGBeta) -> Result<Complex64> {
    let g0 = s.value_at_zero();
    if g0.norm() < ZERO_SYMBOL_TOL {
        return Err(LabError::SpectrumEmpty);
    }
    Ok(g0)
}

/// `f − f(0)`, with the constant set to zero rather than subtracted, so
/// that rounding in `g(0)` cannot leave a residue.
fn without_constant(f: &PowerSeries) -> PowerSeries {
    let mut c = f.coeffs().to_vec();
    c[0] = Complex64::new(0.0, 0.0);
    PowerSeries::from_parts(c, f.is_exact())
}

/// `ψ_n = exp((n/g(0)) ∫₀ᶻ (g(w) − g(0))/w dw)` to order `order`. The
/// eigenfunction for the eigenvalue `g(0)/n` is `zⁿ ψ_n`.
pub fn eigenfunction_psi(s: &SymbolGBeta, n: usize, order: usize) -> Result<PowerSeries> {
    if n == 0 {
        return Err(domain("eigenfunction index must be at least 1"));
    }
    let g0 = nonzero_g0(s)?;
    let gamma = s.series(order.max(1));
    let centered = without_constant(&gamma);
    let log_psi = centered
        .div_by_z()?
        .integrate()
        .scale(Complex64::new(n as f64, 0.0) / g0)
        .resize(order);
    log_psi.exp()
}

/// The `h`-factor `η = exp((n/g(0)) ∫₀ᶻ (h(w) − h(0))/w dw)` of `ψ_n`.
pub fn eta_factor(s: &SymbolGBeta, n: usize, order: usize) -> Result<PowerSeries> {
    let g0 = nonzero_g0(s)?;
    let h = s.h().resize(order.max(1));
    let centered = without_constant(&h);
    centered
        .div_by_z()?
        .integrate()
        .scale(Complex64::new(n as f64, 0.0) / g0)
        .resize(order)
        .exp()
}

/// `zⁿ ψ_n` to order `order`.
pub fn eigenvector(s: &SymbolGBeta, n: usize, order: usize) -> Result<PowerSeries> {
    let psi = eigenfunction_psi(s, n, order.saturating_sub(n))?;
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    c.extend_from_slice(psi.coeffs());
    c.truncate(order + 1);
    c.resize(order + 1, Complex64::new(0.0, 0.0));
    let exact = psi.is_exact();
    Ok(if exact {
        PowerSeries::new(c)?
    } else {
        PowerSeries::truncation(c)?
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// Eigenvalues `g(0)/n` are admissible without extra conditions.
    Unconditional,
    /// All pole-term conditions hold.
    Pass,
    /// At least one pole-term condition fails.
    Fail,
    /// `g(0) = 0`: no eigenvalues.
    Empty,
    /// Parameters outside every known case.
    NotCovered,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermCondition {
    pub index: usize,
    /// `Re(a_j / g(0))`
    pub re_ratio: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(serialize_with = "ser_complex")]
    pub g0: Complex64,
    pub alpha: f64,
    pub beta: f64,
    pub admissibility: Admissibility,
    /// Per-term `Re(a_j/g(0)) ≤ 0` checks (β = 1 only).
    pub term_conditions: Vec<TermCondition>,
    /// `g(0)/n` for `n = 1..=16` (empty when `g(0) = 0`).
    #[serde(serialize_with = "ser_complex_vec")]
    pub leading_eigenvalues: Vec<Complex64>,
    pub note: String,
}

pub(crate) fn ser_complex_vec<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

/// Predicted point spectrum `{g(0)/n}` and the parameter conditions under
/// which each eigenfunction lies in `B_α⁰`.
pub fn point_spectrum(s: &SymbolGBeta, alpha: f64) -> SpectrumReport {
    let g0 = s.value_at_zero();
    let beta = s.beta();
    let mut rep = SpectrumReport {
        g0,
        alpha,
        beta,
        admissibility: Admissibility::NotCovered,
        term_conditions: Vec::new(),
        leading_eigenvalues: Vec::new(),
        note: String::new(),
    };
    if g0.norm() < ZERO_SYMBOL_TOL {
        rep.admissibility = Admissibility::Empty;
        rep.note = "g(0) = 0: the point spectrum is empty".into();
        return rep;
    }
    rep.leading_eigenvalues = (1..=16).map(|n| g0 / n as f64).collect();

    if beta == 0.0 {
        rep.admissibility = Admissibility::Unconditional;
        rep.note = "generalized Alexander operator: {g(0)/n} for every alpha > 0".into();
    } else if beta == 1.0 {
        if alpha >= 1.0 {
            rep.term_conditions = s
                .terms()
                .iter()
                .enumerate()
                .map(|(index, t)| {
                    let re_ratio = (t.a / g0).re;
                    TermCondition {
                        index,
                        re_ratio,
                        holds: re_ratio <= 0.0,
                    }
                })
                .collect();
            let all = rep.term_conditions.iter().all(|c| c.holds);
            rep.admissibility = if all { Admissibility::Pass } else { Admissibility::Fail };
            rep.note = if all {
                "generalized Cesaro operator, alpha >= 1: Re(a_j/g(0)) <= 0 for all j".into()
            } else {
                "generalized Cesaro operator, alpha >= 1: Re(a_j/g(0)) <= 0 fails for some j; \
                 the spectrum for partially failing symbols is not determined"
                    .into()
            };
        } else {
            rep.note = "beta = 1 with alpha < 1 is not covered".into();
        }
    } else if beta > 0.0 && beta < 1.0 {
        let covered = (beta <= alpha && alpha < 1.0) || alpha > 1.0 || alpha == 1.0;
        if covered {
            rep.admissibility = Admissibility::Pass;
            rep.note = "0 < beta < 1: {g(0)/n}; the convergence argument certifies \
                        beta < m/(m+1) for every m, reported as beta < 1"
                .into();
        } else {
            rep.note = "0 < beta < 1 with alpha < beta is not covered".into();
        }
    } else {
        rep.note = format!("beta = {beta} is not covered");
    }
    rep
}

/// `K_s f(z) = ∫₀ᶻ f(s t) g(t)/t dt` for a dilation `0 < s < 1`.
pub fn compact_approximant(f: &PowerSeries, s: &SymbolGBeta, dilation: f64) -> Result<PowerSeries> {
    if !(dilation > 0.0 && dilation < 1.0) {
        return Err(domain(format!("dilation must lie in (0, 1), got {dilation}")));
    }
    apply_generalized(&f.dilate(dilation), s)
}

/// `‖C_g h_n‖_{B_α}` for the unit vector `h_n = zⁿ/(n‖zⁿ/n‖_{B_α})`, all
/// norms estimated on `g`. The series order is `max(n, DEFAULT_ORDER)`.
pub fn approximate_eigen_probe(
    s: &SymbolGBeta,
    n: usize,
    p: &BlochParams,
    g: &SampleGrid,
) -> Result<f64> {
    approximate_eigen_probe_at_order(s, n, p, g, n.max(DEFAULT_ORDER))
}

pub fn approximate_eigen_probe_at_order(
    s: &SymbolGBeta,
    n: usize,
    p: &BlochParams,
    g: &SampleGrid,
    order: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(domain("probe index must be at least 1"));
    }
    let f_n = PowerSeries::monomial(n, order.max(n)).scale(Complex64::new(1.0 / n as f64, 0.0));
    let norm = seminorm_estimate(&f_n, p, g)?.value;
    if norm == 0.0 {
        return Err(domain("grid does not see z^n; refine it"));
    }
    let h_n = f_n.scale(Complex64::new(1.0 / norm, 0.0));
    Ok(seminorm_estimate(&apply_generalized(&h_n, s)?, p, g)?.value)
}

/// `f = z(1 − z) g′`, the preimage of `g` under the Cesàro operator `C_1`.
///
/// Polynomials produce a polynomial of one higher order; truncations keep
/// their order.
pub fn preimage_under_cesaro(g: &PowerSeries) -> Result<PowerSeries> {
    if g.coeff(0) != Complex64::new(0.0, 0.0) {
        return Err(domain("g(0) != 0: function is not in H_0"));
    }
    let n = g.order();
    let out_order = if g.is_exact() { n + 1 } else { n };
    // f_k = k g_k − (k − 1) g_{k−1}
    let coeffs: Vec<Complex64> = (0..=out_order)
        .map(|k| {
            if k == 0 {
                return Complex64::new(0.0, 0.0);
            }
            g.coeff(k) * k as f64 - g.coeff(k - 1) * (k - 1) as f64
        })
        .collect();
    Ok(PowerSeries::from_parts(coeffs, g.is_exact()))
}
