//! Truncated Taylor series with complex coefficients.
//!
//! A [`PowerSeries`] of order `N` stores `c_0..=c_N`. Binary operations
//! truncate to the shorter order, so every identity that holds for formal
//! power series holds exactly at the stored order.
//!
//! Each series also records whether it is *exact*: whether every coefficient
//! past `N` is known to be zero. Polynomials typed in by the user are exact;
//! truncations of `(1 − bw)^(−β)`, of `exp`, or of an operator image usually
//! are not. Exactness only affects the truncation tail reported by
//! [`PowerSeries::eval`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{domain, LabError, Result};

pub type ComplexScalar = Complex64;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 256;

/// Number of trailing coefficients used for the tail majorant.
const TAIL_WINDOW: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    exact: bool,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("order", &self.order())
            .field("exact", &self.exact)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

fn check_finite(coeffs: &[Complex64]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(LabError::Invalid("a series needs at least one coefficient".into()));
    }
    if let Some(i) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(LabError::Invalid(format!("coefficient {i} is not finite")));
    }
    Ok(())
}

impl PowerSeries {
    /// A polynomial: coefficients past the last stored one are zero.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs, exact: true })
    }

    /// The leading part of an infinite series.
    pub fn truncation(coeffs: Vec<Complex64>) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs, exact: false })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Internal constructor for values produced by arithmetic on finite data.
    pub(crate) fn from_parts(coeffs: Vec<Complex64>, exact: bool) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs, exact }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_parts(vec![ZERO; order + 1], true)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `z^k` stored at order `max(k, order)`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order.max(k));
        s.coeffs[k] = ONE;
        s
    }

    /// Truncation of `−Log(1 − z) = Σ zⁿ/n`.
    pub fn neg_log_one_minus(order: usize) -> Self {
        let mut c = vec![ZERO; order + 1];
        for (n, cn) in c.iter_mut().enumerate().skip(1) {
            *cn = Complex64::new(1.0 / n as f64, 0.0);
        }
        Self::from_parts(c, false)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient `n`, zero past the stored order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Marks the series as a truncation of something longer.
    pub fn into_truncation(mut self) -> Self {
        self.exact = false;
        self
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Pads with zeros or truncates to `order`.
    ///
    /// Dropping a nonzero coefficient turns an exact series into a truncation.
    pub fn resize(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let exact = self.exact && (order >= self.order() || self.degree() <= order);
        coeffs.resize(order + 1, ZERO);
        Self::from_parts(coeffs, exact)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_parts(self.coeffs.iter().map(|x| x * c).collect(), self.exact)
    }

    /// `f(s·z)`: coefficient `n` is multiplied by `sⁿ`.
    pub fn dilate(&self, s: f64) -> Self {
        let mut p = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * p;
                p *= s;
                v
            })
            .collect();
        Self::from_parts(coeffs, self.exact)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let n = self.order().min(other.order());
        let coeffs: Vec<_> = (0..=n).map(|i| op(self.coeffs[i], other.coeffs[i])).collect();
        let exact = self.exact
            && other.exact
            && self.degree() <= n
            && other.degree() <= n;
        Self::from_parts(coeffs, exact)
    }

    /// Truncated Cauchy product at order `min(N_f, N_g)`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs: Vec<_> = (0..=n)
            .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
            .collect();
        let exact = self.exact && other.exact && self.degree() + other.degree() <= n;
        Self::from_parts(coeffs, exact)
    }

    /// `exp(u)` for `u(0) = 0`, via `e_m = (1/m) Σ_{k=1..m} k·u_k·e_{m−k}`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(domain("exp requires a zero constant term"));
        }
        let n = self.order();
        let u = &self.coeffs;
        let mut e = vec![ZERO; n + 1];
        e[0] = ONE;
        for m in 1..=n {
            let s: Complex64 = (1..=m).map(|k| u[k] * (k as f64) * e[m - k]).sum();
            e[m] = s / m as f64;
        }
        let exact = self.is_zero() && self.exact;
        Ok(Self::from_parts(e, exact))
    }

    /// Antiderivative vanishing at 0; order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / (i + 1) as f64),
        );
        Self::from_parts(coeffs, self.exact)
    }

    /// Termwise derivative; order drops by one (order 0 maps to the zero
    /// series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        Self::from_parts(coeffs, self.exact)
    }

    /// `f(z)/z` for `f(0) = 0`, as a coefficient shift.
    pub fn div_by_z(&self) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(domain("f(0) != 0: function is not in H_0"));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_parts(self.coeffs[1..].to_vec(), self.exact))
    }

    /// Horner evaluation at `|z| < 1` together with a heuristic bound on the
    /// omitted tail: `M·|z|^(N+1)/(1−|z|)` with `M` the largest modulus among
    /// the last 16 stored coefficients. Exact series report a zero tail.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let r = z.norm();
        if !(r < 1.0) {
            return Err(domain(format!("|z| = {r} is not inside the unit disk")));
        }
        Ok((horner(&self.coeffs, z), self.tail_estimate(r)))
    }

    pub(crate) fn tail_estimate(&self, r: f64) -> f64 {
        if self.exact {
            return 0.0;
        }
        let start = self.coeffs.len().saturating_sub(TAIL_WINDOW);
        let m = self.coeffs[start..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if m == 0.0 {
            return 0.0;
        }
        m * r.powi(self.coeffs.len() as i32) / (1.0 - r)
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-ONE)
    }
}

/// Rising factorial `(a)_n = a(a+1)⋯(a+n−1)`, `(a)_0 = 1`, by running product.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(ONE, |acc, k| acc * (a + k as f64))
}

/// Coefficients of `(1 − b·w)^(−β)` through order `n`: `((β)_k / k!)·b^k`.
pub fn binomial_series(beta: f64, b: Complex64, n: usize) -> PowerSeries {
    debug_assert!(b.norm() <= 1.0 + 1e-12, "|b| must not exceed 1");
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = ONE;
    coeffs.push(c);
    for k in 0..n {
        c = c * b * ((beta + k as f64) / (k + 1) as f64);
        coeffs.push(c);
    }
    // (1 − bw)^m is a polynomial for integers m = −β ≥ 0.
    let exact = b == ZERO || (beta <= 0.0 && beta.fract() == 0.0 && (-beta) as usize <= n);
    PowerSeries::from_parts(coeffs, exact)
}

// JSON form: {"coeffs": [[re, im], ...]}, plus "truncated": true for
// truncations. Plain reals are accepted on input.

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        let fields = if self.exact { 1 } else { 2 };
        let mut st = serializer.serialize_struct("PowerSeries", fields)?;
        st.serialize_field("coeffs", &pairs)?;
        if !self.exact {
            st.serialize_field("truncated", &true)?;
        }
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Pair([f64; 2]),
    Real(f64),
}

impl From<CoeffRepr> for Complex64 {
    fn from(c: CoeffRepr) -> Self {
        match c {
            CoeffRepr::Pair([re, im]) => Complex64::new(re, im),
            CoeffRepr::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

/// Parses a bare coefficient list: `[[re, im], ...]` or `[re, ...]`.
pub fn parse_coeff_list(json: &str) -> Result<PowerSeries> {
    let raw: Vec<CoeffRepr> =
        serde_json::from_str(json).map_err(|e| LabError::Invalid(format!("series: {e}")))?;
    PowerSeries::new(raw.into_iter().map(Complex64::from).collect())
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            coeffs: Vec<CoeffRepr>,
            #[serde(default)]
            truncated: bool,
        }
        let r = Repr::deserialize(deserializer)?;
        let coeffs: Vec<Complex64> = r.coeffs.into_iter().map(Complex64::from).collect();
        let s = if r.truncated {
            PowerSeries::truncation(coeffs)
        } else {
            PowerSeries::new(coeffs)
        };
        s.map_err(de::Error::custom)
    }
}
