//! Compactness and essential-norm probes.
//!
//! Both probes report lower bounds (maxima over finite families), and the
//! verdicts are trend tests with a factor-10 decay threshold.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{seminorm_estimate, BlochParams, SampleGrid};
use crate::error::{domain, LabError, Result};
use crate::operators::{apply_generalized, compact_approximant, SymbolGBeta};
use crate::series::PowerSeries;

/// Order at which family members are carried, so operator images keep
/// their leading behaviour.
pub const PROBE_ORDER: usize = 512;

/// A null family must be below this on `|z| ≤ 1/2` by its last member.
pub const NULL_LEVEL: f64 = 1e-3;

/// Final value must drop below this fraction of the initial one.
pub const DECAY_FACTOR: f64 = 0.1;

/// Slack for monotonicity checks on estimated values.
pub const MONOTONE_NOISE: f64 = 1e-6;

const HALF_CIRCLE_ANGLES: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub enum NullKind {
    /// `z^m` normalized.
    Monomial,
    /// `f(r_m z)` with `r_m = 1 − 2^{−m}`, normalized.
    Dilation(PowerSeries),
}

impl NullKind {
    pub fn name(&self) -> &'static str {
        match self {
            NullKind::Monomial => "monomial",
            NullKind::Dilation(_) => "dilation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NullMember {
    pub m: usize,
    /// Seminorm estimate before normalization.
    pub norm: f64,
    /// `max_{|z| = 1/2} |f_m|` after normalization.
    pub half_disk_sup: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullFamily {
    pub kind: &'static str,
    pub members: Vec<PowerSeries>,
    pub info: Vec<NullMember>,
    /// The last member is below `NULL_LEVEL` on `|z| ≤ 1/2`.
    pub null_verified: bool,
    /// Flagged when the null property fails.
    pub degenerate: bool,
}

/// `max_{|z| ≤ 1/2} |f|`, by the maximum principle taken on the circle.
fn half_disk_sup(f: &PowerSeries) -> f64 {
    (0..HALF_CIRCLE_ANGLES)
        .map(|k| {
            let z = Complex64::from_polar(0.5, std::f64::consts::TAU * k as f64 / HALF_CIRCLE_ANGLES as f64);
            f.eval(z).map(|(v, _)| v.norm()).unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

fn normalized(f: PowerSeries, p: &BlochParams, g: &SampleGrid) -> Result<(PowerSeries, f64)> {
    let norm = seminorm_estimate(&f, p, g)?.value;
    if !(norm > 0.0) {
        return Err(domain("member has zero estimated seminorm"));
    }
    Ok((f.scale(Complex64::new(1.0 / norm, 0.0)), norm))
}

/// Members `m = 1..=m_max`, each normalized to unit estimated seminorm.
pub fn null_family(kind: NullKind, m_max: usize, p: &BlochParams, g: &SampleGrid) -> Result<NullFamily> {
    if m_max == 0 {
        return Err(domain("m_max must be at least 1"));
    }
    if let NullKind::Dilation(f) = &kind {
        if f.coeff(0) != Complex64::new(0.0, 0.0) {
            return Err(domain("f(0) != 0: function is not in H_0"));
        }
    }
    let built: Vec<(PowerSeries, NullMember)> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let raw = match &kind {
                NullKind::Monomial => PowerSeries::monomial(m, PROBE_ORDER.max(m)),
                NullKind::Dilation(f) => f.dilate(1.0 - 0.5f64.powi(m as i32)),
            };
            let (member, norm) = normalized(raw, p, g)?;
            let info = NullMember {
                m,
                norm,
                half_disk_sup: half_disk_sup(&member),
            };
            Ok((member, info))
        })
        .collect::<Result<_>>()?;
    let (members, info): (Vec<_>, Vec<_>) = built.into_iter().unzip();
    let null_verified = info.last().is_some_and(|i| i.half_disk_sup < NULL_LEVEL);
    Ok(NullFamily {
        kind: kind.name(),
        members,
        info,
        null_verified,
        degenerate: !null_verified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayVerdict {
    CompactConsistent,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub kind: &'static str,
    /// `(m, ‖C f_m‖)`
    pub samples: Vec<(usize, f64)>,
    pub tail_monotone: bool,
    pub decay_ratio: f64,
    pub verdict: DecayVerdict,
}

fn non_increasing(v: &[f64], slack: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + slack)
}

fn decay_ratio(first: f64, last: f64) -> f64 {
    if first > 0.0 {
        last / first
    } else {
        0.0
    }
}

/// `‖C_g f_m‖_{B_α}` along a null family. Compact-consistent when the second
/// half of the values is non-increasing and the last is below a tenth of the first.
pub fn compactness_probe(
    s: &SymbolGBeta,
    p: &BlochParams,
    fam: &NullFamily,
    g: &SampleGrid,
) -> Result<DecayReport> {
    if fam.members.is_empty() {
        return Err(domain("empty family"));
    }
    let values: Vec<f64> = fam
        .members
        .par_iter()
        .map(|f| Ok(seminorm_estimate(&apply_generalized(f, s)?, p, g)?.value))
        .collect::<Result<_>>()?;
    let first = values[0];
    let last = *values.last().unwrap();
    let tail = &values[values.len() / 2..];
    let tail_monotone = non_increasing(tail, MONOTONE_NOISE * first.max(1e-300));
    let ratio = decay_ratio(first, last);
    let all_zero = values.iter().all(|v| *v == 0.0);
    let verdict = if all_zero || (tail_monotone && ratio < DECAY_FACTOR) {
        DecayVerdict::CompactConsistent
    } else {
        DecayVerdict::Inconsistent
    };
    Ok(DecayReport {
        kind: fam.kind,
        samples: fam.info.iter().map(|i| i.m).zip(values).collect(),
        tail_monotone,
        decay_ratio: ratio,
        verdict,
    })
}

impl DecayReport {
    /// Columns `m,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_pairs(out, ["m", "value"], self.samples.iter().map(|(m, v)| (m.to_string(), *v)))
    }
}

fn write_pairs<W: Write>(
    out: W,
    header: [&str; 2],
    rows: impl Iterator<Item = (String, f64)>,
) -> Result<()> {
    let err = |e: csv::Error| LabError::Invalid(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(err)?;
    for (a, v) in rows {
        w.write_record([a, v.to_string()]).map_err(err)?;
    }
    w.flush().map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
    Ok(())
}

/// A test function with a label for reports.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    pub label: String,
    pub f: PowerSeries,
}

/// Normalized `z^m` for `m ≤ 32` and the normalized degree-256 polynomial
/// `Σ_{k≤256} z^k/k` (the truncated `−Log(1 − z)`), all carried at `PROBE_ORDER`.
pub fn default_test_family(p: &BlochParams, g: &SampleGrid) -> Result<Vec<TestFunction>> {
    let mut raw: Vec<(String, PowerSeries)> = (1..=32)
        .map(|m| (format!("z^{m}"), PowerSeries::monomial(m, PROBE_ORDER)))
        .collect();
    let log = PowerSeries::new(PowerSeries::neg_log_one_minus(256).into_coeffs())?.resize(PROBE_ORDER);
    raw.push(("-log(1-z)".into(), log));
    raw.into_par_iter()
        .map(|(label, f)| Ok(TestFunction { label, f: normalized(f, p, g)?.0 }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssNormRow {
    pub dilation: f64,
    pub max_distance: f64,
    pub argmax_member: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssNormReport {
    pub rows: Vec<EssNormRow>,
    pub monotone: bool,
    pub decay_ratio: f64,
    pub verdict: DecayVerdict,
}

impl EssNormReport {
    /// Columns `dilation,max_distance,argmax_member`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| LabError::Invalid(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["dilation", "max_distance", "argmax_member"]).map_err(err)?;
        for r in &self.rows {
            w.write_record([r.dilation.to_string(), r.max_distance.to_string(), r.argmax_member.clone()])
                .map_err(err)?;
        }
        w.flush().map_err(|e| LabError::Invalid(format!("csv: {e}")))?;
        Ok(())
    }
}

/// For each dilation `s`, `max_f ‖(C_g − K_s) f‖_{B_α}` over the family.
pub fn essential_norm_probe(
    s: &SymbolGBeta,
    p: &BlochParams,
    dilations: &[f64],
    family: &[TestFunction],
    g: &SampleGrid,
) -> Result<EssNormReport> {
    if dilations.is_empty() || family.is_empty() {
        return Err(domain("need at least one dilation and one test function"));
    }
    if dilations.iter().any(|d| !(*d > 0.0 && *d < 1.0)) {
        return Err(domain("dilations must lie in (0, 1)"));
    }
    if dilations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("dilations must be strictly increasing"));
    }
    let images: Vec<PowerSeries> = family
        .par_iter()
        .map(|t| apply_generalized(&t.f, s))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(dilations.len());
    for &d in dilations {
        let dists: Vec<f64> = family
            .par_iter()
            .zip(images.par_iter())
            .map(|(t, img)| {
                let diff = img - &compact_approximant(&t.f, s, d)?;
                Ok(seminorm_estimate(&diff, p, g)?.value)
            })
            .collect::<Result<_>>()?;
        let mut best = 0;
        for (i, v) in dists.iter().enumerate() {
            if *v > dists[best] {
                best = i;
            }
        }
        rows.push(EssNormRow {
            dilation: d,
            max_distance: dists[best],
            argmax_member: family[best].label.clone(),
        });
    }
    let vals: Vec<f64> = rows.iter().map(|r| r.max_distance).collect();
    let monotone = non_increasing(&vals, MONOTONE_NOISE);
    let ratio = decay_ratio(vals[0], *vals.last().unwrap());
    let verdict = if monotone && ratio < DECAY_FACTOR {
        DecayVerdict::CompactConsistent
    } else {
        DecayVerdict::Inconsistent
    };
    Ok(EssNormReport {
        rows,
        monotone,
        decay_ratio: ratio,
        verdict,
    })
}
