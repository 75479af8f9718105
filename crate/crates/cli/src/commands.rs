use std::fs;
use std::path::Path;

use bcl_core::series::parse_coeff_list;
use bcl_core::{
    apply_generalized, bound_constant_detail, classify, compact_approximant, compactness_probe,
    counterexample_probe, default_grid, default_t_list, default_test_family,
    eigenfunction_psi, essential_norm_probe, growth_check, null_family, operator_matrix,
    point_spectrum, preimage_under_cesaro, seminorm_estimate, truncated_spectrum, BlochParams,
    DecayVerdict, NullKind, PowerSeries, ProbeVerdict, SampleGrid, SymbolGBeta, Verdict, Witness,
};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

pub const SCHEMA: &str = "bcl-report/1";

/// A finished run: the bytes to emit and whether a verdict check failed.
pub struct Outcome {
    pub body: Vec<u8>,
    pub check_failed: bool,
}

pub type CmdResult = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn report(command: &str, config: Value, result: impl Serialize) -> Result<Vec<u8>, String> {
    let doc = json!({
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "result": result,
    });
    let mut body = serde_json::to_vec(&doc).map_err(err)?;
    body.push(b'\n');
    Ok(body)
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    w.into_inner().map_err(err)
}

fn with_csv(f: impl FnOnce(&mut Vec<u8>) -> bcl_core::Result<()>) -> Result<Vec<u8>, String> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(err)?;
    Ok(buf)
}

fn series_csv(s: &PowerSeries) -> Result<Vec<u8>, String> {
    csv_table(
        &["k", "re", "im"],
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| vec![k.to_string(), c.re.to_string(), c.im.to_string()]),
    )
}

fn complex_list_csv(head: &str, v: &[Complex64]) -> Result<Vec<u8>, String> {
    csv_table(
        &[head, "re", "im"],
        v.iter()
            .enumerate()
            .map(|(i, c)| vec![(i + 1).to_string(), c.re.to_string(), c.im.to_string()]),
    )
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_series(opts: &SeriesOpts) -> Result<PowerSeries, String> {
    if let Some(path) = &opts.f_file {
        let text = read(path)?;
        let text = text.trim();
        return if text.starts_with('[') {
            parse_coeff_list(text).map_err(err)
        } else {
            serde_json::from_str(text).map_err(|e| format!("series file {}: {e}", path.display()))
        };
    }
    match &opts.f {
        Some(inline) => parse_coeff_list(inline).map_err(err),
        None => Err("missing series: pass --f or --f-file".into()),
    }
}

fn load_symbol(opts: &SymbolOpts) -> Result<SymbolGBeta, String> {
    if let Some(path) = &opts.symbol {
        return serde_json::from_str(&read(path)?)
            .map_err(|e| format!("symbol file {}: {e}", path.display()));
    }
    match opts.beta {
        Some(beta) if beta.is_finite() => Ok(SymbolGBeta::cesaro(beta)),
        Some(beta) => Err(format!("beta must be finite, got {beta}")),
        None => Err("missing symbol: pass --beta or --symbol".into()),
    }
}

fn load_grid(opts: &GridOpts) -> Result<SampleGrid, String> {
    default_grid(opts.radial, opts.angular, opts.rmax).map_err(err)
}

fn params(alpha: f64) -> Result<BlochParams, String> {
    BlochParams::new(alpha).map_err(err)
}

fn grid_config(g: &GridOpts) -> Value {
    json!({"radial": g.radial, "angular": g.angular, "rmax": g.rmax})
}

/// Exact results are printed at their degree (but never shorter than the input).
fn trimmed(s: PowerSeries, min_order: usize) -> PowerSeries {
    if s.is_exact() {
        let order = s.degree().max(min_order);
        s.resize(order)
    } else {
        s
    }
}

fn done(body: Vec<u8>) -> CmdResult {
    Ok(Outcome { body, check_failed: false })
}

pub fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Seminorm(a) => seminorm(a),
        Command::Apply(a) => apply(a),
        Command::Matrix(a) => matrix(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Eigenfunction(a) => eigenfunction(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Bound(a) => bound(a),
        Command::Counterexample(a) => counterexample(a),
        Command::Compactness(a) => compactness(a),
        Command::Essnorm(a) => essnorm(a),
        Command::Preimage(a) => preimage(a),
    }
}

fn seminorm(a: &SeminormArgs) -> CmdResult {
    let p = params(a.alpha)?;
    let g = load_grid(&a.grid)?;
    let f = load_series(&a.series)?;
    let est = seminorm_estimate(&f, &p, &g).map_err(err)?;
    let growth = if a.check_growth {
        Some(growth_check(&f, &p, &g).map_err(err)?)
    } else {
        None
    };
    let check_failed = growth.as_ref().is_some_and(|r| !r.passed);
    let body = match a.output.format {
        Format::Json => report(
            "seminorm",
            json!({"alpha": a.alpha, "grid": grid_config(&a.grid), "f": f, "check_growth": a.check_growth}),
            json!({"estimate": est, "growth": growth}),
        )?,
        Format::Csv => with_csv(|buf| {
            bcl_core::bloch::write_grid_csv(&bcl_core::bloch::grid_records(&f, &p, &g), buf)
        })?,
    };
    Ok(Outcome { body, check_failed })
}

fn apply(a: &ApplyArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    let f = load_series(&a.series)?;
    let input_order = f.order();
    let work = f.resize(a.order.n.max(input_order));
    let out = match a.dilation {
        Some(d) => compact_approximant(&work, &s, d),
        None => apply_generalized(&work, &s),
    }
    .map_err(err)?;
    let out = trimmed(out, input_order);
    let body = match a.output.format {
        Format::Json => report(
            "apply",
            json!({"symbol": s, "f": f, "N": a.order.n, "dilation": a.dilation}),
            &out,
        )?,
        Format::Csv => series_csv(&out)?,
    };
    done(body)
}

fn matrix(a: &MatrixArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    let m = operator_matrix(&s, a.order.n).map_err(err)?;
    let body = match a.output.format {
        Format::Json => report(
            "matrix",
            json!({"symbol": s, "N": a.order.n}),
            json!({"size": m.size(), "rows": m.rows()}),
        )?,
        Format::Csv => with_csv(|buf| m.write_csv(buf))?,
    };
    done(body)
}

fn spectrum(a: &SpectrumArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    if let Some(alpha) = a.alpha {
        params(alpha)?;
    }
    let eig = truncated_spectrum(&operator_matrix(&s, a.order.n).map_err(err)?);
    let predicted = a.alpha.map(|alpha| point_spectrum(&s, alpha));
    let body = match a.output.format {
        Format::Json => report(
            "spectrum",
            json!({"symbol": s, "N": a.order.n, "alpha": a.alpha}),
            json!({"eigenvalues": pairs(&eig), "point_spectrum": predicted}),
        )?,
        Format::Csv => complex_list_csv("n", &eig)?,
    };
    done(body)
}

fn eigenfunction(a: &EigenfunctionArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    let psi = eigenfunction_psi(&s, a.index, a.order.n).map_err(err)?;
    let lambda = s.value_at_zero() / a.index as f64;
    let body = match a.output.format {
        Format::Json => report(
            "eigenfunction",
            json!({"symbol": s, "index": a.index, "N": a.order.n}),
            json!({"eigenvalue": [lambda.re, lambda.im], "psi": psi}),
        )?,
        Format::Csv => series_csv(&psi)?,
    };
    done(body)
}

fn classify_cmd(a: &ParamArgs) -> CmdResult {
    params(a.alpha)?;
    if !a.beta.is_finite() {
        return Err(format!("beta must be finite, got {}", a.beta));
    }
    let c = classify(a.alpha, a.beta);
    debug_assert!(!c.contains(Verdict::NotCovered));
    let body = match a.output.format {
        Format::Json => report("classify", json!({"alpha": a.alpha, "beta": a.beta}), &c)?,
        Format::Csv => csv_table(&["verdict", "source"], [vec![c.label(), c.source.to_string()]])?,
    };
    done(body)
}

fn bound(a: &ParamArgs) -> CmdResult {
    let b = bound_constant_detail(a.alpha, a.beta).map_err(err)?;
    let body = match a.output.format {
        Format::Json => report("bound", json!({"alpha": a.alpha, "beta": a.beta}), b)?,
        Format::Csv => csv_table(
            &["alpha", "beta", "case", "value", "argmax_t", "at_boundary"],
            [vec![
                b.alpha.to_string(),
                b.beta.to_string(),
                serde_json::to_value(b.case).map_err(err)?.as_str().unwrap_or_default().to_string(),
                b.value.to_string(),
                b.argmax_t.to_string(),
                b.at_boundary.to_string(),
            ]],
        )?,
    };
    done(body)
}

fn parse_reals(flag: &str, text: &str) -> Result<Vec<f64>, String> {
    serde_json::from_str(text).map_err(|e| format!("{flag}: expected a JSON array of numbers ({e})"))
}

fn counterexample(a: &CounterexampleArgs) -> CmdResult {
    let which = match a.witness {
        WitnessArg::Identity => Witness::Identity,
        WitnessArg::Log => Witness::Log,
        WitnessArg::Pole => Witness::Pole,
    };
    let ts = match &a.t_list {
        Some(text) => parse_reals("--t-list", text)?,
        None => default_t_list(),
    };
    let rep = counterexample_probe(a.alpha, a.beta, which, &ts).map_err(err)?;
    let check_failed = rep.verdict != ProbeVerdict::Diverges;
    let body = match a.output.format {
        Format::Json => report(
            "counterexample",
            json!({"alpha": a.alpha, "beta": a.beta, "witness": which, "t_list": ts}),
            &rep,
        )?,
        Format::Csv => with_csv(|buf| rep.write_csv(buf))?,
    };
    Ok(Outcome { body, check_failed })
}

fn compactness(a: &CompactnessArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    let p = params(a.alpha)?;
    let g = load_grid(&a.grid)?;
    let (kind, base) = match a.family {
        FamilyArg::Monomial => (NullKind::Monomial, None),
        FamilyArg::Dilation => {
            let f = load_series(&a.series)?;
            (NullKind::Dilation(f.clone()), Some(f))
        }
    };
    let fam = null_family(kind, a.m_max, &p, &g).map_err(err)?;
    let rep = compactness_probe(&s, &p, &fam, &g).map_err(err)?;
    let check_failed = rep.verdict != DecayVerdict::CompactConsistent;
    let body = match a.output.format {
        Format::Json => report(
            "compactness",
            json!({
                "symbol": s, "alpha": a.alpha, "family": fam.kind, "m_max": a.m_max,
                "f": base, "grid": grid_config(&a.grid),
            }),
            json!({
                "family": {
                    "kind": fam.kind,
                    "null_verified": fam.null_verified,
                    "degenerate": fam.degenerate,
                    "members": fam.info,
                },
                "probe": rep,
            }),
        )?,
        Format::Csv => with_csv(|buf| rep.write_csv(buf))?,
    };
    Ok(Outcome { body, check_failed })
}

fn essnorm(a: &EssnormArgs) -> CmdResult {
    let s = load_symbol(&a.symbol)?;
    let p = params(a.alpha)?;
    let g = load_grid(&a.grid)?;
    let dilations = parse_reals("--dilations", &a.dilations)?;
    let fam = default_test_family(&p, &g).map_err(err)?;
    let rep = essential_norm_probe(&s, &p, &dilations, &fam, &g).map_err(err)?;
    let check_failed = rep.verdict != DecayVerdict::CompactConsistent;
    let body = match a.output.format {
        Format::Json => report(
            "essnorm",
            json!({"symbol": s, "alpha": a.alpha, "dilations": dilations, "grid": grid_config(&a.grid)}),
            &rep,
        )?,
        Format::Csv => with_csv(|buf| rep.write_csv(buf))?,
    };
    Ok(Outcome { body, check_failed })
}

fn preimage(a: &PreimageArgs) -> CmdResult {
    let g = load_series(&a.series)?;
    let f = preimage_under_cesaro(&g).map_err(err)?;
    let body = match a.output.format {
        Format::Json => report("preimage", json!({"g": g}), &f)?,
        Format::Csv => series_csv(&f)?,
    };
    done(body)
}
