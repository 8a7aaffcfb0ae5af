use std::fs;

use gausscoh::fock::{run_oracle_suite, OracleGrid, TruncationSpec};
use gausscoh::{
    asymptote as ladder_run, coherence as evaluate, threshold_search, Error, Family,
    FamilyParams, Measure, Param, Threshold, DEFAULT_LADDER,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::Settings;
use crate::output::{csv, Cell, Num, SweepRow};
use crate::{Quantity, Scale, StateArgs, SweepArgs};

/// Largest closed-form vs oracle deviation `validate` accepts.
pub const VALIDATION_TOL: f64 = 1e-6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: Option<String>,
}

impl Failure {
    pub const USAGE: u8 = 2;
    pub const CONVERGENCE: u8 = 3;
    pub const PARTIAL_SWEEP: u8 = 4;
    pub const VALIDATION: u8 = 5;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: Some(message.into()),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(Self::USAGE, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. }
            | Error::NonPhysical { .. }
            | Error::InvalidOptions(_)
            | Error::InvalidLadder(_)
            | Error::InvalidTruncation(_)
            | Error::NonMonotone { .. } => Self::USAGE,
            _ => Self::CONVERGENCE,
        };
        Self::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Canonical parameters set explicitly on the command line.
fn given(s: &StateArgs) -> Vec<(Param, &'static str)> {
    let mut out = Vec::new();
    let flags = [
        (s.beta.is_some(), Param::Beta, "--beta"),
        (s.beta_im.is_some(), Param::Beta, "--beta-im"),
        (s.n_coh.is_some(), Param::Beta, "--n-coh"),
        (s.r.is_some(), Param::R, "--r"),
        (s.n_sq.is_some(), Param::R, "--n-sq"),
        (s.psi.is_some(), Param::Psi, "--psi"),
        (s.n_th.is_some(), Param::NTh, "--n-th"),
    ];
    for (set, p, flag) in flags {
        if set {
            out.push((p, flag));
        }
    }
    out
}

fn resolve(s: &StateArgs) -> Result<FamilyParams, Failure> {
    for (p, flag) in given(s) {
        if !s.family.parameters().contains(&p) {
            return Err(Failure::usage(format!(
                "{flag} does not apply to family {}",
                s.family
            )));
        }
    }
    let mut p = FamilyParams::default();
    p.beta.re = s.beta.unwrap_or(0.0);
    p.beta.im = s.beta_im.unwrap_or(0.0);
    p.r = s.r.unwrap_or(0.0);
    p.psi = s.psi.unwrap_or(0.0);
    p.n_th = s.n_th.unwrap_or(0.0);
    if let Some(v) = s.n_sq {
        p = p.with(Param::NSq, v)?;
    }
    if let Some(v) = s.n_coh {
        p = p.with(Param::NCoh, v)?;
    }
    s.family.state(&p)?;
    Ok(p)
}

/// Checks that `vary` belongs to the family and is not also fixed.
fn check_varied(s: &StateArgs, vary: Param) -> Outcome {
    let canonical = vary.canonical();
    if !s.family.parameters().contains(&canonical) {
        return Err(Failure::usage(format!(
            "family {} has no parameter {vary}",
            s.family
        )));
    }
    if let Some((_, flag)) = given(s).into_iter().find(|(p, _)| *p == canonical) {
        return Err(Failure::usage(format!("{flag} conflicts with --vary {vary}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_im: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_th: Option<Num>,
}

impl Params {
    fn new(family: Family, p: &FamilyParams, skip: Option<Param>) -> Self {
        let has = |q: Param| family.parameters().contains(&q) && skip != Some(q);
        let pick = |q: Param, v: f64| has(q).then_some(Num(v));
        Self {
            beta: pick(Param::Beta, p.beta.re),
            beta_im: pick(Param::Beta, p.beta.im),
            r: pick(Param::R, p.r),
            psi: pick(Param::Psi, p.psi),
            n_th: pick(Param::NTh, p.n_th),
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable record"));
}

pub fn coherence(s: &StateArgs, m: Measure, settings: &Settings) -> Outcome {
    #[derive(Serialize)]
    struct Record {
        family: &'static str,
        params: Params,
        measure: &'static str,
        coherence: Num,
        argmax_ni: Num,
        converged: bool,
    }
    let p = resolve(s)?;
    let res = evaluate(&s.family.state(&p)?, m, &settings.optimizer)?;
    print_json(&Record {
        family: s.family.name(),
        params: Params::new(s.family, &p, None),
        measure: m.name(),
        coherence: Num(res.value),
        argmax_ni: Num(res.argmax_ni),
        converged: res.converged,
    });
    if res.converged {
        Ok(())
    } else {
        Err(Failure::new(
            Failure::CONVERGENCE,
            "maximization over thermal states did not converge",
        ))
    }
}

fn sweep_grid(from: f64, to: f64, points: usize, scale: Scale) -> Vec<f64> {
    let last = points - 1;
    (0..points)
        .map(|k| {
            let t = k as f64 / last as f64;
            match (k, scale) {
                (0, _) => from,
                (k, _) if k == last => to,
                (_, Scale::Linear) => from + (to - from) * t,
                (_, Scale::Log) => 10f64.powf(from.log10() + (to.log10() - from.log10()) * t),
            }
        })
        .collect()
}

pub fn sweep(a: &SweepArgs, settings: &Settings) -> Outcome {
    if a.points < 2 {
        return Err(Failure::usage("--points must be at least 2"));
    }
    if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
        return Err(Failure::usage("--from must be below --to"));
    }
    if a.scale == Scale::Log && a.from <= 0.0 {
        return Err(Failure::usage("log scale requires --from > 0"));
    }
    check_varied(&a.state, a.vary)?;
    let base = resolve(&a.state)?;
    let family = a.state.family;
    for x in [a.from, a.to] {
        family.state(&base.with(a.vary, x)?)?;
    }
    settings.optimizer.validate()?;

    let want = |m: Measure| a.measures.contains(&m);
    let cell = |p: &FamilyParams, m: Measure| -> Option<Cell> {
        want(m).then(|| {
            family
                .state(p)
                .and_then(|s| evaluate(&s, m, &settings.optimizer))
                .ok()
                .filter(|r| r.converged)
                .map_or(Cell::FAILED, |r| Cell {
                    value: r.value,
                    argmax_ni: r.argmax_ni,
                })
        })
    };
    let rows: Vec<SweepRow> = sweep_grid(a.from, a.to, a.points, a.scale)
        .into_par_iter()
        .map(|x| match base.with(a.vary, x) {
            Ok(p) => SweepRow {
                varied: x,
                bures: cell(&p, Measure::Bures),
                hellinger: cell(&p, Measure::Hellinger),
            },
            Err(_) => SweepRow {
                varied: x,
                bures: want(Measure::Bures).then_some(Cell::FAILED),
                hellinger: want(Measure::Hellinger).then_some(Cell::FAILED),
            },
        })
        .collect();

    let text = csv(&rows);
    match &a.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let failed = rows
        .iter()
        .filter(|r| [r.bures, r.hellinger].iter().flatten().any(|c| c.value.is_nan()))
        .count();
    if failed > 0 {
        return Err(Failure::new(
            Failure::PARTIAL_SWEEP,
            format!("{failed} of {} rows failed", rows.len()),
        ));
    }
    Ok(())
}

pub fn threshold(
    s: &StateArgs,
    m: Measure,
    target: f64,
    vary: Param,
    lo: f64,
    hi: f64,
    settings: &Settings,
) -> Outcome {
    check_varied(s, vary)?;
    let fixed = resolve(s)?;
    let t = threshold_search(s.family, m, target, &fixed, vary, lo, hi, &settings.optimizer)?;
    let record = match t {
        Threshold::Reached(x) => json!({ "threshold": Num(x) }),
        Threshold::NotReached => json!({ "threshold": "never" }),
    };
    print_json(&record);
    Ok(())
}

pub fn asymptote(s: &StateArgs, m: Measure, ladder: Option<&[f64]>, settings: &Settings) -> Outcome {
    #[derive(Serialize)]
    struct Record {
        family: &'static str,
        params: Params,
        measure: &'static str,
        ladder: Vec<Num>,
        values: Vec<Num>,
        plateau: Num,
        is_plateau: bool,
    }
    check_varied(s, Param::NTh)?;
    let p = resolve(s)?;
    let ladder = ladder.unwrap_or(&DEFAULT_LADDER);
    let a = ladder_run(s.family, &p, m, ladder, &settings.optimizer)?;
    print_json(&Record {
        family: s.family.name(),
        params: Params::new(s.family, &p, Some(Param::NTh)),
        measure: m.name(),
        ladder: a.ladder.iter().copied().map(Num).collect(),
        values: a.values.iter().copied().map(Num).collect(),
        plateau: Num(a.plateau),
        is_plateau: a.is_plateau,
    });
    Ok(())
}

fn parse_list(key: &str, text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| Failure::usage(format!("grid axis {key}: {e}")))
        })
        .collect()
}

fn parse_grid(text: &str) -> Result<OracleGrid, Failure> {
    match text {
        "standard" => return Ok(OracleGrid::standard()),
        "thermal" => return Ok(OracleGrid::thermal()),
        _ => {}
    }
    let mut g = OracleGrid {
        beta: vec![0.0],
        r: vec![0.0],
        psi: vec![0.0],
        n_th: vec![0.0],
        references: vec![0.0, 1.0, 2.0],
    };
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let (key, values) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("grid axis `{part}`: expected key=v1,v2")))?;
        let key = key.trim();
        let values = parse_list(key, values)?;
        let slot = match key {
            "beta" => &mut g.beta,
            "r" => &mut g.r,
            "psi" => &mut g.psi,
            "n_th" => &mut g.n_th,
            "refs" => &mut g.references,
            _ => return Err(Failure::usage(format!("unknown grid axis `{key}`"))),
        };
        *slot = values;
    }
    Ok(g)
}

pub fn validate(dim: Option<usize>, grid: &str, quantity: Quantity, settings: &Settings) -> Outcome {
    #[derive(Serialize)]
    struct Record {
        comparisons: usize,
        start_dim: usize,
        max_dim: usize,
        max_fidelity_deviation: Num,
        max_affinity_deviation: Num,
        checked: Quantity,
        tolerance: Num,
        pass: bool,
    }
    let spec = TruncationSpec::new(dim.unwrap_or(settings.truncation.dim), settings.truncation.tail_tol)?;
    let grid = parse_grid(grid)?;
    let report = run_oracle_suite(&grid, &spec)?;
    let (df, da) = (report.max_fidelity_deviation(), report.max_affinity_deviation());
    let pass = match quantity {
        Quantity::Fidelity => df < VALIDATION_TOL,
        Quantity::Affinity => da < VALIDATION_TOL,
        Quantity::Both => df < VALIDATION_TOL && da < VALIDATION_TOL,
    };
    print_json(&Record {
        comparisons: report.comparisons.len(),
        start_dim: spec.dim,
        max_dim: report.max_dim(),
        max_fidelity_deviation: Num(df),
        max_affinity_deviation: Num(da),
        checked: quantity,
        tolerance: Num(VALIDATION_TOL),
        pass,
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::new(
            Failure::VALIDATION,
            format!("deviation above {VALIDATION_TOL:e}"),
        ))
    }
}
