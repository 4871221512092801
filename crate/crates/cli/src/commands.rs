//! Subcommands other than figure reproduction.

use growth_core::asymptotics::{fit_asymptotic_model, variance_report, AsymptoticModel, VarianceReport};
use growth_core::interchange::GraphInterchange;
use growth_core::series::{bn_sequence, classify_recurrence, GrowthRate, RecurrenceThresholds, Series};
use growth_core::spectral::{
    classify_classes, pf_eigenvalue, pfdim_filtration, FiltrationOptions, Verdict, DEFAULT_BASIC_TOL, DEFAULT_PF_TOL,
};
use growth_core::weight::{format_rational, parse_rational, rational_to_f64};
use growth_core::{GrowthProblem, Strategy};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{float, Csv, Sink};
use crate::svg::{render, Curve, LinePanel, Panel};

const BN_TERMS: usize = 30;
const PFDIM_DEPTH: usize = 30;
const CLASSIFY_TERMS: usize = 2000;
const CLASSIFY_DEPTH: usize = 32;
const FIT_SCHEDULE: [usize; 3] = [20, 40, 80];
const FIT_TOL: f64 = 1e-8;
const FIT_TERMS: usize = 30;
const DUMP_DEPTH: usize = 10;

/// Parses a positive normalization constant, exactly.
fn positive_rational(s: &str, what: &str) -> Result<BigRational, CliError> {
    let r = parse_rational(s).map_err(|_| CliError::Usage(format!("{what} must be a rational number, got {s:?}")))?;
    if !r.is_positive() {
        return Err(CliError::Usage(format!("{what} must be positive, got {s:?}")));
    }
    Ok(r)
}

/// b_n·λ^{-n} for each n, exactly and then rounded.
pub fn normalized(b: &Series, lambda: &BigRational) -> Vec<f64> {
    let inv = lambda.recip();
    let mut pow = BigRational::one();
    b.terms
        .iter()
        .map(|t| {
            let v = rational_to_f64(&(t * &pow));
            pow *= &inv;
            v
        })
        .collect()
}

pub fn bn(cfg: &RunConfig, normalize: &[String]) -> Result<Vec<std::path::PathBuf>, CliError> {
    let gp = cfg.problem()?;
    let n_max = cfg.n.unwrap_or(BN_TERMS);
    let lambdas: Vec<(String, BigRational)> =
        normalize.iter().map(|s| Ok((s.trim().to_string(), positive_rational(s, "--normalize")?))).collect::<Result<_, CliError>>()?;
    let b = bn_sequence(&gp, n_max)?;
    let scaled: Vec<Vec<f64>> = lambdas.iter().map(|(_, l)| normalized(&b, l)).collect();
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    sink.emit("bn.csv", || {
        let mut header = vec!["n".to_string(), "b_n".into(), "b_n_float".into()];
        header.extend(lambdas.iter().map(|(s, _)| format!("b_n*{s}^-n")));
        let mut csv = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
        for (n, t) in b.indexed() {
            let mut row = vec![n.to_string(), format_rational(t), float(rational_to_f64(t))];
            row.extend(scaled.iter().map(|col| float(col[n])));
            csv.row(row);
        }
        Ok(csv.finish())
    })?;
    sink.emit("bn.svg", || {
        let name = gp.name();
        let mut panels = vec![Panel::Lines(LinePanel {
            title: format!("b_n for {name}"),
            x_label: "n".into(),
            y_label: "b_n".into(),
            log_y: true,
            curves: vec![Curve::line("b_n", b.to_f64().into_iter().enumerate().map(|(n, v)| (n as f64, v)).collect())],
        })];
        for ((s, _), col) in lambdas.iter().zip(&scaled) {
            panels.push(Panel::Lines(LinePanel {
                title: format!("b_n * {s}^-n"),
                x_label: "n".into(),
                y_label: "normalized count".into(),
                log_y: true,
                curves: vec![Curve::line(format!("b_n*{s}^-n"), col.iter().enumerate().map(|(n, v)| (n as f64, *v)).collect())],
            }));
        }
        Ok(render(&panels))
    })?;
    Ok(sink.written().to_vec())
}

pub fn pfdim(cfg: &mut RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let gp = cfg.problem()?;
    let depth = cfg.depth.unwrap_or(PFDIM_DEPTH);
    let mut opts = FiltrationOptions::default();
    if let Some(t) = cfg.tol {
        opts.tol = t;
    }
    if let Some(v) = cfg.threshold("divergence")? {
        opts.divergence_threshold = v;
    }
    if let Some(v) = cfg.threshold("window")? {
        opts.window = v;
    }
    if let Some(v) = cfg.threshold("tol")? {
        opts.tol = v;
    }
    if let Some(v) = cfg.threshold("pf_tol")? {
        opts.pf_tol = v;
    }
    cfg.finish_thresholds(&["divergence", "window", "tol", "pf_tol"])?;
    let schedule: Vec<usize> = (0..=depth).collect();
    let est = pfdim_filtration(&gp, Strategy::Naive, &schedule, &opts)?;
    let growth = match est.verdict {
        Verdict::Finite(_) => "exponential",
        Verdict::Infinite => "superexponential",
        Verdict::Undecided => "undecided",
    };
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    sink.emit("pfdim.json", || {
        let v = json!({ "problem": gp.name(), "growth": growth, "estimate": est });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    })?;
    sink.emit("pfdim.csv", || {
        let mut csv = Csv::new(&["depth", "size", "lambda"]);
        for ((k, l), size) in est.sequence.iter().zip(&est.sizes) {
            csv.row([k.to_string(), size.to_string(), float(*l)]);
        }
        Ok(csv.finish())
    })?;
    sink.emit("pfdim.svg", || {
        Ok(render(&[Panel::Lines(LinePanel {
            title: format!("PF eigenvalues of cutoffs, {}", gp.name()),
            x_label: "depth k".into(),
            y_label: "lambda_k".into(),
            log_y: false,
            curves: vec![Curve::scatter("lambda_k", est.sequence.iter().map(|&(k, l)| (k as f64, l)).collect())],
        })]))
    })?;
    Ok(sink.written().to_vec())
}

/// Growth rate for weighting returns: explicit, known in closed form, or estimated.
fn growth_rate(cfg: &RunConfig, gp: &GrowthProblem, rate: Option<&str>) -> Result<GrowthRate, CliError> {
    if let Some(r) = rate {
        if matches!(r.trim(), "inf" | "infinite") {
            return Ok(GrowthRate::Infinite);
        }
        return Ok(GrowthRate::Exact(positive_rational(r, "--rate")?));
    }
    if let Some(known) = cfg.family_spec().and_then(|s| s.known_growth_rate()) {
        return Ok(known);
    }
    if let Some(size) = gp.rule().finite_size() {
        let depth = gp.saturation_depth(size)?.unwrap_or(size);
        let t = gp.expand_to_depth(depth)?;
        return Ok(GrowthRate::Approx(pf_eigenvalue(&t.matrix, DEFAULT_PF_TOL)?));
    }
    let schedule: Vec<usize> = (0..=cfg.depth.unwrap_or(PFDIM_DEPTH)).collect();
    let est = pfdim_filtration(gp, Strategy::Naive, &schedule, &FiltrationOptions::default())?;
    match est.verdict {
        Verdict::Finite(v) => Ok(GrowthRate::Approx(v)),
        Verdict::Infinite => Ok(GrowthRate::Infinite),
        Verdict::Undecided => {
            Err(CliError::Usage("the cutoff eigenvalues have not converged; pass the growth rate with --rate".into()))
        }
    }
}

pub fn classify(cfg: &mut RunConfig, rate: Option<&str>) -> Result<Vec<std::path::PathBuf>, CliError> {
    let gp = cfg.problem()?;
    let mut th = RecurrenceThresholds::default();
    if let Some(v) = cfg.threshold("delta")? {
        th.delta = v;
    }
    if let Some(v) = cfg.threshold("mu")? {
        th.mu_threshold = v;
    }
    if let Some(v) = cfg.threshold("growth")? {
        th.mu_growth_exponent = v;
    }
    cfg.finish_thresholds(&["delta", "mu", "growth"])?;
    let rate = growth_rate(cfg, &gp, rate)?;
    let depth = match (cfg.depth, gp.rule().finite_size()) {
        (Some(d), _) => d,
        (None, Some(size)) => gp.saturation_depth(size)?.unwrap_or(size),
        (None, None) => CLASSIFY_DEPTH,
    };
    let t = gp.expand_to_depth(depth)?;
    let summary = classify_classes(&t, DEFAULT_BASIC_TOL)?;
    let classes: Vec<serde_json::Value> = summary
        .scc
        .classes
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let mut labels: Vec<_> = members.iter().map(|&v| (&t.vertices[v], gp.label(&t.vertices[v]))).collect();
            labels.sort();
            json!({
                "class": c,
                "vertices": labels.into_iter().map(|(_, l)| l).collect::<Vec<_>>(),
                "pf": summary.class_pf[c],
                "period": summary.class_period[c],
                "basic": summary.basic[c],
                "final_basic": summary.final_basic[c],
            })
        })
        .collect();
    let report = classify_recurrence(&gp, &rate, cfg.n.unwrap_or(CLASSIFY_TERMS), &th)?;
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    sink.emit("classify.json", || {
        let v = json!({
            "problem": gp.name(),
            "rate": rate,
            "depth": depth,
            "cutoff": {
                "size": t.len(),
                "lambda": summary.lambda,
                "second_modulus": summary.second_modulus,
                "period": summary.period,
                "classes": classes,
            },
            "thresholds": th,
            "report": report,
        });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    })?;
    Ok(sink.written().to_vec())
}

pub fn variance_panels(title: &str, report: &VarianceReport) -> Vec<Panel> {
    let pts = |f: &dyn Fn(&growth_core::asymptotics::VarianceRow) -> f64| -> Vec<(f64, f64)> {
        report.rows.iter().map(|r| (r.n as f64, f(r))).collect()
    };
    vec![
        Panel::Lines(LinePanel {
            title: format!("{title}: b_n and a_n"),
            x_label: "n".into(),
            y_label: "count".into(),
            log_y: true,
            curves: vec![
                Curve::scatter("b_n", pts(&|r| parse_rational(&r.b).map(|b| rational_to_f64(&b)).unwrap_or(f64::NAN))),
                Curve::line("a_n", pts(&|r| r.a)),
            ],
        }),
        Panel::Lines(LinePanel {
            title: format!("{title}: relative deviation"),
            x_label: "n".into(),
            y_label: "|b_n/a_n - 1|".into(),
            log_y: true,
            curves: vec![Curve::scatter("|b_n/a_n - 1|", pts(&|r| (r.ratio - 1.0).abs()))],
        }),
    ]
}

fn emit_model(
    sink: &mut Sink,
    prefix: &str,
    gp: &GrowthProblem,
    m: &AsymptoticModel,
    report: &VarianceReport,
) -> Result<(), CliError> {
    sink.emit(&format!("{prefix}model.json"), || Ok(m.to_json()? + "\n"))?;
    sink.emit(&format!("{prefix}variance.csv"), || Ok(report.to_csv()))?;
    sink.emit(&format!("{prefix}variance.json"), || {
        let v = json!({
            "fitted_ratio": report.fitted_ratio,
            "reference_ratio": report.reference_ratio,
            "difference_log_slope": report.difference_log_slope,
        });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    })?;
    sink.emit(&format!("{prefix}variance.svg"), || Ok(render(&variance_panels(&gp.name(), report))))?;
    Ok(())
}

pub fn fit(cfg: &RunConfig, schedule: &[usize]) -> Result<Vec<std::path::PathBuf>, CliError> {
    let gp = cfg.problem()?;
    let schedule = if schedule.is_empty() { FIT_SCHEDULE.to_vec() } else { schedule.to_vec() };
    let m = fit_asymptotic_model(&gp, &schedule, cfg.tol.unwrap_or(FIT_TOL))?;
    let report = variance_report(&gp, &m, cfg.n.unwrap_or(FIT_TERMS))?;
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    emit_model(&mut sink, "", &gp, &m, &report)?;
    Ok(sink.written().to_vec())
}

/// Default-schedule fit written under `prefix`.
pub fn fit_and_emit(sink: &mut Sink, prefix: &str, gp: &GrowthProblem, n_max: usize) -> Result<(), CliError> {
    let m = fit_asymptotic_model(gp, &FIT_SCHEDULE, FIT_TOL)?;
    let report = variance_report(gp, &m, n_max)?;
    emit_model(sink, prefix, gp, &m, &report)
}

pub fn dump(cfg: &RunConfig) -> Result<Vec<std::path::PathBuf>, CliError> {
    let gp = cfg.problem()?;
    let t = gp.expand_to_depth(cfg.depth.unwrap_or(DUMP_DEPTH))?;
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    sink.emit("dump.json", || Ok(GraphInterchange::from_truncation(&gp, &t).to_json()? + "\n"))?;
    Ok(sink.written().to_vec())
}
