//! Deterministic regeneration of the standard figures: CSV data plus an SVG rendering.

use std::collections::BTreeMap;
use std::path::PathBuf;

use growth_core::families::FamilySpec;
use growth_core::series::{bn_sequence, endpoint_distribution};
use growth_core::weight::{format_rational, rational_to_f64};
use growth_core::GrowthProblem;
use num_rational::BigRational;
use num_traits::Zero;

use crate::commands::{fit_and_emit, normalized};
use crate::config::{family, Figure, RunConfig};
use crate::error::CliError;
use crate::output::{float, Csv, Sink};
use crate::svg::{render, Curve, HeatPanel, LinePanel, Panel};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn index_points(values: &[f64]) -> Vec<(f64, f64)> {
    values.iter().enumerate().map(|(n, v)| (n as f64, *v)).collect()
}

pub fn reproduce(cfg: &RunConfig, figure: Figure) -> Result<Vec<PathBuf>, CliError> {
    if cfg.source.is_some() {
        return Err(CliError::Usage("figures fix their own families; drop --family/--matrix".into()));
    }
    let mut sink = Sink::new(&cfg.out, &cfg.formats)?;
    match figure {
        Figure::Sl2Logplots => sl2_logplots(cfg, &mut sink)?,
        Figure::ZVsHalfline => z_vs_halfline(cfg, &mut sink)?,
        Figure::Sl3Heatmaps => sl3_heatmaps(cfg, &mut sink)?,
        Figure::KleinPlots => klein_plots(cfg, &mut sink)?,
        Figure::Psl2f7Plots => psl2f7_plots(cfg, &mut sink)?,
    }
    Ok(sink.written().to_vec())
}

/// b_n of the natural sl2 representation against 2^n and a slightly smaller base.
fn sl2_logplots(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    let gp = family(FamilySpec::Sl2 { lambda: 1 }, &cfg.options)?;
    let b = bn_sequence(&gp, cfg.n.unwrap_or(200))?;
    let bases = [("2", int(2)), ("1.99", BigRational::new(199.into(), 100.into()))];
    let cols: Vec<Vec<f64>> = bases.iter().map(|(_, l)| normalized(&b, l)).collect();
    sink.emit("sl2-logplots.csv", || {
        let mut csv = Csv::new(&["n", "b_n", "b_n*2^-n", "b_n*1.99^-n"]);
        for (n, t) in b.indexed() {
            csv.row([n.to_string(), format_rational(t), float(cols[0][n]), float(cols[1][n])]);
        }
        Ok(csv.finish())
    })?;
    sink.emit("sl2-logplots.svg", || {
        let panels: Vec<Panel> = bases
            .iter()
            .zip(&cols)
            .map(|((s, _), col)| {
                Panel::Lines(LinePanel {
                    title: format!("sl2: b_n * {s}^-n"),
                    x_label: "n".into(),
                    y_label: "normalized count".into(),
                    log_y: true,
                    curves: vec![Curve::line(format!("b_n*{s}^-n"), index_points(col))],
                })
            })
            .collect();
        Ok(render(&panels))
    })
}

/// Endpoint distributions after n steps on the line and on the half-line.
fn z_vs_halfline(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    let n = cfg.n.unwrap_or(200);
    let line = family(FamilySpec::LineZ, &cfg.options)?;
    let half = family(FamilySpec::Sl2 { lambda: 1 }, &cfg.options)?;
    let dist = |gp: &GrowthProblem| -> Result<BTreeMap<i64, BigRational>, CliError> {
        Ok(endpoint_distribution(gp, n)?.into_iter().map(|(k, v)| (k.0[0], v)).collect())
    };
    let (dz, dh) = (dist(&line)?, dist(&half)?);
    let total = |d: &BTreeMap<i64, BigRational>| d.values().fold(BigRational::zero(), |a, b| a + b);
    let (tz, th) = (total(&dz), total(&dh));
    let positions: Vec<i64> = dz.keys().chain(dh.keys()).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let share = |d: &BTreeMap<i64, BigRational>, t: &BigRational, p: i64| {
        d.get(&p).map(|v| rational_to_f64(&(v / t))).unwrap_or(0.0)
    };
    sink.emit("z-vs-halfline.csv", || {
        let mut csv = Csv::new(&["position", "line_count", "line_share", "halfline_count", "halfline_share"]);
        for &p in &positions {
            let count = |d: &BTreeMap<i64, BigRational>| d.get(&p).map(format_rational).unwrap_or_else(|| "0".into());
            csv.row([p.to_string(), count(&dz), float(share(&dz, &tz, p)), count(&dh), float(share(&dh, &th, p))]);
        }
        Ok(csv.finish())
    })?;
    sink.emit("z-vs-halfline.svg", || {
        let curve = |name: &str, d: &BTreeMap<i64, BigRational>, t: &BigRational| {
            Curve::line(name, d.keys().map(|&p| (p as f64, share(d, t, p))).collect())
        };
        Ok(render(&[Panel::Lines(LinePanel {
            title: format!("endpoint distribution after {n} steps"),
            x_label: "position".into(),
            y_label: "share of walks".into(),
            log_y: false,
            curves: vec![curve("line Z", &dz, &tz), curve("half-line (sl2)", &dh, &th)],
        })]))
    })
}

/// Path counts of the sl3 vector walk over the dominant chamber at three lengths.
fn sl3_heatmaps(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    let lengths = match cfg.n {
        Some(n) => vec![(n / 4).max(1), (n / 2).max(1), n],
        None => vec![50, 100, 200],
    };
    let gp = family(FamilySpec::Sl3Vector, &cfg.options)?;
    let mut grids = Vec::new();
    for &n in &lengths {
        let d = endpoint_distribution(&gp, n)?;
        let total = d.values().fold(BigRational::zero(), |a, b| a + b);
        let cells: Vec<(i64, i64, BigRational, f64)> =
            d.into_iter().map(|(k, v)| (k.0[0], k.0[1], v.clone(), rational_to_f64(&(v / &total)))).collect();
        grids.push((n, cells));
    }
    sink.emit("sl3-heatmaps.csv", || {
        let mut csv = Csv::new(&["n", "a", "b", "count", "share"]);
        for (n, cells) in &grids {
            for (a, b, c, s) in cells {
                csv.row([n.to_string(), a.to_string(), b.to_string(), format_rational(c), float(*s)]);
            }
        }
        Ok(csv.finish())
    })?;
    sink.emit("sl3-heatmaps.svg", || {
        let panels: Vec<Panel> = grids
            .iter()
            .map(|(n, cells)| {
                let peak = cells.iter().map(|c| c.3).fold(0.0, f64::max);
                Panel::Heat(HeatPanel {
                    title: format!("sl3 path counts, n = {n}"),
                    x_label: "a".into(),
                    y_label: "b".into(),
                    cells: cells.iter().map(|&(a, b, _, s)| (a, b, if peak > 0.0 { s / peak } else { 0.0 })).collect(),
                })
            })
            .collect();
        Ok(render(&panels))
    })
}

/// Convergence of 4·b_n·3^{-n} to 1 for the Klein four group in characteristic 2.
fn klein_plots(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    let gp = family(FamilySpec::KleinFour, &cfg.options)?;
    let b = bn_sequence(&gp, cfg.n.unwrap_or(60))?;
    let scaled: Vec<f64> = normalized(&b, &int(3)).into_iter().map(|v| 4.0 * v).collect();
    sink.emit("klein-plots.csv", || {
        let mut csv = Csv::new(&["n", "b_n", "4*b_n*3^-n", "abs_deviation"]);
        for (n, t) in b.indexed() {
            csv.row([n.to_string(), format_rational(t), float(scaled[n]), float((scaled[n] - 1.0).abs())]);
        }
        Ok(csv.finish())
    })?;
    sink.emit("klein-plots.svg", || {
        let dev: Vec<f64> = scaled.iter().map(|v| (v - 1.0).abs()).collect();
        Ok(render(&[
            Panel::Lines(LinePanel {
                title: "Klein four: |4 b_n 3^-n - 1|".into(),
                x_label: "n".into(),
                y_label: "deviation".into(),
                log_y: true,
                curves: vec![Curve::scatter("|4 b_n 3^-n - 1|", index_points(&dev))],
            }),
            Panel::Lines(LinePanel {
                title: "Klein four: 4 b_n 3^-n".into(),
                x_label: "n".into(),
                y_label: "ratio".into(),
                log_y: false,
                curves: vec![Curve::line("4 b_n 3^-n", index_points(&scaled))],
            }),
        ]))
    })
}

/// Model and exact counts for the 16-vertex PSL2(F7) cutoff.
fn psl2f7_plots(cfg: &RunConfig, sink: &mut Sink) -> Result<(), CliError> {
    let gp = family(FamilySpec::Psl2F7Cutoff, &cfg.options)?;
    fit_and_emit(sink, "psl2f7-plots-", &gp, cfg.n.unwrap_or(30))
}
