//! Implementations of the four subcommands.

use super::config::{
    parse_a_range, parse_models, Cli, Command, CompareArgs, FileConfig, OutputFormat, PointArgs,
    RunConfig, SweepArgs, Table1Args,
};
use super::output::{emit_csv, human_table, PointReport, SweepRow};
use super::CliError;
use crate::dielectric::ModelKind;
use crate::engine::{ForceResult, LifshitzEngine};
use crate::golden;
use rayon::prelude::*;
use serde::Serialize;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?;
    let base = RunConfig::from_file(file.as_ref())?;
    match cli.command {
        Command::Force(args) => run_force(base, args),
        Command::Sweep(args) => run_sweep(base, args),
        Command::Compare(args) => run_compare(base, args),
        Command::Table1(args) => run_table1(base, args),
    }
}

fn write_report(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn warn_if_pfa_invalid(cfg: &RunConfig) {
    if let Some(a_um) = cfg.separations_um.last() {
        let ratio = a_um * 1e-6 / cfg.sphere_radius_m;
        if ratio > 1e-3 {
            eprintln!(
                "warning: a/R = {ratio:.2e} exceeds 1e-3; the proximity force approximation is unreliable here"
            );
        }
    }
}

/// Evaluate every (separation, model) pair, in parallel unless the
/// configuration says otherwise. Output order is fixed by the input order, so
/// parallel and sequential runs produce identical reports.
fn evaluate(
    cfg: &RunConfig,
    pairs: &[(f64, ModelKind)],
) -> Result<Vec<(f64, ModelKind, ForceResult)>, CliError> {
    let engine = LifshitzEngine::new(cfg.engine)?;
    let one = |&(a_um, kind): &(f64, ModelKind)| -> Result<(f64, ModelKind, ForceResult), CliError> {
        let geom = cfg.geometry(a_um)?;
        let result = engine.casimir_force(&cfg.material(kind), &geom)?;
        Ok((a_um, kind, result))
    };
    let results: Vec<Result<_, CliError>> = if cfg.sequential {
        pairs.iter().map(one).collect()
    } else {
        pairs.par_iter().map(one).collect()
    };
    results.into_iter().collect()
}

fn render_rows(cfg: &RunConfig, points: &[(f64, ModelKind, ForceResult)]) -> Result<String, CliError> {
    let rows: Vec<SweepRow> =
        points.iter().map(|(a, kind, r)| SweepRow::from_result(*a, *kind, r)).collect();
    let text = match cfg.format {
        OutputFormat::Csv => emit_csv(&rows),
        OutputFormat::Human => human_table(&rows, cfg.precision),
        OutputFormat::Json => {
            let reports: Vec<PointReport> = points
                .iter()
                .map(|(a, kind, r)| PointReport::new(*a, *kind, r, cfg.verbose))
                .collect();
            let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    Ok(text)
}

fn run_force(mut cfg: RunConfig, args: PointArgs) -> Result<(), CliError> {
    cfg.apply_common(&args.common);
    if let Some(a) = args.a {
        cfg.separations_um = vec![a];
    }
    if let Some(spec) = &args.model {
        cfg.models = parse_models(spec).map_err(CliError::Usage)?;
    }
    cfg.validate_separations()?;
    if cfg.separations_um.len() != 1 {
        return Err(CliError::Usage("force takes exactly one separation (--a)".into()));
    }
    if cfg.models.len() != 1 {
        return Err(CliError::Usage(format!(
            "force takes exactly one model, got {} (use --model)",
            cfg.models.len()
        )));
    }
    warn_if_pfa_invalid(&cfg);

    let a_um = cfg.separations_um[0];
    let kind = cfg.models[0];
    let points = evaluate(&cfg, &[(a_um, kind)])?;
    let (_, _, result) = &points[0];

    let text = match cfg.format {
        OutputFormat::Human => {
            let mut s = format!("{}, {:.prec$}\n", a_um, result.magnitude * 1e12, prec = cfg.precision);
            if cfg.verbose {
                s.push_str(&format!(
                    "# model = {}, l_used = {}, rel_err_est = {:e}, truncation_bound = {:e} N\n",
                    kind,
                    result.l_used,
                    result.relative_error_estimate(),
                    result.truncation_bound,
                ));
            }
            s
        }
        _ => render_rows(&cfg, &points)?,
    };
    write_report(&cfg, &text)
}

fn run_sweep(mut cfg: RunConfig, args: SweepArgs) -> Result<(), CliError> {
    cfg.apply_common(&args.common);
    cfg.sequential = args.sequential;
    if let Some(range) = &args.a_range {
        cfg.separations_um = parse_a_range(range).map_err(CliError::Usage)?;
    } else if let Some(a) = args.a {
        cfg.separations_um = vec![a];
    }
    if let Some(spec) = &args.model {
        cfg.models = parse_models(spec).map_err(CliError::Usage)?;
    }
    cfg.validate_separations()?;
    warn_if_pfa_invalid(&cfg);

    let pairs: Vec<(f64, ModelKind)> = cfg
        .separations_um
        .iter()
        .flat_map(|a| cfg.models.iter().map(move |kind| (*a, *kind)))
        .collect();
    let points = evaluate(&cfg, &pairs)?;
    let text = render_rows(&cfg, &points)?;
    write_report(&cfg, &text)
}

#[derive(Debug, Serialize)]
struct PairDifference {
    model_a: ModelKind,
    model_b: ModelKind,
    difference_pn: f64,
    relative_percent: f64,
}

#[derive(Debug, Serialize)]
struct AlmostIdenticalCheck {
    relative_percent: f64,
    threshold_percent: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct CompareReport {
    a_um: f64,
    forces_pn: Vec<(ModelKind, f64)>,
    pairs: Vec<PairDifference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    almost_identical: Option<AlmostIdenticalCheck>,
}

// |F_neglected| < |F_diffusion| < |F_drude| <= |F_plasma|, restricted to the
// models actually present; needs at least two of them to be meaningful.
fn ordering_pass(forces: &[(ModelKind, f64)]) -> Option<bool> {
    let chain = [ModelKind::Neglected, ModelKind::Diffusion, ModelKind::Drude, ModelKind::Plasma];
    let present: Vec<(ModelKind, f64)> = chain
        .iter()
        .filter_map(|k| forces.iter().find(|(kind, _)| kind == k).copied())
        .collect();
    if present.len() < 2 {
        return None;
    }
    let mut ok = true;
    for pair in present.windows(2) {
        let ((ka, fa), (kb, fb)) = (pair[0], pair[1]);
        if ka == ModelKind::Drude && kb == ModelKind::Plasma {
            ok &= fa <= fb;
        } else {
            ok &= fa < fb;
        }
    }
    Some(ok)
}

const ALMOST_IDENTICAL_THRESHOLD_PERCENT: f64 = 0.02;

fn compare_report(a_um: f64, forces_pn: Vec<(ModelKind, f64)>) -> CompareReport {
    let mut pairs = Vec::new();
    for i in 0..forces_pn.len() {
        for j in (i + 1)..forces_pn.len() {
            let (ka, fa) = forces_pn[i];
            let (kb, fb) = forces_pn[j];
            pairs.push(PairDifference {
                model_a: ka,
                model_b: kb,
                difference_pn: fa - fb,
                relative_percent: (fa - fb) / fb * 100.0,
            });
        }
    }
    let drude = forces_pn.iter().find(|(k, _)| *k == ModelKind::Drude).map(|(_, f)| *f);
    let plasma = forces_pn.iter().find(|(k, _)| *k == ModelKind::Plasma).map(|(_, f)| *f);
    let almost_identical = match (drude, plasma) {
        (Some(d), Some(p)) => {
            let rel = (p - d).abs() / d * 100.0;
            Some(AlmostIdenticalCheck {
                relative_percent: rel,
                threshold_percent: ALMOST_IDENTICAL_THRESHOLD_PERCENT,
                pass: rel <= ALMOST_IDENTICAL_THRESHOLD_PERCENT,
            })
        }
        _ => None,
    };
    CompareReport { a_um, ordering_pass: ordering_pass(&forces_pn), almost_identical, pairs, forces_pn }
}

fn run_compare(mut cfg: RunConfig, args: CompareArgs) -> Result<(), CliError> {
    cfg.apply_common(&args.common);
    if let Some(range) = &args.a_range {
        cfg.separations_um = parse_a_range(range).map_err(CliError::Usage)?;
    } else if let Some(a) = args.a {
        cfg.separations_um = vec![a];
    }
    if let Some(spec) = &args.model {
        cfg.models = parse_models(spec).map_err(CliError::Usage)?;
    }
    cfg.validate_separations()?;
    if cfg.models.len() < 2 {
        return Err(CliError::Usage("compare needs at least two models".into()));
    }
    warn_if_pfa_invalid(&cfg);

    let pairs: Vec<(f64, ModelKind)> = cfg
        .separations_um
        .iter()
        .flat_map(|a| cfg.models.iter().map(move |kind| (*a, *kind)))
        .collect();
    let points = evaluate(&cfg, &pairs)?;

    let mut reports = Vec::new();
    for a_um in &cfg.separations_um {
        let forces: Vec<(ModelKind, f64)> = points
            .iter()
            .filter(|(a, _, _)| a == a_um)
            .map(|(_, kind, r)| (*kind, r.magnitude * 1e12))
            .collect();
        reports.push(compare_report(*a_um, forces));
    }

    let text = match cfg.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let rows: Vec<SweepRow> =
                points.iter().map(|(a, kind, r)| SweepRow::from_result(*a, *kind, r)).collect();
            emit_csv(&rows)
        }
        OutputFormat::Human => {
            let mut s = String::new();
            for report in &reports {
                s.push_str(&format!("a = {} um\n", report.a_um));
                for (kind, force) in &report.forces_pn {
                    s.push_str(&format!("  {:<10} {:>14.prec$} pN\n", kind.name(), force, prec = cfg.precision.max(4)));
                }
                for pair in &report.pairs {
                    s.push_str(&format!(
                        "  {} - {}: {:+.6} pN ({:+.6}%)\n",
                        pair.model_a, pair.model_b, pair.difference_pn, pair.relative_percent
                    ));
                }
                if let Some(check) = &report.almost_identical {
                    s.push_str(&format!(
                        "  drude vs plasma: {:.6}% -> almost identical: {} (<{}%)\n",
                        check.relative_percent,
                        if check.pass { "PASS" } else { "FAIL" },
                        check.threshold_percent
                    ));
                }
                if let Some(pass) = report.ordering_pass {
                    s.push_str(&format!(
                        "  ordering |F_neglected| < |F_diffusion| < |F_drude| <= |F_plasma|: {}\n",
                        if pass { "PASS" } else { "FAIL" }
                    ));
                }
            }
            s
        }
    };
    write_report(&cfg, &text)
}

#[derive(Debug, Serialize)]
struct Table1Check {
    a_um: f64,
    model: ModelKind,
    computed_pn: f64,
    published_pn: f64,
    rel_diff: f64,
    tolerance: f64,
    ok: bool,
}

fn run_table1(mut cfg: RunConfig, args: Table1Args) -> Result<(), CliError> {
    cfg.apply_common(&args.common);
    cfg.separations_um = golden::SEPARATIONS_UM.to_vec();
    cfg.models = ModelKind::ALL.to_vec();

    let pairs: Vec<(f64, ModelKind)> = cfg
        .separations_um
        .iter()
        .flat_map(|a| cfg.models.iter().map(move |kind| (*a, *kind)))
        .collect();
    let points = evaluate(&cfg, &pairs)?;

    let mut checks = Vec::new();
    for (i, a_um) in golden::SEPARATIONS_UM.iter().enumerate() {
        for kind in ModelKind::ALL {
            let computed = points
                .iter()
                .find(|(a, k, _)| a == a_um && *k == kind)
                .map(|(_, _, r)| r.magnitude * 1e12)
                .expect("all table points evaluated");
            let published = golden::published(kind)[i];
            let rel_diff = (computed - published).abs() / published;
            let tolerance = golden::check_tolerance(kind);
            checks.push(Table1Check {
                a_um: *a_um,
                model: kind,
                computed_pn: computed,
                published_pn: published,
                rel_diff,
                tolerance,
                ok: rel_diff <= tolerance,
            });
        }
    }

    let check_csv_header = "a_um,model,computed_pN,published_pN,rel_diff,tolerance,status";
    let check_line = |c: &Table1Check| {
        format!(
            "{},{},{},{},{:e},{:e},{}",
            c.a_um,
            c.model,
            c.computed_pn,
            c.published_pn,
            c.rel_diff,
            c.tolerance,
            if c.ok { "ok" } else { "mismatch" }
        )
    };

    let text = match cfg.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&checks).expect("checks serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from(check_csv_header);
            s.push('\n');
            for c in &checks {
                s.push_str(&check_line(c));
                s.push('\n');
            }
            s
        }
        OutputFormat::Human => {
            let mut s = format!(
                "{:>8}  {:>12}  {:>12}  {:>12}  {:>12}\n",
                "a (um)", "neglected", "drude", "plasma", "diffusion"
            );
            for a_um in &cfg.separations_um {
                s.push_str(&format!("{a_um:>8}"));
                for kind in ModelKind::ALL {
                    let computed = points
                        .iter()
                        .find(|(a, k, _)| a == a_um && *k == kind)
                        .map(|(_, _, r)| r.magnitude * 1e12)
                        .expect("all table points evaluated");
                    s.push_str(&format!("  {computed:>12.prec$}", prec = cfg.precision));
                }
                s.push('\n');
            }
            s.push('\n');
            s.push_str(check_csv_header);
            s.push('\n');
            for c in &checks {
                s.push_str(&check_line(c));
                s.push('\n');
            }
            s
        }
    };
    write_report(&cfg, &text)?;

    if args.check {
        let failures = checks.iter().filter(|c| !c.ok).count();
        if failures > 0 {
            return Err(CliError::GoldenMismatch { failures, total: checks.len() });
        }
    }
    Ok(())
}
