//! Subcommand implementations.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use weakifc::bounds::{corner_points, intersection_outer, kramer_outer};
use weakifc::dpc::{verify_point, SimConfig};
use weakifc::geometry::{halfspaces_to_region, is_subset, ConvexRegion};
use weakifc::model::{validate_channel, ChannelParams};
use weakifc::regions::{sweep_points, InformedTx, RegionSpec};
use weakifc::Error as LibError;

use crate::output::{fmt_g, write_csv, write_json, Metadata, RegionFile};
use crate::{GainArgs, OutputFormat, EXIT_CHECK_FAILED, EXIT_NOT_WEAK, EXIT_OK, EXIT_USAGE};

pub struct Context {
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub quiet: bool,
}

impl Context {
    fn note(&self, msg: fmt::Arguments) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(LibError),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(LibError::NotWeakInterference { .. }) => EXIT_NOT_WEAK,
            CliError::Lib(LibError::InsufficientSamples { .. }) => EXIT_USAGE,
            CliError::Lib(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_USAGE,
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CmdResult = Result<u8, CliError>;

fn emit_region(
    ctx: &Context,
    stem: &str,
    metadata: Metadata,
    region: &ConvexRegion,
    sweep: Option<&[(f64, f64, f64)]>,
) -> Result<(), CliError> {
    match ctx.format {
        OutputFormat::Csv => {
            if let Some(rows) = sweep {
                let rows: Vec<Vec<f64>> = rows.iter().map(|&(a, r1, r2)| vec![a, r1, r2]).collect();
                write_csv(&ctx.path(&format!("{stem}.csv")), "alpha,R1,R2", &rows)?;
            } else {
                let rows: Vec<Vec<f64>> =
                    region.vertices.iter().map(|p| vec![p.x, p.y]).collect();
                write_csv(&ctx.path(&format!("{stem}.csv")), "R1,R2", &rows)?;
            }
            write_json(
                &ctx.path(&format!("{stem}.json")),
                &RegionFile::new(metadata, region),
            )?;
        }
        OutputFormat::Json => {
            write_json(
                &ctx.path(&format!("{stem}.json")),
                &RegionFile::new(metadata, region),
            )?;
        }
    }
    Ok(())
}

pub fn cmd_region(
    ctx: &Context,
    tx: u8,
    p1: f64,
    p2: f64,
    gains: &GainArgs,
    points: usize,
) -> CmdResult {
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let params = ChannelParams::new(gains.gain_a(), gains.gain_b(), p1, p2);
    let informed = if tx == 1 { InformedTx::T1 } else { InformedTx::T2 };
    let spec = RegionSpec::new(params, informed, points);
    let swept = sweep_points(&spec)?;
    let region = match informed {
        InformedTx::T1 => weakifc::regions::region_boundary_t1(&spec)?,
        InformedTx::T2 => weakifc::regions::region_boundary_t2(&spec)?,
    };
    let rows: Vec<(f64, f64, f64)> = swept.iter().map(|&(a, r)| (a, r.r1, r.r2)).collect();
    let stem = format!("region_t{tx}");
    let metadata = Metadata::new(params).with_n_alpha(points);
    emit_region(ctx, &stem, metadata, &region, Some(&rows))?;
    ctx.note(format_args!("wrote {stem} ({} vertices)", region.vertices.len()));
    Ok(EXIT_OK)
}

/// JSON config consumed by `compare` and accepted by `sweep`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    pub p1: f64,
    pub p2: f64,
    pub a2: f64,
    pub b2: f64,
    #[serde(default)]
    pub n_alpha: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
struct CornersFile {
    metadata: Metadata,
    #[serde(rename = "A")]
    a: (f64, f64),
    #[serde(rename = "B")]
    b: (f64, f64),
}

#[derive(Debug, Serialize)]
struct SubsetRelation {
    inner: String,
    outer: String,
    is_subset: bool,
}

#[derive(Debug, Serialize)]
struct SummaryFile {
    metadata: Metadata,
    tolerance: f64,
    subset_relations: Vec<SubsetRelation>,
}

pub fn cmd_compare(ctx: &Context, config_path: &Path) -> CmdResult {
    let raw = std::fs::read_to_string(config_path)?;
    let config: CompareConfig = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", config_path.display())))?;
    if config.a2 < 0.0 || config.b2 < 0.0 {
        return Err(CliError::Usage("a2 and b2 must be nonnegative".into()));
    }
    let n_alpha = config.n_alpha.unwrap_or(1024);
    let params = ChannelParams::new(config.a2.sqrt(), config.b2.sqrt(), config.p1, config.p2);
    validate_channel(params, true, true)?;

    let t1_spec = RegionSpec::new(params, InformedTx::T1, n_alpha);
    let t2_spec = RegionSpec::new(params, InformedTx::T2, n_alpha);
    let t1 = weakifc::regions::region_boundary_t1(&t1_spec)?;
    let t2 = weakifc::regions::region_boundary_t2(&t2_spec)?;
    let inter = intersection_outer(params, n_alpha)?;
    let kramer = halfspaces_to_region(&kramer_outer(params)?)?;

    let meta = || {
        let m = Metadata::new(params).with_n_alpha(n_alpha);
        match config.seed {
            Some(s) => m.with_seed(s),
            None => m,
        }
    };
    let sweep_rows = |spec: &RegionSpec| -> Result<Vec<(f64, f64, f64)>, CliError> {
        Ok(sweep_points(spec)?
            .iter()
            .map(|&(a, r)| (a, r.r1, r.r2))
            .collect())
    };
    emit_region(ctx, "region_t1", meta(), &t1, Some(&sweep_rows(&t1_spec)?))?;
    emit_region(ctx, "region_t2", meta(), &t2, Some(&sweep_rows(&t2_spec)?))?;
    emit_region(ctx, "intersection", meta(), &inter, None)?;
    emit_region(ctx, "kramer", meta(), &kramer, None)?;

    let (a, b) = corner_points(params)?;
    write_json(
        &ctx.path("corners.json"),
        &CornersFile {
            metadata: meta(),
            a: (a.r1, a.r2),
            b: (b.r1, b.r2),
        },
    )?;

    // discretization-aware containment tolerance
    let tol = 10.0 / n_alpha as f64;
    let named: [(&str, &ConvexRegion); 4] = [
        ("region_t1", &t1),
        ("region_t2", &t2),
        ("intersection", &inter),
        ("kramer", &kramer),
    ];
    let mut relations = Vec::new();
    for (ni, ri) in named {
        for (no, ro) in named {
            if ni == no {
                continue;
            }
            relations.push(SubsetRelation {
                inner: ni.to_string(),
                outer: no.to_string(),
                is_subset: is_subset(ri, ro, tol),
            });
        }
    }
    write_json(
        &ctx.path("summary.json"),
        &SummaryFile {
            metadata: meta(),
            tolerance: tol,
            subset_relations: relations,
        },
    )?;
    ctx.note(format_args!(
        "wrote region_t1, region_t2, intersection, kramer, corners.json, summary.json"
    ));
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_simulate(
    ctx: &Context,
    p1: f64,
    p2: f64,
    gains: &GainArgs,
    alpha: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> CmdResult {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(CliError::Usage("--alpha must lie in [0, 1]".into()));
    }
    let params = ChannelParams::new(gains.gain_a(), gains.gain_b(), p1, p2);
    let cfg = SimConfig::new(samples, seed);
    let report = verify_point(params, alpha, &cfg, tol)?;
    write_json(&ctx.path("report.json"), &report)?;
    ctx.note(format_args!(
        "alpha={} r1={} (analytic {}) r2={} (analytic {}) costa_residual={} pass={}",
        fmt_g(alpha),
        fmt_g(report.r1.estimate.rate_hat),
        fmt_g(report.r1.analytic),
        fmt_g(report.r2.estimate.rate_hat),
        fmt_g(report.r2.analytic),
        fmt_g(report.costa_residual),
        report.pass
    ));
    if report.pass {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_CHECK_FAILED)
    }
}

/// Parses "v" or "start:step:stop" into an inclusive grid.
fn parse_grid(spec: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: &str| CliError::Usage(format!("--{name} {spec:?}: {m}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad("not a number"))
    };
    match parts.as_slice() {
        [v] => Ok(vec![parse(v)?]),
        [start, step, stop] => {
            let (start, step, stop) = (parse(start)?, parse(step)?, parse(stop)?);
            if step <= 0.0 {
                return Err(bad("step must be positive"));
            }
            let mut out = Vec::new();
            let n = ((stop - start) / step + 1e-9).floor() as i64;
            for i in 0..=n.max(-1) {
                out.push(start + i as f64 * step);
            }
            if out.is_empty() {
                return Err(bad("empty grid"));
            }
            Ok(out)
        }
        _ => Err(bad("expected VALUE or START:STEP:STOP")),
    }
}

pub fn cmd_sweep(
    ctx: &Context,
    p1_spec: &str,
    p2_spec: &str,
    a_spec: &str,
    b_spec: &str,
    n_alpha: usize,
) -> CmdResult {
    let p1s = parse_grid(p1_spec, "p1")?;
    let p2s = parse_grid(p2_spec, "p2")?;
    let gas = parse_grid(a_spec, "a")?;
    let gbs = parse_grid(b_spec, "b")?;
    if p1s.is_empty() || p2s.is_empty() || gas.is_empty() || gbs.is_empty() {
        return Err(CliError::Usage("empty parameter grid".into()));
    }

    let header = "p1,p2,a,b,status,A_r1,A_r2,B_r1,B_r2,kramer_sum_a,kramer_sum_b,max_sum_rate";
    let mut lines = vec![header.to_string()];
    // lexicographic grid order: p1, then p2, then a, then b
    for &p1 in &p1s {
        for &p2 in &p2s {
            for &a in &gas {
                for &b in &gbs {
                    let params = ChannelParams::new(a, b, p1, p2);
                    let prefix: Vec<String> = [p1, p2, a, b].iter().map(|&v| fmt_g(v)).collect();
                    let row = match sweep_cell(params, n_alpha) {
                        Ok(cells) => format!("{},ok,{}", prefix.join(","), cells.join(",")),
                        Err(LibError::NotWeakInterference { .. }) => {
                            format!("{},not_weak,,,,,,,", prefix.join(","))
                        }
                        Err(e) => return Err(e.into()),
                    };
                    lines.push(row);
                }
            }
        }
    }
    let mut body = lines.join("\n");
    body.push('\n');
    std::fs::write(ctx.path("sweep.csv"), body)?;
    ctx.note(format_args!("wrote sweep.csv ({} rows)", lines.len() - 1));
    Ok(EXIT_OK)
}

fn sweep_cell(params: ChannelParams, n_alpha: usize) -> Result<Vec<String>, LibError> {
    validate_channel(params, true, true)?;
    let (a, b) = corner_points(params)?;
    let kramer = kramer_outer(params)?;
    let inter = intersection_outer(params, n_alpha)?;
    let max_sum = inter
        .vertices
        .iter()
        .map(|v| v.x + v.y)
        .fold(0.0f64, f64::max);
    Ok(vec![
        fmt_g(a.r1),
        fmt_g(a.r2),
        fmt_g(b.r1),
        fmt_g(b.r2),
        fmt_g(kramer.constraints[2].d),
        fmt_g(kramer.constraints[3].d),
        fmt_g(max_sum),
    ])
}
