use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use galinv_core::checks::{run_suite, CheckOptions, Suite};
use galinv_core::equivalence::{test_equivalence, EquivalenceOptions};
use galinv_core::group::{random_element_with, ElementScales, GalileanElement};
use galinv_core::moving_frame::{invariants, AnalyticMotion, FrameTolerances, Motion, SampledMotion, Smoothing};
use log::{debug, info, warn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::{
    EquivRecord, InvariantRecord, TransformRecord, EQUIV_CSV_HEADER, INVARIANTS_CSV_HEADER, SCHEMA_VERSION,
};
use crate::trajectory::Trajectory;
use crate::{Cli, Command, Format, GenKind, GridArgs, RunConfig, SuiteArg};

pub fn run(cli: &Cli) -> Result<u8> {
    validate(&cli.cfg)?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Invariants { input } => cmd_invariants(input, &cli.cfg, &mut out)?,
        Command::Equiv { a, b, window, anchor, shift_grid, shift_range, window_samples } => {
            let opts = EquivalenceOptions {
                tol: cli.cfg.tol,
                shift_range: *shift_range,
                shift_steps: *shift_grid,
                window_samples: *window_samples,
                anchor: *anchor,
                frame_tol: frame_tolerances(&cli.cfg),
            };
            cmd_equiv(a, b, *window, &opts, &cli.cfg, &mut out)?
        }
        Command::Gen { kind, grid, output } => {
            let traj = cmd_gen(kind, grid, cli.cfg.seed)?;
            match output {
                Some(p) => {
                    let mut f =
                        BufWriter::new(File::create(p).with_context(|| format!("{}: cannot create", p.display()))?);
                    traj.write(&mut f)?;
                    f.flush()?;
                }
                None => traj.write(&mut out)?,
            }
            0
        }
        Command::Check { suite, inject_fault } => cmd_check(*suite, *inject_fault, &cli.cfg, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn validate(cfg: &RunConfig) -> Result<()> {
    for (name, v) in
        [("--tol", cfg.tol), ("--tol-a", cfg.tol_a), ("--tol-b", cfg.tol_b), ("--conditioning", cfg.conditioning)]
    {
        if !(v.is_finite() && v > 0.0) {
            bail!("{name} must be positive, got {v}");
        }
    }
    if let Some(w) = cfg.smooth_window {
        if w % 2 == 0 || w < cfg.smooth_degree + 1 {
            bail!("--smooth-window {w} must be odd and at least --smooth-degree + 1 = {}", cfg.smooth_degree + 1);
        }
    }
    Ok(())
}

fn frame_tolerances(cfg: &RunConfig) -> FrameTolerances<f64> {
    FrameTolerances { tol_a: cfg.tol_a, tol_b: cfg.tol_b, conditioning: cfg.conditioning }
}

fn smoothing(cfg: &RunConfig) -> Option<Smoothing> {
    cfg.smooth_window.map(|window| Smoothing { window, degree: cfg.smooth_degree })
}

fn load(path: &Path, cfg: &RunConfig) -> Result<SampledMotion<f64>> {
    let traj = Trajectory::read_path(path)?;
    info!("{}: {} samples", path.display(), traj.len());
    SampledMotion::from_samples(traj.ts, &traj.xs, cfg.scheme.into(), smoothing(cfg))
        .with_context(|| path.display().to_string())
}

fn cmd_invariants(input: &Path, cfg: &RunConfig, out: &mut impl Write) -> Result<u8> {
    let m = load(input, cfg)?;
    let tol = frame_tolerances(cfg);
    let format = cfg.format.unwrap_or(Format::Csv);
    if format == Format::Csv {
        writeln!(out, "{INVARIANTS_CSV_HEADER}")?;
    }
    let mut irregular = 0;
    for (j, &boundary) in m.sampled.jets.iter().zip(&m.sampled.boundary) {
        let inv = invariants(j, &tol);
        irregular += usize::from(!inv.regular);
        let rec = InvariantRecord {
            version: SCHEMA_VERSION,
            t: j.t,
            a1: inv.a1,
            a2: inv.a2,
            a3: inv.a3,
            jcurv: inv.jcurv,
            regular: inv.regular,
            well_conditioned: inv.well_conditioned,
            boundary,
        };
        match format {
            Format::Csv => writeln!(out, "{}", rec.csv_line())?,
            Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
        }
    }
    if irregular > 0 {
        warn!("{irregular} of {} samples are torsion-degenerate", m.len());
    }
    Ok(0)
}

/// Interior of the grid shrunk by the boundary width on each side, so that
/// a same-length copy shifted in time also matches away from its ends.
fn default_window(m: &SampledMotion<f64>) -> Result<(f64, f64)> {
    let b = &m.sampled.boundary;
    let width = b.iter().position(|x| !x).unwrap_or(b.len());
    let lo = 2 * width;
    let hi = b.len().saturating_sub(1 + 2 * width);
    if hi <= lo || b.len() < 1 + 4 * width {
        bail!("no regular window: trajectory has too few interior samples");
    }
    Ok((m.ts[lo], m.ts[hi]))
}

fn cmd_equiv(
    a: &Path,
    b: &Path,
    window: Option<(f64, f64)>,
    opts: &EquivalenceOptions<f64>,
    cfg: &RunConfig,
    out: &mut impl Write,
) -> Result<u8> {
    let (m1, m2) = (load(a, cfg)?, load(b, cfg)?);
    let window = match window {
        Some(w) => w,
        None => default_window(&m1)?,
    };
    debug!("window [{}, {}], domain of B [{}, {}]", window.0, window.1, m2.domain().0, m2.domain().1);
    let rep = test_equivalence(&m1, &m2, window, opts)?;
    info!(
        "shift {}, pointwise residual {:e}, effective tolerance {:e}",
        rep.time_shift, rep.max_pointwise_residual, rep.effective_tol
    );
    let rec = EquivRecord::new(&rep);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
        Format::Csv => {
            writeln!(out, "{EQUIV_CSV_HEADER}")?;
            writeln!(out, "{}", rec.csv_line())?;
        }
    }
    Ok(if rep.equivalent { 0 } else { 1 })
}

fn sample_motion(m: &AnalyticMotion<f64>, grid: &GridArgs) -> Result<Trajectory> {
    if !(grid.step.is_finite() && grid.step > 0.0) || !grid.t0.is_finite() {
        bail!("--step must be positive and --t0 finite");
    }
    let ts: Vec<f64> = (0..grid.samples).map(|k| grid.t0 + k as f64 * grid.step).collect();
    let xs = ts.iter().map(|&t| m.position(t)).collect::<Result<_, _>>()?;
    Ok(Trajectory { ts, xs })
}

pub fn cmd_gen(kind: &GenKind, grid: &GridArgs, seed: u64) -> Result<Trajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GenKind::Circle { radius, omega } => sample_motion(&AnalyticMotion::circle(*radius, *omega), grid),
        GenKind::HelixLike { radius, omega, lift } => {
            sample_motion(&AnalyticMotion::helix_like(*radius, *omega, *lift), grid)
        }
        GenKind::Poly { degree, scale } => {
            sample_motion(&AnalyticMotion::random_polynomial(&mut rng, *degree, *scale), grid)
        }
        GenKind::BoostedCopy { input, emit_transform, time_scale, velocity_scale, translation_scale } => {
            let traj = Trajectory::read_path(input)?;
            let scales =
                ElementScales { time: *time_scale, velocity: *velocity_scale, translation: *translation_scale };
            let g: GalileanElement<f64> = random_element_with(&mut rng, scales);
            if let Some(p) = emit_transform {
                let json = serde_json::to_string(&TransformRecord::from_element(&g))?;
                std::fs::write(p, json + "\n").with_context(|| format!("{}: cannot write", p.display()))?;
            }
            Ok(traj.transformed(&g))
        }
    }
}

fn cmd_check(suite: SuiteArg, inject_fault: bool, cfg: &RunConfig, out: &mut impl Write) -> Result<u8> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Algebra => vec![Suite::Algebra],
        SuiteArg::MaurerCartan => vec![Suite::MaurerCartan],
        SuiteArg::Dimensions => vec![Suite::Dimensions],
        SuiteArg::Frames => vec![Suite::Frames],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let opts = CheckOptions { seed: cfg.seed, inject_fault };
    let mut all_ok = true;
    if cfg.format == Some(Format::Csv) {
        writeln!(out, "suite,check,passed,detail")?;
    }
    for s in suites {
        let rep = run_suite(s, &opts);
        all_ok &= rep.passed();
        match cfg.format {
            Some(Format::Json) => writeln!(out, "{}", serde_json::to_string(&rep)?)?,
            Some(Format::Csv) => {
                for l in &rep.lines {
                    writeln!(out, "{},{},{},\"{}\"", rep.suite, l.name, l.passed, l.detail.replace('"', "\"\""))?;
                }
            }
            None => {
                for l in &rep.lines {
                    writeln!(
                        out,
                        "{} {}: {}: {}",
                        if l.passed { "PASS" } else { "FAIL" },
                        rep.suite,
                        l.name,
                        l.detail
                    )?;
                }
                for n in &rep.notes {
                    writeln!(out, "{}", n.trim_end())?;
                }
                writeln!(out, "{} {} ms", rep.suite, rep.elapsed_ms)?;
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}
