use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use devilfish::certify::{
    certify, export_certificate, parse_certificate, verify_certificate, CertifyOptions, EdgeOptions,
};
use devilfish::devilfish::{find_critical_points, CriticalSearch};
use devilfish::fuzz::{self, check_triangle, FuzzConfig, GeneratorKind};
use devilfish::numfmt::shortest;
use devilfish::reduction::{
    altitude_residual_via_lemma2, amgm_gap, isosceles_margin, isosceles_presquare, lemma2_gap, presquare_sign_change,
    quintic_factor_check,
};
use devilfish::surface::{SurfaceFormat, SurfaceGrid, DEFAULT_RESOLUTION};
use devilfish::{Error, Triangle};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "devilfish",
    version,
    about = "Checks and certifies the median and altitude triangle inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Residuals and verdicts for one triangle.
    Check {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 1e-12)]
        slack: f64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded randomized check of every inequality.
    Fuzz {
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_generator)]
        generator: GeneratorKind,
        #[arg(long, default_value_t = 1e-12)]
        slack: f64,
        #[arg(long)]
        json: bool,
    },
    /// Stationary points of the devil-fish function.
    CriticalPoints {
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Interval branch-and-bound over the region and its edges.
    Certify {
        #[arg(long, default_value_t = 1e-6)]
        tau: f64,
        #[arg(long, default_value_t = 10_000_000)]
        max_boxes: u64,
        #[arg(long, default_value_t = 1e-4)]
        min_width: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute the bounds recorded in a certificate.
    VerifyCertificate { file: PathBuf },
    /// Sample the devil-fish function on a grid.
    Surface {
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        nx: usize,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        ny: usize,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: SurfaceFormat,
        #[arg(long)]
        full_grid: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quintic factorization and spot checks of the algebraic reductions.
    Reductions,
}

fn parse_generator(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<SurfaceFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand, mapped to an exit code.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certificate(_) | Error::Domain(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(a: f64, b: f64, c: f64, slack: f64, as_json: bool) -> Outcome {
    if !(slack >= 0.0) {
        return Err(Failure::Usage(format!("slack must be >= 0, got {slack}")));
    }
    let t = Triangle::new(a, b, c)?;
    let outcomes = check_triangle(&t, slack);
    let cb = t.corollary_b_check();
    let all = outcomes.iter().all(|o| o.passed());
    if as_json {
        let checks: Vec<_> = outcomes
            .iter()
            .map(|o| json!({"check": o.kind, "residual": o.residual, "threshold": o.threshold, "pass": o.passed()}))
            .collect();
        let doc = json!({
            "sides": t.sides(),
            "area": t.area(),
            "semiperimeter": t.semiperimeter(),
            "altitudes": t.altitudes(),
            "medians": t.medians(),
            "corollary_b": {"ratio": cb.ratio, "bound": cb.bound},
            "checks": checks,
            "pass": all,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("finite values"));
    } else {
        let [ha, hb, hc] = t.altitudes();
        let [ma, mb, mc] = t.medians();
        println!("sides       {} {} {}", shortest(a), shortest(b), shortest(c));
        println!("area        {}", shortest(t.area()));
        println!("altitudes   {} {} {}", shortest(ha), shortest(hb), shortest(hc));
        println!("medians     {} {} {}", shortest(ma), shortest(mb), shortest(mc));
        println!("corollary-b ratio {} bound {}", shortest(cb.ratio), shortest(cb.bound));
        for o in &outcomes {
            println!(
                "{:<17} {:>24}  {}",
                o.kind.name(),
                shortest(o.residual),
                verdict(o.passed())
            );
        }
        println!("{}", verdict(all));
    }
    Ok(all)
}

fn run_fuzz(cfg: FuzzConfig, as_json: bool) -> Outcome {
    let report = fuzz::run(&cfg)?;
    if as_json {
        print!("{}", report.to_json());
    } else {
        println!(
            "generator {} seed {} count {} (drawn {}, rejected {})",
            cfg.generator, cfg.seed, cfg.count, report.attempts, report.rejected
        );
        for s in &report.checks {
            let worst = s.worst.map(|w| shortest(w.score)).unwrap_or_default();
            println!(
                "{:<17} pass {:>9} fail {:>6} worst {:>24} min-margin {}",
                s.check.name(),
                s.passed,
                s.failed,
                worst,
                shortest(s.min_margin)
            );
        }
        println!("presquare-negative {}", report.presquare_negative);
        for v in &report.violations {
            eprintln!(
                "violation #{} {}: sides {:?} residual {}",
                v.index,
                v.check,
                v.sides.map(shortest),
                shortest(v.residual)
            );
        }
        println!("{}", verdict(report.is_clean()));
    }
    Ok(report.is_clean())
}

fn critical_points(grid: usize, tol: f64, as_json: bool) -> Outcome {
    if grid < 2 || !(tol > 0.0) {
        return Err(Failure::Usage("need --grid >= 2 and --tol > 0".into()));
    }
    let result = find_critical_points(&CriticalSearch {
        grid,
        tol,
        ..Default::default()
    })?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&result).expect("finite values"));
    } else {
        println!(
            "seeds {} converged-clusters {} failures {}",
            result.seeds,
            result.points.len(),
            result.failures.len()
        );
        for p in &result.points {
            println!(
                "({:.10}, {:.10})  F = {:.10}  |grad| = {:.1e}  H = [[{:.7}, {:.7}], [{:.7}, {:.7}]]  det = {:.7}  {}  ({} seeds)",
                p.x,
                p.y,
                p.value,
                p.gradient_norm,
                p.hessian.xx,
                p.hessian.xy,
                p.hessian.xy,
                p.hessian.yy,
                p.determinant,
                p.classification,
                p.seeds
            );
        }
    }
    Ok(!result.points.is_empty())
}

fn run_certify(tau: f64, max_boxes: u64, min_width: f64, out: &PathBuf) -> Outcome {
    if !(tau > 0.0) || !(min_width > 0.0) || max_boxes == 0 {
        return Err(Failure::Usage(
            "need --tau > 0, --min-width > 0 and --max-boxes >= 1".into(),
        ));
    }
    let opts = CertifyOptions {
        tau,
        max_boxes,
        min_width,
        ..Default::default()
    };
    let edge_opts = EdgeOptions {
        tau,
        ..Default::default()
    };
    let cert = certify(&opts, &edge_opts)?;
    export_certificate(&cert, out)?;
    let r = &cert.region;
    println!(
        "region {}: {} after {} boxes, {} residual boxes (max width {})",
        r.region.describe(),
        r.conclusion,
        r.boxes_processed,
        r.residual_boxes.len(),
        shortest(r.max_residual_width)
    );
    for e in &cert.edges {
        println!(
            "edge {:<6} {}: {} intervals, {} residual",
            e.edge.name(),
            e.conclusion,
            e.intervals_processed,
            e.residual_intervals.len()
        );
    }
    println!("wrote {}", out.display());
    println!("{}", verdict(cert.fully_certified()));
    Ok(cert.fully_certified())
}

fn verify(file: &PathBuf) -> Outcome {
    let text =
        std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let cert = parse_certificate(&text).map_err(|e| Failure::Math(e.to_string()))?;
    let v = verify_certificate(&cert);
    println!(
        "checked {} residual boxes and {} edge intervals; max recomputed bound {}",
        v.boxes_checked,
        v.intervals_checked,
        shortest(v.max_upper)
    );
    for p in &v.problems {
        eprintln!("problem: {p}");
    }
    println!("{}", if v.sound { "SOUND" } else { "UNSOUND" });
    Ok(v.sound)
}

fn surface(nx: usize, ny: usize, format: SurfaceFormat, full_grid: bool, out: &PathBuf) -> Outcome {
    let grid = SurfaceGrid::sample(nx, ny, full_grid)?;
    grid.write(format, out)?;
    if let Some((lo, hi)) = grid.extrema() {
        println!(
            "{} points; min F {} at ({}, {}); max F {} at ({}, {})",
            grid.defined().count(),
            shortest(lo.2),
            shortest(lo.0),
            shortest(lo.1),
            shortest(hi.2),
            shortest(hi.0),
            shortest(hi.1)
        );
    }
    Ok(true)
}

fn reductions() -> Outcome {
    let fc = quintic_factor_check();
    println!("quintic (t-1)(t^4+15t^3+88t^2+48t+64) = {:?}", fc.product);
    println!("  coefficients match: {}", fc.coefficients_match);
    println!(
        "  quartic positive on {} samples: {}",
        fc.samples, fc.quartic_positive_on_samples
    );

    let mut ok = fc.holds();
    for (a, b, c) in [(1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (-1.0, 1.0, 1.0)] {
        let g = lemma2_gap(a, b, c)?;
        ok &= g >= 0.0;
        println!("a^3+b^3+c^3-3abc at ({a}, {b}, {c}) = {}", shortest(g));
    }
    let g = amgm_gap(&[1.0, 2.0, 3.0])?;
    ok &= g >= 0.0;
    println!("AM-GM gap of (1, 2, 3) = {}", shortest(g));
    for (a, b, c) in [(3.0, 4.0, 5.0), (2.0, 2.0, 3.0), (1.0, 1.0, 1.0)] {
        let t = Triangle::new(a, b, c)?;
        let direct = t.altitude_residual();
        let via = altitude_residual_via_lemma2(&t);
        ok &= (direct - via).abs() <= 1e-10 * t.largest_side().powi(2);
        println!(
            "altitude residual ({a}, {b}, {c}): direct {} via cubic {}",
            shortest(direct),
            shortest(via)
        );
    }
    for c in [0.3, 0.5, 0.9] {
        let (lhs, rhs) = isosceles_margin(1.0, c)?;
        ok &= lhs <= rhs;
        println!(
            "isosceles (1, 1, {c}): {} <= {}  pre-squaring quantity {}",
            shortest(lhs),
            shortest(rhs),
            shortest(isosceles_presquare(1.0, c))
        );
    }
    println!(
        "pre-squaring quantity changes sign at c/a = {}",
        shortest(presquare_sign_change())
    );
    println!("{}", verdict(ok));
    Ok(ok)
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Check { a, b, c, slack, json } => check(a, b, c, slack, json),
        Command::Fuzz {
            count,
            seed,
            generator,
            slack,
            json,
        } => {
            let cfg = FuzzConfig {
                count,
                seed,
                generator,
                slack,
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            run_fuzz(cfg, json)
        }
        Command::CriticalPoints { grid, tol, json } => critical_points(grid, tol, json),
        Command::Certify {
            tau,
            max_boxes,
            min_width,
            out,
        } => run_certify(tau, max_boxes, min_width, &out),
        Command::VerifyCertificate { file } => verify(&file),
        Command::Surface {
            nx,
            ny,
            format,
            full_grid,
            out,
        } => surface(nx, ny, format, full_grid, &out),
        Command::Reductions => reductions(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match dispatch(cli.command) {
        Ok(true) => ExitCode::from(PASS),
        Ok(false) => ExitCode::from(FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(FAIL)
        }
    }
}
