//! Command-line entry point.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 verification violation
//! (argmin outside the catalog, reduction failure, or a positivity flag), so
//! CI can gate on verification runs.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use nlperim::catalog::{self, catalog as build_catalog, crossover_lambda, positivity_diagnostics};
use nlperim::enumerate::{verify_reduction_consistency, verify_theorem};
use nlperim::ising;
use nlperim::lattice::{parse_polyomino, to_coord_string};
use nlperim::perimeter::{classical_perimeter, perimeter, perimeter_direct};
use nlperim::reduce::main_algorithm;
use nlperim::zeta::{ZetaEngine, DEFAULT_TOLERANCE};

const CSV_SCHEMA: &str = "# schema=1";

#[derive(Parser)]
#[command(name = "nlperim", version, about = "Nonlocal bi-axial perimeter toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Interaction decay exponent (> 1)
    #[arg(long, global = true, default_value_t = 2.0)]
    lambda: f64,
    /// Absolute zeta truncation tolerance; NLPERIM_TOLERANCE overrides
    #[arg(long)]
    tolerance: Option<f64>,
}

impl Common {
    fn engine(&self) -> Result<ZetaEngine> {
        let tol = self
            .tolerance
            .or_else(|| std::env::var("NLPERIM_TOLERANCE").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(DEFAULT_TOLERANCE);
        Ok(ZetaEngine::with_tolerance(self.lambda, tol)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Nonlocal perimeter of a polyomino file (JSON out)
    Perimeter {
        #[command(flatten)]
        common: Common,
        /// Input file: "x y" pairs or '#'/'.' grid, auto-detected
        #[arg(long)]
        input: PathBuf,
        /// Also run the literal double-sum oracle
        #[arg(long)]
        direct: bool,
        /// Window for the oracle
        #[arg(long, default_value_t = 4096)]
        window: u32,
    },
    /// Run the perimeter-reducing transform to its first strict decrease
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        /// Write the step-by-step trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the terminal polyomino here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimizer catalog rows for n = 1..n-max (CSV)
    Minimizers {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 30)]
        n_max: u32,
    },
    /// Crossover exponent between the two catalog shapes of one area (JSON)
    Crossover {
        #[arg(long)]
        n: u32,
    },
    /// Exhaustive argmin verification for one area (JSON report)
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Disconnected configurations to sample
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Also check that the reduction strictly decreases every
        /// non-catalog shape of this area
        #[arg(long)]
        reduction: bool,
    },
    /// Excitation-energy landscape over plus-spin counts (CSV)
    Landscape {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 260)]
        n_max: u32,
    },
    /// Critical length of square droplets over a lambda range (CSV)
    Critlen {
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1.85)]
        lambda_min: f64,
        #[arg(long, default_value_t = 4.0)]
        lambda_max: f64,
        #[arg(long, default_value_t = 10)]
        steps: u32,
        #[arg(long, default_value_t = 200)]
        l_max: u32,
    },
    /// Second derivative of the square-droplet energy (CSV)
    D2 {
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 2.1)]
        lambda_min: f64,
        #[arg(long, default_value_t = 4.0)]
        lambda_max: f64,
        #[arg(long, default_value_t = 20)]
        steps: u32,
        #[arg(long, default_value_t = 50)]
        l_max: u32,
    },
    /// Positivity diagnostics of the comparison functions (JSON; exit 2 on
    /// any flagged violation)
    Diagnostics {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        l_max: u32,
    },
}

/// 12 significant digits for all floating output.
fn fmt(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Perimeter { common, input, direct, window } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let p = parse_polyomino(&text)?;
            let engine = common.engine()?;
            let b = perimeter(&p, &engine);
            let mut obj = serde_json::json!({
                "lambda": common.lambda,
                "horizontal": fmt(b.horizontal),
                "vertical": fmt(b.vertical),
                "total": fmt(b.total),
                "classical": classical_perimeter(&p),
            });
            if direct {
                let d = perimeter_direct(&p, &engine, window)?;
                obj["direct_total"] = serde_json::json!(fmt(d.total));
                obj["direct_gap"] = serde_json::json!(fmt(d.total - b.total));
            }
            println!("{}", serde_json::to_string_pretty(&obj)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { common, input, trace, output } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let p = parse_polyomino(&text)?;
            let engine = common.engine()?;
            let tr = main_algorithm(&p, &engine)?;
            if let Some(path) = trace {
                fs::write(&path, serde_json::to_string_pretty(&tr)?)?;
            }
            let body = to_coord_string(&tr.terminal);
            match output {
                Some(path) => fs::write(&path, body)?,
                None => print!("{body}"),
            }
            eprintln!(
                "perimeter {} -> {} ({} steps)",
                fmt(tr.initial_perimeter),
                fmt(tr.terminal_perimeter),
                tr.steps.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimizers { common, n_max } => {
            let engine = common.engine()?;
            println!("{CSV_SCHEMA}");
            println!("n,shape,per_lambda,classical_per");
            for n in 1..=n_max {
                let cat = build_catalog(n, &engine)?;
                for e in cat.minimizers {
                    println!("{n},{},{},{}", e.spec, fmt(e.nonlocal_perimeter), e.classical_perimeter);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Crossover { n } => {
            let engine = ZetaEngine::new(2.0)?;
            let cat = build_catalog(n, &engine)?;
            let shapes: Vec<String> = cat.minimizers.iter().map(|e| e.spec.to_string()).collect();
            let root = crossover_lambda(n)?;
            let obj = serde_json::json!({
                "n": n,
                "shapes": shapes,
                "lambda_star": root.map(fmt),
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, n, seed, samples, reduction } => {
            let engine = common.engine()?;
            match verify_theorem(n, &engine, seed, samples) {
                Ok(rep) => {
                    let mut ok = true;
                    if reduction {
                        let red = verify_reduction_consistency(n, &engine)?;
                        ok = red.violations.is_empty();
                        println!("{}", serde_json::to_string_pretty(&serde_json::json!({
                            "enumeration": rep,
                            "reduction": red,
                        }))?);
                    } else {
                        println!("{}", serde_json::to_string_pretty(&rep)?);
                    }
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
                }
                Err(err @ nlperim::Error::TheoremViolation { .. }) => {
                    eprintln!("violation: {err}");
                    Ok(ExitCode::from(2))
                }
                Err(err) => Err(err.into()),
            }
        }
        Command::Landscape { common, h, n_max } => {
            let engine = common.engine()?;
            let land = ising::landscape(h, &engine, n_max)?;
            println!("{CSV_SCHEMA}");
            println!("n,shape,delta_h");
            for p in &land.points {
                let shapes: Vec<String> = p.minimizing_specs.iter().map(|s| s.to_string()).collect();
                println!("{},{},{}", p.n, shapes.join("|"), fmt(p.delta_h));
            }
            eprintln!("n_c={} critical_length={}", land.n_c, land.critical_length);
            Ok(ExitCode::SUCCESS)
        }
        Command::Critlen { h, lambda_min, lambda_max, steps, l_max } => {
            println!("{CSV_SCHEMA}");
            println!("lambda,l_c,f_at_l_c");
            for i in 0..=steps {
                let lam = lambda_min + (lambda_max - lambda_min) * i as f64 / steps as f64;
                let engine = ZetaEngine::new(lam)?;
                let c = ising::critical_length_square(h, &engine, l_max)?;
                println!("{},{},{}", fmt(lam), c.l_c, fmt(c.f_values[(c.l_c - 1) as usize]));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::D2 { h, lambda_min, lambda_max, steps, l_max } => {
            println!("{CSV_SCHEMA}");
            println!("lambda,l,d2");
            for i in 0..=steps {
                let lam = lambda_min + (lambda_max - lambda_min) * i as f64 / steps as f64;
                if lam <= 2.0 {
                    // the rewritten form needs lambda > 2; skip below
                    continue;
                }
                for l in 2..=l_max {
                    println!("{},{},{}", fmt(lam), l, fmt(ising::d2f_dl2(lam, h, l as f64)?));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Diagnostics { common, l_max } => {
            let engine = common.engine()?;
            let mut reports = Vec::new();
            let mut violations = 0usize;
            // exact-square instances for F1/F2
            for l in 2..=l_max {
                for a in 1..l {
                    if (l * l) % a == 0 {
                        let b = l * l / a;
                        if a < b {
                            let rep = positivity_diagnostics(a, b, l, 0, 0, &engine)?;
                            violations += rep.violations.len();
                            reports.push(rep);
                        }
                    }
                }
            }
            // protuberance instances for the tilde functions
            for l in 2..=l_max {
                for a in 1..=l {
                    if (l as f64) < a as f64 + (a as f64).sqrt() {
                        continue;
                    }
                    for k1 in 1..l {
                        let rep = positivity_diagnostics(a, (l * l + k1) / a, l, k1, 0, &engine)?;
                        violations += rep.violations.len();
                        if !rep.violations.is_empty() {
                            reports.push(rep);
                        }
                    }
                }
            }
            let l2 = serde_json::json!({
                "delta_l2_printed_at_2": fmt(catalog::delta_l2_printed(2.0)),
                "delta_l2_strip_at_2": fmt(catalog::delta_l2_strip(2.0)),
                "delta_l2_printed_root": fmt(catalog::delta_l2_printed_root()),
                "printed_and_strip_forms_differ": true,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "lambda": engine.lambda(),
                    "l2_reference": l2,
                    "violations": violations,
                    "flagged": reports.iter().flat_map(|r| r.violations.clone()).collect::<Vec<_>>(),
                }))?
            );
            Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}
