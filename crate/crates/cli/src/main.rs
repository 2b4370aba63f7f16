use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use biflow::bicut::{min_bicut, oracle_max_integral_biflow, verify_biflow, Pairing};
use biflow::generate::{generate, Class};
use biflow::io::{emit_instance, emit_result, parse_instance, parse_solution, NamedInstance};
use biflow::structure::{
    classify_bridges, detect_case, k4star_minor, reduce, BridgeKind, GluingSide, Reduced, StructureCase,
};
use biflow::{solve, Cap};
use clap::{Parser, Subcommand};

/// Maximum integral two-commodity flows with optimality certificates.
#[derive(Parser)]
#[command(name = "biflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the biflow as paths.
    Solve { file: PathBuf },
    /// Show reductions, the detected structure and the bridge report.
    Analyze { file: PathBuf },
    /// Print a minimum bicut.
    Bicut { file: PathBuf },
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Print a random instance of a structural class.
    Gen { class: Class, n: usize, capmax: Cap, seed: u64 },
    /// Search for the forbidden minor (small instances only).
    Minor { file: PathBuf },
    /// Maximum integral biflow by exhaustive search (small instances only).
    Oracle { file: PathBuf },
}

/// Exit code for answers that are valid but not proven optimal.
const UNCERTIFIED: u8 = 2;

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which would read as "uncertified"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_instance(path: &Path) -> Result<NamedInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(UNCERTIFIED)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { file } => {
            let n = read_instance(&file)?;
            let r = solve(&n.instance);
            print!("{}", emit_result(&n, &r));
            Ok(status(r.certified))
        }
        Command::Analyze { file } => {
            let n = read_instance(&file)?;
            analyze(&n);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bicut { file } => {
            let n = read_instance(&file)?;
            let cert = min_bicut(&n.instance);
            println!("bicut {}", cert.capacity());
            let pairing = match cert.pairing {
                Pairing::SourcesTogether => "s1 s2 | t1 t2",
                Pairing::Crossed => "s1 t2 | t1 s2",
            };
            println!("pairing {pairing}");
            let side: Vec<&str> = cert.cut.side.iter().map(|&v| n.name(v)).collect();
            println!("side {}", side.join(" "));
            let g = n.instance.graph();
            for &id in &cert.cut.edges {
                let e = g.edge(id);
                println!("cut {} {} {}", n.name(e.u), n.name(e.v), e.cap);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, solution } => {
            let n = read_instance(&instance)?;
            let text = fs::read_to_string(&solution).with_context(|| format!("reading {}", solution.display()))?;
            let b = parse_solution(&n, &text).with_context(|| format!("parsing {}", solution.display()))?;
            let report = verify_biflow(&n.instance, &b);
            let bicut = min_bicut(&n.instance).capacity();
            println!("feasible {}", yes_no(report.feasible));
            println!("value {} ({} + {})", report.value, report.values.0, report.values.1);
            println!("bicut {bicut}");
            println!("optimal {}", yes_no(report.feasible && report.value == bicut));
            for v in &report.violations {
                println!("violation {v}");
            }
            Ok(status(report.feasible && report.value == bicut))
        }
        Command::Gen { class, n, capmax, seed } => {
            print!("{}", emit_instance(&NamedInstance::labelled(generate(class, n, capmax, seed))));
            Ok(ExitCode::SUCCESS)
        }
        Command::Minor { file } => {
            let n = read_instance(&file)?;
            println!("minor {}", yes_no(k4star_minor(&n.instance)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { file } => {
            let n = read_instance(&file)?;
            let best = oracle_max_integral_biflow(&n.instance)?;
            let bicut = min_bicut(&n.instance).capacity();
            println!("oracle {best}");
            println!("bicut {bicut}");
            Ok(status(best == bicut))
        }
    }
}

fn analyze(n: &NamedInstance) {
    let (reduced, trail) = reduce(&n.instance);
    println!("reductions {}", trail.summary());
    let core = match reduced {
        Reduced::Core(core) => core,
        Reduced::Split { .. } => {
            println!("case split");
            return;
        }
    };
    println!("core {} vertices {} edges", core.graph().vertex_count(), core.graph().edge_count());
    let side = |s: &Option<GluingSide>| match s {
        Some(s) => format!("{{{}, {}}}", n.name(s.u), n.name(s.v)),
        None => "-".to_string(),
    };
    match detect_case(&core) {
        Ok(StructureCase::Planar { swapped }) => println!("case planar swapped={swapped}"),
        Ok(StructureCase::Gluing(gl)) => {
            println!(
                "case gluing side1={} side2={} center_edges={}",
                side(&gl.side1),
                side(&gl.side2),
                gl.center.len()
            );
        }
        Ok(StructureCase::Bridges(_)) => println!("case bridges"),
        Err(e) => println!("case unrecognised ({e})"),
    }
    // vertex ids are shared with the input, so names still apply
    for b in &classify_bridges(&core).bridges {
        let kind = match &b.kind {
            BridgeKind::Trivial => "trivial".to_string(),
            BridgeKind::ThreeFeet { r, .. } => format!("three-feet r={}", n.name(*r)),
            BridgeKind::FourFeetSplit { x, .. } => format!("split x={}", n.name(*x)),
            BridgeKind::FourFeetLinked { .. } => "linked".to_string(),
            BridgeKind::TwoFeet => "two-feet".to_string(),
            BridgeKind::Dangling => "dangling".to_string(),
        };
        let feet: Vec<&str> = b.feet.iter().map(|&v| n.name(v)).collect();
        println!("bridge {kind} edges={} feet {}", b.edges.len(), feet.join(" "));
    }
}
