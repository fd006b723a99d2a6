//! `linrel` — exact analysis of linear relations and matrix pencils over
//! the Gaussian rationals, plus a randomized verification harness.
//!
//! Exit status: 0 on success, 1 when verification finds a failure, 2 on
//! input errors.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::Zero;
use serde_json::json;

use linrel::{
    extract_singular_chain, kronecker_structure, proper_point_spectrum, root_space,
    singular_chain_space, ExtendedScalar, GaussianRational, KroneckerStructure, SpectrumReport,
    Subspace,
};
use linrel_cli::document::{InputDocument, LoadedInput};
use linrel_cli::harness::{run_all, HarnessConfig, SuiteReport};

type Q = GaussianRational;

#[derive(Parser)]
#[command(name = "linrel", version, about = "Exact linear relation and matrix pencil analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report dimensions, the singular chain space, and the spectrum.
    Analyze {
        /// Input document (JSON: {"type": "relation" | "pencil", ...}).
        file: String,
        /// Emit a machine-readable JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print a basis of the root space at a point.
    Rootspace {
        /// The point: a scalar such as 3/2-1i, or "inf".
        #[arg(long)]
        lambda: String,
        file: String,
    },
    /// Print the Kronecker structure of the pencil (or of a pencil spanning
    /// the relation).
    Kronecker { file: String },
    /// Print a singular chain witness if one exists.
    Chain { file: String },
    /// Run the randomized verification suites.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        /// Emit the run summary as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze { file, json } => {
            cmd_analyze(&load(&file)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Rootspace { lambda, file } => {
            let point: ExtendedScalar =
                lambda.parse().map_err(|e| format!("invalid --lambda: {e}"))?;
            cmd_rootspace(&load(&file)?, &point);
            Ok(ExitCode::SUCCESS)
        }
        Command::Kronecker { file } => {
            cmd_kronecker(&load(&file)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Chain { file } => {
            cmd_chain(&load(&file)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { trials, seed, max_dim, json } => {
            Ok(cmd_verify(trials, seed, max_dim, json))
        }
    }
}

fn load(path: &str) -> Result<LoadedInput, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let document = InputDocument::parse(&text).map_err(|e| e.to_string())?;
    document.build().map_err(|e| e.to_string())
}

fn format_vector(v: &[Q]) -> String {
    let entries: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", entries.join(", "))
}

fn print_basis(space: &Subspace) {
    if space.dim() == 0 {
        println!("  (zero subspace)");
        return;
    }
    for v in space.basis_vectors() {
        println!("  {}", format_vector(v));
    }
}

fn basis_strings(space: &Subspace) -> Vec<Vec<String>> {
    space.basis_vectors().map(|v| v.iter().map(ToString::to_string).collect()).collect()
}

/// Render an ascending coefficient list as a polynomial in `s`.
fn poly_string(coeffs: &[Q]) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let coeff = match (k, text.as_str()) {
            (0, _) => text,
            (_, "1") => String::new(),
            (_, "-1") => "-".to_string(),
            // Composite scalars get parentheses so terms stay unambiguous.
            _ if text[1..].contains(['+', '-']) => format!("({text})"),
            _ => text,
        };
        let var = match k {
            0 => String::new(),
            1 => "s".to_string(),
            _ => format!("s^{k}"),
        };
        terms.push(format!("{coeff}{var}"));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn spectrum_json(report: &SpectrumReport) -> serde_json::Value {
    json!({
        "singular_chain_dim": report.singular_chain_dim,
        "proper_eigenvalues": report
            .proper_eigenvalues
            .iter()
            .map(|(p, d)| json!({ "point": p.to_string(), "root_space_dim": d }))
            .collect::<Vec<_>>(),
        "full_spectrum_flag": report.full_spectrum_flag,
        "residual_polynomial": report
            .residual_polynomial
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
    })
}

fn structure_json(s: &KroneckerStructure) -> serde_json::Value {
    json!({
        "n0": s.n0(),
        "alpha": s.alpha().entries(),
        "epsilon": s.epsilon().entries(),
        "eta": s.eta().entries(),
        "regular_charpoly": s.regular_charpoly().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "singular_chain_dim": s.singular_chain_dim(),
        "infinity_root_dim": s.infinity_root_dim(),
    })
}

fn print_spectrum(report: &SpectrumReport) {
    println!("proper point spectrum:");
    if report.proper_eigenvalues.is_empty() {
        println!("  (empty)");
    }
    for (point, dim) in &report.proper_eigenvalues {
        println!("  {point}  (root space dim {dim})");
    }
    println!("full spectrum flag: {}", report.full_spectrum_flag);
    println!("residual polynomial: {}", poly_string(&report.residual_polynomial));
}

fn cmd_analyze(input: &LoadedInput, json: bool) {
    let a = input.relation();
    let parts = a.parts();
    let rc = singular_chain_space(&a);
    let report = proper_point_spectrum(&a);
    let structure = input.is_pencil().then(|| kronecker_structure(&input.pencil()));

    if json {
        let value = json!({
            "space_dim": a.space_dim(),
            "graph_dim": a.dim(),
            "dom_dim": parts.dom.dim(),
            "ran_dim": parts.ran.dim(),
            "ker_dim": parts.ker.dim(),
            "mul_dim": parts.mul.dim(),
            "singular_chain_space": {
                "dim": rc.dim(),
                "basis": basis_strings(&rc),
            },
            "spectrum": spectrum_json(&report),
            "kronecker": structure.as_ref().map(structure_json),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
        return;
    }

    println!("relation on C^{} (graph dimension {})", a.space_dim(), a.dim());
    println!(
        "dom {}  ran {}  ker {}  mul {}",
        parts.dom.dim(),
        parts.ran.dim(),
        parts.ker.dim(),
        parts.mul.dim()
    );
    println!("singular chain space: dim {}", rc.dim());
    print_basis(&rc);
    print_spectrum(&report);
    if let Some(s) = &structure {
        println!("kronecker structure:");
        println!("  n0 = {}  alpha = {}  epsilon = {}  eta = {}", s.n0(), s.alpha(), s.epsilon(), s.eta());
        println!("  regular characteristic polynomial: {}", poly_string(&s.regular_charpoly()));
    }
}

fn cmd_rootspace(input: &LoadedInput, point: &ExtendedScalar) {
    let a = input.relation();
    let space = root_space(&a, point);
    let rc = singular_chain_space(&a);
    println!("root space at {point}: dim {}", space.dim());
    print_basis(&space);
    println!("equals singular chain space: {}", if space == rc { "yes" } else { "no" });
}

fn cmd_kronecker(input: &LoadedInput) {
    let p = input.pencil();
    let s = kronecker_structure(&p);
    println!("pencil shape: {} x {}", p.rows(), p.cols());
    println!("n0 = {}  alpha = {}  epsilon = {}  eta = {}", s.n0(), s.alpha(), s.epsilon(), s.eta());
    println!("dim R_c = {}  dim R_inf = {}", s.singular_chain_dim(), s.infinity_root_dim());
    println!("regular characteristic polynomial: {}", poly_string(&s.regular_charpoly()));
}

fn cmd_chain(input: &LoadedInput) {
    let a = input.relation();
    match extract_singular_chain(&a) {
        None => println!("singular chain space is trivial; no singular chain exists"),
        Some(chain) => {
            println!("singular chain with {} entries:", chain.len());
            for (i, u) in chain.vectors().iter().enumerate() {
                println!("  u_{} = {}", i + 1, format_vector(u));
            }
            let ok = chain.verify(&a);
            println!("memberships verified: {}", if ok { "yes" } else { "NO" });
        }
    }
}

fn verify_json(cfg: &HarnessConfig, reports: &[SuiteReport], passed: bool) -> serde_json::Value {
    json!({
        "seed": cfg.seed,
        "trials": cfg.trials,
        "max_dim": cfg.max_dim,
        "passed": passed,
        "suites": reports
            .iter()
            .map(|r| json!({
                "name": r.suite.name(),
                "trials": r.trials,
                "checks": r.checks,
                "failures": r.failures,
                "seconds": r.seconds,
                "examples": r.examples
                    .iter()
                    .map(|f| json!({
                        "trial": f.trial,
                        "check": f.check,
                        "counterexample": f.counterexample,
                    }))
                    .collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn cmd_verify(trials: u64, seed: u64, max_dim: usize, json: bool) -> ExitCode {
    let mut cfg = HarnessConfig::new(trials, seed);
    cfg.max_dim = max_dim.max(1);
    let reports = run_all(&cfg);
    let passed = reports.iter().all(SuiteReport::passed);

    if json {
        let value = verify_json(&cfg, &reports, passed);
        println!("{}", serde_json::to_string_pretty(&value).expect("summary serializes"));
    } else {
        println!(
            "verification run: seed {}, trials {}, max dim {}",
            cfg.seed, cfg.trials, cfg.max_dim
        );
        for r in &reports {
            println!(
                "{:<30} {:>6} trials {:>8} checks {:>8.2}s   {}",
                r.suite.name(),
                r.trials,
                r.checks,
                r.seconds,
                if r.passed() { "pass" } else { "FAIL" }
            );
            for f in &r.examples {
                println!("  failed check (trial {}): {}", f.trial, f.check);
                if let Some(doc) = &f.counterexample {
                    println!("  counterexample document:");
                    for line in doc.to_json().lines() {
                        println!("    {line}");
                    }
                }
            }
            if r.failures as usize > r.examples.len() {
                println!("  ... and {} more failures", r.failures - r.examples.len() as u64);
            }
        }
        println!("{}", if passed { "all suites passed" } else { "verification FAILED" });
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
