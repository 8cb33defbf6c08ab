use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use grassmann_fcs::boson::{maximality_report, KQuad, MaximalityReport, Sign};
use grassmann_fcs::corpus::{run_corpus, select};
use grassmann_fcs::dsl::{format_complex, parse_document, parse_scalar, render_element, Document};
use grassmann_fcs::entanglement::{classify, concurrence2, ClassificationReport};
use grassmann_fcs::weights::{integrate_with_weight, solve_weight};
use grassmann_fcs::{Error, QubitState};

const EXACT_RESIDUAL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "fcs", version, about = "Fermionic coherent states and Grassmann weight functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in corpus of constructions.
    VerifyCorpus {
        /// Case-insensitive glob over case names.
        #[arg(long = "case")]
        pattern: Option<String>,
        /// List case names and anchors without running them.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Integrate a document's state against its weight.
    Integrate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find the minimum-norm weight taking a document's state to its target.
    SolveWeight {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Concurrence of a document's integrated two-qubit state.
    Concurrence {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compare bosonic and fermionic maximality for |k1 a>|k2 a> ± |k3 a>|k4 a>.
    BosonCheck {
        /// Four complex scalars, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum)]
        sign: SignArg,
        /// Real part, optionally followed by `,IM`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

enum Failure {
    Verification,
    Parse(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Evaluation(_) => Failure::Parse(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::VerifyCorpus { pattern, list, json } => verify_corpus(pattern.as_deref(), list, json),
        Command::Integrate { input, json } => integrate(&load(&input)?, json),
        Command::SolveWeight { input, json } => solve(&load(&input)?, json),
        Command::Concurrence { input } => {
            let state = integrated(&load(&input)?)?;
            println!("{}", format_real(concurrence2(&state)?));
            Ok(())
        }
        Command::BosonCheck { k, sign, alpha, json } => boson_check(&k, sign, &alpha, json),
    }
}

fn format_real(x: f64) -> String {
    grassmann_fcs::dsl::format_real(x)
}

fn load(path: &PathBuf) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn integrated(d: &Document) -> Result<QubitState, Failure> {
    Ok(integrate_with_weight(&d.weight_element()?, &d.grassmann_state()?, &d.effective_measure())?)
}

fn verify_corpus(pattern: Option<&str>, list: bool, json: bool) -> Result<(), Failure> {
    if list {
        let cases = select(pattern)?;
        if json {
            let v: Vec<Value> = cases
                .iter()
                .map(|c| json!({"name": c.name, "anchor": c.anchor, "comparison": c.comparison, "source": c.source}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        } else {
            for c in &cases {
                println!("{:<26} {}", c.name, c.anchor);
            }
        }
        return Ok(());
    }
    let report = run_corpus(pattern)?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn amplitudes_json(s: &QubitState) -> Value {
    Value::Array(
        s.support(0.0)
            .map(|(ket, c)| json!({"ket": ket.to_string(), "re": c.re, "im": c.im}))
            .collect(),
    )
}

fn classification_json(c: &ClassificationReport) -> Value {
    json!({
        "category": c.category.to_string(),
        "cuts": c.cuts.iter().map(|b| json!({
            "partition": b.partition,
            "schmidt_rank": b.schmidt_rank,
            "schmidt_values": b.schmidt_values,
        })).collect::<Vec<_>>(),
        "named_match": c.named_match.as_ref().map(|m| json!({
            "name": m.name.to_string(),
            "fidelity": m.fidelity,
            "phase": m.phase,
        })),
    })
}

fn integrate(d: &Document, json: bool) -> Result<(), Failure> {
    let state = integrated(d)?;
    let nonzero = state.norm() > 0.0;
    let classification = if nonzero && (2..=8).contains(&state.qubits()) {
        Some(classify(&state)?)
    } else {
        None
    };
    let concurrence = if nonzero && state.qubits() == 2 {
        Some(concurrence2(&state)?)
    } else {
        None
    };
    if json {
        let v = json!({
            "state": state.to_string(),
            "amplitudes": amplitudes_json(&state),
            "norm": state.norm(),
            "classification": classification.as_ref().map(classification_json),
            "concurrence": concurrence,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        return Ok(());
    }
    println!("state: {state}");
    println!("norm: {}", format_real(state.norm()));
    if let Some(c) = &classification {
        println!("class: {}", c.category);
        for cut in &c.cuts {
            println!("  cut {:?}: schmidt rank {}", cut.partition, cut.schmidt_rank);
        }
        if let Some(m) = &c.named_match {
            println!("matches: {} (phase {})", m.name, format_real(m.phase));
        }
    }
    if let Some(cv) = concurrence {
        println!("concurrence: {}", format_real(cv));
    }
    Ok(())
}

fn solve(d: &Document, json: bool) -> Result<(), Failure> {
    let sol = solve_weight(&d.grassmann_state()?, &d.target_state()?, &d.effective_measure())?;
    let null: Vec<String> = sol.null_space.iter().map(render_element).collect();
    let dim = null.len();
    if json {
        let v = json!({
            "particular": render_element(&sol.particular),
            "residual": sol.residual,
            "null_space_dim": dim,
            "null_space": null,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        println!("weight: {}", render_element(&sol.particular));
        println!("residual: {}", format_real(sol.residual));
        println!("null space dimension: {}", null.len());
        for n in &null {
            println!("  {n}");
        }
    }
    if sol.is_exact(EXACT_RESIDUAL) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn scalar(text: &str) -> Result<Complex64, Failure> {
    parse_scalar(text.trim()).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn boson_check(k: &str, sign: SignArg, alpha: &str, json: bool) -> Result<(), Failure> {
    let ks = k.split(',').map(scalar).collect::<Result<Vec<_>, _>>()?;
    let ks: [Complex64; 4] = ks
        .try_into()
        .map_err(|v: Vec<Complex64>| Failure::Usage(format!("--k needs four values, got {}", v.len())))?;
    let alpha = match alpha.split_once(',') {
        Some((re, im)) => Complex64::new(scalar(re)?.re, scalar(im)?.re),
        None => scalar(alpha)?,
    };
    let sign = match sign {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    };
    let quad = KQuad::new(ks, sign, alpha);
    let report = maximality_report(&quad)?;
    let cross = cross_validate(&quad, &report)?;
    if json {
        let c = |z: Complex64| json!({"re": z.re, "im": z.im});
        let v = json!({
            "k": ks.map(c),
            "sign": sign.to_string(),
            "alpha": c(report.alpha),
            "boson": {
                "concurrence": report.concurrence,
                "f13": c(report.f13),
                "f24": c(report.f24),
                "modulus_condition": report.boson_modulus_condition,
                "phase_condition": report.boson_phase_condition,
                "maximal": report.boson_maximal(),
            },
            "fermion": {
                "maximal": report.fermion_maximal,
                "m": report.fermion_m.map(c),
                "phi": report.fermion_phi,
                "weight": report.fermion_m.and(cross.weight.clone()),
                "integrated_concurrence": cross.concurrence,
            },
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        return Ok(());
    }
    println!("alpha: {}", format_complex(report.alpha));
    println!("sign: {sign}");
    println!("boson concurrence: {}", format_real(report.concurrence));
    println!("f13: {}  f24: {}", format_complex(report.f13), format_complex(report.f24));
    println!(
        "boson conditions: modulus {} phase {} -> maximal {}",
        report.boson_modulus_condition,
        report.boson_phase_condition,
        report.boson_maximal()
    );
    println!("fermion maximal: {}", report.fermion_maximal);
    if let (Some(m), Some(phi)) = (report.fermion_m, report.fermion_phi) {
        println!("fermion m: {}  phi: {}", format_complex(m), format_real(phi));
    }
    if let Some(w) = &cross.weight {
        println!("fermion weight: {w}");
    }
    if let Some(cv) = cross.concurrence {
        println!("integrated concurrence: {}", format_real(cv));
    }
    Ok(())
}

struct CrossCheck {
    weight: Option<String>,
    concurrence: Option<f64>,
}

/// Integrates the fermionic state against the closed-form weight, so the
/// reported maximality can be compared with an actual output state.
fn cross_validate(quad: &KQuad, report: &MaximalityReport) -> Result<CrossCheck, Failure> {
    let Some(m) = report.fermion_m else {
        return Ok(CrossCheck {
            weight: None,
            concurrence: None,
        });
    };
    let fc = grassmann_fcs::boson::fermion_counterpart_max(quad);
    let w = fc.weight().expect("maximal counterpart has a weight");
    debug_assert_eq!(fc.m, Some(m));
    let measure = grassmann_fcs::MeasureList::full(1)?;
    let out = integrate_with_weight(&w, &quad.fermionic_state(), &measure)?;
    let concurrence = if out.norm() > 0.0 { Some(concurrence2(&out)?) } else { None };
    Ok(CrossCheck {
        weight: Some(render_element(&w)),
        concurrence,
    })
}
