use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use stabcode_core::bounds::{self, Channel};
use stabcode_core::format::{
    parse_generator_matrix, parse_stabilizer, write_generator_matrix, write_stabilizer,
};
use stabcode_core::lincode::{bsc_monte_carlo, bsc_success_exact, ChannelReport, GeneratorMatrix};
use stabcode_core::stabilizer::{
    ensure_positive_r, quantum_distance, standardize_unchecked, to_standard_form, QuantumDistance,
    StabilizerCode, StandardForm, DEFAULT_ENSURE_R_DEPTH,
};
use stabcode_core::statevec::{verify_phi, DEFAULT_QUBIT_CAP};
use stabcode_core::{extract_classical, Error};

/// Stabilizer codes and the classical codes inside them.
#[derive(Parser, Debug)]
#[command(name = "stabcode", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the generators commute and are independent.
    Validate { file: PathBuf },

    /// Reduce a code to standard form.
    Standardize {
        file: PathBuf,
        /// Apply column switches/additions first so that r >= 1.
        #[arg(long)]
        ensure_r: bool,
        /// Longest operation sequence tried by --ensure-r.
        #[arg(long, default_value_t = DEFAULT_ENSURE_R_DEPTH)]
        depth: usize,
        /// Write the standardized code here; the summary stays on stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Write the generator matrix of the classical code.
    Extract {
        file: PathBuf,
        /// Write the generator matrix here; the summary stays on stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Apply column switches/additions first so that r >= 1.
        #[arg(long)]
        ensure_r: bool,
        /// Longest operation sequence tried by --ensure-r.
        #[arg(long, default_value_t = DEFAULT_ENSURE_R_DEPTH)]
        depth: usize,
    },

    /// Minimum distance and number of correctable errors.
    #[command(group(ArgGroup::new("kind").required(true).args(["quantum", "classical"])))]
    Distance {
        file: PathBuf,
        /// FILE is a stabilizer code.
        #[arg(long)]
        quantum: bool,
        /// FILE is a generator matrix (a stabilizer file is extracted first).
        #[arg(long)]
        classical: bool,
        /// Largest weight searched; defaults to n.
        #[arg(long)]
        cap: Option<usize>,
    },

    /// Block success probability on a binary symmetric channel.
    Simulate {
        file: PathBuf,
        /// Bit-flip probability, in [0, 0.5].
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Trial t draws from ChaCha8 seeded with SEED on stream t.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact enumeration instead of Monte Carlo.
        #[arg(long)]
        exact: bool,
    },

    /// Check the codeword map on statevectors.
    VerifyPhi {
        file: PathBuf,
        /// Largest qubit count simulated.
        #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
        cap: usize,
    },

    /// Capacity bound curves as CSV.
    Bounds {
        /// adversarial or depolarizing.
        #[arg(long)]
        channel: Channel,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 0.5)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// What a command prints, and its exit status.
struct Report {
    text: String,
    json: Value,
    status: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            status: 0,
        }
    }
}

struct Failure {
    status: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            status: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    fn domain(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            status: EXIT_DOMAIN,
            kind,
            message: message.into(),
        }
    }

    fn from_core(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::DimensionMismatch { .. } | Error::Domain { .. } => {
                Self::usage(e.to_string())
            }
            Error::SearchExhausted { .. } => Self::domain("ensure-r-exhausted", e.to_string()),
            Error::InvalidCode(_) => Self::domain("invalid-code", e.to_string()),
            Error::NoEncodedQubits => Self::domain("no-encoded-qubits", e.to_string()),
            Error::TooLarge { .. } => Self::domain("too-large", e.to_string()),
            _ => Self::domain("failed", e.to_string()),
        }
    }
}

type CmdResult = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: stabcode_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from_core(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_stabilizer(path: &Path) -> Result<StabilizerCode, Failure> {
    in_file(path, parse_stabilizer(&read(path)?))
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn one_based(perm: &[usize]) -> Vec<usize> {
    perm.iter().map(|q| q + 1).collect()
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(file: &Path) -> CmdResult {
    let code = load_stabilizer(file)?;
    let report = code.validate();
    let pairs: Vec<(usize, usize)> = report
        .anticommuting_pairs
        .iter()
        .map(|&(i, j)| (i + 1, j + 1))
        .collect();
    let dependent = one_based(&report.dependent_rows);
    let valid = report.is_valid();
    let mut text = format!(
        "{}: n={} m={} k={}\n",
        if valid { "valid" } else { "invalid" },
        report.n,
        report.m,
        code.k()
    );
    for (i, j) in &pairs {
        text.push_str(&format!("pair ({i},{j}) anticommutes\n"));
    }
    for i in &dependent {
        text.push_str(&format!("generator {i} depends on earlier generators\n"));
    }
    Ok(Report {
        text,
        json: json!({
            "valid": valid,
            "n": report.n,
            "m": report.m,
            "k": code.k(),
            "rank": report.rank,
            "anticommuting_pairs": pairs,
            "dependent_rows": dependent,
        }),
        status: if valid { 0 } else { EXIT_DOMAIN },
    })
}

/// Standard form, after the optional r >= 1 search.
fn standardized(
    code: &StabilizerCode,
    ensure_r: bool,
    depth: usize,
) -> Result<(StandardForm, Value), Failure> {
    let (code, ops) = if ensure_r {
        let found = ensure_positive_r(code, depth).map_err(Failure::from_core)?;
        (found.code, found.ops)
    } else {
        (code.clone(), Vec::new())
    };
    let sf = to_standard_form(&code).map_err(Failure::from_core)?;
    let ops_text: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    Ok((sf, json!(ops_text)))
}

fn standard_form_header(sf: &StandardForm, ensure_ops: &Value) -> Vec<String> {
    let mut header = vec![
        format!(
            "standard form: n={} m={} s={} k={} r={}",
            sf.n(),
            sf.m(),
            sf.s,
            sf.k,
            sf.r
        ),
        format!(
            "qubit order (original 1-based indices): {}",
            join(&one_based(&sf.qubit_permutation))
        ),
    ];
    if let Some(ops) = ensure_ops.as_array().filter(|a| !a.is_empty()) {
        let ops: Vec<&str> = ops.iter().filter_map(Value::as_str).collect();
        header.push(format!(
            "ensure-r operations (0-based qubits): {}",
            ops.join(", ")
        ));
    }
    header
}

fn standardize(file: &Path, ensure_r: bool, depth: usize, output: Option<&Path>) -> CmdResult {
    let code = load_stabilizer(file)?;
    let (sf, ops) = standardized(&code, ensure_r, depth)?;
    let header = standard_form_header(&sf, &ops);
    let body = write_stabilizer(&sf.generators(), &header);
    let text = match output {
        Some(path) => {
            write_output(path, &body)?;
            header.join("\n") + "\n"
        }
        None => body,
    };
    Ok(Report::ok(
        text,
        json!({
            "n": sf.n(),
            "m": sf.m(),
            "s": sf.s,
            "k": sf.k,
            "r": sf.r,
            "qubit_permutation": one_based(&sf.qubit_permutation),
            "ensure_r_operations": ops,
            "generators": sf.generators().rows().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
    ))
}

fn extract(file: &Path, output: Option<&Path>, ensure_r: bool, depth: usize) -> CmdResult {
    let code = load_stabilizer(file)?;
    let (sf, _) = standardized(&code, ensure_r, depth)?;
    let ex = extract_classical(&sf, &file.display().to_string()).map_err(Failure::from_core)?;
    let enumerator = ex
        .generator
        .weight_enumerator()
        .map_err(Failure::from_core)?;
    let padded = match ex.padded_parameters() {
        Some((n, k)) => format!("padded form ({n}, {k})"),
        None => "padded form unavailable (r = 0)".to_string(),
    };
    let mut summary = vec![
        format!("({}, {}) classical code; {padded}", ex.n_classical, ex.k),
        format!("weight enumerator {enumerator}"),
        format!(
            "bit order (original 1-based qubits): {}",
            join(&one_based(&ex.qubit_permutation))
        ),
    ];
    if let Some(w) = &ex.warning {
        summary.push(format!("warning: {w}"));
        eprintln!("warning: {w}");
    }
    let body = write_generator_matrix(&ex.generator, &summary);
    let text = match output {
        Some(path) => {
            write_output(path, &body)?;
            summary.join("\n") + "\n"
        }
        None => body,
    };
    let mut value = serde_json::to_value(ex.summary()).expect("serializable");
    value["weight_enumerator"] = serde_json::to_value(&enumerator).expect("serializable");
    Ok(Report::ok(text, value))
}

fn distance_json(kind: &str, n: usize, d: QuantumDistance) -> Value {
    match d {
        QuantumDistance::Exact(d) => {
            json!({"kind": kind, "n": n, "distance": d, "t": d.saturating_sub(1) / 2})
        }
        QuantumDistance::ExceedsCap(c) => json!({"kind": kind, "n": n, "exceeds_cap": c}),
    }
}

fn distance_text(d: QuantumDistance) -> String {
    match d {
        QuantumDistance::Exact(d) => format!("d={d} t={}\n", d.saturating_sub(1) / 2),
        QuantumDistance::ExceedsCap(c) => format!("d > {c}\n"),
    }
}

/// A generator file, or the classical code of a stabilizer file.
fn load_classical(path: &Path) -> Result<GeneratorMatrix, Failure> {
    let text = read(path)?;
    match parse_generator_matrix(&text) {
        Ok(g) => Ok(g),
        Err(gen_err) => match parse_stabilizer(&text) {
            Ok(code) => {
                let sf = in_file(path, to_standard_form(&code))?;
                Ok(in_file(path, extract_classical(&sf, ""))?.generator)
            }
            Err(_) => Err(in_file::<()>(path, Err(gen_err)).unwrap_err()),
        },
    }
}

fn distance(file: &Path, quantum: bool, cap: Option<usize>) -> CmdResult {
    if quantum {
        let code = load_stabilizer(file)?;
        let d = quantum_distance(&code, cap.unwrap_or(code.n())).map_err(Failure::from_core)?;
        Ok(Report::ok(
            distance_text(d),
            distance_json("quantum", code.n(), d),
        ))
    } else {
        let g = load_classical(file)?;
        let d = g.min_distance().map_err(Failure::from_core)?;
        let d = match cap {
            Some(c) if d > c => QuantumDistance::ExceedsCap(c),
            _ => QuantumDistance::Exact(d),
        };
        Ok(Report::ok(
            distance_text(d),
            distance_json("classical", g.n(), d),
        ))
    }
}

fn channel_text(r: &ChannelReport) -> String {
    match (r.trials, r.standard_error) {
        (Some(trials), Some(se)) => format!(
            "success probability {} +- {} (Monte Carlo, {trials} trials, seed {}; n={} k={} delta={})\n",
            bounds::format_real(r.success_probability),
            bounds::format_real(se),
            r.seed.unwrap_or(0),
            r.n,
            r.k,
            r.delta
        ),
        _ => format!(
            "success probability {} (exact; n={} k={} delta={})\n",
            bounds::format_real(r.success_probability),
            r.n,
            r.k,
            r.delta
        ),
    }
}

fn simulate(file: &Path, delta: f64, trials: u64, seed: u64, exact: bool) -> CmdResult {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Failure::usage(format!("--delta {delta} outside [0, 0.5]")));
    }
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let g = load_classical(file)?;
    let report = if exact {
        bsc_success_exact(&g, delta)
    } else {
        bsc_monte_carlo(&g, delta, trials, seed)
    }
    .map_err(Failure::from_core)?;
    Ok(Report::ok(
        channel_text(&report),
        serde_json::to_value(&report).expect("serializable"),
    ))
}

fn verify_phi_cmd(file: &Path, cap: usize) -> CmdResult {
    let code = load_stabilizer(file)?;
    if code.n() > cap {
        return Err(Failure::domain(
            "too-large",
            format!(
                "n = {} exceeds the statevector cap {cap} (2^n amplitudes); raise --cap if memory allows",
                code.n()
            ),
        ));
    }
    let validation = code.validate();
    let sf = standardize_unchecked(&code).map_err(Failure::from_core)?;
    let report = verify_phi(&sf, cap).map_err(Failure::from_core)?;
    let passed = report.passed() && validation.is_valid();
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    let mut text = String::new();
    if !validation.is_valid() {
        text.push_str("input is not a valid stabilizer code; checking its standard form anyway\n");
    }
    text.push_str(&format!(
        "phi on n={} s={} k={} r={}: {} images\n",
        report.n, report.s, report.k, report.r, report.images
    ));
    text.push_str(&format!(
        "bijectivity (pairwise orthogonal): {}\n",
        mark(report.bijectivity_ok)
    ));
    text.push_str(&format!(
        "eigenvalue signature: {}\n",
        mark(report.eigen_signature_ok)
    ));
    text.push_str(&format!(
        "codeword correspondence: {}\n",
        mark(report.codeword_property_ok)
    ));
    text.push_str(&format!(
        "error correspondence (up to phase): {} over {} pairs{}\n",
        mark(report.error_property_ok),
        report.error_pairs_checked,
        if report.sampled { ", sampled" } else { "" }
    ));
    text.push_str(&format!(
        "error correspondence (exact phase): {}\n",
        mark(report.error_property_exact_ok)
    ));
    text.push_str(&format!("max deviation: {:.3e}\n", report.max_deviation));
    for c in &report.counterexamples {
        text.push_str(&format!("counterexample: {c}\n"));
    }
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["valid_input"] = json!(validation.is_valid());
    value["passed"] = json!(passed);
    Ok(Report {
        text,
        json: value,
        status: if passed { 0 } else { EXIT_DOMAIN },
    })
}

fn bounds_cmd(channel: Channel, from: f64, to: f64, step: f64, output: Option<&Path>) -> CmdResult {
    let csv = bounds::emit_curves(channel, from, to, step).map_err(Failure::from_core)?;
    let rows = bounds::curve_rows(channel, from, to, step).map_err(Failure::from_core)?;
    let text = match output {
        Some(path) => {
            write_output(path, &csv)?;
            format!("wrote {} rows to {}\n", rows.len(), path.display())
        }
        None => csv,
    };
    Ok(Report::ok(text, json!({"channel": channel, "rows": rows})))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Standardize {
            file,
            ensure_r,
            depth,
            output,
        } => standardize(file, *ensure_r, *depth, output.as_deref()),
        Command::Extract {
            file,
            output,
            ensure_r,
            depth,
        } => extract(file, output.as_deref(), *ensure_r, *depth),
        Command::Distance {
            file, quantum, cap, ..
        } => distance(file, *quantum, *cap),
        Command::Simulate {
            file,
            delta,
            trials,
            seed,
            exact,
        } => simulate(file, *delta, *trials, *seed, *exact),
        Command::VerifyPhi { file, cap } => verify_phi_cmd(file, *cap),
        Command::Bounds {
            channel,
            from,
            to,
            step,
            output,
        } => bounds_cmd(*channel, *from, *to, *step, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.status)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"error": f.kind, "message": f.message}));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
