//! `mgtest`: verify, construct and decode multi-group testing designs.
//!
//! Exit codes: 0 on success, 1 on usage, parse or input errors, 2 on a
//! mathematical failure (violated disjunctness, no consistent vector, failed
//! simulation trials, oracle without a unique solution).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mgtest_core::construct::{
    build_concatenation, decode_concatenation, greedy_families, kronecker, reduce_rows,
    ConcatenationDesign,
};
use mgtest_core::decode::{decode, oracle_decode_with, DecodeMode, DecodeOptions, OracleVerdict};
use mgtest_core::disjunct::{
    optimize_w_by_negation, required_w, verify_additive_disjunct_with,
    verify_binary_disjunct_with, SignTransform, VerifyOptions,
};
use mgtest_core::io::{parse_matrix, parse_vector, write_matrix, write_vector, MatrixFile};
use mgtest_core::simulate::{run_simulation, SimulationConfig};
use mgtest_core::{Alphabet, Budget, Error, Execution, OutcomeVector, Rational};

#[derive(Parser, Debug)]
#[command(name = "mgtest", version, about = "Nonadaptive multi-group testing toolkit")]
struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run enumerations that exceed the work budget.
    #[arg(long, global = true)]
    force: bool,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustively check additive (w, d)-disjunctness.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, required_unless_present = "binary")]
        w: Option<Rational>,
        #[arg(long)]
        d: usize,
        /// Check classic d-disjunctness of a binary matrix (w = 1).
        #[arg(long)]
        binary: bool,
    },
    /// Smallest w for which the decoders are guaranteed to work.
    RequiredW {
        #[arg(long, allow_hyphen_values = true)]
        levels: String,
        /// Allow negating two-sided alphabets.
        #[arg(long)]
        allow_negate: bool,
    },
    /// Recover x from an outcome vector.
    Decode {
        #[command(flatten)]
        input: DecodeInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Confirm the result with the brute-force oracle.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Brute-force decoding by enumeration of every d-sparse vector.
    OracleDecode {
        #[command(flatten)]
        input: DecodeInput,
    },
    /// Build designs from existing matrices.
    #[command(subcommand)]
    Construct(Construct),
    /// Seeded encode/decode campaign with a JSON report.
    Simulate {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        levels: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long)]
        oracle_check: bool,
        /// Include wall-clock statistics (reports are no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args, Debug)]
struct DecodeInput {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    levels: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    outcome: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Fold transversal families of a binary d-disjunct matrix.
    Reduce {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        w: Rational,
        #[arg(long)]
        d: usize,
        /// Assign families greedily when the file carries none.
        #[arg(long)]
        greedy_families: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Kronecker product B ⊗ A.
    Kron {
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Concatenate weighted copies of a binary d-disjunct matrix.
    Concat {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        cm: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    OneSided,
    General,
    Auto,
    /// Concatenation design; needs the `# coeffs:` and `# u:` annotations.
    Concat,
}

/// A command's result that is not an input error.
enum Status {
    Ok,
    /// Mathematical failure; the output has already been printed.
    Failed,
}

struct Ctx {
    format: Option<Format>,
    budget: Budget,
    exec: Execution,
    seed: u64,
}

impl Ctx {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        budget: if cli.force {
            Budget::default().forced()
        } else {
            Budget::default()
        },
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        seed: cli.seed,
    };
    match run(cli.command, &ctx) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            let math = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::NoConsistentVector(_)));
            ExitCode::from(if math { 2 } else { 1 })
        }
    }
}

fn load_matrix(path: &Path) -> anyhow::Result<MatrixFile> {
    parse_matrix(path).with_context(|| format!("reading {}", path.display()))
}

fn load_outcome(path: &Path) -> anyhow::Result<OutcomeVector> {
    Ok(OutcomeVector::new(
        parse_vector(path).with_context(|| format!("reading {}", path.display()))?,
    ))
}

fn save_matrix(path: &Path, file: &MatrixFile) -> anyhow::Result<()> {
    fs::write(path, write_matrix(file)).with_context(|| format!("writing {}", path.display()))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn run(command: Command, ctx: &Ctx) -> anyhow::Result<Status> {
    match command {
        Command::Verify { matrix, w, d, binary } => verify(ctx, &matrix, w, d, binary),
        Command::RequiredW { levels, allow_negate } => {
            let alphabet: Alphabet = levels.parse()?;
            let (transform, w) = if allow_negate {
                optimize_w_by_negation(&alphabet)
            } else {
                (SignTransform::Identity, required_w(&alphabet))
            };
            let name = match transform {
                SignTransform::Identity => "identity",
                SignTransform::Negate => "negate",
            };
            match ctx.format_or(Format::Json) {
                Format::Json => print_json(&json!({ "w": w.to_string(), "transform": name })),
                Format::Text => println!("w = {w} ({name})"),
            }
            Ok(Status::Ok)
        }
        Command::Decode { input, mode, oracle_check } => decode_cmd(ctx, &input, mode, oracle_check),
        Command::OracleDecode { input } => {
            let file = load_matrix(&input.matrix)?;
            let alphabet: Alphabet = input.levels.parse()?;
            let v = load_outcome(&input.outcome)?;
            let verdict = oracle_decode_with(&file.matrix, &v, &alphabet, input.d, ctx.exec, ctx.budget)?;
            match ctx.format_or(Format::Json) {
                Format::Json => print_json(&serde_json::to_value(&verdict)?),
                Format::Text => match &verdict {
                    OracleVerdict::Unique { x } => print!("{}", write_vector(&x.to_dense())),
                    OracleVerdict::Ambiguous { first, second } => {
                        println!("ambiguous");
                        print!("{}", write_vector(&first.to_dense()));
                        print!("{}", write_vector(&second.to_dense()));
                    }
                    OracleVerdict::None => println!("none"),
                },
            }
            Ok(match verdict {
                OracleVerdict::Unique { .. } => Status::Ok,
                _ => Status::Failed,
            })
        }
        Command::Construct(c) => construct(ctx, c),
        Command::Simulate { matrix, levels, d, trials, mode, oracle_check, timing } => {
            let mode = match mode {
                ModeArg::OneSided => DecodeMode::OneSided,
                ModeArg::General => DecodeMode::General,
                ModeArg::Auto => DecodeMode::Auto,
                ModeArg::Concat => return Err(anyhow!("simulate does not support --mode concat")),
            };
            let cfg = SimulationConfig {
                matrix_path: matrix.display().to_string(),
                levels,
                d,
                trials,
                seed: ctx.seed,
                mode,
                oracle_check,
                budget: ctx.budget,
                timing,
                exec: ctx.exec,
            };
            let report = run_simulation(&cfg)?;
            match ctx.format_or(Format::Json) {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    println!("trials {} successes {} failures {}", report.trials, report.successes, report.failures.len());
                    println!("comparisons mean {:.1} max {}", report.comparisons.mean, report.comparisons.max);
                }
            }
            Ok(if report.failures.is_empty() { Status::Ok } else { Status::Failed })
        }
    }
}

fn verify(ctx: &Ctx, path: &Path, w: Option<Rational>, d: usize, binary: bool) -> anyhow::Result<Status> {
    let file = load_matrix(path)?;
    let opts = VerifyOptions {
        exec: ctx.exec,
        budget: ctx.budget,
    };
    let (w, report) = if binary {
        (Rational::one(), verify_binary_disjunct_with(&file.matrix, d, opts)?)
    } else {
        let w = w.expect("clap requires --w without --binary");
        let report = verify_additive_disjunct_with(&file.matrix, &w, d, opts)?;
        (w, report)
    };
    match ctx.format_or(Format::Json) {
        Format::Json => {
            // Witness indices are reported 1-based, like the file format.
            let witness = report.witness.as_ref().map(|wit| {
                json!({
                    "support": wit.support.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "column": wit.column + 1,
                })
            });
            print_json(&json!({
                "holds": report.holds,
                "w": w.to_string(),
                "d": d,
                "witness": witness,
                "checks_performed": report.checks_performed.to_string(),
            }));
        }
        Format::Text => match &report.witness {
            None => println!("holds: ({w}, {d})-disjunct"),
            Some(wit) => println!(
                "violated: column {} is covered by {{{}}}",
                wit.column + 1,
                wit.support.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")
            ),
        },
    }
    Ok(if report.holds { Status::Ok } else { Status::Failed })
}

fn decode_cmd(ctx: &Ctx, input: &DecodeInput, mode: ModeArg, oracle_check: bool) -> anyhow::Result<Status> {
    let file = load_matrix(&input.matrix)?;
    let alphabet: Alphabet = input.levels.parse()?;
    let v = load_outcome(&input.outcome)?;
    let annotation = file.concat_annotation()?;
    let mode = match (mode, annotation.is_some()) {
        (ModeArg::Auto, true) => ModeArg::Concat,
        (m, _) => m,
    };

    let (x_hat, comparisons) = if mode == ModeArg::Concat {
        let (coeffs, u) = annotation
            .ok_or_else(|| anyhow!("--mode concat needs `# coeffs:` and `# u:` annotations in the matrix file"))?;
        let design = ConcatenationDesign::from_matrix(file.matrix.clone(), coeffs, u)?;
        let out = decode_concatenation(&design, &v, &alphabet, input.d)?;
        (out.result.x_hat, out.result.comparisons)
    } else {
        let mode = match mode {
            ModeArg::OneSided => DecodeMode::OneSided,
            ModeArg::General => DecodeMode::General,
            _ => DecodeMode::Auto,
        };
        let opts = DecodeOptions {
            exec: ctx.exec,
            budget: ctx.budget,
            check_hypothesis: false,
        };
        let res = decode(&file.matrix, &v, &alphabet, input.d, mode, &opts)?;
        (res.x_hat, res.comparisons)
    };

    let mut confirmed = None;
    if oracle_check {
        let verdict = oracle_decode_with(&file.matrix, &v, &alphabet, input.d, ctx.exec, ctx.budget)?;
        let ok = matches!(&verdict, OracleVerdict::Unique { x } if *x == x_hat);
        if !ok {
            eprintln!(
                "oracle disagrees: {}",
                serde_json::to_string(&verdict).unwrap_or_default()
            );
            return Ok(Status::Failed);
        }
        confirmed = Some(true);
    }

    match ctx.format_or(Format::Text) {
        Format::Text => print!("{}", write_vector(&x_hat.to_dense())),
        Format::Json => print_json(&json!({
            "x_hat": x_hat.to_dense().iter().map(Rational::to_string).collect::<Vec<_>>(),
            "comparisons": comparisons,
            "oracle_confirmed": confirmed,
        })),
    }
    Ok(Status::Ok)
}

fn construct(ctx: &Ctx, c: Construct) -> anyhow::Result<Status> {
    let (out_path, out) = match c {
        Construct::Reduce { matrix, w, d, greedy_families: greedy, output } => {
            let mut file = load_matrix(&matrix)?;
            if greedy && file.matrix.families().is_none() {
                let fams = greedy_families(&file.matrix);
                file.matrix = file.matrix.with_families(fams)?;
            }
            let reduced = reduce_rows(&file.matrix, &w, d)?;
            let mut out = MatrixFile::new(reduced);
            out.comments.push(format!("reduce_rows w = {w}, d = {d}"));
            (output, out)
        }
        Construct::Kron { b, a, output } => {
            let b = load_matrix(&b)?;
            let a = load_matrix(&a)?;
            (output, MatrixFile::new(kronecker(&b.matrix, &a.matrix)?))
        }
        Construct::Concat { matrix, cm, d, q, output } => {
            let base = load_matrix(&matrix)?;
            let design = build_concatenation(&base.matrix, cm, d, q)?;
            let coeffs: Vec<String> = design.coeffs.iter().map(u64::to_string).collect();
            let mut out = MatrixFile::new(design.matrix);
            out.comments.push(format!("coeffs: {}", coeffs.join(",")));
            out.comments.push(format!("u: {}", design.u));
            (output, out)
        }
    };
    save_matrix(&out_path, &out)?;
    let m = &out.matrix;
    match ctx.format_or(Format::Text) {
        Format::Text => println!("wrote {} ({} x {}, q = {})", out_path.display(), m.t(), m.n(), m.q()),
        Format::Json => print_json(&json!({
            "output": out_path.display().to_string(),
            "q": m.q(),
            "t": m.t(),
            "n": m.n(),
        })),
    }
    Ok(Status::Ok)
}
