//! `pingpong` — eavesdropping statistics for the ping-pong protocol.
//!
//! Subcommands expose the library operations one-to-one: exact outcome
//! enumeration (with an audit of the published reference table), mutual
//! information of explicit string pairs, the I(b0, q) surface grid, seeded
//! Monte-Carlo simulation, the asymptotic operating point, attainable-QBER
//! queries, and the channel's conditional distributions.
//!
//! Exit codes: 0 success, 2 usage or invalid input, 3 enumeration capacity
//! exceeded, 4 efficiency premise violated (eta > 1/2 without --force).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pingpong::audit::{audit_reference_table, REFERENCE_ALICE, REFERENCE_ATTACKS};
use pingpong::montecarlo::{trials_json_value, write_trials_csv};
use pingpong::{
    asymptotic_frequencies, asymptotic_operating_point, enumerate_outcomes, is_qber_attainable,
    mutual_information_from_counts, nearest_attainable_qber, pair_counts, round6, run_experiment,
    single_bit_mutual_information, surface_grid, Attack, AttackPattern, BitString, ConditionalDist,
    Error as ModelError, ExactProb, ExperimentConfig, OutcomeEnsemble, Party, Role,
};

#[derive(Parser)]
#[command(
    name = "pingpong",
    version,
    about = "Ping-pong protocol eavesdropping statistics: exact enumeration, QBER, \
             mutual information, and seeded Monte-Carlo simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every possible receiver record for a sender/pattern pair.
    Enumerate(EnumerateArgs),
    /// Mutual information and QBER of an explicit string pair.
    Mi(MiArgs),
    /// The mutual-information surface I(b0, q) on a uniform grid.
    Surface(SurfaceArgs),
    /// Run seeded Monte-Carlo transmission trials.
    Simulate(SimulateArgs),
    /// Asymptotic frequencies, operating point, and the per-bit value.
    Asymptotic(AsymptoticArgs),
    /// Which QBER values integer wrong-bit counts can realize.
    QberGrid(QberGridArgs),
    /// The channel's conditional outcome distributions as JSON.
    Channel(ChannelArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RoleArg {
    Eve,
    Bob,
    Joint,
}

impl From<RoleArg> for Role {
    fn from(role: RoleArg) -> Role {
        match role {
            RoleArg::Eve => Role::Eve,
            RoleArg::Bob => Role::Bob,
            RoleArg::Joint => Role::Joint,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlicePolicyArg {
    IidUniform,
    ExactlyBalanced,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternPolicyArg {
    UniformRandom,
    BalancedQuarters,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Sender bit string, e.g. 100110.
    #[arg(long)]
    alice: String,
    /// Attack pattern, e.g. susuus.
    #[arg(long)]
    attacks: String,
    /// Which receiver to enumerate.
    #[arg(long, value_enum, default_value_t = RoleArg::Eve)]
    role: RoleArg,
    /// Compare against the embedded reference table and mark each row
    /// MATCH or DISCREPANT (requires the reference inputs and role eve).
    #[arg(long)]
    audit: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MiArgs {
    /// Sender bit string.
    #[arg(long)]
    alice: String,
    /// Receiver bit string of equal length.
    #[arg(long)]
    other: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Grid has (resolution + 1)^2 cells; must be at least 2.
    #[arg(long, default_value_t = 100)]
    resolution: u32,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Bits per trial; inferred from --alice/--pattern when omitted.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Channel transmission efficiency premise (at most 0.5 without --force).
    #[arg(long, default_value_t = 0.5)]
    eta: f64,
    /// Explicit sender string used for every trial.
    #[arg(long, conflicts_with = "alice_policy")]
    alice: Option<String>,
    #[arg(long, value_enum)]
    alice_policy: Option<AlicePolicyArg>,
    /// Explicit attack pattern used for every trial.
    #[arg(long, conflicts_with = "pattern_policy")]
    pattern: Option<String>,
    #[arg(long, value_enum)]
    pattern_policy: Option<PatternPolicyArg>,
    /// Experiment seed; defaults to $PINGPONG_SEED, then 0.
    #[arg(long, env = "PINGPONG_SEED", default_value_t = 0)]
    seed: u64,
    /// Also compute one mutual information over all trials concatenated.
    #[arg(long)]
    pooled: bool,
    /// Run even when eta exceeds the 50% premise (flagged in the report).
    #[arg(long)]
    force: bool,
    /// Trial-table format (csv or json).
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Trial-table file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Aggregate-report file; stdout when omitted.
    #[arg(long)]
    aggregate_out: Option<PathBuf>,
}

#[derive(Args)]
struct AsymptoticArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QberGridArgs {
    /// Total number of bits J.
    #[arg(long)]
    length: u64,
    /// Target rate as "num/den", an integer, or a terminating decimal.
    #[arg(long)]
    target: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChannelArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Capacity(String),
    Premise(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Premise(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Premise(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        let message = err.to_string();
        match err {
            ModelError::CapacityExceeded { .. } => CliError::Capacity(message),
            ModelError::EtaPremise { .. } => CliError::Premise(message),
            _ => CliError::Usage(message),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Io(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Mi(args) => cmd_mi(args),
        Command::Surface(args) => cmd_surface(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Asymptotic(args) => cmd_asymptotic(args),
        Command::QberGrid(args) => cmd_qber_grid(args),
        Command::Channel(args) => cmd_channel(args),
    }
}

/// Writes to `--out` or stdout.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn json_doc(value: &serde_json::Value) -> String {
    let mut doc = serde_json::to_string_pretty(value).expect("values serialize");
    doc.push('\n');
    doc
}

fn reject_format(supported: &str) -> CliError {
    CliError::Usage(format!("this subcommand supports --format {supported}"))
}

fn parse_bits(s: &str) -> Result<BitString, CliError> {
    s.parse()
        .map_err(|e: ModelError| CliError::Usage(e.to_string()))
}

fn parse_pattern(s: &str) -> Result<AttackPattern, CliError> {
    s.parse()
        .map_err(|e: ModelError| CliError::Usage(e.to_string()))
}

fn role_name(role: RoleArg) -> &'static str {
    match role {
        RoleArg::Eve => "eve",
        RoleArg::Bob => "bob",
        RoleArg::Joint => "joint",
    }
}

fn entry_json(entry: &pingpong::OutcomeEntry) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "bits": entry.bits.to_string(),
        "prob": entry.prob.to_string(),
        "q": entry.q.to_string(),
        "zero_rate": entry.zero_rate.to_string(),
        "mi": round6(entry.mi),
    });
    if let Some(partner) = &entry.partner {
        obj["partner"] = partner.to_string().into();
    }
    obj
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let alice = parse_bits(&args.alice)?;
    let attacks = parse_pattern(&args.attacks)?;

    if args.audit {
        if args.alice != REFERENCE_ALICE
            || args.attacks.to_lowercase() != REFERENCE_ATTACKS
            || args.role != RoleArg::Eve
        {
            return Err(CliError::Usage(format!(
                "--audit compares against the embedded reference table and requires \
                 --alice {REFERENCE_ALICE} --attacks {REFERENCE_ATTACKS} --role eve"
            )));
        }
        let rows = audit_reference_table()?;
        let content = match args.format {
            FormatArg::Csv => {
                let mut s = String::from(
                    "bits,prob,q,zero_rate,mi,printed_q,printed_zero_rate,printed_mi,verdict\n",
                );
                for r in &rows {
                    s.push_str(&format!(
                        "{},{},{},{},{:.6},{},{},{:.6},{}\n",
                        r.bits,
                        r.computed_prob,
                        r.computed_q,
                        r.computed_e0,
                        r.computed_mi,
                        r.printed_q,
                        r.printed_e0,
                        r.printed_i,
                        r.verdict
                    ));
                }
                s
            }
            FormatArg::Json => json_doc(&serde_json::json!({
                "alice": args.alice,
                "attacks": REFERENCE_ATTACKS,
                "role": "eve",
                "audit": rows.iter().map(|r| serde_json::json!({
                    "bits": r.bits,
                    "prob": r.computed_prob.to_string(),
                    "q": r.computed_q.to_string(),
                    "zero_rate": r.computed_e0.to_string(),
                    "mi": round6(r.computed_mi),
                    "printed": {
                        "q": r.printed_q.to_string(),
                        "zero_rate": r.printed_e0.to_string(),
                        "mi": r.printed_i,
                    },
                    "verdict": r.verdict.to_string(),
                    "mismatches": r.mismatches,
                })).collect::<Vec<_>>(),
            })),
            FormatArg::Text => return Err(reject_format("csv or json")),
        };
        return emit(&args.out, &content);
    }

    let ensemble = enumerate_outcomes(&alice, &attacks, args.role.into())?;
    let content = match args.format {
        FormatArg::Csv => ensemble_csv(&ensemble)?,
        FormatArg::Json => json_doc(&serde_json::json!({
            "alice": alice.to_string(),
            "attacks": attacks.to_string(),
            "role": role_name(args.role),
            "entries": ensemble.entries.iter().map(entry_json).collect::<Vec<_>>(),
        })),
        FormatArg::Text => return Err(reject_format("csv or json")),
    };
    emit(&args.out, &content)
}

fn ensemble_csv(ensemble: &OutcomeEnsemble) -> Result<String, CliError> {
    let mut buf = Vec::new();
    ensemble.write_csv(&mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is utf-8"))
}

/// Rational rendered as "num/den" plus a decimal: exact where terminating,
/// six decimals otherwise.
fn rational_with_decimal(p: ExactProb) -> String {
    match p.decimal_exact() {
        Some(d) => format!("{} ({})", p, d),
        None => format!("{} ({:.6})", p, p.to_f64()),
    }
}

fn cmd_mi(args: MiArgs) -> Result<(), CliError> {
    let alice = parse_bits(&args.alice)?;
    let other = parse_bits(&args.other)?;
    let counts = pair_counts(&alice, &other)?;
    let result = mutual_information_from_counts(&counts);
    let q = counts.qber();
    let zero_rate = counts.receiver_zero_rate();

    let content = match args.format {
        FormatArg::Text => format!(
            "alice     = {}\n\
             other     = {}\n\
             counts    = n00={} n01={} n10={} n11={}\n\
             q         = {}\n\
             zero_rate = {}\n\
             H(A)      = {:.6}\n\
             H(X)      = {:.6}\n\
             H(A,X)    = {:.6}\n\
             I(A;X)    = {:.6}\n",
            alice,
            other,
            counts.n00,
            counts.n01,
            counts.n10,
            counts.n11,
            rational_with_decimal(q),
            rational_with_decimal(zero_rate),
            result.h_a,
            result.h_other,
            result.h_joint,
            result.mi,
        ),
        FormatArg::Csv => format!(
            "alice,other,n00,n01,n10,n11,q,zero_rate,h_a,h_other,h_joint,mi\n\
             {},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6}\n",
            alice,
            other,
            counts.n00,
            counts.n01,
            counts.n10,
            counts.n11,
            q,
            zero_rate,
            result.h_a,
            result.h_other,
            result.h_joint,
            result.mi,
        ),
        FormatArg::Json => json_doc(&serde_json::json!({
            "alice": alice.to_string(),
            "other": other.to_string(),
            "counts": {
                "n00": counts.n00,
                "n01": counts.n01,
                "n10": counts.n10,
                "n11": counts.n11,
            },
            "q": q.to_string(),
            "zero_rate": zero_rate.to_string(),
            "h_a": round6(result.h_a),
            "h_other": round6(result.h_other),
            "h_joint": round6(result.h_joint),
            "mi": round6(result.mi),
        })),
    };
    emit(&args.out, &content)
}

fn cmd_surface(args: SurfaceArgs) -> Result<(), CliError> {
    let cells = surface_grid(args.resolution)?;
    let content = match args.format {
        FormatArg::Csv => {
            let mut buf = Vec::new();
            pingpong::info::write_surface_csv(&mut buf, &cells)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        FormatArg::Json => json_doc(&serde_json::json!({
            "resolution": args.resolution,
            "cells": cells.iter().map(|c| serde_json::json!({
                "b0": round6(c.b0),
                "q": round6(c.q),
                "mi": c.mi.map(round6),
            })).collect::<Vec<_>>(),
        })),
        FormatArg::Text => return Err(reject_format("csv or json")),
    };
    emit(&args.out, &content)
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let alice = args.alice.as_deref().map(parse_bits).transpose()?;
    let pattern = args.pattern.as_deref().map(parse_pattern).transpose()?;
    let length = args
        .length
        .or(alice.as_ref().map(BitString::len))
        .or(pattern.as_ref().map(AttackPattern::len))
        .ok_or_else(|| {
            CliError::Usage("provide --length, or infer it via --alice/--pattern".into())
        })?;

    let alice_policy = match (alice, args.alice_policy) {
        (Some(bits), None) => pingpong::AlicePolicy::Explicit(bits),
        (None, Some(AlicePolicyArg::IidUniform)) => pingpong::AlicePolicy::IidUniform,
        (None, Some(AlicePolicyArg::ExactlyBalanced)) | (None, None) => {
            pingpong::AlicePolicy::ExactlyBalanced
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let pattern_policy = match (pattern, args.pattern_policy) {
        (Some(labels), None) => pingpong::PatternPolicy::Explicit(labels),
        (None, Some(PatternPolicyArg::BalancedQuarters)) => {
            pingpong::PatternPolicy::BalancedQuarters
        }
        (None, Some(PatternPolicyArg::UniformRandom)) | (None, None) => {
            pingpong::PatternPolicy::UniformRandom
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    let config = ExperimentConfig {
        length,
        trials: args.trials,
        eta: args.eta,
        alice_policy,
        pattern_policy,
        seed: args.seed,
        eta_override: args.force,
        pooled: args.pooled,
    };
    let (records, report) = run_experiment(&config)?;

    let aggregate_doc = json_doc(&report.json_value());
    let trials_doc = match args.format {
        FormatArg::Csv => {
            let mut buf = Vec::new();
            write_trials_csv(&mut buf, &records)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        FormatArg::Json => json_doc(&trials_json_value(&records)),
        FormatArg::Text => return Err(reject_format("csv or json")),
    };

    match (&args.out, &args.aggregate_out) {
        (None, None) if args.format == FormatArg::Json => {
            // one parseable document when everything shares stdout
            emit(
                &None,
                &json_doc(&serde_json::json!({
                    "trials": trials_json_value(&records),
                    "aggregate": report.json_value(),
                })),
            )
        }
        (out, aggregate_out) => {
            emit(out, &trials_doc)?;
            if out.is_none() && aggregate_out.is_none() {
                emit(&None, "\n")?;
            }
            emit(aggregate_out, &aggregate_doc)
        }
    }
}

fn cmd_asymptotic(args: AsymptoticArgs) -> Result<(), CliError> {
    let freqs = asymptotic_frequencies();
    let op = asymptotic_operating_point();
    let per_bit = single_bit_mutual_information(Attack::U, Party::Eve);

    let t = |attack: Attack, a: bool, e: bool| {
        freqs
            .t(attack, a, e)
            .expect("asymptotic rows are total")
            .to_string()
    };
    let content = match args.format {
        FormatArg::Text => format!(
            "asymptotic extracted frequencies (infinite strata):\n\
             \x20 t^u_00 = {}  t^u_01 = {}  t^u_10 = {}  t^u_11 = {}\n\
             \x20 t^s_00 = {}  t^s_01 = {}  t^s_10 = {}  t^s_11 = {}\n\
             operating point (balanced quarters): e0 = {}, q_e = {}, i_ae = {:.6}\n\
             single-bit mutual information (per transmission): {:.6}\n",
            t(Attack::U, false, false),
            t(Attack::U, false, true),
            t(Attack::U, true, false),
            t(Attack::U, true, true),
            t(Attack::S, false, false),
            t(Attack::S, false, true),
            t(Attack::S, true, false),
            t(Attack::S, true, true),
            op.e0,
            op.q_e,
            op.i_ae,
            per_bit,
        ),
        FormatArg::Json => json_doc(&serde_json::json!({
            "frequencies": {
                "u": {
                    "t00": t(Attack::U, false, false),
                    "t01": t(Attack::U, false, true),
                    "t10": t(Attack::U, true, false),
                    "t11": t(Attack::U, true, true),
                },
                "s": {
                    "t00": t(Attack::S, false, false),
                    "t01": t(Attack::S, false, true),
                    "t10": t(Attack::S, true, false),
                    "t11": t(Attack::S, true, true),
                },
            },
            "operating_point": {
                "e0": op.e0.to_string(),
                "q_e": op.q_e.to_string(),
                "i_ae": round6(op.i_ae),
            },
            "single_bit_mi": round6(per_bit),
        })),
        FormatArg::Csv => return Err(reject_format("text or json")),
    };
    emit(&args.out, &content)
}

fn cmd_qber_grid(args: QberGridArgs) -> Result<(), CliError> {
    if args.length == 0 {
        return Err(CliError::Usage("length must be at least 1".into()));
    }
    let target: ExactProb = args
        .target
        .parse()
        .map_err(|e: ModelError| CliError::Usage(e.to_string()))?;
    let attainable = is_qber_attainable(args.length, target);
    let (below, above) = nearest_attainable_qber(args.length, target);
    // render as k/J (k = wrong-bit count) rather than in lowest terms
    let wrong_bits_of = |p: ExactProb| p.numer() * (args.length / p.denom());
    let as_k_over_j = |p: ExactProb| format!("{}/{}", wrong_bits_of(p), args.length);
    let wrong_bits = attainable.then(|| wrong_bits_of(below));

    let content = match args.format {
        FormatArg::Text => {
            if attainable {
                format!(
                    "QBER {} is ATTAINABLE with length {} (wrong bits = {})\n",
                    target,
                    args.length,
                    wrong_bits.unwrap_or(0),
                )
            } else {
                format!(
                    "QBER {} is NOT ATTAINABLE with length {}; \
                     nearest attainable: {} ({:.6}) and {} ({:.6})\n",
                    target,
                    args.length,
                    as_k_over_j(below),
                    below.to_f64(),
                    as_k_over_j(above),
                    above.to_f64(),
                )
            }
        }
        FormatArg::Json => json_doc(&serde_json::json!({
            "length": args.length,
            "target": target.to_string(),
            "attainable": attainable,
            "wrong_bits": wrong_bits,
            "nearest_below": as_k_over_j(below),
            "nearest_above": as_k_over_j(above),
        })),
        FormatArg::Csv => return Err(reject_format("text or json")),
    };
    emit(&args.out, &content)
}

fn cmd_channel(args: ChannelArgs) -> Result<(), CliError> {
    match args.format {
        FormatArg::Json => emit(&args.out, &json_doc(&ConditionalDist::json_value())),
        _ => Err(reject_format("json")),
    }
}
