//! Repeated-trial simulation harness.
//!
//! Each trial generates a sender string and an attack pattern under the
//! configured policies, samples one transmission, and records the exact
//! per-trial statistics. Everything derives from the experiment seed:
//! trial t uses the child seed `stream_value(seed, t)`, from which separate
//! purpose seeds are split for sender generation, pattern generation, and
//! the transmission itself, so trial sets are order-independent and
//! identical configs reproduce bit-identical records.
//!
//! The transmission efficiency `eta` never alters channel statistics; it is
//! recorded as the attack's premise (at most 50%) and gates the run.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::bits::{Attack, AttackPattern, BitString};
use crate::channel::{asymptotic_operating_point, sample_transmission, Party};
use crate::error::{Error, Result};
use crate::exact_prob::ExactProb;
use crate::info::{mutual_information_from_counts, single_bit_mutual_information};
use crate::model::{pair_counts, JointCounts};
use crate::rng::{stream_value, SplitMix64};
use crate::round6;

// purpose indices within a trial's seed stream
const TAG_ALICE: u64 = 0;
const TAG_PATTERN: u64 = 1;
const TAG_TRANSMIT: u64 = 2;

/// How each trial's sender string is chosen.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlicePolicy {
    Explicit(BitString),
    /// Independent fair bits; may be unbalanced.
    IidUniform,
    /// A seeded shuffle of exactly J/2 zeros and J/2 ones.
    ExactlyBalanced,
}

/// How each trial's attack pattern is chosen.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PatternPolicy {
    Explicit(AttackPattern),
    /// Independent fair u/s choices.
    UniformRandom,
    /// Exactly J/4 positions in each (attack, sender-bit) stratum; requires
    /// 4 | J and a balanced sender.
    BalancedQuarters,
}

/// Full description of a reproducible experiment.
#[derive(Clone, PartialEq, Debug)]
pub struct ExperimentConfig {
    pub length: usize,
    pub trials: usize,
    /// Channel transmission efficiency; a premise gate, not a noise model.
    pub eta: f64,
    pub alice_policy: AlicePolicy,
    pub pattern_policy: PatternPolicy,
    pub seed: u64,
    /// Permits eta > 1/2; the violation is still flagged in the report.
    pub eta_override: bool,
    /// Additionally compute one mutual information over all trials pooled.
    pub pooled: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidConfig("length must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::OutOfRange {
                name: "eta",
                value: self.eta,
            });
        }
        if self.eta > 0.5 && !self.eta_override {
            return Err(Error::EtaPremise { eta: self.eta });
        }
        if let AlicePolicy::Explicit(alice) = &self.alice_policy {
            if alice.len() != self.length {
                return Err(Error::InvalidConfig(format!(
                    "explicit sender string has length {}, config says {}",
                    alice.len(),
                    self.length
                )));
            }
        }
        if let PatternPolicy::Explicit(pattern) = &self.pattern_policy {
            if pattern.len() != self.length {
                return Err(Error::InvalidConfig(format!(
                    "explicit pattern has length {}, config says {}",
                    pattern.len(),
                    self.length
                )));
            }
        }
        if self.alice_policy == AlicePolicy::ExactlyBalanced && !self.length.is_multiple_of(2) {
            return Err(Error::InvalidConfig(
                "exactly-balanced sender strings need an even length".into(),
            ));
        }
        if self.pattern_policy == PatternPolicy::BalancedQuarters {
            if !self.length.is_multiple_of(4) {
                return Err(Error::InvalidConfig(
                    "balanced quarters needs a length divisible by 4".into(),
                ));
            }
            match &self.alice_policy {
                AlicePolicy::ExactlyBalanced => {}
                AlicePolicy::Explicit(alice) if alice.is_balanced() => {}
                AlicePolicy::Explicit(_) => {
                    return Err(Error::InvalidConfig(
                        "balanced quarters needs an exactly balanced sender string".into(),
                    ));
                }
                AlicePolicy::IidUniform => {
                    return Err(Error::InvalidConfig(
                        "balanced quarters is incompatible with iid-uniform senders; \
                         use exactly-balanced or an explicit balanced string"
                            .into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One simulated transmission with its recomputable statistics.
#[derive(Clone, PartialEq, Debug)]
pub struct TrialRecord {
    pub alice: BitString,
    pub pattern: AttackPattern,
    pub bob: BitString,
    pub eve: BitString,
    pub q_b: ExactProb,
    pub q_e: ExactProb,
    pub b0: ExactProb,
    pub e0: ExactProb,
    pub i_ab: f64,
    pub i_ae: f64,
}

/// Mean, sample standard deviation, min, and max over trials.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SummaryStats {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

impl SummaryStats {
    fn from_values(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std_dev = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            mean,
            std_dev,
            min,
            max,
        }
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "mean": round6(self.mean),
            "std_dev": round6(self.std_dev),
            "min": round6(self.min),
            "max": round6(self.max),
        })
    }
}

/// Mutual information of all trials' strings concatenated.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PooledMi {
    pub i_ab: f64,
    pub i_ae: f64,
}

/// Aggregate view over all trials of one experiment.
#[derive(Clone, PartialEq, Debug)]
pub struct AggregateReport {
    pub trials: usize,
    pub length: usize,
    pub eta: f64,
    /// True when the run was forced past the 50% efficiency premise.
    pub eta_premise_violated: bool,
    pub q_b: SummaryStats,
    pub q_e: SummaryStats,
    pub b0: SummaryStats,
    pub e0: SummaryStats,
    pub i_ab: SummaryStats,
    pub i_ae: SummaryStats,
    /// Exact q_e values seen, with trial counts, ascending.
    pub q_e_histogram: Vec<(ExactProb, usize)>,
    /// |mean(i_ae) - (3/4 log2 3 - 1)|, distance to the asymptotic point.
    pub dev_i_ae_from_asymptotic: f64,
    /// |mean(i_ae) - 0.311278...|, distance to the per-bit value.
    pub dev_i_ae_from_single_bit: f64,
    pub pooled: Option<PooledMi>,
}

impl AggregateReport {
    /// JSON mirror of the report; floats to 6 decimals, rationals as
    /// "num/den" strings, keys sorted.
    pub fn json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "trials": self.trials,
            "length": self.length,
            "eta": round6(self.eta),
            "eta_premise_violated": self.eta_premise_violated,
            "stats": {
                "q_b": self.q_b.json(),
                "q_e": self.q_e.json(),
                "b0": self.b0.json(),
                "e0": self.e0.json(),
                "i_ab": self.i_ab.json(),
                "i_ae": self.i_ae.json(),
            },
            "q_e_histogram": self.q_e_histogram.iter().map(|(q, count)| {
                serde_json::json!({ "q_e": q.to_string(), "count": count })
            }).collect::<Vec<_>>(),
            "dev_i_ae_from_asymptotic": round6(self.dev_i_ae_from_asymptotic),
            "dev_i_ae_from_single_bit": round6(self.dev_i_ae_from_single_bit),
            "pooled": self.pooled.map(|p| serde_json::json!({
                "i_ab": round6(p.i_ab),
                "i_ae": round6(p.i_ae),
            })),
        })
    }
}

fn generate_alice(policy: &AlicePolicy, length: usize, seed: u64) -> BitString {
    match policy {
        AlicePolicy::Explicit(alice) => alice.clone(),
        AlicePolicy::IidUniform => {
            let bits = (0..length)
                .map(|i| stream_value(seed, i as u64) & 1 == 1)
                .collect();
            BitString::from_bits(bits).expect("length >= 1")
        }
        AlicePolicy::ExactlyBalanced => {
            let mut bits: Vec<bool> = (0..length).map(|i| i >= length / 2).collect();
            SplitMix64::new(seed).shuffle(&mut bits);
            BitString::from_bits(bits).expect("length >= 1")
        }
    }
}

fn generate_pattern(policy: &PatternPolicy, alice: &BitString, seed: u64) -> AttackPattern {
    match policy {
        PatternPolicy::Explicit(pattern) => pattern.clone(),
        PatternPolicy::UniformRandom => {
            let labels = (0..alice.len())
                .map(|i| {
                    if stream_value(seed, i as u64) & 1 == 0 {
                        Attack::U
                    } else {
                        Attack::S
                    }
                })
                .collect();
            AttackPattern::from_labels(labels).expect("length >= 1")
        }
        PatternPolicy::BalancedQuarters => {
            // Half of each sender-bit class gets 'u', the other half 's',
            // the split chosen by a seeded shuffle of the class positions.
            let mut rng = SplitMix64::new(seed);
            let mut labels = vec![Attack::U; alice.len()];
            for bit in [false, true] {
                let mut positions: Vec<usize> =
                    (0..alice.len()).filter(|&i| alice.get(i) == bit).collect();
                rng.shuffle(&mut positions);
                for (rank, &pos) in positions.iter().enumerate() {
                    labels[pos] = if rank < positions.len() / 2 {
                        Attack::U
                    } else {
                        Attack::S
                    };
                }
            }
            AttackPattern::from_labels(labels).expect("length >= 1")
        }
    }
}

fn run_trial(config: &ExperimentConfig, trial: usize) -> TrialRecord {
    let trial_seed = stream_value(config.seed, trial as u64);
    let alice = generate_alice(
        &config.alice_policy,
        config.length,
        stream_value(trial_seed, TAG_ALICE),
    );
    let pattern = generate_pattern(
        &config.pattern_policy,
        &alice,
        stream_value(trial_seed, TAG_PATTERN),
    );
    let (bob, eve) = sample_transmission(&alice, &pattern, stream_value(trial_seed, TAG_TRANSMIT))
        .expect("generated strings share a length");
    let counts_b = pair_counts(&alice, &bob).expect("equal lengths");
    let counts_e = pair_counts(&alice, &eve).expect("equal lengths");
    TrialRecord {
        q_b: counts_b.qber(),
        q_e: counts_e.qber(),
        b0: counts_b.receiver_zero_rate(),
        e0: counts_e.receiver_zero_rate(),
        i_ab: mutual_information_from_counts(&counts_b).mi,
        i_ae: mutual_information_from_counts(&counts_e).mi,
        alice,
        pattern,
        bob,
        eve,
    }
}

/// Runs every trial of `config` and aggregates. Deterministic given the
/// config, including its seed.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<TrialRecord>, AggregateReport)> {
    config.validate()?;
    let mut records = Vec::with_capacity(config.trials);
    let mut pooled_b = JointCounts::default();
    let mut pooled_e = JointCounts::default();
    for trial in 0..config.trials {
        let record = run_trial(config, trial);
        if config.pooled {
            pooled_b.merge(&pair_counts(&record.alice, &record.bob).expect("equal lengths"));
            pooled_e.merge(&pair_counts(&record.alice, &record.eve).expect("equal lengths"));
        }
        records.push(record);
    }

    let collect = |f: fn(&TrialRecord) -> f64| -> Vec<f64> { records.iter().map(f).collect() };
    let q_e_stats = SummaryStats::from_values(&collect(|r| r.q_e.to_f64()));
    let i_ae_stats = SummaryStats::from_values(&collect(|r| r.i_ae));

    let mut histogram = BTreeMap::new();
    for record in &records {
        *histogram.entry(record.q_e).or_insert(0usize) += 1;
    }

    let report = AggregateReport {
        trials: config.trials,
        length: config.length,
        eta: config.eta,
        eta_premise_violated: config.eta > 0.5,
        q_b: SummaryStats::from_values(&collect(|r| r.q_b.to_f64())),
        b0: SummaryStats::from_values(&collect(|r| r.b0.to_f64())),
        e0: SummaryStats::from_values(&collect(|r| r.e0.to_f64())),
        i_ab: SummaryStats::from_values(&collect(|r| r.i_ab)),
        dev_i_ae_from_asymptotic: (i_ae_stats.mean - asymptotic_operating_point().i_ae).abs(),
        dev_i_ae_from_single_bit: (i_ae_stats.mean
            - single_bit_mutual_information(Attack::U, Party::Eve))
        .abs(),
        q_e: q_e_stats,
        i_ae: i_ae_stats,
        q_e_histogram: histogram.into_iter().collect(),
        pooled: config.pooled.then(|| PooledMi {
            i_ab: mutual_information_from_counts(&pooled_b).mi,
            i_ae: mutual_information_from_counts(&pooled_e).mi,
        }),
    };
    Ok((records, report))
}

/// CSV form of the trial table: header
/// `trial,alice,pattern,bob,eve,q_b,q_e,b0,e0,i_ab,i_ae`, rationals as
/// "num/den", floats to 6 decimals.
pub fn write_trials_csv<W: Write>(mut w: W, records: &[TrialRecord]) -> io::Result<()> {
    w.write_all(b"trial,alice,pattern,bob,eve,q_b,q_e,b0,e0,i_ab,i_ae\n")?;
    for (trial, r) in records.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{:.6},{:.6}",
            trial, r.alice, r.pattern, r.bob, r.eve, r.q_b, r.q_e, r.b0, r.e0, r.i_ab, r.i_ae
        )?;
    }
    Ok(())
}

/// JSON form of the trial table, mirroring the CSV columns.
pub fn trials_json_value(records: &[TrialRecord]) -> serde_json::Value {
    records
        .iter()
        .enumerate()
        .map(|(trial, r)| {
            serde_json::json!({
                "trial": trial,
                "alice": r.alice.to_string(),
                "pattern": r.pattern.to_string(),
                "bob": r.bob.to_string(),
                "eve": r.eve.to_string(),
                "q_b": r.q_b.to_string(),
                "q_e": r.q_e.to_string(),
                "b0": r.b0.to_string(),
                "e0": r.e0.to_string(),
                "i_ab": round6(r.i_ab),
                "i_ae": round6(r.i_ae),
            })
        })
        .collect::<Vec<_>>()
        .into()
}

/// One row of a convergence study.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ConvergenceRow {
    pub length: usize,
    pub mean_q_e: f64,
    pub mean_i_ae: f64,
    /// |mean_i_ae - (3/4 log2 3 - 1)|.
    pub dev_from_asymptotic: f64,
}

/// Balanced-quarters experiments across `lengths` (each divisible by 4);
/// the deviation column shrinks toward zero in expectation as J grows.
pub fn convergence_study(
    lengths: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(lengths.len());
    for (index, &length) in lengths.iter().enumerate() {
        let config = ExperimentConfig {
            length,
            trials,
            eta: 0.5,
            alice_policy: AlicePolicy::ExactlyBalanced,
            pattern_policy: PatternPolicy::BalancedQuarters,
            seed: stream_value(seed, index as u64),
            eta_override: false,
            pooled: false,
        };
        let (_, report) = run_experiment(&config)?;
        rows.push(ConvergenceRow {
            length,
            mean_q_e: report.q_e.mean,
            mean_i_ae: report.i_ae.mean,
            dev_from_asymptotic: report.dev_i_ae_from_asymptotic,
        });
    }
    Ok(rows)
}
