//! The eavesdropping attack as a classical channel.
//!
//! Each transmitted bit passes through one of two attack modes: `u` (no
//! symmetry operation) or `s` (with it). Conditioned on the sender's bit and
//! the mode, the pair of receiver bits (bob, eve) is distributed as
//!
//! ```text
//! u, sender 0:  (0,0) with probability 1
//! u, sender 1:  uniform over {(0,0),(0,1),(1,0),(1,1)}
//! s, sender 0:  uniform over {(0,0),(0,1),(1,0),(1,1)}
//! s, sender 1:  (1,1) with probability 1
//! ```
//!
//! Outcome triples are indexed (sender, bob, eve) throughout. A position is
//! *risky* when its outcome is not forced — mode `u` on a 1 bit or mode `s`
//! on a 0 bit — and every per-string statistic over a finite record is
//! driven by which risky positions flip. This module enumerates those
//! outcomes exhaustively with exact probabilities, samples them
//! reproducibly, and extracts the per-stratum pair frequencies that only
//! reach the channel conditionals in the infinite-stratum limit.

use std::io::{self, Write};

use crate::bits::{Attack, AttackPattern, BitString};
use crate::error::{Error, Result};
use crate::exact_prob::ExactProb;
use crate::info::{mutual_information_closed_form_exact, mutual_information_from_counts};
use crate::model::pair_counts;
use crate::rng::stream_value;

/// Receiver selector for marginal views.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Party {
    Bob,
    Eve,
}

/// What an ensemble enumerates: one receiver's strings, or joint pairs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Bob,
    Eve,
    Joint,
}

/// Exact distribution over the four (bob, eve) outcomes for one position.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OutcomeDist {
    /// Indexed by 2*bob + eve.
    probs: [ExactProb; 4],
}

impl OutcomeDist {
    pub fn prob(&self, bob: bool, eve: bool) -> ExactProb {
        self.probs[(bob as usize) * 2 + (eve as usize)]
    }

    /// P(party's bit = `bit`), marginalizing the other receiver.
    pub fn marginal(&self, party: Party, bit: bool) -> ExactProb {
        let mut total = ExactProb::zero();
        for bob in [false, true] {
            for eve in [false, true] {
                let x = match party {
                    Party::Bob => bob,
                    Party::Eve => eve,
                };
                if x == bit {
                    total = total + self.prob(bob, eve);
                }
            }
        }
        total
    }

    pub fn probs(&self) -> &[ExactProb; 4] {
        &self.probs
    }
}

fn point_mass(bob: bool, eve: bool) -> OutcomeDist {
    let mut probs = [ExactProb::zero(); 4];
    probs[(bob as usize) * 2 + (eve as usize)] = ExactProb::one();
    OutcomeDist { probs }
}

fn uniform_quarters() -> OutcomeDist {
    OutcomeDist {
        probs: [ExactProb::new(1, 4).expect("1/4"); 4],
    }
}

/// The conditional (bob, eve) distribution for one position.
pub fn attack_outcome_dist(sender_bit: bool, attack: Attack) -> OutcomeDist {
    match (attack, sender_bit) {
        (Attack::U, false) => point_mass(false, false),
        (Attack::S, true) => point_mass(true, true),
        (Attack::U, true) | (Attack::S, false) => uniform_quarters(),
    }
}

/// The full conditional table, keyed by attack mode and sender bit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConditionalDist;

impl ConditionalDist {
    pub fn slice(attack: Attack, sender_bit: bool) -> OutcomeDist {
        attack_outcome_dist(sender_bit, attack)
    }

    /// JSON dump keyed by attack mode, then sender bit, then the two-digit
    /// outcome key "<bob><eve>"; probabilities as "num/den" strings.
    pub fn json_value() -> serde_json::Value {
        let mut by_attack = serde_json::Map::new();
        for attack in [Attack::U, Attack::S] {
            let mut by_bit = serde_json::Map::new();
            for sender_bit in [false, true] {
                let dist = attack_outcome_dist(sender_bit, attack);
                let mut outcomes = serde_json::Map::new();
                for bob in [false, true] {
                    for eve in [false, true] {
                        outcomes.insert(
                            format!("{}{}", bob as u8, eve as u8),
                            dist.prob(bob, eve).to_string().into(),
                        );
                    }
                }
                by_bit.insert((sender_bit as u8).to_string(), outcomes.into());
            }
            by_attack.insert(attack.as_char().to_string(), by_bit.into());
        }
        by_attack.into()
    }
}

/// Whether a position's outcome is undetermined before measurement.
pub fn is_risky(sender_bit: bool, attack: Attack) -> bool {
    matches!((attack, sender_bit), (Attack::U, true) | (Attack::S, false))
}

/// Risky position indices, ascending. Errors on a length mismatch.
pub fn risky_positions(sender: &BitString, pattern: &AttackPattern) -> Result<Vec<usize>> {
    if sender.len() != pattern.len() {
        return Err(Error::LengthMismatch {
            left: sender.len(),
            right: pattern.len(),
        });
    }
    Ok((0..sender.len())
        .filter(|&i| is_risky(sender.get(i), pattern.get(i)))
        .collect())
}

/// Largest risky-position count enumerable for a marginal role (2^n entries).
pub const MARGINAL_ENUMERATION_CAP: usize = 20;
/// Largest risky-position count enumerable for the joint role (4^n entries).
pub const JOINT_ENUMERATION_CAP: usize = 10;

/// One possible receiver record with its exact probability and statistics.
#[derive(Clone, PartialEq, Debug)]
pub struct OutcomeEntry {
    /// The enumerated receiver string (Eve's for `Role::Eve` and
    /// `Role::Joint`, Bob's for `Role::Bob`).
    pub bits: BitString,
    /// Bob's string, present only for `Role::Joint`.
    pub partner: Option<BitString>,
    pub prob: ExactProb,
    /// QBER of `bits` against the sender string.
    pub q: ExactProb,
    /// Zero-rate of `bits` (e0 or b0).
    pub zero_rate: ExactProb,
    /// Multi-bit mutual information of `bits` against the sender string.
    pub mi: f64,
}

/// Exhaustive outcome list for a (sender, pattern) pair.
#[derive(Clone, PartialEq, Debug)]
pub struct OutcomeEnsemble {
    pub sender: BitString,
    pub pattern: AttackPattern,
    pub role: Role,
    /// Sorted ascending by `bits` (then by `partner` for joint ensembles).
    pub entries: Vec<OutcomeEntry>,
}

/// Probability-weighted ensemble averages.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EnsembleMeans {
    /// Exact mean QBER; equals (J_u1 + J_s0) / (2J) for every input.
    pub mean_q: ExactProb,
    /// Mean multi-bit mutual information (floating).
    pub mean_mi: f64,
}

impl OutcomeEnsemble {
    /// Looks an entry up by its receiver string.
    pub fn entry(&self, bits: &str) -> Option<&OutcomeEntry> {
        self.entries.iter().find(|e| e.bits.to_string() == bits)
    }

    pub fn expected_statistics(&self) -> EnsembleMeans {
        let mut mean_q = ExactProb::zero();
        let mut mean_mi = 0.0;
        for entry in &self.entries {
            mean_q = mean_q + entry.prob * entry.q;
            mean_mi += entry.prob.to_f64() * entry.mi;
        }
        EnsembleMeans { mean_q, mean_mi }
    }

    /// CSV form: header `bits,prob,q,zero_rate,mi`, rationals as "num/den",
    /// mi to 6 decimals. Joint rows encode `bits` as `<eve>|<bob>`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(b"bits,prob,q,zero_rate,mi\n")?;
        for e in &self.entries {
            let bits = match &e.partner {
                Some(bob) => format!("{}|{}", e.bits, bob),
                None => e.bits.to_string(),
            };
            writeln!(w, "{},{},{},{},{:.6}", bits, e.prob, e.q, e.zero_rate, e.mi)?;
        }
        Ok(())
    }
}

fn stats_entry(
    sender: &BitString,
    bits: BitString,
    partner: Option<BitString>,
    prob: ExactProb,
) -> OutcomeEntry {
    let counts = pair_counts(sender, &bits).expect("equal lengths by construction");
    let mi = mutual_information_from_counts(&counts);
    OutcomeEntry {
        q: counts.qber(),
        zero_rate: counts.receiver_zero_rate(),
        mi: mi.mi,
        bits,
        partner,
        prob,
    }
}

/// Writes `value`'s bits into the risky positions of the sender template,
/// most significant bit to the leftmost risky position, so that ascending
/// `value` yields ascending strings.
fn fill_risky(template: &[bool], risky: &[usize], value: u64) -> BitString {
    let mut bits = template.to_vec();
    for (idx, &pos) in risky.iter().enumerate() {
        bits[pos] = (value >> (risky.len() - 1 - idx)) & 1 == 1;
    }
    BitString::from_bits(bits).expect("template is non-empty")
}

/// Enumerates every possible receiver record with exact probabilities.
///
/// Entry count is 2^r for marginal roles and 4^r for the joint role, where
/// r is the number of risky positions; deterministic positions are fixed.
pub fn enumerate_outcomes(
    sender: &BitString,
    pattern: &AttackPattern,
    role: Role,
) -> Result<OutcomeEnsemble> {
    let risky = risky_positions(sender, pattern)?;
    let cap = match role {
        Role::Joint => JOINT_ENUMERATION_CAP,
        _ => MARGINAL_ENUMERATION_CAP,
    };
    if risky.len() > cap {
        return Err(Error::CapacityExceeded {
            free_positions: risky.len(),
            cap,
        });
    }
    // At deterministic positions both receivers repeat the sender's bit.
    let template: Vec<bool> = sender.iter().collect();
    let outcomes = 1u64 << risky.len();
    let mut entries = Vec::new();
    match role {
        Role::Eve | Role::Bob => {
            let prob = ExactProb::new(1, outcomes).expect("dyadic");
            for value in 0..outcomes {
                let bits = fill_risky(&template, &risky, value);
                entries.push(stats_entry(sender, bits, None, prob));
            }
        }
        Role::Joint => {
            let prob = ExactProb::new(1, outcomes).expect("dyadic");
            let prob = prob * prob; // (1/4)^r: bob and eve bits are independent here
            for eve_value in 0..outcomes {
                let eve = fill_risky(&template, &risky, eve_value);
                for bob_value in 0..outcomes {
                    let bob = fill_risky(&template, &risky, bob_value);
                    entries.push(stats_entry(sender, eve.clone(), Some(bob), prob));
                }
            }
        }
    }
    Ok(OutcomeEnsemble {
        sender: sender.clone(),
        pattern: pattern.clone(),
        role,
        entries,
    })
}

/// Samples one transmission: every risky position draws its (bob, eve) pair
/// from [`stream_value`]`(seed, position)` (low bit eve, next bit bob);
/// deterministic positions consume no randomness, so equal seeds align
/// across patterns sharing risky positions. Returns (bob, eve).
pub fn sample_transmission(
    sender: &BitString,
    pattern: &AttackPattern,
    seed: u64,
) -> Result<(BitString, BitString)> {
    if sender.len() != pattern.len() {
        return Err(Error::LengthMismatch {
            left: sender.len(),
            right: pattern.len(),
        });
    }
    let mut bob = Vec::with_capacity(sender.len());
    let mut eve = Vec::with_capacity(sender.len());
    for i in 0..sender.len() {
        let a = sender.get(i);
        if is_risky(a, pattern.get(i)) {
            let draw = stream_value(seed, i as u64);
            eve.push(draw & 1 == 1);
            bob.push(draw & 2 == 2);
        } else {
            bob.push(a);
            eve.push(a);
        }
    }
    Ok((
        BitString::from_bits(bob).expect("non-empty"),
        BitString::from_bits(eve).expect("non-empty"),
    ))
}

/// Pair frequencies within one (attack, sender-bit) stratum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrequencyRow {
    /// Fraction of the stratum where Eve's bit is 0 (t_x0).
    pub t_zero: ExactProb,
    /// Fraction where Eve's bit is 1 (t_x1); t_zero + t_one = 1.
    pub t_one: ExactProb,
    /// Stratum size; `None` marks the infinite-stratum limit.
    pub positions: Option<u64>,
}

/// Extracted pair frequencies of a realized record, stratified by attack
/// mode and sender bit. Empty strata are absent (`None`), not zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExtractedFrequencies {
    /// Rows for attack `u`, indexed by sender bit.
    pub u: [Option<FrequencyRow>; 2],
    /// Rows for attack `s`, indexed by sender bit.
    pub s: [Option<FrequencyRow>; 2],
}

impl ExtractedFrequencies {
    pub fn row(&self, attack: Attack, sender_bit: bool) -> Option<&FrequencyRow> {
        match attack {
            Attack::U => self.u[sender_bit as usize].as_ref(),
            Attack::S => self.s[sender_bit as usize].as_ref(),
        }
    }

    /// t^attack_{sender_bit, eve_bit}, when the stratum is nonempty.
    pub fn t(&self, attack: Attack, sender_bit: bool, eve_bit: bool) -> Option<ExactProb> {
        self.row(attack, sender_bit)
            .map(|row| if eve_bit { row.t_one } else { row.t_zero })
    }

    /// Stratum size J_{attack, sender_bit} for a finite record.
    pub fn stratum_size(&self, attack: Attack, sender_bit: bool) -> u64 {
        self.row(attack, sender_bit)
            .and_then(|row| row.positions)
            .unwrap_or(0)
    }
}

/// Stratifies a realized Eve string by (attack, sender bit) and counts pair
/// frequencies. The string must be a possible channel outcome: deterministic
/// positions must repeat the sender's bit.
pub fn extracted_frequencies(
    sender: &BitString,
    pattern: &AttackPattern,
    eve: &BitString,
) -> Result<ExtractedFrequencies> {
    if sender.len() != pattern.len() {
        return Err(Error::LengthMismatch {
            left: sender.len(),
            right: pattern.len(),
        });
    }
    if sender.len() != eve.len() {
        return Err(Error::LengthMismatch {
            left: sender.len(),
            right: eve.len(),
        });
    }
    for i in 0..sender.len() {
        let a = sender.get(i);
        if !is_risky(a, pattern.get(i)) && eve.get(i) != a {
            return Err(Error::ImpossibleOutcome {
                position: i,
                found: if eve.get(i) { '1' } else { '0' },
                attack: pattern.get(i).as_char(),
                alice_bit: if a { '1' } else { '0' },
            });
        }
    }
    let row_for = |attack: Attack, sender_bit: bool| -> Option<FrequencyRow> {
        let mut size = 0u64;
        let mut zeros = 0u64;
        for i in 0..sender.len() {
            if pattern.get(i) == attack && sender.get(i) == sender_bit {
                size += 1;
                if !eve.get(i) {
                    zeros += 1;
                }
            }
        }
        if size == 0 {
            return None;
        }
        let t_zero = ExactProb::new(zeros, size).expect("zeros <= size");
        Some(FrequencyRow {
            t_zero,
            t_one: t_zero.complement(),
            positions: Some(size),
        })
    };
    Ok(ExtractedFrequencies {
        u: [row_for(Attack::U, false), row_for(Attack::U, true)],
        s: [row_for(Attack::S, false), row_for(Attack::S, true)],
    })
}

/// The infinite-stratum limit of [`extracted_frequencies`]: each row equals
/// the channel's Eve-marginal conditional, t^u = (1, 0, 1/2, 1/2) and
/// t^s = (1/2, 1/2, 0, 1).
pub fn asymptotic_frequencies() -> ExtractedFrequencies {
    let limit_row = |sender_bit: bool, attack: Attack| -> Option<FrequencyRow> {
        let t_zero = attack_outcome_dist(sender_bit, attack).marginal(Party::Eve, false);
        Some(FrequencyRow {
            t_zero,
            t_one: t_zero.complement(),
            positions: None,
        })
    };
    ExtractedFrequencies {
        u: [limit_row(false, Attack::U), limit_row(true, Attack::U)],
        s: [limit_row(false, Attack::S), limit_row(true, Attack::S)],
    }
}

/// The asymptotic Eve statistics under equal quarters
/// (J_u0 = J_u1 = J_s0 = J_s1 = J/4).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct OperatingPoint {
    pub e0: ExactProb,
    pub q_e: ExactProb,
    /// Multi-bit mutual information at (e0, q_e): (3/4) log2 3 - 1.
    pub i_ae: f64,
}

pub fn asymptotic_operating_point() -> OperatingPoint {
    let e0 = ExactProb::new(1, 2).expect("1/2");
    let q_e = ExactProb::new(1, 4).expect("1/4");
    let i_ae = mutual_information_closed_form_exact(e0, q_e).expect("(1/2, 1/4) is feasible");
    OperatingPoint { e0, q_e, i_ae }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pattern(s: &str) -> AttackPattern {
        s.parse().unwrap()
    }

    fn prob(n: u64, d: u64) -> ExactProb {
        ExactProb::new(n, d).unwrap()
    }

    #[test]
    fn conditional_dist_content() {
        let d = attack_outcome_dist(false, Attack::U);
        assert_eq!(d.prob(false, false), ExactProb::one());
        assert_eq!(d.prob(true, true), ExactProb::zero());

        let d = attack_outcome_dist(true, Attack::U);
        for bob in [false, true] {
            for eve in [false, true] {
                assert_eq!(d.prob(bob, eve), prob(1, 4));
            }
        }

        let d = attack_outcome_dist(true, Attack::S);
        assert_eq!(d.prob(true, true), ExactProb::one());
        assert_eq!(d.prob(false, false), ExactProb::zero());
    }

    #[test]
    fn conditional_slices_sum_to_one() {
        for attack in [Attack::U, Attack::S] {
            for bit in [false, true] {
                let d = attack_outcome_dist(bit, attack);
                let total = d.probs().iter().fold(ExactProb::zero(), |acc, &p| acc + p);
                assert_eq!(total, ExactProb::one());
            }
        }
    }

    #[test]
    fn marginals_of_uniform_slice() {
        let d = attack_outcome_dist(true, Attack::U);
        assert_eq!(d.marginal(Party::Eve, false), prob(1, 2));
        assert_eq!(d.marginal(Party::Bob, true), prob(1, 2));
        let d = attack_outcome_dist(false, Attack::U);
        assert_eq!(d.marginal(Party::Eve, false), ExactProb::one());
    }

    #[test]
    fn risky_positions_of_reference_example() {
        let r = risky_positions(&bits("100110"), &pattern("susuus")).unwrap();
        assert_eq!(r, vec![2, 3, 4, 5]);
    }

    #[test]
    fn enumerate_all_deterministic() {
        let ens = enumerate_outcomes(&bits("00"), &pattern("uu"), Role::Eve).unwrap();
        assert_eq!(ens.entries.len(), 1);
        assert_eq!(ens.entries[0].bits.to_string(), "00");
        assert_eq!(ens.entries[0].prob, ExactProb::one());
        assert_eq!(ens.entries[0].q, ExactProb::zero());
    }

    #[test]
    fn enumerate_orders_ascending_and_sums_to_one() {
        let ens = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Eve).unwrap();
        assert_eq!(ens.entries.len(), 16);
        let mut total = ExactProb::zero();
        for window in ens.entries.windows(2) {
            assert!(window[0].bits < window[1].bits);
        }
        for e in &ens.entries {
            assert_eq!(e.prob, prob(1, 16));
            total = total + e.prob;
        }
        assert_eq!(total, ExactProb::one());
        assert_eq!(ens.entries[0].bits.to_string(), "100000");
    }

    #[test]
    fn enumerate_joint_counts_and_probabilities() {
        let ens = enumerate_outcomes(&bits("10"), &pattern("us"), Role::Joint).unwrap();
        assert_eq!(ens.entries.len(), 16); // 4 risky-pair outcomes squared
        let total = ens
            .entries
            .iter()
            .fold(ExactProb::zero(), |acc, e| acc + e.prob);
        assert_eq!(total, ExactProb::one());
        assert!(ens.entries.iter().all(|e| e.partner.is_some()));
    }

    #[test]
    fn enumerate_capacity_errors() {
        let long_ones = "1".repeat(21).parse::<BitString>().unwrap();
        let all_u = "u".repeat(21).parse::<AttackPattern>().unwrap();
        match enumerate_outcomes(&long_ones, &all_u, Role::Eve) {
            Err(Error::CapacityExceeded {
                free_positions: 21,
                cap: 20,
            }) => {}
            other => panic!(
                "expected capacity error, got {:?}",
                other.map(|e| e.entries.len())
            ),
        }
        let eleven_ones = "1".repeat(11).parse::<BitString>().unwrap();
        let eleven_u = "u".repeat(11).parse::<AttackPattern>().unwrap();
        assert!(matches!(
            enumerate_outcomes(&eleven_ones, &eleven_u, Role::Joint),
            Err(Error::CapacityExceeded {
                free_positions: 11,
                cap: 10
            })
        ));
    }

    #[test]
    fn expected_statistics_examples() {
        let ens = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Eve).unwrap();
        assert_eq!(ens.expected_statistics().mean_q, prob(1, 3));

        let ens = enumerate_outcomes(&bits("00"), &pattern("uu"), Role::Eve).unwrap();
        let means = ens.expected_statistics();
        assert_eq!(means.mean_q, ExactProb::zero());
        assert_eq!(means.mean_mi, 0.0); // constant sender: H(A) = 0

        let ens = enumerate_outcomes(&bits("10"), &pattern("us"), Role::Eve).unwrap();
        assert_eq!(ens.expected_statistics().mean_q, prob(1, 2));
    }

    #[test]
    fn sample_deterministic_positions() {
        for seed in [0u64, 1, 42, u64::MAX] {
            let (bob, eve) = sample_transmission(&bits("0"), &pattern("u"), seed).unwrap();
            assert_eq!(
                (bob.to_string().as_str(), eve.to_string().as_str()),
                ("0", "0")
            );
            let (bob, eve) = sample_transmission(&bits("1"), &pattern("s"), seed).unwrap();
            assert_eq!(
                (bob.to_string().as_str(), eve.to_string().as_str()),
                ("1", "1")
            );
        }
    }

    #[test]
    fn sample_is_seed_deterministic() {
        let a = bits("100110");
        let p = pattern("susuus");
        let first = sample_transmission(&a, &p, 7).unwrap();
        let second = sample_transmission(&a, &p, 7).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn extracted_frequencies_worked_example() {
        let ef =
            extracted_frequencies(&bits("100110"), &pattern("susuus"), &bits("100110")).unwrap();
        assert_eq!(ef.t(Attack::U, false, false), Some(ExactProb::one()));
        assert_eq!(ef.t(Attack::U, false, true), Some(ExactProb::zero()));
        assert_eq!(ef.t(Attack::U, true, false), Some(ExactProb::zero()));
        assert_eq!(ef.t(Attack::U, true, true), Some(ExactProb::one()));
        assert_eq!(ef.t(Attack::S, false, false), Some(ExactProb::one()));
        assert_eq!(ef.t(Attack::S, true, true), Some(ExactProb::one()));
        assert_eq!(ef.stratum_size(Attack::U, false), 1);
        assert_eq!(ef.stratum_size(Attack::U, true), 2);
        assert_eq!(ef.stratum_size(Attack::S, false), 2);
        assert_eq!(ef.stratum_size(Attack::S, true), 1);
    }

    #[test]
    fn extracted_frequencies_partial_match() {
        // s-stratum sender-0 positions are 2 and 5; '101010' matches at 5 only
        let ef =
            extracted_frequencies(&bits("100110"), &pattern("susuus"), &bits("101010")).unwrap();
        assert_eq!(ef.t(Attack::S, false, false), Some(prob(1, 2)));
        // '101011' misses both
        let ef =
            extracted_frequencies(&bits("100110"), &pattern("susuus"), &bits("101011")).unwrap();
        assert_eq!(ef.t(Attack::S, false, false), Some(ExactProb::zero()));
    }

    #[test]
    fn extracted_frequencies_rejects_impossible() {
        assert!(matches!(
            extracted_frequencies(&bits("0"), &pattern("u"), &bits("1")),
            Err(Error::ImpossibleOutcome {
                position: 0,
                found: '1',
                attack: 'u',
                alice_bit: '0'
            })
        ));
    }

    #[test]
    fn extracted_frequencies_absent_strata() {
        // all-u pattern on all-zero sender: only the (u, 0) stratum exists
        let ef = extracted_frequencies(&bits("00"), &pattern("uu"), &bits("00")).unwrap();
        assert!(ef.row(Attack::U, false).is_some());
        assert!(ef.row(Attack::U, true).is_none());
        assert!(ef.row(Attack::S, false).is_none());
        assert!(ef.row(Attack::S, true).is_none());
        assert_eq!(ef.t(Attack::S, true, true), None);
    }

    #[test]
    fn asymptotic_frequency_values() {
        let af = asymptotic_frequencies();
        assert_eq!(af.t(Attack::U, false, false), Some(ExactProb::one()));
        assert_eq!(af.t(Attack::U, false, true), Some(ExactProb::zero()));
        assert_eq!(af.t(Attack::U, true, false), Some(prob(1, 2)));
        assert_eq!(af.t(Attack::U, true, true), Some(prob(1, 2)));
        assert_eq!(af.t(Attack::S, false, false), Some(prob(1, 2)));
        assert_eq!(af.t(Attack::S, false, true), Some(prob(1, 2)));
        assert_eq!(af.t(Attack::S, true, false), Some(ExactProb::zero()));
        assert_eq!(af.t(Attack::S, true, true), Some(ExactProb::one()));
        assert!(af.row(Attack::U, true).unwrap().positions.is_none());
    }

    #[test]
    fn operating_point_values() {
        let op = asymptotic_operating_point();
        assert_eq!(op.e0, prob(1, 2));
        assert_eq!(op.q_e, prob(1, 4));
        assert!((op.i_ae - (0.75 * 3f64.log2() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn channel_json_shape() {
        let v = ConditionalDist::json_value();
        assert_eq!(v["u"]["0"]["00"], "1/1");
        assert_eq!(v["u"]["1"]["01"], "1/4");
        assert_eq!(v["s"]["1"]["11"], "1/1");
        assert_eq!(v["s"]["1"]["00"], "0/1");
    }
}
