//! Audit of the published reference table for the '100110'/'susuus' example.
//!
//! The sixteen possible Eve strings for that input, with probability, QBER,
//! zero-rate, and mutual information, were once published as a printed
//! table. This module embeds those printed values verbatim and compares
//! each row against direct recomputation (joint-count entropies), marking
//! it MATCH or DISCREPANT. Three printed rows are known not to survive
//! recomputation: '100000' and '101111' (mutual information misprinted,
//! both recompute to ~0.1909) and '100001' (its QBER is 1/2, not 1/3, and
//! its mutual information is exactly 0).

use std::fmt;

use crate::bits::{AttackPattern, BitString};
use crate::channel::{enumerate_outcomes, Role};
use crate::error::Result;
use crate::exact_prob::ExactProb;

/// Sender string of the reference example.
pub const REFERENCE_ALICE: &str = "100110";
/// Attack pattern of the reference example.
pub const REFERENCE_ATTACKS: &str = "susuus";

/// Printed mutual-information values carry three decimals; matching uses
/// half a unit in the last place with headroom.
pub const MI_MATCH_TOL: f64 = 5e-4;

/// One printed row: bits, probability, QBER, zero-rate, mutual information.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceRow {
    pub bits: &'static str,
    pub prob: (u64, u64),
    pub q: (u64, u64),
    pub e0: (u64, u64),
    pub i: f64,
}

/// The printed table, in its original row order.
#[rustfmt::skip]
pub const REFERENCE_TABLE: [ReferenceRow; 16] = [
    ReferenceRow { bits: "100110", prob: (1, 16), q: (0, 1), e0: (1, 2), i: 1.0 },
    ReferenceRow { bits: "100111", prob: (1, 16), q: (1, 6), e0: (1, 3), i: 0.459 },
    ReferenceRow { bits: "100100", prob: (1, 16), q: (1, 6), e0: (2, 3), i: 0.459 },
    ReferenceRow { bits: "100101", prob: (1, 16), q: (1, 3), e0: (1, 2), i: 0.082 },
    ReferenceRow { bits: "100010", prob: (1, 16), q: (1, 6), e0: (2, 3), i: 0.459 },
    ReferenceRow { bits: "100011", prob: (1, 16), q: (1, 3), e0: (1, 2), i: 0.082 },
    ReferenceRow { bits: "100000", prob: (1, 16), q: (1, 3), e0: (5, 6), i: 0.134 },
    ReferenceRow { bits: "100001", prob: (1, 16), q: (1, 3), e0: (2, 3), i: 0.093 },
    ReferenceRow { bits: "101100", prob: (1, 16), q: (1, 3), e0: (1, 2), i: 0.082 },
    ReferenceRow { bits: "101101", prob: (1, 16), q: (1, 2), e0: (1, 3), i: 0.0 },
    ReferenceRow { bits: "101110", prob: (1, 16), q: (1, 6), e0: (1, 3), i: 0.459 },
    ReferenceRow { bits: "101111", prob: (1, 16), q: (1, 3), e0: (1, 6), i: 0.093 },
    ReferenceRow { bits: "101000", prob: (1, 16), q: (1, 2), e0: (2, 3), i: 0.0 },
    ReferenceRow { bits: "101001", prob: (1, 16), q: (2, 3), e0: (1, 2), i: 0.082 },
    ReferenceRow { bits: "101010", prob: (1, 16), q: (1, 3), e0: (1, 2), i: 0.082 },
    ReferenceRow { bits: "101011", prob: (1, 16), q: (1, 2), e0: (1, 3), i: 0.0 },
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Match,
    Discrepant,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Discrepant => "DISCREPANT",
        })
    }
}

/// One audited row: printed values next to recomputed ones.
#[derive(Clone, Debug)]
pub struct AuditRow {
    pub bits: String,
    pub printed_prob: ExactProb,
    pub printed_q: ExactProb,
    pub printed_e0: ExactProb,
    pub printed_i: f64,
    pub computed_prob: ExactProb,
    pub computed_q: ExactProb,
    pub computed_e0: ExactProb,
    pub computed_mi: f64,
    pub verdict: Verdict,
    /// Names of the fields that disagree ("prob", "q", "e0", "i").
    pub mismatches: Vec<&'static str>,
}

/// Recomputes the reference example and audits every printed row.
/// Rows come back in ascending bit-string order.
pub fn audit_reference_table() -> Result<Vec<AuditRow>> {
    let alice: BitString = REFERENCE_ALICE.parse()?;
    let attacks: AttackPattern = REFERENCE_ATTACKS.parse()?;
    let ensemble = enumerate_outcomes(&alice, &attacks, Role::Eve)?;

    let mut rows = Vec::with_capacity(ensemble.entries.len());
    for entry in &ensemble.entries {
        let bits = entry.bits.to_string();
        let printed = REFERENCE_TABLE
            .iter()
            .find(|row| row.bits == bits)
            .expect("printed table covers all sixteen strings");
        let printed_prob = ExactProb::new(printed.prob.0, printed.prob.1)?;
        let printed_q = ExactProb::new(printed.q.0, printed.q.1)?;
        let printed_e0 = ExactProb::new(printed.e0.0, printed.e0.1)?;

        let mut mismatches = Vec::new();
        if printed_prob != entry.prob {
            mismatches.push("prob");
        }
        if printed_q != entry.q {
            mismatches.push("q");
        }
        if printed_e0 != entry.zero_rate {
            mismatches.push("e0");
        }
        if (printed.i - entry.mi).abs() > MI_MATCH_TOL {
            mismatches.push("i");
        }
        rows.push(AuditRow {
            bits,
            printed_prob,
            printed_q,
            printed_e0,
            printed_i: printed.i,
            computed_prob: entry.prob,
            computed_q: entry.q,
            computed_e0: entry.zero_rate,
            computed_mi: entry.mi,
            verdict: if mismatches.is_empty() {
                Verdict::Match
            } else {
                Verdict::Discrepant
            },
            mismatches,
        })
    }
    Ok(rows)
}
