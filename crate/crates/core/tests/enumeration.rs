//! End-to-end checks of the exact enumeration against independently
//! recomputed statistics for the '100110'/'susuus' example, plus the
//! extracted-frequency bookkeeping around it.

use pingpong::audit::{audit_reference_table, Verdict};
use pingpong::{
    enumerate_outcomes, extracted_frequencies, Attack, AttackPattern, BitString, ExactProb, Role,
};

fn bits(s: &str) -> BitString {
    s.parse().unwrap()
}

fn pattern(s: &str) -> AttackPattern {
    s.parse().unwrap()
}

fn prob(n: u64, d: u64) -> ExactProb {
    ExactProb::new(n, d).unwrap()
}

/// (bits, q, e0, mi) for one expected row.
type ExpectedRow = (&'static str, (u64, u64), (u64, u64), f64);

/// Expected per-string statistics, frozen from hand/oracle recomputation.
/// Strings ascending.
const EXPECTED: [ExpectedRow; 16] = [
    ("100000", (1, 3), (5, 6), 0.190_874_504_621_109_3),
    ("100001", (1, 2), (2, 3), 0.0),
    ("100010", (1, 6), (2, 3), 0.459_147_917_027_245),
    ("100011", (1, 3), (1, 2), 0.081_704_165_945_510_4),
    ("100100", (1, 6), (2, 3), 0.459_147_917_027_245),
    ("100101", (1, 3), (1, 2), 0.081_704_165_945_510_4),
    ("100110", (0, 1), (1, 2), 1.0),
    ("100111", (1, 6), (1, 3), 0.459_147_917_027_244_8),
    ("101000", (1, 2), (2, 3), 0.0),
    ("101001", (2, 3), (1, 2), 0.081_704_165_945_510_7),
    ("101010", (1, 3), (1, 2), 0.081_704_165_945_510_4),
    ("101011", (1, 2), (1, 3), 0.0),
    ("101100", (1, 3), (1, 2), 0.081_704_165_945_510_4),
    ("101101", (1, 2), (1, 3), 0.0),
    ("101110", (1, 6), (1, 3), 0.459_147_917_027_244_8),
    ("101111", (1, 3), (1, 6), 0.190_874_504_621_109_3),
];

#[test]
fn reference_example_reproduces_all_sixteen_rows() {
    let ens = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Eve).unwrap();
    assert_eq!(ens.entries.len(), 16);
    for (i, (s, q, e0, mi)) in EXPECTED.iter().enumerate() {
        let entry = &ens.entries[i];
        assert_eq!(entry.bits.to_string(), *s);
        assert_eq!(entry.prob, prob(1, 16), "{s}");
        assert_eq!(entry.q, prob(q.0, q.1), "{s}");
        assert_eq!(entry.zero_rate, prob(e0.0, e0.1), "{s}");
        assert!((entry.mi - mi).abs() < 1e-12, "{s}: {} vs {}", entry.mi, mi);
    }
}

#[test]
fn bob_marginal_matches_eve_marginal_structure() {
    // the channel is symmetric in (bob, eve), so the marginal ensembles agree
    let eve = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Eve).unwrap();
    let bob = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Bob).unwrap();
    assert_eq!(eve.entries.len(), bob.entries.len());
    for (e, b) in eve.entries.iter().zip(&bob.entries) {
        assert_eq!(e.bits, b.bits);
        assert_eq!(e.prob, b.prob);
        assert_eq!(e.q, b.q);
        assert_eq!(e.mi, b.mi);
    }
}

#[test]
fn joint_ensemble_marginalizes_back_to_eve() {
    let joint = enumerate_outcomes(&bits("1001"), &pattern("suus"), Role::Joint).unwrap();
    let eve = enumerate_outcomes(&bits("1001"), &pattern("suus"), Role::Eve).unwrap();
    for entry in &eve.entries {
        let marginal = joint
            .entries
            .iter()
            .filter(|j| j.bits == entry.bits)
            .fold(ExactProb::zero(), |acc, j| acc + j.prob);
        assert_eq!(marginal, entry.prob, "{}", entry.bits);
    }
}

#[test]
fn ensemble_mean_sits_between_neither_constant() {
    // the probability-weighted mean MI for the reference example is neither
    // the per-bit value (0.311278) nor the asymptotic point (0.188722)
    let ens = enumerate_outcomes(&bits("100110"), &pattern("susuus"), Role::Eve).unwrap();
    let means = ens.expected_statistics();
    assert_eq!(means.mean_q, prob(1, 3));
    assert!((means.mean_mi - 0.226_678_844_192_421_96).abs() < 1e-12);
    assert!((means.mean_mi - 0.311_278_124_459_132_94).abs() > 0.05);
    assert!((means.mean_mi - 0.188_721_875_540_867_06).abs() > 0.02);
}

#[test]
fn audit_agrees_with_enumeration_order_and_flags() {
    let rows = audit_reference_table().unwrap();
    assert_eq!(rows.len(), 16);
    for (row, (s, ..)) in rows.iter().zip(EXPECTED.iter()) {
        assert_eq!(row.bits, *s);
    }
    let discrepant: Vec<&str> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Discrepant)
        .map(|r| r.bits.as_str())
        .collect();
    assert_eq!(discrepant, ["100000", "100001", "101111"]);
    assert_eq!(
        rows.iter().filter(|r| r.verdict == Verdict::Match).count(),
        13
    );
}

#[test]
fn worked_extracted_frequencies_match_the_strata() {
    // J_u0 = 1, J_u1 = 2, J_s0 = 2, J_s1 = 1 for 'susuus' on '100110'
    let ef = extracted_frequencies(&bits("100110"), &pattern("susuus"), &bits("100110")).unwrap();
    for attack in [Attack::U, Attack::S] {
        for bit in [false, true] {
            let row = ef.row(attack, bit).unwrap();
            assert_eq!(row.t_zero + row.t_one, ExactProb::one());
        }
    }
    assert_eq!(
        [
            ef.stratum_size(Attack::U, false),
            ef.stratum_size(Attack::U, true),
            ef.stratum_size(Attack::S, false),
            ef.stratum_size(Attack::S, true),
        ],
        [1, 2, 2, 1]
    );
}

#[test]
fn every_possible_outcome_yields_normalized_rows() {
    let alice = bits("100110");
    let pat = pattern("susuus");
    let ens = enumerate_outcomes(&alice, &pat, Role::Eve).unwrap();
    for entry in &ens.entries {
        let ef = extracted_frequencies(&alice, &pat, &entry.bits).unwrap();
        for attack in [Attack::U, Attack::S] {
            for bit in [false, true] {
                if let Some(row) = ef.row(attack, bit) {
                    assert_eq!(row.t_zero + row.t_one, ExactProb::one());
                }
            }
        }
    }
}

#[test]
fn ensemble_csv_layout() {
    let ens = enumerate_outcomes(&bits("0"), &pattern("s"), Role::Eve).unwrap();
    let mut out = Vec::new();
    ens.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "bits,prob,q,zero_rate,mi");
    assert_eq!(lines[1], "0,1/2,0/1,1/1,0.000000");
    assert_eq!(lines[2], "1,1/2,1/1,0/1,0.000000");
    assert!(text.ends_with('\n'));
}
