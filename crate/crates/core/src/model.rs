//! Pairwise counting, rate parameterization, and the feasibility region.
//!
//! Given a sender string and a receiver string of equal length J, the four
//! pair counts (n00, n01, n10, n11) determine every statistic in the model:
//! the QBER q = (n01 + n10)/J, the receiver zero-rate, and — for a balanced
//! sender — the closed-form rate vector
//!
//! ```text
//! c00 = (2 b0 + 1 - 2 q)/4    c01 = (1 - 2 b0 + 2 q)/4
//! c10 = (2 b0 - 1 + 2 q)/4    c11 = (3 - 2 b0 - 2 q)/4
//! ```
//!
//! (b0, q) is realizable iff all four rates lie in [0, 1], equivalently
//!
//! ```text
//! 1/2 - q <= b0 <= 1/2 + q    for q <= 1/2
//! q - 1/2 <= b0 <= 3/2 - q    for q >= 1/2
//! ```

use num_rational::Ratio;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::exact_prob::ExactProb;

/// Tolerance used when classifying floating-point (b0, q) arguments against
/// the feasibility boundary. Exact-rational entry points use none.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Position-wise pair counts between a sender string and a receiver string.
///
/// `n01` counts positions where the sender holds 0 and the receiver 1, and
/// so on. All marginal counts are derived, never stored.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct JointCounts {
    pub n00: u64,
    pub n01: u64,
    pub n10: u64,
    pub n11: u64,
}

impl JointCounts {
    pub fn total(&self) -> u64 {
        self.n00 + self.n01 + self.n10 + self.n11
    }

    pub fn sender_zeros(&self) -> u64 {
        self.n00 + self.n01
    }

    pub fn sender_ones(&self) -> u64 {
        self.n10 + self.n11
    }

    pub fn receiver_zeros(&self) -> u64 {
        self.n00 + self.n10
    }

    pub fn receiver_ones(&self) -> u64 {
        self.n01 + self.n11
    }

    /// Wrong-bit count: positions where the two strings differ.
    pub fn errors(&self) -> u64 {
        self.n01 + self.n10
    }

    /// QBER = (n01 + n10) / J, exact.
    pub fn qber(&self) -> ExactProb {
        ExactProb::new(self.errors(), self.total()).expect("errors <= total")
    }

    /// Receiver zero-rate (b0 or e0), exact.
    pub fn receiver_zero_rate(&self) -> ExactProb {
        ExactProb::new(self.receiver_zeros(), self.total()).expect("zeros <= total")
    }

    /// Sender zero-rate (a0), exact.
    pub fn sender_zero_rate(&self) -> ExactProb {
        ExactProb::new(self.sender_zeros(), self.total()).expect("zeros <= total")
    }

    /// Accumulates another count table (used for pooled statistics).
    pub fn merge(&mut self, other: &JointCounts) {
        self.n00 += other.n00;
        self.n01 += other.n01;
        self.n10 += other.n10;
        self.n11 += other.n11;
    }
}

/// Tallies pair counts between two equal-length strings.
pub fn pair_counts(sender: &BitString, receiver: &BitString) -> Result<JointCounts> {
    if sender.len() != receiver.len() {
        return Err(Error::LengthMismatch {
            left: sender.len(),
            right: receiver.len(),
        });
    }
    let mut counts = JointCounts::default();
    for (a, r) in sender.iter().zip(receiver.iter()) {
        match (a, r) {
            (false, false) => counts.n00 += 1,
            (false, true) => counts.n01 += 1,
            (true, false) => counts.n10 += 1,
            (true, true) => counts.n11 += 1,
        }
    }
    Ok(counts)
}

/// QBER between two equal-length strings, exact.
pub fn qber(sender: &BitString, receiver: &BitString) -> Result<ExactProb> {
    Ok(pair_counts(sender, receiver)?.qber())
}

/// The four pair rates plus the (b0, q) parameters they came from.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RateVector {
    pub c00: f64,
    pub c01: f64,
    pub c10: f64,
    pub c11: f64,
    pub b0: f64,
    pub q: f64,
}

impl RateVector {
    pub fn as_array(&self) -> [f64; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}

/// Names the first feasibility bound violated by (b0, q), if any.
/// Each bound is exactly one pair rate's nonnegativity.
fn violated_bound(b0: f64, q: f64, tol: f64) -> Option<&'static str> {
    if b0 + tol < 0.5 - q {
        Some("b0 >= 1/2 - q") // c10 >= 0
    } else if b0 + tol < q - 0.5 {
        Some("b0 >= q - 1/2") // c00 >= 0
    } else if b0 - tol > 0.5 + q {
        Some("b0 <= 1/2 + q") // c01 >= 0
    } else if b0 - tol > 1.5 - q {
        Some("b0 <= 3/2 - q") // c11 >= 0
    } else {
        None
    }
}

/// Whether (b0, q) is realizable by some receiver string against a balanced
/// sender. Boundary points count as feasible (within [`FEASIBILITY_TOL`]).
pub fn feasible(b0: f64, q: f64) -> Result<bool> {
    check_unit_interval("b0", b0)?;
    check_unit_interval("q", q)?;
    Ok(violated_bound(b0, q, FEASIBILITY_TOL).is_none())
}

/// Exact-rational feasibility test (no tolerance), written in the two-branch
/// form so it can cross-check the rate-bound route independently.
pub fn feasible_exact(b0: ExactProb, q: ExactProb) -> bool {
    let half = Ratio::new(1, 2);
    let b = b0.ratio();
    let qr = q.ratio();
    if qr <= half {
        half - qr <= b && b <= half + qr
    } else {
        qr - half <= b && b <= Ratio::new(3, 2) - qr
    }
}

/// Closed-form pair rates for a balanced sender at (b0, q).
///
/// Rates that land within [`FEASIBILITY_TOL`] of 0 or 1 are snapped onto the
/// boundary, so downstream entropy terms see exact zeros.
pub fn rates_from_params(b0: f64, q: f64) -> Result<RateVector> {
    check_unit_interval("b0", b0)?;
    check_unit_interval("q", q)?;
    if let Some(bound) = violated_bound(b0, q, FEASIBILITY_TOL) {
        return Err(Error::Infeasible { b0, q, bound });
    }
    let snap = |c: f64| {
        if c.abs() <= FEASIBILITY_TOL {
            0.0
        } else if (c - 1.0).abs() <= FEASIBILITY_TOL {
            1.0
        } else {
            c
        }
    };
    Ok(RateVector {
        c00: snap((2.0 * b0 + 1.0 - 2.0 * q) / 4.0),
        c01: snap((1.0 - 2.0 * b0 + 2.0 * q) / 4.0),
        c10: snap((2.0 * b0 - 1.0 + 2.0 * q) / 4.0),
        c11: snap((3.0 - 2.0 * b0 - 2.0 * q) / 4.0),
        b0,
        q,
    })
}

/// Exact closed-form pair rates at a rational (b0, q); errors when any rate
/// falls outside [0, 1].
pub fn exact_rates(b0: ExactProb, q: ExactProb) -> Result<[ExactProb; 4]> {
    let b = b0.ratio();
    let qr = q.ratio();
    let quarter = Ratio::new(1, 4);
    let raw = [
        (b * 2 + 1 - qr * 2) * quarter,
        (Ratio::from_integer(1) - b * 2 + qr * 2) * quarter,
        (b * 2 - 1 + qr * 2) * quarter,
        (Ratio::from_integer(3) - b * 2 - qr * 2) * quarter,
    ];
    let bounds = [
        "b0 >= q - 1/2",
        "b0 <= 1/2 + q",
        "b0 >= 1/2 - q",
        "b0 <= 3/2 - q",
    ];
    let mut rates = [ExactProb::zero(); 4];
    for (i, r) in raw.into_iter().enumerate() {
        rates[i] = ExactProb::from_ratio(r).map_err(|_| Error::Infeasible {
            b0: b0.to_f64(),
            q: q.to_f64(),
            bound: bounds[i],
        })?;
    }
    Ok(rates)
}

/// The set of QBER values attainable with length-J strings: {k/J, k = 0..=J}.
pub fn qber_attainable(length: u64) -> Result<Vec<ExactProb>> {
    if length == 0 {
        return Err(Error::InvalidConfig("length must be at least 1".into()));
    }
    (0..=length).map(|k| ExactProb::new(k, length)).collect()
}

/// Whether `target` equals k/J for an integer wrong-bit count k.
pub fn is_qber_attainable(length: u64, target: ExactProb) -> bool {
    length > 0
        && (u128::from(length) * u128::from(target.numer())) % u128::from(target.denom()) == 0
}

/// Closest attainable QBERs bracketing `target`: (floor, ceil) of k/J.
/// Both equal `target` when it is attainable.
pub fn nearest_attainable_qber(length: u64, target: ExactProb) -> (ExactProb, ExactProb) {
    assert!(length > 0);
    let scaled = u128::from(length) * u128::from(target.numer());
    let den = u128::from(target.denom());
    let k_low = (scaled / den) as u64;
    let k_high = if scaled % den == 0 { k_low } else { k_low + 1 };
    (
        ExactProb::new(k_low, length).expect("k <= J"),
        ExactProb::new(k_high, length).expect("k <= J"),
    )
}
