//! Shannon entropies and multi-bit mutual information.
//!
//! Mutual information here is always the multi-bit quantity: entropies of
//! the empirical distributions of a whole transmission record,
//! I = H(A) + H(X) - H(A,X) in bits. It is computed two ways — directly from
//! pair counts (any sender string), and from the closed-form (b0, q)
//! parameterization (balanced sender) — and the two must agree wherever both
//! apply. The per-transmission quantity lives in
//! [`single_bit_mutual_information`] and is deliberately kept separate.
//!
//! Zero-probability terms are skipped structurally when summing entropies;
//! no `0 * log 0` guard values ever enter a sum.

use std::io::{self, Write};

use crate::bits::Attack;
use crate::channel::{attack_outcome_dist, Party};
use crate::error::{Error, Result};
use crate::exact_prob::ExactProb;
use crate::model::{self, JointCounts};

/// Absolute tolerance for algebraic identities on floating-point values.
pub const IDENTITY_TOL: f64 = 1e-12;

/// A finite probability distribution.
#[derive(Clone, PartialEq, Debug)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates entries in [0, 1] and a total of 1 within [`IDENTITY_TOL`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) || (sum - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    /// Normalizes nonnegative counts; the total must be positive.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        Ok(Self {
            probs: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        })
    }

    /// Converts exact probabilities after checking they sum to exactly 1.
    pub fn from_exact(probs: &[ExactProb]) -> Result<Self> {
        let sum = probs
            .iter()
            .fold(num_rational::Ratio::new(0i64, 1), |acc, p| acc + p.ratio());
        if sum != num_rational::Ratio::new(1, 1) {
            return Err(Error::NotNormalized {
                sum: *sum.numer() as f64 / *sum.denom() as f64,
            });
        }
        Ok(Self {
            probs: probs.iter().map(ExactProb::to_f64).collect(),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// -sum p log2 p over the nonzero entries.
pub fn shannon_entropy(dist: &Distribution) -> f64 {
    entropy_of(&dist.probs)
}

fn entropy_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

fn entropy_exact(probs: &[ExactProb]) -> f64 {
    probs
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let x = p.to_f64();
            -x * x.log2()
        })
        .sum()
}

fn binary_entropy(p: f64) -> f64 {
    entropy_of(&[p, 1.0 - p])
}

/// Rounds a tiny negative I (floating residue of H(A)+H(X)-H(A,X)) to zero.
fn settle_mi(mi: f64) -> f64 {
    if mi <= 0.0 && mi > -IDENTITY_TOL {
        0.0
    } else {
        mi
    }
}

/// Mutual information together with the entropy terms it came from.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MIResult {
    /// I = h_a + h_other - h_joint, in bits.
    pub mi: f64,
    pub h_a: f64,
    pub h_other: f64,
    pub h_joint: f64,
    /// Receiver zero-rate (b0 or e0).
    pub zero_rate: f64,
    /// QBER of the receiver string against the sender string.
    pub q: f64,
}

/// Multi-bit mutual information from raw pair counts. Works for unbalanced
/// sender strings too.
pub fn mutual_information_from_counts(counts: &JointCounts) -> MIResult {
    let h_a = shannon_entropy(
        &Distribution::from_counts(&[counts.sender_zeros(), counts.sender_ones()])
            .expect("counts total >= 1"),
    );
    let h_other = shannon_entropy(
        &Distribution::from_counts(&[counts.receiver_zeros(), counts.receiver_ones()])
            .expect("counts total >= 1"),
    );
    let h_joint = shannon_entropy(
        &Distribution::from_counts(&[counts.n00, counts.n01, counts.n10, counts.n11])
            .expect("counts total >= 1"),
    );
    MIResult {
        mi: settle_mi(h_a + h_other - h_joint),
        h_a,
        h_other,
        h_joint,
        zero_rate: counts.receiver_zero_rate().to_f64(),
        q: counts.qber().to_f64(),
    }
}

/// Closed-form multi-bit mutual information at (b0, q) for a balanced
/// sender. Errors outside the feasibility region.
pub fn mutual_information_closed_form(b0: f64, q: f64) -> Result<f64> {
    let rates = model::rates_from_params(b0, q)?;
    let h_joint = entropy_of(&rates.as_array());
    Ok(settle_mi(1.0 + binary_entropy(b0) - h_joint))
}

/// Exact-parameter variant of [`mutual_information_closed_form`]; the rate
/// algebra and the feasibility decision are exact, only the final entropy
/// evaluation is floating-point.
pub fn mutual_information_closed_form_exact(b0: ExactProb, q: ExactProb) -> Result<f64> {
    let rates = model::exact_rates(b0, q)?;
    let h_other = entropy_exact(&[b0, b0.complement()]);
    let h_joint = entropy_exact(&rates);
    Ok(settle_mi(1.0 + h_other - h_joint))
}

/// One lattice point of the mutual-information surface.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SurfaceCell {
    pub b0: f64,
    pub q: f64,
    /// `None` marks an infeasible (b0, q) cell.
    pub mi: Option<f64>,
}

/// Evaluates the closed form on the uniform (resolution+1)^2 lattice over
/// [0,1]^2, b0-major then q, classifying cells with exact rational
/// arithmetic. Infeasible cells carry `None` rather than being dropped.
pub fn surface_grid(resolution: u32) -> Result<Vec<SurfaceCell>> {
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let n = u64::from(resolution);
    let mut cells = Vec::with_capacity(((n + 1) * (n + 1)) as usize);
    for i in 0..=n {
        let b0 = ExactProb::new(i, n).expect("i <= n");
        for j in 0..=n {
            let q = ExactProb::new(j, n).expect("j <= n");
            cells.push(SurfaceCell {
                b0: i as f64 / n as f64,
                q: j as f64 / n as f64,
                mi: mutual_information_closed_form_exact(b0, q).ok(),
            });
        }
    }
    Ok(cells)
}

/// CSV form of the surface: header `b0,q,mi`, floats to 6 decimals, literal
/// `NA` for infeasible cells, `\n` line endings.
pub fn write_surface_csv<W: Write>(mut w: W, cells: &[SurfaceCell]) -> io::Result<()> {
    w.write_all(b"b0,q,mi\n")?;
    for cell in cells {
        match cell.mi {
            Some(mi) => writeln!(w, "{:.6},{:.6},{:.6}", cell.b0, cell.q, mi)?,
            None => writeln!(w, "{:.6},{:.6},NA", cell.b0, cell.q)?,
        }
    }
    Ok(())
}

/// Mutual information of a single transmission under one attack type, for a
/// uniform sender bit: I(A; X) of the per-bit channel, in bits.
///
/// By the channel's symmetry every (attack, party) combination gives the
/// same value, 1 + H(3/4) - 3/2 ~ 0.311278. This per-bit quantity is *not*
/// the multi-bit mutual information of a finite record; keeping the two
/// separate is the point of this crate.
pub fn single_bit_mutual_information(attack: Attack, party: Party) -> f64 {
    let half = ExactProb::new(1, 2).expect("1/2");
    // joint[a][x] = P(A = a) * P(X = x | A = a)
    let mut joint = [[ExactProb::zero(); 2]; 2];
    for (a, row) in joint.iter_mut().enumerate() {
        let dist = attack_outcome_dist(a == 1, attack);
        for (x, slot) in row.iter_mut().enumerate() {
            *slot = half * dist.marginal(party, x == 1);
        }
    }
    let h_a = 1.0; // uniform sender bit
    let h_x = entropy_exact(&[joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]]);
    let h_joint = entropy_exact(&[joint[0][0], joint[0][1], joint[1][0], joint[1][1]]);
    settle_mi(h_a + h_x - h_joint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::model::pair_counts;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn prob(n: u64, d: u64) -> ExactProb {
        ExactProb::new(n, d).unwrap()
    }

    #[test]
    fn entropy_fair_coin() {
        let d = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(shannon_entropy(&d), 1.0);
    }

    #[test]
    fn entropy_deterministic_exercises_zero_term() {
        let d = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&d), 0.0);
    }

    #[test]
    fn entropy_reference_joint() {
        // 3 - (3/4) log2 3, the joint entropy at (b0, q) = (1/2, 1/4)
        let d = Distribution::new(vec![0.375, 0.125, 0.125, 0.375]).unwrap();
        assert!((shannon_entropy(&d) - 1.811_278_124_459_133).abs() < 1e-12);
    }

    #[test]
    fn distribution_rejects_unnormalized() {
        assert!(matches!(
            Distribution::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            Distribution::new(vec![-0.25, 1.25]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(Distribution::from_counts(&[0, 0]).is_err());
        assert!(Distribution::from_exact(&[prob(1, 3), prob(1, 3)]).is_err());
    }

    #[test]
    fn count_mi_reference_rows() {
        let mi = |a: &str, e: &str| {
            mutual_information_from_counts(&pair_counts(&bits(a), &bits(e)).unwrap())
        };
        let r = mi("100110", "100111");
        assert!((r.mi - 0.459_147_917_027_244_8).abs() < 1e-12);
        assert!((r.q - 1.0 / 6.0).abs() < 1e-15);
        assert!((r.zero_rate - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(mi("100110", "100110").mi, 1.0);
        assert!(mi("100110", "101101").mi.abs() < 1e-12);
    }

    #[test]
    fn mi_result_sum_rule_holds() {
        let r =
            mutual_information_from_counts(&pair_counts(&bits("100110"), &bits("100000")).unwrap());
        assert!((r.mi - (r.h_a + r.h_other - r.h_joint)).abs() <= IDENTITY_TOL);
        assert!(r.mi >= 0.0 && r.mi <= r.h_a.min(r.h_other) + IDENTITY_TOL);
    }

    #[test]
    fn closed_form_reference_points() {
        let target = 0.75 * 3f64.log2() - 1.0;
        assert!((mutual_information_closed_form(0.5, 0.25).unwrap() - target).abs() < 1e-15);
        assert_eq!(mutual_information_closed_form(0.5, 0.0).unwrap(), 1.0);
        assert!(mutual_information_closed_form(0.3, 0.5).unwrap().abs() < IDENTITY_TOL);
        assert!(matches!(
            mutual_information_closed_form(0.9, 0.1),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn closed_form_exact_matches_float() {
        let f = mutual_information_closed_form(1.0 / 3.0, 1.0 / 6.0).unwrap();
        let e = mutual_information_closed_form_exact(prob(1, 3), prob(1, 6)).unwrap();
        assert!((f - e).abs() < 1e-12);
        assert!((e - 0.459_147_917_027_244_8).abs() < 1e-12);
    }

    #[test]
    fn qber_alone_does_not_fix_mi() {
        // same q = 1/3, different zero rates, different information
        let low = mutual_information_closed_form_exact(prob(1, 2), prob(1, 3)).unwrap();
        let high = mutual_information_closed_form_exact(prob(5, 6), prob(1, 3)).unwrap();
        assert!((low - 0.081_704_165_945_510_44).abs() < 1e-12);
        assert!((high - 0.190_874_504_621_109_3).abs() < 1e-12);
    }

    #[test]
    fn surface_grid_shape_and_reference_cells() {
        let cells = surface_grid(100).unwrap();
        assert_eq!(cells.len(), 101 * 101);
        let find = |b0: f64, q: f64| {
            cells
                .iter()
                .find(|c| (c.b0 - b0).abs() < 1e-9 && (c.q - q).abs() < 1e-9)
                .unwrap()
        };
        assert_eq!(find(0.5, 0.0).mi, Some(1.0));
        assert!(find(0.3, 0.5).mi.unwrap().abs() < IDENTITY_TOL);
        assert_eq!(find(0.9, 0.1).mi, None);
        assert!(matches!(surface_grid(1), Err(Error::ResolutionTooSmall(1))));
    }

    #[test]
    fn single_bit_value_same_for_all_combinations() {
        let expected = 0.311_278_124_459_132_94;
        for attack in [Attack::U, Attack::S] {
            for party in [Party::Bob, Party::Eve] {
                let mi = single_bit_mutual_information(attack, party);
                assert!((mi - expected).abs() < 1e-12, "{attack:?}/{party:?}: {mi}");
            }
        }
    }
}
