//! Exact rational probabilities.
//!
//! Every probability produced by the channel model is an exact rational
//! (enumeration weights are dyadic, error rates are multiples of 1/J), so
//! counting and averaging are done without floating-point error. Values are
//! kept reduced and constrained to [0, 1]; conversion to `f64` happens only
//! at the entropy/reporting boundary.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact probability: a rational in [0, 1], always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(Ratio<i64>);

impl ExactProb {
    /// Builds `numerator / denominator`, rejecting values outside [0, 1].
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator > denominator || denominator > i64::MAX as u64 {
            return Err(Error::InvalidProbability {
                numerator: numerator.min(i64::MAX as u64) as i64,
                denominator: denominator.min(i64::MAX as u64) as i64,
            });
        }
        Ok(Self(Ratio::new(numerator as i64, denominator as i64)))
    }

    /// Wraps a signed ratio, rejecting values outside [0, 1].
    pub fn from_ratio(ratio: Ratio<i64>) -> Result<Self> {
        if ratio < Ratio::zero() || ratio > Ratio::from_integer(1) {
            return Err(Error::InvalidProbability {
                numerator: *ratio.numer(),
                denominator: *ratio.denom(),
            });
        }
        Ok(Self(ratio))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::from_integer(1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer() as u64
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom() as u64
    }

    /// The underlying reduced ratio.
    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("ratio converts to f64")
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Self(Ratio::from_integer(1) - self.0)
    }

    /// Exact decimal expansion, if it terminates within 38 digits
    /// (denominator of the form 2^a * 5^b). `None` otherwise.
    pub fn decimal_exact(&self) -> Option<String> {
        let mut den = self.denom() as u128;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while den.is_multiple_of(2) {
            den /= 2;
            twos += 1;
        }
        while den.is_multiple_of(5) {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            return None;
        }
        let scale = twos.max(fives);
        if scale > 38 {
            return None;
        }
        let scaled =
            (self.numer() as u128).checked_mul(10u128.checked_pow(scale)?)? / self.denom() as u128;
        if scale == 0 {
            return Some(scaled.to_string());
        }
        let int_part = scaled / 10u128.pow(scale);
        let frac_part = scaled % 10u128.pow(scale);
        let frac = format!("{:0width$}", frac_part, width = scale as usize);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            Some(int_part.to_string())
        } else {
            Some(format!("{}.{}", int_part, frac))
        }
    }
}

impl fmt::Display for ExactProb {
    /// Canonical form is always `numerator/denominator`, e.g. `0/1`, `1/16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactProb({}/{})", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactProb {
    type Err = Error;

    /// Accepts `"num/den"`, a bare integer, or a terminating decimal
    /// such as `"0.25"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnparseableProbability {
            input: s.to_string(),
        };
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numerator: u64 = n.trim().parse().map_err(|_| bad())?;
            let denominator: u64 = d.trim().parse().map_err(|_| bad())?;
            return Self::new(numerator, denominator);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty()
                || frac_part.len() > 18
                || !frac_part.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(bad());
            }
            let int_val: u64 = if int_part.is_empty() {
                0
            } else {
                int_part.parse().map_err(|_| bad())?
            };
            let scale = 10u64.pow(frac_part.len() as u32);
            let frac_val: u64 = frac_part.parse().map_err(|_| bad())?;
            let numerator = int_val
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_val))
                .ok_or_else(bad)?;
            return Self::new(numerator, scale);
        }
        let int_val: u64 = s.parse().map_err(|_| bad())?;
        Self::new(int_val, 1)
    }
}

// Arithmetic keeps the [0, 1] invariant; violating it means a bug in the
// caller's probability algebra, so these panic rather than return Result.
impl Add for ExactProb {
    type Output = ExactProb;
    fn add(self, rhs: ExactProb) -> ExactProb {
        ExactProb::from_ratio(self.0 + rhs.0).expect("probability sum exceeds 1")
    }
}

impl Sub for ExactProb {
    type Output = ExactProb;
    fn sub(self, rhs: ExactProb) -> ExactProb {
        ExactProb::from_ratio(self.0 - rhs.0).expect("probability difference below 0")
    }
}

impl Mul for ExactProb {
    type Output = ExactProb;
    fn mul(self, rhs: ExactProb) -> ExactProb {
        Self(self.0 * rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_bounds() {
        assert!(ExactProb::new(1, 2).is_ok());
        assert!(ExactProb::new(0, 1).is_ok());
        assert!(ExactProb::new(5, 5).is_ok());
        assert!(ExactProb::new(3, 2).is_err());
        assert!(ExactProb::new(1, 0).is_err());
    }

    #[test]
    fn reduction_is_canonical() {
        let p = ExactProb::new(8, 16).unwrap();
        assert_eq!(p.numer(), 1);
        assert_eq!(p.denom(), 2);
        assert_eq!(p, ExactProb::new(1, 2).unwrap());
    }

    #[test]
    fn display_is_num_slash_den() {
        assert_eq!(ExactProb::zero().to_string(), "0/1");
        assert_eq!(ExactProb::one().to_string(), "1/1");
        assert_eq!(ExactProb::new(2, 12).unwrap().to_string(), "1/6");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            "1/4".parse::<ExactProb>().unwrap(),
            ExactProb::new(1, 4).unwrap()
        );
        assert_eq!(
            "0.25".parse::<ExactProb>().unwrap(),
            ExactProb::new(1, 4).unwrap()
        );
        assert_eq!("1".parse::<ExactProb>().unwrap(), ExactProb::one());
        assert_eq!(
            ".5".parse::<ExactProb>().unwrap(),
            ExactProb::new(1, 2).unwrap()
        );
        assert!("2".parse::<ExactProb>().is_err());
        assert!("1/0".parse::<ExactProb>().is_err());
        assert!("x".parse::<ExactProb>().is_err());
        assert!("0.1.2".parse::<ExactProb>().is_err());
    }

    #[test]
    fn decimal_exact_terminating() {
        assert_eq!(
            ExactProb::new(1, 4).unwrap().decimal_exact().as_deref(),
            Some("0.25")
        );
        assert_eq!(
            ExactProb::new(1, 2).unwrap().decimal_exact().as_deref(),
            Some("0.5")
        );
        assert_eq!(
            ExactProb::new(3, 16).unwrap().decimal_exact().as_deref(),
            Some("0.1875")
        );
        assert_eq!(ExactProb::one().decimal_exact().as_deref(), Some("1"));
        assert_eq!(ExactProb::zero().decimal_exact().as_deref(), Some("0"));
        assert_eq!(ExactProb::new(1, 6).unwrap().decimal_exact(), None);
        assert_eq!(ExactProb::new(1, 3).unwrap().decimal_exact(), None);
    }

    #[test]
    fn arithmetic() {
        let quarter = ExactProb::new(1, 4).unwrap();
        let half = ExactProb::new(1, 2).unwrap();
        assert_eq!(quarter + quarter, half);
        assert_eq!(half - quarter, quarter);
        assert_eq!(half * half, quarter);
        assert_eq!(quarter.complement(), ExactProb::new(3, 4).unwrap());
    }

    #[test]
    #[should_panic(expected = "probability sum exceeds 1")]
    fn sum_above_one_panics() {
        let _ = ExactProb::new(3, 4).unwrap() + ExactProb::new(1, 2).unwrap();
    }
}
