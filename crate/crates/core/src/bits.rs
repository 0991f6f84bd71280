//! Bit strings and attack patterns.
//!
//! The text forms mirror the problem's notation: bit strings are `'0'`/`'1'`
//! characters (`"100110"`), attack patterns are `'u'`/`'s'` characters
//! (`"susuus"`, parsed case-insensitively, printed lowercase).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_prob::ExactProb;

/// An ordered, non-empty record of classical bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty strings
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn zeros(&self) -> u64 {
        self.bits.iter().filter(|&&b| !b).count() as u64
    }

    pub fn ones(&self) -> u64 {
        self.len() as u64 - self.zeros()
    }

    /// Fraction of '0' bits (a0, b0, or e0 depending on whose string this is).
    pub fn zero_rate(&self) -> ExactProb {
        ExactProb::new(self.zeros(), self.len() as u64).expect("zeros <= length")
    }

    /// True when the string has exactly as many zeros as ones.
    pub fn is_balanced(&self) -> bool {
        self.zeros() * 2 == self.len() as u64
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyString);
        }
        let mut bits = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                found => return Err(Error::InvalidBit { found, position }),
            }
        }
        Ok(Self { bits })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{}\")", self)
    }
}

/// Eve's per-position attack choice: without (`U`) or with (`S`) the
/// symmetry operation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Attack {
    U,
    S,
}

impl Attack {
    pub fn as_char(self) -> char {
        match self {
            Attack::U => 'u',
            Attack::S => 's',
        }
    }
}

/// An ordered, non-empty sequence of per-position attack choices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AttackPattern {
    labels: Vec<Attack>,
}

impl AttackPattern {
    pub fn from_labels(labels: Vec<Attack>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(Self { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty patterns
    }

    pub fn get(&self, index: usize) -> Attack {
        self.labels[index]
    }

    pub fn labels(&self) -> &[Attack] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = Attack> + '_ {
        self.labels.iter().copied()
    }
}

impl FromStr for AttackPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyString);
        }
        let mut labels = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            match ch {
                'u' | 'U' => labels.push(Attack::U),
                's' | 'S' => labels.push(Attack::S),
                found => return Err(Error::InvalidAttack { found, position }),
            }
        }
        Ok(Self { labels })
    }
}

impl fmt::Display for AttackPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &label in &self.labels {
            write!(f, "{}", label.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for AttackPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AttackPattern(\"{}\")", self)
    }
}
