//! Exact rational multiples of π.
//!
//! Interaction times and preparation/measurement angles in this crate are
//! almost always of the form `(p/q)·π`. Keeping them as reduced fractions lets
//! the dynamics use integer phase arithmetic and lets callers check the π/8
//! validity domain of the two-state solution exactly, without float slop.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced fraction `num/den` of π, `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiFraction {
    num: i64,
    den: i64,
}

impl PiFraction {
    pub const ZERO: PiFraction = PiFraction { num: 0, den: 1 };

    /// `num/den · π`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        PiFraction {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    /// `m·π/8`.
    pub fn eighths(m: i64) -> Self {
        Self::new(m, 8)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * std::f64::consts::PI / self.den as f64
    }

    /// The integer `m` with `self = m·π/8`, if one exists.
    pub fn as_eighths(&self) -> Option<i64> {
        if 8 % self.den == 0 {
            Some(self.num * (8 / self.den))
        } else {
            None
        }
    }

    /// Like [`as_eighths`](Self::as_eighths) but reports `InvalidAngle`.
    pub fn require_eighths(&self) -> Result<i64> {
        self.as_eighths()
            .ok_or_else(|| Error::InvalidAngle(self.to_string()))
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self::new(self.num * factor, self.den)
    }
}

impl std::ops::Add for PiFraction {
    type Output = PiFraction;
    fn add(self, rhs: PiFraction) -> PiFraction {
        PiFraction::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl std::ops::Neg for PiFraction {
    type Output = PiFraction;
    fn neg(self) -> PiFraction {
        PiFraction::new(-self.num, self.den)
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "pi"),
            (-1, 1) => write!(f, "-pi"),
            (n, 1) => write!(f, "{n}pi"),
            (1, d) => write!(f, "pi/{d}"),
            (-1, d) => write!(f, "-pi/{d}"),
            (n, d) => write!(f, "{n}pi/{d}"),
        }
    }
}

impl FromStr for PiFraction {
    type Err = Error;

    /// Accepts `0`, `pi`, `-pi/4`, `7pi/4`, `7*pi/4`, `3π/8`, and plain integers
    /// or integer fractions without π only when they are zero.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::AngleParse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('π', "pi").to_ascii_lowercase();
        if t.is_empty() {
            return Err(err());
        }
        let (head, den) = match t.split_once('/') {
            Some((h, d)) => (h.to_string(), d.parse::<i64>().map_err(|_| err())?),
            None => (t.clone(), 1),
        };
        if den <= 0 {
            return Err(err());
        }
        let num = if let Some(coeff) = head.strip_suffix("pi") {
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            match coeff {
                "" | "+" => 1,
                "-" => -1,
                c => c.parse::<i64>().map_err(|_| err())?,
            }
        } else {
            // Only zero is an exact multiple of π without the symbol.
            match head.parse::<f64>() {
                Ok(0.0) => 0,
                _ => return Err(err()),
            }
        };
        Ok(PiFraction::new(num, den))
    }
}
