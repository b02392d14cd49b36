use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for chain complexes and homology.
///
/// All complexes in this crate carry integer structure constants; the ring
/// decides how those integers are read (exactly, rationally, or mod `p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p")]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Whether an integer is zero once read in this ring.
    pub fn is_zero(self, x: &BigInt) -> bool {
        match self {
            Ring::PrimeField(p) => x.mod_floor(&BigInt::from(p)).is_zero(),
            _ => x.is_zero(),
        }
    }

    /// Reduce an integer into the canonical representative range of the ring.
    pub fn reduce(self, x: &BigInt) -> BigInt {
        match self {
            Ring::PrimeField(p) => x.mod_floor(&BigInt::from(p)),
            _ => x.clone(),
        }
    }

    pub(crate) fn reduce_u64(self, x: &BigInt) -> u64 {
        match self {
            Ring::PrimeField(p) => x.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
            _ => panic!("reduce_u64 on a ring without finite characteristic"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp`, `GF(p)` and `Z/p` (case-insensitive).
    fn from_str(s: &str) -> Result<Ring> {
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "Z" | "INTEGERS" => return Ok(Ring::Integers),
            "Q" | "RATIONALS" => return Ok(Ring::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown ring `{s}`")))?;
        Ring::prime_field(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("q".parse::<Ring>().unwrap(), Ring::Rationals);
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::PrimeField(2));
        assert_eq!("GF(7)".parse::<Ring>().unwrap(), Ring::PrimeField(7));
        assert_eq!("Z/3".parse::<Ring>().unwrap(), Ring::PrimeField(3));
        assert!("F4".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let r = Ring::PrimeField(3);
        assert!(r.is_zero(&BigInt::from(-6)));
        assert_eq!(r.reduce(&BigInt::from(-1)), BigInt::from(2));
        assert!(!Ring::Integers.is_zero(&BigInt::from(3)));
    }
}
