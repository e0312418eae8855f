//! Exact commuting probabilities.

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::arith::is_prime;
use crate::centralizer::{center, centralizer_idx, coset_representatives, Strategy};
use crate::error::GroupError;
use crate::ring::FiniteRing;

/// Exact fraction kept in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| format!("expected num/den, got {s:?}"))?;
        let n: i128 = n.trim().parse().map_err(|e| format!("{e}"))?;
        let d: i128 = d.trim().parse().map_err(|e| format!("{e}"))?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `|{(x, y) : xy = yx}| / |R|^2` by direct pair counting.
pub fn pr_pairs(r: &FiniteRing) -> Rational {
    pr_pairs_with(r, Strategy::Auto)
}

pub fn pr_pairs_with(r: &FiniteRing, strategy: Strategy) -> Rational {
    let n = r.order() as usize;
    let count_for = |x: usize| {
        (0..n)
            .filter(|&y| r.mul_idx(x, y) == r.mul_idx(y, x))
            .count() as i128
    };
    let commuting: i128 = if matches!(strategy, Strategy::CosetRepresentatives)
        || (strategy == Strategy::Auto && r.order() > crate::centralizer::COSET_SHORTCUT_MIN_ORDER)
    {
        // |C_R(x)| is constant on cosets of the center
        let z = center(r);
        coset_representatives(r, &z)
            .into_iter()
            .map(|x| count_for(x) * z.order() as i128)
            .sum()
    } else {
        (0..n).map(count_for).sum()
    };
    Rational::new(commuting, (n * n) as i128)
}

/// `|Z(R)| / |R| + (1 / |R|^2) * sum over x outside Z(R) of |C_R(x)|`.
pub fn pr_centralizer_sum(r: &FiniteRing) -> Rational {
    let n = r.order() as i128;
    let z = center(r);
    let sum: i128 = (0..r.order() as usize)
        .filter(|&x| !z.contains(x))
        .map(|x| centralizer_idx(r, x).order() as i128)
        .sum();
    Rational::new(z.order() as i128, n) + Rational::new(sum, n * n)
}

/// `(p^2 + p - 1) / p^3`.
pub fn pr_formula_pp(p: u64) -> Result<Rational, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p = p as i128;
    Ok(Rational::new(p * p + p - 1, p * p * p))
}
