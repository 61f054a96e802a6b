//! Prime sets and the arithmetic of group orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut out = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// A sorted set of distinct primes (the `π` of Hall-subgroup language).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(GroupError::NotPrime(bad));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn single(p: u64) -> Result<Self, GroupError> {
        Self::new(vec![p])
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `π`-part of `n`.
    pub fn part_of(&self, n: u128) -> u128 {
        self.primes.iter().map(|&p| p_part(n, p)).product()
    }

    /// The `π'`-part of `n`.
    pub fn complement_part_of(&self, n: u128) -> u128 {
        n / self.part_of(n)
    }

    /// True when every prime divisor of `n` lies in the set.
    pub fn is_pi_number(&self, n: u128) -> bool {
        self.part_of(n) == n
    }

    /// True when no prime divisor of `n` lies in the set.
    pub fn is_pi_prime_number(&self, n: u128) -> bool {
        self.part_of(n) == 1
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut primes = self.primes.clone();
        primes.extend_from_slice(&other.primes);
        primes.sort_unstable();
        primes.dedup();
        PrimeSet { primes }
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = GroupError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.primes
    }
}

impl FromStr for PrimeSet {
    type Err = GroupError;

    /// Comma- or space-separated list, with optional braces: `2,3` or `{2, 3}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut primes = Vec::new();
        for tok in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: u64 = tok
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad prime `{tok}`")))?;
            primes.push(p);
        }
        if primes.is_empty() {
            return Err(GroupError::Parse("empty prime set".into()));
        }
        PrimeSet::new(primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
