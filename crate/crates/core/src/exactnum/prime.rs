use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime below 2^64, verified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t.parse::<u64>() {
            Ok(p) => Prime::new(p),
            Err(_) if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) => {
                Err(Error::NotPrime(t.to_string()))
            }
            Err(_) => Err(Error::Parse(format!("invalid prime {text:?}"))),
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

// Deterministic for all n < 2^64 with this witness set.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Sorted distinct prime factors.
pub fn factor_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m <= 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push(m);
            continue;
        }
        let mut rest = m;
        let mut split = false;
        for q in [2u64, 3, 5, 7, 11, 13] {
            if rest % q == 0 {
                out.push(q);
                while rest % q == 0 {
                    rest /= q;
                }
                split = true;
            }
        }
        if split {
            stack.push(rest);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Distinct prime factors of a nonzero integer, or `None` if a cofactor
/// above 2^64 survives trial division.
pub fn small_prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let mut rest = n.magnitude().clone();
    if rest.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while rest.to_u64().is_none() && d < 1_000_000 {
        let bd = num_bigint::BigUint::from(d);
        if (&rest % &bd).is_zero() {
            out.push(d);
            while (&rest % &bd).is_zero() {
                rest /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let rest = rest.to_u64()?;
    if !rest.is_one() {
        out.extend(factor_u64(rest));
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime_u64(n), trial(n), "{n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(primes_up_to(200).len(), 46);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(360), vec![2, 3, 5]);
        assert_eq!(factor_u64(1), Vec::<u64>::new());
        assert_eq!(factor_u64(600851475143), vec![71, 839, 1471, 6857]);
        assert_eq!(factor_u64(4294967297), vec![641, 6700417]);
        let big = BigInt::from(6u64) * BigInt::from(u64::MAX - 58); // 2^64-59 is prime
        assert_eq!(small_prime_factors(&big), Some(vec![2, 3, u64::MAX - 58]));
    }

    #[test]
    fn prime_parse() {
        assert_eq!(Prime::parse("7").unwrap().get(), 7);
        assert!(matches!(Prime::parse("9"), Err(Error::NotPrime(_))));
        assert!(matches!(Prime::parse("x"), Err(Error::Parse(_))));
    }
}
