//! Irreducibility over Q. Factor-degree patterns modulo several good primes
//! rule out most candidate factor degrees; Kronecker's interpolation search
//! settles whatever degrees survive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{FpPoly, Poly};
use crate::error::{Error, Result};
use crate::exactnum::{primes_up_to, small_prime_factors, Prime, Rational};

const GOOD_PRIMES: usize = 24;
const KRONECKER_BUDGET: u64 = 2_000_000;

/// Monic gcd in Q[X].
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    if a.is_zero() { a } else { a.monic() }
}

pub fn is_irreducible_over_q(f: &Poly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n <= 1 {
        return Ok(n == 1);
    }
    if f.coeff(0).is_zero() || poly_gcd(f, &f.derivative()).deg() > 0 {
        return Ok(false);
    }
    let f = f.primitive_part();
    let mut candidates: BTreeSet<usize> = (1..=n / 2).collect();
    let lc = f.lc().expect("nonzero").numer().clone();
    let mut good = 0;
    for p in primes_up_to(2000) {
        if candidates.is_empty() || good == GOOD_PRIMES {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let prime = Prime::new(p).expect("sieved prime");
        let h = FpPoly::reduce(prime, &f).expect("integer coefficients");
        if !h.is_squarefree() {
            continue;
        }
        good += 1;
        let sums = subset_sums(&h.factor_degrees());
        candidates.retain(|d| sums.contains(d));
    }
    for d in candidates {
        if kronecker_factor(&f, d)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in degrees {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

/// Searches for a factor of exact degree `d` of the primitive integer
/// polynomial `f` by interpolating through divisors of its values.
fn kronecker_factor(f: &Poly, d: usize) -> Result<Option<Poly>> {
    let mut points: Vec<(BigInt, BigInt, Vec<BigInt>)> = Vec::new();
    for k in 0..40i64 {
        let x = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        let value = f.eval(&Rational::from_integer(x.clone())).to_integer();
        if value.is_zero() {
            return Ok(Some(Poly::linear(&Rational::from_integer(x))));
        }
        let divs = divisors(&value).ok_or_else(|| Error::IrreducibilityUndecided(format!("cannot factor {value}")))?;
        points.push((x, value, divs));
    }
    points.sort_by_key(|(_, _, divs)| divs.len());
    points.truncate(d + 1);

    let combos: u64 = points
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| divs.len() as u64 * if i == 0 { 1 } else { 2 })
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .unwrap_or(u64::MAX);
    if combos > KRONECKER_BUDGET {
        return Err(Error::IrreducibilityUndecided(format!("{combos} candidate factors of degree {d}")));
    }

    let xs: Vec<Rational> = points.iter().map(|(x, _, _)| Rational::from_integer(x.clone())).collect();
    let basis = lagrange_basis(&xs);
    let lc_f = f.lc().expect("nonzero").clone();
    let choices: Vec<Vec<BigInt>> = points
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            let mut c = divs.clone();
            if i > 0 {
                c.extend(divs.iter().map(|v| -v));
            }
            c
        })
        .collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<&BigInt> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
        let lc: Rational = ys.iter().zip(&basis).map(|(y, l)| l.coeff(d) * Rational::from_integer((*y).clone())).sum();
        if !lc.is_zero() && lc.is_integer() && (&lc_f / &lc).is_integer() {
            let h = ys
                .iter()
                .zip(&basis)
                .fold(Poly::zero(), |acc, (y, l)| &acc + &l.scale(&Rational::from_integer((*y).clone())));
            if h.has_integer_coeffs() && f.div_rem(&h)?.1.is_zero() {
                return Ok(Some(h));
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Positive divisors of a nonzero integer.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    let mut divs = vec![BigInt::one()];
    for p in small_prime_factors(&rest)? {
        let p = BigInt::from(p);
        let mut power = BigInt::one();
        let mut grown = Vec::new();
        while (&rest % &p).is_zero() {
            rest /= &p;
            power *= &p;
            grown.extend(divs.iter().map(|d| d * &power));
        }
        divs.extend(grown);
    }
    divs.sort();
    Some(divs)
}

/// `L_i` with `L_i(x_j) = [i = j]` for distinct nodes.
fn lagrange_basis(xs: &[Rational]) -> Vec<Poly> {
    (0..xs.len())
        .map(|i| {
            xs.iter().enumerate().filter(|&(j, _)| j != i).fold(Poly::one(), |acc, (_, xj)| {
                (&acc * &Poly::linear(xj)).scale(&(Rational::one() / (&xs[i] - xj)))
            })
        })
        .collect()
}
