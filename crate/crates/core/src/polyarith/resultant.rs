//! Resultants by the subresultant PRS over Z, and the difference polynomial
//! `Res_Y(q(Y), f(X + Y))` whose roots are all `β - α'` with `f(β) = 0`,
//! `q(α') = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

use super::Poly;

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deg(v: &IntPoly) -> usize {
    v.len() - 1
}

fn content(v: &IntPoly) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn div_scalar(v: &IntPoly, c: &BigInt) -> IntPoly {
    v.iter()
        .map(|x| {
            debug_assert!((x % c).is_zero());
            x / c
        })
        .collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
fn prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = deg(b);
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && deg(&r) >= db {
        let c = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        r = trim(r);
        e -= 1;
    }
    let scale = num_traits::pow(lb.clone(), e.max(0) as usize);
    r.iter().map(|x| x * &scale).collect()
}

/// Standard resultant `Res(a, b) = lc(a)^deg b · Π_{a(α)=0} b(α)` of two
/// nonzero integer polynomials, by the subresultant algorithm.
pub fn resultant_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    if deg(&b) == 0 {
        return s * num_traits::pow(b[0].clone(), deg(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = num_traits::pow(ca.clone(), deg(&b)) * num_traits::pow(cb.clone(), deg(&a));
    a = div_scalar(&a, &ca);
    b = div_scalar(&b, &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = div_scalar(&r, &divisor);
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1);
        }
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let h = num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1);
    s * t * h
}

/// Resultant over Q, reduced to the integer case by clearing contents.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (cf, pf) = f.content_primitive();
    let (cg, pg) = g.content_primitive();
    let scale = num_traits::pow(cf, g.deg()) * num_traits::pow(cg, f.deg());
    Ok(scale * Rational::from_integer(resultant_int(&pf, &pg)))
}

/// `Res_Y(q(Y), f(X + Y))`, made primitive with positive leading coefficient.
/// Its roots are exactly `β - α'` over all roots `β` of `f` and `α'` of `q`,
/// with multiplicity; degree is `deg q · deg f`.
///
/// Computed by evaluating at the integers `0..=deg q · deg f`, taking
/// integer subresultant resultants, and interpolating.
pub fn difference_polynomial(q: &Poly, f: &Poly) -> Result<Poly> {
    if f.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = q.deg();
    if n == 0 {
        return Ok(Poly::one());
    }
    if n == 1 {
        let a = -q.coeff(0) / q.coeff(1);
        return Ok(f.shift_compose(&a).primitive_part());
    }
    let total = n * f.deg();
    let (_, qi) = q.content_primitive();
    let (_, mut hi) = f.content_primitive();
    let values: Vec<BigInt> = (0..=total)
        .map(|_| {
            let r = resultant_int(&qi, &hi);
            shift_by_one(&mut hi);
            r
        })
        .collect();
    let r = interpolate_consecutive(&values);
    debug_assert_eq!(r.degree(), Some(total));
    Ok(r.primitive_part())
}

/// `h(X) ↦ h(X + 1)` on ascending integer coefficients.
fn shift_by_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
}

/// Polynomial of degree < len taking `values[k]` at `x = k`, via forward
/// differences in the binomial basis. The result must have integer
/// coefficients; all arithmetic stays in Z with one exact division by
/// `(len - 1)!` at the end.
fn interpolate_consecutive(values: &[BigInt]) -> Poly {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut lead = Vec::with_capacity(n);
    for _ in 0..n {
        lead.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // acc = Σ_k lead[k] · (n-1)!/k! · x(x-1)…(x-k+1)
    let mut factorial_ratio = vec![BigInt::one(); n];
    for k in (0..n.saturating_sub(1)).rev() {
        factorial_ratio[k] = &factorial_ratio[k + 1] * BigInt::from(k + 1);
    }
    let mut falling = vec![BigInt::one()];
    let mut acc = vec![BigInt::zero(); n];
    for (k, d) in lead.iter().enumerate() {
        if k > 0 {
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        if !d.is_zero() {
            let w = d * &factorial_ratio[k];
            for (a, c) in acc.iter_mut().zip(&falling) {
                *a += &w * c;
            }
        }
    }
    let total_factorial = &factorial_ratio[0];
    Poly::from_bigints(
        &acc.into_iter()
            .map(|c| {
                debug_assert!(c.is_multiple_of(total_factorial));
                c / total_factorial
            })
            .collect::<Vec<_>>(),
    )
}
