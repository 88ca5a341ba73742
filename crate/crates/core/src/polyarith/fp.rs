//! Polynomials over the prime field F_p, p < 2^64.

use std::fmt;

use crate::exactnum::prime::{inv_mod, mul_mod};
use crate::exactnum::{factor_u64, residue_mod_p, Prime};

use super::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: Prime, coeffs: Vec<u64>) -> Self {
        let p = p.get();
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    /// Reduction mod p of a polynomial with p-integral coefficients.
    pub fn reduce(p: Prime, f: &Poly) -> Option<Self> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| residue_mod_p(p, c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(p, coeffs))
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p: self.p, coeffs };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lift to Q[X] with coefficients in `[0, p)`.
    pub fn lift(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|&c| crate::exactnum::Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                self.with(self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    fn x(&self) -> Self {
        self.with(vec![0, 1])
    }

    fn one(&self) -> Self {
        self.with(vec![1])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.with(
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&rhs.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.with(Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        self.with(out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(*d.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (self.with(Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, self.p);
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = (rem[k + i] + self.p - mul_mod(c, dc, self.p)) % self.p;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (self.with(quot), self.with(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = self.one().rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(self.one(), |acc, _| acc.mul(self))
    }

    /// Rabin's test: `h` of degree n is irreducible iff `X^(p^n) = X mod h`
    /// and `gcd(X^(p^(n/r)) - X, h) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let h = self.monic();
        let x = self.x();
        let mut frob = vec![x.clone()];
        for _ in 0..n {
            let next = frob.last().unwrap().pow_mod(self.p, &h);
            frob.push(next);
        }
        if frob[n] != x.rem(&h) {
            return false;
        }
        factor_u64(n as u64).into_iter().all(|r| {
            let t = frob[n / r as usize].sub(&x);
            t.gcd(&h).degree() == Some(0)
        })
    }

    /// Degrees of the irreducible factors of a squarefree `h`, by
    /// distinct-degree factorization.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut h = self.monic();
        let x = self.x();
        let mut frob = x.clone();
        let mut out = Vec::new();
        let mut i = 0;
        while let Some(n) = h.degree().filter(|&n| n > 0) {
            i += 1;
            if 2 * i > n {
                out.push(n);
                break;
            }
            frob = frob.pow_mod(self.p, &h);
            let g = frob.sub(&x).gcd(&h);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                out.extend(std::iter::repeat_n(i, dg / i));
                h = h.div_rem(&g).0.monic();
                frob = frob.rem(&h);
            }
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// For `h = g^k` with g irreducible, returns monic `g`. `None` when `h` is
    /// not of that shape.
    pub fn pure_power_root(&self) -> Option<Self> {
        let h = self.monic();
        let root = radical_of_power(&h)?;
        let n = h.degree()?;
        let d = root.degree()?;
        if d == 0 || n % d != 0 || !root.is_irreducible() || root.pow(n / d) != h {
            return None;
        }
        Some(root)
    }
}

/// Radical of a monic `h` assumed to be a pure power; handles `h' = 0` by
/// taking the p-th root of the coefficients.
fn radical_of_power(h: &FpPoly) -> Option<FpPoly> {
    let n = h.degree()?;
    if n == 0 {
        return Some(h.clone());
    }
    let dh = h.derivative();
    if dh.is_zero() {
        let p = h.p as usize;
        let root = h.with(h.coeffs.iter().step_by(p).copied().collect());
        return radical_of_power(&root);
    }
    Some(h.div_rem(&h.gcd(&dh)).0.monic())
}

/// True iff `h` is irreducible in F_p[X].
pub fn fp_irreducible(h: &FpPoly) -> bool {
    h.is_irreducible()
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self.lift())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}
