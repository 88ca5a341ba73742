use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, vp, Prime, Rational};

/// Dense univariate polynomial over Q, coefficients indexed by exponent.
/// The highest stored coefficient is never zero; the zero polynomial stores
/// nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `X - a`
    pub fn linear(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `f(X + a)` by repeated synthetic division (Taylor shift).
    pub fn shift_compose(&self, a: &Rational) -> Self {
        let mut c = self.coeffs.clone();
        if a.is_zero() {
            return self.clone();
        }
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lc().ok_or(Error::ZeroPolynomial)?.clone();
        let dd = d.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Splits off the largest power of X dividing `self`: returns `(k, g)` with
    /// `self = X^k g` and `g(0) != 0`. The zero polynomial yields `(0, 0)`.
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Writes `self = content * primitive` with `primitive` an integer
    /// polynomial of content 1 and positive leading coefficient.
    pub fn content_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self.denominator();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &den).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    pub fn content(&self) -> Rational {
        self.content_primitive().0
    }

    pub fn primitive_part(&self) -> Self {
        Self::from_bigints(&self.content_primitive().1)
    }

    /// Minimum p-adic valuation over the coefficients (Gauss valuation).
    pub fn min_coeff_valuation(&self, p: Prime) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| vp(p, c)).min()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push('X');
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Sum of terms `c*X^k`, `X^k`, `cX`, `c` with rational `c`; whitespace
    /// is ignored and the variable is always `X`.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = Poly::zero();
        for t in terms {
            acc = &acc + &parse_term(t).ok_or_else(|| {
                Error::Parse(format!("invalid term {t:?} in polynomial {text:?}"))
            })?;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Option<Poly> {
    let (neg, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return None;
    }
    let (coef, k) = match body.split_once('X') {
        None => (parse_rational(body).ok()?, 0),
        Some((c, e)) => {
            let c = c.strip_suffix('*').unwrap_or(c);
            let coef = if c.is_empty() {
                Rational::one()
            } else {
                parse_rational(c).ok()?
            };
            let k = match e {
                "" => 1,
                _ => {
                    let digits = e.strip_prefix('^')?;
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return None;
                    }
                    digits.parse::<usize>().ok().filter(|&k| k <= 4096)?
                }
            };
            (coef, k)
        }
    };
    let coef = if neg { -coef } else { coef };
    Some(Poly::monomial(coef, k))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("X^2").shift_compose(&int(1)), p("X^2+2X+1"));
        assert_eq!(p("X^2+2*X+8").shift_compose(&int(0)), p("X^2+2*X+8"));
        assert_eq!(p("2X+3").shift_compose(&int(-1)), p("2X+1"));
    }

    #[test]
    fn parse_and_print() {
        let f = p(" 1/4 * X^2 + 1/2*X - 2 ");
        assert_eq!(f.coeffs(), &[int(-2), rat(1, 2), rat(1, 4)]);
        assert_eq!(f.to_string(), "1/4*X^2+1/2*X-2");
        assert_eq!(p("-X^3 + X").to_string(), "-X^3+X");
        assert_eq!(p("X - X").to_string(), "0");
        assert_eq!(p("3 − X").to_string(), "-X+3");
        for bad in ["", "X^", "2**X", "Y", "X^-1", "1/0*X", "+"] {
            assert!(bad.parse::<Poly>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn content_and_division() {
        let f = p("-6X^2 + 3/2");
        let (c, prim) = f.content_primitive();
        assert_eq!(c, rat(-3, 2));
        assert_eq!(Poly::from_bigints(&prim), p("4X^2-1"));
        let (q, r) = p("X^3 - 1").div_rem(&p("X - 1")).unwrap();
        assert_eq!((q, r), (p("X^2+X+1"), Poly::zero()));
        assert_eq!(p("X^3 + 2X^2").strip_x_power(), (2, p("X+2")));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in small_poly()) {
            prop_assert_eq!(f.to_string().parse::<Poly>().unwrap(), f);
        }

        #[test]
        fn shift_matches_evaluation(f in small_poly(), a in -5i64..5, x in -5i64..5) {
            prop_assert_eq!(f.shift_compose(&int(a)).eval(&int(x)), f.eval(&int(x + a)));
        }
    }
}
