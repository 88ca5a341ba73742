use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{vp, ExtRational, Prime, Rational};

use super::Poly;

/// Multiset of root valuations, merged by value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValuationSpectrum {
    entries: BTreeMap<ExtRational, u64>,
}

impl ValuationSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (ExtRational, u64)>) -> Self {
        let mut s = Self::new();
        for (v, m) in entries {
            s.insert(v, m);
        }
        s
    }

    pub fn insert(&mut self, v: ExtRational, mult: u64) {
        if mult > 0 {
            *self.entries.entry(v).or_insert(0) += mult;
        }
    }

    /// Ascending by valuation.
    pub fn iter(&self) -> impl Iterator<Item = (&ExtRational, u64)> + '_ {
        self.entries.iter().map(|(v, &m)| (v, m))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min(&self) -> Option<&ExtRational> {
        self.entries.keys().next()
    }

    pub fn max(&self) -> Option<&ExtRational> {
        self.entries.keys().next_back()
    }

    pub fn max_finite(&self) -> Option<&Rational> {
        self.entries.keys().rev().find_map(|v| v.finite())
    }

    pub fn multiplicity(&self, v: &ExtRational) -> u64 {
        self.entries.get(v).copied().unwrap_or(0)
    }

    /// Number of roots with valuation `>= bound`.
    pub fn count_at_least(&self, bound: &ExtRational) -> u64 {
        self.entries.range(bound.clone()..).map(|(_, &m)| m).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, m) in other.iter() {
            out.insert(v.clone(), m);
        }
        out
    }

    /// Divides every multiplicity by `k`, failing if any is not a multiple.
    pub fn divide_multiplicities(&self, k: usize) -> Result<Self> {
        let k = k as u64;
        let mut out = Self::new();
        for (v, m) in self.iter() {
            if m % k != 0 {
                return Err(Error::MultiplicityNotDivisible { multiplicity: m, degree: k as usize });
            }
            out.insert(v.clone(), m / k);
        }
        Ok(out)
    }

    /// `Σ min(cap, v) · mult` over all entries.
    pub fn capped_sum(&self, cap: &Rational) -> Rational {
        self.iter().fold(Rational::from_integer(0.into()), |acc, (v, m)| {
            let term = match v {
                ExtRational::Finite(r) if r < cap => r.clone(),
                _ => cap.clone(),
            };
            acc + term * BigInt::from(m)
        })
    }

    /// Sum of `v · mult` over the finite entries.
    pub fn finite_weighted_sum(&self) -> Rational {
        self.iter()
            .filter_map(|(v, m)| v.finite().map(|r| r * BigInt::from(m)))
            .fold(Rational::from_integer(0.into()), |a, b| a + b)
    }
}

impl fmt::Display for ValuationSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, m)| format!("({v}, {m})")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for ValuationSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (v, m) in self.iter() {
            seq.serialize_element(&(v.to_string(), m))?;
        }
        seq.end()
    }
}

/// Root valuations of `f` over C_p from its Newton polygon. A factor `X^k`
/// contributes `k` roots of valuation ∞; each lower-hull segment from
/// `(i1, y1)` to `(i2, y2)` contributes `i2 - i1` roots of valuation
/// `(y1 - y2) / (i2 - i1)`.
pub fn newton_root_valuations(p: Prime, f: &Poly) -> Result<ValuationSpectrum> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (k, g) = f.strip_x_power();
    let mut spectrum = ValuationSpectrum::new();
    spectrum.insert(ExtRational::Infinity, k as u64);
    let points: Vec<(i64, i64)> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| vp(p, c).map(|v| (i as i64, v)))
        .collect();
    for w in lower_hull(&points).windows(2) {
        let ((x1, y1), (x2, y2)) = (w[0], w[1]);
        let width = x2 - x1;
        let slope = Rational::new(BigInt::from(y1 - y2), BigInt::from(width));
        spectrum.insert(ExtRational::Finite(slope), width as u64);
    }
    Ok(spectrum)
}

/// Lower convex hull of points sorted by x; collinear interior points are
/// dropped. Exact integer cross products only.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &c in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // b is kept only if it lies strictly below the chord a–c.
            let lhs = (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
            let rhs = (c.1 - a.1) as i128 * (b.0 - a.0) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn spec(prime: u64, f: &str) -> ValuationSpectrum {
        newton_root_valuations(Prime::new(prime).unwrap(), &p(f)).unwrap()
    }

    fn fin(r: Rational) -> ExtRational {
        ExtRational::Finite(r)
    }

    #[test]
    fn examples() {
        assert_eq!(spec(2, "X^2-2"), ValuationSpectrum::from_entries([(fin(rat(1, 2)), 2)]));
        assert_eq!(
            spec(2, "X^2+2X+8"),
            ValuationSpectrum::from_entries([(fin(int(2)), 1), (fin(int(1)), 1)])
        );
        assert_eq!(spec(3, "3X"), ValuationSpectrum::from_entries([(ExtRational::Infinity, 1)]));
        assert_eq!(spec(3, "1/9X^2 + 1"), ValuationSpectrum::from_entries([(fin(int(1)), 2)]));
        assert_eq!(spec(3, "9X^2 + 1"), ValuationSpectrum::from_entries([(fin(int(-1)), 2)]));
        assert_eq!(
            newton_root_valuations(Prime::new(2).unwrap(), &Poly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    fn int_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-40i64..=40, 1..=6)
            .prop_map(|c| Poly::from_ints(&c))
            .prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn spectrum_of_product_is_union(prime in prop::sample::select(vec![2u64, 3, 5]),
                                        f in int_poly(), g in int_poly()) {
            let pr = Prime::new(prime).unwrap();
            let fg = &f * &g;
            let lhs = newton_root_valuations(pr, &fg).unwrap();
            let rhs = newton_root_valuations(pr, &f).unwrap().union(&newton_root_valuations(pr, &g).unwrap());
            prop_assert_eq!(lhs.total(), fg.deg() as u64);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_of_roots_identity(prime in prop::sample::select(vec![2u64, 3, 5, 7]), f in int_poly()) {
            let pr = Prime::new(prime).unwrap();
            let s = newton_root_valuations(pr, &f).unwrap();
            let (_, g) = f.strip_x_power();
            let g = g.primitive_part();
            let expected = vp(pr, &g.coeff(0)).unwrap() - vp(pr, g.lc().unwrap()).unwrap();
            prop_assert_eq!(s.finite_weighted_sum(), int(expected));
        }

        #[test]
        fn monic_integer_roots_are_integral(prime in prop::sample::select(vec![2u64, 3, 5]),
                                           c in prop::collection::vec(-40i64..=40, 1..6)) {
            let mut c = c;
            c.push(1);
            let f = Poly::from_ints(&c);
            let s = newton_root_valuations(Prime::new(prime).unwrap(), &f).unwrap();
            prop_assert!(s.min().unwrap() >= &ExtRational::zero());
        }
    }
}
