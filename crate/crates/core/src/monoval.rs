//! DVR specifications `(p, α, δ)` and the monomial valuation
//! `v_{p,α,δ}(f) = min_i v_p(a_i) + iδ` where `f = Σ a_i (X - α)^i`.
//!
//! Three kinds of centers are supported. Rational centers are evaluated by a
//! Taylor shift. Algebraic centers never leave Q: the value is read off the
//! distances from one root of the center polynomial to the roots of `f`.
//! Truncated centers stand for a transcendental element known modulo `p^N`;
//! they only occur with radius ∞, since any finite radius up to `N` denotes
//! the same ball as the rational truncation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algext::{
    certify_qp_irreducible, minimal_pair_status, per_root_distances, ramification_residue,
    relative_ramification, residue_min_poly, MinimalPairVerdict, QpCertificate,
};
use crate::ballcalc::orbit_contains;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, residue_mod_p, vp, ExtRational, Prime, Rational};
use crate::polyarith::{FpPoly, Poly};

/// A center as written by the user, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CenterSpec {
    Rational(Rational),
    Algebraic(Poly),
    Truncated { a: Rational, precision: u32, declared_e: u32 },
}

impl fmt::Display for CenterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterSpec::Rational(a) => write!(f, "rat:{a}"),
            CenterSpec::Algebraic(q) => write!(f, "alg:{q}"),
            CenterSpec::Truncated { a, precision, declared_e } => {
                write!(f, "trunc:a={a},N={precision},e={declared_e}")
            }
        }
    }
}

impl FromStr for CenterSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("center {text:?} lacks a rat:/alg:/trunc: prefix")))?;
        match kind.trim() {
            "rat" => Ok(CenterSpec::Rational(parse_rational(body)?)),
            "alg" => Ok(CenterSpec::Algebraic(body.parse()?)),
            "trunc" => parse_truncated(body),
            other => Err(Error::Parse(format!("unknown center kind {other:?}"))),
        }
    }
}

fn parse_truncated(body: &str) -> Result<CenterSpec> {
    let (mut a, mut precision, mut declared_e) = (None, None, 1u32);
    for field in body.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("truncated center field {field:?} is not key=value")))?;
        let value = value.trim();
        let number = || value.parse::<u32>().map_err(|_| Error::Parse(format!("bad integer {value:?}")));
        match key.trim() {
            "a" => a = Some(parse_rational(value)?),
            "N" => precision = Some(number()?),
            "e" => declared_e = number()?,
            other => return Err(Error::Parse(format!("unknown truncated center field {other:?}"))),
        }
    }
    match (a, precision) {
        (Some(a), Some(precision)) => Ok(CenterSpec::Truncated { a, precision, declared_e }),
        _ => Err(Error::Parse("truncated center needs a= and N=".into())),
    }
}

/// A validated center. Algebraic centers carry their certificate and a
/// monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Center {
    Rational(Rational),
    Algebraic { q: Poly, cert: QpCertificate },
    Truncated { a: Rational, precision: u32, declared_e: u32 },
}

impl Center {
    /// Polynomial with the center (or its truncation) as a root.
    pub fn point_poly(&self) -> Poly {
        match self {
            Center::Rational(a) | Center::Truncated { a, .. } => Poly::linear(a),
            Center::Algebraic { q, .. } => q.clone(),
        }
    }

    pub fn to_spec(&self) -> CenterSpec {
        match self {
            Center::Rational(a) => CenterSpec::Rational(a.clone()),
            Center::Algebraic { q, .. } => CenterSpec::Algebraic(q.clone()),
            Center::Truncated { a, precision, declared_e } => CenterSpec::Truncated {
                a: a.clone(),
                precision: *precision,
                declared_e: *declared_e,
            },
        }
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_spec().fmt(f)
    }
}

/// A validated `(p, α, δ)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DvrSpec {
    p: Prime,
    center: Center,
    radius: ExtRational,
}

impl DvrSpec {
    pub fn new(p: Prime, center: CenterSpec, radius: ExtRational) -> Result<Self> {
        make_dvr_spec(p, center, radius)
    }

    pub fn parse(p: Prime, center: &str, radius: &str) -> Result<Self> {
        make_dvr_spec(p, center.parse()?, radius.parse()?)
    }

    pub fn gauss(p: Prime) -> Self {
        DvrSpec { p, center: Center::Rational(Rational::from_integer(0.into())), radius: ExtRational::zero() }
    }

    pub fn rational(p: Prime, a: Rational, radius: Rational) -> Result<Self> {
        make_dvr_spec(p, CenterSpec::Rational(a), ExtRational::Finite(radius))
    }

    pub fn algebraic(p: Prime, q: Poly, radius: Rational) -> Result<Self> {
        make_dvr_spec(p, CenterSpec::Algebraic(q), ExtRational::Finite(radius))
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn radius(&self) -> &ExtRational {
        &self.radius
    }

    pub fn is_gauss(&self) -> bool {
        self.radius == ExtRational::zero()
    }

    /// Canonical sort key: radius, then center text.
    pub fn sort_key(&self) -> (ExtRational, String) {
        (self.radius.clone(), self.center.to_string())
    }
}

impl fmt::Display for DvrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.center, self.radius)
    }
}

pub fn make_dvr_spec(p: Prime, center: CenterSpec, radius: ExtRational) -> Result<DvrSpec> {
    if radius.is_negative() {
        return Err(Error::NegativeRadius(radius.to_string()));
    }
    let integral = |a: &Rational| match vp(p, a) {
        Some(v) if v < 0 => Err(Error::CenterNotIntegral { p: p.get() }),
        _ => Ok(()),
    };
    let center = match center {
        CenterSpec::Rational(a) => {
            integral(&a)?;
            if radius.is_infinite() {
                return Err(Error::AlgebraicAtInfinity);
            }
            Center::Rational(a)
        }
        CenterSpec::Algebraic(q) => {
            if radius.is_infinite() {
                return Err(Error::AlgebraicAtInfinity);
            }
            let cert = certify_qp_irreducible(p, &q)?;
            let q = q.monic();
            match cert.degree {
                1 => Center::Rational(-q.coeff(0)),
                _ => Center::Algebraic { q, cert },
            }
        }
        CenterSpec::Truncated { a, precision, declared_e } => {
            if precision == 0 || declared_e == 0 {
                return Err(Error::InvalidInput("truncated center needs N ≥ 1 and e ≥ 1".into()));
            }
            integral(&a)?;
            match &radius {
                ExtRational::Infinity => Center::Truncated { a, precision, declared_e },
                ExtRational::Finite(d) if d > &Rational::from_integer(precision.into()) => {
                    return Err(Error::RadiusExceedsPrecision { radius: d.to_string(), precision });
                }
                ExtRational::Finite(_) => Center::Rational(a),
            }
        }
    };
    if radius == ExtRational::zero() {
        return Ok(DvrSpec::gauss(p));
    }
    Ok(DvrSpec { p, center, radius })
}

/// `min_i v_p(a_i) + iδ` over the expansion of `f` in powers of `X - a`.
pub(crate) fn expansion_value(p: Prime, a: &Rational, radius: &Rational, f: &Poly) -> ExtRational {
    f.shift_compose(a)
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| vp(p, c).map(|v| Rational::from_integer(v.into()) + radius * Rational::from_integer(i.into())))
        .min()
        .map_or(ExtRational::Infinity, ExtRational::Finite)
}

pub fn mono_val(spec: &DvrSpec, f: &Poly) -> Result<ExtRational> {
    let p = spec.p;
    let Some(lc) = f.lc() else {
        return Ok(ExtRational::Infinity);
    };
    match (&spec.center, &spec.radius) {
        (Center::Rational(a), ExtRational::Finite(d)) => Ok(expansion_value(p, a, d, f)),
        (Center::Algebraic { q, .. }, ExtRational::Finite(d)) => {
            let spectrum = per_root_distances(p, q, f)?;
            let v_lc = vp(p, lc).expect("nonzero leading coefficient");
            Ok(ExtRational::Finite(Rational::from_integer(v_lc.into()) + spectrum.capped_sum(d)))
        }
        (Center::Truncated { a, precision, .. }, ExtRational::Infinity) => truncated_value(p, a, *precision, f),
        _ => unreachable!("validated spec {spec}"),
    }
}

/// `v_p(f(α))` for `α ≡ a (mod p^N)` transcendental, when the constant term
/// of the expansion at `a` strictly dominates every other term.
fn truncated_value(p: Prime, a: &Rational, precision: u32, f: &Poly) -> Result<ExtRational> {
    let g = f.shift_compose(a);
    let n = i64::from(precision);
    let head = vp(p, &g.coeff(0));
    let tail = g.coeffs().iter().enumerate().skip(1).filter_map(|(i, c)| vp(p, c).map(|v| v + i as i64 * n)).min();
    match (head, tail) {
        (Some(h), Some(t)) if h < t => Ok(ExtRational::from(h)),
        (Some(h), None) => Ok(ExtRational::from(h)),
        _ => Err(Error::InsufficientPrecision { precision }),
    }
}

/// Ramification index of the DVR over `Z_(p)`.
pub fn dvr_ram_index(spec: &DvrSpec) -> Result<u64> {
    match (&spec.center, &spec.radius) {
        (Center::Truncated { declared_e, .. }, _) => Ok(u64::from(*declared_e)),
        (Center::Rational(_), ExtRational::Finite(d)) => Ok(u64::try_from(d.denom()).expect("radius denominator fits in u64")),
        (Center::Algebraic { q, cert }, ExtRational::Finite(d)) => {
            if minimal_pair_status(spec.p, q, cert, d)?.verdict != MinimalPairVerdict::Minimal {
                return Err(Error::MinimalPairUnknown);
            }
            let (e0, _) = ramification_residue(cert);
            let gamma = mono_val(spec, q)?;
            let gamma = gamma.finite().expect("a center polynomial is nonzero");
            Ok((e0 * relative_ramification(gamma, e0)) as u64)
        }
        _ => unreachable!("validated spec {spec}"),
    }
}

/// Contraction of the maximal ideal of the DVR to `Z_(p)[X]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterIdeal {
    JustP(Prime),
    PAndG(Prime, FpPoly),
}

impl fmt::Display for CenterIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterIdeal::JustP(p) => write!(f, "({p})"),
            CenterIdeal::PAndG(p, g) => write!(f, "({p}, {g})"),
        }
    }
}

impl Serialize for CenterIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn center_ideal(spec: &DvrSpec) -> CenterIdeal {
    let p = spec.p;
    if spec.is_gauss() {
        return CenterIdeal::JustP(p);
    }
    let gbar = match &spec.center {
        Center::Rational(a) | Center::Truncated { a, .. } => {
            let r = residue_mod_p(p, a).expect("validated centers are p-integral");
            FpPoly::new(p, vec![(p.get() - r) % p.get(), 1])
        }
        Center::Algebraic { q, .. } => {
            residue_min_poly(p, q).expect("certified centers reduce to a power of an irreducible")
        }
    };
    CenterIdeal::PAndG(p, gbar)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolyOrder {
    Equal,
    Less,
    Greater,
    Incomparable,
    DifferentPrime,
}

/// Compares `W_1 ∩ Q[X]` with `W_2 ∩ Q[X]`; `Less` means the first ring is
/// contained in the second, equivalently `w_1(f) ≤ w_2(f)` for all `f`.
pub fn order_compare(s1: &DvrSpec, s2: &DvrSpec) -> Result<PolyOrder> {
    if s1.p != s2.p {
        return Ok(PolyOrder::DifferentPrime);
    }
    Ok(match (orbit_contains(s1, s2)?, orbit_contains(s2, s1)?) {
        (true, true) => PolyOrder::Equal,
        (true, false) => PolyOrder::Less,
        (false, true) => PolyOrder::Greater,
        (false, false) => PolyOrder::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn spec(p: u64, c: &str, r: &str) -> DvrSpec {
        DvrSpec::parse(pr(p), c, r).unwrap()
    }

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn val(s: &DvrSpec, f: &str) -> ExtRational {
        mono_val(s, &poly(f)).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(spec(2, "rat:1/3", "0"), DvrSpec::gauss(pr(2)));
        assert_eq!(DvrSpec::parse(pr(2), "rat:1/2", "1"), Err(Error::CenterNotIntegral { p: 2 }));
        assert_eq!(DvrSpec::parse(pr(2), "alg:X^2-2", "inf"), Err(Error::AlgebraicAtInfinity));
        assert_eq!(DvrSpec::parse(pr(2), "rat:0", "-1"), Err(Error::NegativeRadius("-1".into())));
        assert!(matches!(DvrSpec::parse(pr(5), "alg:X^2-1", "1"), Err(Error::CannotCertify { .. })));
        assert_eq!(spec(2, "alg:X^2-2", "0"), DvrSpec::gauss(pr(2)));
        assert_eq!(spec(2, "alg:2X-6", "1"), spec(2, "rat:3", "1"));
        assert_eq!(spec(2, "trunc:a=5,N=20,e=1", "3"), spec(2, "rat:5", "3"));
        assert!(matches!(
            DvrSpec::parse(pr(2), "trunc:a=5,N=2", "3"),
            Err(Error::RadiusExceedsPrecision { precision: 2, .. })
        ));
        let t = spec(2, "trunc:a=5,N=20,e=1", "inf");
        assert_eq!(t.to_string(), "(2, trunc:a=5,N=20,e=1, inf)");
        assert!(DvrSpec::parse(pr(2), "trunc:a=5", "inf").is_err());
        assert!(DvrSpec::parse(pr(2), "poly:X", "1").is_err());
    }

    #[test]
    fn center_text_round_trip() {
        for text in ["rat:3/4", "rat:-2", "alg:X^2-2", "alg:X^3+X+1", "trunc:a=5,N=20,e=1", "trunc:a=1/3,N=4,e=2"] {
            assert_eq!(text.parse::<CenterSpec>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn values() {
        assert_eq!(val(&spec(2, "rat:0", "1"), "X^2+2X+8"), ExtRational::from(2));
        assert_eq!(val(&spec(3, "rat:0", "0"), "9X^2+3X+1/3"), ExtRational::from(-1));
        assert_eq!(val(&spec(2, "alg:X^2-2", "1"), "X"), rat(1, 2).into());
        assert_eq!(val(&spec(2, "alg:X^2-2", "1"), "X^2-2"), ExtRational::from(2));
        assert_eq!(val(&spec(2, "alg:X^2-2", "1"), "0"), ExtRational::Infinity);
        assert_eq!(val(&spec(2, "alg:X^2-2", "1"), "12"), ExtRational::from(2));
        assert_eq!(val(&spec(2, "rat:1", "1/2"), "X-1"), rat(1, 2).into());
    }

    #[test]
    fn truncated_values() {
        let t = spec(2, "trunc:a=5,N=10,e=1", "inf");
        assert_eq!(val(&t, "X-1"), ExtRational::from(2));
        assert_eq!(val(&t, "X+11"), ExtRational::from(4));
        assert_eq!(val(&t, "7"), ExtRational::zero());
        assert_eq!(mono_val(&t, &poly("X-5")), Err(Error::InsufficientPrecision { precision: 10 }));
        assert_eq!(mono_val(&t, &poly("X-1029")), Err(Error::InsufficientPrecision { precision: 10 }));
        assert_eq!(val(&t, "X-517"), ExtRational::from(9));
    }

    #[test]
    fn ramification_indices() {
        assert_eq!(dvr_ram_index(&spec(2, "rat:0", "3/2")).unwrap(), 2);
        assert_eq!(dvr_ram_index(&spec(2, "alg:X^2+X+1", "2")).unwrap(), 1);
        assert_eq!(dvr_ram_index(&spec(2, "rat:0", "0")).unwrap(), 1);
        assert_eq!(dvr_ram_index(&spec(2, "alg:X^2+X+1", "1/3")).unwrap(), 3);
        assert_eq!(dvr_ram_index(&spec(2, "alg:X^2-2", "2")).unwrap(), 2);
        assert_eq!(dvr_ram_index(&spec(2, "alg:X^2-2", "1")), Err(Error::MinimalPairUnknown));
        assert_eq!(dvr_ram_index(&spec(2, "trunc:a=5,N=10,e=3", "inf")).unwrap(), 3);
    }

    #[test]
    fn center_ideals() {
        assert_eq!(center_ideal(&spec(5, "rat:0", "0")).to_string(), "(5)");
        assert_eq!(center_ideal(&spec(2, "alg:X^2-2", "1/2")).to_string(), "(2, X)");
        assert_eq!(center_ideal(&spec(2, "alg:X^2+X+1", "1")).to_string(), "(2, X^2+X+1)");
        assert_eq!(center_ideal(&spec(3, "rat:4", "1")).to_string(), "(3, X+2)");
        assert_eq!(center_ideal(&spec(3, "trunc:a=7,N=5,e=1", "inf")).to_string(), "(3, X+2)");
    }

    #[test]
    fn orders() {
        let cmp = |a: &DvrSpec, b: &DvrSpec| order_compare(a, b).unwrap();
        assert_eq!(cmp(&spec(2, "rat:0", "1"), &spec(2, "rat:0", "2")), PolyOrder::Less);
        assert_eq!(cmp(&spec(2, "rat:0", "2"), &spec(2, "rat:0", "1")), PolyOrder::Greater);
        assert_eq!(cmp(&spec(2, "rat:0", "1"), &spec(2, "rat:1", "1")), PolyOrder::Incomparable);
        let s = spec(2, "alg:X^2-2", "1");
        assert_eq!(cmp(&s, &s), PolyOrder::Equal);
        assert_eq!(cmp(&spec(2, "rat:0", "1"), &spec(3, "rat:0", "1")), PolyOrder::DifferentPrime);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-30i64..30, 1i64..12), 1..6)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn gauss_is_min_coefficient_valuation(p in prop::sample::select(vec![2u64, 3, 5, 7]), f in small_poly()) {
            let got = mono_val(&DvrSpec::gauss(pr(p)), &f).unwrap();
            let want = f.min_coeff_valuation(pr(p)).map_or(ExtRational::Infinity, ExtRational::from);
            prop_assert_eq!(got, want);
        }

        #[test]
        fn scaling(c in (1i64..50, 1i64..50), f in small_poly(), alg in any::<bool>()) {
            let s = if alg { spec(2, "alg:X^2-2", "3/2") } else { spec(2, "rat:3", "1/2") };
            let c = rat(c.0, c.1);
            let lhs = mono_val(&s, &f.scale(&c)).unwrap();
            let rhs = ExtRational::from(vp(pr(2), &c).unwrap()) + mono_val(&s, &f).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn degree_one_algebraic_matches_rational(a in -40i64..40, d in 0i64..5, f in small_poly()) {
            let q = Poly::linear(&int(a));
            let cert = certify_qp_irreducible(pr(3), &q).unwrap();
            let alg = DvrSpec { p: pr(3), center: Center::Algebraic { q, cert }, radius: int(d).into() };
            let rational = DvrSpec { p: pr(3), center: Center::Rational(int(a)), radius: int(d).into() };
            prop_assert_eq!(mono_val(&alg, &f).unwrap(), mono_val(&rational, &f).unwrap());
        }
    }
}
