use num_traits::Zero;
use serde::Serialize;

use super::{DefaultRule, RingSpec};
use crate::algext::per_root_distances;
use crate::error::{Error, Result};
use crate::exactnum::{is_prime_u64, small_prime_factors, ExtRational, Prime, Rational};
use crate::monoval::{center_ideal, Center};
use crate::polyarith::{is_irreducible_over_q, newton_root_valuations, Poly};

/// `M_{p,j} ∩ R` is maximal iff the DVR is residually algebraic, i.e. the
/// radius is infinite. `j` is 1-based.
pub fn unitary_prime_is_maximal(ring: &RingSpec, p: Prime, j: usize) -> Result<bool> {
    Ok(ring.spec(p, j)?.radius().is_infinite())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonunitaryReport {
    pub maximal: bool,
    /// Where a root of `q` falls inside a ball of the ring, if anywhere.
    pub witness: Option<String>,
}

/// `qQ[X] ∩ R` is maximal iff no root of `q` lies in any ball of the ring.
pub fn nonunitary_prime_is_maximal(ring: &RingSpec, q: &Poly) -> Result<NonunitaryReport> {
    if !is_irreducible_over_q(q)? {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    let q = q.monic();
    let not_maximal = |witness: String| Ok(NonunitaryReport { maximal: false, witness: Some(witness) });

    for (p, j, s) in ring.indexed_specs() {
        let ExtRational::Finite(delta) = s.radius() else {
            // A transcendental center is never a root of q.
            continue;
        };
        if let Center::Truncated { .. } = s.center() {
            unreachable!("finite radius never carries a truncated center");
        }
        let spectrum = per_root_distances(p, &s.center().point_poly(), &q)?;
        if spectrum.max().is_some_and(|m| m >= &ExtRational::Finite(delta.clone())) {
            return not_maximal(format!("a root of {q} lies in the ball of ({p}, j={j}) {s}"));
        }
    }

    match ring.default_rule() {
        DefaultRule::None => {}
        DefaultRule::Gauss => {
            // Some root lies in O_p at every prime not dividing a denominator.
            let p = (2u64..)
                .filter(|&p| is_prime_u64(p) && !ring.in_table(p))
                .find(|&p| root_in_ball(Prime::new(p).expect("prime"), &q, None).unwrap_or(false))
                .expect("all but finitely many primes qualify");
            return not_maximal(format!("{q} has a root in O_{p} (gauss default at {p})"));
        }
        DefaultRule::Rule { center, radius } => {
            let value = q.eval(center);
            if value.is_zero() {
                let p = (2u64..).find(|&p| is_prime_u64(p) && !ring.in_table(p)).expect("infinitely many primes");
                return not_maximal(format!("{q} vanishes at the rule center (default at {p})"));
            }
            // Elsewhere every root is integral and the product of the
            // distances to the center is a unit.
            let candidates = value.numer() * q.denominator();
            let primes = small_prime_factors(&candidates)
                .ok_or_else(|| Error::RuleNotDecidable(format!("cannot factor {candidates}")))?;
            for p in primes.into_iter().filter(|&p| !ring.in_table(p)) {
                let prime = Prime::new(p).expect("factor is prime");
                if root_in_ball(prime, &q, Some((center, radius)))? {
                    return not_maximal(format!("a root of {q} lies in the default ball at {p}"));
                }
            }
        }
    }
    Ok(NonunitaryReport { maximal: true, witness: None })
}

/// Whether some root of `q` lies in `B_p(c, r)`, or in `O_p` for `None`.
fn root_in_ball(p: Prime, q: &Poly, ball: Option<(&Rational, &Rational)>) -> Result<bool> {
    Ok(match ball {
        None => newton_root_valuations(p, q)?.max().is_some_and(|m| !m.is_negative()),
        Some((c, r)) => per_root_distances(p, &Poly::linear(c), q)?
            .max()
            .is_some_and(|m| m >= &ExtRational::Finite(r.clone())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitaryPrime {
    pub p: u64,
    pub j: usize,
    pub spec: String,
    pub maximal: bool,
    pub center_ideal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub unitary: Vec<UnitaryPrime>,
    pub nonunitary: String,
    pub default_primes: Option<String>,
    pub removed: Vec<String>,
}

/// Height-one primes of the irredundant representation.
pub fn spectrum_summary(ring: &RingSpec) -> Result<SpectrumReport> {
    let (reduced, removed) = ring.reduced()?;
    let unitary = reduced
        .indexed_specs()
        .into_iter()
        .map(|(p, j, s)| UnitaryPrime {
            p: p.get(),
            j,
            spec: s.to_string(),
            maximal: s.radius().is_infinite(),
            center_ideal: center_ideal(s).to_string(),
        })
        .collect();
    let default_primes = match reduced.default_rule() {
        DefaultRule::None => None,
        DefaultRule::Gauss => Some("pZ[X] ∩ R for every prime p outside the table, non-maximal".into()),
        DefaultRule::Rule { center, radius } => Some(format!(
            "one unitary prime with center ideal (p, X - {center}) for every prime p outside the table, radius {radius}, non-maximal"
        )),
    };
    Ok(SpectrumReport {
        unitary,
        nonunitary: "fQ[X] ∩ R for f irreducible over Q".into(),
        default_primes,
        removed: removed.into_iter().map(|(s, _)| s.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn two() -> Prime {
        Prime::new(2).unwrap()
    }

    #[test]
    fn unitary() {
        let r = |c: &str, d: &str| RingSpec::from_entries(&[(2, &[(c, d)])], DefaultRule::None).unwrap();
        assert!(unitary_prime_is_maximal(&r("trunc:a=5,N=9,e=1", "inf"), two(), 1).unwrap());
        assert!(!unitary_prime_is_maximal(&r("rat:0", "1/2"), two(), 1).unwrap());
        assert!(!unitary_prime_is_maximal(&r("rat:0", "0"), two(), 1).unwrap());
        assert_eq!(
            unitary_prime_is_maximal(&r("rat:0", "0"), two(), 2),
            Err(Error::IndexOutOfRange { p: 2, index: 2 })
        );
    }

    #[test]
    fn nonunitary() {
        let ring = RingSpec::from_entries(&[(2, &[("rat:0", "1/2")])], DefaultRule::None).unwrap();
        let max = |q: &str| nonunitary_prime_is_maximal(&ring, &poly(q)).unwrap().maximal;
        assert!(!max("X^2-2"));
        assert!(max("X^2+X+1"));
        assert!(max("X-5"));
        assert!(!max("X-4"));
        assert_eq!(nonunitary_prime_is_maximal(&ring, &poly("X^2-1")), Err(Error::NotIrreducible("X^2-1".into())));

        let zx = RingSpec::empty(DefaultRule::Gauss);
        let r = nonunitary_prime_is_maximal(&zx, &poly("X^2-2")).unwrap();
        assert!(!r.maximal);
        assert!(r.witness.unwrap().contains("O_2"));
        assert!(!nonunitary_prime_is_maximal(&zx, &poly("1/6X-1")).unwrap().maximal);

        let truncated = RingSpec::from_entries(&[(2, &[("trunc:a=5,N=9,e=1", "inf")])], DefaultRule::None).unwrap();
        assert!(nonunitary_prime_is_maximal(&truncated, &poly("X-5")).unwrap().maximal);
    }

    #[test]
    fn nonunitary_rule_default() {
        let rule = RingSpec::empty(DefaultRule::Rule { center: int(0), radius: int(1) });
        let max = |q: &str| nonunitary_prime_is_maximal(&rule, &poly(q)).unwrap().maximal;
        assert!(!max("X"));
        assert!(!max("X-6"));
        assert!(max("X-1"));
        assert!(max("X^2-3"));
        assert!(!max("X^2+3X+9"));
        assert!(max("X^2+X+1"));
        assert!(!max("X^2+X+7"));
    }

    #[test]
    fn summaries() {
        let s = spectrum_summary(&RingSpec::from_entries(&[(2, &[("rat:0", "1/2")])], DefaultRule::None).unwrap()).unwrap();
        assert_eq!(s.unitary.len(), 1);
        assert!(!s.unitary[0].maximal);
        assert_eq!(s.unitary[0].center_ideal, "(2, X)");
        let s = spectrum_summary(&RingSpec::empty(DefaultRule::None)).unwrap();
        assert!(s.unitary.is_empty() && s.default_primes.is_none());
        let s = spectrum_summary(&RingSpec::from_entries(&[(2, &[("trunc:a=5,N=9,e=1", "inf")])], DefaultRule::None).unwrap()).unwrap();
        assert!(s.unitary[0].maximal);
    }
}
