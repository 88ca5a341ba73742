use num_traits::Zero;
use serde::Serialize;

use super::{DefaultRule, RingSpec};
use crate::error::{Error, Result};
use crate::exactnum::{primes_up_to, residue_mod_p, Prime};
use crate::exec::Exec;
use crate::monoval::mono_val;
use crate::polyarith::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "support")]
pub enum ProbeVerdict {
    AllPrimesHit,
    FiniteSupport(Vec<u64>),
}

/// The primes `p ≤ bound` of `Λ` at which `g` lies in some center ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub polynomial: String,
    pub bound: u64,
    pub primes_in_lambda: usize,
    pub hits: Vec<u64>,
    /// `hits / primes_in_lambda`, exact.
    pub density: String,
    pub verdict: ProbeVerdict,
    /// Proof that the hit set is infinite, when one is available.
    pub unbounded: Option<String>,
}

pub fn probe_finite_character(ring: &RingSpec, g: &Poly, bound: u64) -> Result<ProbeReport> {
    probe_finite_character_with(ring, g, bound, Exec::default())
}

pub fn probe_finite_character_with(ring: &RingSpec, g: &Poly, bound: u64, exec: Exec) -> Result<ProbeReport> {
    if g.is_zero() || !g.has_integer_coeffs() {
        return Err(Error::InvalidInput(format!("probe needs a nonzero integer polynomial, got {g}")));
    }
    let primes: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|&p| ring.in_table(p) || *ring.default_rule() != DefaultRule::None)
        .collect();
    let hit = exec.try_map(&primes, |&p| -> Result<bool> {
        let prime = Prime::new(p).expect("sieved prime");
        if let Some(family) = ring.table().get(&prime) {
            for s in family {
                if mono_val(s, g)?.is_positive() {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        Ok(match ring.default_rule() {
            DefaultRule::None => false,
            DefaultRule::Gauss => g.min_coeff_valuation(prime).is_some_and(|v| v > 0),
            DefaultRule::Rule { center, .. } => residue_mod_p(prime, &g.eval(center)) == Some(0),
        })
    })?;
    let hits: Vec<u64> = primes.iter().zip(&hit).filter(|(_, h)| **h).map(|(p, _)| *p).collect();

    let unbounded = match ring.default_rule() {
        DefaultRule::Rule { center, .. } if g.eval(center).is_zero() => Some(format!(
            "{g} vanishes at the rule center {center}, so it lies in the center ideal at every prime outside the table"
        )),
        _ => None,
    };
    let verdict = if !primes.is_empty() && hits.len() == primes.len() {
        ProbeVerdict::AllPrimesHit
    } else {
        ProbeVerdict::FiniteSupport(hits.clone())
    };
    Ok(ProbeReport {
        polynomial: g.to_string(),
        bound,
        primes_in_lambda: primes.len(),
        density: format!("{}/{}", hits.len(), primes.len()),
        hits,
        verdict,
        unbounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let rule = RingSpec::empty(DefaultRule::Rule { center: int(0), radius: int(1) });
        let r = probe_finite_character(&rule, &poly("X"), 100).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::AllPrimesHit);
        assert_eq!(r.hits.len(), 25);
        assert!(r.unbounded.is_some());
        let r = probe_finite_character(&rule, &poly("X-1"), 100).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::FiniteSupport(vec![]));
        assert!(r.unbounded.is_none());

        let gauss = RingSpec::empty(DefaultRule::Gauss);
        let r = probe_finite_character(&gauss, &poly("6X+3"), 100).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::FiniteSupport(vec![3]));
        assert_eq!(r.density, "1/25");
    }

    #[test]
    fn table_primes() {
        let ring = RingSpec::from_entries(&[(2, &[("rat:0", "1/2")]), (5, &[("rat:1", "1")])], DefaultRule::None).unwrap();
        let r = probe_finite_character(&ring, &poly("X"), 50).unwrap();
        assert_eq!(r.hits, vec![2]);
        assert_eq!(r.primes_in_lambda, 2);
        let r = probe_finite_character(&ring, &poly("X^2-X"), 50).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::AllPrimesHit);
        assert!(probe_finite_character(&ring, &poly("1/2X"), 50).is_err());
        let seq = probe_finite_character_with(&ring, &poly("X^2-X"), 50, Exec::Sequential).unwrap();
        assert_eq!(seq, r);
    }
}
