use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::{DefaultRule, RingSpec};
use crate::error::{Error, Result};
use crate::exactnum::{small_prime_factors, ExtRational, Prime};
use crate::exec::Exec;
use crate::monoval::{expansion_value, mono_val};
use crate::polyarith::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MemberWitness {
    /// Every table spec and every default prime that could fail was checked.
    Passed { table_specs: usize, default_primes_checked: Vec<u64> },
    TableSpec { p: u64, j: usize, spec: String, value: ExtRational },
    Default { p: u64, value: ExtRational },
    /// Gauss default fails at some prime dividing this cofactor, which has
    /// no small prime factor.
    DefaultCofactor { cofactor: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: MemberWitness,
}

pub fn member(ring: &RingSpec, f: &Poly) -> Result<Membership> {
    member_with(ring, f, Exec::default())
}

pub fn member_with(ring: &RingSpec, f: &Poly, exec: Exec) -> Result<Membership> {
    let fail = |witness| Ok(Membership { member: false, witness });
    let specs = ring.indexed_specs();
    let values = exec.map(&specs, |(_, _, s)| mono_val(s, f));
    for ((p, j, s), value) in specs.iter().zip(values) {
        let value = value?;
        if value.is_negative() {
            return fail(MemberWitness::TableSpec { p: p.get(), j: *j, spec: s.to_string(), value });
        }
    }

    let mut checked = Vec::new();
    match ring.default_rule() {
        DefaultRule::None => {}
        DefaultRule::Gauss => {
            let mut den = f.denominator();
            for p in ring.table().keys() {
                let p = p.get().into();
                while den.is_multiple_of(&p) {
                    den /= &p;
                }
            }
            if !den.is_one() {
                return match small_prime_factors(&den) {
                    Some(ps) => {
                        let p = Prime::new(ps[0]).expect("factor is prime");
                        let value = f.min_coeff_valuation(p).map_or(ExtRational::Infinity, ExtRational::from);
                        fail(MemberWitness::Default { p: p.get(), value })
                    }
                    None => fail(MemberWitness::DefaultCofactor { cofactor: den.to_string() }),
                };
            }
        }
        DefaultRule::Rule { center, radius } => {
            // Outside the denominators of f(X + c) every coefficient is
            // p-integral, so the value is at least 0.
            let den = f.shift_compose(center).denominator();
            let primes = small_prime_factors(&den)
                .ok_or_else(|| Error::RuleNotDecidable(format!("cannot factor denominator {den}")))?;
            for p in primes.into_iter().filter(|&p| !ring.in_table(p)) {
                let prime = Prime::new(p).expect("factor is prime");
                let value = expansion_value(prime, center, radius, f);
                checked.push(p);
                if value.is_negative() {
                    return fail(MemberWitness::Default { p, value });
                }
            }
        }
    }
    Ok(Membership { member: true, witness: MemberWitness::Passed { table_specs: specs.len(), default_primes_checked: checked } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let ring = RingSpec::from_entries(&[(2, &[("rat:0", "1")])], DefaultRule::Gauss).unwrap();
        assert!(member(&ring, &poly("1/4X^2+1/2X+2")).unwrap().member);
        let m = member(&ring, &poly("1/4X")).unwrap();
        assert!(!m.member);
        assert!(matches!(m.witness, MemberWitness::TableSpec { p: 2, j: 1, .. }));
        let m = member(&ring, &poly("1/3X")).unwrap();
        assert_eq!(m.witness, MemberWitness::Default { p: 3, value: ExtRational::from(-1) });
        assert!(member(&ring, &Poly::zero()).unwrap().member);
    }

    #[test]
    fn default_none_inverts_other_primes() {
        let ring = RingSpec::from_entries(&[(2, &[("rat:0", "1")])], DefaultRule::None).unwrap();
        assert!(member(&ring, &poly("1/3X")).unwrap().member);
        assert!(member(&RingSpec::empty(DefaultRule::None), &poly("1/7X^3+1/5")).unwrap().member);
    }

    #[test]
    fn rule_default() {
        let ring = RingSpec::empty(DefaultRule::Rule { center: rat(0, 1), radius: rat(1, 1) });
        assert!(member(&ring, &poly("1/3X")).unwrap().member);
        assert!(member(&ring, &poly("1/9X^2")).unwrap().member);
        let m = member(&ring, &poly("1/9X")).unwrap();
        assert_eq!(m.witness, MemberWitness::Default { p: 3, value: ExtRational::from(-1) });
        let m = member(&ring, &poly("1/3X+1/5")).unwrap();
        assert_eq!(m.witness, MemberWitness::Default { p: 5, value: ExtRational::from(-1) });
        assert_eq!(
            member(&ring, &poly("1/6X")).unwrap().witness,
            MemberWitness::Passed { table_specs: 0, default_primes_checked: vec![2, 3] }
        );
    }
}
