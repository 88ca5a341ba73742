use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::{probe_finite_character_with, DefaultRule, RingSpec};
use crate::algext::CertKind;
use crate::error::{Error, Result};
use crate::exactnum::{canonicalize_group, AbelianGroupInv, ExtRational};
use crate::exec::Exec;
use crate::monoval::{dvr_ram_index, Center, DvrSpec};
use crate::polyarith::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KrullVerdict {
    Yes,
    No { witness: String },
    /// No probe polynomial up to the bound exhibited infinite support.
    ConditionalYes { bound: u64 },
}

/// Flags and class group are `None` when the ring is not Krull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub krull: KrullVerdict,
    pub dedekind: Option<bool>,
    pub almost_dedekind: Option<bool>,
    pub ufd: Option<bool>,
    pub pure: Option<bool>,
    pub class_group: Option<AbelianGroupInv>,
    /// Specs dropped by the irredundancy reduction, with reasons.
    pub removed: Vec<(String, String)>,
    pub assumptions: Vec<String>,
}

pub fn classify(ring: &RingSpec, bound: u64) -> Result<Classification> {
    classify_with(ring, bound, Exec::default())
}

pub fn classify_with(ring: &RingSpec, bound: u64, exec: Exec) -> Result<Classification> {
    let (ring, removed) = ring.reduced_with(exec)?;
    let removed = removed
        .into_iter()
        .map(|(s, why)| (s.to_string(), serde_json::to_string(&why).expect("serializable")))
        .collect();
    let mut assumptions = ring.assumptions();
    let krull = krull_verdict(&ring, bound, exec, &mut assumptions)?;
    if matches!(krull, KrullVerdict::No { .. }) {
        return Ok(Classification {
            krull,
            dedekind: None,
            almost_dedekind: None,
            ufd: None,
            pure: None,
            class_group: None,
            removed,
            assumptions,
        });
    }
    let class_group = reduced_class_group(&ring, exec)?;
    let specs = ring.indexed_specs();
    let all_infinite = specs.iter().all(|(_, _, s)| s.radius().is_infinite());
    let dedekind = all_infinite && *ring.default_rule() == DefaultRule::None;
    let pure = specs.iter().all(|(_, _, s)| !s.radius().is_infinite());
    let ufd = class_group.is_trivial()
        && matches!(ring.default_rule(), DefaultRule::None | DefaultRule::Gauss)
        && ring.table().values().all(|family| family.len() == 1 && unramified_integral(&family[0]));
    Ok(Classification {
        krull,
        dedekind: Some(dedekind),
        almost_dedekind: Some(dedekind),
        ufd: Some(ufd),
        pure: Some(pure),
        class_group: Some(class_group),
        removed,
        assumptions,
    })
}

fn krull_verdict(ring: &RingSpec, bound: u64, exec: Exec, assumptions: &mut Vec<String>) -> Result<KrullVerdict> {
    let DefaultRule::Rule { center, .. } = ring.default_rule() else {
        return Ok(KrullVerdict::Yes);
    };
    assumptions.push("irredundancy is checked on the finite table only, not across default primes".into());
    let generator = Poly::from_bigints(&[-center.numer().clone(), center.denom().clone()]);
    let battery = [Poly::x(), Poly::from_ints(&[-1, 1]), Poly::from_ints(&[1, 1]), generator];
    for g in &battery {
        let report = probe_finite_character_with(ring, g, bound, exec)?;
        if let Some(proof) = report.unbounded {
            return Ok(KrullVerdict::No { witness: proof });
        }
    }
    assumptions.push(format!("finite character probed only for primes up to {bound}"));
    Ok(KrullVerdict::ConditionalYes { bound })
}

fn unramified_integral(s: &DvrSpec) -> bool {
    let integral = match s.radius() {
        ExtRational::Finite(d) => d.is_integer(),
        ExtRational::Infinity => true,
    };
    let unramified = match s.center() {
        Center::Rational(_) => true,
        Center::Algebraic { cert, .. } => matches!(cert.kind, CertKind::Unramified | CertKind::DegreeOne),
        Center::Truncated { declared_e, .. } => *declared_e == 1,
    };
    integral && unramified
}

/// `⊕_p (Z/d_p ⊕ Z^(m_p - 1))` with `d_p` the gcd of the ramification
/// indices of the family at `p`.
pub fn class_group(ring: &RingSpec) -> Result<AbelianGroupInv> {
    let (reduced, _) = ring.reduced()?;
    if let DefaultRule::Rule { .. } = ring.default_rule() {
        if let KrullVerdict::No { witness } = krull_verdict(&reduced, 0, Exec::default(), &mut Vec::new())? {
            return Err(Error::NotKrull(witness));
        }
    }
    reduced_class_group(&reduced, Exec::default())
}

fn reduced_class_group(ring: &RingSpec, exec: Exec) -> Result<AbelianGroupInv> {
    let families: Vec<&Vec<DvrSpec>> = ring.table().values().collect();
    let per_prime = exec.try_map(&families, |family| -> Result<Vec<u64>> {
        let d = family.iter().try_fold(0u64, |g, s| Ok::<_, Error>(g.gcd(&dvr_ram_index(s)?)))?;
        let mut summands = vec![d];
        summands.extend(std::iter::repeat_n(0, family.len() - 1));
        Ok(summands)
    })?;
    let all: Vec<u64> = per_prime.into_iter().flatten().filter(|d| !d.is_one()).collect();
    Ok(canonicalize_group(&all))
}
