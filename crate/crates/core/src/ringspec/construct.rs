use std::collections::BTreeMap;

use super::{class_group, DefaultRule, RingSpec};
use crate::error::{Error, Result};
use crate::exactnum::{vp, AbelianGroupInv, ExtRational, Prime, Rational};
use crate::monoval::{CenterSpec, DvrSpec};

/// A ring with finite table, default `none` and class group `g`.
///
/// For `g = Z/e_1 ⊕ … ⊕ Z/e_n ⊕ Z^m` the first `n - 1` pool primes get one
/// ball of radius `1/e_i`; the `n`-th gets `m + 1` disjoint balls around
/// `0, 1, …, m` of radius `N + 1/e_n`.
pub fn construct_with_class_group(g: &AbelianGroupInv, pool: &[Prime]) -> Result<RingSpec> {
    let torsion = if g.torsion.is_empty() { vec![1] } else { g.torsion.clone() };
    let n = torsion.len();
    if pool.len() < n {
        return Err(Error::PoolTooSmall { have: pool.len(), need: n });
    }
    let mut seen = pool[..n].to_vec();
    seen.sort();
    seen.dedup();
    if seen.len() < n {
        return Err(Error::InvalidInput("prime pool has repeated primes".into()));
    }

    let rat = |k: u64| Rational::from_integer(k.into());
    let mut table = BTreeMap::new();
    for (&p, &e) in pool.iter().zip(&torsion[..n - 1]) {
        table.insert(p, vec![DvrSpec::rational(p, rat(0), Rational::new(1.into(), e.into()))?]);
    }
    let p = pool[n - 1];
    let m = g.free_rank as u64;
    let separation = (0..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| j - i))
        .map(|d| vp(p, &rat(d)).expect("nonzero difference"))
        .max()
        .unwrap_or(0);
    let radius = rat(separation as u64) + Rational::new(1.into(), torsion[n - 1].into());
    let family = (0..=m)
        .map(|i| DvrSpec::new(p, CenterSpec::Rational(rat(i)), ExtRational::Finite(radius.clone())))
        .collect::<Result<Vec<_>>>()?;
    table.insert(p, family);

    let ring = RingSpec::new(table, DefaultRule::None)?;
    let (reduced, removed) = ring.reduced()?;
    if !removed.is_empty() || reduced != ring {
        return Err(Error::ConstructionCheck(format!("{} specs became redundant", removed.len())));
    }
    let got = class_group(&ring)?;
    if &got != g {
        return Err(Error::ConstructionCheck(format!("class group {got}, wanted {g}")));
    }
    Ok(ring)
}
