//! Containment and equality of Galois orbits of closed balls `B_p(α, δ)`,
//! and reduction of a finite family to pairwise incomparable representatives.
//!
//! `orbit_contains(outer, inner)` holds iff some conjugate of the inner ball
//! lies in the outer ball, i.e. `W_outer ∩ Q[X] ⊆ W_inner ∩ Q[X]`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::algext::per_root_distances;
use crate::error::{Error, Result};
use crate::exactnum::{vp, ExtRational, Rational};
use crate::exec::Exec;
use crate::monoval::{Center, DvrSpec};

fn same_prime(a: &DvrSpec, b: &DvrSpec) -> Result<()> {
    match a.p() == b.p() {
        true => Ok(()),
        false => Err(Error::DifferentPrime(a.p().get(), b.p().get())),
    }
}

pub fn orbit_contains(outer: &DvrSpec, inner: &DvrSpec) -> Result<bool> {
    same_prime(outer, inner)?;
    match outer.radius() {
        ExtRational::Infinity => match inner.radius() {
            ExtRational::Infinity => same_singleton(outer, inner),
            ExtRational::Finite(_) => Ok(false),
        },
        ExtRational::Finite(delta) => {
            if inner.radius() < outer.radius() {
                return Ok(false);
            }
            if let Center::Truncated { precision, .. } = inner.center() {
                if delta > &Rational::from_integer((*precision).into()) {
                    return Err(Error::RadiusExceedsPrecision { radius: delta.to_string(), precision: *precision });
                }
            }
            let spectrum = per_root_distances(outer.p(), &inner.center().point_poly(), &outer.center().point_poly())?;
            Ok(spectrum.max().is_some_and(|m| m >= outer.radius()))
        }
    }
}

/// Singleton balls around two truncated transcendental centers: equal when
/// the specs coincide, distinct when the truncations already differ below
/// both precisions, undecided otherwise.
fn same_singleton(a: &DvrSpec, b: &DvrSpec) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    let (Center::Truncated { a: x, precision: n1, .. }, Center::Truncated { a: y, precision: n2, .. }) =
        (a.center(), b.center())
    else {
        unreachable!("only truncated centers carry an infinite radius");
    };
    let n = (*n1).min(*n2);
    match vp(a.p(), &(x - y)) {
        Some(v) if v < i64::from(n) => Ok(false),
        _ => Err(Error::InsufficientPrecision { precision: n }),
    }
}

pub fn orbit_equal(s1: &DvrSpec, s2: &DvrSpec) -> Result<bool> {
    same_prime(s1, s2)?;
    if s1.radius() != s2.radius() {
        return Ok(false);
    }
    orbit_contains(s1, s2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Removal {
    /// Same ball orbit as a kept spec.
    Duplicate { of: String },
    /// Ball orbit contained in a larger kept ball; its DVR is an overring of
    /// the remaining intersection.
    Contained { in_spec: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub kept: Vec<DvrSpec>,
    pub removed: Vec<(DvrSpec, Removal)>,
}

pub fn canonical_cmp(a: &DvrSpec, b: &DvrSpec) -> Ordering {
    a.sort_key().cmp(&b.sort_key())
}

pub fn reduce_family(specs: &[DvrSpec]) -> Result<Reduction> {
    reduce_family_with(specs, Exec::default())
}

pub fn reduce_family_with(specs: &[DvrSpec], exec: Exec) -> Result<Reduction> {
    let mut sorted = specs.to_vec();
    sorted.sort_by(canonical_cmp);
    if let Some(first) = sorted.first() {
        sorted.iter().try_for_each(|s| same_prime(first, s))?;
    }

    let mut distinct: Vec<DvrSpec> = Vec::new();
    let mut removed = Vec::new();
    for s in sorted {
        let mut dup = None;
        for d in &distinct {
            if orbit_equal(d, &s)? {
                dup = Some(d.to_string());
                break;
            }
        }
        match dup {
            Some(of) => removed.push((s, Removal::Duplicate { of })),
            None => distinct.push(s),
        }
    }

    // contains[i][j]: ball j sits inside ball i. Distinct orbits make this a
    // strict partial order, so the maximal elements are the unique result.
    let n = distinct.len();
    let rows = exec.try_map(&(0..n).collect::<Vec<_>>(), |&i| {
        (0..n)
            .map(|j| if i == j { Ok(false) } else { orbit_contains(&distinct[i], &distinct[j]) })
            .collect::<Result<Vec<bool>>>()
    })?;
    let container = |j: usize| (0..n).find(|&i| rows[i][j] && (0..n).all(|k| !rows[k][i]));
    let mut kept = Vec::new();
    for (j, s) in distinct.iter().enumerate() {
        match container(j) {
            Some(i) => removed.push((s.clone(), Removal::Contained { in_spec: distinct[i].to_string() })),
            None => kept.push(s.clone()),
        }
    }
    Ok(Reduction { kept, removed })
}
