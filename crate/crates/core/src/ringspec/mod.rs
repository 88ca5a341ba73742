//! The ring `R = ⋂_p ⋂_j (W_{p,j} ∩ Q[X])` given by a finite table of DVR
//! families and a default rule for every prime outside the table.
//!
//! With an empty table and default `none` the ring is `Q[X]`; with default
//! `gauss` it is `Z[X]`.

mod classify;
mod construct;
mod maximal;
mod member;
mod probe;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::ballcalc::{canonical_cmp, reduce_family_with, Removal};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, small_prime_factors, Prime, Rational};
use crate::exec::Exec;
use crate::monoval::{Center, CenterSpec, DvrSpec};

pub use classify::{class_group, classify, classify_with, Classification, KrullVerdict};
pub use construct::construct_with_class_group;
pub use maximal::{
    nonunitary_prime_is_maximal, spectrum_summary, unitary_prime_is_maximal, NonunitaryReport, SpectrumReport,
    UnitaryPrime,
};
pub use member::{member, member_with, MemberWitness, Membership};
pub use probe::{probe_finite_character, probe_finite_character_with, ProbeReport, ProbeVerdict};

/// What happens at primes outside the table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DefaultRule {
    /// No condition: those primes are inverted.
    None,
    /// `Z_(p)[X]` at every remaining prime.
    Gauss,
    /// `Z_(p),c,r ∩ Q[X]` at every remaining prime.
    Rule { center: Rational, radius: Rational },
}

impl fmt::Display for DefaultRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefaultRule::None => f.write_str("none"),
            DefaultRule::Gauss => f.write_str("gauss"),
            DefaultRule::Rule { center, radius } => write!(f, "rule(rat:{center}, {radius})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    table: BTreeMap<Prime, Vec<DvrSpec>>,
    default: DefaultRule,
}

impl RingSpec {
    pub fn new(table: BTreeMap<Prime, Vec<DvrSpec>>, default: DefaultRule) -> Result<Self> {
        let mut table = table;
        for (p, family) in table.iter_mut() {
            if family.is_empty() {
                return Err(Error::InvalidInput(format!("empty family at prime {p}")));
            }
            if let Some(s) = family.iter().find(|s| s.p() != *p) {
                return Err(Error::PrimeMismatch { key: p.get(), spec: s.p().get() });
            }
            family.sort_by(canonical_cmp);
        }
        if let DefaultRule::Rule { center, radius } = &default {
            if radius.is_negative() {
                return Err(Error::NegativeRadius(radius.to_string()));
            }
            if radius.is_zero() {
                return Err(Error::InvalidInput("rule radius 0 is the gauss default".into()));
            }
            let den = center.denom();
            let primes = small_prime_factors(den)
                .ok_or_else(|| Error::RuleNotDecidable(format!("cannot factor rule center denominator {den}")))?;
            if let Some(&p) = primes.iter().find(|&&p| !table.keys().any(|k| k.get() == p)) {
                return Err(Error::RuleCenterNotIntegral(p));
            }
        }
        Ok(RingSpec { table, default })
    }

    pub fn empty(default: DefaultRule) -> Self {
        RingSpec { table: BTreeMap::new(), default }
    }

    /// Builds a ring from `(p, [(center, radius)])` text entries.
    pub fn from_entries(entries: &[(u64, &[(&str, &str)])], default: DefaultRule) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (p, family) in entries {
            let p = Prime::new(*p)?;
            let specs = family.iter().map(|(c, r)| DvrSpec::parse(p, c, r)).collect::<Result<Vec<_>>>()?;
            table.entry(p).or_insert_with(Vec::new).extend(specs);
        }
        RingSpec::new(table, default)
    }

    pub fn table(&self) -> &BTreeMap<Prime, Vec<DvrSpec>> {
        &self.table
    }

    pub fn default_rule(&self) -> &DefaultRule {
        &self.default
    }

    pub fn in_table(&self, p: u64) -> bool {
        self.table.keys().any(|k| k.get() == p)
    }

    /// `(p, j)` with 1-based `j`.
    pub fn spec(&self, p: Prime, j: usize) -> Result<&DvrSpec> {
        self.table
            .get(&p)
            .and_then(|f| j.checked_sub(1).and_then(|i| f.get(i)))
            .ok_or(Error::IndexOutOfRange { p: p.get(), index: j })
    }

    /// Every table spec with its prime and 1-based index, in report order.
    pub fn indexed_specs(&self) -> Vec<(Prime, usize, &DvrSpec)> {
        self.table
            .iter()
            .flat_map(|(p, f)| f.iter().enumerate().map(move |(i, s)| (*p, i + 1, s)))
            .collect()
    }

    /// Irredundant representation: each family passed through `reduce_family`.
    pub fn reduced(&self) -> Result<(RingSpec, Vec<(DvrSpec, Removal)>)> {
        self.reduced_with(Exec::default())
    }

    pub fn reduced_with(&self, exec: Exec) -> Result<(RingSpec, Vec<(DvrSpec, Removal)>)> {
        let mut table = BTreeMap::new();
        let mut removed = Vec::new();
        for (p, family) in &self.table {
            let r = reduce_family_with(family, exec)?;
            table.insert(*p, r.kept);
            removed.extend(r.removed);
        }
        Ok((RingSpec { table, default: self.default.clone() }, removed))
    }

    /// Statements the results depend on but the tool cannot verify.
    pub fn assumptions(&self) -> Vec<String> {
        self.indexed_specs()
            .into_iter()
            .filter_map(|(p, j, s)| match s.center() {
                Center::Truncated { declared_e, .. } => Some(format!(
                    "center of ({p}, j={j}) {} is asserted transcendental over Q with ramification index {declared_e}",
                    s.center()
                )),
                _ => None,
            })
            .collect()
    }

    pub fn to_json_value(&self) -> Value {
        let mut table = Map::new();
        for (p, family) in &self.table {
            let specs = family
                .iter()
                .map(|s| json!({"center": s.center().to_string(), "radius": s.radius().to_string()}))
                .collect();
            table.insert(p.to_string(), Value::Array(specs));
        }
        let default = match &self.default {
            DefaultRule::None => json!("none"),
            DefaultRule::Gauss => json!("gauss"),
            DefaultRule::Rule { center, radius } => {
                json!({"center": format!("rat:{center}"), "radius": radius.to_string()})
            }
        };
        json!({"table": table, "default": default})
    }

    /// Canonical JSON: primes ascending, specs by (radius, center text).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("JSON values serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("ring JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("ring JSON: {what}"));
        let obj = value.as_object().ok_or_else(|| bad("top level must be an object"))?;
        if let Some(key) = obj.keys().find(|k| *k != "table" && *k != "default") {
            return Err(bad(&format!("unknown field {key:?}")));
        }
        let mut table = BTreeMap::new();
        if let Some(t) = obj.get("table") {
            let t = t.as_object().ok_or_else(|| bad("table must be an object"))?;
            for (key, family) in t {
                let p = Prime::parse(key)?;
                let family = family.as_array().ok_or_else(|| bad("family must be an array"))?;
                let specs = family
                    .iter()
                    .map(|entry| {
                        let (c, r) = center_radius(entry).ok_or_else(|| bad("spec needs string center and radius"))?;
                        DvrSpec::new(p, c.parse()?, r.parse()?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                table.insert(p, specs);
            }
        }
        let default = match obj.get("default") {
            None => DefaultRule::None,
            Some(Value::String(s)) => match s.trim().to_ascii_lowercase().as_str() {
                "none" => DefaultRule::None,
                "gauss" => DefaultRule::Gauss,
                other => return Err(bad(&format!("unknown default {other:?}"))),
            },
            Some(v @ Value::Object(_)) => {
                let (c, r) = center_radius(v).ok_or_else(|| bad("default rule needs string center and radius"))?;
                let center = match c.parse::<CenterSpec>()? {
                    CenterSpec::Rational(a) => a,
                    _ => return Err(bad("default rule center must be rat:")),
                };
                DefaultRule::Rule { center, radius: parse_rational(r)? }
            }
            Some(_) => return Err(bad("default must be a string or an object")),
        };
        RingSpec::new(table, default)
    }
}

fn center_radius(v: &Value) -> Option<(&str, &str)> {
    let o = v.as_object()?;
    if o.len() != 2 {
        return None;
    }
    Some((o.get("center")?.as_str()?, o.get("radius")?.as_str()?))
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .table
            .iter()
            .map(|(p, fam)| {
                let specs: Vec<String> = fam.iter().map(|s| format!("({}, {})", s.center(), s.radius())).collect();
                format!("{p}: [{}]", specs.join(", "))
            })
            .collect();
        write!(f, "{{{}}} default {}", parts.join(", "), self.default)
    }
}
