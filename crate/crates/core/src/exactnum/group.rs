use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Invariant-factor form of a finitely generated abelian group:
/// `Z/t_1 ⊕ … ⊕ Z/t_k ⊕ Z^r` with `t_1 | t_2 | … | t_k` and every `t_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroupInv {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianGroupInv {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Summand list in the CLI encoding: torsion moduli, then one `0` per `Z`.
    pub fn summands(&self) -> Vec<u64> {
        let mut out = self.torsion.clone();
        out.extend(std::iter::repeat_n(0, self.free_rank));
        out
    }

    /// Parses a comma list such as `"2,6,0,0"`; `0` stands for a copy of `Z`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Self::trivial());
        }
        let moduli = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid group modulus {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(canonicalize_group(&moduli))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.summands();
        all.extend(other.summands());
        canonicalize_group(&all)
    }
}

impl fmt::Display for AbelianGroupInv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Normalizes `⊕ Z/d_i` (with `d_i = 0` meaning `Z`) to invariant factors.
pub fn canonicalize_group(moduli: &[u64]) -> AbelianGroupInv {
    let free_rank = moduli.iter().filter(|&&d| d == 0).count();
    let mut t: Vec<u64> = moduli.iter().copied().filter(|&d| d > 1).collect();
    t.sort_unstable();
    // After pass i, t[i] is the gcd of t[i..] and divides every later entry.
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let (a, b) = (t[i], t[j]);
            let g = a.gcd(&b);
            t[i] = g;
            t[j] = (a / g).checked_mul(b).expect("invariant factor overflows u64");
        }
    }
    t.retain(|&d| d > 1);
    AbelianGroupInv { torsion: t, free_rank }
}
