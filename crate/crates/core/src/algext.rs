//! Certified facts about algebraic elements of the integral closure of Z_p:
//! irreducibility certificates over Q_p, ramification and residue data,
//! root-distance spectra, Krasner bounds, minimal-pair status and counts
//! of conjugates inside a ball.
//!
//! Irreducibility over Q_p is never guessed. A center polynomial is accepted
//! only if one of four criteria verifies: degree one, irreducible mod p
//! (unramified), Eisenstein, or a Newton polygon with a single segment whose
//! slope has denominator equal to the degree (totally ramified).

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{vp, ExtRational, Prime, Rational};
use crate::polyarith::{difference_polynomial, newton_root_valuations, FpPoly, Poly, ValuationSpectrum};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CertKind {
    DegreeOne,
    Unramified,
    Eisenstein,
    /// Single Newton segment; the root valuation, in lowest terms.
    SingleSlope(Rational),
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertKind::DegreeOne => f.write_str("DegreeOne"),
            CertKind::Unramified => f.write_str("Unramified"),
            CertKind::Eisenstein => f.write_str("Eisenstein"),
            CertKind::SingleSlope(s) => write!(f, "SingleSlope({s})"),
        }
    }
}

impl Serialize for CertKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Proof that a monic polynomial is irreducible over Q_p with integral roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QpCertificate {
    pub kind: CertKind,
    pub degree: usize,
    pub witness: String,
}

pub fn certify_qp_irreducible(p: Prime, q: &Poly) -> Result<QpCertificate> {
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    let cannot = || Error::CannotCertify { p: p.get(), poly: q.to_string() };
    if n == 0 {
        return Err(cannot());
    }
    let q = q.monic();
    let spectrum = newton_root_valuations(p, &q)?;
    if spectrum.min().is_some_and(|v| v.is_negative()) {
        return Err(Error::RootsNotIntegral { p: p.get(), poly: q.to_string() });
    }
    let cert = |kind, witness: String| Ok(QpCertificate { kind, degree: n, witness });
    if n == 1 {
        return cert(CertKind::DegreeOne, "linear".into());
    }
    // Integral roots of a monic polynomial force p-integral coefficients.
    let reduced = FpPoly::reduce(p, &q).expect("integral roots imply p-integral coefficients");
    if reduced.is_irreducible() {
        return cert(CertKind::Unramified, format!("{q} mod {p} is irreducible over F_{p}"));
    }
    let coeffs = q.coeffs();
    let eisenstein = vp(p, &coeffs[0]) == Some(1)
        && coeffs[1..n].iter().all(|c| vp(p, c).is_none_or(|v| v >= 1));
    if eisenstein {
        return cert(CertKind::Eisenstein, format!("{q} is Eisenstein at {p}"));
    }
    let mut entries = spectrum.iter();
    if let (Some((ExtRational::Finite(slope), m)), None) = (entries.next(), entries.next()) {
        if m as usize == n && *slope.denom() == n.into() {
            return cert(
                CertKind::SingleSlope(slope.clone()),
                format!("Newton polygon of {q} at {p} is one segment of slope {slope}"),
            );
        }
    }
    Err(cannot())
}

/// `(e, f)` of `Q_p(α) / Q_p` read off the certificate; `e · f = degree`.
pub fn ramification_residue(cert: &QpCertificate) -> (usize, usize) {
    let n = cert.degree;
    match cert.kind {
        CertKind::DegreeOne => (1, 1),
        CertKind::Unramified => (1, n),
        CertKind::Eisenstein | CertKind::SingleSlope(_) => (n, 1),
    }
}

/// Minimal polynomial over F_p of the residue of a root of `q`.
pub fn residue_min_poly(p: Prime, q: &Poly) -> Result<FpPoly> {
    let bad = || Error::ResidueNotPurePower { p: p.get(), poly: q.to_string() };
    let reduced = FpPoly::reduce(p, &q.monic()).ok_or_else(bad)?;
    reduced.pure_power_root().ok_or_else(bad)
}

/// Multiset `{v_p(α - β)}` over the roots `β` of `q_to`, for one fixed root
/// `α` of `q_from`. Exact division of multiplicities by `deg q_from` relies
/// on `q_from` being irreducible over Q_p and doubles as a check of that.
pub fn per_root_distances(p: Prime, q_from: &Poly, q_to: &Poly) -> Result<ValuationSpectrum> {
    let diff = difference_polynomial(q_from, q_to)?;
    let spectrum = newton_root_valuations(p, &diff)?;
    spectrum.divide_multiplicities(q_from.deg())
}

/// ω(α): the largest valuation of `α - α'` over the other conjugates `α'`.
pub fn krasner_bound(p: Prime, q: &Poly) -> Result<Rational> {
    if q.deg() < 2 {
        return Err(Error::DegreeOneCenter);
    }
    let spectrum = per_root_distances(p, q, q)?;
    Ok(spectrum
        .max_finite()
        .cloned()
        .expect("an irreducible polynomial over Q_p is separable"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinimalPairVerdict {
    Minimal,
    NotMinimal,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalPairStatus {
    pub verdict: MinimalPairVerdict,
    pub reason: &'static str,
}

/// Whether `(α, δ)` is a minimal pair, for a root `α` of the certified `q`.
/// Exact for degree-one and unramified centers; otherwise `δ > ω` is only a
/// sufficient condition.
pub fn minimal_pair_status(
    p: Prime,
    q: &Poly,
    cert: &QpCertificate,
    radius: &Rational,
) -> Result<MinimalPairStatus> {
    let status = |verdict, reason| Ok(MinimalPairStatus { verdict, reason });
    if cert.kind == CertKind::DegreeOne {
        return status(MinimalPairVerdict::Minimal, "degree-one-center");
    }
    let omega = krasner_bound(p, q)?;
    match (&cert.kind, radius > &omega) {
        (_, true) => status(MinimalPairVerdict::Minimal, "radius-above-krasner-bound"),
        (CertKind::Unramified, false) => status(MinimalPairVerdict::NotMinimal, "unramified-radius-at-most-krasner-bound"),
        (_, false) => status(MinimalPairVerdict::Unknown, "ramified-radius-at-most-krasner-bound"),
    }
}

/// Number of conjugates of `α` (itself included) in the closed ball of
/// radius `δ` around `α`.
pub fn conjugates_in_ball(p: Prime, q: &Poly, radius: &Rational) -> Result<u64> {
    let spectrum = per_root_distances(p, q, q)?;
    Ok(spectrum.count_at_least(&ExtRational::Finite(radius.clone())))
}

/// Smallest `n ≥ 1` with `n · γ ∈ (1/e0) Z`.
pub fn relative_ramification(gamma: &Rational, e0: usize) -> usize {
    let b = gamma.denom().clone();
    let e0 = num_bigint::BigInt::from(e0);
    let n = &b / b.gcd(&e0);
    usize::try_from(n).expect("ramification index fits in usize")
}
