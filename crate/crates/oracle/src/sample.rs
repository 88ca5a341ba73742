//! Random inputs shared by the property and acceptance tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use polykrull::exactnum::{ExtRational, Prime};
use polykrull::monoval::{CenterSpec, DvrSpec};
use polykrull::polyarith::Poly;

type Q = BigRational;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Rational with nonnegative p-adic valuation.
pub fn integral_rational<R: Rng>(rng: &mut R, p: Prime) -> Q {
    let p = p.get() as i64;
    let den = loop {
        let d = rng.gen_range(1..=30i64);
        if d % p != 0 {
            break d;
        }
    };
    Q::new(BigInt::from(rng.gen_range(-50..=50i64)), den.into())
}

/// `{0, 1, 2, 3, 4, 1/2, 1/3, 3/2}`.
pub fn radius_battery() -> Vec<Q> {
    vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1), rat(1, 2), rat(1, 3), rat(3, 2)]
}

/// Polynomials with a Q_2-irreducibility certificate.
pub const CERTIFIED_AT_2: [&str; 5] = ["X^2-2", "X^3-2", "X^2+X+1", "X^2+2X+2", "X^2+14"];

/// A spec at 2 whose ball is likely to meet others: small integer or
/// certified algebraic centers, radii in `{1/2, 1, 3/2, 2, 5/2, 3}`, and
/// occasionally a truncated center with radius ∞.
pub fn ball_spec_at_2<R: Rng>(rng: &mut R) -> DvrSpec {
    let two = Prime::new(2).expect("2 is prime");
    let radii = [rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1), rat(5, 2), rat(3, 1)];
    let radius = radii.choose(rng).expect("nonempty").clone();
    let roll = rng.gen_range(0..10);
    let (center, radius) = if roll < 6 {
        (CenterSpec::Rational(rat(rng.gen_range(0..16), 1)), ExtRational::Finite(radius))
    } else if roll < 9 {
        let q: Poly = CERTIFIED_AT_2.choose(rng).expect("nonempty").parse().expect("valid polynomial");
        (CenterSpec::Algebraic(q), ExtRational::Finite(radius))
    } else {
        let a = rat(rng.gen_range(0..64), 1);
        (CenterSpec::Truncated { a, precision: 8, declared_e: 1 }, ExtRational::Infinity)
    };
    DvrSpec::new(two, center, radius).expect("generated spec is valid")
}
