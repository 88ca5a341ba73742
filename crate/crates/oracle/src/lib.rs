//! Slow, independent reference implementations for testing `polykrull`:
//! valuations by binomial expansion, resultants by Sylvester determinants,
//! and random sampling of the polynomial order between two DVR specs.
//! Nothing here is used by the library or the command-line tool.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polykrull::exactnum::{vp, ExtRational, Prime};
use polykrull::monoval::{mono_val, order_compare, DvrSpec, PolyOrder};
use polykrull::polyarith::Poly;

pub mod sample;

type Q = BigRational;

fn q_int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `min_i v_p(b_i) + iδ` where `f(X + a) = Σ b_i X^i`, expanded term by term
/// with the binomial theorem.
pub fn mono_val_direct(p: Prime, a: &Q, delta: &Q, f: &Poly) -> ExtRational {
    let n = match f.degree() {
        Some(n) => n,
        None => return ExtRational::Infinity,
    };
    let mut b = vec![Q::zero(); n + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        let mut a_pow = Q::one();
        for i in (0..=k).rev() {
            b[i] += c * q_int(binomial(k, i)) * &a_pow;
            a_pow *= a;
        }
    }
    b.iter()
        .enumerate()
        .filter_map(|(i, c)| vp(p, c).map(|v| q_int(v) + delta * q_int(i as u64)))
        .min()
        .map_or(ExtRational::Infinity, ExtRational::Finite)
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
fn bareiss_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of coefficient lists (descending powers).
fn sylvester<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        row[i..i + m + 1].clone_from_slice(f);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        row[i..i + n + 1].clone_from_slice(g);
        rows.push(row);
    }
    rows
}

/// `Res(f, g) = lc(f)^deg g · Π g(α)` over the roots α of `f`, as the
/// Sylvester determinant.
pub fn resultant_sylvester(f: &Poly, g: &Poly) -> Q {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of the zero polynomial");
    let (m, n) = (f.deg(), g.deg());
    let (df, dg) = (f.denominator(), g.denominator());
    let desc = |p: &Poly, d: &BigInt| -> Vec<BigInt> {
        p.coeffs().iter().rev().map(|c| (c * q_int(d.clone())).to_integer()).collect()
    };
    let det = bareiss_int(sylvester(&desc(f, &df), &desc(g, &dg), BigInt::zero()));
    Q::new(det, num_traits::pow(df, n) * num_traits::pow(dg, m))
}

/// `Res_Y(q(Y), f(X + Y))` by a Bareiss determinant over Q[X], normalized to
/// a primitive integer polynomial with positive leading coefficient.
pub fn difference_polynomial_sylvester(q: &Poly, f: &Poly) -> Poly {
    let n = f.deg();
    // f(X + Y) = Σ_j Y^j Σ_k c_k C(k, j) X^(k-j)
    let shifted: Vec<Poly> = (0..=n)
        .map(|j| {
            let coeffs = (j..=n).map(|k| f.coeff(k) * q_int(binomial(k, j))).collect();
            let mut lifted = vec![Q::zero(); j];
            lifted.extend::<Vec<Q>>(coeffs);
            strip_low(Poly::new(lifted), j)
        })
        .collect();
    let q_desc: Vec<Poly> = q.coeffs().iter().rev().map(|c| Poly::constant(c.clone())).collect();
    let f_desc: Vec<Poly> = shifted.into_iter().rev().collect();
    let det = bareiss_poly(sylvester(&q_desc, &f_desc, Poly::zero()));
    det.primitive_part()
}

fn strip_low(p: Poly, j: usize) -> Poly {
    Poly::new(p.coeffs().iter().skip(j).cloned().collect())
}

fn bareiss_poly(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                let (quo, rem) = num.div_rem(&prev).expect("nonzero pivot");
                assert!(rem.is_zero(), "Bareiss division is exact");
                m[i][j] = quo;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate { -&det } else { det }
}

/// Random polynomial of degree ≤ `max_deg`: half the time dense with
/// coefficients `n/d`, `|n| ≤ bound`, `1 ≤ d ≤ bound`; otherwise a scaled
/// product of linear factors with small integer roots, which lands inside
/// small p-adic balls far more often.
pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    loop {
        let f = if rng.gen_bool(0.5) {
            let deg = rng.gen_range(0..=max_deg);
            Poly::new((0..=deg).map(|_| Q::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into())).collect())
        } else {
            let deg = rng.gen_range(1..=max_deg.max(1));
            let scale = Q::new(rng.gen_range(1..=bound).into(), rng.gen_range(1..=bound).into());
            (0..deg).fold(Poly::constant(scale), |acc, _| &acc * &Poly::linear(&q_int(rng.gen_range(-16i64..=16))))
        };
        if !f.is_zero() {
            return f;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSampleReport {
    pub claimed: PolyOrder,
    pub trials: usize,
    /// Samples contradicting the claimed order.
    pub violations: Vec<Poly>,
    /// First sample with `w1(f) < w2(f)`.
    pub below: Option<Poly>,
    /// First sample with `w1(f) > w2(f)`.
    pub above: Option<Poly>,
    pub equal_count: usize,
}

/// Samples `trials` polynomials (degree ≤ 8, numerators and denominators
/// ≤ 10^3, deterministic in `seed`) and checks them against `order_compare`.
pub fn order_sample_check(s1: &DvrSpec, s2: &DvrSpec, trials: usize, seed: u64) -> OrderSampleReport {
    let claimed = order_compare(s1, s2).expect("comparable specs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OrderSampleReport { claimed, trials, violations: vec![], below: None, above: None, equal_count: 0 };
    for _ in 0..trials {
        let f = random_poly(&mut rng, 8, 1000);
        let (w1, w2) = match (mono_val(s1, &f), mono_val(s2, &f)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let violation = match claimed {
            PolyOrder::Less => w1 > w2,
            PolyOrder::Greater => w1 < w2,
            PolyOrder::Equal => w1 != w2,
            PolyOrder::Incomparable | PolyOrder::DifferentPrime => false,
        };
        match w1.cmp(&w2) {
            std::cmp::Ordering::Less => report.below.get_or_insert_with(|| f.clone()),
            std::cmp::Ordering::Greater => report.above.get_or_insert_with(|| f.clone()),
            std::cmp::Ordering::Equal => {
                report.equal_count += 1;
                &f
            }
        };
        if violation {
            report.violations.push(f);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn direct_values() {
        assert_eq!(mono_val_direct(pr(2), &r(0, 1), &r(1, 1), &poly("X^2+2X+8")), ExtRational::from(2));
        assert_eq!(mono_val_direct(pr(3), &r(0, 1), &r(0, 1), &poly("9X^2+3X+1/3")), ExtRational::from(-1));
        assert_eq!(mono_val_direct(pr(2), &r(1, 1), &r(1, 2), &poly("X-1")), ExtRational::Finite(r(1, 2)));
        assert_eq!(mono_val_direct(pr(2), &r(1, 1), &r(1, 2), &Poly::zero()), ExtRational::Infinity);
    }

    #[test]
    fn sylvester_values() {
        let g = poly("X^3-5X+7");
        assert_eq!(resultant_sylvester(&poly("X-3"), &g), g.eval(&r(3, 1)));
        assert_eq!(resultant_sylvester(&poly("X^2-2"), &poly("X^2-2")), r(0, 1));
        assert_eq!(resultant_sylvester(&poly("1/2X-1"), &poly("X^2")), r(1, 1));
        assert_eq!(difference_polynomial_sylvester(&poly("X^2-2"), &poly("X")), poly("X^2-2"));
        assert_eq!(difference_polynomial_sylvester(&poly("X^2-2"), &poly("X^2-2")), poly("X^4-8X^2"));
    }

    #[test]
    fn sampling() {
        let spec = |c: &str, d: &str| DvrSpec::parse(pr(2), c, d).unwrap();
        let rep = order_sample_check(&spec("rat:0", "1"), &spec("rat:0", "2"), 500, 42);
        assert_eq!(rep.claimed, PolyOrder::Less);
        assert!(rep.violations.is_empty());
        let rep = order_sample_check(&spec("rat:0", "1"), &spec("rat:1", "1"), 500, 42);
        assert_eq!(rep.claimed, PolyOrder::Incomparable);
        assert!(rep.below.is_some() && rep.above.is_some());
        let s = spec("alg:X^2-2", "1");
        let rep = order_sample_check(&s, &s, 10, 0);
        assert_eq!(rep.equal_count, 10);
    }
}
