//! Fast algorithms against slow reference implementations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polykrull::exactnum::{ExtRational, Prime};
use polykrull::monoval::{mono_val, DvrSpec};
use polykrull::polyarith::{difference_polynomial, newton_root_valuations, resultant, Poly, ValuationSpectrum};
use polykrull_oracle::sample::{integral_rational, radius_battery, rat};
use polykrull_oracle::{difference_polynomial_sylvester, mono_val_direct, random_poly, resultant_sylvester};

type Q = BigRational;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn nonconstant<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Poly {
    loop {
        let f = random_poly(rng, max_deg, bound);
        if f.degree().is_some_and(|d| d >= 1) {
            return f;
        }
    }
}

fn int_valuation(p: u64, n: i64) -> ExtRational {
    if n == 0 {
        return ExtRational::Infinity;
    }
    let (mut n, mut k) = (n.abs(), 0i64);
    while n % p as i64 == 0 {
        n /= p as i64;
        k += 1;
    }
    ExtRational::from(k)
}

#[test]
fn resultant_matches_sylvester_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let f = nonconstant(&mut rng, 6, 200);
        let mut g = nonconstant(&mut rng, 5, 200);
        if rng.gen_bool(0.3) {
            g = g.scale(&rat(1, rng.gen_range(2..9)));
        }
        assert_eq!(resultant(&f, &g).unwrap(), resultant_sylvester(&f, &g), "f={f}, g={g}");
    }
}

#[test]
fn difference_polynomial_matches_sylvester_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let q = nonconstant(&mut rng, 3, 20).monic();
        let f = nonconstant(&mut rng, 3, 50);
        let fast = difference_polynomial(&q, &f).unwrap();
        let slow = difference_polynomial_sylvester(&q, &f);
        assert!(fast == slow || fast == slow.scale(&rat(-1, 1)), "q={q}, f={f}: {fast} vs {slow}");
    }
}

#[test]
fn newton_polygon_of_split_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let p = *[2u64, 3, 5, 7].choose(&mut rng).unwrap();
        let roots: Vec<i64> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(-300..=300)).collect();
        let f = roots.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::linear(&Q::from_integer(BigInt::from(r))));
        let expected = ValuationSpectrum::from_entries(roots.iter().map(|&r| (int_valuation(p, r), 1)));
        assert_eq!(newton_root_valuations(prime(p), &f).unwrap(), expected, "p={p}, roots={roots:?}");
    }
}

#[test]
fn rational_center_value_matches_binomial_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut battery = radius_battery();
    battery.extend([rat(5, 7), rat(7, 3), rat(11, 4)]);
    for _ in 0..400 {
        let p = prime(*[2, 3, 5, 7, 11].choose(&mut rng).unwrap());
        let a = integral_rational(&mut rng, p);
        let delta = battery.choose(&mut rng).unwrap().clone();
        let f = random_poly(&mut rng, 8, 10_000);
        let spec = DvrSpec::rational(p, a.clone(), delta.clone()).unwrap();
        assert_eq!(mono_val(&spec, &f).unwrap(), mono_val_direct(p, &a, &delta, &f), "p={p} a={a} δ={delta} f={f}");
    }
}

#[test]
fn gauss_value_is_minimum_coefficient_valuation() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let p = prime(*[2, 3, 5].choose(&mut rng).unwrap());
        let f = random_poly(&mut rng, 6, 1000).scale(&rat(1, rng.gen_range(1..40)));
        let expected = mono_val_direct(p, &Q::zero(), &Q::zero(), &f);
        assert_eq!(mono_val(&DvrSpec::gauss(p), &f).unwrap(), expected, "f={f}");
    }
}
