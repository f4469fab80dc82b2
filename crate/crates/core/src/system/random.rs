//! Seeded random numeric systems for probes and property tests.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{multi_indices, HomogeneousPoly, PolySystem};
use crate::error::{Error, Result};
use crate::poly::{MPoly, Rational};

/// Nonzero rational with numerator in `[-9, 9]` and denominator in `[1, 4]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            let den: i64 = rng.gen_range(1..=4);
            return Rational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// Nonzero rational with numerator in `[-10^6, 10^6]` and denominator in
/// `[1, 1000]`, wide enough that accidental algebraic relations are rare.
pub fn random_wide_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
        if num != 0 {
            let den: i64 = rng.gen_range(1..=1000);
            return Rational::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// Numeric system with a random nonzero rational in every coefficient slot,
/// drawn by [`random_wide_rational`] so that the system is generic.
pub fn random_dense(degrees: &[u32], seed: u64) -> Result<PolySystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = degrees.len() as u32;
    let polys = degrees
        .iter()
        .map(|&r| {
            let mut p = HomogeneousPoly::new(n, r)?;
            for idx in multi_indices(n, r) {
                p.set(&idx, MPoly::constant(random_wide_rational(&mut rng)))?;
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}

/// Numeric system whose polynomials all vanish at `root`.
///
/// Each polynomial is a random rational combination of the binomials
/// `x_a m - (root_a / root_b) x_b m`, where `m` runs over monomials of degree
/// `r_i - 1` and `b` is the first nonzero coordinate of `root`.
pub fn force_common_root(degrees: &[u32], root: &[Rational], seed: u64) -> Result<PolySystem> {
    let n = degrees.len();
    if root.len() != n {
        return Err(Error::invalid(format!("root has {} coordinates, expected {n}", root.len())));
    }
    let b = root
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::invalid("root must not be the zero vector"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = degrees
        .iter()
        .map(|&r| {
            let mut p = HomogeneousPoly::new(n as u32, r)?;
            for m in multi_indices(n as u32, r - 1) {
                for a in (0..n).filter(|&a| a != b) {
                    let c = random_rational(&mut rng);
                    let mut with_a = m.clone();
                    with_a.push(a as u32 + 1);
                    let mut with_b = m.clone();
                    with_b.push(b as u32 + 1);
                    p.add_to(&with_a, &MPoly::constant(c.clone()))?;
                    let ratio = &root[a] / &root[b];
                    p.add_to(&with_b, &MPoly::constant(-(c * ratio)))?;
                }
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(polys)
}
