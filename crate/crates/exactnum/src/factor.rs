//! Irreducibility over Q: degree-pattern exclusion modulo small primes, with a
//! Kronecker factor search for whatever degrees survive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ExactError, Result};
use crate::matrix::RationalMatrix;
use crate::modp::{divides, small_primes, ModPoly};
use crate::poly::IntPoly;
use crate::rational::Rational;

/// Number of good primes consulted before falling back to factor search.
const PRIMES_TO_TRY: usize = 24;

/// Decide irreducibility over Q. Constants (units of Q[x]) are rejected;
/// content is ignored since it is a unit over Q.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let n = f.deg();
    if n == 0 {
        return Err(ExactError::ConstantPolynomial);
    }
    let f = f.primitive_part();
    if n == 1 {
        return Ok(true);
    }
    if !f.is_squarefree() {
        return Ok(false);
    }
    let candidates = possible_factor_degrees(&f);
    for d in candidates.into_iter().filter(|&d| 2 * d <= n) {
        if kronecker_factor(&f, d).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degrees d (1 <= d < n) for which a factor of degree d is not excluded by
/// the factorization patterns modulo the first few good primes.
pub fn possible_factor_degrees(f: &IntPoly) -> BTreeSet<usize> {
    let n = f.deg();
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let lc = f.leading();
    let mut used = 0;
    for p in small_primes(2000) {
        if possible.is_empty() || used >= PRIMES_TO_TRY {
            break;
        }
        if divides(p, &lc) {
            continue;
        }
        let fp = ModPoly::from_int(f, p);
        if !fp.is_squarefree() {
            continue;
        }
        used += 1;
        let sums = subset_sums(&fp.factor_degrees(), n);
        possible.retain(|d| sums[*d]);
    }
    possible
}

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &k in parts {
        for s in (k..=n).rev() {
            if can[s - k] {
                can[s] = true;
            }
        }
    }
    can
}

/// Search for a factor of degree exactly `d` by interpolation through
/// divisors of f at d+1 integer points (Kronecker).
pub fn kronecker_factor(f: &IntPoly, d: usize) -> Option<IntPoly> {
    let n = f.deg();
    if d == 0 || d >= n {
        return None;
    }
    // Pick d+1 evaluation points with nonzero values and few divisors.
    let mut pts: Vec<(BigInt, BigInt, usize)> = Vec::new();
    let mut k: i64 = 0;
    while pts.len() < 2 * d + 6 && k < 200 {
        for x in [k, -k] {
            if k == 0 && x == 0 && !pts.is_empty() {
                continue;
            }
            let xb = BigInt::from(x);
            let v = f.eval_int(&xb);
            if v.is_zero() {
                // A rational root gives a linear factor directly.
                let lin = IntPoly::new(vec![-xb.clone(), BigInt::one()]);
                if d == 1 {
                    return Some(lin);
                }
                continue;
            }
            if pts.iter().any(|(px, _, _)| *px == xb) {
                continue;
            }
            let nd = divisor_count_estimate(&v);
            pts.push((xb, v, nd));
        }
        k += 1;
    }
    pts.sort_by_key(|p| p.2);
    pts.truncate(d + 1);
    if pts.len() < d + 1 {
        return None;
    }
    let divs: Vec<Vec<BigInt>> = pts.iter().map(|(_, v, _)| positive_divisors(v)).collect();
    let xs: Vec<BigInt> = pts.iter().map(|p| p.0.clone()).collect();
    let vand = RationalMatrix::from_fn(d + 1, d + 1, |i, j| Rational::from_integer(xs[i].pow(j as u32)));
    let vinv = vand.inverse().ok()?;
    let lc = f.leading().abs();

    // Odometer over divisor choices and signs (first value kept positive).
    let mut idx = vec![0usize; d + 1];
    let mut signs = vec![false; d + 1];
    loop {
        let vals: Vec<Rational> = (0..=d)
            .map(|i| {
                let v = divs[i][idx[i]].clone();
                Rational::from_integer(if signs[i] { -v } else { v })
            })
            .collect();
        let coeffs = vinv.mul_vec(&vals);
        if coeffs.iter().all(|c| c.is_integer()) {
            let g = IntPoly::new(coeffs.iter().map(|c| c.to_integer()).collect());
            if g.deg() == d && lc.is_multiple_of(&g.leading().abs()) && f.div_exact(&g).is_some() {
                return Some(g);
            }
        }
        // advance
        let mut i = 0;
        loop {
            if i > d {
                return None;
            }
            if i > 0 && !signs[i] {
                signs[i] = true;
                break;
            }
            signs[i] = false;
            idx[i] += 1;
            if idx[i] < divs[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn divisor_count_estimate(v: &BigInt) -> usize {
    match v.abs().to_u64() {
        Some(x) if x < 1u64 << 40 => positive_divisors(v).len(),
        _ => usize::MAX / 4,
    }
}

/// All positive divisors of |v| (v != 0), by trial division.
pub fn positive_divisors(v: &BigInt) -> Vec<BigInt> {
    let mut n = v.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let cur = divs.clone();
        let mut pw = BigInt::one();
        for _ in 0..e {
            pw *= &q;
            divs.extend(cur.iter().map(|x| x * &pw));
        }
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn documented_cases() {
        assert!(is_irreducible(&p(&[-1, -1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[-1, -1, 0, 0, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&p(&[3])), Err(ExactError::ConstantPolynomial));
        assert_eq!(is_irreducible(&IntPoly::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn locally_reducible_everywhere() {
        // x^4 + 1 and x^4 - 10x^2 + 1 are irreducible over Q but reducible mod every prime.
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
        // (x^2+x+1)(x^2-2) has no rational roots
        let f = p(&[1, 1, 1]).mul(&p(&[-2, 0, 1]));
        assert!(!is_irreducible(&f).unwrap());
        assert!(kronecker_factor(&f, 2).is_some());
    }

    #[test]
    fn non_monic() {
        // (2x - 1)(3x^2 + 1)
        let f = p(&[-1, 2]).mul(&p(&[1, 0, 3]));
        assert!(!is_irreducible(&f).unwrap());
        assert!(is_irreducible(&p(&[1, 0, 3])).unwrap());
        assert!(is_irreducible(&p(&[-2, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn divisors() {
        let d: Vec<i64> = positive_divisors(&BigInt::from(-12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
