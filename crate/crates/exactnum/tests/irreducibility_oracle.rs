//! is_irreducible against an independent brute-force factor search:
//! interpolate every candidate factor through divisors of f at fixed small
//! evaluation points and test divisibility by integer long division.

use exactnum::{is_irreducible, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn divisors(v: i64) -> Vec<i64> {
    let v = v.abs();
    (1..=v).filter(|d| v % d == 0).flat_map(|d| [d, -d]).collect()
}

/// Exact divisibility by integer long division.
fn divides(g: &[BigInt], f: &[BigInt]) -> bool {
    let mut r: Vec<BigInt> = f.to_vec();
    let dg = g.len() - 1;
    let lg = &g[dg];
    while r.len() > dg && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let (q, rem) = lr.div_rem(lg);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dg;
        for (i, c) in g.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Lagrange interpolation over Q, returning integer coefficients if any.
fn interpolate(xs: &[i64], ys: &[i64]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial l_i
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b.clone();
                next[k] -= b * BigRational::from_integer(BigInt::from(xs[j]));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(BigInt::from(ys[i])) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if coeffs.iter().all(|c| c.is_integer()) {
        Some(coeffs.into_iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn brute_force_reducible(f: &[i64]) -> bool {
    let n = f.len() - 1;
    let fb: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let eval = |x: i64| f.iter().rev().fold(0i64, |acc, &c| acc * x + c);
    for d in 1..=n / 2 {
        let mut xs = Vec::new();
        let mut x = 0i64;
        while xs.len() < d + 1 {
            for cand in [x, -x] {
                if xs.len() < d + 1 && !xs.contains(&cand) {
                    if eval(cand) == 0 {
                        return true; // linear factor
                    }
                    xs.push(cand);
                }
            }
            x += 1;
        }
        let divs: Vec<Vec<i64>> = xs.iter().map(|&x| divisors(eval(x))).collect();
        let mut idx = vec![0usize; d + 1];
        'outer: loop {
            let ys: Vec<i64> = (0..=d).map(|i| divs[i][idx[i]]).collect();
            if let Some(g) = interpolate(&xs, &ys) {
                let mut g = g;
                while g.last().is_some_and(|c| c.is_zero()) {
                    g.pop();
                }
                if g.len() == d + 1 && divides(&g, &fb) {
                    return true;
                }
            }
            for i in 0..=d {
                idx[i] += 1;
                if idx[i] < divs[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
    }
    false
}

#[test]
fn agrees_with_brute_force_on_random_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1234);
    let mut checked = 0;
    let mut reducible = 0;
    while checked < 500 {
        let deg = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-5..=5)).collect();
        c.push(*[-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5].get(rng.gen_range(0..10)).unwrap());
        let f = IntPoly::from_i64s(&c);
        // the operation takes primitive input
        if !f.content().is_one() {
            continue;
        }
        let got = is_irreducible(&f).unwrap();
        let want = !brute_force_reducible(&c);
        assert_eq!(got, want, "disagreement on {f}");
        reducible += usize::from(!got);
        checked += 1;
    }
    // the sample should exercise both outcomes
    assert!(reducible > 20 && reducible < 480, "{reducible}");
}

#[test]
fn squares_and_products_are_reducible() {
    let f = IntPoly::from_i64s(&[1, 1, 1]);
    assert!(!is_irreducible(&f.mul(&f)).unwrap());
    let g = IntPoly::from_i64s(&[-2, 0, 0, 1]);
    assert!(is_irreducible(&g).unwrap());
    assert!(!is_irreducible(&g.mul(&IntPoly::from_i64s(&[1, 0, 0, 1]))).unwrap());
}
