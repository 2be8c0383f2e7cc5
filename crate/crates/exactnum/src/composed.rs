//! Polynomials whose roots are products of roots of f.
//!
//! Built from Newton power sums: if p_m = Σ r_i^m, then the multiset
//! {r_i r_j : i ≤ j} has power sums (p_m² + p_{2m})/2 and {r_i r_j r_k : i ≤ j ≤ k}
//! has (p_m³ + 3 p_m p_{2m} + 2 p_{3m})/6. Coefficients follow from Newton's
//! identities and are cleared to a primitive integer polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ExactError, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::rational::{int, Rational};

/// Power sums p_0..=p_max of the roots of f (with multiplicity).
pub fn power_sums(f: &IntPoly, max: usize) -> Vec<Rational> {
    let n = f.deg();
    let lc = Rational::from_integer(f.leading());
    // a[i] = coefficient of x^(n-i) divided by lc, i = 1..=n
    let a: Vec<Rational> = (0..=n).map(|i| Rational::from_integer(f.coeff(n - i)) / &lc).collect();
    let mut p = vec![Rational::zero(); max + 1];
    p[0] = int(n as i64);
    for m in 1..=max {
        let mut s = if m <= n { &a[m] * int(m as i64) } else { Rational::zero() };
        for i in 1..m.min(n + 1) {
            s += &a[i] * &p[m - i];
        }
        p[m] = -s;
    }
    p
}

/// Monic polynomial of degree N with the given power sums s[1..=N].
pub fn from_power_sums(s: &[Rational], big_n: usize) -> RatPoly {
    // e_k = (1/k) Σ_{i=1}^k (-1)^{i-1} e_{k-i} s_i
    let mut e = vec![Rational::zero(); big_n + 1];
    e[0] = Rational::one();
    for k in 1..=big_n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / int(k as i64);
    }
    // x^N - e1 x^{N-1} + e2 x^{N-2} - ...
    let mut c = vec![Rational::zero(); big_n + 1];
    for (k, ek) in e.iter().enumerate() {
        c[big_n - k] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    RatPoly::new(c)
}

/// Integer polynomial whose roots are the products r_i r_j (i ≤ j, arity 2)
/// or r_i r_j r_k (i ≤ j ≤ k, arity 3) over the roots of f, with multiplicity.
/// The result is primitive with positive leading coefficient.
pub fn composed_product_poly(f: &IntPoly, arity: u32) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let n = f.deg();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let big_n = match arity {
        2 => n * (n + 1) / 2,
        3 => n * (n + 1) * (n + 2) / 6,
        _ => return Err(ExactError::Domain(format!("arity {arity} not supported"))),
    };
    let p = power_sums(f, arity as usize * big_n);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let sixth = Rational::new(BigInt::one(), BigInt::from(6));
    let mut s = vec![Rational::zero(); big_n + 1];
    for m in 1..=big_n {
        s[m] = match arity {
            2 => (&p[m] * &p[m] + &p[2 * m]) * &half,
            _ => (&p[m] * &p[m] * &p[m] + int(3) * &p[m] * &p[2 * m] + int(2) * &p[3 * m]) * &sixth,
        };
    }
    Ok(from_power_sums(&s, big_n).to_int_primitive().normalized())
}

/// Polynomial whose roots are the squares of the roots of f (Graeffe step).
pub fn graeffe(f: &IntPoly) -> IntPoly {
    let n = f.deg();
    let p = power_sums(f, 2 * n);
    let s: Vec<Rational> = (0..=n).map(|m| p[2 * m].clone()).collect();
    from_power_sums(&s, n).to_int_primitive().normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::isolate_roots;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn documented_cases() {
        // roots ±1 → {1, -1, 1}
        let q = composed_product_poly(&p(&[-1, 0, 1]), 2).unwrap();
        assert_eq!(q, p(&[-1, 0, 1]).mul(&p(&[-1, 1])));
        assert_eq!(composed_product_poly(&p(&[0, 1]), 2).unwrap(), p(&[0, 1]));
        let q = composed_product_poly(&p(&[-1, -1, 0, 1]), 2).unwrap();
        assert_eq!(q.deg(), 6);
        let rs = isolate_roots(&q).unwrap();
        assert!(rs.real.iter().any(|r| (r.to_f64() - 0.754877666).abs() < 1e-8));
    }

    #[test]
    fn arity_three_of_linear_factors() {
        // roots 1, 2 → triple products {1, 2, 4, 8}
        let q = composed_product_poly(&p(&[2, -3, 1]), 3).unwrap();
        let want = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[-4, 1])).mul(&p(&[-8, 1]));
        assert_eq!(q, want);
    }

    #[test]
    fn graeffe_squares_roots() {
        // roots 1, -2, 3 → 1, 4, 9
        let f = p(&[-1, 1]).mul(&p(&[2, 1])).mul(&p(&[-3, 1]));
        assert_eq!(graeffe(&f), p(&[-1, 1]).mul(&p(&[-4, 1])).mul(&p(&[-9, 1])));
    }
}
