//! Polynomials over small prime fields and distinct-degree factorization.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::poly::IntPoly;

/// Polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| {
                let r = ((x % &pb) + &pb) % &pb;
                r.to_u64().unwrap()
            })
            .collect();
        Self::new(p, c)
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        Self::new(self.p, self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| (g(&self.c, i) + self.p - g(&o.c, i)) % self.p).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::new(p, vec![]), self.clone());
        }
        let inv = invmod(d.lc(), p);
        let dn = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dn], inv, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulmod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dn);
        (Self::new(p, q), Self::new(p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, i as u64 % self.p, self.p)).collect(),
        )
    }

    fn powmod_poly(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Distinct-degree factorization of a square-free polynomial: the degrees
    /// of its irreducible factors, with multiplicity, ascending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 1;
        while 2 * d <= f.deg() {
            h = h.powmod_poly(p, &f);
            let g = h.sub(&x).gcd(&f);
            if g.deg() > 0 {
                out.extend(std::iter::repeat_n(d, g.deg() / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if f.deg() > 0 {
            out.push(f.deg());
        }
        out
    }
}

/// Primes below `bound` (simple sieve).
pub fn small_primes(bound: usize) -> Vec<u64> {
    let mut sieve = vec![true; bound.max(2)];
    let mut out = Vec::new();
    for i in 2..bound {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < bound {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Does p divide the integer?
pub fn divides(p: u64, x: &BigInt) -> bool {
    (x % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_mod_small_primes() {
        // x^3 - x - 1 is irreducible mod 2
        let f = IntPoly::from_i64s(&[-1, -1, 0, 1]);
        assert_eq!(ModPoly::from_int(&f, 2).factor_degrees(), vec![3]);
        // x^2 - 1 = (x-1)(x+1) mod 5
        let g = IntPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(ModPoly::from_int(&g, 5).factor_degrees(), vec![1, 1]);
        // x^4 + 1 splits into quadratics (or linears) mod every prime
        let h = IntPoly::from_i64s(&[1, 0, 0, 0, 1]);
        for p in [3u64, 5, 7, 11, 13] {
            let d = ModPoly::from_int(&h, p).factor_degrees();
            assert!(d.iter().all(|&k| k <= 2), "{p}: {d:?}");
        }
    }

    #[test]
    fn degrees_sum_to_degree() {
        let f = IntPoly::from_i64s(&[-1, -1, 0, 0, 0, 1]);
        for p in small_primes(60) {
            let m = ModPoly::from_int(&f, p);
            if m.deg() == 5 && m.is_squarefree() {
                assert_eq!(m.factor_degrees().iter().sum::<usize>(), 5);
            }
        }
    }
}
