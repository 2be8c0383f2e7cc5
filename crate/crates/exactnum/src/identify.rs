//! Exact identification of algebraic values given only by enclosures.
//!
//! A value known to be a root of P is pinned to one isolated root of P by
//! refining its enclosure until it meets exactly one isolating interval.
//! Equality with a rational is then an exact question about that root.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{ExactError, Result};
use crate::interval::Interval;
use crate::poly::IntPoly;
use crate::rational::Rational;
use crate::roots::{isolate_roots, RealAlgebraic};

/// Find the real root of `p` equal to a value known to be a real root of `p`.
/// `enclose(bits)` must return an enclosure of the value, tightening with bits.
pub fn identify_real_root(
    p: &IntPoly,
    mut enclose: impl FnMut(u32) -> Result<Interval>,
    cap: u32,
) -> Result<RealAlgebraic> {
    let rs = isolate_roots(p)?;
    if rs.real.is_empty() {
        return Err(ExactError::Domain("value claimed to be a real root of a polynomial without real roots".into()));
    }
    let mut bits = 32;
    loop {
        let v = enclose(bits)?;
        let hits: Vec<&RealAlgebraic> = rs
            .real
            .iter()
            .filter(|r| {
                let iv = r.enclosure(bits);
                iv.overlaps(&v)
            })
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].refine(bits));
        }
        if hits.is_empty() {
            return Err(ExactError::Domain("enclosure meets no root of the claimed polynomial".into()));
        }
        if bits >= cap {
            return Err(ExactError::PrecisionExhausted { bits, what: "root identification".into() });
        }
        bits = (bits * 2).min(cap);
    }
}

impl RealAlgebraic {
    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(v) = self.exact_value() {
            return v.cmp(q);
        }
        if q <= self.lo() {
            return Ordering::Greater;
        }
        if q >= self.hi() {
            return Ordering::Less;
        }
        if self.poly().eval(q).is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 16;
        loop {
            let r = self.refine(bits);
            if q <= r.lo() {
                return Ordering::Greater;
            }
            if q >= r.hi() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn equals_rational(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composed::composed_product_poly;
    use crate::rational::{int, rat};
    use crate::roots::isolate_roots;

    #[test]
    fn modulus_squared_of_cubic_pair_is_inverse_of_real_root() {
        // x^3 - x - 1: |σ2|^2 = 1/σ1, a root of the arity-2 composed product.
        let f = IntPoly::from_i64s(&[-1, -1, 0, 1]);
        let rs = isolate_roots(&f).unwrap();
        let c = rs.complex[0].clone();
        let q = composed_product_poly(&f, 2).unwrap();
        let r = identify_real_root(&q, |b| Ok(c.enclosure(b + 8).abs2()), 4096).unwrap();
        assert!((r.to_f64() - 0.754877666).abs() < 1e-8);
        assert!(!r.equals_rational(&int(1)));
        assert_eq!(r.cmp_rational(&int(1)), Ordering::Less);
    }

    #[test]
    fn exact_equality_with_rational() {
        // (x^2+1)(x-3): |i|^2 = 1 exactly
        let f = IntPoly::from_i64s(&[1, 0, 1]).mul(&IntPoly::from_i64s(&[-3, 1]));
        let rs = isolate_roots(&f).unwrap();
        let c = rs.complex[0].clone();
        let q = composed_product_poly(&f, 2).unwrap();
        let r = identify_real_root(&q, |b| Ok(c.enclosure(b + 8).abs2()), 4096).unwrap();
        assert!(r.equals_rational(&int(1)));
        let s = isolate_roots(&IntPoly::from_i64s(&[-2, 0, 1])).unwrap();
        assert_eq!(s.real[1].cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(s.real[1].cmp_rational(&rat(142, 100)), Ordering::Less);
    }
}
