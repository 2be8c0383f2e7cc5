//! Coefficient rings for structure constants: exact rationals, polynomials
//! in formal symbols over Q, and certified intervals.

use std::collections::BTreeMap;
use std::fmt;

use exactnum::rational::{to_string, Rational};
use exactnum::Interval;
use num_traits::{One, Signed, Zero};

pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero_value() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    /// Certainly zero.
    fn certainly_zero(&self) -> bool;
    /// Possibly zero: equal to `is_zero` for exact rings, "encloses 0" for
    /// intervals.
    fn maybe_zero(&self) -> bool {
        self.certainly_zero()
    }
    /// Upper bound on |x| when the value is numeric.
    fn magnitude(&self) -> Option<Rational>;
    /// The value when it is a known rational constant.
    fn as_rational(&self) -> Option<Rational>;

    fn one_value() -> Self {
        Self::from_rational(&Rational::one())
    }
}

impl Coeff for Rational {
    fn zero_value() -> Self {
        <Rational as Zero>::zero()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn certainly_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> Option<Rational> {
        Some(self.abs())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coeff for Interval {
    fn zero_value() -> Self {
        Interval::zero()
    }
    fn from_rational(q: &Rational) -> Self {
        Interval::point(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        Interval::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Interval::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Interval::mul(self, o)
    }
    fn neg(&self) -> Self {
        Interval::neg(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        Interval::scale(self, q)
    }
    fn certainly_zero(&self) -> bool {
        self.is_point() && self.contains_zero()
    }
    fn maybe_zero(&self) -> bool {
        self.contains_zero()
    }
    fn magnitude(&self) -> Option<Rational> {
        Some(self.mag())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_point().then(|| self.lo().clone())
    }
}

/// Polynomial over Q in formal symbols X0, X1, …; monomials are exponent
/// vectors with trailing zeros trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn constant(q: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&q) {
            terms.insert(Vec::new(), q);
        }
        MPoly { terms }
    }

    /// The formal symbol X_k.
    pub fn var(k: usize) -> MPoly {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Rational::one());
        MPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    fn insert(&mut self, e: Vec<u32>, c: Rational) {
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&e);
        }
    }

    /// Substitute rational values for every symbol.
    pub fn eval(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    m *= &vals[k];
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_interval(&self, vals: &[Interval]) -> Interval {
        let mut acc = Interval::zero();
        for (e, c) in &self.terms {
            let mut m = Interval::point(c.clone());
            for (k, &p) in e.iter().enumerate() {
                m = m.mul(&vals[k].pow(p));
            }
            acc = acc.add(&m);
        }
        acc
    }
}

impl Coeff for MPoly {
    fn zero_value() -> Self {
        MPoly::default()
    }
    fn from_rational(q: &Rational) -> Self {
        MPoly::constant(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = MPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> =
                    (0..n).map(|k| e1.get(k).copied().unwrap_or(0) + e2.get(k).copied().unwrap_or(0)).collect();
                r.insert(e, c1 * c2);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn scale(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return MPoly::default();
        }
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect() }
    }
    fn certainly_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn magnitude(&self) -> Option<Rational> {
        self.as_rational().map(|q| q.abs())
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", to_string(c))?;
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*X{k}")?,
                    _ => write!(f, "*X{k}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rational::{int, rat};

    #[test]
    fn polynomial_identities() {
        let x = MPoly::var(0);
        let y = MPoly::var(2);
        let s = x.add(&y);
        let d = x.sub(&y);
        let lhs = s.mul(&d);
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert!(lhs.sub(&rhs).certainly_zero());
        assert_eq!(lhs.eval(&[int(3), int(0), int(1)]), int(8));
        assert_eq!(MPoly::constant(rat(1, 2)).as_rational(), Some(rat(1, 2)));
        assert!(x.as_rational().is_none());
        assert_eq!(x.sub(&x).terms().len(), 0);
    }
}
