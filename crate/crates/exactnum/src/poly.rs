//! Dense univariate polynomials over Z and Q, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

/// Integer polynomial. The coefficient vector never has a trailing zero;
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Rational polynomial, same normalization as [`IntPoly`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// x
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the (positive) content; the sign of the leading coefficient
    /// is preserved.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over a common denominator keeps intermediate sizes small.
        let (p, q) = (x.numer(), x.denom());
        let n = self.coeffs.len();
        if n == 0 {
            return Rational::zero();
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc = sum c_i p^i q^(n-1-i), qpow = q^n
        Rational::new(acc, qpow / q)
    }

    /// Sign of f(x) for rational x.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        crate::rational::sign(&self.eval(x))
    }

    /// f(-x)
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// x^deg f(1/x)
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Exact division; `None` if `other` does not divide `self` in Z[x].
    pub fn div_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_rat().div_rem(&other.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    /// Square-free part (primitive, positive leading coefficient).
    pub fn squarefree_part(&self) -> IntPoly {
        if self.deg() == 0 {
            return self.normalized();
        }
        let f = self.to_rat();
        let g = f.gcd(&f.derivative());
        f.div_rem(&g).0.to_int_primitive().normalized()
    }

    /// Yun's square-free decomposition: returns (g_k, k) with self ~ prod g_k^k,
    /// each g_k primitive, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.to_rat().monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.deg() > 0 || !b.is_constant() {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.to_int_primitive().normalized(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
            if b.deg() == 0 {
                break;
            }
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        let f = self.to_rat();
        f.gcd(&f.derivative()).deg() == 0
    }

    /// Resultant with another integer polynomial.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let r = self.to_rat().resultant(&other.to_rat());
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.deg();
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -1 } else { 1 };
        BigInt::from(sign) * r / self.leading()
    }

    /// Number of sign changes in the coefficient sequence (Descartes bound).
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Cauchy bound: every complex root has modulus < 1 + max |a_i / a_n|.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
        Rational::one() + Rational::new(m, lc)
    }

    pub fn to_json_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl std::ops::Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        IntPoly::mul(self, o)
    }
}

fn fmt_poly<T: fmt::Display + Zero + Signed + One + PartialEq>(
    coeffs: &[T],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = i == 0 || !a.is_one();
        if show_coeff {
            write!(f, "{a}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

/// JSON form: array of decimal integer strings, lowest degree first.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Accept strings (canonical) and bare JSON integers.
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(v.len());
        for x in v {
            let s = match x {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => return Err(serde::de::Error::custom(format!("bad coefficient {other}"))),
            };
            coeffs.push(s.trim().parse::<BigInt>().map_err(serde::de::Error::custom)?);
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> RatPoly {
        let mut r = RatPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dn = d.coeffs.len() - 1;
        let mut q = vec![Rational::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = &r[i + dn] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dn);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Composition self(g(x)).
    pub fn compose(&self, g: &RatPoly) -> RatPoly {
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| acc.mul(g).add(&RatPoly::constant(c.clone())))
    }

    /// Resultant via the Euclidean remainder recursion.
    pub fn resultant(&self, o: &RatPoly) -> Rational {
        if self.is_zero() || o.is_zero() {
            return Rational::zero();
        }
        let (m, n) = (self.deg(), o.deg());
        if n == 0 {
            return pow_rat(&o.leading(), m);
        }
        if m == 0 {
            return pow_rat(&self.leading(), n);
        }
        let r = self.rem(o);
        if r.is_zero() {
            return Rational::zero();
        }
        let k = r.deg();
        let sign = if (m * n) % 2 == 1 { -Rational::one() } else { Rational::one() };
        sign * pow_rat(&o.leading(), m - k) * o.resultant(&r)
    }

    /// Positive rational multiple with integer, coprime coefficients.
    /// Preserves the sign of every value, which Sturm chains rely on.
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        IntPoly::new(ints).primitive_part()
    }

    /// Coefficients as integers if they all are.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

pub fn pow_rat(q: &Rational, e: usize) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= q;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn eval_matches_naive() {
        let f = p(&[-1, -1, 0, 1]);
        let x = rat(3, 2);
        assert_eq!(f.eval(&x), f.to_rat().eval(&x));
        assert_eq!(f.eval(&rat(3, 2)), rat(27, 8) - rat(3, 2) - int(1));
    }

    #[test]
    fn resultant_small_cases() {
        // Res(x^2 - 1, x - 2) = (2-1)(2+1)... with sign convention lc(f)^n prod g(roots f)
        let f = p(&[-1, 0, 1]);
        let g = p(&[-2, 1]);
        // prod over roots a of f of g(a) = (1-2)(-1-2) = 3
        assert_eq!(f.resultant(&g), BigInt::from(3));
        // discriminant of x^3 - x - 1 is -23
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant(), BigInt::from(-23));
        // discriminant of x^2 - 3x + 1 is 5
        assert_eq!(p(&[1, -3, 1]).discriminant(), BigInt::from(5));
    }

    #[test]
    fn squarefree_decomposition_recovers_factors() {
        // (x-1)^2 (x+2)^3 x
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).mul(&p(&[0, 1]));
        let dec = f.squarefree_decomposition();
        let mut got: Vec<(String, usize)> = dec.iter().map(|(g, k)| (g.to_string(), *k)).collect();
        got.sort();
        assert_eq!(got, vec![("x".to_string(), 1), ("x + 2".to_string(), 3), ("x - 1".to_string(), 2)]);
        let prod = dec.iter().fold(IntPoly::one(), |acc, (g, k)| acc.mul(&g.pow(*k)));
        assert_eq!(prod.normalized(), f.normalized());
        assert_eq!(f.squarefree_part(), p(&[0, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).normalized());
    }

    #[test]
    fn display_and_json() {
        let f = p(&[-1, -1, 0, 1]);
        assert_eq!(f.to_string(), "x^3 - x - 1");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"["-1","-1","0","1"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        let loose: IntPoly = serde_json::from_str("[-1, -1, 0, 1]").unwrap();
        assert_eq!(loose, f);
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(&[-1, -1, 0, 1]).to_rat();
        let b = p(&[0, 0, 1]).to_rat();
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, RatPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), RatPoly::one());
    }
}
