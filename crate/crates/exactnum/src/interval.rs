//! Certified intervals with rational (in practice dyadic) endpoints, and
//! complex boxes built from them.
//!
//! Arithmetic on intervals is exact; `round(prec)` widens outward to dyadic
//! endpoints with `prec` significant bits. The transcendental functions take a
//! target precision and return enclosures whose width is roughly `2^-prec`
//! relative to the value.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ExactError, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::rational::{self, dyadic, round_down, round_up, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(rational::int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Symmetric interval [-r, r].
    pub fn symmetric(r: Rational) -> Self {
        let r = r.abs();
        Interval { lo: -r.clone(), hi: r }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    /// Largest absolute value of a point in the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value of a point in the interval.
    pub fn mig(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified sign: Some(±1) if the interval excludes zero, Some(0) for the
    /// point zero, None otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn gt(&self, q: &Rational) -> bool {
        &self.lo > q
    }

    pub fn lt(&self, q: &Rational) -> bool {
        &self.hi < q
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Outward rounding to dyadic endpoints with `prec` significant bits.
    pub fn round(&self, prec: u32) -> Interval {
        Interval { lo: round_down(&self.lo, prec), hi: round_up(&self.hi, prec) }
    }

    /// Widen by an absolute amount on both sides.
    pub fn inflate(&self, r: &Rational) -> Interval {
        Interval { lo: &self.lo - r, hi: &self.hi + r }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo * &o.lo);
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        if q.is_negative() {
            Interval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            Interval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    pub fn add_rat(&self, q: &Rational) -> Interval {
        Interval { lo: &self.lo + q, hi: &self.hi + q }
    }

    pub fn sqr(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval { lo: Rational::zero(), hi: a.max(b) }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::one();
        }
        if e.is_multiple_of(2) {
            return self.sqr().pow(e / 2);
        }
        // Odd powers are monotone.
        let mut lo = Rational::one();
        let mut hi = Rational::one();
        for _ in 0..e {
            lo *= &self.lo;
            hi *= &self.hi;
        }
        Interval { lo, hi }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn abs(&self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.mid())
    }

    /// Number of bits of accuracy: -log2(width) (saturating).
    pub fn accuracy_bits(&self) -> i64 {
        let w = self.width();
        if w.is_zero() {
            i64::MAX
        } else {
            -rational::log2_floor(&w) - 1
        }
    }

    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(ExactError::Domain("sqrt of a negative interval".into()));
        }
        let lo = if self.lo.is_positive() { sqrt_down(&self.lo, prec) } else { Rational::zero() };
        Ok(Interval { lo, hi: sqrt_up(&self.hi, prec) })
    }

    /// Natural logarithm; requires a positive interval.
    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if !self.is_positive() {
            return Err(ExactError::Domain("log of an interval not bounded away from 0".into()));
        }
        let lo = ln_rat(&self.lo, prec)?.lo;
        let hi = ln_rat(&self.hi, prec)?.hi;
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self, prec: u32) -> Result<Interval> {
        Ok(Interval { lo: exp_rat(&self.lo, prec)?.lo, hi: exp_rat(&self.hi, prec)?.hi })
    }

    pub fn atan(&self, prec: u32) -> Interval {
        Interval { lo: atan_rat(&self.lo, prec).lo, hi: atan_rat(&self.hi, prec).hi }
    }

    pub fn pi(prec: u32) -> Interval {
        pi_enclosure(prec)
    }

    pub fn ln2(prec: u32) -> Interval {
        ln2_enclosure(prec)
    }

    /// Decimal rendering with `digits` significant digits of the midpoint
    /// followed by the radius.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*e}", digits, self.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}

/// JSON form: `["lo", "hi"]` as `"p/q"` strings.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational::to_string(&self.lo), rational::to_string(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = rational::parse(&lo).map_err(serde::de::Error::custom)?;
        let hi = rational::parse(&hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval with lo > hi"));
        }
        Ok(Interval { lo, hi })
    }
}

fn sqrt_down(q: &Rational, prec: u32) -> Rational {
    // floor(sqrt(q * 4^k)) / 2^k
    let k = prec as i64 + 2 - rational::log2_floor(q) / 2;
    let n = rational::floor_scaled(q, 2 * k);
    dyadic(n.sqrt(), k)
}

fn sqrt_up(q: &Rational, prec: u32) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let k = prec as i64 + 2 - rational::log2_floor(q) / 2;
    let n = rational::ceil_scaled(q, 2 * k);
    let r = n.sqrt();
    let r = if &r * &r == n { r } else { r + 1 };
    dyadic(r, k)
}

/// Working precision used inside series: a few guard bits over the target.
fn guard(prec: u32) -> u32 {
    prec + 24
}

/// atanh(z) for rational |z| <= 1/2, as an enclosure.
fn atanh_small(z: &Rational, prec: u32) -> Interval {
    debug_assert!(z.abs() <= rational::rat(1, 2));
    if z.is_zero() {
        return Interval::zero();
    }
    let w = guard(prec);
    let z2 = Interval::point(z * z).round(w);
    let mut power = Interval::point(z.clone()).round(w); // z^(2i+1)
    let mut sum = Interval::zero();
    let eps = dyadic(BigInt::one(), w as i64);
    let mut i: u64 = 0;
    loop {
        let d = Rational::from_integer(BigInt::from(2 * i + 1));
        sum = sum.add(&power.scale(&d.recip())).round(w);
        power = power.mul(&z2).round(w);
        i += 1;
        if power.mag() < eps {
            break;
        }
    }
    // Tail: sum_{j>=i} |z|^(2j+1)/(2j+1) <= |z|^(2i+1) / (1 - z^2) <= (4/3) |z|^(2i+1)
    let tail = power.mag() * rational::rat(4, 3);
    sum.inflate(&tail)
}

static LN2: Mutex<Option<HashMap<u32, Interval>>> = Mutex::new(None);
static PI: Mutex<Option<HashMap<u32, Interval>>> = Mutex::new(None);

fn with_cache(slot: &Mutex<Option<HashMap<u32, Interval>>>, prec: u32, f: impl FnOnce(u32) -> Interval) -> Interval {
    {
        let g = slot.lock().unwrap();
        if let Some(v) = g.as_ref().and_then(|m| m.get(&prec)) {
            return v.clone();
        }
    }
    let v = f(prec);
    slot.lock().unwrap().get_or_insert_with(HashMap::new).insert(prec, v.clone());
    v
}

fn ln2_enclosure(prec: u32) -> Interval {
    with_cache(&LN2, prec, |p| atanh_small(&rational::rat(1, 3), p + 4).scale(&rational::int(2)))
}

fn pi_enclosure(prec: u32) -> Interval {
    with_cache(&PI, prec, |p| {
        let a = atan_euler(&rational::rat(1, 5), p + 8).scale(&rational::int(16));
        let b = atan_euler(&rational::rat(1, 239), p + 8).scale(&rational::int(4));
        a.sub(&b).round(guard(p))
    })
}

/// ln(q) for rational q > 0.
fn ln_rat(q: &Rational, prec: u32) -> Result<Interval> {
    if !q.is_positive() {
        return Err(ExactError::Domain("log of a non-positive number".into()));
    }
    if q.is_one() {
        return Ok(Interval::zero());
    }
    // q = 2^k m with m in [2/3, 4/3]
    let mut k = rational::log2_floor(q);
    let mut m = q / dyadic(BigInt::one(), -k);
    while m > rational::rat(4, 3) {
        m /= rational::int(2);
        k += 1;
    }
    while m < rational::rat(2, 3) {
        m *= rational::int(2);
        k -= 1;
    }
    let kbits = 64 - (k.unsigned_abs()).leading_zeros();
    let z = (&m - Rational::one()) / (&m + Rational::one());
    let core = atanh_small(&z, prec + 2).scale(&rational::int(2));
    let l2 = ln2_enclosure(prec + kbits + 2).scale(&Rational::from_integer(BigInt::from(k)));
    Ok(core.add(&l2).round(guard(prec)))
}

/// exp(q) for rational q.
fn exp_rat(q: &Rational, prec: u32) -> Result<Interval> {
    if q.is_zero() {
        return Ok(Interval::one());
    }
    let e = rational::log2_floor(q);
    if e > 40 {
        return Err(ExactError::Domain("exp argument too large".into()));
    }
    // r = q / 2^j with |r| < 2^-8, then square j times.
    let j = (e + 9).max(0) as u32;
    let w = guard(prec) + j + 8;
    let r = q / dyadic(BigInt::one(), -(j as i64));
    let ri = Interval::point(r.clone()).round(w);
    let mut term = Interval::one();
    let mut sum = Interval::one();
    let eps = dyadic(BigInt::one(), w as i64);
    let mut i: u64 = 1;
    loop {
        term = term.mul(&ri).scale(&Rational::new(BigInt::one(), BigInt::from(i))).round(w);
        sum = sum.add(&term).round(w);
        i += 1;
        if term.mag() < eps {
            break;
        }
    }
    // Tail bounded by 2|term| since |r| < 1/2.
    let tail = term.mag() * rational::int(2);
    let mut v = sum.inflate(&tail);
    if v.lo.is_negative() {
        v.lo = Rational::zero();
    }
    for _ in 0..j {
        v = v.sqr().round(w);
    }
    Ok(v.round(guard(prec)))
}

/// Euler's series: atan z = sum_n 2^{2n}(n!)^2/(2n+1)! * z^{2n+1}/(1+z^2)^{n+1}.
/// Valid for all z; used for |z| <= 1, where y = z^2/(1+z^2) <= 1/2.
fn atan_euler(z: &Rational, prec: u32) -> Interval {
    if z.is_zero() {
        return Interval::zero();
    }
    let w = guard(prec);
    let one = Rational::one();
    let den = &one + z * z;
    let y = Interval::point(z * z / &den).round(w);
    let mut term = Interval::point(z / &den).round(w);
    let mut sum = Interval::zero();
    let eps = dyadic(BigInt::one(), w as i64);
    let mut n: u64 = 0;
    loop {
        sum = sum.add(&term).round(w);
        let ratio = Rational::new(BigInt::from(2 * n + 2), BigInt::from(2 * n + 3));
        term = term.mul(&y).scale(&ratio).round(w);
        n += 1;
        if term.mag() < eps {
            break;
        }
    }
    // Terms share the sign of z and decrease geometrically by at most y <= 1/2.
    let tail = term.mag() * rational::int(2);
    if z.is_positive() {
        Interval { lo: sum.lo, hi: sum.hi + tail }
    } else {
        Interval { lo: sum.lo - tail, hi: sum.hi }
    }
}

fn atan_rat(z: &Rational, prec: u32) -> Interval {
    if z.abs() <= Rational::one() {
        return atan_euler(z, prec).round(guard(prec));
    }
    // atan z = sign(z) pi/2 - atan(1/z)
    let half_pi = pi_enclosure(prec + 2).scale(&rational::rat(1, 2));
    let inv = atan_euler(&z.recip(), prec);
    let v = if z.is_positive() { half_pi.sub(&inv) } else { half_pi.neg().sub(&inv) };
    v.round(guard(prec))
}

/// A rectangle re × im in the complex plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexBox { re, im: Interval::zero() }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        ComplexBox { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn zero() -> Self {
        Self::real(Interval::zero())
    }

    pub fn one() -> Self {
        Self::real(Interval::one())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_box(&self, o: &ComplexBox) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn round(&self, prec: u32) -> ComplexBox {
        ComplexBox { re: self.re.round(prec), im: self.im.round(prec) }
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn scale(&self, q: &Rational) -> ComplexBox {
        ComplexBox { re: self.re.scale(q), im: self.im.scale(q) }
    }

    pub fn scale_interval(&self, x: &Interval) -> ComplexBox {
        ComplexBox { re: self.re.mul(x), im: self.im.mul(x) }
    }

    /// |z|^2
    pub fn abs2(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self, prec: u32) -> Result<Interval> {
        self.abs2().sqrt(prec)
    }

    pub fn recip(&self) -> Result<ComplexBox> {
        let n = self.abs2();
        let inv = n.recip()?;
        Ok(self.conj().scale_interval(&inv))
    }

    pub fn div(&self, o: &ComplexBox) -> Result<ComplexBox> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> ComplexBox {
        let mut r = ComplexBox::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Principal argument in (-pi, pi]. Fails if the box meets the branch cut
    /// (the closed negative real axis) in a way that leaves the value ambiguous.
    pub fn arg(&self, prec: u32) -> Result<Interval> {
        atan2(&self.im, &self.re, prec)
    }

    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

/// Enclosure of the principal argument of every point of the box re + i·im.
pub fn atan2(y: &Interval, x: &Interval, prec: u32) -> Result<Interval> {
    let w = guard(prec);
    if x.contains_zero() && y.contains_zero() {
        return Err(ExactError::PrecisionExhausted { bits: prec, what: "argument of a box containing 0".into() });
    }
    if x.is_positive() {
        // atan(y/x) is monotone in each variable on the right half plane.
        let q = y.div(x)?;
        return Ok(q.atan(prec).round(w));
    }
    let half_pi = Interval::pi(prec + 2).scale(&rational::rat(1, 2));
    if y.is_positive() {
        // pi/2 - atan(x/y)
        let q = x.div(y)?;
        return Ok(half_pi.sub(&q.atan(prec)).round(w));
    }
    if y.is_negative() {
        let q = x.div(y)?;
        return Ok(half_pi.neg().sub(&q.atan(prec)).round(w));
    }
    if x.is_negative() && y.lo().is_zero() && y.hi().is_zero() {
        return Ok(Interval::pi(prec));
    }
    Err(ExactError::PrecisionExhausted { bits: prec, what: "argument box meets the negative real axis".into() })
}

impl IntPoly {
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs()
            .iter()
            .rev()
            .fold(Interval::zero(), |acc, c| acc.mul(x).add_rat(&Rational::from_integer(c.clone())))
    }

    pub fn eval_box(&self, z: &ComplexBox) -> ComplexBox {
        self.coeffs().iter().rev().fold(ComplexBox::zero(), |acc, c| {
            let m = acc.mul(z);
            ComplexBox { re: m.re.add_rat(&Rational::from_integer(c.clone())), im: m.im }
        })
    }
}

impl RatPoly {
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs().iter().rev().fold(Interval::zero(), |acc, c| acc.mul(x).add_rat(c))
    }

    pub fn eval_box(&self, z: &ComplexBox) -> ComplexBox {
        self.coeffs().iter().rev().fold(ComplexBox::zero(), |acc, c| {
            let m = acc.mul(z);
            ComplexBox { re: m.re.add_rat(c), im: m.im }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        (i.to_f64() - v).abs() < tol && rational::to_f64(&i.width()) < tol
    }

    #[test]
    fn constants() {
        let pi = Interval::pi(200);
        assert!(close(&pi, std::f64::consts::PI, 1e-15));
        assert!(pi.accuracy_bits() > 190);
        // 333/106 < pi < 355/113
        assert!(pi.gt(&rat(333, 106)) && pi.lt(&rat(355, 113)));
        let l2 = Interval::ln2(200);
        assert!(close(&l2, std::f64::consts::LN_2, 1e-15));
        assert!(l2.accuracy_bits() > 190);
    }

    #[test]
    fn ln_exp_roundtrip() {
        for q in [rat(1, 7), rat(3, 2), int(10), rat(1000001, 1000), rat(1, 1 << 20)] {
            let l = Interval::point(q.clone()).ln(128).unwrap();
            assert!(close(&l, rational::to_f64(&q).ln(), 1e-12), "{q}");
            let back = l.exp(128).unwrap();
            assert!(back.contains(&q), "{q}");
        }
        let e = Interval::one().exp(100).unwrap();
        assert!(close(&e, std::f64::consts::E, 1e-15));
        let m = Interval::from_int(-3).exp(100).unwrap();
        assert!(close(&m, (-3f64).exp(), 1e-15));
    }

    #[test]
    fn atan_and_atan2() {
        for q in [rat(1, 3), int(5), rat(-7, 2), int(-1)] {
            let a = Interval::point(q.clone()).atan(100);
            assert!(close(&a, rational::to_f64(&q).atan(), 1e-14), "{q}");
        }
        let cases = [(1, 1), (1, -1), (-1, -1), (-1, 1), (3, -5), (-2, 7)];
        for (y, x) in cases {
            let a = atan2(&Interval::from_int(y), &Interval::from_int(x), 100).unwrap();
            assert!(close(&a, (y as f64).atan2(x as f64), 1e-14), "{y} {x}");
        }
        let pi = atan2(&Interval::zero(), &Interval::from_int(-1), 64).unwrap();
        assert!(close(&pi, std::f64::consts::PI, 1e-15));
        // straddling the cut is refused
        let y = Interval::new(rat(-1, 10), rat(1, 10));
        assert!(atan2(&y, &Interval::from_int(-1), 64).is_err());
    }

    #[test]
    fn sqrt_encloses() {
        let s = Interval::from_int(2).sqrt(100).unwrap();
        assert!(close(&s, std::f64::consts::SQRT_2, 1e-15));
        assert!(s.sqr().contains(&int(2)));
        let z = Interval::new(int(0), int(4)).sqrt(10).unwrap();
        assert!(z.contains(&int(0)) && z.contains(&int(2)));
    }

    #[test]
    fn box_arithmetic() {
        let i = ComplexBox::point(int(0), int(1));
        let m = i.mul(&i);
        assert_eq!(m, ComplexBox::point(int(-1), int(0)));
        let r = ComplexBox::point(int(3), int(4));
        assert!(r.abs(50).unwrap().contains(&int(5)));
        let q = r.recip().unwrap().mul(&r);
        assert!(q.re.contains(&int(1)) && q.im.contains_zero());
    }

    #[test]
    fn serde_roundtrip() {
        let x = Interval::new(rat(-1, 2), rat(3, 4));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["-1/2","3/4"]"#);
        let y: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
