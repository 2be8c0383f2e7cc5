//! Certified root isolation.
//!
//! Real roots: Sturm chains and bisection; each root gets an open isolating
//! interval (or a point, when the root is rational and hit exactly).
//!
//! Complex roots: simultaneous Aberth iteration (f64 first, then dyadic
//! rationals at escalating precision), certified a posteriori by Weierstrass
//! inclusion discs. Disc i has radius n·|f(z_i)| / |lc·Π_{j≠i}(z_i − z_j)|; when
//! the discs (inflated by 3/2, so that each bounding box stays inside its own
//! inflated disc) are pairwise disjoint, each box holds exactly one root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{ExactError, Result};
use crate::interval::{ComplexBox, Interval};
use crate::poly::{IntPoly, RatPoly};
use crate::rational::{self, dyadic, rat, round_down, round_up, Rational};
use crate::DEFAULT_PRECISION_CAP;

/// A real root of a square-free integer polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealAlgebraic {
    poly: IntPoly,
    lo: Rational,
    hi: Rational,
}

/// A non-real root, isolated by a disc (center, radius); the reported box is
/// the disc's bounding square.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexAlgebraic {
    poly: IntPoly,
    re: Rational,
    im: Rational,
    radius: Rational,
}

/// All roots of a polynomial: real roots ascending, and one upper-half-plane
/// representative per conjugate pair, ordered by (real part, imaginary part).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSet {
    pub poly: IntPoly,
    pub real: Vec<RealAlgebraic>,
    pub complex: Vec<ComplexAlgebraic>,
}

impl RootSet {
    pub fn signature(&self) -> (usize, usize) {
        (self.real.len(), self.complex.len())
    }
}

/// Isolate all roots of f, using the default precision cap.
pub fn isolate_roots(f: &IntPoly) -> Result<RootSet> {
    isolate_roots_with_cap(f, DEFAULT_PRECISION_CAP)
}

pub fn isolate_roots_with_cap(f: &IntPoly, cap: u32) -> Result<RootSet> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let g = f.squarefree_part();
    let real = isolate_real(&g);
    let n = g.deg();
    let s = real.len();
    let t = (n - s) / 2;
    let complex = if t == 0 { Vec::new() } else { isolate_complex(&g, t, cap)? };
    Ok(RootSet { poly: g, real, complex })
}

// ---------------------------------------------------------------------------
// Real roots

struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    fn new(f: &IntPoly) -> Sturm {
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let k = chain.len();
            let r = chain[k - 2].to_rat().rem(&chain[k - 1].to_rat());
            if r.is_zero() {
                break;
            }
            // positive rescaling preserves signs
            chain.push(-r.to_int_primitive());
        }
        Sturm { chain }
    }

    fn variations(&self, signs: impl Iterator<Item = i32>) -> usize {
        let v: Vec<i32> = signs.filter(|&s| s != 0).collect();
        v.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn at(&self, x: &Rational) -> usize {
        self.variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn at_pos_inf(&self) -> usize {
        self.variations(self.chain.iter().map(|p| if p.leading().is_positive() { 1 } else { -1 }))
    }

    fn at_neg_inf(&self) -> usize {
        self.variations(self.chain.iter().map(|p| {
            let s = if p.leading().is_positive() { 1 } else { -1 };
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct roots in (a, b].
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.at(a) - self.at(b)
    }
}

/// Number of distinct real roots of f.
pub fn count_real_roots(f: &IntPoly) -> usize {
    let g = f.squarefree_part();
    if g.deg() == 0 {
        return 0;
    }
    let s = Sturm::new(&g);
    s.at_neg_inf() - s.at_pos_inf()
}

/// Number of distinct real roots of f in (a, b].
pub fn count_real_roots_in(f: &IntPoly, a: &Rational, b: &Rational) -> usize {
    let g = f.squarefree_part();
    if g.deg() == 0 {
        return 0;
    }
    Sturm::new(&g).count(a, b)
}

fn power_of_two_bound(f: &IntPoly) -> Rational {
    let b = f.cauchy_bound();
    let mut r = Rational::one();
    while r < b {
        r *= rational::int(2);
    }
    r
}

fn isolate_real(g: &IntPoly) -> Vec<RealAlgebraic> {
    if g.deg() == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(g);
    let total = sturm.at_neg_inf() - sturm.at_pos_inf();
    let mut out = Vec::new();
    if total == 0 {
        return out;
    }
    let b = power_of_two_bound(g);
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((a, c, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if k == 1 {
            if g.sign_at(&c) == 0 {
                out.push(RealAlgebraic::exact_root(g.clone(), c));
            } else {
                out.push(RealAlgebraic { poly: g.clone(), lo: a, hi: c });
            }
            continue;
        }
        let m = (&a + &c) / rational::int(2);
        let left = sturm.count(&a, &m);
        // push right first so the left half is processed first
        stack.push((m.clone(), c, k - left));
        stack.push((a, m, left));
    }
    for r in rational_roots(g) {
        if let Some(slot) = out.iter_mut().find(|x| x.lo < r && r < x.hi) {
            *slot = RealAlgebraic::exact_root(g.clone(), r);
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Rational roots by the rational root test, when the end coefficients are
/// small enough to enumerate divisors; otherwise an empty list.
fn rational_roots(g: &IntPoly) -> Vec<Rational> {
    let limit = BigInt::from(1u64 << 40);
    let a0 = g.coeff(0);
    let lc = g.leading();
    if a0.is_zero() {
        let mut v = rational_roots(&IntPoly::new(g.coeffs()[1..].to_vec()));
        v.push(Rational::zero());
        return v;
    }
    if a0.abs() > limit || lc.abs() > limit {
        return Vec::new();
    }
    let mut out = Vec::new();
    let ps = crate::factor::positive_divisors(&a0);
    let qs = crate::factor::positive_divisors(&lc);
    for p in &ps {
        for q in &qs {
            for sgn in [1, -1] {
                let r = Rational::new(p * BigInt::from(sgn), q.clone());
                if !out.contains(&r) && g.sign_at(&r) == 0 {
                    out.push(r);
                }
            }
        }
    }
    out
}

impl RealAlgebraic {
    fn exact_root(poly: IntPoly, r: Rational) -> Self {
        RealAlgebraic { poly, lo: r.clone(), hi: r }
    }

    /// The rational number q as an algebraic number (defining poly d·x − n).
    pub fn from_rational(q: &Rational) -> Self {
        let poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        Self::exact_root(poly, q.clone())
    }

    /// Build from a square-free polynomial and an interval (lo, hi) known to
    /// contain exactly one of its roots (checked).
    pub fn from_isolating_interval(poly: &IntPoly, lo: Rational, hi: Rational) -> Result<Self> {
        let g = poly.squarefree_part();
        if lo == hi {
            if g.sign_at(&lo) == 0 {
                return Ok(Self::exact_root(g, lo));
            }
            return Err(ExactError::Domain("point is not a root".into()));
        }
        let s = Sturm::new(&g);
        let k = s.count(&lo, &hi) - usize::from(g.sign_at(&hi) == 0);
        if k != 1 {
            return Err(ExactError::Domain(format!("interval holds {k} roots")));
        }
        Ok(RealAlgebraic { poly: g, lo, hi })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact value when the root is known to be rational.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(64).to_f64()
    }

    /// Refine until the isolating interval has width <= 2^-bits. The result
    /// is always contained in the current interval.
    pub fn refine(&self, bits: u32) -> RealAlgebraic {
        let target = dyadic(BigInt::one(), bits as i64);
        let mut cur = self.clone();
        if cur.is_exact() {
            return cur;
        }
        let f = &cur.poly;
        let fp = f.derivative();
        let s_hi = f.sign_at(&cur.hi);
        debug_assert!(s_hi != 0);
        while cur.hi.clone() - cur.lo.clone() > target {
            let w = &cur.hi - &cur.lo;
            // Newton attempt from the midpoint, verified by a sign change.
            let m = (&cur.lo + &cur.hi) / rational::int(2);
            let dv = fp.eval(&m);
            if !dv.is_zero() {
                let prec = (2 * (-rational::log2_floor(&w)).max(8) as u32).min(bits + 64) + 16;
                let x = round_down(&(&m - f.eval(&m) / dv), prec);
                let d = (&w * &w).max(&target / rational::int(8));
                let (a, b) = (&x - &d, &x + &d);
                if a > cur.lo && b < cur.hi {
                    let sa = f.sign_at(&a);
                    let sb = f.sign_at(&b);
                    if sa == 0 {
                        return RealAlgebraic::exact_root(cur.poly.clone(), a);
                    }
                    if sb == 0 {
                        return RealAlgebraic::exact_root(cur.poly.clone(), b);
                    }
                    if sa != sb {
                        cur.lo = a;
                        cur.hi = b;
                        continue;
                    }
                }
            }
            let sm = f.sign_at(&m);
            if sm == 0 {
                return RealAlgebraic::exact_root(cur.poly.clone(), m);
            }
            if sm == s_hi {
                cur.hi = m;
            } else {
                cur.lo = m;
            }
        }
        cur
    }

    /// Enclosure of width <= 2^-bits.
    pub fn enclosure(&self, bits: u32) -> Interval {
        self.refine(bits).interval()
    }

    /// Exact sign of the root.
    pub fn sign(&self) -> i32 {
        self.sign_of_poly(&IntPoly::x())
    }

    /// Exact sign of g(root).
    pub fn sign_of_poly(&self, g: &IntPoly) -> i32 {
        if let Some(v) = self.exact_value() {
            return g.sign_at(v);
        }
        let h = self.poly.to_rat().gcd(&g.to_rat());
        if h.deg() > 0 {
            let hi = h.to_int_primitive();
            if sign_change(&hi, &self.lo, &self.hi) {
                return 0;
            }
        }
        let mut bits = 16;
        loop {
            let iv = g.eval_interval(&self.enclosure(bits));
            if let Some(s) = iv.sign() {
                return s;
            }
            bits *= 2;
        }
    }

    /// Total order on real algebraic numbers.
    pub fn cmp_value(&self, other: &RealAlgebraic) -> Ordering {
        if let (Some(a), Some(b)) = (self.exact_value(), other.exact_value()) {
            return a.cmp(b);
        }
        // Intervals are open unless exact, so touching endpoints still separate.
        if self.hi <= other.lo {
            return Ordering::Less;
        }
        if other.hi <= self.lo {
            return Ordering::Greater;
        }
        // Overlap: equal iff they share a root in the intersection.
        let h = self.poly.to_rat().gcd(&other.poly.to_rat()).to_int_primitive();
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if h.deg() > 0 && (sign_change(&h, &lo, &hi) || (lo == hi && h.sign_at(&lo) == 0)) {
            return Ordering::Equal;
        }
        let mut bits = 8;
        loop {
            let a = self.enclosure(bits);
            let b = other.enclosure(bits);
            if a.hi() < b.lo() {
                return Ordering::Less;
            }
            if b.hi() < a.lo() {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }
}

/// Whether the square-free h has a root in the open interval (lo, hi), given
/// that (lo, hi) holds at most one root of some multiple of h.
fn sign_change(h: &IntPoly, lo: &Rational, hi: &Rational) -> bool {
    if lo >= hi {
        return false;
    }
    let g = h.squarefree_part();
    let s = Sturm::new(&g);
    let k = s.count(lo, hi) - usize::from(g.sign_at(hi) == 0);
    k > 0
}

// ---------------------------------------------------------------------------
// Complex roots

#[derive(Clone, Debug, PartialEq)]
struct CRat {
    re: Rational,
    im: Rational,
}

impl CRat {
    fn zero() -> Self {
        CRat { re: Rational::zero(), im: Rational::zero() }
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm2(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &CRat) -> CRat {
        let n = o.norm2();
        let c = CRat { re: o.re.clone(), im: -o.im.clone() };
        let p = self.mul(&c);
        CRat { re: p.re / &n, im: p.im / n }
    }
    fn round(&self, prec: i64) -> CRat {
        // absolute rounding to multiples of 2^-prec
        CRat { re: round_abs(&self.re, prec), im: round_abs(&self.im, prec) }
    }
    fn from_c64(z: Complex64) -> CRat {
        CRat { re: rational::from_f64(z.re), im: rational::from_f64(z.im) }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.re), rational::to_f64(&self.im))
    }
}

fn round_abs(q: &Rational, prec: i64) -> Rational {
    let s = rational::floor_scaled(&(q + dyadic(BigInt::one(), prec + 1)), prec);
    dyadic(s, prec)
}

fn eval_c(f: &[Rational], z: &CRat) -> CRat {
    f.iter().rev().fold(CRat::zero(), |acc, c| {
        let m = acc.mul(z);
        CRat { re: m.re + c, im: m.im }
    })
}

fn aberth_f64(f: &IntPoly) -> Option<Vec<Complex64>> {
    let n = f.deg();
    let c: Vec<f64> = f.coeffs().iter().map(|x| rational::to_f64(&Rational::from_integer(x.clone()))).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let lc = c[n];
    let center = -c[n - 1] / (n as f64 * lc);
    // Fujiwara-style radius
    let mut r: f64 = 0.0;
    for (k, ck) in c.iter().enumerate().take(n) {
        r = r.max((ck / lc).abs().powf(1.0 / (n - k) as f64));
    }
    let r = 2.0 * r.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(r, a)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ck in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + ck;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            maxstep = maxstep.max(w.norm() / (1.0 + z[i].norm()));
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    z.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(z)
}

/// One Aberth sweep in exact arithmetic, rounding to multiples of 2^-prec.
fn aberth_step(f: &[Rational], fp: &[Rational], z: &mut [CRat], prec: i64) {
    let n = z.len();
    for i in 0..n {
        let p = eval_c(f, &z[i]);
        if p.norm2().is_zero() {
            continue;
        }
        let dp = eval_c(fp, &z[i]);
        if dp.norm2().is_zero() {
            continue;
        }
        let ratio = p.div(&dp);
        let mut s = CRat::zero();
        for j in 0..n {
            if j != i {
                let d = z[i].sub(&z[j]);
                if d.norm2().is_zero() {
                    continue;
                }
                s = s.add(&CRat { re: Rational::one(), im: Rational::zero() }.div(&d).round(prec + 8));
            }
        }
        let one = CRat { re: Rational::one(), im: Rational::zero() };
        let den = one.sub(&ratio.mul(&s));
        if den.norm2().is_zero() {
            continue;
        }
        let w = ratio.div(&den);
        z[i] = z[i].sub(&w).round(prec);
    }
}

struct Disc {
    c: CRat,
    r: Rational,
}

/// Weierstrass inclusion radii for all approximations (upper bounds).
fn inclusion_discs(f: &IntPoly, fr: &[Rational], z: &[CRat]) -> Option<Vec<Disc>> {
    let n = z.len();
    let lc2 = Rational::from_integer(f.leading() * f.leading());
    let n2 = rational::int((n * n) as i64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let num = eval_c(fr, &z[i]).norm2();
        let mut den = lc2.clone();
        for j in 0..n {
            if j != i {
                den *= z[i].sub(&z[j]).norm2();
            }
        }
        if den.is_zero() {
            return None;
        }
        let r2 = &n2 * num / den;
        let r = sqrt_up(&r2);
        out.push(Disc { c: z[i].clone(), r });
    }
    Some(out)
}

fn sqrt_up(q: &Rational) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let iv = Interval::point(q.clone()).sqrt(64).expect("nonnegative");
    round_up(iv.hi(), 64)
}

fn discs_certify(discs: &[Disc], t: usize) -> Option<Vec<usize>> {
    let k = rat(3, 2);
    let n = discs.len();
    for i in 0..n {
        for j in i + 1..n {
            let d2 = discs[i].c.sub(&discs[j].c).norm2();
            let rr = (&discs[i].r + &discs[j].r) * &k;
            if d2 <= &rr * &rr {
                return None;
            }
        }
    }
    let upper: Vec<usize> = (0..n).filter(|&i| discs[i].c.im > &discs[i].r * &k).collect();
    (upper.len() == t).then_some(upper)
}

fn isolate_complex(g: &IntPoly, t: usize, cap: u32) -> Result<Vec<ComplexAlgebraic>> {
    let n = g.deg();
    let fr: Vec<Rational> = g.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
    let fpr: Vec<Rational> = g.derivative().coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
    let mut z: Vec<CRat> = match aberth_f64(g) {
        Some(v) => v.into_iter().map(CRat::from_c64).collect(),
        None => (0..n)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                CRat::from_c64(Complex64::from_polar(1.5, a))
            })
            .collect(),
    };
    let mut prec: u32 = 53;
    loop {
        let zr: Vec<CRat> = z.iter().map(|x| x.round(prec as i64)).collect();
        if let Some(discs) = inclusion_discs(g, &fr, &zr) {
            if let Some(upper) = discs_certify(&discs, t) {
                let mut out: Vec<ComplexAlgebraic> = upper
                    .into_iter()
                    .map(|i| ComplexAlgebraic {
                        poly: g.clone(),
                        re: discs[i].c.re.clone(),
                        im: discs[i].c.im.clone(),
                        radius: discs[i].r.clone(),
                    })
                    .collect();
                out.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
                return Ok(out);
            }
        }
        if prec >= cap {
            return Err(ExactError::PrecisionExhausted { bits: prec, what: "complex root isolation".into() });
        }
        prec = (prec * 2).min(cap);
        let iters = if prec <= 128 { 30 } else { 4 };
        let mut zz = zr;
        for _ in 0..iters {
            aberth_step(&fr, &fpr, &mut zz, prec as i64);
        }
        z = zz;
        // keep f64 guesses as a fallback for badly started iterations
        if z.iter().any(|x| !x.to_c64().re.is_finite()) {
            return Err(ExactError::PrecisionExhausted { bits: prec, what: "complex root iteration diverged".into() });
        }
    }
}

impl ComplexAlgebraic {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn center(&self) -> (&Rational, &Rational) {
        (&self.re, &self.im)
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    /// Bounding box of the isolating disc.
    pub fn isolating_box(&self) -> ComplexBox {
        ComplexBox::new(
            Interval::new(&self.re - &self.radius, &self.re + &self.radius),
            Interval::new(&self.im - &self.radius, &self.im + &self.radius),
        )
    }

    pub fn to_c64(&self) -> Complex64 {
        let r = self.refine(64);
        Complex64::new(rational::to_f64(&r.re), rational::to_f64(&r.im))
    }

    /// Refine until the disc radius is <= 2^-bits, via verified Newton steps.
    /// The new disc always lies inside the old one.
    pub fn refine(&self, bits: u32) -> ComplexAlgebraic {
        let target = dyadic(BigInt::one(), bits as i64);
        let mut cur = self.clone();
        let f: Vec<Rational> = self.poly.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
        let fp: Vec<Rational> =
            self.poly.derivative().coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
        let n = rational::int(self.poly.deg() as i64);
        let mut stalls = 0;
        while cur.radius > target {
            let acc = (-rational::log2_floor(&cur.radius)).max(16);
            let prec = (2 * acc + 32).min(bits as i64 + 64).max(acc + 32);
            let c = CRat { re: cur.re.clone(), im: cur.im.clone() };
            let p = eval_c(&f, &c);
            let dp = eval_c(&fp, &c);
            if dp.norm2().is_zero() {
                break;
            }
            let z = if stalls == 0 { c.sub(&p.div(&dp)).round(prec) } else { c.round(prec + 64 * stalls) };
            let pz = eval_c(&f, &z);
            let dpz = eval_c(&fp, &z);
            if dpz.norm2().is_zero() {
                break;
            }
            let r = sqrt_up(&(&n * &n * pz.norm2() / dpz.norm2()));
            let shift2 = z.sub(&c).norm2();
            if r < cur.radius && shift2 <= (&cur.radius - &r) * (&cur.radius - &r) {
                cur = ComplexAlgebraic { poly: cur.poly.clone(), re: z.re, im: z.im, radius: r };
                stalls = 0;
            } else {
                stalls += 1;
                if stalls > 4 {
                    break;
                }
            }
        }
        cur
    }

    pub fn enclosure(&self, bits: u32) -> ComplexBox {
        self.refine(bits).isolating_box()
    }
}

/// Upper-half-plane helper for callers that only need a float view.
pub fn roots_f64(rs: &RootSet) -> (Vec<f64>, Vec<Complex64>) {
    (rs.real.iter().map(|r| r.to_f64()).collect(), rs.complex.iter().map(|c| c.to_c64()).collect())
}

/// Enclosures for every root (with multiplicity one per distinct root),
/// complex pairs expanded into both conjugates.
pub fn all_root_boxes(rs: &RootSet, bits: u32) -> Vec<ComplexBox> {
    let mut out: Vec<ComplexBox> = rs.real.iter().map(|r| ComplexBox::real(r.enclosure(bits))).collect();
    for c in &rs.complex {
        let b = c.enclosure(bits);
        out.push(b.conj());
        out.push(b);
    }
    out
}

/// Polynomial with rational coefficients, as a convenience for callers.
pub fn isolate_rat(f: &RatPoly) -> Result<RootSet> {
    isolate_roots(&f.to_int_primitive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn documented_cases() {
        let r = isolate_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!(r.signature(), (0, 1));
        let b = r.complex[0].enclosure(40);
        assert!(b.re.contains_zero() && b.im.contains(&rational::int(1)));

        let r = isolate_roots(&p(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(r.signature(), (1, 1));
        let x = r.real[0].enclosure(40);
        assert!(x.gt(&rational::int(1)) && x.lt(&rational::int(2)));
        assert!((x.to_f64() - 1.324717957244746).abs() < 1e-10);

        let r = isolate_roots(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(r.signature(), (2, 0));
        assert_eq!(r.real[0].exact_value(), Some(&rational::int(-1)));
        assert_eq!(r.real[1].exact_value(), Some(&rational::int(1)));

        assert_eq!(isolate_roots(&IntPoly::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn squarefree_part_is_used() {
        let f = p(&[-1, 0, 1]).mul(&p(&[-1, 0, 1])).mul(&p(&[1, 0, 1]));
        let r = isolate_roots(&f).unwrap();
        assert_eq!(r.signature(), (2, 1));
    }

    #[test]
    fn refinement_stays_inside() {
        let r = isolate_roots(&p(&[-2, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.signature(), (1, 2));
        let a = r.real[0].refine(10);
        let b = a.refine(200);
        assert!(a.interval().contains_interval(&b.interval()));
        assert!(b.interval().width() <= dyadic(BigInt::one(), 200));
        for c in &r.complex {
            let c1 = c.refine(30);
            let c2 = c1.refine(300);
            assert!(c.isolating_box().contains_box(&c1.isolating_box()));
            assert!(c1.isolating_box().contains_box(&c2.isolating_box()));
            let v = c2.poly().eval_box(&c2.isolating_box());
            assert!(v.contains_zero());
        }
    }

    #[test]
    fn ordering_of_complex_representatives() {
        // (x^2+1)(x^2+2x+5): roots i, -1+2i
        let f = p(&[1, 0, 1]).mul(&p(&[5, 2, 1]));
        let r = isolate_roots(&f).unwrap();
        assert_eq!(r.signature(), (0, 2));
        assert!(r.complex[0].to_c64().re < r.complex[1].to_c64().re);
        assert!(r.complex.iter().all(|c| c.to_c64().im > 0.0));
    }

    #[test]
    fn sign_and_compare() {
        let r = isolate_roots(&p(&[-2, 0, 1])).unwrap();
        let s2 = &r.real[1];
        assert_eq!(s2.sign(), 1);
        assert_eq!(r.real[0].sign(), -1);
        // sqrt2^2 - 2 = 0
        assert_eq!(s2.sign_of_poly(&p(&[-2, 0, 1])), 0);
        assert_eq!(s2.sign_of_poly(&p(&[-3, 2])), -1); // 2*sqrt2 < 3
        let other = isolate_roots(&p(&[-8, 0, 0, 0, 1])).unwrap(); // 8^(1/4) = sqrt(2*sqrt2)
        assert_eq!(s2.cmp_value(&other.real[1]), Ordering::Less);
        assert_eq!(s2.cmp_value(&s2.refine(50)), Ordering::Equal);
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(count_real_roots(&p(&[-1, -1, 0, 0, 0, 1])), 1);
        assert_eq!(count_real_roots(&p(&[1, -3, 1])), 2);
        assert_eq!(count_real_roots_in(&p(&[1, -3, 1]), &rational::int(0), &rational::int(1)), 1);
    }
}
