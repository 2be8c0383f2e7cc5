//! Number fields Q[x]/(f) with certified, ordered embeddings.
//!
//! Elements live on the power basis 1, α, …, α^{n−1}. Embeddings are ordered
//! as in `exactnum`: real roots ascending, then one upper-half-plane
//! representative per conjugate pair, sorted by (real part, imaginary part).
//! Embedding indices are 0-based throughout the API.

use std::fmt;
use std::sync::Arc;

use exactnum::rational::{dyadic, int, Rational};
use exactnum::{
    is_irreducible, isolate_roots, ComplexAlgebraic, ComplexBox, IntPoly, Interval, RatPoly, RationalMatrix,
    RealAlgebraic, RootSet,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OtError, Result};
use crate::wire::{from_q_mat, Q};

pub struct NumberField {
    min_poly: IntPoly,
    modulus: RatPoly,
    roots: RootSet,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[x]/({}))", self.min_poly)
    }
}

impl NumberField {
    /// Build Q[x]/(f). `f` must be monic and irreducible.
    pub fn new(f: IntPoly) -> Result<Arc<NumberField>> {
        if f.is_zero() || f.deg() == 0 {
            return Err(OtError::NotIrreducible);
        }
        if !f.is_monic() {
            return Err(OtError::NotMonic);
        }
        if !is_irreducible(&f)? {
            return Err(OtError::NotIrreducible);
        }
        let roots = isolate_roots(&f)?;
        Ok(Arc::new(NumberField { modulus: f.to_rat(), min_poly: f, roots }))
    }

    pub fn from_i64s(c: &[i64]) -> Result<Arc<NumberField>> {
        NumberField::new(IntPoly::from_i64s(c))
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    /// (s, t): real embeddings and conjugate pairs.
    pub fn signature(&self) -> (usize, usize) {
        self.roots.signature()
    }

    /// s + t, the number of embeddings up to conjugation.
    pub fn embedding_count(&self) -> usize {
        self.roots.real.len() + self.roots.complex.len()
    }

    pub fn real_root(&self, i: usize) -> &RealAlgebraic {
        &self.roots.real[i]
    }

    pub fn complex_root(&self, i: usize) -> &ComplexAlgebraic {
        &self.roots.complex[i]
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        self.min_poly == other.min_poly
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(OtError::invalid(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.degree()
            )));
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    pub fn element_i64(self: &Arc<Self>, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn from_rational(self: &Arc<Self>, q: Rational) -> FieldElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = q;
        FieldElement { field: self.clone(), coords: c }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rational::zero())
    }

    /// The class of x, i.e. the root α of the defining polynomial.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&RatPoly::x())
    }

    pub fn from_poly(self: &Arc<Self>, p: &RatPoly) -> FieldElement {
        let r = p.rem(&self.modulus);
        let mut c: Vec<Rational> = r.coeffs().to_vec();
        c.resize(self.degree(), Rational::zero());
        FieldElement { field: self.clone(), coords: c }
    }
}

/// Value of an embedding: an interval for real embeddings, a box otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Embedded {
    Real(Interval),
    Complex(ComplexBox),
}

impl Embedded {
    pub fn to_box(&self) -> ComplexBox {
        match self {
            Embedded::Real(x) => ComplexBox::real(x.clone()),
            Embedded::Complex(z) => z.clone(),
        }
    }

    pub fn width(&self) -> Rational {
        match self {
            Embedded::Real(x) => x.width(),
            Embedded::Complex(z) => z.width(),
        }
    }

    /// |value|² as an interval.
    pub fn abs2(&self) -> Interval {
        match self {
            Embedded::Real(x) => x.sqr(),
            Embedded::Complex(z) => z.abs2(),
        }
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same_as(&o.field) && self.coords == o.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}] in {:?}", c.join(", "), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &FieldElement) {
        assert!(self.field.same_as(&o.field), "elements of different fields");
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let c = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        FieldElement { field: self.field.clone(), coords: c }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let c = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        FieldElement { field: self.field.clone(), coords: c }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &FieldElement) -> FieldElement {
        self.check(o);
        self.field.from_poly(&self.to_poly().mul(&o.to_poly()))
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(OtError::Exact(exactnum::ExactError::DivisionByZero));
        }
        let (g, s, _) = self.to_poly().xgcd(&self.field.modulus);
        // f irreducible, so g is a nonzero constant.
        let s = s.scale(&(Rational::one() / g.coeff(0)));
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Monic minimal polynomial over Q: the first linear dependency among
    /// 1, a, a², ….
    pub fn min_poly(&self) -> RatPoly {
        let n = self.field.degree();
        let mut powers: Vec<Vec<Rational>> = vec![self.field.one().coords];
        let mut cur = self.field.one();
        for k in 1..=n {
            cur = cur.mul(self);
            let m = RationalMatrix::from_columns(&powers);
            if let Some(c) = m.solve(&cur.coords) {
                let mut p: Vec<Rational> = c.iter().map(|x| -x).collect();
                p.push(Rational::one());
                debug_assert_eq!(p.len(), k + 1);
                return RatPoly::new(p);
            }
            powers.push(cur.coords.clone());
        }
        unreachable!("powers of a field element are dependent by degree n")
    }

    pub fn degree(&self) -> usize {
        self.min_poly().deg()
    }

    /// Matrix of multiplication by `self` on the power basis.
    pub fn multiplication_matrix(&self) -> RationalMatrix {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut b = self.field.one();
        let a = self.field.generator();
        for _ in 0..n {
            cols.push(self.mul(&b).coords);
            b = b.mul(&a);
        }
        RationalMatrix::from_columns(&cols)
    }

    pub fn char_poly(&self) -> RatPoly {
        self.multiplication_matrix().charpoly().expect("square matrix")
    }

    pub fn norm(&self) -> Rational {
        self.multiplication_matrix().det().expect("square matrix")
    }

    pub fn trace(&self) -> Rational {
        self.multiplication_matrix().trace()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly().coeffs().iter().all(|c| c.is_integer())
    }

    pub fn is_unit(&self) -> bool {
        let p = self.min_poly();
        p.coeffs().iter().all(|c| c.is_integer()) && p.coeff(0).abs().is_one()
    }

    /// Exact: the sign of each real embedding is decided by the isolating
    /// interval of the defining polynomial.
    pub fn is_totally_positive(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.to_poly().to_int_primitive();
        self.field.roots.real.iter().all(|r| r.sign_of_poly(&g) > 0)
    }

    /// Sign of σ_i(self) for a real embedding i.
    pub fn real_sign(&self, i: usize) -> Result<i32> {
        let s = self.field.roots.real.len();
        if i >= s {
            return Err(OtError::IndexOutOfRange { index: i, count: s });
        }
        if self.is_zero() {
            return Ok(0);
        }
        Ok(self.field.roots.real[i].sign_of_poly(&self.to_poly().to_int_primitive()))
    }

    /// Certified enclosure of σ_i(self) of width ≤ 2^-prec. Indices 0..s are
    /// the real embeddings, s..s+t the upper-half-plane representatives.
    pub fn embed(&self, i: usize, prec: u32) -> Result<Embedded> {
        let (s, t) = self.field.signature();
        if i >= s + t {
            return Err(OtError::IndexOutOfRange { index: i, count: s + t });
        }
        let p = self.to_poly();
        if p.is_constant() {
            let c = p.coeff(0);
            return Ok(if i < s {
                Embedded::Real(Interval::point(c))
            } else {
                Embedded::Complex(ComplexBox::point(c, Rational::zero()))
            });
        }
        let target = dyadic(BigInt::one(), prec as i64);
        let limit = prec.saturating_mul(16).max(4096);
        let mut bits = prec + 16;
        loop {
            let v = if i < s {
                let r = &self.field.roots.real[i];
                Embedded::Real(p.eval_interval(&r.enclosure(bits)))
            } else {
                let r = &self.field.roots.complex[i - s];
                Embedded::Complex(p.eval_box(&r.enclosure(bits)))
            };
            if v.width() <= target {
                return Ok(v);
            }
            if bits >= limit {
                return Err(OtError::PrecisionExhausted { bits, what: "embedding enclosure".into() });
            }
            bits = (bits * 2).min(limit);
        }
    }

    /// Enclosures of all s + t embeddings.
    pub fn embed_all(&self, prec: u32) -> Result<Vec<Embedded>> {
        (0..self.field.embedding_count()).map(|i| self.embed(i, prec)).collect()
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement::add(self, o)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement::sub(self, o)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        FieldElement::mul(self, o)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// A full-rank Z-module inside the field, given by n elements.
#[derive(Clone, Debug)]
pub struct ZModule {
    field: Arc<NumberField>,
    basis: Vec<FieldElement>,
    coord_inv: RationalMatrix,
}

impl ZModule {
    /// The power-basis order Z[α].
    pub fn power_basis(field: &Arc<NumberField>) -> ZModule {
        let n = field.degree();
        let basis: Vec<FieldElement> = (0..n)
            .map(|k| {
                let mut c = vec![Rational::zero(); n];
                c[k] = Rational::one();
                FieldElement { field: field.clone(), coords: c }
            })
            .collect();
        ZModule { field: field.clone(), basis, coord_inv: RationalMatrix::identity(n) }
    }

    pub fn new(field: &Arc<NumberField>, basis: Vec<FieldElement>) -> Result<ZModule> {
        let n = field.degree();
        if basis.len() != n {
            return Err(OtError::invalid(format!("module basis has {} elements, expected {n}", basis.len())));
        }
        let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords.clone()).collect();
        let m = RationalMatrix::from_columns(&cols);
        let coord_inv = m.inverse().map_err(|_| OtError::invalid("module basis is linearly dependent"))?;
        Ok(ZModule { field: field.clone(), basis, coord_inv })
    }

    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Vec<Rational>>) -> Result<ZModule> {
        let basis = coords.into_iter().map(|c| field.element(c)).collect::<Result<Vec<_>>>()?;
        ZModule::new(field, basis)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Coordinates of `a` on the module basis.
    pub fn coordinates(&self, a: &FieldElement) -> Vec<Rational> {
        self.coord_inv.mul_vec(&a.coords)
    }

    /// Rows = embeddings σ_0..σ_{s+t−1}, columns = basis elements.
    pub fn embedding_matrix(&self, prec: u32) -> Result<Vec<Vec<ComplexBox>>> {
        let k = self.field.embedding_count();
        let mut rows = vec![Vec::with_capacity(self.basis.len()); k];
        for b in &self.basis {
            for (i, e) in b.embed_all(prec)?.into_iter().enumerate() {
                rows[i].push(e.to_box());
            }
        }
        Ok(rows)
    }
}

/// Matrix of multiplication by an element on a module basis.
#[derive(Clone, Debug)]
pub struct RegularRep {
    pub element: FieldElement,
    /// Column j holds the module coordinates of element · basis_j.
    pub matrix: RationalMatrix,
    pub integral: bool,
    pub det: Rational,
    pub det_one: bool,
}

pub fn regular_rep(a: &FieldElement, m: &ZModule) -> RegularRep {
    let cols: Vec<Vec<Rational>> = m.basis.iter().map(|b| m.coordinates(&a.mul(b))).collect();
    let matrix = RationalMatrix::from_columns(&cols);
    let det = matrix.det().expect("square matrix");
    RegularRep { element: a.clone(), integral: matrix.is_integer(), det_one: det.is_one(), det, matrix }
}

/// `{ "min_poly": [ints], "module_basis": optional [[rationals]] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub min_poly: IntPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_basis: Option<Vec<Vec<Q>>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<(Arc<NumberField>, ZModule)> {
        let k = NumberField::new(self.min_poly.clone())?;
        let m = match &self.module_basis {
            Some(b) => ZModule::from_coords(&k, from_q_mat(b))?,
            None => ZModule::power_basis(&k),
        };
        Ok((k, m))
    }
}

/// Interval check that P·M − D·P encloses zero, where P is the embedding
/// matrix of the module and D = diag(σ_i(a)). Returns the residual boxes.
pub fn diagonalization_residual(
    p: &[Vec<ComplexBox>],
    m: &RationalMatrix,
    sigma: &[ComplexBox],
) -> Vec<Vec<ComplexBox>> {
    let n = m.rows();
    p.iter()
        .zip(sigma)
        .map(|(row, d)| {
            (0..n)
                .map(|j| {
                    let mut acc = ComplexBox::zero();
                    for (k, pk) in row.iter().enumerate() {
                        let c = m.get(k, j);
                        if !c.is_zero() {
                            acc = acc.add(&pk.scale(c));
                        }
                    }
                    acc.sub(&d.mul(&row[j]))
                })
                .collect()
        })
        .collect()
}

/// Width helper used in reports: the largest |endpoint| of a residual box.
pub fn box_magnitude(z: &ComplexBox) -> Rational {
    z.re.mag().max(z.im.mag())
}
