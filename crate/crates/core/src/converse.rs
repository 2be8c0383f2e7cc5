//! From a commuting family of integer matrices back to a number field, a unit
//! group, its signature and the matrix C.
//!
//! K = Q[U] is closed inside Mat(n, Q); a primitive element with an
//! irreducible minimal polynomial of degree n certifies that K is a field
//! acting on Q^n as a one-dimensional K-space, which is also the simplicity
//! certificate. A failure names the obstruction: a nilpotent (K not reduced),
//! a pair of zero divisors (K not a field), or the degree.

use exactnum::rational::{int, Rational};
use exactnum::roots::all_root_boxes;
use exactnum::{
    eigenvalue_magnitude_profile, factor, is_irreducible, isolate_roots, ComplexBox, IntPoly, Interval, MagnitudeClass,
    RationalMatrix,
};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OtError, Result};
use crate::metrics::lck_condition;
use crate::numfield::{Embedded, FieldElement, NumberField};
use crate::unitlat::{
    check_admissible_with_cap, exponent_vectors, log_image, matrix_c_with_cap, Admissibility, Branch, MatrixC,
    UnitGroup,
};
use crate::wire::{to_q, Q};

/// Coefficient bound for primitive-element combinations Σ k_i A_i.
pub const COMBINATION_BOUND: i64 = 3;
/// Default exponent bound for the simplicity-witness search.
pub const WITNESS_BOUND: i64 = 5;

/// `{ "n": …, "generators": [[[ints]]] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFamily {
    pub n: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

impl MatrixFamily {
    pub fn new(generators: Vec<Vec<Vec<i64>>>) -> MatrixFamily {
        let n = generators.first().map_or(0, |g| g.len());
        MatrixFamily { n, generators }
    }

    pub fn matrices(&self) -> Result<Vec<RationalMatrix>> {
        if self.generators.is_empty() {
            return Err(OtError::invalid("the family has no generators"));
        }
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != self.n || g.iter().any(|r| r.len() != self.n) {
                    return Err(OtError::invalid(format!("generator {i} is not {n}×{n}", n = self.n)));
                }
                Ok(RationalMatrix::from_i64(g))
            })
            .collect()
    }
}

fn flatten(m: &RationalMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

/// Incremental row echelon form: each stored row is reduced against the
/// earlier ones, so sequential reduction decides membership.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Adds v when it is independent; returns whether it was.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].recip();
                self.rows.push((p, r.iter().map(|x| x * &inv).collect()));
                true
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraClosure {
    pub n: usize,
    pub dim: usize,
    /// Basis of Q[U]; the first element is the identity.
    pub basis: Vec<RationalMatrix>,
    /// basis[i]·basis[j] = Σ_k table[i][j][k] basis[k].
    pub table: Vec<Vec<Vec<Q>>>,
}

impl AlgebraClosure {
    /// Coordinates of m in the closure basis, if m lies in Q[U].
    pub fn coords(&self, m: &RationalMatrix) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(flatten).collect();
        RationalMatrix::from_columns(&cols).solve(&flatten(m))
    }
}

/// Q[U] ⊂ Mat(n, Q) by breadth-first products with the generators.
pub fn close_algebra(fam: &MatrixFamily) -> Result<AlgebraClosure> {
    let gens = fam.matrices()?;
    for (i, g) in gens.iter().enumerate() {
        if !g.det()?.is_one() {
            return Err(OtError::NonUnimodularDet(i));
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes_with(&gens[j]) {
                return Err(OtError::NonCommuting(i, j));
            }
        }
    }
    let n = fam.n;
    let id = RationalMatrix::identity(n);
    let mut ech = Echelon { rows: Vec::new() };
    ech.insert(&flatten(&id));
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() {
        let m = basis[next].clone();
        next += 1;
        for g in &gens {
            let p = m.mul(g)?;
            if ech.insert(&flatten(&p)) {
                basis.push(p);
            }
        }
    }
    let d = basis.len();
    let cols: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
    let bm = RationalMatrix::from_columns(&cols);
    let mut table = Vec::with_capacity(d);
    for a in &basis {
        let mut row = Vec::with_capacity(d);
        for b in &basis {
            let c = bm.solve(&flatten(&a.mul(b)?)).ok_or_else(|| OtError::invalid("closure is not multiplicative"))?;
            row.push(to_q(&c));
        }
        table.push(row);
    }
    Ok(AlgebraClosure { n, dim: d, basis, table })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FieldCertificate {
    /// Irreducible minimal polynomial of degree d = n.
    Field {
        primitive: RationalMatrix,
        combination: Vec<i64>,
        min_poly: IntPoly,
        irreducible: bool,
        degree: usize,
    },
    /// K is a field, but [K:Q] = d ≠ n.
    DegreeMismatch {
        primitive: RationalMatrix,
        combination: Vec<i64>,
        min_poly: IntPoly,
        degree: usize,
        n: usize,
    },
    /// q(A) ≠ 0 with q(A)^k = 0, q the radical of the minimal polynomial.
    NotReduced {
        element: RationalMatrix,
        combination: Vec<i64>,
        min_poly: IntPoly,
        nilpotent: RationalMatrix,
        nilpotency_index: u32,
    },
    /// p(A)·q(A) = 0 with both factors nonzero.
    NotAField {
        element: RationalMatrix,
        combination: Vec<i64>,
        min_poly: IntPoly,
        factors: (IntPoly, IntPoly),
        zero_divisors: (RationalMatrix, RationalMatrix),
    },
    NoPrimitiveFound {
        tried: usize,
    },
}

impl FieldCertificate {
    pub fn is_field(&self) -> bool {
        matches!(self, FieldCertificate::Field { .. })
    }

    pub fn obstruction(&self) -> &'static str {
        match self {
            FieldCertificate::Field { .. } => "none",
            FieldCertificate::DegreeMismatch { .. } => "degree: [K:Q] differs from n",
            FieldCertificate::NotReduced { .. } => "reduced: Q[U] has a nonzero nilpotent",
            FieldCertificate::NotAField { .. } => "field: Q[U] has zero divisors",
            FieldCertificate::NoPrimitiveFound { .. } => "no primitive element in the search range",
        }
    }
}

fn combine(gens: &[RationalMatrix], k: &[i64]) -> RationalMatrix {
    let n = gens[0].rows();
    gens.iter().zip(k).fold(RationalMatrix::zeros(n, n), |acc, (g, &c)| acc.add(&g.scale(&int(c))))
}

fn candidates(g: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..g)
        .map(|i| {
            let mut e = vec![0; g];
            e[i] = 1;
            e
        })
        .collect();
    for e in exponent_vectors(g, COMBINATION_BOUND, false) {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

fn split_factor(f: &IntPoly) -> Option<IntPoly> {
    let n = f.deg();
    factor::possible_factor_degrees(f).into_iter().filter(|&d| 2 * d <= n).find_map(|d| factor::kronecker_factor(f, d))
}

/// Search for a primitive element of Q[U]: generators first, then Σ k_i A_i
/// with |k_i| ≤ 3. The first element whose minimal polynomial is not
/// squarefree or is reducible ends the search with a witness.
pub fn field_certificate(fam: &MatrixFamily, clo: &AlgebraClosure) -> Result<FieldCertificate> {
    let gens = fam.matrices()?;
    let list = candidates(gens.len());
    for k in &list {
        let a = combine(&gens, k);
        let m = a.minpoly()?;
        let mi = m.to_int_primitive();
        let radical = m.div_rem(&m.gcd(&m.derivative())).0;
        if radical.deg() < m.deg() {
            let nil = a.eval_poly(&radical)?;
            let mut p = nil.clone();
            let mut k_idx = 1;
            while !p.is_zero() {
                p = p.mul(&nil)?;
                k_idx += 1;
            }
            return Ok(FieldCertificate::NotReduced {
                element: a,
                combination: k.clone(),
                min_poly: mi,
                nilpotent: nil,
                nilpotency_index: k_idx,
            });
        }
        if !is_irreducible(&mi)? {
            let p = split_factor(&mi).ok_or_else(|| OtError::invalid("reducible polynomial without a found factor"))?;
            let (q, r) = m.div_rem(&p.to_rat());
            debug_assert!(r.is_zero());
            let pa = a.eval_poly(&p.to_rat())?;
            let qa = a.eval_poly(&q)?;
            return Ok(FieldCertificate::NotAField {
                element: a,
                combination: k.clone(),
                min_poly: mi,
                factors: (p, q.to_int_primitive()),
                zero_divisors: (pa, qa),
            });
        }
        if m.deg() == clo.dim {
            if clo.dim != clo.n {
                return Ok(FieldCertificate::DegreeMismatch {
                    primitive: a,
                    combination: k.clone(),
                    min_poly: mi,
                    degree: clo.dim,
                    n: clo.n,
                });
            }
            return Ok(FieldCertificate::Field {
                primitive: a,
                combination: k.clone(),
                min_poly: mi,
                irreducible: true,
                degree: clo.dim,
            });
        }
    }
    Ok(FieldCertificate::NoPrimitiveFound { tried: list.len() })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FastIrreducibility {
    /// Exactly one eigenvalue outside the unit circle, all others inside:
    /// the characteristic polynomial is irreducible.
    Applies {
        char_poly: IntPoly,
        moduli: Vec<Interval>,
    },
    DoesNotApply {
        reason: String,
    },
}

impl FastIrreducibility {
    pub fn applies(&self) -> bool {
        matches!(self, FastIrreducibility::Applies { .. })
    }
}

/// The one-big-eigenvalue criterion for integer matrices of determinant ±1.
/// Never claims reducibility.
pub fn fast_irreducibility(m: &RationalMatrix) -> FastIrreducibility {
    let no = |r: &str| FastIrreducibility::DoesNotApply { reason: r.to_string() };
    if !m.is_square() || !m.is_integer() {
        return no("not a square integer matrix");
    }
    match m.det() {
        Ok(d) if d.abs_one() => {}
        _ => return no("determinant is not ±1"),
    }
    let profile = match eigenvalue_magnitude_profile(m, 64) {
        Ok(p) => p,
        Err(e) => return no(&format!("magnitude profile failed: {e}")),
    };
    let greater = profile.iter().filter(|e| e.class == MagnitudeClass::Greater).count();
    let less = profile.iter().filter(|e| e.class == MagnitudeClass::Less).count();
    if greater != 1 || less + 1 != profile.len() {
        return no(&format!("{greater} eigenvalues outside and {less} inside the unit circle of {}", profile.len()));
    }
    FastIrreducibility::Applies {
        char_poly: m.charpoly().expect("square").to_int_primitive(),
        moduli: profile.into_iter().map(|e| e.modulus).collect(),
    }
}

trait AbsOne {
    fn abs_one(&self) -> bool;
}

impl AbsOne for Rational {
    fn abs_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecoveredUnit {
    /// Coordinates in the power basis of the primitive element.
    pub coords: Vec<Q>,
    pub min_poly: IntPoly,
}

/// Eigenvalues of an input matrix against the embeddings of its recovered
/// field element.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingMatch {
    pub generator: usize,
    /// char poly of the input matrix equals Π_σ (x − σ(u)) exactly.
    pub char_poly_equal: bool,
    pub eigenvalues: Vec<ComplexBox>,
    /// assignment[j] = index into `eigenvalues` overlapping σ_j(u), j over the
    /// s + t embeddings.
    pub assignment: Vec<usize>,
    pub precision: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityEvidence {
    /// The primitive element's char poly is irreducible of degree n, so Q^n
    /// has no proper Q[U]-invariant subspace.
    pub irreducible_char_poly: IntPoly,
    pub fast_path: Vec<FastIrreducibility>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConverseVerdict {
    Ot,
    NotSimple { reason: String },
    NotOtLike { reason: String },
    Rejected { reason: String },
}

impl ConverseVerdict {
    pub fn is_ot(&self) -> bool {
        matches!(self, ConverseVerdict::Ot)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConverseReport {
    pub n: usize,
    pub closure: Option<AlgebraClosure>,
    pub certificate: Option<FieldCertificate>,
    pub degree_check: bool,
    pub field: Option<IntPoly>,
    pub signature: Option<(usize, usize)>,
    pub units: Vec<RecoveredUnit>,
    pub admissibility: Option<Admissibility>,
    pub kappa: Option<Vec<Vec<Interval>>>,
    pub c: Option<MatrixC>,
    pub embedding_match: Vec<EmbeddingMatch>,
    pub simplicity: Option<SimplicityEvidence>,
    pub verdict: ConverseVerdict,
}

impl ConverseReport {
    fn empty(n: usize, verdict: ConverseVerdict) -> ConverseReport {
        ConverseReport {
            n,
            closure: None,
            certificate: None,
            degree_check: false,
            field: None,
            signature: None,
            units: Vec::new(),
            admissibility: None,
            kappa: None,
            c: None,
            embedding_match: Vec::new(),
            simplicity: None,
            verdict,
        }
    }

    /// The recovered field and unit group, when the pipeline got that far.
    pub fn unit_group(&self) -> Result<Option<UnitGroup>> {
        let Some(f) = &self.field else {
            return Ok(None);
        };
        if self.units.is_empty() {
            return Ok(None);
        }
        let k = NumberField::new(f.clone())?;
        let gens = self
            .units
            .iter()
            .map(|u| k.element(u.coords.iter().map(|q| q.0.clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(UnitGroup::new(&k, gens)?))
    }
}

fn rejected(e: &OtError) -> ConverseVerdict {
    ConverseVerdict::Rejected { reason: e.to_string() }
}

/// Field, units, signature and C from a certified family. Structured
/// failures (non-units, totally non-positive units, inadmissible groups,
/// embedding mismatches) end in a `Rejected` verdict carrying the error.
pub fn recover_ot_data(
    fam: &MatrixFamily,
    clo: &AlgebraClosure,
    cert: &FieldCertificate,
    precision: u32,
    cap: u32,
) -> Result<ConverseReport> {
    let mut rep = ConverseReport::empty(fam.n, ConverseVerdict::Ot);
    rep.closure = Some(clo.clone());
    rep.certificate = Some(cert.clone());
    let (primitive, min_poly) = match cert {
        FieldCertificate::Field { primitive, min_poly, .. } => (primitive, min_poly),
        other => {
            if let FieldCertificate::DegreeMismatch { min_poly, .. } = other {
                rep.field = Some(min_poly.clone());
            }
            rep.verdict = ConverseVerdict::NotSimple { reason: other.obstruction().to_string() };
            return Ok(rep);
        }
    };
    rep.degree_check = true;
    rep.field = Some(min_poly.clone());
    let k = NumberField::new(min_poly.clone())?;
    let (s, t) = k.signature();
    rep.signature = Some((s, t));

    let gens = fam.matrices()?;
    let n = fam.n;
    let mut powers = vec![RationalMatrix::identity(n)];
    for _ in 1..n {
        powers.push(powers.last().unwrap().mul(primitive)?);
    }
    let cols: Vec<Vec<Rational>> = powers.iter().map(flatten).collect();
    let pm = RationalMatrix::from_columns(&cols);
    let mut elems = Vec::with_capacity(gens.len());
    for g in &gens {
        let c = pm.solve(&flatten(g)).ok_or_else(|| OtError::invalid("generator outside Q[primitive]"))?;
        let e = k.element(c)?;
        rep.units.push(RecoveredUnit { coords: to_q(e.coords()), min_poly: e.min_poly().to_int_primitive() });
        elems.push(e);
    }
    if s == 0 || t == 0 {
        rep.verdict = ConverseVerdict::NotOtLike { reason: format!("signature ({s}, {t}) needs s ≥ 1 and t ≥ 1") };
        return Ok(rep);
    }
    if gens.len() != s {
        rep.verdict = rejected(&OtError::WrongRank { expected: s, got: gens.len() });
        return Ok(rep);
    }
    let u = match UnitGroup::new(&k, elems.clone()) {
        Ok(u) => u,
        Err(e) => {
            rep.verdict = rejected(&e);
            return Ok(rep);
        }
    };
    let adm = check_admissible_with_cap(&u, precision, cap)?;
    rep.admissibility = Some(adm.clone());
    match adm {
        Admissibility::Admissible { .. } => {}
        Admissibility::NotAdmissible { relation } => {
            rep.verdict = rejected(&OtError::NotAdmissible(format!("relation {relation:?}")));
            return Ok(rep);
        }
        Admissibility::Inconclusive { precision, .. } => {
            return Err(OtError::PrecisionExhausted { bits: precision, what: "admissibility".into() });
        }
    }
    let c = matrix_c_with_cap(&u, precision, &Branch::Principal, cap)?;
    rep.kappa = Some(log_image(&u, c.precision)?.kappa);
    rep.c = Some(c);

    for (i, (g, e)) in gens.iter().zip(&elems).enumerate() {
        let m = match_embeddings(i, g, e, precision)?;
        let ok = m.char_poly_equal;
        rep.embedding_match.push(m);
        if !ok {
            rep.verdict = rejected(&OtError::SignatureMismatch(format!("eigenvalues of generator {i}")));
            return Ok(rep);
        }
    }
    rep.simplicity = Some(SimplicityEvidence {
        irreducible_char_poly: primitive.charpoly()?.to_int_primitive(),
        fast_path: gens.iter().map(fast_irreducibility).collect(),
    });
    Ok(rep)
}

fn match_embeddings(i: usize, g: &RationalMatrix, e: &FieldElement, precision: u32) -> Result<EmbeddingMatch> {
    let cp = g.charpoly()?;
    let char_poly_equal = cp == e.char_poly();
    let rs = isolate_roots(&cp.to_int_primitive().squarefree_part())?;
    let count = e.field().embedding_count();
    let mut bits = precision.max(32);
    loop {
        let eig = all_root_boxes(&rs, bits);
        let mut assignment = Vec::with_capacity(count);
        for j in 0..count {
            let v = match e.embed(j, bits)? {
                Embedded::Real(x) => ComplexBox::real(x),
                Embedded::Complex(z) => z,
            };
            let hits: Vec<usize> = (0..eig.len()).filter(|&k| overlap(&eig[k], &v)).collect();
            if hits.len() == 1 {
                assignment.push(hits[0]);
            } else {
                break;
            }
        }
        if assignment.len() == count || !char_poly_equal {
            return Ok(EmbeddingMatch { generator: i, char_poly_equal, eigenvalues: eig, assignment, precision: bits });
        }
        if bits >= exactnum::DEFAULT_PRECISION_CAP {
            return Err(OtError::PrecisionExhausted { bits, what: "eigenvalue matching".into() });
        }
        bits = (bits * 2).min(exactnum::DEFAULT_PRECISION_CAP);
    }
}

fn overlap(a: &ComplexBox, b: &ComplexBox) -> bool {
    a.re.overlaps(&b.re) && a.im.overlaps(&b.im)
}

/// The whole pipeline. Family errors (non-commuting, det ≠ 1) become a
/// `Rejected` verdict.
pub fn converse(fam: &MatrixFamily, precision: u32) -> Result<ConverseReport> {
    converse_with_cap(fam, precision, exactnum::DEFAULT_PRECISION_CAP)
}

pub fn converse_with_cap(fam: &MatrixFamily, precision: u32, cap: u32) -> Result<ConverseReport> {
    let clo = match close_algebra(fam) {
        Ok(c) => c,
        Err(e @ (OtError::NonCommuting(..) | OtError::NonUnimodularDet(_))) => {
            return Ok(ConverseReport::empty(fam.n, rejected(&e)));
        }
        Err(e) => return Err(e),
    };
    let cert = field_certificate(fam, &clo)?;
    recover_ot_data(fam, &clo, &cert, precision, cap)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SimplicityWitness {
    Found { exponents: Vec<i64>, product: RationalMatrix, log_mu: Vec<Interval>, fast_path: FastIrreducibility },
    NotFound { bound: i64 },
    PreconditionFailed { reason: String },
}

/// Search e ∈ [−B, B]^s for Π A_k^{e_k} with exactly one real log-modulus
/// positive, the others negative, and positive sum; with the LCK condition
/// this forces one eigenvalue outside the unit circle and the rest inside.
pub fn find_simplicity_witness(fam: &MatrixFamily, report: &ConverseReport, bound: i64) -> Result<SimplicityWitness> {
    let pre = |r: &str| Ok(SimplicityWitness::PreconditionFailed { reason: r.to_string() });
    let (Some(u), Some(kappa)) = (report.unit_group()?, report.kappa.as_ref()) else {
        return pre("no recovered unit group");
    };
    if !lck_condition(&u)?.holds {
        return pre("the recovered units do not satisfy the LCK magnitude condition");
    }
    let gens = fam.matrices()?;
    let s = gens.len();
    let mut inverses = Vec::with_capacity(s);
    for g in &gens {
        inverses.push(g.inverse()?);
    }
    let zero = Rational::zero();
    for e in exponent_vectors(s, bound, false) {
        let log_mu: Vec<Interval> = kappa
            .iter()
            .map(|row| row.iter().zip(&e).fold(Interval::zero(), |acc, (x, &k)| acc.add(&x.scale(&int(k)))))
            .collect();
        let positive = log_mu.iter().filter(|x| x.gt(&zero)).count();
        let negative = log_mu.iter().filter(|x| x.lt(&zero)).count();
        let sum = log_mu.iter().fold(Interval::zero(), |a, x| a.add(x));
        if positive != 1 || negative + 1 != log_mu.len() || !sum.gt(&zero) {
            continue;
        }
        let mut prod = RationalMatrix::identity(fam.n);
        for (k, &x) in e.iter().enumerate() {
            let base = if x < 0 { &inverses[k] } else { &gens[k] };
            for _ in 0..x.unsigned_abs() {
                prod = prod.mul(base)?;
            }
        }
        let fast = fast_irreducibility(&prod);
        if fast.applies() {
            return Ok(SimplicityWitness::Found { exponents: e, product: prod, log_mu, fast_path: fast });
        }
    }
    Ok(SimplicityWitness::NotFound { bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sol3Report {
    pub matrix: RationalMatrix,
    pub char_poly: IntPoly,
    /// Eigenvalues (tr ± √disc)/2.
    pub trace: i64,
    pub discriminant: i64,
    pub eigenvalues: Vec<Interval>,
    pub log_lambda: Interval,
    /// Rows are left eigenvectors: P M P⁻¹ = diag(λ, λ⁻¹).
    pub p: Vec<Vec<Interval>>,
    /// Entries of P M − diag(λ, λ⁻¹) P; each encloses 0.
    pub residual: Vec<Vec<Interval>>,
    pub converse: ConverseReport,
}

/// Eigen-data of a hyperbolic M ∈ SL(2, Z) with positive trace: the lattice
/// (log λ)Z ⋉ P⁻¹Z² in Sol³, with enclosures of width below 2^-bits.
pub fn sol3_demo(m: &[Vec<i64>], bits: u32, cap: u32) -> Result<Sol3Report> {
    let fam = MatrixFamily::new(vec![m.to_vec()]);
    let mm = fam.matrices()?;
    let mm = &mm[0];
    if fam.n != 2 {
        return Err(OtError::invalid("the Sol³ demo takes a 2×2 matrix"));
    }
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    if a * d - b * c != 1 || a + d <= 2 {
        return Err(OtError::invalid("the Sol³ demo needs det 1 and trace > 2"));
    }
    let tr = a + d;
    let cp = IntPoly::from_i64s(&[1, -tr, 1]);
    let rs = isolate_roots(&cp)?;
    // Descending, so the expanding eigenvalue comes first.
    let mut eigenvalues: Vec<Interval> = rs.real.iter().map(|r| r.enclosure(bits)).collect();
    eigenvalues.reverse();
    let log_lambda = eigenvalues[0].ln(bits)?;
    let p: Vec<Vec<Interval>> =
        eigenvalues.iter().map(|l| vec![Interval::from_int(c), l.sub(&Interval::from_int(a))]).collect();
    let mut residual = vec![vec![Interval::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let pm = (0..2).fold(Interval::zero(), |acc, k| acc.add(&p[i][k].scale(mm.get(k, j))));
            residual[i][j] = pm.sub(&eigenvalues[i].mul(&p[i][j]));
        }
    }
    Ok(Sol3Report {
        matrix: mm.clone(),
        char_poly: cp,
        trace: tr,
        discriminant: tr * tr - 4,
        eigenvalues,
        log_lambda,
        p,
        residual,
        converse: converse_with_cap(&fam, 64, cap)?,
    })
}

/// Multiplication-by-α matrix for a monic integer polynomial, on the power
/// basis (companion matrix).
pub fn companion(f: &IntPoly) -> Vec<Vec<i64>> {
    let n = f.deg();
    let mut m = vec![vec![0i64; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[n - 1] = -i64::try_from(f.coeff(i)).expect("small coefficients");
    }
    m
}

/// Block-diagonal sum of square integer matrices.
pub fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    m
}

/// Shared constructor for tests and the CLI: the unit α of Q[x]/(f) as a
/// single-generator family.
pub fn companion_family(f: &IntPoly) -> MatrixFamily {
    MatrixFamily::new(vec![companion(f)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inoue() -> IntPoly {
        IntPoly::from_i64s(&[-1, -1, 0, 1])
    }

    #[test]
    fn closure_dimensions() {
        assert_eq!(close_algebra(&MatrixFamily::new(vec![vec![vec![1, 0], vec![0, 1]]])).unwrap().dim, 1);
        let m = companion(&inoue());
        let clo = close_algebra(&MatrixFamily::new(vec![m.clone()])).unwrap();
        assert_eq!(clo.dim, 3);
        assert!(clo.basis[0].is_identity());
        let doubled = MatrixFamily::new(vec![block_diagonal(&[m.clone(), m])]);
        assert_eq!(close_algebra(&doubled).unwrap().dim, 3);
    }

    #[test]
    fn family_errors() {
        let a = vec![vec![1, 1], vec![0, 1]];
        let b = vec![vec![1, 0], vec![1, 1]];
        assert!(matches!(close_algebra(&MatrixFamily::new(vec![a.clone(), b])), Err(OtError::NonCommuting(0, 1))));
        let c = vec![vec![2, 0], vec![0, 1]];
        assert!(matches!(close_algebra(&MatrixFamily::new(vec![a, c])), Err(OtError::NonUnimodularDet(1))));
    }

    #[test]
    fn certificates() {
        let fam = companion_family(&inoue());
        let clo = close_algebra(&fam).unwrap();
        match field_certificate(&fam, &clo).unwrap() {
            FieldCertificate::Field { min_poly, degree, .. } => {
                assert_eq!(min_poly, inoue());
                assert_eq!(degree, 3);
            }
            other => panic!("{other:?}"),
        }
        let id = MatrixFamily::new(vec![vec![vec![1, 0], vec![0, 1]]]);
        let cert = field_certificate(&id, &close_algebra(&id).unwrap()).unwrap();
        assert!(matches!(cert, FieldCertificate::DegreeMismatch { degree: 1, n: 2, .. }));
        // diag(M, M^-1) for M = [[2,1],[1,1]]: minimal polynomial (x²−3x+1), but the
        // pair (M ⊕ I, I ⊕ M) generates Q(√5) × Q(√5).
        let m = vec![vec![2, 1], vec![1, 1]];
        let i2 = vec![vec![1, 0], vec![0, 1]];
        let fam = MatrixFamily::new(vec![block_diagonal(&[m.clone(), i2.clone()]), block_diagonal(&[i2, m])]);
        let cert = field_certificate(&fam, &close_algebra(&fam).unwrap()).unwrap();
        match cert {
            FieldCertificate::NotAField { zero_divisors: (p, q), .. } => {
                assert!(!p.is_zero() && !q.is_zero());
                assert!(p.mul(&q).unwrap().is_zero());
            }
            other => panic!("{other:?}"),
        }
        let jordan = MatrixFamily::new(vec![vec![vec![1, 1], vec![0, 1]]]);
        let cert = field_certificate(&jordan, &close_algebra(&jordan).unwrap()).unwrap();
        assert!(matches!(cert, FieldCertificate::NotReduced { nilpotency_index: 2, .. }));
    }

    #[test]
    fn inoue_pipeline() {
        let fam = companion_family(&inoue());
        let rep = converse(&fam, 64).unwrap();
        assert_eq!(rep.verdict, ConverseVerdict::Ot);
        assert_eq!(rep.signature, Some((1, 1)));
        assert_eq!(rep.units[0].min_poly, inoue());
        let c = rep.c.as_ref().unwrap();
        assert!(c.re(0, 0).contains(&exactnum::rational::rat(-1, 2)));
        assert!(rep.embedding_match[0].char_poly_equal);
        assert_eq!(rep.embedding_match[0].assignment.len(), 2);
        match find_simplicity_witness(&fam, &rep, WITNESS_BOUND).unwrap() {
            SimplicityWitness::Found { exponents, .. } => assert_eq!(exponents, vec![1]),
            other => panic!("{other:?}"),
        }
        let inv = RationalMatrix::from_i64(&fam.generators[0]).inverse().unwrap();
        let rows: Vec<Vec<i64>> =
            inv.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()).collect();
        let fam_inv = MatrixFamily::new(vec![rows]);
        let rep_inv = converse(&fam_inv, 64).unwrap();
        assert!(rep_inv.verdict.is_ot());
        match find_simplicity_witness(&fam_inv, &rep_inv, WITNESS_BOUND).unwrap() {
            SimplicityWitness::Found { exponents, .. } => assert_eq!(exponents, vec![-1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejections() {
        let m = companion(&inoue());
        let doubled = MatrixFamily::new(vec![block_diagonal(&[m.clone(), m])]);
        let rep = converse(&doubled, 64).unwrap();
        assert!(matches!(rep.verdict, ConverseVerdict::NotSimple { .. }));
        assert!(matches!(
            find_simplicity_witness(&doubled, &rep, WITNESS_BOUND).unwrap(),
            SimplicityWitness::PreconditionFailed { .. }
        ));
        let id = MatrixFamily::new(vec![vec![vec![1, 0], vec![0, 1]]]);
        assert!(matches!(converse(&id, 64).unwrap().verdict, ConverseVerdict::NotSimple { .. }));
        let sol = converse(&MatrixFamily::new(vec![vec![vec![2, 1], vec![1, 1]]]), 64).unwrap();
        assert!(matches!(sol.verdict, ConverseVerdict::NotOtLike { .. }));
        assert_eq!(sol.signature, Some((2, 0)));
        assert_eq!(sol.field, Some(IntPoly::from_i64s(&[1, -3, 1])));
    }

    #[test]
    fn fast_path_examples() {
        assert!(fast_irreducibility(&RationalMatrix::from_i64(&companion(&inoue()))).applies());
        assert!(fast_irreducibility(&RationalMatrix::from_i64(&[vec![2, 1], vec![1, 1]])).applies());
        assert!(!fast_irreducibility(&RationalMatrix::identity(3)).applies());
    }

    #[test]
    fn sol3_enclosures() {
        let r = sol3_demo(&[vec![2, 1], vec![1, 1]], 128, exactnum::DEFAULT_PRECISION_CAP).unwrap();
        let tiny = exactnum::rational::rat(1, 1_000_000_000_000_000);
        let tiny = &tiny * &tiny;
        assert!(r.eigenvalues.iter().all(|e| e.width() < tiny));
        assert!(r.eigenvalues[0].gt(&int(2)) && r.eigenvalues[1].lt(&int(1)));
        assert!(r.residual.iter().flatten().all(|x| x.contains_zero()));
        assert_eq!(r.discriminant, 5);
    }
}
