//! Lie algebras given by structure constants, the Chevalley–Eilenberg
//! differential, and the integrability / LCK / Vaisman checks.
//!
//! Conventions: c[i][j][k] is the e_k-coefficient of [e_i, e_j]; J and the
//! metric act on column vectors (J e_b = Σ_a J_ab e_a); ω(X, Y) = ⟨JX, Y⟩;
//! (α∧β)(X, Y) = α(X)β(Y) − α(Y)β(X); d e^k = −Σ_{i<j} c_ij^k e^i∧e^j.

use std::collections::BTreeMap;

use exactnum::rational::Rational;
use exactnum::RationalMatrix;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{OtError, Result};
use crate::wire::{from_q, from_q_mat, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<R> {
    labels: Vec<String>,
    c: Vec<Vec<Vec<R>>>,
}

impl<R: Coeff> LieAlgebra<R> {
    /// Builds the algebra from brackets (i, j, [e_i, e_j]) with i ≠ j,
    /// filling in antisymmetry, and verifies the Jacobi identity.
    pub fn new(labels: Vec<String>, brackets: Vec<(usize, usize, Vec<R>)>) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![vec![vec![R::zero_value(); n]; n]; n];
        for (i, j, v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(OtError::invalid(format!("bracket [{i}, {j}] out of range")));
            }
            if i == j {
                if v.iter().any(|x| !x.certainly_zero()) {
                    return Err(OtError::invalid(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            c[j][i] = v.iter().map(|x| x.neg()).collect();
            c[i][j] = v;
        }
        let alg = LieAlgebra { labels, c };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(OtError::invalid(format!("Jacobi identity fails on (e{i}, e{j}, e{k})")));
        }
        Ok(alg)
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        LieAlgebra { labels, c: vec![vec![vec![R::zero_value(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &R {
        &self.c[i][j][k]
    }

    pub fn constants(&self) -> &[Vec<Vec<R>>] {
        &self.c
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[R] {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[R], y: &[R]) -> Vec<R> {
        let n = self.dim();
        let mut out = vec![R::zero_value(); n];
        for i in 0..n {
            if x[i].certainly_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].certainly_zero() {
                    continue;
                }
                let w = x[i].mul(&y[j]);
                for k in 0..n {
                    if !self.c[i][j][k].certainly_zero() {
                        out[k] = out[k].add(&w.mul(&self.c[i][j][k]));
                    }
                }
            }
        }
        out
    }

    /// Bracket of rational vectors.
    pub fn bracket_q(&self, x: &[Rational], y: &[Rational]) -> Vec<R> {
        self.bracket(&lift(x), &lift(y))
    }

    /// Matrix of ad_x on the basis (column b = [x, e_b]).
    pub fn ad(&self, x: &[R]) -> Vec<Vec<R>> {
        let n = self.dim();
        let mut m = vec![vec![R::zero_value(); n]; n];
        for b in 0..n {
            let col = self.bracket(x, &unit::<R>(n, b));
            for a in 0..n {
                m[a][b] = col[a].clone();
            }
        }
        m
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&unit(n, i), &self.c[j][k]);
                    let b = self.bracket(&unit(n, j), &self.c[k][i]);
                    let c = self.bracket(&unit(n, k), &self.c[i][j]);
                    if (0..n).any(|m| !a[m].add(&b[m]).add(&c[m]).maybe_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).fold(R::zero_value(), |acc, k| acc.add(&self.c[i][k][k])).maybe_zero())
    }

    /// Span of all brackets, as rational row vectors (exact rings only).
    pub fn derived_span(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v: Option<Vec<Rational>> = self.c[i][j].iter().map(|x| x.as_rational()).collect();
                rows.push(v?);
            }
        }
        if rows.is_empty() {
            return Some(Vec::new());
        }
        let (r, piv) = RationalMatrix::from_rows(rows).ok()?.rref();
        Some((0..piv.len()).map(|i| r.row(i)).collect())
    }

    /// The algebra in the basis f_i = Σ_a B_ai e_a (columns of B).
    pub fn change_basis(&self, b: &RationalMatrix) -> Result<Self> {
        let n = self.dim();
        let binv = b.inverse()?;
        let cols: Vec<Vec<R>> = (0..n).map(|i| lift(&b.col(i))).collect();
        let mut c = vec![vec![vec![R::zero_value(); n]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket(&cols[i], &cols[j]);
                let w = mat_vec(&binv, &v);
                c[j][i] = w.iter().map(|x| x.neg()).collect();
                c[i][j] = w;
            }
        }
        Ok(LieAlgebra { labels: self.labels.clone(), c })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn ce_differential(&self, form: &KForm<R>) -> KForm<R> {
        let n = self.dim();
        let mut out = KForm::zero(n, form.degree + 1);
        if form.degree >= n {
            return out;
        }
        let d1: Vec<KForm<R>> = (0..n).map(|k| self.d_basis_one_form(k)).collect();
        for (idx, coef) in &form.coeffs {
            for r in 0..idx.len() {
                let pre = KForm::basis(n, &idx[..r]);
                let post = KForm::basis(n, &idx[r + 1..]);
                let mut term = pre.wedge(&d1[idx[r]]).wedge(&post).scale_by(coef);
                if r % 2 == 1 {
                    term = term.neg();
                }
                out = out.add(&term);
            }
        }
        out
    }

    fn d_basis_one_form(&self, k: usize) -> KForm<R> {
        let n = self.dim();
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.c[i][j][k];
                if !v.certainly_zero() {
                    f.set(vec![i, j], v.neg());
                }
            }
        }
        f
    }
}

impl LieAlgebra<Rational> {
    pub fn to_interval(&self) -> LieAlgebra<exactnum::Interval> {
        LieAlgebra {
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .map(|m| m.iter().map(|v| v.iter().map(|x| exactnum::Interval::point(x.clone())).collect()).collect())
                .collect(),
        }
    }
}

pub(crate) fn unit<R: Coeff>(n: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero_value(); n];
    v[i] = R::one_value();
    v
}

pub(crate) fn lift<R: Coeff>(v: &[Rational]) -> Vec<R> {
    v.iter().map(R::from_rational).collect()
}

pub(crate) fn mat_vec<R: Coeff>(m: &RationalMatrix, v: &[R]) -> Vec<R> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(R::zero_value(), |acc, j| {
                let a = m.get(i, j);
                if a.certainly_zero() || v[j].certainly_zero() {
                    acc
                } else {
                    acc.add(&v[j].scale(a))
                }
            })
        })
        .collect()
}

/// Alternating k-form, stored on increasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<R> {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, R>,
}

/// Sign of sorting the concatenation, or None if indices repeat.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, m))
}

impl<R: Coeff> KForm<R> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm { dim, degree, coeffs: BTreeMap::new() }
    }

    /// e^{i_1} ∧ … ∧ e^{i_k} for an increasing index list.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = KForm::zero(dim, idx.len());
        f.coeffs.insert(idx.to_vec(), R::one_value());
        f
    }

    pub fn one_form(v: &[R]) -> Self {
        let mut f = KForm::zero(v.len(), 1);
        for (i, x) in v.iter().enumerate() {
            f.set(vec![i], x.clone());
        }
        f
    }

    /// Two-form with coefficients m[a][b] on e^a∧e^b, a < b.
    pub fn two_form(m: &[Vec<R>]) -> Self {
        let n = m.len();
        let mut f = KForm::zero(n, 2);
        for a in 0..n {
            for b in a + 1..n {
                f.set(vec![a, b], m[a][b].clone());
            }
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> R {
        self.coeffs.get(idx).cloned().unwrap_or_else(R::zero_value)
    }

    pub fn set(&mut self, idx: Vec<usize>, v: R) {
        if v.certainly_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.coeffs {
            let nv = r.get(k).add(v);
            r.set(k.clone(), nv);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v.neg())).collect(),
        }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        let mut r = KForm::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            r.set(k.clone(), v.mul(c));
        }
        r
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.dim, self.degree + o.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                if let Some((sgn, m)) = merge_sign(a, b) {
                    let p = x.mul(y);
                    let p = if sgn < 0 { p.neg() } else { p };
                    let nv = r.get(&m).add(&p);
                    r.set(m, nv);
                }
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|v| v.certainly_zero())
    }

    pub fn maybe_zero(&self) -> bool {
        self.coeffs.values().all(|v| v.maybe_zero())
    }

    /// Largest coefficient bound, when numeric.
    pub fn magnitude(&self) -> Option<Rational> {
        self.coeffs.values().try_fold(Rational::zero(), |m, v| v.magnitude().map(|x| m.max(x)))
    }
}

/// Almost-Hermitian data with rational J and metric.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianStructure {
    pub j: RationalMatrix,
    pub metric: RationalMatrix,
}

impl HermitianStructure {
    /// Checks J² = −1, symmetry, J-invariance and positive definiteness.
    pub fn new(j: RationalMatrix, metric: RationalMatrix) -> Result<Self> {
        let n = j.rows();
        if !j.is_square() || metric.rows() != n || metric.cols() != n {
            return Err(OtError::invalid("J and metric must be square of the same size"));
        }
        if !j.mul(&j)?.add(&RationalMatrix::identity(n)).is_zero() {
            return Err(OtError::invalid("J² ≠ −1"));
        }
        if metric != metric.transpose() {
            return Err(OtError::invalid("metric is not symmetric"));
        }
        if j.transpose().mul(&metric)?.mul(&j)? != metric {
            return Err(OtError::invalid("metric is not J-invariant"));
        }
        for k in 1..=n {
            let minor = RationalMatrix::from_fn(k, k, |a, b| metric.get(a, b).clone());
            if !minor.det()?.is_positive() {
                return Err(OtError::invalid("metric is not positive definite"));
            }
        }
        Ok(HermitianStructure { j, metric })
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    /// ω_ab = ω(e_a, e_b) = (JᵀG)_ab.
    pub fn omega_matrix(&self) -> RationalMatrix {
        self.j.transpose().mul(&self.metric).expect("square")
    }

    pub fn omega<R: Coeff>(&self) -> KForm<R> {
        let w = self.omega_matrix();
        let m: Vec<Vec<R>> = (0..self.dim()).map(|a| lift(&w.row(a))).collect();
        KForm::two_form(&m)
    }

    pub fn change_basis(&self, b: &RationalMatrix) -> Result<Self> {
        let binv = b.inverse()?;
        Ok(HermitianStructure { j: binv.mul(&self.j)?.mul(b)?, metric: b.transpose().mul(&self.metric)?.mul(b)? })
    }

    pub fn scaled(&self, lambda: &Rational) -> Self {
        HermitianStructure { j: self.j.clone(), metric: self.metric.scale(lambda) }
    }

    pub fn inner<R: Coeff>(&self, x: &[R], y: &[R]) -> R {
        let gy = mat_vec(&self.metric, y);
        x.iter().zip(&gy).fold(R::zero_value(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn apply_j<R: Coeff>(&self, x: &[R]) -> Vec<R> {
        mat_vec(&self.j, x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisReport<R> {
    pub integrable: bool,
    /// First basis pair (i, j) with N_J(e_i, e_j) certainly nonzero.
    pub witness: Option<(usize, usize)>,
    pub witness_value: Option<Vec<R>>,
    /// max |N_J| over basis pairs, when numeric.
    pub worst: Option<Rational>,
}

pub fn nijenhuis<R: Coeff>(alg: &LieAlgebra<R>, h: &HermitianStructure) -> NijenhuisReport<R> {
    let n = alg.dim();
    let mut worst = Some(Rational::zero());
    let mut witness = None;
    let mut witness_value = None;
    let jcols: Vec<Vec<R>> = (0..n).map(|i| lift(&h.j.col(i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let x = unit::<R>(n, i);
            let y = unit::<R>(n, j);
            let (jx, jy) = (&jcols[i], &jcols[j]);
            let t1 = alg.bracket(&x, &y);
            let t2 = alg.bracket(jx, jy);
            let t3 = h.apply_j(&alg.bracket(&x, jy));
            let t4 = h.apply_j(&alg.bracket(jx, &y));
            let v: Vec<R> = (0..n).map(|k| t1[k].sub(&t2[k]).add(&t3[k]).add(&t4[k])).collect();
            for x in &v {
                worst = match (worst, x.magnitude()) {
                    (Some(w), Some(m)) => Some(w.max(m)),
                    _ => None,
                };
            }
            if witness.is_none() && v.iter().any(|x| !x.maybe_zero()) {
                witness = Some((i, j));
                witness_value = Some(v);
            }
        }
    }
    NijenhuisReport { integrable: witness.is_none(), witness, witness_value, worst }
}

pub fn is_abelian_j<R: Coeff>(alg: &LieAlgebra<R>, h: &HermitianStructure) -> bool {
    let n = alg.dim();
    let jcols: Vec<Vec<R>> = (0..n).map(|i| lift(&h.j.col(i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let a = alg.bracket(&jcols[i], &jcols[j]);
            let b = alg.bracket_basis(i, j);
            if a.iter().zip(b).any(|(x, y)| !x.sub(y).maybe_zero()) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct LckReport<R> {
    /// dω = θ∧ω and dθ = 0.
    pub lck: bool,
    pub d_theta_zero: bool,
    /// dω − θ∧ω.
    pub lck_residual: KForm<R>,
    pub lee_form: Vec<R>,
    pub lee_vector: Vec<R>,
    /// The solved θ is the only solution (trivial kernel).
    pub unique: bool,
    /// θ was solved for rather than supplied.
    pub solved: bool,
}

impl<R: Coeff> LckReport<R> {
    pub fn theta_vanishes(&self) -> bool {
        self.lee_form.iter().all(|x| x.certainly_zero())
    }
}

/// Solves dω = θ∧ω for θ. Errors with NoLeeCandidate when no θ exists.
pub fn solve_lee_form<R: Coeff>(alg: &LieAlgebra<R>, h: &HermitianStructure) -> Result<(Vec<R>, bool)> {
    let n = alg.dim();
    let omega: KForm<R> = h.omega();
    let domega = alg.ce_differential(&omega);
    let w = h.omega_matrix();
    // (θ∧ω)_{abc} = θ_a ω_bc − θ_b ω_ac + θ_c ω_ab
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<R> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut row = vec![Rational::zero(); n];
                row[a] += w.get(b, c);
                row[b] -= w.get(a, c);
                row[c] += w.get(a, b);
                rows.push(row);
                rhs.push(domega.get(&[a, b, c]));
            }
        }
    }
    let (sol, unique) = solve_rational_system(rows, rhs, n).ok_or(OtError::NoLeeCandidate)?;
    Ok((sol, unique))
}

/// Exact elimination with rational matrix and ring right-hand side. Returns
/// a particular solution (free variables 0) and whether it is unique, or
/// None when the system is inconsistent.
pub(crate) fn solve_rational_system<R: Coeff>(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<R>,
    n: usize,
) -> Option<(Vec<R>, bool)> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][col].certainly_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        rhs[r] = rhs[r].scale(&inv);
        for i in 0..m {
            if i != r && !rows[i][col].certainly_zero() {
                let f = rows[i][col].clone();
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
                rhs[i] = rhs[i].sub(&rhs[r].scale(&f));
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.maybe_zero()) {
        return None;
    }
    let mut sol = vec![R::zero_value(); n];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rhs[i].clone();
    }
    Some((sol, pivots.len() == n))
}

/// Full LCK report; θ is solved from dω unless supplied.
pub fn verify_lck<R: Coeff>(alg: &LieAlgebra<R>, h: &HermitianStructure, theta: Option<&[R]>) -> Result<LckReport<R>> {
    let (lee_form, unique, solved) = match theta {
        Some(t) => (t.to_vec(), true, false),
        None => {
            let (t, u) = solve_lee_form(alg, h)?;
            (t, u, true)
        }
    };
    let omega: KForm<R> = h.omega();
    let domega = alg.ce_differential(&omega);
    let tf = KForm::one_form(&lee_form);
    let lck_residual = domega.sub(&tf.wedge(&omega));
    let d_theta_zero = alg.ce_differential(&tf).maybe_zero();
    let ginv = h.metric.inverse()?;
    let lee_vector = mat_vec(&ginv, &lee_form);
    Ok(LckReport {
        lck: d_theta_zero && lck_residual.maybe_zero(),
        d_theta_zero,
        lck_residual,
        lee_form,
        lee_vector,
        unique,
        solved,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VaismanVerdict {
    Vaisman,
    NotVaisman {
        witness: (usize, usize),
    },
    /// θ = 0: the structure is Kähler.
    NotApplicable,
    Inconclusive,
}

/// ⟨ad_A X, Y⟩ + ⟨X, ad_A Y⟩ = 0 on basis pairs.
pub fn verify_vaisman<R: Coeff>(alg: &LieAlgebra<R>, h: &HermitianStructure, report: &LckReport<R>) -> VaismanVerdict {
    if report.theta_vanishes() {
        return VaismanVerdict::NotApplicable;
    }
    let n = alg.dim();
    let ad = alg.ad(&report.lee_vector);
    let cols: Vec<Vec<R>> = (0..n).map(|b| (0..n).map(|a| ad[a][b].clone()).collect()).collect();
    let mut uncertain = false;
    for x in 0..n {
        for y in x..n {
            let v = h.inner(&cols[x], &unit(n, y)).add(&h.inner(&unit(n, x), &cols[y]));
            if !v.maybe_zero() {
                return VaismanVerdict::NotVaisman { witness: (x, y) };
            }
            if !v.certainly_zero() {
                uncertain = true;
            }
        }
    }
    if uncertain {
        VaismanVerdict::Inconclusive
    } else {
        VaismanVerdict::Vaisman
    }
}

/// `{ "dim": n, "labels": [...]?, "brackets": [{"i", "j", "coeffs": {"k": q}}],
///    "J": [[q]], "metric": [[q]] }` with 0-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketSpec>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, Q>,
}

impl LieAlgebraSpec {
    pub fn algebra(&self) -> Result<LieAlgebra<Rational>> {
        let n = self.dim;
        let labels = match &self.labels {
            Some(l) if l.len() == n => l.clone(),
            Some(_) => return Err(OtError::invalid("labels length differs from dim")),
            None => (0..n).map(|i| format!("e{}", i + 1)).collect(),
        };
        let mut brackets = Vec::new();
        for b in &self.brackets {
            let mut v = vec![Rational::zero(); n];
            for (&k, q) in &b.coeffs {
                if k >= n {
                    return Err(OtError::IndexOutOfRange { index: k, count: n });
                }
                v[k] = q.0.clone();
            }
            brackets.push((b.i, b.j, v));
        }
        LieAlgebra::new(labels, brackets)
    }

    pub fn structure(&self) -> Result<Option<HermitianStructure>> {
        match (&self.j, &self.metric) {
            (Some(j), Some(g)) => Ok(Some(HermitianStructure::new(
                RationalMatrix::from_rows(from_q_mat(j))?,
                RationalMatrix::from_rows(from_q_mat(g))?,
            )?)),
            (None, None) => Ok(None),
            _ => Err(OtError::invalid("J and metric must be given together")),
        }
    }

    pub fn from_parts(alg: &LieAlgebra<Rational>, h: Option<&HermitianStructure>) -> Self {
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, Q> = alg.c[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.certainly_zero())
                    .map(|(k, x)| (k, Q(x.clone())))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketSpec { i, j, coeffs });
                }
            }
        }
        let to_q = |m: &RationalMatrix| m.to_rows().into_iter().map(|r| r.into_iter().map(Q).collect()).collect();
        LieAlgebraSpec {
            dim: n,
            labels: Some(alg.labels.clone()),
            brackets,
            j: h.map(|h| to_q(&h.j)),
            metric: h.map(|h| to_q(&h.metric)),
        }
    }
}

/// Parses an optional rational covector.
pub fn covector(v: &[Q]) -> Vec<Rational> {
    from_q(v)
}

/// R^k ⋉ R^m with a_p acting on f_1..f_m by the matrix mats[p]: basis
/// a_1..a_k, f_1..f_m and [a_p, f_i] = Σ_l mats[p]_{li} f_l. The matrices
/// must commute for Jacobi to hold.
pub fn semidirect(mats: &[RationalMatrix]) -> Result<LieAlgebra<Rational>> {
    let k = mats.len();
    let m = mats.first().map_or(0, |a| a.rows());
    if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
        return Err(OtError::invalid("acting matrices must be square of one size"));
    }
    let mut labels: Vec<String> = (1..=k).map(|p| format!("a{p}")).collect();
    labels.extend((1..=m).map(|i| format!("f{i}")));
    let mut brackets = Vec::new();
    for (p, a) in mats.iter().enumerate() {
        for i in 0..m {
            let mut v = vec![Rational::zero(); k + m];
            for l in 0..m {
                v[k + l] = a.get(l, i).clone();
            }
            brackets.push((p, k + i, v));
        }
    }
    LieAlgebra::new(labels, brackets)
}

/// Kodaira–Thurston algebra: [x_i, y_i] = z_1 on basis x_1, y_1, …, x_d, y_d,
/// z_1, z_2, with J x_i = y_i, J z_1 = z_2 and the orthonormal metric.
pub fn kodaira_thurston(d: usize) -> (LieAlgebra<Rational>, HermitianStructure) {
    let n = 2 * d + 2;
    let mut labels = Vec::new();
    for i in 1..=d {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
    }
    labels.push("z1".into());
    labels.push("z2".into());
    let mut brackets = Vec::new();
    for i in 0..d {
        let mut v = vec![Rational::zero(); n];
        v[2 * d] = Rational::one();
        brackets.push((2 * i, 2 * i + 1, v));
    }
    let alg = LieAlgebra::new(labels, brackets).expect("Heisenberg × R is a Lie algebra");
    let mut j = RationalMatrix::zeros(n, n);
    for i in 0..=d {
        j.set(2 * i + 1, 2 * i, Rational::one());
        j.set(2 * i, 2 * i + 1, -Rational::one());
    }
    let h = HermitianStructure::new(j, RationalMatrix::identity(n)).expect("orthonormal J-invariant metric");
    (alg, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rational::int;

    #[test]
    fn kodaira_thurston_is_vaisman() {
        let (alg, h) = kodaira_thurston(1);
        assert!(alg.is_unimodular());
        assert!(is_abelian_j(&alg, &h));
        assert!(nijenhuis(&alg, &h).integrable);
        // d z^1 = −x^1∧y^1
        let dz = alg.ce_differential(&KForm::<Rational>::basis(4, &[2]));
        assert_eq!(dz.get(&[0, 1]), int(-1));
        assert_eq!(dz.coeffs.len(), 1);
        let rep = verify_lck(&alg, &h, None).unwrap();
        assert!(rep.lck && rep.unique);
        assert_eq!(rep.lee_form, vec![int(0), int(0), int(0), int(-1)]);
        assert_eq!(rep.lee_vector, vec![int(0), int(0), int(0), int(-1)]);
        assert_eq!(verify_vaisman(&alg, &h, &rep), VaismanVerdict::Vaisman);
    }

    #[test]
    fn flat_kahler_is_not_applicable() {
        let alg = LieAlgebra::<Rational>::abelian(4);
        let (_, h) = kodaira_thurston(1);
        let rep = verify_lck(&alg, &h, None).unwrap();
        assert!(rep.lck && rep.theta_vanishes());
        assert_eq!(verify_vaisman(&alg, &h, &rep), VaismanVerdict::NotApplicable);
        let one = KForm::<Rational>::basis(4, &[1]);
        assert!(alg.ce_differential(&one).is_zero());
    }

    #[test]
    fn broken_j_has_nijenhuis_witness() {
        let (alg, _) = kodaira_thurston(1);
        let mut j = RationalMatrix::zeros(4, 4);
        // J x = z1, J z1 = −x, J y = z2, J z2 = −y
        j.set(2, 0, int(1));
        j.set(0, 2, int(-1));
        j.set(3, 1, int(1));
        j.set(1, 3, int(-1));
        let h = HermitianStructure::new(j, RationalMatrix::identity(4)).unwrap();
        let rep = nijenhuis(&alg, &h);
        assert!(!rep.integrable);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn jacobi_is_enforced() {
        let v = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
        let bad = LieAlgebra::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, v(0, 0, 1)), (0, 2, v(0, 1, 0)), (1, 2, v(1, 0, 0))],
        );
        assert!(bad.is_ok());
        let broken = LieAlgebra::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, v(0, 0, 1)), (0, 2, v(0, 1, 0)), (1, 2, v(0, 1, 0))],
        );
        assert!(broken.is_err());
    }
}
