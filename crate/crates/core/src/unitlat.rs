//! The Dirichlet log map on unit subgroups, admissibility certificates and
//! the matrix C with explicit branch offsets.
//!
//! With generators a_1..a_s of U, κ_{jk} = log σ_j(a_k) over the real
//! embeddings, and C solves σ_{s+i}(a_k) = exp(Σ_j c_ij κ_jk), i.e.
//! C = (log|σ_{s+i}(a_k)| + i·(Arg σ_{s+i}(a_k) + 2π·o_ik)) · κ⁻¹.

use std::sync::Arc;

use exactnum::rational::{int, rat, Rational};
use exactnum::{Interval, DEFAULT_PRECISION_CAP};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{OtError, Result};
use crate::ilinalg;
use crate::numfield::{Embedded, FieldElement, FieldSpec, NumberField};
use crate::wire::{from_q, Q};

/// Largest |e_i| tried when looking for a multiplicative dependence.
pub const DEPENDENCE_BOUND: i64 = 8;

#[derive(Clone, Debug)]
pub struct UnitGroup {
    field: Arc<NumberField>,
    generators: Vec<FieldElement>,
}

impl UnitGroup {
    /// Checks that every generator is a totally positive unit.
    pub fn new(field: &Arc<NumberField>, generators: Vec<FieldElement>) -> Result<UnitGroup> {
        for (i, g) in generators.iter().enumerate() {
            if !g.field().same_as(field) {
                return Err(OtError::invalid(format!("generator {i} lives in another field")));
            }
            if !g.is_unit() {
                return Err(OtError::NotUnit(i));
            }
            if !g.is_totally_positive() {
                return Err(OtError::NotTotallyPositive(i));
            }
        }
        Ok(UnitGroup { field: field.clone(), generators })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    /// Π a_k^{e_k}.
    pub fn word(&self, e: &[i64]) -> Result<FieldElement> {
        let mut acc = self.field.one();
        for (g, &k) in self.generators.iter().zip(e) {
            if k != 0 {
                acc = acc.mul(&g.pow(k)?);
            }
        }
        Ok(acc)
    }
}

/// `{ "field": <field spec>, "generators": [[rationals]] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitGroupSpec {
    pub field: FieldSpec,
    pub generators: Vec<Vec<Q>>,
}

impl UnitGroupSpec {
    pub fn build(&self) -> Result<UnitGroup> {
        let (k, _) = self.field.build()?;
        let gens = self.generators.iter().map(|g| k.element(from_q(g))).collect::<Result<Vec<_>>>()?;
        UnitGroup::new(&k, gens)
    }
}

/// log σ_j(a) for real j, log |σ_{s+i}(a)|² for complex i.
pub fn log_vector(a: &FieldElement, prec: u32) -> Result<Vec<Interval>> {
    let (s, _) = a.field().signature();
    let mut out = Vec::new();
    for i in 0..a.field().embedding_count() {
        let mut bits = prec + 8;
        loop {
            let e = a.embed(i, bits)?;
            let x = match &e {
                Embedded::Real(x) if i < s => x.abs(),
                _ => e.abs2(),
            };
            if x.is_positive() {
                out.push(x.ln(prec)?);
                break;
            }
            if bits > prec.saturating_mul(8).max(DEFAULT_PRECISION_CAP) {
                return Err(OtError::PrecisionExhausted { bits, what: "log of an embedding".into() });
            }
            bits *= 2;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LogImage {
    pub precision: u32,
    /// rows[k] is the log vector of generator k (length s + t).
    pub rows: Vec<Vec<Interval>>,
    /// kappa[j][k] = log σ_j(a_k), j over real embeddings.
    pub kappa: Vec<Vec<Interval>>,
    pub det: Interval,
    /// Σ_j log σ_j + Σ_i log|σ_{s+i}|² per generator; encloses 0 for units.
    pub hyperplane_sums: Vec<Interval>,
}

pub fn log_image(u: &UnitGroup, precision: u32) -> Result<LogImage> {
    let (s, _) = u.field.signature();
    let rows = u.generators.iter().map(|g| log_vector(g, precision)).collect::<Result<Vec<_>>>()?;
    let kappa: Vec<Vec<Interval>> = (0..s).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let det = if kappa.len() == rows.len() { ilinalg::det(&kappa) } else { Interval::zero() };
    let hyperplane_sums = rows.iter().map(|r| r.iter().fold(Interval::zero(), |a, x| a.add(x))).collect();
    Ok(LogImage { precision, rows, kappa, det, hyperplane_sums })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Admissibility {
    Admissible {
        det: Interval,
        precision: u32,
    },
    /// Π a_k^{relation_k} = 1 exactly.
    NotAdmissible {
        relation: Vec<i64>,
    },
    Inconclusive {
        det: Interval,
        precision: u32,
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible { .. })
    }
}

pub fn check_admissible(u: &UnitGroup, precision: u32) -> Result<Admissibility> {
    check_admissible_with_cap(u, precision, DEFAULT_PRECISION_CAP)
}

/// Admissible when the interval determinant of κ excludes 0. A rank defect
/// can only be proven exactly: a totally positive root of unity in a field
/// with a real place is 1, so a dependence is an exponent vector whose word
/// is exactly 1.
pub fn check_admissible_with_cap(u: &UnitGroup, precision: u32, cap: u32) -> Result<Admissibility> {
    let (s, _) = u.field.signature();
    if u.generators.len() != s {
        return Err(OtError::WrongRank { expected: s, got: u.generators.len() });
    }
    let mut prec = precision.max(16);
    let mut searched = false;
    loop {
        let img = log_image(u, prec)?;
        if !img.det.contains_zero() {
            return Ok(Admissibility::Admissible { det: img.det, precision: prec });
        }
        if !searched {
            searched = true;
            if let Some(e) = find_dependence(u, &img.rows, DEPENDENCE_BOUND)? {
                return Ok(Admissibility::NotAdmissible { relation: e });
            }
        }
        if prec >= cap {
            return Ok(Admissibility::Inconclusive { det: img.det, precision: prec });
        }
        prec = (prec * 2).min(cap);
    }
}

/// Nonzero exponent vectors with entries in [−b, b], first nonzero entry
/// positive, ordered by max-norm and then lexicographically.
pub fn exponent_vectors(n: usize, b: i64, sign_normalized: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-b; n];
    if n == 0 {
        return out;
    }
    loop {
        let nonzero = cur.iter().find(|&&x| x != 0);
        if let Some(&first) = nonzero {
            if !sign_normalized || first > 0 {
                out.push(cur.clone());
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_by_key(|e| (e.iter().map(|x| x.abs()).max().unwrap_or(0), e.clone()));
                return out;
            }
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                break;
            }
            cur[i] = -b;
        }
    }
}

/// Search for e with Π a_k^{e_k} = 1, prefiltered by the interval log rows.
pub fn find_dependence(u: &UnitGroup, rows: &[Vec<Interval>], bound: i64) -> Result<Option<Vec<i64>>> {
    let n = u.generators.len();
    // Keep the search affordable for larger ranks.
    let mut b = bound;
    while b > 1 && (2 * b + 1).pow(n as u32) > 200_000 {
        b -= 1;
    }
    for e in exponent_vectors(n, b, true) {
        let plausible = (0..rows.first().map_or(0, |r| r.len())).all(|j| {
            e.iter().zip(rows).fold(Interval::zero(), |acc, (&k, r)| acc.add(&r[j].scale(&int(k)))).contains_zero()
        });
        if plausible && u.word(&e)?.is_one() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CEntry {
    pub re: Interval,
    pub im: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixC {
    pub s: usize,
    pub t: usize,
    /// entries[i][j] = c_ij, i over complex embeddings, j over real ones.
    pub entries: Vec<Vec<CEntry>>,
    pub branch_offsets: Vec<Vec<i64>>,
    pub column_sums: Vec<Interval>,
    /// Every Re c_ij encloses −1/(2t).
    pub lck: bool,
    pub precision: u32,
}

impl MatrixC {
    pub fn re(&self, i: usize, j: usize) -> &Interval {
        &self.entries[i][j].re
    }

    pub fn im(&self, i: usize, j: usize) -> &Interval {
        &self.entries[i][j].im
    }

    pub fn max_width(&self) -> Rational {
        self.entries.iter().flatten().map(|e| e.re.width().max(e.im.width())).max().unwrap_or_else(Rational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Principal,
    Offsets(Vec<Vec<i64>>),
}

impl Branch {
    fn offsets(&self, t: usize, s: usize) -> Result<Vec<Vec<i64>>> {
        match self {
            Branch::Principal => Ok(vec![vec![0; s]; t]),
            Branch::Offsets(o) => {
                if o.len() != t || o.iter().any(|r| r.len() != s) {
                    return Err(OtError::invalid(format!("branch offsets must be {t}×{s}")));
                }
                Ok(o.clone())
            }
        }
    }
}

pub fn solve_matrix_c(u: &UnitGroup, log: &LogImage, branch: &Branch) -> Result<MatrixC> {
    let (s, t) = u.field.signature();
    if u.generators.len() != s {
        return Err(OtError::WrongRank { expected: s, got: u.generators.len() });
    }
    let prec = log.precision;
    let offsets = branch.offsets(t, s)?;
    let kinv = ilinalg::inverse(&log.kappa)
        .ok_or_else(|| OtError::PrecisionExhausted { bits: prec, what: "det κ encloses 0".into() })?;
    let two_pi = Interval::pi(prec + 4).scale(&int(2));
    let half = rat(1, 2);
    let mut l_re = vec![vec![Interval::zero(); s]; t];
    let mut l_im = vec![vec![Interval::zero(); s]; t];
    for (k, g) in u.generators.iter().enumerate() {
        for i in 0..t {
            l_re[i][k] = log.rows[k][s + i].scale(&half);
            let z = g.embed(s + i, prec + 8)?.to_box();
            let arg = z.arg(prec)?;
            l_im[i][k] = arg.add(&two_pi.scale(&int(offsets[i][k])));
        }
    }
    let re = ilinalg::mat_mul(&l_re, &kinv);
    let im = ilinalg::mat_mul(&l_im, &kinv);
    let minus_half = rat(-1, 2);
    let mut column_sums = Vec::with_capacity(s);
    for j in 0..s {
        let sum = (0..t).fold(Interval::zero(), |acc, i| acc.add(&re[i][j]));
        if !sum.contains(&minus_half) {
            return Err(OtError::ColumnSumViolation { column: j });
        }
        column_sums.push(sum);
    }
    let target = if t > 0 { rat(-1, 2 * t as i64) } else { Rational::zero() };
    let lck = t > 0 && re.iter().flatten().all(|x| x.contains(&target));
    let entries = re
        .into_iter()
        .zip(im)
        .map(|(rr, ir)| rr.into_iter().zip(ir).map(|(re, im)| CEntry { re, im }).collect())
        .collect();
    Ok(MatrixC { s, t, entries, branch_offsets: offsets, column_sums, lck, precision: prec })
}

/// log image + C at `precision`, escalating when arguments or κ⁻¹ are not
/// yet certified.
pub fn matrix_c(u: &UnitGroup, precision: u32, branch: &Branch) -> Result<MatrixC> {
    matrix_c_with_cap(u, precision, branch, DEFAULT_PRECISION_CAP)
}

pub fn matrix_c_with_cap(u: &UnitGroup, precision: u32, branch: &Branch, cap: u32) -> Result<MatrixC> {
    let mut prec = precision.max(16);
    loop {
        let log = log_image(u, prec)?;
        match solve_matrix_c(u, &log, branch) {
            Err(OtError::PrecisionExhausted { .. })
            | Err(OtError::Exact(exactnum::ExactError::PrecisionExhausted { .. }))
                if prec < cap =>
            {
                prec = (prec * 2).min(cap);
            }
            other => return other,
        }
    }
}

/// 2π·Δo·κ⁻¹ — the exact amount by which Im C moves between two branches.
pub fn branch_shift(log: &LogImage, delta: &[Vec<i64>]) -> Result<Vec<Vec<Interval>>> {
    let prec = log.precision;
    let kinv = ilinalg::inverse(&log.kappa)
        .ok_or_else(|| OtError::PrecisionExhausted { bits: prec, what: "det κ encloses 0".into() })?;
    let two_pi = Interval::pi(prec + 4).scale(&int(2));
    let d: Vec<Vec<Interval>> = delta.iter().map(|r| r.iter().map(|&o| two_pi.scale(&int(o))).collect()).collect();
    Ok(ilinalg::mat_mul(&d, &kinv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rational::to_f64;

    fn inoue() -> UnitGroup {
        let k = NumberField::from_i64s(&[-1, -1, 0, 1]).unwrap();
        let a = k.generator();
        UnitGroup::new(&k, vec![a]).unwrap()
    }

    #[test]
    fn log_image_of_inoue_unit() {
        let u = inoue();
        let img = log_image(&u, 64).unwrap();
        let r = &img.rows[0];
        assert!((r[0].to_f64() - 0.2812).abs() < 1e-4);
        assert!((r[1].to_f64() + 0.2812).abs() < 1e-4);
        assert!(img.hyperplane_sums[0].contains_zero());
        let sq = log_vector(&u.generators()[0].pow(2).unwrap(), 64).unwrap();
        for (a, b) in sq.iter().zip(r) {
            assert!(a.overlaps(&b.scale(&int(2))));
        }
    }

    #[test]
    fn admissibility_verdicts() {
        let u = inoue();
        assert!(check_admissible(&u, 64).unwrap().is_admissible());
        let k = u.field().clone();
        let trivial = UnitGroup::new(&k, vec![k.one()]).unwrap();
        assert_eq!(check_admissible(&trivial, 64).unwrap(), Admissibility::NotAdmissible { relation: vec![1] });
        let wrong = UnitGroup::new(&k, vec![]).unwrap();
        assert!(matches!(check_admissible(&wrong, 64), Err(OtError::WrongRank { .. })));
    }

    #[test]
    fn dependent_generators_in_rank_two_field() {
        // x^4 - x - 1 has signature (2, 1); α has norm −1, so α² is a totally
        // positive unit.
        let k = NumberField::from_i64s(&[-1, -1, 0, 0, 1]).unwrap();
        assert_eq!(k.signature(), (2, 1));
        let a2 = k.generator().pow(2).unwrap();
        let a4 = a2.pow(2).unwrap();
        let u = UnitGroup::new(&k, vec![a2, a4]).unwrap();
        assert_eq!(check_admissible(&u, 64).unwrap(), Admissibility::NotAdmissible { relation: vec![2, -1] });
    }

    #[test]
    fn c_for_inoue_and_branch_shift() {
        let u = inoue();
        let c0 = matrix_c(&u, 64, &Branch::Principal).unwrap();
        assert!(c0.re(0, 0).contains(&rat(-1, 2)));
        assert!(c0.lck);
        let log = log_image(&u, 64).unwrap();
        let c1 = solve_matrix_c(&u, &log, &Branch::Offsets(vec![vec![1]])).unwrap();
        let shift = branch_shift(&log, &[vec![1]]).unwrap();
        assert!(c1.im(0, 0).overlaps(&c0.im(0, 0).add(&shift[0][0])));
        let expect = 2.0 * std::f64::consts::PI / to_f64(&log.kappa[0][0].mid());
        assert!((c1.im(0, 0).to_f64() - c0.im(0, 0).to_f64() - expect).abs() < 1e-9);
    }

    #[test]
    fn exponent_vectors_are_ordered() {
        let v = exponent_vectors(2, 1, true);
        assert_eq!(v, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }
}
