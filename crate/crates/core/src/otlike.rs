//! OT-like Lie algebras g_C, their standard LCK structure, and the forward
//! lattice data of a unit group acting on a module.
//!
//! Basis order: u_1..u_s, v_1..v_s, x_1, y_1, …, x_t, y_t with
//! [u_j, v_j] = v_j, [u_j, x_k] = Re c_kj x_k + Im c_kj y_k,
//! [u_j, y_k] = −Im c_kj x_k + Re c_kj y_k.

use exactnum::rational::{int, rat, Rational};
use exactnum::{ComplexBox, Interval, RationalMatrix};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, MPoly};
use crate::error::{OtError, Result};
use crate::liealg::{HermitianStructure, LieAlgebra};
use crate::numfield::{diagonalization_residual, regular_rep, Embedded, RegularRep, ZModule};
use crate::unitlat::{MatrixC, UnitGroup};
use crate::wire::Q;

pub fn u_index(_s: usize, i: usize) -> usize {
    i
}

pub fn v_index(s: usize, i: usize) -> usize {
    s + i
}

pub fn x_index(s: usize, k: usize) -> usize {
    2 * s + 2 * k
}

pub fn y_index(s: usize, k: usize) -> usize {
    2 * s + 2 * k + 1
}

pub fn ot_labels(s: usize, t: usize) -> Vec<String> {
    let mut l: Vec<String> = (1..=s).map(|i| format!("u{i}")).collect();
    l.extend((1..=s).map(|i| format!("v{i}")));
    for k in 1..=t {
        l.push(format!("x{k}"));
        l.push(format!("y{k}"));
    }
    l
}

#[derive(Clone, Debug, PartialEq)]
pub struct OtLikeAlgebra<R> {
    pub s: usize,
    pub t: usize,
    /// re[k][j] = Re c_kj, k over the t complex lines, j over the s real ones.
    pub re: Vec<Vec<R>>,
    pub im: Vec<Vec<R>>,
    pub algebra: LieAlgebra<R>,
}

/// Builds g_C after checking that every column of Re C sums to −1/2.
pub fn build_ot_like<R: Coeff>(s: usize, t: usize, re: Vec<Vec<R>>, im: Vec<Vec<R>>) -> Result<OtLikeAlgebra<R>> {
    if s == 0 || re.len() != t || im.len() != t || re.iter().chain(&im).any(|r| r.len() != s) {
        return Err(OtError::invalid(format!("C must be a nonempty {t}×{s} matrix")));
    }
    let half = R::from_rational(&rat(1, 2));
    for j in 0..s {
        let sum = (0..t).fold(R::zero_value(), |acc, k| acc.add(&re[k][j]));
        if !sum.add(&half).maybe_zero() {
            return Err(OtError::ColumnSumViolation { column: j });
        }
    }
    let n = 2 * s + 2 * t;
    let mut brackets = Vec::new();
    for j in 0..s {
        let mut v = vec![R::zero_value(); n];
        v[v_index(s, j)] = R::one_value();
        brackets.push((u_index(s, j), v_index(s, j), v));
        for k in 0..t {
            let mut bx = vec![R::zero_value(); n];
            bx[x_index(s, k)] = re[k][j].clone();
            bx[y_index(s, k)] = im[k][j].clone();
            brackets.push((u_index(s, j), x_index(s, k), bx));
            let mut by = vec![R::zero_value(); n];
            by[x_index(s, k)] = im[k][j].neg();
            by[y_index(s, k)] = re[k][j].clone();
            brackets.push((u_index(s, j), y_index(s, k), by));
        }
    }
    let algebra = LieAlgebra::new(ot_labels(s, t), brackets)?;
    Ok(OtLikeAlgebra { s, t, re, im, algebra })
}

impl<R: Coeff> OtLikeAlgebra<R> {
    /// Every Re c_kj equals (or encloses) −1/(2t).
    pub fn is_lck_ot_like(&self) -> bool {
        if self.t == 0 {
            return false;
        }
        let target = R::from_rational(&rat(1, 2 * self.t as i64));
        self.re.iter().flatten().all(|x| x.add(&target).maybe_zero())
    }

    pub fn dim(&self) -> usize {
        2 * self.s + 2 * self.t
    }
}

/// Exact g_C from rational real and imaginary parts.
pub fn rational_ot_like(re: Vec<Vec<Rational>>, im: Vec<Vec<Rational>>) -> Result<OtLikeAlgebra<Rational>> {
    let t = re.len();
    let s = re.first().map_or(0, |r| r.len());
    build_ot_like(s, t, re, im)
}

/// g_C with Re c_kj = −1/(2t) and Im c_kj the formal symbol X_{k·s + j}.
pub fn symbolic_lck_ot_like(s: usize, t: usize) -> Result<OtLikeAlgebra<MPoly>> {
    if t == 0 {
        return Err(OtError::invalid("t must be positive"));
    }
    let re = vec![vec![MPoly::constant(rat(-1, 2 * t as i64)); s]; t];
    let im = (0..t).map(|k| (0..s).map(|j| MPoly::var(k * s + j)).collect()).collect();
    build_ot_like(s, t, re, im)
}

/// g_C with interval entries taken from a solved matrix C.
pub fn interval_ot_like(c: &MatrixC) -> Result<OtLikeAlgebra<Interval>> {
    let re = c.entries.iter().map(|r| r.iter().map(|e| e.re.clone()).collect()).collect();
    let im = c.entries.iter().map(|r| r.iter().map(|e| e.im.clone()).collect()).collect();
    build_ot_like(c.s, c.t, re, im)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StandardStructure {
    pub hermitian: HermitianStructure,
    /// θ_C = (1/t) Σ u^i.
    pub theta: Vec<Rational>,
}

/// J u_i = v_i, J x_k = y_k; ⟨u_i, u_j⟩ = ⟨v_i, v_j⟩ = 1 + tδ_ij, x/y
/// orthonormal, all blocks mutually orthogonal.
pub fn standard_hermitian(s: usize, t: usize) -> HermitianStructure {
    let n = 2 * s + 2 * t;
    let mut j = RationalMatrix::zeros(n, n);
    let mut g = RationalMatrix::zeros(n, n);
    for i in 0..s {
        j.set(v_index(s, i), u_index(s, i), Rational::one());
        j.set(u_index(s, i), v_index(s, i), -Rational::one());
        for l in 0..s {
            let b = if i == l { int(1 + t as i64) } else { Rational::one() };
            g.set(u_index(s, i), u_index(s, l), b.clone());
            g.set(v_index(s, i), v_index(s, l), b);
        }
    }
    for k in 0..t {
        j.set(y_index(s, k), x_index(s, k), Rational::one());
        j.set(x_index(s, k), y_index(s, k), -Rational::one());
        g.set(x_index(s, k), x_index(s, k), Rational::one());
        g.set(y_index(s, k), y_index(s, k), Rational::one());
    }
    HermitianStructure::new(j, g).expect("standard structure is Hermitian")
}

pub fn standard_structure<R: Coeff>(alg: &OtLikeAlgebra<R>) -> Result<StandardStructure> {
    if !alg.is_lck_ot_like() {
        return Err(OtError::NotLckOtLike);
    }
    let (s, t) = (alg.s, alg.t);
    let mut theta = vec![Rational::zero(); 2 * s + 2 * t];
    for i in 0..s {
        theta[u_index(s, i)] = rat(1, t as i64);
    }
    Ok(StandardStructure { hermitian: standard_hermitian(s, t), theta })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexQ {
    pub re: Q,
    pub im: Q,
}

/// `{ "s": …, "t": …, "C": [[{"re", "im"}]] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OtLikeSpec {
    pub s: usize,
    pub t: usize,
    #[serde(rename = "C")]
    pub c: Vec<Vec<ComplexQ>>,
}

impl OtLikeSpec {
    pub fn parts(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let re = self.c.iter().map(|r| r.iter().map(|z| z.re.0.clone()).collect()).collect();
        let im = self.c.iter().map(|r| r.iter().map(|z| z.im.0.clone()).collect()).collect();
        (re, im)
    }

    pub fn build(&self) -> Result<OtLikeAlgebra<Rational>> {
        if self.c.len() != self.t || self.c.iter().any(|r| r.len() != self.s) {
            return Err(OtError::invalid(format!("C must be {}×{}", self.t, self.s)));
        }
        let (re, im) = self.parts();
        build_ot_like(self.s, self.t, re, im)
    }

    pub fn from_parts(re: &[Vec<Rational>], im: &[Vec<Rational>]) -> Self {
        let c = re
            .iter()
            .zip(im)
            .map(|(r, i)| r.iter().zip(i).map(|(a, b)| ComplexQ { re: Q(a.clone()), im: Q(b.clone()) }).collect())
            .collect();
        OtLikeSpec { s: re.first().map_or(0, |r| r.len()), t: re.len(), c }
    }
}

/// Equality of exact C matrices up to permutation of the complex lines,
/// conjugation of individual lines, and a simultaneous permutation of the
/// real columns (the order of u_1..u_s is not canonical).
pub fn c_equivalent(a: (&[Vec<Rational>], &[Vec<Rational>]), b: (&[Vec<Rational>], &[Vec<Rational>])) -> bool {
    let (t, s) = (a.0.len(), a.0.first().map_or(0, |r| r.len()));
    if b.0.len() != t || b.0.first().map_or(0, |r| r.len()) != s {
        return false;
    }
    permutations(s).into_iter().any(|tau| {
        let mut used = vec![false; t];
        (0..t).all(|i| {
            let hit = (0..t).find(|&k| {
                !used[k]
                    && (0..s).all(|j| a.0[i][j] == b.0[k][tau[j]])
                    && ((0..s).all(|j| a.1[i][j] == b.1[k][tau[j]]) || (0..s).all(|j| a.1[i][j] == -&b.1[k][tau[j]]))
            });
            hit.map(|k| used[k] = true).is_some()
        })
    })
}

/// Interval C matrices of the same unit group agree up to line permutation,
/// per-line conjugation, and the branch lattice: (Im a − Im b)·κ/2π must
/// enclose an integer matrix.
pub fn c_equivalent_modulo_branches(a: &MatrixC, b: &MatrixC, kappa: &[Vec<Interval>]) -> bool {
    let (t, s) = (a.t, a.s);
    if b.t != t || b.s != s {
        return false;
    }
    let two_pi = Interval::pi(a.precision.min(b.precision)).scale(&int(2));
    let integral_shift = |da: &[Interval]| -> bool {
        (0..s).all(|l| {
            let o = (0..s).fold(Interval::zero(), |acc, j| acc.add(&da[j].mul(&kappa[j][l])));
            match o.div(&two_pi) {
                Ok(q) => contains_integer(&q),
                Err(_) => false,
            }
        })
    };
    let mut used = vec![false; t];
    (0..t).all(|i| {
        let hit = (0..t).find(|&k| {
            if used[k] || !(0..s).all(|j| a.re(i, j).overlaps(b.re(k, j))) {
                return false;
            }
            let direct: Vec<Interval> = (0..s).map(|j| a.im(i, j).sub(b.im(k, j))).collect();
            let conj: Vec<Interval> = (0..s).map(|j| a.im(i, j).add(b.im(k, j))).collect();
            integral_shift(&direct) || integral_shift(&conj)
        });
        hit.map(|k| used[k] = true).is_some()
    })
}

fn contains_integer(x: &Interval) -> bool {
    let lo = x.lo().ceil();
    &lo <= x.hi()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ForwardLatticeData {
    /// pr(log a_k): the real-embedding log coordinates of each generator.
    pub gamma1: Vec<Vec<Interval>>,
    pub matrices: Vec<RationalMatrix>,
    pub dets: Vec<Q>,
    /// Rows = embeddings (s real, then t complex representatives),
    /// columns = module basis.
    pub embedding_matrix: Vec<Vec<ComplexBox>>,
    /// P·M_k − diag(σ(a_k))·P per generator.
    pub residuals: Vec<Vec<Vec<ComplexBox>>>,
    pub diagonal_within_enclosure: bool,
    pub precision: u32,
}

/// Integer matrices of the generators on the module, the embedding matrix P
/// and the residuals certifying P·M_k·P⁻¹ = diag(σ_1(a_k), …).
pub fn forward_lattice(u: &UnitGroup, module: &ZModule, c: &MatrixC) -> Result<ForwardLatticeData> {
    let prec = c.precision;
    let (s, _) = u.field().signature();
    let p = module.embedding_matrix(prec)?;
    let mut matrices = Vec::new();
    let mut dets = Vec::new();
    let mut residuals = Vec::new();
    let mut gamma1 = Vec::new();
    let mut ok = true;
    for (k, a) in u.generators().iter().enumerate() {
        let RegularRep { matrix, integral, det, .. } = regular_rep(a, module);
        if !integral {
            return Err(OtError::NonIntegerAction(k));
        }
        let sigma: Vec<ComplexBox> = a.embed_all(prec)?.iter().map(Embedded::to_box).collect();
        let res = diagonalization_residual(&p, &matrix, &sigma);
        ok &= res.iter().flatten().all(ComplexBox::contains_zero);
        residuals.push(res);
        gamma1.push(sigma[..s].iter().map(|z| z.re.ln(prec)).collect::<std::result::Result<Vec<_>, _>>()?);
        dets.push(Q(det));
        matrices.push(matrix);
    }
    Ok(ForwardLatticeData {
        gamma1,
        matrices,
        dets,
        embedding_matrix: p,
        residuals,
        diagonal_within_enclosure: ok,
        precision: prec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{nijenhuis, verify_lck, verify_vaisman, VaismanVerdict};
    use crate::numfield::NumberField;
    use crate::unitlat::{matrix_c, Branch};

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn lck_flag_follows_real_parts() {
        let a = rational_ot_like(vec![vec![q(-1, 4)], vec![q(-1, 4)]], vec![vec![q(1, 1)], vec![q(-1, 1)]]).unwrap();
        assert!(a.is_lck_ot_like());
        assert!(a.algebra.is_unimodular());
        let b = rational_ot_like(vec![vec![q(-1, 3)], vec![q(-1, 6)]], vec![vec![q(0, 1)], vec![q(0, 1)]]).unwrap();
        assert!(!b.is_lck_ot_like());
        assert!(matches!(standard_structure(&b), Err(OtError::NotLckOtLike)));
        let bad = rational_ot_like(vec![vec![q(-1, 3)]], vec![vec![q(0, 1)]]);
        assert!(matches!(bad, Err(OtError::ColumnSumViolation { column: 0 })));
    }

    #[test]
    fn standard_structure_is_lck_not_vaisman() {
        let a = rational_ot_like(vec![vec![q(-1, 2), q(-1, 2)]], vec![vec![q(1, 1), q(-2, 1)]]).unwrap();
        let st = standard_structure(&a).unwrap();
        assert!(nijenhuis(&a.algebra, &st.hermitian).integrable);
        let rep = verify_lck(&a.algebra, &st.hermitian, None).unwrap();
        assert!(rep.lck && rep.unique);
        assert_eq!(rep.lee_form, st.theta);
        assert_eq!(verify_vaisman(&a.algebra, &st.hermitian, &rep), VaismanVerdict::NotVaisman { witness: (2, 2) });
    }

    #[test]
    fn c_equivalence_symmetries() {
        let re = vec![vec![q(-1, 4), q(-1, 4)], vec![q(-1, 4), q(-1, 4)]];
        let im = vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(5, 1)]];
        let im_perm = vec![vec![q(-5, 1), q(-3, 1)], vec![q(2, 1), q(1, 1)]];
        assert!(c_equivalent((&re, &im), (&re, &im_perm)));
        let im_other = vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]];
        assert!(!c_equivalent((&re, &im), (&re, &im_other)));
    }

    #[test]
    fn inoue_forward_lattice() {
        let k = NumberField::from_i64s(&[-1, -1, 0, 1]).unwrap();
        let u = UnitGroup::new(&k, vec![k.generator()]).unwrap();
        let c = matrix_c(&u, 64, &Branch::Principal).unwrap();
        let m = ZModule::power_basis(&k);
        let data = forward_lattice(&u, &m, &c).unwrap();
        assert_eq!(data.matrices[0], RationalMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]));
        assert_eq!(data.dets[0], Q(int(1)));
        assert!(data.diagonal_within_enclosure);
        let scaled = ZModule::from_coords(
            &k,
            vec![vec![int(2), int(0), int(0)], vec![int(0), int(2), int(0)], vec![int(0), int(0), int(2)]],
        )
        .unwrap();
        assert_eq!(forward_lattice(&u, &scaled, &c).unwrap().matrices, data.matrices);
        let half = ZModule::from_coords(
            &k,
            vec![vec![int(1), int(0), int(0)], vec![int(0), int(2), int(0)], vec![int(0), int(0), int(1)]],
        )
        .unwrap();
        assert!(matches!(forward_lattice(&u, &half, &c), Err(OtError::NonIntegerAction(0))));
    }
}
