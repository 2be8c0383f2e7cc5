//! Normalization of LCK structures on meta-abelian Lie algebras g = R^m ⋉ n.
//!
//! Either θ|_n ≠ 0 and the structure is Vaisman of Heisenberg type, or the
//! algebra is rebuilt in an adapted basis u, v, x, y in which it is exactly
//! g_C with its standard structure (up to a global rescaling of the metric).
//! Everything is exact: J, the metric and the structure constants are
//! rational, and the characters involved must be rational too.

use exactnum::rational::{bits, exact_sqrt, int, rat, Rational};
use exactnum::roots::isolate_rat;
use exactnum::{RatPoly, RationalMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{OtError, Result};
use crate::liealg::{
    is_abelian_j, nijenhuis, verify_lck, verify_vaisman, HermitianStructure, LieAlgebra, VaismanVerdict,
};
use crate::otlike::{rational_ot_like, standard_hermitian, x_index, y_index, OtLikeSpec};
use crate::wire::Q;

type Vector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationBranch {
    /// θ|_n ≠ 0 (or Vaisman): isomorphic to R × h_{2d+1} with its standard
    /// Vaisman structure.
    VaismanHeisenberg,
    OtLike,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizationResult {
    pub branch: NormalizationBranch,
    pub s: Option<usize>,
    pub t: Option<usize>,
    /// Columns are the adapted basis vectors u, v, x, y in input coordinates.
    pub basis_change: Option<RationalMatrix>,
    #[serde(rename = "C")]
    pub c: Option<OtLikeSpec>,
    /// ⟨u_i, u_j⟩ = γ(1/t + δ_ij) in the input metric.
    pub gamma: Option<Q>,
    /// The metric is multiplied by ρ = t/γ.
    pub rho: Option<Q>,
    /// The scalar by which ad_A acts on k, equal to (t/s)‖A‖².
    pub lambda0: Option<Q>,
    /// ρ‖x_k‖² per complex line; 1 when the line could be normalized
    /// rationally.
    pub line_norms: Vec<Q>,
    pub checks: Vec<Check>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vector {
    x.iter().zip(y).map(|(p, q)| a * p + q).collect()
}

fn scale(a: &Rational, x: &[Rational]) -> Vector {
    x.iter().map(|p| a * p).collect()
}

fn is_zero_vec(x: &[Rational]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Row-reduced basis of the span.
fn span(rows: &[Vector], n: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(rows.to_vec()).expect("rectangular");
    let (r, piv) = m.rref();
    debug_assert!(r.cols() == n);
    (0..piv.len()).map(|i| r.row(i)).collect()
}

/// Coordinates of v in the given (independent) basis, if v lies in the span.
fn coords(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    RationalMatrix::from_columns(basis).solve(v)
}

fn intersect(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    // x = Σα_i a_i = Σβ_j b_j
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| scale(&-Rational::one(), v)));
    if cols.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_columns(&cols);
    let ker = m.kernel();
    let vs: Vec<Vector> = ker
        .iter()
        .map(|k| a.iter().enumerate().fold(vec![Rational::zero(); n], |acc, (i, ai)| axpy(&k[i], ai, &acc)))
        .collect();
    span(&vs, n)
}

fn bracket(alg: &LieAlgebra<Rational>, x: &[Rational], y: &[Rational]) -> Vector {
    alg.bracket(x, y)
}

fn apply(m: &RationalMatrix, x: &[Rational]) -> Vector {
    m.mul_vec(x)
}

fn inner(g: &RationalMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    dot(x, &g.mul_vec(y))
}

/// Distinct rational roots of f, ascending.
pub fn rational_roots(f: &RatPoly) -> Result<Vec<Rational>> {
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let g = f.gcd(&f.derivative());
    let sf = f.div_rem(&g).0;
    let ip = sf.to_int_primitive();
    let lc = ip.leading().abs();
    // A rational root p/q has q | lc; at width below 1/(2 lc²) it is the
    // only such fraction, and it is a convergent of any point nearby.
    let bits_needed = 2 * bits(&lc) as u32 + 4;
    let roots = isolate_rat(&sf)?;
    let mut out = Vec::new();
    for r in &roots.real {
        if let Some(q) = r.exact_value() {
            out.push(q.clone());
            continue;
        }
        let iv = r.enclosure(bits_needed);
        for cand in convergents(&iv.mid()) {
            if cand.denom() > &lc {
                break;
            }
            if iv.contains(&cand) && sf.eval(&cand).is_zero() {
                out.push(cand);
                break;
            }
        }
    }
    Ok(out)
}

fn convergents(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    while !den.is_zero() {
        let a = num.div_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let r = &num - &a * &den;
        num = std::mem::replace(&mut den, r);
    }
    out
}

/// Weight vectors tried for generic linear combinations.
fn weight_sets(len: usize) -> impl Iterator<Item = Vec<Rational>> {
    [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .into_iter()
        .map(move |p: i64| (0..len).map(|l| int(p.pow(l as u32) + l as i64)).collect())
}

/// Joint eigenspaces of a commuting family of square matrices with rational
/// spectra: (joint eigenvalues, eigenspace basis) in order of the generic
/// combination's eigenvalues.
fn joint_eigenspaces(ms: &[RationalMatrix], dim: usize) -> Option<Vec<(Vector, Vec<Vector>)>> {
    if dim == 0 {
        return Some(Vec::new());
    }
    for w in weight_sets(ms.len()) {
        let mut h = RationalMatrix::zeros(dim, dim);
        for (m, c) in ms.iter().zip(&w) {
            h = h.add(&m.scale(c));
        }
        let Ok(cp) = h.charpoly() else { continue };
        let Ok(roots) = rational_roots(&cp) else {
            continue;
        };
        let mut spaces = Vec::new();
        let mut total = 0;
        let mut ok = true;
        for lam in roots {
            let shifted = h.sub(&RationalMatrix::identity(dim).scale(&lam));
            let basis = span(&shifted.kernel(), dim);
            total += basis.len();
            let mut eig = Vec::new();
            for m in ms {
                let mv = m.mul_vec(&basis[0]);
                let Some(mu) = ratio(&mv, &basis[0]) else {
                    ok = false;
                    break;
                };
                if !basis.iter().all(|b| m.mul_vec(b) == scale(&mu, b)) {
                    ok = false;
                    break;
                }
                eig.push(mu);
            }
            if !ok {
                break;
            }
            spaces.push((eig, basis));
        }
        if ok && total == dim {
            return Some(spaces);
        }
    }
    None
}

/// μ with a = μ b, if any.
fn ratio(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let mu = &a[i] / &b[i];
    (scale(&mu, b) == a).then_some(mu)
}

fn fail(msg: impl Into<String>) -> OtError {
    OtError::AssumptionFailure(msg.into())
}

/// Default abelian ideal: the centralizer of [g, g].
fn default_ideal(alg: &LieAlgebra<Rational>) -> Vec<Vector> {
    let n = alg.dim();
    let derived = alg.derived_span().unwrap_or_default();
    // x with [x, d] = 0 for all d in [g, g]
    let mut rows: Vec<Vector> = Vec::new();
    for d in &derived {
        let ad = alg.ad(d);
        rows.extend(ad);
    }
    if rows.is_empty() {
        return (0..n).map(|i| crate::liealg::unit(n, i)).collect();
    }
    span(&RationalMatrix::from_rows(rows).expect("rectangular").kernel(), n)
}

/// Runs the normalization. `ideal` is a basis of the abelian ideal n with
/// abelian quotient; by default the centralizer of [g, g] is used.
pub fn normalize_meta_abelian_lck(
    alg: &LieAlgebra<Rational>,
    h: &HermitianStructure,
    ideal: Option<&[Vector]>,
) -> Result<NormalizationResult> {
    let n = alg.dim();
    if h.dim() != n {
        return Err(OtError::invalid("structure and algebra dimensions differ"));
    }
    let nb = span(&ideal.map(|i| i.to_vec()).unwrap_or_else(|| default_ideal(alg)), n);
    let m = n - nb.len();
    if m == 0 {
        return Err(fail("the abelian ideal is the whole algebra; supply a proper one"));
    }
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if !is_zero_vec(&bracket(alg, &nb[i], &nb[j])) {
                return Err(fail("the given ideal is not abelian"));
            }
        }
    }
    for d in alg.derived_span().unwrap_or_default() {
        if coords(&nb, &d).is_none() {
            return Err(fail("[g, g] is not contained in the ideal; the algebra is not meta-abelian over it"));
        }
    }
    if !alg.is_unimodular() {
        return Err(OtError::NotUnimodular);
    }
    let nij = nijenhuis(alg, h);
    if !nij.integrable {
        return Err(OtError::NotLck(format!("J is not integrable (witness {:?})", nij.witness)));
    }
    let rep = match verify_lck(alg, h, None) {
        Ok(r) => r,
        Err(OtError::NoLeeCandidate) => return Err(OtError::NotLck("dω is not of the form θ∧ω".into())),
        Err(e) => return Err(e),
    };
    if !rep.lck {
        return Err(OtError::NotLck("the Lee form is not closed".into()));
    }
    if rep.theta_vanishes() {
        return Err(OtError::NotLck("the Lee form vanishes (the structure is Kähler)".into()));
    }
    let theta = rep.lee_form.clone();
    let lee = rep.lee_vector.clone();
    let theta_on_ideal = nb.iter().any(|v| !dot(&theta, v).is_zero());
    let vaisman = verify_vaisman(alg, h, &rep);
    if theta_on_ideal || vaisman == VaismanVerdict::Vaisman {
        if !is_abelian_j(alg, h) {
            return Err(fail("θ|_n ≠ 0 or Vaisman, but J is not abelian"));
        }
        return Ok(NormalizationResult {
            branch: NormalizationBranch::VaismanHeisenberg,
            s: None,
            t: None,
            basis_change: None,
            c: None,
            gamma: None,
            rho: None,
            lambda0: None,
            line_norms: Vec::new(),
            checks: vec![
                Check { name: "theta_nonzero_on_ideal", passed: theta_on_ideal },
                Check { name: "abelian_j", passed: true },
                Check { name: "vaisman", passed: vaisman == VaismanVerdict::Vaisman },
            ],
        });
    }

    let jn: Vec<Vector> = nb.iter().map(|v| apply(&h.j, v)).collect();
    let mut sum = nb.clone();
    sum.extend(jn.iter().cloned());
    if span(&sum, n).len() != n {
        return Err(if m <= 2 {
            fail("n + Jn ≠ g although m ≤ 2; the input violates the hypotheses")
        } else {
            fail("n + Jn ≠ g (required when m ≥ 3)")
        });
    }
    let a = intersect(&nb, &jn, n);
    // k = a^⊥ ∩ n
    let k = {
        let rows: Vec<Vector> = a.iter().map(|ai| nb.iter().map(|nj| inner(&h.metric, nj, ai)).collect()).collect();
        let combos = if rows.is_empty() {
            (0..nb.len()).map(|i| crate::liealg::unit(nb.len(), i)).collect()
        } else {
            RationalMatrix::from_rows(rows).expect("rectangular").kernel()
        };
        let vs: Vec<Vector> = combos
            .iter()
            .map(|c| nb.iter().enumerate().fold(vec![Rational::zero(); n], |acc, (i, v)| axpy(&c[i], v, &acc)))
            .collect();
        span(&vs, n)
    };
    let s = k.len();
    let t = a.len() / 2;
    if s != m {
        return Err(fail(format!("dim k = {s} differs from m = {m}")));
    }
    if t == 0 {
        return Err(fail("t = 0: J preserves no nonzero subspace of n"));
    }
    let ug: Vec<Vector> = k.iter().map(|v| apply(&h.j, v)).collect();
    for i in 0..s {
        for j in i + 1..s {
            if !is_zero_vec(&bracket(alg, &ug[i], &ug[j])) {
                return Err(fail("Jk is not abelian"));
            }
        }
    }

    // ad(u)|_k in k-coordinates
    let mut ad_k = Vec::new();
    for uu in &ug {
        let mut cols = Vec::new();
        for kb in &k {
            cols.push(coords(&k, &bracket(alg, uu, kb)).ok_or_else(|| fail("k is not an ideal"))?);
        }
        ad_k.push(RationalMatrix::from_columns(&cols));
    }
    let lines = joint_eigenspaces(&ad_k, s).filter(|sp| sp.len() == s).ok_or_else(|| {
        OtError::AssumptionFailure("ad(Jk) on k has no rational simultaneous eigenbasis of distinct lines".into())
    })?;
    let mut us = Vec::new();
    let mut vs = Vec::new();
    for (_, basis) in &lines {
        let w = basis[0].iter().zip(&k).fold(vec![Rational::zero(); n], |acc, (c, kv)| axpy(c, kv, &acc));
        let mjw = scale(&-Rational::one(), &apply(&h.j, &w));
        let chi = ratio(&bracket(alg, &mjw, &w), &w).ok_or_else(|| fail("eigenline is not preserved"))?;
        if chi.is_zero() {
            return Err(fail("degenerate character on k"));
        }
        let v = scale(&(Rational::one() / &chi), &w);
        let u = scale(&-Rational::one(), &apply(&h.j, &v));
        us.push(u);
        vs.push(v);
    }
    let mut checks = Vec::new();
    let diag_ok = (0..s).all(|i| {
        (0..s).all(|j| {
            let b = bracket(alg, &us[i], &vs[j]);
            if i == j {
                b == vs[j]
            } else {
                is_zero_vec(&b)
            }
        })
    });
    checks.push(Check { name: "bracket_u_v_is_delta", passed: diag_ok });
    if !diag_ok {
        return Err(fail("[u_i, v_j] ≠ δ_ij v_j"));
    }
    let theta_ok = us.iter().all(|u| dot(&theta, u) == rat(1, t as i64));
    checks.push(Check { name: "theta_u_is_one_over_t", passed: theta_ok });
    if !theta_ok {
        return Err(fail("θ(u_i) ≠ 1/t"));
    }

    // Ψ = ad_A on k is the scalar (t/s)‖A‖²
    let lambda0 = rat(t as i64, s as i64) * inner(&h.metric, &lee, &lee);
    let psi_ok = k.iter().all(|kv| bracket(alg, &lee, kv) == scale(&lambda0, kv));
    checks.push(Check { name: "ad_lee_on_k_is_lambda0", passed: psi_ok });
    if !psi_ok {
        return Err(fail("ad_A on k is not (t/s)‖A‖²"));
    }

    // H_j = −J(ad_{u_j}|_a + θ(u_j)/2) in a-coordinates
    let half_theta = rat(1, 2 * t as i64);
    let mut hs = Vec::new();
    for u in &us {
        let mut cols = Vec::new();
        for av in &a {
            let y = axpy(&half_theta, av, &bracket(alg, u, av));
            let z = scale(&-Rational::one(), &apply(&h.j, &y));
            cols.push(coords(&a, &z).ok_or_else(|| fail("a is not preserved by ad(u)"))?);
        }
        hs.push(RationalMatrix::from_columns(&cols));
    }
    let spaces = joint_eigenspaces(&hs, 2 * t).ok_or_else(|| {
        OtError::AssumptionFailure(
            "the imaginary parts are not rational; only exact rational inputs are normalized".into(),
        )
    })?;
    let mut xs: Vec<Vector> = Vec::new();
    let mut ims: Vec<Vector> = Vec::new();
    for (eig, basis) in &spaces {
        let vecs: Vec<Vector> = basis
            .iter()
            .map(|c| c.iter().zip(&a).fold(vec![Rational::zero(); n], |acc, (ci, av)| axpy(ci, av, &acc)))
            .collect();
        let mut pairs: Vec<(Vector, Vector)> = Vec::new();
        for e in &vecs {
            let mut r = e.clone();
            for (x, y) in &pairs {
                let cx = -(inner(&h.metric, &r, x) / inner(&h.metric, x, x));
                let cy = -(inner(&h.metric, &r, y) / inner(&h.metric, y, y));
                r = axpy(&cx, x, &r);
                r = axpy(&cy, y, &r);
            }
            if !is_zero_vec(&r) {
                let jr = apply(&h.j, &r);
                pairs.push((r, jr));
            }
            if 2 * pairs.len() == vecs.len() {
                break;
            }
        }
        if 2 * pairs.len() != vecs.len() {
            return Err(fail("joint eigenspace on a is not J-invariant"));
        }
        for (x, _) in pairs {
            xs.push(x);
            ims.push(eig.clone());
        }
    }
    if xs.len() != t {
        return Err(fail("wrong number of complex lines in a"));
    }

    let b11 = inner(&h.metric, &us[0], &us[0]);
    let gamma = &b11 / (rat(1, t as i64) + Rational::one());
    let gram_ok = (0..s).all(|i| {
        (0..s).all(|j| {
            let want = &gamma * (rat(1, t as i64) + if i == j { Rational::one() } else { Rational::zero() });
            inner(&h.metric, &us[i], &us[j]) == want && inner(&h.metric, &vs[i], &vs[j]) == want
        })
    });
    checks.push(Check { name: "gram_u_v_is_gamma_pattern", passed: gram_ok });
    let orth_ok = us.iter().all(|u| {
        vs.iter().all(|v| inner(&h.metric, u, v).is_zero()) && a.iter().all(|x| inner(&h.metric, u, x).is_zero())
    }) && vs.iter().all(|v| a.iter().all(|x| inner(&h.metric, v, x).is_zero()));
    checks.push(Check { name: "u_k_a_orthogonal", passed: orth_ok });
    if !gram_ok || !orth_ok || !gamma.is_positive() {
        return Err(fail("the metric on u ⊕ k does not have the standard shape"));
    }
    let rho = rat(t as i64, 1) / &gamma;

    let mut line_norms = Vec::new();
    let mut cols: Vec<Vector> = Vec::new();
    cols.extend(us.iter().cloned());
    cols.extend(vs.iter().cloned());
    for x in &xs {
        let q = &rho * inner(&h.metric, x, x);
        let (x, norm) = match exact_sqrt(&q) {
            Some(r) => (scale(&(Rational::one() / r), x), Rational::one()),
            None => (x.clone(), q),
        };
        let y = apply(&h.j, &x);
        cols.push(x);
        cols.push(y);
        line_norms.push(Q(norm));
    }
    let b = RationalMatrix::from_columns(&cols);
    let re = vec![vec![rat(-1, 2 * t as i64); s]; t];
    let im: Vec<Vec<Rational>> = ims;
    let expected = rational_ot_like(re.clone(), im.clone())?;
    let transformed = alg.change_basis(&b)?;
    let alg_ok = transformed.constants() == expected.algebra.constants();
    checks.push(Check { name: "algebra_matches_g_c", passed: alg_ok });
    let h2 = h.change_basis(&b)?.scaled(&rho);
    let std = standard_hermitian(s, t);
    let j_ok = h2.j == std.j;
    checks.push(Check { name: "j_matches_standard", passed: j_ok });
    let mut want_metric = std.metric.clone();
    for (kk, q) in line_norms.iter().enumerate() {
        want_metric.set(x_index(s, kk), x_index(s, kk), q.0.clone());
        want_metric.set(y_index(s, kk), y_index(s, kk), q.0.clone());
    }
    let g_ok = h2.metric == want_metric;
    checks.push(Check { name: "metric_matches_standard", passed: g_ok });
    if !(alg_ok && j_ok && g_ok) {
        return Err(fail("the adapted basis does not reproduce the standard structure"));
    }
    Ok(NormalizationResult {
        branch: NormalizationBranch::OtLike,
        s: Some(s),
        t: Some(t),
        basis_change: Some(b),
        c: Some(OtLikeSpec::from_parts(&re, &im)),
        gamma: Some(Q(gamma)),
        rho: Some(Q(rho)),
        lambda0: Some(Q(lambda0)),
        line_norms,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::kodaira_thurston;
    use crate::otlike::{c_equivalent, standard_structure};

    #[test]
    fn rational_roots_found() {
        // (x − 1/2)(x + 3)^2 (x^2 − 2)
        let f = RatPoly::new(vec![rat(-1, 2), int(1)])
            .mul(&RatPoly::new(vec![int(3), int(1)]).pow(2))
            .mul(&RatPoly::new(vec![int(-2), int(0), int(1)]));
        assert_eq!(rational_roots(&f).unwrap(), vec![int(-3), rat(1, 2)]);
    }

    #[test]
    fn identity_round_trip_one_one() {
        let g = rational_ot_like(vec![vec![rat(-1, 2)]], vec![vec![int(1)]]).unwrap();
        let st = standard_structure(&g).unwrap();
        let res = normalize_meta_abelian_lck(&g.algebra, &st.hermitian, None).unwrap();
        assert_eq!(res.branch, NormalizationBranch::OtLike);
        assert_eq!((res.s, res.t), (Some(1), Some(1)));
        let (re, im) = res.c.unwrap().parts();
        assert!(c_equivalent((&re, &im), (&g.re, &g.im)));
        assert_eq!(res.gamma.unwrap().0, int(1));
    }

    #[test]
    fn kodaira_thurston_is_vaisman_branch() {
        let (alg, h) = kodaira_thurston(1);
        // R¹ ⋉ R³ with R³ = span(y, z1, z2)
        let ideal = vec![
            vec![int(0), int(1), int(0), int(0)],
            vec![int(0), int(0), int(1), int(0)],
            vec![int(0), int(0), int(0), int(1)],
        ];
        let res = normalize_meta_abelian_lck(&alg, &h, Some(&ideal)).unwrap();
        assert_eq!(res.branch, NormalizationBranch::VaismanHeisenberg);
    }

    #[test]
    fn abelian_input_is_kahler() {
        let alg = LieAlgebra::<Rational>::abelian(4);
        let (_, h) = kodaira_thurston(1);
        let ideal: Vec<Vector> = (1..4).map(|i| crate::liealg::unit(4, i)).collect();
        assert!(matches!(normalize_meta_abelian_lck(&alg, &h, Some(&ideal)), Err(OtError::NotLck(_))));
    }
}
