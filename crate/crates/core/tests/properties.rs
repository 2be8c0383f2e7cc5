use std::sync::Arc;

use exactnum::rational::{int, rat, Rational};
use exactnum::{is_irreducible, IntPoly, Interval, RationalMatrix};
use num_traits::{One, Zero};
use otkit::converse::{companion, companion_family};
use otkit::metrics::magnitude_profile;
use otkit::unitlat::{branch_shift, log_vector};
use otkit::{
    close_algebra, fast_irreducibility, forward_lattice, log_image, matrix_c, rational_ot_like, semidirect,
    standard_structure, verify_lck, Branch, KForm, MatrixFamily, NumberField, UnitGroup, ZModule,
};
use proptest::prelude::*;

fn field(c: &[i64]) -> Arc<NumberField> {
    NumberField::from_i64s(c).unwrap()
}

/// x⁴ − x − 1 has signature (2, 1); α² and (α − 1)² are independent totally
/// positive units.
fn quartic_group(e: (i64, i64), f: (i64, i64)) -> Option<UnitGroup> {
    let k = field(&[-1, -1, 0, 0, 1]);
    let a = k.generator().pow(2).unwrap();
    let b = k.element_i64(&[-1, 1, 0, 0]).unwrap().pow(2).unwrap();
    let g1 = a.pow(e.0).unwrap().mul(&b.pow(e.1).unwrap());
    let g2 = a.pow(f.0).unwrap().mul(&b.pow(f.1).unwrap());
    (e.0 * f.1 - e.1 * f.0 != 0).then(|| UnitGroup::new(&k, vec![g1, g2]).unwrap())
}

fn contains_or_overlaps(a: &Interval, b: &Interval) -> bool {
    a.overlaps(b)
}

/// Product of random elementary matrices: a uniformly bounded SL(n, Z) sample.
fn elementary_product(n: usize, ops: &[(usize, usize, i64)]) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = RationalMatrix::identity(n);
        e.set(i, j, int(c));
        m = m.mul(&e).unwrap();
    }
    m
}

fn to_i64(m: &RationalMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()).collect()
}

fn random_form(dim: usize, degree: usize, coeffs: &[i64]) -> KForm<Rational> {
    let mut f = KForm::zero(dim, degree);
    let mut idx: Vec<usize> = (0..degree).collect();
    let mut k = 0;
    'outer: loop {
        f.set(idx.clone(), int(coeffs[k % coeffs.len()]));
        k += 1;
        let mut i = degree;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if idx[i] < dim - degree + i {
                idx[i] += 1;
                for l in i + 1..degree {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn log_map_is_a_homomorphism(i in -4i64..=4, j in -4i64..=4) {
        let k = field(&[-1, -1, 0, 1]);
        let a = k.generator();
        let (x, y) = (a.pow(i).unwrap(), a.pow(j).unwrap());
        let lx = log_vector(&x, 96).unwrap();
        let ly = log_vector(&y, 96).unwrap();
        let lxy = log_vector(&x.mul(&y), 96).unwrap();
        for m in 0..lx.len() {
            prop_assert!(contains_or_overlaps(&lxy[m], &lx[m].add(&ly[m])));
        }
        // Dirichlet hyperplane: Σ log σ_j + Σ log|σ|² = 0.
        prop_assert!(lx.iter().fold(Interval::zero(), |s, v| s.add(v)).contains_zero());
    }

    #[test]
    fn column_sums_and_branch_coherence(
        e in (1i64..=2, -1i64..=1), f in (-1i64..=1, 1i64..=2),
        o in prop::collection::vec(-2i64..=2, 2),
    ) {
        let Some(u) = quartic_group(e, f) else { return Ok(()) };
        let c0 = matrix_c(&u, 64, &Branch::Principal).unwrap();
        for sum in &c0.column_sums {
            prop_assert!(sum.contains(&rat(-1, 2)));
        }
        let c1 = matrix_c(&u, c0.precision, &Branch::Offsets(vec![o.clone()])).unwrap();
        let log = log_image(&u, c0.precision).unwrap();
        let shift = branch_shift(&log, &[o]).unwrap();
        for j in 0..2 {
            prop_assert!(c1.re(0, j).overlaps(c0.re(0, j)));
            prop_assert!(c1.im(0, j).sub(c0.im(0, j)).overlaps(&shift[0][j]));
        }
    }

    #[test]
    fn d_squared_vanishes(
        entries in prop::collection::vec(-3i64..=3, 9),
        p in prop::collection::vec(-2i64..=2, 3),
        coeffs in prop::collection::vec(-3i64..=3, 1..8),
    ) {
        let m = RationalMatrix::from_i64(&[entries[0..3].to_vec(), entries[3..6].to_vec(), entries[6..9].to_vec()]);
        let b = m.mul(&m).unwrap().scale(&int(p[0])).add(&m.scale(&int(p[1]))).add(&RationalMatrix::identity(3).scale(&int(p[2])));
        let alg = semidirect(&[m, b]).unwrap();
        for degree in 1..=3 {
            let w = random_form(alg.dim(), degree, &coeffs);
            prop_assert!(alg.ce_differential(&alg.ce_differential(&w)).is_zero());
        }
        prop_assert!(alg.derived_span().is_some());
    }

    #[test]
    fn ot_like_is_unimodular_and_lee_form_scale_invariant(
        im in prop::collection::vec((-6i64..=6, 1i64..=3), 2),
        num in 1i64..=9, den in 1i64..=9,
    ) {
        let g = rational_ot_like(vec![vec![rat(-1, 2), rat(-1, 2)]], vec![im.iter().map(|&(a, b)| rat(a, b)).collect()]).unwrap();
        prop_assert!(g.algebra.is_unimodular());
        let st = standard_structure(&g).unwrap();
        let r1 = verify_lck(&g.algebra, &st.hermitian, None).unwrap();
        let r2 = verify_lck(&g.algebra, &st.hermitian.scaled(&rat(num, den)), None).unwrap();
        prop_assert!(r1.lck && r2.lck && r1.unique && r2.unique);
        prop_assert_eq!(&r1.lee_form, &r2.lee_form);
        prop_assert_eq!(&r1.lee_form, &st.theta);
    }

    #[test]
    fn forward_lattice_char_poly_is_a_min_poly_power(k in 1i64..=3) {
        let f = field(&[-1, -1, 0, 1]);
        let a = f.generator().pow(k).unwrap();
        let u = UnitGroup::new(&f, vec![a.clone()]).unwrap();
        let c = matrix_c(&u, 64, &Branch::Principal).unwrap();
        let fl = forward_lattice(&u, &ZModule::power_basis(&f), &c).unwrap();
        let cp = fl.matrices[0].charpoly().unwrap();
        let mp = a.min_poly();
        prop_assert_eq!(cp, mp.pow(3 / mp.deg()));
        prop_assert!(fl.dets[0].0.is_one());
    }

    #[test]
    fn fast_path_never_contradicts_factorization(
        n in 2usize..=5,
        ops in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 1..14),
    ) {
        let m = elementary_product(n, &ops);
        if fast_irreducibility(&m).applies() {
            prop_assert!(is_irreducible(&m.charpoly().unwrap().to_int_primitive()).unwrap());
        }
    }

    #[test]
    fn closure_dimension_is_conjugation_invariant(
        which in 0usize..3,
        ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 1..8),
    ) {
        let polys = [
            IntPoly::from_i64s(&[-1, -1, 0, 1]),
            IntPoly::from_i64s(&[1, -1, 0, 0, 1]),
            IntPoly::from_i64s(&[1, -3, 1]),
        ];
        let f = &polys[which];
        let fam = companion_family(f);
        let n = fam.n;
        let p = elementary_product(n, &ops);
        let pinv = p.inverse().unwrap();
        let m = RationalMatrix::from_i64(&companion(f));
        let conj = pinv.mul(&m).unwrap().mul(&p).unwrap();
        let block = MatrixFamily::new(vec![to_i64(&conj)]);
        prop_assert_eq!(close_algebra(&fam).unwrap().dim, close_algebra(&block).unwrap().dim);
    }
}

#[test]
fn lck_condition_is_multiplicative_on_passing_units() {
    // x⁴ + 1: roots of unity pass, 1 + √2 does not.
    let k = field(&[1, 0, 0, 0, 1]);
    let units = otkit::search_units(&k, 1).unwrap();
    let passing: Vec<_> = units.iter().filter(|u| magnitude_profile(u).unwrap().equal).cloned().collect();
    assert!(passing.len() >= 8);
    assert!(units.len() > passing.len());
    for (i, u) in passing.iter().enumerate() {
        let v = &passing[(i * 5 + 3) % passing.len()];
        assert!(magnitude_profile(&u.mul(v)).unwrap().equal);
    }
}

#[test]
fn symbolic_residual_specializes_to_rational_instances() {
    let g = otkit::symbolic_lck_ot_like(2, 1).unwrap();
    let st = standard_structure(&g).unwrap();
    let r = verify_lck(&g.algebra, &st.hermitian, None).unwrap();
    assert!(r.lck && r.lck_residual.is_zero());
    let q = rational_ot_like(vec![vec![rat(-1, 2); 2]], vec![vec![rat(3, 5), Rational::zero()]]).unwrap();
    let rq = verify_lck(&q.algebra, &standard_structure(&q).unwrap().hermitian, None).unwrap();
    assert!(rq.lck);
}
