use exactnum::rational::{int, rat, Rational};
use exactnum::RationalMatrix;
use num_traits::Zero;
use otkit::otlike::{c_equivalent, rational_ot_like, standard_structure};
use otkit::{normalize_meta_abelian_lck, NormalizationBranch};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

#[test]
fn scrambled_instances_normalize_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (s, t) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let re = vec![vec![rat(-1, 2 * t as i64); s]; t];
        let im: Vec<Vec<Rational>> =
            (0..t).map(|_| (0..s).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()).collect();
        let g = rational_ot_like(re, im).unwrap();
        let st = standard_structure(&g).unwrap();
        let b = random_invertible(&mut rng, g.dim());
        let alg = g.algebra.change_basis(&b).unwrap();
        let h = st.hermitian.change_basis(&b).unwrap().scaled(&rat(3, 7));
        let res = normalize_meta_abelian_lck(&alg, &h, None).unwrap();
        assert_eq!(res.branch, NormalizationBranch::OtLike);
        assert_eq!((res.s, res.t), (Some(s), Some(t)));
        let (re2, im2) = res.c.as_ref().unwrap().parts();
        assert!(c_equivalent((&re2, &im2), (&g.re, &g.im)), "({s},{t}) {:?} vs {:?}", im2, g.im);
        assert!(res.checks.iter().all(|c| c.passed));
    }
}
