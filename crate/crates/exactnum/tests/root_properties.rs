use exactnum::roots::{all_root_boxes, isolate_roots};
use exactnum::IntPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        (prop::collection::vec(-bound..=bound, d), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])).prop_map(
            |(mut c, lc)| {
                c.push(lc);
                IntPoly::from_i64s(&c)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn real_plus_twice_pairs_is_squarefree_degree(f in poly_strategy(8, 9)) {
        let rs = isolate_roots(&f).unwrap();
        let (s, t) = rs.signature();
        prop_assert_eq!(s + 2 * t, f.squarefree_part().deg());
        // real roots ascending, representatives strictly in the upper half plane
        for w in rs.real.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
        for c in &rs.complex {
            prop_assert!(c.isolating_box().im.is_positive());
        }
    }

    #[test]
    fn refinement_never_leaves_previous_enclosure(f in poly_strategy(6, 5), bits in 8u32..200) {
        let rs = isolate_roots(&f).unwrap();
        for r in &rs.real {
            let a = r.refine(bits / 2);
            let b = a.refine(bits);
            prop_assert!(r.interval().contains_interval(&a.interval()));
            prop_assert!(a.interval().contains_interval(&b.interval()));
            prop_assert!(f.eval_interval(&b.interval()).contains_zero());
        }
        for c in &rs.complex {
            let a = c.refine(bits / 2);
            let b = a.refine(bits);
            prop_assert!(c.isolating_box().contains_box(&a.isolating_box()));
            prop_assert!(a.isolating_box().contains_box(&b.isolating_box()));
            prop_assert!(f.eval_box(&b.isolating_box()).contains_zero());
        }
    }
}

#[test]
fn product_of_linear_factors_recovered() {
    // roots 1/2, -3, 5 and the pair 1 ± 2i
    let f = IntPoly::from_i64s(&[-1, 2])
        .mul(&IntPoly::from_i64s(&[3, 1]))
        .mul(&IntPoly::from_i64s(&[-5, 1]))
        .mul(&IntPoly::from_i64s(&[5, -2, 1]));
    let rs = isolate_roots(&f).unwrap();
    assert_eq!(rs.signature(), (3, 1));
    let vals: Vec<f64> = rs.real.iter().map(|r| r.to_f64()).collect();
    assert_eq!(vals, vec![-3.0, 0.5, 5.0]);
    assert!(rs.real.iter().all(|r| r.is_exact()));
    let b = &all_root_boxes(&rs, 60)[4];
    assert!(b.re.contains(&BigInt::from(1).into()) && b.im.contains(&BigInt::from(2).into()));
}
