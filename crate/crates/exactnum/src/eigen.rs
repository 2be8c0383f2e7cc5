//! Certified moduli of eigenvalues, with exact decisions against 1.

use std::cmp::Ordering;

use serde::Serialize;

use crate::composed::composed_product_poly;
use crate::error::{ExactError, Result};
use crate::identify::identify_real_root;
use crate::interval::{ComplexBox, Interval};
use crate::matrix::RationalMatrix;
use crate::rational::int;
use crate::roots::{isolate_roots_with_cap, ComplexAlgebraic, RealAlgebraic};
use crate::DEFAULT_PRECISION_CAP;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MagnitudeClass {
    Greater,
    Less,
    EqualOne,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct MagnitudeEnclosure {
    /// Enclosure of |λ|.
    pub modulus: Interval,
    pub class: MagnitudeClass,
    /// Enclosure of λ itself.
    pub eigenvalue: ComplexBox,
    pub is_real: bool,
}

enum Root {
    Real(RealAlgebraic),
    Complex(ComplexAlgebraic),
}

/// |λ| for every eigenvalue of `m`, repeated by algebraic multiplicity and
/// sorted by decreasing modulus. Each modulus is classified against 1; an
/// exact |λ| = 1 is proven via the composed-product polynomial, and strict
/// inequalities are pushed through by escalating precision up to the cap.
pub fn eigenvalue_magnitude_profile(m: &RationalMatrix, precision: u32) -> Result<Vec<MagnitudeEnclosure>> {
    eigenvalue_magnitude_profile_with_cap(m, precision, DEFAULT_PRECISION_CAP)
}

pub fn eigenvalue_magnitude_profile_with_cap(
    m: &RationalMatrix,
    precision: u32,
    cap: u32,
) -> Result<Vec<MagnitudeEnclosure>> {
    let cp = m.charpoly()?.to_int_primitive();
    let mut out = Vec::new();
    for (g, mult) in cp.squarefree_decomposition() {
        let rs = isolate_roots_with_cap(&g, cap)?;
        let mut roots: Vec<Root> = rs.real.into_iter().map(Root::Real).collect();
        roots.extend(rs.complex.into_iter().map(Root::Complex));
        for root in roots {
            let e = classify(&g, &root, precision, cap)?;
            let copies = if e.is_real { mult } else { 2 * mult };
            for k in 0..copies {
                let mut x = e.clone();
                if !e.is_real && k % 2 == 1 {
                    x.eigenvalue = e.eigenvalue.conj();
                }
                out.push(x);
            }
        }
    }
    out.sort_by_key(|m| std::cmp::Reverse(m.modulus.mid()));
    Ok(out)
}

fn classify(g: &crate::poly::IntPoly, root: &Root, precision: u32, cap: u32) -> Result<MagnitudeEnclosure> {
    let one = int(1);
    match root {
        Root::Real(r) => {
            let x = r.enclosure(precision);
            let exact_one = r.abs_cmp_one() == Ordering::Equal;
            let mut bits = precision;
            let mut modulus = x.abs();
            let mut class = class_of(&modulus, exact_one);
            while class == MagnitudeClass::Undecided && bits < cap {
                bits = (bits * 2).min(cap);
                modulus = r.enclosure(bits).abs();
                class = class_of(&modulus, exact_one);
            }
            if class == MagnitudeClass::Undecided {
                return Err(ExactError::PrecisionExhausted { bits, what: "eigenvalue modulus vs 1".into() });
            }
            Ok(MagnitudeEnclosure {
                modulus,
                class,
                eigenvalue: ComplexBox::real(r.enclosure(precision)),
                is_real: true,
            })
        }
        Root::Complex(c) => {
            let q = composed_product_poly(g, 2)?;
            let n2 = identify_real_root(&q, |b| Ok(c.enclosure(b + 8).abs2()), cap)?;
            let exact_one = n2.equals_rational(&one);
            let mut bits = precision;
            let mut modulus = c.enclosure(bits).abs(bits)?;
            let mut class = class_of(&modulus, exact_one);
            while class == MagnitudeClass::Undecided && bits < cap {
                bits = (bits * 2).min(cap);
                modulus = c.enclosure(bits).abs(bits)?;
                class = class_of(&modulus, exact_one);
            }
            if class == MagnitudeClass::Undecided {
                return Err(ExactError::PrecisionExhausted { bits, what: "eigenvalue modulus vs 1".into() });
            }
            Ok(MagnitudeEnclosure { modulus, class, eigenvalue: c.enclosure(precision), is_real: false })
        }
    }
}

fn class_of(modulus: &Interval, exact_one: bool) -> MagnitudeClass {
    if exact_one {
        MagnitudeClass::EqualOne
    } else if modulus.gt(&int(1)) {
        MagnitudeClass::Greater
    } else if modulus.lt(&int(1)) {
        MagnitudeClass::Less
    } else {
        MagnitudeClass::Undecided
    }
}

impl RealAlgebraic {
    /// Exact comparison of |x| with 1.
    pub fn abs_cmp_one(&self) -> Ordering {
        if self.sign() >= 0 {
            self.cmp_rational(&int(1))
        } else {
            self.cmp_rational(&int(-1)).reverse()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_cases() {
        let id = RationalMatrix::identity(2);
        let prof = eigenvalue_magnitude_profile(&id, 64).unwrap();
        assert_eq!(prof.len(), 2);
        assert!(prof.iter().all(|e| e.class == MagnitudeClass::EqualOne && e.modulus.contains(&int(1))));

        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        let prof = eigenvalue_magnitude_profile(&m, 64).unwrap();
        assert!((prof[0].modulus.to_f64() - 2.618033988749895).abs() < 1e-12);
        assert!((prof[1].modulus.to_f64() - 0.381966011250105).abs() < 1e-12);
        assert_eq!(prof[0].class, MagnitudeClass::Greater);
        assert_eq!(prof[1].class, MagnitudeClass::Less);

        let c = RationalMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]);
        let prof = eigenvalue_magnitude_profile(&c, 64).unwrap();
        let mods: Vec<f64> = prof.iter().map(|e| e.modulus.to_f64()).collect();
        assert!((mods[0] - 1.324717957).abs() < 1e-8);
        assert!((mods[1] - 0.868836961).abs() < 1e-8);
        assert!((mods[2] - 0.868836961).abs() < 1e-8);
    }

    #[test]
    fn unimodular_rotation_is_exactly_one() {
        // rotation by 90 degrees and a finite-order matrix of order 6
        let r = RationalMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
        let prof = eigenvalue_magnitude_profile(&r, 32).unwrap();
        assert!(prof.iter().all(|e| e.class == MagnitudeClass::EqualOne));
        let s = RationalMatrix::from_i64(&[vec![1, -1], vec![1, 0]]);
        let prof = eigenvalue_magnitude_profile(&s, 32).unwrap();
        assert!(prof.iter().all(|e| e.class == MagnitudeClass::EqualOne));
        let neg = RationalMatrix::identity(1).scale(&int(-1));
        let prof = eigenvalue_magnitude_profile(&neg, 32).unwrap();
        assert_eq!(prof[0].class, MagnitudeClass::EqualOne);
    }

    #[test]
    fn repeated_eigenvalues_are_listed_with_multiplicity() {
        let m = RationalMatrix::from_i64(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        let prof = eigenvalue_magnitude_profile(&m, 32).unwrap();
        assert_eq!(prof.len(), 3);
        assert_eq!(prof[0].class, MagnitudeClass::Greater);
        assert_eq!(prof[2].class, MagnitudeClass::EqualOne);
    }
}
