use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sullivan_core::{parse_model, Element, GeneratorSet, SullivanModel};

const MODEL: &str = "\
even x1 : 2
even x2 : 4
odd y1 : 3 = x1^2
odd y2 : 5 = x1*x2
odd y3 : 7 = x2^2 - 2*x1^2*x2
odd z : 3
";

fn model() -> SullivanModel {
    parse_model(MODEL).unwrap()
}

fn homogeneous(space: &Arc<GeneratorSet>, degree: u32, picks: &[(usize, i64)]) -> Element {
    let basis = space.monomials_of_degree(degree);
    let mut e = Element::zero(space);
    if basis.is_empty() {
        return e;
    }
    for &(i, c) in picks {
        let m = basis[i % basis.len()].clone();
        e = &e + &Element::monomial(space, m, BigRational::from_integer(BigInt::from(c)));
    }
    e
}

fn element_strategy() -> impl Strategy<Value = (u32, Vec<(usize, i64)>)> {
    (0u32..14, prop::collection::vec((0usize..64, -4i64..=4), 0..5))
}

fn sign(a: u32, b: u32) -> i64 {
    if a % 2 == 1 && b % 2 == 1 {
        -1
    } else {
        1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity((da, pa) in element_strategy(), (db, pb) in element_strategy()) {
        let m = model();
        let a = homogeneous(m.space(), da, &pa);
        let b = homogeneous(m.space(), db, &pb);
        let s = BigRational::from_integer(BigInt::from(sign(da, db)));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&s));
    }

    #[test]
    fn associativity((da, pa) in element_strategy(), (db, pb) in element_strategy(), (dc, pc) in element_strategy()) {
        let m = model();
        let (a, b, c) = (homogeneous(m.space(), da, &pa), homogeneous(m.space(), db, &pb), homogeneous(m.space(), dc, &pc));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn leibniz((da, pa) in element_strategy(), (db, pb) in element_strategy()) {
        let m = model();
        let a = homogeneous(m.space(), da, &pa);
        let b = homogeneous(m.space(), db, &pb);
        let lhs = m.apply_differential(&(&a * &b));
        let s = BigRational::from_integer(BigInt::from(sign(da, 1)));
        let rhs = &(&m.apply_differential(&a) * &b) + &(&a * &m.apply_differential(&b)).scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_squares_to_zero((da, pa) in element_strategy()) {
        let m = model();
        let a = homogeneous(m.space(), da, &pa);
        prop_assert!(m.apply_differential(&m.apply_differential(&a)).is_zero());
    }

    #[test]
    fn differential_raises_degree_by_one((da, pa) in element_strategy()) {
        let m = model();
        let a = homogeneous(m.space(), da, &pa);
        let d = m.apply_differential(&a);
        if !d.is_zero() {
            prop_assert_eq!(d.degree().value(), Some(da + 1));
        }
    }

    #[test]
    fn parse_render_round_trip((da, pa) in element_strategy()) {
        let m = model();
        let a = homogeneous(m.space(), da, &pa);
        let back = sullivan_core::parse_element(m.space(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn model_file_round_trip() {
    let m = model();
    let text = sullivan_core::render_model(&m);
    assert_eq!(parse_model(&text).unwrap(), m);
}
