use sullivan_core::groebner::GroebnerBasis;
use sullivan_core::random::random_suite;
use sullivan_core::*;

const EX23: &str = "\
model \"mixed-length\"
even x1 : 6
even x2 : 8
odd y1 : 29 = x1^5 + x1*x2^3
odd y2 : 31 = x1^4*x2 + x2^4
odd y3 : 33 = x1^3*x2^2
";

#[test]
fn example_exponents_golden() {
    let m = parse_model(EX23).unwrap();
    // x1^6 is not in the degree-36 part span(x1·dy1); x2^4 is not in span(dy2)
    assert_eq!(nilpotency_exponent(&m, "x1"), Ok(7));
    assert_eq!(nilpotency_exponent(&m, "x2"), Ok(5));
    assert_eq!(m.formal_dimension(), Ok(81));
}

#[test]
fn example_certificate_for_first_differential() {
    let m = parse_model(EX23).unwrap();
    let ideal = PureIdeal::new(&m).unwrap();
    let target = m.image_of("y1").unwrap().clone();
    let cof = ideal.basis().lift(&target).unwrap().unwrap();
    let one = Element::one(m.space());
    assert_eq!(cof, vec![one, Element::zero(m.space()), Element::zero(m.space())]);
}

#[test]
fn nonpure_example_from_the_literature_is_rejected() {
    let text = "even x : 2\nodd y1 : 3 = x^2\nodd y2 : 3\nodd y3 : 5 = y1*y2\n";
    assert!(matches!(parse_model(text), Err(Error::Syntax { .. })));
    let space = GeneratorSet::new([
        Generator::new("x", 2),
        Generator::new("y1", 3),
        Generator::new("y2", 3),
        Generator::new("y3", 5),
    ])
    .unwrap();
    let m = SullivanModel::new(
        "m",
        space.clone(),
        [
            ("y1", parse_element(&space, "x^2").unwrap()),
            ("y3", parse_element(&space, "y1*y2").unwrap()),
        ],
    )
    .unwrap();
    assert_eq!(m.validate(), Err(Error::DifferentialNotSquareZero("y3".into())));
}

#[test]
fn extension_soundness_on_random_models() {
    for m in random_suite(7, 80) {
        let res = f0_extend(&m).unwrap_or_else(|e| panic!("{}: {e}", m.name()));
        let z = &res.sub_model;
        let evens: Vec<&str> = z.space().evens().iter().map(|g| g.name()).collect();
        let all: Vec<&str> = m.space().evens().iter().map(|g| g.name()).collect();
        assert_eq!(evens, all);
        assert_eq!(z.chi_pi(), 0);
        z.validate().unwrap();
        assert!(is_elliptic_pure(z).unwrap());
        assert!(verify_f0_extension(&m, &res.z_odd).unwrap().passed);
        assert_eq!(res.certificates.len(), m.n_even());
        for c in &res.certificates {
            assert!(c.verify(&m), "{}: {}", m.name(), c.witness);
        }
        for (u, &d) in res.z_odd.iter().zip(&res.degrees) {
            assert_eq!(u.degree(&m).unwrap(), Some(d));
        }
    }
}

#[test]
fn exponents_are_minimal_on_random_models() {
    for m in random_suite(8, 40) {
        let ideal = PureIdeal::new(&m).unwrap();
        for x in m.space().evens() {
            let n = ideal.nilpotency_exponent(x.name()).unwrap();
            let xe = m.var(x.name()).unwrap();
            assert!(ideal.basis().member(&xe.pow(n)).unwrap());
            if n >= 2 {
                assert!(!ideal.basis().member(&xe.pow(n - 1)).unwrap());
            }
            assert!(ideal.certificate(x.name(), n).unwrap().verify(&m));
        }
    }
}

#[test]
fn cohomology_oracle_agrees() {
    let mut checked = 0;
    for m in random_suite(9, 60) {
        let f = m.formal_dimension().unwrap();
        if f > 40 {
            continue;
        }
        let dims = cohomology_dims(&m, f as u32 + 3);
        assert_eq!(dims[f as usize], 1, "{}", m.name());
        assert!(dims[f as usize + 1..].iter().all(|&d| d == 0), "{}", m.name());
        for k in 0..=f as usize {
            assert_eq!(dims[k], dims[f as usize - k], "{} degree {k}", m.name());
        }
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn total_cohomology_of_f0_models() {
    for m in random_suite(10, 40) {
        let res = f0_extend(&m).unwrap();
        let z = &res.sub_model;
        let f = z.formal_dimension().unwrap();
        if f > 40 {
            continue;
        }
        let total: usize = cohomology_dims(z, f as u32).iter().sum();
        let dy: Vec<Element> = z.odd_images().to_vec();
        let q = GroebnerBasis::new(z.space(), &dy).unwrap().quotient_dimension().unwrap();
        assert_eq!(total as u64, q, "{}", z.name());
    }
}

#[test]
fn coformal_bounds_equal_dimension() {
    for m in random_suite(12, 80) {
        let r = tc_upper_bound(&m).unwrap();
        assert_eq!(r.tc_upper, Some(2 * i64::from(r.cat.unwrap()) + r.chi_pi));
        if m.differential_length().constant() == Some(2) {
            assert_eq!(r.tc_upper, Some(m.generators().len() as i64));
        }
    }
}

#[test]
fn non_elliptic_is_detected_by_both_methods() {
    let m = parse_model("even x1 : 2\neven x2 : 2\nodd y : 3 = x1^2 + x1*x2\nodd z : 3 = x1*x2\n").unwrap();
    assert!(!is_elliptic_pure(&m).unwrap());
    // infinite cohomology: x2^k survives in every even degree
    let dims = cohomology_dims(&m, 12);
    assert!(dims.iter().skip(2).step_by(2).all(|&d| d > 0));
}
