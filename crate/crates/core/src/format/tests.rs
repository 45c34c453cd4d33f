use super::*;
use crate::decompose::{construct_b_family, FamilyOptions};
use crate::freelie::lie_power;
use crate::modrep::gl_generators;

fn p(v: u32) -> Prime {
    Prime::new(v).unwrap()
}

#[test]
fn subspace_round_trip() {
    let s = lie_power(2, 4, p(3)).unwrap();
    let text = write_subspace(&s, 2, 4).unwrap();
    assert!(text.starts_with("3 2 4\n"));
    let (t, back) = parse_subspace(&text).unwrap();
    assert_eq!((t.n, t.r), (2, 4));
    assert_eq!(back, s);
}

#[test]
fn subspace_text_example() {
    let text = "# two vectors\n2 2 3\n1 112 1 121\n\n1 211\n";
    let (t, s) = parse_subspace(text).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert_eq!(s.dim(), 2);
    assert_eq!(t.rows[0].to_string(), "1 112 1 121");
}

#[test]
fn subspace_text_errors() {
    assert!(matches!(parse_subspace_text(""), Err(Error::Parse { .. })));
    assert!(matches!(
        parse_subspace_text("4 2 2\n"),
        Err(Error::NotPrime(4))
    ));
    assert!(matches!(
        parse_subspace_text("2 2\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_subspace_text("2 2 2\n1 13\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_subspace_text("2 2 2\n1 1\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        parse_subspace_text("2 9 40\n"),
        Err(Error::CapExceeded(_))
    ));
    assert!(parse_subspace_text("2 0 2\n").is_err());
}

#[test]
fn tensor_round_trip() {
    let t = Tensor::parse("1 12 2 21", p(3), 2, 2).unwrap();
    let text = write_tensor(&t);
    assert_eq!(text, "3 2 2\n1 12 2 21\n");
    assert_eq!(parse_tensor_text(&text).unwrap(), t);
    assert!(parse_tensor_text("3 2 2\n1 12\n1 21\n").is_err());
}

#[test]
fn descent_round_trip() {
    let ring = Ring::Modular(p(5));
    let x = parse_descent_element("2 1,2\n-1 3\n", ring, None).unwrap();
    assert_eq!(x.r(), 3);
    let back = parse_descent_element(&x.to_string(), ring, Some(3)).unwrap();
    assert_eq!(back, x);
    let z = parse_descent_element("0\n", ring, Some(4)).unwrap();
    assert!(z.is_zero());
    assert!(parse_descent_element("0\n", ring, None).is_err());
    assert!(parse_descent_element("0\n", ring, Some(0)).is_err());
    assert!(parse_descent_element("1 2,1\n1 1,1\n", ring, None).is_err());
    assert!(parse_descent_element("1 2,x\n", ring, None).is_err());
}

#[test]
fn generator_grid_round_trip() {
    let gens = gl_generators(3, p(3)).unwrap();
    let text = write_generator_grid(&gens);
    assert_eq!(parse_generator_grid(p(3), &text).unwrap(), gens);
    assert!(parse_generator_grid(p(2), "1 1\n1 1\n").is_err());
    assert!(parse_generator_grid(p(2), "1 0\n").is_err());
    assert!(parse_generator_grid(p(2), "1 0\n0 1\n\n1\n").is_err());
    assert!(parse_generator_grid(p(2), "# nothing\n").is_err());
}

#[test]
fn matrix_encodings() {
    let m = FpMatrix::from_rows(p(31), 3, &[vec![0, 30, 7], vec![12, 1, 0]]).unwrap();
    let e = encode_matrix(&m);
    assert_eq!(e.encoding, "base36");
    assert_eq!(e.data, vec!["0u7".to_string(), "c10".to_string()]);
    assert_eq!(decode_matrix(p(31), &e).unwrap(), m);
    let m = FpMatrix::from_rows(p(37), 2, &[vec![36, 1]]).unwrap();
    let e = encode_matrix(&m);
    assert_eq!(e.encoding, "decimal");
    assert_eq!(decode_matrix(p(37), &e).unwrap(), m);

    let mut bad = encode_matrix(&FpMatrix::identity(p(2), 2));
    bad.data[1] = "02".into();
    assert!(decode_matrix(p(2), &bad).is_err());
    bad.data[1] = "0".into();
    assert!(decode_matrix(p(2), &bad).is_err());
    bad.data[1] = "0A".into();
    assert!(decode_matrix(p(2), &bad).is_err());
}

#[test]
fn certificate_json_round_trip() {
    let res = construct_b_family(2, p(2), 3, 6, &FamilyOptions::default()).unwrap();
    for st in &res.steps {
        let j = CertificateJson::from_certificate(&st.certificate).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        let cert = back.to_certificate().unwrap();
        assert_eq!(cert, st.certificate);
        assert!(cert.verify().is_ok());
    }
    let st = res.step(6).unwrap();
    let mut j = CertificateJson::from_certificate(&st.certificate).unwrap();
    let row = &mut j.retraction.data[7];
    let flipped = if row.starts_with('0') { "1" } else { "0" };
    row.replace_range(0..1, flipped);
    assert!(j.to_certificate().unwrap().verify().is_err());
}

#[test]
fn oversized_text_is_rejected() {
    let big = format!("{} 1,1", 1u64 << 40);
    assert!(parse_descent_element(&big, Ring::Integer, None).is_err());
    let huge = format!("1 {},{}", usize::MAX, usize::MAX);
    assert!(matches!(
        parse_descent_element(&huge, Ring::Integer, None),
        Err(Error::Parse { .. } | Error::CapExceeded(_))
    ));
    assert!(parse_descent_element("1 20", Ring::Integer, None).is_err());
}

proptest::proptest! {
    #[test]
    fn descent_text_round_trip(coeffs in proptest::collection::vec(-5i64..=5, 8)) {
        let e = DescentElement::from_mask_coeffs(4, Ring::Integer, coeffs).unwrap();
        let back = parse_descent_element(&e.to_string(), Ring::Integer, Some(4)).unwrap();
        proptest::prop_assert_eq!(back, e);
    }

    #[test]
    fn tensor_text_round_trip(terms in proptest::collection::vec((0u64..81, -4i64..=4), 0..12)) {
        let t = Tensor::from_terms(p(5), 3, 4, terms);
        proptest::prop_assert_eq!(parse_tensor_text(&write_tensor(&t)).unwrap(), t);
    }
}
