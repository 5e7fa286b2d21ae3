use avenum::generators::{standard, Standard};
use avenum::io::*;
use avenum::numerics::{ratio, BigRational};
use proptest::prelude::*;

#[test]
fn fixtures_round_trip() {
    for kind in [Standard::Cube, Standard::Crosspolytope, Standard::BallTangent { m: 9, seed: 3 }] {
        let f = standard(kind, 3).unwrap();
        let text = print_canonical_ine(f.poly.rows(), Some(&f.name));
        let h = parse_ine(&text).unwrap();
        assert_eq!(h.a, f.poly.rows());
        assert!(h.b.iter().all(|b| *b == ratio(1, 1)));
        assert_eq!(h.number_type, NumberType::Rational);
    }
}

#[test]
fn ext_rejects_rays() {
    let t = "V-representation\nbegin\n1 3 rational\n0 1 0\nend\n";
    assert!(parse_ext(t).is_err());
}

#[test]
fn integer_files_reject_fractions() {
    let t = "H-representation\nbegin\n1 3 integer\n1 1/2 0\nend\n";
    assert!(parse_ine(t).is_err());
    assert!(parse_ine(&t.replace("1/2", "2")).is_ok());
}

#[test]
fn unknown_option_is_an_error() {
    let t = "H-representation\nlinearity 1 1\nbegin\n1 3 rational\n1 1 0\nend\n";
    assert!(matches!(parse_ine(t), Err(IoError::Syntax { line: 2, .. })));
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..=1000, 1i64..=97).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn ine_round_trip(rows in prop::collection::vec(prop::collection::vec(rat(), 3), 1..12), b in prop::collection::vec(rat(), 12)) {
        let b = &b[..rows.len()];
        let h = parse_ine(&print_ine(&rows, b, None)).unwrap();
        prop_assert_eq!(&h.a, &rows);
        prop_assert_eq!(&h.b[..], b);
    }

    #[test]
    fn ext_round_trip(pts in prop::collection::vec(prop::collection::vec(rat(), 2), 1..12)) {
        let v = parse_ext(&print_ext(&pts, Some("pts"))).unwrap();
        prop_assert_eq!(v.points, pts);
    }
}
