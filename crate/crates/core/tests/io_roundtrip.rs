use mnv_core::families::{OpenBox, Rational, SetFamily};
use mnv_core::homology::reduced_betti;
use mnv_core::io::{
    parse_betti, parse_complex, parse_family, parse_poset, parse_rational, write_betti, write_complex, write_family,
    write_labeled_poset, write_poset, ParseError,
};
use mnv_core::nerve::multinerve;
use mnv_core::poset::SimplicialComplex;
use mnv_core::verify::{random_family, random_poset, RandomSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn posets_round_trip(n in 1usize..6, d in 1usize..4, a in 0usize..20, seed in any::<u64>()) {
        let p = random_poset(n, d, a, seed);
        let text = write_poset(&p);
        prop_assert_eq!(parse_poset(&text).unwrap(), p.clone());
        let b = reduced_betti(&p);
        prop_assert_eq!(parse_betti(&write_betti(&b)).unwrap(), b);
    }

    #[test]
    fn families_round_trip(members in 1usize..5, dim in 1usize..3, seed in any::<u64>(), grid in any::<bool>()) {
        let spec = if grid {
            RandomSpec::Subcomplex { members, grid: 2, stars_per_member: 2, rings: true }
        } else {
            RandomSpec::Boxes { members, dim, boxes_per_member: 2, extent: 3 }
        };
        let f = random_family(&spec, seed).unwrap();
        let text = write_family(&f);
        let g = parse_family(&text).unwrap();
        prop_assert_eq!(write_family(&g), text);
        prop_assert_eq!(g.intersecting_subsets().unwrap(), f.intersecting_subsets().unwrap());
    }
}

#[test]
fn complexes_round_trip() {
    let k = SimplicialComplex::from_facets([vec![0u32, 1, 2], vec![2, 3], vec![4]]).unwrap();
    assert_eq!(parse_complex(&write_complex(&k)).unwrap(), k);
}

#[test]
fn labeled_multinerve_parses_as_poset() {
    let f = SetFamily::boxes(
        1,
        vec![
            vec![OpenBox::from_ints(&[(0, 2)], 1).unwrap(), OpenBox::from_ints(&[(4, 6)], 1).unwrap()],
            vec![OpenBox::from_ints(&[(1, 5)], 1).unwrap()],
        ],
    )
    .unwrap();
    let m = multinerve(&f).unwrap();
    let text = write_labeled_poset(&m);
    assert!(text.contains("A={0,1}"));
    assert_eq!(parse_poset(&text).unwrap(), m.poset);
}

#[test]
fn rationals_and_errors() {
    assert_eq!(parse_rational(1, "6/4").unwrap(), Rational::new(3, 2));
    assert!(parse_rational(1, "1/0").is_err());
    assert!(parse_rational(1, "x").is_err());
    assert!(matches!(parse_poset("poset v2\n0 -1\n"), Err(ParseError::Version { .. }) | Err(ParseError::Syntax { .. })));
    assert!(parse_poset("poset v1\n0 -1\n1 0 0\n2 1 1 7\n").is_err());
    assert!(parse_family("family v1 box 1\nmember\nbox 2 1\n").is_err());
}
