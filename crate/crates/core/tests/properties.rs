use conic_codes::cli::{parse_alist, write_alist};
use conic_codes::gf::Field;
use conic_codes::gf2mat::Gf2Matrix;
use conic_codes::incidence::dimension_report;
use conic_codes::plane::build_geometry;
use conic_codes::verify::{run_suite, Depth};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Gf2Matrix> {
    (0usize..40, 0usize..40).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
            .prop_map(move |rows| if r == 0 { Gf2Matrix::zeros(0, c) } else { Gf2Matrix::from_dense(&rows).unwrap() })
    })
}

proptest! {
    #[test]
    fn alist_round_trip(m in matrix()) {
        let text = write_alist(&m);
        prop_assert_eq!(parse_alist(&text).unwrap(), m);
    }
}

/// Monic irreducible quadratics over GF(p) with constant term first.
fn quadratic_moduli(p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for b in 0..p {
        for c in 0..p {
            if (0..p).all(|x| (x * x + b * x + c) % p != 0) {
                out.push(vec![c, b, 1]);
            }
        }
    }
    out
}

#[test]
fn results_do_not_depend_on_the_modulus() {
    // a different modulus changes the element labels and the first non-square
    let base = dimension_report(&build_geometry(&Field::with_order(9, None).unwrap()));
    let mods = quadratic_moduli(3);
    assert_eq!(mods.len(), 3);
    for m in &mods {
        let f = Field::with_order(9, Some(m)).unwrap();
        assert_eq!(dimension_report(&build_geometry(&f)), base);
        let verdicts = run_suite(9, Some(m), Depth::Group, 13).unwrap();
        assert!(verdicts.iter().all(|v| v.passed), "{m:?}: {verdicts:?}");
    }
    for m in quadratic_moduli(5).iter().step_by(3) {
        let f = Field::with_order(25, Some(m)).unwrap();
        let r = dimension_report(&build_geometry(&f));
        assert!(r.matches, "{m:?}");
        assert_eq!((r.dim_l, r.dim_l0), (131, 156));
    }
}
