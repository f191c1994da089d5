//! End-to-end runs of the reduction → flux → closed-form pipeline on fixed
//! fixtures.

use bproperty_core::dynamics::{area_at, boundary_flux, property_b_check};
use bproperty_core::geom::Symmetry;
use bproperty_core::oracle::{
    corner_case_check, edge_case_check, edge_case_params, CornerCaseParams,
};
use bproperty_core::reduction::{
    check_class_f, classify_square_case, normalize_parallelogram, reduce_pair, SquareCase,
};
use bproperty_core::scalar::{int, parse_scalar, ratio};
use bproperty_core::{convex_hull, ConvexPolygon, Point};

fn diamond(half: i64, den: i64) -> ConvexPolygon {
    convex_hull(&[
        Point::new(ratio(half, den), int(0)),
        Point::new(int(0), ratio(half, den)),
        Point::new(ratio(-half, den), int(0)),
        Point::new(int(0), ratio(-half, den)),
    ])
    .unwrap()
    .with_symmetry(Symmetry::Central)
    .unwrap()
}

#[test]
fn square_vs_diamond_full_pipeline() {
    let q = ConvexPolygon::unit_square();
    let l = diamond(3, 2);
    assert!(check_class_f(&q, &l).in_class());

    // |Q ∩ L|: the diamond loses four corner triangles of area 1/4 each.
    let area = area_at(&q, &l, &int(1)).unwrap();
    assert_eq!(area, l.area() - int(1));

    let flux = boundary_flux(&q, &l).unwrap();
    let rep = property_b_check(&q, &l).unwrap();
    assert!(rep.holds);

    // The two component pairs split the flux exactly in half by symmetry.
    let parts = reduce_pair(&q, &l).unwrap();
    assert_eq!(parts.len(), 2);
    let mut sum_g = int(0);
    for part in &parts {
        assert!(check_class_f(&part.k_ext, &part.l_ext).in_class());
        sum_g += boundary_flux(&part.k_ext, &part.l_ext).unwrap().g1;
    }
    assert_eq!(sum_g, flux.g1);
}

#[test]
fn normalized_parallelogram_classifies_and_verifies() {
    let q = ConvexPolygon::unit_square();
    // A sheared parallelogram pair equivalent to an edge configuration.
    let k_par = convex_hull(&[
        Point::new(int(2), int(1)),
        Point::new(int(-2), int(1)),
        Point::new(int(-2), int(-1)),
        Point::new(int(2), int(-1)),
    ])
    .unwrap()
    .with_symmetry(Symmetry::Central)
    .unwrap();
    let l = convex_hull(&[
        Point::new(int(3), int(0)),
        Point::new(int(0), ratio(1, 2)),
        Point::new(int(-3), int(0)),
        Point::new(int(0), ratio(-1, 2)),
    ])
    .unwrap()
    .with_symmetry(Symmetry::Central)
    .unwrap();

    let (t, l_image) = normalize_parallelogram(&k_par, &l).unwrap();
    assert_eq!(t.det(), int(2));
    // Pulling back leaves the derivative inequality verdict unchanged.
    let before = property_b_check(&k_par, &l).unwrap();
    let after = property_b_check(&q, &l_image).unwrap();
    assert_eq!(before.holds, after.holds);
    assert_eq!(
        parse_scalar(&before.area).unwrap(),
        t.det() * parse_scalar(&after.area).unwrap()
    );

    match classify_square_case(&q, &l_image).unwrap() {
        SquareCase::EdgeCase => {
            let params = edge_case_params(&l_image).unwrap();
            let verdict = edge_case_check(&params).unwrap();
            assert!(verdict.holds);
        }
        other => panic!("expected the two-edge configuration, got {other:?}"),
    }
}

#[test]
fn corner_configuration_closed_form_agrees_with_flux() {
    let q = ConvexPolygon::unit_square();
    let a = int(1);
    let b = int(1);
    let p = Point::new(ratio(3, 4), ratio(-3, 4));
    let l = bproperty_core::oracle::corner_case_shape(&a, &b, &p).unwrap();
    assert_eq!(classify_square_case(&q, &l).unwrap(), SquareCase::CornerCase);

    let s = area_at(&q, &l, &int(1)).unwrap();
    let params = CornerCaseParams {
        a: a.clone(),
        b: b.clone(),
        s,
    };
    let verdict = corner_case_check(&params).unwrap();
    assert!(verdict.holds);
    assert_eq!(boundary_flux(&q, &l).unwrap().g1, int(4));
}
