//! Property-based invariants of the exact geometry layer.

use num::Signed;
use proptest::prelude::*;

use bproperty_core::geom::{GeomError, Mat2, Symmetry};
use bproperty_core::scalar::{int, ratio, Scalar};
use bproperty_core::{convex_hull, hausdorff_distance, intersect, ConvexPolygon, Point};

fn pt(x: i64, y: i64) -> Point {
    Point::new(ratio(x, 8), ratio(y, 8))
}

/// Hull of the given lattice points scaled to eighths; None when degenerate.
fn hull_of(coords: &[(i64, i64)]) -> Option<ConvexPolygon> {
    let pts: Vec<Point> = coords.iter().map(|&(x, y)| pt(x, y)).collect();
    match convex_hull(&pts) {
        Ok(p) => Some(p),
        Err(GeomError::DegenerateInput(_) | GeomError::TooFewVertices) => None,
        Err(e) => panic!("unexpected hull error: {e}"),
    }
}

/// Centrally symmetric hull of the points and their negations.
fn symmetric_hull_of(coords: &[(i64, i64)]) -> Option<ConvexPolygon> {
    let mut pts: Vec<Point> = Vec::with_capacity(2 * coords.len());
    for &(x, y) in coords {
        pts.push(pt(x, y));
        pts.push(pt(-x, -y));
    }
    match convex_hull(&pts) {
        Ok(p) => Some(p.with_symmetry(Symmetry::Central).expect("symmetric by construction")),
        Err(GeomError::DegenerateInput(_) | GeomError::TooFewVertices) => None,
        Err(e) => panic!("unexpected hull error: {e}"),
    }
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..=40, -40i64..=40), 3..10)
}

proptest! {
    #[test]
    fn intersection_is_commutative_and_contained(a in coords(), b in coords()) {
        let (Some(p), Some(r)) = (hull_of(&a), hull_of(&b)) else { return Ok(()) };
        let pr = intersect(&p, &r);
        let rp = intersect(&r, &p);
        prop_assert_eq!(pr.area(), rp.area());
        if let Some(poly) = pr.polygon() {
            prop_assert!(p.contains_polygon(poly));
            prop_assert!(r.contains_polygon(poly));
            prop_assert!(poly.area() <= p.area());
            prop_assert!(poly.area() <= r.area());
        }
    }

    #[test]
    fn symmetric_pair_has_symmetric_intersection(a in coords(), b in coords()) {
        let (Some(p), Some(r)) = (symmetric_hull_of(&a), symmetric_hull_of(&b)) else {
            return Ok(())
        };
        let both = intersect(&p, &r);
        let Some(poly) = both.polygon() else { return Ok(()) };
        // The intersection of centrally symmetric sets equals its negation.
        let neg = poly.negation();
        prop_assert_eq!(poly.area(), neg.area());
        for v in poly.vertices() {
            prop_assert!(neg.contains(v));
        }
    }

    #[test]
    fn area_scales_quadratically(a in coords(), num in 1i64..=20, den in 1i64..=20) {
        let Some(p) = hull_of(&a) else { return Ok(()) };
        let s: Scalar = ratio(num, den);
        let scaled = p.scale(&s).unwrap();
        prop_assert_eq!(scaled.area(), &s * &s * p.area());
    }

    #[test]
    fn linear_maps_scale_area_by_det(
        a in coords(),
        m in (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5),
    ) {
        let Some(p) = hull_of(&a) else { return Ok(()) };
        let t = Mat2::new(int(m.0), int(m.1), int(m.2), int(m.3));
        let det = t.det();
        if det == int(0) {
            return Ok(());
        }
        let image = p.linear_map(&t).unwrap();
        prop_assert_eq!(image.area(), det.abs() * p.area());
    }

    #[test]
    fn hull_is_idempotent(a in coords()) {
        let Some(p) = hull_of(&a) else { return Ok(()) };
        let again = convex_hull(p.vertices()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn hausdorff_is_symmetric_and_zero_on_equals(a in coords(), b in coords()) {
        let (Some(p), Some(r)) = (hull_of(&a), hull_of(&b)) else { return Ok(()) };
        let d_pr = hausdorff_distance(&p, &r);
        let d_rp = hausdorff_distance(&r, &p);
        prop_assert_eq!(&d_pr.lo, &d_rp.lo);
        prop_assert_eq!(&d_pr.hi, &d_rp.hi);
        let self_dist = hausdorff_distance(&p, &p);
        prop_assert_eq!(self_dist.lo, int(0));
        // Containment gives a one-sided zero: every vertex of the inner
        // polygon is inside the outer one.
        if p.contains_polygon(&r) {
            for v in r.vertices() {
                prop_assert!(p.contains(v));
            }
        }
    }
}
