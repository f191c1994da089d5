//! Closed-form verification of the derivative inequality for the two
//! terminal parallelogram configurations against the unit square: the
//! two-edge ("edge") case and the cut-corner ("corner") case.
//!
//! All angle-like quantities are carried as exact slope ratios; no
//! trigonometry ever materializes.

use crate::geom::{convex_hull, ConvexPolygon, GeomError, Mat2, Point, Symmetry};
use crate::reduction::{classify_square_case, ReductionError, SquareCase};
use crate::scalar::{int, ratio, to_f64, Scalar};
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("pair is not in the two-edge configuration: {0}")]
    NotEdgeCase(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parameter invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Which branch of the case analysis decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `g(1) + g'(1) < 0` while areas are positive: nothing to check.
    TrivialNegative,
    Main,
}

/// Exact outcome of one closed-form check; `holds ⇔ lhs <= rhs`.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub holds: bool,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub branch: Branch,
    pub detail: String,
}

/// Parameters of the two-edge configuration: one vertex pair of the
/// parallelogram at `±(c, d)` with `c > 1`, the other strictly inside the
/// square, and the boundary crossings confined to the edges `x = ±1`.
/// The two supporting lines through `(c, d)` have slope ratios
/// `cot_alpha > cot_beta` (crossing ordinates `(c−1)·cot + d`).
#[derive(Debug, Clone)]
pub struct EdgeCaseParams {
    pub cot_alpha: Scalar,
    pub cot_beta: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub area_l: Scalar,
}

impl EdgeCaseParams {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.c <= int(1) {
            return Err(OracleError::InvariantViolation(format!(
                "need c > 1, got {}",
                self.c
            )));
        }
        if self.cot_alpha <= self.cot_beta {
            return Err(OracleError::InvariantViolation(
                "need cot_alpha > cot_beta".into(),
            ));
        }
        if !self.area_l.is_positive() {
            return Err(OracleError::InvariantViolation("area must be positive".into()));
        }
        Ok(())
    }

    /// `cot α − cot β`, the chord shrink rate towards the outer vertex.
    pub fn e(&self) -> Scalar {
        &self.cot_alpha - &self.cot_beta
    }

    /// `g(1) = 2(c−1)(cot α − cot β)`.
    pub fn g1(&self) -> Scalar {
        int(2) * (&self.c - int(1)) * self.e()
    }

    /// `g(1) + g'(1) = (2c−4)(cot α − cot β)`.
    pub fn g1_plus_gprime(&self) -> Scalar {
        (int(2) * &self.c - int(4)) * self.e()
    }

    /// `|Q ∩ L| = |L| − (c−1)²(cot α − cot β)`.
    pub fn intersection_area(&self) -> Scalar {
        let cm1 = &self.c - int(1);
        &self.area_l - &cm1 * &cm1 * self.e()
    }
}

/// Slope ratio of an edge's supporting line, normalized so the crossing
/// ordinate of the line at abscissa `x` is `(c − x)·cot + d`. Fails when
/// the edge is vertical.
fn edge_cot(v0: &Point, v1: &Point) -> Option<Scalar> {
    let dy = &v1.y - &v0.y;
    let dx = &v1.x - &v0.x;
    if dx.is_zero() {
        return None;
    }
    // Line through the outer vertex (c, d): y = d + (c − x)·cot, so
    // cot = −dy/dx along the edge.
    Some(-dy / dx)
}

/// Extracts the two-edge parameters from a concrete parallelogram against
/// the unit square. A configuration crossing the horizontal edges `y = ±1`
/// is rotated by 90° first (the square is invariant, areas unchanged).
pub fn edge_case_params(l: &ConvexPolygon) -> Result<EdgeCaseParams, OracleError> {
    let q = ConvexPolygon::unit_square();
    match classify_square_case(&q, l) {
        Ok(SquareCase::EdgeCase) => {}
        Ok(other) => {
            return Err(OracleError::NotEdgeCase(format!(
                "classified as {:?}",
                other
            )))
        }
        Err(e) => return Err(OracleError::NotEdgeCase(e.to_string())),
    }
    let one = int(1);
    let outer_beyond_x = l.vertices().iter().any(|v| v.x.abs() > one);
    let l_oriented = if outer_beyond_x {
        l.clone()
    } else {
        // Quarter turn: (x, y) ↦ (−y, x).
        l.linear_map(&Mat2::new(
            Scalar::zero(),
            int(-1),
            int(1),
            Scalar::zero(),
        ))?
    };
    let apex_idx = (0..l_oriented.len())
        .find(|&i| l_oriented.vertices()[i].x > one)
        .ok_or_else(|| OracleError::NotEdgeCase("no vertex beyond x = 1".into()))?;
    let apex = l_oriented.vertices()[apex_idx].clone();
    let n = l_oriented.len();
    let prev = l_oriented.vertices()[(apex_idx + n - 1) % n].clone();
    let next = l_oriented.vertices()[(apex_idx + 1) % n].clone();
    let cot1 = edge_cot(&prev, &apex)
        .ok_or_else(|| OracleError::NotEdgeCase("vertical edge at outer vertex".into()))?;
    let cot2 = edge_cot(&apex, &next)
        .ok_or_else(|| OracleError::NotEdgeCase("vertical edge at outer vertex".into()))?;
    let (cot_alpha, cot_beta) = if cot1 > cot2 { (cot1, cot2) } else { (cot2, cot1) };
    let params = EdgeCaseParams {
        cot_alpha,
        cot_beta,
        c: apex.x,
        d: apex.y,
        area_l: l.area(),
    };
    params.validate().map_err(|e| OracleError::NotEdgeCase(e.to_string()))?;
    Ok(params)
}

/// Closed-form evaluation of the derivative inequality for the two-edge
/// case: `(g(1) + g'(1))·|Q ∩ L| <= g(1)²`. For `c < 2` the left side is
/// negative and the inequality is immediate; otherwise the convexity bound
/// `|L| <= c²(cot α − cot β)` closes the argument.
pub fn edge_case_check(p: &EdgeCaseParams) -> Result<OracleVerdict, OracleError> {
    p.validate()?;
    let area = p.intersection_area();
    if !area.is_positive() {
        return Err(OracleError::InvariantViolation(
            "parameters give an empty intersection".into(),
        ));
    }
    let g1 = p.g1();
    let lhs = p.g1_plus_gprime() * &area;
    let rhs = &g1 * &g1;
    let holds = lhs <= rhs;
    let branch = if p.c < int(2) {
        Branch::TrivialNegative
    } else {
        Branch::Main
    };
    let convexity_cap = &p.c * &p.c * p.e();
    let detail = format!(
        "g1={} area={} convexity bound |L|={} <= {}: {}",
        to_f64(&g1),
        to_f64(&area),
        to_f64(&p.area_l),
        to_f64(&convexity_cap),
        p.area_l <= convexity_cap
    );
    Ok(OracleVerdict {
        holds,
        lhs,
        rhs,
        branch,
        detail,
    })
}

/// Parameters of the cut-corner configuration: the crossings sit at
/// distances `a` and `b` from the two cut corners of the square, and
/// `S = |Q ∩ L|`.
#[derive(Debug, Clone)]
pub struct CornerCaseParams {
    pub a: Scalar,
    pub b: Scalar,
    pub s: Scalar,
}

impl CornerCaseParams {
    pub fn validate(&self) -> Result<(), OracleError> {
        check_ab(&self.a, &self.b)?;
        let lo = int(4) - &self.a * &self.b;
        if self.s <= lo || self.s >= int(4) {
            return Err(OracleError::InvariantViolation(format!(
                "need 4 − ab < S < 4, got S = {}",
                self.s
            )));
        }
        Ok(())
    }
}

fn check_ab(a: &Scalar, b: &Scalar) -> Result<(), OracleError> {
    for (name, v) in [("a", a), ("b", b)] {
        if !v.is_positive() || *v >= int(2) {
            return Err(OracleError::OutOfRange(format!(
                "need 0 < {name} < 2, got {v}"
            )));
        }
    }
    Ok(())
}

/// `g(1) = 8 − 2a − 2b`: the perimeter of the square minus the two cut
/// corner pieces.
pub fn g1_corner(a: &Scalar, b: &Scalar) -> Result<Scalar, OracleError> {
    check_ab(a, b)?;
    Ok(int(8) - int(2) * a - int(2) * b)
}

/// The sharp upper bound `g'(1) <= −8(S − (4 − ab)) / ((4 − S) + ½(a−b)²)`,
/// attained by the isosceles cut.
pub fn gprime_bound_corner(
    a: &Scalar,
    b: &Scalar,
    s: &Scalar,
) -> Result<Scalar, OracleError> {
    let p = CornerCaseParams {
        a: a.clone(),
        b: b.clone(),
        s: s.clone(),
    };
    p.validate()?;
    let num = int(-8) * (s - (int(4) - a * b));
    let den = (int(4) - s) + ratio(1, 2) * (a - b) * (a - b);
    Ok(num / den)
}

/// The decision polynomial
/// `E = (8−2a−2b)(8−2a−2b−S)((4−S) + ½(a−b)²) + 8S(S − (4−ab))`,
/// the derivative inequality cleared of its positive denominator.
/// Nonnegativity of `E` settles the corner case.
pub fn e_polynomial(a: &Scalar, b: &Scalar, s: &Scalar) -> Scalar {
    let g = int(8) - int(2) * a - int(2) * b;
    let den = (int(4) - s) + ratio(1, 2) * (a - b) * (a - b);
    &g * (&g - s) * den + int(8) * s * (s - (int(4) - a * b))
}

/// Corner-case verdict: with `D = (4−S) + ½(a−b)²` positive,
/// `lhs = (g(1) + bound)·S·D` against `rhs = g(1)²·D`, so that
/// `rhs − lhs = E(a, b, S)` exactly.
pub fn corner_case_check(p: &CornerCaseParams) -> Result<OracleVerdict, OracleError> {
    p.validate()?;
    let g = g1_corner(&p.a, &p.b)?;
    let den = (int(4) - &p.s) + ratio(1, 2) * (&p.a - &p.b) * (&p.a - &p.b);
    let bound = gprime_bound_corner(&p.a, &p.b, &p.s)?;
    let lhs = (&g + &bound) * &p.s * &den;
    let rhs = &g * &g * &den;
    let e = e_polynomial(&p.a, &p.b, &p.s);
    debug_assert_eq!(&rhs - &lhs, e);
    Ok(OracleVerdict {
        holds: lhs <= rhs,
        lhs,
        rhs,
        branch: Branch::Main,
        detail: format!("E = {}", to_f64(&e)),
    })
}

/// Parallelogram with outer vertices `±(c, d)` whose supporting lines
/// through `(c, d)` have the given slope ratios. Crossings of `x = 1` sit at
/// ordinates `d + (c−1)·cot`, so `cot_a > cot_b` gives a genuine edge case
/// against the unit square.
pub fn edge_case_shape(
    c: &Scalar,
    d: &Scalar,
    cot_a: &Scalar,
    cot_b: &Scalar,
) -> Result<ConvexPolygon, OracleError> {
    let apex = Point::new(c.clone(), d.clone());
    // Points of the two lines at x = 1.
    let p_hi = Point::new(int(1), d + (c - int(1)) * cot_a);
    let p_lo = Point::new(int(1), d + (c - int(1)) * cot_b);
    let d1 = p_hi.sub(&apex);
    let d2 = p_lo.neg().sub(&apex.neg());
    let denom = d1.cross(&d2);
    if denom.is_zero() {
        return Err(OracleError::InvariantViolation(
            "degenerate slope pair".into(),
        ));
    }
    let s = apex.neg().sub(&apex).cross(&d2) / &denom;
    let w = apex.add(&d1.mul(&s));
    Ok(convex_hull(&[apex.clone(), w.clone(), apex.neg(), w.neg()])?
        .with_symmetry(Symmetry::Central)?)
}

/// Corner-case parallelogram: inner vertex pair `±p` near the corners
/// `(1,−1)/(−1,1)`, crossings at `(1−a, −1)` and `(1, −1+b)`.
pub fn corner_case_shape(
    a: &Scalar,
    b: &Scalar,
    p: &Point,
) -> Result<ConvexPolygon, OracleError> {
    let c1 = Point::new(int(1), int(-1) + b);
    let c4 = Point::new(int(1) - a, int(-1));
    // Outer vertex: line(p, c1) ∩ line(−p, −c4).
    let d1 = c1.sub(p);
    let d2 = c4.neg().sub(&p.neg());
    let denom = d1.cross(&d2);
    if denom.is_zero() {
        return Err(OracleError::InvariantViolation(
            "degenerate corner configuration".into(),
        ));
    }
    let s = p.neg().sub(p).cross(&d2) / &denom;
    let w = p.add(&d1.mul(&s));
    Ok(convex_hull(&[w.clone(), p.clone(), w.neg(), p.neg()])?
        .with_symmetry(Symmetry::Central)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{boundary_flux, property_b_check};
    use crate::geom::intersect;
    use crate::scalar::parse_scalar;

    fn q() -> ConvexPolygon {
        ConvexPolygon::unit_square()
    }

    fn edge_case_l(c: &Scalar, d: &Scalar, cot_a: &Scalar, cot_b: &Scalar) -> ConvexPolygon {
        edge_case_shape(c, d, cot_a, cot_b).unwrap()
    }

    fn corner_case_l(a: &Scalar, b: &Scalar, p: &Point) -> ConvexPolygon {
        corner_case_shape(a, b, p).unwrap()
    }

    #[test]
    fn edge_params_extraction() {
        // Rhombus through (±3, 0), (0, ±3/4): crossings of x = 1 at ±1/2.
        let l = edge_case_l(&int(3), &int(0), &ratio(1, 4), &ratio(-1, 4));
        let p = edge_case_params(&l).unwrap();
        assert_eq!(p.c, int(3));
        assert_eq!(p.d, int(0));
        assert_eq!(p.cot_alpha, ratio(1, 4));
        assert_eq!(p.cot_beta, ratio(-1, 4));
        // Crossing ordinates (c−1)·cot + d.
        assert_eq!((&p.c - int(1)) * &p.cot_alpha + &p.d, ratio(1, 2));
        assert_eq!(p.area_l, ratio(9, 2));
        assert_eq!(p.intersection_area(), ratio(5, 2));
        assert_eq!(p.g1(), int(2));

        // Invariance under L ↦ −L.
        let p2 = edge_case_params(&l.negation()).unwrap();
        assert_eq!(p2.c, p.c);
        assert_eq!(p2.cot_alpha, p.cot_alpha);

        // Horizontal-edge configuration: quarter-turned copy, same params.
        let rot = l
            .linear_map(&Mat2::new(int(0), int(-1), int(1), int(0)))
            .unwrap();
        let p3 = edge_case_params(&rot).unwrap();
        assert_eq!(p3.c, p.c);
        assert_eq!(p3.cot_alpha, p.cot_alpha);
        assert_eq!(p3.cot_beta, p.cot_beta);
    }

    #[test]
    fn edge_params_rejects_other_cases() {
        assert!(matches!(
            edge_case_params(&q().scale(&int(3)).unwrap()),
            Err(OracleError::NotEdgeCase(_))
        ));
    }

    #[test]
    fn edge_closed_forms_match_flux() {
        for (c, d, ca, cb) in [
            (int(3), int(0), ratio(1, 4), ratio(-1, 4)),
            (int(3), ratio(1, 8), ratio(1, 4), ratio(-1, 4)),
            (ratio(5, 2), ratio(-1, 10), ratio(3, 10), ratio(-1, 5)),
            (ratio(3, 2), int(0), ratio(1, 2), ratio(-1, 3)),
        ] {
            let l = edge_case_l(&c, &d, &ca, &cb);
            let p = edge_case_params(&l).unwrap();
            assert_eq!(p.c, c);
            assert_eq!(p.d, d);
            let flux = boundary_flux(&q(), &l).unwrap();
            assert_eq!(p.g1(), flux.g1, "g(1) mismatch at c={c}");
            assert_eq!(
                p.g1_plus_gprime(),
                &flux.g1 + &flux.g1_prime,
                "g+g' mismatch at c={c}"
            );
            assert_eq!(
                p.intersection_area(),
                intersect(&q(), &l).area(),
                "area mismatch at c={c}"
            );
        }
    }

    #[test]
    fn edge_check_verdicts() {
        // c < 2: trivial branch.
        let p = EdgeCaseParams {
            cot_alpha: ratio(1, 2),
            cot_beta: ratio(-1, 3),
            c: ratio(3, 2),
            d: int(0),
            area_l: int(1),
        };
        let v = edge_case_check(&p).unwrap();
        assert!(v.holds);
        assert_eq!(v.branch, Branch::TrivialNegative);
        assert!(v.lhs.is_negative());

        // c = 3, e = 1, |L| at the convexity cap c²e = 9.
        let p2 = EdgeCaseParams {
            cot_alpha: ratio(1, 2),
            cot_beta: ratio(-1, 2),
            c: int(3),
            d: int(0),
            area_l: int(9),
        };
        let v2 = edge_case_check(&p2).unwrap();
        assert!(v2.holds);
        assert_eq!(v2.branch, Branch::Main);
        // lhs = 2(c−2)e·(|L|−(c−1)²e) = 2·5 = 10, rhs = g² = 16.
        assert_eq!(v2.lhs, int(10));
        assert_eq!(v2.rhs, int(16));
    }

    #[test]
    fn edge_check_matches_dynamics_report() {
        let l = edge_case_l(&int(3), &ratio(1, 8), &ratio(1, 4), &ratio(-1, 4));
        let p = edge_case_params(&l).unwrap();
        let v = edge_case_check(&p).unwrap();
        let rep = property_b_check(&q(), &l).unwrap();
        assert_eq!(v.lhs, parse_scalar(&rep.lhs).unwrap());
        assert_eq!(v.rhs, parse_scalar(&rep.rhs).unwrap());
        assert_eq!(v.holds, rep.holds);
        assert!(v.holds);
    }

    #[test]
    fn edge_algebra_identity() {
        // c²/(c−1)² = 1 + (2/(c−2))·(1 − (c/2)/(c−1)²) for rational c > 2.
        for c in [ratio(5, 2), int(3), ratio(7, 2), int(10), ratio(201, 100)] {
            let cm1 = &c - int(1);
            let lhs = &c * &c / (&cm1 * &cm1);
            let rhs = int(1)
                + (int(2) / (&c - int(2))) * (int(1) - (&c / int(2)) / (&cm1 * &cm1));
            assert_eq!(lhs, rhs, "identity fails at c={c}");
        }
    }

    #[test]
    fn corner_g1_examples() {
        assert_eq!(g1_corner(&int(1), &int(1)).unwrap(), int(4));
        assert_eq!(
            g1_corner(&ratio(19, 10), &ratio(19, 10)).unwrap(),
            ratio(2, 5)
        );
        assert!(matches!(
            g1_corner(&int(2), &int(1)),
            Err(OracleError::OutOfRange(_))
        ));
    }

    #[test]
    fn corner_bound_examples() {
        assert_eq!(
            gprime_bound_corner(&int(1), &int(1), &ratio(7, 2)).unwrap(),
            int(-8)
        );
        // Numerator vanishes as S → (4 − ab)⁺.
        let near = ratio(4, 1) - int(1) + ratio(1, 1_000_000); // 3 + 1e-6
        let b = gprime_bound_corner(&int(1), &int(1), &near).unwrap();
        assert!(b.is_negative() && to_f64(&b).abs() < 1e-5);
    }

    #[test]
    fn corner_polygon_cross_module() {
        // a = b = 1, inner vertex on the diagonal: the isosceles cut; the
        // bound on g'(1) is attained exactly.
        let a = int(1);
        let b = int(1);
        let p = Point::new(ratio(3, 4), ratio(-3, 4));
        let l = corner_case_l(&a, &b, &p);
        let flux = boundary_flux(&q(), &l).unwrap();
        assert_eq!(flux.g1, g1_corner(&a, &b).unwrap());
        let s = intersect(&q(), &l).area();
        assert_eq!(s, ratio(7, 2));
        let bound = gprime_bound_corner(&a, &b, &s).unwrap();
        assert!(flux.g1_prime <= bound);
        assert!(
            (to_f64(&flux.g1_prime) - to_f64(&bound)).abs() < 1e-9,
            "isosceles tightness: g'={} bound={}",
            to_f64(&flux.g1_prime),
            to_f64(&bound)
        );

        // Oracle verdict holds and implies the direct report holds.
        let v = corner_case_check(&CornerCaseParams { a, b, s }).unwrap();
        assert!(v.holds);
        let rep = property_b_check(&q(), &l).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn corner_polygon_asymmetric_cross_module() {
        let a = ratio(1, 2);
        let b = ratio(5, 4);
        // Inner vertex strictly inside the cut triangle near (1, −1):
        // triangle (1−a,−1), (1,−1), (1,−1+b).
        let p = Point::new(ratio(9, 10), ratio(-3, 4));
        let l = corner_case_l(&a, &b, &p);
        let flux = boundary_flux(&q(), &l).unwrap();
        assert_eq!(flux.g1, g1_corner(&a, &b).unwrap());
        let s = intersect(&q(), &l).area();
        let bound = gprime_bound_corner(&a, &b, &s).unwrap();
        assert!(flux.g1_prime <= bound, "bound must dominate g'(1)");
        let v = corner_case_check(&CornerCaseParams { a, b, s }).unwrap();
        assert!(v.holds);
        assert!(property_b_check(&q(), &l).unwrap().holds);
    }

    /// Reconstructs (value, first, second derivative) of the quadratic
    /// `S ↦ E(a,b,S)` at `s0` from three exact evaluations.
    fn e_jet(a: &Scalar, b: &Scalar, s0: &Scalar) -> (Scalar, Scalar, Scalar) {
        let h = int(1);
        let em = e_polynomial(a, b, &(s0 - &h));
        let e0 = e_polynomial(a, b, s0);
        let ep = e_polynomial(a, b, &(s0 + &h));
        let d1 = (&ep - &em) / (int(2) * &h);
        let d2 = (&ep - int(2) * &e0 + &em) / (&h * &h);
        (e0, d1, d2)
    }

    #[test]
    fn e_polynomial_boundary_values() {
        // At S = 4 − ab the closed form is (8−2a−2b)(2−a)(2−b)·½(a²+b²).
        for (a, b) in [
            (int(1), int(1)),
            (ratio(1, 2), ratio(3, 2)),
            (ratio(1, 8), ratio(15, 8)),
            (ratio(7, 4), ratio(1, 4)),
        ] {
            let s0 = int(4) - &a * &b;
            let (e0, d1, _d2) = e_jet(&a, &b, &s0);
            let closed = (int(8) - int(2) * &a - int(2) * &b)
                * (int(2) - &a)
                * (int(2) - &b)
                * ratio(1, 2)
                * (&a * &a + &b * &b);
            assert_eq!(e0, closed);
            assert!(e0.is_positive());
            // ∂E/∂S at the boundary.
            let u = &a + &b;
            let expected_d1 =
                &u * ((int(5) - &u) * (int(5) - &u) - int(1)) + int(2) * (&a - &b) * (&a - &b);
            assert_eq!(d1, expected_d1);
            assert!(d1.is_positive());
        }
        // Anchor value: a = b = 1, S = 3 gives E = 4.
        assert_eq!(e_polynomial(&int(1), &int(1), &int(3)), int(4));
    }

    #[test]
    fn e_polynomial_second_derivative() {
        // E is quadratic in S; its second derivative is the constant
        // 2(8−2a−2b) + 16 = 32 − 4a − 4b, positive throughout 0 < a,b < 2.
        for (a, b) in [
            (int(1), int(1)),
            (ratio(1, 8), ratio(15, 8)),
            (ratio(3, 2), ratio(3, 2)),
        ] {
            let s0 = int(4) - &a * &b;
            let (_, _, d2) = e_jet(&a, &b, &s0);
            assert_eq!(d2, int(32) - int(4) * &a - int(4) * &b);
            assert!(d2 > int(16));
            // Constant across S.
            let (_, _, d2b) = e_jet(&a, &b, &int(100));
            assert_eq!(d2, d2b);
        }
    }

    #[test]
    fn corner_grid_nonnegative() {
        // Dense rational falsification grid: E >= 0 (in fact > 0) on the
        // whole admissible box.
        for i in 1..16i64 {
            for j in 1..16i64 {
                let a = ratio(i, 8);
                let b = ratio(j, 8);
                let lo = int(4) - &a * &b;
                for k in 1..9i64 {
                    // S strictly between 4 − ab and 4.
                    let s = &lo + (int(4) - &lo) * ratio(k, 9);
                    let p = CornerCaseParams {
                        a: a.clone(),
                        b: b.clone(),
                        s,
                    };
                    let v = corner_case_check(&p).unwrap();
                    assert!(v.holds, "E < 0 at a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn corner_check_rejects_bad_params() {
        let bad = CornerCaseParams {
            a: int(1),
            b: int(1),
            s: int(3), // boundary, not interior
        };
        assert!(matches!(
            corner_case_check(&bad),
            Err(OracleError::InvariantViolation(_))
        ));
    }
}
