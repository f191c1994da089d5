//! The two negative examples: a mirror-symmetric (but not centrally
//! symmetric) pair whose scaled-intersection area fails log-concavity near
//! t = 0, and a quasi-concave measure failing log-concavity near t = 1.
//! The first is certified in exact arithmetic and re-confirmed by a
//! stratified Monte Carlo estimator; the second has closed forms.

use crate::dynamics::{midpoint_logconcavity_check, DynamicsError};
use crate::geom::{ConvexPolygon, Point, Symmetry};
use crate::scalar::{format_scalar, int, ratio, to_f64, Scalar};
use num::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CounterexampleError {
    #[error("no violation found on the committed search grid")]
    NoViolationFound,
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// A certified failure of midpoint log-concavity: three scales (or times),
/// the measure values there, and the negative defect.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationWitness {
    /// The triple (q, qr, qr²) of scales, or (t−h, t, t+h) of times.
    pub scales: [String; 3],
    pub values: [f64; 3],
    /// Exact defect for the uniform case; absent for the closed-form case.
    pub defect_exact: Option<String>,
    pub defect: f64,
    pub context: String,
}

/// A rectangle and a triangle, both invariant under
/// (x, y) ↦ (−x, y) but neither centrally symmetric.
pub fn uniform_counterexample() -> (ConvexPolygon, ConvexPolygon) {
    let k = ConvexPolygon::rect(int(-6), int(6), int(-3), int(1)).unwrap();
    let l = ConvexPolygon::new(
        vec![Point::of(5, -2), Point::of(0, 3), Point::of(-5, -2)],
        Symmetry::None,
    )
    .unwrap();
    (k, l)
}

/// The committed search grid: q ∈ {k/64 : 56 ≤ k ≤ 72},
/// r ∈ {1 + j/256 : 1 ≤ j ≤ 8}.
fn committed_grid() -> (Vec<Scalar>, Vec<Scalar>) {
    let qs = (56..=72).map(|k| ratio(k, 64)).collect();
    let rs = (1..=8).map(|j| int(1) + ratio(j, 256)).collect();
    (qs, rs)
}

/// Scans the committed grid for midpoint concavity failures of
/// `F(a) = |aK ∩ L|` and returns the most decisive one (most negative
/// exact defect), or `None` when the grid shows no violation.
pub fn scan_uniform_grid(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
) -> Result<Option<ViolationWitness>, CounterexampleError> {
    let (qs, rs) = committed_grid();
    let mut best: Option<(Scalar, Scalar, Scalar, [Scalar; 3])> = None;
    for q in &qs {
        for r in &rs {
            let w = midpoint_logconcavity_check(k, l, q, r)?;
            if w.defect.is_negative() {
                let better = match &best {
                    Some((_, _, d, _)) => w.defect < *d,
                    None => true,
                };
                if better {
                    best = Some((
                        q.clone(),
                        r.clone(),
                        w.defect.clone(),
                        [w.f_q.clone(), w.f_qr.clone(), w.f_qr2.clone()],
                    ));
                }
            }
        }
    }
    Ok(best.map(|(q, r, defect, values)| {
        let qr = &q * &r;
        let qr2 = &qr * &r;
        ViolationWitness {
            scales: [format_scalar(&q), format_scalar(&qr), format_scalar(&qr2)],
            values: [to_f64(&values[0]), to_f64(&values[1]), to_f64(&values[2])],
            defect: to_f64(&defect),
            defect_exact: Some(format_scalar(&defect)),
            context: format!(
                "F(qr)^2 - F(q) F(qr^2) < 0 at q={}, r={} for F(a) = |aK ∩ L|",
                format_scalar(&q),
                format_scalar(&r)
            ),
        }
    }))
}

/// Certifies the violation for the rectangle/triangle pair in exact
/// arithmetic over the committed grid.
pub fn certify_uniform_violation() -> Result<ViolationWitness, CounterexampleError> {
    let (k, l) = uniform_counterexample();
    scan_uniform_grid(&k, &l)?.ok_or(CounterexampleError::NoViolationFound)
}

/// Monte Carlo re-confirmation of a scale-triple witness.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloConfirmation {
    pub defect_estimate: f64,
    pub std_error: f64,
    /// Number of standard errors by which the estimate is below zero.
    pub sigmas_below_zero: f64,
    pub samples: usize,
}

struct Tri {
    a: [f64; 2],
    ab: [f64; 2],
    ac: [f64; 2],
    area: f64,
}

/// Uniform sampler over the annulus `a2·K \ a1·K` (0 < a1 < a2), stratified
/// into one trapezoid per edge of K and pruned by bounding-box overlap with
/// the target polygon. Returns an unbiased estimate of
/// `|annulus ∩ L|` together with its variance.
fn shell_area_mc(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    a1: f64,
    a2: f64,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (f64, f64) {
    let l_pts: Vec<[f64; 2]> = l
        .vertices()
        .iter()
        .map(|p| [to_f64(&p.x), to_f64(&p.y)])
        .collect();
    let (mut lx0, mut lx1, mut ly0, mut ly1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &l_pts {
        lx0 = lx0.min(p[0]);
        lx1 = lx1.max(p[0]);
        ly0 = ly0.min(p[1]);
        ly1 = ly1.max(p[1]);
    }
    let m = l_pts.len();
    let inside_l = |x: f64, y: f64| -> bool {
        (0..m).all(|i| {
            let p = l_pts[i];
            let q = l_pts[(i + 1) % m];
            (q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0]) >= 0.0
        })
    };

    // Trapezoid strata, keeping only those whose bounding box meets L's.
    let mut tris: Vec<Tri> = Vec::new();
    let mut pruned_area = 0.0;
    for i in 0..k.len() {
        let (v0, v1) = k.edge(i);
        let p0 = [to_f64(&v0.x), to_f64(&v0.y)];
        let p1 = [to_f64(&v1.x), to_f64(&v1.y)];
        let corners = [
            [a1 * p0[0], a1 * p0[1]],
            [a1 * p1[0], a1 * p1[1]],
            [a2 * p1[0], a2 * p1[1]],
            [a2 * p0[0], a2 * p0[1]],
        ];
        let tri = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
            let ab = [b[0] - a[0], b[1] - a[1]];
            let ac = [c[0] - a[0], c[1] - a[1]];
            Tri {
                a,
                ab,
                ac,
                area: 0.5 * (ab[0] * ac[1] - ab[1] * ac[0]).abs(),
            }
        };
        let t1 = tri(corners[0], corners[1], corners[2]);
        let t2 = tri(corners[0], corners[2], corners[3]);
        let (mut bx0, mut bx1, mut by0, mut by1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in &corners {
            bx0 = bx0.min(p[0]);
            bx1 = bx1.max(p[0]);
            by0 = by0.min(p[1]);
            by1 = by1.max(p[1]);
        }
        if bx1 < lx0 || bx0 > lx1 || by1 < ly0 || by0 > ly1 {
            pruned_area += t1.area + t2.area;
            continue;
        }
        tris.push(t1);
        tris.push(t2);
    }
    let _ = pruned_area; // pruned strata contribute exactly zero overlap
    let live_area: f64 = tris.iter().map(|t| t.area).sum();
    if live_area == 0.0 || n == 0 {
        return (0.0, 0.0);
    }

    let mut estimate = 0.0;
    let mut variance = 0.0;
    for t in &tris {
        let n_t = ((t.area / live_area) * n as f64).ceil() as usize;
        if n_t == 0 {
            continue;
        }
        let mut hits = 0usize;
        for _ in 0..n_t {
            let mut u: f64 = rng.gen();
            let mut v: f64 = rng.gen();
            if u + v > 1.0 {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            let x = t.a[0] + u * t.ab[0] + v * t.ac[0];
            let y = t.a[1] + u * t.ab[1] + v * t.ac[1];
            if inside_l(x, y) {
                hits += 1;
            }
        }
        let p = hits as f64 / n_t as f64;
        estimate += t.area * p;
        variance += t.area * t.area * p * (1.0 - p) / n_t as f64;
    }
    (estimate, variance)
}

/// Re-evaluates the witness defect through Monte Carlo shell areas:
/// writing s₁₂ = F(qr) − F(q) and s₂₃ = F(qr²) − F(qr), the defect equals
/// `F(qr)·s₁₂ − F(q)·s₂₃`; the shells are estimated by sampling, the two
/// anchor values exactly. `samples` is the total point budget.
pub fn confirm_uniform_violation(
    witness: &ViolationWitness,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloConfirmation, CounterexampleError> {
    let (k, l) = uniform_counterexample();
    let scales: Vec<Scalar> = witness
        .scales
        .iter()
        .map(|s| crate::scalar::parse_scalar(s).expect("witness scales are rational"))
        .collect();
    let f1 = to_f64(&crate::dynamics::area_at(&k, &l, &scales[0])?);
    let f2 = to_f64(&crate::dynamics::area_at(&k, &l, &scales[1])?);
    let a = [to_f64(&scales[0]), to_f64(&scales[1]), to_f64(&scales[2])];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_shell = samples / 2;
    let (s12, var12) = shell_area_mc(&k, &l, a[0], a[1], per_shell, &mut rng);
    let (s23, var23) = shell_area_mc(&k, &l, a[1], a[2], per_shell, &mut rng);
    let defect_estimate = f2 * s12 - f1 * s23;
    let variance = f2 * f2 * var12 + f1 * f1 * var23;
    let std_error = variance.sqrt();
    Ok(MonteCarloConfirmation {
        defect_estimate,
        std_error,
        sigmas_below_zero: if std_error > 0.0 {
            -defect_estimate / std_error
        } else {
            f64::INFINITY
        },
        samples,
    })
}

/// Closed form for `μ(e^t Q)` with `μ(A) = |A ∩ Q| + |A|` and `Q = [−1,1]²`:
/// `4·min(e^{2t}, 1) + 4e^{2t}`.
pub fn quasi_concave_measure_of_scaled_q(t: f64) -> f64 {
    let e2t = (2.0 * t).exp();
    4.0 * e2t.min(1.0) + 4.0 * e2t
}

/// Certifies the quasi-concave failure at t = 1 with the midpoint triple
/// (1−h, 1, 1+h), h = 1/10: for t ≥ 0, log μ(e^t Q) = log 4 + log(1 + e^{2t})
/// is strictly convex, so the log-midpoint defect is negative.
pub fn certify_quasiconcave_violation() -> ViolationWitness {
    let h = 0.1;
    quasiconcave_witness_at(1.0, h)
}

/// Midpoint defect of `log μ(e^t Q)` at `t` with half-width `h`.
pub fn quasiconcave_witness_at(t: f64, h: f64) -> ViolationWitness {
    let ts = [t - h, t, t + h];
    let values = ts.map(quasi_concave_measure_of_scaled_q);
    let defect = values[1].ln() - 0.5 * (values[0].ln() + values[2].ln());
    ViolationWitness {
        scales: ts.map(|x| format!("{x}")),
        values,
        defect_exact: None,
        defect,
        context: format!(
            "log μ(e^t Q) midpoint defect at t={t}, h={h} with μ(A) = |A ∩ Q| + |A|"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Mat2;

    #[test]
    fn shapes_as_stated() {
        let (k, l) = uniform_counterexample();
        assert_eq!(k.area(), int(48));
        assert_eq!(l.area(), int(25));
        // Mirror symmetry about x = 0 but no central symmetry.
        let mirror = Mat2::new(int(-1), int(0), int(0), int(1));
        for poly in [&k, &l] {
            let m = poly.linear_map(&mirror).unwrap();
            assert!(m.contains_polygon(poly) && poly.contains_polygon(&m));
        }
        let neg = k.negation();
        assert!(!neg.contains_polygon(&k) || !k.contains_polygon(&neg));
    }

    #[test]
    fn uniform_violation_is_exact_and_negative() {
        let w = certify_uniform_violation().unwrap();
        assert!(w.defect < 0.0);
        let exact = crate::scalar::parse_scalar(w.defect_exact.as_ref().unwrap()).unwrap();
        assert!(exact.is_negative());
        // Proper intersections at all three scales.
        let (k, _l) = uniform_counterexample();
        for (v, s) in w.values.iter().zip(&w.scales) {
            let a = crate::scalar::parse_scalar(s).unwrap();
            let cap = to_f64(&(&a * &a * k.area())).min(25.0);
            assert!(*v > 0.0 && *v < cap);
        }
    }

    #[test]
    fn uniform_violation_scales_homogeneously() {
        let (k, l) = uniform_counterexample();
        let two = int(2);
        let k2 = k.scale(&two).unwrap();
        let l2 = l.scale(&two).unwrap();
        let w1 = scan_uniform_grid(&k, &l).unwrap().unwrap();
        let w2 = scan_uniform_grid(&k2, &l2).unwrap().unwrap();
        let d1 = crate::scalar::parse_scalar(w1.defect_exact.as_ref().unwrap()).unwrap();
        let d2 = crate::scalar::parse_scalar(w2.defect_exact.as_ref().unwrap()).unwrap();
        assert_eq!(d2, d1 * int(16));
        assert_eq!(w1.scales, w2.scales);
    }

    #[test]
    fn symmetrization_cures_violation() {
        // Replacing K by the centrally symmetric rectangle [−6,6]×[−2,2]
        // removes every violation on the same grid.
        let k_sym = ConvexPolygon::rect(int(-6), int(6), int(-2), int(2)).unwrap();
        let (_, l) = uniform_counterexample();
        assert!(scan_uniform_grid(&k_sym, &l).unwrap().is_none());
    }

    #[test]
    fn monte_carlo_confirms_sign() {
        let w = certify_uniform_violation().unwrap();
        let mc = confirm_uniform_violation(&w, 1_000_000, 7).unwrap();
        assert!(mc.defect_estimate < 0.0);
        assert!(mc.sigmas_below_zero > 3.0, "only {}σ", mc.sigmas_below_zero);
        // Estimate consistent with the exact defect.
        assert!(
            (mc.defect_estimate - w.defect).abs() < 6.0 * mc.std_error,
            "estimate {} vs exact {}",
            mc.defect_estimate,
            w.defect
        );
        // Determinism.
        let mc2 = confirm_uniform_violation(&w, 1_000_000, 7).unwrap();
        assert_eq!(mc.defect_estimate, mc2.defect_estimate);
    }

    #[test]
    fn quasi_closed_form_values() {
        assert!((quasi_concave_measure_of_scaled_q(0.0) - 8.0).abs() < 1e-12);
        let e2 = 2.0f64.exp();
        assert!((quasi_concave_measure_of_scaled_q(1.0) - (4.0 + 4.0 * e2)).abs() < 1e-9);
        assert!((quasi_concave_measure_of_scaled_q(-1.0) - 8.0 / e2).abs() < 1e-12);
    }

    #[test]
    fn quasi_violation_and_second_difference_scaling() {
        let w = certify_quasiconcave_violation();
        assert!(w.defect < 0.0);
        let w_fine = quasiconcave_witness_at(1.0, 0.01);
        assert!(w_fine.defect < 0.0);
        let ratio = w.defect / w_fine.defect;
        assert!((95.0..=105.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn quasi_density_level_sets_convex() {
        // Density 1 + 1_Q has upper level sets ℝ² (t ≤ 1) and Q (1 < t ≤ 2):
        // both convex, so the density is quasi-concave.
        let q = ConvexPolygon::unit_square();
        assert!(q.area().is_positive());
        // Q convexity is enforced by the polygon invariant itself; the
        // level structure is the two-valued density by construction.
        assert_eq!(q.vertices().len(), 4);
    }
}
