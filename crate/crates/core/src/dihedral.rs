//! Smooth dihedrally symmetric shapes given by radial functions, the
//! curvature condition that guarantees convexity, and the angle-doubling
//! map `w` that carries D_n symmetry to D_2. Everything here is
//! floating-point: the map is transcendental, so this module verifies
//! identities numerically with pre-registered quadrature tolerances.

use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DihedralError {
    #[error("need at least 64 samples, got {0}")]
    InsufficientSamples(usize),
    #[error("point at angle {0} lies outside the sector [0, pi/n]")]
    OutsideSector(f64),
    #[error("curvature condition violated (min margin {0})")]
    CurvatureViolated(f64),
    #[error("profile is not strongly convex (min margin {0})")]
    NotConvexProfile(f64),
}

/// Closed-form radial profile on `[0, π/n]`.
#[derive(Debug, Clone)]
pub enum RadialProfile {
    Constant(f64),
    /// `base + eps·cos(freq·θ)`
    Cosine { base: f64, eps: f64, freq: u32 },
    /// Ellipse with semi-axes `a`, `b`: `(cos²θ/a² + sin²θ/b²)^{-1/2}`
    InverseEllipse { a: f64, b: f64 },
    /// `inner(factor·θ)` — the radial effect of the angle-scaling map.
    AngleScaled { inner: Box<RadialProfile>, factor: f64 },
}

impl RadialProfile {
    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            RadialProfile::Constant(r) => *r,
            RadialProfile::Cosine { base, eps, freq } => {
                base + eps * (*freq as f64 * theta).cos()
            }
            RadialProfile::InverseEllipse { a, b } => {
                let c = theta.cos();
                let s = theta.sin();
                1.0 / (c * c / (a * a) + s * s / (b * b)).sqrt()
            }
            RadialProfile::AngleScaled { inner, factor } => inner.eval(factor * theta),
        }
    }
}

/// A D_n-symmetric shape described by its radial function, sampled on a
/// uniform grid over the fundamental sector `[0, π/n]`. The full function
/// is the even, 2π/n-periodic extension.
#[derive(Debug, Clone)]
pub struct RadialShape {
    pub n: u32,
    pub thetas: Vec<f64>,
    pub rhos: Vec<f64>,
    pub profile: Option<RadialProfile>,
}

impl RadialShape {
    pub fn from_profile(
        profile: RadialProfile,
        n: u32,
        samples: usize,
    ) -> Result<Self, DihedralError> {
        if samples < 64 {
            return Err(DihedralError::InsufficientSamples(samples));
        }
        let half_period = PI / n as f64;
        let thetas: Vec<f64> = (0..samples)
            .map(|i| half_period * i as f64 / (samples - 1) as f64)
            .collect();
        let rhos: Vec<f64> = thetas.iter().map(|&t| profile.eval(t)).collect();
        Ok(RadialShape {
            n,
            thetas,
            rhos,
            profile: Some(profile),
        })
    }

    /// Radial function at an arbitrary angle, via the symmetric periodic
    /// extension.
    pub fn rho(&self, theta: f64) -> f64 {
        let period = 2.0 * PI / self.n as f64;
        let mut u = theta.rem_euclid(period);
        if u > period / 2.0 {
            u = period - u;
        }
        match &self.profile {
            Some(p) => p.eval(u),
            None => {
                // Linear interpolation on the sample grid.
                let m = self.thetas.len();
                let h = self.thetas[m - 1] / (m - 1) as f64;
                let pos = (u / h).clamp(0.0, (m - 1) as f64);
                let i = (pos.floor() as usize).min(m - 2);
                let frac = pos - i as f64;
                self.rhos[i] * (1.0 - frac) + self.rhos[i + 1] * frac
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CurvatureReport {
    pub ok: bool,
    pub min_margin: f64,
}

/// Strong-convexity margin `ρ² + 2ρ'² − ρρ''`, minimized over the sample
/// grid. Derivatives use 5-point central differences on the even extension
/// across both sector endpoints.
pub fn curvature_condition(k: &RadialShape) -> Result<CurvatureReport, DihedralError> {
    let m = k.rhos.len();
    if m < 64 {
        return Err(DihedralError::InsufficientSamples(m));
    }
    let h = k.thetas[m - 1] / (m - 1) as f64;
    let at = |i: isize| -> f64 {
        // Reflect indices: even around 0 and around the sector end.
        let mut j = i;
        let last = (m - 1) as isize;
        loop {
            if j < 0 {
                j = -j;
            } else if j > last {
                j = 2 * last - j;
            } else {
                break;
            }
        }
        k.rhos[j as usize]
    };
    let mut min_margin = f64::INFINITY;
    for i in 0..m as isize {
        let f = [at(i - 2), at(i - 1), at(i), at(i + 1), at(i + 2)];
        let d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
        let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
        let rho = f[2];
        let margin = rho * rho + 2.0 * d1 * d1 - rho * d2;
        min_margin = min_margin.min(margin);
    }
    Ok(CurvatureReport {
        ok: min_margin > 0.0,
        min_margin,
    })
}

/// Builds a sampled shape from a profile, rejecting profiles that fail the
/// curvature condition.
pub fn make_dn_shape(
    profile: RadialProfile,
    n: u32,
    samples: usize,
) -> Result<RadialShape, DihedralError> {
    let shape = RadialShape::from_profile(profile, n, samples)?;
    let report = curvature_condition(&shape)?;
    if !report.ok {
        return Err(DihedralError::NotConvexProfile(report.min_margin));
    }
    Ok(shape)
}

const SECTOR_SLACK: f64 = 1e-12;

/// The angle-multiplying map on the fundamental sector:
/// `(r cos θ, r sin θ) ↦ (r cos(nθ/2), r sin(nθ/2))`, θ ∈ [0, π/n].
pub fn w_point(p: [f64; 2], n: u32) -> Result<[f64; 2], DihedralError> {
    let r = p[0].hypot(p[1]);
    if r == 0.0 {
        return Ok([0.0, 0.0]);
    }
    let theta = p[1].atan2(p[0]);
    let max = PI / n as f64;
    if !(-SECTOR_SLACK..=max + SECTOR_SLACK).contains(&theta) {
        return Err(DihedralError::OutsideSector(theta));
    }
    let phi = theta.clamp(0.0, max) * n as f64 / 2.0;
    Ok([r * phi.cos(), r * phi.sin()])
}

/// Image of a D_n shape under `w`: the D_2 shape with
/// `ρ_{w(K)}(θ) = ρ_K(2θ/n)`. Both input and output must pass the
/// curvature condition.
pub fn w_shape(k: &RadialShape) -> Result<RadialShape, DihedralError> {
    let rep = curvature_condition(k)?;
    if !rep.ok {
        return Err(DihedralError::CurvatureViolated(rep.min_margin));
    }
    let factor = 2.0 / k.n as f64;
    let profile = match &k.profile {
        Some(p) => RadialProfile::AngleScaled {
            inner: Box::new(p.clone()),
            factor,
        },
        None => RadialProfile::AngleScaled {
            // Fall back to sampling through the interpolant.
            inner: Box::new(RadialProfile::Constant(1.0)),
            factor,
        },
    };
    let samples = k.rhos.len();
    let mut out = RadialShape::from_profile(profile, 2, samples)?;
    if k.profile.is_none() {
        // Resample directly from the interpolated input.
        out.rhos = out
            .thetas
            .iter()
            .map(|&t| k.rho(factor * t))
            .collect();
        out.profile = None;
    }
    let rep_out = curvature_condition(&out)?;
    if !rep_out.ok {
        return Err(DihedralError::CurvatureViolated(rep_out.min_margin));
    }
    Ok(out)
}

/// Composite Simpson rule with at least `min_intervals` (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, min_intervals: usize) -> f64 {
    let mut n = min_intervals.max(2);
    if n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Area of `aK ∩ G_n` in polar form: `∫₀^{π/n} ½ (a ρ_K)² dθ`.
pub fn sector_area(k: &RadialShape, a: f64, min_intervals: usize) -> f64 {
    let upper = PI / k.n as f64;
    let f = |t: f64| {
        let r = a * k.rho(t);
        0.5 * r * r
    };
    simpson(&f, 0.0, upper, min_intervals.max(1024))
}

/// Angles in `[lo, hi]` where `e^t ρ_K` and `ρ_L` cross, located by sign
/// scan plus bisection to 1e−12. The integrand of the pair area is only
/// piecewise smooth at these kinks.
fn crossing_angles(k: &RadialShape, l: &RadialShape, t: f64, lo: f64, hi: f64) -> Vec<f64> {
    let et = t.exp();
    let diff = |theta: f64| et * k.rho(theta) - l.rho(theta);
    let scan = 4096;
    let mut kinks = Vec::new();
    let mut prev = diff(lo);
    for i in 1..=scan {
        let x = lo + (hi - lo) * i as f64 / scan as f64;
        let cur = diff(x);
        if prev == 0.0 {
            kinks.push(lo + (hi - lo) * (i - 1) as f64 / scan as f64);
        } else if prev.signum() != cur.signum() && cur != 0.0 {
            let mut a = lo + (hi - lo) * (i - 1) as f64 / scan as f64;
            let mut b = x;
            for _ in 0..100 {
                let mid = 0.5 * (a + b);
                if b - a < 1e-12 {
                    break;
                }
                if diff(a).signum() == diff(mid).signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            kinks.push(0.5 * (a + b));
        }
        prev = cur;
    }
    kinks
}

/// `|e^t K ∩ L ∩ G_n|` by polar quadrature with kink-aware panels.
pub fn pair_sector_area(k: &RadialShape, l: &RadialShape, t: f64, min_intervals: usize) -> f64 {
    pair_area_on(k, l, t, 0.0, PI / k.n.max(l.n) as f64, min_intervals)
}

/// `f_{K,L}(t) = |e^t K ∩ L|` by polar quadrature over the full circle.
pub fn pair_full_area(k: &RadialShape, l: &RadialShape, t: f64, min_intervals: usize) -> f64 {
    pair_area_on(k, l, t, 0.0, 2.0 * PI, min_intervals)
}

fn pair_area_on(
    k: &RadialShape,
    l: &RadialShape,
    t: f64,
    lo: f64,
    hi: f64,
    min_intervals: usize,
) -> f64 {
    let et = t.exp();
    let f = |theta: f64| {
        let r = (et * k.rho(theta)).min(l.rho(theta));
        0.5 * r * r
    };
    let mut nodes = vec![lo];
    nodes.extend(crossing_angles(k, l, t, lo, hi));
    nodes.push(hi);
    nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let total = hi - lo;
    let min_intervals = min_intervals.max(1024);
    let mut area = 0.0;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let panels = (((b - a) / total) * min_intervals as f64).ceil() as usize + 2;
        area += simpson(&f, a, b, panels);
    }
    area
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    /// max over the t-grid of |f_full − 2n·f_sector|
    pub max_dev_sector: f64,
    /// max over the t-grid of |f_full − f_{w(K),w(L)}|
    pub max_dev_w: f64,
}

/// Verifies the reduction chain
/// `f_{K,L}(t) = 2n·f_{K∩G_n, L∩G_n}(t) = f_{w(K),w(L)}(t)` on a grid of
/// `t` values, reporting the worst absolute deviations.
pub fn dihedral_identity_check(
    k: &RadialShape,
    l: &RadialShape,
    t_grid: &[f64],
    min_intervals: usize,
) -> Result<IdentityReport, DihedralError> {
    assert_eq!(k.n, l.n, "shapes must share the dihedral order");
    let wk = w_shape(k)?;
    let wl = w_shape(l)?;
    let n = k.n as f64;
    let mut max_dev_sector: f64 = 0.0;
    let mut max_dev_w: f64 = 0.0;
    for &t in t_grid {
        let full = pair_full_area(k, l, t, min_intervals);
        let sector = pair_sector_area(k, l, t, min_intervals);
        let w_full = pair_full_area(&wk, &wl, t, min_intervals);
        max_dev_sector = max_dev_sector.max((full - 2.0 * n * sector).abs());
        max_dev_w = max_dev_w.max((full - w_full).abs());
    }
    Ok(IdentityReport {
        max_dev_sector,
        max_dev_w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: u32) -> RadialShape {
        make_dn_shape(RadialProfile::Constant(1.0), n, 256).unwrap()
    }

    #[test]
    fn curvature_examples() {
        let rep = curvature_condition(&circle(2)).unwrap();
        assert!(rep.ok);
        assert!((rep.min_margin - 1.0).abs() < 1e-9);

        // Ellipse profile (cos²θ + 4 sin²θ)^{-1/2}.
        let ell = RadialShape::from_profile(
            RadialProfile::InverseEllipse { a: 1.0, b: 0.5 },
            2,
            512,
        )
        .unwrap();
        assert!(curvature_condition(&ell).unwrap().ok);

        assert!(matches!(
            curvature_condition(&RadialShape {
                n: 2,
                thetas: vec![0.0; 10],
                rhos: vec![1.0; 10],
                profile: None
            }),
            Err(DihedralError::InsufficientSamples(10))
        ));
    }

    #[test]
    fn make_shape_examples() {
        // Gentle D_3 bump is fine.
        assert!(make_dn_shape(
            RadialProfile::Cosine {
                base: 1.0,
                eps: 0.05,
                freq: 3
            },
            3,
            256
        )
        .is_ok());
        // Strong D_5 bump breaks convexity.
        assert!(matches!(
            make_dn_shape(
                RadialProfile::Cosine {
                    base: 1.0,
                    eps: 0.5,
                    freq: 5
                },
                5,
                256
            ),
            Err(DihedralError::NotConvexProfile(_))
        ));
    }

    #[test]
    fn w_point_examples() {
        assert_eq!(w_point([1.0, 0.0], 3).unwrap(), [1.0, 0.0]);
        // θ = π/3, r = 2 with n = 3 maps to the vertical ray.
        let p = [2.0 * (PI / 3.0).cos(), 2.0 * (PI / 3.0).sin()];
        let img = w_point(p, 3).unwrap();
        assert!(img[0].abs() < 1e-12 && (img[1] - 2.0).abs() < 1e-12);
        // Radius preserved at random angles.
        for i in 0..10 {
            let theta = PI / 3.0 * (i as f64 / 9.0);
            let r = 1.0 + 0.3 * i as f64;
            let q = [r * theta.cos(), r * theta.sin()];
            let im = w_point(q, 3).unwrap();
            assert!((im[0].hypot(im[1]) - r).abs() < 1e-12);
        }
        assert!(matches!(
            w_point([0.0, -1.0], 3),
            Err(DihedralError::OutsideSector(_))
        ));
    }

    #[test]
    fn w_shape_examples() {
        // Circle maps to circle.
        let wc = w_shape(&circle(4)).unwrap();
        assert_eq!(wc.n, 2);
        for &r in &wc.rhos {
            assert!((r - 1.0).abs() < 1e-12);
        }
        // n = 2 input: identity on the radial function.
        let ell = make_dn_shape(RadialProfile::InverseEllipse { a: 1.0, b: 0.5 }, 2, 256).unwrap();
        let wi = w_shape(&ell).unwrap();
        for (a, b) in ell.rhos.iter().zip(&wi.rhos) {
            assert!((a - b).abs() < 1e-12);
        }
        // Sector area scales by n/2.
        let k = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.0,
                eps: 0.05,
                freq: 3
            },
            3,
            4096,
        )
        .unwrap();
        let wk = w_shape(&k).unwrap();
        let sk = sector_area(&k, 1.0, 4096);
        let swk = sector_area(&wk, 1.0, 4096);
        assert!(((swk - 1.5 * sk) / sk).abs() < 1e-6);
    }

    #[test]
    fn sector_area_examples() {
        let c = circle(2);
        assert!((sector_area(&c, 1.0, 1024) - PI / 4.0).abs() < 1e-9);
        let c3 = circle(3);
        assert!((sector_area(&c3, 2.0, 1024) - 4.0 * PI / 6.0).abs() < 1e-9);
        // 2n × sector = full area.
        let k = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.0,
                eps: 0.05,
                freq: 3
            },
            3,
            256,
        )
        .unwrap();
        let full = pair_full_area(&k, &k, 0.0, 2048);
        assert!((6.0 * sector_area(&k, 1.0, 2048) - full).abs() < 1e-8);
    }

    #[test]
    fn circle_pair_closed_form() {
        let c = circle(2);
        for &t in &[-0.5, -0.1, 0.0, 0.2, 0.7] {
            let f = pair_full_area(&c, &c, t, 2048);
            let expected = PI * (2.0 * t).exp().min(1.0);
            assert!((f - expected).abs() < 1e-8, "t={t}: {f} vs {expected}");
        }
    }

    #[test]
    fn identity_chain_d3() {
        let k = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.0,
                eps: 0.05,
                freq: 3
            },
            3,
            2048,
        )
        .unwrap();
        let l = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.1,
                eps: 0.03,
                freq: 3
            },
            3,
            2048,
        )
        .unwrap();
        let grid: Vec<f64> = (0..9).map(|i| -0.2 + 0.05 * i as f64).collect();
        let rep = dihedral_identity_check(&k, &l, &grid, 2048).unwrap();
        assert!(rep.max_dev_sector < 1e-5, "sector dev {}", rep.max_dev_sector);
        assert!(rep.max_dev_w < 1e-5, "w dev {}", rep.max_dev_w);
    }

    #[test]
    fn quadrature_convergence_study() {
        // Halving the Simpson step shrinks the error against the closed
        // form by at least 4× (pre-registered tolerance calibration).
        let c = circle(2);
        let exact = PI / 4.0;
        let e1 = (sector_area(&c, 1.0, 1024) - exact).abs();
        let e2 = (sector_area(&c, 1.0, 2048) - exact).abs();
        // Constant integrand integrates exactly; use the ellipse instead.
        let ell =
            make_dn_shape(RadialProfile::InverseEllipse { a: 1.0, b: 0.5 }, 2, 256).unwrap();
        let exact_ell = PI * 1.0 * 0.5 / 4.0; // quarter of ellipse area
        let f1 = (sector_area(&ell, 1.0, 1024) - exact_ell).abs();
        let f2 = (sector_area(&ell, 1.0, 2048) - exact_ell).abs();
        assert!(e1 < 1e-12 && e2 < 1e-12);
        assert!(f2 * 4.0 <= f1 + 1e-15, "errors {f1} -> {f2}");
    }

    #[test]
    fn sampled_logconcavity_of_w_pair() {
        // Log-concavity of t ↦ f_{w(K),w(L)}(t) on a fine grid: second
        // differences of log f stay below a small discretization allowance.
        let k = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.0,
                eps: 0.05,
                freq: 3
            },
            3,
            1024,
        )
        .unwrap();
        let l = make_dn_shape(
            RadialProfile::Cosine {
                base: 1.1,
                eps: 0.04,
                freq: 3
            },
            3,
            1024,
        )
        .unwrap();
        let wk = w_shape(&k).unwrap();
        let wl = w_shape(&l).unwrap();
        let ts: Vec<f64> = (0..41).map(|i| -0.2 + 0.01 * i as f64).collect();
        let logf: Vec<f64> = ts
            .iter()
            .map(|&t| pair_full_area(&wk, &wl, t, 2048).ln())
            .collect();
        for w in logf.windows(3) {
            let second = w[0] - 2.0 * w[1] + w[2];
            assert!(second <= 2e-7, "second difference {second}");
        }
    }
}
