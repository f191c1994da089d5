//! Deterministic generation of random centrally symmetric polygon pairs in
//! the transversal class, for property-based scanning. All randomness comes
//! from an explicitly passed seeded generator.

use crate::geom::{convex_hull, ConvexPolygon, Point, Symmetry};
use crate::reduction::{crossings, perturb_to_f};
use crate::scalar::{ratio, Scalar};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RandomError {
    #[error("failed to generate a valid configuration after {0} attempts")]
    GenerationFailed(usize),
}

const MAX_RETRIES: usize = 100;

/// Random centrally symmetric polygon: hull of `m` sampled points and their
/// negations, coordinates on the grid ℤ/64 within [−2, 2].
pub fn random_symmetric_polygon<R: Rng>(
    rng: &mut R,
    m: usize,
) -> Result<ConvexPolygon, RandomError> {
    for _ in 0..MAX_RETRIES {
        let mut pts: Vec<Point> = Vec::with_capacity(2 * m);
        for _ in 0..m {
            let x = rng.gen_range(-128..=128i64);
            let y = rng.gen_range(-128..=128i64);
            if x == 0 && y == 0 {
                continue;
            }
            let p = Point::new(ratio(x, 64), ratio(y, 64));
            pts.push(p.neg());
            pts.push(p);
        }
        if pts.len() < 6 {
            continue;
        }
        let hull = match convex_hull(&pts) {
            Ok(h) => h,
            Err(_) => continue,
        };
        if hull.len() < 4 {
            continue;
        }
        if let Ok(sym) = hull.with_symmetry(Symmetry::Central) {
            return Ok(sym);
        }
    }
    Err(RandomError::GenerationFailed(MAX_RETRIES))
}

/// Random pair of centrally symmetric polygons whose boundaries cross,
/// nudged into the transversal class by a small scaling of the second
/// shape when needed.
pub fn random_f_pair<R: Rng>(
    rng: &mut R,
    m: usize,
) -> Result<(ConvexPolygon, ConvexPolygon), RandomError> {
    let eps: Scalar = ratio(1, 1024);
    for _ in 0..MAX_RETRIES {
        let k = random_symmetric_polygon(rng, m)?;
        let l = random_symmetric_polygon(rng, m)?;
        let (k, l) = match perturb_to_f(&k, &l, &eps) {
            Ok(pair) => pair,
            Err(_) => continue,
        };
        match crossings(&k, &l) {
            Ok(c) if !c.is_empty() => return Ok((k, l)),
            _ => continue,
        }
    }
    Err(RandomError::GenerationFailed(MAX_RETRIES))
}
