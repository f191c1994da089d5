//! Transversality class membership, boundary decomposition and the
//! extension construction that reduces a symmetric polygon pair to
//! parallelogram pairs.

use crate::geom::{
    intersect, intersect_halfplanes, ConvexPolygon, Direction, GeomError, Halfplane, Mat2, Point,
    Symmetry,
};
use crate::scalar::{int, ratio, Scalar};
use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("pair is not transversal: {0:?}")]
    NotTransversal(TransversalityDiagnosis),
    #[error("boundaries do not cross (one body contains the other)")]
    NoCrossings,
    #[error("could not perturb pair into the transversal class")]
    PerturbationFailed,
    #[error("polygon is not a centrally symmetric parallelogram")]
    NotAParallelogram,
    #[error("configuration needs a further reduction pass")]
    UnclassifiedConfiguration,
    #[error("no valid bounding strip found (internal invariant broken)")]
    NoValidStrip,
    #[error("component index {0} out of range")]
    BadComponentIndex(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    InfiniteIntersection,
    VertexOnCrossing,
    ParallelNormals,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Point,
}

/// Result of the class membership test. `in_class` iff no violations.
#[derive(Debug, Clone, Default)]
pub struct TransversalityDiagnosis {
    pub violations: Vec<Violation>,
}

impl TransversalityDiagnosis {
    pub fn in_class(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A transversal crossing of the two boundaries: interior point of K-edge
/// `k_edge` and of L-edge `l_edge`.
#[derive(Debug, Clone)]
pub struct Crossing {
    pub point: Point,
    pub k_edge: usize,
    pub l_edge: usize,
    /// Parameter of the crossing along the directed K-edge, in (0, 1).
    pub t_k: Scalar,
}

/// One connected component of `∂K ∩ L`: a polyline along `∂K` whose
/// endpoints are crossings with `∂L`.
#[derive(Debug, Clone)]
pub struct BoundaryComponent {
    pub polyline: Vec<Point>,
    pub index: usize,
    pub partner_index: usize,
    pub entry: Crossing,
    pub exit: Crossing,
    /// K-edge indices the polyline traverses, in order.
    pub k_edges: Vec<usize>,
}

/// Extension of one body: either a bounded symmetric polygon or an
/// infinite strip `{ |<normal, x>| <= halfwidth }`.
#[derive(Debug, Clone)]
pub enum ExtendedShape {
    Bounded(ConvexPolygon),
    Strip { normal: Direction, halfwidth: Scalar },
}

impl ExtendedShape {
    pub fn is_bounded(&self) -> bool {
        matches!(self, ExtendedShape::Bounded(_))
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            ExtendedShape::Bounded(poly) => poly.contains(p),
            ExtendedShape::Strip { normal, halfwidth } => normal.dot(p).abs() <= *halfwidth,
        }
    }

    pub fn contains_polygon(&self, poly: &ConvexPolygon) -> bool {
        poly.vertices().iter().all(|v| self.contains(v))
    }

    fn halfplanes(&self) -> Vec<Halfplane> {
        match self {
            ExtendedShape::Bounded(poly) => poly.halfplanes(),
            ExtendedShape::Strip { normal, halfwidth } => vec![
                Halfplane {
                    normal: normal.clone(),
                    offset: halfwidth.clone(),
                },
                Halfplane {
                    normal: normal.neg(),
                    offset: halfwidth.clone(),
                },
            ],
        }
    }
}

#[derive(Debug, Clone)]
pub struct StripChoice {
    pub normal: Direction,
    pub halfwidth: Scalar,
}

/// A bounded extended pair `(K⁽ⁱ⁾, L⁽ⁱ⁾)` covering one component pair.
#[derive(Debug, Clone)]
pub struct ExtendedPair {
    pub k_ext: ConvexPolygon,
    pub l_ext: ConvexPolygon,
    pub strip_used: Option<StripChoice>,
    pub source_component: usize,
}

enum SegCross {
    None,
    /// Proper or endpoint intersection point with both segment parameters.
    At(Point, Scalar, Scalar),
    /// Collinear segments sharing more than one point.
    Overlap(Point),
}

fn segment_cross(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> SegCross {
    let da = a1.sub(a0);
    let db = b1.sub(b0);
    let denom = da.cross(&db);
    let diff = b0.sub(a0);
    if denom.is_zero() {
        if !da.cross(&diff).is_zero() {
            return SegCross::None; // parallel, distinct lines
        }
        // Same line: compare parameter intervals along a.
        let len2 = da.dot(&da);
        let t0 = diff.dot(&da) / &len2;
        let t1 = b1.sub(a0).dot(&da) / &len2;
        let (blo, bhi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = blo.max(Scalar::zero());
        let hi = bhi.min(int(1));
        if lo < hi {
            let mid = (&lo + &hi) / int(2);
            return SegCross::Overlap(a0.add(&da.mul(&mid)));
        }
        if lo == hi {
            // Endpoint-to-endpoint touch of collinear segments.
            return SegCross::At(a0.add(&da.mul(&lo)), lo.clone(), Scalar::zero());
        }
        return SegCross::None;
    }
    let ta = diff.cross(&db) / &denom;
    let tb = diff.cross(&da) / &denom;
    let zero = Scalar::zero();
    let one = int(1);
    if ta < zero || ta > one || tb < zero || tb > one {
        return SegCross::None;
    }
    let p = a0.add(&da.mul(&ta));
    SegCross::At(p, ta, tb)
}

/// Exact membership test for the transversal class: finite boundary
/// intersection, no crossing at a vertex, distinct edge normals at every
/// crossing.
pub fn check_class_f(k: &ConvexPolygon, l: &ConvexPolygon) -> TransversalityDiagnosis {
    let mut diag = TransversalityDiagnosis::default();
    let zero = Scalar::zero();
    let one = int(1);
    for i in 0..k.len() {
        let (a0, a1) = k.edge(i);
        for j in 0..l.len() {
            let (b0, b1) = l.edge(j);
            match segment_cross(a0, a1, b0, b1) {
                SegCross::None => {}
                SegCross::Overlap(p) => {
                    diag.violations.push(Violation {
                        kind: ViolationKind::InfiniteIntersection,
                        location: p.clone(),
                    });
                    if k.edge_outer_normal(i) == l.edge_outer_normal(j) {
                        diag.violations.push(Violation {
                            kind: ViolationKind::ParallelNormals,
                            location: p,
                        });
                    }
                }
                SegCross::At(p, ta, tb) => {
                    if ta == zero || ta == one || tb == zero || tb == one {
                        diag.violations.push(Violation {
                            kind: ViolationKind::VertexOnCrossing,
                            location: p,
                        });
                    }
                    // A proper interior crossing of non-parallel edges has
                    // distinct normals by construction, so no normal check
                    // is needed here.
                }
            }
        }
    }
    diag
}

/// All transversal crossings ordered counterclockwise along `∂K`.
pub fn crossings(k: &ConvexPolygon, l: &ConvexPolygon) -> Result<Vec<Crossing>, ReductionError> {
    let diag = check_class_f(k, l);
    if !diag.in_class() {
        return Err(ReductionError::NotTransversal(diag));
    }
    let mut out = Vec::new();
    for i in 0..k.len() {
        let (a0, a1) = k.edge(i);
        for j in 0..l.len() {
            let (b0, b1) = l.edge(j);
            if let SegCross::At(p, ta, _tb) = segment_cross(a0, a1, b0, b1) {
                out.push(Crossing {
                    point: p,
                    k_edge: i,
                    l_edge: j,
                    t_k: ta,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.k_edge, &a.t_k).cmp(&(b.k_edge, &b.t_k)));
    Ok(out)
}

/// Scales `L` about the origin by the smallest `δ ∈ {eps, eps/2, ...}` that
/// moves the pair into the transversal class. Pairs already in the class
/// are returned unchanged.
pub fn perturb_to_f(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    eps: &Scalar,
) -> Result<(ConvexPolygon, ConvexPolygon), ReductionError> {
    assert!(eps.is_positive(), "eps must be positive");
    if check_class_f(k, l).in_class() {
        return Ok((k.clone(), l.clone()));
    }
    let mut delta = eps.clone();
    for _ in 0..20 {
        let scaled = l.scale(&(int(1) + &delta))?;
        if check_class_f(k, &scaled).in_class() {
            return Ok((k.clone(), scaled));
        }
        delta /= int(2);
    }
    Err(ReductionError::PerturbationFailed)
}

/// Connected components of `∂K ∩ L`, paired so that component `i + n` is the
/// pointwise negation of component `i`.
pub fn boundary_components(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
) -> Result<Vec<BoundaryComponent>, ReductionError> {
    let cross = crossings(k, l)?;
    if cross.is_empty() {
        return Err(ReductionError::NoCrossings);
    }
    let m = cross.len();
    debug_assert!(m % 2 == 0, "transversal crossings alternate sides");

    // Arc from cross[idx] to cross[idx+1] (cyclic): inside L or not?
    let arc_inside = |idx: usize| -> bool {
        let a = &cross[idx];
        let b = &cross[(idx + 1) % m];
        let probe = if a.k_edge == b.k_edge && (idx + 1) % m == idx + 1 && a.t_k < b.t_k {
            // consecutive on the same edge: midpoint
            a.point.add(&b.point).mul(&ratio(1, 2))
        } else {
            // first K vertex after the crossing
            k.vertices()[(a.k_edge + 1) % k.len()].clone()
        };
        l.contains_interior(&probe)
    };

    struct RawComponent {
        entry: Crossing,
        exit: Crossing,
        polyline: Vec<Point>,
        k_edges: Vec<usize>,
    }

    let mut raw: Vec<RawComponent> = Vec::new();
    for idx in 0..m {
        if !arc_inside(idx) {
            continue;
        }
        let entry = cross[idx].clone();
        let exit = cross[(idx + 1) % m].clone();
        let mut polyline = vec![entry.point.clone()];
        let mut k_edges = vec![entry.k_edge];
        // K vertices strictly between the two crossings along CCW order.
        let n = k.len();
        let mut e = entry.k_edge;
        loop {
            let same_edge = e == exit.k_edge
                && (e != entry.k_edge || entry.t_k < exit.t_k || polyline.len() > 1);
            if same_edge {
                break;
            }
            e = (e + 1) % n;
            polyline.push(k.vertices()[e].clone());
            k_edges.push(e);
            if k_edges.len() > n + 1 {
                break; // defensive; cannot happen for alternating crossings
            }
            if e == exit.k_edge {
                break;
            }
        }
        polyline.push(exit.point.clone());
        raw.push(RawComponent {
            entry,
            exit,
            polyline,
            k_edges,
        });
    }

    // Pair each component with its pointwise negation.
    let total = raw.len();
    debug_assert!(total % 2 == 0);
    let n_pairs = total / 2;
    let mut order: Vec<usize> = Vec::new(); // representatives then partners
    let mut partner_of: Vec<Option<usize>> = vec![None; total];
    for i in 0..total {
        if partner_of[i].is_some() {
            continue;
        }
        let neg_entry = raw[i].entry.point.neg();
        let j = (0..total)
            .find(|&j| j != i && raw[j].entry.point == neg_entry)
            .expect("central symmetry pairs components");
        partner_of[i] = Some(j);
        partner_of[j] = Some(i);
        order.push(i);
    }
    debug_assert_eq!(order.len(), n_pairs);
    let mut out: Vec<BoundaryComponent> = Vec::with_capacity(total);
    let mut emit = |slot: usize, src: &RawComponent, partner_index: usize| {
        out.push(BoundaryComponent {
            polyline: src.polyline.clone(),
            index: slot,
            partner_index,
            entry: src.entry.clone(),
            exit: src.exit.clone(),
            k_edges: src.k_edges.clone(),
        });
    };
    for (slot, &i) in order.iter().enumerate() {
        emit(slot, &raw[i], slot + n_pairs);
    }
    for (slot, &i) in order.iter().enumerate() {
        let j = partner_of[i].unwrap();
        emit(slot + n_pairs, &raw[j], slot);
    }
    Ok(out)
}

fn direction_key(d: &Direction) -> (Scalar, Scalar) {
    // Canonical representative of the ray through d: scale so the first
    // nonzero coordinate is ±1 with positive leading sign preserved.
    if !d.dx.is_zero() {
        let s = d.dx.abs();
        (&d.dx / &s, &d.dy / &s)
    } else {
        let s = d.dy.abs();
        (Scalar::zero(), &d.dy / &s)
    }
}

/// Builds the largest convex set whose boundary contains the given edge
/// runs and their negations: the intersection of the involved supporting
/// halfplanes and their negations.
fn extension_from_halfplanes(hps: Vec<Halfplane>) -> Result<ExtendedShape, ReductionError> {
    let mut sym: Vec<Halfplane> = Vec::new();
    for h in hps {
        sym.push(h.negated());
        sym.push(h);
    }
    // Dedupe projectively equal constraints, keeping the tightest offset
    // per ray direction (offsets are per unnormalized normal, so compare on
    // the canonical representative).
    let mut canon: Vec<(Scalar, Scalar, Scalar)> = Vec::new(); // (nx, ny, offset)
    for h in &sym {
        let (nx, ny) = direction_key(&h.normal);
        let scale = if !h.normal.dx.is_zero() {
            h.normal.dx.abs()
        } else {
            h.normal.dy.abs()
        };
        let off = &h.offset / &scale;
        if let Some(entry) = canon.iter_mut().find(|(ex, ey, _)| *ex == nx && *ey == ny) {
            if off < entry.2 {
                entry.2 = off;
            }
        } else {
            canon.push((nx, ny, off));
        }
    }
    let lines_distinct: Vec<&(Scalar, Scalar, Scalar)> = {
        let mut seen: Vec<(Scalar, Scalar)> = Vec::new();
        let mut v = Vec::new();
        for c in &canon {
            let line = if c.0.is_zero() {
                (Scalar::zero(), c.1.abs())
            } else {
                let key = direction_key(&Direction::new(c.0.abs(), if c.0.is_positive() { c.1.clone() } else { -&c.1 }));
                key
            };
            if !seen.contains(&line) {
                seen.push(line);
                v.push(c);
            }
        }
        v
    };
    let hps: Vec<Halfplane> = canon
        .iter()
        .map(|(nx, ny, off)| Halfplane {
            normal: Direction::new(nx.clone(), ny.clone()),
            offset: off.clone(),
        })
        .collect();
    if lines_distinct.len() == 1 {
        // All constraints lie on one line pair: an infinite strip.
        let (nx, ny, off) = (&canon[0].0, &canon[0].1, &canon[0].2);
        return Ok(ExtendedShape::Strip {
            normal: Direction::new(nx.clone(), ny.clone()),
            halfwidth: off.clone(),
        });
    }
    // Two or more distinct symmetric line pairs always bound a polygon.
    let poly = intersect_halfplanes(&hps)?;
    Ok(ExtendedShape::Bounded(poly.with_symmetry(Symmetry::Central)?))
}

/// The largest convex set whose boundary contains `S_i ∪ S_{i+n}`: apex
/// construction via the supporting lines of the edges the component runs
/// through, or an infinite strip when the component is a single segment.
pub fn extend_k(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    component_index: usize,
) -> Result<ExtendedShape, ReductionError> {
    let comps = boundary_components(k, l)?;
    let comp = comps
        .get(component_index)
        .ok_or(ReductionError::BadComponentIndex(component_index))?;
    let all = k.halfplanes();
    let hps = comp.k_edges.iter().map(|&e| all[e].clone()).collect();
    extension_from_halfplanes(hps)
}

/// The parallelogram bounded by the supporting lines of `L` at the two
/// component endpoints (and their negations); a strip when the two
/// endpoint normals are parallel.
pub fn extend_l(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    component_index: usize,
) -> Result<ExtendedShape, ReductionError> {
    let comps = boundary_components(k, l)?;
    let comp = comps
        .get(component_index)
        .ok_or(ReductionError::BadComponentIndex(component_index))?;
    let all = l.halfplanes();
    let hps = vec![all[comp.entry.l_edge].clone(), all[comp.exit.l_edge].clone()];
    extension_from_halfplanes(hps)
}

fn strip_candidates(k: &ConvexPolygon, l: &ConvexPolygon) -> Vec<Direction> {
    let mut cands: Vec<Direction> = Vec::new();
    for i in 0..k.len() {
        cands.push(k.edge_outer_normal(i));
    }
    for j in 0..l.len() {
        cands.push(l.edge_outer_normal(j));
    }
    // A fan of 32 rational directions (tan-half-angle parametrization).
    for j in 0..32i64 {
        let t = ratio(j, 8) - int(2);
        let dx = int(1) - &t * &t;
        let dy = int(2) * &t;
        if !(dx.is_zero() && dy.is_zero()) {
            cands.push(Direction::new(dx, dy));
        }
    }
    cands
}

fn truncate_shape(shape: &ExtendedShape, strip: &[Halfplane]) -> Result<ConvexPolygon, ReductionError> {
    match shape {
        ExtendedShape::Bounded(p) => Ok(p.clone()),
        ExtendedShape::Strip { .. } => {
            let mut hps = shape.halfplanes();
            hps.extend(strip.iter().cloned());
            let poly = intersect_halfplanes(&hps)?;
            Ok(poly.with_symmetry(Symmetry::Central)?)
        }
    }
}

/// Truncates unbounded extensions with a wide centrally symmetric strip so
/// the pair becomes bounded without touching the shared boundary geometry.
pub fn bounding_strip(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    k_ext: &ExtendedShape,
    l_ext: &ExtendedShape,
    source_component: usize,
) -> Result<ExtendedPair, ReductionError> {
    if let (ExtendedShape::Bounded(kb), ExtendedShape::Bounded(lb)) = (k_ext, l_ext) {
        return Ok(ExtendedPair {
            k_ext: kb.clone(),
            l_ext: lb.clone(),
            strip_used: None,
            source_component,
        });
    }
    let mut base = k.norm_bound().max(l.norm_bound());
    for s in [k_ext, l_ext] {
        if let ExtendedShape::Bounded(p) = s {
            base = base.max(p.norm_bound());
        }
    }
    let recessions: Vec<Direction> = [k_ext, l_ext]
        .iter()
        .filter_map(|s| match s {
            ExtendedShape::Strip { normal, .. } => {
                Some(Direction::new(-&normal.dy, normal.dx.clone()))
            }
            ExtendedShape::Bounded(_) => None,
        })
        .collect();
    'candidates: for u in strip_candidates(k, l) {
        if recessions.iter().any(|r| u.dot(&r.as_point()).is_zero()) {
            continue;
        }
        // Widen geometrically if the default width clips relevant geometry.
        let mut mult = int(8);
        for _ in 0..30 {
            let c = &mult * &base * (u.dx.abs() + u.dy.abs());
            let strip = vec![
                Halfplane {
                    normal: u.clone(),
                    offset: c.clone(),
                },
                Halfplane {
                    normal: u.neg(),
                    offset: c.clone(),
                },
            ];
            let kt = truncate_shape(k_ext, &strip)?;
            let lt = truncate_shape(l_ext, &strip)?;
            if !check_class_f(&kt, &lt).in_class() {
                continue 'candidates;
            }
            // The truncation must leave the boundary intersection intact:
            // K ⊆ K_ext, L ⊆ L_ext, and intersecting interiors untouched.
            if kt.contains_polygon(k)
                && lt.contains_polygon(l)
                && intersect(&kt, &lt).area() == essential_intersection_area(k_ext, l_ext)?
            {
                return Ok(ExtendedPair {
                    k_ext: kt,
                    l_ext: lt,
                    strip_used: Some(StripChoice {
                        normal: u.clone(),
                        halfwidth: c,
                    }),
                    source_component,
                });
            }
            mult *= int(2);
        }
    }
    Err(ReductionError::NoValidStrip)
}

/// `|K_ext ∩ L_ext|` computed against a huge box, as the reference value the
/// strip truncation must preserve.
fn essential_intersection_area(
    k_ext: &ExtendedShape,
    l_ext: &ExtendedShape,
) -> Result<Scalar, ReductionError> {
    let mut hps = k_ext.halfplanes();
    hps.extend(l_ext.halfplanes());
    // Transversality guarantees boundedness of the intersection itself.
    let poly = intersect_halfplanes(&hps)?;
    Ok(poly.area())
}

/// The full reduction step: one bounded `ExtendedPair` per component pair.
pub fn reduce_pair(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
) -> Result<Vec<ExtendedPair>, ReductionError> {
    let comps = boundary_components(k, l)?;
    let n = comps.len() / 2;
    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let ke = extend_k(k, l, i)?;
        let le = extend_l(k, l, i)?;
        pairs.push(bounding_strip(k, l, &ke, &le, i)?);
    }
    Ok(pairs)
}

/// Linear map `T` with `T(Q) = K_par` (CCW corner correspondence, so
/// `det T > 0`) together with the pulled-back partner `T⁻¹ L`.
pub fn normalize_parallelogram(
    k_par: &ConvexPolygon,
    l: &ConvexPolygon,
) -> Result<(Mat2, ConvexPolygon), ReductionError> {
    if k_par.len() != 4 {
        return Err(ReductionError::NotAParallelogram);
    }
    let v = k_par.vertices();
    if v[2] != v[0].neg() || v[3] != v[1].neg() {
        return Err(ReductionError::NotAParallelogram);
    }
    let two = int(2);
    let col1 = Point::new((&v[0].x - &v[1].x) / &two, (&v[0].y - &v[1].y) / &two);
    let col2 = Point::new((&v[0].x + &v[1].x) / &two, (&v[0].y + &v[1].y) / &two);
    let t = Mat2::new(col1.x, col2.x, col1.y, col2.y);
    debug_assert!(t.det().is_positive());
    let l_image = l.linear_map(&t.inverse()?)?;
    Ok((t, l_image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareCase {
    /// One shape contains the other; the derivative inequality is trivial.
    Containment,
    /// `∂Q ∩ L` confined to two opposite edges of `Q`.
    EdgeCase,
    /// Each quadrilateral holds two vertices of the other.
    CornerCase,
    /// `L` holds corners of `Q` but not vice versa; swap the roles first.
    SwapThenClassify,
}

/// Case analysis for a square-vs-parallelogram pair in the transversal
/// class. A four-component configuration is not classified here and calls
/// for another reduction pass.
pub fn classify_square_case(
    q: &ConvexPolygon,
    l_par: &ConvexPolygon,
) -> Result<SquareCase, ReductionError> {
    if l_par.len() != 4 || l_par.vertices()[2] != l_par.vertices()[0].neg() {
        return Err(ReductionError::NotAParallelogram);
    }
    let l_in_q = l_par
        .vertices()
        .iter()
        .filter(|v| q.contains_interior(v))
        .count();
    let q_in_l = q
        .vertices()
        .iter()
        .filter(|v| l_par.contains_interior(v))
        .count();
    match (l_in_q, q_in_l) {
        (4, _) | (_, 4) => Ok(SquareCase::Containment),
        (2, 0) => Ok(SquareCase::EdgeCase),
        (2, 2) => Ok(SquareCase::CornerCase),
        (0, 2) => Ok(SquareCase::SwapThenClassify),
        _ => Err(ReductionError::UnclassifiedConfiguration),
    }
}
