//! Exact-rational planar convex geometry.
//!
//! All predicates here are exact: coordinates are arbitrary-precision
//! rationals and no epsilon ever appears. Directions stay unnormalized so
//! support values and flux weights remain rational.

use crate::scalar::{format_scalar, parse_scalar, Scalar};
use num::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("polygon must have at least 3 vertices")]
    TooFewVertices,
    #[error("vertex sequence is not strictly convex counterclockwise")]
    NotConvex,
    #[error("polygon is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("polygon is not unconditionally symmetric")]
    NotUnconditional,
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("linear map is singular")]
    SingularMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn of(x: i64, y: i64) -> Self {
        Point::new(crate::scalar::int(x), crate::scalar::int(y))
    }

    pub fn neg(&self) -> Point {
        Point::new(-&self.x, -&self.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn mul(&self, s: &Scalar) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    /// `|x| + |y|`, a rational norm bound.
    pub fn norm_bound(&self) -> Scalar {
        self.x.abs() + self.y.abs()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_scalar(&self.x), format_scalar(&self.y))
    }
}

/// An unnormalized direction. Equality is projective with positive factor:
/// `u == v` iff `v = λu` for some `λ > 0`.
#[derive(Debug, Clone)]
pub struct Direction {
    pub dx: Scalar,
    pub dy: Scalar,
}

impl Direction {
    pub fn new(dx: Scalar, dy: Scalar) -> Self {
        assert!(
            !(dx.is_zero() && dy.is_zero()),
            "direction must be nonzero"
        );
        Direction { dx, dy }
    }

    pub fn of(dx: i64, dy: i64) -> Self {
        Direction::new(crate::scalar::int(dx), crate::scalar::int(dy))
    }

    pub fn as_point(&self) -> Point {
        Point::new(self.dx.clone(), self.dy.clone())
    }

    pub fn neg(&self) -> Direction {
        Direction::new(-&self.dx, -&self.dy)
    }

    pub fn dot(&self, p: &Point) -> Scalar {
        &self.dx * &p.x + &self.dy * &p.y
    }

    pub fn cross(&self, o: &Direction) -> Scalar {
        &self.dx * &o.dy - &self.dy * &o.dx
    }

    /// Projectively parallel, same or opposite sense.
    pub fn parallel(&self, o: &Direction) -> bool {
        self.cross(o).is_zero()
    }
}

impl PartialEq for Direction {
    fn eq(&self, o: &Self) -> bool {
        self.cross(o).is_zero() && (&self.dx * &o.dx + &self.dy * &o.dy).is_positive()
    }
}
impl Eq for Direction {}

/// Sign of the cross product `(q - p) × (r - p)`: `+1` for a counterclockwise
/// turn, `0` for collinear points, `-1` for a clockwise turn.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i8 {
    let v = q.sub(p).cross(&r.sub(p));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    None,
    Central,
    Unconditional,
}

/// The closed halfplane `{x : <normal, x> <= offset}`.
#[derive(Debug, Clone)]
pub struct Halfplane {
    pub normal: Direction,
    pub offset: Scalar,
}

impl Halfplane {
    pub fn contains(&self, p: &Point) -> bool {
        self.normal.dot(p) <= self.offset
    }

    pub fn negated(&self) -> Halfplane {
        Halfplane {
            normal: self.normal.neg(),
            offset: self.offset.clone(),
        }
    }
}

/// A strictly convex polygon: counterclockwise vertex list, no three
/// consecutive vertices collinear, positive area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    symmetry: Symmetry,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>, symmetry: Symmetry) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices);
        }
        let n = vertices.len();
        for i in 0..n {
            let p = &vertices[(i + n - 1) % n];
            let q = &vertices[i];
            let r = &vertices[(i + 1) % n];
            if orientation(p, q, r) != 1 {
                return Err(GeomError::NotConvex);
            }
        }
        let poly = ConvexPolygon { vertices, symmetry };
        match symmetry {
            Symmetry::None => {}
            Symmetry::Central => {
                if !poly.is_centrally_symmetric() {
                    return Err(GeomError::NotCentrallySymmetric);
                }
            }
            Symmetry::Unconditional => {
                if !poly.is_unconditional() {
                    return Err(GeomError::NotUnconditional);
                }
            }
        }
        Ok(poly)
    }

    pub fn from_i64(coords: &[(i64, i64)], symmetry: Symmetry) -> Result<Self, GeomError> {
        ConvexPolygon::new(
            coords.iter().map(|&(x, y)| Point::of(x, y)).collect(),
            symmetry,
        )
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: Scalar, x1: Scalar, y0: Scalar, y1: Scalar) -> Result<Self, GeomError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(GeomError::DegenerateInput("empty rectangle".into()));
        }
        let symmetry = if x0 == -&x1 && y0 == -&y1 {
            Symmetry::Unconditional
        } else {
            Symmetry::None
        };
        ConvexPolygon::new(
            vec![
                Point::new(x1.clone(), y0.clone()),
                Point::new(x1, y1.clone()),
                Point::new(x0.clone(), y1),
                Point::new(x0, y0),
            ],
            symmetry,
        )
    }

    /// The unit square `Q = [-1,1]²`.
    pub fn unit_square() -> Self {
        ConvexPolygon::from_i64(&[(1, -1), (1, 1), (-1, 1), (-1, -1)], Symmetry::Unconditional)
            .expect("unit square is valid")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Re-tag the symmetry flag, revalidating the claimed invariant.
    pub fn with_symmetry(self, symmetry: Symmetry) -> Result<Self, GeomError> {
        ConvexPolygon::new(self.vertices, symmetry)
    }

    fn is_centrally_symmetric(&self) -> bool {
        // Strict convexity makes vertices distinct, so multiset equality with
        // the negation reduces to membership of each -v.
        use std::collections::HashSet;
        let set: HashSet<&Point> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&v.neg()))
    }

    fn is_unconditional(&self) -> bool {
        use std::collections::HashSet;
        let set: HashSet<&Point> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| {
            set.contains(&Point::new(-&v.x, v.y.clone()))
                && set.contains(&Point::new(v.x.clone(), -&v.y))
        })
    }

    /// Exact shoelace area; positive for the maintained CCW orientation.
    pub fn area(&self) -> Scalar {
        let n = self.vertices.len();
        let mut twice = Scalar::zero();
        for i in 0..n {
            twice += self.vertices[i].cross(&self.vertices[(i + 1) % n]);
        }
        twice / crate::scalar::int(2)
    }

    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    /// Unnormalized outward normal `(dy, -dx)` of directed edge `i`.
    pub fn edge_outer_normal(&self, i: usize) -> Direction {
        let (a, b) = self.edge(i);
        let d = b.sub(a);
        Direction::new(d.y, -d.x)
    }

    /// Supporting halfplanes, one per edge, with `<n, x> <= <n, v_i>`.
    pub fn halfplanes(&self) -> Vec<Halfplane> {
        (0..self.len())
            .map(|i| {
                let n = self.edge_outer_normal(i);
                let offset = n.dot(self.edge(i).0);
                Halfplane { normal: n, offset }
            })
            .collect()
    }

    /// Support value and a witnessing vertex (ties broken by lowest index).
    pub fn support(&self, u: &Direction) -> (Scalar, &Point) {
        let mut best = 0;
        let mut best_val = u.dot(&self.vertices[0]);
        for (i, v) in self.vertices.iter().enumerate().skip(1) {
            let val = u.dot(v);
            if val > best_val {
                best_val = val;
                best = i;
            }
        }
        (best_val, &self.vertices[best])
    }

    /// Closed containment: on the boundary counts as inside.
    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes().iter().all(|h| h.contains(p))
    }

    pub fn contains_interior(&self, p: &Point) -> bool {
        self.halfplanes()
            .iter()
            .all(|h| h.normal.dot(p) < h.offset)
    }

    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn scale(&self, a: &Scalar) -> Result<Self, GeomError> {
        if !a.is_positive() {
            return Err(GeomError::NonPositiveScale);
        }
        Ok(ConvexPolygon {
            vertices: self.vertices.iter().map(|v| v.mul(a)).collect(),
            symmetry: self.symmetry,
        })
    }

    pub fn negation(&self) -> Self {
        // Point reflection is a rotation by pi, so the order stays CCW.
        ConvexPolygon {
            vertices: self.vertices.iter().map(Point::neg).collect(),
            symmetry: self.symmetry,
        }
    }

    pub fn linear_map(&self, t: &Mat2) -> Result<Self, GeomError> {
        let det = t.det();
        if det.is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| t.apply(v)).collect();
        if det.is_negative() {
            vertices.reverse();
        }
        // Symmetry: central symmetry survives any linear map; unconditional
        // symmetry generally does not.
        let symmetry = match self.symmetry {
            Symmetry::None => Symmetry::None,
            _ => Symmetry::Central,
        };
        ConvexPolygon::new(vertices, symmetry)
    }

    /// Max of `|x| + |y|` over the vertices.
    pub fn norm_bound(&self) -> Scalar {
        self.vertices
            .iter()
            .map(Point::norm_bound)
            .max()
            .expect("nonempty vertex list")
    }
}

/// 2×2 rational matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            crate::scalar::int(1),
            Scalar::zero(),
            Scalar::zero(),
            crate::scalar::int(1),
        )
    }

    pub fn diag(a: Scalar, d: Scalar) -> Self {
        Mat2::new(a, Scalar::zero(), Scalar::zero(), d)
    }

    pub fn det(&self) -> Scalar {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(&self.a * &p.x + &self.b * &p.y, &self.c * &p.x + &self.d * &p.y)
    }

    pub fn inverse(&self) -> Result<Mat2, GeomError> {
        let det = self.det();
        if det.is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        Ok(Mat2::new(
            &self.d / &det,
            -&self.b / &det,
            -&self.c / &det,
            &self.a / &det,
        ))
    }
}

/// Andrew monotone chain with strict turns; interior and duplicate points
/// are dropped. Errors if all points are collinear.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon, GeomError> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeomError::DegenerateInput(
            "need at least 3 distinct points".into(),
        ));
    }
    let build = |iter: &mut dyn Iterator<Item = &Point>| {
        let mut chain: Vec<Point> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && orientation(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= 0
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain
    };
    let mut lower = build(&mut pts.iter());
    let mut upper = build(&mut pts.iter().rev());
    lower.pop();
    upper.pop();
    let mut hull = lower;
    hull.extend(upper);
    if hull.len() < 3 {
        return Err(GeomError::DegenerateInput("all points collinear".into()));
    }
    ConvexPolygon::new(hull, Symmetry::None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Polygon(ConvexPolygon),
    Empty,
}

impl Intersection {
    pub fn area(&self) -> Scalar {
        match self {
            Intersection::Polygon(p) => p.area(),
            Intersection::Empty => Scalar::zero(),
        }
    }

    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Intersection::Polygon(p) => Some(p),
            Intersection::Empty => None,
        }
    }
}

/// Clips a CCW vertex loop by one halfplane (one Sutherland–Hodgman pass).
fn clip_loop(vertices: &[Point], h: &Halfplane) -> Vec<Point> {
    let mut out = Vec::with_capacity(vertices.len() + 1);
    let n = vertices.len();
    for i in 0..n {
        let cur = &vertices[i];
        let nxt = &vertices[(i + 1) % n];
        let vc = h.normal.dot(cur);
        let vn = h.normal.dot(nxt);
        let cur_in = vc <= h.offset;
        let nxt_in = vn <= h.offset;
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != nxt_in {
            // Edge crosses the boundary line; vn != vc here.
            let t = (&h.offset - &vc) / (&vn - &vc);
            out.push(cur.add(&nxt.sub(cur).mul(&t)));
        }
    }
    out
}

/// Removes duplicate and collinear vertices from a weakly convex CCW loop.
fn canonicalize_loop(mut vertices: Vec<Point>) -> Vec<Point> {
    vertices.dedup();
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    let n = vertices.len();
    if n < 3 {
        return vertices;
    }
    let mut keep = Vec::with_capacity(n);
    for i in 0..n {
        let p = &vertices[(i + n - 1) % n];
        let q = &vertices[i];
        let r = &vertices[(i + 1) % n];
        if orientation(p, q, r) != 0 {
            keep.push(q.clone());
        }
    }
    keep
}

/// Exact convex intersection by successive halfplane clipping of `p` against
/// the supporting halfplanes of `r`. Zero-area contact counts as `Empty`.
pub fn intersect(p: &ConvexPolygon, r: &ConvexPolygon) -> Intersection {
    let mut verts: Vec<Point> = p.vertices().to_vec();
    for h in r.halfplanes() {
        verts = clip_loop(&verts, &h);
        if verts.is_empty() {
            return Intersection::Empty;
        }
    }
    let verts = canonicalize_loop(verts);
    if verts.len() < 3 {
        return Intersection::Empty;
    }
    let symmetry = match (p.symmetry(), r.symmetry()) {
        (Symmetry::Unconditional, Symmetry::Unconditional) => Symmetry::Unconditional,
        (Symmetry::None, _) | (_, Symmetry::None) => Symmetry::None,
        _ => Symmetry::Central,
    };
    match ConvexPolygon::new(verts, symmetry) {
        Ok(poly) => Intersection::Polygon(poly),
        Err(_) => Intersection::Empty, // degenerate sliver of zero area
    }
}

/// Intersection of finitely many halfplanes, assuming it is bounded with
/// nonempty interior. Candidate vertices are all pairwise line crossings that
/// satisfy every constraint.
pub fn intersect_halfplanes(hps: &[Halfplane]) -> Result<ConvexPolygon, GeomError> {
    let mut candidates: Vec<Point> = Vec::new();
    for i in 0..hps.len() {
        for j in (i + 1)..hps.len() {
            let (a, b) = (&hps[i], &hps[j]);
            let det = a.normal.cross(&b.normal);
            if det.is_zero() {
                continue;
            }
            let x = (&a.offset * &b.normal.dy - &b.offset * &a.normal.dy) / &det;
            let y = (&a.normal.dx * &b.offset - &b.normal.dx * &a.offset) / &det;
            let p = Point::new(x, y);
            if hps.iter().all(|h| h.contains(&p)) {
                candidates.push(p);
            }
        }
    }
    convex_hull(&candidates)
}

/// A two-sided rational bracket around an irrational distance value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBracket {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl DistanceBracket {
    pub fn contains_f64(&self, v: f64) -> bool {
        crate::scalar::to_f64(&self.lo) <= v && v <= crate::scalar::to_f64(&self.hi)
    }
}

fn point_segment_dist_sq(p: &Point, a: &Point, b: &Point) -> Scalar {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let denom = ab.dot(&ab);
    let mut t = ap.dot(&ab) / &denom;
    let zero = Scalar::zero();
    let one = crate::scalar::int(1);
    if t < zero {
        t = zero;
    } else if t > one {
        t = one;
    }
    let closest = a.add(&ab.mul(&t));
    let d = p.sub(&closest);
    d.dot(&d)
}

fn point_polygon_dist_sq(p: &Point, poly: &ConvexPolygon) -> Scalar {
    if poly.contains(p) {
        return Scalar::zero();
    }
    (0..poly.len())
        .map(|i| {
            let (a, b) = poly.edge(i);
            point_segment_dist_sq(p, a, b)
        })
        .min()
        .expect("polygon has edges")
}

/// Hausdorff distance between convex polygons. The supremum is attained at
/// vertices, so the squared distance is exact; the reported value is a
/// rational bracket of width ≤ 10⁻¹³ around the square root.
pub fn hausdorff_distance(p: &ConvexPolygon, r: &ConvexPolygon) -> DistanceBracket {
    let mut worst = Scalar::zero();
    for v in p.vertices() {
        worst = worst.max(point_polygon_dist_sq(v, r));
    }
    for v in r.vertices() {
        worst = worst.max(point_polygon_dist_sq(v, p));
    }
    let (lo, hi) = crate::scalar::sqrt_bracket(&worst);
    DistanceBracket { lo, hi }
}

// ---------------------------------------------------------------------------
// JSON format: {"vertices": [["p/q", "r/s"], ...], "symmetry": "central"}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<[String; 2]>,
    symmetry: Symmetry,
}

impl Serialize for ConvexPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolygonJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| [format_scalar(&v.x), format_scalar(&v.y)])
                .collect(),
            symmetry: self.symmetry,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolygonJson::deserialize(d)?;
        let vertices = raw
            .vertices
            .iter()
            .map(|[x, y]| {
                Ok(Point::new(
                    parse_scalar(x).map_err(D::Error::custom)?,
                    parse_scalar(y).map_err(D::Error::custom)?,
                ))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        ConvexPolygon::new(vertices, raw.symmetry).map_err(D::Error::custom)
    }
}
