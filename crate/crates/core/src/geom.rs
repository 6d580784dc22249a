//! Planar geometry kernel.
//!
//! Coordinates are plain `f64`. Predicates take an explicit tolerance and
//! treat it as an exact band: anything closer than `tol` counts as touching.
//! Polygons are stored counterclockwise; [`Polygon::new`] reverses clockwise
//! input and carries the corner labels along.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default distance below which two points are considered the same.
pub const MERGE_TOL: f64 = 1e-9;
/// Default angular tolerance (radians).
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Point2::new(z.re, z.im)
    }

    pub fn lerp(self, o: Point2, s: f64) -> Point2 {
        self + (o - self) * s
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<Complex64> for Point2 {
    fn from(z: Complex64) -> Self {
        Point2::from_complex(z)
    }
}

impl From<Point2> for Complex64 {
    fn from(p: Point2) -> Self {
        p.to_complex()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Orientation of the triple `(a, b, c)`: twice the signed triangle area.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * s)
}

/// Euclidean distance between two closed segments (zero when they cross).
pub fn segment_distance(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> f64 {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Shoelace signed area of a closed ring; positive iff counterclockwise.
pub fn signed_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for k in 0..n {
        acc += ring[k].cross(ring[(k + 1) % n]);
    }
    0.5 * acc
}

fn check_ring(ring: &[Point2], tol: f64) -> Result<()> {
    if ring.len() < 3 {
        return Err(Error::Degenerate(format!(
            "polygon needs at least 3 corners, got {}",
            ring.len()
        )));
    }
    if let Some(p) = ring.iter().find(|p| !p.is_finite()) {
        return Err(Error::Degenerate(format!("non-finite corner {p}")));
    }
    let n = ring.len();
    for k in 0..n {
        if ring[k].dist(ring[(k + 1) % n]) <= tol {
            return Err(Error::Degenerate(format!(
                "corners {} and {} coincide",
                k,
                (k + 1) % n
            )));
        }
    }
    Ok(())
}

/// First pair of sides `(i, j)`, `i < j`, that touch illegally, if any.
///
/// Side `k` runs from corner `k` to corner `k + 1`. Adjacent sides may only
/// share their common corner; all other pairs must stay more than `tol` apart.
pub fn first_crossing(ring: &[Point2], tol: f64) -> Result<Option<(usize, usize)>> {
    check_ring(ring, tol)?;
    let n = ring.len();
    let side = |k: usize| (ring[k], ring[(k + 1) % n]);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a0, a1) = side(i);
            let (b0, b1) = side(j);
            let touching = if j == i + 1 {
                // shared corner a1 == b0
                point_segment_distance(a0, b0, b1) <= tol || point_segment_distance(b1, a0, a1) <= tol
            } else if i == 0 && j == n - 1 {
                // shared corner b1 == a0
                point_segment_distance(a1, b0, b1) <= tol || point_segment_distance(b0, a0, a1) <= tol
            } else {
                segment_distance(a0, a1, b0, b1) <= tol
            };
            if touching {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Whether the closed ring has a non-self-intersecting boundary.
pub fn is_simple(ring: &[Point2], tol: f64) -> Result<bool> {
    Ok(first_crossing(ring, tol)?.is_none())
}

/// Interior angle at `cur` of a counterclockwise ring, in `(0, 2π)`.
fn interior_angle(prev: Point2, cur: Point2, next: Point2) -> f64 {
    let u = next - cur;
    let v = prev - cur;
    let a = u.cross(v).atan2(u.dot(v));
    if a <= 0.0 {
        a + TAU
    } else {
        a
    }
}

/// An isometry `p ↦ linear·p + translation` of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    /// Row-major 2×2 orthogonal matrix.
    pub linear: [[f64; 2]; 2],
    pub translation: Point2,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        linear: [[1.0, 0.0], [0.0, 1.0]],
        translation: Point2::ORIGIN,
    };

    pub fn translation(v: Point2) -> Self {
        Isometry {
            translation: v,
            ..Self::IDENTITY
        }
    }

    /// Counterclockwise rotation by `angle` about `center`.
    pub fn rotation(center: Point2, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let linear = [[c, -s], [s, c]];
        let rot = Isometry {
            linear,
            translation: Point2::ORIGIN,
        };
        Isometry {
            linear,
            translation: center - rot.apply_linear(center),
        }
    }

    /// Reflection across the line through `point` with direction `dir`.
    pub fn reflection(point: Point2, dir: Point2) -> Self {
        let phi = dir.y.atan2(dir.x);
        let (s, c) = (2.0 * phi).sin_cos();
        let linear = [[c, s], [s, -c]];
        let refl = Isometry {
            linear,
            translation: Point2::ORIGIN,
        };
        Isometry {
            linear,
            translation: point - refl.apply_linear(point),
        }
    }

    /// Reflection across the line through `point` along `dir`, followed by a
    /// shift of `shift` along that line.
    pub fn glide(point: Point2, dir: Point2, shift: f64) -> Self {
        let unit = dir * (1.0 / dir.norm());
        Isometry::translation(unit * shift).compose(&Isometry::reflection(point, dir))
    }

    pub fn apply_linear(&self, p: Point2) -> Point2 {
        let m = &self.linear;
        Point2::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.apply_linear(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let a = &self.linear;
        let b = &other.linear;
        let mut linear = [[0.0; 2]; 2];
        for (r, row) in linear.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Isometry {
            linear,
            translation: self.apply_linear(other.translation) + self.translation,
        }
    }

    pub fn invert(&self) -> Isometry {
        // orthogonal: inverse is the transpose
        let m = &self.linear;
        let linear = [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
        let inv = Isometry {
            linear,
            translation: Point2::ORIGIN,
        };
        Isometry {
            linear,
            translation: -inv.apply_linear(self.translation),
        }
    }

    pub fn det(&self) -> f64 {
        let m = &self.linear;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// +1 for rotations and translations, -1 for reflections and glides.
    pub fn orientation(&self) -> i8 {
        if self.det() >= 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let m = &self.linear;
        let c0 = Point2::new(m[0][0], m[1][0]);
        let c1 = Point2::new(m[0][1], m[1][1]);
        (c0.dot(c0) - 1.0).abs() <= tol && (c1.dot(c1) - 1.0).abs() <= tol && c0.dot(c1).abs() <= tol
    }

    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        (0..2).all(|r| (0..2).all(|c| (self.linear[r][c] - other.linear[r][c]).abs() <= tol))
            && self.translation.dist(other.translation) <= tol
    }
}

/// A polygon with labelled corners, stored counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    corners: Vec<Point2>,
    labels: Vec<usize>,
    reversed: bool,
}

impl Polygon {
    /// Builds a polygon labelled `0..n` in input order.
    pub fn new(corners: Vec<Point2>) -> Result<Self> {
        let labels = (0..corners.len()).collect();
        Self::with_labels(corners, labels)
    }

    pub fn with_labels(mut corners: Vec<Point2>, mut labels: Vec<usize>) -> Result<Self> {
        if labels.len() != corners.len() {
            return Err(Error::Argument(format!(
                "{} labels for {} corners",
                labels.len(),
                corners.len()
            )));
        }
        check_ring(&corners, MERGE_TOL)?;
        let reversed = signed_area(&corners) < 0.0;
        if reversed {
            corners.reverse();
            labels.reverse();
        }
        Ok(Polygon {
            corners,
            labels,
            reversed,
        })
    }

    pub fn corners(&self) -> &[Point2] {
        &self.corners
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Whether the input order was clockwise and got reversed.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn corner(&self, k: usize) -> Point2 {
        self.corners[k % self.corners.len()]
    }

    /// Stored index of the corner carrying `label`.
    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn corner_by_label(&self, label: usize) -> Option<Point2> {
        self.index_of_label(label).map(|k| self.corners[k])
    }

    /// Positive area (the ring is counterclockwise unless it is self-crossing).
    pub fn signed_area(&self) -> f64 {
        signed_area(&self.corners)
    }

    pub fn centroid(&self) -> Point2 {
        let a = self.signed_area();
        let n = self.corners.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for k in 0..n {
            let p = self.corners[k];
            let q = self.corners[(k + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point2::new(cx / (6.0 * a), cy / (6.0 * a))
    }

    pub fn is_simple(&self, tol: f64) -> bool {
        matches!(first_crossing(&self.corners, tol), Ok(None))
    }

    pub fn first_crossing(&self, tol: f64) -> Result<Option<(usize, usize)>> {
        first_crossing(&self.corners, tol)
    }

    /// Interior angle at stored corner `k`, in `(0, 2π)`.
    pub fn corner_angle(&self, k: usize) -> Result<f64> {
        let n = self.corners.len();
        let k = k % n;
        let prev = self.corners[(k + n - 1) % n];
        let cur = self.corners[k];
        let next = self.corners[(k + 1) % n];
        if prev.dist(cur) <= MERGE_TOL || next.dist(cur) <= MERGE_TOL {
            return Err(Error::Degenerate(format!("zero-length side at corner {k}")));
        }
        Ok(interior_angle(prev, cur, next))
    }

    pub fn transformed(&self, g: &Isometry) -> Polygon {
        let corners: Vec<Point2> = self.corners.iter().map(|&p| g.apply(p)).collect();
        let mut labels = self.labels.clone();
        let mut corners = corners;
        if g.orientation() < 0 {
            corners.reverse();
            labels.reverse();
        }
        Polygon {
            corners,
            labels,
            reversed: self.reversed,
        }
    }

    pub fn translated(&self, v: Point2) -> Polygon {
        Polygon {
            corners: self.corners.iter().map(|&p| p + v).collect(),
            labels: self.labels.clone(),
            reversed: self.reversed,
        }
    }

    /// Even-odd point containment (boundary points are unspecified).
    pub fn contains(&self, p: Point2) -> bool {
        let n = self.corners.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.corners[i];
            let b = self.corners[j];
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }
}

/// A corner correspondence witnessing that two polygons are congruent.
#[derive(Clone, Debug, PartialEq)]
pub struct Congruence {
    /// `map[j]` is the stored index in the target matching corner `j` of the source.
    pub map: Vec<usize>,
    pub isometry: Isometry,
}

/// Finds an isometry (proper or improper) carrying `a` onto `b`.
pub fn congruent(a: &Polygon, b: &Polygon, tol: f64) -> Option<Congruence> {
    let n = a.len();
    if n != b.len() || n == 0 {
        return None;
    }
    let va = a.corner(1) - a.corner(0);
    for k in 0..n {
        for dir in [1isize, -1] {
            let idx = |j: usize| ((k as isize + dir * j as isize).rem_euclid(n as isize)) as usize;
            let vb = b.corner(idx(1)) - b.corner(idx(0));
            if (va.norm() - vb.norm()).abs() > tol {
                continue;
            }
            let ang_a = va.y.atan2(va.x);
            let ang_b = vb.y.atan2(vb.x);
            let linear = if dir == 1 {
                let (s, c) = (ang_b - ang_a).sin_cos();
                [[c, -s], [s, c]]
            } else {
                let (s, c) = (ang_b + ang_a).sin_cos();
                [[c, s], [s, -c]]
            };
            let lin = Isometry {
                linear,
                translation: Point2::ORIGIN,
            };
            let g = Isometry {
                linear,
                translation: b.corner(idx(0)) - lin.apply_linear(a.corner(0)),
            };
            if (0..n).all(|j| g.apply(a.corner(j)).dist(b.corner(idx(j))) <= tol) {
                return Some(Congruence {
                    map: (0..n).map(idx).collect(),
                    isometry: g,
                });
            }
        }
    }
    None
}

/// Regular `n`-gon with circumradius `r` centred at `c`, first corner at angle `phase`.
pub fn regular_polygon(n: usize, r: f64, c: Point2, phase: f64) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let t = phase + TAU * k as f64 / n as f64;
            c + Point2::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut x = a.rem_euclid(TAU);
    if x > PI {
        x -= TAU;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn square() -> Vec<Point2> {
        vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]
    }

    fn fig6_t1() -> Vec<Point2> {
        vec![p(1.0, 2.0), p(-0.2, 0.8), p(0.0, 0.0), p(1.0, -0.2), p(2.8, 1.0), p(2.0, 1.8)]
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&square(), MERGE_TOL).unwrap());
        let bowtie = [p(0.0, 0.0), p(1.0, 1.0), p(1.0, 0.0), p(0.0, 1.0)];
        assert!(!is_simple(&bowtie, MERGE_TOL).unwrap());
        assert!(is_simple(&fig6_t1(), MERGE_TOL).unwrap());
    }

    #[test]
    fn coincident_corners_are_degenerate() {
        let ring = [p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)];
        assert!(matches!(is_simple(&ring, MERGE_TOL), Err(Error::Degenerate(_))));
    }

    #[test]
    fn touching_inside_band_is_not_simple() {
        // corner 4 pokes to within 1e-12 of side 1
        let ring = [p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(1.0, 2.0), p(1.0, 1e-12), p(0.0, 2.0)];
        assert!(!is_simple(&ring, MERGE_TOL).unwrap());
        let ring = [p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(1.0, 2.0), p(1.0, 1e-3), p(0.0, 2.0)];
        assert!(is_simple(&ring, MERGE_TOL).unwrap());
    }

    #[test]
    fn folded_back_adjacent_sides_are_not_simple() {
        let ring = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)];
        assert!(!is_simple(&ring, MERGE_TOL).unwrap());
    }

    #[test]
    fn signed_area_examples() {
        assert!((signed_area(&square()) - 1.0).abs() < 1e-15);
        let mut cw = square();
        cw.reverse();
        assert!((signed_area(&cw) + 1.0).abs() < 1e-15);
        // regular hexagon with side 1/3: circumradius equals side
        let hex = regular_polygon(6, 1.0 / 3.0, Point2::ORIGIN, 0.0);
        let expected = 3.0 * 3f64.sqrt() / 2.0 / 9.0;
        assert!((signed_area(&hex) - expected).abs() < 1e-15);
        assert!((expected - 0.2887).abs() < 1e-4);
    }

    #[test]
    fn corner_angle_examples() {
        let sq = Polygon::new(square()).unwrap();
        for k in 0..4 {
            assert!((sq.corner_angle(k).unwrap() - PI / 2.0).abs() < 1e-14);
        }
        let hex = Polygon::new(regular_polygon(6, 1.0, Point2::ORIGIN, 0.3)).unwrap();
        for k in 0..6 {
            assert!((hex.corner_angle(k).unwrap() - 2.0 * PI / 3.0).abs() < 1e-14);
        }
        let t1 = Polygon::new(fig6_t1()).unwrap();
        let sum: f64 = (0..6).map(|k| t1.corner_angle(k).unwrap()).sum();
        assert!((sum - 4.0 * PI).abs() < 1e-9);
        // corner at the origin is stored index 2; compare with an atan2 oracle
        let k = t1.corners().iter().position(|q| *q == Point2::ORIGIN).unwrap();
        let a = t1.corner_angle(k).unwrap();
        let to_next = (p(1.0, -0.2).y).atan2(1.0);
        let to_prev = (0.8f64).atan2(-0.2);
        assert!((a - (to_prev - to_next)).abs() < 1e-12);
    }

    #[test]
    fn clockwise_input_is_reversed_with_labels() {
        let mut cw = square();
        cw.reverse();
        let poly = Polygon::new(cw).unwrap();
        assert!(poly.was_reversed());
        assert!(poly.signed_area() > 0.0);
        assert_eq!(poly.corner_by_label(0), Some(p(0.0, 1.0)));
        assert_eq!(poly.corner_by_label(3), Some(p(0.0, 0.0)));
    }

    #[test]
    fn isometry_examples() {
        let rho = Isometry::rotation(p(1.9, 0.4), PI);
        let img = rho.apply(Point2::ORIGIN);
        assert!(img.dist(p(3.8, 0.8)) < 1e-12);

        let g = Isometry::rotation(p(0.3, -1.2), 0.7).compose(&Isometry::reflection(p(1.0, 2.0), p(1.0, 1.0)));
        assert!(g.compose(&g.invert()).approx_eq(&Isometry::IDENTITY, 1e-12));
        assert_eq!(g.orientation(), -1);

        let glide = Isometry::glide(p(0.25, 0.0), p(0.0, 1.0), 0.4);
        let twice = glide.compose(&glide);
        assert_eq!(twice.orientation(), 1);
        assert!(twice.approx_eq(&Isometry::translation(p(0.0, 0.8)), 1e-12));
        assert!(glide.apply(p(0.0, 0.0)).dist(p(0.5, 0.4)) < 1e-12);
    }

    #[test]
    fn congruence_examples() {
        let t1 = Polygon::new(fig6_t1()).unwrap();
        let moved = t1.translated(p(5.0, -3.0));
        let c = congruent(&t1, &moved, 1e-9).unwrap();
        assert_eq!(c.isometry.orientation(), 1);
        assert!(c.isometry.linear[0][0] > 1.0 - 1e-12);

        let scaled = Polygon::new(fig6_t1().into_iter().map(|q| q * 2.0).collect()).unwrap();
        assert!(congruent(&t1, &scaled, 1e-9).is_none());

        let rho = Isometry::rotation(p(1.9, 0.4), PI);
        let t2 = t1.transformed(&rho);
        let c = congruent(&t1, &t2, 1e-9).unwrap();
        assert!(c.isometry.approx_eq(&rho, 1e-9));

        let mirror = t1.transformed(&Isometry::reflection(p(0.0, 0.5), p(1.0, 0.2)));
        let c = congruent(&t1, &mirror, 1e-9).unwrap();
        assert_eq!(c.isometry.orientation(), -1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn iso() -> impl Strategy<Value = Isometry> {
            (-5.0..5.0f64, -5.0..5.0f64, -PI..PI, any::<bool>()).prop_map(|(x, y, a, flip)| {
                let r = Isometry::rotation(Point2::new(x, y), a);
                if flip {
                    r.compose(&Isometry::reflection(Point2::new(y, x), Point2::new(1.0, a)))
                } else {
                    r
                }
            })
        }

        fn hexagon() -> impl Strategy<Value = Vec<Point2>> {
            proptest::collection::vec((0.3..1.0f64, -0.4..0.4f64), 6).prop_map(|v| {
                v.into_iter()
                    .enumerate()
                    .map(|(k, (r, jitter))| {
                        let t = TAU * k as f64 / 6.0 + jitter;
                        Point2::new(r * t.cos(), r * t.sin())
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn simplicity_is_isometry_invariant(ring in hexagon(), g in iso()) {
                let moved: Vec<Point2> = ring.iter().map(|&q| g.apply(q)).collect();
                prop_assert_eq!(is_simple(&ring, 1e-9).unwrap(), is_simple(&moved, 1e-9).unwrap());
            }

            #[test]
            fn area_sign_follows_orientation(ring in hexagon(), g in iso()) {
                let moved: Vec<Point2> = ring.iter().map(|&q| g.apply(q)).collect();
                let a = signed_area(&ring);
                let b = signed_area(&moved);
                prop_assert!((b - g.orientation() as f64 * a).abs() < 1e-12);
            }

            #[test]
            fn simple_hexagon_angles_sum_to_4pi(ring in hexagon()) {
                prop_assume!(is_simple(&ring, 1e-9).unwrap());
                let poly = Polygon::new(ring).unwrap();
                let sum: f64 = (0..6).map(|k| poly.corner_angle(k).unwrap()).sum();
                prop_assert!((sum - 4.0 * PI).abs() < 1e-9);
            }

            #[test]
            fn congruence_is_symmetric(ring in hexagon(), g in iso()) {
                prop_assume!(is_simple(&ring, 1e-9).unwrap());
                let a = Polygon::new(ring).unwrap();
                let b = a.transformed(&g);
                prop_assert!(congruent(&a, &b, 1e-9).is_some());
                prop_assert!(congruent(&b, &a, 1e-9).is_some());
            }
        }
    }
}
