//! Planar shapes: a closed convex outer region minus finitely many open
//! convex holes.
//!
//! Holes are open polygons, open discs, or open segments ("slits"). The inner
//! boundary of such a shape is the union of the hole boundaries, its core is
//! the convex hull of the holes minus their interiors, and two shapes are
//! equivalent exactly when their hole arrangements are congruent.
//!
//! Coordinates are [`ExactReal`], so data such as `(1/2, sqrt(3)/2)` is exact.
//! Every predicate below is decided without rounding.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactLength, ExactReal};
use crate::metspace::SpaceOracle;

/// Maximum number of holes accepted by the congruence search.
pub const MAX_HOLES: usize = 12;

/// A point of the plane with exact coordinates; serialised as `[x, y]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[ExactReal; 2]", into = "[ExactReal; 2]")]
pub struct Point2 {
    pub x: ExactReal,
    pub y: ExactReal,
}

impl From<[ExactReal; 2]> for Point2 {
    fn from([x, y]: [ExactReal; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point2> for [ExactReal; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point2 {
    pub fn new(x: ExactReal, y: ExactReal) -> Self {
        Self { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Self::new(ExactReal::from_int(x), ExactReal::from_int(y))
    }

    pub fn rational(x: BigRational, y: BigRational) -> Self {
        Self::new(ExactReal::from_rational(x), ExactReal::from_rational(y))
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &ExactReal) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point2) -> ExactReal {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point2) -> ExactReal {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> ExactReal {
        self.dot(self)
    }

    /// `self + t·(other − self)`.
    pub fn lerp(&self, other: &Point2, t: &ExactReal) -> Point2 {
        self.add(&other.sub(self).scale(t))
    }

    pub fn dist2(&self, o: &Point2) -> ExactReal {
        self.sub(o).norm2()
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }
}

fn orient(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    b.sub(a).cross(&c.sub(a)).signum()
}

/// `p` on the closed segment `[a, b]`.
fn on_closed_segment(a: &Point2, p: &Point2, b: &Point2) -> bool {
    if a == b {
        return p == a;
    }
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let d = b.sub(a);
    let t = p.sub(a).dot(&d);
    !t.is_negative() && t <= d.norm2()
}

/// `p` on the open segment `(a, b)`.
fn on_open_segment(a: &Point2, p: &Point2, b: &Point2) -> bool {
    p != a && p != b && on_closed_segment(a, p, b)
}

fn point_segment_dist2(p: &Point2, a: &Point2, b: &Point2) -> ExactReal {
    let d = b.sub(a);
    let len2 = d.norm2();
    if len2.is_zero() {
        return p.dist2(a);
    }
    let t = p.sub(a).dot(&d) / &len2;
    if t.is_negative() {
        p.dist2(a)
    } else if t > ExactReal::one() {
        p.dist2(b)
    } else {
        p.dist2(&a.lerp(b, &t))
    }
}

/// A closed disc given by its centre and squared radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Disc {
    pub center: Point2,
    pub r2: ExactReal,
}

/// The closed convex outer region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConvexBody2D {
    Plane,
    /// `{p : normal·p ≤ offset}`.
    Halfplane {
        normal: Point2,
        offset: ExactReal,
    },
    /// Convex polygon; either orientation is accepted.
    Polygon {
        vertices: Vec<Point2>,
    },
    Disc {
        center: Point2,
        r2: ExactReal,
    },
    /// `{p : (p − c)ᵀ M (p − c) ≤ 1}` with `M` symmetric positive definite.
    Ellipse {
        center: Point2,
        matrix: [[ExactReal; 2]; 2],
    },
    /// Convex hull of finitely many points and discs.
    Hull {
        #[serde(default)]
        points: Vec<Point2>,
        #[serde(default)]
        discs: Vec<Disc>,
    },
}

/// A removed open convex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Hole {
    /// Open interior of a convex polygon.
    Polygon { vertices: Vec<Point2> },
    /// Open disc.
    Disc { center: Point2, r2: ExactReal },
    /// Open segment between two points.
    Slit { from: Point2, to: Point2 },
}

impl Hole {
    /// The open set contains `p`.
    pub fn contains_open(&self, p: &Point2) -> bool {
        match self {
            Hole::Polygon { vertices } => polygon_edges(vertices).all(|(a, b)| orient(a, b, p) == Ordering::Greater),
            Hole::Disc { center, r2 } => p.dist2(center) < *r2,
            Hole::Slit { from, to } => on_open_segment(from, p, to),
        }
    }

    /// The closure contains `p`.
    pub fn contains_closed(&self, p: &Point2) -> bool {
        match self {
            Hole::Polygon { vertices } => polygon_edges(vertices).all(|(a, b)| orient(a, b, p) != Ordering::Less),
            Hole::Disc { center, r2 } => p.dist2(center) <= *r2,
            Hole::Slit { from, to } => on_closed_segment(from, p, to),
        }
    }

    pub fn is_two_dimensional(&self) -> bool {
        !matches!(self, Hole::Slit { .. })
    }

    /// Same hole with polygons counterclockwise from their least vertex and slits ordered.
    fn canonical(&self) -> Hole {
        match self {
            Hole::Polygon { vertices } => Hole::Polygon {
                vertices: canonical_polygon(vertices),
            },
            Hole::Disc { .. } => self.clone(),
            Hole::Slit { from, to } => {
                let (a, b) = if from <= to { (from, to) } else { (to, from) };
                Hole::Slit {
                    from: a.clone(),
                    to: b.clone(),
                }
            }
        }
    }

    fn map(&self, m: &RigidMotion2D) -> Hole {
        match self {
            Hole::Polygon { vertices } => Hole::Polygon {
                vertices: vertices.iter().map(|v| m.apply(v)).collect(),
            },
            Hole::Disc { center, r2 } => Hole::Disc {
                center: m.apply(center),
                r2: r2.clone(),
            },
            Hole::Slit { from, to } => Hole::Slit {
                from: m.apply(from),
                to: m.apply(to),
            },
        }
    }
}

fn polygon_edges(v: &[Point2]) -> impl Iterator<Item = (&Point2, &Point2)> {
    (0..v.len()).map(move |i| (&v[i], &v[(i + 1) % v.len()]))
}

fn signed_area2(v: &[Point2]) -> ExactReal {
    polygon_edges(v).map(|(a, b)| a.cross(b)).sum()
}

fn canonical_polygon(v: &[Point2]) -> Vec<Point2> {
    let mut out = v.to_vec();
    if signed_area2(&out).is_negative() {
        out.reverse();
    }
    if let Some(start) = (0..out.len()).min_by(|&i, &j| out[i].cmp(&out[j])) {
        out.rotate_left(start);
    }
    out
}

/// Checks strict convexity and returns the counterclockwise vertex list.
fn validate_polygon(v: &[Point2], what: &str) -> Result<Vec<Point2>> {
    if v.len() < 3 {
        return Err(Error::InvalidShape(format!("{what} needs at least three vertices")));
    }
    let ccw = canonical_polygon(v);
    let n = ccw.len();
    for i in 0..n {
        let (a, b) = (&ccw[i], &ccw[(i + 1) % n]);
        let strictly_left = (0..n)
            .filter(|&k| k != i && k != (i + 1) % n)
            .all(|k| orient(a, b, &ccw[k]) == Ordering::Greater);
        if !strictly_left {
            return Err(Error::InvalidShape(format!("{what} is not strictly convex")));
        }
    }
    Ok(ccw)
}

fn validate_disc(r2: &ExactReal, what: &str) -> Result<()> {
    if r2.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!(
            "{what} must have a positive squared radius"
        )))
    }
}

impl ConvexBody2D {
    /// Closed membership.
    pub fn contains(&self, p: &Point2) -> Result<bool> {
        Ok(match self {
            ConvexBody2D::Plane => true,
            ConvexBody2D::Halfplane { normal, offset } => normal.dot(p) <= *offset,
            ConvexBody2D::Polygon { vertices } => {
                polygon_edges(vertices).all(|(a, b)| orient(a, b, p) != Ordering::Less)
            }
            ConvexBody2D::Disc { center, r2 } => p.dist2(center) <= *r2,
            ConvexBody2D::Ellipse { center, matrix } => quad_form(matrix, &p.sub(center)) <= ExactReal::one(),
            ConvexBody2D::Hull { points, discs } => hull_contains(points, discs, p)?,
        })
    }

    fn validated(self) -> Result<Self> {
        match self {
            ConvexBody2D::Halfplane { ref normal, .. } if normal.norm2().is_zero() => {
                Err(Error::InvalidShape("half-plane normal is zero".into()))
            }
            ConvexBody2D::Polygon { vertices } => Ok(ConvexBody2D::Polygon {
                vertices: validate_polygon(&vertices, "outer polygon")?,
            }),
            ConvexBody2D::Disc { ref r2, .. } => {
                validate_disc(r2, "outer disc")?;
                Ok(self)
            }
            ConvexBody2D::Ellipse { ref matrix, .. } => {
                let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
                if matrix[0][1] != matrix[1][0] || !matrix[0][0].is_positive() || !det.is_positive() {
                    return Err(Error::InvalidShape(
                        "ellipse matrix must be symmetric positive definite".into(),
                    ));
                }
                Ok(self)
            }
            ConvexBody2D::Hull { ref points, ref discs } => {
                if points.is_empty() && discs.is_empty() {
                    return Err(Error::InvalidShape("hull of nothing".into()));
                }
                for d in discs {
                    validate_disc(&d.r2, "hull disc")?;
                }
                Ok(self)
            }
            other => Ok(other),
        }
    }

    /// The closure of `hole` lies in this closed body.
    fn contains_hole(&self, hole: &Hole) -> Result<bool> {
        match hole {
            Hole::Polygon { vertices } => {
                for v in vertices {
                    if !self.contains(v)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Hole::Slit { from, to } => Ok(self.contains(from)? && self.contains(to)?),
            Hole::Disc { center, r2 } => self.contains_disc(center, r2),
        }
    }

    fn contains_disc(&self, c: &Point2, r2: &ExactReal) -> Result<bool> {
        match self {
            ConvexBody2D::Plane => Ok(true),
            ConvexBody2D::Halfplane { normal, offset } => {
                // offset − n·c ≥ r·|n|
                let gap = offset - &normal.dot(c);
                Ok(!gap.is_negative() && gap.square() >= r2 * &normal.norm2())
            }
            ConvexBody2D::Polygon { vertices } => Ok(polygon_edges(vertices).all(|(a, b)| {
                let e = b.sub(a);
                let cr = e.cross(&c.sub(a));
                !cr.is_negative() && cr.square() >= r2 * &e.norm2()
            })),
            ConvexBody2D::Disc { center, r2: big } => Ok(disc_in_disc(c, r2, center, big)),
            ConvexBody2D::Ellipse { center, matrix } => disc_in_ellipse(c, r2, center, matrix),
            ConvexBody2D::Hull { discs, .. } => {
                if discs.iter().any(|d| disc_in_disc(c, r2, &d.center, &d.r2)) {
                    Ok(true)
                } else {
                    Err(Error::InvalidShape(
                        "a disc hole inside a hull outer must lie in one of the hull's discs".into(),
                    ))
                }
            }
        }
    }
}

fn quad_form(m: &[[ExactReal; 2]; 2], v: &Point2) -> ExactReal {
    &(&m[0][0] * &v.x.square()) + &(&(&m[0][1] + &m[1][0]) * &(&v.x * &v.y)) + &m[1][1] * &v.y.square()
}

/// Closed disc `(c, r)` inside closed disc `(C, R)`: `|c − C| + r ≤ R`.
fn disc_in_disc(c: &Point2, r2: &ExactReal, big_c: &Point2, big_r2: &ExactReal) -> bool {
    let slack = big_r2 + r2 - c.dist2(big_c);
    big_r2 >= r2 && !slack.is_negative() && slack.square() >= &(big_r2 * r2) * &ExactReal::from_int(4)
}

/// Closed discs are disjoint: `|c₁ − c₂| > r₁ + r₂`.
fn discs_disjoint(c1: &Point2, a: &ExactReal, c2: &Point2, b: &ExactReal) -> bool {
    let slack = c1.dist2(c2) - a - b;
    slack.is_positive() && slack.square() > &(a * b) * &ExactReal::from_int(4)
}

type Poly = Vec<ExactReal>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(ExactReal::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![ExactReal::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    poly_trim(out)
}

fn poly_scale(a: &Poly, k: &ExactReal) -> Poly {
    poly_trim(a.iter().map(|x| x * k).collect())
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactReal::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(out)
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = poly_trim(a.clone());
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let k = r.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &(&k * y);
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_derivative(a: &Poly) -> Poly {
    poly_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * &ExactReal::from_int(i as i64))
            .collect(),
    )
}

/// Number of distinct real roots (Sturm's theorem).
fn real_root_count(p: &Poly) -> usize {
    let p = poly_trim(p.clone());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), poly_derivative(&p)];
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(poly_scale(&r, &ExactReal::from_int(-1)));
    }
    let changes = |at_plus: bool| {
        let signs: Vec<Ordering> = seq
            .iter()
            .map(|q| {
                let s = q.last().unwrap().signum();
                if !at_plus && (q.len() - 1) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            })
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(false) - changes(true)
}

/// Closed disc strictly inside the ellipse `(p − e)ᵀM(p − e) ≤ 1`.
///
/// With `u(t) = ((1 − t²), 2t)/(1 + t²)` the boundary condition becomes a
/// quartic `P(t) > 0` for all real `t`, plus `P`'s leading coefficient for `u = (−1, 0)`.
fn disc_in_ellipse(c: &Point2, r2: &ExactReal, e: &Point2, m: &[[ExactReal; 2]; 2]) -> Result<bool> {
    let r = r2
        .sqrt()
        .ok_or_else(|| Error::NotRepresentable(format!("radius sqrt({r2}) of a disc inside an ellipse")))?;
    let w = c.sub(e);
    let s: Poly = vec![ExactReal::one(), ExactReal::zero(), ExactReal::one()];
    let a = poly_add(
        &poly_scale(&s, &w.x),
        &poly_scale(&vec![ExactReal::one(), ExactReal::zero(), ExactReal::from_int(-1)], &r),
    );
    let b = poly_add(
        &poly_scale(&s, &w.y),
        &poly_scale(&vec![ExactReal::zero(), ExactReal::from_int(2)], &r),
    );
    let form = poly_add(
        &poly_add(
            &poly_scale(&poly_mul(&a, &a), &m[0][0]),
            &poly_scale(&poly_mul(&a, &b), &(&m[0][1] + &m[1][0])),
        ),
        &poly_scale(&poly_mul(&b, &b), &m[1][1]),
    );
    let p = poly_add(&poly_mul(&s, &s), &poly_scale(&form, &ExactReal::from_int(-1)));
    let positive_at_zero = p.first().is_some_and(ExactReal::is_positive);
    let positive_at_infinity = p.len() == 5 && p[4].is_positive();
    Ok(positive_at_zero && positive_at_infinity && real_root_count(&p) == 0)
}

/// `p` lies in the convex hull of the given points and closed discs.
pub fn hull_contains(points: &[Point2], discs: &[Disc], p: &Point2) -> Result<bool> {
    if points.contains(p) || discs.iter().any(|d| p.dist2(&d.center) <= d.r2) {
        return Ok(true);
    }
    // Replace each disc by its two tangent points as seen from p; then p is
    // in the hull iff the origin is in the hull of the directions.
    let mut dirs: Vec<Point2> = points.iter().map(|q| q.sub(p)).collect();
    for d in discs {
        let w = p.sub(&d.center);
        let l = w.norm2();
        let k = &d.r2 / &l;
        let root = (&d.r2 * &(&l - &d.r2))
            .sqrt()
            .ok_or_else(|| Error::NotRepresentable(format!("tangent points from {p} to the disc at {}", d.center)))?;
        let h = &root / &l;
        let perp = Point2::new(-&w.y, w.x.clone());
        let base = d.center.add(&w.scale(&k));
        for sgn in [1, -1] {
            let t = base.add(&perp.scale(&(&h * &ExactReal::from_int(sgn))));
            dirs.push(t.sub(p));
        }
    }
    Ok(origin_in_hull(&dirs))
}

fn origin_in_hull(g: &[Point2]) -> bool {
    let zero = Point2::ints(0, 0);
    if g.contains(&zero) {
        return true;
    }
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            if g[i].cross(&g[j]).is_zero() && g[i].dot(&g[j]).is_negative() {
                return true;
            }
            for k in (j + 1)..g.len() {
                let s1 = g[i].cross(&g[j]).signum();
                let s2 = g[j].cross(&g[k]).signum();
                let s3 = g[k].cross(&g[i]).signum();
                let all_nonneg = [s1, s2, s3].iter().all(|s| *s != Ordering::Less);
                let all_nonpos = [s1, s2, s3].iter().all(|s| *s != Ordering::Greater);
                if (all_nonneg || all_nonpos) && [s1, s2, s3].iter().any(|s| *s != Ordering::Equal) {
                    return true;
                }
            }
        }
    }
    false
}

fn separated_on_axes(a: &[Point2], b: &[Point2], axes: &[Point2]) -> bool {
    axes.iter().any(|n| {
        let pa: Vec<ExactReal> = a.iter().map(|p| n.dot(p)).collect();
        let pb: Vec<ExactReal> = b.iter().map(|p| n.dot(p)).collect();
        let (amin, amax) = (pa.iter().min().unwrap(), pa.iter().max().unwrap());
        let (bmin, bmax) = (pb.iter().min().unwrap(), pb.iter().max().unwrap());
        amax < bmin || bmax < amin
    })
}

fn edge_normals(v: &[Point2]) -> Vec<Point2> {
    if v.len() == 2 {
        let d = v[1].sub(&v[0]);
        return vec![Point2::new(-&d.y, d.x.clone()), d];
    }
    polygon_edges(v)
        .map(|(a, b)| {
            let d = b.sub(a);
            Point2::new(-&d.y, d.x)
        })
        .collect()
}

/// Closed convex polygons (or segments) are disjoint: a separating axis exists.
fn convex_disjoint(a: &[Point2], b: &[Point2]) -> bool {
    let mut axes = edge_normals(a);
    axes.extend(edge_normals(b));
    separated_on_axes(a, b, &axes)
}

fn polygon_point_dist2(v: &[Point2], p: &Point2) -> ExactReal {
    if polygon_edges(v).all(|(a, b)| orient(a, b, p) != Ordering::Less) {
        return ExactReal::zero();
    }
    polygon_edges(v)
        .map(|(a, b)| point_segment_dist2(p, a, b))
        .min()
        .unwrap()
}

fn hole_vertices(h: &Hole) -> Vec<Point2> {
    match h {
        Hole::Polygon { vertices } => vertices.clone(),
        Hole::Slit { from, to } => vec![from.clone(), to.clone()],
        Hole::Disc { .. } => Vec::new(),
    }
}

/// Closures of two holes are disjoint (slits may share endpoints with slits).
fn holes_compatible(a: &Hole, b: &Hole) -> bool {
    match (a, b) {
        (Hole::Disc { center: c1, r2: r1 }, Hole::Disc { center: c2, r2: r2b }) => discs_disjoint(c1, r1, c2, r2b),
        (Hole::Disc { center, r2 }, other) | (other, Hole::Disc { center, r2 }) => match other {
            Hole::Polygon { vertices } => polygon_point_dist2(vertices, center) > *r2,
            Hole::Slit { from, to } => point_segment_dist2(center, from, to) > *r2,
            Hole::Disc { .. } => unreachable!(),
        },
        (Hole::Slit { from: a1, to: a2 }, Hole::Slit { from: b1, to: b2 }) => {
            if convex_disjoint(&[a1.clone(), a2.clone()], &[b1.clone(), b2.clone()]) {
                return true;
            }
            // touching only at a shared endpoint, not overlapping
            let shared = [a1, a2].into_iter().filter(|p| *p == b1 || *p == b2).count();
            shared == 1
                && ![b1, b2].iter().any(|q| on_open_segment(a1, q, a2))
                && ![a1, a2].iter().any(|q| on_open_segment(b1, q, b2))
        }
        _ => convex_disjoint(&hole_vertices(a), &hole_vertices(b)),
    }
}

/// A closed convex region minus open convex holes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape2D {
    pub outer: ConvexBody2D,
    pub holes: Vec<Hole>,
}

impl Shape2D {
    /// Validates the data; hole closures must be pairwise disjoint and lie in
    /// the closed outer region (slits may share endpoints).
    pub fn new(outer: ConvexBody2D, holes: Vec<Hole>) -> Result<Self> {
        let outer = outer.validated()?;
        let mut checked = Vec::with_capacity(holes.len());
        for (i, h) in holes.into_iter().enumerate() {
            let h = match h {
                Hole::Polygon { vertices } => Hole::Polygon {
                    vertices: validate_polygon(&vertices, &format!("hole {i}"))?,
                },
                Hole::Disc { ref r2, .. } => {
                    validate_disc(r2, &format!("hole {i}"))?;
                    h
                }
                Hole::Slit { ref from, ref to } => {
                    if from == to {
                        return Err(Error::InvalidShape(format!("hole {i} is a slit of zero length")));
                    }
                    h
                }
            };
            if !outer.contains_hole(&h)? {
                return Err(Error::InvalidShape(format!("hole {i} is not inside the outer region")));
            }
            checked.push(h);
        }
        for i in 0..checked.len() {
            for j in (i + 1)..checked.len() {
                if !holes_compatible(&checked[i], &checked[j]) {
                    return Err(Error::InvalidShape(format!("holes {i} and {j} overlap or touch")));
                }
            }
        }
        Ok(Self { outer, holes: checked })
    }

    pub fn is_convex(&self) -> bool {
        self.holes.is_empty()
    }

    /// `p` is a point of the shape.
    pub fn contains(&self, p: &Point2) -> bool {
        self.outer.contains(p).unwrap_or(false) && !self.holes.iter().any(|h| h.contains_open(p))
    }

    /// `p` lies on the boundary of some hole.
    pub fn on_inner_boundary(&self, p: &Point2) -> bool {
        self.contains(p) && self.holes.iter().any(|h| h.contains_closed(p))
    }

    /// Parameters `t ∈ (0, 1)` with `p + t(q − p)` in the shape, as a union of intervals.
    pub fn segment_components(&self, p: &Point2, q: &Point2) -> Result<Vec<Component>> {
        let d = q.sub(p);
        let mut removed: Vec<Removed> = Vec::new();
        for h in &self.holes {
            match h {
                Hole::Polygon { vertices } => {
                    let mut lo: Option<ExactReal> = None;
                    let mut hi: Option<ExactReal> = None;
                    let mut empty = false;
                    for (a, b) in polygon_edges(vertices) {
                        // cross(b − a, p + t d − a) > 0  ⇔  α + β t > 0
                        let e = b.sub(a);
                        let alpha = e.cross(&p.sub(a));
                        let beta = e.cross(&d);
                        match beta.signum() {
                            Ordering::Equal => {
                                if !alpha.is_positive() {
                                    empty = true;
                                }
                            }
                            Ordering::Greater => {
                                let t = -&alpha / &beta;
                                lo = Some(lo.map_or(t.clone(), |l| l.max(t)));
                            }
                            Ordering::Less => {
                                let t = -&alpha / &beta;
                                hi = Some(hi.map_or(t.clone(), |h| h.min(t)));
                            }
                        }
                    }
                    if !empty {
                        removed.push(Removed::Open(lo, hi));
                    }
                }
                Hole::Disc { center, r2 } => {
                    // |p + t d − c|² < r²  ⇔  A t² + 2B t + C < 0
                    let w = p.sub(center);
                    let a = d.norm2();
                    let b = d.dot(&w);
                    let c = &w.norm2() - r2;
                    let disc = &b.square() - &(&a * &c);
                    if disc.is_positive() {
                        let root = disc.sqrt().ok_or_else(|| {
                            Error::NotRepresentable(format!("crossing of segment {p}–{q} with a disc"))
                        })?;
                        let lo = (-&b - &root) / &a;
                        let hi = (-&b + &root) / &a;
                        removed.push(Removed::Open(Some(lo), Some(hi)));
                    }
                }
                Hole::Slit { from, to } => {
                    let e = to.sub(from);
                    let denom = d.cross(&e);
                    if denom.is_zero() {
                        if !e.cross(&from.sub(p)).is_zero() {
                            continue;
                        }
                        // collinear: slit occupies t between its endpoint parameters
                        let dd = d.norm2();
                        let t1 = from.sub(p).dot(&d) / &dd;
                        let t2 = to.sub(p).dot(&d) / &dd;
                        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
                        removed.push(Removed::Open(Some(lo), Some(hi)));
                    } else {
                        // p + t d = from + s e
                        let w = from.sub(p);
                        let t = w.cross(&e) / &denom;
                        let s = w.cross(&d) / &denom;
                        if s.is_positive() && s < ExactReal::one() {
                            removed.push(Removed::Point(t));
                        }
                    }
                }
            }
        }
        Ok(components_of(removed))
    }

    /// Inner boundary: the boundaries of the holes.
    pub fn inner_boundary(&self) -> Vec<BoundaryCurve> {
        self.holes
            .iter()
            .map(|h| match h {
                Hole::Polygon { vertices } => BoundaryCurve::PolygonBoundary {
                    vertices: vertices.clone(),
                },
                Hole::Disc { center, r2 } => BoundaryCurve::Circle {
                    center: center.clone(),
                    r2: r2.clone(),
                },
                Hole::Slit { from, to } => BoundaryCurve::Endpoints {
                    points: vec![from.clone(), to.clone()],
                },
            })
            .collect()
    }

    /// The core: hull of the hole boundaries minus the open holes.
    pub fn core(&self) -> CoreDescription {
        let mut points = Vec::new();
        let mut discs = Vec::new();
        for h in &self.holes {
            match h {
                Hole::Polygon { vertices } => points.extend(vertices.iter().cloned()),
                Hole::Slit { from, to } => {
                    points.push(from.clone());
                    points.push(to.clone());
                }
                Hole::Disc { center, r2 } => discs.push(Disc {
                    center: center.clone(),
                    r2: r2.clone(),
                }),
            }
        }
        points.sort();
        points.dedup();
        let features = features_of(&self.holes);
        CoreDescription {
            hull_points: points,
            hull_discs: discs,
            holes: self.holes.iter().map(Hole::canonical).collect(),
            features,
        }
    }

    /// The shape as a [`SpaceOracle`].
    pub fn oracle_ops(&self) -> &Self {
        self
    }
}

/// A removed parameter set along a segment.
enum Removed {
    /// Open interval; `None` means unbounded on that side.
    Open(Option<ExactReal>, Option<ExactReal>),
    Point(ExactReal),
}

/// A connected set of parameters in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub lo: ExactReal,
    pub hi: ExactReal,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Component {
    pub fn contains(&self, t: &ExactReal) -> bool {
        let above = if self.lo_closed { *t >= self.lo } else { *t > self.lo };
        let below = if self.hi_closed { *t <= self.hi } else { *t < self.hi };
        above && below
    }

    /// The dyadic rational of least depth inside (ties impossible); `None`
    /// for single points.
    pub fn shallowest_dyadic(&self) -> Option<(u32, ExactReal)> {
        if self.lo >= self.hi {
            return None;
        }
        let two = ExactReal::from_int(2);
        let (mut lo, mut hi) = (ExactReal::zero(), ExactReal::one());
        for depth in 1.. {
            let mid = (&lo + &hi) / &two;
            if self.contains(&mid) {
                return Some((depth, mid));
            }
            if mid <= self.lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        unreachable!()
    }
}

fn components_of(removed: Vec<Removed>) -> Vec<Component> {
    let zero = ExactReal::zero();
    let one = ExactReal::one();
    // normalise to pieces within [0, 1]: (lo, hi, is_point)
    let mut pieces: Vec<(ExactReal, ExactReal, bool)> = Vec::new();
    for r in removed {
        match r {
            Removed::Open(lo, hi) => {
                let lo = lo.unwrap_or_else(|| ExactReal::from_int(-1));
                let hi = hi.unwrap_or_else(|| ExactReal::from_int(2));
                if lo < hi && hi > zero && lo < one {
                    pieces.push((lo, hi, false));
                }
            }
            Removed::Point(t) => {
                if t > zero && t < one {
                    pieces.push((t.clone(), t, true));
                }
            }
        }
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out = Vec::new();
    // frontier: everything below `cur` is handled; `cur_in` says whether cur itself is in X
    let mut cur = zero.clone();
    let mut cur_in = false;
    for (lo, hi, is_point) in pieces {
        if lo > cur {
            out.push(Component {
                lo: cur.clone(),
                hi: lo.clone(),
                lo_closed: cur_in,
                hi_closed: !is_point,
            });
        } else if lo == cur && cur_in && !is_point && cur > zero {
            out.push(Component {
                lo: cur.clone(),
                hi: cur.clone(),
                lo_closed: true,
                hi_closed: true,
            });
        }
        if hi > cur {
            cur = hi;
            cur_in = !is_point;
        } else if hi == cur && is_point {
            cur_in = false;
        }
    }
    if cur < one {
        out.push(Component {
            lo: cur,
            hi: one,
            lo_closed: cur_in,
            hi_closed: false,
        });
    }
    out.retain(|c| c.lo < c.hi || (c.lo_closed && c.hi_closed && c.lo > zero && c.lo < ExactReal::one()));
    out
}

impl SpaceOracle for Shape2D {
    type Point = Point2;

    fn member(&self, p: &Point2) -> bool {
        self.contains(p)
    }

    /// Euclidean distance; panics if it leaves the exact number system,
    /// which cannot happen for points produced by this oracle from rational data.
    fn distance(&self, p: &Point2, q: &Point2) -> ExactLength {
        let d2 = p.dist2(q);
        d2.sqrt()
            .unwrap_or_else(|| panic!("distance between {p} and {q} is not exactly representable"))
    }

    fn is_between(&self, p: &Point2, q: &Point2, r: &Point2) -> bool {
        on_closed_segment(p, q, r)
    }

    /// Distinct members whose open segment misses the shape: it must run
    /// through a single two-dimensional hole or be a slit.
    fn is_adjacent(&self, p: &Point2, q: &Point2) -> bool {
        if p == q || !self.contains(p) || !self.contains(q) {
            return false;
        }
        let two = ExactReal::from_int(2);
        let mid = p.add(q).scale(&(ExactReal::one() / two));
        self.holes.iter().any(|h| match h {
            Hole::Slit { from, to } => (from == p && to == q) || (from == q && to == p),
            _ => h.is_two_dimensional() && h.contains_closed(p) && h.contains_closed(q) && h.contains_open(&mid),
        })
    }

    /// The member of the open segment at the shallowest dyadic parameter,
    /// falling back to isolated points of the segment.
    fn choose_strictly_between(&self, p: &Point2, r: &Point2) -> Result<Point2> {
        if p == r || self.is_adjacent(p, r) {
            return Err(Error::Precondition(format!("{p} and {r} are adjacent or equal")));
        }
        let comps = self.segment_components(p, r)?;
        let best = comps
            .iter()
            .filter_map(Component::shallowest_dyadic)
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let t = match best {
            Some((_, t)) => t,
            None => comps
                .first()
                .map(|c| c.lo.clone())
                .ok_or_else(|| Error::Precondition(format!("no point of the shape strictly between {p} and {r}")))?,
        };
        let m = p.lerp(r, &t);
        debug_assert!(self.contains(&m));
        Ok(m)
    }
}

/// One curve of the inner boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryCurve {
    Circle { center: Point2, r2: ExactReal },
    PolygonBoundary { vertices: Vec<Point2> },
    Endpoints { points: Vec<Point2> },
}

/// A distinguished point of a hole arrangement with a congruence-invariant tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Feature {
    pub tag: FeatureTag,
    pub point: Point2,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeatureTag {
    DiscCenter {
        r2: ExactReal,
    },
    /// Vertex of a polygon with the sorted squared edge lengths of that polygon.
    PolygonVertex {
        edges2: Vec<ExactReal>,
    },
    SlitEnd {
        len2: ExactReal,
    },
}

fn features_of(holes: &[Hole]) -> Vec<Feature> {
    let mut out = Vec::new();
    for h in holes {
        match h {
            Hole::Disc { center, r2 } => out.push(Feature {
                tag: FeatureTag::DiscCenter { r2: r2.clone() },
                point: center.clone(),
            }),
            Hole::Polygon { vertices } => {
                let mut edges2: Vec<ExactReal> = polygon_edges(vertices).map(|(a, b)| a.dist2(b)).collect();
                edges2.sort();
                for v in vertices {
                    out.push(Feature {
                        tag: FeatureTag::PolygonVertex { edges2: edges2.clone() },
                        point: v.clone(),
                    });
                }
            }
            Hole::Slit { from, to } => {
                for v in [from, to] {
                    out.push(Feature {
                        tag: FeatureTag::SlitEnd { len2: from.dist2(to) },
                        point: v.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// The core of a shape: `conv(hull_points ∪ hull_discs)` minus the open holes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreDescription {
    pub hull_points: Vec<Point2>,
    pub hull_discs: Vec<Disc>,
    pub holes: Vec<Hole>,
    pub features: Vec<Feature>,
}

impl CoreDescription {
    pub fn is_empty(&self) -> bool {
        self.holes.is_empty()
    }

    /// The core re-expressed as a shape with a hull outer region.
    pub fn as_shape(&self) -> Result<Shape2D> {
        if self.is_empty() {
            return Err(Error::Precondition("an empty core is not a shape".into()));
        }
        Shape2D::new(
            ConvexBody2D::Hull {
                points: self.hull_points.clone(),
                discs: self.hull_discs.clone(),
            },
            self.holes.clone(),
        )
    }

    /// Membership in the core.
    pub fn contains(&self, p: &Point2) -> Result<bool> {
        Ok(hull_contains(&self.hull_points, &self.hull_discs, p)? && !self.holes.iter().any(|h| h.contains_open(p)))
    }

    /// Membership in `conv(ρX)`, the hull of the hole boundaries.
    pub fn hull_contains(&self, p: &Point2) -> Result<bool> {
        hull_contains(&self.hull_points, &self.hull_discs, p)
    }
}

/// `p ↦ Mp + t` with `M` orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidMotion2D {
    pub matrix: [[ExactReal; 2]; 2],
    pub translation: Point2,
    pub reflection: bool,
}

impl RigidMotion2D {
    pub fn identity() -> Self {
        Self::translation(Point2::ints(0, 0))
    }

    pub fn translation(t: Point2) -> Self {
        Self {
            matrix: [
                [ExactReal::one(), ExactReal::zero()],
                [ExactReal::zero(), ExactReal::one()],
            ],
            translation: t,
            reflection: false,
        }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let m = &self.matrix;
        Point2::new(
            &(&m[0][0] * &p.x + &m[0][1] * &p.y) + &self.translation.x,
            &(&m[1][0] * &p.x + &m[1][1] * &p.y) + &self.translation.y,
        )
    }

    /// `MᵀM = I`.
    pub fn is_orthogonal(&self) -> bool {
        let m = &self.matrix;
        let c0 = Point2::new(m[0][0].clone(), m[1][0].clone());
        let c1 = Point2::new(m[0][1].clone(), m[1][1].clone());
        c0.norm2() == ExactReal::one() && c1.norm2() == ExactReal::one() && c0.dot(&c1).is_zero()
    }
}

fn canonical_holes(holes: &[Hole]) -> Vec<Hole> {
    let mut out: Vec<Hole> = holes.iter().map(Hole::canonical).collect();
    out.sort();
    out
}

/// A rigid motion (reflections allowed) carrying `a`'s holes onto `b`'s.
pub fn shape_congruent(a: &CoreDescription, b: &CoreDescription) -> Result<Option<RigidMotion2D>> {
    if a.holes.len() > MAX_HOLES || b.holes.len() > MAX_HOLES {
        return Err(Error::Invalid(format!(
            "congruence search is limited to {MAX_HOLES} holes"
        )));
    }
    if a.holes.len() != b.holes.len() || a.features.len() != b.features.len() {
        return Ok(None);
    }
    fn tags(c: &CoreDescription) -> Vec<&FeatureTag> {
        let mut t: Vec<&FeatureTag> = c.features.iter().map(|f| &f.tag).collect();
        t.sort();
        t
    }
    if tags(a) != tags(b) {
        return Ok(None);
    }
    let target = canonical_holes(&b.holes);
    let works = |m: &RigidMotion2D| {
        let moved: Vec<Hole> = a.holes.iter().map(|h| h.map(m)).collect();
        canonical_holes(&moved) == target
    };
    let Some(a0) = a.features.first() else {
        return Ok(Some(RigidMotion2D::identity()));
    };
    let a1 = a.features.iter().find(|f| f.point != a0.point);
    for b0 in b.features.iter().filter(|f| f.tag == a0.tag) {
        let Some(a1) = a1 else {
            let m = RigidMotion2D::translation(b0.point.sub(&a0.point));
            if works(&m) {
                return Ok(Some(m));
            }
            continue;
        };
        let u = a1.point.sub(&a0.point);
        let n = u.norm2();
        for b1 in b.features.iter().filter(|f| f.tag == a1.tag) {
            let v = b1.point.sub(&b0.point);
            if v.norm2() != n {
                continue;
            }
            let rot_c = u.dot(&v) / &n;
            let rot_s = u.cross(&v) / &n;
            let ref_c = (&u.x * &v.x - &u.y * &v.y) / &n;
            let ref_s = (&u.y * &v.x + &u.x * &v.y) / &n;
            let candidates = [
                ([[rot_c.clone(), -&rot_s], [rot_s, rot_c]], false),
                ([[ref_c.clone(), ref_s.clone()], [ref_s, -&ref_c]], true),
            ];
            for (matrix, reflection) in candidates {
                let mut m = RigidMotion2D {
                    matrix,
                    translation: Point2::ints(0, 0),
                    reflection,
                };
                m.translation = b0.point.sub(&m.apply(&a0.point));
                if m.is_orthogonal() && works(&m) {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// Verdict of [`shape_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeEquivalence {
    pub equivalent: bool,
    pub motion: Option<RigidMotion2D>,
}

/// Equivalent iff both are convex or their cores are congruent.
pub fn shape_equivalent(x: &Shape2D, y: &Shape2D) -> Result<ShapeEquivalence> {
    match (x.is_convex(), y.is_convex()) {
        (true, true) => Ok(ShapeEquivalence {
            equivalent: true,
            motion: None,
        }),
        (true, false) | (false, true) => Ok(ShapeEquivalence {
            equivalent: false,
            motion: None,
        }),
        (false, false) => {
            let motion = shape_congruent(&x.core(), &y.core())?;
            Ok(ShapeEquivalence {
                equivalent: motion.is_some(),
                motion,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: &str, y: &str) -> Point2 {
        Point2::new(x.parse().unwrap(), y.parse().unwrap())
    }

    fn int(v: i64) -> ExactReal {
        ExactReal::from_int(v)
    }

    fn annulus() -> Shape2D {
        Shape2D::new(
            ConvexBody2D::Disc {
                center: Point2::ints(0, 0),
                r2: int(9),
            },
            vec![Hole::Disc {
                center: Point2::ints(0, 0),
                r2: int(1),
            }],
        )
        .unwrap()
    }

    fn triangle_minus_edges() -> (Shape2D, [Point2; 3]) {
        let v = [pt("0", "0"), pt("1/2", "sqrt(3)/2"), pt("1", "0")];
        let s = Shape2D::new(
            ConvexBody2D::Polygon { vertices: v.to_vec() },
            vec![
                Hole::Slit {
                    from: v[0].clone(),
                    to: v[1].clone(),
                },
                Hole::Slit {
                    from: v[1].clone(),
                    to: v[2].clone(),
                },
            ],
        )
        .unwrap();
        (s, v)
    }

    #[test]
    fn annulus_adjacency() {
        let a = annulus();
        assert!(a.is_adjacent(&Point2::ints(1, 0), &Point2::ints(-1, 0)));
        assert!(!a.is_adjacent(&Point2::ints(3, 0), &Point2::ints(0, 3)));
        assert!(!a.is_adjacent(&Point2::ints(3, 0), &Point2::ints(-3, 0)));
        assert!(a.on_inner_boundary(&Point2::ints(0, 1)));
        assert!(!a.on_inner_boundary(&Point2::ints(0, 3)));
        let m = a
            .choose_strictly_between(&Point2::ints(3, 0), &Point2::ints(0, 3))
            .unwrap();
        assert_eq!(m, pt("3/2", "3/2"));
        // through the hole: the between point avoids it
        let p = Point2::ints(-3, 0);
        let q = Point2::ints(3, 0);
        let m = a.choose_strictly_between(&p, &q).unwrap();
        assert!(a.contains(&m));
        assert_eq!(a.distance(&p, &m) + a.distance(&m, &q), a.distance(&p, &q));
        assert_eq!(m, pt("-3/2", "0"));
    }

    #[test]
    fn triangle_slits() {
        let (y, v) = triangle_minus_edges();
        assert!(y.is_adjacent(&v[0], &v[1]));
        assert!(y.is_adjacent(&v[1], &v[2]));
        assert!(!y.is_adjacent(&v[0], &v[2]));
        assert!(!y.contains(&pt("1/4", "sqrt(3)/4")));
        assert_eq!(y.distance(&v[0], &v[1]), int(1));
        let m = y.choose_strictly_between(&v[0], &v[2]).unwrap();
        assert_eq!(m, pt("1/2", "0"));
    }

    #[test]
    fn cores_and_boundaries() {
        let a = annulus();
        let core = a.core();
        assert_eq!(core.hull_discs.len(), 1);
        assert!(core.contains(&Point2::ints(0, 1)).unwrap());
        assert!(!core.contains(&Point2::ints(0, 0)).unwrap());
        assert!(!core.contains(&Point2::ints(0, 2)).unwrap());
        assert_eq!(
            a.inner_boundary(),
            vec![BoundaryCurve::Circle {
                center: Point2::ints(0, 0),
                r2: int(1)
            }]
        );
        let convex = Shape2D::new(ConvexBody2D::Plane, vec![]).unwrap();
        assert!(convex.core().is_empty());
        assert!(convex.inner_boundary().is_empty());
        let again = core.as_shape().unwrap().core();
        assert_eq!(again, core);
    }

    #[test]
    fn validation() {
        let touching = Shape2D::new(
            ConvexBody2D::Plane,
            vec![
                Hole::Disc {
                    center: Point2::ints(0, 0),
                    r2: int(1),
                },
                Hole::Disc {
                    center: Point2::ints(2, 0),
                    r2: int(1),
                },
            ],
        );
        assert!(matches!(touching, Err(Error::InvalidShape(_))));
        let outside = Shape2D::new(
            ConvexBody2D::Disc {
                center: Point2::ints(0, 0),
                r2: int(4),
            },
            vec![Hole::Disc {
                center: Point2::ints(1, 0),
                r2: int(2),
            }],
        );
        assert!(outside.is_err());
        let nonconvex = Shape2D::new(
            ConvexBody2D::Plane,
            vec![Hole::Polygon {
                vertices: vec![
                    Point2::ints(0, 0),
                    Point2::ints(2, 0),
                    Point2::ints(1, 1),
                    Point2::ints(2, 2),
                ],
            }],
        );
        assert!(nonconvex.is_err());
        let e = ConvexBody2D::Ellipse {
            center: Point2::ints(0, 0),
            matrix: [
                [ExactReal::from_ratio(1, 16), int(0)],
                [int(0), ExactReal::from_ratio(1, 4)],
            ],
        };
        let ok = Shape2D::new(
            e.clone(),
            vec![Hole::Disc {
                center: Point2::ints(1, 0),
                r2: int(1),
            }],
        );
        assert!(ok.is_ok());
        let too_big = Shape2D::new(
            e,
            vec![Hole::Disc {
                center: Point2::ints(0, 0),
                r2: ExactReal::from_ratio(9, 2),
            }],
        );
        assert!(too_big.is_err());
    }

    #[test]
    fn congruence() {
        let square = Hole::Polygon {
            vertices: vec![
                Point2::ints(3, -1),
                Point2::ints(5, -1),
                Point2::ints(5, 1),
                Point2::ints(3, 1),
            ],
        };
        let disc = Hole::Disc {
            center: Point2::ints(0, 0),
            r2: int(1),
        };
        let x = Shape2D::new(ConvexBody2D::Plane, vec![disc.clone(), square.clone()]).unwrap();
        let shift = RigidMotion2D::translation(Point2::ints(5, 7));
        let y = Shape2D::new(ConvexBody2D::Plane, x.holes.iter().map(|h| h.map(&shift)).collect()).unwrap();
        let m = shape_congruent(&x.core(), &y.core()).unwrap().unwrap();
        assert!(!m.reflection);
        let mirror = RigidMotion2D {
            matrix: [[int(1), int(0)], [int(0), int(-1)]],
            translation: Point2::ints(0, 3),
            reflection: true,
        };
        let z = Shape2D::new(ConvexBody2D::Plane, x.holes.iter().map(|h| h.map(&mirror)).collect()).unwrap();
        assert!(shape_equivalent(&x, &z).unwrap().equivalent);
        let one = Shape2D::new(ConvexBody2D::Plane, vec![disc]).unwrap();
        let two = Shape2D::new(
            ConvexBody2D::Plane,
            vec![Hole::Disc {
                center: Point2::ints(0, 0),
                r2: int(4),
            }],
        )
        .unwrap();
        assert!(!shape_equivalent(&one, &two).unwrap().equivalent);
    }

    #[test]
    fn sturm_counts_roots() {
        // (t − 1)(t + 2)(t² + 1)
        let p: Poly = [-2, 1, -1, 1, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(real_root_count(&p), 2);
        let q: Poly = [1, 0, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(real_root_count(&q), 0);
    }

    #[test]
    fn hull_membership_with_discs() {
        let discs = vec![
            Disc {
                center: Point2::ints(0, 0),
                r2: int(1),
            },
            Disc {
                center: Point2::ints(4, 0),
                r2: int(1),
            },
        ];
        assert!(hull_contains(&[], &discs, &Point2::ints(2, 1)).unwrap());
        assert!(!hull_contains(&[], &discs, &pt("2", "101/100")).unwrap());
        assert!(hull_contains(&[Point2::ints(2, 3)], &discs, &pt("2", "2")).unwrap());
    }
}
