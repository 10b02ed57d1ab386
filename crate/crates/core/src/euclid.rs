//! Exact rational geometry of finite point sets in `ℝᴺ`.
//!
//! Convex membership is decided by an exact simplex method (Bland's rule),
//! the closed Carathéodory decomposition by a volume-ordered search over
//! affinely independent subsets, and metric projection onto a polytope by
//! enumerating faces and checking the variational inequality.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rational_points, rational_vec};
use crate::magchain::MetricMap;
use crate::metspace::FiniteMetricSpace;

pub type Point = Vec<BigRational>;

/// Pairwise distinct rational points of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub dim: usize,
    #[serde(with = "rational_points")]
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        check_dims(&points, dim)?;
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p.clone()) {
                return Err(Error::Invalid(format!("point {i} repeats an earlier point")));
            }
        }
        Ok(Self { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn metric_space(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::from_points(&self.points, None).expect("point sets have distinct points")
    }

    pub fn index_of(&self, p: &[BigRational]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }
}

fn check_dims(points: &[Point], dim: usize) -> Result<()> {
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        }),
        None => Ok(()),
    }
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn squared_distance(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let d = sub(a, b);
    dot(&d, &d)
}

/// Rank of a list of rational vectors.
fn rank(vectors: &[Point]) -> usize {
    let mut rows: Vec<Point> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in (r + 1)..rows.len() {
            if !rows[i][c].is_zero() {
                let k = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let delta = &k * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Difference vectors from the first point are linearly independent.
pub fn affinely_independent(points: &[Point]) -> Result<bool> {
    let Some(first) = points.first() else { return Ok(true) };
    check_dims(points, first.len())?;
    let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, first)).collect();
    Ok(rank(&diffs) == diffs.len())
}

/// Determinant of a square rational matrix.
fn det(m: &[Point]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut result = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            result = -result;
        }
        result *= &a[c][c];
        for i in (c + 1)..n {
            if !a[i][c].is_zero() {
                let k = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &k * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    result
}

/// Gram determinant of the edge vectors: `(k!·volume)²` of a `k`-simplex.
pub fn squared_volume(points: &[Point]) -> BigRational {
    let Some(first) = points.first() else {
        return BigRational::zero();
    };
    let diffs: Vec<Point> = points[1..].iter().map(|p| sub(p, first)).collect();
    let gram: Vec<Point> = diffs
        .iter()
        .map(|u| diffs.iter().map(|v| dot(u, v)).collect())
        .collect();
    det(&gram)
}

/// Solves a square system exactly; `None` if singular.
fn solve(m: &[Point], rhs: &[BigRational]) -> Option<Point> {
    let n = m.len();
    let mut a: Vec<Point> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in c..=n {
                    let delta = &k * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Coefficients `λ ≥ 0`, `Σλ = 1`, `Σλᵢgᵢ = a`, if any exist.
///
/// Phase one of the simplex method over the rationals with Bland's rule.
pub fn conv_contains(generators: &[Point], a: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let dim = a.len();
    check_dims(generators, dim)?;
    let k = generators.len();
    if k == 0 {
        return Ok(None);
    }
    let m = dim + 1;
    // rows: coordinates, then the affine constraint; columns: λ, artificials, rhs
    let width = k + m + 1;
    let mut t: Vec<Point> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![BigRational::zero(); width];
        for (i, g) in generators.iter().enumerate() {
            row[i] = if r < dim { g[r].clone() } else { BigRational::one() };
        }
        let mut b = if r < dim { a[r].clone() } else { BigRational::one() };
        if b.is_negative() {
            for x in row.iter_mut().take(k) {
                *x = -&*x;
            }
            b = -b;
        }
        row[k + r] = BigRational::one();
        row[width - 1] = b;
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs of the phase-one objective Σ artificials
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    while let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
        basis[pr] = enter;
    }
    if !cost[width - 1].is_zero() {
        return Ok(None);
    }
    let mut lambda = vec![BigRational::zero(); k];
    for (r, &b) in basis.iter().enumerate() {
        if b < k {
            lambda[b] = t[r][width - 1].clone();
        }
    }
    debug_assert!(verify_combination(generators, a, &lambda));
    Ok(Some(lambda))
}

fn verify_combination(generators: &[Point], a: &[BigRational], lambda: &[BigRational]) -> bool {
    let sum: BigRational = lambda.iter().fold(BigRational::zero(), |acc, x| acc + x);
    let mut p = vec![BigRational::zero(); a.len()];
    for (g, l) in generators.iter().zip(lambda) {
        for (pi, gi) in p.iter_mut().zip(g) {
            *pi += l * gi;
        }
    }
    sum.is_one() && lambda.iter().all(|l| !l.is_negative()) && p.as_slice() == a
}

/// An affinely independent subset whose hull contains the query point and
/// meets the set only in its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaratheodoryCertificate {
    pub subset: Vec<usize>,
    #[serde(with = "rational_vec")]
    pub barycentric: Vec<BigRational>,
}

impl CaratheodoryCertificate {
    /// Re-checks both conditions exactly against `x` and `a`.
    pub fn verify(&self, x: &PointSet, a: &[BigRational]) -> bool {
        let verts: Vec<Point> = self.subset.iter().map(|&i| x.points[i].clone()).collect();
        affinely_independent(&verts).unwrap_or(false)
            && verify_combination(&verts, a, &self.barycentric)
            && hull_meets_only_vertices(x, &self.subset)
    }
}

fn hull_meets_only_vertices(x: &PointSet, subset: &[usize]) -> bool {
    let verts: Vec<Point> = subset.iter().map(|&i| x.points[i].clone()).collect();
    (0..x.len())
        .filter(|i| !subset.contains(i))
        .all(|i| matches!(conv_contains(&verts, &x.points[i]), Ok(None)))
}

/// Index subsets of `0..n` of size `k` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The closed Carathéodory decomposition of `a` with respect to `x`.
///
/// Candidates are ordered by size, then squared volume, then index order;
/// the first one passing the exact intersection test is returned.
pub fn closed_caratheodory(x: &PointSet, a: &[BigRational]) -> Result<CaratheodoryCertificate> {
    if a.len() != x.dim {
        return Err(Error::DimensionMismatch {
            expected: x.dim,
            found: a.len(),
        });
    }
    if let Some(i) = x.index_of(a) {
        return Ok(CaratheodoryCertificate {
            subset: vec![i],
            barycentric: vec![BigRational::one()],
        });
    }
    for size in 2..=(x.dim + 1).min(x.len()) {
        let mut candidates = Vec::new();
        for subset in combinations(x.len(), size) {
            let verts: Vec<Point> = subset.iter().map(|&i| x.points[i].clone()).collect();
            if !affinely_independent(&verts)? {
                continue;
            }
            if let Some(bary) = conv_contains(&verts, a)? {
                candidates.push((squared_volume(&verts), subset, bary));
            }
        }
        candidates.sort_by(|p, q| p.0.cmp(&q.0).then_with(|| p.1.cmp(&q.1)));
        for (_, subset, barycentric) in candidates {
            if hull_meets_only_vertices(x, &subset) {
                return Ok(CaratheodoryCertificate { subset, barycentric });
            }
        }
    }
    Err(Error::Precondition(
        "the point is not in the convex hull of the set".into(),
    ))
}

/// `p` lies on the open segment `(x, y)`.
pub fn strictly_between(x: &[BigRational], p: &[BigRational], y: &[BigRational]) -> bool {
    if p == x || p == y || x == y {
        return false;
    }
    let d = sub(y, x);
    let e = sub(p, x);
    // p − x = t(y − x) with 0 < t < 1
    let Some(c) = d.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    let t = &e[c] / &d[c];
    t.is_positive() && t < BigRational::one() && d.iter().zip(&e).all(|(dv, ev)| &t * dv == *ev)
}

/// Points adjacent to another point, using the exact segment test.
pub fn inner_boundary_euclidean(x: &PointSet) -> Vec<usize> {
    let n = x.len();
    let adjacent =
        |i: usize, j: usize| i != j && (0..n).all(|k| !strictly_between(&x.points[i], &x.points[k], &x.points[j]));
    (0..n).filter(|&i| (0..n).any(|j| adjacent(i, j))).collect()
}

/// Points of `x` in the convex hull of its inner boundary.
pub fn core_finite(x: &PointSet) -> Result<PointSet> {
    let rho = inner_boundary_euclidean(x);
    let gens: Vec<Point> = rho.iter().map(|&i| x.points[i].clone()).collect();
    let mut kept = Vec::new();
    for p in &x.points {
        if !gens.is_empty() && conv_contains(&gens, p)?.is_some() {
            kept.push(p.clone());
        }
    }
    PointSet::new(kept).map(|mut s| {
        s.dim = x.dim;
        s
    })
}

/// The nearest point of `conv(generators)` to `a`.
pub fn metric_projection(a: &[BigRational], generators: &[Point]) -> Result<Point> {
    if generators.is_empty() {
        return Err(Error::Precondition("metric projection onto an empty set".into()));
    }
    check_dims(generators, a.len())?;
    let gens: Vec<Point> = generators
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let optimal = |p: &Point| {
        let ap = sub(a, p);
        gens.iter().all(|g| !dot(&ap, &sub(g, p)).is_positive())
    };
    for size in 1..=(a.len() + 1).min(gens.len()) {
        for subset in combinations(gens.len(), size) {
            let verts: Vec<Point> = subset.iter().map(|&i| gens[i].clone()).collect();
            if !affinely_independent(&verts)? {
                continue;
            }
            let base = &verts[0];
            let edges: Vec<Point> = verts[1..].iter().map(|v| sub(v, base)).collect();
            let gram: Vec<Point> = edges
                .iter()
                .map(|u| edges.iter().map(|v| dot(u, v)).collect())
                .collect();
            let rhs: Vec<BigRational> = edges.iter().map(|u| dot(&sub(a, base), u)).collect();
            let Some(mu) = solve(&gram, &rhs) else { continue };
            let total: BigRational = mu.iter().fold(BigRational::zero(), |acc, x| acc + x);
            if mu.iter().any(Signed::is_negative) || total > BigRational::one() {
                continue;
            }
            let mut p = base.clone();
            for (m, e) in mu.iter().zip(&edges) {
                for (pi, ei) in p.iter_mut().zip(e) {
                    *pi += m * ei;
                }
            }
            if optimal(&p) {
                return Ok(p);
            }
        }
    }
    unreachable!("some face of a nonempty polytope contains the projection")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dichotomy {
    Inside,
    VerticesOnly,
    Violated,
}

/// Either the simplex lies in `x`, or its hull meets `x` only in vertices.
pub fn dichotomy_check(x: &PointSet, simplex: &[usize]) -> Result<Dichotomy> {
    if let Some(&bad) = simplex.iter().find(|&&i| i >= x.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: x.len(),
        });
    }
    let verts: Vec<Point> = simplex.iter().map(|&i| x.points[i].clone()).collect();
    if !affinely_independent(&verts)? {
        return Err(Error::Precondition("simplex is not affinely independent".into()));
    }
    for i in inner_boundary_euclidean(x) {
        if !simplex.contains(&i) && conv_contains(&verts, &x.points[i])?.is_some() {
            return Err(Error::Precondition(format!(
                "inner-boundary point {i} lies in the hull of the simplex"
            )));
        }
    }
    if simplex.len() == 1 {
        return Ok(Dichotomy::Inside);
    }
    if hull_meets_only_vertices(x, simplex) {
        Ok(Dichotomy::VerticesOnly)
    } else {
        Ok(Dichotomy::Violated)
    }
}

/// Verdict and witness maps for two finite point sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteEquivalence {
    pub equivalent: bool,
    /// Map `X → Y` as an index table.
    pub f: Option<MetricMap>,
    /// Map `Y → X` as an index table.
    pub g: Option<MetricMap>,
}

/// Equivalent iff the cores are isometric.
pub fn equivalence_decision_finite(x: &PointSet, y: &PointSet) -> Result<FiniteEquivalence> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Precondition("point sets must be nonempty".into()));
    }
    let mx = x.metric_space();
    let my = y.metric_space();
    let cx = core_finite(x)?;
    let cy = core_finite(y)?;
    if cx.is_empty() && cy.is_empty() {
        // both convex: constant maps
        let f = MetricMap::new(&mx, &my, vec![0; x.len()])?;
        let g = MetricMap::new(&my, &mx, vec![0; y.len()])?;
        return Ok(FiniteEquivalence {
            equivalent: true,
            f: Some(f),
            g: Some(g),
        });
    }
    if cx.len() != cy.len() || cx.is_empty() || cy.is_empty() {
        return Ok(FiniteEquivalence {
            equivalent: false,
            f: None,
            g: None,
        });
    }
    let Some(iso) = cx.metric_space().isometry_witness(&cy.metric_space()) else {
        return Ok(FiniteEquivalence {
            equivalent: false,
            f: None,
            g: None,
        });
    };
    // Cores of finite sets with two or more points are the sets themselves,
    // so the nearest-core-point retraction is the identity.
    let to_x = |c: &PointSet, s: &PointSet, i: usize| s.index_of(&c.points[i]).expect("core points belong to the set");
    let mut f_table = vec![0; x.len()];
    for (ci, &cj) in iso.iter().enumerate() {
        f_table[to_x(&cx, x, ci)] = to_x(&cy, y, cj);
    }
    let mut g_table = vec![0; y.len()];
    for (ci, &cj) in iso.iter().enumerate() {
        g_table[to_x(&cy, y, cj)] = to_x(&cx, x, ci);
    }
    Ok(FiniteEquivalence {
        equivalent: true,
        f: Some(MetricMap::new(&mx, &my, f_table)?),
        g: Some(MetricMap::new(&my, &mx, g_table)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pts(coords: &[&[(i64, i64)]]) -> Vec<Point> {
        coords
            .iter()
            .map(|p| p.iter().map(|&(n, d)| rat(n, d)).collect())
            .collect()
    }

    fn p2(list: &[(i64, i64)]) -> Vec<Point> {
        list.iter().map(|&(x, y)| vec![rat(x, 1), rat(y, 1)]).collect()
    }

    #[test]
    fn affine_independence() {
        assert!(affinely_independent(&p2(&[(0, 0), (1, 0), (0, 1)])).unwrap());
        assert!(!affinely_independent(&p2(&[(0, 0), (1, 0), (2, 0)])).unwrap());
        assert!(!affinely_independent(&p2(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap());
        assert!(affinely_independent(&[vec![rat(0, 1)], vec![rat(1, 1), rat(2, 1)]]).is_err());
    }

    #[test]
    fn convex_membership() {
        let tri = p2(&[(0, 0), (1, 0), (0, 1)]);
        let c = conv_contains(&tri, &[rat(1, 3), rat(1, 3)]).unwrap().unwrap();
        assert_eq!(c, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
        assert!(conv_contains(&tri, &[rat(1, 1), rat(1, 1)]).unwrap().is_none());
        let seg = p2(&[(0, 0), (2, 0)]);
        assert_eq!(
            conv_contains(&seg, &[rat(1, 1), rat(0, 1)]).unwrap().unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        let neg = p2(&[(-3, -1), (-1, -3)]);
        assert!(conv_contains(&neg, &[rat(-2, 1), rat(-2, 1)]).unwrap().is_some());
    }

    #[test]
    fn caratheodory_examples() {
        let sq = PointSet::new(p2(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        let c = closed_caratheodory(&sq, &[rat(1, 2), rat(1, 2)]).unwrap();
        // the diagonal through the centre is the lowest-dimensional certificate
        assert_eq!(c.subset, vec![0, 3]);
        assert!(c.verify(&sq, &[rat(1, 2), rat(1, 2)]));
        let c = closed_caratheodory(&sq, &[rat(1, 4), rat(1, 2)]).unwrap();
        assert_eq!(c.subset.len(), 3);
        assert!(c.verify(&sq, &[rat(1, 4), rat(1, 2)]));
        let line = PointSet::new(pts(&[&[(0, 1)], &[(1, 1)], &[(3, 1)]])).unwrap();
        let c = closed_caratheodory(&line, &[rat(2, 1)]).unwrap();
        assert_eq!(c.subset, vec![1, 2]);
        let c = closed_caratheodory(&line, &[rat(3, 1)]).unwrap();
        assert_eq!((c.subset, c.barycentric), (vec![2], vec![rat(1, 1)]));
        assert!(closed_caratheodory(&line, &[rat(4, 1)]).is_err());
    }

    #[test]
    fn boundary_and_core() {
        let three = PointSet::new(p2(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(inner_boundary_euclidean(&three), vec![0, 1, 2]);
        let one = PointSet::new(p2(&[(4, 4)])).unwrap();
        assert!(inner_boundary_euclidean(&one).is_empty());
        assert!(core_finite(&one).unwrap().is_empty());
        let tri = PointSet::new(p2(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        assert_eq!(core_finite(&tri).unwrap(), tri);
    }

    #[test]
    fn projections() {
        let tri = p2(&[(0, 0), (2, 0), (0, 2)]);
        assert_eq!(
            metric_projection(&[rat(2, 1), rat(2, 1)], &tri).unwrap(),
            vec![rat(1, 1), rat(1, 1)]
        );
        assert_eq!(
            metric_projection(&[rat(1, 2), rat(1, 2)], &tri).unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        let seg = p2(&[(0, 0), (1, 0)]);
        assert_eq!(
            metric_projection(&[rat(3, 1), rat(0, 1)], &seg).unwrap(),
            vec![rat(1, 1), rat(0, 1)]
        );
        assert!(metric_projection(&[rat(0, 1)], &[]).is_err());
    }

    #[test]
    fn dichotomy() {
        let sq = PointSet::new(p2(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(dichotomy_check(&sq, &[0]).unwrap(), Dichotomy::Inside);
        assert_eq!(dichotomy_check(&sq, &[0, 1, 2]).unwrap(), Dichotomy::VerticesOnly);
        let line = PointSet::new(pts(&[&[(0, 1)], &[(1, 1)], &[(2, 1)]])).unwrap();
        assert!(matches!(dichotomy_check(&line, &[0, 2]), Err(Error::Precondition(_))));
    }

    #[test]
    fn finite_equivalence() {
        let x = PointSet::new(pts(&[&[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)]])).unwrap();
        let rotated = PointSet::new((0..4).map(|k| vec![rat(3 * k, 5), rat(4 * k, 5)]).collect()).unwrap();
        let r = equivalence_decision_finite(&x, &rotated).unwrap();
        assert!(r.equivalent);
        let y = PointSet::new(pts(&[&[(0, 1)], &[(1, 1)], &[(2, 1)]])).unwrap();
        assert!(!equivalence_decision_finite(&x, &y).unwrap().equivalent);
        let a = PointSet::new(pts(&[&[(0, 1)]])).unwrap();
        let b = PointSet::new(pts(&[&[(100, 1)]])).unwrap();
        assert!(equivalence_decision_finite(&a, &b).unwrap().equivalent);
        assert!(!equivalence_decision_finite(&a, &x).unwrap().equivalent);
    }
}
