//! Finite metric spaces with exact distances.
//!
//! Besides the basic betweenness relation this module provides intervals,
//! adjacency, the inner boundary, metric convex hulls, alignedness
//! diagnostics with concrete witnesses, and isometry search.
//!
//! [`SpaceOracle`] abstracts the queries the chain-level machinery needs, so
//! the same code runs on finite spaces and on planar shapes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactLength;

/// Queries on a (possibly infinite) metric space.
pub trait SpaceOracle {
    type Point: Clone + Eq + Hash + Ord + Debug;

    fn member(&self, p: &Self::Point) -> bool;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> ExactLength;

    /// `p ⪯ q ⪯ r`, i.e. `d(p, r) = d(p, q) + d(q, r)`.
    fn is_between(&self, p: &Self::Point, q: &Self::Point, r: &Self::Point) -> bool {
        self.distance(p, r) == self.distance(p, q) + self.distance(q, r)
    }

    fn is_adjacent(&self, p: &Self::Point, q: &Self::Point) -> bool;

    /// A member strictly between two non-adjacent distinct points.
    fn choose_strictly_between(&self, p: &Self::Point, r: &Self::Point) -> Result<Self::Point>;
}

/// A finite metric space with an exact distance matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<ExactLength>>,
}

/// Outcome of the alignedness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignednessReport {
    pub aligned: bool,
    /// `(a, b, x, y)` with `x, y ∈ [a, b]` not ordered along `[a, b]`.
    pub geodetic_violation: Option<[usize; 4]>,
    /// `(a, x, y, b)` with `a ≺ x ≺ y`, `x ≺ y ≺ b` but `{x, y} ⊄ [a, b]`.
    pub four_cut: Option<[usize; 4]>,
}

impl FiniteMetricSpace {
    /// Builds a space from a distance matrix, checking every metric axiom exactly.
    pub fn from_matrix(labels: Vec<String>, dist: Vec<Vec<ExactLength>>) -> Result<Self> {
        let n = dist.len();
        if labels.len() != n {
            return Err(Error::NotMetric(format!(
                "{} labels for a {n}×{n} matrix",
                labels.len()
            )));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotMetric(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::NotMetric(format!("d({i},{i}) = {} is not zero", dist[i][i])));
            }
            for j in 0..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::NotMetric(format!("d({i},{j}) ≠ d({j},{i})")));
                }
                if i != j && !dist[i][j].is_positive() {
                    return Err(Error::NotMetric(format!("d({i},{j}) = {} is not positive", dist[i][j])));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    if k != i && k != j && dist[i][j] > &dist[i][k] + &dist[k][j] {
                        return Err(Error::NotMetric(format!(
                            "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, dist })
    }

    /// Shortest-path metric of a connected undirected graph.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (0..vertices).map(|i| i.to_string()).collect());
        if labels.len() != vertices {
            return Err(Error::Invalid(format!(
                "{} labels for {vertices} vertices",
                labels.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertices];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= vertices {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        size: vertices,
                    });
                }
            }
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![vec![ExactLength::zero(); vertices]; vertices];
        for s in 0..vertices {
            let mut hops = vec![usize::MAX; vertices];
            hops[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if hops[w] == usize::MAX {
                        hops[w] = hops[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(t) = hops.iter().position(|&h| h == usize::MAX) {
                return Err(Error::Disconnected(t));
            }
            for t in 0..vertices {
                dist[s][t] = ExactLength::from_int(hops[t] as i64);
            }
        }
        Ok(Self { labels, dist })
    }

    /// Euclidean distances between rational points.
    pub fn from_points(points: &[Vec<BigRational>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = points.len();
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Invalid(format!("{} labels for {n} points", labels.len())));
        }
        let dim = points.first().map_or(0, Vec::len);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let mut dist = vec![vec![ExactLength::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let sq: BigRational = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .fold(BigRational::zero(), |acc, t| acc + t);
                if sq.is_zero() {
                    return Err(Error::NotMetric(format!("points {i} and {j} coincide")));
                }
                let d = ExactLength::sqrt_rational(&sq).expect("squared distance is nonnegative");
                dist[i][j] = d.clone();
                dist[j][i] = d;
            }
        }
        Ok(Self { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self, i: usize, j: usize) -> &ExactLength {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<ExactLength>] {
        &self.dist
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    /// Induced subspace on the given indices, in the given order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check(i)?;
        }
        Ok(Self {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            dist: indices
                .iter()
                .map(|&i| indices.iter().map(|&j| self.dist[i][j].clone()).collect())
                .collect(),
        })
    }

    /// Smallest distance between distinct points.
    pub fn min_positive_distance(&self) -> Option<ExactLength> {
        let n = self.len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.dist[i][j].clone())
            .min()
    }

    fn between(&self, x: usize, y: usize, z: usize) -> bool {
        self.dist[x][z] == &self.dist[x][y] + &self.dist[y][z]
    }

    /// `x ⪯ y ⪯ z`.
    pub fn is_between(&self, x: usize, y: usize, z: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.between(x, y, z))
    }

    /// `[a, b]` in increasing index order.
    pub fn interval(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check(a)?;
        self.check(b)?;
        Ok((0..self.len()).filter(|&x| self.between(a, x, b)).collect())
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.adjacent(x, y))
    }

    fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y && (0..self.len()).all(|p| p == x || p == y || !self.between(x, p, y))
    }

    /// Points adjacent to at least one other point.
    pub fn inner_boundary(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).any(|y| self.adjacent(x, y)))
            .collect()
    }

    /// Ordered pairs of adjacent points.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.adjacent(x, y))
            .collect()
    }

    fn betweenness_table(&self) -> Vec<bool> {
        let n = self.len();
        let mut table = vec![false; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    table[(x * n + y) * n + z] = self.between(x, y, z);
                }
            }
        }
        table
    }

    /// Geodetic and 4-cut tests; witnesses are lexicographically least.
    pub fn alignedness(&self) -> AlignednessReport {
        let n = self.len();
        let t = self.betweenness_table();
        let bt = |x: usize, y: usize, z: usize| t[(x * n + y) * n + z];
        let mut geodetic_violation = None;
        'geo: for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    if !bt(a, x, b) {
                        continue;
                    }
                    for y in 0..n {
                        if !bt(a, y, b) {
                            continue;
                        }
                        let forward = bt(a, x, y) && bt(x, y, b);
                        let backward = bt(a, y, x) && bt(y, x, b);
                        if !forward && !backward {
                            geodetic_violation = Some([a, b, x, y]);
                            break 'geo;
                        }
                    }
                }
            }
        }
        let four_cut = self.four_cuts_with(&bt).next();
        AlignednessReport {
            aligned: geodetic_violation.is_none() && four_cut.is_none(),
            geodetic_violation,
            four_cut,
        }
    }

    /// Every 4-cut `(a, x, y, b)` in lexicographic order.
    pub fn four_cuts(&self) -> Vec<[usize; 4]> {
        let n = self.len();
        let t = self.betweenness_table();
        let bt = |x: usize, y: usize, z: usize| t[(x * n + y) * n + z];
        self.four_cuts_with(&bt).collect()
    }

    fn four_cuts_with<'a, F>(&'a self, bt: &'a F) -> impl Iterator<Item = [usize; 4]> + 'a
    where
        F: Fn(usize, usize, usize) -> bool,
    {
        let n = self.len();
        let strict = move |p: usize, q: usize, r: usize| p != q && q != r && bt(p, q, r);
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |x| {
                (0..n).flat_map(move |y| {
                    (0..n).filter_map(move |b| {
                        let cut = strict(a, x, y) && strict(x, y, b) && !(bt(a, x, b) && bt(a, y, b));
                        cut.then_some([a, x, y, b])
                    })
                })
            })
        })
    }

    /// Whether `(a, b, x, y)` violates the geodetic condition.
    pub fn is_geodetic_violation(&self, w: [usize; 4]) -> bool {
        let [a, b, x, y] = w;
        self.between(a, x, b)
            && self.between(a, y, b)
            && !(self.between(a, x, y) && self.between(x, y, b))
            && !(self.between(a, y, x) && self.between(y, x, b))
    }

    /// Whether `(a, x, y, b)` is a 4-cut.
    pub fn is_four_cut(&self, w: [usize; 4]) -> bool {
        let [a, x, y, b] = w;
        a != x
            && x != y
            && y != b
            && self.between(a, x, y)
            && self.between(x, y, b)
            && !(self.between(a, x, b) && self.between(a, y, b))
    }

    /// Least superset of `a` closed under taking intervals.
    pub fn metric_convex_hull(&self, a: &[usize]) -> Result<Vec<usize>> {
        for &i in a {
            self.check(i)?;
        }
        let n = self.len();
        let mut hull: BTreeSet<usize> = a.iter().copied().collect();
        loop {
            let members: Vec<usize> = hull.iter().copied().collect();
            let grown: BTreeSet<usize> = (0..n)
                .filter(|&p| {
                    hull.contains(&p) || members.iter().any(|&x| members.iter().any(|&y| self.between(x, p, y)))
                })
                .collect();
            if grown.len() == hull.len() {
                return Ok(hull.into_iter().collect());
            }
            hull = grown;
        }
    }

    /// A distance-preserving bijection `self → other` as an index table.
    pub fn isometry_witness(&self, other: &Self) -> Option<Vec<usize>> {
        let n = self.len();
        if other.len() != n {
            return None;
        }
        let profile = |s: &Self, i: usize| {
            let mut row = s.dist[i].clone();
            row.sort();
            row
        };
        let ours: Vec<_> = (0..n).map(|i| profile(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| profile(other, i)).collect();
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| ours[i] == theirs[j]).collect())
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_isometry(other, &candidates, 0, &mut map, &mut used) {
            let ok = (0..n).all(|i| (0..n).all(|j| self.dist[i][j] == other.dist[map[i]][map[j]]));
            ok.then_some(map)
        } else {
            None
        }
    }

    fn extend_isometry(
        &self,
        other: &Self,
        candidates: &[Vec<usize>],
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] || (0..i).any(|k| self.dist[i][k] != other.dist[j][map[k]]) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if self.extend_isometry(other, candidates, i + 1, map, used) {
                return true;
            }
            used[j] = false;
        }
        map[i] = usize::MAX;
        false
    }
}

impl SpaceOracle for FiniteMetricSpace {
    type Point = usize;

    fn member(&self, p: &usize) -> bool {
        *p < self.len()
    }

    fn distance(&self, p: &usize, q: &usize) -> ExactLength {
        self.dist[*p][*q].clone()
    }

    fn is_between(&self, p: &usize, q: &usize, r: &usize) -> bool {
        self.between(*p, *q, *r)
    }

    fn is_adjacent(&self, p: &usize, q: &usize) -> bool {
        self.adjacent(*p, *q)
    }

    /// The point of the open interval nearest to `p`, lowest index on ties.
    fn choose_strictly_between(&self, p: &usize, r: &usize) -> Result<usize> {
        (0..self.len())
            .filter(|&m| m != *p && m != *r && self.between(*p, m, *r))
            .min_by(|&a, &b| self.dist[*p][a].cmp(&self.dist[*p][b]).then(a.cmp(&b)))
            .ok_or_else(|| Error::Precondition(format!("points {p} and {r} are adjacent or equal")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn line(xs: &[i64]) -> FiniteMetricSpace {
        let pts: Vec<Vec<BigRational>> = xs.iter().map(|&x| vec![rat(x, 1)]).collect();
        FiniteMetricSpace::from_points(&pts, None).unwrap()
    }

    fn named_graph(names: &[&str], edges: &[(&str, &str)]) -> FiniteMetricSpace {
        let idx = |s: &str| names.iter().position(|n| *n == s).unwrap();
        let e: Vec<_> = edges.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
        FiniteMetricSpace::from_graph(names.len(), &e, Some(names.iter().map(|s| s.to_string()).collect())).unwrap()
    }

    fn five_cycle() -> FiniteMetricSpace {
        named_graph(
            &["v", "w", "x", "y", "z"],
            &[("v", "w"), ("w", "x"), ("x", "y"), ("y", "z"), ("z", "v")],
        )
    }

    fn diamond() -> FiniteMetricSpace {
        named_graph(
            &["w", "x", "y", "z"],
            &[("w", "x"), ("x", "y"), ("y", "z"), ("z", "w"), ("w", "y")],
        )
    }

    #[test]
    fn betweenness_and_intervals() {
        let c5 = five_cycle();
        let (v, y, z) = (0, 3, 4);
        assert!(c5.is_between(v, z, y).unwrap());
        assert_eq!(c5.interval(v, y).unwrap(), vec![v, y, z]);
        let l = line(&[0, 1, 3]);
        assert!(l.is_between(0, 1, 2).unwrap());
        assert!(l.is_between(0, 0, 2).unwrap());
        assert_eq!(line(&[0, 1, 2]).interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(diamond().interval(1, 3).unwrap(), vec![0, 1, 2, 3]);
        assert!(matches!(l.interval(0, 7), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn adjacency_and_inner_boundary() {
        let l = line(&[0, 1, 2, 3]);
        assert!(l.is_adjacent(0, 1).unwrap());
        assert!(!l.is_adjacent(0, 2).unwrap());
        assert!(!l.is_adjacent(2, 2).unwrap());
        assert!(five_cycle().is_adjacent(0, 1).unwrap());
        assert_eq!(l.inner_boundary(), vec![0, 1, 2, 3]);
        assert!(line(&[5]).inner_boundary().is_empty());
        assert_eq!(line(&[0, 4]).inner_boundary(), vec![0, 1]);
    }

    #[test]
    fn alignedness_witnesses() {
        let p4 = FiniteMetricSpace::from_graph(4, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        assert!(p4.alignedness().aligned);
        let r = five_cycle().alignedness();
        assert!(!r.aligned);
        assert_eq!(r.four_cut, Some([0, 1, 2, 3]));
        assert_eq!(r.geodetic_violation, None);
        let d = diamond();
        let r = d.alignedness();
        assert_eq!(r.four_cut, None);
        // (x, z, w, y)
        assert_eq!(r.geodetic_violation, Some([1, 3, 0, 2]));
        assert!(d.is_geodetic_violation([1, 3, 0, 2]));
    }

    #[test]
    fn convex_hulls() {
        let d = diamond();
        assert_eq!(d.metric_convex_hull(&[1, 3]).unwrap(), vec![0, 1, 2, 3]);
        let l = line(&[0, 1, 2, 3]);
        assert_eq!(l.metric_convex_hull(&[0, 3]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(l.metric_convex_hull(&[1, 2]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn isometries() {
        let a = line(&[0, 1, 2, 3]);
        let b = a.subspace(&[2, 0, 3, 1]).unwrap();
        let w = a.isometry_witness(&b).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.dist(i, j), b.dist(w[i], w[j]));
            }
        }
        assert!(a.isometry_witness(&line(&[0, 1, 2])).is_none());
        // rotated copy: (3k/5, 4k/5)
        let rot: Vec<Vec<BigRational>> = (0..4).map(|k| vec![rat(3 * k, 5), rat(4 * k, 5)]).collect();
        let r = FiniteMetricSpace::from_points(&rot, None).unwrap();
        assert!(a.isometry_witness(&r).is_some());
        assert!(a.isometry_witness(&line(&[0, 1, 2, 4])).is_none());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            FiniteMetricSpace::from_graph(3, &[(0, 1)], None),
            Err(Error::Disconnected(2))
        ));
        let d = |v: i64| ExactLength::from_int(v);
        let bad = vec![vec![d(0), d(1), d(5)], vec![d(1), d(0), d(1)], vec![d(5), d(1), d(0)]];
        assert!(FiniteMetricSpace::from_matrix(vec!["a".into(), "b".into(), "c".into()], bad).is_err());
    }

    #[test]
    fn chooses_nearest_between_point() {
        let l = line(&[0, 3, 1, 2]);
        assert_eq!(l.choose_strictly_between(&0, &1).unwrap(), 2);
        assert!(l.choose_strictly_between(&0, &2).is_err());
    }
}
