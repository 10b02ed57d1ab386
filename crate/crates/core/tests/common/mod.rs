//! Fixtures, generators and brute-force oracles shared by the integration suites.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use maghom::euclid::{Point, PointSet};
use maghom::exact::rat;
use maghom::io::{read_input, Input};
use maghom::magchain::MetricMap;
use maghom::shape2d::{ConvexBody2D, Hole, Point2, Shape2D};
use maghom::{ExactLength, FiniteMetricSpace};

pub fn q(num: i64, den: i64) -> BigRational {
    rat(num, den)
}

pub fn len(v: i64) -> ExactLength {
    ExactLength::from_int(v)
}

pub fn line(xs: &[i64]) -> FiniteMetricSpace {
    let pts: Vec<Vec<BigRational>> = xs.iter().map(|&x| vec![q(x, 1)]).collect();
    FiniteMetricSpace::from_points(&pts, None).unwrap()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> FiniteMetricSpace {
    FiniteMetricSpace::from_graph(n, edges, None).unwrap()
}

pub fn labelled_graph(labels: &[&str], edges: &[(&str, &str)]) -> FiniteMetricSpace {
    let idx = |s: &str| labels.iter().position(|l| *l == s).unwrap();
    let e: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    FiniteMetricSpace::from_graph(labels.len(), &e, Some(labels.iter().map(|s| s.to_string()).collect())).unwrap()
}

pub fn cycle(n: usize) -> FiniteMetricSpace {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

pub fn path(n: usize) -> FiniteMetricSpace {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    graph(n, &edges)
}

/// Distinct rational points with small numerators and denominators.
pub fn random_points(rng: &mut ChaCha8Rng, count: usize, dim: usize) -> PointSet {
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        let p: Point = (0..dim)
            .map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect();
        seen.insert(p);
    }
    let mut pts: Vec<Point> = seen.into_iter().collect();
    pts.shuffle(rng);
    PointSet::new(pts).unwrap()
}

/// A connected random graph: a random tree plus random extra edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> FiniteMetricSpace {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(extra) && !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
    }
    graph(n, &edges)
}

/// A random tree on `n` vertices.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    graph(n, &edges)
}

pub fn points_strategy(max: usize, dim: usize) -> impl Strategy<Value = PointSet> {
    proptest::collection::btree_set(proptest::collection::vec((-6i64..=6, 1i64..=3), dim), 1..=max).prop_map(|set| {
        let pts: BTreeSet<Point> = set
            .into_iter()
            .map(|p| p.into_iter().map(|(a, b)| q(a, b)).collect())
            .collect();
        PointSet::new(pts.into_iter().collect()).unwrap()
    })
}

/// A point set of dimension one or two.
pub fn aligned_space_strategy(max: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    prop_oneof![points_strategy(max, 1), points_strategy(max, 2)].prop_map(|p| p.metric_space())
}

pub fn graph_strategy(max: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (2..=max, any::<u64>()).prop_map(|(n, seed)| {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_graph(&mut rng, n, 0.35)
    })
}

// ---- brute-force oracles: distances only, nothing from the library's derived tables ----

pub fn between(s: &FiniteMetricSpace, x: usize, y: usize, z: usize) -> bool {
    s.dist(x, z).clone() == s.dist(x, y) + s.dist(y, z)
}

pub fn strictly_between(s: &FiniteMetricSpace, x: usize, y: usize, z: usize) -> bool {
    x != y && y != z && between(s, x, y, z)
}

pub fn interval(s: &FiniteMetricSpace, a: usize, b: usize) -> BTreeSet<usize> {
    (0..s.len()).filter(|&p| between(s, a, p, b)).collect()
}

pub fn adjacent(s: &FiniteMetricSpace, x: usize, y: usize) -> bool {
    x != y && !(0..s.len()).any(|p| strictly_between(s, x, p, y))
}

/// The definition of alignedness checked over every strictly-between chain of degree at most `|X|`.
pub fn aligned_brute_force(s: &FiniteMetricSpace) -> bool {
    fn walk(s: &FiniteMetricSpace, chain: &mut Vec<usize>, max_deg: usize) -> bool {
        if chain.len() >= 2 {
            let (x0, xn) = (chain[0], *chain.last().unwrap());
            let mut union = BTreeSet::new();
            for w in chain.windows(2) {
                union.extend(interval(s, w[0], w[1]));
            }
            if union != interval(s, x0, xn) {
                return false;
            }
        }
        if chain.len() > max_deg {
            return true;
        }
        for next in 0..s.len() {
            let ok = match chain.len() {
                0 => true,
                1 => next != chain[0],
                k => strictly_between(s, chain[k - 2], chain[k - 1], next),
            };
            if ok {
                chain.push(next);
                let fine = walk(s, chain, max_deg);
                chain.pop();
                if !fine {
                    return false;
                }
            }
        }
        true
    }
    walk(s, &mut Vec::new(), s.len())
}

/// Every distance-decreasing self-map or map between two small spaces.
pub fn all_maps(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Vec<Vec<usize>> {
    fn go(x: &FiniteMetricSpace, y: &FiniteMetricSpace, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = t.len();
        if i == x.len() {
            out.push(t.clone());
            return;
        }
        for c in 0..y.len() {
            if (0..i).all(|j| y.dist(c, t[j]) <= x.dist(i, j)) {
                t.push(c);
                go(x, y, t, out);
                t.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(x, y, &mut Vec::new(), &mut out);
    out
}

/// A random distance-decreasing map, by randomised backtracking.
pub fn random_map(rng: &mut ChaCha8Rng, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> MetricMap {
    fn go(rng: &mut ChaCha8Rng, x: &FiniteMetricSpace, y: &FiniteMetricSpace, t: &mut Vec<usize>) -> bool {
        let i = t.len();
        if i == x.len() {
            return true;
        }
        let mut cands: Vec<usize> = (0..y.len()).collect();
        cands.shuffle(rng);
        for c in cands {
            if (0..i).all(|j| y.dist(c, t[j]) <= x.dist(i, j)) {
                t.push(c);
                if go(rng, x, y, t) {
                    return true;
                }
                t.pop();
            }
        }
        false
    }
    let mut t = Vec::new();
    assert!(go(rng, x, y, &mut t));
    MetricMap::new(x, y, t).unwrap()
}

/// A random proper chain of the given degree.
pub fn random_chain(rng: &mut ChaCha8Rng, s: &FiniteMetricSpace, degree: usize) -> Vec<usize> {
    let mut c = vec![rng.gen_range(0..s.len())];
    while c.len() <= degree {
        let last = *c.last().unwrap();
        c.push((last + rng.gen_range(1..s.len())) % s.len());
    }
    c
}

/// Rank over the rationals by fraction-free Gaussian elimination, written
/// independently of the library.
pub fn gaussian_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != BigRational::from_integer(0.into())) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank {
                let k = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let t = &k * &a[rank][j];
                    a[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---- planar shapes ----

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn shape_fixture(name: &str) -> Shape2D {
    match read_input(&data_path(name)).unwrap() {
        Input::Shape(s) => s,
        other => panic!("{name} is a {} input", other.kind()),
    }
}

pub fn pt(x: &str, y: &str) -> Point2 {
    Point2::new(x.parse().unwrap(), y.parse().unwrap())
}

/// `[−2, 2]²` with the open square `(−1, 1)²` removed.
pub fn square_frame() -> Shape2D {
    let square = |r: i64| {
        vec![
            Point2::ints(-r, -r),
            Point2::ints(r, -r),
            Point2::ints(r, r),
            Point2::ints(-r, r),
        ]
    };
    Shape2D::new(
        ConvexBody2D::Polygon { vertices: square(2) },
        vec![Hole::Polygon { vertices: square(1) }],
    )
    .unwrap()
}

/// A rational point with coordinates in `[−k/den, k/den]`.
pub fn random_grid_point(rng: &mut ChaCha8Rng, k: i64, den: i64) -> Point2 {
    let x = rng.gen_range(-k..=k);
    let y = rng.gen_range(-k..=k);
    Point2::rational(q(x, den), q(y, den))
}

/// A random point of the shape drawn from a grid, by rejection.
pub fn random_member(rng: &mut ChaCha8Rng, s: &Shape2D, k: i64, den: i64) -> Point2 {
    loop {
        let p = random_grid_point(rng, k, den);
        if s.contains(&p) {
            return p;
        }
    }
}
