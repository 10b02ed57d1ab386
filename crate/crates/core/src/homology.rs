//! Integer homology of the magnitude chain complex.
//!
//! Boundary maps preserve the endpoints of a chain, so every graded block
//! splits into independent sub-blocks indexed by `(x₀, xₙ)`; these are
//! reduced separately (and in parallel) by Smith normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactLength;
use crate::magchain::{
    enumerate_chains, induced_thin_map, thin_chains, thin_chains_by_length, MetricMap, SparseMatrix,
};
use crate::metspace::FiniteMetricSpace;

/// Smith normal form `S = U·M·V` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Vec<Vec<BigInt>>,
    pub s: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal(&self.s)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal(s: &[Vec<BigInt>]) -> Vec<BigInt> {
    (0..s.len().min(s.first().map_or(0, Vec::len)))
        .map(|i| s[i][i].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = Reducer {
        a: m.to_vec(),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
    };
    r.run();
    Snf {
        u: r.u.unwrap(),
        s: r.a,
        v: r.v.unwrap(),
    }
}

/// Invariant factors only; cheaper than [`smith_normal_form`].
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut r = Reducer {
        a: m.to_vec(),
        u: None,
        v: None,
    };
    r.run();
    diagonal(&r.a)
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Reducer {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row[i] += k·row[j]
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            let src = m[j].clone();
            for (dst, s) in m[i].iter_mut().zip(src) {
                *dst += k * s;
            }
        }
        apply(&mut self.a, i, j, k);
        if let Some(u) = &mut self.u {
            apply(u, i, j, k);
        }
    }

    /// col[i] += k·col[j]
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            for row in m {
                let s = row[j].clone();
                row[i] += k * s;
            }
        }
        apply(&mut self.a, i, j, k);
        if let Some(v) = &mut self.v {
            apply(v, i, j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let limit = self.rows().min(self.cols());
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in (t + 1)..self.rows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in (t + 1)..self.cols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row or column t
                    let mut best = (t, t);
                    for i in t..self.rows() {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t..self.cols() {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: pull in any entry the pivot does not divide
                let pivot = self.a[t][t].clone();
                let offender = ((t + 1)..self.rows())
                    .find(|&i| ((t + 1)..self.cols()).any(|j| !(&self.a[i][j] % &pivot).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

/// Rank over the rationals by Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let k = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let delta = &k * &a[rank][j];
                    a[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalised to a divisibility chain.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut all: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .map(|&d| BigInt::from(d))
            .collect();
        all.retain(|d| *d > BigInt::one());
        Ok(Self {
            free_rank: self.free_rank + other.free_rank,
            torsion: normalize_torsion(&all)?,
        })
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Rewrites cyclic orders as invariant factors `d₁ | d₂ | …`.
pub fn normalize_torsion(orders: &[BigInt]) -> Result<Vec<u64>> {
    let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
    for d in orders {
        let mut rest = d.abs();
        let mut p = BigInt::from(2);
        while &p * &p <= rest {
            let mut pk = BigInt::one();
            while (&rest % &p).is_zero() {
                rest /= &p;
                pk *= &p;
            }
            if pk > BigInt::one() {
                by_prime.entry(p.clone()).or_default().push(pk);
            }
            p += 1;
        }
        if rest > BigInt::one() {
            by_prime.entry(rest.clone()).or_default().push(rest);
        }
    }
    let k = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![BigInt::one(); k];
    for powers in by_prime.values_mut() {
        powers.sort();
        // largest powers go to the last factors
        for (slot, pk) in factors.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= pk;
        }
    }
    factors
        .into_iter()
        .map(|d| {
            d.to_u64()
                .ok_or_else(|| Error::NotRepresentable(format!("torsion coefficient {d}")))
        })
        .collect()
}

/// One cell of a homology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TableEntry {
    Computed {
        group: HomologyGroup,
    },
    /// A needed block exceeded the basis cap.
    Uncomputed {
        basis_size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub length: ExactLength,
    #[serde(flatten)]
    pub entry: TableEntry,
}

/// Magnitude homology groups by degree and length.
///
/// Every `(n, ℓ)` with `n ≤ n_max` and `ℓ ≤ l_max` that carries chains is
/// listed; gradings that are not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub n_max: usize,
    pub l_max: Option<ExactLength>,
    pub space_digest: String,
    pub cells: Vec<TableCell>,
}

impl HomologyTable {
    pub fn get(&self, n: usize, l: &ExactLength) -> Option<&TableEntry> {
        self.cells.iter().find(|c| c.n == n && c.length == *l).map(|c| &c.entry)
    }

    /// The group at `(n, ℓ)`; zero when not listed, `None` when uncomputed
    /// or outside the computed range.
    pub fn group(&self, n: usize, l: &ExactLength) -> Option<HomologyGroup> {
        if n > self.n_max || self.l_max.as_ref().is_some_and(|m| l > m) {
            return None;
        }
        match self.get(n, l) {
            Some(TableEntry::Computed { group }) => Some(group.clone()),
            Some(TableEntry::Uncomputed { .. }) => None,
            None => Some(HomologyGroup::default()),
        }
    }

    pub fn lengths(&self) -> Vec<ExactLength> {
        let set: BTreeSet<ExactLength> = self.cells.iter().map(|c| c.length.clone()).collect();
        set.into_iter().collect()
    }

    pub fn is_complete(&self) -> bool {
        self.cells
            .iter()
            .all(|c| matches!(c.entry, TableEntry::Computed { .. }))
    }

    /// Aligned text table: rows are degrees, columns lengths.
    pub fn render_text(&self) -> String {
        let lengths = self.lengths();
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["n \\ ℓ".to_string()];
        header.extend(lengths.iter().map(|l| l.to_string()));
        grid.push(header);
        for n in 0..=self.n_max {
            let mut row = vec![n.to_string()];
            for l in &lengths {
                row.push(match self.get(n, l) {
                    Some(TableEntry::Computed { group }) => group.to_string(),
                    Some(TableEntry::Uncomputed { .. }) => "uncomputed".to_string(),
                    None => "0".to_string(),
                });
            }
            grid.push(row);
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// A stable fingerprint of a space (FNV-1a over labels and distances).
pub fn space_digest(space: &FiniteMetricSpace) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |s: &str| {
        for b in s.bytes().chain(std::iter::once(0xff)) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    for l in space.labels() {
        feed(l);
    }
    for row in space.matrix() {
        for d in row {
            feed(&d.to_string());
        }
    }
    format!("{h:016x}")
}

/// Computes `MH_{n,ℓ}` for `n ≤ n_max` and `ℓ ≤ l_max`.
///
/// Without `l_max` every length reachable in degree `n_max` is covered.
/// Blocks with more than `cap` chains are reported as uncomputed.
pub fn magnitude_homology(
    space: &FiniteMetricSpace,
    n_max: usize,
    l_max: Option<&ExactLength>,
    cap: Option<usize>,
) -> Result<HomologyTable> {
    // Without a length bound, degree n_max reaches at most n_max·diam.
    let bound = match l_max {
        Some(l) => l.clone(),
        None => {
            let diam = space
                .matrix()
                .iter()
                .flatten()
                .max()
                .cloned()
                .unwrap_or_else(ExactLength::zero);
            &diam * &ExactLength::from_int(n_max as i64)
        }
    };
    let complex = enumerate_chains(space, n_max + 1, Some(&bound), cap);

    // invariant factors of ∂ₙ at (n, ℓ) per endpoint pair, for 1 ≤ n ≤ n_max + 1
    let mut jobs = Vec::new();
    for block in complex.blocks() {
        if block.degree == 0 {
            continue;
        }
        if complex.is_overflowed(block.degree - 1, &block.length) {
            continue;
        }
        jobs.push((block.degree, block.length.clone()));
    }
    let factors: BTreeMap<(usize, ExactLength), (usize, Vec<BigInt>)> = jobs
        .par_iter()
        .map(|(n, l)| {
            let d = complex.boundary(*n, l);
            let upper = complex.block(*n, l).unwrap();
            let lower_groups = complex.block(n - 1, l).map(|b| b.by_endpoints()).unwrap_or_default();
            let mut rank = 0;
            let mut torsion = Vec::new();
            for (ends, cols) in upper.by_endpoints() {
                let Some(rows) = lower_groups.get(&ends) else { continue };
                let sub = d.submatrix(rows, &cols);
                if sub.is_zero() {
                    continue;
                }
                let inv = invariant_factors(&sub.to_dense());
                rank += inv.len();
                torsion.extend(inv.into_iter().filter(|x| *x > BigInt::one()));
            }
            ((*n, l.clone()), (rank, torsion))
        })
        .collect();

    let mut cells = Vec::new();
    let mut keys: BTreeSet<(usize, ExactLength)> = BTreeSet::new();
    for block in complex.blocks() {
        keys.insert((block.degree, block.length.clone()));
    }
    for ((n, l), _) in complex.overflowed() {
        keys.insert((*n, l.clone()));
    }
    for (n, l) in keys {
        if n > n_max || l > bound {
            continue;
        }
        let needed = [Some(n), n.checked_sub(1), Some(n + 1)];
        if let Some(size) = needed.iter().flatten().find_map(|&k| {
            complex
                .overflowed()
                .find(|((m, ll), _)| *m == k && *ll == l)
                .map(|(_, s)| *s)
        }) {
            cells.push(TableCell {
                n,
                length: l,
                entry: TableEntry::Uncomputed { basis_size: size },
            });
            continue;
        }
        let dim = complex.rank(n, &l);
        let rank_out = if n == 0 {
            0
        } else {
            factors.get(&(n, l.clone())).map_or(0, |f| f.0)
        };
        let (rank_in, torsion) = factors
            .get(&(n + 1, l.clone()))
            .map_or((0, Vec::new()), |f| (f.0, f.1.clone()));
        let group = HomologyGroup {
            free_rank: dim - rank_out - rank_in,
            torsion: normalize_torsion(&torsion)?,
        };
        cells.push(TableCell {
            n,
            length: l,
            entry: TableEntry::Computed { group },
        });
    }
    Ok(HomologyTable {
        n_max,
        l_max: l_max.cloned(),
        space_digest: space_digest(space),
        cells,
    })
}

/// One block where homology and thin chains disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KyMismatch {
    pub n: usize,
    pub length: ExactLength,
    pub homology: Option<HomologyGroup>,
    pub thin_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KyReport {
    pub blocks_checked: usize,
    pub mismatches: Vec<KyMismatch>,
}

impl KyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks that every computed group is free of rank equal to the thin-chain count.
pub fn ky_compare(
    space: &FiniteMetricSpace,
    n_max: usize,
    l_max: Option<&ExactLength>,
    cap: Option<usize>,
) -> Result<KyReport> {
    let report = space.alignedness();
    if !report.aligned {
        let why = match (report.four_cut, report.geodetic_violation) {
            (Some([a, x, y, b]), _) => format!(
                "4-cut ({}, {}, {}, {})",
                space.label(a),
                space.label(x),
                space.label(y),
                space.label(b)
            ),
            (None, Some([a, b, x, y])) => format!(
                "{} and {} lie in [{}, {}] but are not ordered along it",
                space.label(x),
                space.label(y),
                space.label(a),
                space.label(b)
            ),
            _ => unreachable!("a non-aligned verdict carries a witness"),
        };
        return Err(Error::NotAligned(why));
    }
    let table = magnitude_homology(space, n_max, l_max, cap)?;
    ky_compare_table(space, &table)
}

/// Thin-chain comparison against an already computed table.
pub fn ky_compare_table(space: &FiniteMetricSpace, table: &HomologyTable) -> Result<KyReport> {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 0..=table.n_max {
        let thin = thin_chains_by_length(space, n);
        let mut lengths: BTreeSet<ExactLength> = table
            .cells
            .iter()
            .filter(|c| c.n == n)
            .map(|c| c.length.clone())
            .collect();
        lengths.extend(thin.keys().cloned());
        for l in lengths {
            if table.l_max.as_ref().is_some_and(|m| l > *m) {
                continue;
            }
            if matches!(table.get(n, &l), Some(TableEntry::Uncomputed { .. })) {
                continue;
            }
            checked += 1;
            let group = table.group(n, &l);
            let count = thin.get(&l).map_or(0, Vec::len);
            let ok = group
                .as_ref()
                .is_some_and(|g| g.torsion.is_empty() && g.free_rank == count);
            if !ok {
                mismatches.push(KyMismatch {
                    n,
                    length: l,
                    homology: group,
                    thin_count: count,
                });
            }
        }
    }
    Ok(KyReport {
        blocks_checked: checked,
        mismatches,
    })
}

type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Exact quotient in `ℤ[q]`; the division must be exact.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    let b = poly_trim(b.clone());
    let mut rem = poly_trim(a.clone());
    if rem.is_empty() {
        return rem;
    }
    let lead = b.last().expect("division by the zero polynomial").clone();
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(b.len()) + 1];
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let (c, r) = rem.last().unwrap().div_rem(&lead);
        assert!(r.is_zero(), "inexact polynomial division");
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem = poly_trim(rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    poly_trim(quot)
}

/// Fraction-free (Bareiss) determinant over `ℤ[q]`.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev: Poly = vec![BigInt::one()];
    for k in 0..n {
        if a[k][k].is_empty() {
            let Some(p) = ((k + 1)..n).find(|&i| !a[i][k].is_empty()) else {
                return Vec::new();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = poly_sub(&poly_mul(&a[i][j], &a[k][k]), &poly_mul(&a[i][k], &a[k][j]));
                a[i][j] = poly_div_exact(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a
        .get(n.wrapping_sub(1))
        .map_or(vec![BigInt::one()], |r| r[n - 1].clone());
    if sign < 0 {
        det.into_iter().map(|c| -c).collect()
    } else {
        det
    }
}

/// Power-series coefficients of the magnitude of a space with integer distances.
pub fn magnitude_series(space: &FiniteMetricSpace, order: usize) -> Result<Vec<BigInt>> {
    let n = space.len();
    let mut exps = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = space
                .dist(i, j)
                .to_rational()
                .filter(|q| q.is_integer())
                .ok_or_else(|| {
                    Error::Precondition(format!("distance d({i},{j}) = {} is not an integer", space.dist(i, j)))
                })?;
            exps[i][j] = d
                .to_integer()
                .to_usize()
                .ok_or_else(|| Error::Precondition("distance too large".into()))?;
        }
    }
    let monomial = |e: usize, extra: i64| {
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        p[0] += extra;
        poly_trim(p)
    };
    let z: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| monomial(exps[i][j], 0)).collect())
        .collect();
    let zj: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| monomial(exps[i][j], 1)).collect())
        .collect();
    // Σ (Z⁻¹)ᵢⱼ = det(Z + J)/det(Z) − 1
    let den = poly_det(&z);
    let num = poly_sub(&poly_det(&zj), &den);
    if den.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::Invalid("similarity matrix is singular at q = 0".into()));
    }
    let coef = |p: &Poly, k: usize| p.get(k).cloned().unwrap_or_default();
    let mut series: Vec<BigInt> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = coef(&num, k);
        for j in 1..=k {
            c -= coef(&den, j) * &series[k - j];
        }
        series.push(c);
    }
    Ok(series)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub l_max: usize,
    /// `χ_ℓ = Σₙ (−1)ⁿ rank MH_{n,ℓ}`.
    pub euler: Vec<i64>,
    pub magnitude: Vec<String>,
    pub matches: bool,
}

/// Compares the graded Euler characteristic with the magnitude series.
///
/// The space must have integer distances (a graph metric), so every chain
/// step has length at least one and `n ≤ ℓ` covers all contributions.
pub fn euler_magnitude_check(space: &FiniteMetricSpace, l_max: usize) -> Result<EulerReport> {
    let series = magnitude_series(space, l_max)?;
    let bound = ExactLength::from_int(l_max as i64);
    let table = magnitude_homology(space, l_max, Some(&bound), None)?;
    let mut euler = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let len = ExactLength::from_int(l as i64);
        let mut chi: i64 = 0;
        for n in 0..=l {
            let g = table.group(n, &len).expect("complete table");
            let r = g.free_rank as i64;
            chi += if n % 2 == 0 { r } else { -r };
        }
        euler.push(chi);
    }
    let matches = euler.iter().zip(&series).all(|(a, b)| BigInt::from(*a) == *b);
    Ok(EulerReport {
        l_max,
        euler,
        magnitude: series.iter().map(ToString::to_string).collect(),
        matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutualInverseReport {
    pub degree: usize,
    /// `g∘f` fixes `ρX` and `f∘g` fixes `ρY` pointwise.
    pub fixes_inner_boundaries: bool,
    /// `g⋆f⋆` and `f⋆g⋆` are identities on every thin basis of this degree.
    pub thin_maps_inverse: bool,
}

impl MutualInverseReport {
    pub fn mutually_inverse(&self) -> bool {
        self.fixes_inner_boundaries && self.thin_maps_inverse
    }

    pub fn consistent(&self) -> bool {
        self.fixes_inner_boundaries == self.thin_maps_inverse
    }
}

/// Decides whether `f⋆` and `g⋆` are mutually inverse in degree `n ≥ 1`, in two independent ways.
pub fn mutually_inverse_check(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    f: &MetricMap,
    g: &MetricMap,
    n: usize,
) -> Result<MutualInverseReport> {
    if n == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    for (name, s) in [("domain", x), ("codomain", y)] {
        if !s.alignedness().aligned {
            return Err(Error::NotAligned(format!("the {name} is not aligned")));
        }
    }
    let gf = g.after(f);
    let fg = f.after(g);
    let fixes =
        x.inner_boundary().iter().all(|&p| gf.apply(p) == p) && y.inner_boundary().iter().all(|&p| fg.apply(p) == p);

    let mut lengths: BTreeSet<ExactLength> = thin_chains_by_length(x, n).into_keys().collect();
    lengths.extend(thin_chains_by_length(y, n).into_keys());
    let mut inverse = true;
    for l in &lengths {
        let fs = induced_thin_map(f, x, y, n, l);
        let gs = induced_thin_map(g, y, x, n, l);
        if fs.rows != fs.cols || !is_identity(&gs.mul(&fs)) || !is_identity(&fs.mul(&gs)) {
            inverse = false;
            break;
        }
    }
    Ok(MutualInverseReport {
        degree: n,
        fixes_inner_boundaries: fixes,
        thin_maps_inverse: inverse,
    })
}

fn is_identity(m: &SparseMatrix) -> bool {
    m.rows == m.cols && m.entries.len() == m.rows && m.entries.iter().all(|&(r, c, v)| r == c && v == 1)
}

/// Number of thin chains at one grading (re-exported convenience).
pub fn thin_count(space: &FiniteMetricSpace, n: usize, l: &ExactLength) -> usize {
    thin_chains(space, n, l).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn line(xs: &[i64]) -> FiniteMetricSpace {
        let pts: Vec<Vec<BigRational>> = xs.iter().map(|&x| vec![rat(x, 1)]).collect();
        FiniteMetricSpace::from_points(&pts, None).unwrap()
    }

    fn l(v: i64) -> ExactLength {
        ExactLength::from_int(v)
    }

    #[test]
    fn snf_examples() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            smith_normal_form(&id).invariant_factors(),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        let d = m(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&d);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(mat_mul(&mat_mul(&snf.u, &d), &snf.v), snf.s);
        let z = m(&[&[0, 0, 0], &[0, 0, 0]]);
        assert!(smith_normal_form(&z).invariant_factors().is_empty());
        let t = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = smith_normal_form(&t);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(mat_mul(&mat_mul(&snf.u, &t), &snf.v), snf.s);
        assert_eq!(rational_rank(&t), 3);
    }

    #[test]
    fn torsion_normalisation() {
        let orders: Vec<BigInt> = [2, 3, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(normalize_torsion(&orders).unwrap(), vec![2, 12]);
        let g = HomologyGroup {
            free_rank: 2,
            torsion: vec![2],
        };
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2");
        assert_eq!(HomologyGroup::free(3).to_string(), "Z^3");
        assert_eq!(HomologyGroup::default().to_string(), "0");
        let s = g
            .direct_sum(&HomologyGroup {
                free_rank: 0,
                torsion: vec![3],
            })
            .unwrap();
        assert_eq!(s.torsion, vec![6]);
    }

    #[test]
    fn homology_of_small_lines() {
        let x = line(&[0, 1, 2, 3]);
        let t = magnitude_homology(&x, 3, None, None).unwrap();
        assert_eq!(t.group(0, &l(0)), Some(HomologyGroup::free(4)));
        assert_eq!(t.group(0, &l(1)), Some(HomologyGroup::default()));
        assert_eq!(t.group(1, &l(1)), Some(HomologyGroup::free(6)));
        assert!(ky_compare(&x, 3, None, None).unwrap().ok());
        let y = line(&[0, 1, 2]);
        let t = magnitude_homology(&y, 2, None, None).unwrap();
        assert_eq!(t.group(1, &l(1)), Some(HomologyGroup::free(4)));
        assert_eq!(t.group(2, &l(2)), Some(HomologyGroup::free(4)));
        assert_eq!(t.group(2, &l(1)), Some(HomologyGroup::default()));
    }

    #[test]
    fn degree_zero_only() {
        let x = line(&[0, 1, 2, 3]);
        let t = magnitude_homology(&x, 0, None, None).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.group(0, &l(0)), Some(HomologyGroup::free(4)));
        assert!(t.render_text().contains("Z^4"));
    }

    #[test]
    fn uncomputed_blocks_are_marked() {
        let x = line(&[0, 1, 2, 3]);
        let t = magnitude_homology(&x, 2, None, Some(4)).unwrap();
        assert!(matches!(t.get(1, &l(1)), Some(TableEntry::Uncomputed { .. })));
        assert_eq!(t.group(1, &l(1)), None);
        assert!(!t.is_complete());
    }

    #[test]
    fn magnitude_of_two_points() {
        let g = FiniteMetricSpace::from_graph(2, &[(0, 1)], None).unwrap();
        let s = magnitude_series(&g, 5).unwrap();
        let want: Vec<BigInt> = [2, -2, 2, -2, 2, -2].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s, want);
        assert!(euler_magnitude_check(&g, 8).unwrap().matches);
        let single = FiniteMetricSpace::from_graph(1, &[], None).unwrap();
        let r = euler_magnitude_check(&single, 3).unwrap();
        assert_eq!(r.euler, vec![1, 0, 0, 0]);
        assert!(r.matches);
    }

    #[test]
    fn mutual_inverse_examples() {
        let x = line(&[0, 1, 2, 3]);
        let id = MetricMap::identity(4);
        let r = mutually_inverse_check(&x, &x, &id, &id, 1).unwrap();
        assert!(r.mutually_inverse() && r.consistent());
        let refl = MetricMap::new(&x, &x, vec![3, 2, 1, 0]).unwrap();
        assert!(mutually_inverse_check(&x, &x, &refl, &refl, 2)
            .unwrap()
            .mutually_inverse());
        let y = line(&[0, 1, 2]);
        let f = MetricMap::new(&y, &x, vec![0, 1, 2]).unwrap();
        let g = MetricMap::new(&x, &y, vec![0, 1, 2, 2]).unwrap();
        let r = mutually_inverse_check(&y, &x, &f, &g, 1).unwrap();
        assert!(!r.mutually_inverse() && r.consistent());
    }
}
