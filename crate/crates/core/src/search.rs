//! Exhaustive searches for small maximal dps polytopes.
//!
//! A maximal dps set in dimension `d` has exactly one point in each of the
//! `2^d` classes modulo 2, so the search tree picks one candidate per class
//! in a fixed class order and rejects a branch on its first repeated pair
//! sum. Candidates are the lattice points of the simplex
//! `{u >= 0, Σu <= s}`; a leaf survives if every coordinate attains 0 and
//! the hull holds no lattice point beyond the chosen ones.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dps;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope, PointClass};
use crate::linalg::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub dim: usize,
    pub max_size: u32,
    /// Also require that the hull contains no further lattice points. When
    /// false the witnesses are dps point sets with one point per class.
    pub require_maximal: bool,
    /// Keep only witnesses whose sorted point list is lexicographically
    /// minimal under coordinate permutations.
    pub symmetry_reduction: bool,
    pub thread_count: usize,
    /// Collect every witness instead of stopping at the first.
    pub collect_all: bool,
}

impl SearchSpec {
    pub fn new(dim: usize, max_size: u32) -> Self {
        SearchSpec {
            dim,
            max_size,
            require_maximal: true,
            symmetry_reduction: false,
            thread_count: 1,
            collect_all: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneCounts {
    pub pair_sum: u64,
    pub coordinate_min: u64,
    pub symmetry: u64,
    pub extra_lattice_point: u64,
}

impl PruneCounts {
    fn absorb(&mut self, o: &PruneCounts) {
        self.pair_sum += o.pair_sum;
        self.coordinate_min += o.coordinate_min;
        self.symmetry += o.symmetry;
        self.extra_lattice_point += o.extra_lattice_point;
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub spec: SearchSpec,
    /// In depth-first order; each witness's generators are its sorted points.
    pub witnesses: Vec<LatticePolytope>,
    pub nodes_explored: u64,
    pub pruned_by: PruneCounts,
    pub elapsed: Duration,
}

/// All `u` in `Z^dim` with `u >= 0` and `Σu <= s`, lexicographically.
pub fn candidate_points(dim: usize, s: u32) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(dim);
    fn rec(dim: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if cur.len() == dim {
            out.push(LatticePoint::from_i64(cur));
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(dim, left - x, cur, out);
            cur.pop();
        }
    }
    rec(dim, i64::from(s), &mut cur, &mut out);
    out
}

fn class_index(p: &[i64]) -> usize {
    p.iter()
        .enumerate()
        .fold(0, |acc, (k, x)| acc | ((x.rem_euclid(2) as usize) << k))
}

/// Set of pair sums; dense bitmap when the sum box is small.
enum SumSet {
    Dense { base: i64, offset: i64, bits: Vec<u64> },
    Sparse(HashSet<Vec<i64>>),
}

impl SumSet {
    fn for_box(dim: usize, lo: i64, hi: i64) -> SumSet {
        let base = 2 * (hi - lo) + 1;
        let cells = (base as u128).checked_pow(dim as u32);
        match cells {
            Some(c) if c <= 1 << 26 => SumSet::Dense {
                base,
                offset: 2 * lo,
                bits: vec![0; (c as usize).div_ceil(64)],
            },
            _ => SumSet::Sparse(HashSet::new()),
        }
    }

    fn key(base: i64, offset: i64, a: &[i64], b: &[i64]) -> usize {
        a.iter()
            .zip(b)
            .rev()
            .fold(0i64, |acc, (x, y)| acc * base + (x + y - offset)) as usize
    }

    fn contains(&self, a: &[i64], b: &[i64]) -> bool {
        match self {
            SumSet::Dense { base, offset, bits } => {
                let k = Self::key(*base, *offset, a, b);
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            SumSet::Sparse(set) => set.contains(&sum_vec(a, b)),
        }
    }

    fn toggle(&mut self, a: &[i64], b: &[i64], on: bool) {
        match self {
            SumSet::Dense { base, offset, bits } => {
                let k = Self::key(*base, *offset, a, b);
                if on {
                    bits[k / 64] |= 1 << (k % 64);
                } else {
                    bits[k / 64] &= !(1 << (k % 64));
                }
            }
            SumSet::Sparse(set) => {
                if on {
                    set.insert(sum_vec(a, b));
                } else {
                    set.remove(&sum_vec(a, b));
                }
            }
        }
    }
}

fn sum_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Tries to add `c` to `chosen` keeping all pair sums distinct.
fn try_push(sums: &mut SumSet, chosen: &mut Vec<Vec<i64>>, c: &[i64]) -> bool {
    if sums.contains(c, c) || chosen.iter().any(|p| sums.contains(p, c)) {
        return false;
    }
    sums.toggle(c, c, true);
    for p in chosen.iter() {
        sums.toggle(p, c, true);
    }
    chosen.push(c.to_vec());
    true
}

fn pop(sums: &mut SumSet, chosen: &mut Vec<Vec<i64>>) {
    let c = chosen.pop().expect("non-empty");
    sums.toggle(&c, &c, false);
    for p in chosen.iter() {
        sums.toggle(p, &c, false);
    }
}

fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Facet inequalities `normal . x <= offset` of a full-dimensional hull, or
/// `None` if the points span less than the ambient space.
fn facets_i128(points: &[Vec<i64>]) -> Option<Vec<(Vec<i128>, i128)>> {
    let d = points[0].len();
    let mut found = BTreeSet::new();
    for subset in (0..points.len()).combinations(d) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| i128::from(a - b))
                    .collect()
            })
            .collect();
        let mut normal: Vec<i128> = (0..d)
            .map(|k| {
                let minor: Vec<Vec<i128>> = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| *x).collect())
                    .collect();
                if k % 2 == 0 {
                    det_i128(minor)
                } else {
                    -det_i128(minor)
                }
            })
            .collect();
        if normal.iter().all(|x| *x == 0) {
            continue;
        }
        let g = normal.iter().fold(0i128, |g, x| g.gcd(x));
        normal.iter_mut().for_each(|x| *x /= g);
        let value = |p: &[i64]| -> i128 { normal.iter().zip(p).map(|(n, x)| n * i128::from(*x)).sum() };
        let offset = value(base);
        let (mut above, mut below) = (false, false);
        for p in points {
            match value(p).cmp(&offset) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        match (above, below) {
            (true, true) => {}
            (false, false) => return None,
            (true, false) => {
                found.insert((normal.iter().map(|x| -x).collect::<Vec<_>>(), -offset));
            }
            (false, true) => {
                found.insert((normal, offset));
            }
        }
    }
    if found.is_empty() {
        None
    } else {
        Some(found.into_iter().collect())
    }
}

/// Whether the hull of `points` contains a lattice point not in `points`.
/// Exact; falls back to general enumeration for lower-dimensional hulls.
fn hull_has_extra_point(points: &[Vec<i64>]) -> bool {
    let d = points[0].len();
    if d == 0 {
        return false;
    }
    let Some(facets) = facets_i128(points) else {
        let lp: Vec<LatticePoint> = points.iter().map(|p| LatticePoint::from_i64(p)).collect();
        let poly = LatticePolytope::new(lp).expect("non-empty");
        return poly.num_lattice_points() > points.len();
    };
    let lo: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).min().expect("non-empty")).collect();
    let hi: Vec<i64> = (0..d).map(|k| points.iter().map(|p| p[k]).max().expect("non-empty")).collect();
    let members: HashSet<&[i64]> = points.iter().map(|p| p.as_slice()).collect();
    let mut x = lo.clone();
    loop {
        if !members.contains(x.as_slice())
            && facets.iter().all(|(n, c)| {
                n.iter().zip(&x).map(|(a, b)| a * i128::from(*b)).sum::<i128>() <= *c
            })
        {
            return true;
        }
        let mut k = 0;
        loop {
            if k == d {
                return false;
            }
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

fn sorted_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut v = points.to_vec();
    v.sort();
    v
}

fn is_permutation_canonical(points: &[Vec<i64>]) -> bool {
    let d = points[0].len();
    let base = sorted_points(points);
    (0..d).permutations(d).all(|perm| {
        let permuted: Vec<Vec<i64>> = points
            .iter()
            .map(|p| perm.iter().map(|&k| p[k]).collect())
            .collect();
        base <= sorted_points(&permuted)
    })
}

struct Branch {
    witnesses: Vec<Vec<Vec<i64>>>,
    nodes: u64,
    pruned: PruneCounts,
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    classes: &'a [Vec<Vec<i64>>],
    sums: SumSet,
    chosen: Vec<Vec<i64>>,
    out: Branch,
}

impl Searcher<'_> {
    /// Returns true when the search should stop.
    fn descend(&mut self, level: usize) -> bool {
        self.out.nodes += 1;
        if level == self.classes.len() {
            return self.leaf();
        }
        for c in &self.classes[level] {
            if !try_push(&mut self.sums, &mut self.chosen, c) {
                self.out.pruned.pair_sum += 1;
                continue;
            }
            let stop = self.descend(level + 1);
            pop(&mut self.sums, &mut self.chosen);
            if stop {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self) -> bool {
        let d = self.spec.dim;
        if (0..d).any(|k| self.chosen.iter().all(|p| p[k] != 0)) {
            self.out.pruned.coordinate_min += 1;
            return false;
        }
        if self.spec.symmetry_reduction && !is_permutation_canonical(&self.chosen) {
            self.out.pruned.symmetry += 1;
            return false;
        }
        if self.spec.require_maximal && hull_has_extra_point(&self.chosen) {
            self.out.pruned.extra_lattice_point += 1;
            return false;
        }
        self.out.witnesses.push(sorted_points(&self.chosen));
        !self.spec.collect_all
    }
}

fn to_polytope(points: &[Vec<i64>]) -> LatticePolytope {
    LatticePolytope::new(points.iter().map(|p| LatticePoint::from_i64(p)).collect())
        .expect("non-empty witness")
}

/// Runs the search; the result does not depend on `thread_count`.
pub fn min_size_search(spec: &SearchSpec) -> Result<SearchReport> {
    let start = Instant::now();
    if spec.dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if spec.dim > 16 {
        return Err(Error::InvalidArgument(format!(
            "search dimension {} is out of range",
            spec.dim
        )));
    }
    if spec.thread_count == 0 {
        return Err(Error::InvalidArgument("thread count must be positive".into()));
    }
    let mut classes: Vec<Vec<Vec<i64>>> = vec![Vec::new(); 1 << spec.dim];
    for p in candidate_points(spec.dim, spec.max_size) {
        let v: Vec<i64> = p.coords().iter().map(|x| x.to_i64().expect("small")).collect();
        classes[class_index(&v)].push(v);
    }
    let s = i64::from(spec.max_size);
    let run_branch = |first: &Vec<i64>| -> Branch {
        let mut searcher = Searcher {
            spec,
            classes: &classes,
            sums: SumSet::for_box(spec.dim, 0, s),
            chosen: Vec::with_capacity(classes.len()),
            out: Branch {
                witnesses: Vec::new(),
                nodes: 0,
                pruned: PruneCounts::default(),
            },
        };
        try_push(&mut searcher.sums, &mut searcher.chosen, first);
        searcher.descend(1);
        searcher.out
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.thread_count)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let branches: Vec<Branch> = pool.install(|| classes[0].par_iter().map(run_branch).collect());

    let mut nodes = 1;
    let mut pruned = PruneCounts::default();
    let mut found = Vec::new();
    for b in branches {
        nodes += b.nodes;
        pruned.absorb(&b.pruned);
        found.extend(b.witnesses);
        if !spec.collect_all && !found.is_empty() {
            break;
        }
    }
    let witnesses: Vec<LatticePolytope> = found.iter().map(|w| to_polytope(w)).collect();
    if spec.require_maximal {
        for w in &witnesses {
            if !dps::is_maximal_dps(w) {
                return Err(Error::Verification(format!(
                    "search witness {:?} fails exact re-validation",
                    w.generators()
                )));
            }
        }
    }
    Ok(SearchReport {
        spec: *spec,
        witnesses,
        nodes_explored: nodes,
        pruned_by: pruned,
        elapsed: start.elapsed(),
    })
}

/// Distinct images of `p`'s generators under all coordinate permutations.
pub fn permutation_orbit(p: &LatticePolytope) -> Vec<LatticePolytope> {
    let d = p.dim();
    let images: BTreeSet<Vec<LatticePoint>> = (0..d)
        .permutations(d)
        .map(|perm| {
            let mut pts: Vec<LatticePoint> = p
                .generators()
                .iter()
                .map(|g| LatticePoint::new(perm.iter().map(|&k| g.coords()[k].clone()).collect()))
                .collect();
            pts.sort();
            pts
        })
        .collect();
    images
        .into_iter()
        .map(|pts| LatticePolytope::new(pts).expect("non-empty"))
        .collect()
}

/// Shape data of a maximal dps polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R2Witness {
    pub vertices: Vec<LatticePoint>,
    pub twice_area: BigInt,
    pub non_vertices: Vec<LatticePoint>,
}

impl R2Witness {
    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    /// The vertex sum equals three times the single non-vertex point.
    pub fn centroid_identity(&self) -> bool {
        if !self.is_triangle() || self.non_vertices.len() != 1 {
            return false;
        }
        let sum = self.vertices.iter().fold(LatticePoint::zero(2), |acc, v| &acc + v);
        sum == self.non_vertices[0].scale(&BigInt::from(3))
    }

    pub fn matches_classification(&self) -> bool {
        self.is_triangle() && self.twice_area == BigInt::from(3) && self.centroid_identity()
    }
}

fn twice_area(vertices: &[LatticePoint]) -> BigInt {
    let n = vertices.len();
    if n < 3 {
        return BigInt::zero();
    }
    // Shoelace needs cyclic order: sort by angle around the vertex centroid.
    let centroid: Vec<Rational> = (0..2)
        .map(|k| {
            vertices.iter().map(|v| linalg::rat(&v.coords()[k])).sum::<Rational>()
                / linalg::rat_i64(n as i64)
        })
        .collect();
    let offset = |v: &LatticePoint| {
        (
            linalg::rat(&v.coords()[0]) - &centroid[0],
            linalg::rat(&v.coords()[1]) - &centroid[1],
        )
    };
    let lower_half = |x: &Rational, y: &Rational| y.is_negative() || (y.is_zero() && x.is_negative());
    let mut order: Vec<&LatticePoint> = vertices.iter().collect();
    order.sort_by(|a, b| {
        let (ax, ay) = offset(a);
        let (bx, by) = offset(b);
        lower_half(&ax, &ay)
            .cmp(&lower_half(&bx, &by))
            .then_with(|| (&bx * &ay).cmp(&(&ax * &by)))
    });
    let mut acc = BigInt::zero();
    for i in 0..n {
        let a = order[i].coords();
        let b = order[(i + 1) % n].coords();
        acc += &a[0] * &b[1] - &a[1] * &b[0];
    }
    acc.abs()
}

pub fn classify_r2_witness(p: &LatticePolytope) -> Result<R2Witness> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if !dps::is_maximal_dps(p) {
        return Err(Error::NotMaximalDps {
            dim: 2,
            lattice_points: p.num_lattice_points(),
        });
    }
    let vertices = p.vertices().to_vec();
    let non_vertices = p
        .lattice_points()
        .iter()
        .filter(|q| !vertices.contains(q))
        .cloned()
        .collect();
    Ok(R2Witness {
        twice_area: twice_area(&vertices),
        vertices,
        non_vertices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R2Summary {
    pub total: usize,
    pub matching: usize,
    /// Witnesses that break the expected shape, with a description.
    pub findings: Vec<String>,
}

pub fn classify_r2_witnesses(report: &SearchReport) -> Result<R2Summary> {
    let mut summary = R2Summary {
        total: report.witnesses.len(),
        matching: 0,
        findings: Vec::new(),
    };
    for w in &report.witnesses {
        let c = classify_r2_witness(w)?;
        if c.matches_classification() {
            summary.matching += 1;
        } else {
            summary.findings.push(format!(
                "{:?}: vertices {}, twice area {}, non-vertices {}",
                w.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                c.vertices.len(),
                c.twice_area,
                c.non_vertices.len()
            ));
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinatorialType {
    pub vertices: usize,
    pub boundary_non_vertices: usize,
    pub interior: usize,
}

impl CombinatorialType {
    pub fn all_boundary(&self) -> bool {
        self.interior == 0
    }
}

/// Counts lattice points by position, relative to the affine hull.
pub fn combinatorial_type(p: &LatticePolytope) -> CombinatorialType {
    let mut t = CombinatorialType {
        vertices: 0,
        boundary_non_vertices: 0,
        interior: 0,
    };
    for class in p.classify_lattice_points().values() {
        match class {
            PointClass::Vertex => t.vertices += 1,
            PointClass::BoundaryNonVertex => t.boundary_non_vertices += 1,
            PointClass::Interior => t.interior += 1,
        }
    }
    t
}

#[derive(Debug, Clone)]
pub struct ExtensionReport {
    /// Added points range over `|u_k| <= region` in every coordinate.
    pub region: u32,
    pub extension: Option<LatticePolytope>,
    pub nodes_explored: u64,
}

/// Backtracking probe for a maximal dps superset of `L(p)`. `None` only
/// means nothing was found inside the region.
pub fn extend_to_maximal(p: &LatticePolytope, region: u32) -> Result<ExtensionReport> {
    let base = p.lattice_points();
    if let Some(w) = dps::check_pairsum(base).witness {
        return Err(Error::NotDps(w.to_string()));
    }
    let d = p.dim();
    if d > 16 {
        return Err(Error::InvalidArgument(format!("dimension {d} is out of range")));
    }
    let to_small = |q: &LatticePoint| -> Result<Vec<i64>> {
        q.coords()
            .iter()
            .map(|x| {
                x.to_i64()
                    .filter(|v| v.unsigned_abs() < 1 << 40)
                    .ok_or_else(|| Error::InvalidArgument(format!("coordinate {x} too large")))
            })
            .collect()
    };
    let base_small: Vec<Vec<i64>> = base.iter().map(to_small).collect::<Result<_>>()?;
    let occupied: BTreeSet<usize> = base_small.iter().map(|q| class_index(q)).collect();
    let r = i64::from(region);
    let mut classes: Vec<Vec<Vec<i64>>> = vec![Vec::new(); 1 << d];
    for u in (0..d).map(|_| -r..=r).multi_cartesian_product() {
        let c = class_index(&u);
        if !occupied.contains(&c) && !base_small.contains(&u) {
            classes[c].push(u);
        }
    }
    for cls in &mut classes {
        cls.sort_by_key(|u| (u.iter().map(|x| x.abs()).sum::<i64>(), u.clone()));
    }
    let missing: Vec<Vec<Vec<i64>>> = (0..1 << d)
        .filter(|c| !occupied.contains(c))
        .map(|c| std::mem::take(&mut classes[c]))
        .collect();

    let lo = base_small.iter().flatten().copied().min().unwrap_or(0).min(-r);
    let hi = base_small.iter().flatten().copied().max().unwrap_or(0).max(r);
    let mut sums = SumSet::for_box(d, lo, hi);
    let mut chosen = Vec::new();
    for q in &base_small {
        try_push(&mut sums, &mut chosen, q);
    }

    fn rec(
        level: usize,
        missing: &[Vec<Vec<i64>>],
        sums: &mut SumSet,
        chosen: &mut Vec<Vec<i64>>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if level == missing.len() {
            return !hull_has_extra_point(chosen);
        }
        for c in &missing[level] {
            if try_push(sums, chosen, c) {
                if rec(level + 1, missing, sums, chosen, nodes) {
                    return true;
                }
                pop(sums, chosen);
            }
        }
        false
    }

    let mut nodes = 0;
    let extension = if rec(0, &missing, &mut sums, &mut chosen, &mut nodes) {
        let poly = to_polytope(&chosen);
        if !dps::is_maximal_dps(&poly) {
            return Err(Error::Verification("extension fails exact re-validation".into()));
        }
        Some(poly)
    } else {
        None
    };
    Ok(ExtensionReport {
        region,
        extension,
        nodes_explored: nodes,
    })
}
