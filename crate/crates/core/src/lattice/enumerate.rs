//! Lattice-point enumeration.
//!
//! The main routine slices the hull by integer hyperplanes `c · x = k` and
//! recurses on each slice one dimension down. The slicing direction `c` is
//! the thinnest row of an LLL-reduced unimodular basis, so polytopes whose
//! coordinates are huge (iterated lifts) but which are thin in some lattice
//! direction are handled without scanning their bounding box. A slice of
//! `cvx(V)` by a hyperplane is the hull of the points of `V` on it together
//! with the crossings of segments between points on opposite sides.
//!
//! The bounding-box scan is kept as an independent route for tests.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polytope::{Containment, LatticePolytope};
use super::LatticePoint;
use crate::linalg::{self, Rational};
use crate::lll;

/// Above this many integer levels along every coordinate axis the slicing
/// direction is chosen from an LLL-reduced basis instead.
const AXIS_LEVEL_LIMIT: usize = 32;

/// Integer points in the convex hull of `generators`, sorted.
pub fn lattice_points_of(generators: &[LatticePoint]) -> Vec<LatticePoint> {
    let Some(first) = generators.first() else {
        return Vec::new();
    };
    let d = first.dim();
    let gens: Vec<Vec<Rational>> = generators.iter().map(|g| g.to_rational()).collect();
    let mut out: Vec<LatticePoint> = enumerate_rec(gens, d)
        .into_iter()
        .map(LatticePoint::new)
        .collect();
    out.sort();
    out.dedup();
    out
}

fn enumerate_rec(mut gens: Vec<Vec<Rational>>, d: usize) -> Vec<Vec<BigInt>> {
    gens.sort();
    gens.dedup();
    if gens.is_empty() {
        return Vec::new();
    }
    if d == 0 {
        return vec![Vec::new()];
    }
    if d == 1 {
        let lo = gens.iter().map(|g| &g[0]).min().expect("non-empty");
        let hi = gens.iter().map(|g| &g[0]).max().expect("non-empty");
        let mut out = Vec::new();
        let mut k = linalg::ceil_int(lo);
        let end = linalg::floor_int(hi);
        while k <= end {
            out.push(vec![k.clone()]);
            k += 1;
        }
        return out;
    }

    let axis_levels: Vec<BigInt> = (0..d).map(|i| level_count(&gens, i)).collect();
    let (inverse, ys) = if axis_levels.iter().all(|l| *l <= BigInt::from(AXIS_LEVEL_LIMIT)) {
        (None, gens)
    } else {
        let t = lll::reduce(&shape_form(&gens, d));
        let inv = t.inverse_integer().expect("LLL basis is unimodular");
        let ys: Vec<Vec<Rational>> = gens
            .iter()
            .map(|g| t.rows().iter().map(|r| linalg::dot_mixed(r, g)).collect())
            .collect();
        (Some(inv), ys)
    };

    let levels: Vec<BigInt> = (0..d).map(|i| level_count(&ys, i)).collect();
    if levels.iter().any(|l| *l <= BigInt::zero()) {
        return Vec::new();
    }
    let axis = (0..d).min_by(|&a, &b| levels[a].cmp(&levels[b])).expect("d >= 2");

    let lo = linalg::ceil_int(ys.iter().map(|y| &y[axis]).min().expect("non-empty"));
    let hi = linalg::floor_int(ys.iter().map(|y| &y[axis]).max().expect("non-empty"));
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        let slice = slice_at(&ys, axis, &linalg::rat(&k));
        for rest in enumerate_rec(slice, d - 1) {
            let mut y = rest;
            y.insert(axis, k.clone());
            let x = match &inverse {
                Some(inv) => inv.mul_vec(&y),
                None => y,
            };
            out.push(x);
        }
        k += 1;
    }
    out
}

/// Number of integers between the min and max of coordinate `i`.
fn level_count(points: &[Vec<Rational>], i: usize) -> BigInt {
    let lo = points.iter().map(|p| &p[i]).min().expect("non-empty");
    let hi = points.iter().map(|p| &p[i]).max().expect("non-empty");
    linalg::floor_int(hi) - linalg::ceil_int(lo) + BigInt::one()
}

/// Scatter matrix of the points plus the identity, a positive definite form
/// whose short vectors are directions of small spread.
fn shape_form(points: &[Vec<Rational>], d: usize) -> Vec<Vec<Rational>> {
    let m = linalg::rat_i64(points.len() as i64);
    let mean: Vec<Rational> = (0..d)
        .map(|i| points.iter().fold(Rational::zero(), |acc, p| acc + &p[i]) / &m)
        .collect();
    let centered: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.iter().zip(&mean).map(|(a, b)| a - b).collect())
        .collect();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let s = centered
                        .iter()
                        .fold(Rational::zero(), |acc, c| acc + &c[i] * &c[j]);
                    if i == j {
                        s + Rational::one()
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect()
}

/// Generators of `cvx(points) ∩ {y_axis = k}` with the axis coordinate
/// removed.
fn slice_at(points: &[Vec<Rational>], axis: usize, k: &Rational) -> Vec<Vec<Rational>> {
    let drop = |p: &[Rational]| -> Vec<Rational> {
        p.iter()
            .enumerate()
            .filter(|&(i, _)| i != axis)
            .map(|(_, x)| x.clone())
            .collect()
    };
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let (mut below, mut above) = (Vec::new(), Vec::new());
    for p in points {
        match p[axis].cmp(k) {
            std::cmp::Ordering::Equal => out.push(drop(p)),
            std::cmp::Ordering::Less => below.push(p),
            std::cmp::Ordering::Greater => above.push(p),
        }
    }
    for (a, b) in below.iter().cartesian_product(above.iter()) {
        let t = (k - &a[axis]) / (&b[axis] - &a[axis]);
        let cross: Vec<Rational> = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| x + &t * (y - x))
            .collect();
        out.push(drop(&cross));
    }
    out
}

/// Scans the integer bounding box and keeps points the hull contains.
pub fn lattice_points_box_scan(p: &LatticePolytope) -> Vec<LatticePoint> {
    let d = p.dim();
    let lo = p.coordinate_minima();
    let hi: Vec<BigInt> = (0..d)
        .map(|k| {
            p.generators()
                .iter()
                .map(|g| g.coords()[k].clone())
                .max()
                .expect("non-empty")
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let pt = LatticePoint::new(cur.clone());
        if p.contains_point(&pt).expect("dimension matches") != Containment::Outside {
            out.push(pt);
        }
        // Odometer increment, last coordinate fastest.
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::from_i64(p)).collect()
    }

    #[test]
    fn example1_points() {
        let got = lattice_points_of(&pts(&[&[0, 1], &[1, 2], &[2, 0]]));
        assert_eq!(got, pts(&[&[0, 1], &[1, 1], &[1, 2], &[2, 0]]));
    }

    #[test]
    fn segment_and_point() {
        assert_eq!(lattice_points_of(&pts(&[&[0], &[1]])), pts(&[&[0], &[1]]));
        assert_eq!(lattice_points_of(&pts(&[&[4, -2]])), pts(&[&[4, -2]]));
        assert_eq!(
            lattice_points_of(&pts(&[&[0, 0], &[3, 6]])),
            pts(&[&[0, 0], &[1, 2], &[2, 4], &[3, 6]])
        );
    }

    #[test]
    fn sheared_triangle_needs_reduction() {
        // Image of the Example 1 triangle under [[1000, 999], [1, 1]].
        let m = IntMatrix::from_i64(&[&[1000, 999], &[1, 1]]).unwrap();
        let tri: Vec<LatticePoint> = pts(&[&[0, 1], &[1, 2], &[2, 0]])
            .iter()
            .map(|p| LatticePoint::new(m.mul_vec(p.coords())))
            .collect();
        let got = lattice_points_of(&tri);
        let want: Vec<LatticePoint> = {
            let mut w: Vec<LatticePoint> = pts(&[&[0, 1], &[1, 1], &[1, 2], &[2, 0]])
                .iter()
                .map(|p| LatticePoint::new(m.mul_vec(p.coords())))
                .collect();
            w.sort();
            w
        };
        assert_eq!(got, want);
    }

    #[test]
    fn box_scan_agrees_on_small_cases() {
        for gens in [
            pts(&[&[0, 1], &[1, 2], &[2, 0]]),
            pts(&[&[0, 0], &[4, 1], &[1, 3]]),
            pts(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 1], &[1, 1, 2]]),
        ] {
            let p = LatticePolytope::new(gens.clone()).unwrap();
            assert_eq!(lattice_points_of(&gens), lattice_points_box_scan(&p));
        }
    }
}
