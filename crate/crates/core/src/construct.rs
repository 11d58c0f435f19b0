//! Maximal dps polytopes in every dimension.
//!
//! Given a maximal dps polytope `P ⊂ R^n` with lattice points `L` and
//! difference set `D`, pick a unimodular `M` with `M(D) ∩ D = ∅`. Then
//! `cvx({(v,0)} ∪ {(Mv,1)})` is maximal dps in `R^(n+1)`. The matrix used
//! has `1 + (R+1)^2` in the corner, `R+1` on the superdiagonal and in the
//! (2,1) slot, and ones on the diagonal, where `R` is the largest absolute
//! coordinate in `D`. Every step is re-verified at runtime.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::catalog;
use crate::dps::{self, DifferenceSet};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope, UnimodularAffineMap};
use crate::linalg;
use crate::matrix::IntMatrix;

/// Largest absolute coordinate over the difference set.
pub fn lift_radius(d: &DifferenceSet) -> Result<BigInt> {
    if d.is_empty() {
        return Err(Error::EmptyDifferenceSet);
    }
    Ok(d.iter().map(|u| linalg::abs_max(u.coords())).max().expect("non-empty"))
}

pub fn build_lift_matrix(n: usize, radius: &BigInt) -> Result<IntMatrix> {
    if n < 2 {
        return Err(Error::LiftDimension(n));
    }
    if radius.is_negative() {
        return Err(Error::InvalidArgument(format!("radius {radius} is negative")));
    }
    let r1 = radius + BigInt::one();
    let mut m = IntMatrix::identity(n);
    m.set(0, 0, BigInt::one() + &r1 * &r1);
    m.set(0, 1, r1.clone());
    m.set(1, 0, r1.clone());
    for k in 1..n - 1 {
        m.set(k, k + 1, r1.clone());
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    /// `M(u) ∉ D` for every `u ∈ D`.
    pub separated: bool,
    pub counterexample: Option<LatticePoint>,
    /// Every image has a coordinate with absolute value above the radius of
    /// `D`; the stronger property the lift matrix is built to satisfy.
    pub escapes_radius: bool,
}

pub fn verify_separation(m: &IntMatrix, d: &DifferenceSet) -> Result<SeparationReport> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if let Some(dim) = d.dim() {
        if dim != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.ncols(),
                found: dim,
            });
        }
    }
    let radius = lift_radius(d).unwrap_or_else(|_| BigInt::zero());
    let mut counterexample = None;
    let mut escapes_radius = true;
    for u in d.iter() {
        let image = LatticePoint::new(m.mul_vec(u.coords()));
        if counterexample.is_none() && d.contains(&image) {
            counterexample = Some(u.clone());
        }
        if linalg::abs_max(image.coords()) <= radius {
            escapes_radius = false;
        }
    }
    Ok(SeparationReport {
        separated: counterexample.is_none(),
        counterexample,
        escapes_radius,
    })
}

/// Collision-freeness of the three blocks of `L' + L'` by last coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitAudit {
    pub lower_lower: bool,
    pub lower_upper: bool,
    pub upper_upper: bool,
}

impl SplitAudit {
    pub fn all_distinct(&self) -> bool {
        self.lower_lower && self.lower_upper && self.upper_upper
    }
}

pub fn audit_split(lower: &[LatticePoint], upper: &[LatticePoint]) -> SplitAudit {
    let distinct = |mut sums: Vec<LatticePoint>| {
        let n = sums.len();
        sums.sort();
        sums.dedup();
        sums.len() == n
    };
    let within = |set: &[LatticePoint]| {
        let mut s = Vec::new();
        for i in 0..set.len() {
            for j in i..set.len() {
                s.push(&set[i] + &set[j]);
            }
        }
        s
    };
    let cross: Vec<LatticePoint> = lower
        .iter()
        .flat_map(|a| upper.iter().map(move |b| a + b))
        .collect();
    SplitAudit {
        lower_lower: distinct(within(lower)),
        lower_upper: distinct(cross),
        upper_upper: distinct(within(upper)),
    }
}

/// Record of one dimension-raising step.
#[derive(Debug, Clone)]
pub struct LiftCertificate {
    pub source_dim: usize,
    pub radius: BigInt,
    pub matrix: IntMatrix,
    pub separation_checked: bool,
    /// `(v, 0)` for `v ∈ L(P)`.
    pub lower: Vec<LatticePoint>,
    /// `(Mv, 1)` for `v ∈ L(P)`.
    pub upper: Vec<LatticePoint>,
    pub split: SplitAudit,
    pub polytope: LatticePolytope,
}

impl LiftCertificate {
    /// Re-runs the separation check and the lattice point count.
    pub fn reverify(&self) -> bool {
        let source: Vec<LatticePoint> = self
            .lower
            .iter()
            .map(|p| LatticePoint::new(p.coords()[..self.source_dim].to_vec()))
            .collect();
        let d = dps::difference_set(&source);
        let sep = verify_separation(&self.matrix, &d).map(|r| r.separated).unwrap_or(false);
        let unimodular = self
            .matrix
            .determinant()
            .map(|det| det.abs() == BigInt::one())
            .unwrap_or(false);
        let expected = 1usize << (self.source_dim + 1);
        sep && unimodular
            && self.polytope.num_lattice_points() == expected
            && dps::is_dps(self.polytope.lattice_points())
    }
}

pub fn lift(p: &LatticePolytope) -> Result<LiftCertificate> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::LiftDimension(n));
    }
    let points = p.lattice_points().to_vec();
    let verdict = dps::check_pairsum(&points);
    if let Some(w) = verdict.witness {
        return Err(Error::NotDps(w.to_string()));
    }
    if !dps::is_maximal_dps(p) {
        return Err(Error::NotMaximalDps {
            dim: n,
            lattice_points: points.len(),
        });
    }
    let d = dps::difference_set(&points);
    let radius = lift_radius(&d)?;
    let matrix = build_lift_matrix(n, &radius)?;
    let det = matrix.determinant()?;
    if det.abs() != BigInt::one() {
        return Err(Error::Verification(format!("lift matrix has det {det}")));
    }
    let sep = verify_separation(&matrix, &d)?;
    if let Some(u) = sep.counterexample {
        return Err(Error::SeparationFailed(u));
    }
    if !sep.escapes_radius {
        return Err(Error::Verification(
            "lift matrix image stays within the radius".into(),
        ));
    }

    let lower: Vec<LatticePoint> = points.iter().map(|v| v.extended(BigInt::zero())).collect();
    let mut upper: Vec<LatticePoint> = points
        .iter()
        .map(|v| LatticePoint::new(matrix.mul_vec(v.coords())).extended(BigInt::one()))
        .collect();
    upper.sort();

    let mut all = lower.clone();
    all.extend(upper.iter().cloned());
    let polytope = LatticePolytope::new(all.clone())?;
    all.sort();
    if polytope.lattice_points() != all.as_slice() {
        return Err(Error::Verification(format!(
            "lifted hull has {} lattice points, expected {}",
            polytope.num_lattice_points(),
            all.len()
        )));
    }
    let split = audit_split(&lower, &upper);
    if !split.all_distinct() || !dps::is_dps(polytope.lattice_points()) {
        return Err(Error::Verification("lifted point set is not dps".into()));
    }
    Ok(LiftCertificate {
        source_dim: n,
        radius,
        matrix,
        separation_checked: true,
        lower,
        upper,
        split,
        polytope,
    })
}

/// Which polytope to use in dimension 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseChoice {
    /// Fixed bases in dimensions 1 to 3.
    #[default]
    Paper,
    /// Fixed bases in dimensions 1 and 2 only; dimension 3 is a lift.
    Lift,
}

pub fn maximal_dps(n: usize) -> Result<LatticePolytope> {
    Ok(maximal_dps_with(n, BaseChoice::Paper)?.0)
}

/// A maximal dps polytope in dimension `n` plus the certificate of the last
/// lift, if one was needed.
pub fn maximal_dps_with(
    n: usize,
    base: BaseChoice,
) -> Result<(LatticePolytope, Option<LiftCertificate>)> {
    let fixed = match (n, base) {
        (0, _) => return Err(Error::ZeroDimension),
        (1, _) => Some(LatticePolytope::from_i64(&[&[0], &[1]])?),
        (2, _) => Some(catalog::example1()),
        (3, BaseChoice::Paper) => Some(catalog::example2_projected()),
        _ => None,
    };
    let (polytope, cert) = match fixed {
        Some(p) => (p, None),
        None => {
            let (prev, _) = maximal_dps_with(n - 1, base)?;
            let cert = lift(&prev)?;
            (cert.polytope.clone(), Some(cert))
        }
    };
    if !dps::is_maximal_dps(&polytope) {
        return Err(Error::Verification(format!(
            "constructed polytope in dimension {n} is not maximal dps"
        )));
    }
    Ok((polytope, cert))
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub polytope: LatticePolytope,
    /// Maps the input onto the output.
    pub map: UnimodularAffineMap,
    pub size_before: BigInt,
    pub size_after: BigInt,
}

/// Size after `x_i += c x_j` followed by translation to the orthant.
fn sheared_size(points: &[Vec<BigInt>], i: usize, j: usize, c: &BigInt) -> BigInt {
    let d = points[0].len();
    let mut max_sum: Option<BigInt> = None;
    let mut min_i: Option<BigInt> = None;
    for p in points {
        let xi = &p[i] + c * &p[j];
        let sum: BigInt = p.iter().sum::<BigInt>() + c * &p[j];
        if max_sum.as_ref().is_none_or(|m| sum > *m) {
            max_sum = Some(sum);
        }
        if min_i.as_ref().is_none_or(|m| xi < *m) {
            min_i = Some(xi);
        }
    }
    let others: BigInt = (0..d)
        .filter(|&k| k != i)
        .map(|k| points.iter().map(|p| p[k].clone()).min().expect("non-empty"))
        .sum();
    max_sum.expect("non-empty") - min_i.expect("non-empty") - others
}

/// Size after `x_i -> -x_i` followed by translation to the orthant.
fn negated_size(points: &[Vec<BigInt>], i: usize) -> BigInt {
    let max_i = points.iter().map(|p| p[i].clone()).max().expect("non-empty");
    let others: BigInt = (0..points[0].len())
        .filter(|&k| k != i)
        .map(|k| points.iter().map(|p| p[k].clone()).min().expect("non-empty"))
        .sum();
    points
        .iter()
        .map(|p| p.iter().sum::<BigInt>() - &p[i] * 2)
        .max()
        .expect("non-empty")
        + max_i
        - others
}

/// Smallest minimizer of a convex integer function on `[lo, hi]`.
fn convex_argmin(lo: BigInt, hi: BigInt, f: impl Fn(&BigInt) -> BigInt) -> BigInt {
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = (&a + &b) >> 1u32;
        let next = &mid + BigInt::one();
        if f(&next) >= f(&mid) {
            b = mid;
        } else {
            a = next;
        }
    }
    a
}

/// Greedy size reduction by elementary shears and translations. Not optimal;
/// the size never increases and the result is an exactly verified
/// unimodular affine image of the input.
pub fn reduce_coordinates(p: &LatticePolytope) -> Result<Reduction> {
    let d = p.dim();
    let start = p.translate_to_orthant();
    let size_before = start.size()?;
    let to_orthant = |pts: &[LatticePoint]| -> UnimodularAffineMap {
        let mins: Vec<BigInt> = (0..d)
            .map(|k| pts.iter().map(|q| q.coords()[k].clone()).min().expect("non-empty"))
            .collect();
        UnimodularAffineMap::translation(mins.into_iter().map(|m| -m).collect())
    };
    let source = p.lattice_points().to_vec();
    let mut map = to_orthant(&source);
    let mut current: Vec<LatticePoint> = source.iter().map(|q| map.apply_point(q)).collect();
    let mut size = size_before.clone();

    loop {
        let coords: Vec<Vec<BigInt>> = current.iter().map(|q| q.coords().to_vec()).collect();
        let mut best: Option<(BigInt, usize, usize, BigInt)> = None;
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let bound = size.clone();
                let c = convex_argmin(-bound.clone(), bound, |c| sheared_size(&coords, i, j, c));
                if c.is_zero() {
                    continue;
                }
                let s = sheared_size(&coords, i, j, &c);
                if s < size && best.as_ref().is_none_or(|b| s < b.0) {
                    best = Some((s, i, j, c));
                }
            }
        }
        for i in 0..d {
            let s = negated_size(&coords, i);
            if s < size && best.as_ref().is_none_or(|b| s < b.0) {
                best = Some((s, i, i, BigInt::zero()));
            }
        }
        let Some((s, i, j, c)) = best else {
            break;
        };
        let shear = if i == j {
            UnimodularAffineMap::negate(d, i)?
        } else {
            UnimodularAffineMap::shear(d, i, j, c)?
        };
        let sheared: Vec<LatticePoint> = current.iter().map(|q| shear.apply_point(q)).collect();
        let shift = to_orthant(&sheared);
        map = shift.compose(&shear.compose(&map)?)?;
        current = sheared.iter().map(|q| shift.apply_point(q)).collect();
        debug_assert_eq!(current.iter().map(LatticePoint::coord_sum).max(), Some(s.clone()));
        size = s;
    }

    let polytope = map.apply(p)?;
    let mut expected = current;
    expected.sort();
    if polytope.lattice_points() != expected.as_slice() {
        return Err(Error::Verification(
            "reduced polytope's lattice points differ from the mapped points".into(),
        ));
    }
    if dps::is_dps(&source) != dps::is_dps(polytope.lattice_points()) {
        return Err(Error::Verification("dps verdict changed under reduction".into()));
    }
    let size_after = polytope.size()?;
    Ok(Reduction {
        polytope,
        map,
        size_before,
        size_after,
    })
}
