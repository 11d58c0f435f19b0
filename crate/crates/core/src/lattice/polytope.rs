use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{enumerate, LatticePoint};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational};
use crate::lp::{self, LpOutcome};

/// Where a rational point sits relative to a polytope. Boundary and interior
/// are taken relative to the affine hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointClass {
    Vertex,
    BoundaryNonVertex,
    Interior,
}

/// Supporting halfspace `normal · x <= offset` of a facet, relative to the
/// affine hull. The normal lies in the direction space of the hull and is
/// primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Facet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        linalg::dot_mixed(&self.normal, x)
    }
}

#[derive(Debug, Clone)]
struct AffineHull {
    base: Vec<Rational>,
    /// Row-reduced basis of the direction space.
    directions: Vec<Vec<Rational>>,
}

impl AffineHull {
    fn dim(&self) -> usize {
        self.directions.len()
    }

    fn contains(&self, x: &[Rational]) -> bool {
        let diff: Vec<Rational> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.directions.clone();
        rows.push(diff);
        linalg::rank(rows) == self.dim()
    }
}

/// Convex hull of a finite, non-empty set of integer points.
///
/// Derived data (vertices, facets, lattice points) is computed on first use
/// and cached.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    generators: Vec<LatticePoint>,
    affine: OnceLock<AffineHull>,
    vertices: OnceLock<Vec<LatticePoint>>,
    facets: OnceLock<Result<Vec<Facet>>>,
    lattice_points: OnceLock<Vec<LatticePoint>>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Builds a polytope from generator points; duplicates are dropped and
    /// the list is sorted.
    pub fn new(mut generators: Vec<LatticePoint>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptyGenerators);
        };
        let dim = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        generators.sort();
        generators.dedup();
        Ok(LatticePolytope {
            dim,
            generators,
            affine: OnceLock::new(),
            vertices: OnceLock::new(),
            facets: OnceLock::new(),
            lattice_points: OnceLock::new(),
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| LatticePoint::from_i64(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    fn affine(&self) -> &AffineHull {
        self.affine.get_or_init(|| {
            let base = self.generators[0].to_rational();
            let diffs: Vec<Vec<Rational>> = self.generators[1..]
                .iter()
                .map(|g| g.to_rational().iter().zip(&base).map(|(a, b)| a - b).collect())
                .collect();
            let directions = if diffs.is_empty() {
                Vec::new()
            } else {
                linalg::rref(diffs).0
            };
            AffineHull { base, directions }
        })
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine().dim()
    }

    /// Integer points of the hull, lexicographically sorted.
    pub fn lattice_points(&self) -> &[LatticePoint] {
        self.lattice_points
            .get_or_init(|| enumerate::lattice_points_of(&self.generators))
    }

    /// N(P), the number of lattice points.
    pub fn num_lattice_points(&self) -> usize {
        self.lattice_points().len()
    }

    /// Generators that are not in the hull of the remaining generators.
    pub fn vertices(&self) -> &[LatticePoint] {
        self.vertices.get_or_init(|| {
            (0..self.generators.len())
                .filter(|&i| {
                    let others: Vec<&LatticePoint> = self
                        .generators
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, g)| g)
                        .collect();
                    !in_hull_of(&others, &self.generators[i].to_rational())
                })
                .map(|i| self.generators[i].clone())
                .collect()
        })
    }

    /// Exact classification of a rational point; uses cached facets when
    /// available and a rational feasibility program otherwise.
    pub fn hull_contains(&self, x: &[Rational]) -> Result<Containment> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if let Some(Ok(facets)) = self.facets.get() {
            return Ok(self.contains_by_facets(facets, x));
        }
        Ok(self.contains_by_lp(x))
    }

    pub fn contains_point(&self, p: &LatticePoint) -> Result<Containment> {
        self.hull_contains(&p.to_rational())
    }

    fn contains_by_facets(&self, facets: &[Facet], x: &[Rational]) -> Containment {
        if !self.affine().contains(x) {
            return Containment::Outside;
        }
        let mut boundary = false;
        for f in facets {
            let v = f.value(x);
            let off = linalg::rat(&f.offset);
            if v > off {
                return Containment::Outside;
            }
            if v == off {
                boundary = true;
            }
        }
        if boundary {
            Containment::OnBoundary
        } else {
            Containment::Inside
        }
    }

    /// x is in the relative interior iff it is a convex combination with all
    /// weights positive; maximize the smallest weight.
    fn contains_by_lp(&self, x: &[Rational]) -> Containment {
        let m = self.generators.len();
        let gens: Vec<Vec<Rational>> = self.generators.iter().map(|g| g.to_rational()).collect();
        // Variables: mu_1..mu_m, t with lambda_j = mu_j + t.
        let mut a: Vec<Vec<Rational>> = Vec::with_capacity(self.dim + 1);
        for k in 0..self.dim {
            let mut row: Vec<Rational> = gens.iter().map(|g| g[k].clone()).collect();
            row.push(gens.iter().fold(Rational::zero(), |acc, g| acc + &g[k]));
            a.push(row);
        }
        let mut sum_row = vec![Rational::one(); m];
        sum_row.push(linalg::rat_i64(m as i64));
        a.push(sum_row);
        let mut b = x.to_vec();
        b.push(Rational::one());
        let mut cost = vec![Rational::zero(); m];
        cost.push(Rational::one());
        match lp::maximize(&a, &b, &cost) {
            LpOutcome::Infeasible => Containment::Outside,
            LpOutcome::Optimal { value, .. } if value > Rational::zero() => Containment::Inside,
            _ => Containment::OnBoundary,
        }
    }

    /// All facets of the hull relative to its affine hull, sorted by normal.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        self.facets.get_or_init(|| self.compute_facets()).clone()
    }

    fn compute_facets(&self) -> Result<Vec<Facet>> {
        let hull = self.affine().clone();
        let d = hull.dim();
        if d == 0 {
            return Err(Error::Degenerate { affine_dim: 0 });
        }
        let verts: Vec<Vec<Rational>> = self.vertices().iter().map(|v| v.to_rational()).collect();
        let mut found: Vec<Facet> = Vec::new();
        for subset in (0..verts.len()).combinations(d) {
            let s0 = &verts[subset[0]];
            // Conditions a · (w_j · e_k) = 0 for the facet directions e_k.
            let system: Vec<Vec<Rational>> = subset[1..]
                .iter()
                .map(|&i| {
                    let e: Vec<Rational> = verts[i].iter().zip(s0).map(|(a, b)| a - b).collect();
                    hull.directions.iter().map(|w| linalg::dot(w, &e)).collect()
                })
                .collect();
            let ns = if system.is_empty() {
                vec![vec![Rational::one()]]
            } else {
                linalg::nullspace(system, d)
            };
            if ns.len() != 1 {
                continue;
            }
            let mut normal_q = vec![Rational::zero(); self.dim];
            for (coef, w) in ns[0].iter().zip(&hull.directions) {
                for (n, wi) in normal_q.iter_mut().zip(w) {
                    *n += coef * wi;
                }
            }
            let normal = linalg::primitive_integer(&normal_q);
            let offset = linalg::dot_mixed(&normal, s0);
            let vals: Vec<Rational> = verts.iter().map(|v| linalg::dot_mixed(&normal, v)).collect();
            let facet = if vals.iter().all(|v| *v <= offset) {
                Facet {
                    normal,
                    offset: offset.to_integer(),
                }
            } else if vals.iter().all(|v| *v >= offset) {
                Facet {
                    normal: normal.iter().map(|x| -x).collect(),
                    offset: -offset.to_integer(),
                }
            } else {
                continue;
            };
            if !found.contains(&facet) {
                found.push(facet);
            }
        }
        found.sort();
        Ok(found)
    }

    /// Labels every lattice point as vertex, boundary non-vertex, or
    /// interior (relative to the affine hull).
    pub fn classify_lattice_points(&self) -> BTreeMap<LatticePoint, PointClass> {
        let verts = self.vertices();
        self.lattice_points()
            .iter()
            .map(|p| {
                let class = if verts.binary_search(p).is_ok() {
                    PointClass::Vertex
                } else if self.contains_point(p).expect("same dimension") == Containment::Inside {
                    PointClass::Interior
                } else {
                    PointClass::BoundaryNonVertex
                };
                (p.clone(), class)
            })
            .collect()
    }

    fn check_nonnegative(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_nonnegative()) {
            Some(g) => Err(Error::NegativeCoordinate { point: g.clone() }),
            None => Ok(()),
        }
    }

    /// Largest coordinate sum over the lattice points. The maximum of a
    /// linear function is attained at a generator.
    pub fn size(&self) -> Result<BigInt> {
        self.check_nonnegative()?;
        Ok(self
            .generators
            .iter()
            .map(LatticePoint::coord_sum)
            .max()
            .expect("non-empty"))
    }

    /// Embeds into the simplex of size `s` one dimension up via
    /// `v -> (v, s - sum(v))`.
    pub fn homogenize(&self, s: &BigInt) -> Result<LatticePolytope> {
        let size = self.size()?;
        if *s < size {
            return Err(Error::SizeTooSmall {
                requested: s.clone(),
                size,
            });
        }
        LatticePolytope::new(
            self.generators
                .iter()
                .map(|g| g.extended(s - g.coord_sum()))
                .collect(),
        )
    }

    /// Drops the last coordinate of every generator.
    pub fn project_drop_last(&self) -> Result<LatticePolytope> {
        if self.dim < 2 {
            return Err(Error::InvalidArgument(
                "cannot project a one-dimensional polytope".into(),
            ));
        }
        LatticePolytope::new(
            self.generators
                .iter()
                .map(|g| LatticePoint::new(g.coords()[..self.dim - 1].to_vec()))
                .collect(),
        )
    }

    /// Per-coordinate minimum over the lattice points (attained at generators).
    pub fn coordinate_minima(&self) -> Vec<BigInt> {
        (0..self.dim)
            .map(|k| {
                self.generators
                    .iter()
                    .map(|g| g.coords()[k].clone())
                    .min()
                    .expect("non-empty")
            })
            .collect()
    }

    /// Translates so that every coordinate's minimum is zero.
    pub fn translate_to_orthant(&self) -> LatticePolytope {
        let mins = LatticePoint::new(self.coordinate_minima());
        LatticePolytope::new(self.generators.iter().map(|g| g - &mins).collect())
            .expect("translation keeps generators")
    }
}

/// Whether `x` is a convex combination of `points`.
pub(crate) fn in_hull_of(points: &[&LatticePoint], x: &[Rational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = x.len();
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|k| points.iter().map(|p| linalg::rat(&p.coords()[k])).collect())
        .collect();
    a.push(vec![Rational::one(); points.len()]);
    let mut b = x.to_vec();
    b.push(Rational::one());
    lp::feasible(&a, &b)
}
