//! Integer points, lattice polytopes, and unimodular affine maps.

mod affine;
mod enumerate;
mod polytope;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use affine::UnimodularAffineMap;
pub use enumerate::{lattice_points_box_scan, lattice_points_of};
pub use polytope::{Containment, Facet, LatticePolytope, PointClass};

use crate::linalg::Rational;

/// An integer vector of fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint::new(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn coord_sum(&self) -> BigInt {
        self.coords.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint::new(self.coords.iter().map(|x| x * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        crate::linalg::to_rational_vec(&self.coords)
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: BigInt) -> LatticePoint {
        let mut c = self.coords.clone();
        c.push(last);
        LatticePoint::new(c)
    }

    /// Parity vector, `true` for odd coordinates.
    pub fn parity(&self) -> Vec<bool> {
        self.coords.iter().map(|x| x.is_odd()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|x| !x.is_negative())
    }

    /// When every coordinate is even, the point divided by two.
    pub fn halved(&self) -> Option<LatticePoint> {
        if self.coords.iter().any(Integer::is_odd) {
            return None;
        }
        Some(LatticePoint::new(
            self.coords.iter().map(|x| x / 2).collect(),
        ))
    }
}

/// gcd of the absolute values of the entries; zero only for the zero vector.
pub fn content_gcd(u: &[BigInt]) -> BigInt {
    u.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

impl From<Vec<BigInt>> for LatticePoint {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticePoint::new(coords)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(coords: &[i64]) -> Self {
        LatticePoint::from_i64(coords)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        LatticePoint::from_i64(&coords)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticePoint::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticePoint::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
