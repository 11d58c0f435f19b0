//! The worked examples used as golden fixtures throughout the crate.

use crate::lattice::{LatticePoint, LatticePolytope, UnimodularAffineMap};
use crate::matrix::IntMatrix;

fn points(v: &[&[i64]]) -> Vec<LatticePoint> {
    v.iter().map(|p| LatticePoint::from_i64(p)).collect()
}

/// Triangle with vertices (0,1), (1,2), (2,0); its only other lattice point
/// is (1,1).
pub fn example1() -> LatticePolytope {
    LatticePolytope::from_i64(&[&[0, 1], &[1, 2], &[2, 0]]).expect("valid")
}

pub fn example2_lower() -> Vec<LatticePoint> {
    points(&[&[4, 1, 0, 0], &[0, 4, 1, 0], &[0, 0, 4, 1], &[1, 0, 0, 4]])
}

pub fn example2_upper() -> Vec<LatticePoint> {
    points(&[&[2, 1, 1, 1], &[1, 2, 1, 1], &[1, 1, 2, 1], &[1, 1, 1, 2]])
}

/// Cyclically symmetric polytope in R^4 on the hyperplane sum = 5.
pub fn example2() -> LatticePolytope {
    let mut g = example2_lower();
    g.extend(example2_upper());
    LatticePolytope::new(g).expect("valid")
}

/// Projection of [`example2`] onto its first three coordinates.
pub fn example2_projected() -> LatticePolytope {
    example2().project_drop_last().expect("dimension 4")
}

pub fn example3_lower() -> Vec<LatticePoint> {
    points(&[&[0, 1, 0], &[1, 1, 0], &[1, 2, 0], &[2, 0, 0]])
}

pub fn example3_upper() -> Vec<LatticePoint> {
    points(&[&[3, 1, 1], &[13, 4, 1], &[16, 5, 1], &[20, 6, 1]])
}

/// The lift of [`example1`] with `M = [[10,3],[3,1]]`.
pub fn example3() -> LatticePolytope {
    let mut g = example3_lower();
    g.extend(example3_upper());
    LatticePolytope::new(g).expect("valid")
}

/// `(x1,x2,x3) -> (x1 - 3x2 - 5x3 + 5, x2 - x3, x3)`.
pub fn example3_shear() -> UnimodularAffineMap {
    let m = IntMatrix::from_i64(&[&[1, -3, -5], &[0, 1, -1], &[0, 0, 1]]).expect("valid");
    UnimodularAffineMap::new(m, vec![5.into(), 0.into(), 0.into()]).expect("unimodular")
}

pub fn example3_sheared_lower() -> Vec<LatticePoint> {
    points(&[&[2, 1, 0], &[3, 1, 0], &[0, 2, 0], &[7, 0, 0]])
}

pub fn example3_sheared_upper() -> Vec<LatticePoint> {
    points(&[&[0, 0, 1], &[1, 3, 1], &[1, 4, 1], &[2, 5, 1]])
}

/// Monomials `x2 x3^2, x1 x2^2, x1^2 x3, x1 x2 x3` substituted into the
/// quadratic form of the ternary sextic.
pub fn example4_monomials() -> Vec<LatticePoint> {
    points(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1], &[1, 1, 1]])
}

/// `x2^2 x3^4 + x1^2 x2^4 + x1^4 x3^2 - 3 x1^2 x2^2 x3^2`.
pub fn example4_polynomial() -> crate::sospoly::SparsePolynomial {
    use crate::sospoly::SparsePolynomial;
    SparsePolynomial::from_i64_terms(
        3,
        &[
            (&[0, 2, 4], 1),
            (&[2, 4, 0], 1),
            (&[4, 0, 2], 1),
            (&[2, 2, 2], -3),
        ],
    )
    .expect("valid")
}
