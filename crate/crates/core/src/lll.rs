//! LLL reduction of the integer lattice Z^n under an arbitrary positive
//! definite rational quadratic form.
//!
//! The enumeration code uses this to find integer directions along which a
//! polytope is thin; the reduced basis is returned as the rows of a
//! unimodular matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Rational};
use crate::matrix::IntMatrix;

/// Reduces the standard basis of Z^n with respect to `<u, v> = u^T gram v`
/// (Lovász parameter 3/4). `gram` must be symmetric positive definite.
pub fn reduce(gram: &[Vec<Rational>]) -> IntMatrix {
    let n = gram.len();
    let mut basis: Vec<Vec<BigInt>> = IntMatrix::identity(n).rows().to_vec();
    if n <= 1 {
        return IntMatrix::new(basis).expect("square");
    }
    let inner = |u: &[BigInt], v: &[BigInt]| -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row = linalg::dot_mixed(v, &gram[i]);
            acc += row * ui;
        }
        acc
    };

    // Gram-Schmidt data: mu[i][j] for j < i, and squared norms bn[i].
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bn = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut m = inner(&basis[i], &basis[j]);
            for k in 0..j {
                m -= &mu[j][k] * &mu[i][k] * &bn[k];
            }
            mu[i][j] = m / &bn[j];
        }
        let mut b = inner(&basis[i], &basis[i]);
        for k in 0..i {
            b -= &mu[i][k] * &mu[i][k] * &bn[k];
        }
        bn[i] = b;
    }

    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let size_reduce = |basis: &mut Vec<Vec<BigInt>>, mu: &mut Vec<Vec<Rational>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = linalg::round_nearest(&mu[k][l]);
            let (head, tail) = basis.split_at_mut(k);
            for (x, y) in tail[0].iter_mut().zip(&head[l]) {
                *x -= &q * y;
            }
            let qr = linalg::rat(&q);
            mu[k][l] -= &qr;
            for i in 0..l {
                let t = &qr * &mu[l][i];
                mu[k][i] -= t;
            }
        }
    };

    let mut k = 1;
    while k < n {
        size_reduce(&mut basis, &mut mu, k, k - 1);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if bn[k] < lovasz {
            basis.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let m = mu[k][k - 1].clone();
            let b = &bn[k] + &m * &m * &bn[k - 1];
            mu[k][k - 1] = &m * &bn[k - 1] / &b;
            bn[k] = &bn[k - 1] * &bn[k] / &b;
            bn[k - 1] = b;
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut basis, &mut mu, k, l);
            }
            k += 1;
        }
    }
    IntMatrix::new(basis).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_i64;

    #[test]
    fn reduced_basis_is_unimodular_and_short() {
        // Form of the sheared lattice spanned by (1, 0), (100, 1).
        let m = IntMatrix::from_i64(&[&[1, 100], &[0, 1]]).unwrap();
        let g = m.transpose().mul(&m).unwrap();
        let gram: Vec<Vec<Rational>> = g
            .rows()
            .iter()
            .map(|r| r.iter().map(linalg::rat).collect())
            .collect();
        let t = reduce(&gram);
        assert_eq!(t.determinant().unwrap().abs(), BigInt::one());
        for row in t.rows() {
            let img = m.mul_vec(row);
            let norm = linalg::dot_int(&img, &img);
            assert!(norm <= BigInt::from(2), "row {row:?} image {img:?}");
        }
    }

    #[test]
    fn identity_form_stays_put() {
        let gram = vec![vec![rat_i64(1), rat_i64(0)], vec![rat_i64(0), rat_i64(1)]];
        assert_eq!(reduce(&gram), IntMatrix::identity(2));
    }
}
