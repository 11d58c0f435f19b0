//! Exact rational linear algebra used by the hull and enumeration code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

pub fn rat_i64(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(rat).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Integer dot product against a rational vector.
pub fn dot_mixed(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * x)
}

/// Nearest integer, halves rounded up.
pub fn round_nearest(x: &Rational) -> BigInt {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Reduced row echelon form. Returns the non-zero rows and their pivot
/// columns.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    rref(rows).1.len()
}

/// Basis of the right null space of `rows` (vectors x with rows * x = 0).
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Solves `a x = b` for square non-singular `a`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(reduced.iter().map(|r| r[n].clone()).collect())
}

pub fn abs_max(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}
