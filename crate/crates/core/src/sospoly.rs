//! Sums of squares over dps supports.
//!
//! For a polynomial `p = Σ b_u x^u` with Newton cage `C(p)`, let
//! `v_1..v_N` be the lattice points of `C(p)/2`. `p` is a sum of `r` squares
//! iff some psd symmetric `A` of rank `<= r` has
//! `Σ_{v_i + v_j = u} a_ij = b_u` for every `u`. When the `v_i` are dps, each
//! `u` arises from one unordered pair at most, so `A` is forced: the
//! decision reduces to an exact psd check of one rational matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dps;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::linalg::{self, Rational};

pub type RationalMatrix = Vec<Vec<Rational>>;

/// Polynomial with exact rational coefficients keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<LatticePoint, Rational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Sums coefficients of repeated exponents and drops zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (LatticePoint, Rational)>,
    ) -> Result<Self> {
        let mut p = SparsePolynomial::zero(nvars);
        for (exp, coef) in terms {
            p.add_term(exp, coef)?;
        }
        Ok(p)
    }

    pub fn from_i64_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (LatticePoint::from_i64(e), linalg::rat_i64(*c))),
        )
    }

    pub fn monomial(exp: LatticePoint) -> Result<Self> {
        let n = exp.dim();
        Self::from_terms(n, [(exp, Rational::one())])
    }

    pub fn add_term(&mut self, exp: LatticePoint, coef: Rational) -> Result<()> {
        if exp.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: exp.dim(),
            });
        }
        if !exp.is_nonnegative() {
            return Err(Error::NegativeCoordinate { point: exp });
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &LatticePoint) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> SparsePolynomial {
        if k.is_zero() {
            return SparsePolynomial::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = SparsePolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2)?;
            }
        }
        Ok(out)
    }

    fn small_exponents(&self) -> Result<Vec<(Vec<u32>, Rational)>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let exps = e
                    .coords()
                    .iter()
                    .map(|x| {
                        x.to_u32().ok_or_else(|| {
                            Error::InvalidArgument(format!("exponent {x} too large to evaluate"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok((exps, c.clone()))
            })
            .collect()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        Ok(eval_terms(&self.small_exponents()?, x))
    }
}

fn eval_terms(terms: &[(Vec<u32>, Rational)], x: &[Rational]) -> Rational {
    terms.iter().fold(Rational::zero(), |acc, (exps, c)| {
        let mut t = c.clone();
        for (xi, &e) in x.iter().zip(exps) {
            if e > 0 {
                t *= num_traits::pow::pow(xi.clone(), e as usize);
            }
        }
        acc + t
    })
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponents first reads most naturally.
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    if x.is_one() {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `C(p)` and the lattice polytope `C(p)/2`.
#[derive(Debug, Clone)]
pub struct NewtonCage {
    pub cage: LatticePolytope,
    pub half: LatticePolytope,
}

pub fn newton_cage(p: &SparsePolynomial) -> Result<NewtonCage> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cage = LatticePolytope::new(p.support())?;
    let halves = cage
        .vertices()
        .iter()
        .map(|v| {
            v.halved()
                .ok_or_else(|| Error::CageNotHalvable { vertex: v.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    let half = LatticePolytope::new(halves)?;
    Ok(NewtonCage { cage, half })
}

pub type PairSets = BTreeMap<LatticePoint, Vec<(usize, usize)>>;

/// `D(u) = {(i, j) : v_i + v_j = u}` over ordered index pairs (0-based).
pub fn pair_sets(support: &[LatticePoint]) -> PairSets {
    let mut out: PairSets = BTreeMap::new();
    for (i, a) in support.iter().enumerate() {
        for (j, b) in support.iter().enumerate() {
            out.entry(a + b).or_default().push((i, j));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramStatus {
    Forced,
    Underdetermined,
}

#[derive(Debug, Clone)]
pub struct GramSystem {
    /// `L(C(p)/2)`, sorted; matrix rows and columns follow this order.
    pub support: Vec<LatticePoint>,
    pub pair_sets: PairSets,
    pub forced_matrix: Option<RationalMatrix>,
    pub status: GramStatus,
    /// Exponents of `p` that are not a sum of two support points; any such
    /// term rules out every Gram matrix.
    pub unmatched: Vec<LatticePoint>,
}

pub fn forced_gram(p: &SparsePolynomial) -> Result<GramSystem> {
    let cage = newton_cage(p)?;
    let support = cage.half.lattice_points().to_vec();
    let sets = pair_sets(&support);
    let unmatched: Vec<LatticePoint> = p
        .terms()
        .keys()
        .filter(|u| !sets.contains_key(*u))
        .cloned()
        .collect();
    if !dps::is_dps(&support) {
        return Ok(GramSystem {
            support,
            pair_sets: sets,
            forced_matrix: None,
            status: GramStatus::Underdetermined,
            unmatched,
        });
    }
    let n = support.len();
    let two = linalg::rat_i64(2);
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let b = p.coefficient(&(&support[i] + &support[j]));
            *entry = if i == j { b } else { b / &two };
        }
    }
    Ok(GramSystem {
        support,
        pair_sets: sets,
        forced_matrix: Some(a),
        status: GramStatus::Forced,
        unmatched,
    })
}

/// `A = Σ_k d_k l_k l_k^T` with every `d_k > 0`; `l_k` has a one at
/// `pivots[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ldl {
    pub pivots: Vec<usize>,
    pub columns: Vec<Vec<Rational>>,
    pub diagonal: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    /// Rank when psd; otherwise the number of pivots taken before failing.
    pub rank: usize,
    /// Present iff `psd`.
    pub ldl: Option<Ldl>,
}

fn check_square_symmetric(a: &RationalMatrix) -> Result<()> {
    let n = a.len();
    if let Some(r) = a.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: r.len(),
        });
    }
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Exact psd test by symmetric pivoted elimination: the pivot is the largest
/// remaining diagonal entry, ties to the smallest index.
pub fn psd_check_exact(a: &RationalMatrix) -> Result<PsdReport> {
    check_square_symmetric(a)?;
    let n = a.len();
    let mut s = a.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut ldl = Ldl {
        pivots: Vec::new(),
        columns: Vec::new(),
        diagonal: Vec::new(),
    };
    let not_psd = |rank| {
        Ok(PsdReport {
            psd: false,
            rank,
            ldl: None,
        })
    };
    while !remaining.is_empty() {
        if remaining.iter().any(|&i| s[i][i].is_negative()) {
            return not_psd(ldl.pivots.len());
        }
        let p = *remaining
            .iter()
            .max_by(|&&x, &&y| s[x][x].cmp(&s[y][y]).then(y.cmp(&x)))
            .expect("non-empty");
        let d = s[p][p].clone();
        if d.is_zero() {
            // A zero diagonal forces the whole remaining block to vanish.
            let rest_zero = remaining
                .iter()
                .all(|&i| remaining.iter().all(|&j| s[i][j].is_zero()));
            if rest_zero {
                break;
            }
            return not_psd(ldl.pivots.len());
        }
        let mut col = vec![Rational::zero(); n];
        for &i in &remaining {
            col[i] = &s[i][p] / &d;
        }
        for &i in &remaining {
            for &j in &remaining {
                if !col[i].is_zero() && !col[j].is_zero() {
                    let t = &d * &col[i] * &col[j];
                    s[i][j] -= t;
                }
            }
        }
        remaining.retain(|&i| i != p);
        ldl.pivots.push(p);
        ldl.columns.push(col);
        ldl.diagonal.push(d);
    }
    Ok(PsdReport {
        psd: true,
        rank: ldl.pivots.len(),
        ldl: Some(ldl),
    })
}

/// `weight * base^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSquare {
    pub weight: Rational,
    pub base: SparsePolynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SosVerdict {
    /// A sum of exactly `count` squares and no fewer; the squares re-expand
    /// to the input.
    SosWithCount {
        count: usize,
        squares: Vec<WeightedSquare>,
    },
    NotSos { reason: String },
    Undecided { reason: String },
}

impl SosVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SosVerdict::SosWithCount { .. } => "sos",
            SosVerdict::NotSos { .. } => "not_sos",
            SosVerdict::Undecided { .. } => "undecided",
        }
    }
}

pub fn sos_verdict(p: &SparsePolynomial) -> Result<SosVerdict> {
    if p.is_zero() {
        return Ok(SosVerdict::SosWithCount {
            count: 0,
            squares: Vec::new(),
        });
    }
    let gram = match forced_gram(p) {
        Ok(g) => g,
        Err(e @ Error::CageNotHalvable { .. }) => {
            return Ok(SosVerdict::Undecided {
                reason: e.to_string(),
            })
        }
        Err(e) => return Err(e),
    };
    if let Some(u) = gram.unmatched.first() {
        return Ok(SosVerdict::NotSos {
            reason: format!("term with exponent {u} is not a sum of two cage points"),
        });
    }
    let Some(a) = &gram.forced_matrix else {
        return Ok(SosVerdict::Undecided {
            reason: "half-cage lattice points are not dps; Gram matrix not forced".into(),
        });
    };
    let report = psd_check_exact(a)?;
    let Some(ldl) = report.ldl else {
        return Ok(SosVerdict::NotSos {
            reason: "forced Gram matrix is not positive semidefinite".into(),
        });
    };
    let nvars = p.nvars();
    let mut squares = Vec::with_capacity(ldl.pivots.len());
    let mut total = SparsePolynomial::zero(nvars);
    for (col, d) in ldl.columns.iter().zip(&ldl.diagonal) {
        let base = SparsePolynomial::from_terms(
            nvars,
            gram.support
                .iter()
                .zip(col)
                .filter(|(_, c)| !c.is_zero())
                .map(|(v, c)| (v.clone(), c.clone())),
        )?;
        total = total.add(&base.mul(&base)?.scale(d))?;
        squares.push(WeightedSquare {
            weight: d.clone(),
            base,
        });
    }
    if total != *p {
        return Err(Error::Verification(
            "extracted squares do not re-expand to the input".into(),
        ));
    }
    Ok(SosVerdict::SosWithCount {
        count: squares.len(),
        squares,
    })
}

/// `h_P = Σ (x^v)^2` over the lattice points of `P`.
pub fn build_hp(p: &LatticePolytope) -> Result<SparsePolynomial> {
    if let Some(g) = p.generators().iter().find(|g| !g.is_nonnegative()) {
        return Err(Error::NegativeCoordinate { point: g.clone() });
    }
    let two = BigInt::from(2);
    SparsePolynomial::from_terms(
        p.dim(),
        p.lattice_points()
            .iter()
            .map(|v| (v.scale(&two), Rational::one())),
    )
}

/// Expands `Σ a_ij m_i m_j` for monomials `m_i`.
pub fn substitute_quadratic(a: &RationalMatrix, monomials: &[LatticePoint]) -> Result<SparsePolynomial> {
    check_square_symmetric(a)?;
    if a.len() != monomials.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: monomials.len(),
        });
    }
    let Some(first) = monomials.first() else {
        return Err(Error::InvalidArgument("no monomials given".into()));
    };
    let mut p = SparsePolynomial::zero(first.dim());
    for (i, mi) in monomials.iter().enumerate() {
        for (j, mj) in monomials.iter().enumerate() {
            if !a[i][j].is_zero() {
                p.add_term(mi + mj, a[i][j].clone())?;
            }
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridMinimum {
    pub value: Rational,
    /// First grid point (lexicographic in grid index) attaining the value.
    pub argmin: Vec<Rational>,
}

/// Exact minimum over the grid `{-r + 2rk/steps : 0 <= k <= steps}^n`.
/// Sampling evidence only; not a proof of non-negativity.
pub fn grid_min(p: &SparsePolynomial, radius: &Rational, steps: usize) -> Result<GridMinimum> {
    if steps == 0 {
        return Err(Error::InvalidArgument("grid needs at least one step".into()));
    }
    let n = p.nvars();
    let terms = p.small_exponents()?;
    let axis: Vec<Rational> = (0..=steps)
        .map(|k| -radius + radius * linalg::rat_i64(2 * k as i64) / linalg::rat_i64(steps as i64))
        .collect();
    if n == 0 {
        return Ok(GridMinimum {
            value: eval_terms(&terms, &[]),
            argmin: Vec::new(),
        });
    }
    let per_axis = steps + 1;
    let inner: usize = per_axis.pow((n - 1) as u32);
    let best = (0..per_axis)
        .into_par_iter()
        .map(|head| {
            let mut best: Option<(Rational, usize)> = None;
            for rest in 0..inner {
                let idx = head * inner + rest;
                let x = grid_point(&axis, idx, n);
                let v = eval_terms(&terms, &x);
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, idx));
                }
            }
            best.expect("non-empty axis")
        })
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("non-empty grid");
    Ok(GridMinimum {
        value: best.0,
        argmin: grid_point(&axis, best.1, n),
    })
}

fn grid_point(axis: &[Rational], mut idx: usize, n: usize) -> Vec<Rational> {
    let base = axis.len();
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        x[k] = axis[idx % base].clone();
        idx /= base;
    }
    x
}
