//! The distinct pair-sum property and its three equivalent tests.
//!
//! A finite set `L ⊂ Z^n` is dps when the `N + N(N-1)/2` sums `v_i + v_j`
//! (`i <= j`) are pairwise distinct. Equivalently `L` contains no three
//! collinear points and no nondegenerate parallelogram, or equivalently no
//! two distinct segments between points of `L` are parallel. Each checker
//! reports a witness on failure, and every witness can be re-validated from
//! its coordinates alone.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::lattice::{LatticePoint, LatticePolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Checker {
    PairSum,
    Geometric,
    Direction,
}

impl Checker {
    pub const ALL: [Checker; 3] = [Checker::PairSum, Checker::Geometric, Checker::Direction];

    pub fn name(self) -> &'static str {
        match self {
            Checker::PairSum => "pairsum",
            Checker::Geometric => "geometric",
            Checker::Direction => "direction",
        }
    }

    pub fn check(self, points: &[LatticePoint]) -> DpsVerdict {
        match self {
            Checker::PairSum => check_pairsum(points),
            Checker::Geometric => check_geometric(points),
            Checker::Direction => check_direction(points),
        }
    }
}

impl std::str::FromStr for Checker {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pairsum" => Ok(Checker::PairSum),
            "geometric" => Ok(Checker::Geometric),
            "direction" => Ok(Checker::Direction),
            other => Err(format!("unknown checker {other:?}")),
        }
    }
}

pub type Pair = (LatticePoint, LatticePoint);

fn sorted_pair(a: &LatticePoint, b: &LatticePoint) -> Pair {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn sorted_pairs(p: Pair, q: Pair) -> (Pair, Pair) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Evidence that a point set is not dps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `first.0 + first.1 == second.0 + second.1` with different pairs.
    PairSumCollision { first: Pair, second: Pair },
    /// Four distinct non-collinear points whose diagonals share a midpoint.
    Parallelogram { diagonal_a: Pair, diagonal_b: Pair },
    /// Three distinct points on a line, sorted.
    CollinearTriple([LatticePoint; 3]),
    /// Two different segments with parallel directions.
    ParallelSegments { first: Pair, second: Pair },
}

impl Witness {
    /// Re-checks the witness arithmetically.
    pub fn validate(&self) -> bool {
        match self {
            Witness::PairSumCollision { first, second } => {
                first != second && &first.0 + &first.1 == &second.0 + &second.1
            }
            Witness::Parallelogram {
                diagonal_a,
                diagonal_b,
            } => {
                let pts = [&diagonal_a.0, &diagonal_a.1, &diagonal_b.0, &diagonal_b.1];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j]));
                distinct
                    && &diagonal_a.0 + &diagonal_a.1 == &diagonal_b.0 + &diagonal_b.1
                    && !parallel(&(pts[1] - pts[0]), &(pts[2] - pts[0]))
            }
            Witness::CollinearTriple([a, b, c]) => {
                a != b && b != c && a != c && parallel(&(b - a), &(c - a))
            }
            Witness::ParallelSegments { first, second } => {
                first != second
                    && first.0 != first.1
                    && second.0 != second.1
                    && parallel(&(&first.1 - &first.0), &(&second.1 - &second.0))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::PairSumCollision { .. } => "pair_sum_collision",
            Witness::Parallelogram { .. } => "parallelogram",
            Witness::CollinearTriple(_) => "collinear_triple",
            Witness::ParallelSegments { .. } => "parallel_segments",
        }
    }

    /// Points named by the witness, in their recorded order.
    pub fn points(&self) -> Vec<LatticePoint> {
        match self {
            Witness::PairSumCollision { first, second }
            | Witness::ParallelSegments { first, second } => {
                vec![first.0.clone(), first.1.clone(), second.0.clone(), second.1.clone()]
            }
            Witness::Parallelogram {
                diagonal_a,
                diagonal_b,
            } => vec![
                diagonal_a.0.clone(),
                diagonal_a.1.clone(),
                diagonal_b.0.clone(),
                diagonal_b.1.clone(),
            ],
            Witness::CollinearTriple(t) => t.to_vec(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::PairSumCollision { first, second } => write!(
                f,
                "{}+{} = {}+{}",
                first.0, first.1, second.0, second.1
            ),
            Witness::Parallelogram {
                diagonal_a,
                diagonal_b,
            } => write!(
                f,
                "parallelogram with diagonals {}-{} and {}-{}",
                diagonal_a.0, diagonal_a.1, diagonal_b.0, diagonal_b.1
            ),
            Witness::CollinearTriple([a, b, c]) => write!(f, "{a}, {b}, {c} are collinear"),
            Witness::ParallelSegments { first, second } => write!(
                f,
                "{}-{} is parallel to {}-{}",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpsVerdict {
    pub is_dps: bool,
    pub witness: Option<Witness>,
    pub checker: Checker,
}

impl DpsVerdict {
    fn pass(checker: Checker) -> Self {
        DpsVerdict {
            is_dps: true,
            witness: None,
            checker,
        }
    }

    fn fail(checker: Checker, witness: Witness) -> Self {
        DpsVerdict {
            is_dps: false,
            witness: Some(witness),
            checker,
        }
    }
}

/// u and w are parallel iff every 2x2 minor of the stack [u; w] vanishes.
pub fn parallel(u: &LatticePoint, w: &LatticePoint) -> bool {
    let (u, w) = (u.coords(), w.coords());
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if &u[i] * &w[j] != &u[j] * &w[i] {
                return false;
            }
        }
    }
    true
}

fn canonical(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    v
}

/// All unordered sums including doubles must be distinct.
pub fn check_pairsum(points: &[LatticePoint]) -> DpsVerdict {
    let pts = canonical(points);
    let mut seen: HashMap<LatticePoint, (usize, usize)> = HashMap::new();
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let s = &pts[i] + &pts[j];
            if let Some(&(k, l)) = seen.get(&s) {
                let (first, second) = sorted_pairs((pts[k].clone(), pts[l].clone()), (pts[i].clone(), pts[j].clone()));
                return DpsVerdict::fail(Checker::PairSum, Witness::PairSumCollision { first, second });
            }
            seen.insert(s, (i, j));
        }
    }
    DpsVerdict::pass(Checker::PairSum)
}

/// No three collinear points and no nondegenerate parallelogram.
pub fn check_geometric(points: &[LatticePoint]) -> DpsVerdict {
    let pts = canonical(points);
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            let dij = &pts[j] - &pts[i];
            for k in j + 1..n {
                if parallel(&dij, &(&pts[k] - &pts[i])) {
                    return DpsVerdict::fail(
                        Checker::Geometric,
                        Witness::CollinearTriple([pts[i].clone(), pts[j].clone(), pts[k].clone()]),
                    );
                }
            }
        }
    }
    // No triple is collinear from here on, so every quadruple is
    // nondegenerate.
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (pa, pb, pc, pd) = (&pts[a], &pts[b], &pts[c], &pts[d]);
                    let pairings = [((pa, pd), (pb, pc)), ((pa, pc), (pb, pd)), ((pa, pb), (pc, pd))];
                    for ((x, y), (z, w)) in pairings {
                        if x + y == z + w {
                            let (diagonal_a, diagonal_b) = sorted_pairs(sorted_pair(x, y), sorted_pair(z, w));
                            return DpsVerdict::fail(
                                Checker::Geometric,
                                Witness::Parallelogram {
                                    diagonal_a,
                                    diagonal_b,
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    DpsVerdict::pass(Checker::Geometric)
}

/// Distinct segments between points of the set are never parallel.
pub fn check_direction(points: &[LatticePoint]) -> DpsVerdict {
    let pts = canonical(points);
    let n = pts.len();
    let segments: Vec<(usize, usize, LatticePoint)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, &pts[j] - &pts[i]))
        .collect();
    for s in 0..segments.len() {
        for t in s + 1..segments.len() {
            if parallel(&segments[s].2, &segments[t].2) {
                let p = (pts[segments[s].0].clone(), pts[segments[s].1].clone());
                let q = (pts[segments[t].0].clone(), pts[segments[t].1].clone());
                let (first, second) = sorted_pairs(p, q);
                return DpsVerdict::fail(Checker::Direction, Witness::ParallelSegments { first, second });
            }
        }
    }
    DpsVerdict::pass(Checker::Direction)
}

pub fn is_dps(points: &[LatticePoint]) -> bool {
    check_pairsum(points).is_dps
}

/// The pair-sum multiset support `L + L`, sorted.
pub fn pair_sums(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let pts = canonical(points);
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i..pts.len() {
            out.push(&pts[i] + &pts[j]);
        }
    }
    out.sort();
    out
}

/// The nonzero differences `v - v'` of distinct points; closed under
/// negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    elements: BTreeSet<LatticePoint>,
}

impl DifferenceSet {
    pub fn elements(&self) -> &BTreeSet<LatticePoint> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &LatticePoint) -> bool {
        self.elements.contains(u)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.elements.iter()
    }

    pub fn dim(&self) -> Option<usize> {
        self.elements.first().map(LatticePoint::dim)
    }
}

pub fn difference_set(points: &[LatticePoint]) -> DifferenceSet {
    let pts = canonical(points);
    let mut elements = BTreeSet::new();
    for a in &pts {
        for b in &pts {
            if a != b {
                elements.insert(a - b);
            }
        }
    }
    DifferenceSet { elements }
}

/// Points grouped by coordinate parity (`true` = odd).
pub fn mod2_classes(points: &[LatticePoint]) -> BTreeMap<Vec<bool>, Vec<LatticePoint>> {
    let mut out: BTreeMap<Vec<bool>, Vec<LatticePoint>> = BTreeMap::new();
    for p in canonical(points) {
        out.entry(p.parity()).or_default().push(p);
    }
    out
}

/// Two points in one mod-2 class and their integral midpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCollision {
    pub first: LatticePoint,
    pub second: LatticePoint,
    pub midpoint: LatticePoint,
}

/// First same-parity pair in lexicographic order; guaranteed to exist once
/// there are more than `2^n` distinct points.
pub fn parity_collision(points: &[LatticePoint]) -> Option<ParityCollision> {
    for (_, class) in mod2_classes(points) {
        if class.len() >= 2 {
            let sum = &class[0] + &class[1];
            let midpoint = sum.halved().expect("same parity sums are even");
            return Some(ParityCollision {
                first: class[0].clone(),
                second: class[1].clone(),
                midpoint,
            });
        }
    }
    None
}

/// `L(P)` is dps and has exactly `2^dim` points.
pub fn is_maximal_dps(p: &LatticePolytope) -> bool {
    let pts = p.lattice_points();
    let bound = 1u128.checked_shl(p.dim() as u32);
    bound == Some(pts.len() as u128) && is_dps(pts)
}

/// Every difference of a dps set is primitive.
pub fn differences_primitive(points: &[LatticePoint]) -> bool {
    difference_set(points)
        .iter()
        .all(|u| crate::lattice::content_gcd(u.coords()) == BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::from_i64(p)).collect()
    }

    fn example1() -> Vec<LatticePoint> {
        pts(&[&[0, 1], &[1, 2], &[2, 0], &[1, 1]])
    }

    #[test]
    fn example1_pair_sums() {
        let sums = pair_sums(&example1());
        let expected = pts(&[
            &[0, 2], &[1, 2], &[1, 3], &[2, 1], &[2, 2],
            &[2, 3], &[2, 4], &[3, 1], &[3, 2], &[4, 0],
        ]);
        assert_eq!(sums, expected);
        for c in Checker::ALL {
            let v = c.check(&example1());
            assert!(v.is_dps, "{c:?}");
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn unit_square_fails_every_checker() {
        let sq = pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let v = check_pairsum(&sq);
        assert!(!v.is_dps);
        assert_eq!(
            v.witness,
            Some(Witness::PairSumCollision {
                first: ([0, 0].into(), [1, 1].into()),
                second: ([0, 1].into(), [1, 0].into()),
            })
        );
        let g = check_geometric(&sq);
        assert!(matches!(g.witness, Some(Witness::Parallelogram { .. })));
        let d = check_direction(&sq);
        assert!(matches!(d.witness, Some(Witness::ParallelSegments { .. })));
        for v in [v, g, d] {
            assert!(v.witness.unwrap().validate());
        }
    }

    #[test]
    fn collinear_sets() {
        let line = pts(&[&[0], &[1], &[2]]);
        let v = check_pairsum(&line);
        assert_eq!(
            v.witness,
            Some(Witness::PairSumCollision {
                first: ([0].into(), [2].into()),
                second: ([1].into(), [1].into()),
            })
        );
        let row = pts(&[&[0, 1], &[1, 1], &[2, 1]]);
        assert_eq!(
            check_geometric(&row).witness,
            Some(Witness::CollinearTriple([[0, 1].into(), [1, 1].into(), [2, 1].into()]))
        );
    }

    #[test]
    fn direction_checker_examples() {
        let s = pts(&[&[0, 0], &[1, 0], &[0, 1], &[5, 1]]);
        let v = check_direction(&s);
        assert!(!v.is_dps);
        assert_eq!(
            v.witness,
            Some(Witness::ParallelSegments {
                first: ([0, 0].into(), [1, 0].into()),
                second: ([0, 1].into(), [5, 1].into()),
            })
        );
        assert!(check_direction(&pts(&[&[0, 0], &[7, 3]])).is_dps);
        assert!(check_direction(&pts(&[&[2, 2]])).is_dps);
    }

    #[test]
    fn input_order_is_irrelevant() {
        let a = pts(&[&[1, 1], &[0, 0], &[1, 0], &[0, 1]]);
        let b = pts(&[&[0, 1], &[1, 0], &[0, 0], &[1, 1]]);
        for c in Checker::ALL {
            assert_eq!(c.check(&a), c.check(&b));
        }
    }

    #[test]
    fn example1_difference_set() {
        let d = difference_set(&example1());
        let mut expected = Vec::new();
        for v in [[0, 1], [1, -2], [1, -1], [1, 0], [1, 1], [2, -1]] {
            let p: LatticePoint = v.into();
            expected.push(-&p);
            expected.push(p);
        }
        expected.sort();
        assert_eq!(d.elements().iter().cloned().collect::<Vec<_>>(), expected);
        assert!(d.iter().all(|u| !u.is_zero()));
        assert!(difference_set(&pts(&[&[3, 3]])).is_empty());
        let seg = difference_set(&pts(&[&[0], &[1]]));
        assert_eq!(seg.elements().iter().cloned().collect::<Vec<_>>(), pts(&[&[-1], &[1]]));
    }

    #[test]
    fn parity_classes() {
        let classes = mod2_classes(&example1());
        assert_eq!(classes.len(), 4);
        assert!(classes.values().all(|c| c.len() == 1));
        assert!(classes.contains_key(&vec![false, true]));
        assert!(classes.contains_key(&vec![true, true]));
        assert!(classes.contains_key(&vec![true, false]));
        assert!(classes.contains_key(&vec![false, false]));
        let even = mod2_classes(&pts(&[&[0, 0], &[2, 2]]));
        assert_eq!(even.len(), 1);
        let c = parity_collision(&pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!(c.midpoint, [1, 1].into());
        assert!(parity_collision(&example1()).is_none());
    }

    #[test]
    fn maximality() {
        let p = LatticePolytope::from_i64(&[&[0, 1], &[1, 2], &[2, 0]]).unwrap();
        assert!(is_maximal_dps(&p));
        let seg = LatticePolytope::from_i64(&[&[0], &[2]]).unwrap();
        assert!(!is_maximal_dps(&seg));
        let unit = LatticePolytope::from_i64(&[&[0], &[1]]).unwrap();
        assert!(is_maximal_dps(&unit));
        assert!(differences_primitive(&example1()));
    }
}
