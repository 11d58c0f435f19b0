//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Reference values are literal; derived values come from small
//! oracles written here independently of the library.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dps_lattice::catalog;
use dps_lattice::construct;
use dps_lattice::dps::{self, Checker};
use dps_lattice::lattice::{Containment, LatticePoint, LatticePolytope, UnimodularAffineMap};
use dps_lattice::linalg::{rat_i64, Rational};
use dps_lattice::matrix::IntMatrix;
use dps_lattice::search::{self, SearchSpec};
use dps_lattice::sospoly::{self, SosVerdict};

const CHAIN_TOP: usize = 6;
const CHAIN_LIMIT: Duration = Duration::from_secs(10);
const SEARCH_LIMIT: Duration = Duration::from_secs(120);
const RANDOM_SETS_PER_DIM: usize = 1000;
const CHECKER_RANDOM_SETS: usize = 500;
const CHECKER_MAX_POINTS: usize = 12;
const RANDOM_MAPS: usize = 200;
const MAX_ELEMENTARY_OPS: usize = 6;
const GRID_RADIUS: i64 = 2;
const GRID_POINTS_PER_AXIS: usize = 9;
const SEED: u64 = 0x05ee_dd95;

type Outcome = Result<String, String>;

fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
    v.iter().map(|p| LatticePoint::from_i64(p)).collect()
}

fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort();
    v
}

fn small(p: &LatticePoint) -> Vec<i64> {
    p.coords().iter().map(|x| x.to_i64().expect("fits i64")).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn oracle_pair_sums(points: &[LatticePoint]) -> (BTreeSet<LatticePoint>, usize) {
    let mut set = BTreeSet::new();
    let mut total = 0;
    for i in 0..points.len() {
        for j in i..points.len() {
            set.insert(&points[i] + &points[j]);
            total += 1;
        }
    }
    (set, total)
}

fn oracle_parity_classes(points: &[LatticePoint]) -> BTreeMap<Vec<bool>, usize> {
    let mut m = BTreeMap::new();
    for p in points {
        let key: Vec<bool> = p.coords().iter().map(|x| (x % 2u8) != BigInt::zero()).collect();
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

fn criterion1() -> Outcome {
    let p = catalog::example1();
    let want = pts(&[&[0, 1], &[1, 1], &[1, 2], &[2, 0]]);
    ensure(p.lattice_points() == want.as_slice(), format!("L(P) = {:?}", p.lattice_points()))?;
    let listed = pts(&[
        &[0, 2], &[1, 2], &[1, 3], &[2, 1], &[2, 2], &[2, 3], &[2, 4], &[3, 1], &[3, 2], &[4, 0],
    ]);
    let sums = sorted(dps::pair_sums(p.lattice_points()));
    ensure(sums == listed, format!("pair sums {sums:?}"))?;
    let (oracle, total) = oracle_pair_sums(p.lattice_points());
    ensure(oracle.len() == total && total == 10, "oracle sums collide")?;
    ensure(dps::is_dps(p.lattice_points()), "not dps")?;
    ensure(dps::is_maximal_dps(&p), "not maximal")?;
    Ok("4 lattice points, 10 distinct sums, maximal".into())
}

fn criterion2() -> Outcome {
    let p = catalog::example2();
    let mut want = pts(&[&[4, 1, 0, 0], &[0, 4, 1, 0], &[0, 0, 4, 1], &[1, 0, 0, 4]]);
    want.extend(pts(&[&[2, 1, 1, 1], &[1, 2, 1, 1], &[1, 1, 2, 1], &[1, 1, 1, 2]]));
    let want = sorted(want);
    ensure(p.lattice_points() == want.as_slice(), format!("L = {:?}", p.lattice_points()))?;
    let scanned = sorted(dps_lattice::lattice::lattice_points_box_scan(&p));
    ensure(scanned == want, "box scan disagrees")?;
    let (oracle, total) = oracle_pair_sums(p.lattice_points());
    ensure(total == 36 && oracle.len() == 36, format!("{} distinct of {total}", oracle.len()))?;
    let q = catalog::example2_projected();
    ensure(q.num_lattice_points() == 8, format!("projection has {}", q.num_lattice_points()))?;
    ensure(dps::is_maximal_dps(&q), "projection not maximal dps")?;
    let classes = oracle_parity_classes(q.lattice_points());
    ensure(classes.len() == 8 && classes.values().all(|&c| c == 1), "projection misses a class")?;
    Ok("8 lattice points, 36 distinct sums, projection maximal with N = 8".into())
}

fn criterion3() -> Outcome {
    let ex1 = catalog::example1();
    let d = dps::difference_set(ex1.lattice_points());
    let mut listed = Vec::new();
    for v in [[0, 1], [1, -2], [1, -1], [1, 0], [1, 1], [2, -1]] {
        let u = LatticePoint::from(v);
        listed.push(-&u);
        listed.push(u);
    }
    let listed = sorted(listed);
    let got: Vec<LatticePoint> = d.iter().cloned().collect();
    ensure(got == listed, format!("D = {got:?}"))?;
    let r = construct::lift_radius(&d).map_err(|e| e.to_string())?;
    ensure(r == BigInt::from(2), format!("R = {r}"))?;
    let m = construct::build_lift_matrix(2, &r).map_err(|e| e.to_string())?;
    ensure(m == IntMatrix::from_i64(&[&[10, 3], &[3, 1]]).unwrap(), format!("M = {m}"))?;
    let cert = construct::lift(&ex1).map_err(|e| e.to_string())?;
    let a = sorted(pts(&[&[0, 1, 0], &[1, 1, 0], &[1, 2, 0], &[2, 0, 0]]));
    let b = sorted(pts(&[&[3, 1, 1], &[13, 4, 1], &[16, 5, 1], &[20, 6, 1]]));
    ensure(sorted(cert.lower.clone()) == a, format!("A = {:?}", cert.lower))?;
    ensure(sorted(cert.upper.clone()) == b, format!("B = {:?}", cert.upper))?;
    ensure(cert.polytope.num_lattice_points() == 8, "lift has extra lattice points")?;
    let shear = UnimodularAffineMap::new(
        IntMatrix::from_i64(&[&[1, -3, -5], &[0, 1, -1], &[0, 0, 1]]).unwrap(),
        vec![5.into(), 0.into(), 0.into()],
    )
    .map_err(|e| e.to_string())?;
    let a2 = sorted(pts(&[&[2, 1, 0], &[3, 1, 0], &[0, 2, 0], &[7, 0, 0]]));
    let b2 = sorted(pts(&[&[0, 0, 1], &[1, 3, 1], &[1, 4, 1], &[2, 5, 1]]));
    let ia = sorted(a.iter().map(|p| shear.apply_point(p)).collect());
    let ib = sorted(b.iter().map(|p| shear.apply_point(p)).collect());
    ensure(ia == a2 && ib == b2, format!("shear images {ia:?} {ib:?}"))?;
    let image = shear.apply(&cert.polytope).map_err(|e| e.to_string())?;
    let mut both = a2.clone();
    both.extend(b2);
    ensure(image.lattice_points() == sorted(both).as_slice(), "sheared hull differs")?;
    Ok("D, R = 2, M, A, B and the sheared sets all exact".into())
}

/// `n` distinct points of the box `[-spread, spread]^dim`, fewer if the box is smaller.
fn random_set(rng: &mut ChaCha8Rng, dim: usize, n: usize, spread: i64) -> Vec<LatticePoint> {
    let room = (2 * spread as u128 + 1).saturating_pow(dim as u32);
    let n = n.min(usize::try_from(room).unwrap_or(usize::MAX));
    let mut set = BTreeSet::new();
    while set.len() < n {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-spread..=spread)).collect();
        set.insert(LatticePoint::from_i64(&v));
    }
    set.into_iter().collect()
}

/// A random product of at most `ops` elementary integer operations.
fn random_map(rng: &mut ChaCha8Rng, dim: usize, ops: usize) -> UnimodularAffineMap {
    let mut map = UnimodularAffineMap::identity(dim);
    for _ in 0..rng.gen_range(1..=ops) {
        let step = match rng.gen_range(0..4) {
            0 if dim > 1 => {
                let i = rng.gen_range(0..dim);
                let j = (i + rng.gen_range(1..dim)) % dim;
                UnimodularAffineMap::shear(dim, i, j, BigInt::from(rng.gen_range(-3..=3))).unwrap()
            }
            1 => UnimodularAffineMap::swap(dim, rng.gen_range(0..dim), rng.gen_range(0..dim)).unwrap(),
            2 => UnimodularAffineMap::negate(dim, rng.gen_range(0..dim)).unwrap(),
            _ => UnimodularAffineMap::translation(
                (0..dim).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect(),
            ),
        };
        map = step.compose(&map).unwrap();
    }
    map
}

/// Lattice points of the hull of a few random generators.
fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, spread: i64) -> LatticePolytope {
    let k = rng.gen_range(1..=dim + 2);
    LatticePolytope::new(random_set(rng, dim, k, spread)).unwrap()
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut dps_seen = 0;
    let mut overfull = 0;
    for dim in 1..=4usize {
        let cap = 1usize << dim;
        let maximal = construct::maximal_dps(dim).map_err(|e| e.to_string())?;
        for k in 0..RANDOM_SETS_PER_DIM {
            if k % 2 == 0 {
                let p = if k % 4 == 0 {
                    // Hull of a random subset of a maximal set under a random unimodular map.
                    let map = random_map(&mut rng, dim, MAX_ELEMENTARY_OPS);
                    let keep = rng.gen_range(1..=cap);
                    let mut chosen: Vec<LatticePoint> = maximal.lattice_points().to_vec();
                    while chosen.len() > keep {
                        chosen.remove(rng.gen_range(0..chosen.len()));
                    }
                    LatticePolytope::new(chosen.iter().map(|p| map.apply_point(p)).collect()).unwrap()
                } else {
                    random_polytope(&mut rng, dim, 3)
                };
                let l = p.lattice_points();
                let (sums, total) = oracle_pair_sums(l);
                let verdict = dps::check_pairsum(l);
                ensure(verdict.is_dps == (sums.len() == total), "pair-sum verdict differs from oracle")?;
                if verdict.is_dps {
                    dps_seen += 1;
                    ensure(l.len() <= cap, format!("dps polytope with {} points in dimension {dim}", l.len()))?;
                }
                continue;
            }
            // 2^n + 1 lattice points: two share a parity class and their
            // midpoint is a lattice point of the hull, so the hull is not dps.
            let set = random_set(&mut rng, dim, cap + 1, 3 + k as i64 % 20);
            overfull += 1;
            let c = dps::parity_collision(&set).ok_or_else(|| format!("no parity collision in {set:?}"))?;
            ensure(c.first != c.second, "collision pair not distinct")?;
            ensure(set.contains(&c.first) && set.contains(&c.second), "collision outside set")?;
            let pa: Vec<bool> = c.first.coords().iter().map(|x| x % 2u8 != BigInt::zero()).collect();
            let pb: Vec<bool> = c.second.coords().iter().map(|x| x % 2u8 != BigInt::zero()).collect();
            ensure(pa == pb, "collision pair differs in parity")?;
            ensure(&c.first + &c.second == c.midpoint.scale(&BigInt::from(2)), "midpoint not integral")?;
            let hull = LatticePolytope::new(set.clone()).unwrap();
            let inside = hull.contains_point(&c.midpoint).map_err(|e| e.to_string())?;
            ensure(inside != Containment::Outside, "midpoint outside the hull")?;
        }
    }
    Ok(format!(
        "{} samples, {dps_seen} dps polytopes within 2^n, {overfull} overfull sets with integral midpoints in the hull",
        4 * RANDOM_SETS_PER_DIM
    ))
}

fn criterion5() -> Outcome {
    let mut details = Vec::new();
    for n in 1..=CHAIN_TOP {
        let start = Instant::now();
        let p = construct::maximal_dps(n).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let l = p.lattice_points();
        ensure(l.len() == 1 << n, format!("n={n}: {} lattice points", l.len()))?;
        let (sums, total) = oracle_pair_sums(l);
        ensure(sums.len() == total, format!("n={n}: repeated pair sum"))?;
        let classes = oracle_parity_classes(l);
        ensure(
            classes.len() == 1 << n && classes.values().all(|&c| c == 1),
            format!("n={n}: parity classes not hit once each"),
        )?;
        if n == CHAIN_TOP {
            ensure(total == 2080, format!("n={n}: {total} sums"))?;
            ensure(elapsed < CHAIN_LIMIT, format!("n={n} took {elapsed:?}"))?;
            details.push(format!("n={n} in {:.2}s", elapsed.as_secs_f64()));
        }
    }
    Ok(format!("n = 1..{CHAIN_TOP} verified; {}", details.join(", ")))
}

fn oracle_twice_area(v: &[Vec<i64>]) -> i64 {
    ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[1][1] - v[0][1]) * (v[2][0] - v[0][0])).abs()
}

fn criterion6() -> Outcome {
    let r22 = search::min_size_search(&SearchSpec::new(2, 2)).map_err(|e| e.to_string())?;
    ensure(r22.witnesses.is_empty(), "dim 2 size 2 has witnesses")?;

    let r23 = search::min_size_search(&SearchSpec::new(2, 3)).map_err(|e| e.to_string())?;
    let ex1 = catalog::example1();
    ensure(
        r23.witnesses.iter().any(|w| w.lattice_points() == ex1.lattice_points()),
        "Example 1 missing from dim 2 size 3",
    )?;
    for w in &r23.witnesses {
        let c = search::classify_r2_witness(w).map_err(|e| e.to_string())?;
        ensure(c.matches_classification(), format!("{:?} breaks the classification", w.generators()))?;
        let v: Vec<Vec<i64>> = c.vertices.iter().map(small).collect();
        ensure(v.len() == 3 && oracle_twice_area(&v) == 3, "oracle area differs")?;
        let inner = w.lattice_points().iter().find(|q| !c.vertices.contains(q)).map(small).unwrap();
        ensure(
            (0..2).all(|k| v.iter().map(|p| p[k]).sum::<i64>() == 3 * inner[k]),
            "centroid identity fails",
        )?;
    }

    let start = Instant::now();
    let r34 = search::min_size_search(&SearchSpec::new(3, 4)).map_err(|e| e.to_string())?;
    let t34 = start.elapsed();
    ensure(r34.witnesses.is_empty(), "dim 3 size 4 has witnesses")?;
    ensure(t34 < SEARCH_LIMIT, format!("dim 3 size 4 took {t34:?}"))?;

    let mut spec = SearchSpec::new(3, 5);
    spec.collect_all = false;
    let r35 = search::min_size_search(&spec).map_err(|e| e.to_string())?;
    ensure(!r35.witnesses.is_empty(), "dim 3 size 5 has no witness")?;
    for w in &r35.witnesses {
        ensure(w.size().map_err(|e| e.to_string())? <= BigInt::from(5), "witness too large")?;
        let (sums, total) = oracle_pair_sums(w.lattice_points());
        ensure(w.num_lattice_points() == 8 && sums.len() == total, "witness not maximal dps")?;
    }
    Ok(format!(
        "2/2: 0, 2/3: {} all classified, 3/4: 0 in {:.2}s single-threaded, 3/5: witness {}",
        r23.witnesses.len(),
        t34.as_secs_f64(),
        r35.witnesses[0]
            .generators()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    ))
}

fn golden_point_sets() -> Vec<Vec<LatticePoint>> {
    vec![
        catalog::example1().lattice_points().to_vec(),
        catalog::example2().lattice_points().to_vec(),
        catalog::example2_projected().lattice_points().to_vec(),
        catalog::example3().lattice_points().to_vec(),
        sorted([catalog::example3_sheared_lower(), catalog::example3_sheared_upper()].concat()),
        catalog::example4_monomials(),
        pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]),
        pts(&[&[0], &[1], &[2]]),
    ]
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut sets = golden_point_sets();
    let golden = sets.len();
    let maximal: Vec<LatticePolytope> =
        (1..=3).map(|n| construct::maximal_dps(n).unwrap()).collect();
    while sets.len() < golden + CHECKER_RANDOM_SETS {
        let dim = rng.gen_range(1..=4usize);
        let p = if dim <= 3 && rng.gen_bool(0.5) {
            let map = random_map(&mut rng, dim, MAX_ELEMENTARY_OPS);
            let mut chosen = maximal[dim - 1].lattice_points().to_vec();
            chosen.truncate(rng.gen_range(1..=chosen.len()));
            // A stray point usually breaks the property.
            if rng.gen_bool(0.5) {
                chosen.extend(random_set(&mut rng, dim, 1, 2));
            }
            LatticePolytope::new(chosen.iter().map(|q| map.apply_point(q)).collect()).unwrap()
        } else {
            let spread: i64 = rng.gen_range(1..=[6, 3, 2, 1][dim - 1]);
            random_polytope(&mut rng, dim, spread)
        };
        if p.num_lattice_points() <= CHECKER_MAX_POINTS {
            sets.push(p.lattice_points().to_vec());
        }
    }
    let mut positives = 0;
    for set in &sets {
        let verdicts: Vec<_> = Checker::ALL.iter().map(|c| c.check(set)).collect();
        let first = verdicts[0].is_dps;
        ensure(
            verdicts.iter().all(|v| v.is_dps == first),
            format!("checkers disagree on {set:?}"),
        )?;
        for v in &verdicts {
            if let Some(w) = &v.witness {
                ensure(w.validate(), format!("invalid {} witness {w}", v.checker.name()))?;
            }
        }
        positives += usize::from(first);
    }
    // Arbitrary sets need not be lattice-convex; only the implication from a
    // pair-sum collision to the geometric failures holds there.
    let mut loose = 0;
    for _ in 0..CHECKER_RANDOM_SETS {
        let dim = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=CHECKER_MAX_POINTS);
        let set = random_set(&mut rng, dim, n, 5);
        if !dps::check_pairsum(&set).is_dps {
            loose += 1;
            ensure(
                !dps::check_geometric(&set).is_dps && !dps::check_direction(&set).is_dps,
                format!("pair-sum collision without a geometric witness in {set:?}"),
            )?;
        }
    }
    Ok(format!(
        "{golden} golden + {CHECKER_RANDOM_SETS} random polytopes, {positives} dps, all three checkers agree; \
         {loose} colliding arbitrary sets also fail geometrically"
    ))
}

fn criterion8() -> Outcome {
    let hp = sospoly::build_hp(&catalog::example1()).map_err(|e| e.to_string())?;
    let g = sospoly::forced_gram(&hp).map_err(|e| e.to_string())?;
    let a = g.forced_matrix.ok_or("h_P Gram not forced")?;
    let identity: Vec<Vec<Rational>> =
        (0..4).map(|i| (0..4).map(|j| rat_i64(i64::from(i == j))).collect()).collect();
    ensure(a == identity, "Gram of h_P is not I_4")?;
    match sospoly::sos_verdict(&hp).map_err(|e| e.to_string())? {
        SosVerdict::SosWithCount { count: 4, .. } => {}
        other => return Err(format!("h_P verdict {other:?}")),
    }

    let monomials = catalog::example4_monomials();
    let diag = [1, 1, 1, -3];
    let f: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| rat_i64(if i == j { diag[i] } else { 0 })).collect())
        .collect();
    let p = sospoly::substitute_quadratic(&f, &monomials).map_err(|e| e.to_string())?;
    let listed: BTreeMap<Vec<i64>, i64> =
        [(vec![0, 2, 4], 1), (vec![2, 4, 0], 1), (vec![4, 0, 2], 1), (vec![2, 2, 2], -3)]
            .into_iter()
            .collect();
    let got: BTreeMap<Vec<i64>, i64> = p
        .terms()
        .iter()
        .map(|(e, c)| (small(e), c.to_integer().to_i64().unwrap()))
        .collect();
    ensure(got == listed && p.terms().values().all(|c| c.is_integer()), format!("sextic {p}"))?;

    // Oracle: list every ordered pair (i, j) by its exponent sum and solve
    // each constraint, which involves one unordered pair only.
    let g4 = sospoly::forced_gram(&p).map_err(|e| e.to_string())?;
    let support: Vec<Vec<i64>> = g4.support.iter().map(small).collect();
    let mut constraints: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..support.len() {
        for j in 0..support.len() {
            let u: Vec<i64> = support[i].iter().zip(&support[j]).map(|(a, b)| a + b).collect();
            constraints.entry(u).or_default().push((i, j));
        }
    }
    let n = support.len();
    let mut oracle = vec![vec![rat_i64(0); n]; n];
    for (u, pairs) in &constraints {
        let unordered: BTreeSet<(usize, usize)> = pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        ensure(unordered.len() == 1, format!("constraint {u:?} not forced"))?;
        let b = rat_i64(*listed.get(u).unwrap_or(&0));
        for &(i, j) in pairs {
            oracle[i][j] = &b / rat_i64(pairs.len() as i64);
        }
    }
    let got_gram = g4.forced_matrix.ok_or("sextic Gram not forced")?;
    ensure(got_gram == oracle, "forced Gram differs from the oracle")?;
    // In the listed monomial order the forced matrix is diag(1,1,1,-3).
    let pos: Vec<usize> = monomials
        .iter()
        .map(|m| g4.support.iter().position(|s| s == m).unwrap())
        .collect();
    for i in 0..4 {
        for j in 0..4 {
            let want = rat_i64(if i == j { diag[i] } else { 0 });
            ensure(got_gram[pos[i]][pos[j]] == want, "Gram is not diag(1,1,1,-3)")?;
        }
    }
    match sospoly::sos_verdict(&p).map_err(|e| e.to_string())? {
        SosVerdict::NotSos { .. } => {}
        other => return Err(format!("sextic verdict {other:?}")),
    }
    let m = sospoly::grid_min(&p, &rat_i64(GRID_RADIUS), GRID_POINTS_PER_AXIS - 1)
        .map_err(|e| e.to_string())?;
    ensure(m.value == rat_i64(0), format!("grid minimum {}", m.value))?;
    let one = vec![rat_i64(1); 3];
    ensure(p.evaluate(&one).map_err(|e| e.to_string())? == rat_i64(0), "p(1,1,1) != 0")?;
    Ok("h_P Gram = I_4 with 4 squares; sextic exact, Gram diag(1,1,1,-3), not SOS, grid minimum 0".into())
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let square = LatticePolytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]).unwrap();
    let golden = [
        catalog::example1(),
        catalog::example2(),
        catalog::example2_projected(),
        catalog::example3(),
        square,
    ];
    let base: Vec<(usize, bool, bool)> = golden
        .iter()
        .map(|p| (p.num_lattice_points(), dps::is_dps(p.lattice_points()), dps::is_maximal_dps(p)))
        .collect();
    for k in 0..RANDOM_MAPS {
        let idx = k % golden.len();
        let p = &golden[idx];
        let map = random_map(&mut rng, p.dim(), MAX_ELEMENTARY_OPS);
        let q = map.apply(p).map_err(|e| e.to_string())?;
        let got = (q.num_lattice_points(), dps::is_dps(q.lattice_points()), dps::is_maximal_dps(&q));
        ensure(got == base[idx], format!("map {:?} changed {:?} to {got:?}", map.matrix(), base[idx]))?;
        let mapped = sorted(p.lattice_points().iter().map(|x| map.apply_point(x)).collect());
        ensure(q.lattice_points() == mapped.as_slice(), "lattice points not mapped onto each other")?;
    }
    Ok(format!("{RANDOM_MAPS} random maps, zero violations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("example 1 reproduction", criterion1),
        ("example 2 reproduction", criterion2),
        ("example 3 reproduction", criterion3),
        ("lattice point bound and parity collisions", criterion4),
        ("maximal construction chain", criterion5),
        ("minimal-size searches", criterion6),
        ("checker equivalence", criterion7),
        ("sums of squares", criterion8),
        ("unimodular invariance", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
