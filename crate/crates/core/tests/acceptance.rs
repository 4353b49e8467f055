//! Acceptance suite. Every criterion runs at its pinned tolerance and prints
//! one PASS/FAIL line; the test fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sepsys::bounds::{bevan_bound, eval_bounds, probabilistic_bound, rate_algebraic, rate_probabilistic};
use sepsys::construct::{greedy_construct, random_repair_construct, ScanOrder};
use sepsys::euclidean::{bridge_check, embed_cube, is_eps_21_separating, mc_separating_fraction};
use sepsys::hamming::{
    hull_by_half_spaces, hull_by_projections, hull_by_segments, saturation_depth, segment, Guard,
    HammingSpace, Word,
};
use sepsys::l1::{l1_metric_segment_contains, l1_segment_contains};
use sepsys::metric::{k32_fixture, load_graph_metric};
use sepsys::search::{exact_kappa, exact_kappa_naive, SearchOptions, SearchStatus};
use sepsys::separation::{
    characteristic_code, check_21_fast, min_separating_count, separating_coordinates,
    set_system_check, Code,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_hull_equivalence() -> Outcome {
    let start = Instant::now();
    let guard = Guard::default();
    let mut checked = 0usize;
    for q in [2u8, 3] {
        for n in 1..=4 {
            let space = HammingSpace::new(q, n).unwrap();
            let words = all_words(space);
            let m = words.len();
            let mut sets: Vec<Vec<Word>> = Vec::new();
            for a in 0..m {
                sets.push(vec![words[a].clone()]);
                for b in a + 1..m {
                    sets.push(vec![words[a].clone(), words[b].clone()]);
                    for c in b + 1..m {
                        sets.push(vec![words[a].clone(), words[b].clone(), words[c].clone()]);
                    }
                }
            }
            for s in sets {
                let p3: BTreeSet<Word> =
                    hull_by_projections(space, &s).unwrap().members(guard).unwrap().into_iter().collect();
                let p2 = hull_by_segments(space, &s, guard).unwrap();
                let p1 = hull_by_half_spaces(space, &s, guard).unwrap();
                ensure(p1 == p3 && p2 == p3, || format!("mismatch for q={q} n={n} S={s:?}"))?;
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} generator sets, 0 mismatches, {elapsed:.2?}"))
}

fn c2_segment_oracle() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for (q, n_max) in [(2u8, 5usize), (3, 3)] {
        for n in 1..=n_max {
            let space = HammingSpace::new(q, n).unwrap();
            let words = all_words(space);
            for x in &words {
                for y in &words {
                    let formula: BTreeSet<Word> =
                        segment(space, x, y).unwrap().members(Guard::default()).unwrap().into_iter().collect();
                    ensure(formula == segment_by_distances(space, x, y), || {
                        format!("segment mismatch q={q} x={x} y={y}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} ordered pairs exact, {elapsed:.2?}"))
}

fn c3_k32() -> Outcome {
    let space = load_graph_metric(&k32_fixture()).map_err(|e| e.to_string())?;
    let x = space.index_of("x").unwrap();
    let y = space.index_of("y").unwrap();
    let seg = space.segment(x, y).unwrap();
    let (hull, _) = space.hull_fixpoint(&[x, y].into_iter().collect()).unwrap();
    ensure(seg.len() == 4, || format!("segment has {} points", seg.len()))?;
    ensure(hull.len() == 5, || format!("hull has {} points", hull.len()))?;
    ensure(seg.is_subset(&hull) && seg != hull, || "inclusion is not strict".into())?;
    Ok("|[x,y]| = 4 < |hull(x,y)| = 5".into())
}

fn c4_saturation_depth() -> Outcome {
    let space = HammingSpace::binary(10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = Vec::new();
    for size in [2usize, 3, 4, 8] {
        let bound = (size as f64).log2().ceil() as usize;
        let mut max_depth = 0;
        for _ in 0..100 {
            let s = random_set(&mut rng, space, size);
            let depth = saturation_depth(space, &s, Guard::default()).unwrap();
            ensure(depth <= bound, || format!("|S|={size}: depth {depth} > {bound}"))?;
            max_depth = max_depth.max(depth);
        }
        worst.push(format!("|S|={size}: max {max_depth} <= {bound}"));
    }
    Ok(worst.join(", "))
}

fn cube_dot(x: &Word, y: &Word, z: &Word) -> i64 {
    let (x, y, z) = (x.symbols(), y.symbols(), z.symbols());
    (0..z.len()).map(|i| (x[i] as i64 - z[i] as i64) * (y[i] as i64 - z[i] as i64)).sum()
}

fn c5_bridge_lemma() -> Outcome {
    let mut triples = 0u64;
    for n in 1..=8 {
        let space = HammingSpace::binary(n).unwrap();
        let words = all_words(space);
        for (i, x) in words.iter().enumerate() {
            for y in &words[i + 1..] {
                for z in words.iter().filter(|&z| z != x && z != y) {
                    let audit = bridge_check(x, y, z).unwrap();
                    ensure(audit.equal && audit.dot == cube_dot(x, y, z), || {
                        format!("n={n} x={x} y={y} z={z}: {audit:?}")
                    })?;
                    triples += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let space16 = HammingSpace::binary(16).unwrap();
    let mut random = 0;
    while random < 10_000 {
        let t = random_set(&mut rng, space16, 3);
        let audit = bridge_check(&t[0], &t[1], &t[2]).unwrap();
        ensure(audit.equal && audit.dot == cube_dot(&t[0], &t[1], &t[2]), || format!("{t:?}"))?;
        random += 1;
    }
    let mut agree = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let space = HammingSpace::binary(n).unwrap();
        let size = rng.random_range(3..=8.min(1 << n));
        let code = random_code(&mut rng, space, size);
        let acute = is_eps_21_separating(&embed_cube(&code).unwrap(), &ratio(1, 2)).unwrap().separating;
        let hamming = check_21_fast(&code, &zero()).unwrap().separating;
        ensure(acute == hamming, || format!("verdicts differ on {:?}", code.words()))?;
        agree += 1;
    }
    Ok(format!("{triples} exhaustive + {random} random triples exact, {agree}/200 verdicts agree"))
}

fn c6_monte_carlo() -> Outcome {
    // angle at z from atan2(|a×b|, a·b), independent of the sampler
    fn angle(x: [f64; 3], y: [f64; 3], z: [f64; 3]) -> f64 {
        let a = [x[0] - z[0], x[1] - z[1], x[2] - z[2]];
        let b = [y[0] - z[0], y[1] - z[1], y[2] - z[2]];
        let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let cn = (cross[0].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
        cn.atan2(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
    }
    let h = 3f64.sqrt() / 2.0;
    let triples = [
        ([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        ([1.0, 0.0, 0.0], [0.5, h, 0.0], [0.0, 0.0, 0.0]),
        ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]),
        ([1.0, 0.0, 0.0], [-0.5, h, 0.0], [0.0, 0.0, 0.0]),
        ([-1.0, 0.0, 2.0], [1.0, 0.0, 2.0], [0.0, 10.0, 2.0]),
    ];
    let mut worst: f64 = 0.0;
    for (k, (x, y, z)) in triples.iter().enumerate() {
        let expected = 1.0 - angle(*x, *y, *z) / std::f64::consts::PI;
        let estimate = mc_separating_fraction(x, y, z, 100_000, 6 + k as u64).unwrap();
        let err = (estimate - expected).abs();
        ensure(err <= 0.01, || format!("triple {k}: estimate {estimate}, expected {expected}"))?;
        worst = worst.max(err);
    }
    ensure((1.0 - angle(triples[0].0, triples[0].1, triples[0].2) / std::f64::consts::PI - 0.75).abs() < 1e-12, || {
        "analytic 45° case".into()
    })?;
    Ok(format!("5 triples, max |error| = {worst:.4} <= 0.01"))
}

fn c7_constants() -> Outcome {
    let truncated = |v: f64| format!("{:.6}", (v * 1e6).floor() / 1e6);
    ensure(truncated(rate_probabilistic()) == "0.207518", || format!("r_prob = {}", rate_probabilistic()))?;
    ensure(truncated(rate_algebraic()) == "0.207565", || format!("r_alg = {}", rate_algebraic()))?;
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let table = eval_bounds(200);
    for row in &table.rows {
        let n = row.n;
        // eq1 = k iff 4k²3ⁿ <= 4ⁿ < 4(k+1)²3ⁿ
        let k = &row.eq1;
        let lhs = |k: &BigUint| BigUint::from(4u32) * k * k * three.pow(n);
        let four_n = BigUint::from(4u32).pow(n);
        ensure(lhs(k) <= four_n && four_n < lhs(&(k + 1u32)), || format!("eq1({n}) = {k}"))?;
        // bevan = 2k with k²3^(n+3) <= 2^(2n+1) < (k+1)²3^(n+3)
        ensure(&row.bevan % &two == BigUint::from(0u32), || format!("bevan({n}) odd"))?;
        let k = &row.bevan / &two;
        let lhs = |k: &BigUint| k * k * three.pow(n + 3);
        let rhs = two.pow(2 * n + 1);
        ensure(lhs(&k) <= rhs && rhs < lhs(&(&k + 1u32)), || format!("bevan({n}) = {}", row.bevan))?;
    }
    ensure(probabilistic_bound(10) == BigUint::from(2u32), || "eq1(10) != 2".into())?;
    ensure(probabilistic_bound(15) == BigUint::from(4u32), || "eq1(15) != 4".into())?;
    Ok(format!(
        "r_prob = {:.9}, r_alg = {:.9}; eq1/bevan exact for n <= 200 (bevan(20) = {})",
        rate_probabilistic(),
        rate_algebraic(),
        bevan_bound(20)
    ))
}

fn c8_exact_search() -> Outcome {
    let start = Instant::now();
    let budget = Duration::from_secs(600);
    let frozen = [(1usize, 2usize), (2, 2), (3, 4)];
    let mut values = Vec::new();
    for n in 1..=5 {
        let (naive, naive_code) = exact_kappa_naive(n).map_err(|e| e.to_string())?;
        let remaining = budget.saturating_sub(start.elapsed());
        let pruned = exact_kappa(n, SearchOptions { time_limit: Some(remaining), parallel: 0 })
            .map_err(|e| e.to_string())?;
        ensure(pruned.status == SearchStatus::Exact, || format!("n={n} timed out"))?;
        ensure(naive == pruned.kappa, || format!("n={n}: naive {naive} vs pruned {}", pruned.kappa))?;
        if let Some(&(_, k)) = frozen.iter().find(|(m, _)| *m == n) {
            ensure(pruned.kappa == k, || format!("kappa({n}) = {} != {k}", pruned.kappa))?;
        }
        for code in [&naive_code, &pruned.witness] {
            ensure(code.len() == naive && check_21_fast(code, &zero()).unwrap().separating, || {
                format!("n={n}: witness does not verify")
            })?;
        }
        let eq1 = probabilistic_bound(n as u32);
        ensure(BigUint::from(pruned.kappa) >= eq1, || format!("kappa({n}) < eq1"))?;
        values.push(pruned.kappa);
    }
    ensure(start.elapsed() < budget, || "over the 10-minute budget".into())?;
    Ok(format!("kappa(1..=5) = {values:?}, naive = pruned, {:.2?}", start.elapsed()))
}

fn c9_constructions() -> Outcome {
    let eps = zero();
    let mut summary = Vec::new();
    for n in [8usize, 12, 15] {
        let eq1 = probabilistic_bound(n as u32).try_into().unwrap_or(0usize);
        let m = 2 * eq1.max(2);
        let (mut best_repair, mut best_greedy) = (0, 0);
        for seed in 0..100u64 {
            let repaired = random_repair_construct(n, m, seed).map_err(|e| e.to_string())?;
            let greedy = greedy_construct(n, ScanOrder::Random { seed }, 1).map_err(|e| e.to_string())?;
            for code in [&repaired, &greedy] {
                ensure(check_21_fast(code, &eps).unwrap().separating, || {
                    format!("n={n} seed={seed}: output not separating")
                })?;
            }
            if seed < 20 {
                best_repair = best_repair.max(repaired.len());
                best_greedy = best_greedy.max(greedy.len());
            }
        }
        if n == 15 {
            ensure(best_repair >= eq1 && best_greedy >= eq1, || {
                format!("n=15 best of 20: repair {best_repair}, greedy {best_greedy}, eq1 {eq1}")
            })?;
        }
        summary.push(format!("n={n}: repair {best_repair}, greedy {best_greedy} (eq1 {eq1})"));
    }
    Ok(summary.join("; "))
}

fn c10_epsilon_strictness() -> Outcome {
    let code = Code::parse(HammingSpace::binary(3).unwrap(), &["000", "110", "101", "011"]).unwrap();
    let at_zero = min_separating_count(&code, 2, 1, &zero()).unwrap();
    let at_third = min_separating_count(&code, 2, 1, &ratio(1, 3)).unwrap();
    ensure(at_zero.min_lambda == Some(1), || format!("{at_zero:?}"))?;
    ensure(at_zero.separating, || "not separating at ε=0".into())?;
    ensure(!at_third.separating && at_third.violation.is_some(), || "separating at ε=1/3".into())?;
    Ok("min_lambda = 1; ε=0 true, ε=1/3 false".into())
}

fn c11_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // set systems
    for _ in 0..500 {
        let ground = rng.random_range(2..=7u32);
        let size = rng.random_range(3..=10usize.min(1 << ground));
        let mut family: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
        while family.len() < size {
            family.insert((0..ground).filter(|_| rng.random_bool(0.5)).collect());
        }
        let mut family: Vec<BTreeSet<u32>> = family.into_iter().collect();
        // keep the ground set spanned so characteristic vectors have full length
        if family.iter().flatten().collect::<BTreeSet<_>>().len() < ground as usize {
            family.push((0..ground).collect());
            family.sort();
            family.dedup();
        }
        let sets = set_system_check(&family, false).unwrap();
        let (_, code) = characteristic_code(&family).unwrap();
        let fast = check_21_fast(&code, &zero()).unwrap();
        ensure(sets.ok == fast.separating, || format!("family {family:?}"))?;
    }
    // L¹ box vs metric
    for _ in 0..10_000 {
        let dim = rng.random_range(1..=5);
        let mut pt = || -> Vec<BigRational> {
            (0..dim).map(|_| ratio(rng.random_range(-6..=6), rng.random_range(1..=4))).collect()
        };
        let (x, y, z) = (pt(), pt(), pt());
        ensure(
            l1_segment_contains(&x, &y, &z).unwrap() == l1_metric_segment_contains(&x, &y, &z).unwrap(),
            || format!("L1 disagreement at {x:?} {y:?} {z:?}"),
        )?;
    }
    // isometry invariance
    let codes = [(2u8, 6usize, 7usize), (3, 4, 6), (2, 9, 10), (4, 3, 5)];
    for (q, n, size) in codes {
        let space = HammingSpace::new(q, n).unwrap();
        let code = random_code(&mut rng, space, size);
        for (s, t) in [(2, 1), (2, 2)] {
            let base = min_separating_count(&code, s, t, &zero()).unwrap().min_lambda;
            for _ in 0..100 {
                let iso = Isometry::random(&mut rng, space);
                let moved = min_separating_count(&iso.apply_code(&code), s, t, &zero()).unwrap().min_lambda;
                ensure(moved == base, || format!("q={q} n={n} ({s},{t}): {base:?} -> {moved:?}"))?;
            }
        }
    }
    // separating coordinates of a symmetric pair of singletons equal the distance
    let space = HammingSpace::binary(5).unwrap();
    let (a, b) = (space.word("10110").unwrap(), space.word("00011").unwrap());
    ensure(separating_coordinates(space, std::slice::from_ref(&a), std::slice::from_ref(&b)).unwrap().len() == a.distance(&b), || {
        "singleton case".into()
    })?;
    Ok("500 families, 10^4 L1 triples, 4 codes x 2 (s,t) x 100 isometries".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 hull equivalence (half-spaces = segments = projections)", c1_hull_equivalence),
        ("2 segment formula vs triangle equality", c2_segment_oracle),
        ("3 K_{3,2} strict inclusion", c3_k32),
        ("4 saturation depth <= ceil(log2 |S|)", c4_saturation_depth),
        ("5 cube bridge lemma", c5_bridge_lemma),
        ("6 angle Monte Carlo", c6_monte_carlo),
        ("7 bound constants", c7_constants),
        ("8 exact kappa, naive vs pruned", c8_exact_search),
        ("9 construction soundness", c9_constructions),
        ("10 strict epsilon", c10_epsilon_strictness),
        ("11 equivalence suites", c11_equivalences),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                println!("[FAIL] {name}: {detail}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
