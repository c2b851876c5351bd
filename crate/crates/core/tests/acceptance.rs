//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubic_links::classify::{enumerate_with, Filters};
use cubic_links::flip_calculus::{flipped_normal_bundle, fn_euler, FnClass, SplitBundle};
use cubic_links::link_game::{analyze_link, pullback_to_x, push_to_y0, ContractionType, LinkKind, Singularity};
use cubic_links::linear_systems::{cubic_count, h0_on_cubic, seven_secant_conic_pencil};
use cubic_links::picard_lattice::{lines_meet, twenty_seven_lines, SurfaceClass, ThreefoldDivClass};
use cubic_links::rational::{int, ratio, Rational};
use cubic_links::weyl::{cremona, standardize};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn s(k: i64, m: [i64; 6]) -> SurfaceClass {
    SurfaceClass::new(k, m)
}

const TYPES: [SurfaceClass; 6] = [
    SurfaceClass::new(3, [1, 1, 0, 0, 0, 0]),
    SurfaceClass::new(3, [2, 0, 0, 0, 0, 0]),
    SurfaceClass::new(4, [2, 1, 1, 1, 0, 0]),
    SurfaceClass::new(5, [2, 1, 1, 1, 1, 1]),
    SurfaceClass::new(3, [2, 1, 0, 0, 0, 0]),
    SurfaceClass::new(5, [3, 1, 1, 1, 1, 1]),
];

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok((out, elapsed))
}

fn candidate_table() -> Outcome {
    let c_vectors: [[i64; 6]; 6] = [
        [5, 5, 4, 4, 4, 4],
        [6, 4, 4, 4, 4, 4],
        [5, 4, 4, 4, 3, 3],
        [5, 4, 4, 4, 4, 4],
        [5, 4, 3, 3, 3, 3],
        [5, 3, 3, 3, 3, 3],
    ];
    let l_vectors: [[i64; 15]; 6] = [
        [1, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3],
        [1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
        [1, 1, 1, 2, 2, 2, 2, 3, 3, 2, 3, 3, 3, 3, 4],
        [2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
        [0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3],
        [1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
    ];
    let degrees = [7, 7, 7, 8, 6, 7];
    let genera = [1, 0, 2, 5, 0, 3];

    let (rows, elapsed) = timed(Duration::from_secs(1), || enumerate_with(Filters::default()))?;
    ensure!(rows.len() == 6, "expected 6 rows, got {}", rows.len());
    for (i, r) in rows.iter().enumerate() {
        ensure!(r.class == TYPES[i], "row {}: type {} != {}", i + 1, r.class, TYPES[i]);
        ensure!(r.profile.e == TYPES[i].m, "row {}: e-vector {:?}", i + 1, r.profile.e);
        ensure!(r.profile.c == c_vectors[i], "row {}: c-vector {:?}", i + 1, r.profile.c);
        ensure!(r.profile.l == l_vectors[i], "row {}: l-vector {:?}", i + 1, r.profile.l);
        ensure!(r.degree == degrees[i] && r.genus == genera[i], "row {}: deg/genus {}/{}", i + 1, r.degree, r.genus);
    }
    Ok(format!("six rows with full secancy data ({elapsed:?})"))
}

fn link_invariants() -> Outcome {
    use Singularity::*;
    let kx3 = [8, 6, 10, 8, 14, 12].map(int);
    let finals: [Rational; 6] = [ratio(19, 2), ratio(55, 6), ratio(25, 2), int(9), ratio(29, 2), ratio(25, 2)];
    let type_ii = [
        (ContractionType::E5, 1),
        (ContractionType::E5, 3),
        (ContractionType::E3, 2),
        (ContractionType::E5, 1),
    ];
    let baskets: [Vec<Singularity>; 6] =
        [vec![Half; 3], vec![Half, Third], vec![Half, Odp], vec![Half; 2], vec![Half], vec![Half]];
    let dp_degrees = [5, 4];

    let (reports, elapsed) = timed(Duration::from_secs(1), || {
        TYPES.iter().map(analyze_link).collect::<Result<Vec<_>, _>>()
    })?;
    let reports = reports.map_err(|e| e.to_string())?;
    for (i, r) in reports.iter().enumerate() {
        let row = i + 1;
        ensure!(r.kx3 == kx3[i], "row {row}: -K_X^3 = {}", r.kx3);
        ensure!(*r.final_k3() == finals[i], "row {row}: final -K^3 = {}", r.final_k3());
        ensure!(r.k3_chain().last() == Some(&finals[i]), "row {row}: chain does not end at the final volume");
        ensure!(r.basket == baskets[i], "row {row}: basket {:?}", r.basket);
        match (&r.link_kind, i) {
            (LinkKind::TypeII { contraction, fano_weil_index, .. }, 0..=3) => {
                ensure!(
                    (*contraction, *fano_weil_index) == type_ii[i],
                    "row {row}: {contraction} index {fano_weil_index}"
                );
            }
            (LinkKind::TypeI { dp_degree, .. }, 4..=5) => {
                ensure!(*dp_degree == dp_degrees[i - 4], "row {row}: dP degree {dp_degree}");
            }
            (kind, _) => return Err(format!("row {row}: wrong link type {kind:?}")),
        }
    }
    Ok(format!("volumes, baskets, contractions, indices, link types ({elapsed:?})"))
}

fn cubic_dichotomy() -> Outcome {
    let counts: Vec<u64> = TYPES.iter().map(cubic_count).collect();
    ensure!(counts == [1, 1, 1, 1, 2, 2], "cubic counts {counts:?}");
    let pencils: Vec<bool> = TYPES.iter().map(|c| seven_secant_conic_pencil(c).is_some()).collect();
    ensure!(pencils == [true, true, true, true, false, false], "seven-secant conic pencils {pencils:?}");
    Ok("cubic counts (1,1,1,1,2,2), conic pencils on rows 1-4 only".into())
}

/// Classes reachable as sums of lines with every partial sum inside
/// `k <= 6`, `-6 <= mi <= 3`, up to 18 lines.
fn line_sums() -> HashSet<SurfaceClass> {
    let inside = |c: &SurfaceClass| c.k <= 6 && c.m.iter().all(|&x| (-6..=3).contains(&x));
    let mut seen: HashSet<SurfaceClass> = HashSet::from([SurfaceClass::ZERO]);
    let mut frontier = vec![SurfaceClass::ZERO];
    for _ in 0..18 {
        let mut next = Vec::new();
        for f in &frontier {
            for l in twenty_seven_lines() {
                let g = *f + l.class;
                if inside(&g) && seen.insert(g) {
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn is_nef(r: &SurfaceClass) -> bool {
    twenty_seven_lines().iter().all(|l| r.pairing(&l.class) >= 0)
}

fn rr(r: &SurfaceClass) -> i64 {
    let k = SurfaceClass::canonical();
    (r.self_intersection() - r.pairing(&k)) / 2 + 1
}

/// Brute force: the best `chi(R)` over all splittings `D = F + R` with `F` a
/// sum of lines and `R` nef.
fn decomposition_oracle(d: &SurfaceClass, sums: &HashSet<SurfaceClass>, nef: &[SurfaceClass]) -> u64 {
    nef.iter()
        .filter(|r| sums.contains(&(*d - **r)))
        .map(|r| rr(r).max(0) as u64)
        .max()
        .unwrap_or(0)
}

const P: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + P - factor * p % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Plane curves of degree `k` with multiplicity `mi` at six random points
/// over `F_p`: the dimension of that space of polynomials.
fn interpolation_oracle(d: &SurfaceClass, points: &[(u64, u64); 6]) -> u64 {
    let k = d.k as u64;
    let monomials: Vec<(u64, u64)> = (0..=k).flat_map(|i| (0..=k - i).map(move |j| (i, j))).collect();
    let falling = |n: u64, r: u64| (0..r).fold(1u64, |acc, t| if n < t { 0 } else { acc * ((n - t) % P) % P });
    let mut rows = Vec::new();
    for (&(x, y), &mult) in points.iter().zip(&d.m) {
        for a in 0..mult.max(0) as u64 {
            for b in 0..mult as u64 - a {
                rows.push(
                    monomials
                        .iter()
                        .map(|&(i, j)| {
                            if i < a || j < b {
                                0
                            } else {
                                falling(i, a) * falling(j, b) % P * pow_mod(x, i - a) % P * pow_mod(y, j - b) % P
                            }
                        })
                        .collect(),
                );
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { rank_mod_p(rows) };
    (monomials.len() - rank) as u64
}

fn h0_oracles() -> Outcome {
    let start = Instant::now();
    let sums = line_sums();
    let nef: Vec<SurfaceClass> = (0..=6i64)
        .flat_map(|k| {
            (0..7i64.pow(6)).map(move |code| s(k, std::array::from_fn(|i| (code / 7i64.pow(i as u32)) % 7)))
        })
        .filter(is_nef)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let points: [(u64, u64); 6] = std::array::from_fn(|_| (rng.gen_range(1..P), rng.gen_range(1..P)));

    let mut checked = 0;
    for k in 0..=6i64 {
        for code in 0..4i64.pow(6) {
            let m: [i64; 6] = std::array::from_fn(|i| (code / 4i64.pow(5 - i as u32)) % 4);
            if m.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let d = s(k, m);
            let ours = h0_on_cubic(&d);
            let brute = decomposition_oracle(&d, &sums, &nef);
            let plane = interpolation_oracle(&d, &points);
            ensure!(ours == brute, "{d}: h0 = {ours}, decomposition oracle {brute}");
            ensure!(ours == plane, "{d}: h0 = {ours}, interpolation oracle {plane}");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{checked} classes agree with both oracles ({elapsed:?})"))
}

fn random_class(rng: &mut ChaCha8Rng, range: std::ops::RangeInclusive<i64>) -> SurfaceClass {
    s(rng.gen_range(range.clone()), std::array::from_fn(|_| rng.gen_range(range.clone())))
}

fn lattice_properties() -> Outcome {
    let lines = twenty_seven_lines();
    for a in lines {
        let degree = lines.iter().filter(|b| b.label != a.label && lines_meet(a, b).unwrap()).count();
        ensure!(degree == 10, "{a} meets {degree} lines");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..10_000 {
        let (x, y, z) = (random_class(&mut rng, -20..=20), random_class(&mut rng, -20..=20), random_class(&mut rng, -20..=20));
        let (a, b) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        ensure!(x.pairing(&y) == y.pairing(&x), "pairing not symmetric at {x}, {y}");
        ensure!(
            (a * x + b * y).pairing(&z) == a * x.pairing(&z) + b * y.pairing(&z),
            "pairing not bilinear at {x}, {y}, {z}"
        );
    }

    let k_s = SurfaceClass::canonical();
    for _ in 0..10_000 {
        let d = random_class(&mut rng, -20..=20);
        let mut idx = [1usize, 2, 3, 4, 5, 6];
        for i in 0..3 {
            let j = rng.gen_range(i..6);
            idx.swap(i, j);
        }
        let moved = cremona(&d, idx[0], idx[1], idx[2]).map_err(|e| e.to_string())?;
        ensure!(moved.self_intersection() == d.self_intersection(), "cremona changes D^2 of {d}");
        ensure!(moved.pairing(&k_s) == d.pairing(&k_s), "cremona changes D.K of {d}");
    }

    let mut round_trips = 0;
    while round_trips < 10_000 {
        let d = random_class(&mut rng, -6..=12);
        if d.degree() <= 0 {
            continue;
        }
        let (standard, word) = standardize(&d).map_err(|e| format!("{d}: {e}"))?;
        ensure!(standard.is_standard(), "{d} standardizes to {standard}");
        ensure!(word.replay(&d).map_err(|e| e.to_string())? == standard, "word for {d} does not replay");
        round_trips += 1;
    }

    for n in 0..=10 {
        ensure!(fn_euler(&FnClass::canonical(n)) == 1, "chi(K) != 1 on F_{n}");
    }

    let mut admissible = 0;
    for alpha in -15..=15 {
        for beta in -15..=alpha {
            let nb = SplitBundle::new(alpha, beta);
            match flipped_normal_bundle(&nb) {
                Ok(out) => {
                    ensure!(2 * alpha - beta < 2, "{nb:?} should be undetermined");
                    ensure!(out.degree() == beta, "{nb:?} flips to {out:?}");
                    admissible += 1;
                }
                Err(_) => ensure!(2 * alpha - beta >= 2, "{nb:?} rejected"),
            }
        }
    }
    ensure!(admissible > 0, "no admissible bundles");
    Ok("incidence, bilinearity, cremona, round trips, chi(K), flipped bundles".into())
}

fn matrix_consistency() -> Outcome {
    ensure!(pullback_to_x(1, 0) == ThreefoldDivClass::canonical(), "(1,0) -> {}", pullback_to_x(1, 0));
    ensure!(pullback_to_x(0, 1) == ThreefoldDivClass::new(3, -1), "(0,1) -> {}", pullback_to_x(0, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1_000 {
        let (a, b) = (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        ensure!(push_to_y0(&pullback_to_x(a, b)) == (a, b), "push . pull != id at ({a},{b})");
        let d = ThreefoldDivClass::new(a, b);
        let (x, y) = push_to_y0(&d);
        ensure!(pullback_to_x(x, y) == d, "pull . push != id at {d}");
    }
    Ok("basis change and its inverse compose to the identity".into())
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("candidate table", candidate_table),
        ("link invariants", link_invariants),
        ("cubic dichotomy", cubic_dichotomy),
        ("h0 oracles", h0_oracles),
        ("lattice properties", lattice_properties),
        ("matrix consistency", matrix_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
