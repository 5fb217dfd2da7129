//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line to the real stdout.

mod common;

use std::io::Write;
use std::time::Instant;

use common::{character_projector, max_abs, p, racah_norm, s, traceless2, STORED_NONMEMBER};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetra_horn::geometry2::{cayley_menger, lengths_member, slice_scan, tetra2_member, EdgeLengths};
use tetra_horn::lr::{coupling_feasible, first_horn_violation, horn_row_col_check, lr_coeff, pairs_of_size};
use tetra_horn::partitions::{dim_sym_irrep_f64, enumerate_partitions, factorial, weyl_dim_f64, Partition};
use tetra_horn::probability::{eig_est_bound, eig_sep_bound, schur_weyl_dist, sw_bhattacharyya};
use tetra_horn::schurweyl::{
    all_groups, haar_expectation_check, isotypic_projector, q_left, HermitianMatrix, PairFunctional, SixJEngine, SixJLabel,
};
use tetra_horn::symfunc::{multinomial_weight, phi};
use tetra_horn::symmetry::{generate_group, relations, to_nonnegative};
use tetra_horn::tetra::{
    asymptotics_scan, distance_d, entropic_check, hook_ratio_identity, random_psd, random_tetra_sample, tet_distance_bound,
    tet_inequality_check, AsymptoticsRow, Budget, DistanceMode,
};
use tetra_horn::Spectrum;

const NORMALIZATION_REL: f64 = 1e-10;
const PROJECTOR_TOL: f64 = 1e-10;
const BINOMIAL_REL: f64 = 1e-8;
const UNIT_NORM_TOL: f64 = 1e-12;
const RACAH_TOL: f64 = 1e-8;
const SLACK_FLOOR: f64 = -1e-9;
const MEMBER_DISTANCE: f64 = 1e-6;
const CM_TOL: f64 = 1e-12;
const ENTROPY_FLOOR: f64 = -1e-12;
const HOOK_TOL: f64 = 1e-10;
const BOUND_SLACK: f64 = 1e-12;
const COUPLING_REL: f64 = 1e-9;
const HAAR_REL: f64 = 0.05;

/// Smallest degree at which the stored non-member tuple violates an
/// inequality. None was found in the scan below, so no value is recorded.
const TET_K_STAR: Option<usize> = None;
const TET_K_SCAN: usize = 14;
/// Smallest violating degree for the Horn triple `(2,0), (1,0), (1.5,1.5)`.
const HORN_K_STAR: usize = 8;
const HORN_K_SCAN: usize = 200;

fn verdict(n: u32, pass: bool, detail: impl AsRef<str>) {
    let line = format!("criterion {n:>2}: {} {}\n", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "criterion {n} failed: {}", detail.as_ref());
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn random_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Spectrum {
    Spectrum::from_unsorted((0..n).map(|_| rng.random::<f64>()).collect())
}

fn random_partition(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Partition {
    let all = enumerate_partitions(k, n);
    all[rng.random_range(0..all.len())].clone()
}

#[test]
fn criterion_01_normalization() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for n in 1..=5 {
        for _ in 0..5 {
            let x = random_spectrum(&mut rng, n);
            for k in 0..=12 {
                let sum: f64 = enumerate_partitions(k, n).iter().map(|l| phi(l, &x).unwrap()).sum();
                worst = worst.max(rel(sum, x.trace().powi(k as i32) / factorial(k)));
            }
        }
    }
    verdict(1, worst <= NORMALIZATION_REL, format!("max relative error {worst:.3e} (tol {NORMALIZATION_REL:e}) in {:.1?}", start.elapsed()));
}

#[test]
fn criterion_02_lr_table() {
    let cols: [(&[u32], &[u32]); 20] = [
        (&[4], &[]),
        (&[3, 1], &[]),
        (&[2, 2], &[]),
        (&[2, 1, 1], &[]),
        (&[1, 1, 1, 1], &[]),
        (&[3], &[1]),
        (&[2, 1], &[1]),
        (&[1, 1, 1], &[1]),
        (&[2], &[2]),
        (&[2], &[1, 1]),
        (&[1, 1], &[2]),
        (&[1, 1], &[1, 1]),
        (&[1], &[3]),
        (&[1], &[2, 1]),
        (&[1], &[1, 1, 1]),
        (&[], &[4]),
        (&[], &[3, 1]),
        (&[], &[2, 2]),
        (&[], &[2, 1, 1]),
        (&[], &[1, 1, 1, 1]),
    ];
    let rows: [(&[u32], [u64; 20]); 5] = [
        (&[4], [1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0]),
        (&[3, 1], [0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0]),
        (&[2, 2], [0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0]),
        (&[2, 1, 1], [0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 0]),
        (&[1, 1, 1, 1], [0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1]),
    ];
    let mut mismatches = Vec::new();
    for (gamma, expected) in rows {
        for ((a, b), want) in cols.iter().zip(expected) {
            let got = lr_coeff(&p(a), &p(b), &p(gamma));
            if got != want {
                mismatches.push(format!("c^{:?}_({:?},{:?})={got}", gamma, a, b));
            }
        }
    }
    verdict(2, mismatches.is_empty(), format!("100 entries, {} mismatches {:?}", mismatches.len(), mismatches));
}

#[test]
fn criterion_03_projectors() {
    let start = Instant::now();
    let (mut idem, mut adj, mut oracle, mut resolution): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut rank_errors = Vec::new();
    for n in 1usize..=3 {
        for k in 1..=6 {
            let dim = n.pow(k as u32);
            let mut total = DMatrix::<f64>::zeros(dim, dim);
            for lambda in enumerate_partitions(k, n) {
                let proj = isotypic_projector(&lambda, 0..k, n, k, 1 << 20).unwrap();
                let m = proj.to_dense();
                idem = idem.max(max_abs(&(&m * &m - &m)));
                adj = adj.max(max_abs(&(&m - m.transpose())));
                if proj.rank() as f64 != dim_sym_irrep_f64(&lambda) * weyl_dim_f64(&lambda, n).unwrap() {
                    rank_errors.push(format!("n={n} {lambda}"));
                }
                oracle = oracle.max(max_abs(&(&m - character_projector(&lambda, n))));
                total += m;
            }
            resolution = resolution.max(max_abs(&(total - DMatrix::identity(dim, dim))));
        }
    }
    let pass = idem <= PROJECTOR_TOL && adj <= PROJECTOR_TOL && oracle <= PROJECTOR_TOL && resolution <= PROJECTOR_TOL && rank_errors.is_empty();
    verdict(
        3,
        pass,
        format!(
            "|P²-P| {idem:.1e}, |P-Pᵀ| {adj:.1e}, |ΣP-I| {resolution:.1e}, |P-P_char| {oracle:.1e} (tol {PROJECTOR_TOL:e}), rank errors {:?}, {:.1?}",
            rank_errors,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_04_binomial() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for k in 1..=6 {
            let x = random_psd(n, &mut rng);
            let y = random_psd(n, &mut rng);
            let z = x.add(&y).unwrap().spectrum();
            let gammas = enumerate_partitions(k, n);
            let mut sums = vec![0.0; gammas.len()];
            for (a, b) in pairs_of_size(k, n) {
                let f = PairFunctional::new(&a, &b, n, 1 << 20).unwrap();
                for (g, v) in f.evaluate(&x, &y).unwrap() {
                    sums[gammas.iter().position(|h| *h == g).unwrap()] += v;
                }
            }
            for (g, sum) in gammas.iter().zip(sums) {
                worst = worst.max(rel(sum, phi(g, &z).unwrap()));
            }
        }
    }
    verdict(4, worst <= BINOMIAL_REL, format!("max relative error {worst:.3e} (tol {BINOMIAL_REL:e}) in {:.1?}", start.elapsed()));
}

#[test]
fn criterion_05_sixj_sanity() {
    let start = Instant::now();
    let engine = SixJEngine::new(2, 1 << 20);
    let (mut labels, mut trivial, mut out_of_range, mut rank_bad) = (0usize, 0usize, 0usize, Vec::new());
    let mut worst_trivial: f64 = 0.0;
    for k in 1..=6 {
        for (a, b, d, e) in all_groups(k, 2) {
            for r in engine.group(&a, &b, &d, &e).unwrap() {
                let l = &r.label;
                labels += 1;
                if !(0.0..=1.0).contains(&r.inf_norm) {
                    out_of_range += 1;
                }
                if l.beta.is_empty() && l.gamma == l.alpha && l.phi == l.delta && r.rank_left > 0 {
                    trivial += 1;
                    worst_trivial = worst_trivial.max((r.inf_norm - 1.0).abs());
                }
                let q = q_left(l, 2, 1 << 20).unwrap();
                let want = lr_coeff(&l.alpha, &l.beta, &l.gamma) as f64
                    * lr_coeff(&l.gamma, &l.delta, &l.epsilon) as f64
                    * [&l.alpha, &l.beta, &l.delta].iter().map(|x| dim_sym_irrep_f64(x)).product::<f64>()
                    * weyl_dim_f64(&l.epsilon, 2).unwrap();
                if q.rank() as f64 != want {
                    rank_bad.push(l.to_string());
                }
            }
        }
    }
    let pass = out_of_range == 0 && worst_trivial <= UNIT_NORM_TOL && rank_bad.is_empty() && trivial > 0;
    verdict(
        5,
        pass,
        format!(
            "{labels} labels, {out_of_range} norms outside [0,1], {trivial} trivial labels max |norm-1| {worst_trivial:.1e}, rank mismatches {:?}, {:.1?}",
            rank_bad,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_06_racah_oracle() {
    let start = Instant::now();
    let engine = SixJEngine::new(2, 1 << 20);
    let (mut labels, mut nonzero) = (0usize, 0usize);
    let mut worst: f64 = 0.0;
    let mut worst_label = None;
    for k in 1..=6 {
        for (a, b, d, e) in all_groups(k, 2) {
            for r in engine.group(&a, &b, &d, &e).unwrap() {
                labels += 1;
                let want = racah_norm(&r.label);
                nonzero += (want > 0.0) as usize;
                let err = (want - r.inf_norm).abs();
                if err > worst {
                    worst = err;
                    worst_label = Some(r.label.to_string());
                }
            }
        }
    }
    verdict(
        6,
        worst <= RACAH_TOL,
        format!(
            "{labels} labels ({nonzero} nonzero), max |norm - racah| {worst:.2e} at {:?} (tol {RACAH_TOL:e}), {:.1?}",
            worst_label,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_07_necessity() {
    let start = Instant::now();
    let mut min_slack = f64::INFINITY;
    let mut failures = Vec::new();
    for (n, count, kmax) in [(2usize, 100u64, 8usize), (3, 20, 6)] {
        let engine = SixJEngine::new(n, 1 << 20);
        for seed in 0..count {
            let t = random_tetra_sample(n, seed).unwrap().tuple;
            for k in 1..=kmax {
                let r = tet_inequality_check(&t, k, &engine).unwrap();
                min_slack = min_slack.min(r.min_slack);
                if r.min_slack < SLACK_FLOOR {
                    failures.push((n, seed, k));
                }
            }
        }
    }
    verdict(
        7,
        failures.is_empty(),
        format!("120 member tuples, min slack {min_slack:.4} (floor {SLACK_FLOOR:e}), failures {failures:?}, {:.1?}", start.elapsed()),
    );
}

#[test]
fn criterion_08_sufficiency_signal() {
    let start = Instant::now();
    let shifted = to_nonnegative(&traceless2(STORED_NONMEMBER)).unwrap();
    let t = shifted.tuple;
    let oracle = tetra2_member(&t).unwrap();
    assert!(!oracle.member, "stored tuple must be a non-member");
    let engine = SixJEngine::new(2, 1 << 20);
    let mut first = None;
    let mut slacks = Vec::new();
    for k in 1..=TET_K_SCAN {
        let r = tet_inequality_check(&t, k, &engine).unwrap();
        slacks.push(format!("{k}:{:.3}", r.min_slack));
        if r.min_slack < SLACK_FLOOR {
            first = Some(k);
            break;
        }
    }
    let pass = first.is_some() && first == TET_K_STAR;
    verdict(
        8,
        pass,
        format!(
            "lengths {STORED_NONMEMBER:?} (CM {:.3}), first violation {first:?} for k <= {TET_K_SCAN}, recorded {TET_K_STAR:?}, min slack by k [{}], {:.1?}",
            oracle.cm,
            slacks.join(" "),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_09_distance() {
    let start = Instant::now();
    let budget = Budget::default();
    let mut worst_member: f64 = 0.0;
    for (n, seeds) in [(2usize, 0..10u64), (3, 0..4)] {
        for seed in seeds {
            let t = random_tetra_sample(n, 1000 + seed).unwrap().tuple;
            worst_member = worst_member.max(distance_d(&t, DistanceMode::Orbit, &budget).unwrap().objective);
        }
    }
    let engine = SixJEngine::new(2, 1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut candidates = vec![STORED_NONMEMBER];
    while candidates.len() < 9 {
        let l: [f64; 6] = std::array::from_fn(|_| rng.random_range(0.5..6.0));
        if to_nonnegative(&traceless2(l)).unwrap().passes_filter() {
            candidates.push(l);
        }
    }
    let (mut checked, mut ratio_max, mut breaches) = (0usize, 0.0f64, Vec::new());
    for l in candidates {
        let t = to_nonnegative(&traceless2(l)).unwrap().tuple;
        let upper = [DistanceMode::Orbit, DistanceMode::Free]
            .iter()
            .map(|&m| distance_d(&t, m, &budget).unwrap().objective)
            .fold(f64::INFINITY, f64::min);
        let ratio = upper / t.e.trace();
        for k in 1..=8 {
            if tet_inequality_check(&t, k, &engine).unwrap().min_slack < SLACK_FLOOR {
                break;
            }
            checked += 1;
            ratio_max = ratio_max.max(ratio / tet_distance_bound(k, 2));
            if ratio > tet_distance_bound(k, 2) {
                breaches.push((l, k));
            }
        }
    }
    let pass = worst_member <= MEMBER_DISTANCE && breaches.is_empty();
    verdict(
        9,
        pass,
        format!(
            "14 members max D {worst_member:.2e} (tol {MEMBER_DISTANCE:e}); {checked} (tuple,k) passes, max (D/Tr e)/bound {ratio_max:.4}, breaches {breaches:?}, {:.1?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_10_asymptotics() {
    let start = Instant::now();
    let ks: Vec<usize> = (3..=12).collect();
    let engine = SixJEngine::new(2, 1 << 20);
    let sample = random_tetra_sample(2, 10).unwrap();
    let member = asymptotics_scan(&sample.tuple, &ks, &engine, Some(&sample.witness)).unwrap();
    let scaled: Vec<f64> = member
        .rows
        .iter()
        .map(|r| AsymptoticsRow::scaled(r.best.as_ref().map_or(0.0, |b| b.1), r.k, member.rank_e))
        .collect();
    let member_ok = scaled.iter().all(|&v| v >= 1.0);
    let t = to_nonnegative(&traceless2(STORED_NONMEMBER)).unwrap().tuple;
    let non = asymptotics_scan(&t, &ks, &engine, None).unwrap();
    let slope = non.compensated_slope;
    let non_ok = slope.is_some_and(|s| s < 0.0);
    let min_scaled = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    verdict(
        10,
        member_ok && non_ok,
        format!(
            "member half {}: min max-label norm·(k+1)^(6·{}) = {min_scaled:.3e} (need >= 1); non-member half {}: compensated slope {:?} (need < 0), raw slope {:?}, rank e {}, zero-norm k {:?}, {:.1?}",
            if member_ok { "ok" } else { "fails" },
            member.rank_e,
            if non_ok { "ok" } else { "fails" },
            slope,
            non.raw_slope,
            non.rank_e,
            non.zero_norm_ks,
            start.elapsed()
        ),
    );
}

fn lengths_from_vectors(a: [f64; 3], b: [f64; 3], d: [f64; 3]) -> EdgeLengths {
    let add = |x: [f64; 3], y: [f64; 3]| [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
    let norm = |x: [f64; 3]| (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    EdgeLengths([norm(a), norm(b), norm(add(a, b)), norm(d), norm(add(add(a, b), d)), norm(add(b, d))])
}

#[test]
fn criterion_11_geometry() {
    let start = Instant::now();
    let regular = cayley_menger(&EdgeLengths([1.0; 6]));
    let regular_err = (regular - 1.0 / 72.0).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut flat: f64 = 0.0;
    for _ in 0..200 {
        let mut v = || [rng.random_range(-2..=2) as f64, rng.random_range(-2..=2) as f64, 0.0];
        let (a, b, d) = (v(), v(), v());
        flat = flat.max(cayley_menger(&lengths_from_vectors(a, b, d)).abs());
    }
    let point = EdgeLengths([5.0, 7.0, 74f64.sqrt(), 6.0, 110f64.sqrt(), 85f64.sqrt()]);
    let in_slice = lengths_member(&point).member;
    let grid = slice_scan(5.0, 7.0, 6.0, 0.0, 18.0, 200).unwrap();
    let outside = grid.iter().filter(|r| r.member && !r.triangle).count();
    let members = grid.iter().filter(|r| r.member).count();
    let triangles = grid.iter().filter(|r| r.triangle).count();
    let pass = regular_err <= CM_TOL && flat <= CM_TOL && in_slice && outside == 0;
    verdict(
        11,
        pass,
        format!(
            "|CM(regular)-1/72| {regular_err:.1e}, max flat |CM| {flat:.1e} (tol {CM_TOL:e}), (√74,√110,√85) member {in_slice}, grid 200³: {members} members ⊆ {triangles} triangle points ({outside} outside), {:.1?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_12_symmetry() {
    let start = Instant::now();
    let group = generate_group().unwrap();
    let rels = relations();
    let mut broken = 0usize;
    for seed in 0..1000 {
        let t = random_tetra_sample(2, 20_000 + seed).unwrap().tuple;
        for g in &group {
            if !tetra2_member(&g.apply(&t)).unwrap().member {
                broken += 1;
            }
        }
    }
    let pass = group.len() == 48 && rels.iter().all(|r| r.1) && broken == 0;
    verdict(
        12,
        pass,
        format!("order {}, relations {:?}, {broken} of 48000 orbit images left the member set, {:.1?}", group.len(), rels, start.elapsed()),
    );
}

#[test]
fn criterion_13_entropy() {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    for i in 0..1000u64 {
        let n = 1 + (i % 6) as usize;
        let t = random_tetra_sample(n, 30_000 + i).unwrap().tuple;
        worst = worst.min(entropic_check(&t).unwrap());
    }
    let mut residual: f64 = 0.0;
    for n in 1..=20 {
        for k in 0..=8 {
            for l in enumerate_partitions(k, n) {
                residual = residual.max(hook_ratio_identity(&l, n).unwrap());
            }
        }
    }
    let pass = worst >= ENTROPY_FLOOR && residual <= HOOK_TOL;
    verdict(
        13,
        pass,
        format!(
            "min entropic margin {worst:.4} over 1000 samples n<=6 (floor {ENTROPY_FLOOR:e}), max hook residual {residual:.1e} (tol {HOOK_TOL:e}), {:.1?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_14_probability_bounds() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (mut multinomial, mut est, mut sep) = (0usize, 0usize, 0usize);
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=10);
        let x = random_spectrum(&mut rng, n);
        let l = random_partition(&mut rng, k, n);
        let sw = schur_weyl_dist(&x, k).unwrap().prob(&l);
        let m = multinomial_weight(&l, &x).unwrap();
        if sw > weyl_dim_f64(&l, n).unwrap() * m + BOUND_SLACK {
            multinomial += 1;
        }
    }
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=10);
        let x = random_spectrum(&mut rng, n);
        let l = random_partition(&mut rng, k, n);
        if schur_weyl_dist(&x, k).unwrap().prob(&l) > eig_est_bound(&l, &x, n).unwrap() * (1.0 + BOUND_SLACK) {
            est += 1;
        }
    }
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let k = rng.random_range(1..=10);
        let x = random_spectrum(&mut rng, n);
        let y = random_spectrum(&mut rng, n);
        let y = y.scaled(x.trace() / y.trace());
        if sw_bhattacharyya(&x, &y, k).unwrap() > eig_sep_bound(&x, &y, k, n).unwrap() * (1.0 + BOUND_SLACK) {
            sep += 1;
        }
    }
    let pass = multinomial + est + sep == 0;
    verdict(
        14,
        pass,
        format!("violations over 1000 draws each: multinomial {multinomial}, eig_est {est}, eig_sep {sep}, {:.1?}", start.elapsed()),
    );
}

fn eigen_sum(x: &HermitianMatrix, y: &HermitianMatrix) -> Spectrum {
    x.add(y).unwrap().spectrum()
}

#[test]
fn criterion_15_horn() {
    let start = Instant::now();
    let (a, b, c) = (s(&[1.0, 0.0]), s(&[1.0, 0.0]), s(&[1.0, 1.0]));
    let member_ok = (1..=50).all(|k| horn_row_col_check(&a, &b, &c, k).unwrap().passed());
    let (x, y, z) = (s(&[2.0, 0.0]), s(&[1.0, 0.0]), s(&[1.5, 1.5]));
    let first = first_horn_violation(&x, &y, &z, HORN_K_SCAN).unwrap().map(|r| r.k);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let (mut infeasible, mut witness_err) = (0usize, 0.0f64);
    for i in 0..100 {
        let n = 2 + i % 2;
        let (ma, mb) = (random_psd(n, &mut rng), random_psd(n, &mut rng));
        let (sa, sb, sc) = (ma.spectrum(), mb.spectrum(), eigen_sum(&ma, &mb));
        let kmax = if n == 2 { 8 } else { 5 };
        for k in 1..=kmax {
            if !coupling_feasible(&sa, &sb, &sc, k).unwrap().feasible {
                infeasible += 1;
            }
        }
        let k = 4;
        for (al, be) in pairs_of_size(k, n) {
            let row = PairFunctional::new(&al, &be, n, 1 << 20).unwrap().evaluate(&ma, &mb).unwrap();
            let (support, total): (f64, f64) = row
                .iter()
                .fold((0.0, 0.0), |(sup, tot), (g, v)| (sup + if lr_coeff(&al, &be, g) > 0 { *v } else { 0.0 }, tot + v));
            let target = phi(&al, &sa).unwrap() * phi(&be, &sb).unwrap();
            witness_err = witness_err.max(rel(support, target)).max(rel(total, target));
            assert!(row.iter().all(|(_, v)| *v >= -1e-12));
        }
    }
    let pass = member_ok && first == Some(HORN_K_STAR) && infeasible == 0 && witness_err <= COUPLING_REL;
    verdict(
        15,
        pass,
        format!(
            "member triple passes k<=50: {member_ok}; non-member first violation {first:?} (recorded {HORN_K_STAR}); 100 realized triples: {infeasible} infeasible, witness row error {witness_err:.1e} (tol {COUPLING_REL:e}), {:.1?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_16_haar() {
    let start = Instant::now();
    let label: SixJLabel = "[1];[1];[2];[1];[3];[2]".parse().unwrap();
    let (a, b, d) = (s(&[1.0, 0.3]), s(&[0.8, 0.2]), s(&[0.6, 0.5]));
    let r = haar_expectation_check(&label, &a, &b, &d, 10_000, 16, 1 << 20).unwrap();
    verdict(
        16,
        r.passed(HAAR_REL),
        format!(
            "label {label}: estimate {:.6} ± {:.1e} vs target {:.6}, relative error {:.4} (tol {HAAR_REL}), {:.1?}",
            r.estimate,
            r.std_error,
            r.target,
            r.rel_error,
            start.elapsed()
        ),
    );
}
