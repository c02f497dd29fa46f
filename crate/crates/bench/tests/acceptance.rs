//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::time::{Duration, Instant};

use anyhow::Result;
use coflow::bounds::{lp_lower_bound, port_aggregation_bound};
use coflow::instances::{
    diagonalize, example1_family, example1_limit, example2_family, example2_limit, generate_synthetic,
    with_default_releases, Density,
};
use coflow::lp::{exp_lp_value, interval_lp_value};
use coflow::online::run_online;
use coflow::scheduler::{augment, balanced_augment, bvn_decompose, AugmentedMatrix};
use coflow::{
    completion_report, order_by_rule, run_schedule, validate_schedule, Case, CoflowMatrix, Instance, Rational, Rule,
};
use coflow_bench::config::CorpusConfig;
use coflow_bench::corpus::{build_corpus, instance_seed};
use coflow_bench::grid::{run_grid, GridSpec};
use coflow_bench::matching::run_matching;
use coflow_bench::online_cmp::online_objective;
use coflow_bench::sweep::{run_sweep, SweepSpec};
use coflow_bench::{evaluate, ratio, to_f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MATRICES_PER_M: usize = 1000;
const AUGMENT_BUDGET: Duration = Duration::from_secs(10);
const BVN_BUDGET: Duration = Duration::from_secs(30);
const VALIDITY_INSTANCES: usize = 200;
const VALIDITY_BUDGET: Duration = Duration::from_secs(5 * 60);
const SINGLE_COFLOW_INSTANCES: usize = 100;
const SANDWICH_INSTANCES: usize = 50;
const SANDWICH_HORIZON: u64 = 5000;
const SANDWICH_FLOW_MAX: u64 = 30;
const APPROX_INSTANCES: usize = 50;
const APPROX_RATIO: f64 = 67.0 / 3.0;
const TABLE_BAND: (f64, f64) = (1.23, 1.29);
const TABLE_TOLERANCE: f64 = 0.15;
const TABLE_BUDGET: Duration = Duration::from_secs(30 * 60);
const FAMILY_SIZE: usize = 1000;
const FAMILY_TOLERANCE: f64 = 0.05;
const SWEEP_SAMPLES: usize = 20;
const SWEEP_UPPERS: [u64; 8] = [0, 25, 50, 100, 200, 400, 800, 1600];
const SWEEP_FINAL_TOLERANCE: f64 = 0.03;
const SWEEP_MONOTONE_FROM: u64 = 400;
const ONLINE_RANGE: (f64, f64) = (0.85, 1.0);
const ONLINE_MEAN: f64 = 0.90;
const REL_EPS: f64 = 1e-7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn mixed_corpus(releases: &str) -> CorpusConfig {
    CorpusConfig {
        releases: releases.into(),
        ..CorpusConfig::default()
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize) -> Vec<u64> {
    let p = [0.15, 0.4, 1.0][rng.gen_range(0..3)];
    (0..m * m)
        .map(|_| if rng.gen_bool(p) { rng.gen_range(1..=100) } else { 0 })
        .collect()
}

fn matrix_corpus() -> Vec<(usize, Vec<u64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (2..=8)
        .flat_map(|m| (0..MATRICES_PER_M).map(move |_| m))
        .map(|m| (m, random_matrix(&mut rng, m)))
        .collect()
}

fn sums(m: usize, a: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut rows = vec![0; m];
    let mut cols = vec![0; m];
    for i in 0..m {
        for j in 0..m {
            rows[i] += a[i * m + j];
            cols[j] += a[i * m + j];
        }
    }
    (rows, cols)
}

fn augmentation_ok(m: usize, d: &[u64], a: &AugmentedMatrix) -> bool {
    let (rows, cols) = sums(m, &a.augmented);
    let (r0, c0) = sums(m, d);
    let rho = r0.iter().chain(&c0).copied().max().unwrap_or(0);
    a.rho == rho
        && rows.iter().chain(&cols).all(|&s| s == rho)
        && a.augmented.iter().zip(d).all(|(x, y)| x >= y)
}

fn criterion_1() -> Result<Outcome> {
    let start = Instant::now();
    let corpus = matrix_corpus();
    let mut bad = 0;
    for (m, d) in &corpus {
        bad += usize::from(!augmentation_ok(*m, d, &augment(*m, d)));
        bad += usize::from(!augmentation_ok(*m, d, &balanced_augment(*m, d)));
    }
    let d = [10, 0, 0, 10, 0, 0, 10, 0, 0];
    let c_ok = augment(3, &d).augmented == [10, 20, 0, 10, 0, 20, 10, 10, 10];
    let b_ok = balanced_augment(3, &d).augmented == [10; 9];
    let t = start.elapsed();
    Ok(outcome(
        bad == 0 && c_ok && b_ok && t < AUGMENT_BUDGET,
        format!(
            "augmentation: {} matrices, {bad} failures, C exact {c_ok}, B exact {b_ok}, {:.2}s",
            corpus.len(),
            t.as_secs_f64()
        ),
    ))
}

fn criterion_2() -> Result<Outcome> {
    let corpus = matrix_corpus();
    let start = Instant::now();
    let mut bad = 0;
    let mut most_terms = 0;
    for (m, d) in &corpus {
        for a in [augment(*m, d), balanced_augment(*m, d)] {
            let dec = bvn_decompose(&a)?;
            most_terms = most_terms.max(dec.terms.len());
            let ok = dec.reconstruct() == a.augmented
                && dec.total_duration() == a.rho
                && dec.terms.len() <= (m - 1) * (m - 1) + 1;
            bad += usize::from(!ok);
        }
    }
    let t = start.elapsed();
    Ok(outcome(
        bad == 0 && t < BVN_BUDGET,
        format!(
            "BvN: {} decompositions, {bad} failures, at most {most_terms} terms, {:.2}s",
            2 * corpus.len(),
            t.as_secs_f64()
        ),
    ))
}

fn mixed_instance(index: usize) -> Result<Instance> {
    let m = 2 + index % 7;
    let n = 1 + (index * 7) % 15;
    let density = Density::ALL[index % 3];
    let inst = generate_synthetic(m, n, density, instance_seed(31, index))?;
    Ok(if index % 2 == 0 {
        inst
    } else {
        with_default_releases(&inst, instance_seed(37, index))?
    })
}

fn criterion_3() -> Result<Outcome> {
    let start = Instant::now();
    let mut traces = 0;
    let mut invalid = 0;
    for index in 0..VALIDITY_INSTANCES {
        let inst = mixed_instance(index)?;
        for rule in Rule::ALL {
            let ord = order_by_rule(&inst, rule)?;
            for case in Case::ALL {
                let trace = run_schedule(&inst, &ord, case)?;
                traces += 1;
                invalid += usize::from(!validate_schedule(&inst, &trace)?.is_ok());
            }
            let trace = run_online(&inst, rule)?;
            traces += 1;
            invalid += usize::from(!validate_schedule(&inst, &trace)?.is_ok());
        }
    }
    let t = start.elapsed();
    Ok(outcome(
        invalid == 0 && t < VALIDITY_BUDGET,
        format!("validity: {traces} traces, {invalid} invalid, {:.1}s", t.as_secs_f64()),
    ))
}

fn criterion_4() -> Result<Outcome> {
    let mut wrong = 0;
    for index in 0..SINGLE_COFLOW_INSTANCES {
        let m = 1 + index % 10;
        let inst = generate_synthetic(m, 1, Density::ALL[index % 3], instance_seed(41, index))?;
        let rho = inst.coflow(0).load();
        for case in Case::ALL {
            let ord = order_by_rule(&inst, Rule::Fifo)?;
            let rep = completion_report(&inst, &run_schedule(&inst, &ord, case)?)?;
            wrong += usize::from(rep.makespan != rho);
        }
    }
    Ok(outcome(
        wrong == 0,
        format!("single coflow: {SINGLE_COFLOW_INSTANCES} instances x 5 cases, {wrong} makespans differ from the load"),
    ))
}

fn sandwich_instance(rng: &mut ChaCha8Rng) -> Result<Instance> {
    loop {
        let n = rng.gen_range(3..=6);
        let released = rng.gen_bool(0.5);
        let mut release = 0;
        let mut coflows = Vec::new();
        for id in 1..=n {
            let p = [0.25, 0.6, 1.0][rng.gen_range(0..3)];
            let demand: Vec<u64> = (0..16)
                .map(|_| if rng.gen_bool(p) { rng.gen_range(1..=SANDWICH_FLOW_MAX) } else { 0 })
                .collect();
            if released {
                release += rng.gen_range(0..=20);
            }
            if demand.iter().any(|&d| d > 0) {
                coflows.push(CoflowMatrix::new(id, 4, demand, Rational::from_integer(rng.gen_range(1..=3)), release)?);
            }
        }
        if coflows.len() < n {
            continue;
        }
        let inst = Instance::new(4, coflows, "sandwich")?;
        if inst.horizon() <= SANDWICH_HORIZON {
            return Ok(inst);
        }
    }
}

fn criterion_5() -> Result<Outcome> {
    let mut broken = 0;
    let mut violations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..SANDWICH_INSTANCES {
        let inst = sandwich_instance(&mut rng)?;
        let lp = interval_lp_value(&inst)?;
        let exp = exp_lp_value(&inst, SANDWICH_HORIZON)?;
        let mut best = f64::INFINITY;
        for rule in Rule::ALL {
            let ord = order_by_rule(&inst, rule)?;
            for case in Case::ALL {
                let trace = run_schedule(&inst, &ord, case)?;
                if !validate_schedule(&inst, &trace)?.is_ok() {
                    violations += 1;
                    continue;
                }
                best = best.min(to_f64(&completion_report(&inst, &trace)?.objective));
            }
        }
        let tol = REL_EPS * best.max(1.0);
        broken += usize::from(lp > exp + tol || exp > best + tol);
    }
    Ok(outcome(
        broken == 0 && violations == 0,
        format!("sandwich: {SANDWICH_INSTANCES} 4x4 instances, {broken} out of order, {violations} violations"),
    ))
}

fn criterion_6() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut within_two = 0;
    for index in 0..APPROX_INSTANCES {
        let m = [4, 8][index % 2];
        let n = [10, 20][(index / 2) % 2];
        let inst = generate_synthetic(m, n, Density::ALL[index % 3], instance_seed(61, index))?;
        let inst = if index < APPROX_INSTANCES / 2 {
            inst
        } else {
            with_default_releases(&inst, instance_seed(67, index))?
        };
        let value = to_f64(&evaluate(&inst, &order_by_rule(&inst, Rule::Lp)?, Case::D)?);
        let r = value / lp_lower_bound(&inst)?;
        worst = worst.max(r);
        within_two += usize::from(r <= 2.0);
    }
    Ok(outcome(
        worst <= APPROX_RATIO,
        format!("approximation: worst LP case (d) over interval LP {worst:.3}, {within_two}/{APPROX_INSTANCES} at most 2"),
    ))
}

fn criterion_7() -> Result<Outcome> {
    let start = Instant::now();
    let corpus = build_corpus(&mixed_corpus("zero"))?;
    let spec = GridSpec {
        rules: Rule::ALL.to_vec(),
        cases: vec![Case::A, Case::B, Case::C],
        anchor: (Rule::Lp, Case::C),
        lower_bound: false,
    };
    let report = run_grid(&corpus, &spec)?;
    let (lo, hi) = (TABLE_BAND.0 - TABLE_TOLERANCE, TABLE_BAND.1 + TABLE_TOLERANCE);
    let mut outside = Vec::new();
    let mut range = (f64::INFINITY, 0.0f64);
    for row in report.rows.iter().filter(|r| r.density == "dense") {
        for rule in Rule::ALL {
            let r = row.ratio(rule, Case::A).unwrap_or(f64::NAN);
            range = (range.0.min(r), range.1.max(r));
            if !(lo..=hi).contains(&r) {
                outside.push(format!("{}:{rule}={r:.3}", row.index + 1));
            }
        }
    }
    let mut unordered = Vec::new();
    for rule in Rule::ALL {
        let [a, b, c] = [Case::A, Case::B, Case::C].map(|case| report.mean_ratio(rule, case).unwrap_or(f64::NAN));
        if !(a > b && b > c) {
            unordered.push(format!("{rule} a={a:.4} b={b:.4} c={c:.4}"));
        }
    }
    let t = start.elapsed();
    Ok(outcome(
        outside.is_empty() && unordered.is_empty() && t < TABLE_BUDGET,
        format!(
            "table reproduction: dense case (a) ratios {:.3}..{:.3} (allowed {lo:.2}..{hi:.2}), out of band [{}], case order violations [{}], {:.0}s",
            range.0,
            range.1,
            outside.join(" "),
            unordered.join("; "),
            t.as_secs_f64()
        ),
    ))
}

fn family_ratio(inst: &Instance, num: Rule, den: Rule) -> Result<f64> {
    let a = evaluate(inst, &order_by_rule(inst, num)?, Case::C)?;
    let b = evaluate(inst, &order_by_rule(inst, den)?, Case::C)?;
    Ok(ratio(&a, &b))
}

fn criterion_8() -> Result<Outcome> {
    let a1 = 2f64.sqrt();
    let r1 = family_ratio(&example1_family(2, FAMILY_SIZE, a1)?, Rule::Smpt, Rule::Stpt)?;
    let l1 = example1_limit(2, a1);
    let a2 = (5f64.sqrt() + 1.0) / 2.0;
    let r2 = family_ratio(&example2_family(2, FAMILY_SIZE, a2)?, Rule::Stpt, Rule::Smct)?;
    let l2 = example2_limit(2, a2);
    let e1 = (r1 / l1 - 1.0).abs();
    let e2 = (r2 / l2 - 1.0).abs();
    Ok(outcome(
        e1 <= FAMILY_TOLERANCE && e2 <= FAMILY_TOLERANCE,
        format!(
            "adversarial families: example 1 SMPT/STPT {r1:.4} vs {l1:.4} ({:.2}% off), example 2 STPT/SMCT {r2:.4} vs {l2:.4} ({:.2}% off)",
            100.0 * e1,
            100.0 * e2
        ),
    ))
}

fn criterion_9() -> Result<Outcome> {
    let rules = vec![Rule::Stpt, Rule::Smpt, Rule::Smct, Rule::Ect, Rule::Lp];
    let spec = SweepSpec {
        m: 16,
        coflows: 160,
        density: Density::Sparse,
        samples: SWEEP_SAMPLES,
        uppers: SWEEP_UPPERS.to_vec(),
        rules: rules.clone(),
        reference: Rule::Fifo,
        case: Case::C,
        seed: 1,
        release_seed: 1000,
    };
    let report = run_sweep(&spec)?;
    let last = report.points.last().expect("sweep points");
    let mut failures = Vec::new();
    for &rule in &rules {
        let dev: Vec<f64> = report
            .points
            .iter()
            .filter(|p| p.upper >= SWEEP_MONOTONE_FROM)
            .map(|p| (p.mean_ratio[&rule] - 1.0).abs())
            .collect();
        if (last.mean_ratio[&rule] - 1.0).abs() > SWEEP_FINAL_TOLERANCE {
            failures.push(format!("{rule} final {:.4}", last.mean_ratio[&rule]));
        }
        if dev.windows(2).any(|w| w[1] > w[0]) {
            failures.push(format!("{rule} not monotone {dev:.4?}"));
        }
    }
    let curve: Vec<String> = report
        .points
        .iter()
        .map(|p| {
            let worst = rules.iter().map(|r| p.mean_ratio[r]).fold(f64::INFINITY, f64::min);
            format!("U={}:{worst:.3}", p.upper)
        })
        .collect();
    Ok(outcome(
        failures.is_empty(),
        format!(
            "release sweep: {SWEEP_SAMPLES} samples, lowest ratio to FIFO per U [{}], failures [{}]",
            curve.join(" "),
            failures.join("; ")
        ),
    ))
}

fn criterion_10() -> Result<Outcome> {
    let corpus = build_corpus(&mixed_corpus("default"))?;
    let mut ratios = Vec::new();
    for e in &corpus {
        let online = online_objective(&e.instance, Rule::Lp)?;
        ratios.push((e.density_name(), ratio(&port_aggregation_bound(&e.instance).value, &online)));
    }
    let outside: Vec<String> = ratios
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| !(ONLINE_RANGE.0..=ONLINE_RANGE.1).contains(r))
        .map(|(i, (d, r))| format!("{}({d})={r:.3}", i + 1))
        .collect();
    let mean = ratios.iter().map(|(_, r)| r).sum::<f64>() / ratios.len() as f64;

    let mut mismatched = 0;
    let mut cfg = mixed_corpus("zero");
    cfg.m = 8;
    cfg.coflows = 30;
    cfg.instances = 15;
    for e in build_corpus(&cfg)? {
        for rule in Rule::ALL {
            let online = run_online(&e.instance, rule)?;
            let offline = run_schedule(&e.instance, &order_by_rule(&e.instance, rule)?, Case::C)?;
            mismatched += usize::from(online != offline);
        }
    }
    Ok(outcome(
        outside.is_empty() && mean >= ONLINE_MEAN && mismatched == 0,
        format!(
            "online: bound over online LP mean {mean:.3} (need >= {ONLINE_MEAN}), outside {:?} [{}], single-epoch mismatches {mismatched}",
            ONLINE_RANGE,
            outside.join(" ")
        ),
    ))
}

fn criterion_11() -> Result<Outcome> {
    let mut cfg = mixed_corpus("zero");
    cfg.coflows = 40;
    cfg.instances = 15;
    let corpus = build_corpus(&cfg)?;
    let mut sum_errors = 0;
    for e in &corpus {
        let diag = diagonalize(&e.instance)?;
        let spread = coflow::instances::spread_diagonal(&diag, instance_seed(7, e.index))?;
        for ((o, d), s) in e.instance.coflows().iter().zip(diag.coflows()).zip(spread.coflows()) {
            let (lo, ld, ls) = (o.loads(), d.loads(), s.loads());
            let ok = ld.input_loads == lo.input_loads
                && ld.output_loads == lo.input_loads
                && ls.input_loads == ld.input_loads
                && ls.output_loads == ld.output_loads;
            sum_errors += usize::from(!ok);
        }
    }
    let report = run_matching(&corpus, &Rule::ALL, Case::E, 7)?;
    let mut inverted = Vec::new();
    let mut ratios = Vec::new();
    for rule in Rule::ALL {
        let (d, s) = report.means(rule);
        ratios.push(format!("{rule}={:.3}", s / d));
        if d > s {
            inverted.push(rule.to_string());
        }
    }
    Ok(outcome(
        sum_errors == 0 && inverted.is_empty(),
        format!(
            "cost of matching: {sum_errors} sum mismatches, spread over diagonal batch means [{}], inverted [{}]",
            ratios.join(" "),
            inverted.join(" ")
        ),
    ))
}

fn main() {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let criteria: [(usize, fn() -> Result<Outcome>); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e:#}")));
        failed += usize::from(!o.pass);
        println!("[{}] #{n} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
