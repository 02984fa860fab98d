//! Acceptance checks. Prints one `A<k> PASS|FAIL: ...` line per criterion
//! and exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clustertest::corpus::{bundled_corpus, verify_entry};
use clustertest::estimators::{l2_norm_tester, InnerProductEstimator, SampleBatch};
use clustertest::experiment::{bench_query_scaling, run_experiment, Family, ParamsPolicy, WalkLength};
use clustertest::generators::two_cluster;
use clustertest::linalg::{eigenvalues, SymMatrix, JACOBI_TOL};
use clustertest::spectral::{laplacian, walk_matrix, weyl_check};
use clustertest::verifier::{verify_gram_collinearity, LemmaVerdict};
use clustertest::walks::{empirical, exact_distribution, sample_endpoint, stream_rng, total_variation};
use clustertest::{Constants, Graph, TestParams};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, 2, (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))).unwrap()
}

fn a1() -> Outcome {
    let start = Instant::now();
    let family = Family::TwoCluster { n_per_side: 512, d_inner: 8, cross: 4 };
    let report = run_experiment(&family, &ParamsPolicy::desk_scale(), 0, 50).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    check(
        report.accept_rate >= 2.0 / 3.0 && secs <= 600.0,
        format!(
            "{}: accepted {}/{} (rate {:.3}), t = {}, N = {}, median queries {}, {secs:.1}s",
            report.family,
            report.accepted,
            report.total,
            report.accept_rate,
            report.seeds[0].walk_len,
            report.seeds[0].walks,
            report.median_queries
        ),
    )
}

fn a2() -> Outcome {
    let start = Instant::now();
    let family = Family::KCluster { n_per_part: 256, k: 4, d_inner: 8, cross: 1 };
    let report = run_experiment(&family, &ParamsPolicy::desk_scale(), 0, 50).map_err(|e| e.to_string())?;
    check(
        report.reject_rate() >= 2.0 / 3.0,
        format!(
            "{}: rejected {}/{} (rate {:.3}), {:.1}s",
            report.family,
            report.total - report.accepted,
            report.total,
            report.reject_rate(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn a3() -> Outcome {
    let inst = two_cluster(32, 4, 2, 11).map_err(|e| e.to_string())?;
    let g = &inst.graph;
    let samples = 100_000;
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (k, t) in [1usize, 5, 20].into_iter().enumerate() {
        let u = 3;
        let exact = exact_distribution::<f64>(g, u, t).map_err(|e| e.to_string())?;
        let mut rng = stream_rng(2024, k as u64, 0);
        let mut oracle = g;
        let ends: Vec<usize> = (0..samples).map(|_| sample_endpoint(&mut oracle, u, t, &mut rng)).collect();
        let tv = total_variation(&empirical(&ends, g.n()), &exact.probs);
        worst = worst.max(tv);
        parts.push(format!("t={t} TV={tv:.4}"));
    }
    check(worst <= 0.02, format!("n = {}, {samples} samples: {}", g.n(), parts.join(", ")))
}

fn draw(rng: &mut ChaCha8Rng, probs: &[(usize, f64)], count: usize) -> SampleBatch {
    let items = (0..count)
        .map(|_| {
            let mut x: f64 = rng.gen();
            for &(v, p) in probs {
                if x < p {
                    return v;
                }
                x -= p;
            }
            probs.last().unwrap().0
        })
        .collect();
    SampleBatch::new("test", items)
}

fn a4() -> Outcome {
    let n = 100;
    let trials = 200;
    let uniform: Vec<(usize, f64)> = (0..n).map(|v| (v, 1.0 / n as f64)).collect();
    let point = vec![(7, 1.0)];
    let two_point = vec![(0, 0.5), (1, 0.5)];
    let cases = [
        ("uniform", &uniform, 0.01, 1.0 / n as f64),
        ("point", &point, 0.01, 1.0),
        ("two-point", &two_point, 0.05, 0.5),
    ];
    let eta = 0.1;
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, (name, dist, xi, truth)) in cases.into_iter().enumerate() {
        let est = InnerProductEstimator::new(eta, xi, truth);
        let m = est.required_samples().map_err(|e| e.to_string())?;
        let mut hits = 0;
        for trial in 0..trials {
            let mut rng = stream_rng(7, k as u64, trial);
            let p = draw(&mut rng, dist, m);
            let q = draw(&mut rng, dist, m);
            let value = est.estimate(&p, &q).map_err(|e| e.to_string())?;
            if (value - truth).abs() <= xi {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        ok &= freq >= 1.0 - eta - 0.05;
        parts.push(format!("{name} N={m} freq={freq:.3}"));
    }

    let (sigma, r) = (0.04, 640);
    let allowed = 16.0 * (n as f64).sqrt() / r as f64 + 0.05;
    let mut failures = [0usize; 2];
    for trial in 0..trials {
        let mut rng = stream_rng(8, 0, trial);
        let small = draw(&mut rng, &uniform, r);
        let large = draw(&mut rng, &point, r);
        if !l2_norm_tester(&small, sigma, n).map_err(|e| e.to_string())?.accept {
            failures[0] += 1;
        }
        if l2_norm_tester(&large, sigma, n).map_err(|e| e.to_string())?.accept {
            failures[1] += 1;
        }
    }
    let rates = failures.map(|f| f as f64 / trials as f64);
    ok &= rates.iter().all(|&x| x <= allowed);
    parts.push(format!("norm tester failures uniform={:.3} point={:.3} (allowed {allowed:.3})", rates[0], rates[1]));
    check(ok, parts.join("; "))
}

fn a5() -> Outcome {
    let n = 64;
    let m = walk_matrix::<f64>(&cycle(n)).map_err(|e| e.to_string())?;
    let mut got = eigenvalues(&m, JACOBI_TOL).map_err(|e| e.to_string())?;
    got.sort_by(f64::total_cmp);
    let mut want: Vec<f64> = (0..n).map(|k| 0.5 + (2.0 * PI * k as f64 / n as f64).cos() / 2.0).collect();
    want.sort_by(f64::total_cmp);
    let eig_err = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let mut lap_err: f64 = 0.0;
    let corpus = bundled_corpus().map_err(|e| e.to_string())?;
    for entry in &corpus {
        let g = &entry.graph;
        let d = g.d() as f64;
        let l = laplacian::<f64>(g).map_err(|e| e.to_string())?;
        for u in 0..g.n() {
            for v in 0..g.n() {
                let want = if u == v {
                    g.degree(u) as f64 / d
                } else if g.has_edge(u, v) {
                    -1.0 / d
                } else {
                    0.0
                };
                lap_err = lap_err.max((l.get(u, v) - want).abs());
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut weyl_ok = 0;
    for _ in 0..100 {
        let scale = 10f64.powf(rng.gen_range(-6.0..0.0));
        let mut b = SymMatrix::<f64>::zeros(10);
        let mut e = SymMatrix::<f64>::zeros(10);
        for i in 0..10 {
            for j in i..10 {
                b.set(i, j, rng.gen_range(-1.0..1.0));
                e.set(i, j, scale * rng.gen_range(-1.0..1.0));
            }
        }
        let perturbed = b.combine(1.0, &e, 1.0);
        if weyl_check(&b, &perturbed).map_err(|e| e.to_string())? {
            weyl_ok += 1;
        }
    }
    check(
        eig_err <= 1e-8 && lap_err <= 1e-12 && weyl_ok == 100,
        format!(
            "C_64 eigenvalue error {eig_err:.2e}; Laplacian error {lap_err:.2e} over {} graphs; weyl {weyl_ok}/100",
            corpus.len()
        ),
    )
}

fn a6() -> Outcome {
    let report = verify_gram_collinearity(10_000, 6);
    let violations = report.measured["violations"];
    check(
        violations == 0.0 && report.verdict == LemmaVerdict::Pass,
        format!(
            "10000 pairs: {violations} violations, worst margins upper {:.3e} lower {:.3e}",
            report.measured["worstUpperMargin"], report.measured["worstLowerMargin"]
        ),
    )
}

fn a7() -> Outcome {
    let corpus = bundled_corpus().map_err(|e| e.to_string())?;
    let mut failed = Vec::new();
    let mut passes = std::collections::BTreeMap::<String, usize>::new();
    let mut total = 0;
    for entry in &corpus {
        for report in verify_entry(entry, 1.0).map_err(|e| e.to_string())? {
            total += 1;
            if report.failed() {
                failed.push(format!("{} on {}", report.lemma, report.instance));
            }
            if report.passed() {
                *passes.entry(report.lemma.clone()).or_default() += 1;
            }
        }
    }
    let covered =
        ["residual", "aggregate", "interlacing", "norm"].iter().all(|l| passes.get(*l).copied().unwrap_or(0) > 0);
    check(
        failed.is_empty() && covered,
        format!("{total} reports on {} graphs, passes {passes:?}, failures {failed:?}", corpus.len()),
    )
}

fn a8() -> Outcome {
    let policy = ParamsPolicy { phi: Some(0.15), walk_len: WalkLength::Fixed { t: 400 }, ..ParamsPolicy::desk_scale() };
    let sizes = [1 << 10, 1 << 12, 1 << 14];
    let rows =
        bench_query_scaling(|n| Family::RandomRegular { n, d: 8 }, &sizes, &policy, 2).map_err(|e| e.to_string())?;
    let decreasing = rows.windows(2).all(|w| w[1].queries_per_n < w[0].queries_per_n);
    let within = rows.iter().all(|r| r.max_queries as f64 <= r.query_budget);
    let table: Vec<String> = rows
        .iter()
        .map(|r| format!("n={} q/n={:.1} max={} budget={:.0}", r.n, r.queries_per_n, r.max_queries, r.query_budget))
        .collect();
    check(decreasing && within, table.join("; "))
}

fn a9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mismatches = Vec::new();
    for i in 0..20 {
        let n = rng.gen_range(1u64 << 36..=1u64 << 48) as usize;
        let eps: f64 = rng.gen_range(0.01..0.99);
        let phi: f64 = rng.gen_range(0.01..0.99);
        let constants = Constants {
            c22: rng.gen_range(0.5..4.0),
            c33: rng.gen_range(0.5..4.0),
            c35: rng.gen_range(0.5..4.0),
            c310: rng.gen_range(0.5..4.0),
            alpha_sc: rng.gen_range(0.5..4.0),
        };
        let limit = 1.0 / (128.0 * constants.c33 * constants.c310);
        let mu = rng.gen_range(0.0..limit / 2.0).max(f64::MIN_POSITIVE);
        let p = TestParams::paper(n, 8, eps, phi, mu, constants).map_err(|e| format!("tuple {i}: {e}"))?;

        let nf = n as f64;
        let big_r = 1e22 / (eps * eps * eps * eps);
        let t = (64.0 * constants.c33.max(constants.c35) * nf.ln() / (phi * phi)).ceil() as usize;
        let eta = 1.0 / (24.0 * big_r);
        let sigma = 16.0 / (eta * nf);
        let c = 128.0 * constants.c33 * constants.c310;
        let xi = 1e-5 * nf.powf(-(1.0 + c * mu));
        let lambda = 1e-4 * nf.powf(-(1.0 + c * mu));
        let walks = constants.c22 * (sigma.sqrt() / (2.0 * xi)) * (1.0 / eta).ln();
        let r = 16.0 * nf.sqrt() / eta;
        let same = [
            (p.rounds, big_r),
            (p.walk_len as f64, t as f64),
            (p.eta, eta),
            (p.sigma, sigma),
            (p.xi, xi),
            (p.lambda, lambda),
            (p.walks_formula, walks),
            (p.norm_samples_formula, r),
        ]
        .iter()
        .all(|(a, b)| a.to_bits() == b.to_bits());
        if !same {
            mismatches.push(i);
        }
        let too_big = TestParams::paper(n, 8, eps, phi, limit * (1.0 + rng.gen::<f64>()), constants);
        if !matches!(&too_big, Err(e) if e.to_string().contains("mu")) {
            mismatches.push(100 + i);
        }
    }
    check(mismatches.is_empty(), format!("20 tuples with n in [2^36, 2^48]; mismatched tuples {mismatches:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] =
        [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6), ("A7", a7), ("A8", a8), ("A9", a9)];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("{name} PASS: {detail} [{:.1}s]", start.elapsed().as_secs_f64()),
            Err(detail) => {
                all = false;
                println!("{name} FAIL: {detail} [{:.1}s]", start.elapsed().as_secs_f64());
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
