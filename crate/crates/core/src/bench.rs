//! Measurement harness behind the `flexproofs` binary: timed FC and VC
//! benchmarks, operation counts, a cost-model fit and a self-test.

use crate::algebra::{BilinearCtx, G1Affine, Scalar, G1};
use crate::counters::{self, OpCounts};
use crate::error::Result;
use crate::fc::{self, FcParams};
use crate::vc::{self, VcOpening, VcParams};
use crate::{algebra, mle_opening, pc};
use ark_ec::{CurveGroup, PrimeGroup, ScalarMul};
use ark_ff::{One, UniformRand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::time::{Duration, Instant};

pub const GIT_REV: &str = env!("FLEXPROOFS_GIT_REV");

#[derive(Clone, Debug, Serialize)]
pub struct Env {
    pub git_rev: &'static str,
    pub crate_version: &'static str,
    pub curve: &'static str,
    pub scalar_bytes: usize,
    pub g1_bytes: usize,
    pub g2_bytes: usize,
    pub gt_bytes: usize,
    pub threads: usize,
    pub os: &'static str,
    pub arch: &'static str,
}

impl Env {
    pub fn capture() -> Self {
        Self {
            git_rev: GIT_REV,
            crate_version: env!("CARGO_PKG_VERSION"),
            curve: BilinearCtx::CURVE_ID,
            scalar_bytes: BilinearCtx::SCALAR_BYTES,
            g1_bytes: BilinearCtx::G1_BYTES,
            g2_bytes: BilinearCtx::G2_BYTES,
            gt_bytes: BilinearCtx::GT_BYTES,
            threads: rayon::current_num_threads(),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
        }
    }
}

/// One measured quantity for one configuration.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Row {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    /// Batch size as requested, before clamping to `μ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batch_requested: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_secs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_secs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bytes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterRow {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub counts: OpCounts,
    pub crypto_ops: u64,
}

/// A figure from the original evaluation, echoed for comparison. These
/// were not measured by this code.
#[derive(Clone, Debug, Serialize)]
pub struct PublishedRow {
    pub scheme: &'static str,
    pub metric: &'static str,
    pub unit: &'static str,
    /// `(N, value)` pairs.
    pub values: Vec<(usize, f64)>,
    pub note: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub config: serde_json::Value,
    pub rows: Vec<Row>,
    pub counters: Vec<CounterRow>,
    pub env: Env,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reference: Vec<PublishedRow>,
}

impl BenchReport {
    pub fn new(config: serde_json::Value) -> Self {
        Self {
            config,
            rows: Vec::new(),
            counters: Vec::new(),
            env: Env::capture(),
            reference: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<22} {:>8} {:>8} {:>6} {:>5} {:>12} {:>12} {:>9}\n",
            "op", "n", "N", "b", "t", "mean (s)", "min (s)", "bytes"
        );
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let secs = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
        for r in &self.rows {
            out += &format!(
                "{:<22} {:>8} {:>8} {:>6} {:>5} {:>12} {:>12} {:>9}\n",
                r.op,
                opt(r.n),
                opt(r.big_n),
                opt(r.batch),
                opt(r.t),
                secs(r.mean_secs),
                secs(r.min_secs),
                opt(r.bytes)
            );
        }
        if !self.counters.is_empty() {
            out += &format!(
                "\n{:<22} {:>8} {:>6} {:>10} {:>10} {:>10} {:>10} {:>12}\n",
                "counted op", "N|n", "b|t", "pairings", "G1 exps", "G2 exps", "GT exps", "field ops"
            );
            for c in &self.counters {
                out += &format!(
                    "{:<22} {:>8} {:>6} {:>10} {:>10} {:>10} {:>10} {:>12}\n",
                    c.op,
                    opt(c.big_n.or(c.n)),
                    opt(c.batch.or(c.t)),
                    c.counts.pairings,
                    c.counts.g1_exps,
                    c.counts.g2_exps,
                    c.counts.gt_exps,
                    c.counts.field_ops
                );
            }
        }
        for p in &self.reference {
            out += &format!("\n[published, not measured] {} {} ({}):", p.scheme, p.metric, p.unit);
            for (n, v) in &p.values {
                out += &format!(" 2^{}={v}", n.trailing_zeros());
            }
        }
        if !self.reference.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Runs `f` inside a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Timing of `reps` runs of `f`.
#[derive(Clone, Copy, Debug)]
pub struct Timing {
    pub mean: Duration,
    pub min: Duration,
}

pub fn time_reps<T>(reps: usize, mut f: impl FnMut() -> T) -> (Timing, T) {
    let reps = reps.max(1);
    let mut total = Duration::ZERO;
    let mut min = Duration::MAX;
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        total += elapsed;
        min = min.min(elapsed);
        last = Some(out);
    }
    (
        Timing {
            mean: total / reps as u32,
            min,
        },
        last.expect("at least one rep"),
    )
}

fn timed_row(op: &str, timing: Timing, reps: usize) -> Row {
    Row {
        op: op.into(),
        mean_secs: Some(timing.mean.as_secs_f64()),
        min_secs: Some(timing.min.as_secs_f64()),
        reps: Some(reps),
        ..Default::default()
    }
}

pub fn random_scalars(len: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::rand(rng)).collect()
}

pub fn random_g1(len: usize, rng: &mut impl Rng) -> Vec<G1Affine> {
    G1::generator().batch_mul(&random_scalars(len, rng))
}

/// Honest FC claims: `t` random dense vectors and their values under `a`.
pub fn fc_claims(a: &[G1Affine], t: usize, rng: &mut impl Rng) -> (Vec<Vec<Scalar>>, Vec<G1Affine>) {
    let bs: Vec<Vec<Scalar>> = (0..t).map(|_| random_scalars(a.len(), rng)).collect();
    let ys = bs
        .iter()
        .map(|b| algebra::multi_exp::<G1>(a, b).expect("lengths match").into_affine())
        .collect();
    (bs, ys)
}

/// Proof size, commit, batch-open and batch-verify timings of the FC
/// scheme for every `n` and `t`, with dense random claim vectors.
pub fn bench_fc(ns: &[usize], ts: &[usize], reps: usize, seed: u64) -> Result<BenchReport> {
    let mut report = BenchReport::new(serde_json::json!({
        "command": "bench-fc", "n": ns, "t": ts, "reps": reps, "seed": seed,
    }));
    for &n in ns {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ n as u64);
        let pp = FcParams::setup(n, &mut rng)?;
        let a = random_g1(n, &mut rng);
        let (timing, c) = time_reps(reps, || fc::commit(&pp, &a));
        let c = c?;
        report.rows.push(Row {
            n: Some(n),
            ..timed_row("fc-commit", timing, reps)
        });
        for &t in ts {
            let (bs, ys) = fc_claims(&a, t, &mut rng);
            let (timing, proof) = time_reps(reps, || fc::batch_open(&pp, &c, &a, &bs, &ys));
            let proof = proof?;
            report.rows.push(Row {
                n: Some(n),
                t: Some(t),
                ..timed_row("fc-bopen", timing, reps)
            });
            let (timing, ok) = time_reps(reps, || fc::batch_verify(&pp, &c, &bs, &ys, &proof));
            assert!(ok?, "honest FC proof rejected");
            report.rows.push(Row {
                n: Some(n),
                t: Some(t),
                ..timed_row("fc-bverify", timing, reps)
            });
            report.rows.push(Row {
                op: "fc-proof-size".into(),
                n: Some(n),
                t: Some(t),
                bytes: Some(proof.to_bytes().len()),
                ..Default::default()
            });
            let (_, counts) = counters::measure(|| fc::batch_open(&pp, &c, &a, &bs, &ys));
            report.counters.push(CounterRow {
                op: "fc-bopen".into(),
                n: Some(n),
                big_n: None,
                batch: None,
                t: Some(t),
                crypto_ops: counts.crypto_ops(),
                counts,
            });
        }
    }
    Ok(report)
}

/// `log N`, `2 log N` and `log² N`.
pub fn default_batches(big_n: usize) -> Vec<usize> {
    let log_n = big_n.trailing_zeros() as usize;
    vec![log_n.max(1), 2 * log_n.max(1), (log_n * log_n).max(1)]
}

/// One VC configuration's measurements.
#[derive(Clone, Debug)]
pub struct VcMeasurement {
    pub big_n: usize,
    pub batch_requested: usize,
    pub batch: usize,
    pub commit: Timing,
    pub open_all: Timing,
    pub verify: Timing,
    pub verify_end_to_end: Timing,
    pub proof_bytes: usize,
    pub proof_bytes_without_block: usize,
    pub open_all_counts: OpCounts,
}

/// Measures commit, open-all and verification for one `(N, b)`; `b` is
/// clamped to `μ`.
pub fn measure_vc(pp: &VcParams, batch: usize, reps: usize, seed: u64) -> Result<VcMeasurement> {
    let pp = pp.with_batch_size(batch.clamp(1, pp.subvectors()))?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let m = random_scalars(pp.len(), &mut rng);
    let (commit, out) = time_reps(reps, || vc::commit(&pp, &m));
    let (c, aux) = out?;
    let (open_all, all) = time_reps(reps, || vc::open_all(&pp, &c, &aux, &m));
    let all = all?;
    let (res, open_all_counts) = counters::measure(|| vc::open_all(&pp, &c, &aux, &m).map(|_| ()));
    res?;

    // a fixed spread of indices, each verified `reps` times
    let sample: Vec<usize> = (0..8).map(|_| rng.gen_range(0..pp.len())).collect();
    let openings: Vec<VcOpening> = sample.iter().map(|&i| all.opening(i)).collect::<Result<_>>()?;
    let encoded: Vec<Vec<u8>> = openings.iter().map(VcOpening::to_bytes).collect();
    let (verify, ok) = time_reps(reps, || {
        sample
            .iter()
            .zip(&openings)
            .all(|(&i, o)| vc::verify(&pp, &c, i, m[i], o).unwrap_or(false))
    });
    assert!(ok, "honest opening rejected");
    let (verify_end_to_end, ok) = time_reps(reps, || {
        sample.iter().zip(&encoded).all(|(&i, bytes)| {
            VcOpening::from_bytes(bytes)
                .and_then(|o| vc::verify(&pp, &c, i, m[i], &o))
                .unwrap_or(false)
        })
    });
    assert!(ok, "honest opening rejected after decoding");
    let per = |t: Timing| Timing {
        mean: t.mean / sample.len() as u32,
        min: t.min / sample.len() as u32,
    };
    Ok(VcMeasurement {
        big_n: pp.len(),
        batch_requested: batch,
        batch: pp.batch_size(),
        commit,
        open_all,
        verify: per(verify),
        verify_end_to_end: per(verify_end_to_end),
        proof_bytes: openings.iter().map(VcOpening::size_bytes).max().unwrap_or(0),
        proof_bytes_without_block: openings
            .iter()
            .map(VcOpening::size_bytes_without_block)
            .max()
            .unwrap_or(0),
        open_all_counts,
    })
}

/// Commit, all-proofs, verification timings and proof sizes for every `N`
/// and batch size (default: `log N`, `2 log N`, `log² N`).
pub fn bench_vc(big_ns: &[usize], batches: Option<&[usize]>, reps: usize, seed: u64) -> Result<BenchReport> {
    let mut report = BenchReport::new(serde_json::json!({
        "command": "bench-vc", "big_n": big_ns, "batch": batches, "reps": reps, "seed": seed,
    }));
    for &big_n in big_ns {
        let pp = VcParams::setup_seeded(big_n, 1, seed ^ big_n as u64)?;
        let list = batches.map_or_else(|| default_batches(big_n), <[usize]>::to_vec);
        for b in list {
            let meas = measure_vc(&pp, b, reps, seed)?;
            let base = Row {
                big_n: Some(big_n),
                batch_requested: Some(b),
                batch: Some(meas.batch),
                reps: Some(reps),
                ..Default::default()
            };
            let timed = |op: &str, t: Timing| Row {
                op: op.into(),
                mean_secs: Some(t.mean.as_secs_f64()),
                min_secs: Some(t.min.as_secs_f64()),
                ..base.clone()
            };
            report.rows.push(timed("vc-commit", meas.commit));
            report.rows.push(timed("vc-open-all", meas.open_all));
            report.rows.push(timed("vc-verify", meas.verify));
            report.rows.push(timed("vc-verify-end-to-end", meas.verify_end_to_end));
            report.rows.push(Row {
                op: "vc-proof-size".into(),
                bytes: Some(meas.proof_bytes),
                ..base.clone()
            });
            report.rows.push(Row {
                op: "vc-proof-size-no-block".into(),
                bytes: Some(meas.proof_bytes_without_block),
                ..base.clone()
            });
            report.counters.push(CounterRow {
                op: "vc-open-all".into(),
                n: None,
                big_n: Some(big_n),
                batch: Some(meas.batch),
                t: None,
                crypto_ops: meas.open_all_counts.crypto_ops(),
                counts: meas.open_all_counts,
            });
        }
    }
    report.reference = published_comparison();
    Ok(report)
}

/// Least-squares fit of `ops ≈ c1·N/b + c2·√N·log N`. Returns
/// `(c1, c2, max relative error)`.
pub fn fit_cost_model(points: &[(usize, usize, u64)]) -> (f64, f64, f64) {
    let feats: Vec<(f64, f64, f64)> = points
        .iter()
        .map(|&(n, b, ops)| {
            let nf = n as f64;
            (nf / b as f64, nf.sqrt() * nf.log2(), ops as f64)
        })
        .collect();
    let (mut s11, mut s12, mut s22, mut s1y, mut s2y) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x1, x2, y) in &feats {
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        s1y += x1 * y;
        s2y += x2 * y;
    }
    let det = s11 * s22 - s12 * s12;
    let (c1, c2) = if det.abs() > f64::EPSILON * s11 * s22 {
        ((s1y * s22 - s2y * s12) / det, (s2y * s11 - s1y * s12) / det)
    } else {
        // degenerate design: a single feature explains everything
        (s1y / s11, 0.0)
    };
    let err = feats
        .iter()
        .map(|&(x1, x2, y)| ((c1 * x1 + c2 * x2) - y).abs() / y)
        .fold(0.0, f64::max);
    (c1, c2, err)
}

/// The all-proofs comparison table of the original evaluation
/// (single machine, C++, N from 2^16 to 2^24).
pub fn published_comparison() -> Vec<PublishedRow> {
    let ns = [1 << 16, 1 << 18, 1 << 20, 1 << 22, 1 << 24];
    let row = |scheme, metric, unit, v: [f64; 5]| PublishedRow {
        scheme,
        metric,
        unit,
        values: ns.iter().copied().zip(v).collect(),
        note: "published, not measured",
    };
    vec![
        row("FP b=2logN", "commit", "s", [0.83, 3.02, 8.81, 31.87, 116.61]),
        row("FP b=log^2N", "commit", "s", [0.82, 3.01, 8.70, 31.53, 116.41]),
        row("HydraProofs", "commit", "s", [0.82, 3.01, 8.66, 31.71, 116.64]),
        row("FP b=2logN", "open-all", "s", [1.03, 3.58, 12.17, 43.64, 159.30]),
        row("FP b=log^2N", "open-all", "s", [0.23, 0.82, 2.61, 9.24, 32.71]),
        row("HydraProofs", "open-all", "s", [1.42, 4.82, 17.15, 58.66, 210.07]),
        row("FP b=2logN", "verify", "s", [0.006, 0.007, 0.008, 0.009, 0.011]),
        row("FP b=log^2N", "verify", "s", [0.01, 0.012, 0.013, 0.015, 0.017]),
        row("HydraProofs", "verify", "s", [0.01, 0.011, 0.012, 0.013, 0.014]),
        row("FP b=2logN", "proof-size", "KiB", [8.91, 10.0, 11.09, 12.19, 13.28]),
        row("FP b=log^2N", "proof-size", "KiB", [15.91, 19.0, 22.34, 25.94, 29.78]),
        row("HydraProofs", "proof-size", "KiB", [5.53, 6.63, 7.81, 9.09, 10.47]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: bool,
    pub env: Env,
}

impl SelftestReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out += &format!(
                "{:<4} {:<32} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        out += &format!(
            "{}\n",
            if self.passed {
                "all checks passed"
            } else {
                "SOME CHECKS FAILED"
            }
        );
        out
    }
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok((passed, detail))) => Check { name, passed, detail },
        Ok(Err(e)) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
        Err(_) => Check {
            name,
            passed: false,
            detail: "panicked".into(),
        },
    }
}

fn flip_bit(bytes: &[u8], bit: usize) -> Vec<u8> {
    let mut out = bytes.to_vec();
    out[bit / 8] ^= 1 << (bit % 8);
    out
}

/// Runs the property suite at small sizes (N ≤ 256) with fixed seeds.
pub fn selftest() -> SelftestReport {
    let mut checks = Vec::new();

    checks.push(check("fc_fold_consistency", || {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let mut trials = 0;
        for n in [1, 2, 4, 8, 16] {
            let pp = FcParams::setup(n, &mut rng)?;
            for t in 1..=5 {
                let a = random_g1(n, &mut rng);
                let c = fc::commit(&pp, &a)?;
                let (bs, ys) = fc_claims(&a, t, &mut rng);
                let proof = fc::batch_open(&pp, &c, &a, &bs, &ys)?;
                if !fc::batch_verify(&pp, &c, &bs, &ys, &proof)? {
                    return Ok((false, format!("honest proof rejected at n={n}, t={t}")));
                }
                trials += 1;
            }
        }
        Ok((true, format!("{trials} honest batch proofs accepted")))
    }));

    checks.push(check("fc_unit_fast_path", || {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let n = 16;
        let pp = FcParams::setup(n, &mut rng)?;
        let a = random_g1(n, &mut rng);
        let c = fc::commit(&pp, &a)?;
        for i in 0..n {
            let mut u = vec![Scalar::from(0u64); n];
            u[i] = Scalar::one();
            let general = fc::batch_open(&pp, &c, &a, &[u.clone()], &[a[i]])?;
            let fast = fc::batch_open_units(&pp, &c, &a, &[i], &[a[i]])?;
            if general != fast || !fc::batch_verify_units(&pp, &c, &[i], &[a[i]], &fast)? {
                return Ok((false, format!("index {i} differs")));
            }
        }
        Ok((true, format!("all {n} single-index proofs identical")))
    }));

    checks.push(check("fc_batch_soundness", || {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let pp = FcParams::setup(8, &mut rng)?;
        let a = random_g1(8, &mut rng);
        let c = fc::commit(&pp, &a)?;
        let (bs, mut ys) = fc_claims(&a, 4, &mut rng);
        let proof = fc::batch_open(&pp, &c, &a, &bs, &ys)?;
        ys[2] = (ys[2] + G1::generator()).into_affine();
        Ok((
            !fc::batch_verify(&pp, &c, &bs, &ys, &proof)?,
            "perturbed claim rejected".into(),
        ))
    }));

    checks.push(check("pc_hyper_eval_equivalence", || {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for k in 0..=4 {
            let pp = pc::PcParams::setup(k, &mut rng);
            let f = algebra::MultilinearPoly::new(random_scalars(1 << k, &mut rng))?;
            let all = pc::hyper_eval(&pp, &f)?;
            for (i, (y, proof)) in all.iter().enumerate() {
                let (y_ref, p_ref) = pc::eval(&pp, &f, &algebra::bin_point(i, k)?)?;
                if *y != y_ref || *proof != p_ref {
                    return Ok((false, format!("k={k}, point {i} differs")));
                }
            }
        }
        Ok((true, "HyperEval matches per-point Eval for k ≤ 4".into()))
    }));

    checks.push(check("vc_open_all_correctness", || {
        let mut total = 0;
        for big_n in [4usize, 16, 64, 256] {
            let log_n = big_n.trailing_zeros() as usize;
            let (mu, _) = vc::layout(big_n)?;
            let pp = VcParams::setup_seeded(big_n, log_n.min(mu), big_n as u64)?;
            let m = random_scalars(big_n, &mut ChaCha20Rng::seed_from_u64(105));
            let (c, aux) = vc::commit(&pp, &m)?;
            let all = vc::open_all(&pp, &c, &aux, &m)?;
            if !all.fold_state().check_conservation() {
                return Ok((false, format!("fold conservation broken at N={big_n}")));
            }
            for (i, o) in all.iter().enumerate() {
                if !vc::verify(&pp, &c, i, m[i], &o)? {
                    return Ok((false, format!("opening {i} rejected at N={big_n}")));
                }
                total += 1;
            }
        }
        Ok((true, format!("{total} openings verified")))
    }));

    checks.push(check("vc_tamper_rejection", || {
        let pp = VcParams::setup_seeded(16, 2, 6)?;
        let m = random_scalars(16, &mut ChaCha20Rng::seed_from_u64(106));
        let (c, aux) = vc::commit(&pp, &m)?;
        let bytes = vc::open(&pp, &c, &aux, &m, 11)?.to_bytes();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..20 {
            let bad = flip_bit(&bytes, rng.gen_range(0..bytes.len() * 8));
            let accepted = VcOpening::from_bytes(&bad)
                .and_then(|o| vc::verify(&pp, &c, 11, m[11], &o))
                .unwrap_or(false);
            if accepted {
                return Ok((false, "corrupted opening accepted".into()));
            }
        }
        Ok((
            !vc::verify(&pp, &c, 11, m[11] + Scalar::one(), &VcOpening::from_bytes(&bytes)?)?,
            "20 bit flips and a wrong value rejected".into(),
        ))
    }));

    checks.push(check("fs_determinism", || {
        let pp = VcParams::setup_seeded(64, 6, 8)?;
        let m = random_scalars(64, &mut ChaCha20Rng::seed_from_u64(108));
        let (c, aux) = vc::commit(&pp, &m)?;
        let run = |threads| {
            with_threads(Some(threads), || {
                vc::open_all(&pp, &c, &aux, &m).map(|all| all.iter().map(|o| o.to_bytes()).collect::<Vec<_>>())
            })
        };
        Ok((
            run(1)? == run(4)?,
            "open-all bytes identical across 1 and 4 threads".into(),
        ))
    }));

    checks.push(check("mle_eval_consistency", || {
        let mut rng = ChaCha20Rng::seed_from_u64(109);
        let pp = VcParams::setup_seeded(64, 2, 9)?;
        let m = random_scalars(64, &mut rng);
        let (c, aux) = vc::commit(&pp, &m)?;
        let f_m = algebra::MultilinearPoly::new(m.clone())?;
        for _ in 0..3 {
            let r = random_scalars(6, &mut rng);
            let proof = mle_opening::prove(&pp, &c, &aux, &r)?;
            if proof.y != f_m.evaluate(&r)? || !mle_opening::verify(&pp, &c, &r, &proof)? {
                return Ok((false, "evaluation proof failed".into()));
            }
        }
        let i = 45;
        let proof = mle_opening::prove(&pp, &c, &aux, &algebra::bin_point(i, 6)?)?;
        Ok((proof.y == m[i], "random and hypercube points proven".into()))
    }));

    checks.push(check("params_round_trip", || {
        let pp = VcParams::setup_seeded(16, 2, 10)?;
        let bytes = pp.to_bytes();
        Ok((
            VcParams::from_bytes(&bytes)?.to_bytes() == bytes,
            format!("{} bytes", bytes.len()),
        ))
    }));

    checks.push(check("fc_proof_size", || {
        let pp = FcParams::setup_seeded(256, 11)?;
        Ok((pp.proof_size() == 6816, format!("{} bytes at n = 256", pp.proof_size())))
    }));

    let passed = checks.iter().all(|c| c.passed);
    SelftestReport {
        checks,
        passed,
        env: Env::capture(),
    }
}
