//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any hard criterion fails. The scaling check only warns.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use noma_idnc::channel::{
    dbm_per_hz_to_watts, generate_topology, path_loss_db, Group, PowerAllocation, Receiver, TopologyConfig,
};
use noma_idnc::graph::build_graph;
use noma_idnc::harness::{emit_results, generate_wants, run_sweep, summarize, ExperimentConfig, SummaryRow};
use noma_idnc::idnc::{theorem1_gain, update_wants};
use noma_idnc::oracle::{check_two_stage, random_instance, random_split, InstanceSpec};
use noma_idnc::power::{
    bounds, feasibility, grid_oracle, ife_optimize, phi, phi_derivative, Bottleneck, IfeOptions, LayerSizes,
};
use noma_idnc::scheme::r_idnc;
use noma_idnc::search::{find_clique, mwp_path, two_stage_schedule, StageOptions};
use noma_idnc::{Heuristic, Scheme};

enum Status {
    Pass,
    Fail,
    Warn,
}

struct Verdict {
    status: Status,
    detail: String,
}

fn verdict(ok: bool, detail: String) -> Verdict {
    Verdict {
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn spec(max_receivers: usize, max_packets: usize) -> InstanceSpec {
    InstanceSpec {
        topology: TopologyConfig::default(),
        max_receivers,
        max_packets,
    }
}

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn rate_splitting() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0f64;
    for _ in 0..10_000 {
        let gain = 10f64.powf(rng.random_range(-15.0..-3.0));
        let noise = 10f64.powf(rng.random_range(-21.0..-15.0));
        let p_max = 10f64.powf(rng.random_range(-9.0..-6.0));
        let r = Receiver::new(0, 300.0, gain, noise, Group::Far).unwrap();
        let p = PowerAllocation::split(p_max, rng.random_range(0.0..=1.0) * p_max);
        let full = r.single_user_capacity(p_max);
        let err = (r.capacity_far(&p) + r.capacity_near(&p) - full).abs() / full;
        worst = worst.max(err);
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst <= 1e-12 && secs < 1.0,
        format!("max rel err {worst:.2e}, {secs:.3}s"),
    )
}

fn clique_validity() -> Verdict {
    let mut violations = 0;
    let mut graphs = 0;
    let mut paths = 0;
    let mut seed = 0u64;
    while graphs < 1000 {
        seed += 1;
        let (t, w) = random_instance(&spec(8, 8), seed).unwrap();
        let power = random_split(&t, seed);
        let near = t.near_ids();
        for (caps, eligible) in [
            (t.far_capacities(&power), t.all_ids()),
            (t.near_capacities(&power), near),
        ] {
            if graphs == 1000 {
                break;
            }
            graphs += 1;
            let g = build_graph(&w, &caps, &eligible);
            for h in [Heuristic::Mwv, Heuristic::MwpMwv] {
                let k = find_clique(g.graph(), h, 0).unwrap();
                if !g.is_valid_clique(&k).unwrap() || k.len() > eligible.len() {
                    violations += 1;
                }
            }
            for v in 0..g.len() {
                let p = mwp_path(g.graph(), v).unwrap();
                paths += 1;
                if !g.is_maximal_clique(p.vertices()).unwrap() || p.len() > eligible.len() {
                    violations += 1;
                }
            }
        }
    }
    verdict(
        violations == 0,
        format!("{graphs} graphs, {paths} paths, {violations} violations"),
    )
}

fn oracle_dominance() -> Verdict {
    let cap = 64;
    let (mut n, mut seed, mut violations) = (0, 0u64, 0);
    let mut equal = [0usize; 2];
    let mut ratio = [0f64; 2];
    while n < 500 {
        seed += 1;
        let (t, w) = random_instance(&spec(6, 6), seed).unwrap();
        let caps = t.far_capacities(&random_split(&t, seed));
        let g = build_graph(&w, &caps, &t.all_ids());
        if g.is_empty() || g.len() > cap {
            continue;
        }
        n += 1;
        let best = find_clique(g.graph(), Heuristic::Exact, cap).unwrap().weight(g.graph());
        for (i, h) in [Heuristic::Mwv, Heuristic::MwpMwv].into_iter().enumerate() {
            let got = find_clique(g.graph(), h, 0).unwrap().weight(g.graph());
            if got > best * (1.0 + 1e-12) {
                violations += 1;
            }
            if (best - got).abs() <= 1e-12 * best {
                equal[i] += 1;
            }
            ratio[i] += got / best;
        }
    }
    let mean = ratio.map(|r| r / n as f64);
    verdict(
        violations == 0 && mean[1] >= mean[0],
        format!(
            "{n} graphs, {violations} violations; exact hit MWV {}/{n} MWP-MWV {}/{n}; mean ratio MWV {:.4} MWP-MWV {:.4}",
            equal[0], equal[1], mean[0], mean[1]
        ),
    )
}

fn inv_snr(rng: &mut ChaCha8Rng, d_lo: f64, d_hi: f64) -> f64 {
    let d_km: f64 = rng.random_range(d_lo..d_hi) / 1000.0;
    let fade: f64 = rng.sample(Exp1);
    dbm_per_hz_to_watts(-174.0) * 10f64.powf(path_loss_db(d_km) / 10.0) / fade
}

fn power_control() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut feasible, mut sampled, mut mismatches) = (0, 0, 0);
    let (mut worst_deriv, mut value_ok, mut arg_ok) = (0f64, 0, 0);
    let start = Instant::now();
    while feasible < 1000 {
        sampled += 1;
        let p_max = dbm_per_hz_to_watts(rng.random_range(-48.6..-36.6));
        let b = Bottleneck {
            inv_snr_far: inv_snr(&mut rng, 10.0, 500.0),
            inv_snr_near: inv_snr(&mut rng, 10.0, 250.0),
        };
        let r_min = rng.random_range(0.1..2.0);
        let bnds = bounds(&b, r_min, p_max);
        if feasibility(&b, r_min, p_max) != bnds.is_feasible() {
            mismatches += 1;
        }
        if !bnds.is_feasible() {
            continue;
        }
        feasible += 1;
        let sizes = LayerSizes {
            far: rng.random_range(1..=30),
            near: rng.random_range(1..=30),
        };

        let p = rng.random_range(bnds.low..=bnds.up);
        let h = 1e-4 * (p + b.inv_snr_near);
        let fd = (phi(p + h, sizes, &b, p_max) - phi(p - h, sizes, &b, p_max)) / (2.0 * h);
        let scale = (sizes.far as f64 / (p + b.inv_snr_far) + sizes.near as f64 / (p + b.inv_snr_near))
            / std::f64::consts::LN_2;
        worst_deriv = worst_deriv.max((phi_derivative(p, sizes, &b) - fd).abs() / scale);

        let out = ife_optimize(sizes, &b, &bnds, p_max, &IfeOptions::default()).unwrap();
        let grid = grid_oracle(sizes, &b, &bnds, p_max, 1_000_000).unwrap();
        if phi(out.p_near, sizes, &b, p_max) >= phi(grid, sizes, &b, p_max) - 1e-6 {
            value_ok += 1;
        }
        if (out.p_near - grid).abs() <= p_max * 1e-4 {
            arg_ok += 1;
        }
    }
    let ok = mismatches == 0 && worst_deriv <= 1e-6 && value_ok >= 990 && arg_ok >= 950;
    verdict(
        ok,
        format!(
            "{sampled} sampled, {mismatches} feasibility mismatches; max derivative rel err {worst_deriv:.2e}; \
             value within 1e-6 {value_ok}/1000, argument within p_max*1e-4 {arg_ok}/1000; {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn theorem1() -> Verdict {
    let (mut n, mut seed) = (0, 0u64);
    let (mut worst, mut positive, mut wrong_sign) = (0f64, 0, 0);
    while n < 500 {
        seed += 1;
        let (t, w) = random_instance(&spec(8, 8), seed).unwrap();
        let near = t.near_ids();
        if near.is_empty() {
            continue;
        }
        let single = r_idnc(&t, &w, Heuristic::Exact, usize::MAX).unwrap();
        let layer = &single.decision().unwrap().far;
        let Some(q) = &layer.packet else { continue };
        let tau_r = &layer.targets;
        n += 1;
        let min_over = |ids: &[usize], caps: &[f64]| ids.iter().map(|&m| caps[m]).fold(f64::INFINITY, f64::min);
        let r_ridnc = tau_r.len() as f64 * min_over(tau_r, &t.full_power_capacities());

        let power = random_split(&t, seed);
        let far_caps = t.far_capacities(&power);
        let near_caps = t.near_capacities(&power);
        let updated = update_wants(&w, q, tau_r).unwrap();
        let g = build_graph(&updated, &near_caps, &near);
        let k = find_clique(g.graph(), Heuristic::Exact, usize::MAX).unwrap();
        let tau_n = g.clique_to_layer(&k, &updated, &near_caps, &near).unwrap().targets;
        let min_near = if tau_n.is_empty() {
            0.0
        } else {
            min_over(&tau_n, &near_caps)
        };

        let r_noma = tau_r.len() as f64 * min_over(tau_r, &far_caps) + tau_n.len() as f64 * min_near;
        let gain = theorem1_gain(tau_n.len(), min_near, tau_r.len(), min_over(tau_r, &near_caps));
        worst = worst.max((r_noma - r_ridnc - gain).abs());
        if gain > 0.0 {
            positive += 1;
            if r_noma <= r_ridnc {
                wrong_sign += 1;
            }
        }
    }
    verdict(
        worst <= 1e-9 && wrong_sign == 0,
        format!("{n} constructions, max |identity residual| {worst:.2e}, gain positive on {positive}, {wrong_sign} not strictly better"),
    )
}

fn two_stage_exactness() -> Verdict {
    let report = check_two_stage(&spec(5, 6), 100, 6, false).unwrap();
    let strict = check_two_stage(&spec(5, 6), 100, 60, true).unwrap();
    let failures: Vec<&String> = report.failures.iter().chain(&strict.failures).collect();
    verdict(
        failures.is_empty() && report.checked == 100,
        format!(
            "{} + {} (strict SIC) instances, {} mismatches{}",
            report.checked,
            strict.checked,
            failures.len(),
            failures.first().map(|f| format!(": {f}")).unwrap_or_default()
        ),
    )
}

fn by_scheme(rows: &[SummaryRow]) -> BTreeMap<Scheme, Vec<&SummaryRow>> {
    let mut map: BTreeMap<Scheme, Vec<&SummaryRow>> = BTreeMap::new();
    for r in rows {
        map.entry(r.scheme).or_default().push(r);
    }
    for v in map.values_mut() {
        v.sort_by(|a, b| a.sweep_value.total_cmp(&b.sweep_value));
    }
    map
}

fn sweep(name: &str) -> (Vec<SummaryRow>, f64) {
    let cfg = ExperimentConfig::from_file(&config_path(name)).unwrap();
    let start = Instant::now();
    let rows = run_sweep(&cfg).unwrap();
    (summarize(&rows), start.elapsed().as_secs_f64())
}

fn increasing(rows: &[SummaryRow]) -> Vec<String> {
    by_scheme(rows)
        .into_iter()
        .filter(|(_, pts)| {
            pts.windows(2)
                .any(|w| w[1].mean_throughput_bps_hz <= w[0].mean_throughput_bps_hz)
        })
        .map(|(s, _)| s.to_string())
        .collect()
}

fn trends() -> Verdict {
    let mut notes = vec![];
    let mut ok = true;
    let mut total = 0.0;

    let (by_m, secs) = sweep("receivers.cfg");
    total += secs;
    let bad = increasing(&by_m);
    ok &= bad.is_empty();
    notes.push(format!(
        "(a) M: {}",
        if bad.is_empty() {
            "all increasing".into()
        } else {
            format!("not increasing: {}", bad.join(" "))
        }
    ));

    let (by_p, secs) = sweep("power.cfg");
    total += secs;
    let bad = increasing(&by_p);
    ok &= bad.is_empty();
    notes.push(format!(
        "(b) P_max: {}",
        if bad.is_empty() {
            "all increasing".into()
        } else {
            format!("not increasing: {}", bad.join(" "))
        }
    ));

    let (anchor, secs) = sweep("anchor.cfg");
    total += secs;
    let at: BTreeMap<Scheme, &SummaryRow> = anchor.iter().map(|r| (r.scheme, r)).collect();
    let pairs = [
        (Scheme::NomaIdncMwv, Scheme::RIdncMwv),
        (Scheme::NomaIdncMwpMwv, Scheme::RIdncMwpMwv),
        (Scheme::NomaRlnc, Scheme::Rlnc),
        (Scheme::Rlnc, Scheme::IdncMwv),
        (Scheme::Rlnc, Scheme::IdncMwpMwv),
        (Scheme::RIdncMwv, Scheme::IdncMwv),
        (Scheme::RIdncMwpMwv, Scheme::IdncMwpMwv),
    ];
    let mut flagged = vec![];
    for (hi, lo) in pairs {
        let (a, b) = (at[&hi], at[&lo]);
        if a.low() > b.high() {
            continue;
        }
        if a.high() < b.low() {
            ok = false;
            notes.push(format!("(c) {hi} < {lo} with separated intervals"));
        } else {
            flagged.push(format!(
                "{hi} {:.2}±{:.2} vs {lo} {:.2}±{:.2}",
                a.mean_throughput_bps_hz, a.ci95_half_width, b.mean_throughput_bps_hz, b.ci95_half_width
            ));
        }
    }
    notes.push(if flagged.is_empty() {
        "(c) anchor ordering separated at 95%".into()
    } else {
        format!("(c) DEVIATION, overlapping intervals: {}", flagged.join("; "))
    });

    let (by_l, secs) = sweep("packets.cfg");
    total += secs;
    let by_l = by_scheme(&by_l);
    for s in [Scheme::Rlnc, Scheme::NomaRlnc] {
        let pts = &by_l[&s];
        let lo = pts.iter().map(|r| r.high()).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|r| r.low()).fold(f64::NEG_INFINITY, f64::max);
        let flat = hi <= lo;
        ok &= flat;
        notes.push(format!("(d) {s} {} in L", if flat { "flat" } else { "not flat" }));
    }
    notes.push(format!("{total:.0}s"));
    verdict(ok, notes.join("; "))
}

fn scaling() -> Verdict {
    let mut lines = vec![];
    let mut ok = true;
    for h in [Heuristic::Mwv, Heuristic::MwpMwv] {
        let mut times = vec![];
        for m in [10, 20, 40] {
            let cfg: TopologyConfig<f64> = TopologyConfig {
                num_receivers: m,
                ..TopologyConfig::default()
            };
            let mut elapsed = 0.0;
            for seed in 0..20 {
                let t = generate_topology(&cfg, seed).unwrap();
                let w = generate_wants(m, 20, 0.6, seed + 100).unwrap();
                let power = PowerAllocation::split(t.p_max, 0.2 * t.p_max);
                let start = Instant::now();
                two_stage_schedule(&t, &w, &power, &StageOptions::new(h)).unwrap();
                elapsed += start.elapsed().as_secs_f64();
            }
            times.push(elapsed);
        }
        let ratios = [times[1] / times[0], times[2] / times[1]];
        ok &= ratios.iter().all(|&r| r <= 12.0);
        lines.push(format!("{h}: x{:.1} x{:.1}", ratios[0], ratios[1]));
    }
    Verdict {
        status: if ok { Status::Pass } else { Status::Warn },
        detail: lines.join(", "),
    }
}

fn determinism() -> Verdict {
    let cfg = ExperimentConfig::from_file(&config_path("buffer.cfg")).unwrap();
    let cfg = ExperimentConfig { trials: 20, ..cfg };
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = vec![];
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let rows = pool.install(|| run_sweep(&cfg)).unwrap();
        let out = dir.path().join(format!("t{threads}"));
        let (a, b) = emit_results(&rows, &out).unwrap();
        outputs.push((fs::read(a).unwrap(), fs::read(b).unwrap()));
    }
    verdict(
        outputs[0] == outputs[1],
        format!("{} result bytes, 1 vs 3 worker threads", outputs[0].0.len()),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("rate-splitting identity", rate_splitting),
        ("clique validity", clique_validity),
        ("oracle dominance", oracle_dominance),
        ("power-control correctness", power_control),
        ("gain identity", theorem1),
        ("two-stage exactness", two_stage_exactness),
        ("trend reproduction", trends),
        ("scaling smoke test", scaling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let tag = match v.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Warn => "WARN",
        };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, v.detail);
    }
    println!("{} of {} criteria failed", failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
