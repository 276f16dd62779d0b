//! Acceptance suite: runs every criterion in sequence (timed criteria must not
//! compete for cores) and prints one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doughslit::analysis::{
    autocorrelation, closeness_centrality, detect_peaks, envelope, proximity_graph, secondary_maximum, similarity,
    PathMetric, ScreenHistogram,
};
use doughslit::dough::{self, fringe_report, interference_event, DoughConfig, DoughEvent, DoughRun};
use doughslit::qsolve::{
    build_potential, screen_profile, ComplexField2D, CrankNicolson, Grid, Potential, SimulationConfig, SolverOptions,
    WavePacketParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("solver norm conservation (256x256, 2000 steps)", norm_conservation),
        ("free-packet dispersion width", free_packet_width),
        ("empty-box eigenstate", box_eigenstate),
        ("late double-slit screen profile", late_profile),
        ("similarity exactness", similarity_exactness),
        ("interference histogram fringes", interference_fringes),
        ("no-interference histograms", no_interference_histograms),
        ("t_interact visibility sensitivity", t_interact_sensitivity),
        ("dough invariants over all 1024 events", dough_invariants),
        ("closeness centrality vs BFS oracle", centrality_oracle),
        ("CLI output determinism across --jobs", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS  {name}: {d} [{secs:.1}s]"),
            Err(d) => {
                failed += 1;
                println!("FAIL  {name}: {d} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn norm_conservation() -> Outcome {
    let cfg = SimulationConfig { n_steps: 2000, ..SimulationConfig::default() };
    let grid = cfg.grid().unwrap();
    let potential = build_potential(&grid, &cfg.geometry).unwrap();
    let solver = CrankNicolson::new(grid, &potential, cfg.dt, cfg.solver).unwrap();
    let mut psi = cfg.initial_field(&potential).unwrap();
    let start = Instant::now();
    let mut worst: f64 = (psi.norm() - 1.0).abs();
    for s in 1..=cfg.n_steps {
        psi = solver.step(&psi).map_err(|e| format!("step {s}: {e}"))?;
        worst = worst.max((psi.norm() - 1.0).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    check(worst < 1e-6 && secs < 120.0, format!("max |norm-1| = {worst:.2e} (< 1e-6), evolution {secs:.1}s (< 120s)"))
}

/// Standard deviation of `|psi|^2` along one axis.
fn width(psi: &ComplexField2D, along_y: bool) -> f64 {
    let g = psi.grid();
    let (mut w, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for ix in 0..g.n_x() {
        for iy in 0..g.n_y() {
            let p = psi.get(ix, iy).norm_sqr();
            let c = if along_y { g.y(iy) } else { g.x(ix) };
            w += p;
            m1 += p * c;
            m2 += p * c * c;
        }
    }
    let mean = m1 / w;
    (m2 / w - mean * mean).sqrt()
}

/// Largest amplitude on the ring of points next to the hard wall.
fn edge_amplitude(psi: &ComplexField2D) -> f64 {
    let g = psi.grid();
    let (nx, ny) = (g.n_x(), g.n_y());
    let mut m: f64 = 0.0;
    for ix in 1..nx - 1 {
        for iy in 1..ny - 1 {
            if ix == 1 || iy == 1 || ix == nx - 2 || iy == ny - 2 {
                m = m.max(psi.get(ix, iy).norm());
            }
        }
    }
    m
}

fn free_packet_width() -> Outcome {
    // Density std of exp(-r^2 / (2 s)) is a = sqrt(s / 2); free spreading
    // with hbar = m = 1 gives a(t)^2 = a^2 (1 + t^2 / (4 a^4)).
    let oracle = |s: f64, t: f64| (0.5 * s * (1.0 + t * t / (s * s))).sqrt();
    let grid = Grid::square(256, 1.0).unwrap();
    let dt = 1e-4;
    let solver = CrankNicolson::new(grid, &Potential::free(grid), dt, SolverOptions::default()).unwrap();
    let mut worst: f64 = 0.0;
    let mut worst_edge: f64 = 0.0;
    let mut checks = 0;
    for (sx, sy, x0, y0, k) in [
        (0.002, 0.002, 0.5, 0.5, 0.0),
        (0.0015, 0.003, 0.48, 0.52, 0.0),
        (0.003, 0.002, 0.45, 0.5, 20.0),
    ] {
        let p = WavePacketParams { x0, y0, sigma_x: sx, sigma_y: sy, k };
        let mut psi = doughslit::qsolve::init_packet(&grid, &p).unwrap();
        for s in 1..=30 {
            psi = solver.step(&psi).map_err(|e| e.to_string())?;
            if s % 5 == 0 {
                let t = s as f64 * dt;
                let edge = edge_amplitude(&psi);
                if edge >= 1e-6 {
                    return Err(format!("boundary amplitude {edge:.2e} at t={t}"));
                }
                worst_edge = worst_edge.max(edge);
                for (along_y, sigma) in [(false, sx), (true, sy)] {
                    let rel = (width(&psi, along_y) / oracle(sigma, t) - 1.0).abs();
                    worst = worst.max(rel);
                    checks += 1;
                }
            }
        }
    }
    check(
        worst < 0.01,
        format!("max relative width error {worst:.2e} over {checks} checks (< 1%), boundary amplitude <= {worst_edge:.1e}"),
    )
}

fn box_eigenstate() -> Outcome {
    let n = 128;
    let grid = Grid::square(n, 1.0).unwrap();
    let h = grid.dx();
    let dt = 1e-4;
    let options = SolverOptions { tolerance: 1e-13, ..SolverOptions::default() };
    let solver = CrankNicolson::new(grid, &Potential::free(grid), dt, options).unwrap();
    let pi = std::f64::consts::PI;
    let mut psi = ComplexField2D::from_fn(grid, |x, y| Complex64::new((pi * x).sin() * (pi * y).sin(), 0.0));
    psi.zero_boundary();
    psi.normalize().unwrap();

    // Ground state of the box: E = pi^2 in the continuum; on the grid the same
    // mode has E = 2 (1 - cos(pi h)) / h^2, below pi^2 by at most (pi h)^2 / 12.
    let e_cont = pi * pi;
    let e_grid = 2.0 * (1.0 - (pi * h).cos()) / (h * h);
    let spectrum_gap = (e_cont - e_grid) / e_cont;
    if !(spectrum_gap >= 0.0 && spectrum_gap <= (pi * h).powi(2) / 12.0) {
        return Err(format!("grid eigenvalue {e_grid} off the box spectrum pi^2"));
    }

    let scale = psi.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let x = e_grid * dt;
    let bound = x.powi(3) / 6.0;
    let (mut worst_mod, mut worst_phase): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let next = solver.step(&psi).map_err(|e| e.to_string())?;
        let mut overlap = Complex64::new(0.0, 0.0);
        for (a, b) in psi.values().iter().zip(next.values()) {
            worst_mod = worst_mod.max((b.norm() - a.norm()).abs() / scale);
            overlap += a.conj() * b;
        }
        worst_phase = worst_phase.max((overlap.arg() + x).abs());
        psi = next;
    }
    check(
        worst_mod < 1e-8 && worst_phase <= bound,
        format!(
            "max per-step modulus change {worst_mod:.1e} (< 1e-8); |dphi + E dt| <= {worst_phase:.2e} vs (E dt)^3/6 = {bound:.2e}; \
             E_grid/pi^2 - 1 = {:.1e}",
            -spectrum_gap
        ),
    )
}

fn late_profile() -> Outcome {
    let cfg = SimulationConfig::default();
    let grid = cfg.grid().unwrap();
    let potential = build_potential(&grid, &cfg.geometry).unwrap();
    let solver = CrankNicolson::new(grid, &potential, cfg.dt, cfg.solver).unwrap();
    let mut psi = cfg.initial_field(&potential).unwrap();
    if (cfg.packet().y0 - cfg.geometry.midline()).abs() > 1e-15 {
        return Err("default packet is not centred".into());
    }
    for _ in 0..cfg.n_steps {
        psi = solver.step(&psi).map_err(|e| e.to_string())?;
    }
    let p = screen_profile(&psi.modulus(), &cfg.geometry, cfg.screen_x).map_err(|e| e.to_string())?;
    let n = p.probability.len();
    let asym = (0..n).map(|i| (p.probability[i] - p.probability[n - 1 - i]).abs()).fold(0.0, f64::max);
    let peaks = detect_peaks(&p.probability, &p.y, 0.01).map_err(|e| e.to_string())?;
    let interleaved = peaks.valleys.len() + 1 == peaks.len()
        && peaks
            .valleys
            .iter()
            .enumerate()
            .all(|(i, &v)| v < peaks.peaks[i].height && v < peaks.peaks[i + 1].height);
    let interior = peaks.peaks.iter().all(|pk| pk.index > 0 && pk.index + 1 < n);
    check(
        peaks.len() >= 3 && interleaved && interior && asym < 1e-6,
        format!("{} interior maxima with interleaved minima (>= 3), mirror asymmetry {asym:.1e} (< 1e-6)", peaks.len()),
    )
}

fn similarity_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_self: f64 = 0.0;
    for len in [1, 2, 7, 64, 500] {
        let p: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..10.0)).collect();
        worst_self = worst_self.max((similarity(&p, &p).unwrap() - 100.0).abs());
    }
    let disjoint = similarity(&[0.2, 0.8, 0.0, 0.0], &[0.0, 0.0, 0.5, 0.5]).unwrap();
    let half = similarity(&[0.5, 0.5], &[1.0, 0.0]).unwrap();
    // sum sqrt(pq) = sqrt(1/2) against a mean total mass of 1.
    let expected = 100.0 / 2f64.sqrt();
    check(
        worst_self < 1e-9 && disjoint == 0.0 && (half - expected).abs() < 1e-3,
        format!("self |S-100| <= {worst_self:.1e}, disjoint = {disjoint}, (0.5,0.5) vs (1,0) = {half:.6}"),
    )
}

/// Heights that rise moving away from the centre on one side.
fn inversions(heights: &[f64]) -> usize {
    heights.windows(2).filter(|w| w[1] > w[0]).count()
}

fn interference_fringes() -> Outcome {
    let cfg = DoughConfig::default();
    let start = Instant::now();
    let run = dough::run(&cfg).map_err(|e| e.to_string())?;
    let report = fringe_report(run.histogram(), &cfg).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let peaks = &report.peaks.peaks;
    let m = &report.metrics;
    let cv = m.spacing.map_or(f64::INFINITY, |s| s.cv);
    let mid = 0.5 * (cfg.slit_y_left + cfg.slit_y_right);
    let Some(c) = (0..peaks.len()).min_by(|&a, &b| {
        (peaks[a].center - mid).abs().total_cmp(&(peaks[b].center - mid).abs())
    }) else {
        return Err("no peaks".into());
    };
    let top = peaks.iter().map(|p| p.height).fold(0.0, f64::max);
    let left: Vec<f64> = peaks[..=c].iter().rev().map(|p| p.height).collect();
    let right: Vec<f64> = peaks[c..].iter().map(|p| p.height).collect();
    let (il, ir) = (inversions(&left), inversions(&right));
    check(
        m.n_peaks >= 5 && cv < 0.15 && peaks[c].height == top && il <= 1 && ir <= 1 && secs < 5.0,
        format!(
            "{} peaks (>= 5), spacing cv {cv:.4} (< 0.15), central peak at {} is the maximum: {}, inversions L/R {il}/{ir} (<= 1), {secs:.2}s (< 5s)",
            m.n_peaks,
            peaks[c].center,
            peaks[c].height == top
        ),
    )
}

fn dominant_peaks(h: &ScreenHistogram, window: usize, passes: usize) -> Result<(usize, f64), String> {
    let env = envelope(&h.values(), window, passes);
    let all = detect_peaks(&env, &h.centers(), 0.0).map_err(|e| e.to_string())?;
    let max = env.iter().copied().fold(0.0, f64::max);
    let dominant = all.peaks.iter().filter(|p| p.prominence >= 0.3 * max).count();
    let secondary = all
        .peaks
        .iter()
        .filter(|p| p.prominence < 0.3 * max)
        .map(|p| p.prominence / max)
        .fold(0.0, f64::max);
    Ok((dominant, secondary))
}

fn no_interference_histograms() -> Outcome {
    let cfg = DoughConfig::no_interference();
    if cfg.force_levels != 15 || cfg.t_interact != 2 || cfg.trials != 2000 {
        return Err("unexpected no-interference defaults".into());
    }
    let DoughRun::NoInterference(run) = dough::run(&cfg).map_err(|e| e.to_string())? else {
        return Err("wrong mode".into());
    };
    let w = cfg.effective_envelope_window();
    let (dl, sl) = dominant_peaks(&run.left, w, cfg.envelope_passes)?;
    let (dr, sr) = dominant_peaks(&run.right, w, cfg.envelope_passes)?;
    let combined = envelope(&run.combined.values(), w, cfg.envelope_passes);
    let sec = secondary_maximum(&autocorrelation(&combined));
    check(
        dl == 1 && dr == 1 && sec <= 0.4,
        format!(
            "dominant peaks L/R {dl}/{dr} (== 1), largest secondary {:.2}/{:.2} of max (< 0.3), \
             combined autocorrelation secondary maximum {sec:.3} (<= 0.4)",
            sl, sr
        ),
    )
}

fn t_interact_sensitivity() -> Outcome {
    let base = DoughConfig::default();
    if base.force_levels != 4 {
        return Err("default force levels are not 4".into());
    }
    let runs = dough::run_batch(&dough::t_interact_sweep(&base, &[3, 6, 9, 12])).map_err(|e| e.to_string())?;
    let mut vis = Vec::new();
    for r in &runs {
        let v = fringe_report(r.histogram(), r.config()).map_err(|e| e.to_string())?.metrics.visibility;
        vis.push(v.ok_or_else(|| format!("visibility undefined at t_interact={}", r.config().t_interact))?);
    }
    let spread = vis.iter().copied().fold(f64::MIN, f64::max) - vis.iter().copied().fold(f64::MAX, f64::min);
    let shown: Vec<String> = vis.iter().map(|v| format!("{v:.3}")).collect();
    check(spread > 0.05, format!("visibility at t_I 3/6/9/12 = {}, spread {spread:.3} (> 0.05)", shown.join("/")))
}

fn dough_invariants() -> Outcome {
    let base = DoughConfig::default();
    let levels = 1..=4u32;
    let mut events = Vec::new();
    for w_l1 in levels.clone() {
        for w_r1 in levels.clone() {
            for f_l in levels.clone() {
                for f_c in levels.clone() {
                    for f_r in levels.clone() {
                        events.push(DoughEvent { w_l1, w_r1, f_l, f_c, f_r });
                    }
                }
            }
        }
    }
    if events.len() != 1024 {
        return Err(format!("{} events", events.len()));
    }
    let m = base.total_mass;
    let (yl, yr) = (base.slit_y_left, base.slit_y_right);
    let mid = 0.5 * (yl + yr);
    let mut checked = 0usize;
    for t_i in 1..=base.total_steps {
        let cfg = DoughConfig { t_interact: t_i, ..base.clone() };
        for e in &events {
            let (tr, path) = interference_event(&cfg, 0, *e).map_err(|err| err.to_string())?;
            let fail = |what: &str| Err(format!("{what} fails for {e:?} at t_I={t_i}"));
            if (tr.m_l + tr.m_r - m).abs() > f64::EPSILON * m {
                return fail("mass conservation");
            }
            let yc = (f64::from(e.w_l1) * yl + f64::from(e.w_r1) * yr) / f64::from(e.w_l1 + e.w_r1);
            if !(tr.y_c >= yl.min(yr) && tr.y_c <= yl.max(yr)) || (tr.y_c - yc).abs() > 1e-12 {
                return fail("merge convexity");
            }
            let f = i64::from(e.f_r) - i64::from(e.f_l);
            if tr.f_tot != f {
                return fail("net force");
            }
            let mirror = DoughEvent { w_l1: e.w_r1, w_r1: e.w_l1, f_l: e.f_r, f_c: e.f_c, f_r: e.f_l };
            let (_, mpath) = interference_event(&cfg, 0, mirror).map_err(|err| err.to_string())?;
            if path.positions.iter().zip(&mpath.positions).any(|(a, b)| (a - mid) != -(b - mid)) {
                return fail("mirror invariance");
            }
            // Closed-form motion: accelerate until t_I - 1, then coast at t_I a.
            let a = f as f64 / m;
            let ti = f64::from(t_i);
            for (t, &y) in path.positions.iter().enumerate() {
                let t = t as f64;
                let expect = if t < ti {
                    yc + 0.5 * a * t * t
                } else {
                    yc + 0.5 * a * (ti - 1.0).powi(2) + ti * a * (t - ti + 1.0)
                };
                if (y - expect).abs() > 1e-9 * (1.0 + expect.abs()) {
                    return fail("piecewise trajectory");
                }
            }
            let k = t_i as usize;
            if k >= 1 && k < path.positions.len() {
                let junction = path.positions[k] - ti * a;
                if (junction - path.positions[k - 1]).abs() > 1e-9 {
                    return fail("continuity at t_I");
                }
            }
            if t_i == 15 && (path.arrival() - (yc + 338.0 * a)).abs() > 1e-9 {
                return fail("arrival");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} event/t_I combinations: mass, convexity, net force, mirror, continuity, arrival"))
}

fn bfs_closeness(points: &[(f64, f64)], r: f64) -> Vec<f64> {
    let n = points.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && (points[i].0 - points[j].0).hypot(points[i].1 - points[j].1) <= r)
                .collect()
        })
        .collect();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v] == usize::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            let reached: Vec<usize> = d.into_iter().filter(|&x| x != usize::MAX).collect();
            let total: usize = reached.iter().sum();
            if total == 0 {
                0.0
            } else {
                (reached.len() - 1) as f64 / total as f64
            }
        })
        .collect()
}

fn centrality_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nodes = 0;
    for g in 0..100 {
        let n = rng.random_range(1..=50usize);
        let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
        let r = rng.random_range(0.05..0.6);
        let c = closeness_centrality(&proximity_graph(&points, r).unwrap(), PathMetric::Hops);
        let oracle = bfs_closeness(&points, r);
        if c.values != oracle {
            return Err(format!("graph {g} (n={n}, r={r}) differs from the oracle"));
        }
        let max = oracle.iter().copied().fold(0.0, f64::max);
        let argmax: Vec<usize> = (0..n).filter(|&i| oracle[i] == max).collect();
        if c.argmax != argmax || c.max != max {
            return Err(format!("graph {g}: argmax differs"));
        }
        nodes += n;
    }
    Ok(format!("100 random graphs ({nodes} nodes) match exactly, including argmax"))
}

/// Every file under `dir` by relative path. Occurrences of `dir` itself
/// (echoed input paths) are replaced so runs in different directories compare.
fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let prefix = dir.to_string_lossy().into_owned();
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                let bytes = std::fs::read(&p).unwrap();
                let bytes = match String::from_utf8(bytes) {
                    Ok(text) => text.replace(&prefix, "<run>").into_bytes(),
                    Err(e) => e.into_bytes(),
                };
                out.insert(rel, bytes);
            }
        }
    }
    out
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_doughslit"))
        .args(args)
        .env_remove("DOUGHSLIT_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = tmp.path();
    let sim_sweep = root.join("sim_sweep.txt");
    std::fs::write(
        &sim_sweep,
        "kind = simulation\nx0_values = 0.45, 0.5\nsigma_x_values = 0.002\nsigma_y_values = 0.002\nsample_cap = none\n\
         n_x = 48\nn_y = 48\nn_steps = 6\nrecord_stride = 3\ndt = 2e-4\n",
    )
    .unwrap();
    let dough_sweep = root.join("dough_sweep.txt");
    std::fs::write(&dough_sweep, "kind = dough\ntrials = 600\nt_interact_values = 3, 9\n").unwrap();
    let points = root.join("points.csv");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pts = String::from("x,y\n");
    for _ in 0..40 {
        pts.push_str(&format!("{},{}\n", rng.random::<f64>(), rng.random::<f64>()));
    }
    std::fs::write(&points, pts).unwrap();

    let mut snaps = Vec::new();
    for (run, jobs) in [("a", "1"), ("b", "4"), ("c", "1")] {
        let d = root.join(run);
        let s = |p: &str| d.join(p).to_string_lossy().into_owned();
        let evolve = ["--set", "n_x=64", "--set", "n_y=64", "--set", "n_steps=20", "--set", "record_stride=5"];
        let mut args = vec!["--jobs", jobs, "evolve", "--out"];
        let out = s("evolve");
        args.push(&out);
        args.extend(evolve);
        args.extend(["--set", "dt=2e-4"]);
        run_cli(&args)?;
        run_cli(&["--jobs", jobs, "dough", "--out", &s("dough"), "--seed", "7"])?;
        run_cli(&["--jobs", jobs, "dough", "--mode", "no-interference", "--out", &s("dough_ni")])?;
        run_cli(&["--jobs", jobs, "sweep", "--spec", &sim_sweep.to_string_lossy(), "--out", &s("sweep_sim")])?;
        run_cli(&["--jobs", jobs, "sweep", "--spec", &dough_sweep.to_string_lossy(), "--out", &s("sweep_dough")])?;
        let hist = s("dough/histogram.csv");
        run_cli(&["--jobs", jobs, "analyze", "fringes", "--input", &hist, "--window", "9", "--out", &s("fringes")])?;
        let pts = points.to_string_lossy();
        run_cli(&["--jobs", jobs, "analyze", "centrality", "--points", &pts, "--radii", "0.2,0.3", "--out", &s("centrality")])?;
        snaps.push(snapshot(&d));
    }
    let data = |s: &BTreeMap<String, Vec<u8>>| {
        s.keys().filter(|k| k.ends_with(".csv") || k.ends_with(".qf2") || k.ends_with(".qm2")).count()
    };
    let same = snaps[0] == snaps[1] && snaps[0] == snaps[2];
    let diff: Vec<&String> = snaps[0].keys().filter(|k| snaps[1].get(*k) != snaps[0].get(*k)).collect();
    check(
        same && data(&snaps[0]) > 20,
        format!(
            "{} files ({} CSV/QF2/QM2) byte-identical across --jobs 1, 4, 1{}",
            snaps[0].len(),
            data(&snaps[0]),
            if diff.is_empty() { String::new() } else { format!("; differing: {diff:?}") }
        ),
    )
}
