//! `doughslit` command-line interface.
//!
//! Config precedence: built-in defaults < `DOUGHSLIT_SEED` < config file <
//! command-line flags and `--set key=value` overrides. Every run writes the
//! effective parameters to `resolved_config.txt` in its output directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{
    self, closeness_centrality, detect_peaks, envelope, fringe_metrics, proximity_graph, similarity, sweep_radius,
    PathMetric,
};
use crate::csvio::write_text;
use crate::dataset::{self, generate_dataset, SampleStatus, SweepSpec};
use crate::dough::{self, DoughConfig, DoughRun, Mode};
use crate::keyvalue::{self, config_hash, render, KeyValueConfig};
use crate::plot;
use crate::qsolve::{
    build_potential, evolve_full, screen_profile, select_stage_frames, transmitted_fraction,
    CrankNicolson, SimulationConfig,
};

pub const SEED_ENV: &str = "DOUGHSLIT_SEED";
pub const RESOLVED_CONFIG: &str = "resolved_config.txt";

#[derive(Debug, Parser)]
#[command(name = "doughslit", version, about = "Double-slit solver, dough-model Monte Carlo and analysis")]
pub struct Cli {
    /// Worker threads (default: available parallelism). Outputs do not
    /// depend on this value.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve one wave packet through the double slit.
    Evolve(EvolveArgs),
    /// Run the dough-model Monte Carlo.
    Dough(DoughArgs),
    /// Run a simulation dataset sweep or a dough t_interact sweep.
    Sweep(SweepArgs),
    /// Similarity, fringe and centrality analyses of existing files.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Render a QF2/QM2 field as a PGM heatmap.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override one config key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Print the resolved config and exit without writing anything.
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Skip the per-frame PGM heatmaps.
    #[arg(long)]
    pub no_images: bool,
}

#[derive(Debug, Args)]
pub struct DoughArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed; falls back to DOUGHSLIT_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub t_interact: Option<u32>,
    #[arg(long)]
    pub force_levels: Option<u32>,
    #[arg(long)]
    pub weight_levels: Option<u32>,
    #[arg(long)]
    pub bin: Option<f64>,
    /// Moving-average window of the envelope, in bins.
    #[arg(long)]
    pub envelope_window: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep file: `kind = simulation | dough` plus sweep and config keys.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Master seed of a dough sweep; falls back to DOUGHSLIT_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// Overlap percentage of two distributions.
    Similarity(SimilarityArgs),
    /// Peaks, spacing and visibility of a histogram or profile.
    Fringes(FringesArgs),
    /// Closeness centrality of a proximity graph over a radius sweep.
    Centrality(CentralityArgs),
}

#[derive(Debug, Args)]
pub struct SimilarityArgs {
    /// First distribution (profile or histogram CSV).
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FringesArgs {
    /// Histogram (`bin_left,bin_right,count`) or profile CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Envelope window in bins; 1 analyses the raw values.
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    #[arg(long, default_value_t = 3)]
    pub passes: usize,
    #[arg(long, default_value_t = 0.1)]
    pub prominence: f64,
    #[arg(long, default_value_t = 0.15)]
    pub cv_threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    /// Points CSV with `x,y` header.
    #[arg(long)]
    pub points: PathBuf,
    /// Radii to sweep, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
    /// Use Euclidean path lengths instead of hop counts.
    #[arg(long)]
    pub weighted: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Output PGM path.
    #[arg(long)]
    pub output: PathBuf,
}

pub fn main_with_args<I, T>(args: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run(cli)
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be >= 1");
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().context("building thread pool")?;
    pool.install(|| match cli.command {
        Command::Evolve(a) => cmd_evolve(&a),
        Command::Dough(a) => cmd_dough(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Render(a) => cmd_render(&a),
    })
}

fn load<C: KeyValueConfig>(cfg: &mut C, file: Option<&Path>, overrides: &[String]) -> anyhow::Result<()> {
    if let Some(path) = file {
        let entries = keyvalue::read_file(path)?;
        keyvalue::apply(cfg, &entries, path)?;
    }
    keyvalue::apply_overrides(cfg, overrides)?;
    Ok(())
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("{SEED_ENV}=`{v}` is not a u64"))?)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).context(SEED_ENV),
    }
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn echo_pairs(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

// ---------------------------------------------------------------- evolve

pub fn resolve_simulation(common: &Common) -> anyhow::Result<SimulationConfig> {
    let mut cfg = SimulationConfig::default();
    load(&mut cfg, common.config.as_deref(), &common.overrides)?;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_evolve(a: &EvolveArgs) -> anyhow::Result<()> {
    let cfg = resolve_simulation(&a.common)?;
    if a.common.dry_run {
        print!("{}", render(&cfg));
        return Ok(());
    }
    let out = a.common.out.clone().unwrap_or_else(|| PathBuf::from("out/evolve"));
    let grid = cfg.grid()?;
    let potential = build_potential(&grid, &cfg.geometry)?;
    let solver = CrankNicolson::new(grid, &potential, cfg.dt, cfg.solver)?;
    let psi = cfg.initial_field(&potential)?;
    let evo = evolve_full(&solver, &psi, cfg.n_steps, cfg.record_stride, |_, _| {})?;
    let series = &evo.series;
    let header = keyvalue::comment_block(&cfg);

    write(&out.join(RESOLVED_CONFIG), render(&cfg))?;
    dataset::write_qf2(&out.join("initial.qf2"), &psi, 0.0)?;
    dataset::write_qf2(&out.join("final.qf2"), &evo.final_field, cfg.n_steps as f64 * cfg.dt)?;
    let mut summary = String::new();
    writeln!(summary, "config_hash = {}", config_hash(&cfg))?;
    writeln!(summary, "max_norm_drift = {:e}", evo.max_norm_drift)?;
    writeln!(summary, "step,time,transmitted_fraction")?;
    for f in &series.frames {
        let time = series.time_of(f);
        dataset::write_qm2(&out.join(format!("frames/frame_{:06}.qm2", f.step)), &f.modulus, time)?;
        if !a.no_images {
            write(&out.join(format!("frames/frame_{:06}.pgm", f.step)), plot::pgm(&f.modulus))?;
        }
        writeln!(summary, "{},{},{}", f.step, time, transmitted_fraction(&f.modulus, &cfg.geometry))?;
    }
    let stages = select_stage_frames(series, &cfg.geometry);
    for (name, idx) in [("t1", stages.t1), ("t2", stages.t2), ("t3", stages.t3)] {
        let frame = &series.frames[idx];
        match screen_profile(&frame.modulus, &cfg.geometry, cfg.screen_x) {
            Ok(p) => {
                let head = format!("{header}# frame_step = {}\n", frame.step);
                dataset::write_profile(&out.join(format!("profile_{name}.csv")), &p, &head)?;
                writeln!(summary, "# profile_{name}: frame step {}", frame.step)?;
            }
            Err(e) => writeln!(summary, "# profile_{name}: frame step {}: {e}", frame.step)?,
        }
    }
    write(&out.join("summary.txt"), &summary)?;
    println!(
        "evolved {} steps; max norm drift {:.3e}; outputs in {}",
        cfg.n_steps,
        evo.max_norm_drift,
        out.display()
    );
    Ok(())
}

// ---------------------------------------------------------------- dough

pub fn resolve_dough(a: &DoughArgs) -> anyhow::Result<DoughConfig> {
    let mut cfg = DoughConfig::default();
    // The mode sets its own defaults before anything else is layered on.
    let file_entries = match &a.common.config {
        Some(p) => keyvalue::read_file(p)?,
        None => Vec::new(),
    };
    let file_mode = file_entries.iter().rev().find(|e| e.key == "mode").map(|e| e.value.parse::<Mode>());
    let mode = match (a.mode, file_mode) {
        (Some(m), _) => Some(m),
        (None, Some(m)) => Some(m.map_err(anyhow::Error::msg)?),
        _ => None,
    };
    if mode == Some(Mode::NoInterference) {
        cfg = DoughConfig::no_interference();
    }
    if let Some(seed) = env_seed()? {
        cfg.master_seed = seed;
    }
    if let Some(p) = &a.common.config {
        keyvalue::apply(&mut cfg, &file_entries, p)?;
    }
    if let Some(m) = a.mode {
        cfg.mode = m;
    }
    if let Some(v) = a.trials {
        cfg.trials = v;
    }
    if let Some(v) = a.seed {
        cfg.master_seed = v;
    }
    if let Some(v) = a.t_interact {
        cfg.t_interact = v;
    }
    if let Some(v) = a.force_levels {
        cfg.force_levels = v;
    }
    if let Some(v) = a.weight_levels {
        cfg.weight_levels = v;
    }
    if let Some(v) = a.bin {
        cfg.bin_size = v;
    }
    if let Some(v) = a.envelope_window {
        cfg.envelope_window = Some(v);
    }
    keyvalue::apply_overrides(&mut cfg, &a.common.overrides)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Fringe report text: summary line, visibility and one line per peak.
pub fn report_text(r: &dough::FringeReport) -> String {
    let mut s = r.metrics.summary_line();
    s.push('\n');
    match r.metrics.visibility {
        Some(v) => writeln!(s, "visibility={v}").unwrap(),
        None => s.push_str("visibility=nan\n"),
    }
    for p in &r.peaks.peaks {
        writeln!(s, "peak center={} height={} prominence={}", p.center, p.height, p.prominence).unwrap();
    }
    s
}

/// Writes the CSVs, report and SVG of one dough run into `out`; returns the
/// report of the combined histogram.
pub fn write_dough_outputs(run: &DoughRun, out: &Path) -> anyhow::Result<dough::FringeReport> {
    let cfg = run.config();
    let header = keyvalue::comment_block(cfg);
    write(&out.join(RESOLVED_CONFIG), render(cfg))?;
    write(&out.join("arrivals.csv"), run.arrivals_csv())?;
    let hist = run.histogram();
    write(&out.join("histogram.csv"), analysis::io::histogram_csv(hist, &header))?;
    if let DoughRun::NoInterference(r) = run {
        write(&out.join("histogram_left.csv"), analysis::io::histogram_csv(&r.left, &header))?;
        write(&out.join("histogram_right.csv"), analysis::io::histogram_csv(&r.right, &header))?;
    }
    let report = dough::fringe_report(hist, cfg)?;
    write(&out.join("fringe_report.txt"), format!("{header}{}", report_text(&report)))?;
    write(&out.join("fringe_peaks.csv"), format!("{header}{}", analysis::io::peaks_csv(&report.peaks)))?;
    let title = format!("{} t_I={} N={} seed={}", cfg.mode, cfg.t_interact, cfg.trials, cfg.master_seed);
    write(&out.join("histogram.svg"), plot::histogram_svg(hist, &report.envelope, &title))?;
    Ok(report)
}

fn cmd_dough(a: &DoughArgs) -> anyhow::Result<()> {
    let cfg = resolve_dough(a)?;
    if a.common.dry_run {
        print!("{}", render(&cfg));
        return Ok(());
    }
    let out = a.common.out.clone().unwrap_or_else(|| PathBuf::from("out/dough"));
    let run = dough::run(&cfg)?;
    let report = write_dough_outputs(&run, &out)?;
    println!("{}", report.metrics.summary_line());
    Ok(())
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepKind {
    Simulation,
    Dough,
}

/// Dough sweep over `t_interact` values.
#[derive(Debug, Clone, PartialEq)]
pub struct DoughSweep {
    pub base: DoughConfig,
    pub t_interact_values: Vec<u32>,
}

#[derive(Debug, Serialize)]
struct DoughSweepEntry {
    t_interact: u32,
    directory: String,
    config_hash: String,
    summary: String,
    visibility: Option<f64>,
}

#[derive(Debug, Serialize)]
struct DoughSweepManifest {
    toolkit_version: String,
    config_hash: String,
    runs: Vec<DoughSweepEntry>,
}

fn cmd_sweep(a: &SweepArgs) -> anyhow::Result<()> {
    let entries = keyvalue::read_file(&a.spec)?;
    let kind = match entries.iter().find(|e| e.key == "kind").map(|e| e.value.as_str()) {
        Some("simulation") | None => SweepKind::Simulation,
        Some("dough") => SweepKind::Dough,
        Some(other) => bail!("{}: unknown sweep kind `{other}` (simulation | dough)", a.spec.display()),
    };
    let rest: Vec<_> = entries.into_iter().filter(|e| e.key != "kind").collect();
    let out = a.out.clone().unwrap_or_else(|| PathBuf::from("out/sweep"));
    match kind {
        SweepKind::Simulation => sweep_simulation(a, &rest, &out),
        SweepKind::Dough => sweep_dough(a, &rest, &out),
    }
}

fn split_entries<'a>(
    entries: &'a [keyvalue::Entry],
    overrides: &'a [String],
    first_keys: &[&str],
) -> anyhow::Result<(Vec<keyvalue::Entry>, Vec<keyvalue::Entry>)> {
    let mut all: Vec<keyvalue::Entry> = entries.to_vec();
    for (i, o) in overrides.iter().enumerate() {
        let (k, v) = o.split_once('=').with_context(|| format!("override `{o}` is not key=value"))?;
        all.push(keyvalue::Entry { key: k.trim().into(), value: v.trim().into(), line: i + 1 });
    }
    Ok(all.into_iter().partition(|e| first_keys.contains(&e.key.as_str())))
}

fn sweep_simulation(a: &SweepArgs, entries: &[keyvalue::Entry], out: &Path) -> anyhow::Result<()> {
    let mut spec = SweepSpec::default();
    let spec_keys: Vec<&str> = spec.pairs().iter().map(|(k, _)| *k).collect();
    let (spec_entries, sim_entries) = split_entries(entries, &a.overrides, &spec_keys)?;
    keyvalue::apply(&mut spec, &spec_entries, &a.spec)?;
    let mut sim = SimulationConfig::default();
    keyvalue::apply(&mut sim, &sim_entries, &a.spec)?;
    spec.validate()?;
    sim.validate()?;
    let resolved = format!("kind = simulation\n{}{}", render(&spec), render(&sim));
    if a.dry_run {
        print!("{resolved}");
        println!("# samples = {}", spec.sample_count());
        return Ok(());
    }
    let total = spec.sample_count();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let manifest = generate_dataset(&spec, &sim, out, |id, status| {
        let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        match status {
            SampleStatus::Ok => eprintln!("[{n}/{total}] sample {id} ok"),
            SampleStatus::Failed { message } => eprintln!("[{n}/{total}] sample {id} FAILED: {message}"),
        }
    })?;
    write(&out.join(RESOLVED_CONFIG), resolved)?;
    println!(
        "{} samples ({} failed); manifest {}",
        manifest.samples.len(),
        manifest.failed_count(),
        out.join(dataset::MANIFEST_FILE).display()
    );
    Ok(())
}

fn sweep_dough(a: &SweepArgs, entries: &[keyvalue::Entry], out: &Path) -> anyhow::Result<()> {
    let (t_entries, dough_entries) = split_entries(entries, &a.overrides, &["t_interact_values"])?;
    let values: Vec<u32> = match t_entries.last() {
        Some(e) => e
            .value
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("{}:{}: bad t_interact_values", a.spec.display(), e.line))?,
        None => vec![3, 6, 9, 12],
    };
    if values.is_empty() {
        bail!("t_interact_values is empty");
    }
    let mode = dough_entries.iter().rev().find(|e| e.key == "mode").map(|e| e.value.parse::<Mode>());
    let mut base = match mode {
        Some(m) if m.clone().map_err(anyhow::Error::msg)? == Mode::NoInterference => DoughConfig::no_interference(),
        _ => DoughConfig::default(),
    };
    if let Some(seed) = env_seed()? {
        base.master_seed = seed;
    }
    keyvalue::apply(&mut base, &dough_entries, &a.spec)?;
    if let Some(seed) = a.seed {
        base.master_seed = seed;
    }
    let configs = dough::t_interact_sweep(&base, &values);
    for c in &configs {
        c.validate()?;
    }
    let resolved = format!("kind = dough\nt_interact_values = {}\n{}", keyvalue_list(&values), render(&base));
    if a.dry_run {
        print!("{resolved}");
        return Ok(());
    }
    let mut runs = Vec::new();
    let mut summary = String::from("t_interact,peaks,spacing,cv,visibility,fringed\n");
    for (i, c) in configs.iter().enumerate() {
        let dir = format!("t_interact_{:02}", c.t_interact);
        let run = dough::run(c)?;
        let report = write_dough_outputs(&run, &out.join(&dir))?;
        let m = &report.metrics;
        let fmt = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), |x| x.to_string());
        writeln!(
            summary,
            "{},{},{},{},{},{}",
            c.t_interact,
            m.n_peaks,
            fmt(m.spacing.map(|s| s.mean)),
            fmt(m.spacing.map(|s| s.cv)),
            fmt(m.visibility),
            m.fringed
        )?;
        eprintln!("[{}/{}] t_interact={} {}", i + 1, configs.len(), c.t_interact, m.summary_line());
        runs.push(DoughSweepEntry {
            t_interact: c.t_interact,
            directory: dir,
            config_hash: config_hash(c),
            summary: m.summary_line(),
            visibility: m.visibility,
        });
    }
    let manifest = DoughSweepManifest {
        toolkit_version: crate::VERSION.into(),
        config_hash: hex::encode(<sha2::Sha256 as sha2::Digest>::digest(resolved.as_bytes())),
        runs,
    };
    write(&out.join(RESOLVED_CONFIG), &resolved)?;
    write(&out.join("sweep_summary.csv"), &summary)?;
    write(&out.join(dataset::MANIFEST_FILE), serde_json::to_string_pretty(&manifest)? + "\n")?;
    print!("{summary}");
    Ok(())
}

fn keyvalue_list(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------- analyze

fn cmd_analyze(a: &AnalyzeCommand) -> anyhow::Result<()> {
    match a {
        AnalyzeCommand::Similarity(s) => {
            let p = analysis::io::read_distribution(&s.p)?;
            let q = analysis::io::read_distribution(&s.q)?;
            let v = similarity(&p.values, &q.values)?;
            let line = format!("similarity={v:.4}");
            println!("{line}");
            if let Some(out) = &s.out {
                write_text(
                    &out.join(RESOLVED_CONFIG),
                    &echo_pairs(&[("p", s.p.display().to_string()), ("q", s.q.display().to_string())]),
                )?;
                write(&out.join("similarity.txt"), format!("{line}\n"))?;
            }
        }
        AnalyzeCommand::Fringes(f) => {
            if f.window == 0 || f.passes == 0 {
                bail!("--window and --passes must be >= 1");
            }
            let d = analysis::io::read_distribution(&f.input)?;
            let env = envelope(&d.values, f.window, f.passes);
            let peaks = detect_peaks(&env, &d.positions, f.prominence)?;
            let metrics = fringe_metrics(&peaks, f.cv_threshold);
            println!("{}", metrics.summary_line());
            if let Some(out) = &f.out {
                write_text(
                    &out.join(RESOLVED_CONFIG),
                    &echo_pairs(&[
                        ("input", f.input.display().to_string()),
                        ("window", f.window.to_string()),
                        ("passes", f.passes.to_string()),
                        ("prominence", f.prominence.to_string()),
                        ("cv_threshold", f.cv_threshold.to_string()),
                    ]),
                )?;
                let report = dough::FringeReport { envelope: env, peaks, metrics };
                write(&out.join("fringe_report.txt"), report_text(&report))?;
                write(&out.join("fringe_peaks.csv"), analysis::io::peaks_csv(&report.peaks))?;
            }
        }
        AnalyzeCommand::Centrality(c) => {
            let points = analysis::io::read_points(&c.points)?;
            let metric = if c.weighted { PathMetric::Euclidean } else { PathMetric::Hops };
            let sweep = sweep_radius(&points, &c.radii, metric)?;
            let mut table = String::from("radius,max_closeness,argmax_count\n");
            for s in &sweep.stats {
                writeln!(table, "{},{},{}", s.radius, s.max, s.argmax_count)?;
            }
            print!("{table}");
            println!("selected_radius={} sources={:?}", sweep.selected_radius, sweep.sources);
            if let Some(out) = &c.out {
                let g = proximity_graph(&points, sweep.selected_radius)?;
                let cent = closeness_centrality(&g, metric);
                write_text(
                    &out.join(RESOLVED_CONFIG),
                    &echo_pairs(&[
                        ("points", c.points.display().to_string()),
                        ("radii", keyvalue::render_list(&c.radii)),
                        ("weighted", c.weighted.to_string()),
                    ]),
                )?;
                write(&out.join("radius_sweep.csv"), &table)?;
                write(&out.join("centrality.csv"), analysis::io::centrality_csv(&points, &cent))?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- render

fn cmd_render(a: &RenderArgs) -> anyhow::Result<()> {
    let (frame, time) = dataset::read_any_modulus(&a.input)?;
    write(&a.output, plot::pgm(&frame))?;
    let mut echo = a.output.clone().into_os_string();
    echo.push(".resolved.txt");
    write(
        Path::new(&echo),
        echo_pairs(&[("input", a.input.display().to_string()), ("time", time.to_string())]),
    )?;
    println!("wrote {}", a.output.display());
    Ok(())
}
