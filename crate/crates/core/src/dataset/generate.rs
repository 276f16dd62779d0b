use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use super::formats::{encode_qf2, encode_qm2, profile_csv};
use super::manifest::{DatasetManifest, FrameFile, SampleFiles, SampleRecord, SampleStatus, MANIFEST_FILE};
use super::sweep::{enumerate_sweep, SweepSpec};
use crate::csvio::write_text;
use crate::error::{Error, Result};
use crate::keyvalue::{comment_block, config_hash, render, KeyValueConfig};
use crate::qsolve::{
    build_potential, evolve_full, screen_profile, select_stage_frames, CrankNicolson, Potential,
    SimulationConfig, WavePacketParams,
};

/// Simulation config of one sweep sample.
pub fn sample_config(base: &SimulationConfig, p: &WavePacketParams) -> SimulationConfig {
    SimulationConfig {
        x0: p.x0,
        y0: Some(p.y0),
        sigma_x: p.sigma_x,
        sigma_y: p.sigma_y,
        k: p.k,
        ..base.clone()
    }
}

fn pairs_map<C: KeyValueConfig>(c: &C) -> BTreeMap<String, String> {
    c.pairs().into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Files of one finished sample, held in memory until the sample succeeds.
struct SampleOutput {
    files: Vec<(String, Vec<u8>)>,
    record_files: SampleFiles,
    stages: crate::qsolve::StageFrames,
}

fn simulate_sample(
    id: usize,
    cfg: &SimulationConfig,
    solver: &CrankNicolson,
    potential: &Potential,
) -> Result<SampleOutput> {
    let psi = cfg.initial_field(potential)?;
    let evo = evolve_full(solver, &psi, cfg.n_steps, cfg.record_stride, |_, _| {})?;
    let series = &evo.series;
    let stages = select_stage_frames(series, &cfg.geometry);
    let dir = format!("sample_{id:05}");
    let header = comment_block(cfg);
    let mut files = vec![(format!("{dir}/initial.qf2"), encode_qf2(&psi, 0.0))];
    let mut frames = Vec::with_capacity(series.frames.len());
    for f in &series.frames {
        let path = format!("{dir}/frame_{:06}.qm2", f.step);
        let time = series.time_of(f);
        files.push((path.clone(), encode_qm2(&f.modulus, time)));
        frames.push(FrameFile { step: f.step, time, path });
    }
    let mut profile = |name: &str, frame: usize| -> Result<String> {
        let p = screen_profile(&series.frames[frame].modulus, &cfg.geometry, cfg.screen_x)?;
        let path = format!("{dir}/profile_{name}.csv");
        let head = format!("{header}# frame_step = {}\n", series.frames[frame].step);
        files.push((path.clone(), profile_csv(&p, &head).into_bytes()));
        Ok(path)
    };
    let profile_t1 = profile("t1", stages.t1)?;
    let profile_t2 = profile("t2", stages.t2)?;
    let profile_t3 = profile("t3", stages.t3)?;
    Ok(SampleOutput {
        files,
        record_files: SampleFiles { initial: format!("{dir}/initial.qf2"), frames, profile_t1, profile_t2, profile_t3 },
        stages,
    })
}

/// Runs every sweep sample and writes fields, frames, profiles and the
/// manifest under `out_dir`. Samples run in parallel on the current rayon
/// pool; a failing sample is recorded and the batch continues. `progress` is
/// called once per finished sample with `(id, status)`.
pub fn generate_dataset(
    spec: &SweepSpec,
    base: &SimulationConfig,
    out_dir: &Path,
    progress: impl Fn(usize, &SampleStatus) + Sync,
) -> Result<DatasetManifest> {
    spec.validate()?;
    base.validate()?;
    let grid = base.grid()?;
    let potential = build_potential(&grid, &base.geometry)?;
    let solver = CrankNicolson::new(grid, &potential, base.dt, base.solver)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let params = enumerate_sweep(spec);
    let samples = params
        .par_iter()
        .enumerate()
        .map(|(id, p)| -> Result<SampleRecord> {
            let cfg = sample_config(base, p);
            let outcome = cfg.validate().and_then(|_| simulate_sample(id, &cfg, &solver, &potential));
            let record = match outcome {
                Ok(out) => {
                    for (rel, bytes) in &out.files {
                        let path = out_dir.join(rel);
                        if let Some(parent) = path.parent() {
                            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
                        }
                        std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
                    }
                    SampleRecord {
                        id,
                        params: *p,
                        config_hash: config_hash(&cfg),
                        status: SampleStatus::Ok,
                        stages: Some(out.stages),
                        files: Some(out.record_files),
                    }
                }
                Err(e @ Error::Io { .. }) => return Err(e),
                Err(e) => SampleRecord {
                    id,
                    params: *p,
                    config_hash: config_hash(&cfg),
                    status: SampleStatus::Failed { message: e.to_string() },
                    stages: None,
                    files: None,
                },
            };
            progress(id, &record.status);
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;

    let combined = format!("{}{}", render(base), render(spec));
    let manifest = DatasetManifest {
        toolkit_version: crate::VERSION.to_string(),
        config_hash: hex::encode(<sha2::Sha256 as sha2::Digest>::digest(combined.as_bytes())),
        sample_cap: spec.sample_cap,
        full_product: spec.full_product(),
        simulation: pairs_map(base),
        sweep: pairs_map(spec),
        samples,
    };
    manifest.write(&out_dir.join(MANIFEST_FILE))?;
    write_text(&out_dir.join("resolved_config.txt"), &combined)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> (SweepSpec, SimulationConfig) {
        let spec = SweepSpec {
            x0_values: vec![0.45, 0.5],
            sigma_x_values: vec![0.002],
            sigma_y_values: vec![0.002],
            sample_cap: None,
            ..Default::default()
        };
        let sim = SimulationConfig { n_x: 48, n_y: 48, n_steps: 6, record_stride: 3, dt: 2e-4, ..Default::default() };
        (spec, sim)
    }

    #[test]
    fn two_samples_with_files() {
        let dir = tempfile::tempdir().unwrap();
        let (spec, sim) = tiny();
        let m = generate_dataset(&spec, &sim, dir.path(), |_, _| {}).unwrap();
        assert_eq!(m.samples.len(), 2);
        for s in &m.samples {
            assert_eq!(s.status, SampleStatus::Ok);
            let f = s.files.as_ref().unwrap();
            assert_eq!(f.frames.iter().map(|f| f.step).collect::<Vec<_>>(), vec![0, 3, 6]);
            for p in [&f.initial, &f.profile_t1, &f.profile_t2, &f.profile_t3] {
                assert!(dir.path().join(p).is_file(), "{p}");
            }
            assert!(f.frames.iter().all(|fr| dir.path().join(&fr.path).is_file()));
        }
        let back = DatasetManifest::read(&dir.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn zero_cap_gives_empty_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let (spec, sim) = tiny();
        let spec = SweepSpec { sample_cap: Some(0), ..spec };
        let m = generate_dataset(&spec, &sim, dir.path(), |_, _| {}).unwrap();
        assert!(m.samples.is_empty());
        assert!(dir.path().join(MANIFEST_FILE).is_file());
    }

    #[test]
    fn solver_failure_recorded_not_fatal() {
        let dir = tempfile::tempdir().unwrap();
        let (spec, mut sim) = tiny();
        sim.solver.max_iterations = 1;
        sim.solver.tolerance = 1e-15;
        let m = generate_dataset(&spec, &sim, dir.path(), |_, _| {}).unwrap();
        assert_eq!(m.failed_count(), 2);
        assert!(m.samples.iter().all(|s| s.files.is_none()));
    }
}
