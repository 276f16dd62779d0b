use std::ffi::{CStr, CString};
use std::ptr;

use doughslit::dough::{self, DoughConfig};
use doughslit::qsolve::{build_potential, evolve_full, CrankNicolson, SimulationConfig};
use doughslit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ds_last_error_message()) }.to_str().unwrap().to_owned()
}

fn small_sim_config() -> *mut DsSimConfig {
    let mut cfg = ptr::null_mut();
    unsafe {
        assert_eq!(ds_sim_config_new(&mut cfg), DsStatus::Ok);
        assert_eq!(ds_sim_config_set(cfg, c("n").as_ptr(), c("64").as_ptr()), DsStatus::Ok);
        assert_eq!(ds_sim_config_set(cfg, c("dt").as_ptr(), c("2e-4").as_ptr()), DsStatus::Ok);
    }
    cfg
}

#[test]
fn simulation_matches_library_evolution() {
    let cfg = small_sim_config();
    let mut sim = ptr::null_mut();
    unsafe {
        assert_eq!(ds_simulation_new(cfg, &mut sim), DsStatus::Ok);
        ds_sim_config_free(cfg);
        assert_eq!(ds_simulation_step(sim, 4), DsStatus::Ok);
    }
    let mut info = DsSimulationInfo { n_x: 0, n_y: 0, step: 0, time: 0.0, norm: 0.0 };
    assert_eq!(unsafe { ds_simulation_info(sim, &mut info) }, DsStatus::Ok);
    assert_eq!((info.n_x, info.n_y, info.step), (64, 64, 4));
    assert!((info.time - 8e-4).abs() < 1e-15);

    let n = info.n_x * info.n_y;
    let (mut re, mut im) = (vec![0.0; n], vec![0.0; n]);
    assert_eq!(unsafe { ds_simulation_field(sim, re.as_mut_ptr(), im.as_mut_ptr(), n) }, DsStatus::Ok);

    let lib = SimulationConfig { n_x: 64, n_y: 64, dt: 2e-4, ..Default::default() };
    let grid = lib.grid().unwrap();
    let potential = build_potential(&grid, &lib.geometry).unwrap();
    let solver = CrankNicolson::new(grid, &potential, lib.dt, lib.solver).unwrap();
    let psi = lib.initial_field(&potential).unwrap();
    let evo = evolve_full(&solver, &psi, 4, 4, |_, _| {}).unwrap();
    for (k, v) in evo.final_field.values().iter().enumerate() {
        assert_eq!((re[k], im[k]), (v.re, v.im));
    }

    let mut y = vec![0.0; info.n_y];
    let mut p = vec![0.0; info.n_y];
    assert_eq!(
        unsafe { ds_simulation_screen_profile(sim, y.as_mut_ptr(), p.as_mut_ptr(), info.n_y) },
        DsStatus::Ok
    );
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    unsafe { ds_simulation_free(sim) };
}

#[test]
fn invalid_config_reports_code_and_message() {
    let cfg = small_sim_config();
    let mut sim = ptr::null_mut();
    unsafe {
        assert_eq!(ds_sim_config_set(cfg, c("dt").as_ptr(), c("abc").as_ptr()), DsStatus::InvalidParameter);
        assert!(last_error().contains("dt"));
        assert_eq!(ds_sim_config_set(cfg, c("sigma_x").as_ptr(), c("1e-7").as_ptr()), DsStatus::Ok);
        assert_eq!(ds_simulation_new(cfg, &mut sim), DsStatus::UnderResolved);
        assert!(sim.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(ds_sim_config_set(cfg, c("sigma_x").as_ptr(), c("0.002").as_ptr()), DsStatus::Ok);
        assert_eq!(last_error(), "");
        ds_sim_config_free(cfg);
    }
}

#[test]
fn solver_failure_maps_through_step_error() {
    let cfg = small_sim_config();
    let mut sim = ptr::null_mut();
    unsafe {
        ds_sim_config_set(cfg, c("max_iterations").as_ptr(), c("1").as_ptr());
        ds_sim_config_set(cfg, c("tolerance").as_ptr(), c("1e-15").as_ptr());
        assert_eq!(ds_simulation_new(cfg, &mut sim), DsStatus::Ok);
        assert_eq!(ds_simulation_step(sim, 3), DsStatus::SolverFailure);
        assert!(last_error().contains("step 1"));
        let mut info = DsSimulationInfo { n_x: 0, n_y: 0, step: 9, time: 0.0, norm: 0.0 };
        ds_simulation_info(sim, &mut info);
        assert_eq!(info.step, 0);
        ds_simulation_free(sim);
        ds_sim_config_free(cfg);
    }
}

#[test]
fn null_and_buffer_checks() {
    unsafe {
        assert_eq!(ds_sim_config_new(ptr::null_mut()), DsStatus::NullPointer);
        assert_eq!(ds_simulation_step(ptr::null_mut(), 1), DsStatus::NullPointer);
        assert_eq!(ds_sim_config_set(ptr::null_mut(), c("n").as_ptr(), c("1").as_ptr()), DsStatus::NullPointer);
        let bad = [0xffu8, 0];
        let cfg = small_sim_config();
        assert_eq!(ds_sim_config_set(cfg, bad.as_ptr().cast(), c("1").as_ptr()), DsStatus::InvalidUtf8);
        let mut sim = ptr::null_mut();
        ds_simulation_new(cfg, &mut sim);
        let mut buf = vec![0.0; 10];
        assert_eq!(ds_simulation_modulus(sim, buf.as_mut_ptr(), 10), DsStatus::BufferSize);
        assert!(last_error().contains("expected 4096"));
        ds_simulation_free(sim);
        ds_sim_config_free(cfg);
        ds_simulation_free(ptr::null_mut());
        assert_eq!(ds_dough_run_trial_count(ptr::null()), 0);
    }
}

#[test]
fn dough_run_matches_library() {
    for (mode, lib) in [
        (DsDoughMode::Interference, DoughConfig { trials: 300, ..DoughConfig::default() }),
        (DsDoughMode::NoInterference, DoughConfig { trials: 300, ..DoughConfig::no_interference() }),
    ] {
        let mut cfg = ptr::null_mut();
        let mut run = ptr::null_mut();
        unsafe {
            assert_eq!(ds_dough_config_new(mode, &mut cfg), DsStatus::Ok);
            assert_eq!(ds_dough_config_set(cfg, c("trials").as_ptr(), c("300").as_ptr()), DsStatus::Ok);
            assert_eq!(ds_dough_run_new(cfg, &mut run), DsStatus::Ok);
            ds_dough_config_free(cfg);
        }
        let expected = dough::run(&lib).unwrap();
        let n = unsafe { ds_dough_run_trial_count(run) };
        assert_eq!(n, 300);
        let mut arrivals = vec![0.0; n];
        assert_eq!(unsafe { ds_dough_run_arrivals(run, arrivals.as_mut_ptr(), n) }, DsStatus::Ok);
        assert_eq!(arrivals, expected.arrivals());

        let bins = unsafe { ds_dough_run_histogram_len(run) };
        let (mut centers, mut counts) = (vec![0.0; bins], vec![0u64; bins]);
        assert_eq!(
            unsafe { ds_dough_run_histogram(run, centers.as_mut_ptr(), counts.as_mut_ptr(), bins) },
            DsStatus::Ok
        );
        assert_eq!(counts.iter().sum::<u64>(), 300);
        assert_eq!(centers, expected.histogram().centers());

        let mut fm = DsFringeMetrics { n_peaks: 0, spacing_mean: 0.0, spacing_cv: 0.0, visibility: 0.0, fringed: false };
        assert_eq!(unsafe { ds_dough_run_fringes(run, &mut fm) }, DsStatus::Ok);
        let report = dough::fringe_report(expected.histogram(), expected.config()).unwrap();
        assert_eq!(fm.n_peaks, report.metrics.n_peaks);
        assert_eq!(fm.fringed, report.metrics.fringed);
        assert_eq!(fm.spacing_mean.is_nan(), report.metrics.spacing.is_none());
        unsafe { ds_dough_run_free(run) };
    }
}

#[test]
fn invalid_dough_config_rejected_at_run() {
    let mut cfg = ptr::null_mut();
    let mut run = ptr::null_mut();
    unsafe {
        ds_dough_config_new(DsDoughMode::Interference, &mut cfg);
        assert_eq!(ds_dough_config_set(cfg, c("mode").as_ptr(), c("sideways").as_ptr()), DsStatus::InvalidParameter);
        ds_dough_config_set(cfg, c("t_interact").as_ptr(), c("40").as_ptr());
        assert_eq!(ds_dough_run_new(cfg, &mut run), DsStatus::InvalidParameter);
        assert!(run.is_null());
        ds_dough_config_free(cfg);
    }
}

#[test]
fn similarity_and_centrality() {
    let p = [0.0, 1.0, 3.0, 1.0];
    let q = [0.0, 2.0, 6.0, 2.0];
    let mut s = 0.0;
    assert_eq!(unsafe { ds_similarity(p.as_ptr(), q.as_ptr(), 4, &mut s) }, DsStatus::Ok);
    // Same shape, different scale: sum sqrt(pq) = sqrt(2)(1+3+1), half total mass 7.5.
    assert!((s - 100.0 * 5.0 * 2f64.sqrt() / 7.5).abs() < 1e-12);
    let zero = [0.0; 4];
    assert_eq!(unsafe { ds_similarity(zero.as_ptr(), zero.as_ptr(), 4, &mut s) }, DsStatus::Degenerate);

    // Path 0-1-2: closeness 2/3, 1, 2/3.
    let xs = [0.0, 1.0, 2.0];
    let ys = [0.0; 3];
    let mut out = [0.0; 3];
    assert_eq!(
        unsafe { ds_closeness_centrality(xs.as_ptr(), ys.as_ptr(), 3, 1.0, false, out.as_mut_ptr()) },
        DsStatus::Ok
    );
    assert_eq!(out, [2.0 / 3.0, 1.0, 2.0 / 3.0]);
    assert_eq!(
        unsafe { ds_closeness_centrality(xs.as_ptr(), ys.as_ptr(), 3, -1.0, false, out.as_mut_ptr()) },
        DsStatus::InvalidParameter
    );
}

#[test]
fn status_names_and_version() {
    let name = |s| unsafe { CStr::from_ptr(ds_status_name(s)) }.to_str().unwrap();
    assert_eq!(name(DsStatus::Ok), "ok");
    assert_eq!(name(DsStatus::SolverFailure), "solver_failure");
    let v = unsafe { CStr::from_ptr(ds_version()) }.to_str().unwrap();
    assert_eq!(v, doughslit::VERSION);
}
