//! Experiment runners: each produces CSV tables plus a manifest that echoes
//! the resolved configuration, the seed, and the toolkit version, so a
//! rerun from the manifest reproduces bit-identical CSVs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use cazac_core::arith::{amplitude_db, amplitude_from_db};
use cazac_core::correlation::{pslr, RoI};
use cazac_core::design::{
    cazac_search_scores, max_normalized_doppler, measure_worst_case_pslr, random_cazac_family,
    roi_lag_bound, zc_best_root, zc_feasible_range, DesignParameter, SensingRequirements,
};
use cazac_core::radar::{roc_sweep, write_roc_csv, Scenario, Target, WaveformChain};
use cazac_core::sequence::{generate_cazac_general, ZcParams};

use crate::preset::{physical_for_length, Preset, Scale};
use crate::{CliError, CliResult};

/// On-disk experiment configuration. Unknown keys are errors.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Must be 1.
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_random: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_draws: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<SensingRequirements>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pr_db_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dr_m_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub umax_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_grid: Option<Vec<f64>>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
        if config.schema != 1 {
            return Err(CliError::Config(format!(
                "unsupported config schema {}",
                config.schema
            )));
        }
        Ok(config)
    }
}

/// Flags shared by every experiment subcommand.
#[derive(Debug, clap::Args)]
pub struct ExperimentArgs {
    /// RNG seed; required here or in the config file (never wall-clock).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (falls back to $CAZAC_OUT_DIR, then ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Parameter scale preset.
    #[arg(long, value_enum, default_value = "desk")]
    pub scale: Scale,
    /// JSON configuration file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Monte-Carlo trial count override.
    #[arg(long)]
    pub trials: Option<u32>,
    /// Also render each CSV to SVG.
    #[arg(long)]
    pub svg: bool,
}

pub struct ResolvedExperiment {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub scale: Scale,
    pub preset: Preset,
    pub out_dir: PathBuf,
    pub svg: bool,
}

impl ExperimentArgs {
    pub fn resolve(&self, experiment: &str) -> CliResult<ResolvedExperiment> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig {
                schema: 1,
                ..Default::default()
            },
        };
        if let Some(named) = &config.experiment {
            if named != experiment {
                return Err(CliError::Config(format!(
                    "config names experiment '{named}' but '{experiment}' was requested"
                )));
            }
        }
        config.experiment = Some(experiment.to_string());
        let scale = match config.scale.as_deref() {
            None => self.scale,
            Some("desk") => Scale::Desk,
            Some("full") => Scale::Full,
            Some(other) => {
                return Err(CliError::Config(format!("unknown scale '{other}'")));
            }
        };
        let seed = self
            .seed
            .or(config.seed)
            .ok_or_else(|| CliError::Config("a --seed is required for experiments".into()))?;
        config.seed = Some(seed);
        if let Some(trials) = self.trials {
            config.trials = Some(trials);
        }
        let out_dir = self
            .out
            .clone()
            .or_else(|| std::env::var_os("CAZAC_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok(ResolvedExperiment {
            preset: Preset::for_scale(scale),
            config,
            seed,
            scale,
            out_dir,
            svg: self.svg,
        })
    }
}

#[derive(Serialize)]
struct Manifest {
    schema: u32,
    toolkit_version: &'static str,
    experiment: String,
    seed: u64,
    scale: String,
    config: serde_json::Value,
    wall_time_s: f64,
    outputs: Vec<String>,
    notes: Vec<String>,
}

pub struct ExperimentSink {
    out_dir: PathBuf,
    started: Instant,
    outputs: Vec<String>,
    notes: Vec<String>,
    svg: bool,
}

impl ExperimentSink {
    pub fn new(resolved: &ResolvedExperiment) -> CliResult<Self> {
        fs::create_dir_all(&resolved.out_dir)
            .map_err(|e| CliError::Runtime(format!("cannot create output dir: {e}")))?;
        Ok(Self {
            out_dir: resolved.out_dir.clone(),
            started: Instant::now(),
            outputs: Vec::new(),
            notes: Vec::new(),
            svg: resolved.svg,
        })
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn write_csv(
        &mut self,
        name: &str,
        content: &str,
        style: crate::plot::PlotStyle,
        title: &str,
    ) -> CliResult<PathBuf> {
        let path = self.out_dir.join(name);
        fs::write(&path, content)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
        self.outputs.push(name.to_string());
        if self.svg {
            let svg_name = format!("{}.svg", name.trim_end_matches(".csv"));
            let svg = crate::plot::render_svg(content, style, title)
                .map_err(|e| CliError::Runtime(format!("plot {name}: {}", e.0)))?;
            let svg_path = self.out_dir.join(&svg_name);
            fs::write(&svg_path, svg)
                .map_err(|e| CliError::Runtime(format!("cannot write svg: {e}")))?;
            self.outputs.push(svg_name);
        }
        Ok(path)
    }

    pub fn finish(mut self, resolved: &ResolvedExperiment, experiment: &str) -> CliResult<()> {
        let manifest = Manifest {
            schema: 1,
            toolkit_version: env!("CARGO_PKG_VERSION"),
            experiment: experiment.to_string(),
            seed: resolved.seed,
            scale: match resolved.scale {
                Scale::Desk => "desk".into(),
                Scale::Full => "full".into(),
            },
            config: serde_json::to_value(&resolved.config)
                .map_err(|e| CliError::Runtime(e.to_string()))?,
            wall_time_s: self.started.elapsed().as_secs_f64(),
            outputs: std::mem::take(&mut self.outputs),
            notes: std::mem::take(&mut self.notes),
        };
        let path = self.out_dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        fs::write(&path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write manifest: {e}")))?;
        Ok(())
    }
}

fn seed_for(base: u64, index: u64) -> u64 {
    base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn scaled_default(values: &[f64], factor: f64) -> Vec<f64> {
    values.iter().map(|v| v * factor).collect()
}

/// Carrier, sampling period, and propagation speed for grid-driven
/// experiments: a supplied physical block overrides the reference clock.
fn base_clock(config: &ExperimentConfig) -> (f64, f64, f64) {
    match &config.physical {
        Some(p) => (p.fc_hz, p.ts_s, p.c_mps),
        None => (
            crate::preset::REF_FC_HZ,
            crate::preset::REF_TS_S,
            crate::preset::REF_C_MPS,
        ),
    }
}

/// Feasible-region tabulation: for each (P_r, D_r, u_max) grid point, the
/// smallest and largest feasible root. The upper endpoint has no Doppler
/// term, so it must agree across speed limits; the manifest records the
/// check.
pub fn run_feasible_region(args: &ExperimentArgs) -> CliResult<()> {
    let resolved = args.resolve("feasible-region")?;
    let mut sink = ExperimentSink::new(&resolved)?;
    let n = resolved.config.n.unwrap_or(resolved.preset.n);
    let scale_factor = n as f64 / 35537.0;
    let pr_db_grid = resolved
        .config
        .pr_db_grid
        .clone()
        .unwrap_or_else(|| (1..=20).map(|i| 2.0 * i as f64).collect());
    let dr_m_grid = resolved.config.dr_m_grid.clone().unwrap_or_else(|| {
        scaled_default(
            &(1..=25).map(|i| 4.0 * i as f64).collect::<Vec<_>>(),
            scale_factor,
        )
    });
    let umax_grid = resolved
        .config
        .umax_grid
        .clone()
        .unwrap_or_else(|| scaled_default(&[10.0, 20.0, 30.0], 1.0 / scale_factor));
    validate_grid("pr_db_grid", &pr_db_grid)?;
    validate_grid("dr_m_grid", &dr_m_grid)?;
    validate_grid("umax_grid", &umax_grid)?;
    let (fc_hz, ts_s, c_mps) = base_clock(&resolved.config);

    let mut csv = String::from("pr_db,dr_m,umax_mps,p_lower,p_upper,feasible\n");
    let mut upper_consistent = true;
    for &pr_db in &pr_db_grid {
        for &dr_m in &dr_m_grid {
            let mut upper_seen: Option<Option<u64>> = None;
            for &umax in &umax_grid {
                let req = SensingRequirements {
                    fc_hz,
                    ts_s,
                    dr_m,
                    umax_mps: umax,
                    pr_linear: amplitude_from_db(pr_db),
                    c_mps,
                };
                let range = zc_feasible_range(n, &req)
                    .map_err(|e| CliError::Config(format!("grid point invalid: {e}")))?;
                let lower = range.roots.first();
                let upper = range.roots.last();
                // The RoI-side endpoint alone, ignoring the PSLR bound:
                // largest coprime root keeping the RoI inside S_p.
                let roi_upper = largest_roi_root(n, &req);
                match &upper_seen {
                    None => upper_seen = Some(roi_upper),
                    Some(prev) => {
                        if *prev != roi_upper {
                            upper_consistent = false;
                        }
                    }
                }
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    pr_db,
                    dr_m,
                    umax,
                    lower.map(|p| p.to_string()).unwrap_or_default(),
                    upper.map(|p| p.to_string()).unwrap_or_default(),
                    !range.roots.is_empty()
                ));
            }
        }
    }
    sink.note(format!(
        "upper bound independent of speed limit: {upper_consistent}"
    ));
    sink.note(format!("N = {n}"));
    sink.write_csv(
        "feasible_region.csv",
        &csv,
        crate::plot::PlotStyle::Scatter,
        "feasible root-index range",
    )?;
    sink.finish(&resolved, "feasible-region")
}

fn largest_roi_root(n: u64, req: &SensingRequirements) -> Option<u64> {
    let relaxed = SensingRequirements {
        pr_linear: 1.0,
        ..*req
    };
    zc_best_root(n, &relaxed)
        .ok()
        .and_then(|result| match result.parameter {
            Some(DesignParameter::Root { p }) => Some(p),
            _ => None,
        })
}

fn validate_grid(name: &str, grid: &[f64]) -> CliResult<()> {
    if grid.is_empty() {
        return Err(CliError::Config(format!("{name} is empty")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config(format!(
            "{name} must be strictly increasing"
        )));
    }
    Ok(())
}

/// Designed (phi, a) PSLR against the mean PSLR of uniformly drawn
/// full-family parameters, per (D_r, u_max) grid point.
pub fn run_cazac_pslr(args: &ExperimentArgs) -> CliResult<()> {
    let resolved = args.resolve("cazac-pslr")?;
    let mut sink = ExperimentSink::new(&resolved)?;
    let r = resolved.config.r.unwrap_or(resolved.preset.r);
    let m = resolved.config.m.unwrap_or(resolved.preset.m);
    let n = r * m * m;
    let n_random = resolved.config.n_random.unwrap_or(resolved.preset.n_random);
    let scale_factor = n as f64 / 35537.0;
    let dr_m_grid = resolved
        .config
        .dr_m_grid
        .clone()
        .unwrap_or_else(|| scaled_default(&[10.0, 20.0, 30.0, 40.0, 50.0], scale_factor));
    let umax_grid = resolved
        .config
        .umax_grid
        .clone()
        .unwrap_or_else(|| scaled_default(&[20.0, 30.0], 1.0 / scale_factor));
    validate_grid("dr_m_grid", &dr_m_grid)?;
    validate_grid("umax_grid", &umax_grid)?;

    let mut csv = String::from("dr_m,umax_mps,phi,a,pslr_designed_db,pslr_average_db,n_random\n");
    for (i, &dr_m) in dr_m_grid.iter().enumerate() {
        for (j, &umax) in umax_grid.iter().enumerate() {
            let req = SensingRequirements {
                fc_hz: crate::preset::REF_FC_HZ,
                ts_s: crate::preset::REF_TS_S,
                dr_m,
                umax_mps: umax,
                pr_linear: 1.0,
                c_mps: crate::preset::REF_C_MPS,
            };
            let (designed, _) = cazac_search_scores(r, m, &req)
                .map_err(|e| CliError::Config(format!("search failed: {e}")))?;
            let v_bar = max_normalized_doppler(&req);
            let roi = RoI::new(roi_lag_bound(&req));
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(
                resolved.seed,
                (i * umax_grid.len() + j) as u64,
            ));
            let mut db_sum = 0.0;
            for _ in 0..n_random {
                let (phi, varphi) = random_cazac_family(r, m, &mut rng);
                let psi = vec![0.0; m as usize];
                let z = generate_cazac_general(r, m, phi, &varphi, &psi)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                let measured = measure_worst_case_pslr(&z, v_bar, roi)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                db_sum += amplitude_db(measured.ratio);
            }
            let (phi, a) = match designed.parameter {
                Some(DesignParameter::PhiA { phi, a }) => (phi, a),
                _ => unreachable!("search always yields a parameter"),
            };
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                dr_m,
                umax,
                phi,
                a,
                designed.achieved_pslr_db(),
                db_sum / n_random as f64,
                n_random
            ));
        }
    }
    sink.note(format!("r = {r}, m = {m}, N = {n}"));
    sink.note("average column: dB-mean over uniformly drawn full-family parameters".to_string());
    sink.write_csv(
        "cazac_pslr.csv",
        &csv,
        crate::plot::PlotStyle::Line,
        "designed vs average CAZAC PSLR",
    )?;
    sink.finish(&resolved, "cazac-pslr")
}

/// Measured PSLR of the three receive chains against the Doppler grid,
/// dB-averaged over noisy trials.
pub fn run_pslr_vs_doppler(args: &ExperimentArgs) -> CliResult<()> {
    let resolved = args.resolve("pslr-doppler")?;
    let mut sink = ExperimentSink::new(&resolved)?;
    let preset = resolved.preset;
    let n = resolved.config.n.unwrap_or(preset.n);
    let trials = resolved.config.trials.unwrap_or(preset.trials);
    let snr_db = resolved.config.snr_db.unwrap_or(preset.snr_db);
    let physical = resolved
        .config
        .physical
        .unwrap_or_else(|| physical_for_length(n));
    let u_grid = resolved.config.u_grid.clone().unwrap_or_else(|| {
        (0..=10)
            .map(|i| physical.umax_mps * i as f64 / 10.0)
            .collect()
    });
    validate_grid("u_grid", &u_grid)?;

    let best = zc_best_root(n, &physical).map_err(|e| CliError::Config(e.to_string()))?;
    let p_designed = match best.parameter {
        Some(DesignParameter::Root { p }) if best.feasible => p,
        _ => return Err(CliError::Infeasible(best.diagnostics)),
    };
    let chains = [
        WaveformChain::Zc(ZcParams::new(n, 1).map_err(|e| CliError::Config(e.to_string()))?),
        WaveformChain::Zc(
            ZcParams::new(n, p_designed).map_err(|e| CliError::Config(e.to_string()))?,
        ),
        WaveformChain::Dzc(ZcParams::new(n, 1).map_err(|e| CliError::Config(e.to_string()))?),
    ];
    let prepared: Vec<_> = chains
        .iter()
        .map(|c| c.prepare().map_err(|e| CliError::Runtime(e.to_string())))
        .collect::<CliResult<_>>()?;
    let roi = RoI::new(roi_lag_bound(&physical));

    let mut csv = String::from("u_mps,v,zc_p1_db,zc_designed_db,dzc_db\n");
    for (ui, &u) in u_grid.iter().enumerate() {
        let v = 2.0 * u * physical.fc_hz * physical.ts_s / physical.c_mps;
        let mut db_sums = [0.0f64; 3];
        for trial in 0..trials {
            let scenario = Scenario {
                units: None,
                targets: vec![Target {
                    d_m: 0.0,
                    u_mps: u,
                    gain_re: 1.0,
                    gain_im: 0.0,
                }],
                snr_db: Some(snr_db),
                n,
                k: 1,
                omega: 1,
                seed: seed_for(resolved.seed, (ui as u64) << 20 | trial as u64),
                physical: SensingRequirements {
                    umax_mps: physical.umax_mps.max(u),
                    ..physical
                },
            };
            for (w, chain) in prepared.iter().enumerate() {
                let echo = cazac_core::radar::synthesize_echo(&scenario, &chain.transmit, 0)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                let profile = chain
                    .receive(&echo)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                let measured = pslr(&profile, roi).map_err(|e| CliError::Runtime(e.to_string()))?;
                db_sums[w] += amplitude_db(measured.ratio);
            }
        }
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            u,
            v,
            db_sums[0] / trials as f64,
            db_sums[1] / trials as f64,
            db_sums[2] / trials as f64
        ));
    }
    sink.note(format!(
        "N = {n}, designed root p = {p_designed}, SNR {snr_db} dB, {trials} trials"
    ));
    sink.write_csv(
        "pslr_vs_doppler.csv",
        &csv,
        crate::plot::PlotStyle::Line,
        "PSLR vs Doppler",
    )?;
    sink.finish(&resolved, "pslr-doppler")
}

fn default_gamma_grid() -> Vec<f64> {
    (0..29).map(|i| 10f64.powf(i as f64 / 4.0)).collect()
}

fn roc_scenario(resolved: &ResolvedExperiment, n: u64, physical: SensingRequirements) -> Scenario {
    let preset = resolved.preset;
    Scenario {
        units: None,
        targets: Vec::new(),
        snr_db: Some(resolved.config.snr_db.unwrap_or(preset.snr_db)),
        n,
        k: resolved.config.k.unwrap_or(preset.k),
        omega: resolved.config.omega.unwrap_or(preset.omega),
        seed: resolved.seed,
        physical,
    }
}

fn run_roc_family(
    resolved: &ResolvedExperiment,
    sink: &mut ExperimentSink,
    scenario: &Scenario,
    chains: &[(String, WaveformChain)],
) -> CliResult<()> {
    let preset = resolved.preset;
    let trials = resolved.config.trials.unwrap_or(preset.trials);
    let num_targets = resolved.config.targets.unwrap_or(preset.targets);
    let gamma_grid = resolved
        .config
        .gamma_grid
        .clone()
        .unwrap_or_else(default_gamma_grid);
    validate_grid("gamma_grid", &gamma_grid)?;

    let mut curves = Vec::new();
    for (label, chain) in chains {
        let curve = roc_sweep(scenario, num_targets, chain, &gamma_grid, trials)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        let mut text = String::new();
        {
            let mut buf = Vec::new();
            write_roc_csv(&curve, &mut buf).map_err(|e| CliError::Runtime(e.to_string()))?;
            text.push_str(std::str::from_utf8(&buf).expect("csv is utf8"));
        }
        sink.write_csv(
            &format!("roc_{label}.csv"),
            &text,
            crate::plot::PlotStyle::Roc,
            &format!("ROC: {label}"),
        )?;
        curves.push((label.clone(), curve));
    }

    let mut combined = String::from("gamma");
    for (label, _) in &curves {
        combined.push_str(&format!(",fa_{label},dr_{label}"));
    }
    combined.push('\n');
    for (i, &gamma) in gamma_grid.iter().enumerate() {
        let mut row = format!("{gamma}");
        for (_, curve) in &curves {
            row.push_str(&format!(
                ",{},{}",
                curve.points[i].false_alarm_rate, curve.points[i].detection_rate
            ));
        }
        combined.push_str(&row);
        combined.push('\n');
    }
    sink.write_csv(
        "roc_combined.csv",
        &combined,
        crate::plot::PlotStyle::Line,
        "ROC sweep (combined)",
    )?;
    sink.note(format!(
        "{} trials, {} targets per trial, shared target and noise draws across waveforms",
        trials, num_targets
    ));
    sink.note("false alarm rate normalized per tested cell per scan".to_string());
    Ok(())
}

/// ROC comparison of plain ZC (p = 1), the designed root, and the DZC
/// chain, with shared target draws per trial.
pub fn run_roc(args: &ExperimentArgs) -> CliResult<()> {
    let resolved = args.resolve("roc")?;
    let mut sink = ExperimentSink::new(&resolved)?;
    let n = resolved.config.n.unwrap_or(resolved.preset.n);
    let physical = resolved
        .config
        .physical
        .unwrap_or_else(|| physical_for_length(n));
    let scenario = roc_scenario(&resolved, n, physical);
    scenario
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let best = zc_best_root(n, &physical).map_err(|e| CliError::Config(e.to_string()))?;
    let p_designed = match best.parameter {
        Some(DesignParameter::Root { p }) if best.feasible => p,
        _ => return Err(CliError::Infeasible(best.diagnostics)),
    };
    let mk = |p| ZcParams::new(n, p).map_err(|e| CliError::Config(e.to_string()));
    let chains = vec![
        ("zc_p1".to_string(), WaveformChain::Zc(mk(1)?)),
        (
            format!("zc_p{p_designed}"),
            WaveformChain::Zc(mk(p_designed)?),
        ),
        ("dzc".to_string(), WaveformChain::Dzc(mk(1)?)),
    ];
    run_roc_family(&resolved, &mut sink, &scenario, &chains)?;
    sink.note(format!("N = {n}, designed root p = {p_designed}"));
    sink.finish(&resolved, "roc")
}

/// ROC comparison of the searched (phi, a) CAZAC against an
/// average-parameter family member (the draw whose PSLR is closest to the
/// sample mean).
pub fn run_cazac_roc(args: &ExperimentArgs) -> CliResult<()> {
    let resolved = args.resolve("cazac-roc")?;
    let mut sink = ExperimentSink::new(&resolved)?;
    let r = resolved.config.r.unwrap_or(resolved.preset.r);
    let m = resolved.config.m.unwrap_or(resolved.preset.m);
    let n = r * m * m;
    let physical = resolved
        .config
        .physical
        .unwrap_or_else(|| physical_for_length(n));
    let scenario = roc_scenario(&resolved, n, physical);
    scenario
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let (designed, _) =
        cazac_search_scores(r, m, &physical).map_err(|e| CliError::Config(e.to_string()))?;
    let (phi_hat, a_hat) = match designed.parameter {
        Some(DesignParameter::PhiA { phi, a }) => (phi, a),
        _ => return Err(CliError::Infeasible(designed.diagnostics)),
    };
    let designed_params = cazac_core::sequence::CazacParams::new(r, m, phi_hat, a_hat)
        .map_err(|e| CliError::Runtime(e.to_string()))?;

    // Average-parameter baseline: sample the full family and keep the draw
    // whose PSLR sits closest to the sample mean.
    let draws = resolved.config.baseline_draws.unwrap_or(32).max(2);
    let v_bar = max_normalized_doppler(&physical);
    let roi = RoI::new(roi_lag_bound(&physical));
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(resolved.seed, 0xCA2AC));
    let mut sampled = Vec::with_capacity(draws);
    for _ in 0..draws {
        let (phi, varphi) = random_cazac_family(r, m, &mut rng);
        let psi = vec![0.0; m as usize];
        let z = generate_cazac_general(r, m, phi, &varphi, &psi)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        let db = amplitude_db(
            measure_worst_case_pslr(&z, v_bar, roi)
                .map_err(|e| CliError::Runtime(e.to_string()))?
                .ratio,
        );
        sampled.push((phi, varphi, db));
    }
    let mean_db = sampled.iter().map(|s| s.2).sum::<f64>() / draws as f64;
    let (phi_avg, varphi_avg, avg_db) = sampled
        .into_iter()
        .min_by(|a, b| {
            let da = (a.2 - mean_db).abs();
            let db = (b.2 - mean_db).abs();
            da.partial_cmp(&db).unwrap()
        })
        .expect("at least two draws");

    let chains = vec![
        (
            format!("cazac_phi{phi_hat}_a{a_hat}"),
            WaveformChain::Cazac(designed_params),
        ),
        (
            "cazac_average".to_string(),
            WaveformChain::CazacGeneral {
                r,
                m,
                phi: phi_avg,
                varphi: varphi_avg.clone(),
            },
        ),
    ];
    run_roc_family(&resolved, &mut sink, &scenario, &chains)?;
    sink.note(format!(
        "designed (phi, a) = ({phi_hat}, {a_hat}), {:.2} dB; average member phi = {phi_avg}, varphi = {varphi_avg:?}, {avg_db:.2} dB (family mean {mean_db:.2} dB over {draws} draws)",
        designed.achieved_pslr_db()
    ));
    sink.finish(&resolved, "cazac-roc")
}

/// Samples the correlation kernel f(x) = ||sin(pi x)/sin(pi x / N)|| for
/// plotting.
pub fn fx_table(n: u64, x_min: f64, x_max: f64, samples: usize) -> CliResult<String> {
    if samples < 2 || x_max <= x_min {
        return Err(CliError::Config(
            "need samples >= 2 and x_max > x_min".into(),
        ));
    }
    let mut csv = String::from("x,fx\n");
    for i in 0..samples {
        let x = x_min + (x_max - x_min) * i as f64 / (samples - 1) as f64;
        let fx = cazac_core::correlation::dirichlet_magnitude(x, n as f64);
        let _ = writeln!(csv, "{},{}", x, fx);
    }
    Ok(csv)
}

/// Measured range profile for the analyze command: one echo, one chain.
pub fn analyze_profile(
    chain: &WaveformChain,
    tau: usize,
    v: f64,
    snr_db: Option<f64>,
    seed: u64,
    physical: &SensingRequirements,
) -> CliResult<(
    cazac_core::correlation::Pslr,
    cazac_core::correlation::RangeProfile,
)> {
    let prepared = chain
        .prepare()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let n = prepared.transmit.len() as u64;
    let u_equivalent = v * physical.c_mps / (2.0 * physical.fc_hz * physical.ts_s);
    let scenario = Scenario {
        units: None,
        targets: vec![Target {
            d_m: tau as f64 * physical.c_mps * physical.ts_s / 2.0,
            u_mps: u_equivalent,
            gain_re: 1.0,
            gain_im: 0.0,
        }],
        snr_db,
        n,
        k: 1,
        omega: 1,
        seed,
        physical: SensingRequirements {
            umax_mps: physical.umax_mps.max(u_equivalent.abs()),
            ..*physical
        },
    };
    let echo = cazac_core::radar::synthesize_echo(&scenario, &prepared.transmit, 0)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let profile = prepared
        .receive(&echo)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let roi = RoI::new(roi_lag_bound(physical));
    let measured = pslr(&profile, roi).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((measured, profile))
}
