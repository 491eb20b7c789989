//! `cazac`: sequence design, correlation analysis, radar simulation, and
//! experiment reproduction for Doppler-resilient CAZAC waveforms.
//!
//! Exit codes: 0 success, 2 configuration error, 3 infeasible design,
//! 4 runtime failure.

mod experiments;
mod plot;
mod preset;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cazac_core::arith::{amplitude_db, amplitude_from_db};
use cazac_core::design::{
    cazac_search_scores, max_normalized_doppler, roi_lag_bound, zc_best_root, zc_feasible_range,
    DesignResult, SensingRequirements,
};
use cazac_core::radar::{
    compute_rdm, detect, match_detections, read_scenario_json, synthesize_echo, write_rdm_binary,
    write_rdm_summary_csv, DetectionWindow, WaveformChain,
};
use cazac_core::sequence::{CazacParams, ZcParams};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Infeasible(String),
    Runtime(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Infeasible(m) | CliError::Runtime(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cazac",
    version,
    about = "Doppler-resilient CAZAC waveform design and radar-sensing simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for sequence parameters from sensing requirements.
    Design {
        #[command(subcommand)]
        what: DesignCommand,
    },
    /// Correlation-level measurements.
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Run the sensing pipeline on a scenario file.
    Simulate {
        #[command(subcommand)]
        what: SimulateCommand,
    },
    /// Reproduce the experiment tables (CSV + manifest).
    Experiment {
        #[command(subcommand)]
        what: ExperimentCommand,
    },
    /// Render a CSV table to a standalone SVG.
    Plot(PlotArgs),
}

/// Physical requirement flags shared by the design commands.
#[derive(Args, Debug)]
struct PhysicalArgs {
    /// Carrier frequency in Hz.
    #[arg(long, default_value_t = 240e9)]
    fc_hz: f64,
    /// Sampling period in seconds.
    #[arg(long, default_value_t = 0.2e-9)]
    ts_s: f64,
    /// Sensing range in meters.
    #[arg(long)]
    dr_m: f64,
    /// Speed limit in m/s.
    #[arg(long)]
    umax_mps: f64,
    /// Required PSLR threshold in dB (amplitude convention, 20*log10).
    #[arg(long)]
    pr_db: Option<f64>,
    /// Propagation speed in m/s.
    #[arg(long, default_value_t = 3.0e8)]
    c_mps: f64,
}

impl PhysicalArgs {
    fn requirements(&self) -> CliResult<SensingRequirements> {
        let req = SensingRequirements {
            fc_hz: self.fc_hz,
            ts_s: self.ts_s,
            dr_m: self.dr_m,
            umax_mps: self.umax_mps,
            pr_linear: self.pr_db.map_or(1.0, amplitude_from_db),
            c_mps: self.c_mps,
        };
        req.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(req)
    }
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Best ZC root index for the requirements (plus the feasible range
    /// when a threshold is given).
    Zc {
        /// Sequence length (odd).
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Write the JSON report here as well as stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustive (phi, a) search for the unified CAZAC family.
    Cazac {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Write the full scored grid as CSV (phi, a, pslr_db).
        #[arg(long)]
        grid_csv: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Measure the PSLR of one receive chain under delay/Doppler/noise.
    Pslr {
        #[command(flatten)]
        waveform: WaveformArgs,
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Integer delay in lags.
        #[arg(long, default_value_t = 0)]
        tau: usize,
        /// Target velocity in m/s (sets the normalized Doppler).
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        u_mps: f64,
        /// Receive SNR in dB; omit for a noiseless run.
        #[arg(long)]
        snr_db: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the range profile as CSV (lag, magnitude, magnitude_db).
        #[arg(long)]
        profile_csv: Option<PathBuf>,
    },
    /// Sample the correlation kernel f(x) = ||sin(pi x)/sin(pi x/N)||.
    Fx {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
        x_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Synthesize echoes for a scenario, build the range-Doppler map, and
    /// export it (binary grid + CSV summary + optional detection report).
    Rdm {
        /// Scenario JSON path.
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        waveform: WaveformArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Run the hypothesis test at this threshold and report detections.
        #[arg(long)]
        gamma: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Feasible root-index ranges over a (P_r, D_r, u_max) grid.
    FeasibleRegion(experiments::ExperimentArgs),
    /// Designed (phi, a) PSLR against the random-parameter average.
    CazacPslr(experiments::ExperimentArgs),
    /// PSLR of the three chains across a Doppler grid.
    PslrDoppler(experiments::ExperimentArgs),
    /// ROC curves for ZC p=1, the designed root, and DZC.
    Roc(experiments::ExperimentArgs),
    /// ROC curves for designed vs average-parameter CAZAC.
    CazacRoc(experiments::ExperimentArgs),
}

#[derive(Args)]
struct PlotArgs {
    /// Input CSV table.
    #[arg(long)]
    input: PathBuf,
    /// Output SVG path.
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "line")]
    style: plot::PlotStyle,
    #[arg(long, default_value = "")]
    title: String,
}

/// Waveform selection shared by analyze/simulate.
#[derive(Args, Debug)]
struct WaveformArgs {
    /// Waveform kind: zc, dzc, or cazac.
    #[arg(long)]
    waveform: String,
    /// ZC/DZC length.
    #[arg(long)]
    n: Option<u64>,
    /// ZC/DZC root index.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    phi: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
}

impl WaveformArgs {
    fn chain(&self) -> CliResult<WaveformChain> {
        let need = |v: Option<u64>, name: &str| {
            v.ok_or_else(|| CliError::Config(format!("--{name} is required for this waveform")))
        };
        match self.waveform.as_str() {
            "zc" | "dzc" => {
                let params = ZcParams::new(need(self.n, "n")?, need(self.p, "p")?)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                Ok(if self.waveform == "zc" {
                    WaveformChain::Zc(params)
                } else {
                    WaveformChain::Dzc(params)
                })
            }
            "cazac" => {
                let params = CazacParams::new(
                    need(self.r, "r")?,
                    need(self.m, "m")?,
                    need(self.phi, "phi")?,
                    need(self.a, "a")?,
                )
                .map_err(|e| CliError::Config(e.to_string()))?;
                Ok(WaveformChain::Cazac(params))
            }
            other => Err(CliError::Config(format!("unknown waveform '{other}'"))),
        }
    }
}

#[derive(Serialize)]
struct ZcDesignReport<'a> {
    n: u64,
    requirements: &'a SensingRequirements,
    v_bar: f64,
    roi_bound: f64,
    result: &'a DesignResult,
    achieved_pslr_db: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasible_roots: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasible_diagnostic: Option<String>,
}

fn design_zc(n: u64, physical: &PhysicalArgs, report: Option<&PathBuf>) -> CliResult<()> {
    let req = physical.requirements()?;
    let result = zc_best_root(n, &req).map_err(|e| CliError::Config(e.to_string()))?;
    let (feasible_roots, feasible_diagnostic) = match physical.pr_db {
        Some(_) => {
            let range = zc_feasible_range(n, &req).map_err(|e| CliError::Config(e.to_string()))?;
            (Some(range.roots), Some(range.diagnostic))
        }
        None => (None, None),
    };
    let text = serde_json::to_string_pretty(&ZcDesignReport {
        n,
        requirements: &req,
        v_bar: max_normalized_doppler(&req),
        roi_bound: roi_lag_bound(&req),
        result: &result,
        achieved_pslr_db: result.achieved_pslr_db(),
        feasible_roots,
        feasible_diagnostic,
    })
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    println!("{text}");
    if let Some(path) = report {
        fs::write(path, &text).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    if !result.feasible {
        return Err(CliError::Infeasible(result.diagnostics));
    }
    Ok(())
}

fn design_cazac(
    r: u64,
    m: u64,
    physical: &PhysicalArgs,
    grid_csv: Option<&PathBuf>,
    report: Option<&PathBuf>,
) -> CliResult<()> {
    let req = physical.requirements()?;
    let (result, scores) =
        cazac_search_scores(r, m, &req).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(path) = grid_csv {
        let mut csv = String::from("phi,a,pslr,pslr_db\n");
        for s in &scores {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                s.phi,
                s.a,
                s.pslr,
                amplitude_db(s.pslr)
            ));
        }
        fs::write(path, csv).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    #[derive(Serialize)]
    struct CazacDesignReport<'a> {
        r: u64,
        m: u64,
        n: u64,
        requirements: &'a SensingRequirements,
        result: &'a DesignResult,
        achieved_pslr_db: f64,
    }
    let text = serde_json::to_string_pretty(&CazacDesignReport {
        r,
        m,
        n: r * m * m,
        requirements: &req,
        result: &result,
        achieved_pslr_db: result.achieved_pslr_db(),
    })
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    println!("{text}");
    if let Some(path) = report {
        fs::write(path, &text).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    Ok(())
}

fn analyze_pslr(
    waveform: &WaveformArgs,
    physical: &PhysicalArgs,
    tau: usize,
    u_mps: f64,
    snr_db: Option<f64>,
    seed: u64,
    profile_csv: Option<&PathBuf>,
) -> CliResult<()> {
    let req = physical.requirements()?;
    let chain = waveform.chain()?;
    let v = 2.0 * u_mps * req.fc_hz * req.ts_s / req.c_mps;
    let (measured, profile) = experiments::analyze_profile(&chain, tau, v, snr_db, seed, &req)?;
    if let Some(path) = profile_csv {
        let mut buf = Vec::new();
        cazac_core::correlation::write_profile_csv(&profile, &mut buf)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        fs::write(path, buf).map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    #[derive(Serialize)]
    struct PslrReport {
        waveform: String,
        tau: usize,
        u_mps: f64,
        v: f64,
        pslr: f64,
        pslr_db: f64,
        saturated: bool,
        peak_magnitude: f64,
        max_sidelobe: f64,
        peak_lag: usize,
    }
    let text = serde_json::to_string_pretty(&PslrReport {
        waveform: chain.label(),
        tau,
        u_mps,
        v,
        pslr: measured.ratio,
        pslr_db: measured.db(),
        saturated: measured.saturated,
        peak_magnitude: measured.peak_magnitude,
        max_sidelobe: measured.max_sidelobe,
        peak_lag: profile.peak_index,
    })
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn analyze_fx(
    n: u64,
    x_min: f64,
    x_max: f64,
    samples: usize,
    out: Option<&PathBuf>,
) -> CliResult<()> {
    let csv = experiments::fx_table(n, x_min, x_max, samples)?;
    match out {
        Some(path) => fs::write(path, csv).map_err(|e| CliError::Runtime(e.to_string()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn simulate_rdm(
    scenario_path: &PathBuf,
    waveform: &WaveformArgs,
    out: &PathBuf,
    gamma: Option<f64>,
) -> CliResult<()> {
    let text = fs::read_to_string(scenario_path)
        .map_err(|e| CliError::Config(format!("cannot read scenario: {e}")))?;
    let scenario = read_scenario_json(&text).map_err(|e| CliError::Config(e.to_string()))?;
    let chain = waveform.chain()?;
    let prepared = chain
        .prepare()
        .map_err(|e| CliError::Config(e.to_string()))?;
    if prepared.transmit.len() != scenario.n as usize {
        return Err(CliError::Config(format!(
            "waveform length {} does not match scenario N {}",
            prepared.transmit.len(),
            scenario.n
        )));
    }
    fs::create_dir_all(out).map_err(|e| CliError::Runtime(e.to_string()))?;
    let profiles: Vec<_> = (0..scenario.k)
        .map(|k| {
            let echo = synthesize_echo(&scenario, &prepared.transmit, k)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            prepared
                .receive(&echo)
                .map_err(|e| CliError::Runtime(e.to_string()))
        })
        .collect::<CliResult<_>>()?;
    let rdm =
        compute_rdm(&profiles, scenario.k0()).map_err(|e| CliError::Runtime(e.to_string()))?;

    let mut bin = Vec::new();
    write_rdm_binary(&rdm, &mut bin).map_err(|e| CliError::Runtime(e.to_string()))?;
    fs::write(out.join("rdm.bin"), bin).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut summary = Vec::new();
    write_rdm_summary_csv(&rdm, &mut summary).map_err(|e| CliError::Runtime(e.to_string()))?;
    fs::write(out.join("rdm_summary.csv"), summary)
        .map_err(|e| CliError::Runtime(e.to_string()))?;

    if let Some(gamma) = gamma {
        let window = DetectionWindow::for_scenario(&scenario);
        let report = detect(&rdm, gamma, &window);
        let scored = match_detections(
            &report,
            &scenario.targets,
            &scenario,
            prepared.match_velocity,
        );
        let text =
            serde_json::to_string_pretty(&scored).map_err(|e| CliError::Runtime(e.to_string()))?;
        fs::write(out.join("detections.json"), text)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    println!(
        "rdm: {} lags x {} bins -> {}",
        rdm.n_lags,
        rdm.k0,
        out.display()
    );
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Design { what } => match what {
            DesignCommand::Zc {
                n,
                physical,
                report,
            } => design_zc(n, &physical, report.as_ref()),
            DesignCommand::Cazac {
                r,
                m,
                physical,
                grid_csv,
                report,
            } => design_cazac(r, m, &physical, grid_csv.as_ref(), report.as_ref()),
        },
        Command::Analyze { what } => match what {
            AnalyzeCommand::Pslr {
                waveform,
                physical,
                tau,
                u_mps,
                snr_db,
                seed,
                profile_csv,
            } => analyze_pslr(
                &waveform,
                &physical,
                tau,
                u_mps,
                snr_db,
                seed,
                profile_csv.as_ref(),
            ),
            AnalyzeCommand::Fx {
                n,
                x_min,
                x_max,
                samples,
                out,
            } => analyze_fx(n, x_min, x_max, samples, out.as_ref()),
        },
        Command::Simulate { what } => match what {
            SimulateCommand::Rdm {
                scenario,
                waveform,
                out,
                gamma,
            } => simulate_rdm(&scenario, &waveform, &out, gamma),
        },
        Command::Experiment { what } => match what {
            ExperimentCommand::FeasibleRegion(args) => experiments::run_feasible_region(&args),
            ExperimentCommand::CazacPslr(args) => experiments::run_cazac_pslr(&args),
            ExperimentCommand::PslrDoppler(args) => experiments::run_pslr_vs_doppler(&args),
            ExperimentCommand::Roc(args) => experiments::run_roc(&args),
            ExperimentCommand::CazacRoc(args) => experiments::run_cazac_roc(&args),
        },
        Command::Plot(args) => {
            let csv = fs::read_to_string(&args.input)
                .map_err(|e| CliError::Config(format!("cannot read table: {e}")))?;
            let svg = plot::render_svg(&csv, args.style, &args.title)
                .map_err(|e| CliError::Config(e.0))?;
            fs::write(&args.output, svg).map_err(|e| CliError::Runtime(e.to_string()))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
