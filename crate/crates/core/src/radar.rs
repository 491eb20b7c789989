//! Multi-target sensing pipeline: echo synthesis over K repetitions,
//! range-Doppler map, hypothesis-test detection with a limited Doppler
//! search window, truth matching, and ROC sweeps.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{circular_xcorr, RangeProfile};
use crate::design::{max_normalized_doppler, roi_lag_bound, SensingRequirements};
use crate::error::{Error, Result};
use crate::fft;
use crate::sequence::{
    generate_cazac, generate_cazac_general, generate_dzc, generate_zc, CazacParams,
    ComplexSequence, ZcParams,
};

/// One reflector: relative distance, relative velocity, complex path gain.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub d_m: f64,
    pub u_mps: f64,
    #[serde(default = "gain_one")]
    pub gain_re: f64,
    #[serde(default)]
    pub gain_im: f64,
}

fn gain_one() -> f64 {
    1.0
}

impl Target {
    pub fn gain(&self) -> Complex64 {
        Complex64::new(self.gain_re, self.gain_im)
    }
}

fn default_omega() -> u32 {
    4
}

/// One simulation instance: target list, per-sample SNR, repetition count,
/// FFT factor, RNG seed, and the physical setup.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Free-form unit documentation carried in scenario files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<serde_json::Value>,
    pub targets: Vec<Target>,
    /// Receive SNR per complex sample in dB; omit for a noiseless run.
    #[serde(default)]
    pub snr_db: Option<f64>,
    pub n: u64,
    pub k: u32,
    #[serde(default = "default_omega")]
    pub omega: u32,
    pub seed: u64,
    pub physical: SensingRequirements,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.physical.validate()?;
        if self.n == 0 {
            return Err(Error::InvalidScenario("sequence length is zero".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidScenario("repetition count is zero".into()));
        }
        if self.omega == 0 {
            return Err(Error::InvalidScenario("FFT factor is zero".into()));
        }
        for (i, t) in self.targets.iter().enumerate() {
            if t.d_m < 0.0 {
                return Err(Error::InvalidScenario(format!("target {i} has d < 0")));
            }
            if t.u_mps.abs() > self.physical.umax_mps {
                return Err(Error::InvalidScenario(format!(
                    "target {i} exceeds the speed limit"
                )));
            }
        }
        Ok(())
    }

    /// Noise variance per complex sample: 10^(-snr_db/10) against the
    /// unit-power sequence.
    pub fn sigma2(&self) -> f64 {
        self.snr_db.map_or(0.0, |snr| 10f64.powf(-snr / 10.0))
    }

    pub fn k0(&self) -> usize {
        self.omega as usize * self.k as usize
    }

    /// Integer round-trip delay of a target, rounded to the nearest lag.
    pub fn target_delay(&self, t: &Target) -> usize {
        let lags = 2.0 * t.d_m / (self.physical.c_mps * self.physical.ts_s);
        (lags.round() as u64 % self.n) as usize
    }

    /// Normalized Doppler shift of a target.
    pub fn target_doppler(&self, t: &Target) -> f64 {
        2.0 * t.u_mps * self.physical.fc_hz * self.physical.ts_s / self.physical.c_mps
    }

    /// The unit documentation written into scenario files.
    pub fn standard_units() -> serde_json::Value {
        serde_json::json!({
            "d_m": "meters", "u_mps": "meters/second", "gain_re": "dimensionless",
            "gain_im": "dimensionless", "snr_db": "dB (power, per complex sample)",
            "fc_hz": "Hz", "ts_s": "seconds", "dr_m": "meters",
            "umax_mps": "meters/second", "pr_linear": "amplitude ratio",
            "c_mps": "meters/second"
        })
    }
}

// RNG stream layout: each trial owns a 2^32-wide stream block of the
// scenario's ChaCha key. Stream 0 of a block draws targets, stream 1+k the
// noise of repetition k, so any repetition regenerates independently.
fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const TRIAL_STRIDE: u64 = 1 << 32;

/// One circular complex Gaussian sample of variance `sigma2` (Box-Muller on
/// two uniforms, so sample n sits at a fixed generator position).
fn complex_gaussian<R: Rng>(rng: &mut R, sigma2: f64) -> Complex64 {
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    let radius = (-sigma2 * (1.0 - u1).ln()).sqrt();
    Complex64::from_polar(radius, 2.0 * PI * u2)
}

fn echo_for_trial(
    scenario: &Scenario,
    targets: &[Target],
    seq: &ComplexSequence,
    k: u32,
    trial: u64,
) -> Result<ComplexSequence> {
    let n = scenario.n as usize;
    if seq.len() != n {
        return Err(Error::LengthMismatch {
            left: seq.len(),
            right: n,
        });
    }
    let mut samples = vec![Complex64::new(0.0, 0.0); n];
    for t in targets {
        let tau = scenario.target_delay(t);
        let v = scenario.target_doppler(t);
        let h = t.gain();
        // The k*N term keeps Doppler phase continuous across repetitions;
        // that is what lets the slow-time DFT localize velocity.
        let base = k as f64 * n as f64 * v;
        for (i, out) in samples.iter_mut().enumerate() {
            let phase = 2.0 * PI * (base + i as f64 * v);
            *out += h * seq.samples[(i + n - tau) % n] * Complex64::from_polar(1.0, phase);
        }
    }
    let sigma2 = scenario.sigma2();
    if sigma2 > 0.0 {
        let mut rng = stream_rng(scenario.seed, trial * TRIAL_STRIDE + 1 + k as u64);
        for out in samples.iter_mut() {
            *out += complex_gaussian(&mut rng, sigma2);
        }
    }
    Ok(ComplexSequence::from_samples(samples))
}

/// Received echo of repetition k:
/// y_k[n] = sum_l h_l * seq[<n - tau_l>] * exp(j*2*pi*(k*N + n)*v_l) + w[n],
/// with w ~ CN(0, sigma^2) drawn from the (seed, k) noise stream.
pub fn synthesize_echo(
    scenario: &Scenario,
    seq: &ComplexSequence,
    k: u32,
) -> Result<ComplexSequence> {
    echo_for_trial(scenario, &scenario.targets, seq, k, 0)
}

/// Echo of repetition k inside trial `trial` of a Monte-Carlo sweep, with
/// the targets that trial drew. Reproduces any sweep repetition
/// independently.
pub fn synthesize_trial_echo(
    scenario: &Scenario,
    targets: &[Target],
    seq: &ComplexSequence,
    k: u32,
    trial: u64,
) -> Result<ComplexSequence> {
    echo_for_trial(scenario, targets, seq, k, trial)
}

/// The targets drawn by one sweep trial.
pub fn trial_targets(scenario: &Scenario, num_targets: usize, trial: u64) -> Vec<Target> {
    draw_targets(scenario, num_targets, trial)
}

/// Range-Doppler map: an N x K0 complex grid, lag-major.
#[derive(Debug, Clone)]
pub struct Rdm {
    pub n_lags: usize,
    pub k0: usize,
    values: Vec<Complex64>,
}

impl Rdm {
    pub fn value(&self, lag: usize, bin: usize) -> Complex64 {
        self.values[lag * self.k0 + bin]
    }

    pub fn power(&self, lag: usize, bin: usize) -> f64 {
        self.value(lag, bin).norm_sqr()
    }

    pub fn total_power(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Cell with the largest magnitude (smallest indices win ties).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0usize, 0usize);
        let mut best_power = f64::NEG_INFINITY;
        for lag in 0..self.n_lags {
            for bin in 0..self.k0 {
                let p = self.power(lag, bin);
                if p > best_power {
                    best_power = p;
                    best = (lag, bin);
                }
            }
        }
        best
    }

    /// Signed normalized Doppler of a bin: q/(N*K0) folded so bins above
    /// K0/2 map to negative shifts.
    pub fn bin_doppler(&self, bin: usize) -> f64 {
        let q = if bin > self.k0 / 2 {
            bin as f64 - self.k0 as f64
        } else {
            bin as f64
        };
        q / (self.n_lags as f64 * self.k0 as f64)
    }
}

/// E(n, q) = sum_{k<K} r_k[n] * exp(-j*2*pi*k*q/K0): the K-point DFT of
/// each lag's slow-time series, zero-padded to K0.
pub fn compute_rdm(profiles: &[RangeProfile], k0: usize) -> Result<Rdm> {
    let k = profiles.len();
    if k == 0 {
        return Err(Error::EmptyGrid);
    }
    if k0 < k {
        return Err(Error::FftSizeTooSmall { k0, k });
    }
    let n = profiles[0].len();
    for p in profiles {
        if p.len() != n {
            return Err(Error::LengthMismatch {
                left: p.len(),
                right: n,
            });
        }
    }
    let mut values = vec![Complex64::new(0.0, 0.0); n * k0];
    let mut buf = vec![Complex64::new(0.0, 0.0); k0];
    for lag in 0..n {
        for (slot, profile) in buf.iter_mut().zip(profiles) {
            *slot = profile.values[lag];
        }
        for slot in buf.iter_mut().skip(k) {
            *slot = Complex64::new(0.0, 0.0);
        }
        fft::forward(&mut buf);
        values[lag * k0..(lag + 1) * k0].copy_from_slice(&buf);
    }
    Ok(Rdm {
        n_lags: n,
        k0,
        values,
    })
}

/// Cell window the detector scans: lags 0..=max_lag and Doppler bins whose
/// folded shift stays within the search limit.
#[derive(Debug, Clone, Copy)]
pub struct DetectionWindow {
    pub max_lag: usize,
    pub v_limit: f64,
}

impl DetectionWindow {
    /// Window covering the sensing range and the speed limit of `scenario`,
    /// with half a Doppler bin of guard so boundary targets stay testable.
    pub fn for_scenario(scenario: &Scenario) -> Self {
        let half_bin = 0.5 / (scenario.n as f64 * scenario.k0() as f64);
        DetectionWindow {
            max_lag: roi_lag_bound(&scenario.physical).ceil() as usize,
            v_limit: max_normalized_doppler(&scenario.physical) + half_bin,
        }
    }
}

/// One cell that fired the hypothesis test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Detection {
    pub lag: usize,
    pub bin: usize,
    pub statistic: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DetectionReport {
    pub detections: Vec<Detection>,
    pub matched_targets: usize,
    pub false_cells: usize,
    pub cells_tested: usize,
}

/// Hypothesis test over the window: a cell fires when ||E||^2/theta > gamma
/// with theta the grid-average power excluding the cell, computed in O(1)
/// from the precomputed total.
pub fn detect(rdm: &Rdm, gamma: f64, window: &DetectionWindow) -> DetectionReport {
    let total = rdm.total_power();
    let denom = (rdm.n_lags * rdm.k0 - 1) as f64;
    let max_lag = window.max_lag.min(rdm.n_lags - 1);
    let mut detections = Vec::new();
    let mut cells_tested = 0usize;
    for lag in 0..=max_lag {
        for bin in 0..rdm.k0 {
            if rdm.bin_doppler(bin).abs() > window.v_limit {
                continue;
            }
            cells_tested += 1;
            let e2 = rdm.power(lag, bin);
            let theta = (total - e2) / denom;
            let statistic = e2 / theta;
            if statistic > gamma {
                detections.push(Detection {
                    lag,
                    bin,
                    statistic,
                });
            }
        }
    }
    DetectionReport {
        detections,
        matched_targets: 0,
        false_cells: 0,
        cells_tested,
    }
}

/// Estimated distance of a lag cell: n*c*T_s/2.
pub fn cell_distance(scenario: &Scenario, lag: usize) -> f64 {
    lag as f64 * scenario.physical.c_mps * scenario.physical.ts_s / 2.0
}

/// Estimated velocity of a Doppler bin: v(q)*c/(2*f_c*T_s).
pub fn cell_velocity(scenario: &Scenario, rdm_bin_doppler: f64) -> f64 {
    rdm_bin_doppler * scenario.physical.c_mps
        / (2.0 * scenario.physical.fc_hz * scenario.physical.ts_s)
}

/// Permissible distance error: half a lag, c*T_s/4.
pub fn distance_tolerance(scenario: &Scenario) -> f64 {
    scenario.physical.c_mps * scenario.physical.ts_s / 4.0
}

/// Permissible velocity error: half a Doppler bin, c/(4*N*K0*T_s*f_c).
pub fn velocity_tolerance(scenario: &Scenario) -> f64 {
    scenario.physical.c_mps
        / (4.0
            * scenario.n as f64
            * scenario.k0() as f64
            * scenario.physical.ts_s
            * scenario.physical.fc_hz)
}

/// Velocity half-width of one slow-time resolution cell,
/// c/(2*N*K*T_s*f_c). The zero-padded DFT oversamples a K-sample window,
/// so a peak's mainlobe spans K0/K bins; cells inside it belong to the
/// peak even when they miss the estimation tolerance.
pub fn velocity_resolution(scenario: &Scenario) -> f64 {
    scenario.physical.c_mps
        / (2.0
            * scenario.n as f64
            * scenario.k as f64
            * scenario.physical.ts_s
            * scenario.physical.fc_hz)
}

/// Scores detections against the truth. A cell belongs to a target when it
/// sits inside that target's resolution cell: distance within c*T_s/4 and
/// (for chains that estimate velocity) velocity inside the slow-time
/// mainlobe. The zero-padded grid oversamples each peak, so the resolution
/// window, not the finer estimation tolerance, decides ownership. Each
/// target counts once; cells owned by nothing count as false cells.
pub fn match_detections(
    report: &DetectionReport,
    truth: &[Target],
    scenario: &Scenario,
    match_velocity: bool,
) -> DetectionReport {
    let k0 = scenario.k0();
    let tol_d = distance_tolerance(scenario);
    let res_u = velocity_resolution(scenario);
    let mut hit = vec![false; truth.len()];
    let mut false_cells = 0usize;
    for det in &report.detections {
        let d_est = cell_distance(scenario, det.lag);
        let q = if det.bin > k0 / 2 {
            det.bin as f64 - k0 as f64
        } else {
            det.bin as f64
        };
        let u_est = cell_velocity(scenario, q / (scenario.n as f64 * k0 as f64));
        let mut matched = false;
        for (i, t) in truth.iter().enumerate() {
            let d_ok = (d_est - t.d_m).abs() < tol_d;
            let u_ok = !match_velocity || (u_est - t.u_mps).abs() < res_u;
            if d_ok && u_ok {
                hit[i] = true;
                matched = true;
            }
        }
        if !matched {
            false_cells += 1;
        }
    }
    DetectionReport {
        detections: report.detections.clone(),
        matched_targets: hit.iter().filter(|&&h| h).count(),
        false_cells,
        cells_tested: report.cells_tested,
    }
}

/// Differential receive chain: d[n] = y[n]*conj(y[<n-1>]), then circular
/// correlation against the base ZC sequence. Constant Doppler cancels in
/// the decode, so the peak stays at the true delay for any v.
pub fn dzc_receive_chain(received: &ComplexSequence, base: ZcParams) -> Result<RangeProfile> {
    let decoded = differential_decode(received);
    let reference = generate_zc(base);
    circular_xcorr(&decoded, &reference)
}

/// y[n]*conj(y[<n-1>]) with circular wrap inside the repetition.
pub fn differential_decode(received: &ComplexSequence) -> ComplexSequence {
    let n = received.len();
    let samples = (0..n)
        .map(|i| received.samples[i] * received.samples[(i + n - 1) % n].conj())
        .collect();
    ComplexSequence::from_samples(samples)
}

/// A transmit waveform plus its receive chain.
#[derive(Debug, Clone)]
pub enum WaveformChain {
    Zc(ZcParams),
    Dzc(ZcParams),
    Cazac(CazacParams),
    /// Unified-construction CAZAC with an explicit phase-offset table.
    CazacGeneral {
        r: u64,
        m: u64,
        phi: u64,
        varphi: Vec<u64>,
    },
}

impl WaveformChain {
    pub fn label(&self) -> String {
        match self {
            WaveformChain::Zc(p) => format!("zc_p{}", p.p),
            WaveformChain::Dzc(p) => format!("dzc_p{}", p.p),
            WaveformChain::Cazac(c) => format!("cazac_phi{}_a{}", c.phi, c.a),
            WaveformChain::CazacGeneral { phi, .. } => format!("cazac_general_phi{phi}"),
        }
    }

    /// Velocity is unobservable after differential decoding (the slow-time
    /// Doppler phase cancels), so DZC detections match on range only.
    pub fn estimates_velocity(&self) -> bool {
        !matches!(self, WaveformChain::Dzc(_))
    }

    pub fn prepare(&self) -> Result<PreparedWaveform> {
        let (transmit, reference, differential) = match self {
            WaveformChain::Zc(p) => {
                let s = generate_zc(*p);
                (s.clone(), s, false)
            }
            WaveformChain::Dzc(p) => (generate_dzc(*p), generate_zc(*p), true),
            WaveformChain::Cazac(c) => {
                let z = generate_cazac(c);
                (z.clone(), z, false)
            }
            WaveformChain::CazacGeneral { r, m, phi, varphi } => {
                let psi = vec![0.0; *m as usize];
                let z = generate_cazac_general(*r, *m, *phi, varphi, &psi)?;
                (z.clone(), z, false)
            }
        };
        Ok(PreparedWaveform {
            transmit,
            reference,
            differential,
            match_velocity: self.estimates_velocity(),
        })
    }
}

/// Cached transmit/reference sequences for one chain.
#[derive(Debug, Clone)]
pub struct PreparedWaveform {
    pub transmit: ComplexSequence,
    pub reference: ComplexSequence,
    pub differential: bool,
    pub match_velocity: bool,
}

impl PreparedWaveform {
    pub fn receive(&self, echo: &ComplexSequence) -> Result<RangeProfile> {
        if self.differential {
            let decoded = differential_decode(echo);
            circular_xcorr(&decoded, &self.reference)
        } else {
            circular_xcorr(echo, &self.reference)
        }
    }
}

/// One swept operating point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RocPoint {
    pub gamma: f64,
    pub false_alarm_rate: f64,
    pub detection_rate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub trials: u32,
    pub seed: u64,
    pub cells_tested: usize,
}

/// Sweeps the detection threshold over Monte-Carlo trials. Each trial draws
/// targets uniformly (d in [0, D_r], u in [-u_max, u_max], unit gain with
/// uniform phase) from its own stream block, synthesizes K echoes, builds
/// the RDM once, and scores every threshold against it. Rates average over
/// trials; identical seeds give bit-identical curves.
pub fn roc_sweep(
    scenario: &Scenario,
    num_targets: usize,
    waveform: &WaveformChain,
    gamma_grid: &[f64],
    trials: u32,
) -> Result<RocCurve> {
    scenario.validate()?;
    if trials == 0 {
        return Err(Error::InvalidScenario("trials must be >= 1".into()));
    }
    if gamma_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if gamma_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidScenario(
            "threshold grid must be strictly increasing".into(),
        ));
    }
    let prepared = waveform.prepare()?;
    if prepared.transmit.len() != scenario.n as usize {
        return Err(Error::LengthMismatch {
            left: prepared.transmit.len(),
            right: scenario.n as usize,
        });
    }
    let window = DetectionWindow::for_scenario(scenario);
    let k0 = scenario.k0();

    // (matched, false) integer counts per threshold, one row per trial.
    let per_trial: Vec<(Vec<(u64, u64)>, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let targets = draw_targets(scenario, num_targets, trial);
            let profiles: Vec<RangeProfile> = (0..scenario.k)
                .map(|k| {
                    let echo = echo_for_trial(scenario, &targets, &prepared.transmit, k, trial)
                        .expect("validated scenario");
                    prepared.receive(&echo).expect("equal lengths")
                })
                .collect();
            let rdm = compute_rdm(&profiles, k0).expect("k0 >= k");
            let base = detect(&rdm, 0.0, &window);
            let mut counts = Vec::with_capacity(gamma_grid.len());
            for &gamma in gamma_grid {
                let filtered = DetectionReport {
                    detections: base
                        .detections
                        .iter()
                        .copied()
                        .filter(|d| d.statistic > gamma)
                        .collect(),
                    matched_targets: 0,
                    false_cells: 0,
                    cells_tested: base.cells_tested,
                };
                let scored =
                    match_detections(&filtered, &targets, scenario, prepared.match_velocity);
                counts.push((scored.matched_targets as u64, scored.false_cells as u64));
            }
            (counts, base.cells_tested)
        })
        .collect();

    let cells_tested = per_trial[0].1;
    let mut points = Vec::with_capacity(gamma_grid.len());
    for (i, &gamma) in gamma_grid.iter().enumerate() {
        let mut matched = 0u64;
        let mut false_cells = 0u64;
        for (counts, _) in &per_trial {
            matched += counts[i].0;
            false_cells += counts[i].1;
        }
        let denom_targets = (num_targets as u64 * trials as u64).max(1) as f64;
        let denom_cells = cells_tested as u64 * trials as u64;
        points.push(RocPoint {
            gamma,
            false_alarm_rate: false_cells as f64 / denom_cells as f64,
            detection_rate: matched as f64 / denom_targets,
        });
    }
    Ok(RocCurve {
        points,
        trials,
        seed: scenario.seed,
        cells_tested,
    })
}

fn draw_targets(scenario: &Scenario, num_targets: usize, trial: u64) -> Vec<Target> {
    let mut rng = stream_rng(scenario.seed, trial * TRIAL_STRIDE);
    (0..num_targets)
        .map(|_| {
            let d_m = rng.gen::<f64>() * scenario.physical.dr_m;
            let u_mps = (2.0 * rng.gen::<f64>() - 1.0) * scenario.physical.umax_mps;
            let phase = 2.0 * PI * rng.gen::<f64>();
            Target {
                d_m,
                u_mps,
                gain_re: phase.cos(),
                gain_im: phase.sin(),
            }
        })
        .collect()
}

const RDM_MAGIC: &[u8; 4] = b"RDM1";

/// Binary RDM snapshot: magic "RDM1", u32 N, u32 K0, then the lag-major
/// grid as little-endian complex doubles.
pub fn write_rdm_binary<W: Write>(rdm: &Rdm, mut w: W) -> Result<()> {
    w.write_all(RDM_MAGIC)?;
    w.write_all(&(rdm.n_lags as u32).to_le_bytes())?;
    w.write_all(&(rdm.k0 as u32).to_le_bytes())?;
    for v in &rdm.values {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

/// Per-lag magnitude summary of an RDM: the strongest Doppler bin per lag.
pub fn write_rdm_summary_csv<W: Write>(rdm: &Rdm, mut w: W) -> Result<()> {
    writeln!(w, "lag,peak_bin,peak_magnitude,peak_magnitude_db")?;
    for lag in 0..rdm.n_lags {
        let mut best_bin = 0usize;
        let mut best = f64::NEG_INFINITY;
        for bin in 0..rdm.k0 {
            let p = rdm.power(lag, bin);
            if p > best {
                best = p;
                best_bin = bin;
            }
        }
        let mag = best.sqrt();
        writeln!(
            w,
            "{},{},{},{}",
            lag,
            best_bin,
            mag,
            crate::arith::amplitude_db(mag)
        )?;
    }
    Ok(())
}

/// ROC CSV: one row per operating point, with the trial count and seed
/// echoed per row. The false-alarm rate is normalized per tested cell per
/// scan.
pub fn write_roc_csv<W: Write>(curve: &RocCurve, mut w: W) -> Result<()> {
    writeln!(w, "gamma,false_alarm_rate,detection_rate,trials,seed")?;
    for p in &curve.points {
        writeln!(
            w,
            "{},{},{},{},{}",
            p.gamma, p.false_alarm_rate, p.detection_rate, curve.trials, curve.seed
        )?;
    }
    Ok(())
}

pub fn read_scenario_json(text: &str) -> Result<Scenario> {
    let scenario: Scenario = serde_json::from_str(text)?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn write_scenario_json(scenario: &Scenario) -> Result<String> {
    let mut with_units = scenario.clone();
    if with_units.units.is_none() {
        with_units.units = Some(Scenario::standard_units());
    }
    Ok(serde_json::to_string_pretty(&with_units)?)
}
