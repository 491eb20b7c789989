//! Doppler-corrupted circular correlation: numerical paths, the exact
//! closed forms for ZC sequences, the sidelobe-permutation table, PSLR
//! measurement, and the correlation upper bound for unified CAZACs.
//!
//! Sign convention: with the echo model y[n] = s[n-tau] * exp(+j*2*pi*n*v)
//! and the profile r[n] = sum_i y[i] * conj(s[i-n]), the per-lag magnitude
//! is exactly dirichlet(p*(n-tau) - v*N). The worst-case design evaluation
//! therefore applies the receding-target sign (-v_bar), for which the
//! strongest in-window sidelobe sits at p + v_bar*N; that is the argument
//! the PSLR closed form uses.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::arith::{centered_mod_f64, centered_mod_i64, gcd};
use crate::error::{Error, Result};
use crate::fft;
use crate::sequence::{ComplexSequence, ZcParams};

/// Circular correlation output indexed by lag.
#[derive(Debug, Clone)]
pub struct RangeProfile {
    pub values: Vec<Complex64>,
    pub magnitudes: Vec<f64>,
    /// Argmax of the magnitudes; ties resolve to the smallest lag.
    pub peak_index: usize,
}

impl RangeProfile {
    pub fn from_values(values: Vec<Complex64>) -> Self {
        let magnitudes: Vec<f64> = values.iter().map(|v| v.norm()).collect();
        let mut peak_index = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, &m) in magnitudes.iter().enumerate() {
            if m > best {
                best = m;
                peak_index = i;
            }
        }
        Self {
            values,
            magnitudes,
            peak_index,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Lag window of interest: the open interval (0, n_max) of lags taken
/// relative to the profile peak.
#[derive(Debug, Clone, Copy)]
pub struct RoI {
    pub n_max: f64,
}

impl RoI {
    pub fn new(n_max: f64) -> Self {
        Self { n_max }
    }

    /// Number of sidelobe lags in the window: the integers 0 < n < n_max.
    pub fn lag_count(&self) -> usize {
        if self.n_max <= 1.0 {
            0
        } else {
            (self.n_max.ceil() as usize).saturating_sub(1)
        }
    }
}

/// PSLR measurement. Perfect-autocorrelation profiles saturate at the
/// capped sentinel instead of dividing by zero.
#[derive(Debug, Clone, Copy)]
pub struct Pslr {
    pub ratio: f64,
    pub saturated: bool,
    pub peak_magnitude: f64,
    pub max_sidelobe: f64,
}

pub const PSLR_SATURATION: f64 = 1e15;

/// Sidelobes below this fraction of the peak count as numerically zero;
/// the ratio then saturates instead of reporting round-off noise.
const SATURATION_FLOOR: f64 = 1e-9;

impl Pslr {
    pub fn db(&self) -> f64 {
        crate::arith::amplitude_db(self.ratio)
    }
}

/// Delays a sequence circularly and applies a per-sample Doppler rotation:
/// out[n] = gain * seq[<n - tau> mod N] * exp(j*2*pi*n*v).
pub fn apply_doppler_delay(
    seq: &ComplexSequence,
    tau: usize,
    v: f64,
    gain: Complex64,
) -> Result<ComplexSequence> {
    let n = seq.len();
    if tau >= n {
        return Err(Error::DelayOutOfRange { tau: tau as i64, n });
    }
    let samples = (0..n)
        .map(|i| {
            let src = (i + n - tau) % n;
            gain * seq.samples[src] * Complex64::from_polar(1.0, 2.0 * PI * i as f64 * v)
        })
        .collect();
    Ok(ComplexSequence::from_samples(samples))
}

/// Circular cross-correlation r[n] = sum_i received[i]*conj(reference[<i-n>]),
/// computed with the conjugate-spectrum product. This is the default path.
pub fn circular_xcorr(
    received: &ComplexSequence,
    reference: &ComplexSequence,
) -> Result<RangeProfile> {
    if received.len() != reference.len() {
        return Err(Error::LengthMismatch {
            left: received.len(),
            right: reference.len(),
        });
    }
    let mut a = received.samples.clone();
    let mut b = reference.samples.clone();
    fft::forward(&mut a);
    fft::forward(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y.conj();
    }
    fft::inverse(&mut a);
    Ok(RangeProfile::from_values(a))
}

/// Direct O(N^2) evaluation of the same correlation. Kept as the
/// independent oracle for the transform path.
pub fn circular_xcorr_direct(
    received: &ComplexSequence,
    reference: &ComplexSequence,
) -> Result<RangeProfile> {
    if received.len() != reference.len() {
        return Err(Error::LengthMismatch {
            left: received.len(),
            right: reference.len(),
        });
    }
    let n = received.len();
    let values = (0..n)
        .map(|lag| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                acc += received.samples[i] * reference.samples[(i + n - lag) % n].conj();
            }
            acc
        })
        .collect();
    Ok(RangeProfile::from_values(values))
}

/// The periodic kernel ||sin(pi*x) / sin(pi*x/n)|| sampled by every ZC
/// correlation magnitude, with the limit value n as x -> 0.
pub fn dirichlet_magnitude(x: f64, n: f64) -> f64 {
    let x = centered_mod_f64(x, n);
    if x == 0.0 {
        return n;
    }
    ((PI * x).sin() / (PI * x / n).sin()).abs()
}

/// Exact per-lag magnitude of the correlation between a ZC sequence and its
/// delayed, Doppler-rotated echo:
/// ||r[n]|| = dirichlet(<p*(n - tau) - v*N>_N).
pub fn zc_xcorr_closed_form(params: ZcParams, tau: i64, v: f64, n: i64) -> f64 {
    let nn = params.n;
    let k = centered_mod_i64(
        ((params.p as i128 * (n - tau) as i128).rem_euclid(nn as i128)) as i64,
        nn,
    );
    let x = k as f64 - v * nn as f64;
    dirichlet_magnitude(x, nn as f64)
}

/// Sidelobe-position permutation: table[k] = |<p*k>_N| for k = 0..(N-1)/2.
///
/// Over a full period the centered residues <p*k> cover every value in
/// [-(N-1)/2, (N-1)/2] exactly once; the table is the |.|-folded half.
pub fn residue_map(n: u64, p: u64) -> Result<Vec<u64>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    let g = gcd(p, n);
    if g != 1 {
        return Err(Error::NotCoprime { a: p, b: n, g });
    }
    let half = (n - 1) / 2;
    let mut table = Vec::with_capacity(half as usize + 1);
    for k in 0..=half {
        let r = centered_mod_i64(((p as i128 * k as i128) % n as i128) as i64, n);
        table.push(r.unsigned_abs());
    }
    Ok(table)
}

/// Peak-to-max-sidelobe ratio over the window of lags after the peak.
pub fn pslr(profile: &RangeProfile, roi: RoI) -> Result<Pslr> {
    let n = profile.len();
    if roi.n_max > n as f64 {
        return Err(Error::EmptyRoi(roi.n_max));
    }
    let lags = roi.lag_count();
    if lags == 0 {
        return Err(Error::EmptyRoi(roi.n_max));
    }
    let peak_magnitude = profile.magnitudes[profile.peak_index];
    let mut max_sidelobe = 0.0f64;
    for offset in 1..=lags {
        let lag = (profile.peak_index + offset) % n;
        max_sidelobe = max_sidelobe.max(profile.magnitudes[lag]);
    }
    if max_sidelobe <= peak_magnitude * SATURATION_FLOOR {
        return Ok(Pslr {
            ratio: PSLR_SATURATION,
            saturated: true,
            peak_magnitude,
            max_sidelobe,
        });
    }
    Ok(Pslr {
        ratio: peak_magnitude / max_sidelobe,
        saturated: false,
        peak_magnitude,
        max_sidelobe,
    })
}

/// Exact worst-case PSLR of a ZC root inside the lag set
/// S_p = {n : 0 < n - tau < 2*floor((N-1)/(2p))}:
/// ||sin((pi/N)*(p + v_max*N)) / sin(pi*v_max)||.
pub fn zc_pslr_closed_form(n: u64, p: u64, v_max: f64) -> Result<f64> {
    if v_max == 0.0 {
        return Err(Error::ZeroDoppler);
    }
    let vn = v_max * n as f64;
    if vn >= 1.0 {
        return Err(Error::DopplerAssumption(vn));
    }
    let num = (PI / n as f64 * (p as f64 + vn)).sin();
    let den = (PI * v_max).sin();
    Ok((num / den).abs())
}

/// Upper bound on the CAZAC cross-correlation magnitude at one lag:
/// the sum over cosets of ||sin(pi*x)/sin(pi*x/(rm))|| with
/// x(gamma) = <2*c_r*m*phi*(beta_tau - beta_n) + varphi(gamma_tau)
///             - varphi(gamma_n) + v*r*m^2>_rm.
pub fn cazac_xcorr_bound(
    r: u64,
    m: u64,
    phi: u64,
    varphi: &[u64],
    tau: i64,
    v: f64,
    n: i64,
) -> f64 {
    let rm = (r * m) as i64;
    let m_i = m as i64;
    // 2*c_r*m: c_r is 1 for odd r, 1/2 for even r.
    let two_cr_m = if r % 2 == 1 { 2 * m_i } else { m_i };
    let doppler = v * (r * m * m) as f64;
    let mut bound = 0.0;
    for gamma in 0..m_i {
        let gamma_tau = (gamma - tau).rem_euclid(m_i);
        let gamma_n = (gamma - n).rem_euclid(m_i);
        // beta_tau - beta_n = (n - tau + gamma_n - gamma_tau) / m, exact.
        let dbeta = (n - tau + gamma_n - gamma_tau) / m_i;
        let step = (two_cr_m * phi as i64 % rm * (dbeta % rm) % rm
            + varphi[gamma_tau as usize] as i64
            - varphi[gamma_n as usize] as i64)
            .rem_euclid(rm);
        let x = step as f64 + doppler;
        bound += dirichlet_magnitude(x, rm as f64);
    }
    bound
}

/// Writes a profile as CSV rows `lag,magnitude,magnitude_db`.
pub fn write_profile_csv<W: Write>(profile: &RangeProfile, mut w: W) -> Result<()> {
    writeln!(w, "lag,magnitude,magnitude_db")?;
    for (lag, &m) in profile.magnitudes.iter().enumerate() {
        writeln!(w, "{},{},{}", lag, m, crate::arith::amplitude_db(m))?;
    }
    Ok(())
}
