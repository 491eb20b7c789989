//! Scale presets. The desk scale shrinks the sequence and repetition counts
//! while preserving the normalized-Doppler product v_bar*N and the
//! RoI-to-profile ratio, so ordering properties survive at CI runtimes.

use cazac_core::design::SensingRequirements;

/// Reference operating point the ratios are anchored to: 240 GHz carrier,
/// 0.2 ns sampling, 50 m sensing range, 20 m/s speed limit, N = 35537.
pub const REF_FC_HZ: f64 = 240e9;
pub const REF_TS_S: f64 = 0.2e-9;
pub const REF_C_MPS: f64 = 3.0e8;
const REF_N: f64 = 35537.0;
const REF_VBAR_N: f64 = 6.4e-6 * REF_N;
const REF_ROI_RATIO: f64 = (5000.0 / 3.0) / REF_N;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Desk,
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub n: u64,
    pub k: u32,
    pub omega: u32,
    pub r: u64,
    pub m: u64,
    pub trials: u32,
    pub snr_db: f64,
    pub targets: usize,
    pub n_random: usize,
}

impl Preset {
    pub fn for_scale(scale: Scale) -> Self {
        match scale {
            Scale::Desk => Preset {
                n: 1019,
                k: 16,
                omega: 4,
                r: 101,
                m: 3,
                trials: 20,
                snr_db: -5.0,
                targets: 4,
                n_random: 100,
            },
            Scale::Full => Preset {
                n: 35537,
                k: 100,
                omega: 4,
                r: 1009,
                m: 3,
                trials: 50,
                snr_db: -5.0,
                targets: 4,
                n_random: 10_000,
            },
        }
    }
}

/// Requirements for a profile of length `n` holding v_bar*N and RoI/N at
/// the reference ratios. At n = 35537 this reproduces the reference point
/// exactly (u_max = 20 m/s, D_r = 50 m).
pub fn physical_for_length(n: u64) -> SensingRequirements {
    let v_bar = REF_VBAR_N / n as f64;
    let umax_mps = v_bar * REF_C_MPS / (2.0 * REF_FC_HZ * REF_TS_S);
    let dr_m = REF_ROI_RATIO * n as f64 * REF_C_MPS * REF_TS_S / 2.0;
    SensingRequirements {
        fc_hz: REF_FC_HZ,
        ts_s: REF_TS_S,
        dr_m,
        umax_mps,
        pr_linear: 1.0,
        c_mps: REF_C_MPS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cazac_core::design::{max_normalized_doppler, roi_lag_bound};

    #[test]
    fn reference_length_reproduces_reference_point() {
        let req = physical_for_length(35537);
        assert!((req.umax_mps - 20.0).abs() < 1e-9);
        assert!((req.dr_m - 50.0).abs() < 1e-9);
        assert!((max_normalized_doppler(&req) - 6.4e-6).abs() < 1e-18);
    }

    #[test]
    fn desk_length_preserves_ratios() {
        let desk = physical_for_length(1019);
        let vbar_n = max_normalized_doppler(&desk) * 1019.0;
        assert!((vbar_n - 6.4e-6 * 35537.0).abs() < 1e-12);
        let ratio = roi_lag_bound(&desk) / 1019.0;
        assert!((ratio - (5000.0 / 3.0) / 35537.0).abs() < 1e-12);
    }
}
