//! Property-level invariants: the CAZAC flags across parameter families,
//! residue-system completeness, PSLR monotonicity, bound dominance, design
//! maximality, and simulator calibration.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cazac_core::arith::{centered_mod_i64, gcd, is_square_free};
use cazac_core::correlation::{
    apply_doppler_delay, cazac_xcorr_bound, circular_xcorr, residue_map, zc_pslr_closed_form, RoI,
};
use cazac_core::design::{
    cazac_search_scores, max_normalized_doppler, measure_worst_case_pslr, residue_split,
    roi_lag_bound, zc_best_root, zc_feasible_range, DesignParameter, SensingRequirements,
};
use cazac_core::radar::{synthesize_echo, Scenario, Target};
use cazac_core::sequence::{generate_cazac, generate_zc, verify_cazac, CazacParams, ZcParams};

fn coprime_to(n: u64, candidate: u64) -> u64 {
    // Walk upward until coprime; n > 1 guarantees termination at or below n-1.
    let mut p = candidate.clamp(1, n - 1);
    while gcd(p, n) != 1 {
        p = p % (n - 1) + 1;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_valid_zc_is_cazac(half in 1u64..1000, p_raw in 1u64..2000) {
        let n = 2 * half + 1;
        let p = coprime_to(n, p_raw);
        let seq = generate_zc(ZcParams::new(n, p).unwrap());
        let report = verify_cazac(&seq, 1e-9).unwrap();
        prop_assert!(report.constant_amplitude, "N={n} p={p}: {report:?}");
        prop_assert!(report.zero_autocorrelation, "N={n} p={p}: {report:?}");
    }

    #[test]
    fn any_valid_cazac_params_give_cazac(
        r in 2u64..40,
        m_idx in 0usize..5,
        phi_raw in 1u64..40,
        a_frac in 0.0f64..1.0,
        psi_seed in 0u64..u64::MAX,
    ) {
        let m = [1u64, 2, 3, 5, 6][m_idx];
        let phi = coprime_to(r, phi_raw);
        let a = (a_frac * (r / m) as f64).floor() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(psi_seed);
        let psi: Vec<f64> = (0..m).map(|_| rng.gen_range(-20.0..20.0)).collect();
        let params = CazacParams::with_psi(r, m, phi, a, psi).unwrap();
        let seq = generate_cazac(&params);
        prop_assert_eq!(seq.len() as u64, r * m * m);
        let report = verify_cazac(&seq, 1e-9).unwrap();
        prop_assert!(
            report.constant_amplitude && report.zero_autocorrelation,
            "r={} m={} phi={} a={}: {:?}", r, m, phi, a, report
        );
    }

    #[test]
    fn residue_map_is_complete_residue_system(half in 3u64..800, p_raw in 1u64..1600) {
        let n = 2 * half + 1;
        let p = coprime_to(n, p_raw);
        let table = residue_map(n, p).unwrap();
        prop_assert_eq!(table.len() as u64, half + 1);
        // Over a full period the centered residues hit every value once.
        let mut counts = vec![0u32; n as usize];
        for k in 0..n {
            let r = centered_mod_i64((p as i128 * k as i128 % n as i128) as i64, n);
            counts[(r + half as i64) as usize] += 1;
        }
        prop_assert!(counts.iter().all(|&c| c == 1));
        // And the |.|-folded half-table matches the direct residues.
        for (k, &value) in table.iter().enumerate() {
            let direct = centered_mod_i64((p as i128 * k as i128 % n as i128) as i64, n)
                .unsigned_abs();
            prop_assert_eq!(value, direct);
        }
    }
}

#[test]
fn full_small_grid_of_cazac_params_with_random_psi() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut checked = 0usize;
    for &r in &[5u64, 7, 9, 12] {
        for &m in &[1u64, 2, 3] {
            for phi in (1..r).filter(|&phi| gcd(phi, r) == 1) {
                for a in 0..=(r / m) {
                    let psi: Vec<f64> = (0..m).map(|_| rng.gen_range(-10.0..10.0)).collect();
                    let params = CazacParams::with_psi(r, m, phi, a, psi).unwrap();
                    let report = verify_cazac(&generate_cazac(&params), 1e-9).unwrap();
                    assert!(
                        report.constant_amplitude && report.zero_autocorrelation,
                        "r={r} m={m} phi={phi} a={a}: {report:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 300, "grid unexpectedly small: {checked}");
}

#[test]
fn degenerate_cazac_matches_a_zc_root() {
    // With m = 1 and prime r = N the construction is a quadratic chirp
    // whose correlation profile coincides with the ZC root <-2*phi> mod N.
    let roi = RoI::new(12.0);
    for &(n, phi) in &[(101u64, 7u64), (101, 30), (211, 5)] {
        let params = CazacParams::new(n, 1, phi, 0).unwrap();
        let z = generate_cazac(&params);
        let report = verify_cazac(&z, 1e-9).unwrap();
        assert!(report.constant_amplitude && report.zero_autocorrelation);

        let p_equiv = (n - (2 * phi) % n) % n;
        let zc = generate_zc(ZcParams::new(n, p_equiv).unwrap());
        let v_bar = 0.3 / n as f64;
        let pslr_z = measure_worst_case_pslr(&z, v_bar, roi).unwrap().ratio;
        let pslr_s = measure_worst_case_pslr(&zc, v_bar, roi).unwrap().ratio;
        let rel = (pslr_z - pslr_s).abs() / pslr_s;
        assert!(
            rel < 1e-9,
            "N={n} phi={phi} -> p={p_equiv}: {pslr_z} vs {pslr_s}"
        );
    }
}

#[test]
fn doppler_attenuated_peak_matches_kernel_value() {
    // At the reference shift the main peak drops to |sin(pi*vN)/sin(pi*v)|,
    // about 0.9176*N.
    let n = 35537u64;
    let v_bar = 6.4e-6;
    let seq = generate_zc(ZcParams::new(n, 21).unwrap());
    let echo = apply_doppler_delay(&seq, 0, -v_bar, Complex64::new(1.0, 0.0)).unwrap();
    let profile = circular_xcorr(&echo, &seq).unwrap();
    let expected = ((std::f64::consts::PI * v_bar * n as f64).sin()
        / (std::f64::consts::PI * v_bar).sin())
    .abs();
    assert_eq!(profile.peak_index, 0);
    assert!((profile.magnitudes[0] - expected).abs() < 1e-9 * n as f64);
    assert!((expected / n as f64 - 0.917).abs() < 1e-3, "{expected}");
}

#[test]
fn dzc_chain_pslr_is_flat_across_doppler() {
    // The differential chain's PSLR is set by noise amplification, not by
    // the Doppler shift, so the curve stays within a narrow band.
    let n = 1019u64;
    let base = ZcParams::new(n, 1).unwrap();
    let chain = cazac_core::radar::WaveformChain::Dzc(base);
    let prepared = chain.prepare().unwrap();
    let umax = 697.5;
    let physical = SensingRequirements {
        fc_hz: 240e9,
        ts_s: 0.2e-9,
        dr_m: 1.434,
        umax_mps: umax,
        pr_linear: 1.0,
        c_mps: 3.0e8,
    };
    let roi = RoI::new(roi_lag_bound(&physical));
    let trials = 20u32;
    let mut curve = Vec::new();
    for ui in 0..=10u64 {
        let u = umax * ui as f64 / 10.0;
        let mut db_sum = 0.0;
        for trial in 0..trials {
            let scenario = Scenario {
                units: None,
                targets: vec![Target {
                    d_m: 0.0,
                    u_mps: u,
                    gain_re: 1.0,
                    gain_im: 0.0,
                }],
                snr_db: Some(-5.0),
                n,
                k: 1,
                omega: 1,
                seed: 0xD2CF ^ (ui << 32 | trial as u64),
                physical,
            };
            let echo = synthesize_echo(&scenario, &prepared.transmit, 0).unwrap();
            let profile = prepared.receive(&echo).unwrap();
            db_sum += cazac_core::arith::amplitude_db(
                cazac_core::correlation::pslr(&profile, roi).unwrap().ratio,
            );
        }
        curve.push(db_sum / trials as f64);
    }
    let max = curve.iter().cloned().fold(f64::MIN, f64::max);
    let min = curve.iter().cloned().fold(f64::MAX, f64::min);
    assert!(max - min < 3.0, "DZC curve spans {:.2} dB: {curve:?}", max - min);
}

#[test]
fn plain_root_degrades_below_20db_under_worst_doppler() {
    // Root 1 keeps every sidelobe adjacent to the peak, so the worst-case
    // Doppler leaves the whole profile under 20 dB PSLR.
    let n = 35537u64;
    let seq = generate_zc(ZcParams::new(n, 1).unwrap());
    let v_bar = 6.4e-6;
    let full_profile = RoI::new(n as f64);
    let measured = measure_worst_case_pslr(&seq, v_bar, full_profile).unwrap();
    let db = cazac_core::arith::amplitude_db(measured.ratio);
    assert!(db < 20.0, "{db} dB");
    assert!(db > 5.0, "{db} dB");
}

#[test]
fn zc_pslr_closed_form_increases_with_root() {
    let n = 4001u64;
    let v_bar = 0.4 / n as f64;
    let mut previous = 0.0;
    for p in 1..300u64 {
        if gcd(p, n) != 1 {
            continue;
        }
        let value = zc_pslr_closed_form(n, p, v_bar).unwrap();
        assert!(value > previous, "p={p}: {value} <= {previous}");
        previous = value;
    }
}

#[test]
fn correlation_bound_dominates_brute_force_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0);
    for draw in 0..100 {
        let r = rng.gen_range(2..20u64);
        let m = *[1u64, 2, 3]
            .iter()
            .filter(|&&m| is_square_free(m))
            .nth(rng.gen_range(0..3))
            .unwrap();
        let phi = coprime_to(r, rng.gen_range(1..40));
        let a = rng.gen_range(0..=(r / m));
        let params = CazacParams::new(r, m, phi, a).unwrap();
        let z = generate_cazac(&params);
        let n_len = z.len();
        let tau = rng.gen_range(0..n_len);
        let vn: f64 = rng.gen_range(-0.99..0.99);
        let v = vn / n_len as f64;
        let echo = apply_doppler_delay(&z, tau, v, Complex64::new(1.0, 0.0)).unwrap();
        let profile = circular_xcorr(&echo, &z).unwrap();
        let varphi = params.varphi_table();
        let lag = rng.gen_range(0..n_len) as i64;
        let bound = cazac_xcorr_bound(r, m, phi, &varphi, tau as i64, v, lag);
        let brute = profile.magnitudes[lag as usize];
        assert!(
            bound + 1e-9 * n_len as f64 >= brute,
            "draw {draw}: r={r} m={m} phi={phi} a={a} tau={tau} vN={vn} lag={lag}: bound {bound} < {brute}"
        );
    }
}

#[test]
fn best_root_is_maximal_over_feasible_set() {
    let req = SensingRequirements {
        fc_hz: 240e9,
        ts_s: 0.2e-9,
        dr_m: 1.2,
        umax_mps: 500.0,
        pr_linear: cazac_core::arith::amplitude_from_db(10.0),
        c_mps: 3.0e8,
    };
    let n = 1019u64;
    let best = zc_best_root(n, &req).unwrap();
    let p_best = match best.parameter {
        Some(DesignParameter::Root { p }) => p,
        _ => panic!("feasible setup"),
    };
    let v_bar = max_normalized_doppler(&req);
    let range = zc_feasible_range(n, &req).unwrap();
    assert!(range.roots.contains(&p_best));
    let best_pslr = zc_pslr_closed_form(n, p_best, v_bar).unwrap();
    for &p in &range.roots {
        let other = zc_pslr_closed_form(n, p, v_bar).unwrap();
        assert!(
            best_pslr >= other,
            "p={p} beats the selected root: {other} > {best_pslr}"
        );
    }
    // Self-consistent floor identity at the accepted root.
    let (_, b) = residue_split(n, p_best);
    let floor_value =
        ((n - 1 - 2 * b) as f64 * req.c_mps * req.ts_s / (2.0 * req.dr_m)).floor() as u64;
    assert_eq!(p_best, floor_value);
}

#[test]
fn cazac_search_is_deterministic_across_runs() {
    let req = SensingRequirements {
        fc_hz: 240e9,
        ts_s: 0.2e-9,
        dr_m: 0.5,
        umax_mps: 600.0,
        pr_linear: 1.0,
        c_mps: 3.0e8,
    };
    let (first, scores_first) = cazac_search_scores(29, 2, &req).unwrap();
    for _ in 0..3 {
        let (again, scores_again) = cazac_search_scores(29, 2, &req).unwrap();
        assert_eq!(first.parameter, again.parameter);
        assert_eq!(first.achieved_pslr.to_bits(), again.achieved_pslr.to_bits());
        for (a, b) in scores_first.iter().zip(&scores_again) {
            assert_eq!(a.pslr.to_bits(), b.pslr.to_bits());
        }
    }
}

#[test]
fn search_result_beats_random_members_of_its_family() {
    let req = SensingRequirements {
        fc_hz: 240e9,
        ts_s: 0.2e-9,
        dr_m: 0.5,
        umax_mps: 600.0,
        pr_linear: 1.0,
        c_mps: 3.0e8,
    };
    let (result, scores) = cazac_search_scores(23, 2, &req).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xFA);
    for _ in 0..100 {
        let pick = scores[rng.gen_range(0..scores.len())];
        assert!(result.achieved_pslr >= pick.pslr);
    }
}

#[test]
fn synthesized_noise_power_matches_sigma2_over_ten_million_samples() {
    let scenario = Scenario {
        units: None,
        targets: Vec::new(),
        snr_db: Some(-5.0),
        n: 35537,
        k: 300,
        omega: 1,
        seed: 99,
        physical: SensingRequirements {
            fc_hz: 240e9,
            ts_s: 0.2e-9,
            dr_m: 50.0,
            umax_mps: 20.0,
            pr_linear: 1.0,
            c_mps: 3.0e8,
        },
    };
    let sigma2 = scenario.sigma2();
    let seq = generate_zc(ZcParams::new(35537, 21).unwrap());
    let mut sum = 0.0;
    let mut count = 0usize;
    for k in 0..282 {
        let echo = synthesize_echo(&scenario, &seq, k).unwrap();
        sum += echo.samples.iter().map(|v| v.norm_sqr()).sum::<f64>();
        count += echo.len();
    }
    assert!(count > 10_000_000);
    let mean = sum / count as f64;
    assert!(
        (mean / sigma2 - 1.0).abs() < 0.01,
        "measured {mean} vs sigma2 {sigma2} over {count} samples"
    );
}

#[test]
fn feasible_range_upper_endpoint_ignores_speed_limit() {
    let n = 1019u64;
    let mut endpoints = Vec::new();
    for umax in [200.0, 400.0, 600.0] {
        let req = SensingRequirements {
            fc_hz: 240e9,
            ts_s: 0.2e-9,
            dr_m: 1.2,
            umax_mps: umax,
            pr_linear: cazac_core::arith::amplitude_from_db(6.0),
            c_mps: 3.0e8,
        };
        let range = zc_feasible_range(n, &req).unwrap();
        endpoints.push(range.roots.last().copied());
    }
    assert!(endpoints.windows(2).all(|w| w[0] == w[1]), "{endpoints:?}");
}

#[test]
fn roi_bound_scales_profiles_consistently() {
    // The echo of a target at distance d keeps its correlation peak inside
    // the lag window derived from the same requirements.
    let req = SensingRequirements {
        fc_hz: 240e9,
        ts_s: 0.2e-9,
        dr_m: 1.434,
        umax_mps: 697.5,
        pr_linear: 1.0,
        c_mps: 3.0e8,
    };
    let scenario = Scenario {
        units: None,
        targets: vec![Target {
            d_m: 1.2,
            u_mps: -300.0,
            gain_re: 1.0,
            gain_im: 0.0,
        }],
        snr_db: None,
        n: 1019,
        k: 1,
        omega: 1,
        seed: 5,
        physical: req,
    };
    let seq = generate_zc(ZcParams::new(1019, 21).unwrap());
    let echo = synthesize_echo(&scenario, &seq, 0).unwrap();
    let profile = circular_xcorr(&echo, &seq).unwrap();
    assert!((profile.peak_index as f64) < roi_lag_bound(&req).ceil());
}
