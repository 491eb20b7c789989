//! Thin wrapper around rustfft with a thread-local planner.
//!
//! The planner caches plans per size, so repeated transforms of the same
//! length (the common case in correlation sweeps) reuse twiddle tables.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place forward DFT (unnormalized).
pub fn forward(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// In-place inverse DFT, scaled by 1/N so that `inverse(forward(x)) == x`.
pub fn inverse(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_prime_length() {
        let n = 1019;
        let orig: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos()))
            .collect();
        let mut buf = orig.clone();
        forward(&mut buf);
        inverse(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn dc_bin() {
        let mut buf = vec![Complex64::new(1.0, 0.0); 8];
        forward(&mut buf);
        assert!((buf[0].re - 8.0).abs() < 1e-12);
        for v in &buf[1..] {
            assert!(v.norm() < 1e-12);
        }
    }
}
