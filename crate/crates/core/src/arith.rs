//! Number-theoretic and numeric helpers shared across the crate.

/// Greatest common divisor (Euclidean algorithm).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// True when no prime square divides `m`.
pub fn is_square_free(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut m = m;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Centered residue of an integer modulo an odd `n`, in [-(n-1)/2, (n-1)/2].
pub fn centered_mod_i64(x: i64, n: u64) -> i64 {
    let n = n as i64;
    let mut r = x % n;
    let half = (n - 1) / 2;
    if r > half {
        r -= n;
    } else if r < -half {
        r += n;
    }
    r
}

/// Centered residue of a real value modulo `n`, folded into [-n/2, n/2).
///
/// Fractional inputs are the normal case here: Doppler terms contribute
/// non-integer offsets to otherwise integer residues.
pub fn centered_mod_f64(x: f64, n: f64) -> f64 {
    let mut r = x % n;
    if r >= n / 2.0 {
        r -= n;
    } else if r < -n / 2.0 {
        r += n;
    }
    r
}

/// Amplitude ratio to decibels (20 log10).
pub fn amplitude_db(ratio: f64) -> f64 {
    20.0 * ratio.log10()
}

/// Decibels to amplitude ratio (10^(dB/20)).
pub fn amplitude_from_db(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Power ratio to decibels (10 log10).
pub fn power_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Decibels to power ratio (10^(dB/10)).
pub fn power_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(21, 35537), 1);
        assert_eq!(gcd(9, 3), 3);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn square_free_classification() {
        for m in [1u64, 2, 3, 5, 6, 7, 10, 15, 30] {
            assert!(is_square_free(m), "{m} is square-free");
        }
        for m in [0u64, 4, 8, 9, 12, 18, 25, 50] {
            assert!(!is_square_free(m), "{m} is not square-free");
        }
    }

    #[test]
    fn centered_mod_integer_range() {
        let n = 7u64;
        for x in -30i64..=30 {
            let r = centered_mod_i64(x, n);
            assert!((-3..=3).contains(&r));
            assert_eq!((x - r).rem_euclid(7), 0);
        }
    }

    #[test]
    fn centered_mod_fractional() {
        let r = centered_mod_f64(3.6, 7.0);
        assert!((r - (-3.4)).abs() < 1e-12);
        let r = centered_mod_f64(-3.6, 7.0);
        assert!((r - 3.4).abs() < 1e-12);
        let r = centered_mod_f64(10.2, 7.0);
        assert!((r - 3.2).abs() < 1e-12);
    }

    #[test]
    fn db_round_trips() {
        assert!((amplitude_db(10.0) - 20.0).abs() < 1e-12);
        assert!((power_db(10.0) - 10.0).abs() < 1e-12);
        assert!((amplitude_from_db(20.0) - 10.0).abs() < 1e-12);
        assert!((power_from_db(10.0) - 10.0).abs() < 1e-12);
    }
}
