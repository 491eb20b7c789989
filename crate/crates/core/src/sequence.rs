//! Sequence generators: Zadoff-Chu, the unified CAZAC construction, and
//! differentially encoded ZC, plus the CAZAC property verifier and the
//! sequence serialization formats.

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;

use crate::arith::{gcd, is_square_free};
use crate::error::{Error, Result};

/// How a sequence was produced. Carried along so exports and reports can
/// name the generating parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// Zadoff-Chu with length `n` and root index `p`.
    Zc { n: u64, p: u64 },
    /// Unified-construction CAZAC of length r*m^2.
    Cazac { r: u64, m: u64, phi: u64, a: u64 },
    /// Differentially encoded ZC over the given base parameters.
    Dzc { n: u64, p: u64 },
    /// No generation metadata (loaded from a file, or derived).
    Raw,
}

impl SequenceKind {
    fn tag(&self) -> u32 {
        match self {
            SequenceKind::Raw => 0,
            SequenceKind::Zc { .. } => 1,
            SequenceKind::Cazac { .. } => 2,
            SequenceKind::Dzc { .. } => 3,
        }
    }
}

/// A block of unit-amplitude complex samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSequence {
    pub samples: Vec<Complex64>,
    pub kind: SequenceKind,
}

impl ComplexSequence {
    pub fn new(samples: Vec<Complex64>, kind: SequenceKind) -> Self {
        Self { samples, kind }
    }

    pub fn from_samples(samples: Vec<Complex64>) -> Self {
        Self::new(samples, SequenceKind::Raw)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Zadoff-Chu parameters: odd length `n`, root index `p` coprime to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZcParams {
    pub n: u64,
    pub p: u64,
}

impl ZcParams {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::EvenLength(n));
        }
        if p == 0 || p >= n {
            return Err(Error::RootOutOfRange { p, n });
        }
        let g = gcd(p, n);
        if g != 1 {
            return Err(Error::NotCoprime { a: p, b: n, g });
        }
        Ok(Self { n, p })
    }
}

/// Parameters of the unified CAZAC construction with the linear phase-offset
/// family varphi(gamma) = <a*m*gamma + gamma> mod rm and constant phi.
#[derive(Debug, Clone, PartialEq)]
pub struct CazacParams {
    pub r: u64,
    pub m: u64,
    pub phi: u64,
    pub a: u64,
    /// Arbitrary real phase per coset, in cycles of 2*pi/(r*m). All zeros by
    /// default; it never affects the CAZAC properties.
    pub psi: Vec<f64>,
}

impl CazacParams {
    pub fn new(r: u64, m: u64, phi: u64, a: u64) -> Result<Self> {
        Self::with_psi(r, m, phi, a, vec![0.0; m as usize])
    }

    pub fn with_psi(r: u64, m: u64, phi: u64, a: u64, psi: Vec<f64>) -> Result<Self> {
        if r == 0 {
            return Err(Error::NonPositiveRequirement("r"));
        }
        if !is_square_free(m) {
            return Err(Error::NotSquareFree(m));
        }
        let g = gcd(phi, r);
        if g != 1 {
            return Err(Error::NotCoprime { a: phi, b: r, g });
        }
        let max_a = r / m;
        if a > max_a {
            return Err(Error::SlopeTooLarge { a, max: max_a });
        }
        if psi.len() != m as usize {
            return Err(Error::BadTableLength {
                got: psi.len(),
                expected: m as usize,
            });
        }
        Ok(Self { r, m, phi, a, psi })
    }

    /// Sequence length r*m^2.
    pub fn sequence_len(&self) -> u64 {
        self.r * self.m * self.m
    }

    /// The linear phase-offset table varphi(gamma) = <a*m*gamma + gamma> mod rm.
    pub fn varphi_table(&self) -> Vec<u64> {
        let rm = self.r * self.m;
        (0..self.m)
            .map(|g| (self.a * self.m * g + g) % rm)
            .collect()
    }
}

/// s[n] = exp(-j*pi*p*n*(n+1)/N).
///
/// The quadratic phase index is reduced modulo 2N in exact integer
/// arithmetic before the trig evaluation, which keeps sample phases at
/// machine precision for long sequences.
pub fn generate_zc(params: ZcParams) -> ComplexSequence {
    let ZcParams { n, p } = params;
    let two_n = 2 * n as u128;
    let samples = (0..n)
        .map(|i| {
            let units = (p as u128 * i as u128 * (i as u128 + 1)) % two_n;
            let phase = -PI * units as f64 / n as f64;
            Complex64::from_polar(1.0, phase)
        })
        .collect();
    ComplexSequence::new(samples, SequenceKind::Zc { n, p })
}

/// Unified CAZAC construction over an explicit phase-offset table.
///
/// `varphi` must hold one value per coset with `{varphi(g) mod m}` a
/// permutation of 0..m (checked); `psi` is an arbitrary real table in units
/// of 2*pi/(r*m). This is the general form behind [`generate_cazac`]; the
/// randomized design baselines call it directly.
pub fn generate_cazac_general(
    r: u64,
    m: u64,
    phi: u64,
    varphi: &[u64],
    psi: &[f64],
) -> Result<ComplexSequence> {
    if r == 0 {
        return Err(Error::NonPositiveRequirement("r"));
    }
    if !is_square_free(m) {
        return Err(Error::NotSquareFree(m));
    }
    let g = gcd(phi, r);
    if g != 1 {
        return Err(Error::NotCoprime { a: phi, b: r, g });
    }
    if varphi.len() != m as usize {
        return Err(Error::BadTableLength {
            got: varphi.len(),
            expected: m as usize,
        });
    }
    if psi.len() != m as usize {
        return Err(Error::BadTableLength {
            got: psi.len(),
            expected: m as usize,
        });
    }
    // Residues of varphi mod m must cover every coset exactly once.
    let mut seen = vec![false; m as usize];
    for &v in varphi {
        let res = (v % m) as usize;
        if seen[res] {
            return Err(Error::Format {
                format: "varphi",
                detail: format!("residues mod {m} are not a permutation"),
            });
        }
        seen[res] = true;
    }

    let rm = r * m;
    let len = rm * m;
    // Work in half-cycle units so the r-even case (c_r = 1/2) stays integer:
    // z[n] = exp(j*pi*k/(r*m) + j*2*pi*psi/(r*m)) with
    // k = 2*m*c_r*phi*beta^2 + 2*varphi(gamma)*beta  (mod 2*r*m).
    let two_m_cr = if r % 2 == 1 { 2 * m } else { m };
    let two_rm = 2 * rm as u128;
    let samples = (0..len)
        .map(|i| {
            let beta = (i / m) as u128;
            let gamma = (i % m) as usize;
            let k = (two_m_cr as u128 * phi as u128 % two_rm * beta % two_rm * beta
                + 2 * varphi[gamma] as u128 * beta)
                % two_rm;
            let phase = PI * k as f64 / rm as f64 + 2.0 * PI * psi[gamma] / rm as f64;
            Complex64::from_polar(1.0, phase)
        })
        .collect();
    Ok(ComplexSequence::new(samples, SequenceKind::Raw))
}

/// z[n] = exp(j*2*pi*g(beta,gamma)/(r*m)) with
/// g = m*c_r*phi*beta^2 + varphi(gamma)*beta + psi(gamma),
/// beta = floor(n/m), gamma = n - beta*m.
pub fn generate_cazac(params: &CazacParams) -> ComplexSequence {
    let varphi = params.varphi_table();
    let mut seq = generate_cazac_general(params.r, params.m, params.phi, &varphi, &params.psi)
        .expect("CazacParams invariants already checked");
    seq.kind = SequenceKind::Cazac {
        r: params.r,
        m: params.m,
        phi: params.phi,
        a: params.a,
    };
    seq
}

/// Differential encoding of a ZC sequence: x[n] = prod_{k<=n} s[k].
///
/// The receiver-side decode y[n]*conj(y[n-1]) recovers s shifted by the
/// delay, up to a constant phase, under any constant Doppler. When 3 does
/// not divide N the full product of s is exactly 1 and the circular wrap is
/// seamless; otherwise a single O(1) wrap term remains.
pub fn generate_dzc(base: ZcParams) -> ComplexSequence {
    let s = generate_zc(base);
    let mut acc = Complex64::new(1.0, 0.0);
    let samples = s
        .samples
        .iter()
        .map(|&v| {
            acc *= v;
            // Renormalize so magnitude drift cannot accumulate over long products.
            acc /= acc.norm();
            acc
        })
        .collect();
    ComplexSequence::new(
        samples,
        SequenceKind::Dzc {
            n: base.n,
            p: base.p,
        },
    )
}

/// Verification report for the two defining CAZAC properties.
#[derive(Debug, Clone, Copy)]
pub struct CazacReport {
    pub constant_amplitude: bool,
    pub zero_autocorrelation: bool,
    /// Worst-case | |s[n]| - 1 |.
    pub max_amplitude_deviation: f64,
    /// Worst-case off-peak circular autocorrelation magnitude.
    pub max_offpeak_correlation: f64,
}

/// Measures constant-amplitude and zero-autocorrelation deviations.
///
/// `constant_amplitude` holds iff max | |s[n]| - 1 | <= tol;
/// `zero_autocorrelation` iff the off-peak circular autocorrelation
/// magnitude stays below tol*N.
pub fn verify_cazac(seq: &ComplexSequence, tol: f64) -> Result<CazacReport> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let max_amplitude_deviation = seq
        .samples
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max);

    let auto = crate::correlation::circular_xcorr(seq, seq)?;
    let n = seq.len() as f64;
    let max_offpeak_correlation = auto
        .magnitudes
        .iter()
        .enumerate()
        .filter(|&(lag, _)| lag != 0)
        .map(|(_, &m)| m)
        .fold(0.0, f64::max);

    Ok(CazacReport {
        constant_amplitude: max_amplitude_deviation <= tol,
        zero_autocorrelation: max_offpeak_correlation <= tol * n,
        max_amplitude_deviation,
        max_offpeak_correlation,
    })
}

const BIN_MAGIC: &[u8; 4] = b"CAZ1";

/// Writes the compact binary form: a 16-byte header (magic "CAZ1",
/// u32 length, u32 kind tag, u32 reserved) followed by interleaved
/// little-endian f64 re/im pairs.
pub fn write_binary<W: Write>(seq: &ComplexSequence, mut w: W) -> Result<()> {
    w.write_all(BIN_MAGIC)?;
    w.write_all(&(seq.len() as u32).to_le_bytes())?;
    w.write_all(&seq.kind.tag().to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    for v in &seq.samples {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

/// Reads the binary form written by [`write_binary`]. Generation parameters
/// are not stored, so the kind comes back as a bare tag.
pub fn read_binary<R: Read>(mut r: R) -> Result<ComplexSequence> {
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if &header[0..4] != BIN_MAGIC {
        return Err(Error::Format {
            format: "CAZ1",
            detail: "bad magic".into(),
        });
    }
    let len = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
    let mut samples = Vec::with_capacity(len);
    let mut buf = [0u8; 16];
    for _ in 0..len {
        r.read_exact(&mut buf)?;
        samples.push(Complex64::new(
            f64::from_le_bytes(buf[0..8].try_into().unwrap()),
            f64::from_le_bytes(buf[8..16].try_into().unwrap()),
        ));
    }
    Ok(ComplexSequence::from_samples(samples))
}

/// Writes CSV rows `index,re,im`. Float formatting is shortest-round-trip,
/// so a read-back is bit-exact.
pub fn write_csv<W: Write>(seq: &ComplexSequence, mut w: W) -> Result<()> {
    writeln!(w, "index,re,im")?;
    for (i, v) in seq.samples.iter().enumerate() {
        writeln!(w, "{},{},{}", i, v.re, v.im)?;
    }
    Ok(())
}

/// Reads the CSV form written by [`write_csv`].
pub fn read_csv<R: Read>(mut r: R) -> Result<ComplexSequence> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            continue; // header
        }
        let mut cols = line.split(',');
        let parse = |field: Option<&str>| -> Result<f64> {
            field
                .ok_or_else(|| Error::Format {
                    format: "sequence CSV",
                    detail: format!("line {} truncated", lineno + 1),
                })?
                .trim()
                .parse()
                .map_err(|e| Error::Format {
                    format: "sequence CSV",
                    detail: format!("line {}: {}", lineno + 1, e),
                })
        };
        let _index = parse(cols.next())?;
        let re = parse(cols.next())?;
        let im = parse(cols.next())?;
        samples.push(Complex64::new(re, im));
    }
    Ok(ComplexSequence::from_samples(samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zc_length_three_root_one() {
        let seq = generate_zc(ZcParams::new(3, 1).unwrap());
        assert_eq!(seq.len(), 3);
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -2.0 * PI / 3.0),
            Complex64::new(1.0, 0.0),
        ];
        for (got, want) in seq.samples.iter().zip(&expected) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn zc_rejects_bad_params() {
        assert!(matches!(ZcParams::new(8, 3), Err(Error::EvenLength(8))));
        assert!(matches!(
            ZcParams::new(35537, 35537),
            Err(Error::RootOutOfRange { .. })
        ));
        assert!(matches!(ZcParams::new(9, 3), Err(Error::NotCoprime { .. })));
        assert!(matches!(
            ZcParams::new(9, 0),
            Err(Error::RootOutOfRange { .. })
        ));
    }

    #[test]
    fn zc_unit_magnitude_and_zero_autocorrelation() {
        for (n, p) in [(7, 3), (35537, 21)] {
            let seq = generate_zc(ZcParams::new(n, p).unwrap());
            let report = verify_cazac(&seq, 1e-9).unwrap();
            assert!(report.constant_amplitude, "N={n} p={p}: {report:?}");
            assert!(report.zero_autocorrelation, "N={n} p={p}: {report:?}");
        }
    }

    #[test]
    fn cazac_rejects_bad_params() {
        assert!(matches!(
            CazacParams::new(4, 2, 2, 0),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            CazacParams::new(7, 4, 1, 0),
            Err(Error::NotSquareFree(4))
        ));
        assert!(matches!(
            CazacParams::new(7, 2, 1, 4),
            Err(Error::SlopeTooLarge { .. })
        ));
    }

    #[test]
    fn cazac_degenerate_m1_is_cazac() {
        let params = CazacParams::new(7, 1, 1, 0).unwrap();
        let seq = generate_cazac(&params);
        assert_eq!(seq.len(), 7);
        let report = verify_cazac(&seq, 1e-9).unwrap();
        assert!(report.constant_amplitude && report.zero_autocorrelation);
    }

    #[test]
    fn cazac_even_r_is_cazac() {
        let params = CazacParams::new(12, 2, 5, 3).unwrap();
        let seq = generate_cazac(&params);
        assert_eq!(seq.len(), 48);
        let report = verify_cazac(&seq, 1e-9).unwrap();
        assert!(
            report.constant_amplitude && report.zero_autocorrelation,
            "{report:?}"
        );
    }

    #[test]
    fn cazac_psi_does_not_affect_flags() {
        let psi = vec![0.37, -1.2, 9.5];
        let params = CazacParams::with_psi(9, 3, 2, 1, psi).unwrap();
        let seq = generate_cazac(&params);
        let report = verify_cazac(&seq, 1e-9).unwrap();
        assert!(
            report.constant_amplitude && report.zero_autocorrelation,
            "{report:?}"
        );
    }

    #[test]
    fn general_rejects_bad_varphi() {
        // Both residues are 0 mod 2: not a permutation.
        let err = generate_cazac_general(7, 2, 1, &[0, 2], &[0.0, 0.0]);
        assert!(err.is_err());
    }

    #[test]
    fn dzc_is_cumulative_product() {
        let base = ZcParams::new(3, 1).unwrap();
        let s = generate_zc(base);
        let x = generate_dzc(base);
        let mut acc = Complex64::new(1.0, 0.0);
        for (k, got) in x.samples.iter().enumerate() {
            acc *= s.samples[k];
            assert!((got - acc).norm() < 1e-12);
        }
    }

    #[test]
    fn dzc_unit_magnitude() {
        let x = generate_dzc(ZcParams::new(1019, 7).unwrap());
        for v in &x.samples {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn verify_flags_all_ones() {
        let seq = ComplexSequence::from_samples(vec![Complex64::new(1.0, 0.0); 4]);
        let report = verify_cazac(&seq, 1e-9).unwrap();
        assert!(report.constant_amplitude);
        assert!(!report.zero_autocorrelation);
        assert!((report.max_offpeak_correlation - 4.0).abs() < 1e-12);
    }

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let seq = generate_zc(ZcParams::new(101, 5).unwrap());
        let mut buf = Vec::new();
        write_binary(&seq, &mut buf).unwrap();
        assert_eq!(buf.len(), 16 + 16 * seq.len());
        let back = read_binary(&buf[..]).unwrap();
        assert_eq!(back.samples, seq.samples);
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let seq = generate_cazac(&CazacParams::new(5, 2, 3, 1).unwrap());
        let mut buf = Vec::new();
        write_csv(&seq, &mut buf).unwrap();
        let back = read_csv(&buf[..]).unwrap();
        assert_eq!(back.samples, seq.samples);
    }
}
