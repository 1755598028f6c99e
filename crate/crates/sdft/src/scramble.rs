//! θ-keyed spectral scrambling.
//!
//! The steering angles act as a secret key: the scrambled artifact is the
//! lower half (k = 0..N/2) of the steered spectrum of a real signal. Because
//! x̂_{N−k} = conj(x̂_k) for real input, the steered lower coefficient
//! x̂'_k = cosθ·x̂_k + sinθ·conj(x̂_k) still determines x̂_k — unless
//! cosθ ± sinθ vanishes (odd multiples of π/4), where one of the two real
//! degrees of freedom is destroyed. Keys are therefore required to keep both
//! margins |cosθ ± sinθ| above a fixed threshold.
//!
//! Nothing here is a cryptographic claim; the key-sensitivity checks in the
//! test suite assert only that the key matters.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, TAU};

use crate::dft::dft_inverse_1d;
use crate::error::{Result, SdftError};
use crate::sdft1d::{sdft_forward_1d, ThetaKey1D};
use crate::signal::{Signal1D, Spectrum1D};

/// Minimum allowed |cosθ + sinθ| and |cosθ − sinθ| for a scrambling key.
/// Bounds the divisor amplification in descrambling by ~10³.
pub const SCRAMBLE_MARGIN: f64 = 1e-3;

/// What a generated key will be used for: `General` keys draw angles from
/// the full circle; `Scramble` keys draw from (−π/4, π/4) shrunk by 0.01 rad
/// on each side, which keeps both scramble margins ≥ √2·sin(0.01) ≈ 0.014.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyPurpose {
    General,
    Scramble,
}

impl KeyPurpose {
    pub fn as_str(&self) -> &'static str {
        match self {
            KeyPurpose::General => "general",
            KeyPurpose::Scramble => "scramble",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(KeyPurpose::General),
            "scramble" => Ok(KeyPurpose::Scramble),
            other => Err(SdftError::Format(format!(
                "unknown key purpose {other:?} (expected \"general\" or \"scramble\")"
            ))),
        }
    }
}

/// One step of the SplitMix64 stream: advance the state by the golden-ratio
/// increment and return the mixed output.
fn splitmix64_next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The uniform variate in [0, 1) derived from one SplitMix64 output.
fn unit_double(word: u64) -> f64 {
    (word >> 11) as f64 / (1u64 << 53) as f64
}

/// Advance the SplitMix64 state and return a uniform variate in [0, 1).
pub(crate) fn splitmix64_unit(state: &mut u64) -> f64 {
    unit_double(splitmix64_next(state))
}

/// Deterministically expand a 64-bit seed into a steering key of N/2−1
/// angles. Bit-exact: the SplitMix64 recurrence and the angle maps are part
/// of the key-file contract.
pub fn keygen(seed: u64, n: usize, purpose: KeyPurpose) -> Result<ThetaKey1D> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "key generation needs an even size of at least 4, got {n}"
        )));
    }
    let mut state = seed;
    let angles = (0..n / 2 - 1)
        .map(|_| {
            let u = unit_double(splitmix64_next(&mut state));
            match purpose {
                KeyPurpose::General => TAU * u,
                KeyPurpose::Scramble => {
                    const SHRINK: f64 = 0.01;
                    -FRAC_PI_4 + SHRINK + u * (std::f64::consts::FRAC_PI_2 - 2.0 * SHRINK)
                }
            }
        })
        .collect();
    ThetaKey1D::new(n, angles)
}

/// A steering key whose angles all satisfy both scramble margins, i.e. a key
/// descrambling can actually invert.
#[derive(Debug, Clone, PartialEq)]
pub struct ScrambleKey {
    key: ThetaKey1D,
}

impl ScrambleKey {
    pub fn new(key: ThetaKey1D) -> Result<Self> {
        for (i, &theta) in key.angles().iter().enumerate() {
            let (s, c) = theta.sin_cos();
            if (c + s).abs() < SCRAMBLE_MARGIN || (c - s).abs() < SCRAMBLE_MARGIN {
                return Err(SdftError::DegenerateKey(format!(
                    "angle {theta} for pair {} is within {SCRAMBLE_MARGIN} of a \
                     π/4-degenerate direction",
                    i + 1
                )));
            }
        }
        Ok(Self { key })
    }

    pub fn key(&self) -> &ThetaKey1D {
        &self.key
    }

    pub fn n(&self) -> usize {
        self.key.n()
    }
}

/// The scrambled artifact: steered spectrum coefficients k = 0..N/2. The DC
/// and Nyquist entries of a real signal's spectrum are real, so their
/// imaginary slots are stored as exact zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ScramblePayload {
    n: usize,
    coefficients: Vec<Complex64>,
}

impl ScramblePayload {
    pub fn new(n: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(SdftError::UnsupportedSize(format!(
                "payloads describe even signal sizes of at least 4, got {n}"
            )));
        }
        if coefficients.len() != n / 2 + 1 {
            return Err(SdftError::SizeMismatch(format!(
                "a payload for size {n} holds {} coefficients, got {}",
                n / 2 + 1,
                coefficients.len()
            )));
        }
        if coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(SdftError::InvalidInput(
                "payload has a non-finite coefficient".into(),
            ));
        }
        if coefficients[0].im != 0.0 || coefficients[n / 2].im != 0.0 {
            return Err(SdftError::Format(
                "payload DC and Nyquist entries must have zero imaginary parts".into(),
            ));
        }
        Ok(Self { n, coefficients })
    }

    /// The original signal length N (the payload itself holds N/2+1 values).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }
}

/// Scramble a real signal: steer its spectrum with the key and keep
/// coefficients 0..N/2.
pub fn scramble(x: &Signal1D, key: &ScrambleKey) -> Result<ScramblePayload> {
    if !x.is_real() {
        return Err(SdftError::InvalidInput(
            "scrambling requires a real input signal".into(),
        ));
    }
    if x.len() != key.n() {
        return Err(SdftError::SizeMismatch(format!(
            "signal length {} does not match key size {}",
            x.len(),
            key.n()
        )));
    }
    let n = x.len();
    let steered = sdft_forward_1d(x, key.key())?;
    let mut coefficients = steered.coefficients()[..=n / 2].to_vec();
    // DC and Nyquist are mathematically real for real input; drop the
    // floating-point dust so the payload invariant holds exactly.
    coefficients[0].im = 0.0;
    coefficients[n / 2].im = 0.0;
    ScramblePayload::new(n, coefficients)
}

/// Invert [`scramble`]: divide each pair's real and imaginary parts by
/// cosθ+sinθ and cosθ−sinθ, rebuild the upper half by conjugate symmetry,
/// and invert the plain transform. The key's margins guarantee both
/// divisors.
pub fn descramble(payload: &ScramblePayload, key: &ScrambleKey) -> Result<Signal1D> {
    let n = payload.n();
    if n != key.n() {
        return Err(SdftError::SizeMismatch(format!(
            "payload size {n} does not match key size {}",
            key.n()
        )));
    }
    let p = payload.coefficients();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[0] = Complex64::new(p[0].re, 0.0);
    coeffs[n / 2] = Complex64::new(p[n / 2].re, 0.0);
    for k in 1..n / 2 {
        let (s, c) = key.key().angles()[k - 1].sin_cos();
        let re = p[k].re / (c + s);
        let im = p[k].im / (c - s);
        coeffs[k] = Complex64::new(re, im);
        coeffs[n - k] = Complex64::new(re, -im);
    }
    let z = dft_inverse_1d(&Spectrum1D::from_complex(coeffs)?)?;
    Signal1D::from_real(&z.samples().iter().map(|v| v.re).collect::<Vec<_>>())
}
