//! The 1D steerable DFT and its derived transforms.
//!
//! Frequencies k and N−k share the cycle-Laplacian eigenvalue
//! 2−2cos(2πk/N), so the corresponding basis rows span a plane that can be
//! rotated without losing orthogonality. The transform applies one plane
//! rotation per pair (k, N−k), k = 1..N/2−1, directly to DFT coefficients;
//! indices 0 and N/2 sit in one-dimensional eigenspaces and never move.
//! Setting every angle to π/4 separates real and imaginary parts of the
//! spectrum, which yields cosine/sine transforms and a Hilbert transform.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, TAU};

use crate::dft::{basis_row_1d, dft_forward_1d, dft_inverse_1d, BasisRow, DftPlan};
use crate::error::{Result, SdftError};
use crate::rotation::{rotate_pair, RotationKind};
use crate::signal::{Signal1D, Spectrum1D};

/// The canonical pairing of 1D frequencies: (k, N−k) for k = 1..N/2−1, with
/// 0 and N/2 as unpaired fixed indices. Every index 0..N−1 appears exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable1D {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairTable1D {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rotated index pairs in ascending-k order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The two indices that are never rotated.
    pub fn fixed_indices(&self) -> [usize; 2] {
        [0, self.n / 2]
    }
}

pub(crate) fn require_even(n: usize, what: &str) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "{what} needs an even size of at least 4, got {n}"
        )));
    }
    Ok(())
}

/// Build the pair table for an even size N ≥ 4.
pub fn pair_table_1d(n: usize) -> Result<PairTable1D> {
    require_even(n, "the 1D pair table")?;
    let pairs = (1..n / 2).map(|k| (k, n - k)).collect();
    Ok(PairTable1D { n, pairs })
}

/// Rotation angles for a size-N transform: `angles[k−1]` steers pair (k, N−k).
/// Angles are stored reduced into [0, 2π); the transform is 2π-periodic in
/// every entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaKey1D {
    n: usize,
    angles: Vec<f64>,
}

impl ThetaKey1D {
    pub fn new(n: usize, angles: Vec<f64>) -> Result<Self> {
        require_even(n, "a 1D angle key")?;
        let expected = n / 2 - 1;
        if angles.len() != expected {
            return Err(SdftError::SizeMismatch(format!(
                "a 1D key for size {n} needs {expected} angles, got {}",
                angles.len()
            )));
        }
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(SdftError::InvalidInput(format!(
                "key angle {bad} is not finite"
            )));
        }
        Ok(Self {
            n,
            angles: angles.into_iter().map(|a| a.rem_euclid(TAU)).collect(),
        })
    }

    /// The identity key: all angles zero, so the transform is the plain DFT.
    pub fn zero(n: usize) -> Result<Self> {
        require_even(n, "a 1D angle key")?;
        Ok(Self {
            n,
            angles: vec![0.0; n / 2 - 1],
        })
    }

    /// Every pair steered by the same angle.
    pub fn uniform(n: usize, theta: f64) -> Result<Self> {
        require_even(n, "a 1D angle key")?;
        Self::new(n, vec![theta; n / 2 - 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Rotate coefficient pairs in place. `negate` flips every angle (the
/// inverse pass); `kind` selects the plane rotation or the reflection.
pub(crate) fn rotate_pairs(
    coeffs: &mut [Complex64],
    key: &ThetaKey1D,
    negate: bool,
    kind: RotationKind,
) {
    let n = key.n();
    for (i, &theta) in key.angles().iter().enumerate() {
        let k = i + 1;
        let angle = if negate { -theta } else { theta };
        let (a, b) = rotate_pair(coeffs[k], coeffs[n - k], angle, kind);
        coeffs[k] = a;
        coeffs[n - k] = b;
    }
}

/// Forward steerable transform: the DFT followed by one plane rotation per
/// pair. Costs one FFT plus O(N).
pub fn sdft_forward_1d(x: &Signal1D, key: &ThetaKey1D) -> Result<Spectrum1D> {
    if x.len() != key.n() {
        return Err(SdftError::SizeMismatch(format!(
            "signal length {} does not match key size {}",
            x.len(),
            key.n()
        )));
    }
    let plan = DftPlan::new(x.len())?;
    let mut coeffs = plan.forward(x.samples())?;
    rotate_pairs(&mut coeffs, key, false, RotationKind::Proper);
    Spectrum1D::from_complex(coeffs)
}

/// Inverse steerable transform: undo each pair rotation (angle −θ), then the
/// scaled inverse DFT.
pub fn sdft_inverse_1d(s: &Spectrum1D, key: &ThetaKey1D) -> Result<Signal1D> {
    if s.len() != key.n() {
        return Err(SdftError::SizeMismatch(format!(
            "spectrum length {} does not match key size {}",
            s.len(),
            key.n()
        )));
    }
    let mut coeffs = s.coefficients().to_vec();
    rotate_pairs(&mut coeffs, key, true, RotationKind::Proper);
    dft_inverse_1d(&Spectrum1D::from_complex(coeffs)?)
}

/// Rows of the steered transform matrix: each pair of DFT rows is replaced
/// by its rotated combination; rows 0 and N/2 are the plain DFT rows.
pub fn steered_basis_1d(key: &ThetaKey1D) -> Result<Vec<BasisRow>> {
    let n = key.n();
    let mut rows: Vec<Vec<Complex64>> = (0..n)
        .map(|k| Ok(basis_row_1d(n, k)?.entries().to_vec()))
        .collect::<Result<_>>()?;
    for (i, &theta) in key.angles().iter().enumerate() {
        let k = i + 1;
        let (head, tail) = rows.split_at_mut(n - k);
        for (a, b) in head[k].iter_mut().zip(tail[0].iter_mut()) {
            let (ra, rb) = rotate_pair(*a, *b, theta, RotationKind::Proper);
            *a = ra;
            *b = rb;
        }
    }
    Ok(rows.into_iter().map(BasisRow::new).collect())
}

/// One sample of a coefficient-vs-angle sweep for a single pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub theta: f64,
    /// Steered coefficient at index k.
    pub lower: Complex64,
    /// Steered coefficient at index N−k.
    pub upper: Complex64,
}

/// Sweep the angle of pair (k, N−k) over `samples` uniform points of
/// [0, 2π) — θ_t = 2πt/samples — with all other pairs left at zero, and
/// record both coefficients at each angle.
pub fn coefficient_trace(x: &Signal1D, k: usize, samples: usize) -> Result<Vec<TracePoint>> {
    let n = x.len();
    require_even(n, "a coefficient trace")?;
    if k < 1 || k > n / 2 - 1 {
        return Err(SdftError::InvalidInput(format!(
            "pair index {k} out of range 1..={} for size {n}",
            n / 2 - 1
        )));
    }
    if samples == 0 {
        return Err(SdftError::InvalidInput(
            "a trace needs at least one sample".into(),
        ));
    }
    let spectrum = dft_forward_1d(x)?;
    let a = spectrum.coefficients()[k];
    let b = spectrum.coefficients()[n - k];
    Ok((0..samples)
        .map(|t| {
            let theta = TAU * t as f64 / samples as f64;
            let (lower, upper) = rotate_pair(a, b, theta, RotationKind::Proper);
            TracePoint {
                theta,
                lower,
                upper,
            }
        })
        .collect())
}

fn require_real(x: &Signal1D, what: &str) -> Result<()> {
    if !x.is_real() {
        return Err(SdftError::InvalidInput(format!(
            "{what} requires a real input signal"
        )));
    }
    Ok(())
}

/// Fourier cosine coefficients Σ_n x_n·cos(2πkn/N) for k = 1..N/2−1
/// (entry i holds frequency k = i+1), read off the all-π/4 steered spectrum:
/// at that angle the lower coefficient of each pair is √2 times the cosine sum.
pub fn cosine_transform(x: &Signal1D) -> Result<Vec<f64>> {
    require_real(x, "the cosine transform")?;
    let n = x.len();
    require_even(n, "the cosine transform")?;
    let key = ThetaKey1D::uniform(n, FRAC_PI_4)?;
    let s = sdft_forward_1d(x, &key)?;
    let scale = 0.5f64.sqrt();
    Ok((1..n / 2).map(|k| s.coefficients()[k].re * scale).collect())
}

/// Fourier sine coefficients Σ_n x_n·sin(2π(N−k)n/N) for k = 1..N/2−1
/// (entry i holds frequency k = i+1): at all-π/4 the upper coefficient of
/// each pair equals −i·√2 times this sum.
pub fn sine_transform(x: &Signal1D) -> Result<Vec<f64>> {
    require_real(x, "the sine transform")?;
    let n = x.len();
    require_even(n, "the sine transform")?;
    let key = ThetaKey1D::uniform(n, FRAC_PI_4)?;
    let s = sdft_forward_1d(x, &key)?;
    let scale = 0.5f64.sqrt();
    Ok((1..n / 2)
        .map(|k| -s.coefficients()[n - k].im * scale)
        .collect())
}

/// The shared core of [`hilbert`] and [`hilbert_real_part`]: steer every
/// pair by −π/4, reconstruct through the adjoint of the π/4 *improper*
/// steered basis (the reflection matrix is symmetric and real, so its
/// adjoint is itself), and apply the 1/N inverse normalization.
fn hilbert_composite(x: &Signal1D) -> Result<Vec<Complex64>> {
    require_real(x, "the Hilbert transform")?;
    let n = x.len();
    require_even(n, "the Hilbert transform")?;
    let forward_key = ThetaKey1D::uniform(n, -FRAC_PI_4)?;
    let adjoint_key = ThetaKey1D::uniform(n, FRAC_PI_4)?;
    let plan = DftPlan::new(n)?;
    let mut coeffs = plan.forward(x.samples())?;
    rotate_pairs(&mut coeffs, &forward_key, false, RotationKind::Proper);
    rotate_pairs(&mut coeffs, &adjoint_key, false, RotationKind::Improper);
    plan.inverse(&coeffs)
}

/// Discrete Hilbert transform of a real signal: the imaginary part of the
/// composite −π/4-steer / π/4-reflected-reconstruct operator. Equivalent to
/// multiplying the spectrum by −i·sgn(k) (sgn = +1 below N/2, −1 above,
/// 0 at 0 and N/2) and inverting.
pub fn hilbert(x: &Signal1D) -> Result<Signal1D> {
    let z = hilbert_composite(x)?;
    Signal1D::from_real(&z.iter().map(|v| v.im).collect::<Vec<_>>())
}

/// The real part of the same composite operator: the normalized projection
/// of x onto the DC and Nyquist basis vectors —
/// (1/N)[(Σx_n)·1 + (Σ(−1)^n·x_n)·(−1)^n].
pub fn hilbert_real_part(x: &Signal1D) -> Result<Signal1D> {
    let z = hilbert_composite(x)?;
    Signal1D::from_real(&z.iter().map(|v| v.re).collect::<Vec<_>>())
}
