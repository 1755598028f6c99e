//! Stage timing for the steered transform: the FFT pass and the pair
//! rotation pass are timed separately so their scaling can be compared.

use num_complex::Complex64;
use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::dft::DftPlan;
use crate::error::{Result, SdftError};
use crate::rotation::RotationKind;
use crate::scramble::splitmix64_unit;
use crate::sdft1d::{require_even, rotate_pairs, ThetaKey1D};

/// Best-of-`iters` wall-clock nanoseconds for each stage of a forward
/// steered transform of length `n`.
#[derive(Debug, Clone, Serialize)]
pub struct StageTimings {
    pub n: usize,
    pub iters: usize,
    pub fft_ns: u128,
    pub rotate_ns: u128,
}

/// Time the FFT stage and the rotation stage of a 1D steered transform.
/// `n` must be an even power of two so the radix-2 path is exercised;
/// timings are the minimum over `iters` runs after one warmup.
pub fn time_stages_1d(n: usize, iters: usize) -> Result<StageTimings> {
    require_even(n, "stage timing")?;
    if !n.is_power_of_two() {
        return Err(SdftError::InvalidInput(format!(
            "stage timing requires a power-of-two length, got {n}"
        )));
    }
    if iters == 0 {
        return Err(SdftError::InvalidInput("iters must be at least 1".into()));
    }

    let mut state = 0x5dee_ce66_d215_b00du64;
    let signal: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(splitmix64_unit(&mut state) * 2.0 - 1.0, 0.0))
        .collect();
    let angles: Vec<f64> = (0..n / 2 - 1)
        .map(|_| splitmix64_unit(&mut state) * std::f64::consts::TAU)
        .collect();
    let key = ThetaKey1D::new(n, angles)?;

    let plan = DftPlan::new(n)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];

    let mut fft_ns = u128::MAX;
    let mut rotate_ns = u128::MAX;
    // One untimed warmup iteration populates caches and page-faults buffers.
    for iter in 0..=iters {
        let start = Instant::now();
        plan.forward_into(black_box(&signal), &mut coeffs)?;
        let fft = start.elapsed().as_nanos();

        let start = Instant::now();
        rotate_pairs(black_box(&mut coeffs), &key, false, RotationKind::Proper);
        let rotate = start.elapsed().as_nanos();

        black_box(&coeffs);
        if iter > 0 {
            fft_ns = fft_ns.min(fft);
            rotate_ns = rotate_ns.min(rotate);
        }
    }

    Ok(StageTimings {
        n,
        iters,
        fft_ns,
        rotate_ns,
    })
}
