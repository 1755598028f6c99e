//! Even/odd parity filtering through π/4-steered spectra.
//!
//! Steering a pair by π/4 puts the circularly-even content of a real signal
//! into the pair's lower coefficient and the odd content into the upper one,
//! so parity filtering is: steer by π/4, zero one half of each processed
//! pair, steer back. "Even" here means circular symmetry under index
//! negation mod N: e_n = (x_n + x_{(N−n) mod N})/2 in 1D, and the
//! centro-symmetrization (X_{m,n} + X_{−m,−n})/2 on grids.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

use crate::dft::{dft_forward_2d, dft_inverse_2d, DftPlan};
use crate::error::{Result, SdftError};
use crate::rotation::{rotate_pair, RotationKind};
use crate::sdft2d::{pair_table_2d, PairMode2D};
use crate::signal::{Signal1D, Signal2D, Spectrum2D};

/// Which parity component a filter keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

fn require_even_size(n: usize, what: &str) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "{what} needs an even size of at least 4, got {n}"
        )));
    }
    Ok(())
}

/// Keep one parity component of a real signal.
///
/// Without `bands`, the whole component is kept: the even filter retains the
/// DC and Nyquist coefficients, the odd filter zeroes them. With `bands`,
/// only the listed pair indices k ∈ 1..N/2−1 are filtered and every other
/// coefficient — including DC and Nyquist — passes through untouched.
pub fn parity_filter_1d(x: &Signal1D, part: Parity, bands: Option<&[usize]>) -> Result<Signal1D> {
    if !x.is_real() {
        return Err(SdftError::InvalidInput(
            "parity filtering requires a real input signal".into(),
        ));
    }
    let n = x.len();
    require_even_size(n, "the 1D parity filter")?;

    let selected: Vec<usize> = match bands {
        Some(list) => {
            for &k in list {
                if k < 1 || k > n / 2 - 1 {
                    return Err(SdftError::InvalidInput(format!(
                        "band index {k} out of range 1..={} for size {n}",
                        n / 2 - 1
                    )));
                }
            }
            let mut sorted = list.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            sorted
        }
        None => (1..n / 2).collect(),
    };
    let full_band = bands.is_none();

    let plan = DftPlan::new(n)?;
    let mut coeffs = plan.forward(x.samples())?;
    // Only the processed pairs are rotated, so unprocessed pairs pass
    // through bit-exactly rather than through a rotate/unrotate pair.
    for &k in &selected {
        let (a, b) = rotate_pair(coeffs[k], coeffs[n - k], FRAC_PI_4, RotationKind::Proper);
        let (a, b) = match part {
            Parity::Even => (a, Complex64::new(0.0, 0.0)),
            Parity::Odd => (Complex64::new(0.0, 0.0), b),
        };
        let (a, b) = rotate_pair(a, b, -FRAC_PI_4, RotationKind::Proper);
        coeffs[k] = a;
        coeffs[n - k] = b;
    }
    if full_band && part == Parity::Odd {
        // DC and Nyquist carry purely even content.
        coeffs[0] = Complex64::new(0.0, 0.0);
        coeffs[n / 2] = Complex64::new(0.0, 0.0);
    }
    let z = plan.inverse(&coeffs)?;
    Signal1D::from_real(&z.iter().map(|v| v.re).collect::<Vec<_>>())
}

/// Keep one parity component of a real N×N grid: conjugate-mode pairs
/// ((p,q),(N−p,N−q)) — which include the ((p,N−q),(N−p,q)) family — are
/// steered by π/4 and halved; the four self-conjugate coefficients are kept
/// for the even part and zeroed for the odd part.
pub fn parity_filter_2d(x: &Signal2D, part: Parity) -> Result<Signal2D> {
    if !x.is_real() {
        return Err(SdftError::InvalidInput(
            "parity filtering requires a real input grid".into(),
        ));
    }
    let n = x.n();
    require_even_size(n, "the 2D parity filter")?;

    let table = pair_table_2d(n, PairMode2D::Conjugate)?;
    let plain = dft_forward_2d(x)?;
    let mut coeffs = plain.coefficients().to_vec();
    for &((p, q), (r, s)) in table.pairs() {
        let t1 = p * n + q;
        let t2 = r * n + s;
        let (a, b) = rotate_pair(coeffs[t1], coeffs[t2], FRAC_PI_4, RotationKind::Proper);
        let (a, b) = match part {
            Parity::Even => (a, Complex64::new(0.0, 0.0)),
            Parity::Odd => (Complex64::new(0.0, 0.0), b),
        };
        let (a, b) = rotate_pair(a, b, -FRAC_PI_4, RotationKind::Proper);
        coeffs[t1] = a;
        coeffs[t2] = b;
    }
    if part == Parity::Odd {
        for &(p, q) in table.fixed_points() {
            coeffs[p * n + q] = Complex64::new(0.0, 0.0);
        }
    }
    let z = dft_inverse_2d(&Spectrum2D::from_complex(n, coeffs)?)?;
    Signal2D::from_real(n, &z.samples().iter().map(|v| v.re).collect::<Vec<_>>())
}
