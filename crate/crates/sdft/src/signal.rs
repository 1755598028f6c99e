//! Typed containers for time/vertex-domain signals and frequency-domain
//! spectra. Constructors validate finiteness once so the numeric kernels can
//! assume clean data. 2D arrays are square, row-major, flat index `m*n + j`.

use num_complex::Complex64;

use crate::error::{Result, SdftError};

fn check_finite(values: &[Complex64], what: &str) -> Result<()> {
    for (i, v) in values.iter().enumerate() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(SdftError::InvalidInput(format!(
                "{what} has a non-finite sample at index {i}"
            )));
        }
    }
    Ok(())
}

fn check_nonempty(len: usize, what: &str) -> Result<()> {
    if len == 0 {
        return Err(SdftError::InvalidInput(format!("{what} is empty")));
    }
    Ok(())
}

/// A length-N signal; real signals are stored with exactly-zero imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal1D {
    samples: Vec<Complex64>,
}

impl Signal1D {
    pub fn from_complex(samples: Vec<Complex64>) -> Result<Self> {
        check_nonempty(samples.len(), "signal")?;
        check_finite(&samples, "signal")?;
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::from_complex(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// True when every imaginary part is exactly zero (how real inputs are stored).
    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|v| v.im == 0.0)
    }

    /// The real parts, or an error if any imaginary part is nonzero.
    pub fn real_samples(&self) -> Result<Vec<f64>> {
        if !self.is_real() {
            return Err(SdftError::InvalidInput(
                "signal must be real (all imaginary parts exactly zero)".into(),
            ));
        }
        Ok(self.samples.iter().map(|v| v.re).collect())
    }

    /// Sum of squared magnitudes.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// A frequency-domain vector of the same length as the signal it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum1D {
    coefficients: Vec<Complex64>,
}

impl Spectrum1D {
    pub fn from_complex(coefficients: Vec<Complex64>) -> Result<Self> {
        check_nonempty(coefficients.len(), "spectrum")?;
        check_finite(&coefficients, "spectrum")?;
        Ok(Self { coefficients })
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// An N×N signal stored row-major: sample (m, j) lives at flat index `m*n + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal2D {
    n: usize,
    samples: Vec<Complex64>,
}

impl Signal2D {
    pub fn from_complex(n: usize, samples: Vec<Complex64>) -> Result<Self> {
        check_nonempty(n, "2d signal side length")?;
        if samples.len() != n * n {
            return Err(SdftError::SizeMismatch(format!(
                "2d signal needs {} samples for side length {n}, got {}",
                n * n,
                samples.len()
            )));
        }
        check_finite(&samples, "2d signal")?;
        Ok(Self { n, samples })
    }

    pub fn from_real(n: usize, samples: &[f64]) -> Result<Self> {
        Self::from_complex(n, samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Side length N; the array holds N² samples.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn get(&self, m: usize, j: usize) -> Complex64 {
        self.samples[m * self.n + j]
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|v| v.im == 0.0)
    }

    pub fn real_samples(&self) -> Result<Vec<f64>> {
        if !self.is_real() {
            return Err(SdftError::InvalidInput(
                "2d signal must be real (all imaginary parts exactly zero)".into(),
            ));
        }
        Ok(self.samples.iter().map(|v| v.re).collect())
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// An N×N spectrum, row-major like [`Signal2D`]: coefficient (k, l) at `k*n + l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2D {
    n: usize,
    coefficients: Vec<Complex64>,
}

impl Spectrum2D {
    pub fn from_complex(n: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        check_nonempty(n, "2d spectrum side length")?;
        if coefficients.len() != n * n {
            return Err(SdftError::SizeMismatch(format!(
                "2d spectrum needs {} coefficients for side length {n}, got {}",
                n * n,
                coefficients.len()
            )));
        }
        check_finite(&coefficients, "2d spectrum")?;
        Ok(Self { n, coefficients })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.coefficients[k * self.n + l]
    }

    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|v| v.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_constructor_stores_exact_zero_imag() {
        let s = Signal1D::from_real(&[1.0, -2.5, 0.0]).unwrap();
        assert!(s.is_real());
        assert_eq!(s.real_samples().unwrap(), vec![1.0, -2.5, 0.0]);
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        assert!(Signal1D::from_real(&[1.0, f64::NAN]).is_err());
        assert!(Signal1D::from_complex(vec![Complex64::new(0.0, f64::INFINITY)]).is_err());
        assert!(Signal2D::from_real(2, &[1.0, 2.0, f64::NEG_INFINITY, 4.0]).is_err());
    }

    #[test]
    fn empty_containers_are_rejected() {
        assert!(Signal1D::from_real(&[]).is_err());
        assert!(Spectrum1D::from_complex(vec![]).is_err());
    }

    #[test]
    fn real_samples_refuses_complex_data() {
        let s = Signal1D::from_complex(vec![Complex64::new(1.0, 1e-300)]).unwrap();
        assert!(!s.is_real());
        assert!(s.real_samples().is_err());
    }

    #[test]
    fn flat_index_is_row_major() {
        let s = Signal2D::from_real(2, &[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.get(0, 1).re, 1.0);
        assert_eq!(s.get(1, 0).re, 2.0);
    }

    #[test]
    fn wrong_2d_length_is_a_size_mismatch() {
        let err = Signal2D::from_real(3, &[0.0; 8]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn energy_sums_squared_magnitudes() {
        let s = Signal1D::from_complex(vec![Complex64::new(3.0, 4.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert_eq!(s.energy(), 26.0);
    }
}
