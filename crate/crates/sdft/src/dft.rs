//! Plain DFT engines and basis-row constructors.
//!
//! Convention used throughout the crate: the forward transform is
//! unnormalized, `x̂_k = Σ_n x_n·e^{−i2πkn/N}`, and the inverse carries the
//! full 1/N (or 1/N² in 2D) factor. Power-of-two sizes run an iterative
//! radix-2 FFT; every other size falls back to a root-table naive sum. Both
//! paths are sequential and bit-deterministic for a fixed size and input.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Result, SdftError};
use crate::signal::{Signal1D, Signal2D, Spectrum1D, Spectrum2D};

/// One unnormalized transform-matrix row with unit-modulus entries:
/// `entries[n] = ρ_k^n` in 1D, `entries[m·N+n] = ρ_p^m·ρ_q^n` in 2D.
/// Steered variants (linear combinations of two such rows) reuse this container.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisRow {
    entries: Vec<Complex64>,
}

impl BasisRow {
    pub(crate) fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

/// Precomputed transform plan for one size. Immutable after construction,
/// so a plan can be shared freely across threads.
pub struct DftPlan {
    n: usize,
    /// Radix-2 path: forward twiddles e^{−i2πj/n} for j < n/2.
    twiddles: Vec<Complex64>,
    /// Radix-2 path: bit-reversal permutation.
    bit_rev: Vec<usize>,
    /// Naive path: all n forward roots e^{−i2πj/n}.
    roots: Vec<Complex64>,
}

fn forward_root(n: usize, j: usize) -> Complex64 {
    let angle = -TAU * (j as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

impl DftPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SdftError::UnsupportedSize(
                "transform size must be at least 1".into(),
            ));
        }
        if n.is_power_of_two() {
            let log2 = n.trailing_zeros();
            let twiddles = (0..n / 2).map(|j| forward_root(n, j)).collect();
            let bit_rev = (0..n)
                .map(|i| {
                    if log2 == 0 {
                        0
                    } else {
                        i.reverse_bits() >> (usize::BITS - log2)
                    }
                })
                .collect();
            Ok(Self {
                n,
                twiddles,
                bit_rev,
                roots: Vec::new(),
            })
        } else {
            let roots = (0..n).map(|j| forward_root(n, j)).collect();
            Ok(Self {
                n,
                twiddles: Vec::new(),
                bit_rev: Vec::new(),
                roots,
            })
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unnormalized forward transform.
    pub fn forward(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = Vec::new();
        self.forward_into(input, &mut out)?;
        Ok(out)
    }

    /// Forward transform into a caller-owned buffer (reused allocation).
    pub fn forward_into(&self, input: &[Complex64], out: &mut Vec<Complex64>) -> Result<()> {
        self.process(input, out, Direction::Forward)
    }

    /// Inverse transform, including the 1/N factor.
    pub fn inverse(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = Vec::new();
        self.process(input, &mut out, Direction::Inverse)?;
        let scale = 1.0 / self.n as f64;
        for v in out.iter_mut() {
            *v *= scale;
        }
        Ok(out)
    }

    fn process(&self, input: &[Complex64], out: &mut Vec<Complex64>, dir: Direction) -> Result<()> {
        if input.len() != self.n {
            return Err(SdftError::SizeMismatch(format!(
                "plan is for size {}, input has {} samples",
                self.n,
                input.len()
            )));
        }
        out.clear();
        if self.roots.is_empty() {
            out.extend_from_slice(input);
            self.radix2_in_place(out, dir);
        } else {
            self.naive_into(input, out, dir);
        }
        Ok(())
    }

    fn radix2_in_place(&self, buf: &mut [Complex64], dir: Direction) {
        let n = self.n;
        for i in 0..n {
            let j = self.bit_rev[i];
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for base in (0..n).step_by(len) {
                for j in 0..half {
                    let mut w = self.twiddles[j * stride];
                    if dir == Direction::Inverse {
                        w = w.conj();
                    }
                    let u = buf[base + j];
                    let v = buf[base + half + j] * w;
                    buf[base + j] = u + v;
                    buf[base + half + j] = u - v;
                }
            }
            len *= 2;
        }
    }

    fn naive_into(&self, input: &[Complex64], out: &mut Vec<Complex64>, dir: Direction) {
        let n = self.n;
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &x) in input.iter().enumerate() {
                let mut w = self.roots[(k * j) % n];
                if dir == Direction::Inverse {
                    w = w.conj();
                }
                acc += x * w;
            }
            out.push(acc);
        }
    }
}

/// `coeffs[k] = Σ_n x_n·e^{−i2πkn/N}` for any N ≥ 1.
pub fn dft_forward_1d(x: &Signal1D) -> Result<Spectrum1D> {
    let plan = DftPlan::new(x.len())?;
    Spectrum1D::from_complex(plan.forward(x.samples())?)
}

/// Inverse of [`dft_forward_1d`], carrying the 1/N factor.
pub fn dft_inverse_1d(s: &Spectrum1D) -> Result<Signal1D> {
    let plan = DftPlan::new(s.len())?;
    Signal1D::from_complex(plan.inverse(s.coefficients())?)
}

/// `X̂_{kl} = Σ_m Σ_n X_{mn}·e^{−i2π(ln+km)/N}`, computed as a row pass
/// followed by a column pass of the 1D transform.
pub fn dft_forward_2d(x: &Signal2D) -> Result<Spectrum2D> {
    let n = x.n();
    let plan = DftPlan::new(n)?;
    let mut rows = Vec::with_capacity(n * n);
    for m in 0..n {
        rows.extend(plan.forward(&x.samples()[m * n..(m + 1) * n])?);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for l in 0..n {
        for m in 0..n {
            col[m] = rows[m * n + l];
        }
        let f = plan.forward(&col)?;
        for k in 0..n {
            out[k * n + l] = f[k];
        }
    }
    Spectrum2D::from_complex(n, out)
}

/// Inverse of [`dft_forward_2d`], carrying the full 1/N² factor.
pub fn dft_inverse_2d(s: &Spectrum2D) -> Result<Signal2D> {
    let n = s.n();
    let plan = DftPlan::new(n)?;
    let mut rows = Vec::with_capacity(n * n);
    for k in 0..n {
        rows.extend(plan.inverse(&s.coefficients()[k * n..(k + 1) * n])?);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for l in 0..n {
        for k in 0..n {
            col[k] = rows[k * n + l];
        }
        let f = plan.inverse(&col)?;
        for m in 0..n {
            out[m * n + l] = f[m];
        }
    }
    Signal2D::from_complex(n, out)
}

/// Row k of the unnormalized 1D transform matrix: `entries[n] = e^{−i2πkn/N}`.
pub fn basis_row_1d(n: usize, k: usize) -> Result<BasisRow> {
    if n == 0 {
        return Err(SdftError::UnsupportedSize(
            "basis rows need size at least 1".into(),
        ));
    }
    if k >= n {
        return Err(SdftError::InvalidInput(format!(
            "row index {k} out of range for size {n}"
        )));
    }
    let roots: Vec<Complex64> = (0..n).map(|j| forward_root(n, j)).collect();
    Ok(BasisRow::new((0..n).map(|j| roots[(k * j) % n]).collect()))
}

/// Row t = p·N+q of the 2D transform matrix: the Kronecker product of 1D
/// rows p and q, so the entry at flat index m·N+n is `ρ_p^m·ρ_q^n`.
pub fn basis_row_2d(n: usize, p: usize, q: usize) -> Result<BasisRow> {
    if p >= n || q >= n {
        return Err(SdftError::InvalidInput(format!(
            "row index ({p},{q}) out of range for size {n}"
        )));
    }
    let row_p = basis_row_1d(n, p)?;
    let row_q = basis_row_1d(n, q)?;
    let mut entries = Vec::with_capacity(n * n);
    for m in 0..n {
        for j in 0..n {
            entries.push(row_p.entries()[m] * row_q.entries()[j]);
        }
    }
    Ok(BasisRow::new(entries))
}

/// All N rows of the 1D transform matrix, in index order.
pub fn dft_basis_1d(n: usize) -> Result<Vec<BasisRow>> {
    (0..n).map(|k| basis_row_1d(n, k)).collect()
}

/// All N² rows of the 2D transform matrix, in flat order t = p·N+q.
pub fn dft_basis_2d(n: usize) -> Result<Vec<BasisRow>> {
    let mut rows = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            rows.push(basis_row_2d(n, p, q)?);
        }
    }
    Ok(rows)
}
