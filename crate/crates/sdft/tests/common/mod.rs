//! Shared oracles for the integration suites: brute-force transforms, dense
//! rotated-operator products, and reference generators, all written straight
//! from the defining sums so they share no code with the library under test.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Small deterministic generator for test data.
pub struct TestRng {
    state: u64,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform in [-1, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    /// Uniform angle in [0, 2π).
    pub fn next_angle(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64) * TAU
    }

    pub fn real_vec(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_f64()).collect()
    }

    pub fn complex_vec(&mut self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(self.next_f64(), self.next_f64()))
            .collect()
    }

    pub fn angle_vec(&mut self, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.next_angle()).collect()
    }
}

/// e^{-2πi·num/den} evaluated directly.
fn unit_root(num: i64, den: usize) -> Complex64 {
    let phase = -TAU * num as f64 / den as f64;
    Complex64::new(phase.cos(), phase.sin())
}

/// Brute-force unnormalized forward DFT.
pub fn naive_dft_1d(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, &v)| v * unit_root((k * j) as i64, n))
                .sum()
        })
        .collect()
}

/// Brute-force inverse DFT with the whole 1/N factor.
pub fn naive_idft_1d(s: &[Complex64]) -> Vec<Complex64> {
    let n = s.len();
    (0..n)
        .map(|j| {
            let sum: Complex64 = s
                .iter()
                .enumerate()
                .map(|(k, &v)| v * unit_root(-((k * j) as i64), n))
                .sum();
            sum / n as f64
        })
        .collect()
}

/// Brute-force unnormalized 2D DFT of a row-major n×n array.
pub fn naive_dft_2d(x: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for p in 0..n {
        for q in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                for j in 0..n {
                    acc += x[m * n + j] * unit_root((p * m + q * j) as i64, n);
                }
            }
            out[p * n + q] = acc;
        }
    }
    out
}

/// Dense n×n forward DFT operator, one row per output frequency.
pub fn dense_dft_matrix_1d(n: usize) -> Vec<Vec<Complex64>> {
    (0..n)
        .map(|k| (0..n).map(|j| unit_root((k * j) as i64, n)).collect())
        .collect()
}

/// Dense n²×n² forward 2D DFT operator over row-major flat indices.
pub fn dense_dft_matrix_2d(n: usize) -> Vec<Vec<Complex64>> {
    (0..n * n)
        .map(|t| {
            let (p, q) = (t / n, t % n);
            (0..n * n)
                .map(|s| {
                    let (m, j) = (s / n, s % n);
                    unit_root((p * m + q * j) as i64, n)
                })
                .collect()
        })
        .collect()
}

/// Plane-rotate rows `a` and `b` of a dense operator by `theta`.
pub fn rotate_matrix_rows(matrix: &mut [Vec<Complex64>], a: usize, b: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for j in 0..matrix[a].len() {
        let (ra, rb) = (matrix[a][j], matrix[b][j]);
        matrix[a][j] = c * ra + s * rb;
        matrix[b][j] = -s * ra + c * rb;
    }
}

/// Dense steered 1D operator: rotate rows (k, n−k) of the DFT matrix by
/// angles[k−1] for k = 1..n/2−1.
pub fn dense_steered_matrix_1d(n: usize, angles: &[f64]) -> Vec<Vec<Complex64>> {
    assert_eq!(angles.len(), n / 2 - 1);
    let mut m = dense_dft_matrix_1d(n);
    for (i, &theta) in angles.iter().enumerate() {
        let k = i + 1;
        rotate_matrix_rows(&mut m, k, n - k, theta);
    }
    m
}

/// A 2D frequency pair: representative index and its partner.
pub type Pair2D = ((usize, usize), (usize, usize));

/// Frequency pairs sharing an eigenvalue by index swap: ((p,q),(q,p)), p < q,
/// in lexicographic scan order of the first member.
pub fn symmetric_pairs(n: usize) -> Vec<Pair2D> {
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if p < q {
                pairs.push(((p, q), (q, p)));
            }
        }
    }
    pairs
}

/// Frequency pairs tied by conjugation: ((p,q),(−p mod n,−q mod n)) with the
/// lexicographically smaller member first, scan order of that member.
pub fn conjugate_pairs(n: usize) -> Vec<Pair2D> {
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let partner = ((n - p) % n, (n - q) % n);
            if (p, q) < partner {
                pairs.push(((p, q), partner));
            }
        }
    }
    pairs
}

/// Dense steered 2D operator: rotate the flat rows of the 2D DFT matrix for
/// each listed pair by its angle.
pub fn dense_steered_matrix_2d(n: usize, pairs: &[Pair2D], angles: &[f64]) -> Vec<Vec<Complex64>> {
    assert_eq!(angles.len(), pairs.len());
    let mut m = dense_dft_matrix_2d(n);
    for (&((p, q), (r, s)), &theta) in pairs.iter().zip(angles) {
        rotate_matrix_rows(&mut m, p * n + q, r * n + s, theta);
    }
    m
}

/// Dense operator applied to a vector.
pub fn matvec(matrix: &[Vec<Complex64>], x: &[Complex64]) -> Vec<Complex64> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(&r, &v)| r * v).sum())
        .collect()
}

/// Frequency-domain Hilbert oracle: multiply the spectrum by −i·sgn, where
/// sgn is +1 below Nyquist, −1 above, and 0 at DC and Nyquist, then invert.
pub fn hilbert_oracle(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let spectrum = naive_dft_1d(
        &x.iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect::<Vec<_>>(),
    );
    let filtered: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let sgn = if k == 0 || k == n / 2 {
                0.0
            } else if k < n / 2 {
                1.0
            } else {
                -1.0
            };
            Complex64::new(0.0, -sgn) * v
        })
        .collect();
    naive_idft_1d(&filtered).iter().map(|v| v.re).collect()
}

/// Direct cosine sum Σ_n x_n cos(2πkn/N).
pub fn direct_cosine_sum(x: &[f64], k: usize) -> f64 {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(j, &v)| v * (TAU * (k * j) as f64 / n as f64).cos())
        .sum()
}

/// Direct sine sum Σ_n x_n sin(2πkn/N).
pub fn direct_sine_sum(x: &[f64], k: usize) -> f64 {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(j, &v)| v * (TAU * (k * j) as f64 / n as f64).sin())
        .sum()
}

/// Even symmetrization (x_j + x_{−j mod n})/2.
pub fn even_part_1d(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n).map(|j| (x[j] + x[(n - j) % n]) / 2.0).collect()
}

/// Odd symmetrization (x_j − x_{−j mod n})/2.
pub fn odd_part_1d(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n).map(|j| (x[j] - x[(n - j) % n]) / 2.0).collect()
}

/// Centro-even symmetrization (x_{m,j} + x_{−m,−j})/2 over a row-major n×n grid.
pub fn even_part_2d(x: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for m in 0..n {
        for j in 0..n {
            out[m * n + j] = (x[m * n + j] + x[((n - m) % n) * n + (n - j) % n]) / 2.0;
        }
    }
    out
}

/// Centro-odd symmetrization (x_{m,j} − x_{−m,−j})/2.
pub fn odd_part_2d(x: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for m in 0..n {
        for j in 0..n {
            out[m * n + j] = (x[m * n + j] - x[((n - m) % n) * n + (n - j) % n]) / 2.0;
        }
    }
    out
}

/// Reference SplitMix64 stream, written out step by step from the published
/// constants rather than shared with the library.
pub struct RefSplitMix64 {
    state: u64,
}

impl RefSplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z ^= z >> 30;
        z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z ^= z >> 27;
        z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): top 53 bits over 2^53.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / 9007199254740992.0
    }
}

/// Largest absolute componentwise difference between two complex slices.
pub fn max_complex_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest absolute difference between two real slices.
pub fn max_real_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs())
        .fold(0.0, f64::max)
}
