//! The 2D steerable DFT on N×N grids.
//!
//! Torus-Laplacian eigenvalues are sums μ_{p,q} = λ_p + λ_q of cycle
//! eigenvalues, so μ_{p,q} = μ_{q,p} and μ_{p,q} = μ_{N−p,N−q}: both the
//! transposed index pair and the negated index pair span rotatable planes.
//! `Symmetric` mode rotates ((p,q),(q,p)) pairs; `Conjugate` mode rotates
//! ((p,q),(N−p,N−q)) pairs. Rotations act on flat coefficient indices
//! t = p·N + q of the row-major spectrum.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::dft::{dft_basis_2d, dft_forward_2d, dft_inverse_2d, BasisRow};
use crate::error::{Result, SdftError};
use crate::rotation::{rotate_pair, RotationKind};
use crate::signal::{Signal2D, Spectrum2D};

/// Which family of index pairs a 2D key steers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode2D {
    /// Transposed pairs ((p,q),(q,p)) for p < q: N(N−1)/2 pairs, diagonal
    /// indices (p,p) fixed.
    Symmetric,
    /// Negated pairs ((p,q),(N−p mod N, N−q mod N)) over lexicographic-minimum
    /// representatives: (N²−4)/2 pairs for even N, with the four self-paired
    /// indices (0,0),(0,N/2),(N/2,0),(N/2,N/2) fixed.
    Conjugate,
}

impl PairMode2D {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairMode2D::Symmetric => "2d-sym",
            PairMode2D::Conjugate => "2d-conj",
        }
    }
}

/// A rotated pair of 2D frequency indices: the representative and its partner.
pub type IndexPair2D = ((usize, usize), (usize, usize));

/// The canonical pair enumeration for one mode, in lexicographic (p,q) order
/// of each pair's first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable2D {
    n: usize,
    mode: PairMode2D,
    pairs: Vec<IndexPair2D>,
    fixed: Vec<(usize, usize)>,
}

impl PairTable2D {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> PairMode2D {
        self.mode
    }

    pub fn pairs(&self) -> &[IndexPair2D] {
        &self.pairs
    }

    /// Indices that are never rotated in this mode.
    pub fn fixed_points(&self) -> &[(usize, usize)] {
        &self.fixed
    }
}

fn require_even_2d(n: usize, what: &str) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "{what} needs an even size of at least 4, got {n}"
        )));
    }
    Ok(())
}

/// Enumerate the pairs of one mode for an even size N ≥ 4.
pub fn pair_table_2d(n: usize, mode: PairMode2D) -> Result<PairTable2D> {
    require_even_2d(n, "the 2D pair table")?;
    let mut pairs = Vec::new();
    let mut fixed = Vec::new();
    match mode {
        PairMode2D::Symmetric => {
            for p in 0..n {
                for q in 0..n {
                    if p < q {
                        pairs.push(((p, q), (q, p)));
                    } else if p == q {
                        fixed.push((p, q));
                    }
                }
            }
        }
        PairMode2D::Conjugate => {
            for p in 0..n {
                for q in 0..n {
                    let partner = ((n - p) % n, (n - q) % n);
                    if partner == (p, q) {
                        fixed.push((p, q));
                    } else if (p, q) < partner {
                        pairs.push(((p, q), partner));
                    }
                }
            }
        }
    }
    Ok(PairTable2D {
        n,
        mode,
        pairs,
        fixed,
    })
}

/// Rotation angles for one 2D mode; `angles[i]` steers the i-th table pair.
/// Stored reduced into [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaKey2D {
    table: PairTable2D,
    angles: Vec<f64>,
}

impl ThetaKey2D {
    pub fn new(n: usize, mode: PairMode2D, angles: Vec<f64>) -> Result<Self> {
        let table = pair_table_2d(n, mode)?;
        if angles.len() != table.pairs().len() {
            return Err(SdftError::SizeMismatch(format!(
                "a {} key for size {n} needs {} angles, got {}",
                mode.as_str(),
                table.pairs().len(),
                angles.len()
            )));
        }
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(SdftError::InvalidInput(format!(
                "key angle {bad} is not finite"
            )));
        }
        Ok(Self {
            table,
            angles: angles.into_iter().map(|a| a.rem_euclid(TAU)).collect(),
        })
    }

    pub fn zero(n: usize, mode: PairMode2D) -> Result<Self> {
        let table = pair_table_2d(n, mode)?;
        let count = table.pairs().len();
        Ok(Self {
            table,
            angles: vec![0.0; count],
        })
    }

    pub fn uniform(n: usize, mode: PairMode2D, theta: f64) -> Result<Self> {
        let count = pair_table_2d(n, mode)?.pairs().len();
        Self::new(n, mode, vec![theta; count])
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn mode(&self) -> PairMode2D {
        self.table.mode()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn table(&self) -> &PairTable2D {
        &self.table
    }
}

fn rotate_flat(coeffs: &mut [Complex64], key: &ThetaKey2D, negate: bool) {
    let n = key.n();
    for (i, &((p, q), (r, s))) in key.table().pairs().iter().enumerate() {
        let angle = if negate {
            -key.angles()[i]
        } else {
            key.angles()[i]
        };
        let t1 = p * n + q;
        let t2 = r * n + s;
        let (a, b) = rotate_pair(coeffs[t1], coeffs[t2], angle, RotationKind::Proper);
        coeffs[t1] = a;
        coeffs[t2] = b;
    }
}

fn check_size_2d(data_n: usize, key: &ThetaKey2D) -> Result<()> {
    if data_n != key.n() {
        return Err(SdftError::SizeMismatch(format!(
            "grid size {data_n} does not match key size {}",
            key.n()
        )));
    }
    Ok(())
}

/// Forward 2D steerable transform: the 2D DFT followed by one plane rotation
/// per pair of the key's mode.
pub fn sdft_forward_2d(x: &Signal2D, key: &ThetaKey2D) -> Result<Spectrum2D> {
    check_size_2d(x.n(), key)?;
    let plain = dft_forward_2d(x)?;
    let mut coeffs = plain.coefficients().to_vec();
    rotate_flat(&mut coeffs, key, false);
    Spectrum2D::from_complex(x.n(), coeffs)
}

/// Inverse 2D steerable transform: undo the rotations, then the scaled
/// inverse 2D DFT.
pub fn sdft_inverse_2d(s: &Spectrum2D, key: &ThetaKey2D) -> Result<Signal2D> {
    check_size_2d(s.n(), key)?;
    let mut coeffs = s.coefficients().to_vec();
    rotate_flat(&mut coeffs, key, true);
    dft_inverse_2d(&Spectrum2D::from_complex(s.n(), coeffs)?)
}

/// Apply a key's rotations to an existing spectrum (no transform). This is
/// how modes compose: steering with a symmetric key and then rotating the
/// result with a conjugate key applies the two pair families in a fixed,
/// documented order (they do not commute in general).
pub fn rotate_spectrum_2d(s: &Spectrum2D, key: &ThetaKey2D) -> Result<Spectrum2D> {
    check_size_2d(s.n(), key)?;
    let mut coeffs = s.coefficients().to_vec();
    rotate_flat(&mut coeffs, key, false);
    Spectrum2D::from_complex(s.n(), coeffs)
}

/// Rows of the steered 2D transform matrix: DFT rows with each table pair
/// replaced by its rotated combination, flat row order t = p·N + q.
pub fn steered_basis_2d(key: &ThetaKey2D) -> Result<Vec<BasisRow>> {
    let n = key.n();
    let mut rows: Vec<Vec<Complex64>> = dft_basis_2d(n)?
        .into_iter()
        .map(|r| r.entries().to_vec())
        .collect();
    for (i, &((p, q), (r, s))) in key.table().pairs().iter().enumerate() {
        let theta = key.angles()[i];
        let t1 = p * n + q;
        let t2 = r * n + s;
        let (head, tail) = rows.split_at_mut(t2);
        for (a, b) in head[t1].iter_mut().zip(tail[0].iter_mut()) {
            let (ra, rb) = rotate_pair(*a, *b, theta, RotationKind::Proper);
            *a = ra;
            *b = rb;
        }
    }
    Ok(rows.into_iter().map(BasisRow::new).collect())
}

/// Deviation report from [`real_imag_rotation_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationCheck {
    pub max_real_deviation: f64,
    pub max_imag_deviation: f64,
}

impl RotationCheck {
    pub fn max_deviation(&self) -> f64 {
        self.max_real_deviation.max(self.max_imag_deviation)
    }
}

/// For a real input, steering a symmetric pair rotates (Re X̂_{p,q}, Re X̂_{q,p})
/// and (Im X̂_{p,q}, Im X̂_{q,p}) as two independent points in the plane.
/// Verify that componentwise picture against the actual steered spectrum and
/// report the largest deviation seen.
pub fn real_imag_rotation_check(x: &Signal2D, key: &ThetaKey2D) -> Result<RotationCheck> {
    if !x.is_real() {
        return Err(SdftError::InvalidInput(
            "the rotation check requires a real input grid".into(),
        ));
    }
    if key.mode() != PairMode2D::Symmetric {
        return Err(SdftError::ModeMismatch(
            "the rotation check is defined for symmetric-mode keys".into(),
        ));
    }
    check_size_2d(x.n(), key)?;
    let n = x.n();
    let plain = dft_forward_2d(x)?;
    let steered = sdft_forward_2d(x, key)?;
    let mut check = RotationCheck {
        max_real_deviation: 0.0,
        max_imag_deviation: 0.0,
    };
    for (i, &((p, q), (r, s))) in key.table().pairs().iter().enumerate() {
        let (sin, cos) = key.angles()[i].sin_cos();
        let a = plain.coefficients()[p * n + q];
        let b = plain.coefficients()[r * n + s];
        let a2 = steered.coefficients()[p * n + q];
        let b2 = steered.coefficients()[r * n + s];
        let re_dev = (cos * a.re + sin * b.re - a2.re)
            .abs()
            .max((-sin * a.re + cos * b.re - b2.re).abs());
        let im_dev = (cos * a.im + sin * b.im - a2.im)
            .abs()
            .max((-sin * a.im + cos * b.im - b2.im).abs());
        check.max_real_deviation = check.max_real_deviation.max(re_dev);
        check.max_imag_deviation = check.max_imag_deviation.max(im_dev);
    }
    Ok(check)
}

/// The angle that moves all real-part energy of the pair (a, b) into the
/// first member: θ = atan2(Re b, Re a). Rotating by it leaves Re(b′) = 0 and
/// Re(a′) = √(Re a² + Re b²) ≥ 0. When both real parts are zero there is
/// nothing to compact and the angle is 0 by convention.
pub fn compaction_angle(a: Complex64, b: Complex64) -> f64 {
    if a.re == 0.0 && b.re == 0.0 {
        return 0.0;
    }
    f64::atan2(b.re, a.re)
}

/// Steer every symmetric pair by its own compaction angle, computed from the
/// plain 2D DFT of the input. Returns the compacted spectrum together with
/// the symmetric-mode key that produced it.
pub fn compact_spectrum_2d(x: &Signal2D) -> Result<(Spectrum2D, ThetaKey2D)> {
    let n = x.n();
    require_even_2d(n, "spectrum compaction")?;
    let plain = dft_forward_2d(x)?;
    let table = pair_table_2d(n, PairMode2D::Symmetric)?;
    let angles: Vec<f64> = table
        .pairs()
        .iter()
        .map(|&((p, q), (r, s))| {
            compaction_angle(
                plain.coefficients()[p * n + q],
                plain.coefficients()[r * n + s],
            )
        })
        .collect();
    let key = ThetaKey2D::new(n, PairMode2D::Symmetric, angles)?;
    let mut coeffs = plain.coefficients().to_vec();
    rotate_flat(&mut coeffs, &key, false);
    Ok((Spectrum2D::from_complex(n, coeffs)?, key))
}
