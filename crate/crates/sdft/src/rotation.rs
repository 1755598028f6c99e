//! The 2×2 plane rotations applied to coefficient pairs.

use num_complex::Complex64;

/// Which 2×2 orthogonal matrix acts on a pair.
///
/// `Proper` is the determinant-+1 rotation
/// `[[cosθ, sinθ], [−sinθ, cosθ]]`; `Improper` is the determinant-−1
/// reflection `[[cosθ, sinθ], [sinθ, −cosθ]]`, which is symmetric and its
/// own inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationKind {
    Proper,
    Improper,
}

/// Apply the chosen 2×2 matrix to the pair (a, b).
pub fn rotate_pair(
    a: Complex64,
    b: Complex64,
    theta: f64,
    kind: RotationKind,
) -> (Complex64, Complex64) {
    let (s, c) = theta.sin_cos();
    match kind {
        RotationKind::Proper => (c * a + s * b, -s * a + c * b),
        RotationKind::Improper => (c * a + s * b, s * a - c * b),
    }
}
