//! Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.
//!
//! Eigenvalues only, no vectors: sweeps the strict upper triangle in
//! row-major order, annihilating each off-diagonal entry with a 2×2
//! symmetric Schur rotation, until the off-diagonal mass is negligible.
//! Deterministic: fixed sweep order, fixed thresholds, no pivot search.

/// Eigenvalues of a dense symmetric `n`×`n` matrix (row-major), ascending.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n, "matrix must be n×n");
    let mut a = matrix.to_vec();
    let scale: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
    let tol = 1e-13 * scale;
    const MAX_SWEEPS: usize = 50;

    for _ in 0..MAX_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += a[p * n + q] * a[p * n + q];
            }
        }
        if (2.0 * off_sq).sqrt() <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // Symmetric Schur decomposition of the 2×2 block (p,q).
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Two-sided update B = JᵀAJ, columns then rows.
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = c * arp - s * arq;
                    a[r * n + q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = a[p * n + r];
                    let aqr = a[q * n + r];
                    a[p * n + r] = c * apr - s * aqr;
                    a[q * n + r] = s * apr + c * aqr;
                }
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}
