//! Cycle and torus graph Laplacians, their analytic and numerical spectra,
//! the multiplicity structure of repeated eigenvalues, and residual checks
//! certifying that plain and steered transform bases are Laplacian
//! eigenbases. This module is the evidence that steering never leaves the
//! eigenspace a coefficient pair lives in.

pub mod jacobi;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::dft::{dft_basis_1d, dft_basis_2d, BasisRow};
use crate::error::{Result, SdftError};
use crate::sdft1d::{steered_basis_1d, ThetaKey1D};
use crate::sdft2d::{steered_basis_2d, ThetaKey2D};

/// Absolute tolerance for deciding that two numerically computed eigenvalues
/// belong to the same group. Eigensolver error at the sizes handled here is
/// orders of magnitude below this; analytic gaps are orders above it.
pub const EIGENVALUE_GROUP_TOL: f64 = 1e-8;

/// Largest eigenvector residual a basis may show and still count as verified.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Cycle,
    Torus,
}

impl GraphKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphKind::Cycle => "cycle",
            GraphKind::Torus => "torus",
        }
    }
}

/// A dense symmetric graph Laplacian L = D − A with unit edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphLaplacian {
    kind: GraphKind,
    /// Cycle length / torus side length.
    n: usize,
    /// Vertex count: n for a cycle, n² for a torus.
    vertices: usize,
    /// Row-major vertices×vertices matrix.
    matrix: Vec<f64>,
}

impl GraphLaplacian {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.vertices + j]
    }
}

fn require_cycle_size(n: usize) -> Result<()> {
    if n < 3 {
        return Err(SdftError::UnsupportedSize(format!(
            "cycle graphs need at least 3 vertices, got {n}"
        )));
    }
    Ok(())
}

/// The cycle graph C_N: every vertex has degree 2 and neighbors i±1 mod N.
/// The resulting matrix is circulant.
pub fn cycle_laplacian(n: usize) -> Result<GraphLaplacian> {
    require_cycle_size(n)?;
    let mut matrix = vec![0.0; n * n];
    for i in 0..n {
        matrix[i * n + i] = 2.0;
        matrix[i * n + (i + 1) % n] -= 1.0;
        matrix[i * n + (i + n - 1) % n] -= 1.0;
    }
    Ok(GraphLaplacian {
        kind: GraphKind::Cycle,
        n,
        vertices: n,
        matrix,
    })
}

/// The N×N toroidal grid T_NN, the Cartesian product of two cycles:
/// L(T) = L(C_N) ⊗ I + I ⊗ L(C_N). Vertex (m,j) sits at flat index m·N+j
/// and has degree 4 with neighbors (m±1, j) and (m, j±1) mod N.
pub fn torus_laplacian(n: usize) -> Result<GraphLaplacian> {
    require_cycle_size(n)?;
    let v = n * n;
    let mut matrix = vec![0.0; v * v];
    for m in 0..n {
        for j in 0..n {
            let s = m * n + j;
            matrix[s * v + s] = 4.0;
            matrix[s * v + ((m + 1) % n) * n + j] -= 1.0;
            matrix[s * v + ((m + n - 1) % n) * n + j] -= 1.0;
            matrix[s * v + m * n + (j + 1) % n] -= 1.0;
            matrix[s * v + m * n + (j + n - 1) % n] -= 1.0;
        }
    }
    Ok(GraphLaplacian {
        kind: GraphKind::Torus,
        n,
        vertices: v,
        matrix,
    })
}

/// Cycle-Laplacian eigenvalues λ_k = 2 − 2cos(2πk/N) for k = 0..N−1.
/// λ_0 = 0 and λ_k = λ_{N−k}.
pub fn cycle_eigenvalues(n: usize) -> Result<Vec<f64>> {
    require_cycle_size(n)?;
    Ok((0..n)
        .map(|k| 2.0 - 2.0 * (TAU * k as f64 / n as f64).cos())
        .collect())
}

/// Torus-Laplacian eigenvalues μ_{p,q} = λ_p + λ_q, flattened row-major so
/// that μ_{p,q} sits at index p·N+q — aligned with the 2D basis-row order.
pub fn torus_eigenvalues(n: usize) -> Result<Vec<f64>> {
    let lambda = cycle_eigenvalues(n)?;
    let mut mu = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            mu.push(lambda[p] + lambda[q]);
        }
    }
    Ok(mu)
}

/// How an eigenvalue's index class sits inside the index grid.
///
/// 1D uses `M1` (the unpaired DC and Nyquist indices) and `M2` (a (k, N−k)
/// pair). 2D uses the five classes of the torus spectrum: `M8` for generic
/// interior (p,q), `M4Diag` for (p,p), `M4Axis` for one coordinate pinned at
/// 0 or N/2, `M2Cross` for {(0,N/2),(N/2,0)}, and `M1` for (0,0) and
/// (N/2,N/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenClassTag {
    #[serde(rename = "M1")]
    M1,
    #[serde(rename = "M2")]
    M2,
    #[serde(rename = "M8")]
    M8,
    #[serde(rename = "M4-diag")]
    M4Diag,
    #[serde(rename = "M4-axis")]
    M4Axis,
    #[serde(rename = "M2-cross")]
    M2Cross,
}

impl EigenClassTag {
    /// The member count this tag promises.
    pub fn size(&self) -> usize {
        match self {
            EigenClassTag::M1 => 1,
            EigenClassTag::M2 | EigenClassTag::M2Cross => 2,
            EigenClassTag::M4Diag | EigenClassTag::M4Axis => 4,
            EigenClassTag::M8 => 8,
        }
    }
}

/// One eigenvalue class: its tag, the lexicographically smallest member as
/// representative, all members (1D: [k]; 2D: [p,q]), and the shared
/// eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenClass {
    pub tag: EigenClassTag,
    pub representative: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub mu: f64,
}

/// The 1D multiplicity census: λ_0 and λ_{N/2} are simple, every other
/// eigenvalue is carried by exactly the pair {k, N−k}.
pub fn multiplicity_census_1d(n: usize) -> Result<Vec<EigenClass>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "the 1D census needs an even size of at least 4, got {n}"
        )));
    }
    let lambda = cycle_eigenvalues(n)?;
    let mut classes = vec![EigenClass {
        tag: EigenClassTag::M1,
        representative: vec![0],
        members: vec![vec![0]],
        mu: lambda[0],
    }];
    for (k, &mu) in lambda.iter().enumerate().take(n / 2).skip(1) {
        classes.push(EigenClass {
            tag: EigenClassTag::M2,
            representative: vec![k],
            members: vec![vec![k], vec![n - k]],
            mu,
        });
    }
    classes.push(EigenClass {
        tag: EigenClassTag::M1,
        representative: vec![n / 2],
        members: vec![vec![n / 2]],
        mu: lambda[n / 2],
    });
    Ok(classes)
}

/// The 2D multiplicity census. Each class is the orbit of an index (p,q)
/// under coordinate swap and per-coordinate negation mod N — exactly the
/// moves that preserve μ_{p,q} = λ_p + λ_q. Classes are emitted in
/// lexicographic order of their representatives and partition the grid.
pub fn multiplicity_census_2d(n: usize) -> Result<Vec<EigenClass>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(SdftError::UnsupportedSize(format!(
            "the 2D census needs an even size of at least 4, got {n}"
        )));
    }
    let lambda = cycle_eigenvalues(n)?;
    let mut visited = vec![false; n * n];
    let mut classes = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if visited[p * n + q] {
                continue;
            }
            // Close (p,q) under swap and the two single-coordinate negations.
            let mut orbit = vec![(p, q)];
            visited[p * n + q] = true;
            let mut cursor = 0;
            while cursor < orbit.len() {
                let (a, b) = orbit[cursor];
                cursor += 1;
                for next in [(b, a), ((n - a) % n, b), (a, (n - b) % n)] {
                    if !visited[next.0 * n + next.1] {
                        visited[next.0 * n + next.1] = true;
                        orbit.push(next);
                    }
                }
            }
            orbit.sort_unstable();
            let tag = match orbit.len() {
                1 => EigenClassTag::M1,
                2 => EigenClassTag::M2Cross,
                8 => EigenClassTag::M8,
                4 if p == q => EigenClassTag::M4Diag,
                4 => EigenClassTag::M4Axis,
                other => unreachable!("orbit of size {other} cannot arise for even N"),
            };
            classes.push(EigenClass {
                tag,
                representative: vec![p, q],
                members: orbit.iter().map(|&(a, b)| vec![a, b]).collect(),
                mu: lambda[p] + lambda[q],
            });
        }
    }
    Ok(classes)
}

/// Worst-case eigenvector residual of a basis against a Laplacian:
/// max over rows of ‖L·conj(row_k) − eigvals[k]·conj(row_k)‖_∞ normalized by
/// max(1, ‖row_k‖_∞). Rows are transform-matrix rows, so their conjugates
/// are the eigenvector candidates.
pub fn verify_eigenbasis(
    laplacian: &GraphLaplacian,
    rows: &[BasisRow],
    eigvals: &[f64],
) -> Result<f64> {
    let v = laplacian.vertices();
    if rows.len() != v || eigvals.len() != v {
        return Err(SdftError::SizeMismatch(format!(
            "expected {v} rows and eigenvalues, got {} rows and {} eigenvalues",
            rows.len(),
            eigvals.len()
        )));
    }
    let mut max_residual = 0.0f64;
    for (row, &lambda) in rows.iter().zip(eigvals) {
        if row.len() != v {
            return Err(SdftError::SizeMismatch(format!(
                "basis row has {} entries, Laplacian has {v} vertices",
                row.len()
            )));
        }
        let vec: Vec<Complex64> = row.entries().iter().map(|e| e.conj()).collect();
        let row_inf = vec.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let mut err_inf = 0.0f64;
        for i in 0..v {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, value) in vec.iter().enumerate() {
                let l = laplacian.matrix[i * v + j];
                if l != 0.0 {
                    acc += l * value;
                }
            }
            err_inf = err_inf.max((acc - lambda * vec[i]).norm());
        }
        max_residual = max_residual.max(err_inf / row_inf.max(1.0));
    }
    Ok(max_residual)
}

/// A numerically observed eigenvalue where two or more index classes share
/// one value (classes merge; they never split).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeNote {
    /// Mean of the numerical group.
    pub mu: f64,
    /// Representatives of every class landing on this value.
    pub class_representatives: Vec<Vec<usize>>,
    /// Total numerical multiplicity, equal to the sum of the class sizes.
    pub observed_multiplicity: usize,
}

/// Everything a spectrum verification run produces: the analytic spectrum,
/// the index-class census, observed class merges, and the worst eigenvector
/// residual of the supplied (or default) basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpectrumReport {
    pub kind: GraphKind,
    pub n: usize,
    pub analytic_eigenvalues: Vec<f64>,
    pub classes: Vec<EigenClass>,
    pub merges: Vec<MergeNote>,
    pub max_residual: f64,
}

impl GraphSpectrumReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Group a sorted eigenvalue list into (mean, count) clusters using the
/// fixed grouping tolerance between consecutive values.
fn group_eigenvalues(sorted: &[f64]) -> Vec<(f64, usize)> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > EIGENVALUE_GROUP_TOL {
            let slice = &sorted[start..i];
            let mean = slice.iter().sum::<f64>() / slice.len() as f64;
            groups.push((mean, slice.len()));
            start = i;
        }
    }
    groups
}

/// Cross-check the analytic census against the numerical spectrum: every
/// class must land on exactly one numerical group, and each group's
/// multiplicity must equal the sum of the sizes of the classes on it.
/// Returns the merge notes (groups carrying more than one class).
fn reconcile_census(
    classes: &[EigenClass],
    numerical_sorted: &[f64],
    what: &str,
) -> Result<Vec<MergeNote>> {
    let groups = group_eigenvalues(numerical_sorted);
    let mut per_group: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (ci, class) in classes.iter().enumerate() {
        let hit = groups
            .iter()
            .position(|&(value, _)| (value - class.mu).abs() <= EIGENVALUE_GROUP_TOL);
        match hit {
            Some(g) => per_group[g].push(ci),
            None => {
                return Err(SdftError::Verification(format!(
                    "{what}: analytic eigenvalue {} has no numerical counterpart",
                    class.mu
                )))
            }
        }
    }
    let mut merges = Vec::new();
    for (g, &(value, count)) in groups.iter().enumerate() {
        let class_sum: usize = per_group[g]
            .iter()
            .map(|&ci| classes[ci].members.len())
            .sum();
        if class_sum != count {
            return Err(SdftError::Verification(format!(
                "{what}: numerical eigenvalue {value} has multiplicity {count}, \
                 but the index classes mapping to it cover {class_sum} indices"
            )));
        }
        if per_group[g].len() > 1 {
            merges.push(MergeNote {
                mu: value,
                class_representatives: per_group[g]
                    .iter()
                    .map(|&ci| classes[ci].representative.clone())
                    .collect(),
                observed_multiplicity: count,
            });
        }
    }
    Ok(merges)
}

/// Build the full verification report for a cycle of even length N: analytic
/// spectrum, census, merges against the Jacobi spectrum of the actual
/// Laplacian matrix, and the eigen-residual of the plain transform basis or
/// of a steered basis when a key is given.
pub fn cycle_spectrum_report(n: usize, key: Option<&ThetaKey1D>) -> Result<GraphSpectrumReport> {
    if let Some(k) = key {
        if k.n() != n {
            return Err(SdftError::SizeMismatch(format!(
                "key size {} does not match graph size {n}",
                k.n()
            )));
        }
    }
    let classes = multiplicity_census_1d(n)?;
    let laplacian = cycle_laplacian(n)?;
    let analytic = cycle_eigenvalues(n)?;
    let mut numerical = jacobi::symmetric_eigenvalues(laplacian.matrix(), n);
    numerical.sort_by(f64::total_cmp);
    let merges = reconcile_census(&classes, &numerical, "cycle census")?;
    let rows = match key {
        Some(k) => steered_basis_1d(k)?,
        None => dft_basis_1d(n)?,
    };
    let max_residual = verify_eigenbasis(&laplacian, &rows, &analytic)?;
    Ok(GraphSpectrumReport {
        kind: GraphKind::Cycle,
        n,
        analytic_eigenvalues: analytic,
        classes,
        merges,
        max_residual,
    })
}

/// The torus analogue of [`cycle_spectrum_report`]: N×N grid, flat μ vector,
/// 2D census, and a residual for the plain or steered 2D basis (either
/// pairing mode — both pair families share eigenvalues).
pub fn torus_spectrum_report(n: usize, key: Option<&ThetaKey2D>) -> Result<GraphSpectrumReport> {
    if let Some(k) = key {
        if k.n() != n {
            return Err(SdftError::SizeMismatch(format!(
                "key size {} does not match graph size {n}",
                k.n()
            )));
        }
    }
    let classes = multiplicity_census_2d(n)?;
    let laplacian = torus_laplacian(n)?;
    let analytic = torus_eigenvalues(n)?;
    let mut numerical = jacobi::symmetric_eigenvalues(laplacian.matrix(), n * n);
    numerical.sort_by(f64::total_cmp);
    let merges = reconcile_census(&classes, &numerical, "torus census")?;
    let rows = match key {
        Some(k) => steered_basis_2d(k)?,
        None => dft_basis_2d(n)?,
    };
    let max_residual = verify_eigenbasis(&laplacian, &rows, &analytic)?;
    Ok(GraphSpectrumReport {
        kind: GraphKind::Torus,
        n,
        analytic_eigenvalues: analytic,
        classes,
        merges,
        max_residual,
    })
}
