//! Steerable discrete Fourier transforms: DFT basis rows that share a graph
//! Laplacian eigenvalue are rotated in-plane by per-pair angles, giving a
//! continuum of orthogonal bases with the FFT's cost. On top of the 1D and
//! 2D transforms sit derived tools: cosine/sine/Hilbert transforms at fixed
//! angles, parity filters, spectrum compaction, an eigenbasis verification
//! lab for cycle and torus graphs, and a keyed spectrum scrambler.

pub mod bench;
pub mod dft;
pub mod error;
pub mod graph;
pub mod io;
pub mod parity;
pub mod rotation;
pub mod scramble;
pub mod sdft1d;
pub mod sdft2d;
pub mod signal;

pub use bench::{time_stages_1d, StageTimings};
pub use dft::{
    basis_row_1d, basis_row_2d, dft_basis_1d, dft_basis_2d, dft_forward_1d, dft_forward_2d,
    dft_inverse_1d, dft_inverse_2d, BasisRow, DftPlan,
};
pub use error::{Result, SdftError};
pub use graph::{
    cycle_eigenvalues, cycle_laplacian, cycle_spectrum_report, multiplicity_census_1d,
    multiplicity_census_2d, torus_eigenvalues, torus_laplacian, torus_spectrum_report,
    verify_eigenbasis, EigenClass, EigenClassTag, GraphKind, GraphLaplacian, GraphSpectrumReport,
    MergeNote, EIGENVALUE_GROUP_TOL, EIGEN_RESIDUAL_TOL,
};
pub use parity::{parity_filter_1d, parity_filter_2d, Parity};
pub use rotation::{rotate_pair, RotationKind};
pub use scramble::{
    descramble, keygen, scramble, KeyPurpose, ScrambleKey, ScramblePayload, SCRAMBLE_MARGIN,
};
pub use sdft1d::{
    coefficient_trace, cosine_transform, hilbert, hilbert_real_part, pair_table_1d,
    sdft_forward_1d, sdft_inverse_1d, sine_transform, steered_basis_1d, PairTable1D, ThetaKey1D,
    TracePoint,
};
pub use sdft2d::{
    compact_spectrum_2d, compaction_angle, pair_table_2d, real_imag_rotation_check,
    rotate_spectrum_2d, sdft_forward_2d, sdft_inverse_2d, steered_basis_2d, IndexPair2D,
    PairMode2D, PairTable2D, RotationCheck, ThetaKey2D,
};
pub use signal::{Signal1D, Signal2D, Spectrum1D, Spectrum2D};
