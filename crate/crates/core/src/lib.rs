//! Numerics for one-dimensional chiral-symmetric non-Hermitian two-band
//! lattice models: band topology (winding numbers, exceptional points,
//! phase diagrams), quench dynamics (return amplitude, rate function,
//! dynamical quantum phase transitions), the decomposition of the return
//! phase into dynamical and geometric parts with its topological order
//! parameter, and a Hermitian two-qubit dilation of the non-unitary
//! evolution.

pub mod bloch;
pub mod dilation;
pub mod dynphase;
pub mod error;
pub mod mat2;
pub mod quench;
pub mod topology;

pub use bloch::{
    build_lkc, build_nnn_lkc, build_nrssh, ChiralTwoBandModel, FourierSeries, ModelParamsLkc,
    ModelParamsNnnLkc, ModelParamsNrssh, ModelTag, PauliAxis, EPS_E,
};
pub use dilation::{
    dilated_hamiltonian, metric, omega, simulate_dilated, DilationConfig, DilationRun,
};
pub use dynphase::{
    biorthogonal_decompose, dtop, dynamical_phase_closed, dynamical_phase_quadrature,
    geometric_phase, total_phase, DtopValue,
};
pub use error::{Error, Result};
pub use mat2::{Matrix2C, Matrix4C};
pub use quench::{
    critical_set, detect_cusps, dqpt_report, quench_trace, rate_function, return_amplitude,
    CriticalSet, DqptReport, QuenchTrace,
};
pub use topology::{
    exceptional_points, gapless_momenta, phase_boundary_residual, phase_diagram, verify_symmetries,
    winding_number, winding_via_ep_enclosure, AxisSpec, PhaseDiagramGrid, SymmetryReport,
    WindingResult,
};
