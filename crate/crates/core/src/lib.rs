//! Directed graph states and their entanglement distance.
//!
//! Every vertex of a directed graph carries a qubit prepared in
//! `alpha0|0> + alpha1|1>`. Every oriented edge `(a, b)` applies the diagonal
//! controlled gate `U_ab = |0><0|_a (x) I_b + |1><1|_a (x) Ubar_b` with
//! `Ubar = e^{-i psi} diag(e^{i theta}, e^{-i theta})`. Because all edge gates are
//! diagonal they commute, so the resulting state does not depend on edge order.
//!
//! The entanglement distance per qubit of a pure state is
//! `E = 1 - (1/M) sum_i |<sigma^(i)>|^2`. For graph states built from `|+>`
//! it reduces to `1 - (1/M) sum_i cos(theta)^(2 d(i))`, a function of the vertex
//! degrees alone. This crate computes both sides:
//!
//! - [`digraph`]: graph representation, validation, generators and transforms.
//! - [`statevector`]: dense `2^M` amplitude engine with a diagonal gate kernel.
//! - [`dense`]: generic dense-matrix routes used to cross-check the kernel.
//! - [`entanglement`]: entanglement distance, closed forms, entropy and sweeps.
//!
//! Qubit `i` is bit `i` of the amplitude index (little-endian).
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dense;
pub mod digraph;
pub mod entanglement;
pub mod statevector;

pub use digraph::{
    AntiparallelPolicy, DegreeRecord, DirectedGraph, GenParams, GraphError, GraphKind,
};
pub use entanglement::{
    EdReport, EntanglementError, ReportPolicy, SweepAxis, SweepResult, SweepSample, ThetaSample,
};
pub use statevector::{DensityMatrix1Q, GateParams, PauliVector, PureState, StateError};

pub use num_complex::Complex64;
