//! Entanglement distance, its degree-only closed form, and single-qubit
//! entropy and distance measures.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::digraph::DirectedGraph;
use crate::statevector::{
    build_graph_state_capped, plus_amplitude, DensityMatrix1Q, GateParams, PauliVector, PureState,
    StateError, DEFAULT_MAX_QUBITS,
};

/// Largest accepted `|E_sv - E_cf|` for graphs the closed form covers.
pub const DISCREPANCY_TOLERANCE: f64 = 1e-10;

/// Eigenvalues below `-NEGATIVE_EIGENVALUE_TOLERANCE` are rejected.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum EntanglementError {
    State(StateError),
    /// The graph has an antiparallel pair; only the statevector route applies.
    PolicyViolation,
    BadGrid(usize),
    NegativeEigenvalue(f64),
    UnsupportedAxis(SweepAxis),
}

impl From<StateError> for EntanglementError {
    fn from(e: StateError) -> Self {
        EntanglementError::State(e)
    }
}

impl fmt::Display for EntanglementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntanglementError::State(e) => e.fmt(f),
            EntanglementError::PolicyViolation => {
                write!(
                    f,
                    "closed form refused: graph contains an antiparallel pair"
                )
            }
            EntanglementError::BadGrid(n) => write!(f, "grid of {n} points; need at least 3"),
            EntanglementError::NegativeEigenvalue(l) => {
                write!(f, "density matrix has eigenvalue {l}")
            }
            EntanglementError::UnsupportedAxis(a) => write!(f, "axis {a:?} is not an angle"),
        }
    }
}

impl core::error::Error for EntanglementError {}

/// `E^(i) = 1 - |<sigma^(i)>|^2`.
pub fn ed_per_vertex(state: &PureState, i: usize) -> Result<f64, StateError> {
    let v = state.pauli_expectation(i)?;
    // rounding can push |r|^2 a hair above 1
    Ok((1.0 - v.norm_sqr()).max(0.0))
}

pub fn ed_all_vertices(state: &PureState) -> Vec<f64> {
    (0..state.num_qubits())
        .map(|i| ed_per_vertex(state, i).expect("qubit index in range"))
        .collect()
}

/// Entanglement distance per qubit, `1 - (1/M) sum_i |<sigma^(i)>|^2`.
pub fn ed_total(state: &PureState) -> f64 {
    mean(&ed_all_vertices(state))
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn cos_pow(theta: f64, exp: usize) -> f64 {
    libm::pow(libm::cos(theta), exp as f64)
}

/// `1 - cos(theta)^(2 d)` for a vertex of total degree `d`.
pub fn per_vertex_closed_form(degree: usize, theta: f64) -> f64 {
    1.0 - cos_pow(theta, 2 * degree)
}

/// `1 - (1/M) sum_i cos(theta)^(2 d(i))`, using total degrees only.
pub fn ed_closed_form(g: &DirectedGraph, theta: f64) -> Result<f64, EntanglementError> {
    if g.has_antiparallel_pair() {
        return Err(EntanglementError::PolicyViolation);
    }
    let terms: Vec<f64> = g
        .degrees()
        .iter()
        .map(|d| cos_pow(theta, 2 * d.total))
        .collect();
    Ok(1.0 - mean(&terms))
}

/// Bloch vector of a vertex with `d_out` outgoing and `d_in` incoming edges in
/// a `|+>` graph state: `cos(theta)^d (cos phi, -sin phi, 0)` with
/// `phi = d_out psi + d_in theta`.
///
/// Each outgoing edge multiplies `<0|rho|1>` by `e^{i psi} cos(theta)` and each
/// incoming edge by `e^{i theta} cos(theta)`, which gives the phase above for
/// every mix of the two.
pub fn pauli_vector_closed_form(d_out: usize, d_in: usize, gp: &GateParams) -> PauliVector {
    let amp = cos_pow(gp.theta(), d_out + d_in);
    let phi = d_out as f64 * gp.psi() + d_in as f64 * gp.theta();
    PauliVector::new(amp * libm::cos(phi), -amp * libm::sin(phi), 0.0)
}

/// `sqrt(tr[(rho - I/2)^dagger (rho - I/2)] / 2)`.
pub fn hs_distance(rho: &DensityMatrix1Q) -> f64 {
    let mixed = DensityMatrix1Q::maximally_mixed();
    let mut sum = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            sum += (rho.entries[r][c] - mixed.entries[r][c]).norm_sqr();
        }
    }
    libm::sqrt(0.5 * sum)
}

/// `-tr[rho ln rho]` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix1Q) -> Result<f64, EntanglementError> {
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < -NEGATIVE_EIGENVALUE_TOLERANCE {
            return Err(EntanglementError::NegativeEigenvalue(lambda));
        }
        if lambda > 0.0 {
            s -= lambda * libm::log(lambda);
        }
    }
    Ok(s.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Theta,
    Psi,
    Alpha,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSample {
    pub param: f64,
    /// Entanglement distance of the whole state.
    pub ed: f64,
    /// Entropy of qubit 0, nats.
    pub entropy: f64,
    /// Hilbert-Schmidt distance of qubit 0 from `I/2`.
    pub hs_distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub samples: Vec<SweepSample>,
    pub argmax_ed: f64,
    pub argmax_entropy: f64,
    pub argmin_hs: f64,
    /// True when `ed` is flat across the grid, which makes the extrema meaningless.
    pub degenerate: bool,
}

const FLAT_TOLERANCE: f64 = 1e-12;

impl SweepResult {
    fn from_samples(axis: SweepAxis, samples: Vec<SweepSample>) -> Self {
        // first grid point wins ties
        let pick = |key: fn(&SweepSample) -> f64| {
            samples
                .iter()
                .fold(None::<&SweepSample>, |best, s| match best {
                    Some(b) if key(b) >= key(s) => Some(b),
                    _ => Some(s),
                })
                .map(|s| s.param)
                .unwrap_or(f64::NAN)
        };
        let argmax_ed = pick(|s| s.ed);
        let argmax_entropy = pick(|s| s.entropy);
        let argmin_hs = pick(|s| -s.hs_distance);
        let (lo, hi) = samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.ed), hi.max(s.ed))
            });
        SweepResult {
            axis,
            samples,
            argmax_ed,
            argmax_entropy,
            argmin_hs,
            degenerate: hi - lo < FLAT_TOLERANCE,
        }
    }
}

fn grid_points(grid: usize, hi: f64) -> Result<impl Iterator<Item = f64>, EntanglementError> {
    if grid < 3 {
        return Err(EntanglementError::BadGrid(grid));
    }
    let last = (grid - 1) as f64;
    Ok((0..grid).map(move |j| {
        if j + 1 == grid {
            hi
        } else {
            hi * j as f64 / last
        }
    }))
}

fn sample(param: f64, state: &PureState) -> Result<SweepSample, EntanglementError> {
    let rho = state.reduced_density_1q(0)?;
    Ok(SweepSample {
        param,
        ed: ed_total(state),
        entropy: von_neumann_entropy(&rho)?,
        hs_distance: hs_distance(&rho),
    })
}

/// Sweeps the initial qubit state `sqrt(t)|0> + sqrt(1-t)|1>` over
/// `t = 0, 1/(grid-1), ..., 1` for the two-qubit graph with one edge `0 -> 1`.
pub fn alpha_sweep(gp: &GateParams, grid: usize) -> Result<SweepResult, EntanglementError> {
    let g = DirectedGraph::new(2, alloc::vec![(0, 1)]).expect("single edge is valid");
    let samples = grid_points(grid, 1.0)?
        .map(|t| {
            let a0 = Complex64::new(libm::sqrt(t), 0.0);
            let a1 = Complex64::new(libm::sqrt(1.0 - t), 0.0);
            let state = build_graph_state_capped(&g, gp, a0, a1, DEFAULT_MAX_QUBITS)?;
            sample(t, &state)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult::from_samples(SweepAxis::Alpha, samples))
}

/// Sweeps `theta` (or `psi`) over `[0, pi]` on `grid` points for the `|+>`
/// graph state of `g`, holding the other angle of `gp` fixed.
pub fn angle_sweep(
    g: &DirectedGraph,
    axis: SweepAxis,
    gp: &GateParams,
    grid: usize,
) -> Result<SweepResult, EntanglementError> {
    if axis == SweepAxis::Alpha {
        return Err(EntanglementError::UnsupportedAxis(axis));
    }
    let samples = grid_points(grid, PI)?
        .map(|x| {
            let params = match axis {
                SweepAxis::Theta => GateParams::new(x, gp.psi()),
                _ => GateParams::new(gp.theta(), x),
            }?;
            let state = build_plus_state(g, &params, DEFAULT_MAX_QUBITS)?;
            sample(x, &state)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult::from_samples(axis, samples))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSample {
    pub theta: f64,
    pub ed_statevector: f64,
    pub ed_closed_form: Option<f64>,
    pub discrepancy: Option<f64>,
}

/// Statevector and closed-form ED on `grid` values of `theta` in `[0, pi]`.
pub fn theta_comparison(
    g: &DirectedGraph,
    psi: f64,
    grid: usize,
    cap: usize,
) -> Result<Vec<ThetaSample>, EntanglementError> {
    grid_points(grid, PI)?
        .map(|theta| {
            let gp = GateParams::new(theta, psi)?;
            let state = build_plus_state(g, &gp, cap)?;
            let sv = ed_total(&state);
            let cf = match ed_closed_form(g, gp.theta()) {
                Ok(v) => Some(v),
                Err(EntanglementError::PolicyViolation) => None,
                Err(e) => return Err(e),
            };
            Ok(ThetaSample {
                theta,
                ed_statevector: sv,
                ed_closed_form: cf,
                discrepancy: cf.map(|c| libm::fabs(sv - c)),
            })
        })
        .collect()
}

/// Graph state built from `|+>` on every vertex.
pub fn build_plus_state(
    g: &DirectedGraph,
    gp: &GateParams,
    cap: usize,
) -> Result<PureState, StateError> {
    build_graph_state_capped(g, gp, plus_amplitude(), plus_amplitude(), cap)
}

/// Which routes produced an [`EdReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportPolicy {
    /// Statevector and closed form, compared.
    Default,
    /// Antiparallel pairs present; statevector only.
    StatevectorOnly,
}

impl ReportPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ReportPolicy::Default => "default",
            ReportPolicy::StatevectorOnly => "statevector_only",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdReport {
    pub per_vertex: Vec<f64>,
    pub total_statevector: f64,
    pub total_closed_form: Option<f64>,
    /// `|total_statevector - total_closed_form|`, absent with the closed form.
    pub discrepancy: Option<f64>,
    pub graph_hash: String,
    pub gp: GateParams,
    pub policy: ReportPolicy,
    pub seed_info: String,
}

impl EdReport {
    /// False only when both routes ran and disagree beyond tolerance.
    pub fn within_tolerance(&self) -> bool {
        self.discrepancy.is_none_or(|d| d < DISCREPANCY_TOLERANCE)
    }
}

/// Builds the `|+>` graph state, evaluates both routes and compares them.
pub fn verify_graph(g: &DirectedGraph, gp: &GateParams) -> Result<EdReport, EntanglementError> {
    verify_graph_capped(g, gp, DEFAULT_MAX_QUBITS)
}

pub fn verify_graph_capped(
    g: &DirectedGraph,
    gp: &GateParams,
    cap: usize,
) -> Result<EdReport, EntanglementError> {
    let state = build_plus_state(g, gp, cap)?;
    let per_vertex = ed_all_vertices(&state);
    let total_statevector = mean(&per_vertex);
    let (total_closed_form, policy) = match ed_closed_form(g, gp.theta()) {
        Ok(v) => (Some(v), ReportPolicy::Default),
        Err(EntanglementError::PolicyViolation) => (None, ReportPolicy::StatevectorOnly),
        Err(e) => return Err(e),
    };
    Ok(EdReport {
        per_vertex,
        total_statevector,
        total_closed_form,
        discrepancy: total_closed_form.map(|c| libm::fabs(total_statevector - c)),
        graph_hash: g.hash_hex(),
        gp: *gp,
        policy,
        seed_info: String::new(),
    })
}
