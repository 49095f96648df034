//! Dense pure-state engine.
//!
//! Amplitude index `k` encodes the computational basis ket whose qubit `i`
//! holds bit `i` of `k`. All edge gates are diagonal, so the production kernel
//! is a per-amplitude phase multiplication and never renormalizes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};
use core::fmt;

use num_complex::Complex64;

use crate::digraph::{DirectedGraph, Edge};

/// Default upper bound on qubits: `2^24` amplitudes, 256 MiB.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Tolerated deviation of `sum |a_k|^2` from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Tolerated deviation of `|alpha0|^2 + |alpha1|^2` from 1.
pub const INIT_NORM_TOLERANCE: f64 = 1e-12;

const BLOCH_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum StateError {
    NotNormalized { norm_sqr: f64 },
    BadLength(usize),
    QubitIndexOutOfRange { qubit: usize, num_qubits: usize },
    SelfLoopEdge(usize),
    TooManyQubits { requested: usize, cap: usize },
    ZeroQubits,
    NonFiniteAngle,
    NormDrift { norm_sqr: f64 },
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::NotNormalized { norm_sqr } => {
                write!(f, "state is not normalized (|psi|^2 = {norm_sqr})")
            }
            StateError::BadLength(n) => write!(f, "{n} amplitudes is not a power of two >= 2"),
            StateError::QubitIndexOutOfRange { qubit, num_qubits } => {
                write!(f, "qubit {qubit} out of range for {num_qubits} qubits")
            }
            StateError::SelfLoopEdge(a) => write!(f, "edge gate on ({a}, {a})"),
            StateError::TooManyQubits { requested, cap } => {
                write!(f, "{requested} qubits exceeds the cap of {cap}")
            }
            StateError::ZeroQubits => write!(f, "a state needs at least one qubit"),
            StateError::NonFiniteAngle => write!(f, "gate angles must be finite"),
            StateError::NormDrift { norm_sqr } => {
                write!(f, "norm drifted to {norm_sqr} during gate application")
            }
        }
    }
}

impl core::error::Error for StateError {}

/// Maps `x` into `[-pi, pi)`. Values already inside are returned untouched.
fn canonical_angle(x: f64) -> f64 {
    if (-PI..PI).contains(&x) {
        x
    } else {
        let y = libm::fmod(x + PI, 2.0 * PI);
        let y = if y < 0.0 { y + 2.0 * PI } else { y };
        let y = y - PI;
        // fmod rounding can land exactly on +pi
        if y >= PI {
            -PI
        } else {
            y
        }
    }
}

/// Angles of the single-qubit gate `Ubar = e^{-i psi} diag(e^{i theta}, e^{-i theta})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateParams {
    theta: f64,
    psi: f64,
}

impl GateParams {
    pub fn new(theta: f64, psi: f64) -> Result<Self, StateError> {
        if !theta.is_finite() || !psi.is_finite() {
            return Err(StateError::NonFiniteAngle);
        }
        Ok(GateParams {
            theta: canonical_angle(theta),
            psi: canonical_angle(psi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// Diagonal of `Ubar`: the phase applied to the target when it reads 0 and 1.
    pub fn target_phases(&self) -> [Complex64; 2] {
        [
            Complex64::from_polar(1.0, self.theta - self.psi),
            Complex64::from_polar(1.0, -self.theta - self.psi),
        ]
    }
}

/// Single-qubit Pauli expectations `(<sigma_x>, <sigma_y>, <sigma_z>)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PauliVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        PauliVector { x, y, z }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn max_abs_diff(&self, other: &PauliVector) -> f64 {
        libm::fabs(self.x - other.x)
            .max(libm::fabs(self.y - other.y))
            .max(libm::fabs(self.z - other.z))
    }
}

/// A single-qubit density matrix `[[rho00, rho01], [rho10, rho11]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix1Q {
    pub entries: [[Complex64; 2]; 2],
}

impl DensityMatrix1Q {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        DensityMatrix1Q { entries }
    }

    /// `(I + x sigma_x + y sigma_y + z sigma_z) / 2`.
    pub fn from_bloch(v: &PauliVector) -> Self {
        let half = 0.5;
        DensityMatrix1Q {
            entries: [
                [
                    Complex64::new(half * (1.0 + v.z), 0.0),
                    Complex64::new(half * v.x, -half * v.y),
                ],
                [
                    Complex64::new(half * v.x, half * v.y),
                    Complex64::new(half * (1.0 - v.z), 0.0),
                ],
            ],
        }
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch(&PauliVector::default())
    }

    pub fn bloch(&self) -> PauliVector {
        let e = &self.entries;
        PauliVector {
            x: 2.0 * e[1][0].re,
            y: 2.0 * e[1][0].im,
            z: (e[0][0] - e[1][1]).re,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let e = &self.entries;
        (e[1][0] - e[0][1].conj()).norm() <= tol
            && libm::fabs(e[0][0].im) <= tol
            && libm::fabs(e[1][1].im) <= tol
    }

    /// Eigenvalues in ascending order, assuming the matrix is Hermitian.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let e = &self.entries;
        let mean = 0.5 * (e[0][0].re + e[1][1].re);
        let half_gap = 0.5 * (e[0][0].re - e[1][1].re);
        let r = libm::hypot(half_gap, e[0][1].norm());
        [mean - r, mean + r]
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix1Q) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                m = m.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        m
    }
}

/// A normalized vector of `2^M` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps caller-supplied amplitudes. The norm is checked, never fixed.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StateError::BadLength(len));
        }
        let state = PureState {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm_sqr = state.norm_sqr();
        if libm::fabs(norm_sqr - 1.0) > NORM_TOLERANCE {
            return Err(StateError::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    /// `(alpha0|0> + alpha1|1>)^{(x) M}` under the default qubit cap.
    pub fn product(
        num_qubits: usize,
        alpha0: Complex64,
        alpha1: Complex64,
    ) -> Result<Self, StateError> {
        Self::product_capped(num_qubits, alpha0, alpha1, DEFAULT_MAX_QUBITS)
    }

    pub fn product_capped(
        num_qubits: usize,
        alpha0: Complex64,
        alpha1: Complex64,
        cap: usize,
    ) -> Result<Self, StateError> {
        check_qubits(num_qubits, cap)?;
        let norm_sqr = alpha0.norm_sqr() + alpha1.norm_sqr();
        if libm::fabs(norm_sqr - 1.0) > INIT_NORM_TOLERANCE {
            return Err(StateError::NotNormalized { norm_sqr });
        }
        let len = 1usize << num_qubits;
        if alpha0 == alpha1 && alpha0 == Complex64::new(FRAC_1_SQRT_2, 0.0) {
            // |+>^M: every amplitude is 2^{-M/2}, built from exact powers of two
            let half_pow = libm::ldexp(1.0, -((num_qubits / 2) as i32));
            let amp = if num_qubits.is_multiple_of(2) {
                half_pow
            } else {
                half_pow * FRAC_1_SQRT_2
            };
            return Ok(PureState {
                num_qubits,
                amplitudes: vec![Complex64::new(amp, 0.0); len],
            });
        }
        let mut amplitudes = Vec::with_capacity(len);
        amplitudes.push(Complex64::new(1.0, 0.0));
        // tensor in one qubit at a time; new qubit is the next high bit
        for _ in 0..num_qubits {
            let n = amplitudes.len();
            for k in 0..n {
                let a = amplitudes[k];
                amplitudes.push(a * alpha1);
                amplitudes[k] = a * alpha0;
            }
        }
        Ok(PureState {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest per-amplitude distance to `other`; infinite if the sizes differ.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.amplitudes.len() != other.amplitudes.len() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_qubit(&self, q: usize) -> Result<(), StateError> {
        if q >= self.num_qubits {
            Err(StateError::QubitIndexOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Applies `U_ab` for `edge = (a, b)`: amplitudes with bit `a` set pick up
    /// the phase `Ubar` assigns to bit `b`.
    pub fn apply_edge_gate(&mut self, edge: Edge, gp: &GateParams) -> Result<(), StateError> {
        let (a, b) = edge;
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(StateError::SelfLoopEdge(a));
        }
        let [phase0, phase1] = gp.target_phases();
        let control = 1usize << a;
        let target = 1usize << b;
        for (k, amp) in self.amplitudes.iter_mut().enumerate() {
            if k & control != 0 {
                *amp *= if k & target == 0 { phase0 } else { phase1 };
            }
        }
        Ok(())
    }

    /// Bloch vector of qubit `i`.
    pub fn pauli_expectation(&self, i: usize) -> Result<PauliVector, StateError> {
        self.check_qubit(i)?;
        let bit = 1usize << i;
        let mut z = 0.0;
        // sum over k with bit i clear of conj(a_k) a_{k | bit} = <1|rho|0>
        let mut coherence = Complex64::new(0.0, 0.0);
        for (k, amp) in self.amplitudes.iter().enumerate() {
            if k & bit == 0 {
                z += amp.norm_sqr();
                coherence += amp.conj() * self.amplitudes[k | bit];
            } else {
                z -= amp.norm_sqr();
            }
        }
        // sigma_y |0> = i|1>, so <sigma_y> = 2 Im <1|rho|0>
        let v = PauliVector {
            x: 2.0 * coherence.re,
            y: 2.0 * coherence.im,
            z,
        };
        debug_assert!(
            v.norm_sqr() <= 1.0 + BLOCH_TOLERANCE,
            "Bloch bound violated: {v:?}"
        );
        Ok(v)
    }

    /// Reduced state of qubit `i`, tracing out every other qubit.
    pub fn reduced_density_1q(&self, i: usize) -> Result<DensityMatrix1Q, StateError> {
        self.check_qubit(i)?;
        let bit = 1usize << i;
        let zero = Complex64::new(0.0, 0.0);
        let mut rho = [[zero; 2]; 2];
        for rest in (0..self.amplitudes.len()).filter(|k| k & bit == 0) {
            let pair = [self.amplitudes[rest], self.amplitudes[rest | bit]];
            for r in 0..2 {
                for c in 0..2 {
                    rho[r][c] += pair[r] * pair[c].conj();
                }
            }
        }
        Ok(DensityMatrix1Q { entries: rho })
    }
}

fn check_qubits(num_qubits: usize, cap: usize) -> Result<(), StateError> {
    if num_qubits == 0 {
        Err(StateError::ZeroQubits)
    } else if num_qubits > cap || num_qubits >= usize::BITS as usize {
        Err(StateError::TooManyQubits {
            requested: num_qubits,
            cap,
        })
    } else {
        Ok(())
    }
}

/// `prod_{(a,b) in L} U_ab (alpha0|0> + alpha1|1>)^{(x) M}` under the default cap.
pub fn build_graph_state(
    g: &DirectedGraph,
    gp: &GateParams,
    alpha0: Complex64,
    alpha1: Complex64,
) -> Result<PureState, StateError> {
    build_graph_state_capped(g, gp, alpha0, alpha1, DEFAULT_MAX_QUBITS)
}

pub fn build_graph_state_capped(
    g: &DirectedGraph,
    gp: &GateParams,
    alpha0: Complex64,
    alpha1: Complex64,
    cap: usize,
) -> Result<PureState, StateError> {
    let mut state = PureState::product_capped(g.num_vertices(), alpha0, alpha1, cap)?;
    let before = state.norm_sqr();
    for &edge in g.edges() {
        state.apply_edge_gate(edge, gp)?;
    }
    let after = state.norm_sqr();
    if libm::fabs(after - before) > NORM_TOLERANCE {
        return Err(StateError::NormDrift { norm_sqr: after });
    }
    Ok(state)
}

/// The `|+>` amplitude `1/sqrt(2)`.
pub fn plus_amplitude() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, 0.0)
}
