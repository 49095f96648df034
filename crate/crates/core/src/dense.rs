//! Generic dense-matrix routes.
//!
//! Nothing here is on the production path. These routines build the edge gate
//! as an explicit matrix and apply it without assuming it is diagonal, so the
//! phase kernel in [`crate::statevector`] can be checked against them.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::statevector::{GateParams, PureState, StateError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Matrix {
            dim: N,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self (x) rhs`; `rhs` acts on the low-order index bits.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Matrix::zeros(n * m);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                for r2 in 0..m {
                    for c2 in 0..m {
                        out.set(r1 * m + r2, c1 * m + c2, a * rhs.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

/// `|0><0|`
pub fn proj0() -> Matrix {
    Matrix::from_rows([[ONE, ZERO], [ZERO, ZERO]])
}

/// `|1><1|`
pub fn proj1() -> Matrix {
    Matrix::from_rows([[ZERO, ZERO], [ZERO, ONE]])
}

/// `Ubar = e^{-i psi} diag(e^{i theta}, e^{-i theta})`, built from the two
/// factors separately.
pub fn ubar(gp: &GateParams) -> Matrix {
    let global = Complex64::from_polar(1.0, -gp.psi());
    let d = Matrix::from_rows([
        [Complex64::from_polar(1.0, gp.theta()), ZERO],
        [ZERO, Complex64::from_polar(1.0, -gp.theta())],
    ]);
    Matrix {
        dim: 2,
        data: d.data.iter().map(|z| z * global).collect(),
    }
}

/// Tensor product of one 2x2 factor per qubit; `factors[i]` acts on qubit `i`
/// (bit `i` of the index).
pub fn kron_qubits(factors: &[Matrix]) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(1), |acc, f| f.kron(&acc))
}

/// `U_ab = P0_a (x) I_b + P1_a (x) Ubar_b` on `num_qubits` qubits.
pub fn edge_operator(gp: &GateParams, a: usize, b: usize, num_qubits: usize) -> Matrix {
    assert!(a != b && a < num_qubits && b < num_qubits);
    let mut idle = vec![Matrix::identity(2); num_qubits];
    idle[a] = proj0();
    let mut active = vec![Matrix::identity(2); num_qubits];
    active[a] = proj1();
    active[b] = ubar(gp);
    kron_qubits(&idle).add(&kron_qubits(&active))
}

/// 4x4 matrix of the edge gate in the local basis `|x_a x_b>`, row index
/// `2 x_a + x_b`.
pub fn edge_gate_matrix(gp: &GateParams) -> Matrix {
    // qubit 0 of the local pair is the target (low bit), qubit 1 the control
    edge_operator(gp, 1, 0, 2)
}

/// Controlled-Z in the same local basis.
pub fn controlled_z() -> Matrix {
    let mut m = Matrix::identity(4);
    m.set(3, 3, Complex64::new(-1.0, 0.0));
    m
}

/// Applies an arbitrary 4x4 two-qubit gate to qubits `(a, b)` of `state`, with
/// the gate's local index `2 x_a + x_b`. Returns the new amplitudes.
pub fn apply_two_qubit_dense(
    state: &PureState,
    a: usize,
    b: usize,
    gate: &Matrix,
) -> Result<Vec<Complex64>, StateError> {
    let m = state.num_qubits();
    for q in [a, b] {
        if q >= m {
            return Err(StateError::QubitIndexOutOfRange {
                qubit: q,
                num_qubits: m,
            });
        }
    }
    if a == b {
        return Err(StateError::SelfLoopEdge(a));
    }
    assert_eq!(gate.dim(), 4);
    let amps = state.amplitudes();
    let (ba, bb) = (1usize << a, 1usize << b);
    let mut out = vec![ZERO; amps.len()];
    for base in (0..amps.len()).filter(|k| k & (ba | bb) == 0) {
        let idx = [base, base | bb, base | ba, base | ba | bb];
        let local = [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]];
        let mapped = gate.apply(&local);
        for (j, v) in idx.iter().zip(mapped) {
            out[*j] = v;
        }
    }
    Ok(out)
}

/// Largest entry of `[U_01, U_12]`, `[U_01, U_02]` and `[U_12, U_02]` on three
/// qubits, each operator built as a full 8x8 matrix.
pub fn commutation_check(gp: &GateParams) -> f64 {
    let ops = [
        edge_operator(gp, 0, 1, 3),
        edge_operator(gp, 1, 2, 3),
        edge_operator(gp, 0, 2, 3),
    ];
    let mut worst: f64 = 0.0;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            worst = worst.max(ops[i].commutator(&ops[j]).max_abs());
        }
    }
    worst
}
