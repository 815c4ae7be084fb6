//! Dense state-vector execution of schedules.
//!
//! Basis index bit `q - 1` holds qubit `q`; bit value 1 means occupied and has
//! `Z` eigenvalue `+1`.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compile::{Axis, CouplingProfile, Rotation, RotationLayer, Schedule, ScheduleBlock};
use crate::dense::{CMatrix, DenseOperator, HERMITIAN_TOL};
use crate::error::{DaqcError, Result};
use crate::pauli::{BasisAction, Pauli, PauliSum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest imaginary part tolerated in an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_q: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`, the vacuum.
    pub fn zero(n_q: usize) -> Self {
        Self::basis(n_q, 0).expect("index 0 is always valid")
    }

    pub fn basis(n_q: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_q;
        if index >= dim {
            return Err(DaqcError::Index {
                index,
                max: dim - 1,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_q, amplitudes })
    }

    /// Wrap raw amplitudes; the length must be `2^n_q` and the norm 1.
    pub fn from_amplitudes(n_q: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1usize << n_q {
            return Err(DaqcError::Dimension {
                expected: 1 << n_q,
                found: amplitudes.len(),
            });
        }
        let s = StateVector { n_q, amplitudes };
        if (s.norm() - 1.0).abs() > 1e-10 {
            return Err(DaqcError::validation(format!(
                "state norm {} differs from 1",
                s.norm()
            )));
        }
        Ok(s)
    }

    /// Tensor product of single-qubit states `(a_0, a_1)`, qubit 1 first.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for q in qubits {
            let mut next = vec![ZERO; amplitudes.len() * 2];
            let half = amplitudes.len();
            for (k, a) in amplitudes.iter().enumerate() {
                next[k] = a * q[0];
                next[k + half] = a * q[1];
            }
            amplitudes = next;
        }
        Self::from_amplitudes(qubits.len(), amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_size(other.n_q)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_size(&self, n_q: usize) -> Result<()> {
        if self.n_q != n_q {
            return Err(DaqcError::Dimension {
                expected: self.n_q,
                found: n_q,
            });
        }
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n_q {
            return Err(DaqcError::Index {
                index: qubit,
                max: self.n_q,
            });
        }
        Ok(())
    }

    /// Apply `exp(-i * angle * sigma^axis)` to `qubit`.
    pub fn apply_rotation(&mut self, qubit: usize, axis: Axis, angle: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let m = rotation_matrix(axis, angle);
        let bit = 1usize << (qubit - 1);
        for k in 0..self.amplitudes.len() {
            if k & bit == 0 {
                let a0 = self.amplitudes[k];
                let a1 = self.amplitudes[k | bit];
                self.amplitudes[k] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[k | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_layer(&mut self, layer: &RotationLayer) -> Result<()> {
        for &Rotation { qubit, axis, angle } in layer.rotations() {
            self.apply_rotation(qubit, axis, angle)?;
        }
        Ok(())
    }

    /// Multiply each amplitude by `exp(-i d sum_e g_e z_u z_v)`, `z = 2b - 1`.
    pub fn apply_analog_ising(&mut self, edges: &CouplingProfile, duration: f64) -> Result<()> {
        let mut masks = Vec::new();
        for ((u, v), g) in edges.iter() {
            self.check_qubit(u)?;
            self.check_qubit(v)?;
            masks.push(((1usize << (u - 1)) | (1usize << (v - 1)), g));
        }
        if duration == 0.0 || masks.is_empty() {
            return Ok(());
        }
        for (k, a) in self.amplitudes.iter_mut().enumerate() {
            let energy: f64 = masks
                .iter()
                .map(|&(m, g)| if (k & m).count_ones() == 1 { -g } else { g })
                .sum();
            *a *= Complex64::from_polar(1.0, -duration * energy);
        }
        Ok(())
    }

    /// Exchange qubits `i` and `j`.
    pub fn apply_swap(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_qubit(i)?;
        self.check_qubit(j)?;
        if i == j {
            return Err(DaqcError::validation("swap needs two distinct qubits"));
        }
        let (bi, bj) = (1usize << (i - 1), 1usize << (j - 1));
        for k in 0..self.amplitudes.len() {
            if k & bi != 0 && k & bj == 0 {
                self.amplitudes.swap(k, k ^ bi ^ bj);
            }
        }
        Ok(())
    }

    /// Relabel qubits: the qubit at position `p` becomes qubit `layout[p - 1]`.
    pub fn permute_qubits(&mut self, layout: &[usize]) -> Result<()> {
        self.check_size(layout.len())?;
        let mut seen = vec![false; self.n_q + 1];
        for &q in layout {
            self.check_qubit(q)?;
            if std::mem::replace(&mut seen[q], true) {
                return Err(DaqcError::validation("layout repeats a qubit"));
            }
        }
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (k, a) in self.amplitudes.iter().enumerate() {
            let mut target = 0;
            for (p, &q) in layout.iter().enumerate() {
                if k >> p & 1 == 1 {
                    target |= 1 << (q - 1);
                }
            }
            out[target] = *a;
        }
        self.amplitudes = out;
        Ok(())
    }

    /// `<psi|O|psi>` for a Hermitian observable, identity shift included.
    pub fn expectation(&self, obs: &PauliSum) -> Result<f64> {
        self.check_size(obs.n_qubits())?;
        obs.ensure_hermitian(HERMITIAN_TOL)?;
        let mut total = Complex64::new(obs.identity_shift(), 0.0);
        for (s, c) in obs.terms() {
            let action = BasisAction::new(s);
            let mut acc = ZERO;
            for (k, a) in self.amplitudes.iter().enumerate() {
                let (k2, phase) = action.apply(k);
                acc += self.amplitudes[k2].conj() * phase * a;
            }
            total += c * acc;
        }
        if total.im.abs() > EXPECTATION_IMAG_TOL * (1.0 + obs.max_abs_coeff()) {
            return Err(DaqcError::validation(format!(
                "expectation has imaginary part {}",
                total.im
            )));
        }
        Ok(total.re)
    }

    /// JSON list of `[re, im]` pairs, basis index ascending.
    pub fn to_json(&self) -> Result<String> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|a| [a.re, a.im]).collect();
        Ok(serde_json::to_string(&pairs)?)
    }

    /// Little-endian `f64` pairs `re, im`, basis index ascending.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.amplitudes.len() * 16);
        for a in &self.amplitudes {
            out.extend_from_slice(&a.re.to_le_bytes());
            out.extend_from_slice(&a.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(n_q: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != (16usize << n_q) {
            return Err(DaqcError::Dimension {
                expected: 16 << n_q,
                found: bytes.len(),
            });
        }
        let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8-byte chunk"));
        let amplitudes = bytes
            .chunks_exact(16)
            .map(|c| Complex64::new(f(&c[..8]), f(&c[8..])))
            .collect();
        Self::from_amplitudes(n_q, amplitudes)
    }

    /// Write the state as JSON (`.json`) or raw little-endian bytes (anything else).
    pub fn dump(&self, path: &Path) -> Result<()> {
        let bytes = if path.extension().is_some_and(|e| e == "json") {
            self.to_json()?.into_bytes()
        } else {
            self.to_bytes()
        };
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(&bytes))
            .map_err(|e| DaqcError::io(path, e))
    }
}

/// `cos(angle) I - i sin(angle) sigma` in the occupation basis.
pub fn rotation_matrix(axis: Axis, angle: f64) -> [[Complex64; 2]; 2] {
    let p = match axis {
        Axis::X => Pauli::X,
        Axis::Y => Pauli::Y,
        Axis::Z => Pauli::Z,
    }
    .matrix();
    let (s, c) = angle.sin_cos();
    let mut m = [[ZERO; 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            let id = if r == col { c } else { 0.0 };
            m[r][col] = Complex64::new(id, 0.0) - Complex64::new(0.0, s) * p[r][col];
        }
    }
    m
}

/// Execute a schedule and return the state in logical qubit order.
pub fn run_schedule(psi: &StateVector, s: &Schedule) -> Result<StateVector> {
    psi.check_size(s.n_qubits())?;
    let native = CouplingProfile::native(&s.arch, 0.0);
    let mut out = psi.clone();
    for b in &s.blocks {
        match b {
            ScheduleBlock::Analog {
                duration,
                conjugation,
            } => {
                if let Some(r) = conjugation {
                    out.apply_layer(&r.inverse())?;
                }
                out.apply_analog_ising(&native, *duration)?;
                if let Some(r) = conjugation {
                    out.apply_layer(r)?;
                }
            }
            ScheduleBlock::Rotations { layer } => out.apply_layer(layer)?,
            ScheduleBlock::Swap { i, j } => out.apply_swap(*i, *j)?,
        }
    }
    if !s.has_identity_layout() {
        out.permute_qubits(&s.final_layout())?;
    }
    Ok(out)
}

/// Dense unitary of a schedule, column by column.
pub fn schedule_unitary(s: &Schedule) -> Result<DenseOperator> {
    let n_q = s.n_qubits();
    let dim = 1usize << n_q;
    let mut m = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let col = run_schedule(&StateVector::basis(n_q, k)?, s)?;
        for (r, a) in col.amplitudes().iter().enumerate() {
            m[(r, k)] = *a;
        }
    }
    DenseOperator::from_matrix(n_q, m)
}

pub fn expectation(psi: &StateVector, obs: &PauliSum) -> Result<f64> {
    psi.expectation(obs)
}

/// `prod_k (cos t_k |0> + e^{-i p_k} sin t_k |1>)`, `t_k` uniform on `[0, 2pi]`,
/// `p_k` uniform on `[0, pi]`, drawn qubit by qubit from a ChaCha8 stream.
pub fn random_product_state(seed: u64, n_q: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qubits: Vec<[Complex64; 2]> = (0..n_q)
        .map(|_| {
            let theta: f64 = rng.random_range(0.0..=2.0 * PI);
            let phi: f64 = rng.random_range(0.0..=PI);
            [
                Complex64::new(theta.cos(), 0.0),
                Complex64::from_polar(theta.sin(), -phi),
            ]
        })
        .collect();
    StateVector::product(&qubits).expect("product of normalized qubits")
}
