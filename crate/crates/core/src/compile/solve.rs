//! Block-time solver: choose analog durations for a set of rotation patterns so
//! the summed evolution realizes a target coupling profile.
//!
//! Conjugating an analog block with `X(pi/2)` on the qubits of a pattern flips
//! the sign of every edge with exactly one rotated endpoint. For patterns
//! `P_1..P_K` with durations `t_k`, edge `e` accumulates
//! `sum_k strength_e * sign_e(P_k) * t_k`, which must equal `g_e * t_f`.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};

use super::arch::Architecture;
use crate::error::{DaqcError, Result};

/// Qubits rotated by `X(pi/2)` around an analog block.
pub type Pattern = BTreeSet<usize>;

/// `(-1)^{|{u, v} ∩ pattern|}`.
pub fn edge_sign(edge: (usize, usize), pattern: &Pattern) -> f64 {
    let hits = pattern.contains(&edge.0) as u32 + pattern.contains(&edge.1) as u32;
    if hits.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Target effective couplings `g_e` over hardware edges, to be held for `total_time`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingProfile {
    couplings: BTreeMap<(usize, usize), f64>,
    pub total_time: f64,
}

impl CouplingProfile {
    pub fn new(total_time: f64) -> Self {
        CouplingProfile {
            couplings: BTreeMap::new(),
            total_time,
        }
    }

    /// Profile equal to the architecture's native couplings.
    pub fn native(arch: &Architecture, total_time: f64) -> Self {
        let mut p = Self::new(total_time);
        for e in arch.edges() {
            p.set(e.u, e.v, e.strength);
        }
        p
    }

    pub fn set(&mut self, a: usize, b: usize, g: f64) {
        self.couplings.insert((a.min(b), a.max(b)), g);
    }

    pub fn with(mut self, a: usize, b: usize, g: f64) -> Self {
        self.set(a, b, g);
        self
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.couplings
            .get(&(a.min(b), a.max(b)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.couplings.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.couplings.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockTimes {
    pub durations: Vec<f64>,
    /// `||T t - g||_2` in coupling units.
    pub residual: f64,
}

/// `T[e][k] = strength_e * sign_e(P_k)` (times `1/t_f`, applied by the caller).
fn sign_matrix(arch: &Architecture, patterns: &[Pattern]) -> DMatrix<f64> {
    let edges = arch.edges();
    DMatrix::from_fn(edges.len(), patterns.len(), |r, c| {
        edges[r].strength * edge_sign((edges[r].u, edges[r].v), &patterns[c])
    })
}

/// Effective couplings produced by running each pattern for its duration,
/// normalized by `total_time`.
pub fn effective_profile(
    arch: &Architecture,
    patterns: &[Pattern],
    durations: &[f64],
    total_time: f64,
) -> CouplingProfile {
    let t = sign_matrix(arch, patterns) * DVector::from_column_slice(durations);
    let mut p = CouplingProfile::new(total_time);
    for (e, g) in arch.edges().iter().zip(t.iter()) {
        p.set(e.u, e.v, g / total_time);
    }
    p
}

/// Minimum-norm least-squares durations for `patterns` realizing `target`.
///
/// With `tolerance = Some(tol)` a residual above `tol` is an
/// [`DaqcError::Infeasible`] error; with `None` the best fit is returned as is.
pub fn solve_block_times(
    arch: &Architecture,
    patterns: &[Pattern],
    target: &CouplingProfile,
    tolerance: Option<f64>,
) -> Result<BlockTimes> {
    if patterns.is_empty() {
        return Err(DaqcError::validation("need at least one rotation pattern"));
    }
    let n_q = arch.n_qubits();
    for p in patterns {
        if let Some(&q) = p.iter().find(|&&q| q == 0 || q > n_q) {
            return Err(DaqcError::Index { index: q, max: n_q });
        }
    }
    for ((u, v), _) in target.iter() {
        if !arch.has_edge(u, v) {
            return Err(DaqcError::validation(format!(
                "target coupling ({u}, {v}) is not a hardware edge"
            )));
        }
    }
    let t_f = target.total_time;
    if !t_f.is_finite() {
        return Err(DaqcError::validation("total time must be finite"));
    }
    let edges = arch.edges();
    let g = DVector::from_iterator(edges.len(), edges.iter().map(|e| target.get(e.u, e.v)));
    if t_f == 0.0 {
        // exp(-i * 0 * H) needs no evolution at all
        return Ok(BlockTimes {
            durations: vec![0.0; patterns.len()],
            residual: 0.0,
        });
    }

    let a = sign_matrix(arch, patterns);
    let rhs = &g * t_f;
    let svd = a.clone().svd(true, true);
    let cutoff = 1e-12 * svd.singular_values.max().max(f64::MIN_POSITIVE);
    let durations = svd
        .solve(&rhs, cutoff)
        .map_err(|e| DaqcError::validation(format!("least-squares solve failed: {e}")))?;
    let residual = ((&a * &durations) / t_f - &g).norm();
    if let Some(tol) = tolerance {
        if residual > tol {
            return Err(DaqcError::Infeasible {
                residual,
                tolerance: tol,
            });
        }
    }
    Ok(BlockTimes {
        durations: durations.iter().copied().collect(),
        residual,
    })
}
