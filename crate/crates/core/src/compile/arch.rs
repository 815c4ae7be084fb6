use serde::{Deserialize, Serialize};

use crate::error::{DaqcError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    /// Nearest-neighbour link of a linear chain.
    Chain,
    /// Link along one leg of a ladder.
    Leg,
    /// Link across a ladder rung.
    Rung,
}

/// A hardware coupling `strength * Z_u Z_v`, with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub strength: f64,
    pub class: EdgeClass,
}

/// Native always-on Ising couplings of the device.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Architecture {
    /// Open chain `beta * sum_i Z_i Z_{i+1}`.
    Linear { n_q: usize, beta: f64 },
    /// Two legs of `n` qubits (`1..=n` and `n+1..=2n`) joined by rungs
    /// `(j, j+n)`; legs couple with `alpha`, rungs with `gamma`.
    Ladder { n: usize, alpha: f64, gamma: f64 },
}

impl Architecture {
    pub fn linear(n_q: usize, beta: f64) -> Result<Self> {
        let a = Architecture::Linear { n_q, beta };
        a.validate()?;
        Ok(a)
    }

    pub fn ladder(n: usize, alpha: f64, gamma: f64) -> Result<Self> {
        let a = Architecture::Ladder { n, alpha, gamma };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        let (count, strengths): (usize, &[f64]) = match self {
            Architecture::Linear { n_q, beta } => (*n_q, std::slice::from_ref(beta)),
            Architecture::Ladder { n, alpha, gamma } => (*n, &[*alpha, *gamma][..]),
        };
        if count == 0 {
            return Err(DaqcError::validation(
                "architecture needs at least one qubit",
            ));
        }
        if strengths.iter().any(|s| !s.is_finite() || *s == 0.0) {
            return Err(DaqcError::validation(
                "architecture couplings must be finite and non-zero",
            ));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            Architecture::Linear { n_q, .. } => *n_q,
            Architecture::Ladder { n, .. } => 2 * n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Architecture::Linear { .. } => "linear",
            Architecture::Ladder { .. } => "ladder",
        }
    }

    /// Edge list in a fixed order: chain links by position, or ladder legs
    /// (first leg, then second) followed by rungs.
    pub fn edges(&self) -> Vec<Edge> {
        match *self {
            Architecture::Linear { n_q, beta } => (1..n_q)
                .map(|i| Edge {
                    u: i,
                    v: i + 1,
                    strength: beta,
                    class: EdgeClass::Chain,
                })
                .collect(),
            Architecture::Ladder { n, alpha, gamma } => {
                let legs = [0, n].into_iter().flat_map(move |offset| {
                    (1..n).map(move |j| Edge {
                        u: j + offset,
                        v: j + offset + 1,
                        strength: alpha,
                        class: EdgeClass::Leg,
                    })
                });
                let rungs = (1..=n).map(move |j| Edge {
                    u: j,
                    v: j + n,
                    strength: gamma,
                    class: EdgeClass::Rung,
                });
                legs.chain(rungs).collect()
            }
        }
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<Edge> {
        let (u, v) = (a.min(b), a.max(b));
        self.edges().into_iter().find(|e| e.u == u && e.v == v)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge(a, b).is_some()
    }
}
