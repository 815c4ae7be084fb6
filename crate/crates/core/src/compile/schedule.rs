//! Schedules: ordered streams of analog Ising blocks, rotation layers and SWAPs.
//!
//! Qubit labels in a schedule are hardware positions. Logical qubit `q` starts
//! at position `q`; every `Swap` block exchanges the logical qubits held by two
//! positions. The final arrangement is [`Schedule::final_layout`], and a
//! simulated schedule is read out in logical order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::arch::Architecture;
use super::routing;
use crate::error::{DaqcError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `exp(-i * angle * sigma^axis)` on one qubit (full angle, no factor 1/2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, Axis, f64)", into = "(usize, Axis, f64)")]
pub struct Rotation {
    pub qubit: usize,
    pub axis: Axis,
    pub angle: f64,
}

impl From<(usize, Axis, f64)> for Rotation {
    fn from((qubit, axis, angle): (usize, Axis, f64)) -> Self {
        Rotation { qubit, axis, angle }
    }
}

impl From<Rotation> for (usize, Axis, f64) {
    fn from(r: Rotation) -> Self {
        (r.qubit, r.axis, r.angle)
    }
}

/// Simultaneous single-qubit rotations, at most one per qubit.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RotationLayer(Vec<Rotation>);

impl RotationLayer {
    pub fn new(rotations: Vec<Rotation>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &rotations {
            if !seen.insert(r.qubit) {
                return Err(DaqcError::validation(format!(
                    "rotation layer touches qubit {} twice",
                    r.qubit
                )));
            }
        }
        Ok(RotationLayer(rotations))
    }

    /// Same rotation on each of `qubits`.
    pub fn on<I: IntoIterator<Item = usize>>(qubits: I, axis: Axis, angle: f64) -> Result<Self> {
        Self::new(
            qubits
                .into_iter()
                .map(|qubit| Rotation { qubit, axis, angle })
                .collect(),
        )
    }

    pub fn rotations(&self) -> &[Rotation] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        RotationLayer(
            self.0
                .iter()
                .map(|r| Rotation {
                    angle: -r.angle,
                    ..*r
                })
                .collect(),
        )
    }
}

impl<'de> Deserialize<'de> for RotationLayer {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rotations = Vec::<Rotation>::deserialize(d)?;
        RotationLayer::new(rotations).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ScheduleBlock {
    /// Free evolution under the architecture's Ising Hamiltonian for `duration`.
    /// With a conjugation layer `R` the block realizes `R exp(-i d H_I) R^dag`:
    /// `R^dag` is applied first, `R` last.
    Analog {
        duration: f64,
        #[serde(default)]
        conjugation: Option<RotationLayer>,
    },
    Rotations {
        layer: RotationLayer,
    },
    /// Ideal SWAP between adjacent hardware positions.
    Swap {
        i: usize,
        j: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMeta {
    /// `"z"`, `"zz"`, `"xx"`, `"yy"` or `"full"`.
    pub target: String,
    /// Simulated time of the target evolution.
    pub t: f64,
    /// Trotter step count.
    pub l: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScheduleStats {
    pub analog_blocks: usize,
    /// Explicit rotation layers plus the two layers of each conjugated block.
    pub rotation_layers: usize,
    pub swaps: usize,
    /// Sum of `|duration|` over analog blocks.
    pub total_analog_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub arch: Architecture,
    pub blocks: Vec<ScheduleBlock>,
    pub meta: ScheduleMeta,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_signed_times: bool,
}

impl Schedule {
    pub fn empty(arch: Architecture, target: impl Into<String>, t: f64, l: usize) -> Self {
        Schedule {
            arch,
            blocks: Vec::new(),
            meta: ScheduleMeta {
                target: target.into(),
                t,
                l,
            },
            allow_signed_times: false,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.arch.n_qubits()
    }

    pub fn stats(&self) -> ScheduleStats {
        let mut s = ScheduleStats::default();
        for b in &self.blocks {
            match b {
                ScheduleBlock::Analog {
                    duration,
                    conjugation,
                } => {
                    s.analog_blocks += 1;
                    s.total_analog_time += duration.abs();
                    if conjugation.as_ref().is_some_and(|c| !c.is_empty()) {
                        s.rotation_layers += 2;
                    }
                }
                ScheduleBlock::Rotations { .. } => s.rotation_layers += 1,
                ScheduleBlock::Swap { .. } => s.swaps += 1,
            }
        }
        s
    }

    /// Position `p` (1-based) holds logical qubit `final_layout()[p - 1]`.
    pub fn final_layout(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.n_qubits()).collect();
        for b in &self.blocks {
            if let ScheduleBlock::Swap { i, j } = *b {
                if (1..=order.len()).contains(&i) && (1..=order.len()).contains(&j) {
                    order.swap(i - 1, j - 1);
                }
            }
        }
        order
    }

    pub fn has_identity_layout(&self) -> bool {
        self.final_layout()
            .iter()
            .enumerate()
            .all(|(p, &q)| p + 1 == q)
    }

    pub fn validate(&self) -> Result<()> {
        self.arch.validate()?;
        let n_q = self.n_qubits();
        let check_layer = |layer: &RotationLayer| -> Result<()> {
            for r in layer.rotations() {
                if r.qubit == 0 || r.qubit > n_q {
                    return Err(DaqcError::Index {
                        index: r.qubit,
                        max: n_q,
                    });
                }
                if !r.angle.is_finite() {
                    return Err(DaqcError::validation("rotation angle must be finite"));
                }
            }
            Ok(())
        };
        for b in &self.blocks {
            match b {
                ScheduleBlock::Analog {
                    duration,
                    conjugation,
                } => {
                    if !duration.is_finite() {
                        return Err(DaqcError::validation("analog duration must be finite"));
                    }
                    if *duration < 0.0 && !self.allow_signed_times {
                        return Err(DaqcError::SignedTime {
                            duration: *duration,
                        });
                    }
                    if let Some(c) = conjugation {
                        check_layer(c)?;
                    }
                }
                ScheduleBlock::Rotations { layer } => check_layer(layer)?,
                ScheduleBlock::Swap { i, j } => {
                    if !self.arch.has_edge(*i, *j) {
                        return Err(DaqcError::validation(format!(
                            "swap ({i}, {j}) is not between coupled positions of the {} architecture",
                            self.arch.name()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Append `other`. If this schedule ends with permuted qubits, SWAPs that
    /// restore the identity layout are emitted first, since `other` assumes
    /// logical qubit `q` sits at position `q`.
    pub fn append(&mut self, other: &Schedule) -> Result<()> {
        if self.arch != other.arch {
            return Err(DaqcError::validation(
                "cannot concatenate schedules for different architectures",
            ));
        }
        if other.blocks.is_empty() {
            return Ok(());
        }
        if !self.has_identity_layout() {
            self.restore_layout()?;
        }
        self.blocks.extend(other.blocks.iter().cloned());
        self.allow_signed_times |= other.allow_signed_times;
        Ok(())
    }

    /// Emit the SWAPs returning every logical qubit to its home position.
    pub fn restore_layout(&mut self) -> Result<()> {
        let layout = self.final_layout();
        let home: Vec<usize> = (1..=self.n_qubits()).collect();
        for (i, j) in routing::route(&layout, &home)? {
            self.blocks.push(ScheduleBlock::Swap { i, j });
        }
        Ok(())
    }

    /// Reverse-time schedule: blocks in reverse order, durations and rotation
    /// angles negated. Requires the identity final layout.
    pub fn inverse(&self) -> Result<Schedule> {
        if !self.has_identity_layout() {
            return Err(DaqcError::Unsupported(
                "inverse of a schedule with a permuted final layout".into(),
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .rev()
            .map(|b| match b {
                ScheduleBlock::Analog {
                    duration,
                    conjugation,
                } => ScheduleBlock::Analog {
                    duration: -duration,
                    conjugation: conjugation.clone(),
                },
                ScheduleBlock::Rotations { layer } => ScheduleBlock::Rotations {
                    layer: layer.inverse(),
                },
                ScheduleBlock::Swap { i, j } => ScheduleBlock::Swap { i: *i, j: *j },
            })
            .collect();
        Ok(Schedule {
            arch: self.arch,
            blocks,
            meta: ScheduleMeta {
                t: -self.meta.t,
                ..self.meta.clone()
            },
            allow_signed_times: true,
        })
    }

    /// Net `x` and `y` angle per qubit over explicit rotation layers is zero.
    ///
    /// Basis changes and decoupling conjugations always come in `theta`/`-theta`
    /// pairs; `z` layers are the physical single-qubit evolution and are not counted.
    pub fn basis_changes_closed(&self, tol: f64) -> bool {
        let n_q = self.n_qubits();
        let mut net = vec![[0.0f64; 2]; n_q + 1];
        for b in &self.blocks {
            if let ScheduleBlock::Rotations { layer } = b {
                for r in layer.rotations() {
                    match r.axis {
                        Axis::X => net[r.qubit][0] += r.angle,
                        Axis::Y => net[r.qubit][1] += r.angle,
                        Axis::Z => {}
                    }
                }
            }
        }
        net.iter().flatten().all(|a| a.abs() <= tol)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Schedule> {
        let s: Schedule = serde_json::from_str(s)?;
        s.validate()?;
        Ok(s)
    }
}

pub fn schedule_stats(s: &Schedule) -> ScheduleStats {
    s.stats()
}
