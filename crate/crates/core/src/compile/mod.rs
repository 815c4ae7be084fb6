//! Digital-analog compilation of Trotter factors onto Ising hardware.
//!
//! Each two-body factor (`ZZ`, `XX` or `YY` couplings) becomes a pair of analog
//! blocks, one plain and one conjugated by `X(pi/2)` on a decoupling pattern,
//! with durations from [`solve_block_times`]. `XX` and `YY` factors are wrapped
//! in a global basis change, and long-range `ZZ` pairs on a linear chain are
//! first brought next to each other by a SWAP network.

pub mod arch;
pub mod routing;
pub mod schedule;
pub mod solve;

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

pub use arch::{Architecture, Edge, EdgeClass};
pub use routing::{interleaved_order, route, swap_network};
pub use schedule::{
    schedule_stats, Axis, Rotation, RotationLayer, Schedule, ScheduleBlock, ScheduleMeta,
    ScheduleStats,
};
pub use solve::{
    edge_sign, effective_profile, solve_block_times, BlockTimes, CouplingProfile, Pattern,
};

use crate::error::{DaqcError, Result};
use crate::fermion::{split_terms, FactorKind, FermiHubbardParams, Model};
use crate::pauli::{Pauli, PauliString, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompileOptions {
    /// Permit negative analog durations (simulation only).
    pub allow_signed_times: bool,
    /// Largest accepted solver residual, relative to `max(1, max |g|)`.
    pub tolerance: f64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            allow_signed_times: false,
            tolerance: 1e-12,
        }
    }
}

impl FactorKind {
    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Z => "z",
            FactorKind::Zz => "zz",
            FactorKind::Xx => "xx",
            FactorKind::Yy => "yy",
        }
    }
}

/// Logical pair `(a, b)` with coupling `g` (coefficient of `P_a P_b`).
pub type PairCoupling = (usize, usize, f64);

fn half_chain(arch: &Architecture) -> Result<usize> {
    let n_q = arch.n_qubits();
    if n_q < 2 || !n_q.is_multiple_of(2) {
        return Err(DaqcError::validation(format!(
            "expected an even qubit count 2n, architecture has {n_q}"
        )));
    }
    Ok(n_q / 2)
}

/// `{2k-1, 2k : k even}`: flips the links between adjacent pairs, keeps the
/// links inside them.
fn alternate_pairs(n_q: usize) -> Pattern {
    (1..=n_q / 2)
        .filter(|k| k % 2 == 0)
        .flat_map(|k| [2 * k - 1, 2 * k])
        .collect()
}

/// `{2k, 2k+1 : k odd}`: flips the links inside adjacent pairs, keeps the
/// links between them.
fn straddling_pairs(n_q: usize) -> Pattern {
    (1..=n_q).filter(|p| (p / 2) % 2 == 1).collect()
}

/// Every second position: flips every chain link.
fn even_positions(n_q: usize) -> Pattern {
    (1..=n_q).filter(|p| p % 2 == 0).collect()
}

/// Both qubits of every second rung (`j` even). Flips every leg, keeps rungs.
fn alternate_rungs(n: usize) -> Pattern {
    (1..=n)
        .filter(|j| j % 2 == 0)
        .flat_map(|j| [j, j + n])
        .collect()
}

/// Qubits `1..=n`: flips every link between the two halves, keeps the rest.
fn first_half(n: usize) -> Pattern {
    (1..=n).collect()
}

/// `[{}, a, b, a ^ b]` where `a` cancels the couplings the factor must not see
/// and `b` negates the ones it keeps, so every sign combination is available.
fn pattern_family(arch: &Architecture, kind: FactorKind, routed: bool) -> Vec<Pattern> {
    let n_q = arch.n_qubits();
    let n = n_q / 2;
    let [a, b] = match (arch, kind) {
        (Architecture::Linear { .. }, FactorKind::Zz) if routed => {
            [alternate_pairs(n_q), straddling_pairs(n_q)]
        }
        (Architecture::Linear { .. }, _) => [first_half(n), even_positions(n_q)],
        (Architecture::Ladder { .. }, FactorKind::Zz) => [alternate_rungs(n), first_half(n)],
        (Architecture::Ladder { .. }, _) => [first_half(n), alternate_rungs(n)],
    };
    let ab: Pattern = a.symmetric_difference(&b).copied().collect();
    let mut family = vec![Pattern::new()];
    for p in [a, b, ab] {
        if !family.contains(&p) {
            family.push(p);
        }
    }
    family
}

/// Index sets of all non-empty subsets of `0..len`, smallest first.
fn subsets(len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..1 << len)
        .map(|m| (0..len).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by_key(Vec::len);
    out
}

fn decoupling_layer(pattern: &Pattern) -> Result<Option<RotationLayer>> {
    if pattern.is_empty() {
        return Ok(None);
    }
    Ok(Some(RotationLayer::on(
        pattern.iter().copied(),
        Axis::X,
        FRAC_PI_2,
    )?))
}

fn analog_blocks(patterns: &[Pattern], durations: &[f64]) -> Result<Vec<ScheduleBlock>> {
    let mut blocks = Vec::new();
    for (pattern, &d) in patterns.iter().zip(durations) {
        if d != 0.0 {
            blocks.push(ScheduleBlock::Analog {
                duration: d,
                conjugation: decoupling_layer(pattern)?,
            });
        }
    }
    Ok(blocks)
}

/// Emit the analog blocks realizing `exp(-i t sum_e g_e Z_u Z_v)` over hardware positions.
///
/// Pattern subsets are tried smallest first; the first exact solution with
/// non-negative durations wins. Signed solutions are used only when allowed.
fn emit_ising(
    arch: &Architecture,
    kind: FactorKind,
    routed: bool,
    profile: &CouplingProfile,
    opts: &CompileOptions,
) -> Result<Vec<ScheduleBlock>> {
    let scale = profile.iter().map(|(_, g)| g.abs()).fold(1.0, f64::max);
    let tol = opts.tolerance * scale;
    let time_scale = profile.total_time.abs().max(1.0);
    let clean = |durations: Vec<f64>| -> Vec<f64> {
        durations
            .into_iter()
            .map(|d| {
                if d.abs() <= 1e-14 * time_scale {
                    0.0
                } else {
                    d
                }
            })
            .collect()
    };

    let family = pattern_family(arch, kind, routed);
    let mut signed: Option<(Vec<Pattern>, Vec<f64>)> = None;
    for idx in subsets(family.len()) {
        let patterns: Vec<Pattern> = idx.iter().map(|&i| family[i].clone()).collect();
        match solve_block_times(arch, &patterns, profile, Some(tol)) {
            Ok(sol) => {
                let d = clean(sol.durations);
                if d.iter().all(|&x| x >= 0.0) {
                    return analog_blocks(&patterns, &d);
                }
                signed.get_or_insert((patterns, d));
            }
            Err(DaqcError::Infeasible { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if signed.is_none() {
        // one block per single-qubit flip, as a general fallback
        let mut general = vec![Pattern::new()];
        general.extend((1..=arch.n_qubits()).map(|q| Pattern::from([q])));
        let d = clean(solve_block_times(arch, &general, profile, Some(tol))?.durations);
        if d.iter().all(|&x| x >= 0.0) {
            return analog_blocks(&general, &d);
        }
        signed = Some((general, d));
    }
    let (patterns, d) = signed.expect("set above");
    if !opts.allow_signed_times {
        let worst = d.iter().copied().fold(0.0, f64::min);
        return Err(DaqcError::SignedTime { duration: worst });
    }
    analog_blocks(&patterns, &d)
}

/// Compile `exp(-i t sum g P_a P_b)` for `P` in `{Z, X, Y}` given by `kind`.
pub fn compile_pairs(
    arch: &Architecture,
    kind: FactorKind,
    pairs: &[PairCoupling],
    t: f64,
    opts: &CompileOptions,
) -> Result<Schedule> {
    arch.validate()?;
    if kind == FactorKind::Z {
        return Err(DaqcError::validation(
            "single-qubit Z factors compile with compile_z_layer",
        ));
    }
    let n_q = arch.n_qubits();
    for &(a, b, g) in pairs {
        for q in [a, b] {
            if q == 0 || q > n_q {
                return Err(DaqcError::Index { index: q, max: n_q });
            }
        }
        if a == b || !g.is_finite() {
            return Err(DaqcError::validation(format!(
                "invalid pair coupling ({a}, {b}, {g})"
            )));
        }
    }
    if !t.is_finite() {
        return Err(DaqcError::validation("evolution time must be finite"));
    }

    let mut schedule = Schedule::empty(*arch, kind.name(), t, 1);
    schedule.allow_signed_times = opts.allow_signed_times;
    if t == 0.0 || pairs.iter().all(|&(_, _, g)| g == 0.0) {
        return Ok(schedule);
    }

    // place logical qubits so that every target pair sits on a hardware edge
    let identity: Vec<usize> = (1..=n_q).collect();
    let adjacent_in = |layout: &[usize]| {
        let mut pos = vec![0; n_q + 1];
        for (p, &q) in layout.iter().enumerate() {
            pos[q] = p + 1;
        }
        pairs
            .iter()
            .all(|&(a, b, _)| arch.has_edge(pos[a], pos[b]))
            .then_some(pos)
    };
    let (layout, positions) = if let Some(pos) = adjacent_in(&identity) {
        (identity.clone(), pos)
    } else if let (Architecture::Linear { .. }, Ok(_)) = (arch, half_chain(arch)) {
        let interleaved = interleaved_order(n_q);
        match adjacent_in(&interleaved) {
            Some(pos) => (interleaved, pos),
            None => {
                return Err(DaqcError::Unsupported(format!(
                    "{} couplings that no SWAP layout of the linear chain makes adjacent",
                    kind.name()
                )))
            }
        }
    } else {
        return Err(DaqcError::Unsupported(format!(
            "{} couplings outside the {} architecture's edges",
            kind.name(),
            arch.name()
        )));
    };
    let routed = layout != identity;

    let mut profile = CouplingProfile::new(t);
    for e in arch.edges() {
        profile.set(e.u, e.v, 0.0);
    }
    for &(a, b, g) in pairs {
        let (u, v) = (positions[a], positions[b]);
        profile.set(u, v, profile.get(u, v) + g);
    }

    let analog = emit_ising(arch, kind, routed, &profile, opts)?;
    if analog.is_empty() {
        return Ok(schedule);
    }
    if routed {
        for (i, j) in route(&identity, &layout)? {
            schedule.blocks.push(ScheduleBlock::Swap { i, j });
        }
    }
    // R(-theta) Z R(theta) maps Z to the target axis; R(theta) runs first.
    let basis = match kind {
        FactorKind::Xx => Some((Axis::Y, FRAC_PI_4)),
        FactorKind::Yy => Some((Axis::X, -FRAC_PI_4)),
        _ => None,
    };
    if let Some((axis, angle)) = basis {
        schedule.blocks.push(ScheduleBlock::Rotations {
            layer: RotationLayer::on(1..=n_q, axis, angle)?,
        });
    }
    schedule.blocks.extend(analog);
    if let Some((axis, angle)) = basis {
        schedule.blocks.push(ScheduleBlock::Rotations {
            layer: RotationLayer::on(1..=n_q, axis, -angle)?,
        });
    }
    Ok(schedule)
}

/// `exp(-i t H_ZZ)` with `H_ZZ = coupling * sum_j Z_j Z_{j+n}` (`coupling = eps/4`
/// for the Fermi-Hubbard model).
pub fn compile_zz(
    arch: &Architecture,
    coupling: f64,
    t: f64,
    opts: &CompileOptions,
) -> Result<Schedule> {
    let n = half_chain(arch)?;
    let pairs: Vec<PairCoupling> = (1..=n).map(|j| (j, j + n, coupling)).collect();
    compile_pairs(arch, FactorKind::Zz, &pairs, t, opts)
}

/// `exp(-i t H_PP)` with `H_PP = coupling * sum_j (P_j P_{j+1} + P_{j+n} P_{j+n+1})`
/// on both half-chains, `P` = `axis` (`coupling = lambda/2` for Fermi-Hubbard).
pub fn compile_xy(
    arch: &Architecture,
    axis: Axis,
    coupling: f64,
    t: f64,
    opts: &CompileOptions,
) -> Result<Schedule> {
    let n = half_chain(arch)?;
    let kind = match axis {
        Axis::X => FactorKind::Xx,
        Axis::Y => FactorKind::Yy,
        Axis::Z => {
            return Err(DaqcError::validation(
                "compile_xy takes the x or y axis; use compile_zz for ZZ couplings",
            ))
        }
    };
    let pairs: Vec<PairCoupling> = [0, n]
        .into_iter()
        .flat_map(|offset| (1..n).map(move |j| (j + offset, j + offset + 1, coupling)))
        .collect();
    compile_pairs(arch, kind, &pairs, t, opts)
}

/// z rotations by `coeff * t` on every qubit: `exp(-i t coeff sum_q Z_q)`.
pub fn z_layer(coeff: f64, t: f64, n_q: usize) -> RotationLayer {
    if coeff == 0.0 || t == 0.0 {
        return RotationLayer::default();
    }
    RotationLayer::on(1..=n_q, Axis::Z, coeff * t).expect("distinct qubits")
}

pub fn compile_z_layer(arch: &Architecture, coeff: f64, t: f64) -> Result<Schedule> {
    arch.validate()?;
    let mut s = Schedule::empty(*arch, FactorKind::Z.name(), t, 1);
    let layer = z_layer(coeff, t, arch.n_qubits());
    if !layer.is_empty() {
        s.blocks.push(ScheduleBlock::Rotations { layer });
    }
    Ok(s)
}

/// Compile one Trotter factor given as a Pauli sum of a single term type.
pub fn compile_factor(
    arch: &Architecture,
    kind: FactorKind,
    factor: &PauliSum,
    t: f64,
    opts: &CompileOptions,
) -> Result<Schedule> {
    if factor.n_qubits() != arch.n_qubits() {
        return Err(DaqcError::Dimension {
            expected: arch.n_qubits(),
            found: factor.n_qubits(),
        });
    }
    factor.ensure_hermitian(crate::dense::HERMITIAN_TOL)?;
    let mismatch = |s: &PauliString| {
        DaqcError::validation(format!(
            "term {s} does not belong to the {} factor",
            kind.name()
        ))
    };
    if kind == FactorKind::Z {
        let mut rotations = Vec::new();
        for (s, c) in factor.terms() {
            if FactorKind::classify(s) != Some(FactorKind::Z) {
                return Err(mismatch(s));
            }
            if c.re != 0.0 && t != 0.0 {
                rotations.push(Rotation {
                    qubit: s.support()[0],
                    axis: Axis::Z,
                    angle: c.re * t,
                });
            }
        }
        let mut sched = Schedule::empty(*arch, kind.name(), t, 1);
        if !rotations.is_empty() {
            sched.blocks.push(ScheduleBlock::Rotations {
                layer: RotationLayer::new(rotations)?,
            });
        }
        return Ok(sched);
    }
    let mut pairs = Vec::with_capacity(factor.len());
    for (s, c) in factor.terms() {
        if FactorKind::classify(s) != Some(kind) {
            return Err(mismatch(s));
        }
        let sup = s.support();
        pairs.push((sup[0], sup[1], c.re));
    }
    compile_pairs(arch, kind, &pairs, t, opts)
}

/// First-order Trotter schedule for `h`: `l` repetitions of the `Z`, `ZZ`,
/// `XX`, `YY` factors, each for `t / l`.
pub fn trotterize_hamiltonian(
    h: &PauliSum,
    t: f64,
    l: usize,
    arch: &Architecture,
    opts: &CompileOptions,
) -> Result<Schedule> {
    if l == 0 {
        return Err(DaqcError::validation(
            "Trotter step count must be at least 1",
        ));
    }
    let factors = split_terms(h)?;
    let dt = t / l as f64;
    let step: Vec<Schedule> = FactorKind::TROTTER_ORDER
        .iter()
        .map(|&kind| compile_factor(arch, kind, factors.get(kind), dt, opts))
        .collect::<Result<_>>()?;
    let mut out = Schedule::empty(*arch, "full", t, l);
    out.allow_signed_times = opts.allow_signed_times;
    for _ in 0..l {
        for s in &step {
            out.append(s)?;
        }
    }
    Ok(out)
}

pub fn trotterize(
    p: &FermiHubbardParams,
    t: f64,
    l: usize,
    arch: &Architecture,
    opts: &CompileOptions,
) -> Result<Schedule> {
    trotterize_model(&Model::FermiHubbard(*p), t, l, arch, opts)
}

pub fn trotterize_model(
    model: &Model,
    t: f64,
    l: usize,
    arch: &Architecture,
    opts: &CompileOptions,
) -> Result<Schedule> {
    if arch.n_qubits() != model.n_qubits() {
        return Err(DaqcError::Dimension {
            expected: model.n_qubits(),
            found: arch.n_qubits(),
        });
    }
    trotterize_hamiltonian(&model.hamiltonian()?, t, l, arch, opts)
}

/// The Pauli sum a single factor schedule should reproduce, for tests and the CLI.
pub fn factor_hamiltonian(model: &Model, kind: FactorKind) -> Result<PauliSum> {
    Ok(split_terms(&model.hamiltonian()?)?.get(kind).clone())
}

/// `sum_q Z_q`, the conserved total magnetization.
pub fn total_z(n_q: usize) -> PauliSum {
    PauliSum::from_terms(
        n_q,
        (1..=n_q).map(|q| {
            (
                Complex64::new(1.0, 0.0),
                PauliString::single(n_q, q, Pauli::Z).expect("qubit in range"),
            )
        }),
    )
    .expect("consistent qubit count")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(n: usize) -> Architecture {
        Architecture::linear(2 * n, 1.0).unwrap()
    }

    fn conj_patterns(s: &Schedule) -> Vec<Vec<usize>> {
        s.blocks
            .iter()
            .filter_map(|b| match b {
                ScheduleBlock::Analog {
                    conjugation: Some(c),
                    ..
                } => Some(c.rotations().iter().map(|r| r.qubit).collect()),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn zz_linear_three_sites() {
        let s = compile_zz(&linear(3), 0.25, 1.0, &CompileOptions::default()).unwrap();
        let st = s.stats();
        assert_eq!(st.swaps, 3);
        assert_eq!(st.analog_blocks, 2);
        assert_eq!(conj_patterns(&s), vec![vec![3, 4]]);
        assert_eq!(s.final_layout(), vec![1, 4, 2, 5, 3, 6]);
        // kept links get beta*(d1 + d2) = coupling
        assert!((st.total_analog_time - 0.25).abs() < 1e-12);
    }

    #[test]
    fn zz_linear_four_sites_uses_optimized_pattern() {
        let s = compile_zz(&linear(4), 0.25, 1.0, &CompileOptions::default()).unwrap();
        assert_eq!(conj_patterns(&s), vec![vec![3, 4, 7, 8]]);
        assert_eq!(s.stats().swaps, 6);
    }

    #[test]
    fn zz_ladder_needs_no_swaps() {
        let arch = Architecture::ladder(3, 1.0, 1.0).unwrap();
        let s = compile_zz(&arch, 0.25, 1.0, &CompileOptions::default()).unwrap();
        assert_eq!(s.stats().swaps, 0);
        assert_eq!(conj_patterns(&s), vec![vec![2, 5]]);
    }

    #[test]
    fn xy_decouples_the_halves() {
        let s = compile_xy(&linear(3), Axis::Y, 0.5, 1.0, &CompileOptions::default()).unwrap();
        assert_eq!(conj_patterns(&s), vec![vec![1, 2, 3]]);
        assert_eq!(s.stats().rotation_layers, 4);
        assert!(s.basis_changes_closed(1e-15));
        let ladder = Architecture::ladder(4, 1.0, 1.0).unwrap();
        let s = compile_xy(&ladder, Axis::X, 0.5, 1.0, &CompileOptions::default()).unwrap();
        assert_eq!(conj_patterns(&s), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn zero_time_compiles_to_nothing() {
        let opts = CompileOptions::default();
        assert!(compile_xy(&linear(3), Axis::X, 0.5, 0.0, &opts)
            .unwrap()
            .blocks
            .is_empty());
        assert!(compile_z_layer(&linear(2), 0.0, 1.0)
            .unwrap()
            .blocks
            .is_empty());
    }

    #[test]
    fn z_layer_angle() {
        let layer = z_layer(0.5, 0.6, 4);
        assert_eq!(layer.rotations().len(), 4);
        assert!(layer
            .rotations()
            .iter()
            .all(|r| (r.angle - 0.3).abs() < 1e-15));
    }

    fn durations(s: &Schedule) -> Vec<f64> {
        s.blocks
            .iter()
            .filter_map(|b| match b {
                ScheduleBlock::Analog { duration, .. } => Some(*duration),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn negative_couplings_use_flipping_patterns() {
        let s = compile_zz(&linear(3), -0.25, 1.0, &CompileOptions::default()).unwrap();
        assert!(durations(&s).iter().all(|&d| d > 0.0));
        assert_eq!(conj_patterns(&s), vec![vec![2, 3, 6], vec![2, 4, 6]]);
    }

    #[test]
    fn signed_times_need_opt_in() {
        // uneven couplings on the two half-chains are outside the designated patterns
        let pairs = [(1, 2, 1.0), (3, 4, -0.3)];
        let err = compile_pairs(
            &linear(2),
            FactorKind::Xx,
            &pairs,
            1.0,
            &CompileOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, DaqcError::SignedTime { .. }));
        let opts = CompileOptions {
            allow_signed_times: true,
            ..Default::default()
        };
        let s = compile_pairs(&linear(2), FactorKind::Xx, &pairs, 1.0, &opts).unwrap();
        assert!(s.allow_signed_times);
        assert!(durations(&s).iter().any(|&d| d < 0.0));
        assert!(s.validate().is_ok());
    }

    #[test]
    fn pattern_family_covers_all_signs() {
        for (arch, kind, routed) in [
            (linear(3), FactorKind::Zz, true),
            (linear(4), FactorKind::Xx, false),
            (
                Architecture::ladder(3, 1.0, 1.0).unwrap(),
                FactorKind::Zz,
                false,
            ),
            (
                Architecture::ladder(4, 1.0, 1.0).unwrap(),
                FactorKind::Yy,
                false,
            ),
        ] {
            let family = pattern_family(&arch, kind, routed);
            assert_eq!(family.len(), 4);
            let signs: std::collections::BTreeSet<Vec<i8>> = family
                .iter()
                .map(|p| {
                    arch.edges()
                        .iter()
                        .map(|e| edge_sign((e.u, e.v), p) as i8)
                        .collect()
                })
                .collect();
            assert_eq!(signs.len(), 4);
        }
    }

    #[test]
    fn rung_hopping_on_a_chain_is_unsupported() {
        let model = Model::Ladder(crate::fermion::LadderParams {
            n: 3,
            delta: 0.1,
            epsilon: 0.2,
            j_rung: 0.3,
            lambda: 0.5,
        });
        let err = trotterize_model(&model, 1.0, 2, &linear(3), &CompileOptions::default());
        assert!(matches!(err, Err(DaqcError::Unsupported(_))));
        let ladder = Architecture::ladder(3, 1.0, 0.7).unwrap();
        assert!(trotterize_model(&model, 1.0, 2, &ladder, &CompileOptions::default()).is_ok());
    }

    #[test]
    fn trotter_schedule_shape() {
        let p = FermiHubbardParams::new(3, 1.0, 1.0, 0.5).unwrap();
        let s = trotterize(&p, 1.0, 4, &linear(3), &CompileOptions::default()).unwrap();
        assert_eq!(s.meta.l, 4);
        assert_eq!(s.meta.target, "full");
        let st = s.stats();
        // per step: ZZ routing there and back, 3 + 3 swaps
        assert_eq!(st.swaps, 4 * 6);
        assert_eq!(st.analog_blocks, 4 * 6);
        assert!(s.has_identity_layout());

        let ladder = Architecture::ladder(3, 1.0, 1.0).unwrap();
        let s = trotterize(&p, 1.0, 4, &ladder, &CompileOptions::default()).unwrap();
        assert_eq!(s.stats().swaps, 0);
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let p = FermiHubbardParams::new(3, 1.0, 1.0, 0.5).unwrap();
        assert!(trotterize(&p, 1.0, 1, &linear(2), &CompileOptions::default()).is_err());
        assert!(trotterize(&p, 1.0, 0, &linear(3), &CompileOptions::default()).is_err());
    }
}
