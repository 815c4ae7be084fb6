//! Fermionic lattice models and their Jordan-Wigner qubit form.
//!
//! Spin-up modes of an `n`-site chain occupy qubits `1..=n` and spin-down modes
//! qubits `n+1..=2n`. Qubit occupation is read as `n_q = (1 + Z_q) / 2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DaqcError, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermiHubbardParams {
    pub n: usize,
    pub lambda: f64,
    pub epsilon: f64,
    pub mu: f64,
}

impl FermiHubbardParams {
    pub fn new(n: usize, lambda: f64, epsilon: f64, mu: f64) -> Result<Self> {
        let p = FermiHubbardParams {
            n,
            lambda,
            epsilon,
            mu,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(DaqcError::validation("site count n must be at least 1"));
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("epsilon", self.epsilon),
            ("mu", self.mu),
        ] {
            if !v.is_finite() {
                return Err(DaqcError::validation(format!("{name} must be finite")));
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n
    }

    /// Coefficient of each single-qubit `Z` term, `(epsilon/2 + mu)/2`.
    pub fn z_coefficient(&self) -> f64 {
        0.5 * (0.5 * self.epsilon + self.mu)
    }

    /// Constant dropped when substituting `n = (1 + Z)/2`: `epsilon*n/4 + mu*n`.
    pub fn identity_shift(&self) -> f64 {
        let n = self.n as f64;
        0.25 * self.epsilon * n + self.mu * n
    }
}

/// Spin-ladder couplings. `j_rung` is the rung XY coefficient `J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    #[serde(rename = "J")]
    pub j_rung: f64,
    pub lambda: f64,
}

impl LadderParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(DaqcError::validation("rung count n must be at least 1"));
        }
        for (name, v) in [
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("J", self.j_rung),
            ("lambda", self.lambda),
        ] {
            if !v.is_finite() {
                return Err(DaqcError::validation(format!("{name} must be finite")));
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n
    }

    /// Ladder couplings that reproduce the Fermi-Hubbard qubit Hamiltonian:
    /// `delta = (eps/2 + mu)/2`, rung `eps/4`, `J = 0`, legs `lambda/2`.
    pub fn from_fermi_hubbard(p: &FermiHubbardParams) -> Self {
        LadderParams {
            n: p.n,
            delta: p.z_coefficient(),
            epsilon: 0.25 * p.epsilon,
            j_rung: 0.0,
            lambda: 0.5 * p.lambda,
        }
    }
}

/// `(j, up) -> j`, `(j, down) -> j + n`.
pub fn spin_orbital_to_qubit(site: usize, spin: Spin, n: usize) -> Result<usize> {
    if site == 0 || site > n {
        return Err(DaqcError::Index {
            index: site,
            max: n,
        });
    }
    Ok(match spin {
        Spin::Up => site,
        Spin::Down => site + n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderOp {
    pub site: usize,
    pub spin: Spin,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(site: usize, spin: Spin) -> Self {
        LadderOp {
            site,
            spin,
            dagger: true,
        }
    }

    pub fn annihilate(site: usize, spin: Spin) -> Self {
        LadderOp {
            site,
            spin,
            dagger: false,
        }
    }
}

/// Product of ladder operators (leftmost acts last) with a real weight.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionTerm {
    pub ops: Vec<LadderOp>,
    pub coeff: f64,
}

fn jw_string_check(j: usize, n_q: usize) -> Result<()> {
    if j == 0 || j > n_q {
        return Err(DaqcError::Index { index: j, max: n_q });
    }
    Ok(())
}

/// `c_j^dag = sigma_j^+ prod_{i<j} (-Z_i)` with `sigma^+ = (X + iY)/2`.
///
/// The string factor `-Z_i = (-1)^{n_i}` is the parity of mode `i` under the
/// occupation convention `Z|1> = +|1>`. With it the hopping term
/// `c_j^dag c_{j+1} + h.c.` maps to `(X_j X_{j+1} + Y_j Y_{j+1})/2`.
pub fn jw_creation(j: usize, n_q: usize) -> Result<PauliSum> {
    jw_string_check(j, n_q)?;
    let sign = if (j - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut x = PauliString::identity(n_q);
    for i in 1..j {
        x.set(i, Pauli::Z)?;
    }
    let mut y = x.clone();
    x.set(j, Pauli::X)?;
    y.set(j, Pauli::Y)?;
    PauliSum::from_terms(
        n_q,
        [
            (Complex64::new(0.5 * sign, 0.0), x),
            (Complex64::new(0.0, 0.5 * sign), y),
        ],
    )
}

pub fn jw_annihilation(j: usize, n_q: usize) -> Result<PauliSum> {
    Ok(jw_creation(j, n_q)?.adjoint())
}

/// Jordan-Wigner image of a sum of fermion terms on an `n`-site chain.
///
/// Any identity component is moved into the sum's identity shift.
pub fn fermion_terms_to_qubit(terms: &[FermionTerm], n: usize) -> Result<PauliSum> {
    let n_q = 2 * n;
    let mut total = PauliSum::zero(n_q);
    for term in terms {
        let mut product = PauliSum::identity(n_q);
        for op in &term.ops {
            let q = spin_orbital_to_qubit(op.site, op.spin, n)?;
            let factor = if op.dagger {
                jw_creation(q, n_q)?
            } else {
                jw_annihilation(q, n_q)?
            };
            product = product.checked_mul(&factor)?;
        }
        total = total.checked_add(&product.scale(Complex64::new(term.coeff, 0.0)))?;
    }
    let id = PauliString::identity(n_q);
    let shift = total.coefficient(&id);
    let rest = PauliSum::from_terms(
        n_q,
        total
            .terms()
            .iter()
            .filter(|(s, _)| !s.is_identity())
            .map(|(s, c)| (*c, s.clone())),
    )?;
    Ok(rest.with_identity_shift(shift.re))
}

/// Fermionic Fermi-Hubbard Hamiltonian with open boundaries, written in the
/// split-chain labelling.
pub fn fermi_hubbard_terms(p: &FermiHubbardParams) -> Result<Vec<FermionTerm>> {
    p.validate()?;
    let mut terms = Vec::new();
    for spin in [Spin::Up, Spin::Down] {
        for j in 1..p.n {
            terms.push(FermionTerm {
                ops: vec![LadderOp::create(j, spin), LadderOp::annihilate(j + 1, spin)],
                coeff: p.lambda,
            });
            terms.push(FermionTerm {
                ops: vec![LadderOp::create(j + 1, spin), LadderOp::annihilate(j, spin)],
                coeff: p.lambda,
            });
        }
    }
    for j in 1..=p.n {
        terms.push(FermionTerm {
            ops: vec![
                LadderOp::create(j, Spin::Up),
                LadderOp::annihilate(j, Spin::Up),
                LadderOp::create(j, Spin::Down),
                LadderOp::annihilate(j, Spin::Down),
            ],
            coeff: p.epsilon,
        });
        for spin in [Spin::Up, Spin::Down] {
            terms.push(FermionTerm {
                ops: vec![LadderOp::create(j, spin), LadderOp::annihilate(j, spin)],
                coeff: p.mu,
            });
        }
    }
    Ok(terms)
}

fn push_pair(
    terms: &mut Vec<(f64, PauliString)>,
    n_q: usize,
    a: usize,
    b: usize,
    letter: Pauli,
    coeff: f64,
) -> Result<()> {
    terms.push((coeff, PauliString::pair(n_q, a, b, letter)?));
    Ok(())
}

/// Qubit Fermi-Hubbard Hamiltonian
/// `(eps/2+mu)/2 sum Z_j + eps/4 sum Z_j Z_{j+n} + lambda/2 sum (XX + YY)` on both half-chains,
/// with the dropped constant recorded as the identity shift.
pub fn build_fh_qubit_hamiltonian(p: &FermiHubbardParams) -> Result<PauliSum> {
    p.validate()?;
    let n = p.n;
    let n_q = p.n_qubits();
    let mut terms = Vec::new();
    for q in 1..=n_q {
        terms.push((p.z_coefficient(), PauliString::single(n_q, q, Pauli::Z)?));
    }
    for j in 1..=n {
        push_pair(&mut terms, n_q, j, j + n, Pauli::Z, 0.25 * p.epsilon)?;
    }
    for offset in [0, n] {
        for j in 1..n {
            for letter in [Pauli::X, Pauli::Y] {
                push_pair(
                    &mut terms,
                    n_q,
                    j + offset,
                    j + offset + 1,
                    letter,
                    0.5 * p.lambda,
                )?;
            }
        }
    }
    Ok(PauliSum::from_real_terms(n_q, terms)?.with_identity_shift(p.identity_shift()))
}

/// `delta sum Z + eps sum_rungs ZZ + J sum_rungs (XX+YY) + lambda sum_legs (XX+YY)`.
pub fn build_ladder_hamiltonian(p: &LadderParams) -> Result<PauliSum> {
    p.validate()?;
    let n = p.n;
    let n_q = p.n_qubits();
    let mut terms = Vec::new();
    for q in 1..=n_q {
        terms.push((p.delta, PauliString::single(n_q, q, Pauli::Z)?));
    }
    for j in 1..=n {
        push_pair(&mut terms, n_q, j, j + n, Pauli::Z, p.epsilon)?;
        for letter in [Pauli::X, Pauli::Y] {
            push_pair(&mut terms, n_q, j, j + n, letter, p.j_rung)?;
        }
    }
    for offset in [0, n] {
        for j in 1..n {
            for letter in [Pauli::X, Pauli::Y] {
                push_pair(
                    &mut terms,
                    n_q,
                    j + offset,
                    j + offset + 1,
                    letter,
                    p.lambda,
                )?;
            }
        }
    }
    PauliSum::from_real_terms(n_q, terms)
}

/// The four commuting-within-themselves pieces of a nearest-structure
/// Hamiltonian, in Trotter order.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterFactors {
    pub z: PauliSum,
    pub zz: PauliSum,
    pub xx: PauliSum,
    pub yy: PauliSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Z,
    Zz,
    Xx,
    Yy,
}

impl FactorKind {
    pub const TROTTER_ORDER: [FactorKind; 4] = [
        FactorKind::Z,
        FactorKind::Zz,
        FactorKind::Xx,
        FactorKind::Yy,
    ];

    pub fn classify(s: &PauliString) -> Option<FactorKind> {
        let support = s.support();
        match support.as_slice() {
            [q] if s.axes()[q - 1] == Pauli::Z => Some(FactorKind::Z),
            [a, b] => match (s.axes()[a - 1], s.axes()[b - 1]) {
                (Pauli::Z, Pauli::Z) => Some(FactorKind::Zz),
                (Pauli::X, Pauli::X) => Some(FactorKind::Xx),
                (Pauli::Y, Pauli::Y) => Some(FactorKind::Yy),
                _ => None,
            },
            _ => None,
        }
    }
}

impl TrotterFactors {
    pub fn get(&self, kind: FactorKind) -> &PauliSum {
        match kind {
            FactorKind::Z => &self.z,
            FactorKind::Zz => &self.zz,
            FactorKind::Xx => &self.xx,
            FactorKind::Yy => &self.yy,
        }
    }
}

/// Partition a Hamiltonian into its `Z`, `ZZ`, `XX` and `YY` terms.
pub fn split_terms(h: &PauliSum) -> Result<TrotterFactors> {
    let n_q = h.n_qubits();
    let mut parts: [Vec<(Complex64, PauliString)>; 4] = Default::default();
    for (s, c) in h.terms() {
        let kind = FactorKind::classify(s).ok_or_else(|| {
            DaqcError::validation(format!("term {s} is not a Z, ZZ, XX or YY term"))
        })?;
        let slot = FactorKind::TROTTER_ORDER
            .iter()
            .position(|&k| k == kind)
            .unwrap();
        parts[slot].push((*c, s.clone()));
    }
    let [z, zz, xx, yy] = parts.map(|terms| PauliSum::from_terms(n_q, terms));
    Ok(TrotterFactors {
        z: z?,
        zz: zz?,
        xx: xx?,
        yy: yy?,
    })
}

/// A physical model accepted by the compiler and the experiment harness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    FermiHubbard(FermiHubbardParams),
    Ladder(LadderParams),
}

impl Model {
    pub fn n_sites(&self) -> usize {
        match self {
            Model::FermiHubbard(p) => p.n,
            Model::Ladder(p) => p.n,
        }
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_sites()
    }

    pub fn hamiltonian(&self) -> Result<PauliSum> {
        match self {
            Model::FermiHubbard(p) => build_fh_qubit_hamiltonian(p),
            Model::Ladder(p) => build_ladder_hamiltonian(p),
        }
    }
}

/// Flat JSON form: `{"model": "fh"|"ladder", "n", "lambda", "epsilon", "mu", "J", "delta"}`.
/// Missing couplings default to zero.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: String,
    pub n: usize,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default, rename = "J")]
    pub j_rung: f64,
    #[serde(default)]
    pub delta: f64,
}

impl TryFrom<&ModelSpec> for Model {
    type Error = DaqcError;

    fn try_from(spec: &ModelSpec) -> Result<Model> {
        let model = match spec.model.as_str() {
            "fh" => Model::FermiHubbard(FermiHubbardParams {
                n: spec.n,
                lambda: spec.lambda,
                epsilon: spec.epsilon,
                mu: spec.mu,
            }),
            "ladder" => Model::Ladder(LadderParams {
                n: spec.n,
                delta: spec.delta,
                epsilon: spec.epsilon,
                j_rung: spec.j_rung,
                lambda: spec.lambda,
            }),
            other => {
                return Err(DaqcError::validation(format!(
                    "unknown model {other:?}, expected \"fh\" or \"ladder\""
                )))
            }
        };
        match &model {
            Model::FermiHubbard(p) => p.validate()?,
            Model::Ladder(p) => p.validate()?,
        }
        Ok(model)
    }
}

impl From<&Model> for ModelSpec {
    fn from(m: &Model) -> Self {
        match m {
            Model::FermiHubbard(p) => ModelSpec {
                model: "fh".into(),
                n: p.n,
                lambda: p.lambda,
                epsilon: p.epsilon,
                mu: p.mu,
                ..Default::default()
            },
            Model::Ladder(p) => ModelSpec {
                model: "ladder".into(),
                n: p.n,
                lambda: p.lambda,
                epsilon: p.epsilon,
                j_rung: p.j_rung,
                delta: p.delta,
                ..Default::default()
            },
        }
    }
}
