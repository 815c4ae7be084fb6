//! Pauli strings and weighted sums of them.
//!
//! Qubits are numbered from 1. Inside a [`PauliString`] the letter for qubit
//! `q` lives at offset `q - 1`, so the axes string `"XIZ"` puts `X` on qubit 1
//! and `Z` on qubit 3.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DaqcError, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Single-qubit product `self * other = phase * product`.
    pub fn product(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (ONE, I),
            (X, Y) => (IM, Z),
            (Y, X) => (-IM, Z),
            (Y, Z) => (IM, X),
            (Z, Y) => (-IM, X),
            (Z, X) => (IM, Y),
            (X, Z) => (-IM, Y),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// 2x2 matrix in the occupation basis `(|b=0>, |b=1>)`, where `Z = diag(-1, +1)`.
    ///
    /// `Y` follows from `XY = iZ`, which gives `Y = [[0, i], [-i, 0]]` here.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        match self {
            Pauli::I => [[ONE, z], [z, ONE]],
            Pauli::X => [[z, ONE], [ONE, z]],
            Pauli::Y => [[z, IM], [-IM, z]],
            Pauli::Z => [[-ONE, z], [z, ONE]],
        }
    }

    /// `true` when the letter is `X` or `Y` (flips the occupation bit).
    pub fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }
}

/// Tensor product of single-qubit Pauli letters, one per qubit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn identity(n_q: usize) -> Self {
        PauliString(vec![Pauli::I; n_q])
    }

    pub fn from_axes(axes: Vec<Pauli>) -> Self {
        PauliString(axes)
    }

    /// `letter` on `qubit` (1-based), identity elsewhere.
    pub fn single(n_q: usize, qubit: usize, letter: Pauli) -> Result<Self> {
        let mut s = Self::identity(n_q);
        s.set(qubit, letter)?;
        Ok(s)
    }

    /// Two-qubit string, e.g. `Z_a Z_b`.
    pub fn pair(n_q: usize, a: usize, b: usize, letter: Pauli) -> Result<Self> {
        if a == b {
            return Err(DaqcError::validation(format!(
                "pair string needs two distinct qubits, got {a} twice"
            )));
        }
        let mut s = Self::identity(n_q);
        s.set(a, letter)?;
        s.set(b, letter)?;
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn axes(&self) -> &[Pauli] {
        &self.0
    }

    pub fn get(&self, qubit: usize) -> Result<Pauli> {
        self.check_qubit(qubit)?;
        Ok(self.0[qubit - 1])
    }

    pub fn set(&mut self, qubit: usize, letter: Pauli) -> Result<()> {
        self.check_qubit(qubit)?;
        self.0[qubit - 1] = letter;
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.0.len() {
            return Err(DaqcError::Index {
                index: qubit,
                max: self.0.len(),
            });
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// 1-based qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn multiply(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        if self.0.len() != other.0.len() {
            return Err(DaqcError::Dimension {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        let mut phase = ONE;
        let axes = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let (ph, p) = a.product(b);
                phase *= ph;
                p
            })
            .collect();
        Ok((phase, PauliString(axes)))
    }

    /// Two Pauli strings commute iff they anticommute on an even number of qubits.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .0
            .iter()
            .zip(&other.0)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }

    /// Bit masks `(flip, y, z)` over basis-state indices; qubit `q` is bit `q - 1`.
    pub(crate) fn masks(&self) -> (usize, usize, usize) {
        let mut flip = 0;
        let mut y = 0;
        let mut z = 0;
        for (k, &p) in self.0.iter().enumerate() {
            let bit = 1usize << k;
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    y |= bit;
                }
                Pauli::Z => z |= bit,
            }
        }
        (flip, y, z)
    }
}

/// Action of a Pauli string on a computational basis state: `P|k> = phase |k ^ flip>`.
///
/// Per qubit `X|b> = |1-b>`, `Y|b> = (2b-1) i |1-b>`, `Z|b> = (2b-1)|b>`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BasisAction {
    flip: usize,
    sign_mask: usize,
    base_phase: Complex64,
}

impl BasisAction {
    pub(crate) fn new(s: &PauliString) -> Self {
        let (flip, y, z) = s.masks();
        let base_phase = match y.count_ones() % 4 {
            0 => ONE,
            1 => IM,
            2 => -ONE,
            _ => -IM,
        };
        BasisAction {
            flip,
            sign_mask: y | z,
            base_phase,
        }
    }

    #[inline]
    pub(crate) fn apply(&self, k: usize) -> (usize, Complex64) {
        let negatives = (self.sign_mask & !k).count_ones();
        let phase = if negatives.is_multiple_of(2) {
            self.base_phase
        } else {
            -self.base_phase
        };
        (k ^ self.flip, phase)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = DaqcError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| DaqcError::validation(format!("invalid Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// Weighted sum of Pauli strings over a fixed number of qubits.
///
/// Terms are kept merged and sorted lexicographically by axes, so two sums
/// holding the same operator compare equal structurally. Exact-zero
/// coefficients are dropped on merge.
///
/// `identity_shift` is bookkeeping for a dropped constant (`H_full = H + shift * 1`).
/// It never enters [`crate::dense::to_dense`] or the dynamics.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_q: usize,
    terms: Vec<(PauliString, Complex64)>,
    identity_shift: f64,
}

impl PauliSum {
    pub fn zero(n_q: usize) -> Self {
        PauliSum {
            n_q,
            terms: Vec::new(),
            identity_shift: 0.0,
        }
    }

    pub fn identity(n_q: usize) -> Self {
        let mut s = Self::zero(n_q);
        s.terms.push((PauliString::identity(n_q), ONE));
        s
    }

    pub fn from_terms<I>(n_q: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (c, s) in terms {
            if s.n_qubits() != n_q {
                return Err(DaqcError::Dimension {
                    expected: n_q,
                    found: s.n_qubits(),
                });
            }
            *acc.entry(s).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::from_map(n_q, acc))
    }

    pub fn from_real_terms<I>(n_q: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        Self::from_terms(
            n_q,
            terms.into_iter().map(|(c, s)| (Complex64::new(c, 0.0), s)),
        )
    }

    fn from_map(n_q: usize, acc: BTreeMap<PauliString, Complex64>) -> Self {
        PauliSum {
            n_q,
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .collect(),
            identity_shift: 0.0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q
    }

    pub fn terms(&self) -> &[(PauliString, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn identity_shift(&self) -> f64 {
        self.identity_shift
    }

    pub fn with_identity_shift(mut self, shift: f64) -> Self {
        self.identity_shift = shift;
        self
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(s))
            .map(|k| self.terms[k].1)
            .unwrap_or_default()
    }

    /// Largest absolute coefficient; zero for the empty sum.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    /// Every coefficient has `|Im c| <= tol`. Pauli strings are Hermitian,
    /// so this is equivalent to Hermiticity of the sum.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|(_, c)| c.im.abs() <= tol)
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        match self.terms.iter().find(|(_, c)| c.im.abs() > tol) {
            None => Ok(()),
            Some((s, c)) => Err(DaqcError::validation(format!(
                "operator is not Hermitian: term {s} has coefficient {c}"
            ))),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self::from_map(
            self.n_q,
            self.terms
                .iter()
                .map(|(s, c)| (s.clone(), c * factor))
                .collect(),
        );
        out.identity_shift = self.identity_shift * factor.re;
        out
    }

    pub fn adjoint(&self) -> Self {
        PauliSum {
            n_q: self.n_q,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c.conj()))
                .collect(),
            identity_shift: self.identity_shift,
        }
    }

    pub fn checked_add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut acc: BTreeMap<PauliString, Complex64> = self.terms.iter().cloned().collect();
        for (s, c) in &other.terms {
            *acc.entry(s.clone()).or_default() += c;
        }
        let mut out = Self::from_map(self.n_q, acc);
        out.identity_shift = self.identity_shift + other.identity_shift;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (phase, s) = a.multiply(b)?;
                *acc.entry(s).or_default() += phase * ca * cb;
            }
        }
        Ok(Self::from_map(self.n_q, acc))
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.commutes_with(b) {
                    continue;
                }
                // anticommuting strings: ab - ba = 2ab
                let (phase, s) = a.multiply(b)?;
                *acc.entry(s).or_default() += 2.0 * phase * ca * cb;
            }
        }
        Ok(Self::from_map(self.n_q, acc))
    }

    /// Drop terms whose coefficient magnitude is at most `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        PauliSum {
            n_q: self.n_q,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .cloned()
                .collect(),
            identity_shift: self.identity_shift,
        }
    }

    fn check_dims(&self, other: &PauliSum) -> Result<()> {
        if self.n_q != other.n_q {
            return Err(DaqcError::Dimension {
                expected: self.n_q,
                found: other.n_q,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> Result<(Complex64, PauliString)> {
    a.multiply(b)
}

/// Symbolic commutation test: every coefficient of `[a, b]` is at most `1e-12`.
pub fn commutes(a: &PauliSum, b: &PauliSum) -> Result<bool> {
    Ok(a.commutator(b)?.max_abs_coeff() <= 1e-12)
}

impl Add for &PauliSum {
    type Output = PauliSum;

    /// Panics on mismatched qubit counts; use [`PauliSum::checked_add`] otherwise.
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.checked_add(rhs).expect("PauliSum qubit counts differ")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;

    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.checked_add(&-rhs)
            .expect("PauliSum qubit counts differ")
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;

    fn neg(self) -> PauliSum {
        self.scale(-ONE)
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;

    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.checked_mul(rhs).expect("PauliSum qubit counts differ")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: [f64; 2],
    axes: String,
}

#[derive(Serialize, Deserialize)]
struct SumRepr {
    n_q: usize,
    terms: Vec<TermRepr>,
    #[serde(default, skip_serializing_if = "is_zero")]
    identity_shift: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SumRepr {
            n_q: self.n_q,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermRepr {
                    coeff: [c.re, c.im],
                    axes: s.to_string(),
                })
                .collect(),
            identity_shift: self.identity_shift,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = SumRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                t.axes
                    .parse::<PauliString>()
                    .map(|s| (Complex64::new(t.coeff[0], t.coeff[1]), s))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PauliSum::from_terms(repr.n_q, terms)
            .map(|s| s.with_identity_shift(repr.identity_shift))
            .map_err(D::Error::custom)
    }
}
