//! Grassmann-valued multi-qubit kets and single-mode fermionic operators.
//!
//! States are kept in left-normal form: each basis ket carries a Grassmann
//! amplitude written to its left. A ket `|x⟩` has the parity of its number of
//! one-bits, so carrying an amplitude `A` rightwards past `|x⟩` replaces it by
//! its grade involution whenever that count is odd (`θ|1⟩ = −|1⟩θ`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorId, GrassmannElement};

/// Upper bound on the tensor length of a state.
pub const MAX_QUBITS: usize = 16;

/// Computational basis ket; slot 0 is the leftmost factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKet {
    len: u8,
    /// Big-endian: slot 0 is the most significant bit.
    index: u32,
}

impl BasisKet {
    pub fn new(len: usize, index: u32) -> Self {
        assert!((1..=MAX_QUBITS).contains(&len), "ket length {len} unsupported");
        assert!(u64::from(index) < 1u64 << len, "index {index} needs more than {len} bits");
        Self {
            len: len as u8,
            index,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let index = bits.iter().fold(0u32, |acc, b| (acc << 1) | u32::from(*b));
        Self::new(bits.len(), index)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Option<Self> {
        if text.is_empty() || text.len() > MAX_QUBITS {
            return None;
        }
        let bits: Option<Vec<bool>> = text
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bits(&b))
    }

    pub fn len(self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn bit(self, slot: usize) -> bool {
        (self.index >> (self.len() - 1 - slot)) & 1 == 1
    }

    pub fn ones(self) -> u32 {
        self.index.count_ones()
    }

    pub fn ones_before(self, slot: usize) -> u32 {
        (0..slot).filter(|s| self.bit(*s)).count() as u32
    }

    pub fn with_bit(self, slot: usize, value: bool) -> Self {
        let mask = 1u32 << (self.len() - 1 - slot);
        let index = if value { self.index | mask } else { self.index & !mask };
        Self { index, ..self }
    }

    pub fn concat(self, right: BasisKet) -> Self {
        Self::new(self.len() + right.len(), (self.index << right.len) | right.index)
    }
}

impl fmt::Display for BasisKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for s in 0..self.len() {
            f.write_str(if self.bit(s) { "1" } else { "0" })?;
        }
        f.write_str(">")
    }
}

/// `Σ A_x |x⟩` with Grassmann amplitudes in left-normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannState {
    qubits: usize,
    amplitudes: BTreeMap<BasisKet, GrassmannElement>,
}

impl GrassmannState {
    pub fn zero(qubits: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&qubits), "qubit count {qubits} unsupported");
        Self {
            qubits,
            amplitudes: BTreeMap::new(),
        }
    }

    /// `amplitude · |ket⟩`.
    pub fn basis(ket: BasisKet, amplitude: GrassmannElement) -> Self {
        let mut s = Self::zero(ket.len());
        s.accumulate(ket, &amplitude);
        s
    }

    /// `|0…0⟩`.
    pub fn vacuum(qubits: usize) -> Self {
        Self::basis(BasisKet::new(qubits, 0), GrassmannElement::one())
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitude(&self, ket: &BasisKet) -> Option<&GrassmannElement> {
        self.amplitudes.get(ket)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisKet, &GrassmannElement)> {
        self.amplitudes.iter().map(|(k, a)| (*k, a))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    fn accumulate(&mut self, ket: BasisKet, amplitude: &GrassmannElement) {
        debug_assert_eq!(ket.len(), self.qubits);
        let slot = self.amplitudes.entry(ket).or_default();
        *slot += amplitude;
        if slot.is_zero() {
            self.amplitudes.remove(&ket);
        }
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = Self::zero(self.qubits);
        for (k, a) in &self.amplitudes {
            out.accumulate(*k, &a.scale(c));
        }
        out
    }

    /// Multiplies every amplitude on the left by a Grassmann factor.
    pub fn left_multiply(&self, factor: &GrassmannElement) -> Self {
        let mut out = Self::zero(self.qubits);
        for (k, a) in &self.amplitudes {
            out.accumulate(*k, &factor.multiply(a));
        }
        out
    }

    pub fn linear_combine(
        alpha: impl Into<Complex64>,
        a: &Self,
        beta: impl Into<Complex64>,
        b: &Self,
    ) -> Result<Self> {
        if a.qubits != b.qubits {
            return Err(Error::QubitCountMismatch {
                left: a.qubits,
                right: b.qubits,
            });
        }
        let mut out = a.scale(alpha);
        let beta = beta.into();
        for (k, amp) in &b.amplitudes {
            out.accumulate(*k, &amp.scale(beta));
        }
        Ok(out)
    }

    /// `a ⊗ b`: the right factor's amplitude is carried left past the left
    /// factor's ket before the kets are concatenated.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.qubits + other.qubits);
        for (x, a) in &self.amplitudes {
            let odd = x.ones() % 2 == 1;
            for (y, b) in &other.amplitudes {
                let moved = if odd { b.grade_involution() } else { b.clone() };
                out.accumulate(x.concat(*y), &a.multiply(&moved));
            }
        }
        out
    }

    /// `⟨a|b⟩ = Σ_x conj(A_x) · B_x`.
    pub fn inner(&self, other: &Self) -> Result<GrassmannElement> {
        if self.qubits != other.qubits {
            return Err(Error::QubitCountMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let mut sum = GrassmannElement::zero();
        for (k, a) in &self.amplitudes {
            if let Some(b) = other.amplitudes.get(k) {
                sum += &a.conjugate().multiply(b);
            }
        }
        Ok(sum)
    }

    /// Applies `op` to one tensor slot. The elementary operator `|r⟩⟨c|` has
    /// parity `r + c`; it is moved past the state's amplitude and past the
    /// kets to the left of `slot`, picking up the matching signs.
    pub fn apply_mode_op(&self, op: &ModeOperator, slot: usize) -> Result<Self> {
        if slot >= self.qubits {
            return Err(Error::SlotOutOfRange {
                slot,
                qubits: self.qubits,
            });
        }
        let mut out = Self::zero(self.qubits);
        for (x, amp) in &self.amplitudes {
            let c = usize::from(x.bit(slot));
            let left_ones = x.ones_before(slot);
            for r in 0..2 {
                let entry = &op.entries[r][c];
                if entry.is_zero() {
                    continue;
                }
                let odd = (r + c) % 2 == 1;
                let moved = if odd { amp.grade_involution() } else { amp.clone() };
                let mut term = entry.multiply(&moved);
                if odd && left_ones % 2 == 1 {
                    term = -term;
                }
                out.accumulate(x.with_bit(slot, r == 1), &term);
            }
        }
        Ok(out)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.qubits == other.qubits
            && Self::linear_combine(1.0, self, -1.0, other)
                .map(|d| d.amplitudes.values().all(|a| a.approx_eq(&GrassmannElement::zero(), tol)))
                .unwrap_or(false)
    }
}

impl Add for &GrassmannState {
    type Output = GrassmannState;
    fn add(self, rhs: Self) -> GrassmannState {
        GrassmannState::linear_combine(1.0, self, 1.0, rhs).expect("equal qubit counts")
    }
}

impl Sub for &GrassmannState {
    type Output = GrassmannState;
    fn sub(self, rhs: Self) -> GrassmannState {
        GrassmannState::linear_combine(1.0, self, -1.0, rhs).expect("equal qubit counts")
    }
}

impl fmt::Display for GrassmannState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amplitudes.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, a)) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a}){k}")?;
        }
        Ok(())
    }
}

/// Label `kθ` of a fermionic coherent state: a complex scale on one generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermionLabel {
    pub scale: Complex64,
    pub generator: GeneratorId,
}

impl FermionLabel {
    pub fn new(scale: impl Into<Complex64>, generator: GeneratorId) -> Self {
        Self {
            scale: scale.into(),
            generator,
        }
    }

    pub fn unit(generator: GeneratorId) -> Self {
        Self::new(1.0, generator)
    }
}

/// `|kθ⟩ = exp(−|k|² θ*θ / 2)(|0⟩ − kθ|1⟩)`, with the roles of `θ` and `θ*`
/// exchanged when the label carries a conjugated generator.
pub fn coherent_ket(label: FermionLabel) -> GrassmannState {
    let g = GrassmannElement::generator(label.generator);
    let partner = GrassmannElement::generator(label.generator.conj());
    let gauss = partner
        .multiply(&g)
        .scale(-label.scale.norm_sqr() / 2.0)
        .exp_nilpotent()
        .expect("θ*θ has no body");
    let one = &gauss * &g.scale(-label.scale);
    let mut s = GrassmannState::basis(BasisKet::new(1, 0), gauss);
    s.accumulate(BasisKet::new(1, 1), &one);
    s
}

/// Tensor product of a sequence of single-qubit states, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a GrassmannState>) -> Option<GrassmannState> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, f| acc.tensor_product(f)))
}

/// 2×2 Grassmann-valued operator on one mode: `Σ E_rc |r⟩⟨c|`, entries
/// written to the left of the ket-bra.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeOperator {
    entries: [[GrassmannElement; 2]; 2],
}

impl ModeOperator {
    pub fn new(entries: [[GrassmannElement; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new(Default::default())
    }

    pub fn identity() -> Self {
        let mut op = Self::zero();
        op.entries[0][0] = GrassmannElement::one();
        op.entries[1][1] = GrassmannElement::one();
        op
    }

    /// `a = |0⟩⟨1|`.
    pub fn annihilation() -> Self {
        let mut op = Self::zero();
        op.entries[0][1] = GrassmannElement::one();
        op
    }

    /// `a† = |1⟩⟨0|`.
    pub fn creation() -> Self {
        let mut op = Self::zero();
        op.entries[1][0] = GrassmannElement::one();
        op
    }

    pub fn entry(&self, row: usize, col: usize) -> &GrassmannElement {
        &self.entries[row][col]
    }

    /// Operator product. Moving `F` left past `|r⟩⟨c|` applies the grade
    /// involution `r + c` times: `(EF)_{rc'} = Σ_c E_rc · P^{r+c}(F_cc')`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c2 in 0..2 {
                let mut acc = GrassmannElement::zero();
                for c in 0..2 {
                    let f = &rhs.entries[c][c2];
                    let moved = if (r + c) % 2 == 1 { f.grade_involution() } else { f.clone() };
                    acc += &self.entries[r][c].multiply(&moved);
                }
                out.entries[r][c2] = acc;
            }
        }
        out
    }

    /// `(E|r⟩⟨c|)† = P^{r+c}(E*) |c⟩⟨r|`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                let e = self.entries[r][c].conjugate();
                out.entries[c][r] = if (r + c) % 2 == 1 { e.grade_involution() } else { e };
            }
        }
        out
    }

    pub fn linear_combine(alpha: impl Into<Complex64>, a: &Self, beta: impl Into<Complex64>, b: &Self) -> Self {
        let (alpha, beta) = (alpha.into(), beta.into());
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.entries[r][c] =
                    GrassmannElement::linear_combine(alpha, &a.entries[r][c], beta, &b.entries[r][c]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(GrassmannElement::is_zero)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// `exp(X)` by the terminating power series; `X` must be nilpotent.
    pub fn exp_nilpotent(&self) -> Self {
        let mut sum = Self::identity();
        let mut power = Self::identity();
        for k in 1..=2 * crate::grassmann::MAX_MODES as usize + 2 {
            power = power.compose(self);
            power = Self::linear_combine(1.0 / k as f64, &power, 0.0, &Self::zero());
            if power.is_zero() {
                return sum;
            }
            sum = Self::linear_combine(1.0, &sum, 1.0, &power);
        }
        panic!("operator exponent is not nilpotent");
    }
}

/// `D(kθ) = exp(a† kθ − k̄ θ* a)`.
pub fn displacement(label: FermionLabel) -> ModeOperator {
    let g = GrassmannElement::generator(label.generator);
    let partner = GrassmannElement::generator(label.generator.conj());
    // a†·kθ = |1⟩⟨0| kθ = −kθ |1⟩⟨0|;  k̄θ*·a = k̄θ* |0⟩⟨1|
    let mut x = ModeOperator::zero();
    x.entries[1][0] = g.scale(-label.scale);
    x.entries[0][1] = partner.scale(-label.scale.conj());
    x.exp_nilpotent()
}
