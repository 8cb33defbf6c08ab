//! Plain complex amplitude vectors over n-qubit basis kets.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;

use crate::fock::{BasisKet, MAX_QUBITS};

/// Amplitudes indexed by the big-endian integer of the basis ket.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitState {
    pub fn zero(qubits: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&qubits), "qubit count {qubits} unsupported");
        Self {
            qubits,
            amplitudes: vec![Complex64::new(0.0, 0.0); 1 << qubits],
        }
    }

    /// Panics unless the length is a power of two of at least 2.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        let len = amplitudes.len();
        assert!(len >= 2 && len.is_power_of_two(), "length {len} is not 2^n");
        Self {
            qubits: len.trailing_zeros() as usize,
            amplitudes,
        }
    }

    /// Builds a state from `(bit string, amplitude)` pairs; repeated kets add.
    pub fn from_kets<'a>(qubits: usize, terms: impl IntoIterator<Item = (&'a str, Complex64)>) -> Self {
        let mut s = Self::zero(qubits);
        for (bits, c) in terms {
            let k = BasisKet::parse(bits).unwrap_or_else(|| panic!("bad ket `{bits}`"));
            assert_eq!(k.len(), qubits, "ket `{bits}` has the wrong length");
            s.amplitudes[k.index() as usize] += c;
        }
        s
    }

    pub fn basis(bits: &str) -> Self {
        Self::from_kets(bits.len(), [(bits, Complex64::new(1.0, 0.0))])
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, ket: BasisKet) -> Complex64 {
        self.amplitudes[ket.index() as usize]
    }

    pub(crate) fn add_to(&mut self, ket: BasisKet, c: Complex64) {
        self.amplitudes[ket.index() as usize] += c;
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            qubits: self.qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    /// `⟨self|other⟩`; `None` on a qubit-count mismatch.
    pub fn inner(&self, other: &Self) -> Option<Complex64> {
        (self.qubits == other.qubits).then(|| {
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a.conj() * b)
                .sum()
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Self {
            qubits: self.qubits + other.qubits,
            amplitudes,
        }
    }

    /// Largest component-wise deviation; infinite on a qubit-count mismatch.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.qubits != other.qubits {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    /// Nonzero components as `(ket, amplitude)`, in basis order.
    pub fn support(&self, tol: f64) -> impl Iterator<Item = (BasisKet, Complex64)> + '_ {
        let n = self.qubits;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.norm() > tol)
            .map(move |(i, a)| (BasisKet::new(n, i as u32), *a))
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.support(1e-12) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}){k}", crate::dsl::format_complex(a))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The canonical states recognised by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
    BellLikePlus,
    BellLikeMinus,
    W(usize),
    Ghz(usize),
}

impl NamedState {
    pub const MIN_GHZ: usize = 2;
    pub const MIN_W: usize = 3;
    pub const MAX_N: usize = 8;

    /// Every named state, in table order.
    pub fn all() -> Vec<NamedState> {
        use NamedState::*;
        let mut v = vec![PsiPlus, PsiMinus, PhiPlus, PhiMinus, BellLikePlus, BellLikeMinus];
        v.extend((Self::MIN_W..=Self::MAX_N).map(W));
        v.extend((Self::MIN_GHZ..=Self::MAX_N).map(Ghz));
        v
    }

    pub fn parse(name: &str) -> Option<Self> {
        use NamedState::*;
        let fixed = match name {
            "PsiPlus" => Some(PsiPlus),
            "PsiMinus" => Some(PsiMinus),
            "PhiPlus" => Some(PhiPlus),
            "PhiMinus" => Some(PhiMinus),
            "BellLikePlus" => Some(BellLikePlus),
            "BellLikeMinus" => Some(BellLikeMinus),
            _ => None,
        };
        let sized = |prefix: &str, min: usize| {
            name.strip_prefix(prefix)
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|n| (min..=Self::MAX_N).contains(n))
        };
        fixed
            .or_else(|| sized("W", Self::MIN_W).map(W))
            .or_else(|| sized("GHZ", Self::MIN_GHZ).map(Ghz))
    }

    pub fn qubits(self) -> usize {
        match self {
            NamedState::W(n) | NamedState::Ghz(n) => n,
            _ => 2,
        }
    }

    pub fn state(self) -> QubitState {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let w8 = Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4);
        match self {
            NamedState::PsiPlus => QubitState::from_kets(2, [("01", r), ("10", r)]),
            NamedState::PsiMinus => QubitState::from_kets(2, [("01", r), ("10", -r)]),
            NamedState::PhiPlus => QubitState::from_kets(2, [("00", r), ("11", r)]),
            NamedState::PhiMinus => QubitState::from_kets(2, [("00", r), ("11", -r)]),
            NamedState::BellLikePlus => QubitState::from_kets(2, [("01", w8), ("10", w8.conj())]),
            NamedState::BellLikeMinus => QubitState::from_kets(2, [("01", w8), ("10", -w8.conj())]),
            NamedState::W(n) => {
                let mut s = QubitState::zero(n);
                let c = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
                for slot in 0..n {
                    s.add_to(BasisKet::new(n, 0).with_bit(slot, true), c);
                }
                s
            }
            NamedState::Ghz(n) => {
                let mut s = QubitState::zero(n);
                s.add_to(BasisKet::new(n, 0), r);
                s.add_to(BasisKet::new(n, (1u32 << n) - 1), r);
                s
            }
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::PsiPlus => f.write_str("PsiPlus"),
            NamedState::PsiMinus => f.write_str("PsiMinus"),
            NamedState::PhiPlus => f.write_str("PhiPlus"),
            NamedState::PhiMinus => f.write_str("PhiMinus"),
            NamedState::BellLikePlus => f.write_str("BellLikePlus"),
            NamedState::BellLikeMinus => f.write_str("BellLikeMinus"),
            NamedState::W(n) => write!(f, "W{n}"),
            NamedState::Ghz(n) => write!(f, "GHZ{n}"),
        }
    }
}
