//! Concurrence of two-term bosonic coherent superpositions, and the
//! comparison with the fermionic states of the same shape.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{coherent_ket, FermionLabel, GrassmannState};
use crate::grassmann::{GeneratorId, GrassmannElement};

/// Tolerance for the maximality conditions.
pub const CONDITION_TOL: f64 = 1e-9;
const DEGENERATE: f64 = 1e-12;

/// `⟨a|b⟩` for bosonic coherent states.
pub fn coherent_overlap(a: Complex64, b: Complex64) -> Complex64 {
    (-a.norm_sqr() / 2.0 - b.norm_sqr() / 2.0 + a.conj() * b).exp()
}

/// `μ|α⟩|β⟩ + ν|γ⟩|δ⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BosonSuperposition {
    pub mu: Complex64,
    pub nu: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl BosonSuperposition {
    /// Squared norm of the superposition.
    pub fn norm_sqr(&self) -> f64 {
        let cross = self.mu.conj() * self.nu * coherent_overlap(self.alpha, self.gamma) * coherent_overlap(self.beta, self.delta);
        self.mu.norm_sqr() + self.nu.norm_sqr() + 2.0 * cross.re
    }
}

/// `2|μν|√((1−|⟨α|γ⟩|²)(1−|⟨β|δ⟩|²)) / ‖ζ‖²`, clamped to `[0, 1]`.
pub fn boson_concurrence(z: &BosonSuperposition) -> Result<f64> {
    let denom = z.norm_sqr();
    if denom < DEGENERATE {
        return Err(Error::DegenerateSuperposition(denom));
    }
    let ag = coherent_overlap(z.alpha, z.gamma).norm_sqr();
    let bd = coherent_overlap(z.beta, z.delta).norm_sqr();
    let num = 2.0 * (z.mu * z.nu).norm() * ((1.0 - ag).max(0.0) * (1.0 - bd).max(0.0)).sqrt();
    Ok((num / denom).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// `|k₁α⟩|k₂α⟩ ± |k₃α⟩|k₄α⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KQuad {
    pub k: [Complex64; 4],
    pub sign: Sign,
    pub alpha: Complex64,
}

impl KQuad {
    pub fn new(k: [Complex64; 4], sign: Sign, alpha: impl Into<Complex64>) -> Self {
        Self {
            k,
            sign,
            alpha: alpha.into(),
        }
    }

    pub fn real(k: [f64; 4], sign: Sign, alpha: f64) -> Self {
        Self::new(k.map(|x| Complex64::new(x, 0.0)), sign, alpha)
    }

    pub fn superposition(&self) -> BosonSuperposition {
        let [k1, k2, k3, k4] = self.k;
        BosonSuperposition {
            mu: Complex64::new(1.0, 0.0),
            nu: Complex64::new(self.sign.value(), 0.0),
            alpha: k1 * self.alpha,
            beta: k2 * self.alpha,
            gamma: k3 * self.alpha,
            delta: k4 * self.alpha,
        }
    }

    /// `f_ij = |k_i|² + |k_j|² − 2 k_i* k_j` (indices 1-based).
    pub fn f(&self, i: usize, j: usize) -> Complex64 {
        let (a, b) = (self.k[i - 1], self.k[j - 1]);
        Complex64::new(a.norm_sqr() + b.norm_sqr(), 0.0) - 2.0 * a.conj() * b
    }

    /// `Im(k₄*k₂) − Im(k₁*k₃)`.
    pub fn phase_gap(&self) -> f64 {
        let [k1, k2, k3, k4] = self.k;
        (k4.conj() * k2).im - (k1.conj() * k3).im
    }

    /// The two-qubit fermionic state with the same shape, on mode 1.
    pub fn fermionic_state(&self) -> GrassmannState {
        let ket = |k: Complex64| coherent_ket(FermionLabel::new(k, GeneratorId::theta(1)));
        let [k1, k2, k3, k4] = self.k;
        let a = ket(k1).tensor_product(&ket(k2));
        let b = ket(k3).tensor_product(&ket(k4));
        GrassmannState::linear_combine(1.0, &a, self.sign.value(), &b).expect("two-qubit terms")
    }
}

/// Concurrence of the quad's bosonic state in closed form through `f₁₃`, `f₂₄`.
pub fn kquad_concurrence(q: &KQuad) -> Result<f64> {
    let [k1, k2, k3, k4] = q.k;
    if q.sign == Sign::Minus && (k1 - k3).norm() < DEGENERATE && (k2 - k4).norm() < DEGENERATE {
        return Err(Error::VanishingState);
    }
    let a2 = q.alpha.norm_sqr();
    let (f13, f24) = (q.f(1, 3), q.f(2, 4));
    let e = |z: Complex64| (-0.5 * a2 * z).exp();
    let num = 2.0 * ((1.0 - e(f13 + f13.conj()).re).max(0.0) * (1.0 - e(f24 + f24.conj()).re).max(0.0)).sqrt();
    let cross = e(f13.conj() + f24.conj()) + e(f13 + f24);
    let denom = 2.0 + q.sign.value() * cross.re;
    if denom < DEGENERATE {
        return Err(Error::DegenerateSuperposition(denom));
    }
    Ok((num / denom).clamp(0.0, 1.0))
}

/// `(modulus condition, phase condition)` for the bosonic quad.
///
/// The phase condition is periodic: only `|α|²·(Im(k₄*k₂) − Im(k₁*k₃))`
/// modulo `2π` matters, with target `0` for the minus sign and `π` for plus.
pub fn boson_maximality(q: &KQuad) -> Result<(bool, bool)> {
    let a2 = q.alpha.norm_sqr();
    if a2 == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    let [k1, k2, k3, k4] = q.k;
    let (d13, d24) = ((k1 - k3).norm(), (k2 - k4).norm());
    let modulus = (d13 - d24).abs() <= CONDITION_TOL && d13 > CONDITION_TOL;
    let offset = match q.sign {
        Sign::Minus => 0.0,
        Sign::Plus => PI,
    };
    let turns = (a2 * q.phase_gap() - offset) / (2.0 * PI);
    let distance = (turns - turns.round()).abs() * 2.0 * PI / a2;
    Ok((modulus, distance <= CONDITION_TOL))
}

/// Closed-form maximality of the fermionic counterpart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermionCounterpart {
    /// `k₁ ∓ k₃`.
    pub d1: Complex64,
    /// `k₂ ∓ k₄`.
    pub d2: Complex64,
    pub maximal: bool,
    pub m: Option<Complex64>,
    /// `arg(d₁) − arg(d₂)` in `(−π, π]`.
    pub phi: Option<f64>,
}

impl FermionCounterpart {
    /// `θ*/(m√2)`, when maximal.
    pub fn weight(&self) -> Option<GrassmannElement> {
        self.m.map(|m| GrassmannElement::generator(GeneratorId::theta_conj(1)).scale(1.0 / (m * SQRT_2)))
    }
}

pub fn fermion_counterpart_max(q: &KQuad) -> FermionCounterpart {
    let [k1, k2, k3, k4] = q.k;
    let s = q.sign.value();
    let (d1, d2) = (k1 + s * k3, k2 + s * k4);
    let maximal = (d1.norm() - d2.norm()).abs() <= CONDITION_TOL && d1.norm() > CONDITION_TOL;
    FermionCounterpart {
        d1,
        d2,
        maximal,
        m: maximal.then_some(d1),
        phi: maximal.then(|| wrap_phase(d1.arg() - d2.arg())),
    }
}

/// Maps an angle into `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityReport {
    pub alpha: Complex64,
    pub sign: Sign,
    pub concurrence: f64,
    pub f13: Complex64,
    pub f24: Complex64,
    pub boson_modulus_condition: bool,
    pub boson_phase_condition: bool,
    pub fermion_m: Option<Complex64>,
    pub fermion_phi: Option<f64>,
    pub fermion_maximal: bool,
}

impl MaximalityReport {
    pub fn boson_maximal(&self) -> bool {
        self.boson_modulus_condition && self.boson_phase_condition
    }
}

pub fn maximality_report(q: &KQuad) -> Result<MaximalityReport> {
    let concurrence = kquad_concurrence(q)?;
    let (modulus, phase) = boson_maximality(q)?;
    let fc = fermion_counterpart_max(q);
    Ok(MaximalityReport {
        alpha: q.alpha,
        sign: q.sign,
        concurrence,
        f13: q.f(1, 3),
        f24: q.f(2, 4),
        boson_modulus_condition: modulus,
        boson_phase_condition: phase,
        fermion_m: fc.m,
        fermion_phi: fc.phi,
        fermion_maximal: fc.maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn overlap_examples() {
        let a = c(0.3, -1.1);
        assert!((coherent_overlap(a, a) - 1.0).norm() < 1e-15);
        assert!((coherent_overlap(a, -a).re - (-2.0 * a.norm_sqr()).exp()).abs() < 1e-15);
        let b = c(1.5, 0.5);
        assert!((coherent_overlap(c(0.0, 0.0), b).re - (-b.norm_sqr() / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn superposition_examples() {
        let one = c(1.0, 0.0);
        let z = BosonSuperposition {
            mu: one,
            nu: -one,
            alpha: one,
            beta: -one,
            gamma: -one,
            delta: one,
        };
        assert!((boson_concurrence(&z).unwrap() - 1.0).abs() < 1e-12);
        let product = BosonSuperposition { nu: c(0.0, 0.0), ..z };
        assert_eq!(boson_concurrence(&product).unwrap(), 0.0);
        let i = c(0.0, 1.0);
        let z = BosonSuperposition {
            mu: one,
            nu: -one,
            alpha: i,
            beta: i,
            gamma: one,
            delta: one,
        };
        let v = boson_concurrence(&z).unwrap();
        assert!(v > 0.81 && v < 0.83, "{v}");
        let same = BosonSuperposition {
            mu: one,
            nu: -one,
            alpha: one,
            beta: one,
            gamma: one,
            delta: one,
        };
        assert!(matches!(boson_concurrence(&same), Err(Error::DegenerateSuperposition(_))));
    }

    #[test]
    fn kquad_examples() {
        let q = KQuad::real([1.0, -1.0, -1.0, -3.0], Sign::Minus, 1.0);
        assert!((kquad_concurrence(&q).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(boson_maximality(&q).unwrap(), (true, true));

        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let q = KQuad::new([i, i, one, one], Sign::Minus, 1.0);
        assert!(kquad_concurrence(&q).unwrap() < 0.99);
        assert_eq!(boson_maximality(&q).unwrap(), (true, false));
        let fc = fermion_counterpart_max(&q);
        assert!(fc.maximal);
        assert!((fc.m.unwrap() - c(-1.0, 1.0)).norm() < 1e-15);

        let q = KQuad::real([1.0; 4], Sign::Minus, 1.0);
        assert!(matches!(kquad_concurrence(&q), Err(Error::VanishingState)));

        let k = c(0.0, PI / 2.0);
        let q = KQuad::new([k, k, one, one], Sign::Plus, 1.0);
        assert_eq!(boson_maximality(&q).unwrap(), (true, true));
        assert!((kquad_concurrence(&q).unwrap() - 1.0).abs() < 1e-9);

        assert!(matches!(boson_maximality(&KQuad::real([1.0; 4], Sign::Plus, 0.0)), Err(Error::ZeroAlpha)));
    }

    #[test]
    fn closed_form_matches_superposition() {
        for (k, sign) in [
            ([1.0, -1.0, -1.0, -3.0], Sign::Minus),
            ([0.3, 2.0, -1.0, 0.5], Sign::Plus),
            ([0.3, 2.0, -1.0, 0.5], Sign::Minus),
        ] {
            for alpha in [0.5, 1.0, 2.0] {
                let q = KQuad::real(k, sign, alpha);
                let a = kquad_concurrence(&q).unwrap();
                let b = boson_concurrence(&q.superposition()).unwrap();
                assert!((a - b).abs() < 1e-12, "{k:?} {sign} {alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn second_plus_case_is_boson_only() {
        let one = c(1.0, 0.0);
        let (k1, k2) = (c(PI / 2.0, 1.0), c(PI, 1.0));
        let q = KQuad::new([k1, k2, k1.conj(), k2.conj()], Sign::Plus, one);
        assert_eq!(boson_maximality(&q).unwrap(), (true, true));
        assert!((kquad_concurrence(&q).unwrap() - 1.0).abs() < 1e-9);
        let fc = fermion_counterpart_max(&q);
        assert!(!fc.maximal);
        assert!((fc.d1.norm() - PI).abs() < 1e-12 && (fc.d2.norm() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn counterpart_minus_families() {
        let q = KQuad::real([1.0, 1.0, -2.0, -2.0], Sign::Minus, 1.0);
        let fc = fermion_counterpart_max(&q);
        assert!(fc.maximal);
        assert!((fc.m.unwrap() - 3.0).norm() < 1e-15);
        assert_eq!(fc.phi, Some(0.0));
    }

    #[test]
    fn phase_wrapping() {
        assert!((wrap_phase(PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}
