//! Polynomials in anticommuting generators with complex coefficients.
//!
//! Every mode `i` contributes two generators, `θᵢ` and its conjugate `θᵢ*`,
//! ordered `θ₁ < θ₁* < θ₂ < θ₂* < …`. A [`Monomial`] is a set of generators
//! stored as a bitmask in that order; the sign picked up when a product is
//! brought into ascending order is folded into the coefficient, so two
//! elements are equal exactly when their coefficient maps agree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported mode index.
pub const MAX_MODES: u32 = 6;

/// Coefficients with modulus below this are removed after every operation.
pub const ZERO_DROP: f64 = 1e-12;

/// One anticommuting generator: `θ_mode` or, when `conjugated`, `θ_mode*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    mode: u8,
    conjugated: bool,
}

impl GeneratorId {
    pub fn new(mode: u32, conjugated: bool) -> Result<Self> {
        if mode == 0 || mode > MAX_MODES {
            return Err(Error::InvalidMode(mode));
        }
        Ok(Self {
            mode: mode as u8,
            conjugated,
        })
    }

    /// `θ_mode`. Panics if `mode` is outside `1..=MAX_MODES`.
    pub fn theta(mode: u32) -> Self {
        Self::new(mode, false).expect("mode index in range")
    }

    /// `θ_mode*`. Panics if `mode` is outside `1..=MAX_MODES`.
    pub fn theta_conj(mode: u32) -> Self {
        Self::new(mode, true).expect("mode index in range")
    }

    pub fn mode(self) -> u32 {
        u32::from(self.mode)
    }

    pub fn is_conjugated(self) -> bool {
        self.conjugated
    }

    /// The partner generator: `θ ↔ θ*`.
    pub fn conj(self) -> Self {
        Self {
            mode: self.mode,
            conjugated: !self.conjugated,
        }
    }

    pub(crate) fn bit(self) -> u32 {
        2 * (u32::from(self.mode) - 1) + u32::from(self.conjugated)
    }

    pub(crate) fn from_bit(bit: u32) -> Self {
        Self {
            mode: (bit / 2 + 1) as u8,
            conjugated: bit % 2 == 1,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.mode)?;
        if self.conjugated {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A product of distinct generators in canonical ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u16);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u16) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Canonicalizes the ordered product `g₁g₂…gₖ`. Returns `None` when a
    /// generator repeats (the product vanishes), otherwise the reordering
    /// sign and the monomial.
    pub fn from_product(generators: &[GeneratorId]) -> Option<(f64, Monomial)> {
        let mut bits = 0u16;
        let mut sign = 1.0;
        for g in generators {
            let b = g.bit();
            if bits & (1 << b) != 0 {
                return None;
            }
            // g has to travel left past every generator already present that
            // sorts after it.
            if (bits >> (b + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= 1 << b;
        }
        Some((sign, Monomial(bits)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, g: GeneratorId) -> bool {
        self.0 & (1 << g.bit()) != 0
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Generators in ascending canonical order.
    pub fn generators(self) -> impl Iterator<Item = GeneratorId> {
        let bits = self.0;
        (0..16u32)
            .filter(move |b| bits & (1 << b) != 0)
            .map(GeneratorId::from_bit)
    }

    /// Sign of `self · other` once brought into canonical order; `None` if
    /// the two share a generator.
    pub fn product_sign(self, other: Monomial) -> Option<f64> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            swaps += (self.0 >> (b + 1)).count_ones();
            rest &= rest - 1;
        }
        Some(if swaps.is_multiple_of(2) { 1.0 } else { -1.0 })
    }

    fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }
}

/// A finite sparse Grassmann polynomial `Σ c_m · m`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GrassmannElement {
    terms: BTreeMap<Monomial, Complex64>,
}

impl GrassmannElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: impl Into<Complex64>) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn generator(g: GeneratorId) -> Self {
        Self::term(Monomial(1 << g.bit()), 1.0)
    }

    pub fn term(m: Monomial, c: impl Into<Complex64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, c.into());
        let mut e = Self { terms };
        e.prune();
        e
    }

    /// `c · g₁g₂…gₖ` for an arbitrary (not necessarily sorted) generator word.
    pub fn product_of(c: impl Into<Complex64>, word: &[GeneratorId]) -> Self {
        match Monomial::from_product(word) {
            Some((sign, m)) => Self::term(m, c.into() * sign),
            None => Self::zero(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Complex64)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            *e.terms.entry(m).or_default() += c;
        }
        e.prune();
        e
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= ZERO_DROP);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar (body) part.
    pub fn body(&self) -> Complex64 {
        self.coefficient(Monomial::ONE)
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial degree present (0 for scalars and for zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Union of all generators appearing in any term.
    pub fn support(&self) -> Monomial {
        Monomial(self.terms.keys().fold(0, |acc, m| acc | m.0))
    }

    /// Whether every term has even degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == 0)
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        };
        out.prune();
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = BTreeMap::<Monomial, Complex64>::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(sign) = a.product_sign(*b) {
                    *out.entry(a.union(*b)).or_default() += x * y * sign;
                }
            }
        }
        let mut e = Self { terms: out };
        e.prune();
        e
    }

    /// `α·a + β·b`.
    pub fn linear_combine(
        alpha: impl Into<Complex64>,
        a: &Self,
        beta: impl Into<Complex64>,
        b: &Self,
    ) -> Self {
        let (alpha, beta) = (alpha.into(), beta.into());
        let mut out = a.scale(alpha);
        for (m, c) in &b.terms {
            *out.terms.entry(*m).or_default() += c * beta;
        }
        out.prune();
        out
    }

    /// Complex conjugation: coefficients conjugated, each word reversed with
    /// every generator swapped for its partner, `(xy)* = y*x*`.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let word: Vec<GeneratorId> = m.generators().map(GeneratorId::conj).collect();
            let reversed: Vec<GeneratorId> = word.into_iter().rev().collect();
            let (sign, m2) =
                Monomial::from_product(&reversed).expect("conjugation keeps generators distinct");
            *out.terms.entry(m2).or_default() += c.conj() * sign;
        }
        out.prune();
        out
    }

    /// The grading automorphism: odd-degree terms change sign. Applied when a
    /// Grassmann factor is carried past an odd Fock ket.
    pub fn grade_involution(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in out.terms.iter_mut() {
            if m.degree() % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// `exp(a) = 1 + a + a²/2! + …` for nilpotent `a` (zero body).
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let body = self.body();
        if body.norm() >= ZERO_DROP {
            return Err(Error::NonzeroBody(body));
        }
        let mut sum = Self::one();
        let mut power = Self::one();
        // a^k vanishes once k exceeds the number of distinct generators.
        let cutoff = self.support().degree() + 1;
        for k in 1..=cutoff {
            power = power.multiply(self).scale(1.0 / k as f64);
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum)
    }

    /// Left derivative `∂/∂g`: `g` is anticommuted to the front of each term
    /// containing it and removed.
    pub fn left_derivative(&self, g: GeneratorId) -> Self {
        let b = g.bit();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.0 & (1 << b) == 0 {
                continue;
            }
            let before = (m.0 & ((1u16 << b) - 1)).count_ones();
            let sign = if before.is_multiple_of(2) { 1.0 } else { -1.0 };
            *out.terms.entry(Monomial(m.0 & !(1 << b))).or_default() += c * sign;
        }
        out.prune();
        out
    }

    /// Berezin integral `∫dg₁…dgₖ a`: the rightmost measure factor acts first.
    pub fn berezin_integrate(&self, measure: &MeasureList) -> Self {
        measure
            .factors()
            .iter()
            .rev()
            .fold(self.clone(), |acc, g| acc.left_derivative(*g))
    }

    /// Coefficient-wise comparison within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = Self::linear_combine(1.0, self, -1.0, other);
        diff.terms.values().all(|c| c.norm() <= tol)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::render_element(self))
    }
}

impl From<GeneratorId> for GrassmannElement {
    fn from(g: GeneratorId) -> Self {
        Self::generator(g)
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: Self) -> GrassmannElement {
        GrassmannElement::linear_combine(1.0, self, 1.0, rhs)
    }
}

impl Add for GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: Self) -> GrassmannElement {
        &self + &rhs
    }
}

impl AddAssign<&GrassmannElement> for GrassmannElement {
    fn add_assign(&mut self, rhs: &GrassmannElement) {
        for (m, c) in &rhs.terms {
            *self.terms.entry(*m).or_default() += c;
        }
        self.prune();
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: Self) -> GrassmannElement {
        GrassmannElement::linear_combine(1.0, self, -1.0, rhs)
    }
}

impl Sub for GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: Self) -> GrassmannElement {
        &self - &rhs
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: Self) -> GrassmannElement {
        self.multiply(rhs)
    }
}

impl Mul for GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: Self) -> GrassmannElement {
        self.multiply(&rhs)
    }
}

impl Mul<Complex64> for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: Complex64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Mul<f64> for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: f64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}

/// Ordered Berezin measure `dg₁ dg₂ … dgₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureList {
    factors: Vec<GeneratorId>,
}

impl MeasureList {
    pub fn new(factors: Vec<GeneratorId>) -> Result<Self> {
        let mut seen = 0u16;
        for g in &factors {
            if seen & (1 << g.bit()) != 0 {
                return Err(Error::RepeatedMeasureFactor(*g));
            }
            seen |= 1 << g.bit();
        }
        Ok(Self { factors })
    }

    /// `dθ₁*dθ₁ dθ₂*dθ₂ … dθₙ*dθₙ`.
    pub fn full(modes: u32) -> Result<Self> {
        let mut factors = Vec::with_capacity(2 * modes as usize);
        for mode in 1..=modes {
            factors.push(GeneratorId::new(mode, true)?);
            factors.push(GeneratorId::new(mode, false)?);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[GeneratorId] {
        &self.factors
    }

    /// Set of measured generators as a monomial mask.
    pub fn support(&self) -> Monomial {
        Monomial(self.factors.iter().fold(0, |acc, g| acc | (1 << g.bit())))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for MeasureList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "d {g}")?;
        }
        Ok(())
    }
}
