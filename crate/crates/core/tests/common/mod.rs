//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use grassmann_fcs::boson::BosonSuperposition;
use grassmann_fcs::{GeneratorId, GrassmannElement, MeasureList, Monomial, QubitState};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(r: &mut StdRng) -> Complex64 {
    c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

/// Position of a generator in the order t1 < t1' < t2 < t2' < …
pub fn slot(g: GeneratorId) -> u32 {
    2 * (g.mode() - 1) + u32::from(g.is_conjugated())
}

pub fn generator_at(slot: u32) -> GeneratorId {
    GeneratorId::new(slot / 2 + 1, slot % 2 == 1).unwrap()
}

/// Dense Grassmann element keyed by generator bitmask. Signs come from
/// counting transpositions, not from any library routine.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dense(pub BTreeMap<u16, Complex64>);

impl Dense {
    pub fn from_element(e: &GrassmannElement) -> Self {
        Dense(e.terms().map(|(m, c)| (m.bits(), c)).collect())
    }

    pub fn to_element(&self) -> GrassmannElement {
        GrassmannElement::from_terms(self.0.iter().map(|(&b, &c)| (Monomial::from_bits(b), c)))
    }

    fn add(&mut self, mask: u16, v: Complex64) {
        *self.0.entry(mask).or_insert(c(0.0, 0.0)) += v;
    }

    /// Sorts a word of generator slots, returning the parity of the
    /// permutation, or `None` if a slot repeats.
    pub fn sort_word(word: &[u32]) -> Option<(f64, u16)> {
        let mut w = word.to_vec();
        let mut sign = 1.0;
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] == w[j + 1] {
                    return None;
                }
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if w.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some((sign, w.iter().fold(0u16, |m, &s| m | (1 << s))))
    }

    pub fn word(mask: u16) -> Vec<u32> {
        (0..16).filter(|b| mask & (1 << b) != 0).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Dense::default();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &other.0 {
                let mut word = Self::word(a);
                word.extend(Self::word(b));
                if let Some((sign, mask)) = Self::sort_word(&word) {
                    out.add(mask, x * y * sign);
                }
            }
        }
        out
    }

    /// Reverses each word and conjugates every generator and coefficient.
    pub fn conj(&self) -> Self {
        let mut out = Dense::default();
        for (&a, &x) in &self.0 {
            let word: Vec<u32> = Self::word(a).into_iter().rev().map(|s| s ^ 1).collect();
            let (sign, mask) = Self::sort_word(&word).expect("distinct slots");
            out.add(mask, x.conj() * sign);
        }
        out
    }

    /// Left derivative: bring the generator to the front, then drop it.
    pub fn derive(&self, g: GeneratorId) -> Self {
        let s = slot(g);
        let mut out = Dense::default();
        for (&a, &x) in &self.0 {
            if a & (1 << s) == 0 {
                continue;
            }
            let before = Self::word(a).iter().filter(|&&t| t < s).count();
            let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
            out.add(a & !(1 << s), x * sign);
        }
        out
    }

    /// Rightmost measure factor acts first.
    pub fn integrate(&self, measure: &[GeneratorId]) -> Self {
        measure.iter().rev().fold(self.clone(), |acc, &g| acc.derive(g))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let mut keys: Vec<u16> = self.0.keys().chain(other.0.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let zero = c(0.0, 0.0);
        keys.iter()
            .map(|k| (self.0.get(k).unwrap_or(&zero) - other.0.get(k).unwrap_or(&zero)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn element_distance(a: &GrassmannElement, b: &GrassmannElement) -> f64 {
    Dense::from_element(a).distance(&Dense::from_element(b))
}

/// Random element over the first `modes` modes with up to `max_terms` terms.
pub fn random_element(r: &mut StdRng, modes: u32, max_terms: usize) -> GrassmannElement {
    let bits = 2 * modes;
    let n = r.random_range(1..=max_terms);
    GrassmannElement::from_terms((0..n).map(|_| {
        let mask: u16 = r.random_range(0..(1u32 << bits)) as u16;
        (Monomial::from_bits(mask), random_complex(r))
    }))
}

pub fn random_generator(r: &mut StdRng, modes: u32) -> GeneratorId {
    generator_at(r.random_range(0..2 * modes))
}

pub fn random_measure(r: &mut StdRng, modes: u32) -> MeasureList {
    let mut slots: Vec<u32> = (0..2 * modes).filter(|_| r.random_bool(0.6)).collect();
    // shuffle so factor order varies
    for i in (1..slots.len()).rev() {
        let j = r.random_range(0..=i);
        slots.swap(i, j);
    }
    MeasureList::new(slots.into_iter().map(generator_at).collect()).unwrap()
}

pub struct AlgebraTally {
    pub checks: usize,
    pub worst: f64,
}

/// Randomized comparison of the library against [`Dense`]: products and
/// anticommutation, associativity, conjugation, and integration.
pub fn algebra_checks(seed: u64, per_kind: usize) -> AlgebraTally {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    let modes = 3;
    for _ in 0..per_kind {
        // anticommutation and products
        let (g, h) = (random_generator(&mut r, modes), random_generator(&mut r, modes));
        let (eg, eh) = (GrassmannElement::from(g), GrassmannElement::from(h));
        let anti = &(&eg * &eh) + &(&eh * &eg);
        worst = worst.max(element_distance(&anti, &GrassmannElement::zero()));
        if g == h {
            worst = worst.max(element_distance(&(&eg * &eg), &GrassmannElement::zero()));
        }
        let a = random_element(&mut r, modes, 6);
        let b = random_element(&mut r, modes, 6);
        let lib = &a * &b;
        worst = worst.max(Dense::from_element(&lib).distance(&Dense::from_element(&a).mul(&Dense::from_element(&b))));
        checks += 1;
    }
    for _ in 0..per_kind {
        let a = random_element(&mut r, modes, 5);
        let b = random_element(&mut r, modes, 5);
        let d = random_element(&mut r, modes, 5);
        worst = worst.max(element_distance(&(&(&a * &b) * &d), &(&a * &(&b * &d))));
        let sum = &b + &d;
        worst = worst.max(element_distance(&(&a * &sum), &(&(&a * &b) + &(&a * &d))));
        checks += 1;
    }
    for _ in 0..per_kind {
        let a = random_element(&mut r, modes, 6);
        let b = random_element(&mut r, modes, 6);
        worst = worst.max(element_distance(&a.conjugate().conjugate(), &a));
        worst = worst.max(element_distance(&(&a * &b).conjugate(), &(&b.conjugate() * &a.conjugate())));
        worst = worst.max(Dense::from_element(&a.conjugate()).distance(&Dense::from_element(&a).conj()));
        checks += 1;
    }
    for _ in 0..per_kind {
        let a = random_element(&mut r, modes, 8);
        let g = random_generator(&mut r, modes);
        let single = MeasureList::new(vec![g]).unwrap();
        let integ = a.berezin_integrate(&single);
        worst = worst.max(element_distance(&integ, &a.left_derivative(g)));
        worst = worst.max(Dense::from_element(&integ).distance(&Dense::from_element(&a).derive(g)));
        if integ.terms().any(|(m, _)| m.contains(g)) {
            worst = f64::INFINITY;
        }
        let m = random_measure(&mut r, modes);
        let lib = a.berezin_integrate(&m);
        worst = worst.max(Dense::from_element(&lib).distance(&Dense::from_element(&a).integrate(m.factors())));
        checks += 1;
    }
    AlgebraTally { checks, worst }
}

/// Rank of a complex matrix by Gaussian elimination with partial pivoting.
pub fn rank(mut rows: Vec<Vec<Complex64>>, rel_tol: f64) -> usize {
    let scale = rows.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&i, &j| rows[i][col].norm().total_cmp(&rows[j][col].norm())) else {
            break;
        };
        if rows[p][col].norm() <= rel_tol * scale {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank][col];
        let (top, below) = rows.split_at_mut(rank + 1);
        for row in below {
            let f = row[col] / pivot;
            for (x, &v) in row[col..cols].iter_mut().zip(&top[rank][col..cols]) {
                *x -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Schmidt rank across `side` (1-based qubits) by reshaping the amplitudes.
pub fn schmidt_rank_oracle(s: &QubitState, side: &[usize]) -> usize {
    let n = s.qubits();
    let rest: Vec<usize> = (1..=n).filter(|q| !side.contains(q)).collect();
    let index = |bits: &[bool], qubits: &[usize]| {
        qubits.iter().fold(0usize, |acc, &q| (acc << 1) | usize::from(bits[q - 1]))
    };
    let mut m = vec![vec![c(0.0, 0.0); 1 << rest.len()]; 1 << side.len()];
    for (i, amp) in s.amplitudes().iter().enumerate() {
        // qubit 1 is the most significant bit
        let bits: Vec<bool> = (0..n).map(|q| i & (1 << (n - 1 - q)) != 0).collect();
        m[index(&bits, side)][index(&bits, &rest)] = *amp;
    }
    rank(m, 1e-9)
}

/// `|⟨ψ|σy⊗σy|ψ*⟩|` for a normalized two-qubit state.
pub fn wootters(s: &QubitState) -> f64 {
    let n = s.norm();
    let a: Vec<Complex64> = s.amplitudes().iter().map(|z| z / n).collect();
    // σy⊗σy maps |00>,|01>,|10>,|11> to -|11>, |10>, |01>, -|00>
    let flipped = [-a[3].conj(), a[2].conj(), a[1].conj(), -a[0].conj()];
    a.iter().zip(flipped).map(|(x, y)| x.conj() * y).sum::<Complex64>().norm()
}

pub fn overlap(a: Complex64, b: Complex64) -> Complex64 {
    (a.conj() * b - (a.norm_sqr() + b.norm_sqr()) / 2.0).exp()
}

/// Wootters concurrence after expressing the state in Gram–Schmidt bases
/// built from `{|α⟩, |γ⟩}` and `{|β⟩, |δ⟩}`.
pub fn gram_schmidt_concurrence(z: &BosonSuperposition) -> f64 {
    let (sa, sb) = (overlap(z.alpha, z.gamma), overlap(z.beta, z.delta));
    let (na, nb) = ((1.0 - sa.norm_sqr()).sqrt(), (1.0 - sb.norm_sqr()).sqrt());
    let m = [z.mu + z.nu * sa * sb, z.nu * sa * nb, z.nu * na * sb, z.nu * na * nb];
    let norm: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    let psi = QubitState::from_amplitudes(m.map(|x| x / norm.sqrt()).to_vec());
    wootters(&psi)
}
