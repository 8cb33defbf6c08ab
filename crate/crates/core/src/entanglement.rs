//! Two-qubit concurrence, Schmidt ranks across bipartitions, and the
//! product / biseparable / genuinely-entangled classification.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::{NamedState, QubitState};

/// Relative cutoff for counting Schmidt values.
pub const SCHMIDT_CUTOFF: f64 = 1e-9;
/// Minimum fidelity for a named-state match.
pub const NAMED_MATCH_FIDELITY: f64 = 1.0 - 1e-9;

/// `2|ad − bc|` on the normalized amplitudes `(a, b, c, d)`.
pub fn concurrence2(s: &QubitState) -> Result<f64> {
    if s.qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            found: s.qubits(),
        });
    }
    let n = s.normalized().filter(|_| s.norm() > 0.0).ok_or(Error::ZeroState)?;
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| n.amplitudes()[i]);
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BipartitionReport {
    /// 1-based qubit labels on one side, ascending.
    pub partition: Vec<usize>,
    pub schmidt_rank: usize,
    /// Nonincreasing.
    pub schmidt_values: Vec<f64>,
}

/// Singular values of the amplitude matrix with `partition` as row index.
pub fn schmidt_profile(s: &QubitState, partition: &[usize]) -> Result<BipartitionReport> {
    let n = s.qubits();
    let mut side = partition.to_vec();
    side.sort_unstable();
    side.dedup();
    if side.len() != partition.len() {
        return Err(Error::InvalidPartition(format!("{partition:?} repeats a qubit")));
    }
    if side.is_empty() || side.len() >= n {
        return Err(Error::InvalidPartition(format!(
            "{partition:?} is not a nonempty proper subset of 1..={n}"
        )));
    }
    if let Some(q) = side.iter().find(|q| **q == 0 || **q > n) {
        return Err(Error::InvalidPartition(format!("qubit {q} outside 1..={n}")));
    }
    if s.norm() == 0.0 {
        return Err(Error::ZeroState);
    }
    let rest: Vec<usize> = (1..=n).filter(|q| !side.contains(q)).collect();
    // qubit q (1-based) is bit n - q of the big-endian index
    let pack = |index: usize, qs: &[usize]| qs.iter().fold(0usize, |acc, q| (acc << 1) | ((index >> (n - q)) & 1));
    let mut m = DMatrix::from_element(1 << side.len(), 1 << rest.len(), Complex64::new(0.0, 0.0));
    for (i, a) in s.amplitudes().iter().enumerate() {
        m[(pack(i, &side), pack(i, &rest))] = *a;
    }
    let mut values: Vec<f64> = m.singular_values().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let cutoff = SCHMIDT_CUTOFF * values[0];
    let schmidt_rank = values.iter().filter(|v| **v > cutoff).count();
    Ok(BipartitionReport {
        partition: side,
        schmidt_rank,
        schmidt_values: values,
    })
}

/// Every bipartition once, named by its smaller side (the side holding
/// qubit 1 when both halves are equal).
pub fn canonical_bipartitions(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .map(|mask| (1..=n).filter(|q| mask >> (q - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|side| 2 * side.len() < n || (2 * side.len() == n && side[0] == 1))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Category {
    Product,
    /// The bipartitions across which the state factorizes.
    Biseparable(Vec<Vec<usize>>),
    GenuinelyEntangled,
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Category::Product => f.write_str("product"),
            Category::GenuinelyEntangled => f.write_str("genuinely entangled"),
            Category::Biseparable(cuts) => {
                f.write_str("biseparable at ")?;
                let parts: Vec<String> = cuts
                    .iter()
                    .map(|c| format!("{{{}}}", c.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedMatch {
    pub name: NamedState,
    pub fidelity: f64,
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub category: Category,
    pub cuts: Vec<BipartitionReport>,
    pub named_match: Option<NamedMatch>,
}

pub fn classify(s: &QubitState) -> Result<ClassificationReport> {
    let n = s.qubits();
    if !(2..=8).contains(&n) {
        return Err(Error::UnsupportedQubitCount(n, "2..=8"));
    }
    if s.norm() == 0.0 {
        return Err(Error::ZeroState);
    }
    let cuts = canonical_bipartitions(n)
        .iter()
        .map(|p| schmidt_profile(s, p))
        .collect::<Result<Vec<_>>>()?;
    let single_ok = (1..=n).all(|q| {
        // a single qubit is the canonical side except when n = 2 and q = 2
        let rep = if n == 2 { vec![1] } else { vec![q] };
        cuts.iter().any(|c| c.partition == rep && c.schmidt_rank == 1)
    });
    let separating: Vec<Vec<usize>> = cuts
        .iter()
        .filter(|c| c.schmidt_rank == 1)
        .map(|c| c.partition.clone())
        .collect();
    let category = if single_ok {
        Category::Product
    } else if separating.is_empty() {
        Category::GenuinelyEntangled
    } else {
        Category::Biseparable(separating)
    };

    let mut best: Option<NamedMatch> = None;
    for name in NamedState::all().into_iter().filter(|c| c.qubits() == n) {
        let (fidelity, phase) = fidelity_up_to_phase(s, &name.state())?;
        if fidelity >= NAMED_MATCH_FIDELITY && best.as_ref().is_none_or(|b| fidelity > b.fidelity) {
            best = Some(NamedMatch { name, fidelity, phase });
        }
    }
    Ok(ClassificationReport {
        category,
        cuts,
        named_match: best,
    })
}

/// `(|⟨u,v⟩| / (‖u‖‖v‖), arg⟨u,v⟩)`.
pub fn fidelity_up_to_phase(u: &QubitState, v: &QubitState) -> Result<(f64, f64)> {
    let ip = u.inner(v).ok_or(Error::QubitCountMismatch {
        left: u.qubits(),
        right: v.qubits(),
    })?;
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(((ip.norm() / (nu * nv)).min(1.0), ip.arg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence2(&NamedState::PsiPlus.state()).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(concurrence2(&QubitState::basis("00")).unwrap(), 0.0);
        let s = QubitState::from_kets(2, [("01", c(0.6)), ("10", c(0.8))]);
        assert!((concurrence2(&s).unwrap() - 0.96).abs() < 1e-12);
        // normalization is internal
        assert!((concurrence2(&s.scale(c(5.0))).unwrap() - 0.96).abs() < 1e-12);
        assert!(matches!(concurrence2(&QubitState::zero(2)), Err(Error::ZeroState)));
        assert!(matches!(concurrence2(&QubitState::basis("000")), Err(Error::WrongQubitCount { .. })));
    }

    #[test]
    fn schmidt_examples() {
        let zpsi = QubitState::basis("0").tensor(&NamedState::PsiPlus.state());
        assert_eq!(schmidt_profile(&zpsi, &[1]).unwrap().schmidt_rank, 1);
        let ghz = schmidt_profile(&NamedState::Ghz(3).state(), &[1]).unwrap();
        assert_eq!(ghz.schmidt_rank, 2);
        assert!((ghz.schmidt_values[0] - FRAC_1_SQRT_2).abs() < 1e-12);
        for p in canonical_bipartitions(3) {
            assert_eq!(schmidt_profile(&QubitState::basis("000"), &p).unwrap().schmidt_rank, 1);
        }
        let s = QubitState::basis("000");
        assert!(schmidt_profile(&s, &[]).is_err());
        assert!(schmidt_profile(&s, &[1, 2, 3]).is_err());
        assert!(schmidt_profile(&s, &[4]).is_err());
        assert!(schmidt_profile(&s, &[1, 1]).is_err());
    }

    #[test]
    fn bipartition_enumeration() {
        assert_eq!(canonical_bipartitions(2), vec![vec![1]]);
        assert_eq!(canonical_bipartitions(3), vec![vec![1], vec![2], vec![3]]);
        let four = canonical_bipartitions(4);
        assert_eq!(four.len(), 7);
        assert!(four.contains(&vec![1, 3]) && !four.contains(&vec![2, 4]));
    }

    #[test]
    fn classify_examples() {
        let w = classify(&NamedState::W(3).state()).unwrap();
        assert_eq!(w.category, Category::GenuinelyEntangled);
        assert_eq!(w.named_match.unwrap().name, NamedState::W(3));

        let zphi = QubitState::basis("0").tensor(&NamedState::PhiPlus.state());
        assert_eq!(classify(&zphi).unwrap().category, Category::Biseparable(vec![vec![1]]));

        let p = classify(&QubitState::basis("01")).unwrap();
        assert_eq!(p.category, Category::Product);
        assert!(p.named_match.is_none());
        assert!(classify(&QubitState::basis("0")).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let u = NamedState::W(3).state();
        let phase = 0.7;
        let (f, ph) = fidelity_up_to_phase(&u, &u.scale(Complex64::from_polar(1.0, phase))).unwrap();
        assert!((f - 1.0).abs() < 1e-12 && (ph - phase).abs() < 1e-12);
        let (f, _) = fidelity_up_to_phase(&NamedState::PsiPlus.state(), &NamedState::PsiMinus.state()).unwrap();
        assert!(f.abs() < 1e-12);
        let (f, _) = fidelity_up_to_phase(&QubitState::basis("00"), &QubitState::basis("11")).unwrap();
        assert_eq!(f, 0.0);
    }
}
