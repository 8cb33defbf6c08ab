//! Berezin integration of weighted states, and recovery of weights from a
//! target output.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::GrassmannState;
use crate::grassmann::{GrassmannElement, MeasureList, Monomial};
use crate::qubit::QubitState;

/// A weight is an ordinary Grassmann element placed left of the state.
pub type WeightFunction = GrassmannElement;

/// Singular values at or below this bound are treated as zero.
pub const SINGULAR_CUTOFF: f64 = 1e-10;

/// Integrates `w · s` ket by ket. Every amplitude must reduce to a pure
/// scalar; leftover Grassmann content means the measure misses a generator.
pub fn integrate_with_weight(w: &WeightFunction, s: &GrassmannState, m: &MeasureList) -> Result<QubitState> {
    let mut out = QubitState::zero(s.qubits());
    for (ket, amp) in s.iter() {
        let reduced = w.multiply(amp).berezin_integrate(m);
        if reduced.degree() > 0 {
            return Err(Error::ResidualGrassmann {
                ket: ket.to_string(),
                degree: reduced.degree(),
            });
        }
        out.add_to(ket, reduced.body());
    }
    Ok(out)
}

/// Minimum-norm least-squares weight for a target, with the null space of
/// the weight-to-output map.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSolution {
    pub particular: WeightFunction,
    pub null_space: Vec<WeightFunction>,
    /// `‖A·x − target‖` for the particular solution.
    pub residual: f64,
}

impl WeightSolution {
    pub fn is_exact(&self, tol: f64) -> bool {
        self.residual < tol
    }
}

/// Every monomial over the measure's generators, in canonical order.
pub fn weight_basis(m: &MeasureList) -> Vec<Monomial> {
    let support = m.support().bits();
    // enumerate submasks of `support` in increasing order
    let mut out = Vec::with_capacity(1 << support.count_ones());
    let mut sub: u16 = 0;
    loop {
        out.push(Monomial::from_bits(sub));
        if sub == support {
            break;
        }
        sub = (sub.wrapping_sub(support)) & support;
    }
    out.sort();
    out
}

/// Solves `A·x ≈ target` where column `j` of `A` is the integrated output of
/// the `j`-th basis monomial.
pub fn solve_weight(s: &GrassmannState, target: &QubitState, m: &MeasureList) -> Result<WeightSolution> {
    if target.qubits() != s.qubits() {
        return Err(Error::QubitCountMismatch {
            left: s.qubits(),
            right: target.qubits(),
        });
    }
    let basis = weight_basis(m);
    let rows = 1usize << s.qubits();
    let mut zero_cols = Vec::new();
    let mut live: Vec<(Monomial, Vec<Complex64>)> = Vec::new();
    for mono in &basis {
        let col = integrate_with_weight(&GrassmannElement::term(*mono, 1.0), s, m)?;
        if col.amplitudes().iter().all(|a| a.norm() == 0.0) {
            zero_cols.push(*mono);
        } else {
            live.push((*mono, col.amplitudes().to_vec()));
        }
    }

    let b: Vec<Complex64> = target.amplitudes().to_vec();
    let mut null_space: Vec<WeightFunction> = zero_cols.iter().map(|m| GrassmannElement::term(*m, 1.0)).collect();

    if live.is_empty() {
        let residual = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        return Ok(WeightSolution {
            particular: GrassmannElement::zero(),
            null_space,
            residual,
        });
    }

    let k = live.len();
    // pad to at least k rows so the SVD yields a complete right basis
    let height = rows.max(k);
    let a = DMatrix::from_fn(height, k, |r, c| {
        if r < rows {
            live[c].1[r]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let sigma = &svd.singular_values;

    let mut padded_b = vec![Complex64::new(0.0, 0.0); height];
    padded_b[..rows].copy_from_slice(&b);

    let mut x = vec![Complex64::new(0.0, 0.0); k];
    for (i, s_i) in sigma.iter().enumerate() {
        if *s_i <= SINGULAR_CUTOFF {
            continue;
        }
        let proj: Complex64 = (0..height).map(|r| u[(r, i)].conj() * padded_b[r]).sum();
        let coeff = proj / *s_i;
        for (j, xj) in x.iter_mut().enumerate() {
            // V = v_tᴴ, so V[j, i] = conj(v_t[i, j])
            *xj += v_t[(i, j)].conj() * coeff;
        }
    }
    for (i, s_i) in sigma.iter().enumerate() {
        if *s_i <= SINGULAR_CUTOFF {
            null_space.push(combine(&live, |j| v_t[(i, j)].conj()));
        }
    }

    let residual = (0..rows)
        .map(|r| {
            let ax: Complex64 = (0..k).map(|c| live[c].1[r] * x[c]).sum();
            (ax - b[r]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt();

    Ok(WeightSolution {
        particular: combine(&live, |j| x[j]),
        null_space,
        residual,
    })
}

fn combine(live: &[(Monomial, Vec<Complex64>)], coeff: impl Fn(usize) -> Complex64) -> WeightFunction {
    GrassmannElement::from_terms(live.iter().enumerate().map(|(j, (m, _))| (*m, coeff(j))))
}
