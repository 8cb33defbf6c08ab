//! Text format for states, weights, measures, and targets.
//!
//! A document is a set of `name:` sections, each running until the next
//! header. `#` starts a comment.
//!
//! ```text
//! modes: 1
//! state: |1:t1> (x) |1:t1> - |-1:t1> (x) |-1:t1>
//! weight: (1/(2*sqrt(2))) * t1'
//! measure: d t1', d t1
//! target: PsiPlus
//! ```
//!
//! * `tN` is the generator of mode `N`, `tN'` its conjugate.
//! * `|k:g>` is the coherent ket with complex scale `k` on generator `g`.
//! * `(x)` is the tensor product; state terms may carry a `scalar *` prefix.
//! * weights combine numbers, `i`, `pi`, generators, `+ - * /`, `sqrt(..)`
//!   and `exp(..)`; a divisor must be a scalar.
//! * the measure lists factors outermost first, so the last is applied first.
//! * a target is a canonical name or a list such as `(1/sqrt(2))|01> - (1/sqrt(2))|10>`.

mod lexer;
mod parser;
mod render;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{coherent_ket, BasisKet, FermionLabel, GrassmannState};
use crate::grassmann::{GeneratorId, GrassmannElement, MeasureList, Monomial};
use crate::qubit::{NamedState, QubitState};

pub use render::{format_complex, format_real, render_element, render_expr, render_state, render_target};

/// Syntax error with its position in the source (1-based line and column).
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {message} (at `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Exp,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
        }
    }
}

/// Scalar or Grassmann-valued expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(f64),
    ImagUnit,
    Pi,
    Generator(GeneratorId),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(x: f64) -> Self {
        Expr::Number(x)
    }

    pub fn gen(g: GeneratorId) -> Self {
        Expr::Generator(g)
    }

    pub fn negate(a: Expr) -> Self {
        Expr::Neg(Box::new(a))
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Self {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn call(f: Func, a: Expr) -> Self {
        Expr::Call(f, Box::new(a))
    }

    pub fn evaluate(&self) -> Result<GrassmannElement, String> {
        match self {
            Expr::Number(x) => finite(GrassmannElement::scalar(*x)),
            Expr::ImagUnit => Ok(GrassmannElement::scalar(Complex64::i())),
            Expr::Pi => Ok(GrassmannElement::scalar(std::f64::consts::PI)),
            Expr::Generator(g) => Ok(GrassmannElement::generator(*g)),
            Expr::Neg(a) => Ok(-a.evaluate()?),
            Expr::Binary(op, a, b) => apply_binary(*op, &a.evaluate()?, &b.evaluate()?),
            Expr::Call(f, a) => apply_call(*f, &a.evaluate()?),
        }
    }

    /// Highest mode index referenced.
    pub fn max_mode(&self) -> u32 {
        match self {
            Expr::Generator(g) => g.mode(),
            Expr::Neg(a) | Expr::Call(_, a) => a.max_mode(),
            Expr::Binary(_, a, b) => a.max_mode().max(b.max_mode()),
            _ => 0,
        }
    }
}

pub(crate) fn is_scalar(e: &GrassmannElement) -> bool {
    e.terms().all(|(m, _)| m == Monomial::ONE)
}

fn finite(e: GrassmannElement) -> Result<GrassmannElement, String> {
    if e.terms().all(|(_, c)| c.re.is_finite() && c.im.is_finite()) {
        Ok(e)
    } else {
        Err("value is not finite".into())
    }
}

pub(crate) fn apply_binary(op: BinOp, a: &GrassmannElement, b: &GrassmannElement) -> Result<GrassmannElement, String> {
    let v = match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a.multiply(b),
        BinOp::Div => {
            if !is_scalar(b) {
                return Err("divisor must be a scalar".into());
            }
            if b.body() == Complex64::new(0.0, 0.0) {
                return Err("division by zero".into());
            }
            a.scale(1.0 / b.body())
        }
    };
    finite(v)
}

pub(crate) fn apply_call(f: Func, a: &GrassmannElement) -> Result<GrassmannElement, String> {
    let v = match f {
        Func::Sqrt => {
            if !is_scalar(a) {
                return Err("sqrt needs a scalar argument".into());
            }
            GrassmannElement::scalar(a.body().sqrt())
        }
        Func::Exp => {
            let body = a.body();
            let soul = a - &GrassmannElement::scalar(body);
            soul.exp_nilpotent().map_err(|e| e.to_string())?.scale(body.exp())
        }
    };
    finite(v)
}

/// State expression; parentheses leave no trace in the tree.
#[derive(Clone, Debug, PartialEq)]
pub enum StateExpr {
    Ket { scale: Expr, generator: GeneratorId },
    Tensor(Vec<StateExpr>),
    Scaled { coeff: Expr, state: Box<StateExpr> },
    /// `(negated, term)` pairs.
    Sum(Vec<(bool, StateExpr)>),
}

impl StateExpr {
    pub fn ket(scale: Expr, generator: GeneratorId) -> Self {
        StateExpr::Ket { scale, generator }
    }

    pub fn evaluate(&self) -> Result<GrassmannState, String> {
        match self {
            StateExpr::Ket { scale, generator } => {
                let k = scalar_value(scale)?;
                Ok(coherent_ket(FermionLabel::new(k, *generator)))
            }
            StateExpr::Tensor(factors) => {
                let mut it = factors.iter();
                let mut acc = it.next().ok_or("empty tensor product")?.evaluate()?;
                for f in it {
                    acc = tensor_checked(&acc, &f.evaluate()?)?;
                }
                Ok(acc)
            }
            StateExpr::Scaled { coeff, state } => Ok(state.evaluate()?.scale(scalar_value(coeff)?)),
            StateExpr::Sum(terms) => {
                let mut acc: Option<GrassmannState> = None;
                for (neg, t) in terms {
                    let v = t.evaluate()?;
                    let sign = if *neg { -1.0 } else { 1.0 };
                    acc = Some(match acc {
                        None => v.scale(sign),
                        Some(a) => sum_checked(&a, sign, &v)?,
                    });
                }
                acc.ok_or_else(|| "empty sum".into())
            }
        }
    }

    pub fn max_mode(&self) -> u32 {
        match self {
            StateExpr::Ket { scale, generator } => scale.max_mode().max(generator.mode()),
            StateExpr::Tensor(fs) => fs.iter().map(|f| f.max_mode()).max().unwrap_or(0),
            StateExpr::Scaled { coeff, state } => coeff.max_mode().max(state.max_mode()),
            StateExpr::Sum(ts) => ts.iter().map(|(_, t)| t.max_mode()).max().unwrap_or(0),
        }
    }
}

pub(crate) fn scalar_value(e: &Expr) -> Result<Complex64, String> {
    let v = e.evaluate()?;
    if is_scalar(&v) {
        Ok(v.body())
    } else {
        Err("expected a scalar".into())
    }
}

pub(crate) fn tensor_checked(a: &GrassmannState, b: &GrassmannState) -> Result<GrassmannState, String> {
    if a.qubits() + b.qubits() > crate::fock::MAX_QUBITS {
        return Err(format!("tensor product exceeds {} qubits", crate::fock::MAX_QUBITS));
    }
    Ok(a.tensor_product(b))
}

pub(crate) fn sum_checked(a: &GrassmannState, sign: f64, b: &GrassmannState) -> Result<GrassmannState, String> {
    GrassmannState::linear_combine(1.0, a, sign, b).map_err(|e| e.to_string())
}

/// One `coefficient|bits>` term of an explicit target.
#[derive(Clone, Debug, PartialEq)]
pub struct KetTerm {
    pub negated: bool,
    pub coeff: Option<Expr>,
    pub ket: BasisKet,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Named(NamedState),
    Kets(Vec<KetTerm>),
}

impl Target {
    pub fn evaluate(&self) -> Result<QubitState, String> {
        match self {
            Target::Named(n) => Ok(n.state()),
            Target::Kets(terms) => {
                let first = terms.first().ok_or("empty ket list")?;
                let mut s = QubitState::zero(first.ket.len());
                for t in terms {
                    if t.ket.len() != first.ket.len() {
                        return Err("kets have different lengths".into());
                    }
                    let mut c = match &t.coeff {
                        Some(e) => scalar_value(e)?,
                        None => Complex64::new(1.0, 0.0),
                    };
                    if t.negated {
                        c = -c;
                    }
                    s.add_to(t.ket, c);
                }
                Ok(s)
            }
        }
    }

    pub fn qubits(&self) -> usize {
        match self {
            Target::Named(n) => n.qubits(),
            Target::Kets(ts) => ts.first().map_or(0, |t| t.ket.len()),
        }
    }
}

/// A parsed document. Sections other than `modes` are optional; commands
/// check for the ones they need.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    /// Declared, or else the highest mode referenced (at least 1).
    pub modes: u32,
    pub state: Option<StateExpr>,
    pub weight: Option<Expr>,
    pub measure: Option<MeasureList>,
    pub target: Option<Target>,
}

impl Document {
    pub fn grassmann_state(&self) -> Result<GrassmannState> {
        self.state
            .as_ref()
            .ok_or(Error::MissingSection("state"))?
            .evaluate()
            .map_err(Error::Evaluation)
    }

    pub fn weight_element(&self) -> Result<GrassmannElement> {
        self.weight
            .as_ref()
            .ok_or(Error::MissingSection("weight"))?
            .evaluate()
            .map_err(Error::Evaluation)
    }

    pub fn target_state(&self) -> Result<QubitState> {
        self.target
            .as_ref()
            .ok_or(Error::MissingSection("target"))?
            .evaluate()
            .map_err(Error::Evaluation)
    }

    /// The declared measure, or `d t1', d t1, …` over every mode.
    pub fn effective_measure(&self) -> MeasureList {
        self.measure
            .clone()
            .unwrap_or_else(|| MeasureList::full(self.modes).expect("modes validated at parse time"))
    }
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    parser::parse_document(text)
}

pub fn parse_scalar(text: &str) -> Result<Complex64, ParseError> {
    parser::parse_scalar(text)
}

pub fn render_document(d: &Document) -> String {
    render::render_document(d)
}
