use num_complex::Complex64;

use super::{BinOp, Document, Expr, StateExpr, Target};
use crate::grassmann::{GrassmannElement, Monomial};

const SIG_DIGITS: usize = 12;

pub fn render_document(d: &Document) -> String {
    let mut out = format!("modes: {}\n", d.modes);
    if let Some(s) = &d.state {
        out += &format!("state: {}\n", render_state(s));
    }
    if let Some(w) = &d.weight {
        out += &format!("weight: {}\n", render_expr(w));
    }
    if let Some(m) = &d.measure {
        out += &format!("measure: {m}\n");
    }
    if let Some(t) = &d.target {
        out += &format!("target: {}\n", render_target(t));
    }
    out
}

/// Literal numbers in shortest round-trip form.
fn literal(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        _ => 4,
    }
}

fn monomial_like(e: &Expr) -> bool {
    match e {
        Expr::Generator(_) => true,
        Expr::Binary(BinOp::Mul, a, b) => monomial_like(a) && monomial_like(b),
        _ => false,
    }
}

fn wrap(s: String, paren: bool) -> String {
    if paren {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Number(x) => literal(*x),
        Expr::ImagUnit => "i".into(),
        Expr::Pi => "pi".into(),
        Expr::Generator(g) => g.to_string(),
        Expr::Neg(a) => format!("-{}", wrap(render_expr(a), precedence(a) < 3)),
        Expr::Call(f, a) => format!("{}({})", f.name(), render_expr(a)),
        Expr::Binary(op, a, b) => {
            let p = precedence(e);
            let left_paren = precedence(a) < p || (p == 2 && matches!(**a, Expr::Binary(BinOp::Div, ..)));
            let right_paren = precedence(b) <= p || matches!(**b, Expr::Neg(_));
            let sep = match op {
                BinOp::Add => " + ",
                BinOp::Sub => " - ",
                BinOp::Div => "/",
                BinOp::Mul if monomial_like(a) && monomial_like(b) => "*",
                BinOp::Mul => " * ",
            };
            format!("{}{sep}{}", wrap(render_expr(a), left_paren), wrap(render_expr(b), right_paren))
        }
    }
}

/// Coefficients stay bare only when they are atoms.
fn coefficient(e: &Expr) -> String {
    wrap(render_expr(e), precedence(e) < 4)
}

pub fn render_state(s: &StateExpr) -> String {
    match s {
        StateExpr::Ket { scale, generator } => format!("|{}:{generator}>", render_expr(scale)),
        StateExpr::Tensor(fs) => fs
            .iter()
            .map(|f| wrap(render_state(f), !matches!(f, StateExpr::Ket { .. })))
            .collect::<Vec<_>>()
            .join(" (x) "),
        StateExpr::Scaled { coeff, state } => {
            let inner = render_state(state);
            let paren = matches!(**state, StateExpr::Sum(_) | StateExpr::Scaled { .. });
            format!("{} * {}", coefficient(coeff), wrap(inner, paren))
        }
        StateExpr::Sum(terms) => {
            let mut out = String::new();
            for (i, (neg, t)) in terms.iter().enumerate() {
                let body = wrap(render_state(t), matches!(t, StateExpr::Sum(_)));
                match (i, neg) {
                    (0, false) => {}
                    (0, true) => out.push('-'),
                    (_, false) => out.push_str(" + "),
                    (_, true) => out.push_str(" - "),
                }
                out += &body;
            }
            out
        }
    }
}

pub fn render_target(t: &Target) -> String {
    match t {
        Target::Named(n) => n.to_string(),
        Target::Kets(terms) => {
            let mut out = String::new();
            for (i, term) in terms.iter().enumerate() {
                match (i, term.negated) {
                    (0, false) => {}
                    (0, true) => out.push('-'),
                    (_, false) => out.push_str(" + "),
                    (_, true) => out.push_str(" - "),
                }
                if let Some(c) = &term.coeff {
                    out += &coefficient(c);
                }
                out += &term.ket.to_string();
            }
            out
        }
    }
}

/// Real number with 12 significant digits, trailing zeros removed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        format!("{}e{e}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Components below this fraction of the modulus are not printed.
const NEGLIGIBLE: f64 = 1e-12;

fn parts(c: Complex64) -> (f64, f64) {
    let n = c.norm();
    let re = if c.re.abs() <= NEGLIGIBLE * n { 0.0 } else { c.re };
    let im = if c.im.abs() <= NEGLIGIBLE * n { 0.0 } else { c.im };
    (re, im)
}

fn imag(im: f64) -> String {
    match format_real(im).as_str() {
        "1" => "i".into(),
        "-1" => "-i".into(),
        s => format!("{s}*i"),
    }
}

/// Complex number in DSL syntax, e.g. `0.5`, `-2*i`, `0.5 - 0.5*i`.
pub fn format_complex(c: Complex64) -> String {
    match parts(c) {
        (re, 0.0) => format_real(re),
        (0.0, im) => imag(im),
        (re, im) if im < 0.0 => format!("{} - {}", format_real(re), imag(-im)),
        (re, im) => format!("{} + {}", format_real(re), imag(im)),
    }
}

/// Canonical text of a computed element, reparsable as a weight.
pub fn render_element(e: &GrassmannElement) -> String {
    let mut out = String::new();
    for (m, c) in e.terms() {
        let (re, im) = parts(c);
        // pull a leading minus out of purely real or purely imaginary values
        let (negative, mag) = match (re, im) {
            (r, 0.0) if r < 0.0 => (true, Complex64::new(-r, 0.0)),
            (0.0, i) if i < 0.0 => (true, Complex64::new(0.0, -i)),
            (r, i) => (false, Complex64::new(r, i)),
        };
        let coeff = match parts(mag) {
            (_, 0.0) | (0.0, _) => format_complex(mag),
            _ => format!("({})", format_complex(mag)),
        };
        let body = if m == Monomial::ONE {
            coeff
        } else {
            let word = m.generators().map(|g| g.to_string()).collect::<Vec<_>>().join("*");
            if coeff == "1" {
                word
            } else {
                format!("{coeff}*{word}")
            }
        };
        match (out.is_empty(), negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out += &body;
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
