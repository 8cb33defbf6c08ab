use num_complex::Complex64;

use super::lexer::{lex, Fragment, Tok, Token};
use super::{
    apply_binary, apply_call, is_scalar, sum_checked, tensor_checked, BinOp, Document, Expr, Func, KetTerm, ParseError,
    StateExpr, Target,
};
use crate::fock::{coherent_ket, BasisKet, FermionLabel, GrassmannState};
use crate::grassmann::{GeneratorId, GrassmannElement, MeasureList, MAX_MODES};
use crate::qubit::NamedState;

const SECTIONS: [&str; 5] = ["modes", "state", "weight", "measure", "target"];

struct Section {
    fragments: Vec<Fragment>,
    end: (usize, usize),
}

/// A single complex scalar, such as `1 - i` or `i*pi/2`.
pub(crate) fn parse_scalar(text: &str) -> Result<Complex64, ParseError> {
    let frag = Fragment {
        line: 1,
        column: 1,
        text: text.to_string(),
    };
    let mut p = Parser {
        toks: lex(&[frag], (1, text.chars().count() + 1))?,
        pos: 0,
        limit: Some(MAX_MODES),
        max_mode: 0,
    };
    let at = p.peek().clone();
    let ev = p.expr()?;
    p.finish()?;
    p.scalar(&ev, &at)
}

pub(crate) fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut sections: [Option<Section>; 5] = Default::default();
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let rest = &body[indent..];
        let name_len = rest.chars().take_while(|c| c.is_ascii_alphabetic()).count();
        let after = rest[name_len..].trim_start();
        if name_len > 0 && after.starts_with(':') {
            let name = &rest[..name_len];
            let column = indent + 1;
            let slot = SECTIONS.iter().position(|s| *s == name).ok_or_else(|| ParseError {
                line,
                column,
                message: format!("unknown section `{name}`"),
                token: name.to_string(),
            })?;
            if sections[slot].is_some() {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("repeated section `{name}`"),
                    token: name.to_string(),
                });
            }
            let colon = body.len() - after.len();
            let content = &body[colon + 1..];
            let content_col = body[..colon + 1].chars().count() + 1;
            let mut sec = Section {
                fragments: Vec::new(),
                end: (line, content_col),
            };
            push_fragment(&mut sec, line, content_col, content);
            sections[slot] = Some(sec);
            current = Some(slot);
        } else {
            let Some(slot) = current else {
                return Err(ParseError {
                    line,
                    column: indent + 1,
                    message: "expected a section header such as `state:`".into(),
                    token: rest.trim_end().to_string(),
                });
            };
            let sec = sections[slot].as_mut().expect("current section exists");
            push_fragment(sec, line, 1, body);
        }
    }

    let [modes_s, state_s, weight_s, measure_s, target_s] = sections;

    let declared = match &modes_s {
        Some(sec) => Some(parse_modes(sec)?),
        None => None,
    };
    let mut p_max = 0u32;
    let run = |sec: &Section| -> Result<Parser, ParseError> {
        let toks = lex(&sec.fragments, sec.end)?;
        Ok(Parser {
            toks,
            pos: 0,
            limit: declared,
            max_mode: 0,
        })
    };

    let state = match &state_s {
        Some(sec) => {
            let mut p = run(sec)?;
            let (ast, _) = p.state()?;
            p.finish()?;
            p_max = p_max.max(p.max_mode);
            Some(ast)
        }
        None => None,
    };
    let weight = match &weight_s {
        Some(sec) => {
            let mut p = run(sec)?;
            let ev = p.expr()?;
            p.finish()?;
            p_max = p_max.max(p.max_mode);
            Some(ev.ast)
        }
        None => None,
    };
    let measure = match &measure_s {
        Some(sec) => {
            let mut p = run(sec)?;
            let m = p.measure()?;
            p.finish()?;
            p_max = p_max.max(p.max_mode);
            Some(m)
        }
        None => None,
    };
    let target = match &target_s {
        Some(sec) => {
            let mut p = run(sec)?;
            let t = p.target()?;
            p.finish()?;
            p_max = p_max.max(p.max_mode);
            Some(t)
        }
        None => None,
    };

    Ok(Document {
        modes: declared.unwrap_or(p_max.max(1)),
        state,
        weight,
        measure,
        target,
    })
}

fn push_fragment(sec: &mut Section, line: usize, column: usize, text: &str) {
    let trimmed = text.trim_end();
    if trimmed.trim().is_empty() {
        return;
    }
    sec.end = (line, column + trimmed.chars().count());
    sec.fragments.push(Fragment {
        line,
        column,
        text: trimmed.to_string(),
    });
}

fn parse_modes(sec: &Section) -> Result<u32, ParseError> {
    let toks = lex(&sec.fragments, sec.end)?;
    let mut p = Parser {
        toks,
        pos: 0,
        limit: None,
        max_mode: 0,
    };
    let t = p.next();
    let n = match t.kind {
        Tok::Num(x) if x.fract() == 0.0 && (1.0..=f64::from(MAX_MODES)).contains(&x) => x as u32,
        _ => return Err(p.error(&t, format!("mode count must be an integer in 1..={MAX_MODES}"))),
    };
    p.finish()?;
    Ok(n)
}

struct Ev {
    ast: Expr,
    val: GrassmannElement,
}

#[derive(Clone, Copy, PartialEq)]
enum Stop {
    Never,
    /// A `*` followed by a state factor ends a coefficient.
    BeforeState,
    /// A `*` followed by `|bits>` ends a coefficient.
    BeforeBitKet,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    limit: Option<u32>,
    max_mode: u32,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        &self.toks[(self.pos + offset).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
            token: t.text.clone(),
        }
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(self.error(&t, format!("expected {what}")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.peek().clone();
        if t.kind == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&t, "unexpected token"))
        }
    }

    fn generator(&mut self) -> Result<GeneratorId, ParseError> {
        let t = self.next();
        let mode = match &t.kind {
            Tok::Ident(s) if s.len() > 1 && s.starts_with('t') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                s[1..].parse::<u32>().ok()
            }
            _ => return Err(self.error(&t, "expected a generator such as `t1` or `t1'`")),
        };
        let mode = mode
            .filter(|m| (1..=MAX_MODES).contains(m))
            .ok_or_else(|| self.error(&t, format!("generator index outside 1..={MAX_MODES}")))?;
        if let Some(limit) = self.limit {
            if mode > limit {
                return Err(self.error(&t, format!("generator exceeds the declared {limit} modes")));
            }
        }
        self.max_mode = self.max_mode.max(mode);
        let conjugated = if self.peek().kind == Tok::Prime {
            self.next();
            true
        } else {
            false
        };
        Ok(GeneratorId::new(mode, conjugated).expect("mode checked"))
    }

    fn binary(&self, op: BinOp, a: Ev, b: Ev, at: &Token) -> Result<Ev, ParseError> {
        let val = apply_binary(op, &a.val, &b.val).map_err(|m| self.error(at, m))?;
        Ok(Ev {
            ast: Expr::bin(op, a.ast, b.ast),
            val,
        })
    }

    fn expr(&mut self) -> Result<Ev, ParseError> {
        let mut lhs = self.term(Stop::Never)?;
        loop {
            let op = match self.peek().kind {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let at = self.next();
            let rhs = self.term(Stop::Never)?;
            lhs = self.binary(op, lhs, rhs, &at)?;
        }
    }

    fn term(&mut self, stop: Stop) -> Result<Ev, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().kind {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            if op == BinOp::Mul {
                let ends = match stop {
                    Stop::Never => false,
                    Stop::BeforeState => self.state_factor_at(self.pos + 1),
                    Stop::BeforeBitKet => matches!(self.peek_at(1).kind, Tok::BitKet(_)),
                };
                if ends {
                    return Ok(lhs);
                }
            }
            let at = self.next();
            let rhs = self.unary()?;
            lhs = self.binary(op, lhs, rhs, &at)?;
        }
    }

    fn unary(&mut self) -> Result<Ev, ParseError> {
        if self.peek().kind == Tok::Minus {
            self.next();
            let a = self.unary()?;
            return Ok(Ev {
                val: -a.val,
                ast: Expr::negate(a.ast),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Ev, ParseError> {
        let t = self.peek().clone();
        match &t.kind {
            Tok::Num(x) => {
                self.next();
                Ok(Ev {
                    ast: Expr::Number(*x),
                    val: GrassmannElement::scalar(*x),
                })
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => {
                    self.next();
                    Ok(Ev {
                        ast: Expr::ImagUnit,
                        val: GrassmannElement::scalar(Complex64::i()),
                    })
                }
                "pi" => {
                    self.next();
                    Ok(Ev {
                        ast: Expr::Pi,
                        val: GrassmannElement::scalar(std::f64::consts::PI),
                    })
                }
                "sqrt" | "exp" => {
                    let f = if name == "sqrt" { Func::Sqrt } else { Func::Exp };
                    self.next();
                    self.expect(Tok::LParen, &format!("`(` after `{}`", f.name()))?;
                    let a = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    let val = apply_call(f, &a.val).map_err(|m| self.error(&t, m))?;
                    Ok(Ev {
                        ast: Expr::call(f, a.ast),
                        val,
                    })
                }
                s if s.starts_with('t') && s.len() > 1 && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    let g = self.generator()?;
                    Ok(Ev {
                        ast: Expr::Generator(g),
                        val: GrassmannElement::generator(g),
                    })
                }
                _ => Err(self.error(&t, format!("unknown identifier `{name}`"))),
            },
            _ => Err(self.error(&t, "expected an expression")),
        }
    }

    fn scalar(&self, e: &Ev, at: &Token) -> Result<Complex64, ParseError> {
        if is_scalar(&e.val) {
            Ok(e.val.body())
        } else {
            Err(self.error(at, "expected a scalar, found a Grassmann expression"))
        }
    }

    /// Whether the token at `pos` starts a ket or a parenthesized state.
    fn state_factor_at(&self, pos: usize) -> bool {
        match self.toks.get(pos).map(|t| &t.kind) {
            Some(Tok::Pipe) => true,
            Some(Tok::LParen) => {
                let mut depth = 0usize;
                for t in &self.toks[pos..] {
                    match t.kind {
                        Tok::LParen => depth += 1,
                        Tok::RParen => {
                            depth -= 1;
                            if depth == 0 {
                                return false;
                            }
                        }
                        Tok::Pipe if depth > 0 => return true,
                        Tok::Eof => return false,
                        _ => {}
                    }
                }
                false
            }
            _ => false,
        }
    }

    fn state(&mut self) -> Result<(StateExpr, GrassmannState), ParseError> {
        let mut negated = false;
        if self.peek().kind == Tok::Minus {
            self.next();
            negated = true;
        }
        let (t, v) = self.state_term()?;
        let mut value = if negated { v.scale(-1.0) } else { v };
        let mut terms = vec![(negated, t)];
        loop {
            let neg = match self.peek().kind {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            let at = self.next();
            let (t, v) = self.state_term()?;
            if v.qubits() != value.qubits() {
                return Err(self.error(
                    &at,
                    format!("terms have different qubit counts ({} and {})", value.qubits(), v.qubits()),
                ));
            }
            value = sum_checked(&value, if neg { -1.0 } else { 1.0 }, &v).map_err(|m| self.error(&at, m))?;
            terms.push((neg, t));
        }
        if terms.len() == 1 && !terms[0].0 {
            let (_, t) = terms.pop().expect("one term");
            return Ok((t, value));
        }
        Ok((StateExpr::Sum(terms), value))
    }

    fn state_term(&mut self) -> Result<(StateExpr, GrassmannState), ParseError> {
        if self.state_factor_at(self.pos) {
            return self.tensor();
        }
        let at = self.peek().clone();
        let coeff = self.term(Stop::BeforeState)?;
        let c = self.scalar(&coeff, &at)?;
        self.expect(Tok::Star, "`*` between a coefficient and a state")?;
        let (s, v) = self.tensor()?;
        Ok((
            StateExpr::Scaled {
                coeff: coeff.ast,
                state: Box::new(s),
            },
            v.scale(c),
        ))
    }

    fn tensor(&mut self) -> Result<(StateExpr, GrassmannState), ParseError> {
        let (first, mut value) = self.state_factor()?;
        let mut factors = vec![first];
        while self.peek().kind == Tok::Tensor {
            let at = self.next();
            let (f, v) = self.state_factor()?;
            value = tensor_checked(&value, &v).map_err(|m| self.error(&at, m))?;
            factors.push(f);
        }
        if factors.len() == 1 {
            return Ok((factors.pop().expect("one factor"), value));
        }
        Ok((StateExpr::Tensor(factors), value))
    }

    fn state_factor(&mut self) -> Result<(StateExpr, GrassmannState), ParseError> {
        let t = self.peek().clone();
        match t.kind {
            Tok::Pipe => self.ket(),
            Tok::LParen => {
                self.next();
                let s = self.state()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(s)
            }
            _ => Err(self.error(&t, "expected a coherent ket such as `|1:t1>`")),
        }
    }

    fn ket(&mut self) -> Result<(StateExpr, GrassmannState), ParseError> {
        self.expect(Tok::Pipe, "`|`")?;
        let at = self.peek().clone();
        let scale = self.expr()?;
        let k = self.scalar(&scale, &at)?;
        self.expect(Tok::Colon, "`:` between scale and generator")?;
        let g = self.generator()?;
        self.expect(Tok::Gt, "`>` closing the ket")?;
        let value = coherent_ket(FermionLabel::new(k, g));
        Ok((StateExpr::ket(scale.ast, g), value))
    }

    fn measure(&mut self) -> Result<MeasureList, ParseError> {
        let mut factors = Vec::new();
        loop {
            let t = self.next();
            if t.kind != Tok::Ident("d".into()) {
                return Err(self.error(&t, "expected a measure factor such as `d t1`"));
            }
            let at = self.peek().clone();
            let g = self.generator()?;
            if factors.contains(&g) {
                return Err(self.error(&at, format!("measure lists {g} more than once")));
            }
            factors.push(g);
            if self.peek().kind != Tok::Comma {
                break;
            }
            self.next();
        }
        Ok(MeasureList::new(factors).expect("repeats rejected above"))
    }

    fn target(&mut self) -> Result<Target, ParseError> {
        if let Tok::Ident(name) = self.peek().kind.clone() {
            if self.peek_at(1).kind == Tok::Eof && name != "i" && name != "pi" {
                let t = self.next();
                return NamedState::parse(&name)
                    .map(Target::Named)
                    .ok_or_else(|| self.error(&t, format!("unknown target `{}`", t.text)));
            }
        }
        let mut terms: Vec<KetTerm> = Vec::new();
        let mut negated = false;
        if self.peek().kind == Tok::Minus {
            self.next();
            negated = true;
        }
        loop {
            let coeff = if matches!(self.peek().kind, Tok::BitKet(_)) {
                None
            } else {
                let at = self.peek().clone();
                let e = self.term(Stop::BeforeBitKet)?;
                self.scalar(&e, &at)?;
                if self.peek().kind == Tok::Star {
                    self.next();
                }
                Some(e.ast)
            };
            let t = self.next();
            let Tok::BitKet(bits) = &t.kind else {
                return Err(self.error(&t, "expected a basis ket such as `|01>`"));
            };
            let ket = BasisKet::parse(bits).ok_or_else(|| self.error(&t, "basis ket is too long"))?;
            if let Some(first) = terms.first() {
                if first.ket.len() != ket.len() {
                    return Err(self.error(&t, "basis kets have different lengths"));
                }
            }
            terms.push(KetTerm { negated, coeff, ket });
            negated = match self.peek().kind {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
        }
        Ok(Target::Kets(terms))
    }
}
