use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(f64),
    Ident(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Pipe,
    Colon,
    Gt,
    Comma,
    Tensor,
    BitKet(String),
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: Tok,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

/// One line's worth of section content, positioned in the source.
#[derive(Clone, Debug)]
pub(crate) struct Fragment {
    pub line: usize,
    pub column: usize,
    pub text: String,
}

pub(crate) fn lex(fragments: &[Fragment], end: (usize, usize)) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for frag in fragments {
        lex_fragment(frag, &mut out)?;
    }
    out.push(Token {
        kind: Tok::Eof,
        text: "end of input".into(),
        line: end.0,
        column: end.1,
    });
    Ok(out)
}

fn lex_fragment(frag: &Fragment, out: &mut Vec<Token>) -> Result<(), ParseError> {
    let chars: Vec<char> = frag.text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = frag.column + i;
        let start = i;
        let kind = match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' | '.' => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse::<f64>().map_err(|_| ParseError {
                    line: frag.line,
                    column,
                    message: "malformed number".into(),
                    token: text.clone(),
                })?;
                Tok::Num(value)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            '(' if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') => {
                i += 3;
                Tok::Tensor
            }
            '|' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j] == '0' || chars[j] == '1') {
                    j += 1;
                }
                if j > i + 1 && chars.get(j) == Some(&'>') {
                    let bits: String = chars[i + 1..j].iter().collect();
                    i = j + 1;
                    Tok::BitKet(bits)
                } else {
                    i += 1;
                    Tok::Pipe
                }
            }
            _ => {
                i += 1;
                match c {
                    '\'' => Tok::Prime,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ':' => Tok::Colon,
                    '>' => Tok::Gt,
                    ',' => Tok::Comma,
                    other => {
                        return Err(ParseError {
                            line: frag.line,
                            column,
                            message: "unexpected character".into(),
                            token: other.to_string(),
                        })
                    }
                }
            }
        };
        out.push(Token {
            kind,
            text: chars[start..i].iter().collect(),
            line: frag.line,
            column,
        });
    }
    Ok(())
}
