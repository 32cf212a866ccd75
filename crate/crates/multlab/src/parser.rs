//! Text syntax for polynomials in config files.
//!
//! Variables: `z`, `X0'`, `X1'`, `X0`...`Xn`; integer and rational literals;
//! `+ - * / ^` with parentheses (division only by nonzero constants). Parse
//! errors report line and column.
//!
//! The parser builds a polynomial over the combined variable layout
//! [z, X0', X1', X0, ..., Xn] and conversion helpers project into the
//! `BiPoly` / `AffinePoly` rings, rejecting out-of-ring variables.

use crate::bipoly::{AffinePoly, BiPoly};
use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Field};
use crate::mpoly::MPoly;
use num::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    /// Variable index in the combined layout [z, X0', X1', X0..Xn].
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    n: usize,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, n: usize) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
            n,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let (line, col) = (self.line, self.col);
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'+' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Plus, line, col });
                }
                b'-' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Minus, line, col });
                }
                b'*' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Star, line, col });
                }
                b'/' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Slash, line, col });
                }
                b'^' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Caret, line, col });
                }
                b'(' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::LParen, line, col });
                }
                b')' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::RParen, line, col });
                }
                b'0'..=b'9' => {
                    let mut digits = String::new();
                    while let Some(d @ b'0'..=b'9') = self.peek() {
                        digits.push(d as char);
                        self.bump();
                    }
                    let v: BigInt = digits.parse().expect("digits parse");
                    out.push(Spanned { tok: Tok::Int(v), line, col });
                }
                b'z' => {
                    self.bump();
                    out.push(Spanned { tok: Tok::Var(0), line, col });
                }
                b'X' => {
                    self.bump();
                    let mut digits = String::new();
                    while let Some(d @ b'0'..=b'9') = self.peek() {
                        digits.push(d as char);
                        self.bump();
                    }
                    if digits.is_empty() {
                        return Err(self.err("expected variable index after 'X'"));
                    }
                    let idx: usize = digits
                        .parse()
                        .map_err(|_| self.err("variable index too large"))?;
                    let primed = self.peek() == Some(b'\'');
                    if primed {
                        self.bump();
                    }
                    let var = if primed {
                        if idx > 1 {
                            return Err(self.err(format!(
                                "unknown variable X{idx}': only X0' and X1' exist"
                            )));
                        }
                        1 + idx
                    } else {
                        if idx > self.n {
                            return Err(self.err(format!(
                                "variable X{idx} out of range (n = {})",
                                self.n
                            )));
                        }
                        3 + idx
                    };
                    out.push(Spanned { tok: Tok::Var(var), line, col });
                }
                other => {
                    return Err(self.err(format!(
                        "unexpected character '{}'",
                        other as char
                    )));
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.factor()?;
                    // Division only by nonzero constants.
                    let c = match d.terms.iter().next() {
                        Some((m, c)) if d.terms.len() == 1 && m.iter().all(|&e| e == 0) => {
                            c.clone()
                        }
                        _ => {
                            return Err(
                                self.err("division is only allowed by nonzero constants")
                            );
                        }
                    };
                    acc = acc.scale(&c.inv().map_err(|_| self.err("division by zero"))?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(MPoly::constant(
                self.nvars,
                Coeff::from_bigint(Field::Q, &v),
            )),
            Some(Tok::Var(i)) => Ok(MPoly::var(self.nvars, Field::Q, i)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse over the combined layout [z, X0', X1', X0..Xn] (n+4 variables),
/// coefficients in Q.
fn parse_general(text: &str, n: usize) -> Result<MPoly> {
    let lexer = Lexer::new(text, n);
    let toks = lexer.tokenize()?;
    let (end_line, end_col) = {
        let mut l = Lexer::new(text, n);
        while l.bump().is_some() {}
        (l.line, l.col)
    };
    let mut p = Parser {
        toks,
        pos: 0,
        nvars: n + 4,
        end_line,
        end_col,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(poly)
}

/// Parse a polynomial in the bigraded ring k[X0',X1'][X0..Xn]; `z` is rejected.
pub fn parse_bipoly(text: &str, n: usize, field: Field) -> Result<BiPoly> {
    let gp = parse_general(text, n)?;
    let mut out = MPoly::zero(n + 3, Field::Q);
    for (m, c) in &gp.terms {
        if m[0] != 0 {
            return Err(Error::WrongRing(format!(
                "'z' is not a variable of the bigraded ring (in `{}`)",
                text.trim()
            )));
        }
        out.add_term(m[1..].to_vec(), c);
    }
    Ok(BiPoly::from_mpoly(n, out.map_to_field(field)?))
}

/// Parse an affine polynomial in k[z][X1..Xn]; `X0'`, `X1'`, `X0` are rejected.
pub fn parse_affine(text: &str, n: usize, field: Field) -> Result<AffinePoly> {
    let gp = parse_general(text, n)?;
    let mut out = MPoly::zero(n + 1, Field::Q);
    for (m, c) in &gp.terms {
        if m[1] != 0 || m[2] != 0 {
            return Err(Error::WrongRing(format!(
                "X0'/X1' are not variables of the affine ring (in `{}`)",
                text.trim()
            )));
        }
        let mut mono = vec![0u32; n + 1];
        mono[0] = m[0];
        mono[1..].copy_from_slice(&m[4..]);
        out.add_term(mono, c);
    }
    Ok(AffinePoly::from_mpoly(n, out.map_to_field(field)?))
}

/// Parse a form Q in k[z][X0..Xn], homogeneous in the X-block, and represent
/// it as a `BiPoly` by homogenizing the z-part into the X'-block:
/// sum z^j m_j(X) -> sum X0'^{h-j} X1'^j m_j(X) with h = deg_z Q.
/// X'-variables may also be used directly, in which case `z` must not appear.
pub fn parse_zform(text: &str, n: usize, field: Field) -> Result<BiPoly> {
    let gp = parse_general(text, n)?;
    let uses_z = gp.terms.keys().any(|m| m[0] != 0);
    let uses_xp = gp.terms.keys().any(|m| m[1] != 0 || m[2] != 0);
    if uses_z && uses_xp {
        return Err(Error::WrongRing(format!(
            "cannot mix 'z' with X0'/X1' in `{}`",
            text.trim()
        )));
    }
    let mut out = MPoly::zero(n + 3, Field::Q);
    if uses_z || !uses_xp {
        let h = gp.terms.keys().map(|m| m[0]).max().unwrap_or(0);
        for (m, c) in &gp.terms {
            let mut mono = vec![0u32; n + 3];
            mono[0] = h - m[0];
            mono[1] = m[0];
            mono[2..].copy_from_slice(&m[3..]);
            out.add_term(mono, c);
        }
    } else {
        for (m, c) in &gp.terms {
            out.add_term(m[1..].to_vec(), c);
        }
    }
    let bp = BiPoly::from_mpoly(n, out.map_to_field(field)?);
    if !bp.is_bihomogeneous() {
        return Err(Error::NotBiHomogeneous(format!(
            "`{}` (after z-homogenization)",
            text.trim()
        )));
    }
    Ok(bp)
}
