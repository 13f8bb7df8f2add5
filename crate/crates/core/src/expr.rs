//! A small expression language over the Chern, dual Chern and Schur
//! generators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | 'c' nat | 'cbar' '(' nat ')'
//!         | 'sigma' '[' nat (',' nat)* ']' | '(' expr ')' | '-' atom
//! rational := nat ('/' nat)?
//! ```
//!
//! Whitespace may separate any two tokens. Unary minus binds tighter than
//! `^`, so `-c1^2` is `(-c1)^2`. Generator indices and partitions are only
//! validated by [`eval`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::error::Error as RingError;
use crate::partitions::Partition;
use crate::rational::{self, Rational};
use crate::ring::{GrassElement, RingContext};

const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(Rational),
    Chern(u32),
    Dual(u32),
    Schur(Vec<u32>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("generator index {index} out of range 1..={k}")]
    IndexOutOfRange { index: u32, k: usize },
    #[error("sigma{0:?} is not a partition")]
    NotAPartition(Vec<u32>),
    #[error("partition {partition:?} lies outside the {k}x{n} box")]
    OutsideBox {
        partition: Vec<u32>,
        k: usize,
        n: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(String),
    C,
    Cbar,
    Sigma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(s) => format!("number {s}"),
            Tok::C => "'c'".into(),
            Tok::Cbar => "'cbar'".into(),
            Tok::Sigma => "'sigma'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Comma => "','".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match b {
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Nat(src[start..i].to_string()), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let tok = match &src[start..i] {
                    "c" => Tok::C,
                    "cbar" => Tok::Cbar,
                    "sigma" => Tok::Sigma,
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            expected: "'c', 'cbar' or 'sigma'".into(),
                        })
                    }
                };
                out.push((tok, start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b',' => Tok::Comma,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            _ => {
                return Err(ParseError {
                    offset: start,
                    expected: "a number, generator, operator or bracket".into(),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: format!("{expected}, found {}", self.peek().describe()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn nat_u32(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Nat(s) => {
                let v = s.parse::<u32>().map_err(|_| ParseError {
                    offset: self.offset(),
                    expected: "natural number below 2^32".into(),
                })?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error("natural number")),
        }
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError {
                offset: self.offset(),
                expected: format!("nesting depth at most {MAX_NESTING}"),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.nat_u32()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Nat(num) => {
                self.bump();
                let num: BigInt = num.parse().expect("digits");
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den = match self.peek().clone() {
                        Tok::Nat(d) => d,
                        _ => return Err(self.error("denominator")),
                    };
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.error("nonzero denominator"));
                    }
                    self.bump();
                    Ok(Expr::Rational(Rational::new(num, den)))
                } else {
                    Ok(Expr::Rational(Rational::from_integer(num)))
                }
            }
            Tok::C => {
                self.bump();
                Ok(Expr::Chern(self.nat_u32()?))
            }
            Tok::Cbar => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let i = self.nat_u32()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Dual(i))
            }
            Tok::Sigma => {
                self.bump();
                self.expect(Tok::LBracket, "'['")?;
                let mut parts = vec![self.nat_u32()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    parts.push(self.nat_u32()?);
                }
                self.expect(Tok::RBracket, "',' or ']'")?;
                Ok(Expr::Schur(parts))
            }
            Tok::LParen => {
                self.bump();
                self.descend()?;
                let inner = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            Tok::Minus => {
                self.bump();
                self.descend()?;
                let inner = self.atom()?;
                self.depth -= 1;
                Ok(Expr::Neg(Box::new(inner)))
            }
            _ => Err(self.error("number, generator, '(' or '-'")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("operator or end of input"));
    }
    Ok(e)
}

/// [`parse`] for raw bytes; invalid UTF-8 is reported at its first byte.
pub fn parse_bytes(src: &[u8]) -> Result<Expr, ParseError> {
    match std::str::from_utf8(src) {
        Ok(s) => parse(s),
        Err(e) => {
            // Report the earlier of a lexical error in the valid prefix and
            // the encoding error itself.
            let prefix = std::str::from_utf8(&src[..e.valid_up_to()]).unwrap();
            lex(prefix)?;
            Err(ParseError {
                offset: e.valid_up_to(),
                expected: "valid UTF-8".into(),
            })
        }
    }
}

impl Expr {
    /// Source text that [`parse`] maps back to this exact tree, provided
    /// the tree is well formed (see [`Expr::is_well_formed`]).
    pub fn to_source(&self) -> String {
        match self {
            Expr::Rational(r) => rational::to_compact_string(r),
            Expr::Chern(i) => format!("c{i}"),
            Expr::Dual(i) => format!("cbar({i})"),
            Expr::Schur(p) => format!(
                "sigma[{}]",
                p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            ),
            Expr::Add(a, b) => format!("{} + {}", a.to_source(), b.to_source()),
            Expr::Sub(a, b) => format!("{} - {}", a.to_source(), b.to_source()),
            Expr::Mul(a, b) => format!("{}*{}", a.to_source(), b.to_source()),
            Expr::Pow(a, e) => format!("{}^{e}", a.to_source()),
            Expr::Neg(a) => format!("-{}", a.to_source()),
            Expr::Paren(a) => format!("({})", a.to_source()),
        }
    }

    fn is_atom(&self) -> bool {
        match self {
            Expr::Rational(r) => *r >= rational::zero(),
            Expr::Chern(_) | Expr::Dual(_) | Expr::Schur(_) | Expr::Paren(_) => true,
            Expr::Neg(a) => a.is_atom(),
            _ => false,
        }
    }

    fn is_factor(&self) -> bool {
        match self {
            Expr::Pow(a, _) => a.is_atom(),
            other => other.is_atom(),
        }
    }

    fn is_term(&self) -> bool {
        match self {
            Expr::Mul(a, b) => a.is_term() && b.is_factor(),
            other => other.is_factor(),
        }
    }

    /// Whether the tree is one the parser can produce: precedence and
    /// associativity are encoded by explicit `Paren` nodes, literals are
    /// nonnegative and schur lists are nonempty.
    pub fn is_well_formed(&self) -> bool {
        let children_ok = match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_well_formed() && b.is_well_formed()
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Paren(a) => a.is_well_formed(),
            Expr::Schur(p) => !p.is_empty(),
            _ => true,
        };
        let shape_ok = match self {
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                (a.is_term() || matches!(**a, Expr::Add(..) | Expr::Sub(..))) && b.is_term()
            }
            Expr::Paren(_) => true,
            other => other.is_term(),
        };
        children_ok && shape_ok
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

pub fn eval(e: &Expr, ctx: RingContext) -> Result<GrassElement, EvalError> {
    Ok(match e {
        Expr::Rational(r) => GrassElement::constant(ctx, r.clone()),
        Expr::Chern(i) => {
            if *i == 0 || *i as usize > ctx.k() {
                return Err(EvalError::IndexOutOfRange {
                    index: *i,
                    k: ctx.k(),
                });
            }
            GrassElement::chern(ctx, *i as usize)?
        }
        Expr::Dual(i) => {
            if *i == 0 {
                return Err(EvalError::IndexOutOfRange {
                    index: 0,
                    k: ctx.k(),
                });
            }
            GrassElement::dual(ctx, *i as usize)
        }
        Expr::Schur(parts) => {
            let lambda = Partition::new(parts.clone())
                .map_err(|_| EvalError::NotAPartition(parts.clone()))?;
            if !lambda.fits_box(ctx.k(), ctx.n()) {
                return Err(EvalError::OutsideBox {
                    partition: parts.clone(),
                    k: ctx.k(),
                    n: ctx.n(),
                });
            }
            GrassElement::schur(ctx, lambda)?
        }
        Expr::Add(a, b) => eval(a, ctx)?.add(&eval(b, ctx)?)?,
        Expr::Sub(a, b) => eval(a, ctx)?.sub(&eval(b, ctx)?)?,
        Expr::Mul(a, b) => eval(a, ctx)?.cup(&eval(b, ctx)?)?,
        Expr::Pow(a, n) => eval(a, ctx)?.pow(*n),
        Expr::Neg(a) => eval(a, ctx)?.neg(),
        Expr::Paren(a) => eval(a, ctx)?,
    })
}

pub fn parse_and_eval(src: &str, ctx: RingContext) -> Result<GrassElement, String> {
    let e = parse(src).map_err(|e| e.to_string())?;
    eval(&e, ctx).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Text: `free: <polynomial>` and `schur: <expansion>` lines.
/// JSON: `{"free":[{"alpha":[..],"coeff":"n/d"}..],"schur":[{"partition":[..],"coeff":"n/d"}..]}`.
/// CSV: header `partition,coeff`, one row per Schur term, the partition
/// written space separated.
pub fn render(x: &GrassElement, format: Format) -> String {
    match format {
        Format::Text => {
            if x.free().is_zero() && x.is_zero() {
                return "0".to_string();
            }
            format!("free: {}\nschur: {}", x.free(), x.reduced().to_source())
        }
        Format::Json => {
            let free: Vec<_> = x
                .free()
                .terms()
                .map(|(a, c)| {
                    serde_json::json!({"alpha": a.entries(), "coeff": rational::to_fraction_string(c)})
                })
                .collect();
            serde_json::json!({"free": free, "schur": x.reduced().to_json()}).to_string()
        }
        Format::Csv => {
            let mut s = String::from("partition,coeff\n");
            for (lambda, c) in x.reduced().terms() {
                let parts: Vec<String> = lambda.parts().iter().map(u32::to_string).collect();
                s.push_str(&format!(
                    "{},{}\n",
                    parts.join(" "),
                    rational::to_fraction_string(c)
                ));
            }
            s
        }
    }
}
