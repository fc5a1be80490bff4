//! Expression grammar for polynomials and matrices of polynomials.
//!
//! ```text
//! input   := '[' row (';' row)* ']' | sum
//! row     := sum (',' sum)*
//! sum     := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := factor (('*' unary) | factor)*
//! unary   := '-' unary | factor
//! factor  := atom ('\'' | '^' INT)*
//! atom    := INT | INT '/' INT | 'i' | 'x' INT | 'y' | '(' sum ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use freelocus::freealg::{Alphabet, FreePoly, MatrixPoly};
use freelocus::linalg::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative rational literal.
    Num(BigRational),
    I,
    /// `x_{k+1}`.
    X(u32),
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Adj(Box<Expr>),
    Matrix(Vec<Vec<Expr>>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable {name:?} at {pos}")]
    UnknownVariable { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigRational),
    I,
    X(u32),
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    Apos,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    End,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

fn digits(chars: &[(usize, char)], mut k: usize) -> (String, usize) {
    let mut s = String::new();
    while k < chars.len() && chars[k].1.is_ascii_digit() {
        s.push(chars[k].1);
        k += 1;
    }
    (s, k)
}

/// Tokens with their byte offsets.
fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '\'' => Some(Tok::Apos),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            'i' => Some(Tok::I),
            'y' => Some(Tok::Y),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let (num, next) = digits(&chars, k);
            k = next;
            let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            if k + 1 < chars.len() && chars[k].1 == '/' && chars[k + 1].1.is_ascii_digit() {
                let (den, next) = digits(&chars, k + 1);
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(syntax(chars[k + 1].0, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
                k = next;
            }
            out.push((pos, Tok::Num(value)));
            continue;
        }
        if c == 'x' {
            let (idx, next) = digits(&chars, k + 1);
            let name: String = chars[k..next].iter().map(|p| p.1).collect();
            match idx.parse::<u32>() {
                Ok(j) if j >= 1 => out.push((pos, Tok::X(j - 1))),
                _ => return Err(ParseError::UnknownVariable { pos, name }),
            }
            k = next;
            continue;
        }
        if c.is_alphabetic() {
            let mut end = k;
            while end < chars.len() && chars[end].1.is_alphanumeric() {
                end += 1;
            }
            let name = chars[k..end].iter().map(|p| p.1).collect();
            return Err(ParseError::UnknownVariable { pos, name });
        }
        return Err(syntax(pos, format!("unexpected character {c:?}")));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].1
    }

    fn pos(&self) -> usize {
        self.toks[self.k].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.k].1.clone();
        if t != Tok::End {
            self.k += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn input(&mut self) -> Result<Expr, ParseError> {
        let e = if *self.peek() == Tok::LBrack { self.matrix()? } else { self.sum()? };
        if *self.peek() != Tok::End {
            return Err(syntax(self.pos(), "unexpected trailing input"));
        }
        Ok(e)
    }

    fn matrix(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LBrack, "'['")?;
        let mut rows = vec![vec![self.sum()?]];
        loop {
            match self.bump() {
                Tok::Comma => rows.last_mut().expect("row").push(self.sum()?),
                Tok::Semi => rows.push(vec![self.sum()?]),
                Tok::RBrack => break,
                _ => return Err(syntax(self.toks[self.k - 1].0, "expected ',', ';' or ']'")),
            }
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(syntax(self.pos(), "rows of different lengths"));
        }
        Ok(Expr::Matrix(rows))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
                }
                Tok::Num(_) | Tok::I | Tok::X(_) | Tok::Y | Tok::LParen => {
                    e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Tok::Apos => {
                    self.bump();
                    e = Expr::Adj(Box::new(e));
                }
                Tok::Caret => {
                    self.bump();
                    let pos = self.pos();
                    let Tok::Num(r) = self.bump() else {
                        return Err(syntax(pos, "expected an integer exponent"));
                    };
                    let k = if r.is_integer() { u32::try_from(r.to_integer()).ok() } else { None };
                    e = Expr::Pow(Box::new(e), k.ok_or_else(|| syntax(pos, "exponent must be a small integer"))?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(r) => Ok(Expr::Num(r)),
            Tok::I => Ok(Expr::I),
            Tok::X(k) => Ok(Expr::X(k)),
            Tok::Y => Ok(Expr::Y),
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            _ => Err(syntax(pos, "expected a number, variable or '('")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    Parser { toks: lex(text)?, k: 0 }.input()
}

/// Binding strength: sums, negation, products, postfix, atoms.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Matrix(_) => 0,
        Expr::Neg(_) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) | Expr::Adj(_) => 3,
        Expr::Num(_) | Expr::I | Expr::X(_) | Expr::Y => 4,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
        Expr::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        Expr::I => write!(f, "i"),
        Expr::X(k) => write!(f, "x{}", k + 1),
        Expr::Y => write!(f, "y"),
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, 1)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(f, a, 0)?;
            write!(f, "{}", if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_at(f, b, 1)
        }
        Expr::Mul(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "*")?;
            write_at(f, b, 3)
        }
        Expr::Pow(a, k) => {
            write_at(f, a, 3)?;
            write!(f, "^{k}")
        }
        Expr::Adj(a) => {
            write_at(f, a, 3)?;
            write!(f, "'")
        }
        Expr::Matrix(rows) => {
            write!(f, "[")?;
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                for (j, x) in row.iter().enumerate() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write_at(f, x, 0)?;
                }
            }
            write!(f, "]")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct LowerError(pub String);

impl Expr {
    /// Scalar polynomial; matrices are rejected.
    pub fn to_free(&self) -> Result<FreePoly, LowerError> {
        let empty = Alphabet::analytic(0);
        Ok(match self {
            Expr::Num(r) => FreePoly::constant(Scalar::from_rational(r.clone()), empty),
            Expr::I => FreePoly::constant(Scalar::i(), empty),
            Expr::X(k) => FreePoly::x(*k),
            Expr::Y => FreePoly::y(),
            Expr::Neg(a) => a.to_free()?.scale(&Scalar::from_int(-1)),
            Expr::Add(a, b) => &a.to_free()? + &b.to_free()?,
            Expr::Sub(a, b) => &a.to_free()? - &b.to_free()?,
            Expr::Mul(a, b) => &a.to_free()? * &b.to_free()?,
            Expr::Pow(a, k) => {
                let base = a.to_free()?;
                let mut acc = FreePoly::one(base.alphabet());
                for _ in 0..*k {
                    acc = &acc * &base;
                }
                acc
            }
            Expr::Adj(a) => a.to_free()?.adjoint(),
            Expr::Matrix(_) => return Err(LowerError("a matrix cannot appear inside an expression".into())),
        })
    }

    /// Matrix polynomial; a scalar expression becomes a 1×1 matrix.
    pub fn to_matrix(&self) -> Result<MatrixPoly, LowerError> {
        match self {
            Expr::Matrix(rows) => {
                let grid = rows
                    .iter()
                    .map(|r| r.iter().map(Expr::to_free).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MatrixPoly::from_entries(&grid))
            }
            e => Ok(MatrixPoly::from_free(&e.to_free()?)),
        }
    }
}

/// Variables of `e` that appear, 0-based.
pub fn variables(e: &Expr) -> Vec<u32> {
    fn walk(e: &Expr, out: &mut Vec<u32>) {
        match e {
            Expr::X(k) => out.push(*k),
            Expr::Num(_) | Expr::I | Expr::Y => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Adj(a) => walk(a, out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Expr::Matrix(rows) => rows.iter().flatten().for_each(|x| walk(x, out)),
        }
    }
    let mut out = Vec::new();
    walk(e, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}
