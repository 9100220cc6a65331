//! A small expression language for Young functions and weights.
//!
//! ```text
//! expr    := 'if' var '>=' signed 'then' expr 'else' expr | sum
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | var | func '(' expr ')' | '(' expr ')'
//! var     := 'x' | 'i'
//! func    := 'abs' | 'ln' | 'exp'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2` is
//! `-(x^2)` and `2^-1` is `2^(-1)`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Abs,
    Ln,
    Exp,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `if x >= threshold then yes else no`.
    If {
        threshold: f64,
        yes: Box<Expr>,
        no: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    Syntax {
        position: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    UnknownIdentifier {
        position: usize,
        name: String,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                position,
                found,
                expected,
            } => write!(
                f,
                "syntax error at position {position}: found {found}, expected one of: {}",
                expected.join(", ")
            ),
            ParseError::UnknownIdentifier { position, name } => {
                write!(f, "unknown identifier `{name}` at position {position}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    DivisionByZero,
    LnDomain(f64),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DivisionByZero => write!(f, "division by zero"),
            EvalError::LnDomain(v) => write!(f, "ln of nonpositive value {v}"),
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Ge,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '>' {
            if chars.get(i + 1) == Some(&'=') {
                out.push((start, Tok::Ge));
                i += 2;
            } else {
                return Err(ParseError::Syntax {
                    position: i + 1,
                    found: describe_char(chars.get(i + 1)),
                    expected: vec!["`=`"],
                });
            }
        } else if c.is_ascii_digit() || c == '.' {
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
            let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                position: start,
                found: format!("`{text}`"),
                expected: vec!["number"],
            })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ParseError::Syntax {
                position: start,
                found: describe_char(Some(&c)),
                expected: vec!["number", "`x`", "function", "`(`", "`-`"],
            });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

fn describe_char(c: Option<&char>) -> String {
    c.map_or("end of input".into(), |c| format!("`{c}`"))
}

const ATOM_START: &[&str] = &["number", "`x`", "`i`", "`abs`", "`ln`", "`exp`", "`(`", "`-`", "`if`"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos(),
            found: self.peek().describe(),
            expected: expected.to_vec(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[name])
        }
    }

    fn keyword(&mut self, word: &'static str, name: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.unexpected(&[name]),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Tok::Ident(s) if s == "if") {
            self.bump();
            match self.peek() {
                Tok::Ident(s) if s == "x" || s == "i" => {
                    self.bump();
                }
                _ => return self.unexpected(&["`x`", "`i`"]),
            }
            self.expect(Tok::Ge, "`>=`")?;
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            let threshold = match self.peek() {
                Tok::Num(v) => {
                    let v = *v;
                    self.bump();
                    if negative {
                        -v
                    } else {
                        v
                    }
                }
                _ => return self.unexpected(&["number"]),
            };
            self.keyword("then", "`then`")?;
            let yes = self.expr()?;
            self.keyword("else", "`else`")?;
            let no = self.expr()?;
            return Ok(Expr::If {
                threshold,
                yes: Box::new(yes),
                no: Box::new(no),
            });
        }
        self.sum()
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.pos();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "x" | "i" => {
                        self.bump();
                        return Ok(Expr::Var);
                    }
                    "abs" => Func::Abs,
                    "ln" => Func::Ln,
                    "exp" => Func::Exp,
                    "if" => return self.unexpected(&["`(` before a nested `if`"]),
                    _ => return Err(ParseError::UnknownIdentifier { position, name }),
                };
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => self.unexpected(ATOM_START),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]);
    }
    Ok(e)
}

impl Expr {
    /// Evaluates at `x`. `ln(1 + u)` and `ln(u + 1)` go through `ln_1p` so
    /// that `(1+|x|) ln(1+|x|) − |x|` keeps its precision near 0.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Call(Func::Abs, e) => e.eval(x)?.abs(),
            Expr::Call(Func::Exp, e) => e.eval(x)?.exp(),
            Expr::Call(Func::Ln, e) => {
                if let Some(u) = one_plus(e) {
                    let u = u.eval(x)?;
                    if u <= -1.0 {
                        return Err(EvalError::LnDomain(1.0 + u));
                    }
                    u.ln_1p()
                } else {
                    let v = e.eval(x)?;
                    if v <= 0.0 {
                        return Err(EvalError::LnDomain(v));
                    }
                    v.ln()
                }
            }
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        a / b
                    }
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::If { threshold, yes, no } => {
                if x >= *threshold {
                    yes.eval(x)?
                } else {
                    no.eval(x)?
                }
            }
        })
    }
}

/// `u` when `e` is `1 + u` or `u + 1`.
fn one_plus(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Bin(BinOp::Add, a, b) if **a == Expr::Num(1.0) => Some(b),
        Expr::Bin(BinOp::Add, a, b) if **b == Expr::Num(1.0) => Some(a),
        _ => None,
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::If { .. } => 0,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Bin(BinOp::Pow, ..) => 4,
        Expr::Num(_) | Expr::Var | Expr::Call(..) => 5,
    }
}

/// Prints `e`, parenthesized if its precedence is below `min`.
fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_at(f, e, 0)?;
        return write!(f, ")");
    }
    match e {
        Expr::Num(v) => write!(f, "{v:?}"),
        Expr::Var => write!(f, "x"),
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, 3)
        }
        Expr::Call(func, a) => {
            let name = match func {
                Func::Abs => "abs",
                Func::Ln => "ln",
                Func::Exp => "exp",
            };
            write!(f, "{name}(")?;
            write_at(f, a, 0)?;
            write!(f, ")")
        }
        Expr::Bin(BinOp::Pow, a, b) => {
            write_at(f, a, 5)?;
            write!(f, "^")?;
            write_at(f, b, 3)
        }
        Expr::Bin(op, a, b) => {
            let (sym, p) = match op {
                BinOp::Add => ("+", 1),
                BinOp::Sub => ("-", 1),
                BinOp::Mul => ("*", 2),
                BinOp::Div => ("/", 2),
                BinOp::Pow => unreachable!(),
            };
            write_at(f, a, p)?;
            write!(f, " {sym} ")?;
            write_at(f, b, p + 1)
        }
        Expr::If { threshold, yes, no } => {
            write!(f, "if x >= {threshold:?} then ")?;
            write_at(f, yes, 0)?;
            write!(f, " else ")?;
            write_at(f, no, 0)
        }
    }
}

/// Prints source text that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}
