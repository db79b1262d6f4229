//! Recursive-descent parser for the scalar expression grammar.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = primary [ "^" ["-"] integer | "^" "(" ["-"] integer ")" ] ;
//! primary = number | "i" | ident | func "(" expr ")" | "(" expr ")" ;
//! func    = "sin" | "cos" | "exp" | "conj" ;
//! number  = digit { digit } [ "." digit { digit } ] ;
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Cx;
use super::{ExprError, ParamKind, ScalarExpr, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Conj,
}

/// Parse tree, kept so that canonicalization can be checked against a
/// direct evaluation of what the user wrote.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprTree {
    Num(Cx),
    Coord(usize),
    Param(String, ParamKind),
    Add(Box<ExprTree>, Box<ExprTree>),
    Sub(Box<ExprTree>, Box<ExprTree>),
    Mul(Box<ExprTree>, Box<ExprTree>),
    Div(Box<ExprTree>, Box<ExprTree>),
    Neg(Box<ExprTree>),
    Pow(Box<ExprTree>, i32),
    Call(Func, Box<ExprTree>),
}

impl ExprTree {
    /// Canonical form of the tree.
    pub fn to_scalar(&self) -> Result<ScalarExpr, ExprError> {
        Ok(match self {
            ExprTree::Num(c) => ScalarExpr::constant(c.clone()),
            ExprTree::Coord(mu) => ScalarExpr::coord(*mu),
            ExprTree::Param(n, k) => ScalarExpr::param(n, *k),
            ExprTree::Add(a, b) => &a.to_scalar()? + &b.to_scalar()?,
            ExprTree::Sub(a, b) => &a.to_scalar()? - &b.to_scalar()?,
            ExprTree::Mul(a, b) => &a.to_scalar()? * &b.to_scalar()?,
            ExprTree::Div(a, b) => &a.to_scalar()? * &b.to_scalar()?.recip()?,
            ExprTree::Neg(a) => -&a.to_scalar()?,
            ExprTree::Pow(a, n) => a.to_scalar()?.pow(*n)?,
            ExprTree::Call(f, a) => {
                let u = a.to_scalar()?;
                match f {
                    Func::Sin => ScalarExpr::sin(u),
                    Func::Cos => ScalarExpr::cos(u),
                    Func::Exp => ScalarExpr::exp(u),
                    Func::Conj => u.conj(),
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ExprError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ExprError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let int_part = &self.src[start..self.pos];
            let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
            if self.pos < bytes.len() && bytes[self.pos] == b'.' {
                self.pos += 1;
                let frac_start = self.pos;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if frac_start == self.pos {
                    return Err(ExprError::Syntax {
                        pos: self.pos,
                        message: "expected digits after decimal point".into(),
                    });
                }
                let digits = &self.src[frac_start..self.pos];
                let num = digits.parse::<BigInt>().unwrap();
                let den = num_traits::pow(BigInt::from(10), digits.len());
                value += BigRational::new(num, den);
            }
            return Ok((Tok::Num(value), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if "+-*/^()".contains(c as char) {
            self.pos += 1;
            return Ok((Tok::Op(c as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap();
        Err(ExprError::Syntax { pos: start, message: format!("unexpected character `{ch}`") })
    }
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    symbols: &'s SymbolTable,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ExprError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{op}`")))
        }
    }

    fn error(&self, message: String) -> ExprError {
        ExprError::Syntax { pos: self.pos(), message }
    }

    fn expr(&mut self) -> Result<ExprTree, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprTree::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprTree::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprTree, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = ExprTree::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = ExprTree::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ExprTree, ExprError> {
        if self.eat('-') {
            return Ok(ExprTree::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let neg = self.eat('-');
        let at = self.pos();
        match self.bump() {
            Tok::Num(n) if n.is_integer() => {
                let v: i32 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| ExprError::Syntax { pos: at, message: "exponent too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(ExprError::Syntax { pos: at, message: "expected integer exponent".into() }),
        }
    }

    fn power(&mut self) -> Result<ExprTree, ExprError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let n = if self.eat('(') {
            let n = self.exponent()?;
            self.expect(')')?;
            n
        } else {
            self.exponent()?
        };
        Ok(ExprTree::Pow(Box::new(base), n))
    }

    fn primary(&mut self) -> Result<ExprTree, ExprError> {
        let at = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(ExprTree::Num(Cx::new(n, BigRational::zero()))),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "exp" => Some(Func::Exp),
                    "conj" => Some(Func::Conj),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(ExprTree::Call(f, Box::new(arg)));
                }
                if name == "i" {
                    return Ok(ExprTree::Num(Cx::new(BigRational::zero(), BigRational::one())));
                }
                if let Some(mu) = self.symbols.chart.index_of(&name) {
                    return Ok(ExprTree::Coord(mu));
                }
                match self.symbols.param_kind(&name) {
                    Some(kind) => Ok(ExprTree::Param(name, kind)),
                    None => Err(ExprError::UnknownSymbol { name, pos: at }),
                }
            }
            Tok::End => Err(ExprError::Syntax { pos: at, message: "unexpected end of input".into() }),
            Tok::Op(c) => Err(ExprError::Syntax { pos: at, message: format!("unexpected `{c}`") }),
        }
    }
}

/// Parses `text` into a tree without canonicalizing.
pub fn parse_tree(text: &str, symbols: &SymbolTable) -> Result<ExprTree, ExprError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, idx: 0, symbols };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected trailing input".into()));
    }
    Ok(e)
}

/// Parses `text` into a canonical expression.
pub fn parse(text: &str, symbols: &SymbolTable) -> Result<ScalarExpr, ExprError> {
    parse_tree(text, symbols)?.to_scalar()
}
