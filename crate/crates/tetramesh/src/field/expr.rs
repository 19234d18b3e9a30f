//! A small arithmetic expression language for user-supplied implicit surfaces.
//!
//! Grammar (standard precedence, `^` > unary `-` > `*` `/` > `+` `-`,
//! binary operators left-associative):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := number | 'x' | 'y' | 'z' | 'sqrt' '(' expr ')'
//!          | 'sin' '(' expr ')' | 'cos' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Exponents are integer literals; chained `^` requires parentheses.

use crate::error::{Error, Result};
use crate::geom::Vec3;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    X,
    Y,
    Z,
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

impl Expr {
    pub fn eval(&self, p: Vec3) -> Result<f64> {
        let err = |message: &str| Error::FieldEval {
            x: p.x,
            y: p.y,
            z: p.z,
            message: message.to_string(),
        };
        Ok(match self {
            Expr::X => p.x,
            Expr::Y => p.y,
            Expr::Z => p.z,
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(p)? + b.eval(p)?,
            Expr::Sub(a, b) => a.eval(p)? - b.eval(p)?,
            Expr::Mul(a, b) => a.eval(p)? * b.eval(p)?,
            Expr::Div(a, b) => {
                let d = b.eval(p)?;
                if d == 0.0 {
                    return Err(err("division by zero"));
                }
                a.eval(p)? / d
            }
            Expr::Neg(a) => -a.eval(p)?,
            Expr::Pow(a, n) => a.eval(p)?.powi(*n),
            Expr::Sqrt(a) => {
                let v = a.eval(p)?;
                if v < 0.0 {
                    return Err(err("square root of negative value"));
                }
                v.sqrt()
            }
            Expr::Sin(a) => a.eval(p)?.sin(),
            Expr::Cos(a) => a.eval(p)?.cos(),
        })
    }

    /// Precedence level of this node, for minimal parenthesization.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    pub fn print(&self) -> String {
        let mut s = String::new();
        self.print_into(&mut s);
        s
    }

    fn print_into(&self, out: &mut String) {
        match self {
            Expr::X => out.push('x'),
            Expr::Y => out.push('y'),
            Expr::Z => out.push('z'),
            Expr::Const(c) => {
                // f64 Display is the shortest representation that round-trips.
                out.push_str(&format!("{c}"));
            }
            Expr::Add(a, b) => self.print_binary(out, a, b, '+'),
            Expr::Sub(a, b) => self.print_binary(out, a, b, '-'),
            Expr::Mul(a, b) => self.print_binary(out, a, b, '*'),
            Expr::Div(a, b) => self.print_binary(out, a, b, '/'),
            Expr::Neg(a) => {
                out.push('-');
                self.print_child(out, a, false);
            }
            Expr::Pow(a, n) => {
                // A Pow base that is itself a Pow must be parenthesized, since
                // chained '^' is a syntax error.
                self.print_child(out, a, true);
                out.push('^');
                if *n < 0 {
                    out.push_str(&format!("({n})"));
                } else {
                    out.push_str(&format!("{n}"));
                }
            }
            Expr::Sqrt(a) => Self::print_call(out, "sqrt", a),
            Expr::Sin(a) => Self::print_call(out, "sin", a),
            Expr::Cos(a) => Self::print_call(out, "cos", a),
        }
    }

    fn print_binary(&self, out: &mut String, a: &Expr, b: &Expr, op: char) {
        self.print_child(out, a, false);
        out.push(op);
        // Left associativity: the right child needs parens at equal precedence.
        self.print_child(out, b, true);
    }

    fn print_child(&self, out: &mut String, child: &Expr, right: bool) {
        let needs_parens = if right {
            child.prec() <= self.prec()
        } else {
            child.prec() < self.prec()
        };
        // A negative literal under a tighter operator must be parenthesized,
        // otherwise "-2" reparses as unary minus with the wrong binding.
        let neg_literal = matches!(child, Expr::Const(c) if *c < 0.0) && self.prec() >= 2;
        if needs_parens || neg_literal {
            out.push('(');
            child.print_into(out);
            out.push(')');
        } else {
            child.print_into(out);
        }
    }

    fn print_call(out: &mut String, name: &str, a: &Expr) {
        out.push_str(name);
        out.push('(');
        a.print_into(out);
        out.push(')');
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos >= p.src.len() {
        return Err(p.err("empty expression"));
    }
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.parse_unary()?)))
        } else {
            self.parse_power()
        }
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp = self.parse_exponent()?;
        if self.peek() == Some(b'^') {
            return Err(self.err("chained '^' needs parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn parse_exponent(&mut self) -> Result<i32> {
        self.skip_ws();
        let parenthesized = self.eat(b'(');
        self.skip_ws();
        let negative = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let mag: i32 = digits
            .parse()
            .map_err(|_| Error::Parse { offset: start, message: "exponent out of range".into() })?;
        if parenthesized && !self.eat(b')') {
            return Err(self.err("expected ')' after exponent"));
        }
        Ok(if negative { -mag } else { mag })
    }

    fn parse_primary(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() => self.parse_ident(),
            Some(_) => Err(self.err("expected number, variable, function, or '('")),
        }
    }

    fn parse_number(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // Scientific notation: 1.5e-3
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                self.pos = mark; // not an exponent, e.g. "2e" would be "2" then ident
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("invalid number literal '{text}'"),
        })?;
        Ok(Expr::Const(value))
    }

    fn parse_ident(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match name {
            "x" => Ok(Expr::X),
            "y" => Ok(Expr::Y),
            "z" => Ok(Expr::Z),
            "sqrt" | "sin" | "cos" => {
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after function name"));
                }
                let arg = Box::new(self.parse_expr()?);
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(match name {
                    "sqrt" => Expr::Sqrt(arg),
                    "sin" => Expr::Sin(arg),
                    _ => Expr::Cos(arg),
                })
            }
            _ => Err(Error::Parse {
                offset: start,
                message: format!("unknown identifier '{name}'"),
            }),
        }
    }
}
