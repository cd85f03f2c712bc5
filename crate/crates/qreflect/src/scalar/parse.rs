//! Reader for the scalar text format.
//!
//! Accepts ordinary arithmetic over `q z x y w i` and integer literals, with
//! `^` taking an integer exponent (or `q^(k/2)`), plus Pochhammer symbols
//! `(arg; q^g)_inf` and `(arg; q^g)_m`. Every string produced by `Display`
//! for [`ExactScalar`] reads back to an equal value.

use num_bigint::BigInt;

use super::exact::{qpoch_finite, ExactScalar};
use super::gauss::{GInt, GaussianRational};
use super::poly::Poly;
use super::{ScalarError, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Imag(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            let imag = i < b.len() && b[i] == b'i' && !(i + 1 < b.len() && b[i + 1].is_ascii_alphanumeric());
            if imag {
                i += 1;
                out.push((start, Tok::Imag(n)));
            } else {
                out.push((start, Tok::Int(n)));
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && b[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^();_".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ScalarError::Parse { pos: i, msg: format!("unexpected character {:?}", c) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

type PResult<T> = Result<T, ScalarError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> PResult<T> {
        Err(ScalarError::Parse { pos: self.offset(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c))
        }
    }

    fn expr(&mut self) -> PResult<ExactScalar> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.try_add(&t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.try_sub(&t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<ExactScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = acc.mul(&f);
            } else if self.eat('/') {
                let f = self.unary()?;
                acc = acc.try_div(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<ExactScalar> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    /// Exponent as a fraction `(num, den)` with `den ∈ {1, 2}`.
    fn exponent(&mut self) -> PResult<(i64, i64)> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = self.int()?;
        let d = if paren && self.eat('/') { self.int()? } else { 1 };
        if paren {
            self.expect(')')?;
        }
        if d != 1 && d != 2 {
            return self.err("only half-integer exponents are supported");
        }
        Ok((if neg { -n } else { n }, d))
    }

    fn int(&mut self) -> PResult<i64> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(n).or_else(|_| self.err("exponent out of range"))
            }
            _ => self.err("expected integer"),
        }
    }

    fn power(&mut self) -> PResult<ExactScalar> {
        let is_q = self.peek() == Some(&Tok::Ident("q".into()));
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (n, d) = self.exponent()?;
        if d == 2 {
            if !is_q {
                return self.err("half-integer exponent on a base other than q");
            }
            return Ok(ExactScalar::q_half(n as i32));
        }
        if is_q {
            return Ok(ExactScalar::q(n as i32));
        }
        base.pow(n as i32)
    }

    fn primary(&mut self) -> PResult<ExactScalar> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ExactScalar::from_poly(Poly::constant(GInt::real(n))))
            }
            Some(Tok::Imag(n)) => {
                self.pos += 1;
                Ok(ExactScalar::from_poly(Poly::constant(GInt::new(BigInt::from(0), n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(ExactScalar::from_gaussian(&GaussianRational::i()));
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(ExactScalar::var(v)),
                    None => {
                        self.pos -= 1;
                        self.err(&format!("unknown identifier {}", name))
                    }
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.eat(';') {
                    return self.pochhammer(inner);
                }
                self.expect(')')?;
                Ok(inner)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }

    fn pochhammer(&mut self, arg: ExactScalar) -> PResult<ExactScalar> {
        let Some(arg) = arg.to_monomial() else {
            return self.err("Pochhammer argument must be a monomial");
        };
        if self.peek() != Some(&Tok::Ident("q".into())) {
            return self.err("expected q as the Pochhammer base");
        }
        self.pos += 1;
        let step = if self.eat('^') {
            let (n, d) = self.exponent()?;
            if d != 1 || n <= 0 {
                return self.err("Pochhammer base must be a positive integer power of q");
            }
            n as u32
        } else {
            1
        };
        self.expect(')')?;
        self.expect('_')?;
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if s == "inf" => {
                self.pos += 1;
                Ok(ExactScalar::poch_inf(arg, step, 1)?)
            }
            Some(Tok::Int(m)) => {
                self.pos += 1;
                let m = u32::try_from(m).or_else(|_| self.err("length out of range"))?;
                Ok(qpoch_finite(&arg, step, m))
            }
            _ => self.err("expected 'inf' or a length after '_'"),
        }
    }
}

/// Parses the scalar text format.
pub fn parse_scalar(s: &str) -> Result<ExactScalar, ScalarError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}
