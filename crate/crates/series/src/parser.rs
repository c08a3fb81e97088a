//! Parser for the generating-function language.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := integer | 'q' | 'i' | '(' expr ')' | 'avg' '(' var 'in' int '..' int ')' term
//! exponent := '{' lin '}' | '-'? (integer | var)
//! lin      := ('-'|'+')? [integer] var? (('+'|'-') [integer] var?)*
//! ```
//!
//! `q^0` is rejected, as is any variable not bound by an enclosing `avg`.

use crate::expr::{GenExpr, Lin};
use crate::SeriesError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    DotDot,
    End,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, SeriesError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[start..i]
                .parse()
                .map_err(|_| err(start, "integer too large"))?;
            out.push((Tok::Num(n), start));
            continue;
        } else if c.is_ascii_alphabetic() {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            // `i` and `q` immediately followed by more letters are still
            // identifiers; juxtaposed atoms need a space.
            out.push((Tok::Ident(s[start..i].to_string()), start));
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '.' if b.get(i + 1) == Some(&b'.') => {
                    i += 1;
                    Tok::DotDot
                }
                _ => return Err(err(start, &format!("unexpected character `{}`", c))),
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, s.len()));
    Ok(out)
}

fn err(pos: usize, msg: &str) -> SeriesError {
    SeriesError::Parse {
        pos,
        msg: msg.to_string(),
    }
}

const RESERVED: [&str; 4] = ["q", "i", "avg", "in"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    scope: Vec<String>,
}

pub fn parse_genexpr(text: &str) -> Result<GenExpr, SeriesError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        scope: vec![],
    };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SeriesError> {
        if self.peek() == &t {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), &format!("expected {}", what)))
        }
    }

    fn expr(&mut self) -> Result<GenExpr, SeriesError> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = GenExpr::add(e, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    e = GenExpr::sub(e, self.term()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Num(_) | Tok::LParen => true,
            Tok::Ident(s) => s != "in",
            _ => false,
        }
    }

    fn term(&mut self) -> Result<GenExpr, SeriesError> {
        let mut e = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    e = GenExpr::mul(e, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    e = GenExpr::div(e, self.unary()?);
                }
                _ if self.starts_atom() => e = GenExpr::mul(e, self.unary()?),
                _ => return Ok(e),
            }
        }
    }

    fn unary(&mut self) -> Result<GenExpr, SeriesError> {
        if self.peek() == &Tok::Minus {
            self.bump();
            return Ok(GenExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<GenExpr, SeriesError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos();
        let e = self.exponent()?;
        if base == GenExpr::Q && e.as_constant() == Some(0) {
            return Err(err(
                exp_pos,
                "q^0 is not allowed; factor exponents must be at least 1",
            ));
        }
        Ok(GenExpr::pow(base, e))
    }

    fn atom(&mut self) -> Result<GenExpr, SeriesError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(GenExpr::Int(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(s) if s == "q" => Ok(GenExpr::Q),
            Tok::Ident(s) if s == "i" => Ok(GenExpr::I),
            Tok::Ident(s) if s == "avg" => self.avg(),
            Tok::Ident(s) => Err(err(pos, &format!("variable `{}` outside an exponent", s))),
            _ => Err(err(pos, "expected an integer, q, i, `(` or avg")),
        }
    }

    fn avg(&mut self) -> Result<GenExpr, SeriesError> {
        self.expect(Tok::LParen, "`(` after avg")?;
        let pos = self.pos();
        let var = match self.bump() {
            Tok::Ident(v) if !RESERVED.contains(&v.as_str()) => v,
            _ => return Err(err(pos, "expected a variable name")),
        };
        match self.bump() {
            Tok::Ident(s) if s == "in" => {}
            _ => return Err(err(pos, "expected `in`")),
        }
        let lo = self.signed_int()?;
        self.expect(Tok::DotDot, "`..`")?;
        let hi_pos = self.pos();
        let hi = self.signed_int()?;
        if hi < lo {
            return Err(err(hi_pos, "empty range"));
        }
        self.expect(Tok::RParen, "`)`")?;
        self.scope.push(var.clone());
        let body = self.term();
        self.scope.pop();
        Ok(GenExpr::Avg {
            var,
            lo,
            hi,
            body: Box::new(body?),
        })
    }

    fn signed_int(&mut self) -> Result<i64, SeriesError> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(if neg { -(n as i64) } else { n as i64 }),
            _ => Err(err(pos, "expected an integer")),
        }
    }

    fn variable(&mut self, pos: usize, v: String) -> Result<String, SeriesError> {
        if RESERVED.contains(&v.as_str()) {
            return Err(err(pos, &format!("`{}` cannot be used as a variable", v)));
        }
        if !self.scope.contains(&v) {
            return Err(err(pos, &format!("unbound variable `{}`", v)));
        }
        Ok(v)
    }

    fn exponent(&mut self) -> Result<Lin, SeriesError> {
        if self.peek() == &Tok::LBrace {
            self.bump();
            let l = self.lin()?;
            self.expect(Tok::RBrace, "`}`")?;
            return Ok(l);
        }
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let s = if neg { -1 } else { 1 };
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Lin::constant(s * n as i64)),
            Tok::Ident(v) => Ok(Lin::constant(0).plus_var(&self.variable(pos, v)?, s)),
            _ => Err(err(pos, "expected an exponent")),
        }
    }

    fn lin(&mut self) -> Result<Lin, SeriesError> {
        let mut out = Lin::constant(0);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Tok::Plus => {
                    self.bump();
                    1
                }
                Tok::Minus => {
                    self.bump();
                    -1
                }
                _ if first => 1,
                _ => return Ok(out),
            };
            first = false;
            let pos = self.pos();
            let coef = if let Tok::Num(n) = *self.peek() {
                self.bump();
                Some(n as i64)
            } else {
                None
            };
            if let Tok::Ident(v) = self.peek().clone() {
                let p = self.pos();
                self.bump();
                let v = self.variable(p, v)?;
                out = out.plus_var(&v, sign * coef.unwrap_or(1));
            } else if let Some(c) = coef {
                out.constant += sign * c;
            } else {
                return Err(err(pos, "expected an integer or variable"));
            }
        }
    }
}
