//! Textual element format.
//!
//! ```text
//! expr  := ["+" | "-"] term (("+" | "-") term)*
//! term  := unary (["*"] unary)*
//! unary := "-" unary | power
//! power := atom ["^" ["-"] INT]
//! atom  := INT ["/" INT] | "z" | "x1" | "x2" | "y" | "(" expr ")"
//! ```
//!
//! `z` is the field's primitive root. Juxtaposition multiplies. Negative
//! powers are allowed on invertible scalars only.

use super::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[start..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| Error::Parse(format!("integer {t} too large")))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    alg: &'a Algebra<F>,
    toks: Vec<Tok>,
    pos: usize,
}

type El<F> = AlgebraElement<<F as Field>::Elem>;

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<El<F>> {
        let a = self.alg;
        let mut acc = if self.eat('-') {
            a.neg(&self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = a.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = a.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<El<F>> {
        let mut acc = self.unary()?;
        loop {
            // juxtaposition multiplies too
            if self.eat('*') || matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))) {
                acc = self.alg.mul(&acc, &self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<El<F>> {
        if self.eat('-') {
            Ok(self.alg.neg(&self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<El<F>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = self.int()?;
        let a = self.alg;
        if !neg {
            return Ok(a.pow(&base, e as usize));
        }
        let f = a.field();
        let scalar = match base.terms() {
            [(0, c)] => c.clone(),
            _ => return Err(Error::Parse("negative powers need an invertible scalar".into())),
        };
        let inv = f.inv(&scalar).ok_or_else(|| Error::Parse("negative power of zero".into()))?;
        Ok(a.scalar(f.pow(&inv, e)))
    }

    fn atom(&mut self) -> Result<El<F>> {
        let a = self.alg;
        let f = a.field();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let d = self.int()?;
                    let q = f
                        .from_ratio(n, d)
                        .ok_or_else(|| Error::Parse(format!("denominator {d} vanishes in the field")))?;
                    Ok(a.scalar(q))
                } else {
                    Ok(a.scalar(f.from_i64(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "z" => Ok(a.scalar(f.generator())),
                    "x1" => Ok(a.x1()),
                    "x2" => Ok(a.x2()),
                    "y" => Ok(a.y()),
                    _ => Err(Error::Parse(format!("unknown symbol {name:?}"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(super) fn parse<F: Field>(alg: &Algebra<F>, s: &str) -> Result<El<F>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { alg, toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

pub(super) fn render<F: Field>(alg: &Algebra<F>, u: &El<F>) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let f = alg.field();
    u.terms()
        .iter()
        .map(|(i, c)| {
            if *i == 0 {
                f.render(c)
            } else if f.is_one(c) {
                alg.basis_label(*i)
            } else {
                format!("{} * {}", f.render(c), alg.basis_label(*i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use crate::qalgebra::{Algebra, AlgebraMode};
    use crate::scalars::{CyclotomicField, PrimeField};

    #[test]
    fn parse_and_render_round_trip() {
        let a = Algebra::from_exponents(CyclotomicField::new(3).unwrap(), 3, 1, AlgebraMode::Full).unwrap();
        let u = a.parse("z^2 * x1 y^2 x2 - 3/4 x2^2 + (1 + z) y").unwrap();
        let back = a.parse(&a.render(&u)).unwrap();
        assert_eq!(u, back);
        assert_eq!(a.parse("x1 x2 - z x2 x1").unwrap(), a.y());
        assert_eq!(a.render(&a.parse("z^-1").unwrap()), "z^2");
        assert_eq!(a.render(&a.zero()), "0");
        assert!(a.parse("x3").is_err());
        assert!(a.parse("x1 +").is_err());
        assert!(a.parse("(x1").is_err());
        assert!(a.parse("x1^-1").is_err());
    }

    #[test]
    fn prime_field_and_words() {
        let a = Algebra::from_exponents(PrimeField::new(7, 3).unwrap(), 2, 0, AlgebraMode::Full).unwrap();
        let u = a.parse("x1 x2 x1 + 2 x2 x1 x2 x1").unwrap();
        assert_eq!(a.render(&u), "x1 x2 x1 + 5 * x1 x2 x1 x2");
        assert_eq!(a.parse(&a.render(&u)).unwrap(), u);
        assert!(a.parse("1/7").is_err());
    }
}
