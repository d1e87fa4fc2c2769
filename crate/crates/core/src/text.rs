//! Canonical text codec for symbols and total-symbol sums.
//!
//! The rendered form is round-trip stable: `parse(render(s)) == s`, and
//! rendering a parse canonicalizes the input. Examples:
//! `x1*xi1 + xi1`, `2*x1^2*xi1^-1 + i*xi1`, `(1+i)*x2^-3`, `0`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symbol::Monomial;
use num::{BigInt, BigRational, One, Zero};

/// Renders a sequence of monomials (already in display order) as a sum.
pub fn render_terms<'a>(terms: impl IntoIterator<Item = &'a Monomial>) -> String {
    let mut out = String::new();
    for t in terms {
        let neg = t.coeff.is_render_negative();
        let mag = if neg { -&t.coeff } else { t.coeff.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&render_magnitude_term(&mag, t));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_magnitude_term(mag: &Scalar, t: &Monomial) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (v, &e) in t.x_exps.iter().enumerate() {
        if e != 0 {
            factors.push(render_var("x", v + 1, e));
        }
    }
    for (v, &e) in t.xi_exps.iter().enumerate() {
        if e != 0 {
            factors.push(render_var("xi", v + 1, e));
        }
    }
    if factors.is_empty() {
        return mag.to_string();
    }
    if !mag.is_one() {
        factors.insert(0, mag.to_string());
    }
    factors.join("*")
}

fn render_var(name: &str, index: usize, exp: i64) -> String {
    if exp == 1 {
        format!("{name}{index}")
    } else {
        format!("{name}{index}^{exp}")
    }
}

/// Parses a sum of monomials in `vars` variables. Terms are returned raw
/// (unmerged); feed them to `HomogeneousSymbol::from_terms` or the operator
/// constructors to canonicalize.
pub fn parse_terms(text: &str, vars: usize) -> Result<Vec<Monomial>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let terms = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: usize,
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn sum(&mut self) -> Result<Vec<Monomial>> {
        let mut terms = Vec::new();
        let neg = self.eat(b'-');
        let mut t = self.term()?;
        if neg {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let mut t = self.term()?;
                    t.coeff = -t.coeff;
                    terms.push(t);
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut coeff = Scalar::one();
        let mut x_exps = vec![0i64; self.vars];
        let mut xi_exps = vec![0i64; self.vars];
        loop {
            self.factor(&mut coeff, &mut x_exps, &mut xi_exps)?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(Monomial::new(coeff, x_exps, xi_exps))
    }

    fn factor(
        &mut self,
        coeff: &mut Scalar,
        x_exps: &mut [i64],
        xi_exps: &mut [i64],
    ) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let c = self.complex()?;
                self.expect(b')')?;
                *coeff = coeff.clone() * c;
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                *coeff = coeff.clone() * Scalar::new(r, BigRational::zero());
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.ident();
                if ident == "i" {
                    *coeff = coeff.clone() * Scalar::i();
                    return Ok(());
                }
                let (name, idx) = split_var(&ident)
                    .ok_or_else(|| self.err(&format!("unknown symbol '{ident}'")))?;
                if idx == 0 || idx > self.vars {
                    return Err(Error::BadVariableIndex { index: idx, vars: self.vars });
                }
                let exp = if self.eat(b'^') { self.signed_int()? } else { 1 };
                match name {
                    "x" => x_exps[idx - 1] += exp,
                    "xi" => xi_exps[idx - 1] += exp,
                    _ => unreachable!(),
                }
                Ok(())
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    /// Contents of a parenthesized mixed scalar: `1+i`, `1/2-3*i`, `-2+i`.
    fn complex(&mut self) -> Result<Scalar> {
        let neg = self.eat(b'-');
        let mut re = self.rational()?;
        if neg {
            re = -re;
        }
        let sign = match self.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Ok(Scalar::new(re, BigRational::zero())),
        };
        self.pos += 1;
        let im = self.imag_part()?;
        let im = if sign < 0 { -im } else { im };
        Ok(Scalar::new(re, im))
    }

    /// `i` or `RAT*i`.
    fn imag_part(&mut self) -> Result<BigRational> {
        if let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                let r = self.rational()?;
                self.expect(b'*')?;
                return self.expect_i().map(|()| r);
            }
        }
        self.expect_i().map(|()| BigRational::one())
    }

    fn expect_i(&mut self) -> Result<()> {
        if self.ident() == "i" {
            Ok(())
        } else {
            Err(self.err("expected 'i'"))
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let v: i64 = n
            .try_into()
            .map_err(|_| Error::Parse { offset: self.pos, message: "exponent too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

/// Splits `x3` / `xi12` into the variable family and its 1-based index.
fn split_var(ident: &str) -> Option<(&'static str, usize)> {
    for (name, rest) in [("xi", ident.strip_prefix("xi")), ("x", ident.strip_prefix('x'))] {
        if let Some(digits) = rest {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                return digits.parse().ok().map(|k| (name, k));
            }
        }
    }
    None
}
