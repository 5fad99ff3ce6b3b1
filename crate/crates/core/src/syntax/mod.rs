//! Expression parsing and canonical printing.
//!
//! Grammar, with `^` binding tighter than unary minus:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := integer | symbol | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{Elem, Poly};
use crate::error::{Error, Result};
use crate::tower::TowerSpec;

const MAX_EXPONENT: i64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(src.len(), |c| c.0);
            out.push((pos, Tok::Int(src[pos..end].parse().unwrap())));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map_or(src.len(), |c| c.0);
            out.push((pos, Tok::Sym(src[pos..end].to_string())));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    tower: &'a TowerSpec,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.error("expected an integer exponent");
        };
        self.at += 1;
        let e: i64 = match i64::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(Error::Syntax { pos, msg: "exponent too large".into() }),
        };
        if self.peek() == Some(&Tok::Op('^')) {
            return self.error("chained exponents need parentheses");
        }
        if negative {
            Ok(base.checked_inv()?.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Elem::from_bigint(n))
            }
            Some(Tok::Sym(s)) => {
                self.at += 1;
                self.tower.lookup(&s).map(Elem::var).ok_or(Error::UnknownSymbol(s))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.error("expected a number, symbol or `(`"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses an expression over the symbols of `tower` into a normalized element.
pub fn parse_expression(src: &str, tower: &TowerSpec) -> Result<Elem> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), tower };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a polynomial in the generator of `level`.
pub fn parse_poly(src: &str, tower: &TowerSpec, level: usize) -> Result<Poly> {
    let e = parse_expression(src, tower)?;
    let v = tower.var_of_level(level);
    if tower.indicator(&e) > level || !e.is_poly_in(v) {
        return Err(Error::InvalidInput(format!(
            "`{src}` is not a polynomial in `{}` over the fields below",
            tower.generator_name(level)
        )));
    }
    Ok(e.numer(v))
}

fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Positive rational `c` with `e / c` having coprime integer leaves.
fn content(e: &Elem) -> BigRational {
    match e {
        Elem::Rat(r) => r.abs(),
        Elem::Frac(f) => poly_content(f.num()) / poly_content(f.den()),
    }
}

fn poly_content(p: &Poly) -> BigRational {
    p.coeffs().iter().fold(BigRational::zero(), |acc, c| rat_gcd(&acc, &content(c)))
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_atomic(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '^')
}

fn paren(s: String) -> String {
    if is_atomic(&s) {
        s
    } else {
        format!("({s})")
    }
}

fn monomial(name: &str, k: usize) -> String {
    match k {
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn print_poly(tower: &TowerSpec, p: &Poly) -> String {
    let name = tower.symbol_name(p.var());
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = if k == 0 {
            print_elem(tower, c)
        } else {
            let m = monomial(name, k);
            match c {
                Elem::Rat(r) if r.is_one() => m,
                Elem::Rat(r) if (-r).is_one() => format!("-{m}"),
                Elem::Rat(r) => format!("{}*{m}", fmt_rat(r)),
                _ => format!("{}*{m}", paren(print_elem(tower, c))),
            }
        };
        terms.push(term);
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

fn scaled(scale: &BigInt, body: String) -> String {
    if body == "1" {
        scale.to_string()
    } else if scale.is_one() {
        body
    } else if (-scale).is_one() {
        format!("-{}", paren(body))
    } else {
        format!("{scale}*{}", paren(body))
    }
}

/// Canonical text of an element: recursive numerator/denominator form with
/// integer leaves and a positive leading denominator term.
pub fn print_elem(tower: &TowerSpec, e: &Elem) -> String {
    match e {
        Elem::Rat(r) => fmt_rat(r),
        Elem::Frac(f) if f.den().is_one() => print_poly(tower, f.num()),
        Elem::Frac(f) => {
            let cn = poly_content(f.num());
            let cd = poly_content(f.den());
            let mut lambda = &cn / &cd;
            let mut num = f.num().scale(&Elem::from(cn.recip()));
            if num.lc().leading_sign() < 0 {
                num = num.neg();
                lambda = -lambda;
            }
            let den = f.den().scale(&Elem::from(cd.recip()));
            let top = scaled(lambda.numer(), print_poly(tower, &num));
            let bottom = if lambda.denom().is_one() {
                print_poly(tower, &den)
            } else {
                format!("{}*{}", lambda.denom(), paren(print_poly(tower, &den)))
            };
            let top = if has_top_level_sum(&top) { format!("({top})") } else { top };
            format!("{top}/{}", paren(bottom))
        }
    }
}

/// True when a `+` or binary `-` occurs outside parentheses.
fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}
