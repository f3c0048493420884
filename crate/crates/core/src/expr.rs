//! Text syntax for fields, rational functions and units.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := 'x' | 'i' | 'a' | integer | '(' expr ')'
//! ```
//!
//! `i` is only meaningful over `Qi` and `a` (the class of the indeterminate of
//! the modulus) only over `GF(p^n; ...)`. Printing produces text this grammar
//! reads back to the same canonical value.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::moebius::MoebiusUnit;
use crate::poly::Poly;
use crate::ratfun::RatFun;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    X,
    I,
    A,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let ch = bytes[k];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'x' => Tok::X,
            b'i' => Tok::I,
            b'a' => Tok::A,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Int(src[start..k].parse().unwrap())));
                continue;
            }
            _ => {
                let c = src[k..].chars().next().unwrap();
                return Err(syntax(k, format!("unexpected character '{c}'")));
            }
        };
        out.push((k, tok));
        k += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    X,
    I,
    A,
    Int(BigInt),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = n
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(pos, format!("exponent larger than {MAX_EXPONENT}")))?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => Err(syntax(pos, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::X) => Ok(Ast::X),
            Some(Tok::I) => Ok(Ast::I),
            Some(Tok::A) => Ok(Ast::A),
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(pos, format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(ast)
}

fn eval(ast: &Ast, field: &Field, src: &str) -> Result<RatFun> {
    Ok(match ast {
        Ast::X => RatFun::identity(field),
        Ast::I => RatFun::constant(field.imaginary_unit()?),
        Ast::A => RatFun::constant(field.generator()?),
        Ast::Int(n) => RatFun::constant(field.from_bigint(n)),
        Ast::Neg(a) => eval(a, field, src)?.neg(),
        Ast::Add(a, b) => eval(a, field, src)?.checked_add(&eval(b, field, src)?)?,
        Ast::Sub(a, b) => eval(a, field, src)?.checked_sub(&eval(b, field, src)?)?,
        Ast::Mul(a, b) => eval(a, field, src)?.checked_mul(&eval(b, field, src)?)?,
        Ast::Pow(a, e) => eval(a, field, src)?.pow(*e),
        Ast::Div(a, b) => {
            let divisor = eval(b, field, src)?;
            if divisor.is_zero() {
                // A divisor that is a nonzero rational number but vanishes in
                // the field means the input names a coefficient the field lacks.
                let over_q = eval(b, &Field::rationals(), src);
                if matches!(over_q, Ok(ref v) if !v.is_zero() && v.is_constant()) {
                    return Err(Error::CoefficientNotInField(format!(
                        "division by {} in {field}",
                        over_q.unwrap()
                    )));
                }
                return Err(Error::DivisionByZero);
            }
            eval(a, field, src)?.checked_div(&divisor)?
        }
    })
}

/// Parse a rational function in `x` over `field`.
pub fn parse_ratfun(src: &str, field: &Field) -> Result<RatFun> {
    let ast = parse_ast(src)?;
    eval(&ast, field, src)
}

/// Parse a degree-1 expression as a unit.
pub fn parse_unit(src: &str, field: &Field) -> Result<MoebiusUnit> {
    MoebiusUnit::from_ratfun(&parse_ratfun(src, field)?)
}

/// Parse a `;`-separated list of units.
pub fn parse_unit_list(src: &str, field: &Field) -> Result<Vec<MoebiusUnit>> {
    src.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_unit(s, field)).collect()
}

/// Parse a constant expression as a field element. The printed form of
/// elements is accepted too: a digit followed directly by `i` or `a`
/// multiplies, so `3/2i` reads as `(3/2)*i`.
pub fn parse_element(src: &str, field: &Field) -> Result<FieldElement> {
    let mut expanded = String::with_capacity(src.len() + 4);
    let mut prev_digit = false;
    for ch in src.chars() {
        if prev_digit && (ch == 'i' || ch == 'a') {
            expanded.push('*');
        }
        prev_digit = ch.is_ascii_digit();
        expanded.push(ch);
    }
    let f = parse_ratfun(&expanded, field)?;
    if !f.is_constant() {
        return Err(syntax(0, "expected a constant"));
    }
    Ok(f.num().coeff(0))
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::InvalidField(format!("bad {what} '{}'", s.trim())))
}

/// `Q`, `Qi`, `GF(q)`, `GF(p^n)` or `GF(p^n; c0,c1,...,cn)`.
pub fn parse_field(src: &str) -> Result<Field> {
    let s = src.trim();
    match s {
        "Q" => return Ok(Field::rationals()),
        "Qi" | "Q(i)" => return Ok(Field::gaussian_rationals()),
        _ => {}
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidField(format!("unknown field descriptor '{s}'")))?;
    let (order, modulus) = match inner.split_once(';') {
        Some((o, m)) => (o, Some(m)),
        None => (inner, None),
    };
    let (p, n) = match order.split_once('^') {
        None => {
            let q = parse_u32(order, "field order")? as u64;
            let p = (2..=q).find(|d| q % d == 0).ok_or(Error::NotPrime(q))?;
            let mut n = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                n += 1;
            }
            if r != 1 {
                return Err(Error::InvalidField(format!("{q} is not a prime power")));
            }
            (p as u32, n)
        }
        Some((p, n)) => (parse_u32(p, "characteristic")?, parse_u32(n, "degree")?),
    };
    let Some(m) = modulus else {
        return Field::galois(p, n);
    };
    let coeffs = m.split(',').map(|c| parse_u32(c, "modulus coefficient")).collect::<Result<Vec<_>>>()?;
    if coeffs.len() != n as usize + 1 {
        return Err(Error::InvalidField(format!("modulus of degree {n} needs {} coefficients", n + 1)));
    }
    Field::extension(p, coeffs)
}

/// Coefficient magnitude as an atom-safe expression.
fn coeff_expr(c: &FieldElement) -> String {
    if let Some((re, im)) = c.gaussian_parts() {
        let imag = |v: &num_rational::BigRational| {
            if v.is_one() {
                "i".to_string()
            } else {
                format!("{v}*i")
            }
        };
        return match (re.is_zero(), im.is_zero()) {
            (_, true) => re.to_string(),
            (true, false) => imag(&im),
            (false, false) if im < num_rational::BigRational::zero() => format!("({re}-{})", imag(&-im)),
            (false, false) => format!("({re}+{})", imag(&im)),
        };
    }
    let s = c.to_string();
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

pub(crate) fn format_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative_looking();
        let mag = if negative { -c } else { c.clone() };
        let power = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let body = if k == 0 {
            coeff_expr(&mag)
        } else if mag.is_one() {
            power
        } else {
            format!("{}*{power}", coeff_expr(&mag))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub(crate) fn format_ratfun(f: &RatFun, var: &str) -> String {
    if f.den().is_one() {
        return format_poly(f.num(), var);
    }
    // A single term needs no parentheses: `/` binds to the whole term on the
    // left and the denominator is monic.
    let wrap = |p: &Poly| {
        let text = format_poly(p, var);
        if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 { text } else { format!("({text})") }
    };
    format!("{}/{}", wrap(f.num()), wrap(f.den()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_elements_parse_back() {
        let qi = Field::gaussian_rationals();
        for src in ["1+2i", "-i", "3/2-1/2i", "-7/3"] {
            assert_eq!(parse_element(src, &qi).unwrap().to_string(), src);
        }
        let f9 = Field::galois(3, 2).unwrap();
        let e = parse_element("2a+1", &f9).unwrap();
        assert_eq!(parse_element(&e.to_string(), &f9).unwrap(), e);
        assert!(parse_element("x", &qi).is_err());
    }

    #[test]
    fn worked_example_input() {
        let q = Field::rationals();
        let f = parse_ratfun("(x^3-3*x+1)^2/(x*(x^3-x^2-2*x+1)*(x-1))", &q).unwrap();
        assert_eq!(f.degree(), 6);
        assert_eq!(f.to_string(), parse_ratfun(&f.to_string(), &q).unwrap().to_string());
    }

    #[test]
    fn identity_everywhere() {
        for name in ["Q", "Qi", "GF(2)", "GF(2^2; 1,1,1)"] {
            let field = parse_field(name).unwrap();
            assert_eq!(parse_ratfun("x", &field).unwrap(), RatFun::identity(&field));
        }
    }

    #[test]
    fn coefficient_not_in_field() {
        let f2 = parse_field("GF(2)").unwrap();
        assert!(matches!(parse_ratfun("1/2*x", &f2), Err(Error::CoefficientNotInField(_))));
        assert!(matches!(parse_ratfun("i*x", &Field::rationals()), Err(Error::CoefficientNotInField(_))));
        assert!(matches!(parse_ratfun("a", &f2), Err(Error::CoefficientNotInField(_))));
        assert_eq!(parse_ratfun("1/(x-x)", &f2), Err(Error::DivisionByZero));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let q = Field::rationals();
        assert!(matches!(parse_ratfun("x +* 2", &q), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_ratfun("(x", &q), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ratfun("2x", &q), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_ratfun("x^y", &q), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ratfun("y", &q), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn printing() {
        let q = Field::rationals();
        assert_eq!(parse_ratfun("-x^2 + 3/2*x - 1", &q).unwrap().to_string(), "-x^2 + 3/2*x - 1");
        let qi = Field::gaussian_rationals();
        let f = parse_ratfun("(1+2*i)*x^2 - i*x + (3-i)", &qi).unwrap();
        assert_eq!(f.to_string(), "(1+2*i)*x^2 - i*x + (3-i)");
        let f4 = parse_field("GF(2^2; 1,1,1)").unwrap();
        let g = parse_ratfun("(a+1)*x^2 + a*x + 1", &f4).unwrap();
        assert_eq!(g.to_string(), "(a+1)*x^2 + a*x + 1");
        assert_eq!(parse_ratfun("1/(x+1)", &q).unwrap().to_string(), "1/(x + 1)");
        assert_eq!(parse_ratfun("-2*x^3/(x^2-1)", &q).unwrap().to_string(), "-2*x^3/(x^2 - 1)");
        assert_eq!(parse_ratfun("(x+1)/x^2", &q).unwrap().to_string(), "(x + 1)/x^2");
    }

    #[test]
    fn field_descriptors() {
        assert!(parse_field("GF(4; 1,0,1)").is_err());
        assert_eq!(parse_field("GF(4; 1,1,1)").unwrap(), parse_field("GF(2^2; 1,1,1)").unwrap());
        assert!(parse_field("GF(6)").is_err());
        assert_eq!(parse_field("GF(7)").unwrap().size(), Some(7));
        assert_eq!(parse_field("GF(9)").unwrap().size(), Some(9));
        assert_eq!(parse_field("GF(3^2)").unwrap().size(), Some(9));
        assert!(parse_field("GF(2^2; 1,0,1)").is_err());
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("R").is_err());
    }
}
