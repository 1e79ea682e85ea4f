//! Expression parsing for the CLI and the catalog data file.
//!
//! One recursive-descent parser serves every value domain (rational
//! functions in one variable, elements of C(X3) over Q or Q(cbrt 4)): the
//! caller supplies the variable bindings.

use std::sync::Arc;

use crate::ellcurve::WeierstrassCurve;
use crate::exactalg::{Field, NfElem, NumberField, QPoly, QRatFunc, Rat, RatFunc, UniPoly};
use crate::x3field::X3Elem;

/// Values an expression can evaluate to.
pub trait ExprValue: Clone {
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
    fn pow(&self, e: u32) -> Self;
}

impl<K: Field> ExprValue for RatFunc<K> {
    fn from_rat(r: &Rat) -> Self {
        RatFunc::from_rat(r)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        RatFunc::div(self, o)
    }
    fn pow(&self, e: u32) -> Self {
        RatFunc::pow(self, e)
    }
}

impl<K: Field> ExprValue for X3Elem<K> {
    fn from_rat(r: &Rat) -> Self {
        X3Elem::from_rat(r)
    }
    fn add(&self, o: &Self) -> Self {
        X3Elem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        X3Elem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        X3Elem::mul(self, o)
    }
    fn neg(&self) -> Self {
        X3Elem::neg(self)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        X3Elem::div(self, o).ok()
    }
    fn pow(&self, e: u32) -> Self {
        X3Elem::pow(self, e)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: crate::exactalg::Int = s[start..i].parse().map_err(|_| "bad integer")?;
                out.push(Token::Num(Rat::from_integer(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Ident(s[start..i].to_string()));
            }
            other => return Err(format!("unexpected character '{other}'")),
        }
    }
    Ok(out)
}

struct Parser<'a, V: ExprValue> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [(&'a str, V)],
}

impl<'a, V: ExprValue> Parser<'a, V> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<V, String> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<V, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).ok_or("division by zero")?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<V, String> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let mut base = self.primary()?;
        while matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Num(n)) => {
                    use num_traits::ToPrimitive;
                    if !n.is_integer() {
                        return Err("exponent must be an integer".into());
                    }
                    let e = n.to_integer().to_u32().ok_or("exponent out of range")?;
                    base = base.pow(e);
                }
                _ => return Err("expected integer exponent after '^'".into()),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<V, String> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(V::from_rat(&n)),
            Some(Token::Ident(name)) => self
                .vars
                .iter()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| v.clone())
                .ok_or(format!("unknown variable '{name}'")),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err("missing ')'".into()),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parse an expression over the given variable bindings.
pub fn parse_expr<V: ExprValue>(s: &str, vars: &[(&str, V)]) -> Result<V, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input at token {}", p.pos));
    }
    Ok(v)
}

/// Rational function in a named variable over Q.
pub fn parse_ratfunc(s: &str, var: &str) -> Result<QRatFunc, String> {
    parse_expr(s, &[(var, RatFunc::var())])
}

/// Polynomial in a named variable over Q (denominators rejected).
pub fn parse_poly(s: &str, var: &str) -> Result<QPoly, String> {
    let f = parse_ratfunc(s, var)?;
    f.as_polynomial()
        .cloned()
        .ok_or_else(|| format!("'{s}' is not a polynomial in {var}"))
}

/// Curve literal `a1;a2;a3;a4;a6` with rational-function entries in u.
/// With a base field, coefficients may mention `a`, but must collapse to
/// rationals to be usable by the fiber machinery.
pub fn parse_curve_literal(
    s: &str,
    base_field: Option<&Arc<NumberField>>,
) -> Result<WeierstrassCurve<Rat>, String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 5 {
        return Err(format!(
            "curve literal needs 5 components a1;a2;a3;a4;a6, got {}",
            parts.len()
        ));
    }
    let mut coeffs: Vec<QRatFunc> = Vec::with_capacity(5);
    match base_field {
        None => {
            for p in &parts {
                coeffs.push(parse_ratfunc(p, "u")?);
            }
        }
        Some(ctx) => {
            let vars: Vec<(&str, RatFunc<NfElem>)> = vec![
                ("u", RatFunc::var()),
                ("a", RatFunc::constant(NfElem::generator(ctx))),
            ];
            for p in &parts {
                let f: RatFunc<NfElem> = parse_expr(p, &vars)?;
                // coefficients must be rational for Tate's algorithm
                let num = rationalize(f.num())?;
                let den = rationalize(f.den())?;
                coeffs.push(RatFunc::new(num, den).map_err(|e| e.to_string())?);
            }
        }
    }
    let mut it = coeffs.into_iter();
    Ok(WeierstrassCurve {
        a1: it.next().unwrap(),
        a2: it.next().unwrap(),
        a3: it.next().unwrap(),
        a4: it.next().unwrap(),
        a6: it.next().unwrap(),
    })
}

fn rationalize(p: &UniPoly<NfElem>) -> Result<QPoly, String> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        out.push(c.to_rat().ok_or_else(|| {
            "curve coefficients over an extension field are outside the scope of the \
             fiber classifier"
                .to_string()
        })?);
    }
    Ok(UniPoly::from_coeffs(out))
}

/// X3 expression over Q with variables y1, y2, t and optional extra
/// bindings (the elliptic parameter u, typically).
pub fn parse_x3_q(s: &str, extra: &[(&str, X3Elem<Rat>)]) -> Result<X3Elem<Rat>, String> {
    let mut vars: Vec<(&str, X3Elem<Rat>)> = vec![
        ("y1", X3Elem::y1()),
        ("y2", X3Elem::y2()),
        ("t", X3Elem::t()),
    ];
    vars.extend(extra.iter().cloned());
    parse_expr(s, &vars)
}

/// X3 expression over Q(a) with a the extension generator.
pub fn parse_x3_nf(
    s: &str,
    ctx: &Arc<NumberField>,
    extra: &[(&str, X3Elem<NfElem>)],
) -> Result<X3Elem<NfElem>, String> {
    let mut vars: Vec<(&str, X3Elem<NfElem>)> = vec![
        ("y1", X3Elem::y1()),
        ("y2", X3Elem::y2()),
        ("t", X3Elem::t()),
        ("a", X3Elem::constant(NfElem::generator(ctx))),
    ];
    vars.extend(extra.iter().cloned());
    parse_expr(s, &vars)
}
