//! Recursive-descent parser for tensor, plot and polynomial expressions.
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := power (('*' | '/') power)*
//! power    := atom ['^' exponent]
//! exponent := ['-'] INT | '(' ['-'] INT ')' | '{' ['-'] INT '}'
//! atom     := INT | x | y | t | dx | dy | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant, multiplication is always explicit and only
//! integer literals exist, so `1/2` is a quotient. Division and negative
//! powers are allowed only for single terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::jets::{Jet1, LaurentJet, LaurentJet2};
use crate::numeric::{Poly, Representation};
use crate::plots::{make_boundary_plot, make_interior_plot, PlotGerm};
use crate::tensors::{
    make_halfline_tensor, make_quadrant_tensor_bounded, HalfLineTensor, QuadrantTensor, DEFAULT_MIN_VALUATION,
};
use crate::Rational;

/// Largest exponent magnitude accepted in `^`.
const MAX_EXPONENT: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    Halfline,
    Quadrant,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Halfline => "halfline",
            Space::Quadrant => "quadrant",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedTensor {
    Halfline(HalfLineTensor<Rational>),
    Quadrant(QuadrantTensor<Rational>),
}

/// Monomial `x^x y^y t^t dx^dx dy^dy`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub x: i64,
    pub y: i64,
    pub t: i64,
    pub dx: u32,
    pub dy: u32,
}

impl Mono {
    fn mul(self, o: Mono) -> Mono {
        Mono {
            x: self.x + o.x,
            y: self.y + o.y,
            t: self.t + o.t,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
        }
    }

    fn has_basis(self) -> bool {
        self.dx + self.dy > 0
    }
}

/// Sparse polynomial. Zero coefficients are kept so that `0*dx^2` still
/// records its basis symbol.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr(pub BTreeMap<Mono, Rational>);

impl Expr {
    fn constant(c: Rational) -> Self {
        Expr(BTreeMap::from([(Mono::default(), c)]))
    }

    fn mono(m: Mono) -> Self {
        Expr(BTreeMap::from([(m, Rational::one())]))
    }

    fn add(mut self, o: Expr, sign: bool) -> Self {
        for (m, c) in o.0 {
            let e = self.0.entry(m).or_insert_with(Rational::zero);
            if sign {
                *e += c;
            } else {
                *e -= c;
            }
        }
        self
    }

    fn mul(&self, o: &Expr) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.0 {
            for (n, d) in &o.0 {
                *out.entry(m.mul(*n)).or_insert_with(Rational::zero) += c * d;
            }
        }
        Expr(out)
    }

    /// The single nonzero term, if there is exactly one.
    fn single(&self) -> Option<(Mono, &Rational)> {
        let mut it = self.0.iter().filter(|(_, c)| !c.is_zero());
        match (it.next(), it.next()) {
            (Some((m, c)), None) => Some((*m, c)),
            _ => None,
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.0.iter().filter(|(_, c)| !c.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    X,
    Y,
    T,
    Dx,
    Dy,
}

impl Sym {
    fn name(self) -> &'static str {
        match self {
            Sym::X => "x",
            Sym::Y => "y",
            Sym::T => "t",
            Sym::Dx => "dx",
            Sym::Dy => "dy",
        }
    }

    fn mono(self) -> Mono {
        let mut m = Mono::default();
        match self {
            Sym::X => m.x = 1,
            Sym::Y => m.y = 1,
            Sym::T => m.t = 1,
            Sym::Dx => m.dx = 1,
            Sym::Dy => m.dy = 1,
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Int(s.parse().expect("digits"))
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(s)
        } else if "+-*/^(){};,".contains(ch) {
            chars.next();
            column += 1;
            Tok::Punct(ch)
        } else {
            return Err(ParseError {
                line: l,
                column: c,
                message: format!("unexpected character '{ch}'"),
            });
        };
        out.push(Token {
            tok,
            line: l,
            column: c,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    allowed: &'a [Sym],
    context: &'a str,
    min_exponent: i64,
}

impl<'a> Parser<'a> {
    fn new(text: &str, allowed: &'a [Sym], context: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            allowed,
            context,
            min_exponent: DEFAULT_MIN_VALUATION,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, t: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            self.err_at(&t, format!("expected '{c}', found {}", describe(&t.tok)))
        }
    }

    fn parse_all(&mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        let t = self.peek().clone();
        if t.tok != Tok::End {
            return self.err_at(&t, format!("unexpected {}", describe(&t.tok)));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut sign = true;
        if self.is_punct('+') || self.is_punct('-') {
            sign = self.next().tok == Tok::Punct('+');
        }
        let mut acc = Expr::default().add(self.term()?, sign);
        while self.is_punct('+') || self.is_punct('-') {
            let sign = self.next().tok == Tok::Punct('+');
            acc = acc.add(self.term()?, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        while self.is_punct('*') || self.is_punct('/') {
            let op = self.next();
            let at = self.peek().clone();
            let rhs = self.power()?;
            if op.tok == Tok::Punct('*') {
                acc = acc.mul(&rhs);
            } else {
                acc = acc.mul(&self.invert(&rhs, &at)?);
            }
        }
        Ok(acc)
    }

    fn invert(&self, e: &Expr, at: &Token) -> Result<Expr, ParseError> {
        match e.single() {
            Some((m, _)) if m.has_basis() => self.err_at(at, "cannot divide by a basis symbol"),
            Some((m, c)) => Ok(Expr(BTreeMap::from([(
                Mono {
                    x: -m.x,
                    y: -m.y,
                    t: -m.t,
                    dx: 0,
                    dy: 0,
                },
                c.recip(),
            )]))),
            None if e.nonzero().next().is_none() => self.err_at(at, "division by zero"),
            None => self.err_at(at, "division only by monomials"),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek().clone();
        let (base, sym) = self.atom()?;
        if !self.is_punct('^') {
            return Ok(base);
        }
        self.next();
        let at = self.peek().clone();
        let n = self.exponent()?;
        if n.abs() > MAX_EXPONENT {
            return self.err_at(&at, format!("exponent {n} out of range"));
        }
        if let Some(s @ (Sym::X | Sym::Y)) = sym {
            if n < self.min_exponent {
                return self.err_at(
                    &at,
                    format!("exponent {n} of {} below minimum {}", s.name(), self.min_exponent),
                );
            }
        }
        let base = if n < 0 { self.invert(&base, &start)? } else { base };
        let mut out = Expr::constant(Rational::one());
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let close = if self.is_punct('(') {
            self.next();
            Some(')')
        } else if self.is_punct('{') {
            self.next();
            Some('}')
        } else {
            None
        };
        let neg = self.is_punct('-');
        if neg {
            self.next();
        }
        let t = self.next();
        let Tok::Int(n) = &t.tok else {
            return self.err_at(&t, format!("expected integer exponent, found {}", describe(&t.tok)));
        };
        let Some(n) = n.to_i64() else {
            return self.err_at(&t, "exponent out of range");
        };
        if let Some(c) = close {
            self.expect(c)?;
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<(Expr, Option<Sym>), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok((Expr::constant(Rational::from_integer(n.clone())), None)),
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok((e, None))
            }
            Tok::Ident(name) => {
                let sym = match name.as_str() {
                    "x" => Sym::X,
                    "y" => Sym::Y,
                    "t" => Sym::T,
                    "dx" => Sym::Dx,
                    "dy" => Sym::Dy,
                    _ => return self.err_at(&t, format!("unknown symbol '{name}'")),
                };
                if !self.allowed.contains(&sym) {
                    return self.err_at(&t, format!("mixed-space: '{name}' is not allowed in {}", self.context));
                }
                Ok((Expr::mono(sym.mono()), Some(sym)))
            }
            other => self.err_at(&t, format!("unexpected {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Punct(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn whole(message: impl Into<String>) -> ParseError {
    ParseError {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

fn check_min(e: &Expr, min: i64) -> Result<(), ParseError> {
    for (m, _) in e.nonzero() {
        if m.x < min || m.y < min {
            return Err(whole(format!(
                "exponent below minimum {min} in term with x^{} y^{}",
                m.x, m.y
            )));
        }
    }
    Ok(())
}

pub fn parse_expr_in(text: &str, space: Space) -> Result<Expr, ParseError> {
    let (allowed, ctx): (&[Sym], &str) = match space {
        Space::Halfline => (&[Sym::X, Sym::Dx], "a half-line expression"),
        Space::Quadrant => (&[Sym::X, Sym::Y, Sym::Dx, Sym::Dy], "a quadrant expression"),
    };
    Parser::new(text, allowed, ctx)?.parse_all()
}

pub fn parse_tensor(text: &str, space: Space, order: usize) -> Result<ParsedTensor, ParseError> {
    match space {
        Space::Halfline => parse_halfline(text, order).map(ParsedTensor::Halfline),
        Space::Quadrant => parse_quadrant(text, order).map(ParsedTensor::Quadrant),
    }
}

/// `coeff(x)*dx^k`; every term must carry the same power of `dx`.
pub fn parse_halfline(text: &str, order: usize) -> Result<HalfLineTensor<Rational>, ParseError> {
    let e = parse_expr_in(text, Space::Halfline)?;
    check_min(&e, DEFAULT_MIN_VALUATION)?;
    let degrees: std::collections::BTreeSet<u32> = e.0.keys().map(|m| m.dx).collect();
    let k = match degrees.len() {
        0 => 0,
        1 => *degrees.iter().next().expect("one degree"),
        _ => return Err(whole(format!("mixed tensor degrees {degrees:?}"))),
    };
    let coeff = LaurentJet::from_terms(e.nonzero().map(|(m, c)| (m.x, c.clone())), order as i64);
    make_halfline_tensor(k as i64, coeff).map_err(|e| whole(e.to_string()))
}

/// `a*dx^2 + b*dy^2 + c*dx*dy`, where `c` is stored as given.
pub fn parse_quadrant(text: &str, order: usize) -> Result<QuadrantTensor<Rational>, ParseError> {
    let e = parse_expr_in(text, Space::Quadrant)?;
    check_min(&e, DEFAULT_MIN_VALUATION)?;
    let mut parts: [Vec<((i64, i64), Rational)>; 3] = Default::default();
    for (m, c) in &e.0 {
        let slot = match (m.dx, m.dy) {
            (2, 0) => 0,
            (0, 2) => 1,
            (1, 1) => 2,
            (dx, dy) => {
                if c.is_zero() {
                    continue;
                }
                return Err(whole(format!(
                    "quadrant terms need dx^2, dy^2 or dx*dy, found dx^{dx}*dy^{dy}"
                )));
            }
        };
        if !c.is_zero() {
            parts[slot].push(((m.x, m.y), c.clone()));
        }
    }
    let [a, b, c] = parts.map(|p| LaurentJet2::from_terms(order as i64, p));
    make_quadrant_tensor_bounded(a, b, c, DEFAULT_MIN_VALUATION).map_err(|e| whole(e.to_string()))
}

/// Polynomial in `t` with nonnegative exponents, coefficients in increasing degree.
pub fn parse_polynomial(text: &str) -> Result<Poly, ParseError> {
    let e = Parser::new(text, &[Sym::T], "a polynomial in t")?.parse_all()?;
    to_poly(&e)
}

fn to_poly(e: &Expr) -> Result<Poly, ParseError> {
    let mut out: Poly = Vec::new();
    for (m, c) in e.nonzero() {
        if m.t < 0 {
            return Err(whole(format!("negative power t^{} in a polynomial", m.t)));
        }
        let d = m.t as usize;
        if out.len() <= d {
            out.resize(d + 1, Rational::zero());
        }
        out[d] += c;
    }
    Ok(out)
}

/// A rational constant such as `3`, `-1/2` or `(1/3)`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let e = Parser::new(text, &[], "a constant")?.parse_all()?;
    let mut it = e.nonzero();
    match it.next() {
        None => Ok(Rational::zero()),
        Some((m, c)) if *m == Mono::default() => Ok(c.clone()),
        Some(_) => Err(whole("expected a constant")),
    }
}

/// A polynomial, or `sos(p1; p2; ...)` for a sum of squares.
pub fn parse_function(text: &str) -> Result<Representation, ParseError> {
    let s = text.trim();
    if let Some(inner) = s
        .strip_prefix("sos")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('('))
    {
        let inner = inner
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| whole("sos(...) is missing its closing parenthesis"))?;
        let ps = split_top(inner, ';')
            .into_iter()
            .map(parse_polynomial)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Representation::SumOfSquares(ps));
    }
    parse_polynomial(s).map(Representation::Polynomial)
}

pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `flat`, `interior(x0; poly)`, or a polynomial `t^{2m}*unit`.
pub fn parse_plot(text: &str) -> Result<PlotGerm<Rational>, ParseError> {
    let s = text.trim();
    if s == "flat" {
        return Ok(PlotGerm::Flat);
    }
    if let Some(inner) = s
        .strip_prefix("interior")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('('))
    {
        let inner = inner
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| whole("interior(...) is missing its closing parenthesis"))?;
        let parts = split_top(inner, ';');
        let [x0, jet] = parts.as_slice() else {
            return Err(whole("interior plots are written interior(x0; poly)"));
        };
        let x0 = parse_rational(x0)?;
        let mut p = parse_polynomial(jet)?;
        if p.is_empty() {
            p.push(Rational::zero());
        }
        if p[0].is_zero() {
            p[0] = x0.clone();
        } else if p[0] != x0 {
            return Err(whole(format!(
                "interior jet starts at {} but the base point is {x0}",
                p[0]
            )));
        }
        return make_interior_plot(Jet1::from_poly(p)).map_err(|e| whole(e.to_string()));
    }
    let p = parse_polynomial(s)?;
    let Some(v) = p.iter().position(|c| !c.is_zero()) else {
        return Ok(PlotGerm::Flat);
    };
    if v == 0 {
        return make_interior_plot(Jet1::from_poly(p)).map_err(|e| whole(e.to_string()));
    }
    if v % 2 == 1 || p[v].is_negative() {
        return Err(whole(format!(
            "plot not certified nonnegative: leading term of degree {v} has coefficient {}",
            p[v]
        )));
    }
    make_boundary_plot((v / 2) as i64, Jet1::from_poly(p[v..].to_vec())).map_err(|e| whole(plot_msg(e)))
}

fn plot_msg(e: Error) -> String {
    match e {
        Error::NotNonnegative(s) => format!("plot not certified nonnegative: {s}"),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensors::tau_sing;
    use crate::{q, ratio};

    #[test]
    fn tau_sing_parses() {
        assert_eq!(parse_halfline("(1/x)*dx^2", 16).unwrap(), tau_sing());
        assert_eq!(parse_halfline("x^-1*dx^2", 16).unwrap(), tau_sing());
        assert_eq!(parse_halfline("x^(-1) * dx^{2}", 16).unwrap(), tau_sing());
        assert_eq!(parse_halfline("dx*dx/x", 16).unwrap(), tau_sing());
    }

    #[test]
    fn pole_order_one_tensor() {
        let t = parse_halfline("(1/x + 3 + x)*dx^2", 16).unwrap();
        assert_eq!(t.pole_order(), 1);
        assert_eq!(t.coeff().coeff(0), Some(q(3)));
        assert_eq!(t.degree(), 2);
    }

    #[test]
    fn quadrant_demo() {
        let t = parse_quadrant("(y^2/x)*dx^2 + (1/y)*dy^2 + x*y*dx*dy", 16).unwrap();
        assert_eq!(t.a().coeff(-1, 2), Some(q(1)));
        assert_eq!(t.b().coeff(0, -1), Some(q(1)));
        assert_eq!(t.c().coeff(1, 1), Some(q(1)));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_halfline("dz^2", 16).unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.contains("unknown symbol"));
        let e = parse_halfline("(1/x)*\n  dy^2", 16).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("mixed-space"));
        let e = parse_halfline("x^-5*dx^2", 16).unwrap_err();
        assert!(e.message.contains("below minimum"));
        assert!(parse_halfline("1/(1+x)*dx^2", 16)
            .unwrap_err()
            .message
            .contains("monomials"));
        assert!(parse_halfline("2 x", 16).is_err());
        assert!(parse_halfline("x*dx + dx^2", 16)
            .unwrap_err()
            .message
            .contains("mixed tensor degrees"));
        assert!(parse_quadrant("dx^3", 16).is_err());
        assert!(parse_halfline("(1/x", 16).is_err());
    }

    #[test]
    fn plots() {
        assert_eq!(parse_plot("t^2").unwrap(), PlotGerm::square());
        assert_eq!(
            parse_plot("t^4*(1+t)").unwrap(),
            PlotGerm::Boundary {
                m: 2,
                unit: Jet1::from_poly(vec![q(1), q(1)])
            }
        );
        assert!(parse_plot("t^3")
            .unwrap_err()
            .message
            .contains("plot not certified nonnegative"));
        assert!(parse_plot("-t^2")
            .unwrap_err()
            .message
            .contains("plot not certified nonnegative"));
        assert_eq!(parse_plot("flat").unwrap(), PlotGerm::Flat);
        assert_eq!(
            parse_plot("interior(1; 1 + t)").unwrap(),
            PlotGerm::line(q(1), q(1)).unwrap()
        );
        assert_eq!(
            parse_plot("interior(1/2; t)").unwrap(),
            PlotGerm::line(ratio(1, 2), q(1)).unwrap()
        );
        assert_eq!(parse_plot("1 + t").unwrap(), PlotGerm::line(q(1), q(1)).unwrap());
        assert!(parse_plot("interior(1; 2 + t)").is_err());
        assert!(parse_plot("interior(-1; t)").is_err());
    }

    #[test]
    fn functions() {
        assert_eq!(
            parse_function("t^2").unwrap(),
            Representation::Polynomial(vec![q(0), q(0), q(1)])
        );
        assert_eq!(
            parse_function("sos(t^2 - 1; 2*t)").unwrap(),
            Representation::SumOfSquares(vec![vec![q(-1), q(0), q(1)], vec![q(0), q(2)]])
        );
        assert_eq!(parse_rational("-7/3").unwrap(), ratio(-7, 3));
        assert!(parse_rational("x").is_err());
    }
}
