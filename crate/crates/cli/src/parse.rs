//! Map formulas: `(x, y) -> (e1, e2)`, `[x0:x1:x2] -> [e0 : e1 : e2]` and
//! `[x0:x1;y0:y1] -> [e0 : e1 ; e2 : e3]`.
//!
//! Expressions use `+ - * / ^`, parentheses, integer and decimal literals and the imaginary
//! unit `i`. Juxtaposition multiplies, so `2x` is `2*x`. Exponents are integer literals.

use std::fmt;

use cremona_core::algebra::{Poly, RationalFunction, Scalar, VarSet};
use cremona_core::birational::{CremonaMap, JonquieresElement, P1xP1Map};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("non-integer exponent")]
    NonIntegerExponent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("component is not a polynomial")]
    NotPolynomial,
    #[error("negative exponent in a polynomial")]
    NegativeExponent,
    #[error("variables must be distinct")]
    DuplicateVariable,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(&'static str),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number '{s}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(s) => write!(f, "'{s}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, column: c0 });
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            k += 1;
            column += 1;
            continue;
        }
        let start = k;
        if c.is_ascii_digit() || (c == '.' && chars.get(k + 1).is_some_and(|d| d.is_ascii_digit())) {
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            push(&mut out, Tok::Num(chars[start..k].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            push(&mut out, Tok::Ident(chars[start..k].iter().collect()));
        } else if c == '-' && chars.get(k + 1) == Some(&'>') {
            k += 2;
            push(&mut out, Tok::Sym("->"));
        } else {
            let sym = match c {
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                ',' => ",",
                ':' => ":",
                ';' => ";",
                '+' => "+",
                '-' => "-",
                '*' => "*",
                '/' => "/",
                '^' => "^",
                _ => return Err(ParseError { line, column, kind: ParseErrorKind::UnexpectedChar(c) }),
            };
            k += 1;
            push(&mut out, Tok::Sym(sym));
        }
        column += k - start;
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// Exact value of a decimal or integer literal.
fn literal(s: &str) -> Option<Scalar> {
    match s.split_once('.') {
        None => s.parse().ok(),
        Some((int, frac)) => {
            if frac.contains('.') {
                return None;
            }
            let digits = format!("{int}{frac}");
            let den = format!("1{}", "0".repeat(frac.len()));
            format!("{}/{den}", if digits.is_empty() { "0" } else { &digits }).parse().ok()
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: VarSet,
    names: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn err_at(t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { line: t.line, column: t.column, kind }
    }

    fn expected(&self, what: &str) -> ParseError {
        let t = self.peek();
        Self::err_at(t, ParseErrorKind::Expected { expected: what.into(), found: t.tok.to_string() })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Sym(s) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> PResult<()> {
        if self.eat(sym) { Ok(()) } else { Err(self.expected(&format!("'{sym}'"))) }
    }

    fn ident(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.expected("a variable name")),
        }
    }

    fn expr(&mut self) -> PResult<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = &acc + &self.term()?;
            } else if self.eat("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(&self.peek().tok, Tok::Num(_) | Tok::Ident(_) | Tok::Sym("("))
    }

    fn term(&mut self) -> PResult<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = &acc * &self.unary()?;
            } else if matches!(&self.peek().tok, Tok::Sym("/")) {
                let at = self.peek().clone();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Self::err_at(&at, ParseErrorKind::ZeroDenominator))?;
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<RationalFunction> {
        if self.eat("-") {
            Ok(-&self.unary()?)
        } else if self.eat("+") {
            self.unary()
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> PResult<i32> {
        let paren = self.eat("(");
        let neg = self.eat("-");
        let t = self.peek().clone();
        let e = match &t.tok {
            Tok::Num(s) if !s.contains('.') => {
                s.parse::<i32>().map_err(|_| Self::err_at(&t, ParseErrorKind::Invalid("exponent too large".into())))?
            }
            Tok::Num(_) | Tok::Ident(_) | Tok::Sym("(") => {
                return Err(Self::err_at(&t, ParseErrorKind::NonIntegerExponent));
            }
            _ => return Err(self.expected("an integer exponent")),
        };
        self.pos += 1;
        if paren && !self.eat(")") {
            return Err(Self::err_at(self.peek(), ParseErrorKind::NonIntegerExponent));
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> PResult<RationalFunction> {
        let base = self.atom()?;
        if !matches!(&self.peek().tok, Tok::Sym("^")) {
            return Ok(base);
        }
        let at = self.peek().clone();
        self.pos += 1;
        let e = self.exponent()?;
        base.powi(e).map_err(|_| Self::err_at(&at, ParseErrorKind::ZeroDenominator))
    }

    fn atom(&mut self) -> PResult<RationalFunction> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(s) => {
                self.pos += 1;
                let v = literal(s).ok_or_else(|| Self::err_at(&t, ParseErrorKind::Invalid(format!("bad number '{s}'"))))?;
                Ok(RationalFunction::constant(self.vars, v))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if let Some(k) = self.names.iter().position(|n| n == name) {
                    Ok(RationalFunction::var(self.vars, k))
                } else if name == "i" {
                    Ok(RationalFunction::constant(self.vars, Scalar::i()))
                } else {
                    Err(Self::err_at(&t, ParseErrorKind::UnknownVariable(name.clone())))
                }
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.expected("an expression")),
        }
    }

    /// A component that must be a polynomial.
    fn poly(&mut self) -> PResult<Poly> {
        let at = self.peek().clone();
        let r = self.expr()?;
        let c = r.den().as_constant().ok_or_else(|| Self::err_at(&at, ParseErrorKind::NotPolynomial))?;
        Ok(r.num().scale(&c.inv().expect("nonzero denominator")))
    }

    fn end(&mut self) -> PResult<()> {
        if matches!(self.peek().tok, Tok::End) { Ok(()) } else { Err(self.expected("end of input")) }
    }
}

/// The parsed form of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapForm {
    Affine(RationalFunction, RationalFunction),
    Proj2([Poly; 3]),
    Biproj([Poly; 4]),
}

/// Which coordinate model a formula is written in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ModelTag {
    Affine,
    Proj2,
    Biproj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapExpression {
    pub source: String,
    pub form: MapForm,
}

impl MapExpression {
    pub fn model(&self) -> ModelTag {
        match self.form {
            MapForm::Affine(..) => ModelTag::Affine,
            MapForm::Proj2(_) => ModelTag::Proj2,
            MapForm::Biproj(_) => ModelTag::Biproj,
        }
    }

    /// The map as a plane Cremona map.
    pub fn to_cremona(&self) -> cremona_core::Result<CremonaMap> {
        match &self.form {
            MapForm::Affine(r1, r2) => CremonaMap::from_affine(r1, r2),
            MapForm::Proj2(c) => CremonaMap::new(c.clone()),
            MapForm::Biproj(c) => {
                let (r1, r2) = P1xP1Map::new(c.clone())?.to_affine()?;
                CremonaMap::from_affine(&r1, &r2)
            }
        }
    }

    pub fn to_p1xp1(&self) -> cremona_core::Result<P1xP1Map> {
        match &self.form {
            MapForm::Biproj(c) => P1xP1Map::new(c.clone()),
            _ => {
                let (r1, r2) = self.affine()?;
                P1xP1Map::from_affine(&r1, &r2)
            }
        }
    }

    /// The affine formulas of the map.
    pub fn affine(&self) -> cremona_core::Result<(RationalFunction, RationalFunction)> {
        match &self.form {
            MapForm::Affine(r1, r2) => Ok((r1.clone(), r2.clone())),
            MapForm::Proj2(c) => CremonaMap::new(c.clone())?.to_affine(),
            MapForm::Biproj(c) => P1xP1Map::new(c.clone())?.to_affine(),
        }
    }

    pub fn to_jonquieres(&self) -> cremona_core::Result<JonquieresElement> {
        let (r1, r2) = self.affine()?;
        JonquieresElement::from_affine(&r1, &r2)
    }

    /// Canonical text; parsing it gives back the same form.
    pub fn printed(&self) -> String {
        self.form.to_string()
    }
}

impl fmt::Display for MapForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapForm::Affine(a, b) => write!(f, "(x, y) -> ({a}, {b})"),
            MapForm::Proj2([a, b, c]) => write!(f, "[x0:x1:x2] -> [{a} : {b} : {c}]"),
            MapForm::Biproj([a, b, c, d]) => write!(f, "[x0:x1;y0:y1] -> [{a} : {b} ; {c} : {d}]"),
        }
    }
}

fn header(p: &mut Parser, open: &str, seps: &[&str], close: &str) -> PResult<Vec<String>> {
    p.expect(open)?;
    let mut names = vec![p.ident()?];
    for s in seps {
        p.expect(s)?;
        names.push(p.ident()?);
    }
    p.expect(close)?;
    let at = p.toks[p.pos - 1].clone();
    for (k, n) in names.iter().enumerate() {
        if names[..k].contains(n) || n == "i" {
            return Err(Parser::err_at(&at, ParseErrorKind::DuplicateVariable));
        }
    }
    Ok(names)
}

pub fn parse_map(text: &str) -> Result<MapExpression, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars: VarSet::Affine, names: Vec::new() };
    let form = if matches!(p.peek().tok, Tok::Sym("(")) {
        p.names = header(&mut p, "(", &[","], ")")?;
        p.expect("->")?;
        p.expect("(")?;
        let a = p.expr()?;
        p.expect(",")?;
        let b = p.expr()?;
        p.expect(")")?;
        MapForm::Affine(a, b)
    } else if matches!(p.peek().tok, Tok::Sym("[")) {
        let save = p.pos;
        let proj2 = header(&mut p, "[", &[":", ":"], "]");
        match proj2 {
            Ok(names) => {
                p.vars = VarSet::P2;
                p.names = names;
                p.expect("->")?;
                p.expect("[")?;
                let a = p.poly()?;
                p.expect(":")?;
                let b = p.poly()?;
                p.expect(":")?;
                let c = p.poly()?;
                p.expect("]")?;
                MapForm::Proj2([a, b, c])
            }
            Err(_) => {
                p.pos = save;
                p.vars = VarSet::Bihomogeneous;
                p.names = header(&mut p, "[", &[":", ";", ":"], "]")?;
                p.expect("->")?;
                p.expect("[")?;
                let a = p.poly()?;
                p.expect(":")?;
                let b = p.poly()?;
                p.expect(";")?;
                let c = p.poly()?;
                p.expect(":")?;
                let d = p.poly()?;
                p.expect("]")?;
                MapForm::Biproj([a, b, c, d])
            }
        }
    } else {
        return Err(p.expected("'(' or '['"));
    };
    p.end()?;
    Ok(MapExpression { source: text.into(), form })
}

/// Parses a rational expression in the given variables.
pub fn parse_expr(text: &str, vars: VarSet, names: &[&str]) -> Result<RationalFunction, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars, names: names.iter().map(|s| s.to_string()).collect() };
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses a constant expression such as `1/2`, `3i` or `-2+i`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let r = parse_expr(text, VarSet::X, &[])?;
    let c = r.as_constant().expect("no variables");
    Ok(c)
}

/// Parses `a, b, c` into scalars.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>, ParseError> {
    text.split(',').map(parse_scalar).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_jonquieres() {
        let m = parse_map("(x,y) -> (2*x, x^2*y)").unwrap();
        let j = m.to_jonquieres().unwrap();
        assert_eq!(j.fiber_degree(), 2);
        assert_eq!(m.printed(), "(x, y) -> (2*x, x^2*y)");
    }

    #[test]
    fn standard_involution() {
        let m = parse_map("[x0:x1:x2] -> [x1*x2 : x0*x2 : x0*x1]").unwrap();
        assert_eq!(m.to_cremona().unwrap().degree(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_map("(x,y) -> (x/0, y)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!((e.line, e.column), (1, 12));
        let e = parse_map("(x,y) ->\n (x^y, y)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
        assert_eq!((e.line, e.column), (2, 5));
        assert_eq!(parse_map("(x,y) -> (x^1.5, y)").unwrap_err().kind, ParseErrorKind::NonIntegerExponent);
        assert!(matches!(parse_map("(x,y) -> (z, y)").unwrap_err().kind, ParseErrorKind::UnknownVariable(_)));
        assert_eq!(parse_map("[x:y:z] -> [1/x : y : z]").unwrap_err().kind, ParseErrorKind::NotPolynomial);
    }

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("1/2").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(parse_scalar("0.25").unwrap(), Scalar::ratio(1, 4));
        assert_eq!(parse_scalar("3i").unwrap(), Scalar::gaussian(0, 3));
        assert_eq!(parse_scalar("-2+i").unwrap(), Scalar::gaussian(-2, 1));
    }
}
