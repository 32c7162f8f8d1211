//! Expression language: lexer, recursive-descent parser and printer.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('(*)' | '(^)') factor)*
//! factor  := scalar '*' factor | '-' factor | atom | literal
//!          | '{' expr ',' expr '}' | '(' expr ')' | '[' expr (';' expr)* ']'
//!          | ('cos' | 'sin') '(' integer? 'phi' ')'
//! scalar  := literal | 'hbar'
//! literal := integer ('/' integer)? 'i'? | 'i'
//! atom    := 'pi_'k | 'q^'k ('_'k)? | 'I_'k | 'x' | 'y' | 'p' | 'x1' | 'x2' | 'x3'
//!          | 'y1' | 'y2' | 'y3' | 'z' | 'w' | 'hbar'
//! ```
//!
//! Printing inserts the parentheses needed to parse back to the same tree.

use std::fmt;

use num_traits::One;

use crate::exact::Rational;
use crate::{Error, Result};

/// Named generator or coordinate; indices are 1-based as written.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Atom {
    Pi(usize),
    Q(usize),
    QFull(usize, usize),
    Unit(usize),
    X,
    Y,
    P,
    Spin(usize),
    SphereSpin(usize),
    Z,
    W,
    Hbar,
}

/// Nonnegative real or imaginary rational literal.
#[derive(Clone, PartialEq, Debug)]
pub enum Literal {
    Real(Rational),
    Imag(Rational),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Lit(Literal),
    Hbar,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrigFn {
    Cos,
    Sin,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Atom(Atom),
    Lit(Literal),
    Trig(TrigFn, u32),
    Neg(Box<Expr>),
    Scaled(Scalar, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Sym(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Components(Vec<Expr>),
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Num { value: u64, imag: bool },
    Plus,
    Minus,
    Star,
    Slash,
    SymOp,
    WedgeOp,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num { value, imag } => write!(f, "`{value}{}`", if *imag { "i" } else { "" }),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::SymOp => write!(f, "`(*)`"),
            Tok::WedgeOp => write!(f, "`(^)`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut k, mut line, mut column) = (0, 1, 1);
    while k < chars.len() {
        let pos = Pos { line, column };
        let c = chars[k];
        let mut advance = |n: usize, k: &mut usize| {
            *k += n;
            column += n;
        };
        if c == '\n' {
            k += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut k);
            continue;
        }
        let three: String = chars[k..(k + 3).min(chars.len())].iter().collect();
        if three == "(*)" || three == "(^)" {
            out.push((if three == "(*)" { Tok::SymOp } else { Tok::WedgeOp }, pos));
            advance(3, &mut k);
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let value = digits
                .parse::<u64>()
                .map_err(|_| syntax(pos, format!("number `{digits}` is too large")))?;
            let imag = k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|c| is_ident(*c));
            if imag {
                k += 1;
            }
            column += k - start;
            out.push((Tok::Num { value, imag }, pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && is_ident(chars[k]) {
                k += 1;
            }
            column += k - start;
            out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        advance(1, &mut k);
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^'
}

fn index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn atom(name: &str) -> Option<Atom> {
    let simple = match name {
        "x" => Some(Atom::X),
        "y" => Some(Atom::Y),
        "p" => Some(Atom::P),
        "z" => Some(Atom::Z),
        "w" => Some(Atom::W),
        "hbar" => Some(Atom::Hbar),
        "x1" | "x2" | "x3" => Some(Atom::Spin(name[1..].parse().ok()?)),
        "y1" | "y2" | "y3" => Some(Atom::SphereSpin(name[1..].parse().ok()?)),
        _ => None,
    };
    if simple.is_some() {
        return simple;
    }
    if let Some(rest) = name.strip_prefix("pi_") {
        return index(rest).map(Atom::Pi);
    }
    if let Some(rest) = name.strip_prefix("I_") {
        return index(rest).map(Atom::Unit);
    }
    if let Some(rest) = name.strip_prefix("q^") {
        return match rest.split_once('_') {
            Some((a, b)) => Some(Atom::QFull(index(a)?, index(b)?)),
            None => index(rest).map(Atom::Q),
        };
    }
    None
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<()> {
        let (t, pos) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(syntax(pos, format!("expected {want} {context}, found {t}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::SymOp => {
                    self.bump();
                    lhs = Expr::Sym(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::WedgeOp => {
                    self.bump();
                    lhs = Expr::Wedge(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn literal(&mut self, first: u64, imag: bool) -> Result<Literal> {
        let mut value = Rational::from_integer(first.into());
        let mut imag = imag;
        if !imag && *self.peek() == Tok::Slash {
            self.bump();
            let (t, p) = self.bump();
            match t {
                Tok::Num { value: 0, .. } => return Err(syntax(p, "division by zero in literal")),
                Tok::Num { value: d, imag: im } => {
                    value /= Rational::from_integer(d.into());
                    imag = im;
                }
                other => return Err(syntax(p, format!("expected a denominator, found {other}"))),
            }
        }
        Ok(if imag { Literal::Imag(value) } else { Literal::Real(value) })
    }

    fn scaled_or(&mut self, scalar: Scalar, bare: Expr) -> Result<Expr> {
        if *self.peek() == Tok::Star {
            self.bump();
            Ok(Expr::Scaled(scalar, Box::new(self.factor()?)))
        } else {
            Ok(bare)
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let (t, pos) = self.bump();
        match t {
            Tok::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::Num { value, imag } => {
                let lit = self.literal(value, imag)?;
                self.scaled_or(Scalar::Lit(lit.clone()), Expr::Lit(lit))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "to close `(`")?;
                Ok(e)
            }
            Tok::LBrace => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "between bracket arguments")?;
                let b = self.expr()?;
                self.expect(Tok::RBrace, "to close `{`")?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::LBracket => {
                let mut items = vec![self.expr()?];
                while *self.peek() == Tok::Semi {
                    self.bump();
                    items.push(self.expr()?);
                }
                self.expect(Tok::RBracket, "to close `[`")?;
                Ok(Expr::Components(items))
            }
            Tok::Ident(name) => self.ident(name, pos),
            other => Err(syntax(pos, format!("expected an operand, found {other}"))),
        }
    }

    fn ident(&mut self, name: String, pos: Pos) -> Result<Expr> {
        match name.as_str() {
            "i" => {
                let lit = Literal::Imag(Rational::one());
                self.scaled_or(Scalar::Lit(lit.clone()), Expr::Lit(lit))
            }
            "hbar" => self.scaled_or(Scalar::Hbar, Expr::Atom(Atom::Hbar)),
            "cos" | "sin" => {
                let f = if name == "cos" { TrigFn::Cos } else { TrigFn::Sin };
                self.expect(Tok::LParen, &format!("after `{name}`"))?;
                let mut mode = 1;
                if let Tok::Num { value, imag: false } = *self.peek() {
                    let p = self.pos();
                    self.bump();
                    mode = u32::try_from(value).ok().filter(|m| *m > 0).ok_or_else(|| syntax(p, "mode must be a positive integer"))?;
                    if *self.peek() == Tok::Star {
                        self.bump();
                    }
                }
                let (t, p) = self.bump();
                if t != Tok::Ident("phi".into()) {
                    return Err(syntax(p, format!("expected `phi`, found {t}")));
                }
                self.expect(Tok::RParen, &format!("to close `{name}(`"))?;
                Ok(Expr::Trig(f, mode))
            }
            _ => match atom(&name) {
                Some(a) => Ok(Expr::Atom(a)),
                None => Err(Error::UnknownSymbol(format!("{name} at {}:{}", pos.line, pos.column))),
            },
        }
    }
}

/// Parses one expression.
pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(input)?, at: 0 };
    let e = p.expr()?;
    let (t, pos) = p.bump();
    if t != Tok::End {
        return Err(syntax(pos, format!("unexpected {t} after a complete expression")));
    }
    Ok(e)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pi(k) => write!(f, "pi_{k}"),
            Atom::Q(k) => write!(f, "q^{k}"),
            Atom::QFull(a, b) => write!(f, "q^{a}_{b}"),
            Atom::Unit(k) => write!(f, "I_{k}"),
            Atom::X => write!(f, "x"),
            Atom::Y => write!(f, "y"),
            Atom::P => write!(f, "p"),
            Atom::Spin(k) => write!(f, "x{k}"),
            Atom::SphereSpin(k) => write!(f, "y{k}"),
            Atom::Z => write!(f, "z"),
            Atom::W => write!(f, "w"),
            Atom::Hbar => write!(f, "hbar"),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, imag) = match self {
            Literal::Real(r) => (r, false),
            Literal::Imag(r) => (r, true),
        };
        if imag && r.is_one() {
            return write!(f, "i");
        }
        write!(f, "{}", r.numer())?;
        if !r.denom().is_one() {
            write!(f, "/{}", r.denom())?;
        }
        if imag {
            write!(f, "i")?;
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Lit(l) => write!(f, "{l}"),
            Scalar::Hbar => write!(f, "hbar"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Term,
    Factor,
}

impl Expr {
    fn level(&self) -> Level {
        match self {
            Expr::Add(..) | Expr::Sub(..) => Level::Sum,
            Expr::Sym(..) | Expr::Wedge(..) => Level::Term,
            _ => Level::Factor,
        }
    }

    fn print_at(&self, need: Level) -> String {
        let body = self.to_string();
        if self.level() < need {
            format!("({body})")
        } else {
            body
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Lit(l) => write!(f, "{l}"),
            Expr::Trig(t, m) => {
                let name = if *t == TrigFn::Cos { "cos" } else { "sin" };
                if *m == 1 {
                    write!(f, "{name}(phi)")
                } else {
                    write!(f, "{name}({m}*phi)")
                }
            }
            Expr::Neg(e) => write!(f, "-{}", e.print_at(Level::Factor)),
            Expr::Scaled(s, e) => write!(f, "{s} * {}", e.print_at(Level::Factor)),
            Expr::Add(a, b) => write!(f, "{} + {}", a.print_at(Level::Sum), b.print_at(Level::Term)),
            Expr::Sub(a, b) => write!(f, "{} - {}", a.print_at(Level::Sum), b.print_at(Level::Term)),
            Expr::Sym(a, b) => write!(f, "{} (*) {}", a.print_at(Level::Term), b.print_at(Level::Factor)),
            Expr::Wedge(a, b) => write!(f, "{} (^) {}", a.print_at(Level::Term), b.print_at(Level::Factor)),
            Expr::Bracket(a, b) => write!(f, "{{{a}, {b}}}"),
            Expr::Components(items) => {
                let parts: Vec<String> = items.iter().map(|e| e.to_string()).collect();
                write!(f, "[{}]", parts.join("; "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn symmetric_product_of_atoms() {
        let e = parse("pi_1 (*) q^1").unwrap();
        assert_eq!(e, Expr::Sym(Box::new(Expr::Atom(Atom::Pi(1))), Box::new(Expr::Atom(Atom::Q(1)))));
    }

    #[test]
    fn bracket_node() {
        let e = parse("{pi_1, q^2}").unwrap();
        assert_eq!(e, Expr::Bracket(Box::new(Expr::Atom(Atom::Pi(1))), Box::new(Expr::Atom(Atom::Q(2)))));
    }

    #[test]
    fn doubled_operator_is_a_syntax_error() {
        match parse("pi_1 (*) (*) q^1") {
            Err(Error::Syntax { line: 1, column: 10, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn positions_track_lines() {
        match parse("pi_1 +\n  (*)") {
            Err(Error::Syntax { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_symbols() {
        assert!(matches!(parse("pi_a"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse("foo + x"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn literals_and_scales() {
        let e = parse("1/2i * x - 3 * hbar * y").unwrap();
        let expect = Expr::Sub(
            Box::new(Expr::Scaled(Scalar::Lit(Literal::Imag(rat(1, 2))), Box::new(Expr::Atom(Atom::X)))),
            Box::new(Expr::Scaled(
                Scalar::Lit(Literal::Real(rat(3, 1))),
                Box::new(Expr::Scaled(Scalar::Hbar, Box::new(Expr::Atom(Atom::Y)))),
            )),
        );
        assert_eq!(e, expect);
        assert_eq!(parse("cos(2phi) (*) q^1").unwrap().to_string(), "cos(2*phi) (*) q^1");
        assert_eq!(parse("[q^1; 2 * q^2]").unwrap().to_string(), "[q^1; 2 * q^2]");
    }

    fn arb_literal() -> impl Strategy<Value = Literal> {
        (0i64..7, 1i64..5, any::<bool>()).prop_map(|(n, d, im)| {
            if im {
                Literal::Imag(rat(n, d))
            } else {
                Literal::Real(rat(n, d))
            }
        })
    }

    fn arb_atom() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1usize..4).prop_map(Atom::Pi),
            (1usize..4).prop_map(Atom::Q),
            (1usize..4, 1usize..4).prop_map(|(a, b)| Atom::QFull(a, b)),
            (1usize..4).prop_map(Atom::Unit),
            Just(Atom::X),
            Just(Atom::P),
            (1usize..4).prop_map(Atom::Spin),
            (1usize..4).prop_map(Atom::SphereSpin),
            Just(Atom::Hbar),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            arb_atom().prop_map(Expr::Atom),
            arb_literal().prop_map(Expr::Lit),
            (any::<bool>(), 1u32..4).prop_map(|(c, m)| Expr::Trig(if c { TrigFn::Cos } else { TrigFn::Sin }, m)),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            let b = |e: Expr| Box::new(e);
            prop_oneof![
                inner.clone().prop_map(move |e| Expr::Neg(b(e))),
                (arb_literal(), inner.clone()).prop_map(move |(l, e)| Expr::Scaled(Scalar::Lit(l), b(e))),
                inner.clone().prop_map(move |e| Expr::Scaled(Scalar::Hbar, b(e))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sym(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Wedge(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Bracket(b(x), b(y))),
                proptest::collection::vec(inner, 1..3).prop_map(Expr::Components),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e, "printed: {}", printed);
        }
    }
}
