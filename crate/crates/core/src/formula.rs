//! Modal formulas over a countable set of variables, with the connectives
//! `~`, `&`, `[]`, `<>`. The derived connectives `|`, `->`, `<->` desugar at
//! construction time; `<>` stays primitive in the tree (its semantics is
//! `~[]~`), which keeps subformula sets small and printable.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A modal formula. Trees are finite; `Or`, `->`, `<->` never appear (they
/// desugar to `Not`/`And` when built or parsed).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Var(String),
    Not(std::boxed::Box<Formula>),
    And(std::boxed::Box<Formula>, std::boxed::Box<Formula>),
    Box(std::boxed::Box<Formula>),
    Dia(std::boxed::Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(f.into())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(l.into(), r.into())
    }

    /// `l | r`, desugared as `~(~l & ~r)`.
    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    /// `l -> r`, desugared as `~(l & ~r)`.
    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    /// `l <-> r`, desugared as `(l -> r) & (r -> l)`.
    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::and(
            Formula::imp(l.clone(), r.clone()),
            Formula::imp(r, l),
        )
    }

    pub fn bx(f: Formula) -> Formula {
        Formula::Box(f.into())
    }

    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(f.into())
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(f) | Formula::Box(f) | Formula::Dia(f) => 1 + f.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Maximal nesting of `[]`/`<>`.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(l, r) => l.modal_depth().max(r.modal_depth()),
            Formula::Box(f) | Formula::Dia(f) => 1 + f.modal_depth(),
        }
    }

    /// Variables occurring in the formula, sorted and deduplicated.
    pub fn vars(&self) -> Vec<String> {
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Var(p) => out.push(p.clone()),
                Formula::Not(g) | Formula::Box(g) | Formula::Dia(g) => walk(g, out),
                Formula::And(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut vs = Vec::new();
        walk(self, &mut vs);
        vs.sort();
        vs.dedup();
        vs
    }
}

/// n-fold application of a modal operator: `iterate(Box, 0, f) = f` and
/// `iterate(Box, n+1, f) = [] iterate(Box, n, f)`.
pub fn iterate(op: ModalOp, n: usize, f: Formula) -> Formula {
    let mut out = f;
    for _ in 0..n {
        out = match op {
            ModalOp::Box => Formula::bx(out),
            ModalOp::Dia => Formula::dia(out),
        };
    }
    out
}

/// The set of subformulas, closed under subformula and containing `f`
/// itself, in post-order with duplicates removed.
pub fn subformulas(f: &Formula) -> Vec<Formula> {
    fn walk(f: &Formula, out: &mut Vec<Formula>) {
        match f {
            Formula::Var(_) => {}
            Formula::Not(g) | Formula::Box(g) | Formula::Dia(g) => walk(g, out),
            Formula::And(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}

/// One symbol of a modality word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ModalOp {
    Box,
    Dia,
}

/// A proper affirmative modality: a nonempty word over `{[], <>}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Modality(Vec<ModalOp>);

impl Modality {
    pub fn new(word: Vec<ModalOp>) -> Result<Modality> {
        if word.is_empty() {
            return Err(Error::EmptyModality);
        }
        Ok(Modality(word))
    }

    pub fn word(&self) -> &[ModalOp] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Apply the word to `f`, leftmost symbol outermost:
    /// `[<>, []]` applied to `p` is `<>[]p`.
    pub fn apply(&self, f: Formula) -> Formula {
        let mut out = f;
        for op in self.0.iter().rev() {
            out = match op {
                ModalOp::Box => Formula::bx(out),
                ModalOp::Dia => Formula::dia(out),
            };
        }
        out
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            match op {
                ModalOp::Box => write!(f, "[]")?,
                ModalOp::Dia => write!(f, "<>")?,
            }
        }
        Ok(())
    }
}

/// Apply a modality word to a formula (see [`Modality::apply`]).
pub fn apply_modality(m: &Modality, f: Formula) -> Formula {
    m.apply(f)
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `&` is the only binary connective after desugaring, and parses
        // left-associatively; a right operand that is itself an `&` chain
        // needs parentheses, as does any `&` under a unary operator.
        fn write_unary(g: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if matches!(g, Formula::And(_, _)) {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            Formula::Var(p) => write!(f, "{p}"),
            Formula::Not(g) => {
                write!(f, "~")?;
                write_unary(g, f)
            }
            Formula::Box(g) => {
                write!(f, "[]")?;
                write_unary(g, f)
            }
            Formula::Dia(g) => {
                write!(f, "<>")?;
                write_unary(g, f)
            }
            Formula::And(l, r) => {
                write!(f, "{l} & ")?;
                write_unary(r, f)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Debug)]
enum Token {
    Ident(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    BoxTok,
    DiaTok,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Token)>> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_whitespace() {
                lx.pos += 1;
            }
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let tok = lx.next_token()?;
            out.push((start, tok));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Token> {
        let b = self.src[self.pos];
        let err = |pos, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
        match b {
            b'~' => {
                self.pos += 1;
                Ok(Token::Tilde)
            }
            b'&' => {
                self.pos += 1;
                Ok(Token::Amp)
            }
            b'|' => {
                self.pos += 1;
                Ok(Token::Pipe)
            }
            b'(' => {
                self.pos += 1;
                Ok(Token::LParen)
            }
            b')' => {
                self.pos += 1;
                Ok(Token::RParen)
            }
            b'[' => {
                if self.src.get(self.pos + 1) == Some(&b']') {
                    self.pos += 2;
                    Ok(Token::BoxTok)
                } else {
                    Err(err(self.pos, "expected `[]`"))
                }
            }
            b'<' => {
                if self.src.get(self.pos + 1) == Some(&b'>') {
                    self.pos += 2;
                    Ok(Token::DiaTok)
                } else if self.src.get(self.pos + 1) == Some(&b'-')
                    && self.src.get(self.pos + 2) == Some(&b'>')
                {
                    self.pos += 3;
                    Ok(Token::DoubleArrow)
                } else {
                    Err(err(self.pos, "expected `<>` or `<->`"))
                }
            }
            b'-' => {
                if self.src.get(self.pos + 1) == Some(&b'>') {
                    self.pos += 2;
                    Ok(Token::Arrow)
                } else {
                    Err(err(self.pos, "expected `->`"))
                }
            }
            b'a'..=b'z' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase()
                        || self.src[self.pos].is_ascii_digit()
                        || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Token::Ident(name.to_string()))
            }
            _ => Err(err(self.pos, "unexpected character")),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].1.clone();
        self.at += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos(), msg: msg.to_string() }
    }

    // implish ::= orish ( "->" implish | "<->" implish )?
    fn implish(&mut self) -> Result<Formula> {
        let lhs = self.orish()?;
        match self.peek() {
            Some(Token::Arrow) => {
                self.bump();
                let rhs = self.implish()?;
                Ok(Formula::imp(lhs, rhs))
            }
            Some(Token::DoubleArrow) => {
                self.bump();
                let rhs = self.implish()?;
                Ok(Formula::iff(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    // orish ::= andish ( "|" andish )*
    fn orish(&mut self) -> Result<Formula> {
        let mut f = self.andish()?;
        while self.peek() == Some(&Token::Pipe) {
            self.bump();
            let rhs = self.andish()?;
            f = Formula::or(f, rhs);
        }
        Ok(f)
    }

    // andish ::= unary ( "&" unary )*
    fn andish(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Token::Amp) {
            self.bump();
            let rhs = self.unary()?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    // unary ::= "~" unary | "[]" unary | "<>" unary | atom
    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Token::Tilde) => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::BoxTok) => {
                self.bump();
                Ok(Formula::bx(self.unary()?))
            }
            Some(Token::DiaTok) => {
                self.bump();
                Ok(Formula::dia(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    // atom ::= ident | "(" formula ")"
    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Token::Ident(_)) => {
                if let Token::Ident(name) = self.bump() {
                    Ok(Formula::Var(name))
                } else {
                    unreachable!()
                }
            }
            Some(Token::LParen) => {
                self.bump();
                let f = self.implish()?;
                if self.peek() == Some(&Token::RParen) {
                    self.bump();
                    Ok(f)
                } else {
                    Err(self.err("expected `)`"))
                }
            }
            Some(_) => Err(self.err("expected a variable, `(`, or a unary operator")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a formula in the ASCII grammar. `->` is right-associative, unary
/// operators bind tightest, `&` binds tighter than `|` which binds tighter
/// than `->`/`<->`.
pub fn parse(text: &str) -> Result<Formula> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let f = p.implish()?;
    if p.at != p.toks.len() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}
