//! Terms over the signature {∧, ∨, ·, \, /, 0, 1} with the derived
//! negations, and (in)equational identities between them.
//!
//! Concrete syntax, loosest binding first:
//!
//! | level     | operators                         | associativity          |
//! |-----------|-----------------------------------|------------------------|
//! | lattice   | `^` (meet), `v` (join)            | left; no mixing        |
//! | division  | `\`, `/`                          | none                   |
//! | product   | `*`                               | left                   |
//! | negation  | prefix `~` (left), `-` (right)    | nests                  |
//!
//! Atoms are identifiers (any except `v`), `0`, `1` and parenthesized terms.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::element::Element;
use crate::error::KiteError;
use crate::ops::BinOp;
use crate::shape::Shape;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    LNeg(Box<Term>),
    RNeg(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    pub fn lneg(a: Term) -> Term {
        Term::LNeg(Box::new(a))
    }

    pub fn rneg(a: Term) -> Term {
        Term::RNeg(Box::new(a))
    }

    pub fn binary(op: BinOp, a: Term, b: Term) -> Term {
        match op {
            BinOp::Meet => Term::meet(a, b),
            BinOp::Join => Term::join(a, b),
            BinOp::Mul => Term::mul(a, b),
            BinOp::LDiv => Term::ldiv(a, b),
            BinOp::RDiv => Term::rdiv(a, b),
        }
    }

    /// Variable names occurring in the term.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) | Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::LNeg(a) | Term::RNeg(a) => a.collect_vars(out),
        }
    }

    /// Evaluates the term in `shape`, looking variables up with `env`.
    pub fn eval<'a, F>(&self, shape: &Shape, env: &F) -> Result<Element, KiteError>
    where
        F: Fn(&str) -> Option<&'a Element>,
    {
        let bin = |op: BinOp, a: &Term, b: &Term| -> Result<Element, KiteError> {
            let x = a.eval(shape, env)?;
            let y = b.eval(shape, env)?;
            shape.apply(op, &x, &y)
        };
        match self {
            Term::Var(v) => {
                let x = env(v).ok_or_else(|| KiteError::UnboundVariable(v.clone()))?;
                shape.conforms(x)?;
                Ok(x.clone())
            }
            Term::Zero => Ok(shape.zero()),
            Term::One => Ok(shape.one()),
            Term::Meet(a, b) => bin(BinOp::Meet, a, b),
            Term::Join(a, b) => bin(BinOp::Join, a, b),
            Term::Mul(a, b) => bin(BinOp::Mul, a, b),
            Term::LDiv(a, b) => bin(BinOp::LDiv, a, b),
            Term::RDiv(a, b) => bin(BinOp::RDiv, a, b),
            Term::LNeg(a) => shape.lneg(&a.eval(shape, env)?),
            Term::RNeg(a) => shape.rneg(&a.eval(shape, env)?),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Meet(..) | Term::Join(..) => 0,
            Term::LDiv(..) | Term::RDiv(..) => 1,
            Term::Mul(..) => 2,
            Term::LNeg(_) | Term::RNeg(_) => 3,
            Term::Var(_) | Term::Zero | Term::One => 4,
        }
    }
}

/// Evaluates `t` with variables bound by name.
pub fn eval_term(shape: &Shape, t: &Term, env: &[(&str, Element)]) -> Result<Element, KiteError> {
    t.eval(shape, &|name: &str| {
        env.iter().find(|(n, _)| *n == name).map(|(_, x)| x)
    })
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &Term, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Meet(a, b) | Term::Join(a, b) => {
                let same = |t: &Term| core::mem::discriminant(t) == core::mem::discriminant(self);
                write_operand(f, a, a.level() == 0 && !same(a))?;
                f.write_str(if matches!(self, Term::Meet(..)) { " ^ " } else { " v " })?;
                write_operand(f, b, b.level() == 0)
            }
            Term::LDiv(a, b) | Term::RDiv(a, b) => {
                write_operand(f, a, a.level() < 2)?;
                f.write_str(if matches!(self, Term::LDiv(..)) { "\\" } else { "/" })?;
                write_operand(f, b, b.level() < 2)
            }
            Term::Mul(a, b) => {
                write_operand(f, a, a.level() < 2)?;
                f.write_str("*")?;
                write_operand(f, b, b.level() < 3)
            }
            Term::LNeg(a) | Term::RNeg(a) => {
                f.write_str(if matches!(self, Term::LNeg(_)) { "~" } else { "-" })?;
                write_operand(f, a, a.level() < 3)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equation,
    Inequation,
}

/// A chain `t0 = t1 = ...` or `t0 <= t1 <= ...` of at least two terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    relation: Relation,
    sides: Vec<Term>,
}

impl Identity {
    pub fn equation(lhs: Term, rhs: Term) -> Self {
        Identity {
            relation: Relation::Equation,
            sides: alloc::vec![lhs, rhs],
        }
    }

    pub fn inequation(lhs: Term, rhs: Term) -> Self {
        Identity {
            relation: Relation::Inequation,
            sides: alloc::vec![lhs, rhs],
        }
    }

    pub fn chain(relation: Relation, sides: Vec<Term>) -> Result<Self, KiteError> {
        if sides.len() < 2 {
            return Err(KiteError::Precondition("an identity needs at least two sides".into()));
        }
        Ok(Identity { relation, sides })
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn sides(&self) -> &[Term] {
        &self.sides
    }

    pub fn lhs(&self) -> &Term {
        &self.sides[0]
    }

    pub fn rhs(&self) -> &Term {
        &self.sides[self.sides.len() - 1]
    }

    /// Variables in alphabetical order; the first is the most significant
    /// position when assignments are enumerated.
    pub fn vars(&self) -> Vec<String> {
        let mut all = BTreeSet::new();
        for t in &self.sides {
            all.extend(t.vars());
        }
        all.into_iter().collect()
    }

    /// Evaluates every side and reports whether each link of the chain holds.
    /// `s <= t` is decided as `s ∧ t = s`.
    pub fn holds_with<'a, F>(&self, shape: &Shape, env: &F) -> Result<bool, KiteError>
    where
        F: Fn(&str) -> Option<&'a Element>,
    {
        let values = self
            .sides
            .iter()
            .map(|t| t.eval(shape, env))
            .collect::<Result<Vec<_>, _>>()?;
        for pair in values.windows(2) {
            let ok = match self.relation {
                Relation::Equation => pair[0] == pair[1],
                Relation::Inequation => shape.meet(&pair[0], &pair[1])? == pair[0],
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Equation => " = ",
            Relation::Inequation => " <= ",
        };
        for (k, t) in self.sides.iter().enumerate() {
            if k > 0 {
                f.write_str(rel)?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Meet,
    Join,
    Mul,
    LDiv,
    RDiv,
    LNeg,
    RNeg,
    Open,
    Close,
    Eq,
    Le,
    Ge,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, KiteError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((pos, if name == "v" { Tok::Join } else { Tok::Ident(name) }));
            continue;
        }
        chars.next();
        let tok = match c {
            '0' => Tok::Zero,
            '1' => Tok::One,
            '^' => Tok::Meet,
            '*' => Tok::Mul,
            '\\' => Tok::LDiv,
            '/' => Tok::RDiv,
            '~' => Tok::LNeg,
            '-' => Tok::RNeg,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '=' => Tok::Eq,
            '<' | '>' => {
                if chars.peek().map(|&(_, d)| d) == Some('=') {
                    chars.next();
                    if c == '<' {
                        Tok::Le
                    } else {
                        Tok::Ge
                    }
                } else {
                    return Err(KiteError::Syntax {
                        pos,
                        msg: format!("expected `{c}=`"),
                    });
                }
            }
            _ => {
                return Err(KiteError::Syntax {
                    pos,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        if matches!(tok, Tok::Zero | Tok::One) {
            if let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    return Err(KiteError::Syntax {
                        pos,
                        msg: "only the constants 0 and 1 are allowed".into(),
                    });
                }
            }
        }
        out.push((pos, tok));
    }
    Ok(out)
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
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> KiteError {
        KiteError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn lattice(&mut self) -> Result<Term, KiteError> {
        let mut t = self.division()?;
        let mut op: Option<Tok> = None;
        while let Some(tok @ (Tok::Meet | Tok::Join)) = self.peek().cloned() {
            if op.as_ref().is_some_and(|o| *o != tok) {
                return Err(self.err("mixed `^` and `v` need parentheses"));
            }
            self.at += 1;
            let rhs = self.division()?;
            t = if tok == Tok::Meet {
                Term::meet(t, rhs)
            } else {
                Term::join(t, rhs)
            };
            op = Some(tok);
        }
        Ok(t)
    }

    fn division(&mut self) -> Result<Term, KiteError> {
        let t = self.product()?;
        let Some(tok @ (Tok::LDiv | Tok::RDiv)) = self.peek().cloned() else {
            return Ok(t);
        };
        self.at += 1;
        let rhs = self.product()?;
        if matches!(self.peek(), Some(Tok::LDiv | Tok::RDiv)) {
            return Err(KiteError::AmbiguousDivision { pos: self.pos() });
        }
        Ok(if tok == Tok::LDiv {
            Term::ldiv(t, rhs)
        } else {
            Term::rdiv(t, rhs)
        })
    }

    fn product(&mut self) -> Result<Term, KiteError> {
        let mut t = self.prefix()?;
        while self.peek() == Some(&Tok::Mul) {
            self.at += 1;
            t = Term::mul(t, self.prefix()?);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term, KiteError> {
        match self.peek() {
            Some(Tok::LNeg) => {
                self.at += 1;
                Ok(Term::lneg(self.prefix()?))
            }
            Some(Tok::RNeg) => {
                self.at += 1;
                Ok(Term::rneg(self.prefix()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, KiteError> {
        let t = match self.peek().cloned() {
            Some(Tok::Ident(name)) => Term::Var(name),
            Some(Tok::Zero) => Term::Zero,
            Some(Tok::One) => Term::One,
            Some(Tok::Open) => {
                self.at += 1;
                let inner = self.lattice()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("expected `)`"));
                }
                inner
            }
            Some(_) => return Err(self.err("expected a variable, constant or `(`")),
            None => return Err(self.err("unexpected end of input")),
        };
        self.at += 1;
        Ok(t)
    }
}

fn parser(text: &str) -> Result<Parser, KiteError> {
    Ok(Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    })
}

pub fn parse_term(text: &str) -> Result<Term, KiteError> {
    let mut p = parser(text)?;
    let t = p.lattice()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses `t0 = t1 (= t2 ...)`, `t0 <= t1 ...` or `t0 >= t1 ...`.
pub fn parse_identity(text: &str) -> Result<Identity, KiteError> {
    let mut p = parser(text)?;
    let mut sides = alloc::vec![p.lattice()?];
    let mut rel: Option<Tok> = None;
    while let Some(tok @ (Tok::Eq | Tok::Le | Tok::Ge)) = p.peek().cloned() {
        if rel.as_ref().is_some_and(|r| *r != tok) {
            return Err(p.err("a chain must use a single relation"));
        }
        p.at += 1;
        sides.push(p.lattice()?);
        rel = Some(tok);
    }
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    match rel {
        None => Err(p.err("expected `=`, `<=` or `>=`")),
        Some(Tok::Eq) => Identity::chain(Relation::Equation, sides),
        Some(Tok::Le) => Identity::chain(Relation::Inequation, sides),
        Some(_) => {
            sides.reverse();
            Identity::chain(Relation::Inequation, sides)
        }
    }
}

impl FromStr for Term {
    type Err = KiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl FromStr for Identity {
    type Err = KiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

/// Parses an identity file: one `name : identity` per line, `#` starts a
/// comment. Syntax errors are reported with the 1-based line number in `pos`.
pub fn parse_identity_file(text: &str) -> Result<Vec<(String, Identity)>, KiteError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| KiteError::Syntax { pos: lineno + 1, msg };
        let (name, body) = line
            .split_once(':')
            .ok_or_else(|| bad("expected `name : identity`".into()))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(bad(format!("invalid identity name `{name}`")));
        }
        let id = parse_identity(body).map_err(|e| bad(format!("{e}")))?;
        out.push((name.to_string(), id));
    }
    Ok(out)
}
