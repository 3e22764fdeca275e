//! Parsers for shape and element literals.
//!
//! ```text
//! shape   := "kite{" ( finite | "ZZ01" | "OO01" | "OO10" ) ( ",d=" int )? "}"
//! finite  := "I=" int ",J=" int ",lam=" list ",rho=" list
//! element := ("U" | "L") ( "[" values "]" | "{" index ":" value, ... "}" )
//! value   := int | "(" int, ... ")"
//! ```
//!
//! Whitespace is allowed between tokens.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::element::{Element, Side};
use crate::error::KiteError;
use crate::lgroup::{GroupVector, Int};
use crate::shape::{Shape, ShapeKind};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err(&self, msg: impl Into<String>) -> KiteError {
        KiteError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), KiteError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), KiteError> {
        if self.keyword(kw) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{kw}`")))
        }
    }

    fn int(&mut self) -> Result<Int, KiteError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return Err(self.err("expected an integer"));
        }
        let text = &self.src[start..end];
        self.pos = end;
        match text.parse::<i64>() {
            Ok(v) => Ok(Int::Small(v)),
            Err(_) => BigInt::from_str(text)
                .map(Int::from)
                .map_err(|_| self.err("malformed integer")),
        }
    }

    fn usize(&mut self) -> Result<usize, KiteError> {
        let at = self.pos;
        let v = self.int()?;
        v.as_i64()
            .filter(|v| *v >= 0)
            .map(|v| v as usize)
            .ok_or(KiteError::Syntax {
                pos: at,
                msg: "expected a non-negative index".into(),
            })
    }

    fn index(&mut self) -> Result<i64, KiteError> {
        let at = self.pos;
        self.int()?.as_i64().ok_or(KiteError::Syntax {
            pos: at,
            msg: "index out of range".into(),
        })
    }

    fn list(&mut self) -> Result<Vec<usize>, KiteError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.usize()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn value(&mut self) -> Result<GroupVector, KiteError> {
        if self.eat('(') {
            let mut coords = Vec::new();
            if !self.eat(')') {
                loop {
                    coords.push(self.int()?);
                    if self.eat(')') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            Ok(GroupVector::new(coords))
        } else {
            Ok(GroupVector::new([self.int()?]))
        }
    }

    fn finish(&mut self) -> Result<(), KiteError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

pub fn parse_shape(text: &str) -> Result<Shape, KiteError> {
    let mut c = Cursor::new(text);
    c.expect_keyword("kite")?;
    c.expect('{')?;
    let canonical = if c.keyword("ZZ01") {
        Some(ShapeKind::ZZ01)
    } else if c.keyword("OO01") {
        Some(ShapeKind::OmegaOmega01)
    } else if c.keyword("OO10") {
        Some(ShapeKind::OmegaOmega10)
    } else {
        None
    };
    let mut finite = None;
    if canonical.is_none() {
        c.expect_keyword("I")?;
        c.expect('=')?;
        let i = c.usize()?;
        c.expect(',')?;
        c.expect_keyword("J")?;
        c.expect('=')?;
        let j = c.usize()?;
        c.expect(',')?;
        c.expect_keyword("lam")?;
        c.expect('=')?;
        let lam = c.list()?;
        c.expect(',')?;
        c.expect_keyword("rho")?;
        c.expect('=')?;
        let rho = c.list()?;
        finite = Some((i, j, lam, rho));
    }
    let mut dim = 1;
    if c.eat(',') {
        c.expect_keyword("d")?;
        c.expect('=')?;
        dim = c.usize()?;
    }
    c.expect('}')?;
    c.finish()?;
    match (canonical, finite) {
        (Some(k), _) => Ok(Shape::new(k, dim)),
        (None, Some((i, j, lam, rho))) => Shape::finite(i, j, lam, rho, dim),
        (None, None) => unreachable!("either a canonical kind or finite maps were parsed"),
    }
}

impl FromStr for Shape {
    type Err = KiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_shape(s)
    }
}

/// Parses an element literal against `shape`, validating cone membership.
/// Plain integers are accepted as one-dimensional vectors.
pub fn parse_element(shape: &Shape, text: &str) -> Result<Element, KiteError> {
    let mut c = Cursor::new(text);
    let side = if c.eat('U') {
        Side::Upper
    } else if c.eat('L') {
        Side::Lower
    } else {
        return Err(c.err("element literal must start with `U` or `L`"));
    };
    let el = if c.eat('[') {
        let mut entries = Vec::new();
        if !c.eat(']') {
            loop {
                entries.push(c.value()?);
                if c.eat(']') {
                    break;
                }
                c.expect(',')?;
            }
        }
        c.finish()?;
        shape.element(side, entries)?
    } else if c.eat('{') {
        let mut entries = Vec::new();
        if !c.eat('}') {
            loop {
                let idx = c.index()?;
                c.expect(':')?;
                entries.push((idx, c.value()?));
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
        }
        c.finish()?;
        shape.sparse_element(side, entries)?
    } else {
        return Err(c.err("expected `[` or `{`"));
    };
    Ok(el)
}
