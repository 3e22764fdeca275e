//! Lattice operations, multiplication and both divisions of a kite.
//!
//! Entries are stored additively: an upper entry is the non-positive vector
//! `a⁻¹`, a lower entry the non-negative vector `f`. In that notation
//!
//! ```text
//! U·U  i ↦ a_i + b_i
//! U·L  j ↦ (a_λ(j) + f_j) ∨ e
//! L·U  j ↦ (f_j + a_ρ(j)) ∨ e
//! L·L  = 0
//! ```
//!
//! and the divisions are the residuals of this product.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::element::{Element, Entries, Side};
use crate::error::KiteError;
use crate::lgroup::GroupVector;
use crate::shape::Shape;

/// The binary operations of the FL signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Meet,
    Join,
    Mul,
    LDiv,
    RDiv,
}

impl BinOp {
    pub const ALL: [BinOp; 5] = [BinOp::Meet, BinOp::Join, BinOp::Mul, BinOp::LDiv, BinOp::RDiv];

    pub fn name(self) -> &'static str {
        match self {
            BinOp::Meet => "meet",
            BinOp::Join => "join",
            BinOp::Mul => "mul",
            BinOp::LDiv => "ldiv",
            BinOp::RDiv => "rdiv",
        }
    }
}

/// Result of comparing two elements in the lattice order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeResult {
    pub meet: Element,
    pub join: Element,
    pub leq: bool,
}

/// Left and right conjugates of `x` by `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugates {
    /// `y\(x·y) ∧ 1`
    pub left: Element,
    /// `(y·x)/y ∧ 1`
    pub right: Element,
}

fn support_union(x: &Element, y: &Element) -> BTreeSet<i64> {
    x.support().into_iter().chain(y.support()).collect()
}

impl Shape {
    fn pair(&self, x: &Element, y: &Element) -> Result<(), KiteError> {
        self.conforms(x)?;
        self.conforms(y)
    }

    fn side_len(&self, side: Side) -> usize {
        let f = self.finite_maps().expect("finite shape");
        match side {
            Side::Upper => f.i_size(),
            Side::Lower => f.j_size(),
        }
    }

    /// Builds an element of `side` entry by entry. For finite shapes every
    /// index is visited; for infinite ones only `candidates`, outside of which
    /// the entry is known to be `e`.
    fn build(
        &self,
        side: Side,
        candidates: impl FnOnce() -> BTreeSet<i64>,
        mut entry: impl FnMut(i64) -> Result<GroupVector, KiteError>,
    ) -> Result<Element, KiteError> {
        if self.is_finite() {
            let n = self.side_len(side);
            let v = (0..n as i64).map(&mut entry).collect::<Result<Vec<_>, _>>()?;
            Ok(Element::dense(side, v))
        } else {
            let mut map = alloc::collections::BTreeMap::new();
            for k in candidates() {
                let g = entry(k)?;
                if !g.is_identity() {
                    map.insert(k, g);
                }
            }
            Ok(Element::sparse(side, map))
        }
    }

    fn componentwise(
        &self,
        side: Side,
        x: &Element,
        y: &Element,
        f: impl Fn(&GroupVector, &GroupVector) -> Result<GroupVector, KiteError>,
    ) -> Result<Element, KiteError> {
        let e = self.e();
        if let (Entries::Dense(a), Entries::Dense(b)) = (x.entries(), y.entries()) {
            let v = a.iter().zip(b).map(|(p, q)| f(p, q)).collect::<Result<Vec<_>, _>>()?;
            return Ok(Element::dense(side, v));
        }
        self.build(side, || support_union(x, y), |k| f(x.at(k, e), y.at(k, e)))
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        self.pair(x, y)?;
        match (x.side(), y.side()) {
            (Side::Lower, Side::Upper) => Ok(x.clone()),
            (Side::Upper, Side::Lower) => Ok(y.clone()),
            (s, _) => self.componentwise(s, x, y, GroupVector::meet),
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        self.pair(x, y)?;
        match (x.side(), y.side()) {
            (Side::Lower, Side::Upper) => Ok(y.clone()),
            (Side::Upper, Side::Lower) => Ok(x.clone()),
            (s, _) => self.componentwise(s, x, y, GroupVector::join),
        }
    }

    /// The lattice order: componentwise within a side, and every lower
    /// element below every upper one.
    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool, KiteError> {
        self.pair(x, y)?;
        match (x.side(), y.side()) {
            (Side::Lower, Side::Upper) => Ok(true),
            (Side::Upper, Side::Lower) => Ok(false),
            _ => {
                let e = self.e();
                if let (Entries::Dense(a), Entries::Dense(b)) = (x.entries(), y.entries()) {
                    for (p, q) in a.iter().zip(b) {
                        if !p.leq(q)? {
                            return Ok(false);
                        }
                    }
                    return Ok(true);
                }
                for k in support_union(x, y) {
                    if !x.at(k, e).leq(y.at(k, e))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn lattice(&self, x: &Element, y: &Element) -> Result<LatticeResult, KiteError> {
        Ok(LatticeResult {
            meet: self.meet(x, y)?,
            join: self.join(x, y)?,
            leq: self.leq(x, y)?,
        })
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        self.pair(x, y)?;
        let e = self.e();
        match (x.side(), y.side()) {
            (Side::Upper, Side::Upper) => self.componentwise(Side::Upper, x, y, GroupVector::add),
            (Side::Upper, Side::Lower) => self.build(
                Side::Lower,
                || y.support().into_iter().collect(),
                |j| {
                    let i = self.lambda(j).expect("j in J");
                    Ok(x.at(i, e).add(y.at(j, e))?.join_identity())
                },
            ),
            (Side::Lower, Side::Upper) => self.build(
                Side::Lower,
                || x.support().into_iter().collect(),
                |j| {
                    let i = self.rho(j).expect("j in J");
                    Ok(x.at(j, e).add(y.at(i, e))?.join_identity())
                },
            ),
            (Side::Lower, Side::Lower) => Ok(self.zero()),
        }
    }

    /// Left division `x\y`, the largest z with `x·z ≤ y`.
    pub fn ldiv(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        self.pair(x, y)?;
        let e = self.e();
        match (x.side(), y.side()) {
            (Side::Upper, Side::Upper) => self.componentwise(Side::Upper, x, y, |a, b| Ok(b.sub(a)?.meet_identity())),
            (Side::Upper, Side::Lower) => self.build(
                Side::Lower,
                || {
                    let mut c: BTreeSet<i64> = y.support().into_iter().collect();
                    c.extend(x.support().into_iter().filter_map(|i| self.lambda_inv(i)));
                    c
                },
                |j| {
                    let i = self.lambda(j).expect("j in J");
                    y.at(j, e).sub(x.at(i, e))
                },
            ),
            (Side::Lower, Side::Lower) => self.build(
                Side::Upper,
                || support_union(x, y).into_iter().filter_map(|j| self.rho(j)).collect(),
                |i| match self.rho_inv(i) {
                    Some(j) => Ok(y.at(j, e).sub(x.at(j, e))?.meet_identity()),
                    None => Ok(e.clone()),
                },
            ),
            (Side::Lower, Side::Upper) => Ok(self.one()),
        }
    }

    /// Right division `x/y`, the largest z with `z·y ≤ x`.
    pub fn rdiv(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        self.pair(x, y)?;
        let e = self.e();
        match (x.side(), y.side()) {
            (Side::Upper, Side::Upper) => self.componentwise(Side::Upper, x, y, |b, a| Ok(b.sub(a)?.meet_identity())),
            (Side::Lower, Side::Upper) => self.build(
                Side::Lower,
                || {
                    let mut c: BTreeSet<i64> = x.support().into_iter().collect();
                    c.extend(y.support().into_iter().filter_map(|i| self.rho_inv(i)));
                    c
                },
                |j| {
                    let i = self.rho(j).expect("j in J");
                    x.at(j, e).sub(y.at(i, e))
                },
            ),
            (Side::Lower, Side::Lower) => self.build(
                Side::Upper,
                || support_union(x, y).into_iter().filter_map(|j| self.lambda(j)).collect(),
                |i| match self.lambda_inv(i) {
                    Some(j) => Ok(x.at(j, e).sub(y.at(j, e))?.meet_identity()),
                    None => Ok(e.clone()),
                },
            ),
            (Side::Upper, Side::Lower) => Ok(self.one()),
        }
    }

    /// Left negation `x\0`.
    pub fn lneg(&self, x: &Element) -> Result<Element, KiteError> {
        self.ldiv(x, &self.zero())
    }

    /// Right negation `0/x`.
    pub fn rneg(&self, x: &Element) -> Result<Element, KiteError> {
        self.rdiv(&self.zero(), x)
    }

    pub fn apply(&self, op: BinOp, x: &Element, y: &Element) -> Result<Element, KiteError> {
        match op {
            BinOp::Meet => self.meet(x, y),
            BinOp::Join => self.join(x, y),
            BinOp::Mul => self.mul(x, y),
            BinOp::LDiv => self.ldiv(x, y),
            BinOp::RDiv => self.rdiv(x, y),
        }
    }

    pub fn left_conjugate(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        let xy = self.mul(x, y)?;
        self.meet(&self.ldiv(y, &xy)?, &self.one())
    }

    pub fn right_conjugate(&self, x: &Element, y: &Element) -> Result<Element, KiteError> {
        let yx = self.mul(y, x)?;
        self.meet(&self.rdiv(&yx, y)?, &self.one())
    }

    pub fn conjugates(&self, x: &Element, y: &Element) -> Result<Conjugates, KiteError> {
        Ok(Conjugates {
            left: self.left_conjugate(x, y)?,
            right: self.right_conjugate(x, y)?,
        })
    }

    /// `k`-fold left negation.
    pub fn lneg_iter(&self, x: &Element, k: usize) -> Result<Element, KiteError> {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = self.lneg(&cur)?;
        }
        Ok(cur)
    }

    /// `k`-fold right negation.
    pub fn rneg_iter(&self, x: &Element, k: usize) -> Result<Element, KiteError> {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = self.rneg(&cur)?;
        }
        Ok(cur)
    }
}
