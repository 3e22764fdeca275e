//! Exhaustive bounded-grid verification of identities.
//!
//! Assignments are numbered in mixed radix over the grid: the first variable
//! (alphabetically) is the most significant digit. The reported
//! counterexample is always the least violating assignment in that order, so
//! splitting the index range across workers and keeping the minimum gives the
//! same answer as a sequential scan.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::element::Element;
use crate::error::KiteError;
use crate::grid::grid;
use crate::shape::Shape;
use crate::term::Identity;

/// Default cap on the number of assignments a single check may enumerate.
pub const DEFAULT_MAX_EVALS: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub shape: Shape,
    pub bound: u32,
    pub holds: bool,
    /// Variable assignment of the least violation, in variable order.
    pub counterexample: Option<Vec<(String, Element)>>,
    /// Assignments enumerated up to and including the least violation, or
    /// all of them when the identity holds.
    pub evaluations: u128,
}

/// A prepared check: the grid, the variables and the assignment count.
pub struct Checker<'a> {
    shape: &'a Shape,
    identity: &'a Identity,
    label: String,
    bound: u32,
    elements: Vec<Element>,
    vars: Vec<String>,
    total: u128,
}

impl<'a> Checker<'a> {
    /// Prepares a check over the `bound`-grid of a finite shape. Fails with
    /// `BudgetExceeded` when `grid^vars` exceeds `cap`.
    pub fn new(shape: &'a Shape, identity: &'a Identity, bound: u32, cap: u64) -> Result<Self, KiteError> {
        let elements = grid(shape, bound)?;
        Self::over(shape, identity, elements, bound, cap)
    }

    /// Prepares a check over an explicit element list (used for infinite
    /// shapes, where no grid is canonical).
    pub fn over(
        shape: &'a Shape,
        identity: &'a Identity,
        elements: Vec<Element>,
        bound: u32,
        cap: u64,
    ) -> Result<Self, KiteError> {
        for x in &elements {
            shape.conforms(x)?;
        }
        let vars = identity.vars();
        let total = (elements.len() as u128)
            .checked_pow(vars.len() as u32)
            .unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(KiteError::BudgetExceeded { needed: total, cap });
        }
        Ok(Checker {
            shape,
            identity,
            label: identity.to_string(),
            bound,
            elements,
            vars,
            total,
        })
    }

    /// Replaces the identity text shown in reports (e.g. by a catalog name).
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    fn digits(&self, mut idx: u128) -> Vec<usize> {
        let base = self.elements.len() as u128;
        let mut out = alloc::vec![0usize; self.vars.len()];
        for slot in out.iter_mut().rev() {
            *slot = (idx % base) as usize;
            idx /= base;
        }
        out
    }

    /// The assignment with the given index.
    pub fn assignment(&self, idx: u128) -> Vec<(String, Element)> {
        self.vars
            .iter()
            .cloned()
            .zip(self.digits(idx).into_iter().map(|d| self.elements[d].clone()))
            .collect()
    }

    fn holds_at(&self, digits: &[usize]) -> Result<bool, KiteError> {
        let env = |name: &str| {
            self.vars
                .iter()
                .position(|v| v == name)
                .map(|k| &self.elements[digits[k]])
        };
        self.identity.holds_with(self.shape, &env)
    }

    /// The least violating index in `range`, if any.
    pub fn first_violation(&self, range: Range<u128>) -> Result<Option<u128>, KiteError> {
        let end = range.end.min(self.total);
        if range.start >= end {
            return Ok(None);
        }
        let base = self.elements.len();
        let mut digits = self.digits(range.start);
        for idx in range.start..end {
            if !self.holds_at(&digits)? {
                return Ok(Some(idx));
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < base {
                    break;
                }
                *d = 0;
            }
        }
        Ok(None)
    }

    /// Builds the report for the least violation found (if any).
    pub fn report(&self, violation: Option<u128>) -> CheckReport {
        CheckReport {
            identity: self.label.clone(),
            shape: self.shape.clone(),
            bound: self.bound,
            holds: violation.is_none(),
            counterexample: violation.map(|i| self.assignment(i)),
            evaluations: violation.map_or(self.total, |i| i + 1),
        }
    }

    pub fn run(&self) -> Result<CheckReport, KiteError> {
        Ok(self.report(self.first_violation(0..self.total)?))
    }
}

/// Sequential exhaustive check over the `bound`-grid.
pub fn check_identity(shape: &Shape, identity: &Identity, bound: u32, cap: u64) -> Result<CheckReport, KiteError> {
    Checker::new(shape, identity, bound, cap)?.run()
}

/// First triple `(x, y, z)` of `elements` violating
/// `xy ≤ z ⇔ y ≤ x\z ⇔ x ≤ z/y`.
pub fn adjointness_violation(shape: &Shape, elements: &[Element]) -> Result<Option<[Element; 3]>, KiteError> {
    for x in elements {
        for y in elements {
            let xy = shape.mul(x, y)?;
            for z in elements {
                let a = shape.leq(&xy, z)?;
                let b = shape.leq(y, &shape.ldiv(x, z)?)?;
                let c = shape.leq(x, &shape.rdiv(z, y)?)?;
                if a != b || a != c {
                    return Ok(Some([x.clone(), y.clone(), z.clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// First triple violating `(xy)z = x(yz)`.
pub fn associativity_violation(shape: &Shape, elements: &[Element]) -> Result<Option<[Element; 3]>, KiteError> {
    for x in elements {
        for y in elements {
            let xy = shape.mul(x, y)?;
            for z in elements {
                if shape.mul(&xy, z)? != shape.mul(x, &shape.mul(y, z)?)? {
                    return Ok(Some([x.clone(), y.clone(), z.clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// Renders an assignment as `x=U[..], y=L[..]`.
pub fn format_assignment(a: &[(String, Element)]) -> String {
    a.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(", ")
}
