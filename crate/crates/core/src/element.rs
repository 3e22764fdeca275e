//! Kite elements: a tagged value in (G⁻)^I ("upper") or (G⁺)^J ("lower").

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::KiteError;
use crate::lgroup::{ConeSide, GroupVector, Int};
use crate::shape::Shape;

/// Which summand of the disjoint union an element lives in.
///
/// The derived order (`Lower < Upper`) is the grid enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn cone(self) -> ConeSide {
        match self {
            Side::Upper => ConeSide::Negative,
            Side::Lower => ConeSide::Positive,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    /// Finite shapes: one entry per index.
    Dense(Vec<GroupVector>),
    /// Infinite shapes: entries different from `e`; absent keys are `e`.
    Sparse(BTreeMap<i64, GroupVector>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    side: Side,
    entries: Entries,
}

impl Element {
    pub(crate) fn dense(side: Side, entries: Vec<GroupVector>) -> Self {
        Element {
            side,
            entries: Entries::Dense(entries),
        }
    }

    pub(crate) fn sparse(side: Side, mut entries: BTreeMap<i64, GroupVector>) -> Self {
        entries.retain(|_, v| !v.is_identity());
        Element {
            side,
            entries: Entries::Sparse(entries),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_upper(&self) -> bool {
        self.side == Side::Upper
    }

    pub fn is_lower(&self) -> bool {
        self.side == Side::Lower
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.entries, Entries::Sparse(_))
    }

    /// Entries of a finite-shape element, in index order.
    pub fn dense_entries(&self) -> Option<&[GroupVector]> {
        match &self.entries {
            Entries::Dense(v) => Some(v),
            Entries::Sparse(_) => None,
        }
    }

    /// Non-identity entries of an infinite-shape element.
    pub fn sparse_entries(&self) -> Option<&BTreeMap<i64, GroupVector>> {
        match &self.entries {
            Entries::Sparse(m) => Some(m),
            Entries::Dense(_) => None,
        }
    }

    pub(crate) fn entries(&self) -> &Entries {
        &self.entries
    }

    /// The entry at `idx`, with `e` standing in for absent sparse entries.
    pub fn at<'a>(&'a self, idx: i64, e: &'a GroupVector) -> &'a GroupVector {
        match &self.entries {
            Entries::Dense(v) => &v[idx as usize],
            Entries::Sparse(m) => m.get(&idx).unwrap_or(e),
        }
    }

    /// Indices whose entry differs from `e`.
    pub fn support(&self) -> Vec<i64> {
        match &self.entries {
            Entries::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_identity())
                .map(|(k, _)| k as i64)
                .collect(),
            Entries::Sparse(m) => m.keys().copied().collect(),
        }
    }

    /// Number of entries different from `e`.
    pub fn dimension(&self) -> usize {
        match &self.entries {
            Entries::Dense(v) => v.iter().filter(|g| !g.is_identity()).count(),
            Entries::Sparse(m) => m.len(),
        }
    }

    /// Largest coordinate magnitude over all entries.
    pub fn max_abs(&self) -> Int {
        let it: alloc::boxed::Box<dyn Iterator<Item = &GroupVector>> = match &self.entries {
            Entries::Dense(v) => alloc::boxed::Box::new(v.iter()),
            Entries::Sparse(m) => alloc::boxed::Box::new(m.values()),
        };
        it.map(GroupVector::max_abs).max().unwrap_or(Int::ZERO)
    }
}

impl Shape {
    /// The top element, the constant sequence `e` in (G⁻)^I.
    pub fn one(&self) -> Element {
        match self.finite_maps() {
            Some(f) => Element::dense(Side::Upper, alloc::vec![self.e().clone(); f.i_size()]),
            None => Element::sparse(Side::Upper, BTreeMap::new()),
        }
    }

    /// The bottom element, the constant sequence `e` in (G⁺)^J.
    pub fn zero(&self) -> Element {
        match self.finite_maps() {
            Some(f) => Element::dense(Side::Lower, alloc::vec![self.e().clone(); f.j_size()]),
            None => Element::sparse(Side::Lower, BTreeMap::new()),
        }
    }

    fn check_entry(&self, side: Side, idx: i64, g: &GroupVector) -> Result<(), KiteError> {
        if g.dim() != self.dim() {
            return Err(KiteError::InvalidElement(format!(
                "entry {idx} has dimension {}, expected {}",
                g.dim(),
                self.dim()
            )));
        }
        if !g.in_cone(side.cone()) {
            let which = match side {
                Side::Upper => "G- (upper entries must be <= 0)",
                Side::Lower => "G+ (lower entries must be >= 0)",
            };
            return Err(KiteError::InvalidElement(format!(
                "entry {idx} = {g} is not in {which}"
            )));
        }
        Ok(())
    }

    /// Builds a finite-shape element from its entries, validating length,
    /// dimension and cone membership.
    pub fn element(&self, side: Side, entries: Vec<GroupVector>) -> Result<Element, KiteError> {
        let f = self
            .finite_maps()
            .ok_or_else(|| KiteError::InvalidElement("infinite shapes take sparse literals".into()))?;
        let want = match side {
            Side::Upper => f.i_size(),
            Side::Lower => f.j_size(),
        };
        if entries.len() != want {
            return Err(KiteError::InvalidElement(format!(
                "expected {want} entries, got {}",
                entries.len()
            )));
        }
        for (k, g) in entries.iter().enumerate() {
            self.check_entry(side, k as i64, g)?;
        }
        Ok(Element::dense(side, entries))
    }

    /// Builds a finite-support element of an infinite shape.
    pub fn sparse_element(
        &self,
        side: Side,
        entries: impl IntoIterator<Item = (i64, GroupVector)>,
    ) -> Result<Element, KiteError> {
        if self.is_finite() {
            return Err(KiteError::InvalidElement("finite shapes take dense literals".into()));
        }
        let mut map = BTreeMap::new();
        for (idx, g) in entries {
            let ok = match side {
                Side::Upper => self.upper_index_ok(idx),
                Side::Lower => self.lower_index_ok(idx),
            };
            if !ok {
                return Err(KiteError::InvalidElement(format!(
                    "index {idx} is outside the index set"
                )));
            }
            self.check_entry(side, idx, &g)?;
            if map.insert(idx, g).is_some() {
                return Err(KiteError::InvalidElement(format!("index {idx} given twice")));
            }
        }
        Ok(Element::sparse(side, map))
    }

    /// Upper element over ℤ from plain integers.
    pub fn upper(&self, entries: &[i64]) -> Result<Element, KiteError> {
        self.element(Side::Upper, entries.iter().map(|&v| GroupVector::scalar(v)).collect())
    }

    /// Lower element over ℤ from plain integers.
    pub fn lower(&self, entries: &[i64]) -> Result<Element, KiteError> {
        self.element(Side::Lower, entries.iter().map(|&v| GroupVector::scalar(v)).collect())
    }

    pub fn sparse_upper(&self, entries: &[(i64, i64)]) -> Result<Element, KiteError> {
        self.sparse_element(Side::Upper, entries.iter().map(|&(i, v)| (i, GroupVector::scalar(v))))
    }

    pub fn sparse_lower(&self, entries: &[(i64, i64)]) -> Result<Element, KiteError> {
        self.sparse_element(Side::Lower, entries.iter().map(|&(i, v)| (i, GroupVector::scalar(v))))
    }

    /// Checks that `x` has the storage and length this shape expects.
    pub fn conforms(&self, x: &Element) -> Result<(), KiteError> {
        let ok = match (self.finite_maps(), &x.entries) {
            (Some(f), Entries::Dense(v)) => {
                let want = match x.side {
                    Side::Upper => f.i_size(),
                    Side::Lower => f.j_size(),
                };
                v.len() == want && v.first().is_none_or(|g| g.dim() == self.dim())
            }
            (None, Entries::Sparse(m)) => m.iter().all(|(&k, g)| {
                g.dim() == self.dim()
                    && match x.side {
                        Side::Upper => self.upper_index_ok(k),
                        Side::Lower => self.lower_index_ok(k),
                    }
            }),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(KiteError::ShapeMismatch(format!("{x} does not belong to {self}")))
        }
    }
}

/// Element literal: `U[v,...]` / `L[v,...]` for finite shapes and
/// `U{i:v,...}` / `L{j:v,...}` for infinite ones.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.side {
            Side::Upper => "U",
            Side::Lower => "L",
        })?;
        match &self.entries {
            Entries::Dense(v) => {
                f.write_str("[")?;
                for (k, g) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str("]")
            }
            Entries::Sparse(m) => {
                f.write_str("{")?;
                for (k, (i, g)) in m.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{i}:{g}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
