//! Bounded grids of kite elements.
//!
//! The grid of bound `M` holds every element whose coordinates all have
//! magnitude at most `M`. Enumeration order is fixed: lower elements before
//! upper ones, then lexicographic over entries (first index most
//! significant), each coordinate running through `0, 1, ..., M` on the lower
//! side and `0, -1, ..., -M` on the upper side.

use alloc::vec::Vec;

use crate::element::{Element, Side};
use crate::error::KiteError;
use crate::lgroup::{GroupVector, Int};
use crate::shape::Shape;

fn coordinate_values(side: Side, bound: u32) -> Vec<i64> {
    let m = bound as i64;
    match side {
        Side::Lower => (0..=m).collect(),
        Side::Upper => (0..=m).map(|v| -v).collect(),
    }
}

/// All vectors of `len` entries over ℤ^dim with coordinates from `values`,
/// in lexicographic order of the odometer (first slot most significant).
fn odometer(len: usize, dim: usize, values: &[i64]) -> Vec<Vec<GroupVector>> {
    let slots = len * dim;
    let base = values.len();
    let total = base.pow(slots as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = alloc::vec![0usize; slots];
    for _ in 0..total {
        let entries = (0..len)
            .map(|k| GroupVector::new((0..dim).map(|c| Int::Small(values[digits[k * dim + c]]))))
            .collect();
        out.push(entries);
        for d in (0..slots).rev() {
            digits[d] += 1;
            if digits[d] < base {
                break;
            }
            digits[d] = 0;
        }
    }
    out
}

/// Number of grid elements, without enumerating them.
pub fn grid_size(shape: &Shape, bound: u32) -> Option<u128> {
    let f = shape.finite_maps()?;
    let base = bound as u128 + 1;
    let d = shape.dim() as u32;
    let lower = base.checked_pow(f.j_size() as u32 * d)?;
    let upper = base.checked_pow(f.i_size() as u32 * d)?;
    lower.checked_add(upper)
}

/// Refuses grids with more than this many elements.
pub const MAX_GRID_ELEMENTS: u128 = 1 << 22;

/// The grid of a finite shape in enumeration order.
pub fn grid(shape: &Shape, bound: u32) -> Result<Vec<Element>, KiteError> {
    let f = shape
        .finite_maps()
        .ok_or_else(|| KiteError::Precondition("grids are defined for finite shapes only".into()))?;
    match grid_size(shape, bound) {
        Some(n) if n <= MAX_GRID_ELEMENTS => {}
        _ => {
            return Err(KiteError::BudgetExceeded {
                needed: grid_size(shape, bound).unwrap_or(u128::MAX),
                cap: MAX_GRID_ELEMENTS as u64,
            })
        }
    }
    let mut out = Vec::new();
    for (side, len) in [(Side::Lower, f.j_size()), (Side::Upper, f.i_size())] {
        let values = coordinate_values(side, bound);
        out.extend(
            odometer(len, shape.dim(), &values)
                .into_iter()
                .map(|entries| shape.element(side, entries).expect("grid entries lie in the cone")),
        );
    }
    Ok(out)
}

/// Finite-support elements of an infinite shape whose support lies in
/// `lo..=hi`, with coordinate magnitudes at most `bound`, in the same order
/// as [`grid`] (positions `lo..=hi` playing the role of dense indices).
pub fn sparse_grid(shape: &Shape, lo: i64, hi: i64, bound: u32) -> Result<Vec<Element>, KiteError> {
    if shape.is_finite() {
        return Err(KiteError::Precondition("sparse grids need an infinite shape".into()));
    }
    let len = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
    let mut out = Vec::new();
    for side in [Side::Lower, Side::Upper] {
        let values = coordinate_values(side, bound);
        for entries in odometer(len, shape.dim(), &values) {
            let pairs = entries.into_iter().enumerate().map(|(k, g)| (lo + k as i64, g));
            out.push(shape.sparse_element(side, pairs)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn order_is_lower_first_then_magnitude_lexicographic() {
        let s = Shape::chain(1);
        let g = grid(&s, 1).unwrap();
        let names: Vec<_> = g.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["L[0]", "L[1]", "U[0,0]", "U[0,-1]", "U[-1,0]", "U[-1,-1]"]);
        assert_eq!(grid_size(&s, 2), Some(3 + 9));
        assert_eq!(grid(&s, 2).unwrap().len(), 12);
    }

    #[test]
    fn empty_shape_grid_is_the_two_constants() {
        let s = Shape::finite(0, 0, alloc::vec![], alloc::vec![], 1).unwrap();
        assert_eq!(grid(&s, 3).unwrap(), alloc::vec![s.zero(), s.one()]);
    }

    #[test]
    fn higher_dimensional_grid() {
        let s = Shape::chain(1).with_dim(2);
        assert_eq!(grid(&s, 1).unwrap().len(), 4 + 16);
        let g = grid(&s, 1).unwrap();
        assert_eq!(g[1].to_string(), "L[(0,1)]");
    }

    #[test]
    fn sparse_grid_counts() {
        let z = Shape::zz01(1);
        let g = sparse_grid(&z, -1, 1, 1).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], z.zero());
        assert_eq!(g[8], z.one());
        assert!(grid(&z, 1).is_err());
    }
}
