#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approx;
pub mod catalog;
pub mod check;
pub mod covers;
pub mod element;
pub mod error;
pub mod grid;
pub mod lgroup;
pub mod literal;
pub mod ops;
pub mod shape;
pub mod structure;
pub mod term;

pub use catalog::{catalog, catalog_identity};
pub use check::{check_identity, CheckReport, Checker, DEFAULT_MAX_EVALS};
pub use element::{Element, Side};
pub use error::KiteError;
pub use lgroup::{ConeSide, GroupVector, Int};
pub use literal::{parse_element, parse_shape};
pub use ops::{BinOp, Conjugates, LatticeResult};
pub use shape::{FiniteMaps, Shape, ShapeKind};
pub use term::{eval_term, parse_identity, parse_identity_file, parse_term, Identity, Relation, Term};
