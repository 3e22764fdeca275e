//! Named identities: the standard residuated-lattice laws plus the
//! normal-valuedness inequation.

use alloc::format;
use alloc::vec::Vec;

use crate::error::KiteError;
use crate::term::{parse_identity, Identity};

const ENTRIES: [(&str, &str); 13] = [
    ("integral", "x <= 1"),
    ("zerobounded", "0 <= x"),
    ("rl", "1 = 0"),
    ("divis", "x*(x\\(x ^ y)) = x ^ y = ((x ^ y)/x)*x"),
    ("divint", "x*(x\\y) = x ^ y = (y/x)*x"),
    ("prelin", "x\\y v y\\x = 1 = y/x v x/y"),
    ("mvint", "x/(y\\x) = x v y = (x/y)\\x"),
    ("mvgen", "x/((x v y)\\x) = x v y = (x/(x v y))\\x"),
    ("dblneg", "~-x = x = -~x"),
    ("good", "~-x = -~x"),
    ("lg", "1 = x*(x\\1)"),
    ("comm", "x*y = y*x"),
    ("nvalued", "(x*x)*(y*y) <= y*x"),
];

/// Catalog names in their canonical order.
pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

/// The source text of a catalog entry.
pub fn catalog_source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn catalog() -> Vec<(&'static str, Identity)> {
    ENTRIES
        .iter()
        .map(|(n, s)| (*n, parse_identity(s).expect("catalog entries parse")))
        .collect()
}

pub fn catalog_identity(name: &str) -> Result<Identity, KiteError> {
    let src = catalog_source(name).ok_or_else(|| {
        let known: Vec<_> = catalog_names().collect();
        KiteError::UnknownIdentity(format!("{name} (known: {})", known.join(", ")))
    })?;
    parse_identity(src)
}
