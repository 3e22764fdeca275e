//! Index data of a kite: the sets I and J and the injections λ, ρ: J → I.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::KiteError;
use crate::lgroup::GroupVector;

/// Indices of infinite shapes are kept well inside `i64` so that the
/// successor maps never overflow.
pub const MAX_SPARSE_INDEX: i64 = 1 << 60;

/// Finite index data: I = {0..i_size}, J = {0..j_size}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMaps {
    i_size: usize,
    j_size: usize,
    lambda: Vec<usize>,
    rho: Vec<usize>,
    lambda_inv: Vec<Option<usize>>,
    rho_inv: Vec<Option<usize>>,
}

fn invert(map: &[usize], i_size: usize, name: &str) -> Result<Vec<Option<usize>>, KiteError> {
    let mut inv = vec![None; i_size];
    for (j, &i) in map.iter().enumerate() {
        if i >= i_size {
            return Err(KiteError::InvalidShape(format!(
                "{name}({j}) = {i} is outside I = {{0..{i_size}}}"
            )));
        }
        if let Some(prev) = inv[i] {
            return Err(KiteError::InvalidShape(format!(
                "{name} is not injective: {name}({prev}) = {name}({j}) = {i}"
            )));
        }
        inv[i] = Some(j);
    }
    Ok(inv)
}

impl FiniteMaps {
    pub fn new(i_size: usize, j_size: usize, lambda: Vec<usize>, rho: Vec<usize>) -> Result<Self, KiteError> {
        if lambda.len() != j_size || rho.len() != j_size {
            return Err(KiteError::InvalidShape(format!(
                "lam and rho must be total on J = {{0..{j_size}}} (got {} and {} values)",
                lambda.len(),
                rho.len()
            )));
        }
        if j_size > i_size {
            return Err(KiteError::InvalidShape(format!(
                "|J| = {j_size} exceeds |I| = {i_size}"
            )));
        }
        let lambda_inv = invert(&lambda, i_size, "lam")?;
        let rho_inv = invert(&rho, i_size, "rho")?;
        Ok(FiniteMaps {
            i_size,
            j_size,
            lambda,
            rho,
            lambda_inv,
            rho_inv,
        })
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn j_size(&self) -> usize {
        self.j_size
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    pub fn lambda_inv(&self, i: usize) -> Option<usize> {
        self.lambda_inv.get(i).copied().flatten()
    }

    pub fn rho_inv(&self, i: usize) -> Option<usize> {
        self.rho_inv.get(i).copied().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Finite(FiniteMaps),
    /// I = J = ℤ, λ(j) = j, ρ(j) = j+1.
    ZZ01,
    /// I = J = ω, λ(j) = j, ρ(j) = j+1.
    OmegaOmega01,
    /// I = J = ω, λ(j) = j+1, ρ(j) = j.
    OmegaOmega10,
}

/// A kite shape together with the dimension d of the group ℤ^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    kind: ShapeKind,
    dim: usize,
    identity: GroupVector,
}

impl Shape {
    pub fn new(kind: ShapeKind, dim: usize) -> Self {
        Shape {
            kind,
            dim,
            identity: GroupVector::identity(dim),
        }
    }

    /// A finite shape over ℤ^dim.
    pub fn finite(
        i_size: usize,
        j_size: usize,
        lambda: Vec<usize>,
        rho: Vec<usize>,
        dim: usize,
    ) -> Result<Self, KiteError> {
        Ok(Self::new(
            ShapeKind::Finite(FiniteMaps::new(i_size, j_size, lambda, rho)?),
            dim,
        ))
    }

    /// K_{n,n}^{0,1}: λ(j) = j, ρ(j) = j+1 (mod n), over ℤ.
    pub fn cycle(n: usize) -> Self {
        let lambda = (0..n).collect();
        let rho = (0..n).map(|j| (j + 1) % n).collect();
        Self::finite(n, n, lambda, rho, 1).expect("cycle shape is valid")
    }

    /// K_{n+1,n}^{0,1}: λ(j) = j, ρ(j) = j+1, over ℤ.
    pub fn chain(n: usize) -> Self {
        let lambda = (0..n).collect();
        let rho = (1..=n).collect();
        Self::finite(n + 1, n, lambda, rho, 1).expect("chain shape is valid")
    }

    /// K_{n,n}^{id,id} over ℤ.
    pub fn diagonal(n: usize) -> Self {
        Self::finite(n, n, (0..n).collect(), (0..n).collect(), 1).expect("diagonal shape is valid")
    }

    pub fn zz01(dim: usize) -> Self {
        Self::new(ShapeKind::ZZ01, dim)
    }

    pub fn omega01(dim: usize) -> Self {
        Self::new(ShapeKind::OmegaOmega01, dim)
    }

    pub fn omega10(dim: usize) -> Self {
        Self::new(ShapeKind::OmegaOmega10, dim)
    }

    pub fn with_dim(&self, dim: usize) -> Self {
        Self::new(self.kind.clone(), dim)
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The group identity `e` of ℤ^dim.
    pub fn e(&self) -> &GroupVector {
        &self.identity
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, ShapeKind::Finite(_))
    }

    pub fn finite_maps(&self) -> Option<&FiniteMaps> {
        match &self.kind {
            ShapeKind::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn i_size(&self) -> Option<usize> {
        self.finite_maps().map(FiniteMaps::i_size)
    }

    pub fn j_size(&self) -> Option<usize> {
        self.finite_maps().map(FiniteMaps::j_size)
    }

    pub(crate) fn upper_index_ok(&self, i: i64) -> bool {
        match &self.kind {
            ShapeKind::Finite(f) => i >= 0 && (i as u64) < f.i_size as u64,
            ShapeKind::ZZ01 => i.abs() <= MAX_SPARSE_INDEX,
            ShapeKind::OmegaOmega01 | ShapeKind::OmegaOmega10 => (0..=MAX_SPARSE_INDEX).contains(&i),
        }
    }

    pub(crate) fn lower_index_ok(&self, j: i64) -> bool {
        match &self.kind {
            ShapeKind::Finite(f) => j >= 0 && (j as u64) < f.j_size as u64,
            _ => self.upper_index_ok(j),
        }
    }

    /// λ(j), or `None` when j ∉ J.
    pub fn lambda(&self, j: i64) -> Option<i64> {
        if !self.lower_index_ok(j) {
            return None;
        }
        match &self.kind {
            ShapeKind::Finite(f) => Some(f.lambda[j as usize] as i64),
            ShapeKind::ZZ01 | ShapeKind::OmegaOmega01 => Some(j),
            ShapeKind::OmegaOmega10 => Some(j + 1),
        }
    }

    /// ρ(j), or `None` when j ∉ J.
    pub fn rho(&self, j: i64) -> Option<i64> {
        if !self.lower_index_ok(j) {
            return None;
        }
        match &self.kind {
            ShapeKind::Finite(f) => Some(f.rho[j as usize] as i64),
            ShapeKind::ZZ01 | ShapeKind::OmegaOmega01 => Some(j + 1),
            ShapeKind::OmegaOmega10 => Some(j),
        }
    }

    /// λ⁻¹(i) when defined.
    pub fn lambda_inv(&self, i: i64) -> Option<i64> {
        if !self.upper_index_ok(i) {
            return None;
        }
        match &self.kind {
            ShapeKind::Finite(f) => f.lambda_inv(i as usize).map(|j| j as i64),
            ShapeKind::ZZ01 | ShapeKind::OmegaOmega01 => Some(i),
            ShapeKind::OmegaOmega10 => (i >= 1).then(|| i - 1),
        }
    }

    /// ρ⁻¹(i) when defined.
    pub fn rho_inv(&self, i: i64) -> Option<i64> {
        if !self.upper_index_ok(i) {
            return None;
        }
        match &self.kind {
            ShapeKind::Finite(f) => f.rho_inv(i as usize).map(|j| j as i64),
            ShapeKind::ZZ01 => Some(i - 1),
            ShapeKind::OmegaOmega01 => (i >= 1).then(|| i - 1),
            ShapeKind::OmegaOmega10 => Some(i),
        }
    }

    /// Reindex a finite shape: `sigma` renumbers I, `tau` renumbers J, giving
    /// λ'(τ(j)) = σ(λ(j)) and ρ'(τ(j)) = σ(ρ(j)).
    pub fn renumber(&self, sigma: &[usize], tau: &[usize]) -> Result<Shape, KiteError> {
        let f = self
            .finite_maps()
            .ok_or_else(|| KiteError::Precondition("renumbering needs a finite shape".into()))?;
        if !is_permutation(sigma, f.i_size) || !is_permutation(tau, f.j_size) {
            return Err(KiteError::Precondition("renumbering maps must be permutations".into()));
        }
        let mut lambda = vec![0; f.j_size];
        let mut rho = vec![0; f.j_size];
        for j in 0..f.j_size {
            lambda[tau[j]] = sigma[f.lambda[j]];
            rho[tau[j]] = sigma[f.rho[j]];
        }
        Shape::finite(f.i_size, f.j_size, lambda, rho, self.dim)
    }
}

pub(crate) fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Shape literal, e.g. `kite{I=3,J=2,lam=[0,1],rho=[1,2]}` or `kite{ZZ01}`.
/// A `d=` field is appended only when the group is not ℤ.
impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("kite{")?;
        match &self.kind {
            ShapeKind::Finite(m) => {
                write!(f, "I={},J={},lam=", m.i_size, m.j_size)?;
                write_list(f, &m.lambda)?;
                f.write_str(",rho=")?;
                write_list(f, &m.rho)?;
            }
            ShapeKind::ZZ01 => f.write_str("ZZ01")?,
            ShapeKind::OmegaOmega01 => f.write_str("OO01")?,
            ShapeKind::OmegaOmega10 => f.write_str("OO10")?,
        }
        if self.dim != 1 {
            write!(f, ",d={}", self.dim)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_injective_and_out_of_range_maps() {
        assert!(Shape::finite(2, 2, vec![0, 0], vec![0, 1], 1).is_err());
        assert!(Shape::finite(2, 1, vec![2], vec![0], 1).is_err());
        assert!(Shape::finite(1, 2, vec![0, 0], vec![0, 0], 1).is_err());
        assert!(Shape::finite(2, 1, vec![0], vec![], 1).is_err());
        assert!(Shape::finite(0, 0, vec![], vec![], 1).is_ok());
    }

    #[test]
    fn partial_inverses() {
        let s = Shape::finite(2, 1, vec![0], vec![1], 1).unwrap();
        assert_eq!(s.lambda_inv(0), Some(0));
        assert_eq!(s.lambda_inv(1), None);
        assert_eq!(s.rho_inv(0), None);
        assert_eq!(s.rho_inv(1), Some(0));
        assert_eq!(s.lambda(1), None);

        let w = Shape::omega01(1);
        assert_eq!(w.rho_inv(0), None);
        assert_eq!(w.rho_inv(3), Some(2));
        let w = Shape::omega10(1);
        assert_eq!(w.lambda_inv(0), None);
        assert_eq!(w.lambda(4), Some(5));
        assert_eq!(Shape::zz01(1).rho_inv(-3), Some(-4));
        assert_eq!(Shape::omega01(1).lambda(-1), None);
    }

    #[test]
    fn renumbering_transports_maps() {
        let s = Shape::finite(2, 2, vec![0, 1], vec![1, 0], 1).unwrap();
        let t = s.renumber(&[1, 0], &[0, 1]).unwrap();
        let m = t.finite_maps().unwrap();
        assert_eq!(m.lambda(), &[1, 0]);
        assert_eq!(m.rho(), &[0, 1]);
        assert!(s.renumber(&[0, 0], &[0, 1]).is_err());
    }

    #[test]
    fn display_literal() {
        let s = Shape::finite(3, 2, vec![0, 1], vec![1, 2], 1).unwrap();
        assert_eq!(alloc::format!("{s}"), "kite{I=3,J=2,lam=[0,1],rho=[1,2]}");
        assert_eq!(alloc::format!("{}", Shape::zz01(1)), "kite{ZZ01}");
        assert_eq!(
            alloc::format!("{}", Shape::chain(1).with_dim(2)),
            "kite{I=2,J=1,lam=[0],rho=[1],d=2}"
        );
    }
}
