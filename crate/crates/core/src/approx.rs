//! Finite-dimensional approximation of the infinite kites.
//!
//! A [`LevelFamily`] is an element of a product of finite kites, truncated
//! at depth N. Two families are used:
//!
//! * `Mu`: level n lives in K_{2n+1,2n+1}^{0,1}, indices labelled
//!   `-n..=n` (array position = label + n) with ρ wrapping around mod 2n+1;
//! * `Nu` / `NuPrime`: level n lives in K_{n+1,n}^{0,1}.
//!
//! μ⁻ sends a finite-support element of K_{ℤ,ℤ}^{0,1} to its centred
//! windows; ν sends an element of K_{ω,ω}^{0,1} to its prefixes; ν′ sends an
//! element of K_{ω,ω}^{1,0} to its prefixes in reverse order.

use alloc::format;
use alloc::vec::Vec;

use crate::element::{Element, Side};
use crate::error::KiteError;
use crate::ops::BinOp;
use crate::shape::{Shape, ShapeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Mu,
    Nu,
    NuPrime,
}

impl FamilyKind {
    /// The shape of level `n`, over ℤ^dim.
    pub fn level_shape(self, n: usize, dim: usize) -> Shape {
        match self {
            FamilyKind::Mu => Shape::cycle(2 * n + 1).with_dim(dim),
            FamilyKind::Nu | FamilyKind::NuPrime => Shape::chain(n).with_dim(dim),
        }
    }

    /// Index label of array position `pos` at level `n` (centred for μ).
    pub fn label(self, n: usize, pos: usize) -> i64 {
        match self {
            FamilyKind::Mu => pos as i64 - n as i64,
            FamilyKind::Nu | FamilyKind::NuPrime => pos as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFamily {
    pub kind: FamilyKind,
    pub dim: usize,
    /// Level `n` at position `n`, for n = 0..=N.
    pub levels: Vec<Element>,
}

impl LevelFamily {
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn side(&self) -> Side {
        self.levels[0].side()
    }

    pub fn level_shape(&self, n: usize) -> Shape {
        self.kind.level_shape(n, self.dim)
    }

    /// The family of `one()` (or `zero()`) at every level.
    pub fn constant(kind: FamilyKind, side: Side, depth: usize, dim: usize) -> Self {
        let levels = (0..=depth)
            .map(|n| {
                let s = kind.level_shape(n, dim);
                match side {
                    Side::Upper => s.one(),
                    Side::Lower => s.zero(),
                }
            })
            .collect();
        LevelFamily { kind, dim, levels }
    }

    /// Labels where levels `n` of `self` and `other` differ.
    pub fn diff_set(&self, other: &LevelFamily, n: usize) -> Vec<i64> {
        let a = self.levels[n].dense_entries().expect("finite level");
        let b = other.levels[n].dense_entries().expect("finite level");
        if self.levels[n].side() != other.levels[n].side() {
            return (0..a.len().max(b.len())).map(|p| self.kind.label(n, p)).collect();
        }
        a.iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(p, _)| self.kind.label(n, p))
            .collect()
    }
}

fn support_radius(u: &Element) -> u64 {
    u.support().iter().map(|i| i.unsigned_abs()).max().unwrap_or(0)
}

fn expect_kind(shape: &Shape, kind: &ShapeKind, name: &str) -> Result<(), KiteError> {
    if shape.kind() != kind {
        return Err(KiteError::Precondition(format!("{name} needs {kind:?}, got {shape}")));
    }
    Ok(())
}

fn mu_levels(shape: &Shape, u: &Element, depth: usize) -> LevelFamily {
    let levels = (0..=depth)
        .map(|n| {
            let entries = (-(n as i64)..=n as i64).map(|l| u.at(l, shape.e()).clone()).collect();
            Element::dense(u.side(), entries)
        })
        .collect();
    LevelFamily {
        kind: FamilyKind::Mu,
        dim: shape.dim(),
        levels,
    }
}

/// μ⁻(u) truncated at depth `depth`: level n is the window u_{-n..=n}.
pub fn mu_minus(shape: &Shape, u: &Element, depth: usize) -> Result<LevelFamily, KiteError> {
    expect_kind(shape, &ShapeKind::ZZ01, "mu_minus")?;
    shape.conforms(u)?;
    if support_radius(u) > depth as u64 {
        return Err(KiteError::Precondition(format!(
            "depth {depth} is smaller than the support radius of {u}"
        )));
    }
    Ok(mu_levels(shape, u, depth))
}

fn prefix_levels(shape: &Shape, u: &Element, depth: usize, kind: FamilyKind) -> LevelFamily {
    let levels = (0..=depth)
        .map(|n| {
            let len = match u.side() {
                Side::Upper => n + 1,
                Side::Lower => n,
            };
            let entries = (0..len)
                .map(|p| {
                    let idx = match kind {
                        FamilyKind::NuPrime => len - 1 - p,
                        _ => p,
                    };
                    u.at(idx as i64, shape.e()).clone()
                })
                .collect();
            Element::dense(u.side(), entries)
        })
        .collect();
    LevelFamily {
        kind,
        dim: shape.dim(),
        levels,
    }
}

fn check_prefix_support(u: &Element, depth: usize) -> Result<(), KiteError> {
    if support_radius(u) > depth as u64 {
        return Err(KiteError::Precondition(format!("support of {u} exceeds depth {depth}")));
    }
    Ok(())
}

/// ν(u): level n keeps f_0..f_{n-1} (lower) or a_0..a_n (upper).
pub fn nu(shape: &Shape, u: &Element, depth: usize) -> Result<LevelFamily, KiteError> {
    expect_kind(shape, &ShapeKind::OmegaOmega01, "nu")?;
    shape.conforms(u)?;
    check_prefix_support(u, depth)?;
    Ok(prefix_levels(shape, u, depth, FamilyKind::Nu))
}

/// ν′(u): the prefixes of ν in reverse order, so f_j sits at position
/// n-1-j and a_i at position n-i.
pub fn nu_prime(shape: &Shape, u: &Element, depth: usize) -> Result<LevelFamily, KiteError> {
    expect_kind(shape, &ShapeKind::OmegaOmega10, "nu_prime")?;
    shape.conforms(u)?;
    check_prefix_support(u, depth)?;
    Ok(prefix_levels(shape, u, depth, FamilyKind::NuPrime))
}

fn compatible(a: &LevelFamily, b: &LevelFamily) -> Result<(), KiteError> {
    if a.kind != b.kind || a.levels.len() != b.levels.len() || a.dim != b.dim {
        return Err(KiteError::ShapeMismatch(
            "families differ in kind, depth or group dimension".into(),
        ));
    }
    Ok(())
}

/// Applies `op` levelwise in the product of the level kites.
pub fn family_op(op: BinOp, a: &LevelFamily, b: &LevelFamily) -> Result<LevelFamily, KiteError> {
    compatible(a, b)?;
    let shapes: Vec<Shape> = (0..a.levels.len()).map(|n| a.level_shape(n)).collect();
    family_op_in(&shapes, op, a, b)
}

fn family_op_in(shapes: &[Shape], op: BinOp, a: &LevelFamily, b: &LevelFamily) -> Result<LevelFamily, KiteError> {
    compatible(a, b)?;
    let levels = a
        .levels
        .iter()
        .zip(&b.levels)
        .zip(shapes)
        .map(|((x, y), s)| s.apply(op, x, y))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LevelFamily {
        kind: a.kind,
        dim: a.dim,
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimWitness {
    /// Least admissible window k ≤ N, if any.
    pub k: Option<usize>,
    pub verified_to: usize,
    /// Per level n, the labels where the two families differ.
    pub diff_sets: Vec<Vec<i64>>,
}

fn window_clear(diff: &[i64], n: usize, k: usize) -> bool {
    let (lo, hi) = (k as i64 - n as i64, n as i64 - k as i64);
    diff.iter().all(|&l| l < lo || l > hi)
}

fn sim_from_diffs(diff_sets: Vec<Vec<i64>>) -> SimWitness {
    let depth = diff_sets.len().saturating_sub(1);
    let k = (0..=depth).find(|&k| (k..=depth).all(|n| window_clear(&diff_sets[n], n, k)));
    SimWitness {
        k,
        verified_to: depth,
        diff_sets,
    }
}

/// The ~ test up to depth N: the least k ≤ N with
/// diff(n) ∩ [-n+k, n-k] = ∅ for all k ≤ n ≤ N.
pub fn sim_check(a: &LevelFamily, b: &LevelFamily) -> Result<SimWitness, KiteError> {
    compatible(a, b)?;
    if a.side() != b.side() {
        return Err(KiteError::Precondition(
            "families on different sides are never related".into(),
        ));
    }
    Ok(sim_from_diffs((0..a.levels.len()).map(|n| a.diff_set(b, n)).collect()))
}

/// Whether `a ~ b` is witnessed by the given window `k` up to depth N.
pub fn sim_holds(a: &LevelFamily, b: &LevelFamily, k: usize) -> Result<bool, KiteError> {
    compatible(a, b)?;
    if a.side() != b.side() {
        return Ok(false);
    }
    Ok((k..a.levels.len()).all(|n| window_clear(&a.diff_set(b, n), n, k)))
}

/// Reusable μ⁻ machinery for one ZZ01 shape and depth: the level kites are
/// built once, and families can be computed once per element.
pub struct MuProbe {
    shape: Shape,
    depth: usize,
    levels: Vec<Shape>,
}

impl MuProbe {
    pub fn new(shape: &Shape, depth: usize) -> Result<Self, KiteError> {
        expect_kind(shape, &ShapeKind::ZZ01, "MuProbe")?;
        Ok(MuProbe {
            shape: shape.clone(),
            depth,
            levels: (0..=depth)
                .map(|n| FamilyKind::Mu.level_shape(n, shape.dim()))
                .collect(),
        })
    }

    pub fn family(&self, u: &Element) -> Result<LevelFamily, KiteError> {
        mu_minus(&self.shape, u, self.depth)
    }

    /// [`hom_defect`] with μ⁻(u) and μ⁻(w) already computed.
    pub fn hom_defect(
        &self,
        op: BinOp,
        u: &Element,
        w: &Element,
        mu: &LevelFamily,
        mw: &LevelFamily,
    ) -> Result<SimWitness, KiteError> {
        let whole = mu_levels(&self.shape, &self.shape.apply(op, u, w)?, self.depth);
        let levelwise = family_op_in(&self.levels, op, mu, mw)?;
        compatible(&whole, &levelwise)?;
        let diffs = (0..=self.depth).map(|n| whole.diff_set(&levelwise, n)).collect();
        Ok(sim_from_diffs(diffs))
    }

    /// [`injective_at_depth`] with μ⁻(u) and μ⁻(w) already computed.
    pub fn injective(&self, u: &Element, w: &Element, mu: &LevelFamily, mw: &LevelFamily) -> bool {
        let r = support_radius(u).max(support_radius(w)) as usize;
        if u == w || mu.side() != mw.side() {
            return true;
        }
        let depth = self.depth;
        let diffs: Vec<Vec<i64>> = (0..=depth).map(|n| mu.diff_set(mw, n)).collect();
        !(0..=depth)
            .take_while(|&k| k + r < depth)
            .any(|k| (k..=depth).all(|n| window_clear(&diffs[n], n, k)))
    }
}

/// Compares μ⁻(op(u, w)) with the levelwise product of μ⁻(u) and μ⁻(w).
/// The result's `k` is the least window making them ~-related up to N.
pub fn hom_defect(shape: &Shape, op: BinOp, u: &Element, w: &Element, depth: usize) -> Result<SimWitness, KiteError> {
    let p = MuProbe::new(shape, depth)?;
    p.hom_defect(op, u, w, &p.family(u)?, &p.family(w)?)
}

/// For u ≠ w of joint support radius r: no k with k + r + 1 ≤ N makes
/// μ⁻(u) ~ μ⁻(w) up to N.
pub fn injective_at_depth(shape: &Shape, u: &Element, w: &Element, depth: usize) -> Result<bool, KiteError> {
    let p = MuProbe::new(shape, depth)?;
    Ok(p.injective(u, w, &p.family(u)?, &p.family(w)?))
}

/// Which prefix embedding to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    Nu,
    NuPrime,
}

impl Embedding {
    pub fn source_shape(self, dim: usize) -> Shape {
        match self {
            Embedding::Nu => Shape::omega01(dim),
            Embedding::NuPrime => Shape::omega10(dim),
        }
    }

    pub fn apply(self, shape: &Shape, u: &Element, depth: usize) -> Result<LevelFamily, KiteError> {
        match self {
            Embedding::Nu => nu(shape, u, depth),
            Embedding::NuPrime => nu_prime(shape, u, depth),
        }
    }
}

/// Levels n ≤ N where the embedding of op(u, w) differs from the levelwise
/// op of the embeddings.
pub fn embedding_mismatches(
    emb: Embedding,
    shape: &Shape,
    op: BinOp,
    u: &Element,
    w: &Element,
    depth: usize,
) -> Result<Vec<usize>, KiteError> {
    let fu = emb.apply(shape, u, depth)?;
    let fw = emb.apply(shape, w, depth)?;
    let r = shape.apply(op, u, w)?;
    check_prefix_support(&r, depth + 1)?;
    let kind = match emb {
        Embedding::Nu => FamilyKind::Nu,
        Embedding::NuPrime => FamilyKind::NuPrime,
    };
    let whole = prefix_levels(shape, &r, depth, kind);
    let levelwise = family_op(op, &fu, &fw)?;
    Ok((0..=depth)
        .filter(|&n| whole.levels[n] != levelwise.levels[n])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn names(f: &LevelFamily) -> Vec<alloc::string::String> {
        f.levels.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn mu_windows() {
        let z = Shape::zz01(1);
        let u = z.sparse_upper(&[(0, -1)]).unwrap();
        assert_eq!(
            names(&mu_minus(&z, &u, 2).unwrap()),
            ["U[-1]", "U[0,-1,0]", "U[0,0,-1,0,0]"]
        );
        let v = z.sparse_lower(&[(-1, 2), (1, 3)]).unwrap();
        let f = mu_minus(&z, &v, 2).unwrap();
        assert_eq!(f.levels[1].to_string(), "L[2,0,3]");
        assert_eq!(f.levels[2].to_string(), "L[0,2,0,3,0]");
        assert_eq!(
            mu_minus(&z, &z.one(), 3).unwrap(),
            LevelFamily::constant(FamilyKind::Mu, Side::Upper, 3, 1)
        );
        assert!(mu_minus(&z, &v, 0).is_err());
    }

    #[test]
    fn sim_examples() {
        let z = Shape::zz01(1);
        let u = mu_minus(&z, &z.sparse_upper(&[(0, -1)]).unwrap(), 4).unwrap();
        let w = mu_minus(&z, &z.sparse_upper(&[(0, -2)]).unwrap(), 4).unwrap();
        assert_eq!(sim_check(&u, &u).unwrap().k, Some(0));
        let s = sim_check(&u, &w).unwrap();
        assert_eq!(s.k, None);
        assert_eq!(s.diff_sets, vec![vec![0]; 5]);

        // differing only at the extreme labels ±n
        let mut v = u.clone();
        for n in 1..=4 {
            let sh = u.level_shape(n);
            let mut e = vec![0i64; 2 * n + 1];
            e[n] = -1;
            e[0] = -1;
            e[2 * n] = -2;
            v.levels[n] = sh.upper(&e).unwrap();
        }
        assert_eq!(sim_check(&u, &v).unwrap().k, Some(1));
        let low = LevelFamily::constant(FamilyKind::Mu, Side::Lower, 4, 1);
        assert!(sim_check(&u, &low).is_err());
    }

    #[test]
    fn product_wraps_at_the_last_place() {
        let z = Shape::zz01(1);
        let u = z.sparse_lower(&[(0, 5)]).unwrap();
        let w = z.sparse_upper(&[(1, -3)]).unwrap();
        let d = hom_defect(&z, BinOp::Mul, &u, &w, 3).unwrap();
        assert!(d.k.unwrap() <= 1);
        let p = family_op(BinOp::Mul, &mu_minus(&z, &u, 3).unwrap(), &mu_minus(&z, &w, 3).unwrap()).unwrap();
        // level 0: the single lower entry reads the wrapped upper entry
        assert_eq!(p.levels[0].to_string(), "L[5]");
        assert_eq!(p.levels[1].to_string(), "L[0,2,0]");
        assert_eq!(hom_defect(&z, BinOp::Meet, &u, &w, 3).unwrap().k, Some(0));
        assert_eq!(hom_defect(&z, BinOp::Mul, &z.one(), &z.one(), 3).unwrap().k, Some(0));
        let ll = family_op(BinOp::Mul, &mu_minus(&z, &u, 2).unwrap(), &mu_minus(&z, &u, 2).unwrap()).unwrap();
        assert_eq!(ll, LevelFamily::constant(FamilyKind::Mu, Side::Lower, 2, 1));
    }

    #[test]
    fn injectivity_example() {
        let z = Shape::zz01(1);
        let u = z.sparse_upper(&[(1, -1)]).unwrap();
        let w = z.sparse_upper(&[(1, -2)]).unwrap();
        assert!(injective_at_depth(&z, &u, &w, 6).unwrap());
    }

    #[test]
    fn nu_prefixes() {
        let o = Shape::omega01(1);
        let u = o.sparse_lower(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(names(&nu(&o, &u, 2).unwrap()), ["L[]", "L[1]", "L[1,2]"]);
        assert_eq!(
            nu(&o, &o.one(), 2).unwrap(),
            LevelFamily::constant(FamilyKind::Nu, Side::Upper, 2, 1)
        );
        let o10 = Shape::omega10(1);
        let v = o10.sparse_lower(&[(0, 1)]).unwrap();
        assert_eq!(nu_prime(&o10, &v, 2).unwrap().levels[2].to_string(), "L[0,1]");
        let a = o10.sparse_upper(&[(0, -1)]).unwrap();
        assert_eq!(nu_prime(&o10, &a, 2).unwrap().levels[2].to_string(), "U[0,0,-1]");
    }

    #[test]
    fn nu_loses_information_where_the_support_is_truncated() {
        let o = Shape::omega01(1);
        let u = o.sparse_lower(&[(0, 1)]).unwrap();
        let w = o.zero();
        assert_eq!(
            embedding_mismatches(Embedding::Nu, &o, BinOp::RDiv, &w, &u, 3).unwrap(),
            vec![0]
        );
        assert!(embedding_mismatches(Embedding::Nu, &o, BinOp::Mul, &u, &o.one(), 3)
            .unwrap()
            .is_empty());
        let o10 = Shape::omega10(1);
        let u = o10.sparse_lower(&[(0, 1)]).unwrap();
        assert_eq!(
            embedding_mismatches(Embedding::NuPrime, &o10, BinOp::LDiv, &u, &o10.zero(), 3).unwrap(),
            vec![0]
        );
    }
}
